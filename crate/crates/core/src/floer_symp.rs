//! Dimension of symplectic Floer homology of a standard-form map on a closed
//! surface, evaluated term by term.
//!
//! Fixed pieces are sorted by how many of their boundary circles meet
//! pseudo-Anosov pieces, each circle gets a sign, and every region adds a
//! relative-homology or prong count. Lefschetz numbers of periodic pieces and
//! fixed-point counts of pseudo-Anosov pieces stay symbolic unless bound, so
//! two breakdowns that share them can be subtracted exactly.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface_map::{
    validate, AnnulusKind, CircleId, Piece, PieceId, PieceKind, Side, Sign, StandardFormMap, Term,
};

/// How the pieces of a closed map enter the dimension count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Partition {
    /// Fixed pieces meeting no pseudo-Anosov piece.
    pub sigma_a: BTreeSet<PieceId>,
    /// Fixed pieces meeting exactly one pseudo-Anosov circle, with its prong count.
    pub sigma_b: BTreeMap<PieceId, u32>,
    /// Fixed pieces meeting two or more pseudo-Anosov circles, with total prongs.
    pub sigma_c: BTreeMap<PieceId, u32>,
    /// Periodic and permuted pieces.
    pub sigma_1: BTreeSet<PieceId>,
    /// Pseudo-Anosov pieces.
    pub sigma_2: BTreeSet<PieceId>,
    pub flip_count: u32,
    /// Circles of each fixed piece that meet a pseudo-Anosov piece.
    #[serde(skip)]
    pa_circles: BTreeMap<PieceId, BTreeSet<CircleId>>,
}

/// Sign of every boundary circle of every fixed piece.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SignAssignment {
    pub sign: BTreeMap<PieceId, BTreeMap<CircleId, Sign>>,
}

impl SignAssignment {
    pub fn negative_count(&self, piece: &PieceId) -> usize {
        self.sign
            .get(piece)
            .map(|s| s.values().filter(|v| **v == Sign::Negative).count())
            .unwrap_or(0)
    }
}

/// Itemized dimension: a concrete integer plus unbound symbolic terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DimBreakdown {
    pub concrete: u64,
    /// Sorted multiset of unbound tokens such as `lefschetz[T]`.
    pub opaque: Vec<String>,
    pub per_region: BTreeMap<String, String>,
}

impl DimBreakdown {
    /// The total dimension, once nothing is left symbolic.
    pub fn total(&self) -> Option<u64> {
        self.opaque.is_empty().then_some(self.concrete)
    }
}

/// Sum of Betti numbers of a compact surface of genus `g` with `b` boundary circles.
pub fn betti_sum(g: u32, b: u32) -> u64 {
    if b > 0 {
        2 * g as u64 + b as u64
    } else {
        2 * g as u64 + 2
    }
}

/// `dim H_*(S, ∂₋S)` for `S` of genus `g` with `b` boundary circles, `negative`
/// of which lie in `∂₋S`.
pub fn relative_homology_dim(g: u32, b: u32, negative: u32) -> u64 {
    let total = betti_sum(g, b);
    if negative == 0 || negative == b {
        total
    } else {
        total - 2
    }
}

fn require_closed(m: &StandardFormMap) -> Result<()> {
    let report = validate(m);
    if !report.is_valid() {
        return Err(Error::InvalidMap(report));
    }
    if !m.is_closed() {
        return Err(Error::NotClosed);
    }
    if m.meta.genus < 2 {
        return Err(Error::GenusTooSmall(m.meta.genus));
    }
    Ok(())
}

pub fn partition(m: &StandardFormMap) -> Result<Partition> {
    require_closed(m)?;
    let index = m.index();
    let mut p = Partition {
        flip_count: m
            .annuli
            .iter()
            .filter(|a| a.kind == AnnulusKind::FlipTwist)
            .count() as u32,
        ..Partition::default()
    };
    for piece in &m.pieces {
        match &piece.kind {
            PieceKind::Periodic { .. } | PieceKind::Permuted { .. } => {
                p.sigma_1.insert(piece.id.clone());
                continue;
            }
            PieceKind::PseudoAnosov { .. } => {
                p.sigma_2.insert(piece.id.clone());
                continue;
            }
            PieceKind::Fixed => {}
        }
        let mut pa = BTreeSet::new();
        let mut prongs = 0u32;
        for c in &piece.boundary {
            match index.across(c, Side::Piece(piece)) {
                Some(Side::Piece(q)) => match &q.kind {
                    PieceKind::PseudoAnosov { prongs: pr, .. } => {
                        pa.insert(c.clone());
                        prongs += pr.get(c).copied().unwrap_or(1);
                    }
                    PieceKind::Fixed => {
                        return Err(Error::Structural(format!(
                            "fixed pieces `{}` and `{}` meet at `{c}`",
                            piece.id, q.id
                        )))
                    }
                    _ => {
                        return Err(Error::Structural(format!(
                            "fixed piece `{}` abuts {} piece `{}` at `{c}`",
                            piece.id,
                            q.kind.name(),
                            q.id
                        )))
                    }
                },
                Some(Side::Annulus(a)) if a.is_twist() => {}
                Some(Side::Annulus(a)) => {
                    return Err(Error::Structural(format!(
                        "fixed piece `{}` abuts flip-twist annulus `{}` at `{c}`",
                        piece.id, a.id
                    )))
                }
                None => {
                    return Err(Error::Structural(format!(
                        "circle `{c}` of `{}` has no region across it",
                        piece.id
                    )))
                }
            }
        }
        match pa.len() {
            0 => {
                p.sigma_a.insert(piece.id.clone());
            }
            1 => {
                p.sigma_b.insert(piece.id.clone(), prongs);
            }
            _ => {
                p.sigma_c.insert(piece.id.clone(), prongs);
            }
        }
        p.pa_circles.insert(piece.id.clone(), pa);
    }
    Ok(p)
}

/// The deterministic sign assignment.
pub fn boundary_signs(m: &StandardFormMap, p: &Partition) -> Result<SignAssignment> {
    boundary_signs_with(m, p, |_, _| Sign::Positive)
}

/// Sign assignment in which `free` picks the sign of every circle the rules
/// leave open. The constraints are enforced afterwards.
pub fn boundary_signs_with(
    m: &StandardFormMap,
    p: &Partition,
    mut free: impl FnMut(&PieceId, &CircleId) -> Sign,
) -> Result<SignAssignment> {
    let index = m.index();
    let mut out = SignAssignment::default();
    for piece in m.pieces.iter().filter(|q| q.is_fixed()) {
        let pa = p.pa_circles.get(&piece.id).cloned().unwrap_or_default();
        let mut signs = BTreeMap::new();
        let mut open = Vec::new();
        for c in &piece.boundary {
            if let Some(Side::Annulus(a)) = index.across(c, Side::Piece(piece)) {
                if let Some(s) = a.kind.twist_sign() {
                    signs.insert(c.clone(), s);
                    continue;
                }
            }
            if !pa.contains(c) {
                return Err(Error::Structural(format!(
                    "circle `{c}` of fixed piece `{}` has no sign rule",
                    piece.id
                )));
            }
            open.push(c.clone());
        }
        if p.sigma_b.contains_key(&piece.id) {
            for c in &open {
                signs.insert(c.clone(), Sign::Negative);
            }
        } else if p.sigma_c.contains_key(&piece.id) {
            if piece.boundary.len() < 2 {
                return Err(Error::Structural(format!(
                    "piece `{}` meets two pseudo-Anosov circles with fewer than two boundary circles",
                    piece.id
                )));
            }
            // `open` is sorted because boundary lists are canonical.
            let mut open = open;
            open.sort();
            let least = open.remove(0);
            signs.insert(least, Sign::Negative);
            for c in &open {
                signs.insert(c.clone(), free(&piece.id, c));
            }
            if !signs.values().any(|s| *s == Sign::Positive) {
                signs.insert(open[0].clone(), Sign::Positive);
            }
        }
        out.sign.insert(piece.id.clone(), signs);
    }
    Ok(out)
}

fn term(value: Term, token: String, out: &mut DimBreakdown) -> String {
    match value {
        Term::Value(v) => {
            out.concrete += v;
            v.to_string()
        }
        Term::Opaque => {
            out.opaque.push(token.clone());
            token
        }
    }
}

/// Dimension breakdown using the deterministic sign assignment.
pub fn hf_symp_dim(m: &StandardFormMap) -> Result<DimBreakdown> {
    let p = partition(m)?;
    let s = boundary_signs(m, &p)?;
    Ok(breakdown(m, &p, &s))
}

/// Evaluates the dimension formula for a given partition and signs.
pub fn breakdown(m: &StandardFormMap, p: &Partition, s: &SignAssignment) -> DimBreakdown {
    let mut out = DimBreakdown::default();
    for piece in &m.pieces {
        let id = &piece.id;
        let (g, b) = (piece.genus, piece.boundary.len() as u32);
        let desc = match &piece.kind {
            PieceKind::Fixed => {
                let neg = s.negative_count(id) as u32;
                if let Some(q) = p.sigma_c.get(id) {
                    let v = relative_homology_dim(g, b, neg) + *q as u64;
                    out.concrete += v;
                    format!("{v} (fixed, several pseudo-Anosov neighbours, prongs {q})")
                } else if let Some(pr) = p.sigma_b.get(id) {
                    let v = betti_sum(g, b + 1) - 2 + (*pr as u64 - 1);
                    out.concrete += v;
                    format!("{v} (fixed, one pseudo-Anosov neighbour, prongs {pr})")
                } else {
                    let v = relative_homology_dim(g, b, neg);
                    out.concrete += v;
                    format!("{v} (fixed, {neg} of {b} boundary circles negative)")
                }
            }
            PieceKind::Periodic { lefschetz, .. } => {
                term(*lefschetz, format!("lefschetz[{id}]"), &mut out)
            }
            PieceKind::Permuted { lefschetz, .. } => {
                let v = lefschetz.unwrap_or(0);
                out.concrete += v;
                v.to_string()
            }
            PieceKind::PseudoAnosov { pa_fixed_count, .. } => {
                term(*pa_fixed_count, format!("pa_fixed[{id}]"), &mut out)
            }
        };
        out.per_region.insert(id.to_string(), desc);
    }
    for a in m.annuli.iter().filter(|a| a.kind == AnnulusKind::FlipTwist) {
        out.concrete += 2;
        out.per_region
            .insert(a.id.to_string(), "2 (flip twist)".into());
    }
    out.opaque.sort();
    out
}

/// Exact difference of two breakdowns that share their symbolic terms.
pub fn dim_difference(a: &DimBreakdown, b: &DimBreakdown) -> Result<i64> {
    if a.opaque != b.opaque {
        let only_a: Vec<&String> = a.opaque.iter().filter(|t| !b.opaque.contains(t)).collect();
        let only_b: Vec<&String> = b.opaque.iter().filter(|t| !a.opaque.contains(t)).collect();
        return Err(Error::DifferenceNotDetermined(format!(
            "left only {only_a:?}, right only {only_b:?}"
        )));
    }
    Ok(a.concrete as i64 - b.concrete as i64)
}

/// Replaces the symbolic term of `piece` by `value`.
pub fn bind(m: &mut StandardFormMap, piece: &PieceId, value: u64) -> Result<()> {
    let p: &mut Piece = m
        .pieces
        .iter_mut()
        .find(|p| &p.id == piece)
        .ok_or_else(|| Error::UnknownPiece(piece.to_string()))?;
    match &mut p.kind {
        PieceKind::Periodic { lefschetz, .. } => *lefschetz = Term::Value(value),
        PieceKind::PseudoAnosov { pa_fixed_count, .. } => *pa_fixed_count = Term::Value(value),
        PieceKind::Permuted { lefschetz, .. } => *lefschetz = Some(value),
        PieceKind::Fixed => {
            return Err(Error::InvalidArgument(format!(
                "piece `{piece}` is fixed and has no symbolic term"
            )))
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface_map::MapBuilder;

    #[test]
    fn betti_and_relative() {
        assert_eq!(betti_sum(2, 0), 6);
        assert_eq!(betti_sum(1, 2), 4);
        assert_eq!(betti_sum(0, 2), 2);
        assert_eq!(relative_homology_dim(0, 2, 0), 2);
        assert_eq!(relative_homology_dim(0, 2, 2), 2);
        assert_eq!(relative_homology_dim(1, 2, 1), 2);
    }

    #[test]
    fn relative_dims_keep_parity_of_absolute() {
        for g in 0..4 {
            for b in 1..5 {
                for k in 0..=b {
                    let v = relative_homology_dim(g, b, k);
                    assert_eq!(v % 2, betti_sum(g, b) % 2);
                }
            }
        }
    }

    #[test]
    fn identity_on_genus_two() {
        let mut b = MapBuilder::new();
        b.fixed("S", 2, &[]);
        let m = b.build().unwrap();
        let p = partition(&m).unwrap();
        assert_eq!(p.sigma_a.len(), 1);
        assert!(p.sigma_b.is_empty() && p.sigma_c.is_empty());
        let d = hf_symp_dim(&m).unwrap();
        assert_eq!(d.concrete, 6);
        assert_eq!(d.total(), Some(6));
    }

    #[test]
    fn preconditions() {
        let mut b = MapBuilder::new();
        b.fixed("S", 1, &[]);
        assert!(matches!(
            partition(&b.build().unwrap()),
            Err(Error::GenusTooSmall(1))
        ));
        let mut b = MapBuilder::new();
        b.boundary("d").fixed("S", 2, &["d"]);
        assert!(matches!(
            partition(&b.build().unwrap()),
            Err(Error::NotClosed)
        ));
    }

    #[test]
    fn fixed_next_to_periodic_is_structural() {
        let mut b = MapBuilder::new();
        b.fixed("S", 1, &["c"]).periodic("P", 1, &["c"], 2);
        let err = partition(&b.build().unwrap()).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
    }

    /// A fixed pair of pants whose legs meet a 3-prong pA circle and two
    /// positive twists into a genus-one fixed piece.
    fn pants_on_pa() -> StandardFormMap {
        let mut b = MapBuilder::new();
        b.fixed("S0", 0, &["x", "a", "b"])
            .pseudo_anosov("X", 1, &[("x", 3)])
            .twist("ta", Sign::Positive, "a", "a2")
            .twist("tb", Sign::Positive, "b", "b2")
            .fixed("R", 1, &["a2", "b2"]);
        b.build().unwrap()
    }

    #[test]
    fn one_pseudo_anosov_neighbour() {
        let m = pants_on_pa();
        let p = partition(&m).unwrap();
        assert_eq!(p.sigma_b.get(&PieceId::from("S0")), Some(&3));
        let s = boundary_signs(&m, &p).unwrap();
        let s0 = &s.sign[&PieceId::from("S0")];
        assert_eq!(s0[&CircleId::from("x")], Sign::Negative);
        assert_eq!(s0[&CircleId::from("a")], Sign::Positive);
        let d = hf_symp_dim(&m).unwrap();
        assert_eq!(d.opaque, vec!["pa_fixed[X]".to_owned()]);
        // S0: 2g+b-1 = 2, plus p-1 = 2; R: both circles positive, 4.
        assert_eq!(d.concrete, 4 + 4);
    }

    #[test]
    fn several_pseudo_anosov_neighbours() {
        let mut b = MapBuilder::new();
        b.fixed("S0", 0, &["x", "y", "a"])
            .pseudo_anosov("X", 1, &[("x", 2)])
            .pseudo_anosov("Y", 1, &[("y", 1)])
            .twist("ta", Sign::Negative, "a", "a2")
            .fixed("R", 1, &["a2"]);
        let m = b.build().unwrap();
        let p = partition(&m).unwrap();
        assert_eq!(p.sigma_c.get(&PieceId::from("S0")), Some(&3));
        let s = boundary_signs(&m, &p).unwrap();
        let s0 = &s.sign[&PieceId::from("S0")];
        assert_eq!(s0[&CircleId::from("x")], Sign::Negative);
        assert_eq!(s0[&CircleId::from("y")], Sign::Positive);
        assert_eq!(s0[&CircleId::from("a")], Sign::Negative);
        let d = hf_symp_dim(&m).unwrap();
        // S0: betti 3 - 2 + 3 = 4; R: genus 1, one negative circle, 3.
        assert_eq!(d.concrete, 4 + 3);
    }

    #[test]
    fn difference_needs_matching_terms() {
        let a = DimBreakdown {
            concrete: 8,
            opaque: vec!["lefschetz[T]".into()],
            ..Default::default()
        };
        let mut b = a.clone();
        b.concrete = 6;
        assert_eq!(dim_difference(&a, &b).unwrap(), 2);
        assert_eq!(dim_difference(&a, &a).unwrap(), 0);
        b.opaque.push("pa_fixed[X]".into());
        let err = dim_difference(&a, &b).unwrap_err();
        assert!(err.to_string().contains("difference not determined"));
    }

    #[test]
    fn binding_moves_terms_into_concrete() {
        let mut m = pants_on_pa();
        bind(&mut m, &"X".into(), 5).unwrap();
        let d = hf_symp_dim(&m).unwrap();
        assert!(d.opaque.is_empty());
        assert_eq!(d.total(), Some(13));
        assert!(bind(&mut m, &"S0".into(), 1).is_err());
    }
}
