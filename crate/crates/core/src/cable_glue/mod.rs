//! Boundary models of the cable monodromies, gluing along a single boundary
//! circle, and the veering decision read off the symplectic dimension
//! difference.
//!
//! The cable fiber `F` carries a partial twist of `±1/(9n+3)` at its
//! boundary, a periodic piece `T` of genus `3n` with four boundary circles and
//! period `9n+3`, and three genus-one pieces permuted with period 3. Gluing a
//! map `h` to the positive and negative models and comparing dimensions gives
//! `+2`, `0` or `-2`.

pub mod random;

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::floer_symp::{dim_difference, hf_symp_dim, DimBreakdown};
use crate::surface_map::{
    validate, Annulus, AnnulusId, AnnulusKind, BoundaryStub, Circle, CircleId, MapBuilder, Meta,
    MultitwistStub, Piece, PieceId, PieceKind, Side, Sign, StandardFormMap,
};
use crate::twist_calculus::VeeringVerdict;

/// Id of the fixed annulus inserted between same-sign twists at a junction.
pub const JUNCTION_ANNULUS: &str = "A";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CableBoundaryModel {
    pub n: u32,
    pub side: Sign,
    pub stub: MultitwistStub,
    /// The full model on `F`, with boundary circle `dF`.
    pub map: StandardFormMap,
}

impl CableBoundaryModel {
    /// Symbolic terms contributed by everything away from the boundary twist.
    pub fn remote_opaque(&self) -> Vec<String> {
        let mut tokens: Vec<String> = self
            .map
            .pieces
            .iter()
            .filter_map(|p| match &p.kind {
                PieceKind::Periodic { lefschetz, .. } if lefschetz.is_opaque() => {
                    Some(format!("lefschetz[{}]", p.id))
                }
                PieceKind::PseudoAnosov { pa_fixed_count, .. } if pa_fixed_count.is_opaque() => {
                    Some(format!("pa_fixed[{}]", p.id))
                }
                _ => None,
            })
            .collect();
        tokens.sort();
        tokens
    }

    pub fn boundary(&self) -> CircleId {
        "dF".into()
    }
}

/// The standard-form model of the cable monodromy near `∂F`.
///
/// ```
/// use num_rational::Rational64;
/// use veerkit::cable_glue::build_cable_boundary_model;
/// use veerkit::surface_map::Sign;
///
/// let g = build_cable_boundary_model(1, Sign::Positive).unwrap();
/// assert_eq!(g.stub.coefficient(), Rational64::new(1, 12));
/// assert_eq!(g.map.meta.genus, 6);
/// ```
pub fn build_cable_boundary_model(n: u32, side: Sign) -> Result<CableBoundaryModel> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "cable parameter n must be at least 1".into(),
        ));
    }
    let period = 9 * n + 3;
    let fraction = Rational64::new(side.as_i64(), period as i64);
    let mut b = MapBuilder::new();
    b.boundary("dF")
        .partial("g", fraction, "dF", "t0")
        .periodic("T", 3 * n, &["t0", "t1", "t2", "t3"], period);
    for i in 1..=3 {
        b.permuted(&format!("G{i}"), 1, &[&format!("t{i}")], 3, "G");
    }
    let map = b.build()?;
    Ok(CableBoundaryModel {
        n,
        side,
        stub: MultitwistStub::new(side, 0, fraction),
        map,
    })
}

fn prefixed(m: &StandardFormMap, prefix: &str) -> StandardFormMap {
    let c = |id: &CircleId| CircleId(format!("{prefix}{id}"));
    StandardFormMap {
        circles: m
            .circles
            .iter()
            .map(|x| Circle {
                id: c(&x.id),
                is_surface_boundary: x.is_surface_boundary,
            })
            .collect(),
        pieces: m
            .pieces
            .iter()
            .map(|p| {
                let mut kind = p.kind.clone();
                if let PieceKind::PseudoAnosov {
                    prongs, rotation, ..
                } = &mut kind
                {
                    *prongs = prongs.iter().map(|(k, v)| (c(k), *v)).collect();
                    *rotation = rotation.iter().map(|(k, v)| (c(k), *v)).collect();
                }
                Piece {
                    id: PieceId(format!("{prefix}{}", p.id)),
                    genus: p.genus,
                    boundary: p.boundary.iter().map(c).collect(),
                    kind,
                }
            })
            .collect(),
        annuli: m
            .annuli
            .iter()
            .map(|a| Annulus {
                id: AnnulusId(format!("{prefix}{}", a.id)),
                sides: [c(&a.sides[0]), c(&a.sides[1])],
                kind: a.kind.clone(),
            })
            .collect(),
        surface_boundary: m.surface_boundary.iter().map(c).collect(),
        meta: m.meta,
    }
}

fn rename_circle(m: &mut StandardFormMap, from: &CircleId, to: &CircleId) {
    let swap = |x: &mut CircleId| {
        if x == from {
            *x = to.clone();
        }
    };
    for c in &mut m.circles {
        swap(&mut c.id);
    }
    for p in &mut m.pieces {
        p.boundary.iter_mut().for_each(swap);
        if let PieceKind::PseudoAnosov {
            prongs, rotation, ..
        } = &mut p.kind
        {
            if let Some(v) = prongs.remove(from) {
                prongs.insert(to.clone(), v);
            }
            if let Some(v) = rotation.remove(from) {
                rotation.insert(to.clone(), v);
            }
        }
    }
    for a in &mut m.annuli {
        a.sides.iter_mut().for_each(swap);
    }
    m.surface_boundary.iter_mut().for_each(swap);
}

fn single_boundary(m: &StandardFormMap) -> Result<CircleId> {
    match m.surface_boundary.as_slice() {
        [b] => Ok(b.clone()),
        _ => Err(Error::Unsupported(format!(
            "gluing needs exactly one boundary circle, found {}",
            m.surface_boundary.len()
        ))),
    }
}

/// Sign of the twist annulus sitting directly on the boundary circle, if any.
fn boundary_twist_sign(m: &StandardFormMap, b: &CircleId) -> Option<Sign> {
    match m.index().sides(b) {
        [Side::Annulus(a)] => a.kind.twist_sign(),
        _ => None,
    }
}

/// Glues two single-boundary maps along their boundary circles, prefixing
/// their ids with `left_prefix` and `right_prefix`.
///
/// Same-sign twists meeting at the junction get a fixed annulus between
/// them; in every other case the two boundary circles are identified.
pub fn join(
    left: &StandardFormMap,
    right: &StandardFormMap,
    left_prefix: &str,
    right_prefix: &str,
) -> Result<StandardFormMap> {
    for m in [left, right] {
        let report = validate(m);
        if !report.is_valid() {
            return Err(Error::InvalidMap(report));
        }
        let b = single_boundary(m)?;
        if m.boundary_stub(&b)? == BoundaryStub::NonTrivialBoundary {
            return Err(Error::NotIdentityOnBoundary(b.to_string()));
        }
    }
    let (bl, br) = (single_boundary(left)?, single_boundary(right)?);
    let (sl, sr) = (
        boundary_twist_sign(left, &bl),
        boundary_twist_sign(right, &br),
    );
    if let (BoundaryStub::DirectlyFixed { .. }, BoundaryStub::DirectlyFixed { .. }) =
        (left.boundary_stub(&bl)?, right.boundary_stub(&br)?)
    {
        return Err(Error::Structural(
            "both sides are fixed at the junction; the glued circle would not be minimal".into(),
        ));
    }
    let mut l = prefixed(left, left_prefix);
    let mut r = prefixed(right, right_prefix);
    let jl = CircleId(format!("{left_prefix}{bl}"));
    let jr = CircleId(format!("{right_prefix}{br}"));

    let mut extra_pieces = Vec::new();
    let mut extra_annuli = Vec::new();
    match (sl, sr) {
        (Some(a), Some(b)) if a == b => {
            extra_pieces.push(Piece {
                id: JUNCTION_ANNULUS.into(),
                genus: 0,
                boundary: vec![jl.clone(), jr.clone()],
                kind: PieceKind::Fixed,
            });
            extra_annuli.push(Annulus {
                id: JUNCTION_ANNULUS.into(),
                sides: [jl.clone(), jr.clone()],
                kind: AnnulusKind::FixedAnnulus,
            });
        }
        _ => {
            rename_circle(&mut r, &jr, &jl);
            r.circles.retain(|c| c.id != jl);
        }
    }
    let mut circles: BTreeMap<CircleId, Circle> = BTreeMap::new();
    for c in l.circles.drain(..).chain(r.circles.drain(..)) {
        circles.insert(
            c.id.clone(),
            Circle {
                is_surface_boundary: false,
                ..c
            },
        );
    }
    let mut m = StandardFormMap {
        circles: circles.into_values().collect(),
        pieces: l
            .pieces
            .into_iter()
            .chain(r.pieces)
            .chain(extra_pieces)
            .collect(),
        annuli: l
            .annuli
            .into_iter()
            .chain(r.annuli)
            .chain(extra_annuli)
            .collect(),
        surface_boundary: Vec::new(),
        meta: Meta {
            genus: left.meta.genus + right.meta.genus,
            boundary_count: 0,
        },
    };
    m.canonicalize();
    let report = validate(&m);
    if !report.is_valid() {
        return Err(Error::InvalidMap(report));
    }
    Ok(m)
}

/// The closed map `h ∪ g` on `S ∪ F`. Ids from `h` get the prefix `S.`, ids
/// from the cable model `F.`.
pub fn glue(h: &StandardFormMap, g: &CableBoundaryModel) -> Result<StandardFormMap> {
    let report = validate(h);
    if !report.is_valid() {
        return Err(Error::InvalidMap(report));
    }
    if h.is_identity() {
        return Err(Error::IdentityMap);
    }
    join(h, &g.map, "S.", "F.")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SympVerdict {
    pub difference: i64,
    pub verdict: VeeringVerdict,
}

/// Both glued breakdowns, positive side first.
pub fn glued_breakdowns(h: &StandardFormMap, n: u32) -> Result<(DimBreakdown, DimBreakdown)> {
    let plus = glue(h, &build_cable_boundary_model(n, Sign::Positive)?)?;
    let minus = glue(h, &build_cable_boundary_model(n, Sign::Negative)?)?;
    Ok((hf_symp_dim(&plus)?, hf_symp_dim(&minus)?))
}

/// Decides veering from `dim HF(h ∪ g+) - dim HF(h ∪ g-)`.
pub fn rv_via_symplectic(h: &StandardFormMap, n: u32) -> Result<SympVerdict> {
    let (plus, minus) = glued_breakdowns(h, n)?;
    let difference = dim_difference(&plus, &minus)?;
    let verdict = match difference {
        2 => VeeringVerdict::RightVeering,
        0 => VeeringVerdict::Neither,
        -2 => VeeringVerdict::LeftVeering,
        d => {
            return Err(Error::Structural(format!(
                "dimension difference {d} is outside {{-2, 0, 2}}"
            )))
        }
    };
    Ok(SympVerdict {
        difference,
        verdict,
    })
}
