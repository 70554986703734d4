use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{AnnulusKind, CircleId, MapIndex, PieceKind, Side, StandardFormMap, TwistLink};

/// One failed axiom, with the ids that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: &'static str,
    pub ids: Vec<String>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub(crate) fn push(&mut self, axiom: &'static str, ids: Vec<String>, message: String) {
        self.violations.push(Violation {
            axiom,
            ids,
            message,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}: {}", v.axiom, v.message)?;
        }
        Ok(())
    }
}

/// Checks every standard-form axiom and collects all violations.
pub fn validate(m: &StandardFormMap) -> ValidationReport {
    let mut r = ValidationReport::default();
    check_ids(m, &mut r);
    check_references(m, &mut r);
    // Incidence and adjacency checks assume every reference resolves.
    if !r.is_valid() {
        return r;
    }
    let index = m.index();
    check_incidence(m, &index, &mut r);
    check_boundary(m, &mut r);
    check_connected(m, &index, &mut r);
    check_euler(m, &mut r);
    check_pieces(m, &mut r);
    check_annuli(m, &mut r);
    check_fixed_annulus_records(m, &mut r);
    check_minimality(m, &index, &mut r);
    check_twist_regions(m, &index, &mut r);
    r
}

fn duplicates<'a>(ids: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut seen = BTreeSet::new();
    let mut dup = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            dup.insert(id.to_owned());
        }
    }
    dup.into_iter().collect()
}

fn check_ids(m: &StandardFormMap, r: &mut ValidationReport) {
    let groups = [
        (
            "circle",
            duplicates(m.circles.iter().map(|c| c.id.as_str())),
        ),
        ("piece", duplicates(m.pieces.iter().map(|p| p.id.as_str()))),
        (
            "annulus",
            duplicates(m.annuli.iter().map(|a| a.id.as_str())),
        ),
    ];
    for (what, dup) in groups {
        for id in dup {
            r.push(
                "duplicate-id",
                vec![id.clone()],
                format!("{what} id `{id}` is used more than once"),
            );
        }
    }
    if m.pieces.is_empty() {
        r.push("connectivity", vec![], "map has no pieces".into());
    }
}

fn check_references(m: &StandardFormMap, r: &mut ValidationReport) {
    let known: BTreeSet<&CircleId> = m.circles.iter().map(|c| &c.id).collect();
    let mut unknown = |owner: &str, c: &CircleId| {
        if !known.contains(c) {
            r.push(
                "unknown-circle",
                vec![owner.to_owned(), c.to_string()],
                format!("`{owner}` refers to unknown circle `{c}`"),
            );
        }
    };
    for p in &m.pieces {
        for c in &p.boundary {
            unknown(p.id.as_str(), c);
        }
    }
    for a in &m.annuli {
        for c in &a.sides {
            unknown(a.id.as_str(), c);
        }
    }
    for c in &m.surface_boundary {
        unknown("surface_boundary", c);
    }
}

fn check_incidence(m: &StandardFormMap, index: &MapIndex<'_>, r: &mut ValidationReport) {
    for c in &m.circles {
        let want = if c.is_surface_boundary { 1 } else { 2 };
        let sides = index.sides(&c.id);
        if sides.len() != want {
            let mut ids = vec![c.id.to_string()];
            ids.extend(sides.iter().map(|s| s.id().to_owned()));
            r.push(
                "incidence",
                ids,
                format!(
                    "circle `{}` has {} incident region sides, expected {want}",
                    c.id,
                    sides.len()
                ),
            );
        }
    }
    for p in &m.pieces {
        if let Some(d) = duplicates(p.boundary.iter().map(|c| c.as_str())).first() {
            r.push(
                "incidence",
                vec![p.id.to_string(), d.clone()],
                format!("piece `{}` lists circle `{d}` twice", p.id),
            );
        }
    }
    for a in &m.annuli {
        if a.sides[0] == a.sides[1] {
            r.push(
                "incidence",
                vec![a.id.to_string()],
                format!("annulus `{}` has both sides on one circle", a.id),
            );
        }
    }
}

fn check_boundary(m: &StandardFormMap, r: &mut ValidationReport) {
    let flagged: BTreeSet<&CircleId> = m
        .circles
        .iter()
        .filter(|c| c.is_surface_boundary)
        .map(|c| &c.id)
        .collect();
    let listed: BTreeSet<&CircleId> = m.surface_boundary.iter().collect();
    for c in flagged.symmetric_difference(&listed) {
        r.push(
            "surface-boundary",
            vec![c.to_string()],
            format!("circle `{c}` disagrees between its flag and the surface_boundary list"),
        );
    }
    if m.meta.boundary_count as usize != listed.len() {
        r.push(
            "surface-boundary",
            vec![],
            format!(
                "meta declares {} boundary circles, surface_boundary lists {}",
                m.meta.boundary_count,
                listed.len()
            ),
        );
    }
}

fn check_connected(m: &StandardFormMap, index: &MapIndex<'_>, r: &mut ValidationReport) {
    // Regions are nodes; circles join the regions on their two sides.
    let mut regions: Vec<String> = m.pieces.iter().map(|p| format!("p:{}", p.id)).collect();
    regions.extend(
        m.annuli
            .iter()
            .filter(|a| a.kind != AnnulusKind::FixedAnnulus)
            .map(|a| format!("a:{}", a.id)),
    );
    if regions.is_empty() {
        return;
    }
    let key = |s: &Side<'_>| match s {
        Side::Piece(p) => format!("p:{}", p.id),
        Side::Annulus(a) => format!("a:{}", a.id),
    };
    let mut adj: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for c in &m.circles {
        let sides = index.sides(&c.id);
        for x in sides {
            for y in sides {
                adj.entry(key(x)).or_default().push(key(y));
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([regions[0].clone()]);
    seen.insert(regions[0].clone());
    while let Some(x) = queue.pop_front() {
        for y in adj.get(&x).into_iter().flatten() {
            if seen.insert(y.clone()) {
                queue.push_back(y.clone());
            }
        }
    }
    let stray: Vec<String> = regions
        .iter()
        .filter(|x| !seen.contains(*x))
        .map(|x| x[2..].to_owned())
        .collect();
    if !stray.is_empty() {
        r.push(
            "connectivity",
            stray.clone(),
            format!("regions not connected to the rest: {}", stray.join(", ")),
        );
    }
}

fn check_euler(m: &StandardFormMap, r: &mut ValidationReport) {
    let got = m.euler_from_pieces();
    let want = m.declared_euler();
    if got != want {
        r.push(
            "euler-characteristic",
            vec![],
            format!("pieces sum to Euler characteristic {got}, meta declares {want}"),
        );
    }
}

fn check_pieces(m: &StandardFormMap, r: &mut ValidationReport) {
    let mut orbits: BTreeMap<&str, Vec<(&str, u32, u32, usize)>> = BTreeMap::new();
    for p in &m.pieces {
        let id = p.id.to_string();
        if p.is_annular() && !p.is_fixed() {
            r.push(
                "annular-piece-not-fixed",
                vec![id.clone()],
                format!(
                    "annular piece `{id}` is {}, annular pieces must be fixed",
                    p.kind.name()
                ),
            );
        }
        match &p.kind {
            PieceKind::Fixed => {}
            PieceKind::Periodic { period, .. } => {
                if *period < 2 {
                    r.push(
                        "period",
                        vec![id.clone()],
                        format!("periodic piece `{id}` has period {period} < 2"),
                    );
                }
            }
            PieceKind::PseudoAnosov {
                prongs, rotation, ..
            } => {
                let keys: BTreeSet<&CircleId> = prongs.keys().collect();
                let bdry: BTreeSet<&CircleId> = p.boundary.iter().collect();
                if keys != bdry {
                    r.push(
                        "pa-prongs",
                        vec![id.clone()],
                        format!("pseudo-Anosov piece `{id}` must give prongs on exactly its boundary circles"),
                    );
                }
                if let Some((c, _)) = prongs.iter().find(|(_, k)| **k == 0) {
                    r.push(
                        "pa-prongs",
                        vec![id.clone(), c.to_string()],
                        format!("pseudo-Anosov piece `{id}` has zero prongs at `{c}`"),
                    );
                }
                if let Some(c) = rotation.keys().find(|c| !bdry.contains(c)) {
                    r.push(
                        "pa-prongs",
                        vec![id.clone(), c.to_string()],
                        format!("pseudo-Anosov piece `{id}` rotates non-boundary circle `{c}`"),
                    );
                }
            }
            PieceKind::Permuted { period, orbit, .. } => {
                orbits.entry(orbit).or_default().push((
                    p.id.as_str(),
                    *period,
                    p.genus,
                    p.boundary.len(),
                ));
            }
        }
    }
    for (orbit, members) in orbits {
        let ids: Vec<String> = members.iter().map(|m| m.0.to_owned()).collect();
        let period = members[0].1;
        let same = members
            .iter()
            .all(|m| m.1 == period && m.2 == members[0].2 && m.3 == members[0].3);
        if period < 2 || members.len() != period as usize || !same {
            r.push(
                "permuted-orbit",
                ids,
                format!(
                    "orbit `{orbit}` has {} pieces; needs period many (>= 2) pieces of matching period, genus and boundary count",
                    members.len()
                ),
            );
        }
    }
}

fn check_annuli(m: &StandardFormMap, r: &mut ValidationReport) {
    for a in &m.annuli {
        if let AnnulusKind::TwistPartial { sign, fraction } = &a.kind {
            let ok = !fraction.is_zero()
                && fraction.abs() < 1.into()
                && fraction.signum().to_integer() == sign.as_i64();
            if !ok {
                r.push(
                    "partial-fraction",
                    vec![a.id.to_string()],
                    format!(
                        "partial twist `{}` has fraction {fraction}, needs 0 < |r| < 1 with the twist's sign",
                        a.id
                    ),
                );
            }
        }
    }
}

fn check_fixed_annulus_records(m: &StandardFormMap, r: &mut ValidationReport) {
    for a in m
        .annuli
        .iter()
        .filter(|a| a.kind == AnnulusKind::FixedAnnulus)
    {
        let sides: BTreeSet<&CircleId> = a.sides.iter().collect();
        let matched = m
            .pieces
            .iter()
            .any(|p| p.is_fixed_annulus() && p.boundary.iter().collect::<BTreeSet<_>>() == sides);
        if !matched {
            r.push(
                "fixed-annulus-record",
                vec![a.id.to_string()],
                format!(
                    "fixed annulus record `{}` has no matching fixed annular piece",
                    a.id
                ),
            );
        }
    }
}

fn check_minimality(m: &StandardFormMap, index: &MapIndex<'_>, r: &mut ValidationReport) {
    for c in &m.circles {
        if let [Side::Piece(a), Side::Piece(b)] = index.sides(&c.id) {
            if a.is_fixed() && b.is_fixed() {
                r.push(
                    "minimality",
                    vec![c.id.to_string(), a.id.to_string(), b.id.to_string()],
                    format!(
                        "circle `{}` has fixed pieces `{}` and `{}` on both sides",
                        c.id, a.id, b.id
                    ),
                );
            }
        }
    }
}

fn check_twist_regions(m: &StandardFormMap, index: &MapIndex<'_>, r: &mut ValidationReport) {
    let twists: Vec<_> = m.annuli.iter().filter(|a| a.is_twist()).collect();
    let pos: BTreeMap<&str, usize> = twists
        .iter()
        .enumerate()
        .map(|(i, a)| (a.id.as_str(), i))
        .collect();
    // Union-find over twist annuli linked into one multitwist region.
    let mut parent: Vec<usize> = (0..twists.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut region_links: Vec<usize> = vec![0; twists.len()];
    let mut reported = BTreeSet::new();
    for (i, a) in twists.iter().enumerate() {
        let sign = a.kind.twist_sign();
        for c in &a.sides {
            let Some(link) = index.twist_neighbor(a, c) else {
                continue;
            };
            let (b, via) = match link {
                TwistLink::Direct(b) => (b, None),
                TwistLink::ViaFixedAnnulus(p, b) => (b, Some(p)),
            };
            let same = b.kind.twist_sign() == sign;
            let pair = if a.id < b.id {
                (a.id.to_string(), b.id.to_string())
            } else {
                (b.id.to_string(), a.id.to_string())
            };
            match (via, same) {
                (None, false) => continue,
                (None, true) if a.kind.is_partial() == b.kind.is_partial() => {
                    if reported.insert(("sep", pair.clone())) {
                        r.push(
                            "missing-separating-fixed-annulus",
                            vec![pair.0.clone(), pair.1.clone()],
                            format!(
                                "twist annuli `{}` and `{}` share a circle without a separating fixed annulus",
                                pair.0, pair.1
                            ),
                        );
                    }
                }
                (Some(p), false) => {
                    if reported.insert(("sign", pair.clone())) {
                        r.push(
                            "parallel-sign",
                            vec![pair.0.clone(), pair.1.clone(), p.id.to_string()],
                            format!(
                                "parallel twist annuli `{}` and `{}` have opposite signs",
                                pair.0, pair.1
                            ),
                        );
                    }
                    continue;
                }
                _ => {}
            }
            region_links[i] += 1;
            let j = pos[b.id.as_str()];
            let (x, y) = (find(&mut parent, i), find(&mut parent, j));
            parent[x] = y;
        }
    }
    let mut regions: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..twists.len() {
        let root = find(&mut parent, i);
        regions.entry(root).or_default().push(i);
    }
    for members in regions.values() {
        let partials: Vec<usize> = members
            .iter()
            .copied()
            .filter(|i| twists[*i].kind.is_partial())
            .collect();
        let ids: Vec<String> = members.iter().map(|i| twists[*i].id.to_string()).collect();
        if partials.len() > 2 {
            r.push(
                "partial-count",
                ids.clone(),
                format!(
                    "multitwist region {{{}}} has {} partial twists",
                    ids.join(", "),
                    partials.len()
                ),
            );
        }
        for i in &partials {
            if region_links[*i] > 1 {
                r.push(
                    "partial-placement",
                    vec![twists[*i].id.to_string()],
                    format!(
                        "partial twist `{}` is not at an end of its region",
                        twists[*i].id
                    ),
                );
            }
        }
        if !partials.is_empty() && !region_has_twisting_end(index, &twists, members) {
            r.push(
                "partial-between-fixed",
                ids.clone(),
                format!(
                    "multitwist region {{{}}} has a partial twist but only fixed pieces or surface boundary at its ends",
                    ids.join(", ")
                ),
            );
        }
    }
}

/// Whether some end of the region abuts a periodic, pseudo-Anosov or permuted
/// piece, or another twist region, which is where a fractional twist can come
/// from.
fn region_has_twisting_end(
    index: &MapIndex<'_>,
    twists: &[&super::Annulus],
    members: &[usize],
) -> bool {
    let ids: BTreeSet<&str> = members.iter().map(|i| twists[*i].id.as_str()).collect();
    for i in members {
        let a = twists[*i];
        for c in &a.sides {
            let linked = match index.twist_neighbor(a, c) {
                Some(TwistLink::Direct(b)) | Some(TwistLink::ViaFixedAnnulus(_, b)) => {
                    ids.contains(b.id.as_str())
                }
                None => false,
            };
            if linked {
                continue;
            }
            match index.across(c, Side::Annulus(a)) {
                Some(Side::Piece(p)) if !p.is_fixed() => return true,
                Some(Side::Annulus(b)) if !ids.contains(b.id.as_str()) => return true,
                _ => {}
            }
        }
    }
    false
}
