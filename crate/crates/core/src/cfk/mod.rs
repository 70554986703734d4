//! Reduced knot Floer complexes over GF(2).
//!
//! A [`ReducedCFK`] lists generators with Alexander grading `A`, optional
//! Maslov grading `M` and a spin^c label, and arrows carrying the components
//! `d_{mn}` of the differential. An arrow `x -> y` with bidegree `(m, n)`
//! sends `x` at filtration `(i, j)` to `y` at `(i - m, j - n)`, so
//! `A(x) - A(y) = n - m` and `M(y) = M(x) - 1 + 2m`. There is no `d_00`:
//! knot Floer dimensions are generator counts.
//!
//! A complex may be truncated below some Alexander grading, which models a
//! knot for which only the top few gradings are known.

pub mod models;
pub mod random;
mod spectral;
pub mod spinc;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use crate::surface_map::ValidationReport as CfkReport;

pub use spectral::{
    b_invariant, b_invariant_via_top_differential, flatten, spectral_sequence, tau, BValue,
    FilteredFlattening, Page, Slice, SpectralSequence,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub id: String,
    #[serde(rename = "A")]
    pub alexander: i64,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub maslov: Option<i64>,
    #[serde(default = "spinc::unit")]
    pub spinc: String,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub from: String,
    pub to: String,
    pub m: u32,
    pub n: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedCFK {
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub arrows: Vec<Arrow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibered_genus: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation_floor: Option<i64>,
    /// Spin^c label the top generator must carry, when fibered.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibration_spinc: Option<String>,
}

/// One row of [`ReducedCFK::hfk_dims`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimEntry {
    #[serde(rename = "A")]
    pub alexander: i64,
    pub spinc: String,
    pub dim: usize,
}

impl ReducedCFK {
    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complexes always serialize")
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncation_floor.is_some()
    }

    pub fn has_maslov(&self) -> bool {
        !self.generators.is_empty() && self.generators.iter().all(|g| g.maslov.is_some())
    }

    /// Position of each generator id.
    pub fn positions(&self) -> BTreeMap<&str, usize> {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.id.as_str(), i))
            .collect()
    }

    /// Merges repeated arrows mod 2 and sorts them.
    pub fn normalize(&mut self) {
        let mut count: BTreeMap<Arrow, u32> = BTreeMap::new();
        for a in self.arrows.drain(..) {
            *count.entry(a).or_default() += 1;
        }
        self.arrows = count
            .into_iter()
            .filter(|(_, k)| k % 2 == 1)
            .map(|(a, _)| a)
            .collect();
    }

    pub fn max_alexander(&self) -> Option<i64> {
        self.generators.iter().map(|g| g.alexander).max()
    }

    pub fn min_alexander(&self) -> Option<i64> {
        self.generators.iter().map(|g| g.alexander).min()
    }

    /// Generator counts per `(A, spin^c)`.
    pub fn hfk_dims(&self) -> Vec<DimEntry> {
        let mut dims: BTreeMap<(i64, &str), usize> = BTreeMap::new();
        for g in &self.generators {
            *dims.entry((g.alexander, g.spinc.as_str())).or_default() += 1;
        }
        dims.into_iter()
            .map(|((a, s), dim)| DimEntry {
                alexander: a,
                spinc: s.to_owned(),
                dim,
            })
            .collect()
    }

    /// Generator counts per Alexander grading, all spin^c labels together.
    pub fn dims_by_alexander(&self) -> BTreeMap<i64, usize> {
        let mut dims = BTreeMap::new();
        for g in &self.generators {
            *dims.entry(g.alexander).or_default() += 1;
        }
        dims
    }

    pub fn dim_at(&self, alexander: i64) -> usize {
        self.generators
            .iter()
            .filter(|g| g.alexander == alexander)
            .count()
    }

    /// Largest Alexander grading that carries a generator.
    pub fn genus(&self) -> Option<i64> {
        self.max_alexander()
    }

    /// Whether `M - A` is constant. Needs Maslov gradings.
    pub fn is_thin(&self) -> Result<bool> {
        if !self.has_maslov() {
            return Err(Error::InvalidArgument(
                "thinness needs Maslov gradings".into(),
            ));
        }
        let deltas: BTreeSet<i64> = self
            .generators
            .iter()
            .map(|g| g.maslov.expect("checked") - g.alexander)
            .collect();
        Ok(deltas.len() <= 1)
    }

    /// The unique generator at the fibered genus.
    pub fn top_generator(&self) -> Result<&Generator> {
        let g = self.fibered_genus.ok_or(Error::NotFibered)?;
        let top: Vec<&Generator> = self
            .generators
            .iter()
            .filter(|x| x.alexander == g)
            .collect();
        match top.as_slice() {
            [t] => Ok(t),
            _ => Err(Error::TopDimension {
                grading: g,
                dim: top.len(),
            }),
        }
    }
}

fn require_valid(c: &ReducedCFK) -> Result<()> {
    let report = validate_cfk(c);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidComplex(report))
    }
}

/// Checks the structural invariants of a reduced complex.
pub fn validate_cfk(c: &ReducedCFK) -> CfkReport {
    let mut r = CfkReport::default();
    let mut pos = BTreeMap::new();
    for (i, g) in c.generators.iter().enumerate() {
        if pos.insert(g.id.as_str(), i).is_some() {
            r.push(
                "duplicate-id",
                vec![g.id.clone()],
                format!("generator id `{}` repeats", g.id),
            );
        }
    }
    let with_maslov = c.generators.iter().filter(|g| g.maslov.is_some()).count();
    if with_maslov != 0 && with_maslov != c.generators.len() {
        r.push(
            "maslov-partial",
            vec![],
            "either every generator has a Maslov grading or none does".into(),
        );
    }
    if let Some(floor) = c.truncation_floor {
        for g in c.generators.iter().filter(|g| g.alexander < floor) {
            r.push(
                "truncation",
                vec![g.id.clone()],
                format!(
                    "generator `{}` at A = {} lies below the floor {floor}",
                    g.id, g.alexander
                ),
            );
        }
    }
    let mut arrows_ok = true;
    for a in &c.arrows {
        let ids = vec![a.from.clone(), a.to.clone()];
        let (Some(&x), Some(&y)) = (pos.get(a.from.as_str()), pos.get(a.to.as_str())) else {
            r.push(
                "unknown-generator",
                ids,
                format!("arrow {} -> {} names an unknown generator", a.from, a.to),
            );
            arrows_ok = false;
            continue;
        };
        let (gx, gy) = (&c.generators[x], &c.generators[y]);
        if a.m == 0 && a.n == 0 {
            r.push(
                "zero-bidegree",
                ids.clone(),
                format!("arrow {} -> {} has bidegree (0, 0)", a.from, a.to),
            );
        }
        if gx.alexander - gy.alexander != a.n as i64 - a.m as i64 {
            r.push(
                "alexander-drop",
                ids.clone(),
                format!(
                    "arrow {} -> {} with (m, n) = ({}, {}) drops A by {}, expected {}",
                    a.from,
                    a.to,
                    a.m,
                    a.n,
                    gx.alexander - gy.alexander,
                    a.n as i64 - a.m as i64
                ),
            );
        }
        if let (Some(mx), Some(my)) = (gx.maslov, gy.maslov) {
            if my != mx - 1 + 2 * a.m as i64 {
                r.push(
                    "maslov",
                    ids.clone(),
                    format!(
                        "arrow {} -> {} breaks M(to) = M(from) - 1 + 2m",
                        a.from, a.to
                    ),
                );
            }
        }
        if gx.spinc != gy.spinc {
            r.push(
                "spinc",
                ids,
                format!("arrow {} -> {} changes spin^c", a.from, a.to),
            );
        }
    }
    if arrows_ok {
        check_square_zero(c, &pos, &mut r);
    }
    if let Some(g) = c.fibered_genus {
        check_fibered(c, g, &mut r);
    }
    r
}

fn check_square_zero(c: &ReducedCFK, pos: &BTreeMap<&str, usize>, r: &mut CfkReport) {
    let mut out: Vec<Vec<(usize, u32, u32)>> = vec![Vec::new(); c.generators.len()];
    for a in &c.arrows {
        out[pos[a.from.as_str()]].push((pos[a.to.as_str()], a.m, a.n));
    }
    let floor = c.truncation_floor;
    for x in 0..c.generators.len() {
        let mut paths: BTreeMap<(usize, u32, u32), u32> = BTreeMap::new();
        for &(y, m1, n1) in &out[x] {
            for &(z, m2, n2) in &out[y] {
                *paths.entry((z, m1 + m2, n1 + n2)).or_default() += 1;
            }
        }
        for ((z, mm, nn), k) in paths {
            if k % 2 == 0 {
                continue;
            }
            // Skip pairs whose intermediate gradings may fall below the model.
            if let Some(f) = floor {
                let low = (c.generators[x].alexander - nn as i64)
                    .max(c.generators[z].alexander - mm as i64);
                if low < f {
                    continue;
                }
            }
            let (a, b) = (&c.generators[x].id, &c.generators[z].id);
            r.push(
                "square-zero",
                vec![a.clone(), b.clone()],
                format!("d^2 has an odd number of paths {a} -> {b} in bidegree ({mm}, {nn})"),
            );
        }
    }
}

fn check_fibered(c: &ReducedCFK, g: i64, r: &mut CfkReport) {
    let top: Vec<&Generator> = c.generators.iter().filter(|x| x.alexander == g).collect();
    if top.len() != 1 {
        r.push(
            "fibered-top",
            top.iter().map(|x| x.id.clone()).collect(),
            format!(
                "fibered genus {g} needs exactly one generator at A = {g}, found {}",
                top.len()
            ),
        );
    }
    let beyond: Vec<String> = c
        .generators
        .iter()
        .filter(|x| x.alexander > g || (!c.is_truncated() && x.alexander < -g))
        .map(|x| x.id.clone())
        .collect();
    if !beyond.is_empty() {
        r.push(
            "fibered-range",
            beyond,
            format!("generators outside |A| <= {g}"),
        );
    }
    if !c.is_truncated() {
        let bottom = c.generators.iter().filter(|x| x.alexander == -g).count();
        if bottom != 1 {
            r.push(
                "fibered-bottom",
                vec![],
                format!(
                    "fibered genus {g} needs exactly one generator at A = {}, found {bottom}",
                    -g
                ),
            );
        }
    }
    if let (Some(label), [t]) = (&c.fibration_spinc, top.as_slice()) {
        if &t.spinc != label {
            r.push(
                "fibered-spinc",
                vec![t.id.clone()],
                format!(
                    "top generator carries spin^c `{}`, expected `{label}`",
                    t.spinc
                ),
            );
        }
    }
}

/// The mirror complex: gradings negated, spin^c conjugated, arrows reversed
/// with the same bidegree.
///
/// ```
/// use veerkit::cfk::{mirror, models};
///
/// let left = mirror(&models::right_trefoil()).unwrap();
/// assert_eq!(left.dims_by_alexander(), models::right_trefoil().dims_by_alexander());
/// assert_eq!(mirror(&left).unwrap(), models::right_trefoil());
/// ```
pub fn mirror(c: &ReducedCFK) -> Result<ReducedCFK> {
    require_valid(c)?;
    if let Some(f) = c.truncation_floor {
        return Err(Error::Truncated(f));
    }
    let mut out = ReducedCFK {
        generators: c
            .generators
            .iter()
            .map(|g| Generator {
                id: g.id.clone(),
                alexander: -g.alexander,
                maslov: g.maslov.map(|m| -m),
                spinc: spinc::conjugate(&g.spinc),
            })
            .collect(),
        arrows: c
            .arrows
            .iter()
            .map(|a| Arrow {
                from: a.to.clone(),
                to: a.from.clone(),
                m: a.m,
                n: a.n,
            })
            .collect(),
        fibered_genus: c.fibered_genus,
        truncation_floor: None,
        fibration_spinc: c.fibration_spinc.as_deref().map(spinc::conjugate),
    };
    out.normalize();
    Ok(out)
}

/// Tensor product with the Leibniz differential.
///
/// A truncated factor truncates the product: a total grading is kept only
/// if every pair summing to it is modeled.
pub fn tensor(a: &ReducedCFK, b: &ReducedCFK) -> Result<ReducedCFK> {
    require_valid(a)?;
    require_valid(b)?;
    let floor = match (a.truncation_floor, b.truncation_floor) {
        (None, None) => None,
        (Some(fa), None) => Some(fa + b.max_alexander().unwrap_or(0)),
        (None, Some(fb)) => Some(fb + a.max_alexander().unwrap_or(0)),
        (Some(fa), Some(fb)) => {
            Some((fa + b.max_alexander().unwrap_or(0)).max(fb + a.max_alexander().unwrap_or(0)))
        }
    };
    let keep = |x: &Generator, y: &Generator| floor.is_none_or(|f| x.alexander + y.alexander >= f);
    let name = |x: &str, y: &str| format!("{x}*{y}");
    let mut generators = Vec::new();
    for x in &a.generators {
        for y in &b.generators {
            if !keep(x, y) {
                continue;
            }
            generators.push(Generator {
                id: name(&x.id, &y.id),
                alexander: x.alexander + y.alexander,
                maslov: match (x.maslov, y.maslov) {
                    (Some(p), Some(q)) => Some(p + q),
                    _ => None,
                },
                spinc: spinc::combine(&x.spinc, &y.spinc),
            });
        }
    }
    let ga: BTreeMap<&str, &Generator> = a.generators.iter().map(|g| (g.id.as_str(), g)).collect();
    let gb: BTreeMap<&str, &Generator> = b.generators.iter().map(|g| (g.id.as_str(), g)).collect();
    let mut arrows = Vec::new();
    for ar in &a.arrows {
        for y in &b.generators {
            if keep(ga[ar.from.as_str()], y) && keep(ga[ar.to.as_str()], y) {
                arrows.push(Arrow {
                    from: name(&ar.from, &y.id),
                    to: name(&ar.to, &y.id),
                    m: ar.m,
                    n: ar.n,
                });
            }
        }
    }
    for ar in &b.arrows {
        for x in &a.generators {
            if keep(x, gb[ar.from.as_str()]) && keep(x, gb[ar.to.as_str()]) {
                arrows.push(Arrow {
                    from: name(&x.id, &ar.from),
                    to: name(&x.id, &ar.to),
                    m: ar.m,
                    n: ar.n,
                });
            }
        }
    }
    let mut out = ReducedCFK {
        generators,
        arrows,
        fibered_genus: match (a.fibered_genus, b.fibered_genus) {
            (Some(p), Some(q)) => Some(p + q),
            _ => None,
        },
        truncation_floor: floor,
        fibration_spinc: match (&a.fibration_spinc, &b.fibration_spinc) {
            (Some(p), Some(q)) => Some(spinc::combine(p, q)),
            (Some(p), None) if a.fibered_genus.is_some() && b.fibered_genus.is_some() => {
                Some(spinc::combine(p, &top_label(b)))
            }
            (None, Some(q)) if a.fibered_genus.is_some() && b.fibered_genus.is_some() => {
                Some(spinc::combine(&top_label(a), q))
            }
            _ => None,
        },
    };
    out.normalize();
    require_valid(&out)?;
    Ok(out)
}

fn top_label(c: &ReducedCFK) -> String {
    c.top_generator()
        .map(|g| g.spinc.clone())
        .unwrap_or_else(|_| spinc::unit())
}

/// Generator counts per `(A, M, spin^c)`.
pub type GradingCounts = BTreeMap<(i64, Option<i64>, String), usize>;
/// An arrow as `(A_from, M_from, A_to, M_to, m, n)`.
pub type ArrowShape = (i64, Option<i64>, i64, Option<i64>, u32, u32);

/// A grading-and-arrow fingerprint: generator counts per `(A, M, spin^c)` and
/// the multiset of arrows by endpoint gradings and bidegree. Equal for
/// complexes that agree up to renaming generators.
pub fn signature(c: &ReducedCFK) -> (GradingCounts, Vec<ArrowShape>) {
    let mut dims = BTreeMap::new();
    for g in &c.generators {
        *dims
            .entry((g.alexander, g.maslov, g.spinc.clone()))
            .or_default() += 1;
    }
    let by_id: BTreeMap<&str, &Generator> =
        c.generators.iter().map(|g| (g.id.as_str(), g)).collect();
    let mut arrows: Vec<_> = c
        .arrows
        .iter()
        .map(|a| {
            let (x, y) = (by_id[a.from.as_str()], by_id[a.to.as_str()]);
            (x.alexander, x.maslov, y.alexander, y.maslov, a.m, a.n)
        })
        .collect();
    arrows.sort();
    (dims, arrows)
}

#[cfg(test)]
mod tests;
