//! Next-to-top Floer homology of zero surgery on `J = K # L`.
//!
//! `L` is a synthetic fibered knot of which only the top two Alexander
//! gradings are known. The homology in question equals that of the finite
//! corner `C{i < 0, j >= k}` of the tensor complex at `k = g(J) - 2`, which
//! only ever reads generators at the top two gradings.
//!
//! Out of scope, and not constructed here: the full mapping cone of
//! `v_k + h_k` between the `A_k` and `B` complexes, its hat version, and the
//! flip map identifying `C{j >= 0}` with `C{i >= 0}`. The corner identity
//! replaces all of them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cfk::{spinc, tensor, validate_cfk, Generator, ReducedCFK};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, Echelon};
use crate::surface_map::Sign;

/// Spin^c label of the top generators of the positive `L` model.
pub const L_LABEL: &str = "s0";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyntheticLModel {
    pub n: u32,
    pub side: Sign,
    pub fiber_genus: u32,
    pub complex: ReducedCFK,
}

impl SyntheticLModel {
    pub fn genus(&self) -> i64 {
        3 * (self.fiber_genus + self.n) as i64
    }

    pub fn label(&self) -> String {
        label_for(self.side)
    }
}

fn label_for(side: Sign) -> String {
    match side {
        Sign::Positive => L_LABEL.to_owned(),
        Sign::Negative => spinc::conjugate(L_LABEL),
    }
}

/// The `L` model with fiber genus one.
pub fn synthetic_l_model(n: u32, side: Sign) -> Result<SyntheticLModel> {
    synthetic_l_model_with_genus(n, side, 1)
}

/// One generator at the top grading `3(fiber_genus + n)`, one just below it,
/// nothing two below, and nothing modeled further down.
pub fn synthetic_l_model_with_genus(
    n: u32,
    side: Sign,
    fiber_genus: u32,
) -> Result<SyntheticLModel> {
    if n < 1 || fiber_genus < 1 {
        return Err(Error::InvalidArgument(
            "the L model needs n >= 1 and fiber genus >= 1".into(),
        ));
    }
    let top = 3 * (fiber_genus + n) as i64;
    let label = label_for(side);
    let gen = |id: &str, a: i64| Generator {
        id: id.into(),
        alexander: a,
        maslov: None,
        spinc: label.clone(),
    };
    Ok(SyntheticLModel {
        n,
        side,
        fiber_genus,
        complex: ReducedCFK {
            generators: vec![gen("ltop", top), gen("lnext", top - 1)],
            arrows: Vec::new(),
            fibered_genus: Some(top),
            truncation_floor: Some(top - 2),
            fibration_spinc: Some(label.clone()),
        },
    })
}

/// `K ⊗ L` for the `L` model with parameters `n` and `side`.
pub fn build_j(k: &ReducedCFK, n: u32, side: Sign) -> Result<ReducedCFK> {
    let report = validate_cfk(k);
    if !report.is_valid() {
        return Err(Error::InvalidComplex(report));
    }
    if k.fibered_genus.is_none() {
        return Err(Error::NotFibered);
    }
    if let Some(f) = k.truncation_floor {
        return Err(Error::Truncated(f));
    }
    tensor(k, &synthetic_l_model(n, side)?.complex)
}

/// A generator copy at filtration `(i, j)` with `j - i` its Alexander grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub generator: String,
    pub i: i64,
    pub j: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CornerRegion {
    /// The region is `{i < 0, j >= k}`.
    pub k: i64,
    pub cells: Vec<Cell>,
    /// Differential as target lists over `cells`.
    #[serde(skip)]
    differential: Vec<Vec<usize>>,
    #[serde(skip)]
    labels: Vec<String>,
}

/// The cells of `{i < 0, j >= k}` with every arrow that stays inside.
pub fn corner_region(c: &ReducedCFK, k: i64) -> Result<CornerRegion> {
    let report = validate_cfk(c);
    if !report.is_valid() {
        return Err(Error::InvalidComplex(report));
    }
    if let Some(floor) = c.truncation_floor {
        if k + 1 < floor {
            return Err(Error::InsufficientModel {
                needed: k + 1,
                floor,
            });
        }
    }
    let mut cells = Vec::new();
    let mut labels = Vec::new();
    let mut index: BTreeMap<(&str, i64), usize> = BTreeMap::new();
    for g in &c.generators {
        for i in (k - g.alexander)..=-1 {
            index.insert((g.id.as_str(), i), cells.len());
            cells.push(Cell {
                generator: g.id.clone(),
                i,
                j: i + g.alexander,
            });
            labels.push(g.spinc.clone());
        }
    }
    let mut differential = vec![Vec::new(); cells.len()];
    for a in &c.arrows {
        for (x, cell) in cells.iter().enumerate() {
            if cell.generator != a.from {
                continue;
            }
            let target = (a.to.as_str(), cell.i - a.m as i64);
            if cell.j - (a.n as i64) < k {
                continue;
            }
            if let Some(&y) = index.get(&target) {
                differential[x].push(y);
            }
        }
    }
    Ok(CornerRegion {
        k,
        cells,
        differential,
        labels,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerHomology {
    pub dim: usize,
    pub per_spinc: BTreeMap<String, usize>,
}

impl CornerRegion {
    pub fn homology(&self) -> CornerHomology {
        let mut per_spinc = BTreeMap::new();
        for label in &self.labels {
            if per_spinc.contains_key(label) {
                continue;
            }
            let members: Vec<usize> = (0..self.cells.len())
                .filter(|&x| &self.labels[x] == label)
                .collect();
            let mut local = vec![usize::MAX; self.cells.len()];
            for (p, &x) in members.iter().enumerate() {
                local[x] = p;
            }
            let mut image = Echelon::new(members.len());
            for &x in &members {
                let mut v = BitVec::zeros(members.len());
                for &y in &self.differential[x] {
                    v.flip(local[y]);
                }
                image.insert(&v);
            }
            per_spinc.insert(label.clone(), members.len() - 2 * image.rank());
        }
        CornerHomology {
            dim: per_spinc.values().sum(),
            per_spinc,
        }
    }
}

/// Homology of `C{i < 0, j >= k}` per spin^c label.
///
/// ```
/// use veerkit::cfk::models;
/// use veerkit::surgery::corner_homology;
///
/// assert_eq!(corner_homology(&models::unknot(), -1).unwrap().dim, 1);
/// assert_eq!(corner_homology(&models::unknot(), 5).unwrap().dim, 0);
/// ```
pub fn corner_homology(c: &ReducedCFK, k: i64) -> Result<CornerHomology> {
    Ok(corner_region(c, k)?.homology())
}

fn has_arrow(c: &ReducedCFK, pick: impl Fn(&crate::cfk::Arrow) -> bool) -> bool {
    c.arrows.iter().any(pick)
}

/// Next-to-top homology of zero surgery on `j`, read off the corner at
/// `g(j) - 2`. The top generator must emit a `(0, 1)` arrow and receive a
/// `(1, 0)` arrow.
pub fn zero_surgery_top_minus_one(j: &ReducedCFK) -> Result<CornerHomology> {
    let g = j.fibered_genus.ok_or(Error::NotFibered)?;
    let top = j.top_generator()?.id.clone();
    if !has_arrow(j, |a| a.from == top && (a.m, a.n) == (0, 1)) {
        return Err(Error::HypothesesNotSatisfied(
            "the top generator has no (0, 1) arrow".into(),
        ));
    }
    if !has_arrow(j, |a| a.to == top && (a.m, a.n) == (1, 0)) {
        return Err(Error::HypothesesNotSatisfied(
            "the top generator receives no (1, 0) arrow".into(),
        ));
    }
    corner_homology(j, g - 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideResult {
    pub n: u32,
    pub side: Sign,
    pub dim: usize,
    /// Corner homology outside the label of the top generator.
    pub off_label: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YiCheck {
    /// `dim HFK(K, g - 1) - 1`.
    pub expected: i64,
    pub results: Vec<SideResult>,
    pub holds: bool,
}

/// Runs both sides for each `n` and compares with `dim HFK(K, g - 1) - 1`.
pub fn check_yi(k: &ReducedCFK, ns: &[u32]) -> Result<YiCheck> {
    let g = k.fibered_genus.ok_or(Error::NotFibered)?;
    if g < 1 {
        return Err(Error::HypothesesNotSatisfied("the knot is trivial".into()));
    }
    let expected = k.dim_at(g - 1) as i64 - 1;
    let mut results = Vec::new();
    for &n in ns {
        for side in [Sign::Positive, Sign::Negative] {
            let j = build_j(k, n, side)?;
            let h = zero_surgery_top_minus_one(&j)?;
            let label = j.top_generator()?.spinc.clone();
            results.push(SideResult {
                n,
                side,
                dim: h.dim,
                off_label: h
                    .per_spinc
                    .iter()
                    .filter(|(l, _)| **l != label)
                    .map(|(_, d)| d)
                    .sum(),
            });
        }
    }
    let holds = results
        .iter()
        .all(|r| r.dim as i64 == expected && r.off_label == 0);
    Ok(YiCheck {
        expected,
        results,
        holds,
    })
}
