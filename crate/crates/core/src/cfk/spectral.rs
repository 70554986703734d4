//! Filtered flattenings of a reduced complex and their spectral sequences.
//!
//! Slicing at `i = k` keeps the `d_{0n}` arrows and filters by `j = k + A`;
//! slicing at `j = k` keeps the `d_{m0}` arrows and filters by `i = k - A`.
//! Pages come from a persistence pairing: order generators by filtration
//! level, column-reduce the differential, and a pair spanning `r` levels is
//! killed by `d_r`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{mirror, require_valid, ReducedCFK};
use crate::error::{Error, Result};
use crate::gf2::{reduce_columns, BitVec, Echelon};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slice {
    I(i64),
    J(i64),
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slice::I(k) => write!(f, "i={k}"),
            Slice::J(k) => write!(f, "j={k}"),
        }
    }
}

impl Serialize for Slice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FilteredFlattening {
    pub slice: Slice,
    pub ids: Vec<String>,
    pub levels: Vec<i64>,
    /// `differential[x]` lists the targets of `x`, each at a lower level.
    pub differential: Vec<Vec<usize>>,
}

impl FilteredFlattening {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Indices sorted by level, ties by position.
    fn order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.levels[x], x));
        order
    }

    /// The differential as columns over the level order.
    fn columns(&self, order: &[usize]) -> Vec<BitVec> {
        let mut rank_of = vec![0; self.len()];
        for (r, &x) in order.iter().enumerate() {
            rank_of[x] = r;
        }
        order
            .iter()
            .map(|&x| {
                let mut v = BitVec::zeros(self.len());
                for &y in &self.differential[x] {
                    v.set(rank_of[y], true);
                }
                v
            })
            .collect()
    }
}

/// The slice of `c` at `slice`, with the induced differential.
pub fn flatten(c: &ReducedCFK, slice: Slice) -> Result<FilteredFlattening> {
    require_valid(c)?;
    let pos = c.positions();
    let levels = c
        .generators
        .iter()
        .map(|g| match slice {
            Slice::I(k) => k + g.alexander,
            Slice::J(k) => k - g.alexander,
        })
        .collect();
    let mut differential = vec![Vec::new(); c.len()];
    for a in &c.arrows {
        let kept = match slice {
            Slice::I(_) => a.m == 0,
            Slice::J(_) => a.n == 0,
        };
        if kept {
            differential[pos[a.from.as_str()]].push(pos[a.to.as_str()]);
        }
    }
    for targets in &mut differential {
        *targets = odd_entries(std::mem::take(targets));
    }
    Ok(FilteredFlattening {
        slice,
        ids: c.generators.iter().map(|g| g.id.clone()).collect(),
        levels,
        differential,
    })
}

/// Entries occurring an odd number of times, sorted.
fn odd_entries(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    let mut out: Vec<usize> = Vec::with_capacity(v.len());
    for x in v {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Page {
    pub r: usize,
    /// Dimension at each filtration level.
    pub dims: BTreeMap<i64, usize>,
    /// Rank of `d_r` on this page.
    pub rank: usize,
}

impl Page {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }
}

/// Pages `E_1, ..., E_R` with `E_R = E_∞`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralSequence {
    pub slice: Slice,
    pub pages: Vec<Page>,
    /// Level at which each surviving class is born.
    pub survivors: Vec<i64>,
}

impl SpectralSequence {
    pub fn e1(&self) -> &Page {
        &self.pages[0]
    }

    pub fn e_infinity(&self) -> &Page {
        self.pages.last().expect("at least one page")
    }

    /// First page equal to `E_∞`.
    pub fn collapses_at(&self) -> usize {
        self.pages
            .iter()
            .find(|p| p.dims == self.e_infinity().dims)
            .map_or(1, |p| p.r)
    }

    pub fn total_rank(&self) -> usize {
        self.pages.iter().map(|p| p.rank).sum()
    }
}

struct Pairing {
    /// `(birth level, death level)` for each cancelling pair.
    bars: Vec<(i64, i64)>,
    survivors: Vec<i64>,
}

fn pairing(f: &FilteredFlattening) -> Pairing {
    let order = f.order();
    let red = reduce_columns(f.len(), &f.columns(&order));
    let mut paired = vec![false; f.len()];
    let mut bars = Vec::new();
    for &(col, row) in &red.pairs {
        paired[col] = true;
        paired[row] = true;
        bars.push((f.levels[order[row]], f.levels[order[col]]));
    }
    let survivors = (0..f.len())
        .filter(|&r| !paired[r])
        .map(|r| f.levels[order[r]])
        .collect();
    Pairing { bars, survivors }
}

pub fn spectral_sequence(f: &FilteredFlattening) -> SpectralSequence {
    let Pairing { bars, survivors } = pairing(f);
    let last = bars
        .iter()
        .map(|(b, d)| (d - b) as usize)
        .max()
        .unwrap_or(0);
    let pages = (1..=last + 1)
        .map(|r| {
            let mut dims: BTreeMap<i64, usize> = f.levels.iter().map(|&l| (l, 0)).collect();
            for &s in &survivors {
                *dims.entry(s).or_default() += 1;
            }
            for &(b, d) in &bars {
                if (d - b) as usize >= r {
                    *dims.entry(b).or_default() += 1;
                    *dims.entry(d).or_default() += 1;
                }
            }
            Page {
                r,
                dims,
                rank: bars.iter().filter(|(b, d)| (d - b) as usize == r).count(),
            }
        })
        .collect();
    SpectralSequence {
        slice: f.slice,
        pages,
        survivors,
    }
}

/// The filtration level of the one class surviving on the `i = 0` slice.
///
/// ```
/// use veerkit::cfk::{models, tau};
///
/// assert_eq!(tau(&models::right_trefoil()).unwrap(), 1);
/// assert_eq!(tau(&models::figure_eight()).unwrap(), 0);
/// ```
pub fn tau(c: &ReducedCFK) -> Result<i64> {
    if !c.has_maslov() {
        return Err(Error::InvalidArgument("tau needs Maslov gradings".into()));
    }
    let p = pairing(&flatten(c, Slice::I(0))?);
    match p.survivors.as_slice() {
        [level] => Ok(*level),
        other => Err(Error::TotalHomology(other.len())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BValue {
    Finite(u64),
    Infinity,
}

impl BValue {
    pub fn is_one(self) -> bool {
        self == BValue::Finite(1)
    }
}

impl fmt::Display for BValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BValue::Finite(v) => write!(f, "{v}"),
            BValue::Infinity => f.write_str("infinity"),
        }
    }
}

impl Serialize for BValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BValue::Finite(v) => s.serialize_u64(*v),
            BValue::Infinity => s.serialize_str("infinity"),
        }
    }
}

/// `g` plus the first level at which the bottom generator of the mirror's
/// `i = 0` slice becomes a boundary; infinite if it never does.
pub fn b_invariant(c: &ReducedCFK) -> Result<BValue> {
    let g = c.fibered_genus.ok_or(Error::NotFibered)?;
    let top = c.top_generator()?.id.clone();
    let f = flatten(&mirror(c)?, Slice::I(0))?;
    let target = f
        .ids
        .iter()
        .position(|id| *id == top)
        .expect("mirror keeps ids");
    let goal = BitVec::from_indices(f.len(), [target]);
    let mut span = Echelon::new(f.len());
    let order = f.order();
    let mut i = 0;
    while i < order.len() {
        let level = f.levels[order[i]];
        while i < order.len() && f.levels[order[i]] == level {
            let x = order[i];
            span.insert(&BitVec::from_indices(
                f.len(),
                f.differential[x].iter().copied(),
            ));
            i += 1;
        }
        if level >= -g && span.contains(&goal) {
            return Ok(BValue::Finite((g + level) as u64));
        }
    }
    Ok(BValue::Infinity)
}

/// Whether `d_1` from the top grading to the next one is nonzero on the
/// `i = 0` slice of `c` itself. Equivalent to `b(c) = 1`.
pub fn b_invariant_via_top_differential(c: &ReducedCFK) -> Result<bool> {
    let g = c.fibered_genus.ok_or(Error::NotFibered)?;
    let top = c.top_generator()?.id.clone();
    let f = flatten(c, Slice::I(0))?;
    let x = f
        .ids
        .iter()
        .position(|id| *id == top)
        .expect("top is a generator");
    Ok(f.differential[x].iter().any(|&y| f.levels[y] == g - 1))
}
