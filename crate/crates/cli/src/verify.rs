//! Seeded randomized checks. Trial `t` draws from the ChaCha stream `t` of
//! the given seed, so results do not depend on how trials are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use veerkit::cable_glue::random::{random_closed, random_h};
use veerkit::cable_glue::rv_via_symplectic;
use veerkit::cfk::random::{random_cfk, random_fibered_cfk};
use veerkit::cfk::{flatten, mirror, signature, spectral_sequence, validate_cfk, Slice};
use veerkit::floer_symp::hf_symp_dim;
use veerkit::surgery::check_yi;
use veerkit::twist_calculus::veering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Property {
    /// Symplectic difference is in {-2, 0, 2}, matches the twist verdict and
    /// does not depend on the cable parameter.
    PropSymp,
    /// Symplectic dimension of a closed map equals that of its inverse.
    Inverse,
    /// Random complexes: validity, mirror contract, page telescoping.
    Cfk,
    /// Zero-surgery next-to-top dimension on random sums with a figure-eight.
    Yi,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub trials: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failing_trials: Vec<usize>,
}

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn prop_symp(rng: &mut ChaCha8Rng) -> bool {
    let h = random_h(rng);
    let Ok(expected) = veering(&h) else {
        return false;
    };
    let mut first = None;
    for n in 1..=3 {
        let Ok(v) = rv_via_symplectic(&h, n) else {
            return false;
        };
        if ![-2, 0, 2].contains(&v.difference) || v.verdict != expected {
            return false;
        }
        if *first.get_or_insert(v.difference) != v.difference {
            return false;
        }
    }
    true
}

fn inverse(rng: &mut ChaCha8Rng) -> bool {
    let m = random_closed(rng);
    let (Ok(inv), Ok(a)) = (m.inverse(), hf_symp_dim(&m)) else {
        return false;
    };
    matches!(hf_symp_dim(&inv), Ok(b) if b.concrete == a.concrete && b.opaque.is_empty() && a.opaque.is_empty())
}

fn cfk(rng: &mut ChaCha8Rng) -> bool {
    let c = random_cfk(rng);
    if !validate_cfk(&c).is_valid() {
        return false;
    }
    let Ok(m) = mirror(&c) else { return false };
    let dims = c.dims_by_alexander();
    let mdims = m.dims_by_alexander();
    if dims.len() != mdims.len() || dims.iter().any(|(a, d)| mdims.get(&-a) != Some(d)) {
        return false;
    }
    if !matches!(mirror(&m), Ok(mm) if signature(&mm) == signature(&c)) {
        return false;
    }
    [Slice::I(0), Slice::J(0)].into_iter().all(|s| {
        let ss = spectral_sequence(&flatten(&c, s).expect("validated"));
        ss.e1().total() == ss.e_infinity().total() + 2 * ss.total_rank()
    })
}

fn yi(rng: &mut ChaCha8Rng) -> bool {
    let k = random_fibered_cfk(rng, true);
    matches!(check_yi(&k, &[1, 2, 3]), Ok(c) if c.holds)
}

pub fn run(property: Property, trials: usize, seed: u64) -> Summary {
    let check: fn(&mut ChaCha8Rng) -> bool = match property {
        Property::PropSymp => prop_symp,
        Property::Inverse => inverse,
        Property::Cfk => cfk,
        Property::Yi => yi,
    };
    let failing_trials: Vec<usize> = (0..trials)
        .into_par_iter()
        .filter(|&t| !check(&mut trial_rng(seed, t)))
        .collect();
    Summary {
        trials,
        failures: failing_trials.len(),
        failing_trials,
    }
}
