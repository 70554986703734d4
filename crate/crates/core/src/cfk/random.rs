//! Seeded generators of small valid complexes.
//!
//! A complex is a direct sum of shifted blocks (dots, squares, staircases and
//! tensor products of those), followed by random changes of basis among
//! generators sharing all their gradings, which scramble the arrows without
//! changing the isomorphism type.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{models, spinc, tensor, Arrow, Generator, ReducedCFK};

/// Most generators a generated complex may have.
pub const MAX_GENERATORS: usize = 50;

fn dot() -> ReducedCFK {
    ReducedCFK {
        generators: vec![Generator {
            id: "x".into(),
            alexander: 0,
            maslov: Some(0),
            spinc: spinc::unit(),
        }],
        ..Default::default()
    }
}

fn block<R: Rng>(rng: &mut R, thin: bool) -> ReducedCFK {
    let c = match rng.gen_range(0..4) {
        0 => dot(),
        1 => models::square(if thin { 1 } else { rng.gen_range(1..=3) }),
        2 if thin => models::torus_2(rng.gen_range(1..=3)),
        2 => {
            let half: Vec<u32> = (0..rng.gen_range(1..=2))
                .map(|_| rng.gen_range(1..=2))
                .collect();
            let mut steps = half.clone();
            steps.extend(half.iter().rev());
            models::staircase(&steps)
        }
        _ => {
            let a = block(rng, thin);
            let b = if rng.gen_bool(0.5) {
                dot()
            } else {
                models::square(1)
            };
            tensor(&a, &b).expect("blocks are valid")
        }
    };
    // Move the block to the diagonal M = A before shifting it along it.
    let delta = c.generators[0].maslov.unwrap() - c.generators[0].alexander;
    let da = rng.gen_range(-2..=2);
    let dm = if thin {
        da - delta
    } else {
        da + rng.gen_range(-2..=2)
    };
    models::shift(&c, da, dm)
}

fn relabel(c: &ReducedCFK, prefix: &str, label: &str) -> ReducedCFK {
    let name = |id: &str| format!("{prefix}{id}");
    ReducedCFK {
        generators: c
            .generators
            .iter()
            .map(|g| Generator {
                id: name(&g.id),
                spinc: label.to_owned(),
                ..g.clone()
            })
            .collect(),
        arrows: c
            .arrows
            .iter()
            .map(|a| Arrow {
                from: name(&a.from),
                to: name(&a.to),
                ..a.clone()
            })
            .collect(),
        ..Default::default()
    }
}

/// Replaces `x` by `x + y` for generators `x != y` with equal gradings.
pub fn change_basis(c: &mut ReducedCFK, x: &str, y: &str) {
    let mut extra = Vec::new();
    for a in &c.arrows {
        if a.from == y {
            extra.push(Arrow {
                from: x.to_owned(),
                ..a.clone()
            });
        }
        if a.to == x {
            extra.push(Arrow {
                to: y.to_owned(),
                ..a.clone()
            });
        }
    }
    c.arrows.extend(extra);
    c.normalize();
}

fn scramble<R: Rng>(rng: &mut R, c: &mut ReducedCFK) {
    let mut classes: BTreeMap<(i64, Option<i64>, String), Vec<String>> = BTreeMap::new();
    for g in &c.generators {
        classes
            .entry((g.alexander, g.maslov, g.spinc.clone()))
            .or_default()
            .push(g.id.clone());
    }
    let classes: Vec<Vec<String>> = classes.into_values().filter(|v| v.len() > 1).collect();
    if classes.is_empty() {
        return;
    }
    for _ in 0..rng.gen_range(0..=8) {
        let class = classes.choose(rng).expect("nonempty");
        let picked: Vec<&String> = class.choose_multiple(rng, 2).collect();
        change_basis(c, picked[0], picked[1]);
    }
}

fn generate<R: Rng>(rng: &mut R, thin: bool) -> ReducedCFK {
    let labels = ["0", "s", "t"];
    let mut out = ReducedCFK::default();
    let blocks = rng.gen_range(1..=4);
    for k in 0..blocks {
        let b = block(rng, thin);
        if out.len() + b.len() > MAX_GENERATORS {
            continue;
        }
        let label = labels.choose(rng).expect("nonempty");
        let b = relabel(&b, &format!("b{k}."), label);
        out.generators.extend(b.generators);
        out.arrows.extend(b.arrows);
    }
    scramble(rng, &mut out);
    out.generators.shuffle(rng);
    out
}

/// A random valid complex with at most [`MAX_GENERATORS`] generators.
pub fn random_cfk<R: Rng>(rng: &mut R) -> ReducedCFK {
    generate(rng, false)
}

/// A random valid complex supported on the diagonal `M = A`.
pub fn random_thin_cfk<R: Rng>(rng: &mut R) -> ReducedCFK {
    generate(rng, true)
}

/// A random connected sum of small knots, with a scrambled basis. At most
/// [`MAX_GENERATORS`] generators; when `amphichiral_factor` is set the sum
/// contains a figure-eight, which makes `b` and the mirror's `b` both one.
pub fn random_fibered_cfk<R: Rng>(rng: &mut R, amphichiral_factor: bool) -> ReducedCFK {
    let knots: [fn() -> ReducedCFK; 7] = [
        models::right_trefoil,
        models::left_trefoil,
        models::figure_eight,
        || models::torus_2(2),
        || super::mirror(&models::torus_2(2)).expect("valid"),
        models::torus_3_4,
        || super::mirror(&models::torus_3_4()).expect("valid"),
    ];
    let mut c = if amphichiral_factor {
        models::figure_eight()
    } else {
        knots.choose(rng).expect("nonempty")()
    };
    for _ in 0..rng.gen_range(0..=2) {
        let k = knots.choose(rng).expect("nonempty")();
        if c.len() * k.len() > MAX_GENERATORS {
            break;
        }
        c = tensor(&c, &k).expect("models are valid");
    }
    scramble(rng, &mut c);
    c.generators.shuffle(rng);
    c
}
