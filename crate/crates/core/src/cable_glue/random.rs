//! Seeded generators of standard-form maps for randomized checks.
//!
//! [`random_h`] produces valid single-boundary maps that are the identity on
//! the boundary and not isotopic to the identity, covering positive stubs,
//! negative stubs, a fixed piece at the boundary, and a pseudo-Anosov piece
//! at the boundary. [`random_closed`] joins two such maps, or one with a
//! cable model, and binds every symbolic term.

use num_integer::Integer;
use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{build_cable_boundary_model, join};
use crate::floer_symp::bind;
use crate::surface_map::{MapBuilder, PieceKind, Sign, StandardFormMap};

/// Most pieces (fixed annuli included) a generated map may have.
pub const MAX_PIECES: usize = 6;
const MAX_GENUS: u32 = 3;
const MAX_PRONGS: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Boundary,
    Fixed,
    Periodic,
    PseudoAnosov,
}

impl End {
    fn twisting(self) -> bool {
        matches!(self, End::Periodic | End::PseudoAnosov)
    }
}

struct Gen<'r, R: Rng> {
    rng: &'r mut R,
    b: MapBuilder,
    next: u32,
    pieces: usize,
}

impl<'r, R: Rng> Gen<'r, R> {
    fn fresh(&mut self, prefix: &str) -> String {
        self.next += 1;
        format!("{prefix}{}", self.next)
    }

    fn fraction(&mut self, sign: Sign) -> Rational64 {
        let den: i64 = self.rng.gen_range(2..=12);
        let mut num: i64 = self.rng.gen_range(1..den);
        while num.gcd(&den) != 1 {
            num = self.rng.gen_range(1..den);
        }
        Rational64::new(sign.as_i64() * num, den)
    }

    fn sign(&mut self) -> Sign {
        if self.rng.gen_bool(0.5) {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    /// Emits a multitwist region from circle `near` and returns its far circle.
    /// Partial twists only sit at ends facing a periodic or pseudo-Anosov
    /// piece, and never next to the surface boundary unless alone.
    fn chain(&mut self, near: &str, sign: Sign, near_end: End, far_end: End) -> String {
        let far_partial = far_end.twisting() && self.rng.gen_bool(0.6);
        let near_partial = near_end.twisting() && self.rng.gen_bool(0.3);
        let mut fulls: u32 = self.rng.gen_range(0..=2);
        if near_end == End::Boundary && far_end.twisting() && fulls == 0 && self.rng.gen_bool(0.5) {
            // a lone partial twist on the boundary
            let far = self.fresh("c");
            let r = self.fraction(sign);
            let id = self.fresh("p");
            self.b.partial(&id, r, near, &far);
            return far;
        }
        if fulls == 0 && !near_partial && !far_partial {
            fulls = 1;
        }
        let mut at = near.to_owned();
        let mut steps: Vec<bool> = Vec::new(); // true = partial
        if near_partial {
            steps.push(true);
        }
        steps.extend(std::iter::repeat_n(false, fulls as usize));
        if far_partial {
            steps.push(true);
        }
        for (i, partial) in steps.iter().enumerate() {
            if i > 0 {
                let prev_partial = steps[i - 1];
                // Same-kind neighbours need a fixed annulus between them.
                let separate = prev_partial == *partial
                    || (self.pieces < MAX_PIECES && self.rng.gen_bool(0.3));
                if separate {
                    let next = self.fresh("c");
                    let id = self.fresh("A");
                    self.b.fixed_annulus(&id, &at, &next);
                    self.pieces += 1;
                    at = next;
                }
            }
            let next = self.fresh("c");
            if *partial {
                let r = self.fraction(sign);
                let id = self.fresh("p");
                self.b.partial(&id, r, &at, &next);
            } else {
                let id = self.fresh("t");
                self.b.twist(&id, sign, &at, &next);
            }
            at = next;
        }
        at
    }

    fn genus(&mut self, min: u32) -> u32 {
        self.rng.gen_range(min..=MAX_GENUS)
    }

    /// Adds a piece of kind `end` with boundary `circles`, optionally with an
    /// interior flip twist on two extra circles.
    fn piece(&mut self, end: End, circles: &[String], min_genus: u32) -> String {
        let mut circles: Vec<String> = circles.to_vec();
        let flip = matches!(end, End::Periodic | End::PseudoAnosov) && self.rng.gen_bool(0.15);
        if flip {
            let (f1, f2) = (self.fresh("f"), self.fresh("f"));
            let id = self.fresh("flip");
            self.b.flip_twist(&id, &f1, &f2);
            circles.push(f1);
            circles.push(f2);
        }
        let mut g = self.genus(min_genus);
        // keep the piece hyperbolic: no disks or annuli
        if circles.len() <= 2 && g == 0 {
            g = 1;
        }
        let refs: Vec<&str> = circles.iter().map(String::as_str).collect();
        let id = self.fresh(match end {
            End::Fixed => "S",
            End::Periodic => "P",
            End::PseudoAnosov => "X",
            End::Boundary => unreachable!("the boundary is not a piece"),
        });
        self.pieces += 1;
        match end {
            End::Fixed => {
                self.b.fixed(&id, g, &refs);
            }
            End::Periodic => {
                let period = self.rng.gen_range(2..=6);
                self.b.periodic(&id, g, &refs, period);
            }
            End::PseudoAnosov => {
                let prongs: Vec<(&str, u32)> = refs
                    .iter()
                    .map(|c| (*c, self.rng.gen_range(1..=MAX_PRONGS)))
                    .collect();
                self.b.pseudo_anosov(&id, g, &prongs);
            }
            End::Boundary => {}
        }
        id
    }

    /// Closes off `circle` of a piece of kind `parent`, either with a piece
    /// directly across it or through a twist region of sign `sign`.
    fn branch(&mut self, parent: End, circle: &str, sign: Sign) {
        let direct: &[End] = match parent {
            End::PseudoAnosov => &[End::Fixed, End::Periodic, End::PseudoAnosov],
            _ => &[End::PseudoAnosov],
        };
        if self.pieces >= MAX_PIECES || self.rng.gen_bool(0.25) {
            let end = *direct.choose(self.rng).expect("nonempty");
            self.piece(end, &[circle.to_owned()], 1);
            return;
        }
        let ends = [End::Fixed, End::Periodic, End::PseudoAnosov];
        let end = *ends.choose(self.rng).expect("nonempty");
        let far = self.chain(circle, sign, parent, end);
        self.piece(end, &[far], 1);
    }

    /// A core piece at `first` plus up to two extra branches.
    fn core(&mut self, kind: End, first: String) {
        let extra = self.rng.gen_range(0..=2usize);
        let branches: Vec<String> = (0..extra).map(|_| self.fresh("c")).collect();
        let mut circles = vec![first];
        circles.extend(branches.iter().cloned());
        let min_genus = if circles.len() >= 3 { 0 } else { 1 };
        self.piece(kind, &circles, min_genus);
        for c in &branches {
            let sign = self.sign();
            self.branch(kind, c, sign);
        }
    }
}

/// A random valid single-boundary map with boundary circle `dS`, identity on
/// the boundary and not the identity map.
pub fn random_h<R: Rng>(rng: &mut R) -> StandardFormMap {
    loop {
        if let Some(m) = try_random_h(rng) {
            return m;
        }
    }
}

fn try_random_h<R: Rng>(rng: &mut R) -> Option<StandardFormMap> {
    let mut g = Gen {
        rng,
        b: MapBuilder::new(),
        next: 0,
        pieces: 0,
    };
    g.b.boundary("dS");
    match g.rng.gen_range(0..10) {
        // twist stub of either sign
        0..=5 => {
            let sign = if g.rng.gen_bool(0.5) {
                Sign::Positive
            } else {
                Sign::Negative
            };
            let kinds = [End::Fixed, End::Periodic, End::PseudoAnosov];
            let core = *kinds.choose(g.rng).expect("nonempty");
            let far = g.chain("dS", sign, End::Boundary, core);
            g.core(core, far);
        }
        // fixed piece at the boundary
        6..=8 => {
            let branches = g.rng.gen_range(1..=3usize);
            let mode = g.rng.gen_range(0..3);
            let circles: Vec<String> = (0..branches).map(|_| g.fresh("c")).collect();
            let mut all = vec!["dS".to_owned()];
            all.extend(circles.iter().cloned());
            let min_genus = if all.len() >= 3 { 0 } else { 1 };
            g.piece(End::Fixed, &all, min_genus);
            for c in &circles {
                let sign = match mode {
                    0 => Sign::Positive,
                    1 => Sign::Negative,
                    _ => g.sign(),
                };
                g.branch(End::Fixed, c, sign);
            }
        }
        // pseudo-Anosov piece at the boundary, not rotating it
        _ => {
            g.core(End::PseudoAnosov, "dS".to_owned());
        }
    }
    if g.pieces > MAX_PIECES {
        return None;
    }
    let m = g.b.build().ok()?;
    if m.is_identity() {
        return None;
    }
    Some(m)
}

/// A random valid closed map of genus at least two with every symbolic term
/// bound to a value in `0..=9`.
pub fn random_closed<R: Rng>(rng: &mut R) -> StandardFormMap {
    loop {
        let h = random_h(rng);
        let joined = if rng.gen_bool(0.5) {
            let k = random_h(rng);
            join(&h, &k, "L.", "R.")
        } else {
            let side = if rng.gen_bool(0.5) {
                Sign::Positive
            } else {
                Sign::Negative
            };
            let n = rng.gen_range(1..=3);
            let g = build_cable_boundary_model(n, side).expect("n >= 1");
            join(&h, &g.map, "S.", "F.")
        };
        let Ok(mut m) = joined else {
            continue;
        };
        if m.meta.genus < 2 {
            continue;
        }
        let ids: Vec<_> = m
            .pieces
            .iter()
            .filter(|p| !matches!(p.kind, PieceKind::Fixed))
            .map(|p| p.id.clone())
            .collect();
        for id in ids {
            let v = rng.gen_range(0..=9);
            bind(&mut m, &id, v).expect("non-fixed pieces take a value");
        }
        return m;
    }
}
