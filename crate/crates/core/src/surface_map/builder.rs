use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;

use super::{
    validate, Annulus, AnnulusId, AnnulusKind, Circle, CircleId, Meta, Piece, PieceKind, Sign,
    StandardFormMap, Term,
};
use crate::error::{Error, Result};

/// Incremental construction of a [`StandardFormMap`].
///
/// Circles are created on first mention. The total genus is derived from the
/// Euler characteristic of the pieces, so a built map always passes the Euler
/// check.
///
/// ```
/// use veerkit::surface_map::{MapBuilder, Sign};
///
/// let mut b = MapBuilder::new();
/// b.boundary("dS")
///     .twist("t", Sign::Positive, "dS", "c")
///     .fixed("S0", 1, &["c"]);
/// let m = b.build().unwrap();
/// assert_eq!(m.meta.genus, 1);
/// ```
#[derive(Clone, Debug, Default)]
pub struct MapBuilder {
    boundary: Vec<CircleId>,
    mentioned: BTreeSet<CircleId>,
    pieces: Vec<Piece>,
    annuli: Vec<Annulus>,
}

impl MapBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a surface-boundary circle.
    pub fn boundary(&mut self, c: &str) -> &mut Self {
        self.boundary.push(c.into());
        self.mentioned.insert(c.into());
        self
    }

    pub fn piece(&mut self, p: Piece) -> &mut Self {
        self.mentioned.extend(p.boundary.iter().cloned());
        self.pieces.push(p);
        self
    }

    pub fn annulus(&mut self, a: Annulus) -> &mut Self {
        self.mentioned.extend(a.sides.iter().cloned());
        self.annuli.push(a);
        self
    }

    fn plain(&mut self, id: &str, genus: u32, boundary: &[&str], kind: PieceKind) -> &mut Self {
        self.piece(Piece {
            id: id.into(),
            genus,
            boundary: boundary.iter().map(|c| CircleId::from(*c)).collect(),
            kind,
        })
    }

    pub fn fixed(&mut self, id: &str, genus: u32, boundary: &[&str]) -> &mut Self {
        self.plain(id, genus, boundary, PieceKind::Fixed)
    }

    pub fn periodic(&mut self, id: &str, genus: u32, boundary: &[&str], period: u32) -> &mut Self {
        self.plain(
            id,
            genus,
            boundary,
            PieceKind::Periodic {
                period,
                lefschetz: Term::Opaque,
            },
        )
    }

    /// A pseudo-Anosov piece; `prongs` lists each boundary circle with its prong count.
    pub fn pseudo_anosov(&mut self, id: &str, genus: u32, prongs: &[(&str, u32)]) -> &mut Self {
        let boundary: Vec<&str> = prongs.iter().map(|(c, _)| *c).collect();
        self.plain(
            id,
            genus,
            &boundary,
            PieceKind::PseudoAnosov {
                pa_fixed_count: Term::Opaque,
                prongs: prongs
                    .iter()
                    .map(|(c, k)| (CircleId::from(*c), *k))
                    .collect(),
                rotation: BTreeMap::new(),
            },
        )
    }

    pub fn permuted(
        &mut self,
        id: &str,
        genus: u32,
        boundary: &[&str],
        period: u32,
        orbit: &str,
    ) -> &mut Self {
        self.plain(
            id,
            genus,
            boundary,
            PieceKind::Permuted {
                period,
                orbit: orbit.to_owned(),
                lefschetz: None,
            },
        )
    }

    fn ann(&mut self, id: &str, a: &str, b: &str, kind: AnnulusKind) -> &mut Self {
        self.annulus(Annulus {
            id: AnnulusId::from(id),
            sides: [a.into(), b.into()],
            kind,
        })
    }

    pub fn twist(&mut self, id: &str, sign: Sign, a: &str, b: &str) -> &mut Self {
        self.ann(id, a, b, AnnulusKind::TwistFull { sign })
    }

    /// A partial twist; the sign is read off the fraction.
    pub fn partial(&mut self, id: &str, fraction: Rational64, a: &str, b: &str) -> &mut Self {
        let sign = if fraction < Rational64::from_integer(0) {
            Sign::Negative
        } else {
            Sign::Positive
        };
        self.ann(id, a, b, AnnulusKind::TwistPartial { sign, fraction })
    }

    pub fn flip_twist(&mut self, id: &str, a: &str, b: &str) -> &mut Self {
        self.ann(id, a, b, AnnulusKind::FlipTwist)
    }

    /// A fixed annulus inside a twist stack: the piece plus its stack record.
    pub fn fixed_annulus(&mut self, id: &str, a: &str, b: &str) -> &mut Self {
        self.fixed(id, 0, &[a, b]);
        self.ann(id, a, b, AnnulusKind::FixedAnnulus)
    }

    /// Assembles the map without validating it.
    pub fn build_unchecked(&self) -> StandardFormMap {
        let boundary: BTreeSet<&CircleId> = self.boundary.iter().collect();
        let circles = self
            .mentioned
            .iter()
            .map(|c| Circle {
                id: c.clone(),
                is_surface_boundary: boundary.contains(c),
            })
            .collect();
        let chi: i64 = self.pieces.iter().map(Piece::euler_characteristic).sum();
        let b = boundary.len() as i64;
        let genus = (2 - chi - b).max(0) / 2;
        let mut m = StandardFormMap {
            circles,
            pieces: self.pieces.clone(),
            annuli: self.annuli.clone(),
            surface_boundary: boundary.into_iter().cloned().collect(),
            meta: Meta {
                genus: genus as u32,
                boundary_count: b as u32,
            },
        };
        m.canonicalize();
        m
    }

    /// Assembles and validates the map.
    pub fn build(&self) -> Result<StandardFormMap> {
        let m = self.build_unchecked();
        let report = validate(&m);
        if report.is_valid() {
            Ok(m)
        } else {
            Err(Error::InvalidMap(report))
        }
    }
}
