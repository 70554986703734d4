//! Standard-form surface homeomorphisms as decorated region graphs.
//!
//! A [`StandardFormMap`] records the pieces of the complement of the
//! invariant set (fixed, periodic, pseudo-Anosov, or permuted in an orbit),
//! the twist and flip-twist annuli of the invariant set, and the circles
//! along which they meet. Twist profiles are reduced to what every formula
//! downstream reads: a sign, whether the twist is full or partial, and the
//! partial fraction.
//!
//! Fixed annuli have two records. The [`Piece`] is authoritative; an
//! [`AnnulusKind::FixedAnnulus`] entry may accompany it inside a twist stack
//! and is cross-checked by [`validate`].

mod builder;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use builder::MapBuilder;
pub use validate::{validate, ValidationReport, Violation};

macro_rules! string_id {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Self {
                $name(s.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name(s.to_owned())
            }
        }
    };
}

string_id!(
    /// Identifier of a reducing curve or boundary component.
    CircleId
);
string_id!(PieceId);
string_id!(AnnulusId);

/// Orientation sign of a twist. Serialized as `1` / `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.as_i64())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match i64::deserialize(d)? {
            1 => Ok(Sign::Positive),
            -1 => Ok(Sign::Negative),
            other => Err(serde::de::Error::custom(format!(
                "sign must be 1 or -1, got {other}"
            ))),
        }
    }
}

/// A nonnegative count that may be left symbolic.
///
/// Lefschetz numbers of periodic pieces and fixed-point counts of
/// pseudo-Anosov pieces are not computed here; they default to `Opaque` and
/// flow into dimension breakdowns as named tokens.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Term {
    #[default]
    Opaque,
    Value(u64),
}

impl Term {
    pub fn is_opaque(&self) -> bool {
        matches!(self, Term::Opaque)
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Term::Opaque => s.serialize_str("opaque"),
            Term::Value(v) => s.serialize_u64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) if v >= 0 => Ok(Term::Value(v as u64)),
            Raw::Int(v) => Err(serde::de::Error::custom(format!(
                "expected a nonnegative count or \"opaque\", got {v}"
            ))),
            Raw::Str(s) if s == "opaque" => Ok(Term::Opaque),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected a nonnegative count or \"opaque\", got {s:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circle {
    pub id: CircleId,
    pub is_surface_boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PieceKind {
    Fixed,
    Periodic {
        period: u32,
        lefschetz: Term,
    },
    PseudoAnosov {
        pa_fixed_count: Term,
        /// Prongs of the stable foliation meeting each boundary circle.
        prongs: BTreeMap<CircleId, u32>,
        /// Prong shift `n` on a boundary circle (the map sends prong `m` to
        /// prong `m + n`); missing entries are `0`.
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        rotation: BTreeMap<CircleId, i64>,
    },
    Permuted {
        period: u32,
        orbit: String,
        /// Optional override of the (default zero) Lefschetz contribution.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lefschetz: Option<u64>,
    },
}

impl PieceKind {
    pub fn name(&self) -> &'static str {
        match self {
            PieceKind::Fixed => "fixed",
            PieceKind::Periodic { .. } => "periodic",
            PieceKind::PseudoAnosov { .. } => "pseudo-anosov",
            PieceKind::Permuted { .. } => "permuted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub id: PieceId,
    pub genus: u32,
    pub boundary: Vec<CircleId>,
    #[serde(flatten)]
    pub kind: PieceKind,
}

impl Piece {
    pub fn is_fixed(&self) -> bool {
        matches!(self.kind, PieceKind::Fixed)
    }

    pub fn is_annular(&self) -> bool {
        self.genus == 0 && self.boundary.len() == 2
    }

    /// A fixed annulus: the only pieces allowed inside a multitwist region.
    pub fn is_fixed_annulus(&self) -> bool {
        self.is_fixed() && self.is_annular()
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary.len() as i64
    }

    pub fn is_pseudo_anosov(&self) -> bool {
        matches!(self.kind, PieceKind::PseudoAnosov { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AnnulusKind {
    TwistFull {
        sign: Sign,
    },
    TwistPartial {
        sign: Sign,
        #[serde(with = "crate::ratio::json")]
        fraction: Rational64,
    },
    FlipTwist,
    FixedAnnulus,
}

impl AnnulusKind {
    pub fn twist_sign(&self) -> Option<Sign> {
        match self {
            AnnulusKind::TwistFull { sign } | AnnulusKind::TwistPartial { sign, .. } => Some(*sign),
            _ => None,
        }
    }

    pub fn is_partial(&self) -> bool {
        matches!(self, AnnulusKind::TwistPartial { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annulus {
    pub id: AnnulusId,
    pub sides: [CircleId; 2],
    #[serde(flatten)]
    pub kind: AnnulusKind,
}

impl Annulus {
    pub fn is_twist(&self) -> bool {
        self.kind.twist_sign().is_some()
    }

    /// The side opposite `c`, if `c` is a side of this annulus.
    pub fn other_side(&self, c: &CircleId) -> Option<&CircleId> {
        if &self.sides[0] == c {
            Some(&self.sides[1])
        } else if &self.sides[1] == c {
            Some(&self.sides[0])
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub genus: u32,
    pub boundary_count: u32,
}

/// A standard representative, as a region graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardFormMap {
    pub circles: Vec<Circle>,
    pub pieces: Vec<Piece>,
    pub annuli: Vec<Annulus>,
    pub surface_boundary: Vec<CircleId>,
    pub meta: Meta,
}

/// Twisting recorded by the annular stack at a boundary circle: `full_twists`
/// full twists of sign `sign` followed by an optional partial twist of
/// `fraction` (zero when absent; otherwise `0 < |fraction| < 1` with the same
/// sign).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultitwistStub {
    pub sign: Sign,
    pub full_twists: u32,
    #[serde(with = "crate::ratio::json")]
    pub fraction: Rational64,
}

impl MultitwistStub {
    /// Builds a stub, normalizing `r = 0` stubs to positive sign.
    pub fn new(sign: Sign, full_twists: u32, fraction: Rational64) -> Self {
        let sign = if full_twists == 0 && fraction.is_zero() {
            Sign::Positive
        } else {
            sign
        };
        MultitwistStub {
            sign,
            full_twists,
            fraction,
        }
    }

    /// `εk + r`.
    pub fn coefficient(&self) -> Rational64 {
        Rational64::from_integer(self.sign.as_i64() * self.full_twists as i64) + self.fraction
    }

    /// The stub whose coefficient is `c`.
    pub fn from_coefficient(c: Rational64) -> Self {
        let sign = if c.is_negative() {
            Sign::Negative
        } else {
            Sign::Positive
        };
        let full = c.abs().to_integer();
        let fraction = c - Rational64::from_integer(sign.as_i64() * full);
        MultitwistStub::new(sign, full as u32, fraction)
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Positive && (self.full_twists > 0 || !self.fraction.is_zero())
    }

    pub fn inverse(&self) -> Self {
        MultitwistStub::new(self.sign.flip(), self.full_twists, -self.fraction)
    }
}

/// What a surface-boundary circle abuts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BoundaryStub {
    Stub(MultitwistStub),
    DirectlyFixed { piece: PieceId },
    NonTrivialBoundary,
}

/// One region-side incident to a circle.
#[derive(Clone, Copy, Debug)]
pub enum Side<'a> {
    Piece(&'a Piece),
    Annulus(&'a Annulus),
}

impl<'a> Side<'a> {
    pub fn id(&self) -> &'a str {
        match self {
            Side::Piece(p) => p.id.as_str(),
            Side::Annulus(a) => a.id.as_str(),
        }
    }

    fn same(&self, other: &Side<'_>) -> bool {
        match (self, other) {
            (Side::Piece(a), Side::Piece(b)) => std::ptr::eq(*a, *b),
            (Side::Annulus(a), Side::Annulus(b)) => std::ptr::eq(*a, *b),
            _ => false,
        }
    }

    pub fn as_piece(&self) -> Option<&'a Piece> {
        match self {
            Side::Piece(p) => Some(p),
            Side::Annulus(_) => None,
        }
    }

    pub fn as_annulus(&self) -> Option<&'a Annulus> {
        match self {
            Side::Annulus(a) => Some(a),
            Side::Piece(_) => None,
        }
    }
}

/// Incidence lookups over a map. Fixed-annulus records are skipped; their
/// pieces carry the incidence.
pub struct MapIndex<'a> {
    pub map: &'a StandardFormMap,
    sides: BTreeMap<&'a CircleId, Vec<Side<'a>>>,
    pieces: BTreeMap<&'a PieceId, &'a Piece>,
}

impl<'a> MapIndex<'a> {
    pub fn new(map: &'a StandardFormMap) -> Self {
        let mut sides: BTreeMap<&CircleId, Vec<Side>> = BTreeMap::new();
        for c in &map.circles {
            sides.entry(&c.id).or_default();
        }
        for p in &map.pieces {
            for c in &p.boundary {
                sides.entry(c).or_default().push(Side::Piece(p));
            }
        }
        for a in &map.annuli {
            if a.kind == AnnulusKind::FixedAnnulus {
                continue;
            }
            for c in &a.sides {
                sides.entry(c).or_default().push(Side::Annulus(a));
            }
        }
        let pieces = map.pieces.iter().map(|p| (&p.id, p)).collect();
        MapIndex { map, sides, pieces }
    }

    pub fn sides(&self, c: &CircleId) -> &[Side<'a>] {
        self.sides.get(c).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn piece(&self, id: &PieceId) -> Option<&'a Piece> {
        self.pieces.get(id).copied()
    }

    /// The region on the other side of `c` from `from`.
    pub fn across(&self, c: &CircleId, from: Side<'_>) -> Option<Side<'a>> {
        let sides = self.sides(c);
        if sides.len() != 2 {
            return None;
        }
        if sides[0].same(&from) {
            Some(sides[1])
        } else if sides[1].same(&from) {
            Some(sides[0])
        } else {
            None
        }
    }

    /// Twist annuli reached from `a` through circle `c`, either directly or
    /// across one fixed annulus.
    pub fn twist_neighbor(&self, a: &'a Annulus, c: &CircleId) -> Option<TwistLink<'a>> {
        match self.across(c, Side::Annulus(a))? {
            Side::Annulus(b) if b.is_twist() => Some(TwistLink::Direct(b)),
            Side::Piece(p) if p.is_fixed_annulus() => {
                let far = p.boundary.iter().find(|x| *x != c)?;
                match self.across(far, Side::Piece(p))? {
                    Side::Annulus(b) if b.is_twist() => Some(TwistLink::ViaFixedAnnulus(p, b)),
                    _ => None,
                }
            }
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum TwistLink<'a> {
    Direct(&'a Annulus),
    ViaFixedAnnulus(&'a Piece, &'a Annulus),
}

impl StandardFormMap {
    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Sorts every id list; the canonical form is what [`Self::to_json`] writes.
    pub fn canonicalize(&mut self) {
        self.circles.sort_by(|a, b| a.id.cmp(&b.id));
        self.pieces.sort_by(|a, b| a.id.cmp(&b.id));
        for p in &mut self.pieces {
            p.boundary.sort();
        }
        self.annuli.sort_by(|a, b| a.id.cmp(&b.id));
        self.surface_boundary.sort();
    }

    pub fn canonical(&self) -> Self {
        let mut m = self.clone();
        m.canonicalize();
        m
    }

    /// Pretty JSON of the canonical form.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.canonical()).expect("maps always serialize")
    }

    pub fn index(&self) -> MapIndex<'_> {
        MapIndex::new(self)
    }

    pub fn piece(&self, id: &PieceId) -> Option<&Piece> {
        self.pieces.iter().find(|p| &p.id == id)
    }

    pub fn circle(&self, id: &CircleId) -> Option<&Circle> {
        self.circles.iter().find(|c| &c.id == id)
    }

    pub fn is_closed(&self) -> bool {
        self.surface_boundary.is_empty()
    }

    /// Euler characteristic summed over pieces (annuli contribute zero).
    pub fn euler_from_pieces(&self) -> i64 {
        self.pieces.iter().map(Piece::euler_characteristic).sum()
    }

    pub fn declared_euler(&self) -> i64 {
        2 - 2 * self.meta.genus as i64 - self.meta.boundary_count as i64
    }

    fn require_valid(&self) -> Result<()> {
        let report = validate(self);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidMap(report))
        }
    }

    /// The inverse map: twist signs and fractions negated, prong shifts
    /// negated, all other piece data preserved.
    pub fn inverse(&self) -> Result<Self> {
        self.require_valid()?;
        Ok(self.inverse_unchecked())
    }

    pub(crate) fn inverse_unchecked(&self) -> Self {
        let mut m = self.clone();
        for a in &mut m.annuli {
            match &mut a.kind {
                AnnulusKind::TwistFull { sign } => *sign = sign.flip(),
                AnnulusKind::TwistPartial { sign, fraction } => {
                    *sign = sign.flip();
                    *fraction = -*fraction;
                }
                AnnulusKind::FlipTwist | AnnulusKind::FixedAnnulus => {}
            }
        }
        for p in &mut m.pieces {
            if let PieceKind::PseudoAnosov { rotation, .. } = &mut p.kind {
                for n in rotation.values_mut() {
                    *n = -*n;
                }
            }
        }
        m
    }

    /// True iff the map has no annuli and a single fixed piece.
    pub fn is_identity(&self) -> bool {
        self.annuli.is_empty() && self.pieces.len() == 1 && self.pieces[0].is_fixed()
    }

    /// Inspects the regions abutting the surface-boundary circle `b`.
    pub fn boundary_stub(&self, b: &CircleId) -> Result<BoundaryStub> {
        let circle = self
            .circle(b)
            .ok_or_else(|| Error::UnknownCircle(b.to_string()))?;
        if !circle.is_surface_boundary || !self.surface_boundary.contains(b) {
            return Err(Error::NotSurfaceBoundary(b.to_string()));
        }
        let index = self.index();
        let region = match index.sides(b) {
            [only] => *only,
            _ => {
                return Err(Error::Structural(format!(
                    "boundary circle `{b}` must abut exactly one region"
                )))
            }
        };
        match region {
            Side::Piece(p) => Ok(match &p.kind {
                PieceKind::Fixed => BoundaryStub::DirectlyFixed {
                    piece: p.id.clone(),
                },
                PieceKind::PseudoAnosov {
                    prongs, rotation, ..
                } => {
                    let k = prongs.get(b).copied().unwrap_or(1).max(1) as i64;
                    let n = rotation.get(b).copied().unwrap_or(0);
                    if n.mod_floor(&k) == 0 {
                        BoundaryStub::Stub(MultitwistStub::new(
                            Sign::Positive,
                            0,
                            Rational64::zero(),
                        ))
                    } else {
                        BoundaryStub::NonTrivialBoundary
                    }
                }
                PieceKind::Periodic { .. } | PieceKind::Permuted { .. } => {
                    BoundaryStub::NonTrivialBoundary
                }
            }),
            Side::Annulus(first) => {
                let Some(sign) = first.kind.twist_sign() else {
                    return Ok(BoundaryStub::NonTrivialBoundary);
                };
                // Sum the twisting over the whole multitwist region.
                let mut total = Rational64::zero();
                let mut current = first;
                let mut entry = b.clone();
                for _ in 0..self.annuli.len() {
                    match &current.kind {
                        AnnulusKind::TwistFull { sign } => {
                            total += Rational64::from_integer(sign.as_i64())
                        }
                        AnnulusKind::TwistPartial { fraction, .. } => total += *fraction,
                        _ => break,
                    }
                    let exit = current
                        .other_side(&entry)
                        .expect("walk enters annuli through a side")
                        .clone();
                    match index.twist_neighbor(current, &exit) {
                        Some(TwistLink::Direct(next))
                            if next.kind.twist_sign() == Some(sign)
                                && next.kind.is_partial() != current.kind.is_partial() =>
                        {
                            entry = exit;
                            current = next;
                        }
                        Some(TwistLink::ViaFixedAnnulus(p, next))
                            if next.kind.twist_sign() == Some(sign) =>
                        {
                            entry = p
                                .boundary
                                .iter()
                                .find(|c| **c != exit)
                                .expect("fixed annulus has two sides")
                                .clone();
                            current = next;
                        }
                        _ => break,
                    }
                }
                Ok(BoundaryStub::Stub(MultitwistStub::from_coefficient(total)))
            }
        }
    }

    /// Circle ids of every piece boundary, deduplicated.
    pub fn piece_circles(&self) -> BTreeSet<&CircleId> {
        self.pieces.iter().flat_map(|p| p.boundary.iter()).collect()
    }
}
