//! Fractional Dehn twist coefficients and the veering classifier.

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface_map::{
    validate, BoundaryStub, CircleId, MultitwistStub, PieceKind, Side, StandardFormMap,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fdtc {
    #[serde(with = "crate::ratio::json", rename = "fdtc")]
    pub value: Rational64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VeeringVerdict {
    RightVeering,
    LeftVeering,
    Neither,
    Identity,
}

impl VeeringVerdict {
    /// The verdict for the inverse map.
    pub fn mirror(self) -> Self {
        match self {
            VeeringVerdict::RightVeering => VeeringVerdict::LeftVeering,
            VeeringVerdict::LeftVeering => VeeringVerdict::RightVeering,
            other => other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VeeringVerdict::RightVeering => "right-veering",
            VeeringVerdict::LeftVeering => "left-veering",
            VeeringVerdict::Neither => "neither",
            VeeringVerdict::Identity => "identity",
        }
    }
}

impl std::fmt::Display for VeeringVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn require_valid(m: &StandardFormMap) -> Result<()> {
    let report = validate(m);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidMap(report))
    }
}

/// The stub at `b`, with non-identity boundaries turned into errors.
fn identity_stub(m: &StandardFormMap, b: &CircleId) -> Result<BoundaryStub> {
    match m.boundary_stub(b)? {
        BoundaryStub::NonTrivialBoundary => Err(Error::NotIdentityOnBoundary(b.to_string())),
        s => Ok(s),
    }
}

/// Twist coefficient of a boundary stub: `εk + r`, or zero when the boundary
/// sits directly on a fixed piece.
pub fn stub_fdtc(stub: &BoundaryStub) -> Option<Fdtc> {
    match stub {
        BoundaryStub::Stub(s) => Some(Fdtc {
            value: s.coefficient(),
        }),
        BoundaryStub::DirectlyFixed { .. } => Some(Fdtc {
            value: Rational64::zero(),
        }),
        BoundaryStub::NonTrivialBoundary => None,
    }
}

/// Fractional Dehn twist coefficient of `m` at the boundary circle `b`.
///
/// ```
/// use num_rational::Rational64;
/// use veerkit::surface_map::{MapBuilder, Sign};
/// use veerkit::twist_calculus::fdtc;
///
/// let mut b = MapBuilder::new();
/// b.boundary("dS")
///     .twist("t1", Sign::Positive, "dS", "c1")
///     .fixed_annulus("A", "c1", "c2")
///     .twist("t2", Sign::Positive, "c2", "c3")
///     .partial("p", Rational64::new(1, 3), "c3", "c4")
///     .periodic("P", 1, &["c4"], 3);
/// let m = b.build().unwrap();
/// assert_eq!(fdtc(&m, &"dS".into()).unwrap().value, Rational64::new(7, 3));
/// ```
pub fn fdtc(m: &StandardFormMap, b: &CircleId) -> Result<Fdtc> {
    require_valid(m)?;
    let stub = identity_stub(m, b)?;
    Ok(stub_fdtc(&stub).expect("non-trivial boundaries were rejected"))
}

/// The stub obtained by multiplying all twisting at the boundary by `n`.
pub fn power_stub(s: &MultitwistStub, n: u32) -> MultitwistStub {
    MultitwistStub::from_coefficient(s.coefficient() * Rational64::from_integer(n as i64))
}

/// Checks `c(m^-1) = -c(m)` and `c(m^n) = n c(m)` at `b`, the power taken at
/// stub level.
pub fn fdtc_axioms_check(m: &StandardFormMap, b: &CircleId, n: u32) -> Result<bool> {
    let c = fdtc(m, b)?.value;
    let c_inv = fdtc(&m.inverse()?, b)?.value;
    let stub = match identity_stub(m, b)? {
        BoundaryStub::Stub(s) => s,
        _ => MultitwistStub::new(crate::surface_map::Sign::Positive, 0, Rational64::zero()),
    };
    let powered = power_stub(&stub, n).coefficient();
    Ok(c_inv == -c && powered == c * Rational64::from_integer(n as i64))
}

/// Whether the boundary condition for right-veering holds: a positive stub,
/// or a fixed piece at the boundary whose other circles all meet positive
/// twists.
fn veers_right(m: &StandardFormMap, b: &CircleId) -> Result<bool> {
    match identity_stub(m, b)? {
        BoundaryStub::Stub(s) => Ok(s.is_positive()),
        BoundaryStub::DirectlyFixed { piece } => {
            let index = m.index();
            let s0 = index
                .piece(&piece)
                .ok_or_else(|| Error::UnknownPiece(piece.to_string()))?;
            debug_assert!(matches!(s0.kind, PieceKind::Fixed));
            Ok(s0.boundary.iter().filter(|c| *c != b).all(|c| {
                matches!(
                    index.across(c, Side::Piece(s0)),
                    Some(Side::Annulus(a)) if a.kind.twist_sign() == Some(crate::surface_map::Sign::Positive)
                )
            }))
        }
        BoundaryStub::NonTrivialBoundary => unreachable!("rejected by identity_stub"),
    }
}

/// Right-/left-veering classification of a single-boundary map.
pub fn veering(m: &StandardFormMap) -> Result<VeeringVerdict> {
    require_valid(m)?;
    let b = match m.surface_boundary.as_slice() {
        [b] => b,
        [] => return Err(Error::Unsupported("veering needs a boundary circle".into())),
        _ => {
            return Err(Error::Unsupported(
                "veering is only classified for a single boundary circle".into(),
            ))
        }
    };
    identity_stub(m, b)?;
    if m.is_identity() {
        return Ok(VeeringVerdict::Identity);
    }
    if veers_right(m, b)? {
        return Ok(VeeringVerdict::RightVeering);
    }
    if veers_right(&m.inverse()?, b)? {
        return Ok(VeeringVerdict::LeftVeering);
    }
    Ok(VeeringVerdict::Neither)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface_map::{MapBuilder, Sign};

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn dsid() -> CircleId {
        "dS".into()
    }

    #[test]
    fn stub_formula() {
        let s = BoundaryStub::Stub(MultitwistStub::new(Sign::Positive, 2, r(1, 3)));
        assert_eq!(stub_fdtc(&s).unwrap().value, r(7, 3));
        let s = BoundaryStub::DirectlyFixed { piece: "S".into() };
        assert_eq!(stub_fdtc(&s).unwrap().value, Rational64::zero());
        assert!(stub_fdtc(&BoundaryStub::NonTrivialBoundary).is_none());
    }

    #[test]
    fn non_identity_boundary_is_an_error() {
        let mut b = MapBuilder::new();
        b.boundary("dS").periodic("P", 1, &["dS"], 3);
        let m = b.build().unwrap();
        let err = fdtc(&m, &dsid()).unwrap_err();
        assert!(err.to_string().contains("map not identity on boundary"));
        assert!(veering(&m).is_err());
    }

    #[test]
    fn stub_level_powers() {
        let s = MultitwistStub::new(Sign::Positive, 0, r(1, 12));
        assert_eq!(
            power_stub(&s, 3),
            MultitwistStub::new(Sign::Positive, 0, r(1, 4))
        );
        let s = MultitwistStub::new(Sign::Negative, 1, r(-1, 2));
        assert_eq!(power_stub(&s, 2).coefficient(), r(-3, 1));
        assert_eq!(
            power_stub(&s, 2),
            MultitwistStub::new(Sign::Negative, 3, Rational64::zero())
        );
    }

    #[test]
    fn axioms_on_a_stack() {
        let mut b = MapBuilder::new();
        b.boundary("dS")
            .twist("t1", Sign::Positive, "dS", "c1")
            .fixed_annulus("A", "c1", "c2")
            .twist("t2", Sign::Positive, "c2", "c3")
            .partial("p", r(1, 3), "c3", "c4")
            .periodic("P", 1, &["c4"], 3);
        let m = b.build().unwrap();
        assert_eq!(
            fdtc(&m.inverse().unwrap(), &dsid()).unwrap().value,
            r(-7, 3)
        );
        for n in 1..5 {
            assert!(fdtc_axioms_check(&m, &dsid(), n).unwrap());
        }
    }

    #[test]
    fn positive_stub_veers_right() {
        let mut b = MapBuilder::new();
        b.boundary("dS")
            .twist("t", Sign::Positive, "dS", "c")
            .fixed("S", 1, &["c"]);
        let m = b.build().unwrap();
        assert_eq!(veering(&m).unwrap(), VeeringVerdict::RightVeering);
        assert_eq!(
            veering(&m.inverse().unwrap()).unwrap(),
            VeeringVerdict::LeftVeering
        );
    }

    #[test]
    fn fixed_piece_with_positive_neighbours_veers_right() {
        let mut b = MapBuilder::new();
        b.boundary("dS")
            .fixed("S0", 0, &["dS", "a", "b"])
            .twist("ta", Sign::Positive, "a", "a2")
            .twist("tb", Sign::Positive, "b", "b2")
            .fixed("R", 1, &["a2", "b2"]);
        let m = b.build().unwrap();
        assert_eq!(fdtc(&m, &dsid()).unwrap().value, Rational64::zero());
        assert_eq!(veering(&m).unwrap(), VeeringVerdict::RightVeering);

        let mut b = MapBuilder::new();
        b.boundary("dS")
            .fixed("S0", 0, &["dS", "a", "b"])
            .twist("ta", Sign::Positive, "a", "a2")
            .twist("tb", Sign::Negative, "b", "b2")
            .fixed("R", 1, &["a2", "b2"]);
        assert_eq!(
            veering(&b.build().unwrap()).unwrap(),
            VeeringVerdict::Neither
        );
    }

    #[test]
    fn pseudo_anosov_without_twisting_is_neither() {
        let mut b = MapBuilder::new();
        b.boundary("dS").pseudo_anosov("X", 1, &[("dS", 2)]);
        let m = b.build().unwrap();
        assert_eq!(fdtc(&m, &dsid()).unwrap().value, Rational64::zero());
        assert_eq!(veering(&m).unwrap(), VeeringVerdict::Neither);
    }

    #[test]
    fn identity_and_unsupported() {
        let mut b = MapBuilder::new();
        b.boundary("dS").fixed("S", 1, &["dS"]);
        assert_eq!(
            veering(&b.build().unwrap()).unwrap(),
            VeeringVerdict::Identity
        );

        let mut b = MapBuilder::new();
        b.boundary("d1").boundary("d2").fixed("S", 1, &["d1", "d2"]);
        assert!(matches!(
            veering(&b.build().unwrap()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn verdict_json() {
        assert_eq!(
            serde_json::to_string(&VeeringVerdict::RightVeering).unwrap(),
            r#""right-veering""#
        );
        let f = Fdtc { value: r(1, 12) };
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"fdtc":{"num":1,"den":12}}"#
        );
    }
}
