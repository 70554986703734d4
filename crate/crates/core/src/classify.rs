//! Veering and surgery consequences read off a fibered knot's complex, and
//! an audit comparing them with a standard-form monodromy.

use serde::Serialize;

use crate::cable_glue::rv_via_symplectic;
use crate::cfk::{b_invariant, mirror, tau, validate_cfk, BValue, ReducedCFK};
use crate::error::{Error, Result};
use crate::surface_map::StandardFormMap;
use crate::twist_calculus::{veering, VeeringVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonodromyVerdict {
    RightVeering,
    LeftVeering,
    Neither,
    Identity,
    /// Both `b` values exceed one on a nontrivial knot: inconsistent input.
    Unknown,
}

impl From<VeeringVerdict> for MonodromyVerdict {
    fn from(v: VeeringVerdict) -> Self {
        match v {
            VeeringVerdict::RightVeering => MonodromyVerdict::RightVeering,
            VeeringVerdict::LeftVeering => MonodromyVerdict::LeftVeering,
            VeeringVerdict::Neither => MonodromyVerdict::Neither,
            VeeringVerdict::Identity => MonodromyVerdict::Identity,
        }
    }
}

/// Slopes `r = p/q` a hyperbolic knot can have exceptional surgeries at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SurgeryConstraint {
    /// `lo <= r <= hi`.
    Interval {
        lo: i64,
        hi: i64,
    },
    /// `|q| <= bound`.
    QBound {
        bound: u32,
    },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub b: BValue,
    pub b_mirror: BValue,
    pub tau: Option<i64>,
    pub genus: i64,
    pub thin: Option<bool>,
    pub monodromy_verdict: MonodromyVerdict,
    pub persistently_foliar: Option<bool>,
    pub surgery_constraint: SurgeryConstraint,
    pub notes: Vec<String>,
}

pub fn classify_fibered(c: &ReducedCFK) -> Result<Classification> {
    let report = validate_cfk(c);
    if !report.is_valid() {
        return Err(Error::InvalidComplex(report));
    }
    let genus = c.fibered_genus.ok_or(Error::NotFibered)?;
    let b = b_invariant(c)?;
    let b_mirror = b_invariant(&mirror(c)?)?;
    let mut notes = vec![
        "b is computed on the mirror's i = 0 slice; b_mirror likewise on the knot's own".to_owned(),
    ];

    let monodromy_verdict = match (b.is_one(), b_mirror.is_one()) {
        (false, true) => MonodromyVerdict::RightVeering,
        (true, false) => MonodromyVerdict::LeftVeering,
        (true, true) => MonodromyVerdict::Neither,
        (false, false) if genus == 0 => MonodromyVerdict::Identity,
        (false, false) => {
            notes.push(
                "b and b_mirror both exceed 1 on a nontrivial knot: inconsistent input".into(),
            );
            MonodromyVerdict::Unknown
        }
    };

    // tau and thinness need Maslov gradings and one-dimensional total homology.
    let (tau, thin) = if c.has_maslov() {
        match tau(c) {
            Ok(t) => (Some(t), Some(c.is_thin()?)),
            Err(Error::TotalHomology(d)) => {
                notes.push(format!(
                    "total homology has dimension {d}; tau and thinness skipped"
                ));
                (None, None)
            }
            Err(e) => return Err(e),
        }
    } else {
        notes.push("no Maslov gradings; tau and thinness skipped".into());
        (None, None)
    };

    let persistently_foliar = match (tau, thin) {
        (Some(t), Some(true)) if t.abs() < genus && genus >= 1 => Some(true),
        _ => None,
    };
    let surgery_constraint = match (tau, thin) {
        (Some(t), _) if genus >= 1 && t == genus => SurgeryConstraint::Interval {
            lo: 0,
            hi: 4 * genus,
        },
        (Some(t), _) if genus >= 1 && t == -genus => SurgeryConstraint::Interval {
            lo: -4 * genus,
            hi: 0,
        },
        (Some(t), Some(true)) if t.abs() < genus => SurgeryConstraint::QBound { bound: 2 },
        _ => SurgeryConstraint::None,
    };
    if surgery_constraint != SurgeryConstraint::None {
        notes.push("surgery_constraint holds only if the knot is hyperbolic".into());
    }
    Ok(Classification {
        b,
        b_mirror,
        tau,
        genus,
        thin,
        monodromy_verdict,
        persistently_foliar,
        surgery_constraint,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub from_complex: MonodromyVerdict,
    pub from_standard_form: Option<MonodromyVerdict>,
    pub from_symplectic: Option<MonodromyVerdict>,
    /// Symplectic dimension difference, when a map was given.
    pub difference: Option<i64>,
    pub agree: bool,
}

/// Compares the verdict read off `c` with those computed from the
/// monodromy `h`, gluing on the cable model with parameter `n`.
pub fn consistency_audit(c: &ReducedCFK, h: Option<&StandardFormMap>, n: u32) -> Result<Audit> {
    let from_complex = classify_fibered(c)?.monodromy_verdict;
    let Some(h) = h else {
        return Ok(Audit {
            from_complex,
            from_standard_form: None,
            from_symplectic: None,
            difference: None,
            agree: true,
        });
    };
    let standard: MonodromyVerdict = veering(h)?.into();
    let symp = rv_via_symplectic(h, n)?;
    let symplectic: MonodromyVerdict = symp.verdict.into();
    Ok(Audit {
        from_complex,
        from_standard_form: Some(standard),
        from_symplectic: Some(symplectic),
        difference: Some(symp.difference),
        agree: from_complex == standard && standard == symplectic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfk::models;
    use crate::surface_map::{MapBuilder, Sign};

    fn stub_over_torus(sign: Sign) -> StandardFormMap {
        let mut b = MapBuilder::new();
        b.boundary("dS")
            .twist("t", sign, "dS", "c")
            .fixed("S", 1, &["c"]);
        b.build().unwrap()
    }

    fn pseudo_anosov_torus() -> StandardFormMap {
        let mut b = MapBuilder::new();
        b.boundary("dS").pseudo_anosov("X", 1, &[("dS", 2)]);
        b.build().unwrap()
    }

    #[test]
    fn figure_eight() {
        let c = classify_fibered(&models::figure_eight()).unwrap();
        assert_eq!(c.b, BValue::Finite(1));
        assert_eq!(c.b_mirror, BValue::Finite(1));
        assert_eq!(c.monodromy_verdict, MonodromyVerdict::Neither);
        assert_eq!(c.tau, Some(0));
        assert_eq!(c.thin, Some(true));
        assert_eq!(c.persistently_foliar, Some(true));
        assert_eq!(c.surgery_constraint, SurgeryConstraint::QBound { bound: 2 });
    }

    #[test]
    fn trefoils() {
        let r = classify_fibered(&models::right_trefoil()).unwrap();
        assert_eq!(r.b, BValue::Infinity);
        assert_eq!(r.monodromy_verdict, MonodromyVerdict::RightVeering);
        assert_eq!(r.tau, Some(1));
        assert_eq!(
            r.surgery_constraint,
            SurgeryConstraint::Interval { lo: 0, hi: 4 }
        );
        assert_eq!(r.persistently_foliar, None);

        let l = classify_fibered(&models::left_trefoil()).unwrap();
        assert_eq!((l.b, l.b_mirror), (BValue::Finite(1), BValue::Infinity));
        assert_eq!(l.monodromy_verdict, MonodromyVerdict::LeftVeering);
        assert_eq!(
            l.surgery_constraint,
            SurgeryConstraint::Interval { lo: -4, hi: 0 }
        );
    }

    #[test]
    fn unknot_is_the_identity() {
        let u = classify_fibered(&models::unknot()).unwrap();
        assert_eq!(u.monodromy_verdict, MonodromyVerdict::Identity);
        assert_eq!(u.surgery_constraint, SurgeryConstraint::None);
    }

    #[test]
    fn unfibered_input_is_refused() {
        assert!(matches!(
            classify_fibered(&models::square(1)),
            Err(Error::NotFibered)
        ));
    }

    #[test]
    fn audits() {
        let a =
            consistency_audit(&models::figure_eight(), Some(&pseudo_anosov_torus()), 1).unwrap();
        assert!(a.agree);
        assert_eq!(a.from_symplectic, Some(MonodromyVerdict::Neither));

        let a = consistency_audit(
            &models::right_trefoil(),
            Some(&stub_over_torus(Sign::Positive)),
            2,
        )
        .unwrap();
        assert!(a.agree);
        assert_eq!(a.difference, Some(2));

        let a = consistency_audit(
            &models::left_trefoil(),
            Some(&stub_over_torus(Sign::Negative)),
            1,
        )
        .unwrap();
        assert!(a.agree);

        let a = consistency_audit(
            &models::figure_eight(),
            Some(&stub_over_torus(Sign::Positive)),
            1,
        )
        .unwrap();
        assert!(!a.agree);
    }
}
