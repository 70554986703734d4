use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::models::*;
use super::random::{change_basis, random_cfk, random_thin_cfk, MAX_GENERATORS};
use super::*;

fn dims(pairs: &[(i64, usize)]) -> BTreeMap<i64, usize> {
    pairs.iter().copied().collect()
}

#[test]
fn wrong_alexander_drop_is_reported() {
    let mut c = right_trefoil();
    c.arrows[0].m = 2;
    let r = validate_cfk(&c);
    assert!(r.has("alexander-drop"), "{r}");
}

#[test]
fn maslov_spinc_and_ids_are_checked() {
    let mut c = right_trefoil();
    c.generators[0].maslov = Some(3);
    assert!(validate_cfk(&c).has("maslov"));

    let mut c = right_trefoil();
    c.generators[2].maslov = None;
    assert!(validate_cfk(&c).has("maslov-partial"));

    let mut c = right_trefoil();
    c.generators[0].spinc = "s".into();
    assert!(validate_cfk(&c).has("spinc"));

    let mut c = right_trefoil();
    c.arrows[0].to = "nowhere".into();
    assert!(validate_cfk(&c).has("unknown-generator"));

    let mut c = unknot();
    c.generators.push(c.generators[0].clone());
    assert!(validate_cfk(&c).has("duplicate-id"));
}

#[test]
fn square_zero_failure_is_reported() {
    let mut c = square(1);
    c.arrows.pop();
    assert!(validate_cfk(&c).has("square-zero"));
}

#[test]
fn truncated_square_zero_ignores_paths_below_the_floor() {
    // a -> b -> d and a -> c -> d meet at d; b sits below the floor.
    let mut c = square(1);
    c.generators.retain(|g| g.id != "b");
    c.arrows.retain(|a| a.from != "b" && a.to != "b");
    c.truncation_floor = Some(0);
    assert!(validate_cfk(&c).is_valid(), "{}", validate_cfk(&c));
    c.truncation_floor = None;
    assert!(validate_cfk(&c).has("square-zero"));
}

#[test]
fn fibered_top_must_be_one_dimensional() {
    let mut c = figure_eight();
    c.generators.push(Generator {
        id: "extra".into(),
        alexander: 1,
        maslov: Some(1),
        spinc: "0".into(),
    });
    assert!(validate_cfk(&c).has("fibered-top"));
    let mut c = right_trefoil();
    c.fibration_spinc = Some("s".into());
    assert!(validate_cfk(&c).has("fibered-spinc"));
}

#[test]
fn generators_below_the_floor_are_reported() {
    let mut c = unknot();
    c.fibered_genus = None;
    c.truncation_floor = Some(1);
    assert!(validate_cfk(&c).has("truncation"));
}

#[test]
fn knot_floer_dimensions() {
    assert_eq!(
        right_trefoil().dims_by_alexander(),
        dims(&[(1, 1), (0, 1), (-1, 1)])
    );
    assert_eq!(
        figure_eight().dims_by_alexander(),
        dims(&[(1, 1), (0, 3), (-1, 1)])
    );
    assert_eq!(unknot().dims_by_alexander(), dims(&[(0, 1)]));
    let e = figure_eight().hfk_dims();
    assert!(e.iter().all(|d| d.spinc == "0"));
}

#[test]
fn mirror_of_the_right_trefoil_is_the_left_staircase() {
    // Left trefoil drawn directly: the top generator emits a vertical arrow,
    // the bottom one a horizontal arrow, both into the middle.
    let left = ReducedCFK {
        generators: vec![
            Generator {
                id: "x0".into(),
                alexander: -1,
                maslov: Some(0),
                spinc: "0".into(),
            },
            Generator {
                id: "x1".into(),
                alexander: 0,
                maslov: Some(1),
                spinc: "0".into(),
            },
            Generator {
                id: "x2".into(),
                alexander: 1,
                maslov: Some(2),
                spinc: "0".into(),
            },
        ],
        arrows: vec![
            Arrow {
                from: "x0".into(),
                to: "x1".into(),
                m: 1,
                n: 0,
            },
            Arrow {
                from: "x2".into(),
                to: "x1".into(),
                m: 0,
                n: 1,
            },
        ],
        fibered_genus: Some(1),
        ..Default::default()
    };
    assert!(validate_cfk(&left).is_valid());
    assert_eq!(signature(&left_trefoil()), signature(&left));
}

#[test]
fn figure_eight_is_amphichiral() {
    let c = figure_eight();
    assert_eq!(signature(&mirror(&c).unwrap()), signature(&c));
    assert_eq!(mirror(&unknot()).unwrap(), unknot());
}

#[test]
fn mirror_rejects_truncated_input() {
    let mut c = unknot();
    c.truncation_floor = Some(-5);
    assert!(matches!(mirror(&c), Err(Error::Truncated(-5))));
}

#[test]
fn tensor_with_unknot_is_a_relabelling() {
    for c in [right_trefoil(), figure_eight(), torus_3_4()] {
        assert_eq!(signature(&tensor(&c, &unknot()).unwrap()), signature(&c));
    }
}

#[test]
fn tensor_adds_genus_and_next_to_top_dimension() {
    let a = figure_eight();
    let b = right_trefoil();
    let t = tensor(&a, &b).unwrap();
    assert_eq!(t.fibered_genus, Some(2));
    assert_eq!(t.dim_at(2), 1);
    assert_eq!(t.dim_at(1), a.dim_at(0) + b.dim_at(0));
}

#[test]
fn tensor_of_truncated_factor_drops_unmodeled_gradings() {
    let l = ReducedCFK {
        generators: vec![
            Generator {
                id: "p".into(),
                alexander: 4,
                maslov: None,
                spinc: "s".into(),
            },
            Generator {
                id: "q".into(),
                alexander: 3,
                maslov: None,
                spinc: "s".into(),
            },
        ],
        truncation_floor: Some(2),
        fibered_genus: Some(4),
        ..Default::default()
    };
    let mut k = figure_eight();
    for g in &mut k.generators {
        g.maslov = None;
    }
    let j = tensor(&k, &l).unwrap();
    assert_eq!(j.truncation_floor, Some(3));
    assert_eq!(j.fibered_genus, Some(5));
    assert_eq!(j.dim_at(5), 1);
    assert_eq!(j.dim_at(4), 4);
    assert_eq!(j.min_alexander(), Some(3));
}

#[test]
fn thinness_and_genus() {
    assert!(figure_eight().is_thin().unwrap());
    assert!(right_trefoil().is_thin().unwrap());
    assert!(!torus_3_4().is_thin().unwrap());
    assert_eq!(figure_eight().genus(), Some(1));
    assert_eq!(torus_3_4().genus(), Some(3));
    let mut c = unknot();
    c.generators[0].maslov = None;
    assert!(c.is_thin().is_err());
}

#[test]
fn trefoil_spectral_sequence() {
    let ss = spectral_sequence(&flatten(&right_trefoil(), Slice::I(0)).unwrap());
    assert_eq!(ss.e1().dims, dims(&[(1, 1), (0, 1), (-1, 1)]));
    assert_eq!(ss.e_infinity().dims, dims(&[(1, 1), (0, 0), (-1, 0)]));
    assert_eq!(ss.pages.len(), 2);
    assert_eq!(ss.pages[0].rank, 1);
}

#[test]
fn figure_eight_collapses_at_e2() {
    let ss = spectral_sequence(&flatten(&figure_eight(), Slice::I(0)).unwrap());
    assert_eq!(ss.collapses_at(), 2);
    assert_eq!(ss.e_infinity().dims, dims(&[(1, 0), (0, 1), (-1, 0)]));
    let ss = spectral_sequence(&flatten(&unknot(), Slice::I(0)).unwrap());
    assert_eq!(ss.pages.len(), 1);
}

#[test]
fn longer_differentials_appear_on_later_pages() {
    let ss = spectral_sequence(&flatten(&torus_3_4(), Slice::J(0)).unwrap());
    let ranks: Vec<usize> = ss.pages.iter().map(|p| p.rank).collect();
    assert_eq!(ranks, vec![1, 1, 0]);
}

#[test]
fn tau_values() {
    assert_eq!(tau(&right_trefoil()).unwrap(), 1);
    assert_eq!(tau(&left_trefoil()).unwrap(), -1);
    assert_eq!(tau(&figure_eight()).unwrap(), 0);
    assert_eq!(tau(&torus_2(3)).unwrap(), 3);
    assert!(matches!(tau(&square(1)), Err(Error::TotalHomology(0))));
}

#[test]
fn b_values_by_both_routes() {
    let cases = [
        (right_trefoil(), BValue::Infinity),
        (left_trefoil(), BValue::Finite(1)),
        (figure_eight(), BValue::Finite(1)),
        (mirror(&figure_eight()).unwrap(), BValue::Finite(1)),
        (torus_2(2), BValue::Infinity),
        (figure_eight_squared(), BValue::Finite(1)),
    ];
    for (c, want) in cases {
        let b = b_invariant(&c).unwrap();
        assert_eq!(b, want);
        assert_eq!(b.is_one(), b_invariant_via_top_differential(&c).unwrap());
    }
}

#[test]
fn b_needs_a_fibered_complex() {
    assert!(matches!(b_invariant(&square(1)), Err(Error::NotFibered)));
}

#[test]
fn basis_change_keeps_the_complex_valid() {
    let mut c = tensor(&square(1), &square(1)).unwrap();
    change_basis(&mut c, "a*d", "d*a");
    assert!(validate_cfk(&c).is_valid());
    assert_ne!(
        signature(&c).1,
        signature(&tensor(&square(1), &square(1)).unwrap()).1
    );
}

#[test]
fn random_complexes_are_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let c = random_cfk(&mut rng);
        assert!(c.len() <= MAX_GENERATORS);
        assert!(validate_cfk(&c).is_valid(), "{}", validate_cfk(&c));
        let t = random_thin_cfk(&mut rng);
        assert!(validate_cfk(&t).is_valid());
        assert!(t.is_thin().unwrap());
    }
}

#[test]
fn json_round_trip() {
    let c = figure_eight();
    assert_eq!(ReducedCFK::from_json(&c.to_json()).unwrap(), c);
    let parsed =
        ReducedCFK::from_json(r#"{"generators":[{"id":"x","A":0}],"arrows":[],"fibered_genus":0}"#)
            .unwrap();
    assert_eq!(parsed.generators[0].spinc, "0");
    assert_eq!(parsed.generators[0].maslov, None);
}
