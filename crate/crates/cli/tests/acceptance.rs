//! End-to-end acceptance checks. Each check prints one PASS/FAIL line; the
//! test fails if any check fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use veerkit::cable_glue::random::{random_closed, random_h};
use veerkit::cable_glue::{build_cable_boundary_model, glue, rv_via_symplectic};
use veerkit::cfk::random::{random_cfk, random_thin_cfk};
use veerkit::cfk::{
    b_invariant, b_invariant_via_top_differential, flatten, mirror, signature, spectral_sequence,
    tau, validate_cfk, BValue, ReducedCFK, Slice,
};
use veerkit::classify::{classify_fibered, consistency_audit};
use veerkit::floer_symp::{boundary_signs, breakdown, hf_symp_dim, partition};
use veerkit::surface_map::{MapBuilder, PieceId, Sign};
use veerkit::surgery::{build_j, zero_surgery_top_minus_one};
use veerkit::twist_calculus::{fdtc, veering};
use veerkit_cli::corpus::Corpus;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn corpus_complex(name: &str) -> ReducedCFK {
    let corpus = Corpus::bundled();
    let entry = corpus
        .entry(name)
        .unwrap_or_else(|| panic!("corpus entry {name}"));
    corpus.complex(entry).expect("bundled complexes parse")
}

fn symplectic_dichotomy() -> Check {
    let start = Instant::now();
    let mut r = rng(2024);
    for trial in 0..500 {
        let h = random_h(&mut r);
        let expected = veering(&h).map_err(|e| format!("trial {trial}: {e}"))?;
        let mut seen = Vec::new();
        for n in 1..=3 {
            let v = rv_via_symplectic(&h, n).map_err(|e| format!("trial {trial}, n = {n}: {e}"))?;
            ensure([-2, 0, 2].contains(&v.difference), || {
                format!("trial {trial}: difference {}", v.difference)
            })?;
            ensure(v.verdict == expected, || {
                format!(
                    "trial {trial}: symplectic {} vs standard form {expected}",
                    v.verdict
                )
            })?;
            seen.push(v.difference);
        }
        ensure(seen.windows(2).all(|w| w[0] == w[1]), || {
            format!("trial {trial}: difference depends on n: {seen:?}")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })
}

fn cable_coefficients() -> Check {
    for n in 1..=5u32 {
        for side in [Sign::Positive, Sign::Negative] {
            let g = build_cable_boundary_model(n, side).map_err(|e| e.to_string())?;
            let got = fdtc(&g.map, &g.boundary())
                .map_err(|e| e.to_string())?
                .value;
            let want = Rational64::new(side.as_i64(), 9 * n as i64 + 3);
            ensure(got == want, || {
                format!("n = {n}, side {side:?}: {got} != {want}")
            })?;
        }
    }
    Ok(())
}

fn dimension_sanity() -> Check {
    let mut b = MapBuilder::new();
    b.fixed("S", 2, &[]);
    let id = b.build().map_err(|e| e.to_string())?;
    let d = hf_symp_dim(&id).map_err(|e| e.to_string())?;
    ensure(d.total() == Some(6), || {
        format!("identity on genus 2 gave {:?}", d.total())
    })?;

    // A positive twist at the boundary meets the positive cable twist across
    // a fixed annulus whose circles are both positive.
    let mut b = MapBuilder::new();
    b.boundary("dS")
        .twist("t", Sign::Positive, "dS", "c")
        .fixed("S", 1, &["c"]);
    let h = b.build().map_err(|e| e.to_string())?;
    let plus = glue(&h, &build_cable_boundary_model(1, Sign::Positive).unwrap())
        .map_err(|e| e.to_string())?;
    let minus = glue(&h, &build_cable_boundary_model(1, Sign::Negative).unwrap())
        .map_err(|e| e.to_string())?;
    let p = partition(&plus).map_err(|e| e.to_string())?;
    let s = boundary_signs(&plus, &p).map_err(|e| e.to_string())?;
    let annulus = PieceId::from("A");
    ensure(s.negative_count(&annulus) == 0, || {
        "junction annulus has a negative circle".into()
    })?;
    let bp = breakdown(&plus, &p, &s);
    let bm = hf_symp_dim(&minus).map_err(|e| e.to_string())?;
    ensure(
        bp.per_region.get("A").is_some_and(|r| r.starts_with("2 ")),
        || format!("annulus term {:?}", bp.per_region.get("A")),
    )?;
    ensure(
        bp.concrete as i64 - bm.concrete as i64 == 2 && bp.opaque == bm.opaque,
        || format!("annulus difference {} - {}", bp.concrete, bm.concrete),
    )?;

    // A pair of pants with one negative circle: Betti sum 3, minus 2.
    let mut b = MapBuilder::new();
    b.boundary("dS")
        .fixed("S0", 0, &["dS", "a", "b"])
        .twist("ta", Sign::Positive, "a", "a2")
        .twist("tb", Sign::Positive, "b", "b2")
        .fixed("R", 1, &["a2", "b2"]);
    let h = b.build().map_err(|e| e.to_string())?;
    let minus = glue(&h, &build_cable_boundary_model(1, Sign::Negative).unwrap())
        .map_err(|e| e.to_string())?;
    let p = partition(&minus).map_err(|e| e.to_string())?;
    let s = boundary_signs(&minus, &p).map_err(|e| e.to_string())?;
    let pants = PieceId::from("S.S0");
    ensure(s.negative_count(&pants) == 1, || {
        "expected exactly one negative circle".into()
    })?;
    let region = breakdown(&minus, &p, &s).per_region["S.S0"].clone();
    ensure(region.starts_with("1 "), || format!("pants term {region}"))
}

fn inverse_invariance() -> Check {
    let mut r = rng(77);
    for trial in 0..200 {
        let m = random_closed(&mut r);
        let a = hf_symp_dim(&m).map_err(|e| format!("trial {trial}: {e}"))?;
        let inv = m.inverse().map_err(|e| format!("trial {trial}: {e}"))?;
        let b = hf_symp_dim(&inv).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(a.total().is_some() && a.total() == b.total(), || {
            format!("trial {trial}: {:?} vs {:?}", a.total(), b.total())
        })?;
    }
    Ok(())
}

fn complex_contracts(c: &ReducedCFK, what: &str) -> Check {
    let report = validate_cfk(c);
    ensure(report.is_valid(), || format!("{what}: {report}"))?;
    let m = mirror(c).map_err(|e| format!("{what}: {e}"))?;
    ensure(validate_cfk(&m).is_valid(), || {
        format!("{what}: mirror invalid")
    })?;
    let (dims, mdims) = (c.dims_by_alexander(), m.dims_by_alexander());
    ensure(
        dims.len() == mdims.len() && dims.iter().all(|(a, d)| mdims.get(&-a) == Some(d)),
        || format!("{what}: mirror dimensions not reflected"),
    )?;
    let back = mirror(&m).map_err(|e| format!("{what}: {e}"))?;
    ensure(signature(&back) == signature(c), || {
        format!("{what}: mirror is not an involution")
    })?;
    for slice in [Slice::I(0), Slice::J(0)] {
        let ss = spectral_sequence(&flatten(c, slice).map_err(|e| e.to_string())?);
        ensure(ss.e1().total() == c.len(), || {
            format!("{what}: E1 is not the generator count")
        })?;
        ensure(
            ss.e1().total() - 2 * ss.total_rank() == ss.e_infinity().total(),
            || format!("{what}: pages do not telescope on {slice}"),
        )?;
        if c.has_maslov() && c.is_thin().unwrap_or(false) {
            ensure(ss.collapses_at() <= 2, || {
                format!("{what}: thin but collapses at E{}", ss.collapses_at())
            })?;
        }
    }
    Ok(())
}

fn cfk_engine() -> Check {
    let corpus = Corpus::bundled();
    for e in &corpus.entries {
        complex_contracts(&corpus.complex(e).map_err(|x| x.to_string())?, &e.name)?;
    }
    let mut r = rng(5);
    for trial in 0..200 {
        complex_contracts(&random_cfk(&mut r), &format!("random complex {trial}"))?;
        complex_contracts(
            &random_thin_cfk(&mut r),
            &format!("random thin complex {trial}"),
        )?;
    }
    Ok(())
}

fn invariant_values() -> Check {
    let cases = [
        ("right-trefoil", 1, BValue::Infinity, None),
        ("left-trefoil", -1, BValue::Finite(1), None),
        (
            "figure-eight",
            0,
            BValue::Finite(1),
            Some(BValue::Finite(1)),
        ),
    ];
    for (name, want_tau, want_b, want_bm) in cases {
        let c = corpus_complex(name);
        let t = tau(&c).map_err(|e| e.to_string())?;
        ensure(t == want_tau, || format!("{name}: tau {t}"))?;
        let b = b_invariant(&c).map_err(|e| e.to_string())?;
        ensure(b == want_b, || format!("{name}: b {b}"))?;
        let top = b_invariant_via_top_differential(&c).map_err(|e| e.to_string())?;
        ensure(top == b.is_one(), || {
            format!("{name}: the two b routes disagree")
        })?;
        if let Some(bm) = want_bm {
            let got = b_invariant(&mirror(&c).unwrap()).map_err(|e| e.to_string())?;
            ensure(got == bm, || format!("{name}: mirror b {got}"))?;
        }
    }
    let fig8 = corpus_complex("figure-eight");
    ensure(matches!(fig8.is_thin(), Ok(true)), || {
        "figure-eight is not thin".into()
    })
}

fn zero_surgery() -> Check {
    let start = Instant::now();
    let k = corpus_complex("figure-eight");
    let expected = k.dim_at(0) - 1;
    ensure(expected == 2, || format!("dim at 0 is {}", k.dim_at(0)))?;
    for n in 1..=3 {
        let mut dims = Vec::new();
        for side in [Sign::Positive, Sign::Negative] {
            let j = build_j(&k, n, side).map_err(|e| e.to_string())?;
            let label = j.top_generator().map_err(|e| e.to_string())?.spinc.clone();
            let h = zero_surgery_top_minus_one(&j).map_err(|e| e.to_string())?;
            ensure(h.dim == expected, || {
                format!("n = {n}, {side:?}: {}", h.dim)
            })?;
            let off: usize = h
                .per_spinc
                .iter()
                .filter(|(l, _)| **l != label)
                .map(|(_, d)| d)
                .sum();
            ensure(off == 0, || {
                format!("n = {n}, {side:?}: {off} outside `{label}`")
            })?;
            dims.push(h.dim);
        }
        ensure(dims[0] == dims[1], || {
            format!("n = {n}: sides differ {dims:?}")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })
}

fn verdict_triangulation() -> Check {
    let corpus = Corpus::bundled();
    let mut pairs = 0;
    let mut controls = 0;
    for e in &corpus.entries {
        let Some(h) = corpus.monodromy(e).map_err(|x| x.to_string())? else {
            continue;
        };
        let c = corpus.complex(e).map_err(|x| x.to_string())?;
        let from_b = classify_fibered(&c)
            .map_err(|x| x.to_string())?
            .monodromy_verdict;
        let audit = consistency_audit(&c, Some(&h), 2).map_err(|x| x.to_string())?;
        ensure(audit.from_complex == from_b, || {
            format!("{}: audit disagrees with classify", e.name)
        })?;
        if e.expect_agreement {
            pairs += 1;
            ensure(audit.agree, || {
                format!("{}: verdicts differ {audit:?}", e.name)
            })?;
        } else {
            controls += 1;
            ensure(!audit.agree, || {
                format!("{}: mismatched pair reported as agreeing", e.name)
            })?;
        }
    }
    ensure(pairs >= 3 && controls >= 1, || {
        format!("{pairs} pairs, {controls} controls")
    })
}

fn determinism() -> Check {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_veerkit"))
            .args(["verify", "prop-symp", "--trials", "100", "--seed", "7"])
            .env_remove("VEERKIT_SEED")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || {
        "verify exited with failure".into()
    })?;
    ensure(a.stdout == b.stdout, || {
        "outputs differ between runs".into()
    })?;
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    ensure(v["trials"] == 100 && v["failures"] == 0, || {
        format!("unexpected summary {v}")
    })
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let checks: [Criterion; 9] = [
        (
            "symplectic dichotomy on 500 random maps",
            symplectic_dichotomy,
        ),
        ("cable boundary coefficients", cable_coefficients),
        ("dimension formula sanity values", dimension_sanity),
        ("inverse invariance on 200 closed maps", inverse_invariance),
        ("complex engine contracts", cfk_engine),
        ("invariant values on the corpus", invariant_values),
        ("zero-surgery next-to-top dimension", zero_surgery),
        ("three-way verdict agreement", verdict_triangulation),
        ("deterministic verify output", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in checks.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {}: PASS  {name}", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
