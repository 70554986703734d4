//! Small hand-checkable complexes: staircases, boxes and a few knots.

use super::{spinc, tensor, Arrow, Generator, ReducedCFK};

fn generator(id: impl Into<String>, alexander: i64, maslov: i64) -> Generator {
    Generator {
        id: id.into(),
        alexander,
        maslov: Some(maslov),
        spinc: spinc::unit(),
    }
}

fn arrow(from: &str, to: &str, m: u32, n: u32) -> Arrow {
    Arrow {
        from: from.into(),
        to: to.into(),
        m,
        n,
    }
}

/// One generator at `(A, M) = (0, 0)`.
pub fn unknot() -> ReducedCFK {
    ReducedCFK {
        generators: vec![generator("x", 0, 0)],
        fibered_genus: Some(0),
        ..Default::default()
    }
}

/// A staircase with alternating horizontal and vertical step lengths,
/// starting at the top generator `x0` with Maslov grading 0.
///
/// Odd generators emit a horizontal arrow up to the previous generator and a
/// vertical arrow down to the next one. The genus is half the total length.
pub fn staircase(steps: &[u32]) -> ReducedCFK {
    assert!(
        steps.len().is_multiple_of(2),
        "a staircase has an even number of steps"
    );
    let total: u32 = steps.iter().sum();
    let mut a = (total / 2) as i64;
    let mut m = 0i64;
    let mut generators = vec![generator("x0", a, m)];
    let mut arrows = Vec::new();
    for (k, &s) in steps.iter().enumerate() {
        let (prev, next) = (format!("x{k}"), format!("x{}", k + 1));
        a -= s as i64;
        if k % 2 == 0 {
            m += 1 - 2 * s as i64;
            arrows.push(arrow(&next, &prev, s, 0));
        } else {
            m -= 1;
            arrows.push(arrow(&prev, &next, 0, s));
        }
        generators.push(generator(next, a, m));
    }
    ReducedCFK {
        generators,
        arrows,
        fibered_genus: Some((total / 2) as i64),
        ..Default::default()
    }
}

/// The positive torus knot `T(2, 2k+1)`.
pub fn torus_2(k: u32) -> ReducedCFK {
    staircase(&vec![1; 2 * k as usize])
}

pub fn right_trefoil() -> ReducedCFK {
    torus_2(1)
}

pub fn left_trefoil() -> ReducedCFK {
    super::mirror(&right_trefoil()).expect("the trefoil model is valid")
}

/// The square `a -> b, a -> c, b -> d, c -> d` of side `l`, with `a` at the
/// origin. Not fibered.
pub fn square(l: u32) -> ReducedCFK {
    let l64 = l as i64;
    ReducedCFK {
        generators: vec![
            generator("a", 0, 0),
            generator("b", -l64, -1),
            generator("c", l64, 2 * l64 - 1),
            generator("d", 0, 2 * l64 - 2),
        ],
        arrows: vec![
            arrow("a", "b", 0, l),
            arrow("a", "c", l, 0),
            arrow("b", "d", l, 0),
            arrow("c", "d", 0, l),
        ],
        ..Default::default()
    }
}

/// A unit square plus one isolated generator, all on the diagonal `M = A`.
pub fn figure_eight() -> ReducedCFK {
    let mut c = square(1);
    c.generators.push(generator("e", 0, 0));
    c.fibered_genus = Some(1);
    c
}

/// The connected sum of two figure-eight knots: genus 2, thin, `tau = 0`.
pub fn figure_eight_squared() -> ReducedCFK {
    tensor(&figure_eight(), &figure_eight()).expect("models are valid")
}

/// `T(3, 4)`: a staircase whose generators do not lie on one diagonal.
pub fn torus_3_4() -> ReducedCFK {
    staircase(&[1, 2, 2, 1])
}

/// Adds `da` to every Alexander grading and `dm` to every Maslov grading.
pub fn shift(c: &ReducedCFK, da: i64, dm: i64) -> ReducedCFK {
    let mut out = c.clone();
    for g in &mut out.generators {
        g.alexander += da;
        g.maslov = g.maslov.map(|m| m + dm);
    }
    out.fibered_genus = None;
    out.truncation_floor = out.truncation_floor.map(|f| f + da);
    out
}

#[cfg(test)]
mod tests {
    use super::super::validate_cfk;
    use super::*;

    #[test]
    fn models_validate() {
        for c in [
            unknot(),
            right_trefoil(),
            left_trefoil(),
            square(1),
            square(3),
            figure_eight(),
            figure_eight_squared(),
            torus_2(2),
            torus_2(3),
            torus_3_4(),
            shift(&square(2), 3, -4),
        ] {
            let r = validate_cfk(&c);
            assert!(r.is_valid(), "{r}");
        }
    }

    #[test]
    fn trefoil_staircase_by_hand() {
        let c = right_trefoil();
        let graded: Vec<(i64, i64)> = c
            .generators
            .iter()
            .map(|g| (g.alexander, g.maslov.unwrap()))
            .collect();
        assert_eq!(graded, vec![(1, 0), (0, -1), (-1, -2)]);
        assert_eq!(
            c.arrows,
            vec![arrow("x1", "x0", 1, 0), arrow("x1", "x2", 0, 1)]
        );
    }

    #[test]
    fn torus_3_4_gradings() {
        let c = torus_3_4();
        let a: Vec<i64> = c.generators.iter().map(|g| g.alexander).collect();
        let m: Vec<i64> = c.generators.iter().map(|g| g.maslov.unwrap()).collect();
        assert_eq!(a, vec![3, 2, 0, -2, -3]);
        assert_eq!(m, vec![0, -1, -2, -5, -6]);
    }
}
