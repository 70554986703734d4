//! Spin^c labels: elements of a free commutative monoid written as sorted
//! `+`-joined atoms, with `0` for the unit. Conjugation toggles a leading `~`
//! on every atom.

pub const UNIT: &str = "0";

pub fn unit() -> String {
    UNIT.to_owned()
}

fn atoms(label: &str) -> impl Iterator<Item = &str> {
    label.split('+').filter(|a| !a.is_empty() && *a != UNIT)
}

fn join(mut parts: Vec<String>) -> String {
    if parts.is_empty() {
        return unit();
    }
    parts.sort();
    parts.join("+")
}

/// Label of a tensor product of generators labelled `a` and `b`.
pub fn combine(a: &str, b: &str) -> String {
    join(atoms(a).chain(atoms(b)).map(str::to_owned).collect())
}

pub fn conjugate(label: &str) -> String {
    join(
        atoms(label)
            .map(|a| match a.strip_prefix('~') {
                Some(rest) => rest.to_owned(),
                None => format!("~{a}"),
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monoid_laws() {
        assert_eq!(combine("0", "s"), "s");
        assert_eq!(combine("t", "s"), "s+t");
        assert_eq!(combine("s+t", "s"), "s+s+t");
        assert_eq!(
            combine(&combine("a", "b"), "c"),
            combine("a", &combine("b", "c"))
        );
    }

    #[test]
    fn conjugation_is_an_involution() {
        assert_eq!(conjugate("0"), "0");
        assert_eq!(conjugate("s"), "~s");
        assert_eq!(conjugate(&conjugate("s+~t")), "s+~t");
        assert_eq!(
            conjugate(&combine("a", "b")),
            combine(&conjugate("a"), &conjugate("b"))
        );
    }
}
