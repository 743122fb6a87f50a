//! Named posets used throughout the tests, the CLI and the shipped JSON
//! fixture files.

use crate::poset::Poset;

fn build(labels: &[&str], pairs: &[(&str, &str)]) -> Poset {
    Poset::from_labeled(labels, pairs).expect("fixture is a valid poset")
}

fn letter(i: usize) -> String {
    char::from(b'a' + i as u8).to_string()
}

/// Three-element antichain `{a, b, c}`.
pub fn antichain3() -> Poset {
    antichain(3)
}

pub fn antichain(n: usize) -> Poset {
    assert!(n <= 26);
    Poset::new((0..n).map(letter).collect(), &[]).expect("antichain")
}

/// `x < x' < z`, `y < y' < z`.
pub fn vee5() -> Poset {
    build(
        &["x", "x'", "y", "y'", "z"],
        &[("x", "x'"), ("x'", "z"), ("y", "y'"), ("y'", "z")],
    )
}

/// Four elements with `b, c < d` and `c < a`: `a ∧ (b ∨ c) = c` while
/// `a ∧ b` does not exist.
pub fn hmgap4() -> Poset {
    build(&["a", "b", "c", "d"], &[("b", "d"), ("c", "d"), ("c", "a")])
}

/// The diamond `M3`: bottom `0`, atoms `a, b, c`, top `1`.
pub fn m3() -> Poset {
    build(
        &["0", "a", "b", "c", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "1"),
            ("b", "1"),
            ("c", "1"),
        ],
    )
}

/// The pentagon `N5`: `0 < a < b < 1` and `0 < c < 1`.
pub fn n5() -> Poset {
    build(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )
}

/// Chain `0 < 1 < … < n-1`.
pub fn chain(n: usize) -> Poset {
    let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::new((0..n).map(|i| i.to_string()).collect(), &pairs).expect("chain")
}

/// Boolean lattice of subsets of `n` atoms. Element `i` is the subset with
/// bitmask `i`; labels spell the atoms (`0` for the empty set).
pub fn boolean(n: usize) -> Poset {
    assert!(n <= 6, "boolean fixtures are limited to 64 elements");
    let size = 1usize << n;
    let labels: Vec<String> = (0..size)
        .map(|m| {
            if m == 0 {
                "0".to_string()
            } else {
                (0..n).filter(|b| m >> b & 1 == 1).map(letter).collect()
            }
        })
        .collect();
    let mut pairs = Vec::new();
    for m in 0..size {
        for b in 0..n {
            if m >> b & 1 == 0 {
                pairs.push((m, m | 1 << b));
            }
        }
    }
    Poset::new(labels, &pairs).expect("boolean lattice")
}

/// Six-element LMD poset that is not a lattice: a square `0 < a, b < c`
/// glued at the bottom to the chain `0 < d < e`.
pub fn lmd6() -> Poset {
    build(
        &["0", "a", "b", "c", "d", "e"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("a", "c"),
            ("b", "c"),
            ("0", "d"),
            ("d", "e"),
        ],
    )
}

/// Looks up a fixture by name: `antichain3`, `vee5`, `hmgap4`, `m3`, `n5`,
/// `lmd6`, `chain_<n>`, `boolean_<n>`, `antichain_<n>`.
pub fn by_name(name: &str) -> Option<Poset> {
    let sized = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)?.parse().ok()
    };
    match name {
        "antichain3" => Some(antichain3()),
        "vee5" => Some(vee5()),
        "hmgap4" => Some(hmgap4()),
        "m3" => Some(m3()),
        "n5" => Some(n5()),
        "lmd6" => Some(lmd6()),
        _ => {
            if let Some(n) = sized("chain_") {
                (n <= 64).then(|| chain(n))
            } else if let Some(n) = sized("boolean_") {
                (n <= 6).then(|| boolean(n))
            } else if let Some(n) = sized("antichain_") {
                (n <= 26).then(|| antichain(n))
            } else {
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(vee5().len(), 5);
        assert_eq!(boolean(3).len(), 8);
        assert!(boolean(3).is_lattice());
        assert!(m3().is_lattice());
        assert!(n5().is_lattice());
        assert!(!lmd6().is_lattice());
        assert!(by_name("chain_4").unwrap().is_lattice());
        assert!(by_name("nope").is_none());
    }
}
