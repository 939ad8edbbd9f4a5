//! Small named polymatroids used in docs, tests and the CLI examples.

use crate::setcore::{GroundSet, Polymatroid, Ratio, SetFunction, Subset};

fn int(v: i64) -> Ratio {
    Ratio::from_integer(v)
}

fn build(ground: GroundSet, f: impl Fn(Subset) -> i64) -> Polymatroid {
    Polymatroid::new(SetFunction::from_fn(ground, |s| int(f(s)))).expect("fixture is a polymatroid")
}

/// Three elements of rank 2, `f(ab) = 3`, every other set rank 4. Its
/// modular cut generated by `a` and `b` is not principal.
pub fn p3() -> Polymatroid {
    let g = GroundSet::letters(3);
    let ab = g.set("ab");
    build(g, |s| match s.len() {
        1 => 2,
        2 if s == ab => 3,
        _ => 4,
    })
}

/// Two parallel points: `f(a) = f(b) = f(ab) = 1`.
pub fn m2() -> Polymatroid {
    build(GroundSet::letters(2), |s| (!s.is_empty()) as i64)
}

/// The free matroid `f(A) = |A|`.
pub fn free(n: usize) -> Polymatroid {
    build(GroundSet::letters(n), |s| s.len() as i64)
}

/// Uniform matroid `U(k, n)`.
pub fn uniform(k: usize, n: usize) -> Polymatroid {
    build(GroundSet::letters(n), |s| s.len().min(k) as i64)
}

/// Rank-3 matroid on `abcde` whose only non-trivial lines are `abc` and
/// `cde`; they meet in the point `c`.
pub fn two_lines() -> Polymatroid {
    let g = GroundSet::letters(5);
    let (l1, l2) = (g.set("abc"), g.set("cde"));
    build(g, |s| match s.len() {
        0..=2 => s.len() as i64,
        3 if s == l1 || s == l2 => 2,
        _ => 3,
    })
}
