mod common;

use common::*;
use polyconv::inequalities::{
    amalgam_search_integer, comm_value, cond_rank, ing_value, mutual, ten_term_check, ten_terms, RankExpr,
};
use polyconv::setcore::{contract, Polymatroid, SetFunction, Subset};
use polyconv::{fixtures, Error};
use proptest::prelude::*;

fn tuple(rng: &mut TestRng, n: usize) -> [Subset; 6] {
    std::array::from_fn(|_| random_subset(rng, n))
}

/// `s` as a subset of the ground with `removed` deleted.
fn squeeze(s: Subset, removed: Subset, n: usize) -> Subset {
    Subset::from_indices((0..n).filter(|&i| !removed.contains(i)).enumerate().filter(|&(_, i)| s.contains(i)).map(|(k, _)| k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ten_term_identity_holds_without_axioms(seed in any::<u64>(), n in 1usize..=5) {
        let mut r = rng(seed);
        let sf = random_set_function(&mut r, n);
        for _ in 0..50 {
            let [a, b, p, q, y, e] = tuple(&mut r, n);
            let check = ten_term_check(&sf, a, b, p, q, y, e);
            prop_assert!(check.equal);
            prop_assert_eq!(check.rhs, RankExpr::TenTerm { a, b, p, q, y, e }.evaluate(&sf));
            prop_assert_eq!(check.lhs, RankExpr::Ing { a, b, p, q, e }.evaluate(&sf) + RankExpr::Comm { a, b, y, e }.evaluate(&sf));
        }
    }

    #[test]
    fn terms_are_nonnegative_on_polymatroids(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let f = random_polymatroid(&mut r, n);
        for _ in 0..200 {
            let [a, b, p, q, y, e] = tuple(&mut r, n);
            for t in ten_terms(&f, a, b, p, q, y, e) {
                prop_assert!(t >= int(0));
            }
            prop_assert!(ing_value(&f, a, b, p, q, e) + comm_value(&f, a, b, y, e) >= int(0));
            prop_assert!(cond_rank(&f, a, b) >= int(0));
            prop_assert!(mutual(&f, a, b, e) >= int(0));
            prop_assert_eq!(cond_rank(&f, a, a), int(0));
        }
    }

    #[test]
    fn empty_condition_gives_the_plain_forms(seed in any::<u64>(), n in 1usize..=5) {
        let mut r = rng(seed);
        let sf = random_set_function(&mut r, n);
        let v = |s: Subset| sf.value(s);
        for _ in 0..50 {
            let [a, b, p, q, y, _] = tuple(&mut r, n);
            let info = |i: Subset, j: Subset, k: Subset| v(i | k) + v(j | k) - v(k) - v(i | j | k);
            let comm = info(a, b, y) + v(a | y) - v(a) + v(b | y) - v(b) + v(a | b | y) - v(a | b);
            let ing = -(v(a) + v(b) - v(a | b)) + info(a, b, p) + info(a, b, q) + (v(p) + v(q) - v(p | q));
            prop_assert_eq!(comm_value(&sf, a, b, y, Subset::EMPTY), comm);
            prop_assert_eq!(ing_value(&sf, a, b, p, q, Subset::EMPTY), ing);
        }
    }

    #[test]
    fn conditioning_is_contraction(seed in any::<u64>(), n in 2usize..=5) {
        let mut r = rng(seed);
        let f = random_polymatroid(&mut r, n);
        let full = f.ground().full();
        let e = loop {
            let e = random_subset(&mut r, n);
            if !e.is_empty() && e != full {
                break e;
            }
        };
        let con = contract(&f, e).unwrap();
        let rest = full - e;
        for _ in 0..50 {
            let [a, b, p, q, y, _] = tuple(&mut r, n).map(|s| s & rest);
            let sq = |s: Subset| squeeze(s, e, n);
            prop_assert_eq!(comm_value(&con, sq(a), sq(b), sq(y), Subset::EMPTY), comm_value(&f, a, b, y, e));
            prop_assert_eq!(ing_value(&con, sq(a), sq(b), sq(p), sq(q), Subset::EMPTY), ing_value(&f, a, b, p, q, e));
        }
    }

    #[test]
    fn amalgam_search_agrees_with_enumeration(seed in any::<u64>(), n in 1usize..=3, bound in 0i64..=3) {
        let mut r = rng(seed);
        let base = loop {
            let f = random_integer_polymatroid(&mut r, n);
            if f.full_rank() <= int(4) {
                break f;
            }
        };
        let f1 = one_point_extension(&mut r, &base, "x");
        let f2 = one_point_extension(&mut r, &base, "y");
        let bound = if n == 3 { bound.min(2) } else { bound };
        let found = amalgam_search_integer(&f1, &f2, Some(bound)).unwrap();
        let oracle = amalgam_oracle(&f1, &f2, bound);
        prop_assert_eq!(found.is_some(), oracle.is_some());
        if let (Some(g), Some(o)) = (found, oracle) {
            prop_assert!(g.table().iter().map(|v| v.to_integer()).eq(o.iter().copied()));
            prop_assert!(g.ground().labels().ends_with(&["x".to_string(), "y".to_string()]));
        }
    }
}

#[test]
fn p3_values() {
    let p3 = fixtures::p3();
    let g = p3.ground().clone();
    assert_eq!(cond_rank(&p3, g.set("ab"), g.set("a")), int(1));
    assert_eq!(cond_rank(&p3, g.set("abc"), Subset::EMPTY), int(4));
    assert_eq!(mutual(&p3, g.set("a"), g.set("b"), Subset::EMPTY), int(1));
}

#[test]
fn amalgam_search_rejects_bad_inputs() {
    let half = Polymatroid::new(SetFunction::from_fn(polyconv::GroundSet::letters(1), |s| {
        polyconv::Ratio::new(s.len() as i64, 2)
    }))
    .unwrap();
    assert!(matches!(amalgam_search_integer(&half, &half, None), Err(Error::NonInteger(_))));
    // the two extensions disagree on their common part
    let first = one_point_extension(&mut rng(1), &fixtures::free(2), "x");
    let second = one_point_extension(&mut rng(2), &fixtures::uniform(1, 2), "y");
    assert!(matches!(amalgam_search_integer(&first, &second, None), Err(Error::GroundOverlapMismatch(_))));
}
