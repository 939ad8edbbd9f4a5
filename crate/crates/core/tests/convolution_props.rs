mod common;

use common::*;
use polyconv::convolution::{check_conditions, convolve, make_ranked_lattice, Outcome, RankedLattice, Witness};
use polyconv::cuts::generate_cut;
use polyconv::extensions::common_info_lattice;
use polyconv::setcore::{closure, flats, validate_polymatroid, GroundSet, Measure, Polymatroid, Ratio, Subset};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn random_instance(seed: u64, n: usize) -> (RankedLattice, Measure, Vec<(Subset, Ratio)>, Vec<Ratio>) {
    let (entries, weights) = random_lattice(&mut rng(seed), n);
    let ground = GroundSet::letters(n);
    let rl = make_ranked_lattice(ground.clone(), entries.clone()).unwrap();
    let mu = Measure::new(ground, weights.clone()).unwrap();
    (rl, mu, entries, weights)
}

/// Subsets of `M` ranked by `f`, plus `cl_g(Z ∪ x)` for every `Z ⊆ M`
/// ranked by `g`, where `g` is a one-point extension of `f` by `x`.
fn closure_lattice(seed: u64, n: usize) -> (Polymatroid, RankedLattice, Measure) {
    let mut r = rng(seed);
    let f = random_polymatroid(&mut r, n);
    let g = one_point_extension(&mut r, &f, "x");
    let x = Subset::singleton(n);
    let mut entries: Vec<(Subset, Ratio)> = f.ground().full().subsets().map(|z| (z, f.value(z))).collect();
    for z in f.ground().full().subsets() {
        let c = closure(&g, z | x);
        if !entries.iter().any(|(m, _)| *m == c) {
            entries.push((c, g.value(c)));
        }
    }
    let rl = make_ranked_lattice(g.ground().clone(), entries).unwrap();
    let weights = (0..=n).map(|i| g.value(Subset::singleton(i))).collect();
    (f, rl, Measure::new(g.ground().clone(), weights).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn convolution_matches_the_definition(seed in any::<u64>(), n in 1usize..=5) {
        let (rl, mu, entries, weights) = random_instance(seed, n);
        let conv = convolve(&rl, &mu).unwrap();
        let expected = convolve_oracle(&entries, &weights, n);
        prop_assert_eq!(conv.value.table(), expected.as_slice());
        prop_assert_eq!(conv.empty_raw, entries.iter().map(|e| e.1).min().unwrap());
        for a in Subset::full(n).subsets().filter(|a| !a.is_empty()) {
            let z = conv.witness_of(&rl, a);
            prop_assert_eq!(conv.value.value(a), rl.rank_of(z).unwrap() + mu.of(a - z));
            // the witness is the first minimizer in member order
            let first = rl
                .entries()
                .find(|&(m, r)| r + mu.of(a - m) == conv.value.value(a))
                .map(|(m, _)| m);
            prop_assert_eq!(Some(z), first);
        }
    }

    #[test]
    fn pair_condition_gives_a_polymatroid(seed in any::<u64>(), n in 1usize..=5) {
        let (rl, mu, entries, _) = random_instance(seed, n);
        let cond = check_conditions(&rl, &mu, None).unwrap();
        let conv = convolve(&rl, &mu).unwrap();
        if cond.incomparable.passed() {
            prop_assert!(validate_polymatroid(&conv.value).is_polymatroid);
            if cond.chain.passed() {
                for (z, r) in entries {
                    let got = if z.is_empty() { conv.empty_raw } else { conv.value.value(z) };
                    prop_assert_eq!(got, r);
                }
            }
        }
    }

    #[test]
    fn reported_failures_are_genuine(seed in any::<u64>(), n in 1usize..=5) {
        let (rl, mu, _, _) = random_instance(seed, n);
        let cond = check_conditions(&rl, &mu, None).unwrap();
        let rank = |z: Subset| rl.rank_of(z).unwrap();
        let idx = |z: Subset| rl.position(z).unwrap();
        match cond.incomparable {
            Outcome::Pass => {
                for i in 0..rl.len() {
                    for j in 0..rl.len() {
                        let (a, b) = (rl.members()[i], rl.members()[j]);
                        if a.is_incomparable(b) {
                            let (m, s) = (rl.meet(i, j), rl.join(i, j));
                            prop_assert!(rank(a) + rank(b) >= rank(m) + rank(s) + mu.of((a & b) - m));
                        }
                    }
                }
            }
            Outcome::Fail(Witness::Pair(a, b)) => {
                prop_assert!(a.is_incomparable(b));
                let (m, s) = (rl.meet(idx(a), idx(b)), rl.join(idx(a), idx(b)));
                prop_assert!(rank(a) + rank(b) < rank(m) + rank(s) + mu.of((a & b) - m));
            }
            Outcome::Fail(w) => prop_assert!(false, "unexpected witness {:?}", w),
        }
        match cond.chain {
            Outcome::Pass => {
                for (a, ra) in rl.entries() {
                    for (b, rb) in rl.entries() {
                        if a.is_proper_subset_of(b) {
                            prop_assert!(ra <= rb && rb - ra <= mu.of(b - a));
                        }
                    }
                }
            }
            Outcome::Fail(Witness::Pair(a, b)) => {
                prop_assert!(a.is_proper_subset_of(b));
                prop_assert!(rank(a) > rank(b) || rank(b) - rank(a) > mu.of(b - a));
            }
            Outcome::Fail(w) => prop_assert!(false, "unexpected witness {:?}", w),
        }
    }

    #[test]
    fn embedding_conditions_keep_the_base(seed in any::<u64>(), n in 1usize..=4) {
        let (f, rl, mu) = closure_lattice(seed, n);
        let cond = check_conditions(&rl, &mu, Some(&f)).unwrap();
        let emb = cond.embedding.unwrap();
        prop_assert!(emb.rank_matches_base.passed() && emb.measure_matches_base.passed());
        if emb.all_pass() && cond.incomparable.passed() && cond.chain.passed() {
            let conv = convolve(&rl, &mu).unwrap();
            for a in f.ground().full().subsets() {
                prop_assert_eq!(conv.value.value(a), f.value(a));
            }
        }
    }

    #[test]
    fn cut_lattices_meet_every_condition(seed in any::<u64>(), n in 2usize..=4, eps in 0i64..=3) {
        let mut r = rng(seed);
        let f = random_integer_polymatroid(&mut r, n);
        let list = flats(&f).members().to_vec();
        let (a, b) = (*list.choose(&mut r).unwrap(), *list.choose(&mut r).unwrap());
        let cut = generate_cut(&f, a, b).unwrap();
        if cut.principal {
            return Ok(());
        }
        let ext = common_info_lattice(&f, &cut, int(eps)).unwrap();
        let cond = check_conditions(&ext.lattice, &ext.measure, Some(&f)).unwrap();
        prop_assert!(cond.incomparable.passed() && cond.chain.passed());
        prop_assert!(cond.embedding.unwrap().all_pass());
        let conv = convolve(&ext.lattice, &ext.measure).unwrap();
        for s in f.ground().full().subsets() {
            prop_assert_eq!(conv.value.value(s), f.value(s));
        }
    }
}

/// The measure inequality that makes convolutions submodular, over every
/// quadruple of subsets.
#[test]
fn measure_inequality_exhaustive() {
    let mut r = rng(11);
    for n in 1..=4 {
        for _ in 0..3 {
            let weights: Vec<Ratio> = (0..n).map(|_| Ratio::new(r.gen_range(0..=6), r.gen_range(1..=3))).collect();
            let mu = Measure::new(GroundSet::letters(n), weights).unwrap();
            let all: Vec<Subset> = Subset::full(n).subsets().collect();
            for &a in &all {
                for &b in &all {
                    for &za in &all {
                        for &zb in &all {
                            let lhs = mu.of(a - za) + mu.of(b - zb);
                            let rhs = mu.of((a & b) - (za & zb)) + mu.of((a | b) - (za | zb));
                            assert!(lhs >= rhs);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn lattice_validation_errors() {
    let g = GroundSet::letters(2);
    let (a, b) = (g.set("a"), g.set("b"));
    assert!(make_ranked_lattice(g.clone(), vec![(a, int(1)), (b, int(1))]).is_err());
    assert!(make_ranked_lattice(g.clone(), vec![]).is_err());
    assert!(make_ranked_lattice(g.clone(), vec![(a, int(-1))]).is_err());
    let power = make_ranked_lattice(g.clone(), g.full().subsets().map(|s| (s, int(s.len() as i64))).collect()).unwrap();
    for i in 0..power.len() {
        for j in 0..power.len() {
            let (x, y) = (power.members()[i], power.members()[j]);
            assert_eq!(power.meet(i, j), x & y);
            assert_eq!(power.join(i, j), x | y);
        }
    }
}
