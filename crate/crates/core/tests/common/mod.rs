#![allow(dead_code)]

use polyconv::cuts::generate_cut;
use polyconv::extensions::common_info_extension;
use polyconv::setcore::{flats, GroundSet, Partition, Polymatroid, Ratio, SetFunction, Subset};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(v: i64) -> Ratio {
    Ratio::from_integer(v)
}

pub fn random_subset(rng: &mut TestRng, n: usize) -> Subset {
    Subset(rng.gen_range(0..1u32 << n))
}

/// Weighted coverage `A ↦ w(⋃ cover(a))`, truncated at a random level.
pub fn coverage(rng: &mut TestRng, n: usize) -> Polymatroid {
    let universe = rng.gen_range(2..=6);
    let weights: Vec<i64> = (0..universe).map(|_| rng.gen_range(1..=3)).collect();
    let covers: Vec<u32> = (0..n).map(|_| rng.gen_range(0..1u32 << universe)).collect();
    let total: i64 = weights.iter().sum();
    let cap = rng.gen_range(1..=total);
    let sf = SetFunction::from_fn(GroundSet::letters(n), |s| {
        let u = s.elements().fold(0, |acc, i| acc | covers[i]);
        let w: i64 = (0..universe).filter(|&k| u >> k & 1 == 1).map(|k| weights[k]).sum();
        int(w.min(cap))
    });
    Polymatroid::new(sf).expect("truncated coverage is a polymatroid")
}

fn gf2_rank(mut vs: Vec<u32>) -> i64 {
    let mut rank = 0;
    while let Some(pos) = vs.iter().position(|&v| v != 0) {
        let pivot = vs.swap_remove(pos);
        let bit = pivot & pivot.wrapping_neg();
        for v in vs.iter_mut() {
            if *v & bit != 0 {
                *v ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Column matroid of random vectors over GF(2).
pub fn linear_matroid(rng: &mut TestRng, n: usize, dim: usize) -> Polymatroid {
    let vecs: Vec<u32> = (0..n).map(|_| rng.gen_range(0..1u32 << dim)).collect();
    let sf = SetFunction::from_fn(GroundSet::letters(n), |s| int(gf2_rank(s.elements().map(|i| vecs[i]).collect())));
    Polymatroid::new(sf).expect("linear rank is a matroid")
}

/// Rank of random subspaces (one per element) of GF(2)^dim, a linear
/// polymatroid.
pub fn linear_polymatroid(rng: &mut TestRng, n: usize, dim: usize) -> Polymatroid {
    let spans: Vec<Vec<u32>> = (0..n)
        .map(|_| (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..1u32 << dim)).collect())
        .collect();
    let sf = SetFunction::from_fn(GroundSet::letters(n), |s| {
        int(gf2_rank(s.elements().flat_map(|i| spans[i].iter().copied()).collect()))
    });
    Polymatroid::new(sf).expect("linear rank is a polymatroid")
}

pub fn sum(a: &Polymatroid, b: &Polymatroid) -> Polymatroid {
    let sf = SetFunction::from_fn(a.ground().clone(), |s| a.value(s) + b.value(s));
    Polymatroid::new(sf).expect("sum of polymatroids")
}

pub fn scale(a: &Polymatroid, k: Ratio) -> Polymatroid {
    Polymatroid::new(SetFunction::from_fn(a.ground().clone(), |s| a.value(s) * k)).expect("scaled polymatroid")
}

pub fn random_integer_polymatroid(rng: &mut TestRng, n: usize) -> Polymatroid {
    match rng.gen_range(0..4) {
        0 | 1 => coverage(rng, n),
        2 => {
            let d = rng.gen_range(1..=n.max(1) + 1);
            linear_polymatroid(rng, n, d)
        }
        _ => {
            let a = coverage(rng, n);
            let dim = rng.gen_range(1..=3);
            let b = linear_matroid(rng, n, dim);
            sum(&a, &b)
        }
    }
}

pub fn random_polymatroid(rng: &mut TestRng, n: usize) -> Polymatroid {
    let base = random_integer_polymatroid(rng, n);
    if rng.gen_bool(0.25) {
        scale(&base, Ratio::new(rng.gen_range(1..=5), rng.gen_range(1..=4)))
    } else {
        base
    }
}

/// Arbitrary rational values, signs included; `f(∅) = 0`.
pub fn random_set_function(rng: &mut TestRng, n: usize) -> SetFunction {
    let table: Vec<Ratio> = (0..1usize << n)
        .map(|k| {
            if k == 0 {
                int(0)
            } else {
                Ratio::new(rng.gen_range(-9..=9), rng.gen_range(1..=4))
            }
        })
        .collect();
    SetFunction::from_table(GroundSet::letters(n), table).expect("table has the right size")
}

/// A random polymatroid on `base`'s ground plus `label` extending `base`.
pub fn one_point_extension(rng: &mut TestRng, base: &Polymatroid, label: &str) -> Polymatroid {
    let n = base.n();
    let ground = base.ground().extended([label]).expect("fresh label");
    let y = Subset::singleton(n);
    loop {
        let rule = rng.gen_range(0..4);
        let k = rng.gen_range(0..n);
        let c = int(rng.gen_range(0..=3));
        let t = random_subset(rng, n);
        if rule == 3 {
            let fl = flats(base);
            let list = fl.members();
            let (a, b) = (*list.choose(rng).unwrap(), *list.choose(rng).unwrap());
            let cut = generate_cut(base, a, b).expect("flats");
            if !cut.principal {
                let eps = Ratio::new(rng.gen_range(0..=2), rng.gen_range(1..=2));
                let eps = if base.is_integer() { eps.floor() } else { eps };
                let ext = common_info_extension(base, &cut, eps).expect("non-principal cut");
                let sf = SetFunction::from_table(ground.clone(), ext.table().to_vec()).expect("same size");
                return Polymatroid::new(sf).expect("relabeled extension");
            }
            continue;
        }
        let sf = SetFunction::from_fn(ground.clone(), |s| {
            let b = s - y;
            if !s.contains(n) {
                return base.value(b);
            }
            match rule {
                0 => base.value(b.with(k)),
                1 => base.value(b) + c,
                _ => (base.value(b) + c).min(base.value(b | t)),
            }
        });
        if let Ok(pm) = Polymatroid::new(sf) {
            return pm;
        }
    }
}

/// A random partition with at least one merged class when `n > 1`.
pub fn random_partition(rng: &mut TestRng, ground: &GroundSet) -> Partition {
    let n = ground.len();
    loop {
        let ids: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
        let mut classes: Vec<Subset> = Vec::new();
        for id in 0..n {
            let c = Subset::from_indices((0..n).filter(|&i| ids[i] == id));
            if !c.is_empty() {
                classes.push(c);
            }
        }
        if classes.len() < n || n == 1 {
            return Partition::new(ground.clone(), classes).unwrap();
        }
    }
}

/// `f(∅)`-pinned convolution by the definition, no witnesses.
pub fn convolve_oracle(members: &[(Subset, Ratio)], weights: &[Ratio], n: usize) -> Vec<Ratio> {
    (0..1u32 << n)
        .map(|a| {
            if a == 0 {
                return int(0);
            }
            members
                .iter()
                .map(|&(z, r)| {
                    let rest = a & !z.0;
                    r + (0..n).filter(|&i| rest >> i & 1 == 1).map(|i| weights[i]).sum::<Ratio>()
                })
                .min()
                .unwrap()
        })
        .collect()
}

/// A random ranked lattice with a measure, as member entries and weights.
/// Families are intersection-closed, union-closed, the flats or the cyclic
/// flats of a random polymatroid; ranks come from a polymatroid or are
/// random.
pub fn random_lattice(rng: &mut TestRng, n: usize) -> (Vec<(Subset, Ratio)>, Vec<Ratio>) {
    let g = random_polymatroid(rng, n);
    let full = Subset::full(n);
    let mut family: Vec<Subset> = match rng.gen_range(0..4) {
        0 => {
            let mut fam = vec![full];
            for _ in 0..rng.gen_range(1..=5) {
                fam.push(random_subset(rng, n));
            }
            close(fam, |a, b| a & b)
        }
        1 => {
            let mut fam = vec![Subset::EMPTY];
            for _ in 0..rng.gen_range(1..=5) {
                fam.push(random_subset(rng, n));
            }
            close(fam, |a, b| a | b)
        }
        2 => flats(&g).members().to_vec(),
        _ => polyconv::cyclic::cyclic_flats(&g),
    };
    family.sort();
    let measure_from_g = rng.gen_bool(0.5);
    let weights: Vec<Ratio> = (0..n)
        .map(|i| {
            if measure_from_g {
                g.value(Subset::singleton(i))
            } else {
                int(rng.gen_range(0..=3))
            }
        })
        .collect();
    let random_ranks = rng.gen_bool(0.3);
    let entries = family
        .into_iter()
        .map(|z| {
            let r = if random_ranks { int(rng.gen_range(0..=4)) } else { g.value(z) };
            (z, r)
        })
        .collect();
    (entries, weights)
}

fn close(mut fam: Vec<Subset>, op: impl Fn(Subset, Subset) -> Subset) -> Vec<Subset> {
    loop {
        fam.sort();
        fam.dedup();
        let mut extra = Vec::new();
        for &a in &fam {
            for &b in &fam {
                let c = op(a, b);
                if fam.binary_search(&c).is_err() && !extra.contains(&c) {
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            return fam;
        }
        fam.extend(extra);
    }
}

/// Exhaustive amalgam search: every assignment of the unfixed subsets in
/// lexicographic order, each checked against the axioms in full.
pub fn amalgam_oracle(f1: &Polymatroid, f2: &Polymatroid, bound: i64) -> Option<Vec<i64>> {
    let extra: Vec<String> =
        f2.ground().labels().iter().filter(|l| f1.ground().index_of(l).is_none()).cloned().collect();
    let ground = f1.ground().extended(extra).unwrap();
    let n = ground.len();
    let mut fixed: Vec<Option<i64>> = vec![None; 1 << n];
    for f in [f1, f2] {
        let map = ground.embedding_of(f.ground()).unwrap();
        for s in f.ground().full().subsets() {
            let img = polyconv::setcore::map_subset(s, &map);
            fixed[img.index()] = Some(f.value(s).to_integer());
        }
    }
    let free: Vec<usize> = polyconv::setcore::canonical_subsets(n)
        .into_iter()
        .map(|s| s.index())
        .filter(|&i| fixed[i].is_none())
        .collect();
    let mut digits = vec![0i64; free.len()];
    loop {
        let mut table: Vec<i64> = fixed.iter().map(|v| v.unwrap_or(0)).collect();
        for (k, &i) in free.iter().enumerate() {
            table[i] = digits[k];
        }
        let size = 1usize << n;
        let valid = (0..size).all(|a| {
            (0..size).all(|b| {
                (a & b != a || table[a] <= table[b]) && table[a] + table[b] >= table[a | b] + table[a & b]
            })
        });
        if valid {
            return Some(table);
        }
        // odometer, last free subset fastest
        let mut k = free.len();
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            if digits[k] < bound {
                digits[k] += 1;
                digits[k + 1..].iter_mut().for_each(|d| *d = 0);
                break;
            }
        }
    }
}
