//! Information-style rank expressions and the integer amalgam search.
//!
//! With `f(I|K) = f(IK) - f(K)` and `f(I,J|K) = f(IK) + f(JK) - f(K) - f(IJK)`
//! (no disjointness assumed):
//!
//! ```text
//! COMM(A,B;Y|E)  = (A,B|YE) + (Y|AE) + (Y|BE) + (Y|ABE)
//! ING(A,B;P,Q|E) = -(A,B|E) + (A,B|PE) + (A,B|QE) + (P,Q|E)
//! ```
//!
//! Their sum equals a sum of ten mutual/conditional terms, each non-negative
//! on a polymatroid. The evaluators accept any set function: the identity
//! is linear and needs no axioms.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::setcore::{canonical_subsets, Polymatroid, Ratio, SetFunction, Subset};

/// Largest ground set the amalgam search accepts.
pub const MAX_AMALGAM_GROUND: usize = 8;

/// `f(I|K)`.
pub fn cond_rank(sf: &SetFunction, i: Subset, k: Subset) -> Ratio {
    sf.value(i | k) - sf.value(k)
}

/// `f(I,J|K)`.
pub fn mutual(sf: &SetFunction, i: Subset, j: Subset, k: Subset) -> Ratio {
    sf.value(i | k) + sf.value(j | k) - sf.value(k) - sf.value(i | j | k)
}

/// Conditional common-information expression `COMM(A,B;Y|E)`.
pub fn comm_value(sf: &SetFunction, a: Subset, b: Subset, y: Subset, e: Subset) -> Ratio {
    mutual(sf, a, b, y | e) + cond_rank(sf, y, a | e) + cond_rank(sf, y, b | e) + cond_rank(sf, y, a | b | e)
}

/// Conditional Ingleton expression `ING(A,B;P,Q|E)`.
pub fn ing_value(sf: &SetFunction, a: Subset, b: Subset, p: Subset, q: Subset, e: Subset) -> Ratio {
    -mutual(sf, a, b, e) + mutual(sf, a, b, p | e) + mutual(sf, a, b, q | e) + mutual(sf, p, q, e)
}

/// The ten terms whose sum is `ING(A,B;P,Q|E) + COMM(A,B;Y|E)`.
pub fn ten_terms(sf: &SetFunction, a: Subset, b: Subset, p: Subset, q: Subset, y: Subset, e: Subset) -> [Ratio; 10] {
    [
        mutual(sf, a, b, p | y | e),
        mutual(sf, a, b, q | y | e),
        mutual(sf, p, q, y | e),
        mutual(sf, p, y, a | e),
        mutual(sf, p, y, b | e),
        mutual(sf, q, y, a | e),
        mutual(sf, q, y, b | e),
        cond_rank(sf, y, a | b | p | e),
        cond_rank(sf, y, a | b | q | e),
        cond_rank(sf, y, p | q | e),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TenTermCheck {
    pub lhs: Ratio,
    pub rhs: Ratio,
    pub equal: bool,
}

pub fn ten_term_check(sf: &SetFunction, a: Subset, b: Subset, p: Subset, q: Subset, y: Subset, e: Subset) -> TenTermCheck {
    let lhs = ing_value(sf, a, b, p, q, e) + comm_value(sf, a, b, y, e);
    let rhs = ten_terms(sf, a, b, p, q, y, e).iter().sum();
    TenTermCheck {
        lhs,
        rhs,
        equal: lhs == rhs,
    }
}

/// A rank expression with its arguments, evaluable against any set function
/// over a matching ground set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankExpr {
    Cond { i: Subset, k: Subset },
    Mutual { i: Subset, j: Subset, k: Subset },
    Comm { a: Subset, b: Subset, y: Subset, e: Subset },
    Ing { a: Subset, b: Subset, p: Subset, q: Subset, e: Subset },
    /// Evaluates to the right-hand side of the ten-term identity.
    TenTerm { a: Subset, b: Subset, p: Subset, q: Subset, y: Subset, e: Subset },
}

impl RankExpr {
    pub fn evaluate(&self, sf: &SetFunction) -> Ratio {
        match *self {
            RankExpr::Cond { i, k } => cond_rank(sf, i, k),
            RankExpr::Mutual { i, j, k } => mutual(sf, i, j, k),
            RankExpr::Comm { a, b, y, e } => comm_value(sf, a, b, y, e),
            RankExpr::Ing { a, b, p, q, e } => ing_value(sf, a, b, p, q, e),
            RankExpr::TenTerm { a, b, p, q, y, e } => ten_terms(sf, a, b, p, q, y, e).iter().sum(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            RankExpr::Cond { .. } => "cond",
            RankExpr::Mutual { .. } => "mutual",
            RankExpr::Comm { .. } => "comm",
            RankExpr::Ing { .. } => "ing",
            RankExpr::TenTerm { .. } => "tenterm",
        }
    }
}

fn to_int(sf: &SetFunction, which: &str) -> Result<Vec<i64>> {
    sf.table()
        .iter()
        .map(|v| {
            if v.is_integer() {
                v.to_integer().to_i64().ok_or_else(|| Error::NonInteger(which.into()))
            } else {
                Err(Error::NonInteger(format!("{which} has value {v}")))
            }
        })
        .collect()
}

/// Depth-first search for an integer polymatroid on `N₁ ∪ N₂` extending
/// both inputs, with every new value in `0..=bound` (default
/// `f₁(N₁) + f₂(N₂)`).
///
/// Free subsets are those inside neither `N₁` nor `N₂`; every superset of a
/// free subset is free, so assigning them in canonical order means each
/// local monotonicity and submodularity constraint with a given top is
/// decided exactly when that top is assigned. The first amalgam found, in
/// ascending value order, is returned.
pub fn amalgam_search_integer(f1: &Polymatroid, f2: &Polymatroid, bound: Option<i64>) -> Result<Option<Polymatroid>> {
    let t1 = to_int(f1, "first extension")?;
    let t2 = to_int(f2, "second extension")?;
    let extra: Vec<String> = f2
        .ground()
        .labels()
        .iter()
        .filter(|l| f1.ground().index_of(l).is_none())
        .cloned()
        .collect();
    let n = f1.n() + extra.len();
    if n > MAX_AMALGAM_GROUND {
        return Err(Error::TooLarge(n));
    }
    let ground = f1.ground().extended(extra)?;
    let map2 = ground.embedding_of(f2.ground()).expect("built from both label sets");
    let side1 = Subset::full(f1.n());
    let side2 = crate::setcore::map_subset(f2.ground().full(), &map2);
    let size = 1usize << n;

    let mut value = vec![i64::MIN; size];
    for s in side1.subsets() {
        value[s.index()] = t1[s.index()];
    }
    for s in f2.ground().full().subsets() {
        let img = crate::setcore::map_subset(s, &map2);
        let v = t2[s.index()];
        if value[img.index()] != i64::MIN && value[img.index()] != v {
            return Err(Error::GroundOverlapMismatch(ground.format(img)));
        }
        value[img.index()] = v;
    }
    let free: Vec<Subset> = canonical_subsets(n)
        .into_iter()
        .filter(|s| !s.is_subset_of(side1) && !s.is_subset_of(side2))
        .collect();
    let bound = bound.unwrap_or(t1[side1.index()] + t2[f2.ground().full().index()]);

    if search(&free, 0, &mut value, bound) {
        let table = value.into_iter().map(Ratio::from_integer).collect();
        let sf = SetFunction::from_table(ground, table)?;
        return Polymatroid::new(sf).map(Some);
    }
    Ok(None)
}

fn search(free: &[Subset], depth: usize, value: &mut [i64], bound: i64) -> bool {
    let Some(&t) = free.get(depth) else {
        return true;
    };
    let elems: Vec<usize> = t.elements().collect();
    let mut lo = 0;
    let mut hi = bound;
    for (k, &i) in elems.iter().enumerate() {
        let ti = t.without(i);
        lo = lo.max(value[ti.index()]);
        for &j in &elems[k + 1..] {
            let tj = t.without(j);
            hi = hi.min(value[ti.index()] + value[tj.index()] - value[ti.without(j).index()]);
        }
    }
    for v in lo..=hi {
        value[t.index()] = v;
        if search(free, depth + 1, value, bound) {
            return true;
        }
    }
    value[t.index()] = i64::MIN;
    false
}

/// Sum check used by certificates: `COMM + ING < 0` rules out any set
/// function on which both are evaluated, by the ten-term identity.
pub fn combined_is_negative(comm: Ratio, ing: Ratio) -> bool {
    comm + ing < Ratio::zero()
}
