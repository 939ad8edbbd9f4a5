use std::fmt;
use std::ops::{Deref, Index};

use num_traits::{One, Zero};

use super::ground::GroundSet;
use super::subset::{canonical_subsets, Subset};
use super::Ratio;
use crate::error::{Error, Result};

/// Cached validation results. They are only ever set by [`Polymatroid::new`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub validated_polymatroid: bool,
    pub integer_valued: bool,
    pub is_matroid: bool,
}

/// A total rational-valued function on the subsets of a ground set with
/// value 0 on the empty set.
#[derive(Clone)]
pub struct SetFunction {
    ground: GroundSet,
    table: Vec<Ratio>,
    flags: Flags,
}

impl PartialEq for SetFunction {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.table == other.table
    }
}

impl Eq for SetFunction {}

impl fmt::Debug for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for s in canonical_subsets(self.ground.len()).into_iter().skip(1) {
            m.entry(&self.ground.format(s), &self.table[s.index()].to_string());
        }
        m.finish()
    }
}

impl Index<Subset> for SetFunction {
    type Output = Ratio;

    fn index(&self, s: Subset) -> &Ratio {
        &self.table[s.index()]
    }
}

/// Build a set function from explicit `(subset, value)` entries, one per
/// non-empty subset. An entry for the empty set is accepted only with
/// value 0.
pub fn make_set_function(ground: GroundSet, entries: &[(Subset, Ratio)]) -> Result<SetFunction> {
    let size = ground.subset_count();
    let mut table: Vec<Option<Ratio>> = vec![None; size];
    table[0] = Some(Ratio::zero());
    for &(s, v) in entries {
        if !ground.contains_mask(s) {
            return Err(Error::OutOfGround(s.bits()));
        }
        if s.is_empty() {
            if !v.is_zero() {
                return Err(Error::NonZeroEmpty(v));
            }
            continue;
        }
        if v < Ratio::zero() {
            return Err(Error::NegativeValue {
                subset: ground.format(s),
                value: v,
            });
        }
        if table[s.index()].replace(v).is_some() {
            return Err(Error::DuplicateSubset(ground.format(s)));
        }
    }
    let mut values = Vec::with_capacity(size);
    for s in canonical_subsets(ground.len()) {
        if table[s.index()].is_none() {
            return Err(Error::MissingSubset(ground.format(s)));
        }
    }
    for v in table {
        values.push(v.expect("checked above"));
    }
    Ok(SetFunction::new_unchecked(ground, values))
}

impl SetFunction {
    fn new_unchecked(ground: GroundSet, table: Vec<Ratio>) -> Self {
        SetFunction {
            ground,
            table,
            flags: Flags::default(),
        }
    }

    /// Tabulate `f` over every subset. The empty set is pinned to 0.
    pub fn from_fn(ground: GroundSet, f: impl Fn(Subset) -> Ratio) -> Self {
        let table = (0..ground.subset_count() as u32)
            .map(|b| if b == 0 { Ratio::zero() } else { f(Subset(b)) })
            .collect();
        SetFunction::new_unchecked(ground, table)
    }

    /// Table indexed by mask value.
    pub fn from_table(ground: GroundSet, table: Vec<Ratio>) -> Result<Self> {
        if table.len() != ground.subset_count() {
            return Err(Error::GroundMismatch(format!(
                "table has {} entries, ground set needs {}",
                table.len(),
                ground.subset_count()
            )));
        }
        if !table[0].is_zero() {
            return Err(Error::NonZeroEmpty(table[0]));
        }
        Ok(SetFunction::new_unchecked(ground, table))
    }

    pub fn zero(ground: GroundSet) -> Self {
        SetFunction::from_fn(ground, |_| Ratio::zero())
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    #[inline]
    pub fn value(&self, s: Subset) -> Ratio {
        self.table[s.index()]
    }

    pub fn table(&self) -> &[Ratio] {
        &self.table
    }

    pub fn full_rank(&self) -> Ratio {
        self.value(self.ground.full())
    }

    pub fn is_integer_valued(&self) -> bool {
        self.table.iter().all(|v| v.is_integer())
    }

    /// Non-empty subsets paired with their values, in canonical order.
    pub fn entries(&self) -> Vec<(Subset, Ratio)> {
        canonical_subsets(self.n())
            .into_iter()
            .skip(1)
            .map(|s| (s, self.value(s)))
            .collect()
    }

    /// The same function over a permutation of the ground set.
    pub fn reorder(&self, target: &GroundSet) -> Result<SetFunction> {
        if target.len() != self.n() {
            return Err(Error::GroundMismatch("different ground sizes".into()));
        }
        let map = target
            .embedding_of(&self.ground)
            .ok_or_else(|| Error::GroundMismatch("label sets differ".into()))?;
        let mut table = vec![Ratio::zero(); self.table.len()];
        for s in self.ground.full().subsets() {
            table[super::map_subset(s, &map).index()] = self.value(s);
        }
        Ok(SetFunction {
            ground: target.clone(),
            table,
            flags: self.flags,
        })
    }

    /// Equality up to the order of the ground set labels.
    pub fn same_as(&self, other: &SetFunction) -> bool {
        if self.n() != other.n() {
            return false;
        }
        match other.reorder(&self.ground) {
            Ok(o) => o.table == self.table,
            Err(_) => false,
        }
    }

    /// Whether `self` agrees with `base` on every subset of `base`'s ground
    /// set (matched by label).
    pub fn extends(&self, base: &SetFunction) -> bool {
        let Some(map) = self.ground.embedding_of(&base.ground) else {
            return false;
        };
        base.ground
            .full()
            .subsets()
            .all(|s| self.value(super::map_subset(s, &map)) == base.value(s))
    }
}

/// One violated axiom together with the pair of subsets exhibiting it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub first: Subset,
    pub second: Subset,
}

/// Outcome of [`validate_polymatroid`]. Axiom violations are data here,
/// never errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// `(A, ∅)` with `f(A) < 0`.
    pub negative: Option<Violation>,
    /// `(A, B)` with `A ⊆ B` and `f(A) > f(B)`.
    pub non_monotone: Option<Violation>,
    /// `(A, B)` with `f(A) + f(B) < f(A∪B) + f(A∩B)`.
    pub non_submodular: Option<Violation>,
    pub is_polymatroid: bool,
    pub integer_valued: bool,
    pub is_matroid: bool,
    /// `f = μ_f` everywhere.
    pub modular: bool,
    /// Every pair of flats is a modular pair.
    pub flat_modular: bool,
}

impl ValidationReport {
    pub fn summary(&self, ground: &GroundSet) -> String {
        let mut parts = Vec::new();
        let fmt = |v: &Violation| format!("({}, {})", ground.format(v.first), ground.format(v.second));
        if let Some(v) = &self.negative {
            parts.push(format!("negative at {}", fmt(v)));
        }
        if let Some(v) = &self.non_monotone {
            parts.push(format!("not monotone at {}", fmt(v)));
        }
        if let Some(v) = &self.non_submodular {
            parts.push(format!("not submodular at {}", fmt(v)));
        }
        if parts.is_empty() {
            "valid".into()
        } else {
            parts.join("; ")
        }
    }
}

/// Scan the three polymatroid axioms by full enumeration.
///
/// Monotonicity and submodularity are checked in their local forms
/// (`f(A) ≤ f(Ai)` and `f(Ai) + f(Aj) ≥ f(Aij) + f(A)`), which are
/// equivalent to the global ones and cost `O(2^n n^2)` instead of `O(4^n)`.
pub fn validate_polymatroid(sf: &SetFunction) -> ValidationReport {
    let n = sf.n();
    let order = canonical_subsets(n);
    let zero = Ratio::zero();
    let mut negative = None;
    let mut non_monotone = None;
    let mut non_submodular = None;
    for &a in &order {
        let fa = sf.value(a);
        if negative.is_none() && fa < zero {
            negative = Some(Violation {
                first: a,
                second: Subset::EMPTY,
            });
        }
        let outside: Vec<usize> = (0..n).filter(|&i| !a.contains(i)).collect();
        for (k, &i) in outside.iter().enumerate() {
            let ai = a.with(i);
            if non_monotone.is_none() && fa > sf.value(ai) {
                non_monotone = Some(Violation { first: a, second: ai });
            }
            if non_submodular.is_some() {
                continue;
            }
            for &j in &outside[k + 1..] {
                let aj = a.with(j);
                if sf.value(ai) + sf.value(aj) < sf.value(ai.with(j)) + fa {
                    non_submodular = Some(Violation { first: ai, second: aj });
                    break;
                }
            }
        }
    }
    let is_polymatroid = negative.is_none() && non_monotone.is_none() && non_submodular.is_none();
    let integer_valued = sf.is_integer_valued();
    let is_matroid = is_polymatroid
        && integer_valued
        && (0..n).all(|i| {
            let v = sf.value(Subset::singleton(i));
            v.is_zero() || v.is_one()
        });
    let (modular, flat_modular) = if is_polymatroid {
        let modular = order
            .iter()
            .all(|&s| sf.value(s) == s.elements().map(|i| sf.value(Subset::singleton(i))).sum());
        let flats = super::ops::flat_members(sf);
        let flat_modular = flats.iter().enumerate().all(|(k, &f1)| {
            flats[k + 1..]
                .iter()
                .all(|&f2| super::ops::defect(sf, f1, f2).is_zero())
        });
        (modular, flat_modular)
    } else {
        (false, false)
    };
    ValidationReport {
        negative,
        non_monotone,
        non_submodular,
        is_polymatroid,
        integer_valued,
        is_matroid,
        modular,
        flat_modular,
    }
}

/// A set function that passed [`validate_polymatroid`]. Holding one is the
/// proof that the axioms were checked; operations that need a polymatroid
/// take this type instead of re-checking.
#[derive(Clone, PartialEq, Eq)]
pub struct Polymatroid(SetFunction);

impl Polymatroid {
    pub fn new(mut sf: SetFunction) -> Result<Self> {
        let report = validate_polymatroid(&sf);
        if !report.is_polymatroid {
            return Err(Error::NotAPolymatroid(report.summary(sf.ground())));
        }
        sf.flags = Flags {
            validated_polymatroid: true,
            integer_valued: report.integer_valued,
            is_matroid: report.is_matroid,
        };
        Ok(Polymatroid(sf))
    }

    pub fn as_set_function(&self) -> &SetFunction {
        &self.0
    }

    pub fn into_inner(self) -> SetFunction {
        self.0
    }

    pub fn is_matroid(&self) -> bool {
        self.0.flags.is_matroid
    }

    pub fn is_integer(&self) -> bool {
        self.0.flags.integer_valued
    }

    /// Relabeled copy over a permutation of the ground set.
    pub fn reorder(&self, target: &GroundSet) -> Result<Polymatroid> {
        Ok(Polymatroid(self.0.reorder(target)?))
    }
}

impl Deref for Polymatroid {
    type Target = SetFunction;

    fn deref(&self) -> &SetFunction {
        &self.0
    }
}

impl fmt::Debug for Polymatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Additive non-negative weight on the subsets of a ground set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Measure {
    ground: GroundSet,
    weights: Vec<Ratio>,
    table: Vec<Ratio>,
}

impl Measure {
    pub fn new(ground: GroundSet, weights: Vec<Ratio>) -> Result<Self> {
        if weights.len() != ground.len() {
            return Err(Error::GroundMismatch(format!(
                "{} weights for {} elements",
                weights.len(),
                ground.len()
            )));
        }
        if let Some(i) = weights.iter().position(|w| *w < Ratio::zero()) {
            return Err(Error::NegativeValue {
                subset: ground.format(Subset::singleton(i)),
                value: weights[i],
            });
        }
        let mut table = vec![Ratio::zero(); ground.subset_count()];
        for b in 1..table.len() {
            let low = b.trailing_zeros() as usize;
            table[b] = table[b & (b - 1)] + weights[low];
        }
        Ok(Measure {
            ground,
            weights,
            table,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn weights(&self) -> &[Ratio] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> Ratio {
        self.weights[i]
    }

    #[inline]
    pub fn of(&self, s: Subset) -> Ratio {
        self.table[s.index()]
    }
}
