
use super::function::{Measure, Polymatroid, SetFunction};
use super::ground::{map_subset, GroundSet};
use super::subset::{canonical_subsets, Subset};
use super::Ratio;
use crate::error::{Error, Result};

pub(crate) fn defect(sf: &SetFunction, a: Subset, b: Subset) -> Ratio {
    sf.value(a) + sf.value(b) - sf.value(a & b) - sf.value(a | b)
}

pub(crate) fn is_flat_in(sf: &SetFunction, s: Subset) -> bool {
    let fs = sf.value(s);
    (0..sf.n())
        .filter(|&i| !s.contains(i))
        .all(|i| sf.value(s.with(i)) > fs)
}

/// Flats in canonical order. Monotonicity makes the one-element test
/// sufficient: every proper superset contains some `F ∪ {i}`.
pub(crate) fn flat_members(sf: &SetFunction) -> Vec<Subset> {
    canonical_subsets(sf.n())
        .into_iter()
        .filter(|&s| is_flat_in(sf, s))
        .collect()
}

/// The flats of a polymatroid, sorted in canonical order.
///
/// `∅` is a member exactly when no element has rank zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatFamily {
    members: Vec<Subset>,
}

impl FlatFamily {
    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied()
    }
}

pub fn is_flat(pm: &Polymatroid, s: Subset) -> bool {
    is_flat_in(pm, s)
}

pub fn flats(pm: &Polymatroid) -> FlatFamily {
    FlatFamily {
        members: flat_members(pm),
    }
}

/// Smallest flat containing `a`: `a` together with every element of zero
/// marginal rank over it.
pub fn closure(pm: &Polymatroid, a: Subset) -> Subset {
    let fa = pm.value(a);
    (0..pm.n())
        .filter(|&i| !a.contains(i) && pm.value(a.with(i)) == fa)
        .fold(a, Subset::with)
}

/// `δ(A,B) = f(A) + f(B) - f(A∩B) - f(A∪B)`.
pub fn modular_defect(pm: &Polymatroid, a: Subset, b: Subset) -> Ratio {
    defect(pm, a, b)
}

/// The measure with `μ_f(a) = f(a)` on singletons.
pub fn induced_measure(pm: &Polymatroid) -> Measure {
    let weights = (0..pm.n())
        .map(|i| pm.value(Subset::singleton(i)))
        .collect();
    Measure::new(pm.ground().clone(), weights).expect("polymatroid ranks are non-negative")
}

/// An equivalence relation on a ground set, given by its classes. Classes
/// are kept sorted by their lowest element, and each carries the label it
/// gets in the factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    ground: GroundSet,
    classes: Vec<Subset>,
    names: Vec<String>,
    class_of: Vec<usize>,
}

impl Partition {
    /// Singleton classes are named after their element; larger classes by
    /// concatenating their labels.
    pub fn new(ground: GroundSet, classes: Vec<Subset>) -> Result<Self> {
        let names = default_names(&ground, &classes);
        Partition::with_names(ground, classes.into_iter().zip(names).collect())
    }

    pub fn with_names(ground: GroundSet, named: Vec<(Subset, String)>) -> Result<Self> {
        let mut named = named;
        let mut seen = Subset::EMPTY;
        for &(c, _) in &named {
            if c.is_empty() {
                return Err(Error::InvalidPartition("empty class".into()));
            }
            if !ground.contains_mask(c) {
                return Err(Error::OutOfGround(c.bits()));
            }
            if !(seen & c).is_empty() {
                return Err(Error::InvalidPartition(format!(
                    "class {} overlaps another class",
                    ground.format(c)
                )));
            }
            seen = seen | c;
        }
        if seen != ground.full() {
            return Err(Error::InvalidPartition(format!(
                "classes miss {}",
                ground.format(ground.full() - seen)
            )));
        }
        named.sort_by_key(|(c, _)| c.lowest());
        // validates the class labels
        GroundSet::new(named.iter().map(|(_, n)| n.clone()))?;
        let mut class_of = vec![0; ground.len()];
        for (k, (c, _)) in named.iter().enumerate() {
            for i in c.elements() {
                class_of[i] = k;
            }
        }
        let (classes, names) = named.into_iter().unzip();
        Ok(Partition {
            ground,
            classes,
            names,
            class_of,
        })
    }

    pub fn singletons(ground: GroundSet) -> Self {
        let classes = (0..ground.len()).map(Subset::singleton).collect();
        Partition::new(ground, classes).expect("singletons partition the ground set")
    }

    /// One non-singleton class `block`; the rest stay singletons.
    pub fn merging(ground: GroundSet, block: Subset, name: Option<&str>) -> Result<Self> {
        if block.is_empty() {
            return Err(Error::InvalidPartition("empty class".into()));
        }
        let mut classes = vec![block];
        classes.extend(
            (0..ground.len())
                .filter(|&i| !block.contains(i))
                .map(Subset::singleton),
        );
        let mut names = default_names(&ground, &classes);
        if let Some(name) = name {
            names[0] = name.to_string();
        }
        Partition::with_names(ground, classes.into_iter().zip(names).collect())
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn classes(&self) -> &[Subset] {
        &self.classes
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Ground set of the factor: one element per class.
    pub fn class_ground(&self) -> GroundSet {
        GroundSet::new(self.names.iter().cloned()).expect("validated on construction")
    }

    /// `φ(A)`: the classes meeting `a`.
    pub fn image(&self, a: Subset) -> Subset {
        Subset::from_indices(a.elements().map(|i| self.class_of[i]))
    }

    /// `φ⁻¹(B)`: union of the classes in `b`.
    pub fn preimage(&self, b: Subset) -> Subset {
        b.elements()
            .fold(Subset::EMPTY, |acc, k| acc | self.classes[k])
    }

    /// Whether `a` is a union of complete classes.
    pub fn is_saturated(&self, a: Subset) -> bool {
        self.preimage(self.image(a)) == a
    }
}

fn default_names(ground: &GroundSet, classes: &[Subset]) -> Vec<String> {
    classes
        .iter()
        .map(|&c| ground.element_labels(c).concat())
        .collect()
}

/// `g(B) = f(φ⁻¹(B))` on the class ground set.
pub fn factor(pm: &Polymatroid, part: &Partition) -> Result<Polymatroid> {
    if part.ground() != pm.ground() {
        return Err(Error::GroundMismatch(
            "partition is over a different ground set".into(),
        ));
    }
    let g = SetFunction::from_fn(part.class_ground(), |b| pm.value(part.preimage(b)));
    Polymatroid::new(g)
}

/// `g(A) = f(A ∪ X) - f(X)` on `M - X`.
pub fn contract(pm: &Polymatroid, x: Subset) -> Result<Polymatroid> {
    let full = pm.ground().full();
    if !x.is_subset_of(full) {
        return Err(Error::OutOfGround(x.bits()));
    }
    if x == full {
        return Err(Error::FullGroundSet);
    }
    let rest = full - x;
    let map: Vec<usize> = rest.elements().collect();
    let fx = pm.value(x);
    let g = SetFunction::from_fn(pm.ground().restricted(rest)?, |a| {
        pm.value(map_subset(a, &map) | x) - fx
    });
    Polymatroid::new(g)
}

/// The rank table on the subsets of `a`, relabeled over `a`'s elements.
pub fn restrict(sf: &SetFunction, a: Subset) -> Result<SetFunction> {
    if a.is_empty() {
        return Err(Error::EmptyRestriction);
    }
    if !sf.ground().contains_mask(a) {
        return Err(Error::OutOfGround(a.bits()));
    }
    let map: Vec<usize> = a.elements().collect();
    Ok(SetFunction::from_fn(sf.ground().restricted(a)?, |s| {
        sf.value(map_subset(s, &map))
    }))
}

/// Restriction of a polymatroid, which is again a polymatroid.
pub fn restrict_polymatroid(pm: &Polymatroid, a: Subset) -> Result<Polymatroid> {
    Polymatroid::new(restrict(pm, a)?)
}
