//! Cyclic flats: the peeling procedure that finds the largest cyclic flat
//! inside a flat, and the lattice the cyclic flats form.
//!
//! A flat `C` is cyclic when every `i ∈ C` has `f(i) = 0` or
//! `f(C) - f(C - i) < f(i)`. For matroids these are the flats that are
//! unions of circuits. The empty set is cyclic whenever it is a flat.

use crate::error::{Error, Result};
use crate::setcore::{closure, is_flat, Polymatroid, Subset};

pub fn is_cyclic_flat(pm: &Polymatroid, c: Subset) -> bool {
    is_flat(pm, c) && is_cyclic_set(pm, c)
}

fn is_cyclic_set(pm: &Polymatroid, c: Subset) -> bool {
    let fc = pm.value(c);
    c.elements().all(|i| {
        let fi = pm.value(Subset::singleton(i));
        fi == 0.into() || fc - pm.value(c.without(i)) < fi
    })
}

/// Elements of `set` that can be peeled off: positive rank and
/// `f(set) = f(x) + f(set - x)`.
pub fn removable(pm: &Polymatroid, set: Subset) -> Vec<usize> {
    let fs = pm.value(set);
    set.elements()
        .filter(|&x| {
            let fx = pm.value(Subset::singleton(x));
            fx > 0.into() && fs == fx + pm.value(set.without(x))
        })
        .collect()
}

/// The unique maximal cyclic flat inside the flat `f`, found by repeatedly
/// peeling the lowest-index removable element.
pub fn max_cyclic_flat(pm: &Polymatroid, f: Subset) -> Result<Subset> {
    max_cyclic_flat_by(pm, f, |_| 0)
}

/// Peeling with a caller-chosen removal order: `pick` receives the current
/// removable elements (non-empty, increasing) and returns a position in
/// that slice. Every choice sequence ends at the same set.
pub fn max_cyclic_flat_by(
    pm: &Polymatroid,
    f: Subset,
    mut pick: impl FnMut(&[usize]) -> usize,
) -> Result<Subset> {
    if !is_flat(pm, f) {
        return Err(Error::NotAFlat(pm.ground().format(f)));
    }
    let mut cur = f;
    loop {
        let cands = removable(pm, cur);
        if cands.is_empty() {
            return Ok(cur);
        }
        cur = cur.without(cands[pick(&cands)]);
    }
}

/// The cyclic flats with their lattice operations. `join` is the closure of
/// the union; `meet` is the largest cyclic flat inside the intersection,
/// which can be strictly smaller than the intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicFlatLattice {
    members: Vec<Subset>,
    meet: Vec<usize>,
    join: Vec<usize>,
}

impl CyclicFlatLattice {
    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, c: Subset) -> Option<usize> {
        self.members.binary_search(&c).ok()
    }

    pub fn meet_index(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.members.len() + j]
    }

    pub fn join_index(&self, i: usize, j: usize) -> usize {
        self.join[i * self.members.len() + j]
    }

    /// Panics if either argument is not a member.
    pub fn meet(&self, a: Subset, b: Subset) -> Subset {
        let (i, j) = (self.expect(a), self.expect(b));
        self.members[self.meet_index(i, j)]
    }

    /// Panics if either argument is not a member.
    pub fn join(&self, a: Subset, b: Subset) -> Subset {
        let (i, j) = (self.expect(a), self.expect(b));
        self.members[self.join_index(i, j)]
    }

    fn expect(&self, c: Subset) -> usize {
        self.position(c)
            .unwrap_or_else(|| panic!("{c:?} is not a cyclic flat"))
    }
}

pub fn cyclic_flats(pm: &Polymatroid) -> Vec<Subset> {
    crate::setcore::flats(pm)
        .iter()
        .filter(|&c| is_cyclic_set(pm, c))
        .collect()
}

pub fn cyclic_lattice(pm: &Polymatroid) -> CyclicFlatLattice {
    let members = cyclic_flats(pm);
    let m = members.len();
    let index = |c: Subset| {
        members
            .binary_search(&c)
            .unwrap_or_else(|_| panic!("lattice operation left the cyclic flats at {c:?}"))
    };
    let mut meet = vec![0; m * m];
    let mut join = vec![0; m * m];
    for i in 0..m {
        for j in 0..m {
            let inter = max_cyclic_flat(pm, members[i] & members[j])
                .expect("intersection of flats is a flat");
            meet[i * m + j] = index(inter);
            join[i * m + j] = index(closure(pm, members[i] | members[j]));
        }
    }
    CyclicFlatLattice { members, meet, join }
}
