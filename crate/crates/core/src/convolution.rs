//! Ranked lattices of subsets and their convolution with a measure,
//! `r*μ : A ↦ min { r(Z) + μ(A - Z) : Z ∈ L }`.
//!
//! A lattice here is an explicit family of subsets of a ground set in which
//! every pair of members has a greatest common lower bound and a least
//! common upper bound inside the family. Meets may be strictly smaller than
//! intersections and joins strictly larger than unions.

use num_traits::Zero;

use crate::cyclic::cyclic_flats;
use crate::error::{Error, Result};
use crate::setcore::{map_subset, GroundSet, Measure, Polymatroid, Ratio, SetFunction, Subset};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedLattice {
    ground: GroundSet,
    members: Vec<Subset>,
    rank: Vec<Ratio>,
    meet: Vec<u32>,
    join: Vec<u32>,
    position: Vec<u32>,
}

/// Validate the family and build its meet and join tables.
///
/// The greatest lower bound of `Z₁, Z₂`, if it exists, is the union of all
/// members below `Z₁ ∩ Z₂`, so both tables come from one subset-sum pass
/// over the ground set instead of a pairwise search.
pub fn make_ranked_lattice(ground: GroundSet, entries: Vec<(Subset, Ratio)>) -> Result<RankedLattice> {
    if entries.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut entries = entries;
    entries.sort_by_key(|e| e.0);
    for w in entries.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::DuplicateMember(ground.format(w[0].0)));
        }
    }
    for &(z, r) in &entries {
        if !ground.contains_mask(z) {
            return Err(Error::OutOfGround(z.bits()));
        }
        if r < Ratio::zero() {
            return Err(Error::NegativeRank {
                member: ground.format(z),
                value: r,
            });
        }
    }
    let (members, rank): (Vec<Subset>, Vec<Ratio>) = entries.into_iter().unzip();
    let size = ground.subset_count();
    let n = ground.len();
    let mut position = vec![NONE; size];
    let mut down = vec![NONE; size];
    let mut up = vec![NONE; size];
    for (k, z) in members.iter().enumerate() {
        position[z.index()] = k as u32;
        down[z.index()] = z.bits();
        up[z.index()] = z.bits();
    }
    for i in 0..n {
        let bit = 1usize << i;
        for t in 0..size {
            if t & bit != 0 {
                let below = down[t ^ bit];
                if below != NONE {
                    down[t] = if down[t] == NONE { below } else { down[t] | below };
                }
            } else {
                let above = up[t | bit];
                if above != NONE {
                    up[t] = if up[t] == NONE { above } else { up[t] & above };
                }
            }
        }
    }
    let m = members.len();
    let mut meet = vec![0u32; m * m];
    let mut join = vec![0u32; m * m];
    for i in 0..m {
        for j in i..m {
            let (a, b) = (members[i], members[j]);
            let fail_names = || (ground.format(a), ground.format(b));
            let lower = down[(a & b).index()];
            if lower == NONE {
                let (x, y) = fail_names();
                return Err(Error::NoLowerBound(x, y));
            }
            let mi = position[lower as usize];
            if mi == NONE {
                let (x, y) = fail_names();
                return Err(Error::AmbiguousBound(x, y, "meet"));
            }
            let upper = up[(a | b).index()];
            if upper == NONE {
                let (x, y) = fail_names();
                return Err(Error::NoUpperBound(x, y));
            }
            let ji = position[upper as usize];
            if ji == NONE {
                let (x, y) = fail_names();
                return Err(Error::AmbiguousBound(x, y, "join"));
            }
            meet[i * m + j] = mi;
            meet[j * m + i] = mi;
            join[i * m + j] = ji;
            join[j * m + i] = ji;
        }
    }
    Ok(RankedLattice {
        ground,
        members,
        rank,
        meet,
        join,
        position,
    })
}

impl RankedLattice {
    /// Every subset, ranked by `pm`.
    pub fn powerset(pm: &SetFunction) -> Result<Self> {
        make_ranked_lattice(
            pm.ground().clone(),
            pm.ground().full().subsets().map(|s| (s, pm.value(s))).collect(),
        )
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Canonical order.
    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn ranks(&self) -> &[Ratio] {
        &self.rank
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, z: Subset) -> Option<usize> {
        match self.position.get(z.index()) {
            Some(&p) if p != NONE => Some(p as usize),
            _ => None,
        }
    }

    pub fn contains(&self, z: Subset) -> bool {
        self.position(z).is_some()
    }

    pub fn rank_of(&self, z: Subset) -> Option<Ratio> {
        self.position(z).map(|p| self.rank[p])
    }

    pub fn meet_index(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.members.len() + j] as usize
    }

    pub fn join_index(&self, i: usize, j: usize) -> usize {
        self.join[i * self.members.len() + j] as usize
    }

    pub fn meet(&self, i: usize, j: usize) -> Subset {
        self.members[self.meet_index(i, j)]
    }

    pub fn join(&self, i: usize, j: usize) -> Subset {
        self.members[self.join_index(i, j)]
    }

    pub fn entries(&self) -> impl Iterator<Item = (Subset, Ratio)> + '_ {
        self.members.iter().copied().zip(self.rank.iter().copied())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    Pair(Subset, Subset),
    Member(Subset),
    /// Element index in the lattice ground set.
    Element(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Witness),
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Outcome::Pass)
    }
}

/// The five conditions under which the convolution restricted to a base
/// ground set `M ⊆ N` reproduces the base polymatroid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    /// `Z ∩ M ∈ L` for every member `Z`.
    pub meet_with_base: Outcome,
    /// Every cyclic flat of the base is a member.
    pub cyclic_flats_present: Outcome,
    /// `Z₁ ⊊ Z₂` implies `r(Z₁) ≤ r(Z₂)`.
    pub monotone_on_chains: Outcome,
    /// `r(Z) = f(Z)` for members inside `M`.
    pub rank_matches_base: Outcome,
    /// `μ(a) = f(a)` for `a ∈ M`.
    pub measure_matches_base: Outcome,
}

impl EmbeddingReport {
    pub fn all_pass(&self) -> bool {
        [
            self.meet_with_base,
            self.cyclic_flats_present,
            self.monotone_on_chains,
            self.rank_matches_base,
            self.measure_matches_base,
        ]
        .iter()
        .all(Outcome::passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    /// `r(Z₁)+r(Z₂) ≥ r(Z₁∧Z₂)+r(Z₁∨Z₂)+μ(Z₁∩Z₂ - Z₁∧Z₂)` on incomparable pairs.
    pub incomparable: Outcome,
    /// `0 ≤ r(Z₂)-r(Z₁) ≤ μ(Z₂-Z₁)` whenever `Z₁ ⊊ Z₂`.
    pub chain: Outcome,
    pub embedding: Option<EmbeddingReport>,
}

fn first_failure(iter: impl Iterator<Item = Option<Witness>>) -> Outcome {
    iter.flatten().next().map_or(Outcome::Pass, Outcome::Fail)
}

/// Evaluate every sufficient condition; failures are reported, never raised.
pub fn check_conditions(rl: &RankedLattice, mu: &Measure, embed: Option<&Polymatroid>) -> Result<ConditionReport> {
    if mu.ground() != rl.ground() {
        return Err(Error::GroundMismatch("measure and lattice ground sets differ".into()));
    }
    let m = rl.len();
    let members = rl.members();
    let r = rl.ranks();
    let pairs = || (0..m).flat_map(move |i| (i + 1..m).map(move |j| (i, j)));

    let incomparable = first_failure(pairs().map(|(i, j)| {
        let (a, b) = (members[i], members[j]);
        if !a.is_incomparable(b) {
            return None;
        }
        let meet = rl.meet_index(i, j);
        let join = rl.join_index(i, j);
        let rhs = r[meet] + r[join] + mu.of((a & b) - members[meet]);
        (r[i] + r[j] < rhs).then_some(Witness::Pair(a, b))
    }));

    let ordered = || {
        pairs().filter_map(|(i, j)| {
            let (a, b) = (members[i], members[j]);
            if a.is_proper_subset_of(b) {
                Some((i, j))
            } else if b.is_proper_subset_of(a) {
                Some((j, i))
            } else {
                None
            }
        })
    };
    let chain = first_failure(ordered().map(|(lo, hi)| {
        let gap = r[hi] - r[lo];
        (gap < Ratio::zero() || gap > mu.of(members[hi] - members[lo]))
            .then_some(Witness::Pair(members[lo], members[hi]))
    }));

    let embedding = match embed {
        None => None,
        Some(pm) => {
            let map = rl.ground().embedding_of(pm.ground()).ok_or_else(|| {
                Error::GroundMismatch("base ground set is not contained in the lattice ground set".into())
            })?;
            let base = map_subset(pm.ground().full(), &map);
            let mut back = vec![usize::MAX; rl.ground().len()];
            for (i, &j) in map.iter().enumerate() {
                back[j] = i;
            }
            let pull = |z: Subset| Subset::from_indices(z.elements().map(|j| back[j]));
            Some(EmbeddingReport {
                meet_with_base: first_failure(
                    members
                        .iter()
                        .map(|&z| (!rl.contains(z & base)).then_some(Witness::Member(z))),
                ),
                cyclic_flats_present: first_failure(cyclic_flats(pm).into_iter().map(|c| {
                    let image = map_subset(c, &map);
                    (!rl.contains(image)).then_some(Witness::Member(image))
                })),
                monotone_on_chains: first_failure(
                    ordered().map(|(lo, hi)| (r[lo] > r[hi]).then_some(Witness::Pair(members[lo], members[hi]))),
                ),
                rank_matches_base: first_failure(members.iter().zip(r).map(|(&z, &rz)| {
                    (z.is_subset_of(base) && rz != pm.value(pull(z))).then_some(Witness::Member(z))
                })),
                measure_matches_base: first_failure(map.iter().enumerate().map(|(i, &j)| {
                    (mu.weight(j) != pm.value(Subset::singleton(i))).then_some(Witness::Element(j))
                })),
            })
        }
    };
    Ok(ConditionReport {
        incomparable,
        chain,
        embedding,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionResult {
    /// The convolution with its value on `∅` pinned to 0.
    pub value: SetFunction,
    /// Index into the lattice members of the first minimizer, per subset
    /// mask.
    pub witness: Vec<usize>,
    /// The unpinned minimum at `∅`, i.e. the least member rank.
    pub empty_raw: Ratio,
}

impl ConvolutionResult {
    pub fn witness_of(&self, rl: &RankedLattice, a: Subset) -> Subset {
        rl.members()[self.witness[a.index()]]
    }
}

/// `A ↦ min { r(Z) + μ(A - Z) }`, with the first member in canonical order
/// kept as the witness of each minimum.
pub fn convolve(rl: &RankedLattice, mu: &Measure) -> Result<ConvolutionResult> {
    if mu.ground() != rl.ground() {
        return Err(Error::GroundMismatch("measure and lattice ground sets differ".into()));
    }
    let size = rl.ground().subset_count();
    let members = rl.members();
    let r = rl.ranks();
    let mut table = Vec::with_capacity(size);
    let mut witness = Vec::with_capacity(size);
    for a in 0..size as u32 {
        let a = Subset(a);
        let mut best = r[0] + mu.of(a - members[0]);
        let mut arg = 0;
        for k in 1..members.len() {
            let v = r[k] + mu.of(a - members[k]);
            if v < best {
                best = v;
                arg = k;
            }
        }
        table.push(best);
        witness.push(arg);
    }
    let empty_raw = table[0];
    table[0] = Ratio::zero();
    Ok(ConvolutionResult {
        value: SetFunction::from_table(rl.ground().clone(), table)?,
        witness,
        empty_raw,
    })
}
