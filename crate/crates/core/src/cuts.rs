//! Modular cuts: the predicate, the cut generated by two flats, and the
//! search for a non-principal cut of minimal modular defect.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::setcore::{flats, is_flat, modular_defect, FlatFamily, Polymatroid, Ratio, Subset};

/// An upward-closed family of flats, closed under intersections of modular
/// member pairs, together with its principality analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularCut {
    /// Canonical order.
    pub members: Vec<Subset>,
    pub principal: bool,
    /// Least defect over member pairs whose intersection is not a member.
    /// Present exactly when the cut is not principal.
    pub delta: Option<Ratio>,
    pub generators: Option<(Subset, Subset)>,
    /// First pair in canonical order attaining `delta`.
    pub witness_pair: Option<(Subset, Subset)>,
}

impl ModularCut {
    /// Fill in the analysis fields for an explicit member list.
    pub fn analyze(pm: &Polymatroid, mut members: Vec<Subset>, generators: Option<(Subset, Subset)>) -> Self {
        members.sort();
        members.dedup();
        let contains = |s: Subset| members.binary_search(&s).is_ok();
        let principal = match members.split_first() {
            None => true,
            Some((&first, rest)) => contains(rest.iter().fold(first, |acc, &m| acc & m)),
        };
        let mut delta: Option<Ratio> = None;
        let mut witness_pair = None;
        if !principal {
            for (k, &a) in members.iter().enumerate() {
                for &b in &members[k + 1..] {
                    if contains(a & b) {
                        continue;
                    }
                    let d = modular_defect(pm, a, b);
                    if delta.map_or(true, |best| d < best) {
                        delta = Some(d);
                        witness_pair = Some((a, b));
                    }
                }
            }
        }
        ModularCut {
            members,
            principal,
            delta,
            generators,
            witness_pair,
        }
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

    /// Intersection of all members (the full mask for an empty cut).
    pub fn intersection(&self) -> Subset {
        self.members.iter().fold(Subset(u32::MAX), |acc, &m| acc & m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutDiagnostic {
    NotAFlat(Subset),
    /// `missing` is a flat above `member` that the family lacks.
    NotUpwardClosed { member: Subset, missing: Subset },
    /// A modular member pair whose intersection the family lacks.
    MissingIntersection { first: Subset, second: Subset },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutCheck {
    pub holds: bool,
    pub diagnostics: Vec<CutDiagnostic>,
}

/// Check both cut conditions for `family`, reporting every violation.
pub fn is_modular_cut(pm: &Polymatroid, family: &[Subset]) -> CutCheck {
    let mut members = family.to_vec();
    members.sort();
    members.dedup();
    let mut diagnostics: Vec<CutDiagnostic> = members
        .iter()
        .filter(|&&s| !is_flat(pm, s))
        .map(|&s| CutDiagnostic::NotAFlat(s))
        .collect();
    if diagnostics.is_empty() {
        let fl = flats(pm);
        let contains = |s: Subset| members.binary_search(&s).is_ok();
        for &m in &members {
            for f in fl.iter() {
                if m.is_proper_subset_of(f) && !contains(f) {
                    diagnostics.push(CutDiagnostic::NotUpwardClosed { member: m, missing: f });
                }
            }
        }
        for (k, &a) in members.iter().enumerate() {
            for &b in &members[k + 1..] {
                if modular_defect(pm, a, b).is_zero() && !contains(a & b) {
                    diagnostics.push(CutDiagnostic::MissingIntersection { first: a, second: b });
                }
            }
        }
    }
    CutCheck {
        holds: diagnostics.is_empty(),
        diagnostics,
    }
}

/// Smallest modular cut containing every flat in `seeds`, as a fixpoint of
/// upward closure and modular-pair intersection.
pub fn close_cut(pm: &Polymatroid, fl: &FlatFamily, seeds: &[Subset]) -> Vec<Subset> {
    let flat_list = fl.members();
    let mut inside = vec![false; flat_list.len()];
    let pos = |s: Subset| flat_list.binary_search(&s).expect("seed is a flat");
    for &s in seeds {
        inside[pos(s)] = true;
    }
    loop {
        let mut changed = false;
        for i in 0..flat_list.len() {
            if !inside[i] {
                continue;
            }
            for j in 0..flat_list.len() {
                if !inside[j] && flat_list[i].is_subset_of(flat_list[j]) {
                    inside[j] = true;
                    changed = true;
                }
            }
        }
        let current: Vec<Subset> = (0..flat_list.len()).filter(|&i| inside[i]).map(|i| flat_list[i]).collect();
        for (k, &a) in current.iter().enumerate() {
            for &b in &current[k + 1..] {
                let meet = a & b;
                let p = pos(meet);
                if !inside[p] && modular_defect(pm, a, b).is_zero() {
                    inside[p] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..flat_list.len()).filter(|&i| inside[i]).map(|i| flat_list[i]).collect()
}

/// The modular cut `M(F₁, F₂)` with its analysis.
pub fn generate_cut(pm: &Polymatroid, f1: Subset, f2: Subset) -> Result<ModularCut> {
    for f in [f1, f2] {
        if !pm.ground().contains_mask(f) || !is_flat(pm, f) {
            return Err(Error::NotAFlat(pm.ground().format(f)));
        }
    }
    let fl = flats(pm);
    Ok(ModularCut::analyze(pm, close_cut(pm, &fl, &[f1, f2]), Some((f1, f2))))
}

/// A generator pair whose cut is not principal and whose own defect is the
/// defect of that cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonPrincipalCut {
    pub f1: Subset,
    pub f2: Subset,
    pub cut: ModularCut,
}

impl NonPrincipalCut {
    pub fn intersection(&self) -> Subset {
        self.f1 & self.f2
    }

    pub fn delta(&self) -> Ratio {
        self.cut.delta.expect("non-principal cut has a defect")
    }
}

/// Scan pairs of flats in canonical order for the least `δ(F₁, F₂)` with
/// `F₁ ∩ F₂ ∉ M(F₁, F₂)`; the first pair wins ties.
///
/// For the minimizing pair every member pair `F, G` of the cut with
/// `F ∩ G` outside also has `F ∩ G ∉ M(F, G)`, so `δ(F, G) ≥ δ(F₁, F₂)`:
/// the returned pair attains the defect of its own cut.
pub fn find_nonprincipal_cut(pm: &Polymatroid) -> Option<NonPrincipalCut> {
    let fl = flats(pm);
    let list = fl.members();
    let mut best: Option<(Ratio, Subset, Subset, Vec<Subset>)> = None;
    for (k, &a) in list.iter().enumerate() {
        for &b in &list[k + 1..] {
            if !a.is_incomparable(b) {
                continue;
            }
            let d = modular_defect(pm, a, b);
            if d.is_zero() || best.as_ref().is_some_and(|(bd, ..)| d >= *bd) {
                continue;
            }
            let members = close_cut(pm, &fl, &[a, b]);
            if members.binary_search(&(a & b)).is_err() {
                best = Some((d, a, b, members));
            }
        }
    }
    best.map(|(d, f1, f2, members)| {
        let cut = ModularCut::analyze(pm, members, Some((f1, f2)));
        debug_assert_eq!(cut.delta, Some(d));
        NonPrincipalCut { f1, f2, cut }
    })
}
