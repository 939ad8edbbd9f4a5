//! Extensions built by convolution: factor and contraction extensions, the
//! expansion of an integer polymatroid into a matroid, the common
//! information and Ingleton extensions of a non-principal modular cut, and
//! the certificate that combines the last two.
//!
//! Every builder convolves a ranked lattice with a measure and then checks
//! the result is a polymatroid extending its base; a failed check surfaces
//! as [`Error::Internal`]. The factor extension falls back to other
//! candidates when its convolution fails the check.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::convolution::{convolve, make_ranked_lattice, RankedLattice};
use crate::cuts::{find_nonprincipal_cut, ModularCut};
use crate::error::{Error, Result};
use crate::feasibility::{feasible_point, Feasibility, Row};
use crate::inequalities::{comm_value, ing_value};
use crate::setcore::{
    contract, factor, flats, map_subset, GroundSet, Measure, Partition, Polymatroid, Ratio, SetFunction, Subset,
};

fn finish(rl: &RankedLattice, mu: &Measure, base: &SetFunction) -> Result<Polymatroid> {
    let conv = convolve(rl, mu)?;
    let pm = Polymatroid::new(conv.value).map_err(|e| Error::Internal(format!("convolution: {e}")))?;
    if !pm.extends(base) {
        return Err(Error::Internal("convolution does not extend its base".into()));
    }
    Ok(pm)
}

fn lattice(ground: &GroundSet, entries: BTreeMap<Subset, Ratio>) -> Result<RankedLattice> {
    make_ranked_lattice(ground.clone(), entries.into_iter().collect())
}

/// Labels of `ext` missing from `base`, in `ext` order.
fn new_labels(ext: &GroundSet, base: &GroundSet) -> Vec<String> {
    ext.labels()
        .iter()
        .filter(|l| base.index_of(l).is_none())
        .cloned()
        .collect()
}

/// A polymatroid `g` on `M ∪ (N' - M')` extending `f` whose factor by the
/// partition (with the new points as singleton classes) is `gp`.
///
/// `gp` must extend the factor of `f` by `part`. The convolution of the
/// lattice of subsets of `M` and full-class unions is tried first. When it
/// is not a valid extension, the largest candidate `f(A ∪ S) - f(S) +
/// g'(φS ∪ Y)` (minimum over saturated `S`), the conditional candidate
/// `f(A) + g'(φA ∪ Y) - g'(φA)` and finally an exact linear feasibility
/// search are tried in turn. [`Error::NoExtension`] means no extension
/// exists. The result lists `f`'s labels first, then the new labels of
/// `gp` in `gp` order.
pub fn factor_extension(f: &Polymatroid, part: &Partition, gp: &Polymatroid) -> Result<Polymatroid> {
    let fac = factor(f, part)?;
    if !gp.extends(&fac) {
        return Err(Error::NotAnExtension(
            "the target does not extend the factor of the base".into(),
        ));
    }
    let n = f.n();
    let extra = new_labels(gp.ground(), fac.ground());
    let ground = f.ground().extended(extra.iter().cloned())?;
    // image of each element of gp's ground in the new ground set
    let blocks: Vec<Subset> = gp
        .ground()
        .labels()
        .iter()
        .map(|l| match fac.ground().index_of(l) {
            Some(c) => part.classes()[c],
            None => Subset::singleton(n + extra.iter().position(|e| e == l).expect("new label")),
        })
        .collect();
    let lift = |b: Subset| b.elements().fold(Subset::EMPTY, |acc, i| acc | blocks[i]);
    // gp subset of the classes met by `s`
    let down = |s: Subset| {
        Subset::from_indices((0..blocks.len()).filter(|&i| !(blocks[i] & s).is_empty()))
    };
    let m_full = f.ground().full();

    let mut named: Vec<(Subset, String)> = part
        .classes()
        .iter()
        .copied()
        .zip(part.names().iter().cloned())
        .collect();
    named.extend(extra.iter().enumerate().map(|(k, l)| (Subset::singleton(n + k), l.clone())));
    let full_part = Partition::with_names(ground.clone(), named)?;
    let accept = |sf: SetFunction| -> Option<Polymatroid> {
        let g = Polymatroid::new(sf).ok()?;
        let fits = g.extends(f) && factor(&g, &full_part).ok()?.same_as(gp);
        fits.then_some(g)
    };

    let mut entries = BTreeMap::new();
    for s in m_full.subsets() {
        entries.insert(s, f.value(s));
    }
    for b in gp.ground().full().subsets() {
        entries.entry(lift(b)).or_insert(gp.value(b));
    }
    let rl = lattice(&ground, entries)?;
    let mut weights: Vec<Ratio> = (0..n).map(|i| f.value(Subset::singleton(i))).collect();
    for l in &extra {
        let i = gp.ground().index_of(l).expect("label of gp");
        weights.push(gp.value(Subset::singleton(i)));
    }
    let conv = convolve(&rl, &Measure::new(ground.clone(), weights)?)?;
    if let Some(g) = accept(conv.value) {
        return Ok(g);
    }

    let saturated: Vec<Subset> = m_full.subsets().filter(|&s| part.is_saturated(s)).collect();
    let upper = SetFunction::from_fn(ground.clone(), |x| {
        let (a, y) = (x & m_full, x - m_full);
        saturated
            .iter()
            .map(|&s| f.value(a | s) - f.value(s) + gp.value(down(s | y)))
            .min()
            .expect("the empty set is saturated")
    });
    if let Some(g) = accept(upper) {
        return Ok(g);
    }
    let conditional = SetFunction::from_fn(ground.clone(), |x| {
        let a = x & m_full;
        f.value(a) + gp.value(down(x)) - gp.value(down(a))
    });
    if let Some(g) = accept(conditional) {
        return Ok(g);
    }

    // fixed values: subsets of M and saturated sets; the rest are unknowns
    let size = ground.subset_count();
    let mut fixed: Vec<Option<Ratio>> = vec![None; size];
    for x in ground.full().subsets() {
        let a = x & m_full;
        if x == a {
            fixed[x.index()] = Some(f.value(a));
        } else if part.is_saturated(a) {
            fixed[x.index()] = Some(gp.value(down(x)));
        }
    }
    let mut var = vec![usize::MAX; size];
    let mut vars = 0;
    for (k, v) in fixed.iter().enumerate() {
        if v.is_none() {
            var[k] = vars;
            vars += 1;
        }
    }
    // Σ sign·g(set) ≤ 0, with fixed values moved to the right
    let to_row = |terms: &[(Subset, i64)]| {
        let mut row = Row { terms: Vec::new(), rhs: Ratio::zero() };
        for &(s, c) in terms {
            match fixed[s.index()] {
                Some(v) => row.rhs -= v * Ratio::from_integer(c),
                None => row.terms.push((var[s.index()], c)),
            }
        }
        row
    };
    let top = ground.full();
    let mut rows: Vec<Row> = top.elements().map(|i| to_row(&[(top - Subset::singleton(i), 1), (top, -1)])).collect();
    for s in top.subsets() {
        for i in (top - s).elements() {
            for j in (top - s).elements().filter(|&j| j > i) {
                let (si, sj) = (s.with(i), s.with(j));
                rows.push(to_row(&[(si | sj, 1), (s, 1), (si, -1), (sj, -1)]));
            }
        }
    }
    if let Some(bad) = rows.iter().find(|r| r.terms.is_empty() && r.rhs < Ratio::zero()) {
        return Err(Error::NoExtension(format!("fixed values violate an inequality by {}", -bad.rhs)));
    }
    rows.retain(|r| !r.terms.is_empty());
    let point = match feasible_point(vars, &rows) {
        Feasibility::Point(p) => p,
        Feasibility::Infeasible => return Err(Error::NoExtension("the extension inequalities are infeasible".into())),
        Feasibility::Overflow => return Err(Error::Internal("extension values overflow 64-bit rationals".into())),
    };
    let table = (0..size).map(|k| fixed[k].unwrap_or_else(|| point[var[k]])).collect();
    accept(SetFunction::from_table(ground, table)?)
        .ok_or_else(|| Error::Internal("feasible point is not an extension".into()))
}

/// A polymatroid `g` on `M ∪ (N' - M')` extending `f` whose contraction by
/// `X` is `gp`. `gp` must extend the contraction of `f` by `X`. The result
/// lists `f`'s labels first, then the new labels of `gp`.
pub fn contract_extension(f: &Polymatroid, x: Subset, gp: &Polymatroid) -> Result<Polymatroid> {
    let con = contract(f, x)?;
    if !gp.extends(&con) {
        return Err(Error::NotAnExtension(
            "the target does not extend the contraction of the base".into(),
        ));
    }
    if x.is_empty() {
        let order = f.ground().extended(new_labels(gp.ground(), f.ground()))?;
        return gp.reorder(&order);
    }
    // contract one point at a time: f_j = f / {x_1 … x_j}, and the
    // extension of f_{j-1} is built from the extension of f_j
    let points: Vec<usize> = x.elements().collect();
    let mut stages = vec![f.clone()];
    for k in 1..points.len() {
        stages.push(contract(f, Subset::from_indices(points[..k].iter().copied()))?);
    }
    let mut g = gp.clone();
    for (stage, &p) in stages.iter().zip(&points).rev() {
        let at = stage.ground().index_of(f.ground().label(p)).expect("point survives earlier contractions");
        g = contract_point(stage, at, &g)?;
    }
    if !contract(&g, x)?.same_as(gp) {
        return Err(Error::Internal("contraction of the extension differs from the target".into()));
    }
    Ok(g)
}

/// Contraction extension by the single element `x`: members are the
/// subsets of `M`, ranked by `f`, and `{x} ∪ B'` for `B' ⊆ N'`, ranked
/// `g'(B') + f(x)`.
fn contract_point(f: &Polymatroid, x: usize, gp: &Polymatroid) -> Result<Polymatroid> {
    let extra = new_labels(gp.ground(), f.ground());
    let ground = f.ground().extended(extra)?;
    let map = ground.embedding_of(gp.ground()).expect("labels of gp are in the ground");
    let xs = Subset::singleton(x);
    let fx = f.value(xs);
    let mut entries = BTreeMap::new();
    for s in f.ground().full().subsets() {
        entries.insert(s, f.value(s));
    }
    for b in gp.ground().full().subsets() {
        entries.insert(map_subset(b, &map) | xs, gp.value(b) + fx);
    }
    let rl = lattice(&ground, entries)?;
    let weights = (0..ground.len())
        .map(|i| match i.checked_sub(f.n()) {
            None => f.value(Subset::singleton(i)),
            Some(_) => gp.value(Subset::singleton(gp.ground().index_of(ground.label(i)).expect("new label"))),
        })
        .collect();
    finish(&rl, &Measure::new(ground, weights)?, f)
}

/// The free matroid of rank `rank` on `label.1 … label.rank`; rank 0 gives
/// the single loop `label.0`.
pub fn free_block(label: &str, rank: usize) -> Result<Polymatroid> {
    let ground = if rank == 0 {
        GroundSet::new([format!("{label}.0")])?
    } else {
        GroundSet::new((1..=rank).map(|k| format!("{label}.{k}")))?
    };
    Polymatroid::new(SetFunction::from_fn(ground, |s| Ratio::from_integer(s.len().min(rank) as i64)))
}

/// Replace every element `i` of `f` by the matroid `blocks[i]` of rank
/// `f(i)`, one factor extension per element. The result is a matroid on the
/// concatenated block ground sets whose factor by the blocks is `f`.
pub fn helgason_expand(f: &Polymatroid, blocks: &[Polymatroid]) -> Result<Polymatroid> {
    if blocks.len() != f.n() {
        return Err(Error::GroundMismatch(format!("{} blocks for {} elements", blocks.len(), f.n())));
    }
    for (i, b) in blocks.iter().enumerate() {
        if !b.is_matroid() {
            return Err(Error::NotAMatroid(format!("block for {}", f.ground().label(i))));
        }
        let expected = f.value(Subset::singleton(i));
        if b.full_rank() != expected {
            return Err(Error::RankMismatch {
                element: f.ground().label(i).to_string(),
                block: b.full_rank(),
                expected,
            });
        }
    }
    let order = GroundSet::new(blocks.iter().flat_map(|b| b.ground().labels().iter().cloned()))?;
    let mut h = f.clone();
    for (i, b) in blocks.iter().enumerate() {
        let part = Partition::with_names(b.ground().clone(), vec![(b.ground().full(), f.ground().label(i).to_string())])?;
        h = factor_extension(b, &part, &h)?;
    }
    let out = h.reorder(&order)?;
    if !out.is_matroid() {
        return Err(Error::Internal("expansion is not a matroid".into()));
    }
    Ok(out)
}

/// [`helgason_expand`] with free blocks, for integer-valued `f`.
pub fn helgason_expand_free(f: &Polymatroid) -> Result<Polymatroid> {
    let mut blocks = Vec::with_capacity(f.n());
    for i in 0..f.n() {
        let v = f.value(Subset::singleton(i));
        if !v.is_integer() {
            return Err(Error::NonInteger(format!("{} has rank {v}", f.ground().label(i))));
        }
        let rank = usize::try_from(*v.numer()).map_err(|_| Error::GroundTooLarge(usize::MAX))?;
        if rank > crate::setcore::MAX_GROUND {
            return Err(Error::GroundTooLarge(rank));
        }
        blocks.push(free_block(f.ground().label(i), rank)?);
    }
    helgason_expand(f, &blocks)
}

/// Ranked lattice and measure of a one-point extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionLattice {
    pub lattice: RankedLattice,
    pub measure: Measure,
    /// New labels, appended after the base labels.
    pub labels: Vec<String>,
}

fn cut_delta(cut: &ModularCut) -> Result<Ratio> {
    match cut.delta {
        Some(d) if !cut.principal => Ok(d),
        _ => Err(Error::PrincipalCut),
    }
}

fn base_weights(f: &Polymatroid) -> Vec<Ratio> {
    (0..f.n()).map(|i| f.value(Subset::singleton(i))).collect()
}

/// Flats ranked by `f`, plus `F ∪ {x}` ranked `f(F) + ε` for every member of
/// the cut; `μ(x) = ε + δ`.
pub fn common_info_lattice(f: &Polymatroid, cut: &ModularCut, eps: Ratio) -> Result<ExtensionLattice> {
    let delta = cut_delta(cut)?;
    if eps < Ratio::zero() {
        return Err(Error::NegativeValue {
            subset: "epsilon".into(),
            value: eps,
        });
    }
    let label = f.ground().fresh_label("x", &[]);
    let ground = f.ground().extended([label.clone()])?;
    let x = Subset::singleton(f.n());
    let mut entries: BTreeMap<Subset, Ratio> = flats(f).iter().map(|s| (s, f.value(s))).collect();
    for &m in &cut.members {
        entries.insert(m | x, f.value(m) + eps);
    }
    let mut weights = base_weights(f);
    weights.push(eps + delta);
    Ok(ExtensionLattice {
        lattice: lattice(&ground, entries)?,
        measure: Measure::new(ground, weights)?,
        labels: vec![label],
    })
}

pub fn common_info_extension(f: &Polymatroid, cut: &ModularCut, eps: Ratio) -> Result<Polymatroid> {
    let ext = common_info_lattice(f, cut, eps)?;
    finish(&ext.lattice, &ext.measure, f)
}

/// `f(M) - min { f(F) : F ∈ cut }`.
pub fn ingleton_epsilon(f: &Polymatroid, cut: &ModularCut) -> Result<Ratio> {
    let low = cut.members.iter().map(|&m| f.value(m)).min().ok_or(Error::PrincipalCut)?;
    Ok(f.full_rank() - low)
}

/// Flats ranked by `f`, plus `F ∪ {u}` and `F ∪ {v}` ranked `f(F) + ε` for
/// every member of the cut, plus `M ∪ {u, v}` ranked `f(M) + ε`;
/// `μ(u) = μ(v) = ε + δ`.
pub fn ingleton_lattice(f: &Polymatroid, cut: &ModularCut) -> Result<ExtensionLattice> {
    let delta = cut_delta(cut)?;
    let eps = ingleton_epsilon(f, cut)?;
    let u = f.ground().fresh_label("u", &[]);
    let v = f.ground().fresh_label("v", &[&u]);
    let ground = f.ground().extended([u.clone(), v.clone()])?;
    let (us, vs) = (Subset::singleton(f.n()), Subset::singleton(f.n() + 1));
    let mut entries: BTreeMap<Subset, Ratio> = flats(f).iter().map(|s| (s, f.value(s))).collect();
    for &m in &cut.members {
        entries.insert(m | us, f.value(m) + eps);
        entries.insert(m | vs, f.value(m) + eps);
    }
    entries.insert(ground.full(), f.full_rank() + eps);
    let mut weights = base_weights(f);
    weights.extend([eps + delta, eps + delta]);
    Ok(ExtensionLattice {
        lattice: lattice(&ground, entries)?,
        measure: Measure::new(ground, weights)?,
        labels: vec![u, v],
    })
}

pub fn ingleton_extension(f: &Polymatroid, cut: &ModularCut) -> Result<Polymatroid> {
    let ext = ingleton_lattice(f, cut)?;
    finish(&ext.lattice, &ext.measure, f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Two extensions with no common amalgam were found.
    NotSticky,
    /// Every modular cut is principal; no obstruction of this kind exists.
    NoWitness,
}

/// Which term attains the value of the Ingleton extension on `S ∪ {u, v}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IngletonBranch {
    /// `μ(uv) + f(S)`, giving `ING = -δ`.
    Measure,
    /// `f(M) + ε`.
    Top,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub generators: (Subset, Subset),
    /// `S = F₁ ∩ F₂`, outside the cut.
    pub intersection: Subset,
    pub delta: Ratio,
    pub cut: ModularCut,
    /// Extension by `x` with `COMM(F₁,F₂;x|S) = 0`.
    pub common_info: Polymatroid,
    pub common_label: String,
    /// Extension by `u, v` with `ING(F₁,F₂;u,v|S) < 0`.
    pub ingleton: Polymatroid,
    pub ingleton_labels: (String, String),
    pub ingleton_epsilon: Ratio,
    pub branch: IngletonBranch,
    pub comm_value: Ratio,
    pub ing_value: Ratio,
}

/// Outcome of [`certify_nonsticky`]. Subsets in the witness are masks over
/// the base ground set, which is also a prefix of both extension grounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionCertificate {
    pub base: Polymatroid,
    pub verdict: Verdict,
    pub witness: Option<Obstruction>,
}

impl ObstructionCertificate {
    /// Recheck the certificate from its data alone: both extensions extend
    /// the base, the stored values match a fresh evaluation, and
    /// `COMM + ING < 0`, which no polymatroid on the union of the two
    /// extensions can satisfy.
    pub fn verify(&self) -> Result<()> {
        let Some(w) = &self.witness else {
            return match (self.verdict, find_nonprincipal_cut(&self.base)) {
                (Verdict::NoWitness, None) => Ok(()),
                _ => Err(Error::Internal("verdict does not match the cut search".into())),
            };
        };
        if self.verdict != Verdict::NotSticky {
            return Err(Error::Internal("witness attached to a negative verdict".into()));
        }
        let (a, b) = w.generators;
        if a & b != w.intersection || w.cut.contains(w.intersection) {
            return Err(Error::Internal("intersection is not outside the cut".into()));
        }
        for ext in [&w.common_info, &w.ingleton] {
            if !ext.extends(&self.base) {
                return Err(Error::Internal("extension does not extend the base".into()));
            }
        }
        let n = self.base.n();
        if w.common_info.n() != n + 1 || w.ingleton.n() != n + 2 {
            return Err(Error::Internal("unexpected extension sizes".into()));
        }
        let s = w.intersection;
        let comm = comm_value(&w.common_info, a, b, Subset::singleton(n), s);
        let ing = ing_value(&w.ingleton, a, b, Subset::singleton(n), Subset::singleton(n + 1), s);
        if comm != w.comm_value || ing != w.ing_value {
            return Err(Error::Internal("stored values differ from recomputation".into()));
        }
        if comm + ing >= Ratio::zero() {
            return Err(Error::Internal("COMM + ING is not negative".into()));
        }
        Ok(())
    }
}

/// Search for a non-principal modular cut and, if one exists, build the
/// common information extension (with `ε = 0`) and the Ingleton extension
/// of the cut it generates.
pub fn certify_nonsticky(f: &Polymatroid) -> Result<ObstructionCertificate> {
    let Some(found) = find_nonprincipal_cut(f) else {
        return Ok(ObstructionCertificate {
            base: f.clone(),
            verdict: Verdict::NoWitness,
            witness: None,
        });
    };
    let (a, b, s, delta) = (found.f1, found.f2, found.intersection(), found.delta());
    let cut = found.cut;
    let ci = common_info_lattice(f, &cut, Ratio::zero())?;
    let common_info = finish(&ci.lattice, &ci.measure, f)?;
    let il = ingleton_lattice(f, &cut)?;
    let ingleton = finish(&il.lattice, &il.measure, f)?;
    let eps = ingleton_epsilon(f, &cut)?;

    let n = f.n();
    let (x, u, v) = (Subset::singleton(n), Subset::singleton(n), Subset::singleton(n + 1));
    let comm = comm_value(&common_info, a, b, x, s);
    let ing = ing_value(&ingleton, a, b, u, v, s);
    let branch = if ingleton.value(s | u | v) == il.measure.of(u | v) + f.value(s) {
        IngletonBranch::Measure
    } else {
        IngletonBranch::Top
    };
    if !comm.is_zero() {
        return Err(Error::Internal(format!("common information value is {comm}, expected 0")));
    }
    if ing >= Ratio::zero() {
        return Err(Error::Internal(format!("Ingleton value is {ing}, expected negative")));
    }
    let mut labels = il.labels.into_iter();
    let ingleton_labels = (labels.next().expect("u"), labels.next().expect("v"));
    Ok(ObstructionCertificate {
        base: f.clone(),
        verdict: Verdict::NotSticky,
        witness: Some(Obstruction {
            generators: (a, b),
            intersection: s,
            delta,
            cut,
            common_info,
            common_label: ci.labels.into_iter().next().expect("x"),
            ingleton,
            ingleton_labels,
            ingleton_epsilon: eps,
            branch,
            comm_value: comm,
            ing_value: ing,
        }),
    })
}
