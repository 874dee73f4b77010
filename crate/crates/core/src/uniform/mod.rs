//! Uniform structures on finite sets and the metrics that induce them.
//!
//! A filter of relations on a finite set contains the intersection `0_U` of
//! its members, so every finite uniform structure is principal. The
//! constructions below still follow the general machinery. Where that
//! machinery removes `0_U` from an index (it lies outside a non-principal
//! filter), [`ZeroMode::FormalBottom`] instead keeps it and adjoins a
//! formal zero beneath it.

use std::sync::Arc;

use crate::coarse::closure_bar;
use crate::error::{Error, Result};
use crate::metric::GenMetric;
use crate::poset::{Ext, Poset};
use crate::relset::Relation;

/// A generating family of a uniform structure, validated on the family
/// itself: every member contains `Δ_X`, and for each member `B` some member
/// lies inside `B⁻¹` and some member `W` has `W ∘ W ⊆ B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformBase {
    n: usize,
    members: Vec<Relation>,
    zero: Relation,
}

impl UniformBase {
    pub fn new(n: usize, members: Vec<Relation>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let diag = Relation::diagonal(n);
        for (k, b) in members.iter().enumerate() {
            if b.carrier() != n {
                return Err(Error::CarrierMismatch {
                    left: n,
                    right: b.carrier(),
                });
            }
            if !diag.le(b) {
                return Err(Error::UniformAxiom(format!("member {k} misses the diagonal")));
            }
        }
        for (k, b) in members.iter().enumerate() {
            let inv = b.inverse();
            if !members.iter().any(|c| c.le(&inv)) {
                return Err(Error::UniformAxiom(format!(
                    "no member lies inside the inverse of member {k}"
                )));
            }
            if !members.iter().any(|w| w.then(w).le(b)) {
                return Err(Error::UniformAxiom(format!(
                    "no member W has W ∘ W inside member {k}"
                )));
            }
        }
        let zero = members.iter().skip(1).fold(members[0].clone(), |acc, b| &acc & b);
        // the axioms make the total intersection symmetric and transitive
        debug_assert!(zero.is_equivalence());
        Ok(UniformBase { n, members, zero })
    }

    pub fn carrier(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Relation] {
        &self.members
    }

    /// `0_U`, the intersection of the generated filter.
    pub fn zero(&self) -> &Relation {
        &self.zero
    }

    pub fn filter(&self) -> UniformFilter {
        UniformFilter {
            zero: self.zero.clone(),
        }
    }

    /// Always true here: a finite filter contains its own intersection.
    /// Non-principal uniform structures need an infinite ground set.
    pub fn is_trivial(&self) -> bool {
        self.filter().contains(&self.zero)
    }

    /// Whether the family is a base of its filter in the strict sense:
    /// every filter member contains some family member.
    pub fn is_base(&self) -> bool {
        self.members.iter().any(|b| b.le(&self.zero))
    }
}

/// The generated filter: all supersets of its minimal member `0_U`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniformFilter {
    zero: Relation,
}

impl UniformFilter {
    pub fn zero(&self) -> &Relation {
        &self.zero
    }

    pub fn minimal_members(&self) -> Vec<Relation> {
        vec![self.zero.clone()]
    }

    pub fn contains(&self, u: &Relation) -> bool {
        u.carrier() == self.zero.carrier() && self.zero.le(u)
    }

    /// The induced topology is Hausdorff exactly when `0_U = Δ_X`.
    pub fn is_hausdorff(&self) -> bool {
        self.zero == Relation::diagonal(self.zero.carrier())
    }
}

/// `(0_U, trivial)`.
pub fn zero_and_triviality(ub: &UniformBase) -> (Relation, bool) {
    (ub.zero.clone(), ub.is_trivial())
}

/// The equivalence `x ≡ y (mod m)` on `Z/n`.
pub fn congruence(n: usize, m: usize) -> Relation {
    Relation::from_fn(n, |x, y| ((x + n - y) % n).is_multiple_of(m))
}

/// A pseudo uniform metric with its witness `Ψ` on `I ∖ {0_I}`:
/// `D_{Ψ(β)} ∘ D_{Ψ(β)} ⊆ D_β`.
#[derive(Debug, Clone)]
pub struct DIndexMetricCert {
    metric: GenMetric,
    /// `psi[zero]` is `None`; every other entry is set and nonzero.
    psi: Vec<Option<usize>>,
}

impl DIndexMetricCert {
    pub fn new(metric: GenMetric, psi: Vec<Option<usize>>) -> Result<Self> {
        if !metric.is_semi_metric() {
            return Err(Error::NotSemiMetric("needs zero diagonal and symmetry".into()));
        }
        let idx = metric.index();
        if !idx.is_d_index()? {
            return Err(Error::NotDIndex);
        }
        let zero = idx.require_zero()?;
        if psi.len() != idx.len() {
            return Err(Error::InvalidIndex {
                index: psi.len(),
                m: idx.len(),
            });
        }
        let levels = metric.sublevels();
        for (b, p) in psi.iter().enumerate() {
            match (b == zero, p) {
                (true, None) => {}
                (false, Some(g)) if *g != zero && idx.check_index(*g).is_ok() => {
                    if !levels[*g].then(&levels[*g]).le(&levels[b]) {
                        return Err(Error::UniformAxiom(format!(
                            "D_{g} ∘ D_{g} is not contained in D_{b}"
                        )));
                    }
                }
                _ => {
                    return Err(Error::UniformAxiom(format!(
                        "Ψ must be defined exactly off the zero, with nonzero values (at {b})"
                    )))
                }
            }
        }
        Ok(DIndexMetricCert { metric, psi })
    }

    pub fn metric(&self) -> &GenMetric {
        &self.metric
    }

    pub fn psi(&self, beta: usize) -> Option<usize> {
        self.psi[beta]
    }

    pub fn psi_table(&self) -> &[Option<usize>] {
        &self.psi
    }

    pub fn psi_is_identity(&self) -> bool {
        self.psi.iter().enumerate().all(|(b, p)| p.is_none_or(|g| g == b))
    }
}

/// Finds `Ψ`, preferring `Ψ(β) = β` and otherwise the first nonzero `γ`
/// in index order.
pub fn is_pseudo_uniform_metric(d: &GenMetric) -> Result<Option<DIndexMetricCert>> {
    if !d.is_semi_metric() {
        return Err(Error::NotSemiMetric("needs zero diagonal and symmetry".into()));
    }
    let idx = d.index();
    if !idx.is_d_index()? {
        return Err(Error::NotDIndex);
    }
    let zero = idx.require_zero()?;
    let levels = d.sublevels();
    let works = |g: usize, b: usize| levels[g].then(&levels[g]).le(&levels[b]);
    let mut psi = vec![None; idx.len()];
    for b in (0..idx.len()).filter(|&b| b != zero) {
        let choice = if works(b, b) {
            Some(b)
        } else {
            (0..idx.len()).find(|&g| g != zero && works(g, b))
        };
        match choice {
            Some(g) => psi[b] = Some(g),
            None => return Ok(None),
        }
    }
    Ok(Some(DIndexMetricCert {
        metric: d.clone(),
        psi,
    }))
}

/// `∩{D_α : α ≠ 0_I} = Δ_X`.
///
/// When `I ∖ {0_I}` has no least element this must match "`d(x, y) = 0_I`
/// only for `x = y`"; a finite D-index set always has one.
pub fn is_uniform_metric(cert: &DIndexMetricCert) -> bool {
    let d = &cert.metric;
    let idx = d.index();
    let zero = idx.zero().expect("certified index has a zero");
    let n = d.carrier();
    let meet = (0..idx.len())
        .filter(|&a| a != zero)
        .map(|a| d.sublevel(a))
        .fold(Relation::full(n), |acc, l| &acc & &l);
    let verdict = meet == Relation::diagonal(n);
    let has_least_nonzero = (0..idx.len())
        .filter(|&a| a != zero)
        .any(|a| (0..idx.len()).all(|b| b == zero || idx.leq(a, b)));
    if !has_least_nonzero {
        let zero_only_on_diagonal =
            (0..n).all(|x| (0..n).all(|y| x == y || d.get(x, y) != Ext::Fin(zero)));
        debug_assert_eq!(verdict, zero_only_on_diagonal);
    }
    verdict
}

/// `U_d`, generated by `{D_α : α ≠ 0_I}`, with whether its topology is
/// Hausdorff.
#[derive(Debug, Clone)]
pub struct InducedUniformity {
    pub base: UniformBase,
    pub hausdorff: bool,
}

pub fn uniformity_from_metric(cert: &DIndexMetricCert) -> Result<InducedUniformity> {
    let family: Vec<Relation> = cert.metric.base_family()?.into_iter().map(|(_, r)| r).collect();
    let base = UniformBase::new(cert.metric.carrier(), family)?;
    Ok(InducedUniformity {
        base,
        hausdorff: is_uniform_metric(cert),
    })
}

/// The two-valued metric of a principal filter over the chain
/// `0 < half < one`: `0` on `0_U` and `one` elsewhere, so that
/// `D_half = 0_U` and `D_one = X × X`.
pub fn trivial_metric(ub: &UniformBase) -> Result<DIndexMetricCert> {
    if !ub.is_trivial() {
        return Err(Error::Degenerate("the filter is not principal".into()));
    }
    let zero = ub.zero();
    let d = GenMetric::from_fn(ub.n, Arc::new(Poset::chain(3)), |x, y| {
        Ext::Fin(if zero.contains(x, y) { 0 } else { 2 })
    })?;
    is_pseudo_uniform_metric(&d)?.ok_or_else(|| Error::UniformAxiom("0_U is not transitive".into()))
}

/// Where the zero of an index built from a base sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroMode {
    /// `0_U` itself is the zero, exactly as for a non-principal filter.
    Literal,
    /// A formal zero is adjoined below every member, taken only on the
    /// diagonal; `0_U` stays an ordinary positive index.
    FormalBottom,
}

/// `d_B(x, y) = ∩{B ∈ B_s : (x, y) ∈ B}` over `B_s ∪ {zero}`.
#[derive(Debug, Clone)]
pub struct UniformBaseMetric {
    pub mode: ZeroMode,
    /// Relation of each index element; `None` for a formal zero.
    pub levels: Vec<Option<Relation>>,
    pub cert: DIndexMetricCert,
}

impl UniformBaseMetric {
    pub fn metric(&self) -> &GenMetric {
        self.cert.metric()
    }

    /// `{(x, y) : d_B(x, y) ≤ S} = S` for every index element backed by a
    /// relation.
    pub fn sublevels_match(&self) -> bool {
        let d = self.metric();
        self.levels
            .iter()
            .enumerate()
            .all(|(a, s)| s.as_ref().is_none_or(|s| d.sublevel(a) == *s))
    }
}

fn check_family(ub: &UniformBase, family: &[Relation]) -> Result<()> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let filter = ub.filter();
    for (k, b) in family.iter().enumerate() {
        if !filter.contains(b) {
            return Err(Error::NotABase(format!("member {k} is not in the filter")));
        }
    }
    Ok(())
}

/// Closes a family under pairwise intersection and checks nothing new
/// appears.
fn check_intersection_closed(family: &[Relation]) -> Result<()> {
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate().skip(i + 1) {
            if !family.contains(&(a & b)) {
                return Err(Error::NotIntersectionClosed(format!(
                    "members {i} and {j} meet outside the family"
                )));
            }
        }
    }
    Ok(())
}

fn sorted_dedup(mut family: Vec<Relation>) -> Vec<Relation> {
    family.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    family.dedup();
    family
}

/// Builds `d_B` for a base `B` of the filter with `B_s ∪ {0_U}` closed
/// under intersections, together with its `Ψ`: for each `S`, the first
/// member `B` (smallest first) with `B ∘ B ⊆ S`.
pub fn metric_from_uniform_base(ub: &UniformBase, base: &[Relation], mode: ZeroMode) -> Result<UniformBaseMetric> {
    check_family(ub, base)?;
    let zero_rel = ub.zero().clone();
    let b_s: Vec<Relation> = sorted_dedup(base.iter().map(|b| b.symmetrize_cap()).collect());
    if !b_s.contains(&zero_rel) {
        return Err(Error::NotABase(
            "no member lies inside the intersection of the filter".into(),
        ));
    }
    let mut closed = b_s.clone();
    closed.push(zero_rel.clone());
    let closed = sorted_dedup(closed);
    check_intersection_closed(&closed)?;

    let levels: Vec<Option<Relation>> = match mode {
        ZeroMode::Literal => closed.iter().cloned().map(Some).collect(),
        ZeroMode::FormalBottom => std::iter::once(None)
            .chain(closed.iter().cloned().map(Some))
            .collect(),
    };
    let m = levels.len();
    let index = Arc::new(Poset::from_leq(m, |a, b| match (&levels[a], &levels[b]) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => x.le(y),
    })?);
    let zero = index.require_zero()?;
    let position = |r: &Relation| levels.iter().position(|l| l.as_ref() == Some(r));

    let n = ub.carrier();
    let metric = GenMetric::from_fn(n, index.clone(), |x, y| {
        if x == y && mode == ZeroMode::FormalBottom {
            return Ext::Fin(zero);
        }
        let meet = b_s
            .iter()
            .filter(|b| b.contains(x, y))
            .fold(None::<Relation>, |acc, b| Some(acc.map_or_else(|| b.clone(), |a| &a & b)));
        match meet {
            Some(r) => Ext::Fin(position(&r).expect("family is intersection closed")),
            None => Ext::Inf,
        }
    })?;

    let mut psi = vec![None; m];
    for (s, level) in levels.iter().enumerate() {
        if s == zero {
            continue;
        }
        let target = level.as_ref().expect("only a formal zero lacks a relation");
        let pick = b_s
            .iter()
            .filter_map(|b| position(b).map(|p| (p, b)))
            .find(|&(p, b)| p != zero && b.then(b).le(target))
            .map(|(p, _)| p)
            .ok_or_else(|| {
                Error::Degenerate(format!("no nonzero member composes into index element {s}"))
            })?;
        psi[s] = Some(pick);
    }
    let cert = DIndexMetricCert::new(metric, psi)?;
    let out = UniformBaseMetric { mode, levels, cert };
    debug_assert!(out.sublevels_match());
    Ok(out)
}

/// The base produced from a family `A` by closing under intersections of
/// symmetrized members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureBase {
    /// `Ā`.
    pub closure: Vec<Relation>,
    /// `Ā ∖ {0_U}` in [`ZeroMode::Literal`], `Ā` in
    /// [`ZeroMode::FormalBottom`].
    pub base: Vec<Relation>,
    /// Whether `base` is a base of the filter.
    pub is_base: bool,
}

/// Checks that `a` is a base of the filter with
/// `∩{A ∈ a : (x, y) ∈ A}` in the filter for every `(x, y) ∉ 0_U`, then
/// returns the closure and the resulting base.
///
/// Over a principal filter every such intersection contains `0_U`, so the
/// pair condition cannot fail; it is still checked.
pub fn intersection_closure_base(ub: &UniformBase, a: &[Relation], mode: ZeroMode) -> Result<ClosureBase> {
    check_family(ub, a)?;
    let zero = ub.zero();
    if !a.iter().any(|m| m.le(zero)) {
        return Err(Error::NotABase("the family is not a base of the filter".into()));
    }
    let filter = ub.filter();
    let n = ub.carrier();
    for x in 0..n {
        for y in 0..n {
            if zero.contains(x, y) {
                continue;
            }
            // the empty intersection is X × X here
            let meet = a
                .iter()
                .filter(|m| m.contains(x, y))
                .fold(Relation::full(n), |acc, m| &acc & m);
            if !filter.contains(&meet) {
                return Err(Error::IntersectionHypothesis { x, y });
            }
        }
    }
    let closure = closure_bar(a)?;
    let base: Vec<Relation> = match mode {
        ZeroMode::Literal => closure.iter().filter(|r| *r != zero).cloned().collect(),
        ZeroMode::FormalBottom => closure.clone(),
    };
    if base.is_empty() {
        return Err(Error::Degenerate(
            "removing 0_U from the closure leaves nothing".into(),
        ));
    }
    let is_base = base.iter().all(|r| filter.contains(r)) && base.iter().any(|r| r.le(zero));
    Ok(ClosureBase {
        closure,
        base,
        is_base,
    })
}

/// A base `B` with `B_s ∪ {0_U}` closed under intersections: the family's
/// own symmetrization when it qualifies, otherwise `{0_U}`.
pub fn has_intersection_closed_base(ub: &UniformBase) -> Option<Vec<Relation>> {
    let zero = ub.zero().clone();
    let b_s = sorted_dedup(ub.members().iter().map(|b| b.symmetrize_cap()).collect());
    let mut closed = b_s.clone();
    closed.push(zero.clone());
    let closed = sorted_dedup(closed);
    if b_s.contains(&zero) && check_intersection_closed(&closed).is_ok() {
        return Some(b_s);
    }
    // a principal filter is based on its minimum alone
    Some(vec![zero])
}

/// A totally ordered base routed through the intersection closure and then
/// [`metric_from_uniform_base`] with a formal zero; the index is `Ā` plus
/// that zero, again totally ordered.
pub fn totally_ordered_path(ub: &UniformBase, a: &[Relation]) -> Result<UniformBaseMetric> {
    for x in a {
        for y in a {
            if !x.le(y) && !y.le(x) {
                return Err(Error::NotTotallyOrdered);
            }
        }
    }
    let cb = intersection_closure_base(ub, a, ZeroMode::FormalBottom)?;
    metric_from_uniform_base(ub, &cb.base, ZeroMode::FormalBottom)
}

#[cfg(test)]
mod tests;
