//! Coarse structures on finite sets and their correspondence with coarse
//! metrics.
//!
//! A coarse structure on a finite set is closed under finite unions, so it
//! has a largest controlled set, and closure under inverses and products
//! makes that set an equivalence relation. [`CoarseStructure`] stores it;
//! the family `I^E` of symmetric reflexive members is derived on demand.

mod cert;
mod completion;
mod domination;

pub use cert::{induced_structure, is_coarse_metric, structure_from_metric, CoarseMetricCert, GrowthWitness};
pub use completion::{meet_completion, MeetCompletion};
pub use domination::{dominates, equivalent, Domination};

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::metric::GenMetric;
use crate::poset::{inclusion_poset, Ext, InclusionPoset, OrderMap};
use crate::relset::{Relation, Subset};

/// A coarse structure, held as its largest controlled set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoarseStructure {
    top: Relation,
}

impl CoarseStructure {
    /// The least coarse structure containing every generator.
    ///
    /// Seeds with `Δ_X` and the symmetrized generators, then closes under
    /// unions and symmetrized products until nothing changes.
    pub fn generate(n: usize, generators: &[Relation]) -> Result<Self> {
        let mut acc = Relation::diagonal(n);
        for g in generators {
            if g.carrier() != n {
                return Err(Error::CarrierMismatch {
                    left: n,
                    right: g.carrier(),
                });
            }
            acc = &acc | &g.symmetrize_cup();
        }
        loop {
            let next = &acc | &acc.then(&acc).symmetrize_cup();
            if next == acc {
                return Ok(CoarseStructure { top: acc });
            }
            acc = next;
        }
    }

    /// `{subsets of Δ_X}`.
    pub fn minimal(n: usize) -> Self {
        CoarseStructure {
            top: Relation::diagonal(n),
        }
    }

    /// Every nonempty subset of `X × X`.
    pub fn maximal(n: usize) -> Self {
        CoarseStructure {
            top: Relation::full(n),
        }
    }

    /// The structure whose largest controlled set is `top`.
    pub fn from_top(top: Relation) -> Result<Self> {
        if !top.is_equivalence() {
            return Err(Error::NotEquivalence(format!("{top:?}")));
        }
        Ok(CoarseStructure { top })
    }

    /// The structure whose controlled sets are subsets of the blocks of a
    /// partition given as a block label per element.
    pub fn from_partition(blocks: &[usize]) -> Result<Self> {
        let n = blocks.len();
        CoarseStructure::from_top(Relation::from_fn(n, |i, j| blocks[i] == blocks[j]))
    }

    pub fn carrier(&self) -> usize {
        self.top.carrier()
    }

    /// The largest controlled set.
    pub fn top(&self) -> &Relation {
        &self.top
    }

    /// Membership: contained in the largest controlled set.
    pub fn contains(&self, e: &Relation) -> bool {
        e.carrier() == self.carrier() && e.le(&self.top)
    }

    pub fn is_connected(&self) -> bool {
        self.top == Relation::full(self.carrier())
    }

    /// Equivalence classes of the largest controlled set.
    pub fn classes(&self) -> Vec<Subset> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for x in 0..self.carrier() {
            if seen >> x & 1 == 0 {
                let class = self.top.row(x);
                seen |= class.bits();
                out.push(class);
            }
        }
        out
    }

    /// `I^E`: every symmetric reflexive controlled set.
    pub fn members_sym(&self) -> Result<Vec<Relation>> {
        self.top.symmetric_reflexive_subsets()
    }

    /// `I^E` ordered by inclusion.
    pub fn index_lattice(&self) -> Result<InclusionPoset> {
        inclusion_poset(&self.members_sym()?)
    }

    pub fn is_substructure_of(&self, other: &CoarseStructure) -> bool {
        self.carrier() == other.carrier() && self.top.le(&other.top)
    }

    /// Checks that `base` is a base: every member is controlled and every
    /// controlled set lies inside some member.
    pub fn check_base(&self, base: &[Relation]) -> Result<()> {
        if base.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for (k, b) in base.iter().enumerate() {
            if b.carrier() != self.carrier() {
                return Err(Error::CarrierMismatch {
                    left: self.carrier(),
                    right: b.carrier(),
                });
            }
            if !self.contains(b) {
                return Err(Error::NotABase(format!(
                    "member {k} {b:?} is not a controlled set"
                )));
            }
        }
        if !base.iter().any(|b| self.top.le(b)) {
            return Err(Error::NotABase(format!(
                "no member contains the controlled set {:?}",
                self.top
            )));
        }
        Ok(())
    }
}

/// How the down-closure of a listed family fails the coarse axioms.
/// Indices refer to positions in the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyViolation {
    MissingDiagonal,
    Inverse(usize),
    Product(usize, usize),
    Union(usize, usize),
}

/// Reads `family` as the controlled sets it contains together with all
/// their subsets and reports the first axiom that fails. The down-closure
/// is a coarse structure exactly when `Δ_X`, every inverse, every product
/// and every pairwise union lies inside some member.
pub fn family_violation(family: &[Relation]) -> Result<Option<FamilyViolation>> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    let n = first.carrier();
    if let Some(bad) = family.iter().find(|r| r.carrier() != n) {
        return Err(Error::CarrierMismatch {
            left: n,
            right: bad.carrier(),
        });
    }
    let covered = |r: &Relation| family.iter().any(|m| r.le(m));
    if !covered(&Relation::diagonal(n)) {
        return Ok(Some(FamilyViolation::MissingDiagonal));
    }
    if let Some(i) = (0..family.len()).find(|&i| !covered(&family[i].inverse())) {
        return Ok(Some(FamilyViolation::Inverse(i)));
    }
    for i in 0..family.len() {
        for j in 0..family.len() {
            if !covered(&family[i].then(&family[j])) {
                return Ok(Some(FamilyViolation::Product(i, j)));
            }
        }
    }
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if !covered(&(&family[i] | &family[j])) {
                return Ok(Some(FamilyViolation::Union(i, j)));
            }
        }
    }
    Ok(None)
}

/// `T̄`: intersections of nonempty subfamilies of `{(A ∩ A⁻¹) ∪ Δ_X}`.
///
/// Returned sorted by size, then canonically.
pub fn closure_bar(family: &[Relation]) -> Result<Vec<Relation>> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    if let Some(bad) = family.iter().find(|r| r.carrier() != first.carrier()) {
        return Err(Error::CarrierMismatch {
            left: first.carrier(),
            right: bad.carrier(),
        });
    }
    let mut seen: HashSet<Relation> = HashSet::new();
    let mut members: Vec<Relation> = Vec::new();
    for a in family {
        let s = a.symmetrize_cap();
        if seen.insert(s.clone()) {
            members.push(s);
        }
    }
    // pairwise intersections reach every finite intersection
    let mut frontier = 0;
    while frontier < members.len() {
        let end = members.len();
        for i in frontier..end {
            for j in 0..end {
                let meet = &members[i] & &members[j];
                if seen.insert(meet.clone()) {
                    members.push(meet);
                }
            }
        }
        frontier = end;
    }
    members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(members)
}

/// The saturated metric `d^E` of a structure together with its index
/// lattice `I^E` and the growth map `E ↦ E ∘ E`.
#[derive(Debug, Clone)]
pub struct SaturatedMetric {
    pub metric: GenMetric,
    pub lattice: InclusionPoset,
    pub phi: OrderMap,
}

impl SaturatedMetric {
    pub fn cert(&self) -> CoarseMetricCert {
        CoarseMetricCert::new(self.metric.clone(), self.phi.clone())
            .expect("E ↦ E ∘ E is a growth witness for d^E")
    }
}

/// `d^E(x, y) = Δ_X ∪ {(x, y), (y, x)}` when `(x, y)` is controlled, `∞`
/// otherwise, valued in `I^E`.
pub fn saturated_metric(s: &CoarseStructure) -> Result<SaturatedMetric> {
    let lattice = s.index_lattice()?;
    let n = s.carrier();
    let metric = GenMetric::from_fn(n, lattice.poset().clone(), |x, y| {
        if s.top.contains(x, y) {
            let pair = Relation::symmetric_from_pairs(n, [(x, y)]).expect("in range");
            Ext::Fin(lattice.index_of(&pair).expect("pair relation is in I^E"))
        } else {
            Ext::Inf
        }
    })?;
    let table = lattice
        .members()
        .iter()
        .map(|e| lattice.index_of(&e.then(e)).expect("I^E is closed under products"))
        .collect();
    let phi = OrderMap::new(table, lattice.poset(), lattice.poset())?;
    Ok(SaturatedMetric {
        metric,
        lattice,
        phi,
    })
}

/// The metric `d^B` of a base, valued in `B̄`, with its growth map
/// `Φ^B(B) = ∩{D ∈ B̄ : B ∘ B ⊆ D}`.
#[derive(Debug, Clone)]
pub struct BaseMetric {
    pub metric: GenMetric,
    pub closure: InclusionPoset,
    pub phi: OrderMap,
}

impl BaseMetric {
    pub fn cert(&self) -> CoarseMetricCert {
        CoarseMetricCert::new(self.metric.clone(), self.phi.clone())
            .expect("Φ^B is a growth witness for d^B")
    }
}

/// `d^B(x, y) = ∩{D ∈ B̄ : (x, y) ∈ D}`, with `∩∅ = ∞`.
pub fn metric_from_base(s: &CoarseStructure, base: &[Relation]) -> Result<BaseMetric> {
    s.check_base(base)?;
    let closure = inclusion_poset(&closure_bar(base)?)?;
    let n = s.carrier();
    let meet_containing = |pred: &dyn Fn(&Relation) -> bool| -> Option<usize> {
        let mut acc: Option<Relation> = None;
        for d in closure.members().iter().filter(|d| pred(d)) {
            acc = Some(match acc {
                None => d.clone(),
                Some(a) => &a & d,
            });
        }
        acc.map(|r| closure.index_of(&r).expect("B̄ is closed under intersections"))
    };
    let metric = GenMetric::from_fn(n, closure.poset().clone(), |x, y| {
        match meet_containing(&|d: &Relation| d.contains(x, y)) {
            Some(i) => Ext::Fin(i),
            None => Ext::Inf,
        }
    })?;
    let mut table = Vec::with_capacity(closure.len());
    for b in closure.members() {
        let sq = b.then(b);
        let i = meet_containing(&|d: &Relation| sq.le(d)).ok_or_else(|| {
            Error::NotABase(format!("no member of the closure contains {sq:?}"))
        })?;
        table.push(i);
    }
    let phi = OrderMap::new(table, closure.poset(), closure.poset())?;
    Ok(BaseMetric {
        metric,
        closure,
        phi,
    })
}

/// Both conditions of saturation, checked exhaustively: inclusion of
/// sublevels reflects the order, and every symmetric reflexive subset of a
/// sublevel is itself a sublevel.
pub fn is_saturated(d: &GenMetric) -> Result<bool> {
    let idx = d.index();
    let levels = d.sublevels();
    for a in 0..idx.len() {
        for b in 0..idx.len() {
            if levels[a].le(&levels[b]) && !idx.leq(a, b) {
                return Ok(false);
            }
        }
    }
    let level_set: HashSet<&Relation> = levels.iter().collect();
    let mut checked: BTreeSet<&Relation> = BTreeSet::new();
    for level in &levels {
        if !checked.insert(level) {
            continue;
        }
        for s in level.symmetric_reflexive_subsets()? {
            if !level_set.contains(&s) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For a saturated coarse metric inducing `s`, the map `α ↦ D_α` as a table
/// into the element indices of `I^E`, provided it is an order isomorphism
/// carrying `d` onto `d^E`.
pub fn transport_to_saturated(d: &GenMetric, s: &CoarseStructure) -> Result<Option<Vec<usize>>> {
    let sat = saturated_metric(s)?;
    let idx = d.index();
    let mut table = Vec::with_capacity(idx.len());
    for level in d.sublevels() {
        match sat.lattice.index_of(&level) {
            Some(i) => table.push(i),
            None => return Ok(None),
        }
    }
    let mut hit = vec![false; sat.lattice.len()];
    for &i in &table {
        hit[i] = true;
    }
    if table.len() != sat.lattice.len() || hit.iter().any(|h| !h) {
        return Ok(None);
    }
    let target = sat.lattice.poset();
    for a in 0..idx.len() {
        for b in 0..idx.len() {
            if idx.leq(a, b) != target.leq(table[a], table[b]) {
                return Ok(None);
            }
        }
    }
    let n = d.carrier();
    for x in 0..n {
        for y in 0..n {
            let moved = match d.get(x, y) {
                Ext::Fin(a) => Ext::Fin(table[a]),
                Ext::Inf => Ext::Inf,
            };
            if moved != sat.metric.get(x, y) {
                return Ok(None);
            }
        }
    }
    Ok(Some(table))
}
