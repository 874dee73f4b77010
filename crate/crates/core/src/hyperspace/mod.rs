//! The Hausdorff coarse structure and Hausdorff metric on the hyperspace
//! `P₀(X)` of nonempty subsets.
//!
//! Hyperspace element `i` is the subset whose bitmask is `i + 1`.

mod search;

pub use search::{diamond_pool, lattice_pool, search_counterexample, Counterexample, OpenQuestion, SearchOutcome, SearchReport};

use crate::coarse::{induced_structure, is_coarse_metric, CoarseMetricCert, CoarseStructure};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::metric::GenMetric;
use crate::poset::{Ext, OrderMap};
use crate::relset::{Relation, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hyperspace {
    n: usize,
}

impl Hyperspace {
    /// Fails above the configured hyperspace limit.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGround);
        }
        let limit = Limits::current().max_hyperspace_base;
        if n > limit {
            return Err(Error::Capacity {
                what: "hyperspace base set",
                size: n,
                limit,
            });
        }
        Ok(Hyperspace { n })
    }

    pub fn base(&self) -> usize {
        self.n
    }

    /// `2^n − 1`.
    pub fn len(&self) -> usize {
        (1 << self.n) - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn subset(&self, i: usize) -> Subset {
        Subset::from_bits(self.n, i as u64 + 1).expect("hyperspace index in range")
    }

    pub fn index_of(&self, s: &Subset) -> Option<usize> {
        (s.carrier() == self.n && !s.is_empty()).then(|| s.bits() as usize - 1)
    }

    pub fn singleton(&self, x: usize) -> usize {
        (1 << x) - 1
    }

    /// Element labels such as `{0,2}`.
    pub fn labels(&self) -> Vec<String> {
        (0..self.len())
            .map(|i| {
                let elems: Vec<String> = self.subset(i).iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", elems.join(","))
            })
            .collect()
    }

    fn masks(&self) -> impl Iterator<Item = u64> {
        1..1u64 << self.n
    }
}

/// `Ě = {(R, S) : R ⊆ E[S] and S ⊆ E[R]}`.
pub fn check_entourage(hs: &Hyperspace, e: &Relation) -> Result<Relation> {
    if e.carrier() != hs.base() {
        return Err(Error::CarrierMismatch {
            left: hs.base(),
            right: e.carrier(),
        });
    }
    let images: Vec<u64> = hs.masks().map(|m| e.image_unchecked(m).bits()).collect();
    Ok(Relation::from_fn(hs.len(), |r, s| {
        let (rm, sm) = (r as u64 + 1, s as u64 + 1);
        rm & !images[s] == 0 && sm & !images[r] == 0
    }))
}

/// The structure on `P₀(X)` generated by `{Ě : E ∈ I^E}`.
pub fn hausdorff_structure(s: &CoarseStructure) -> Result<CoarseStructure> {
    let hs = Hyperspace::new(s.carrier())?;
    let gens = s
        .members_sym()?
        .iter()
        .map(|e| check_entourage(&hs, e))
        .collect::<Result<Vec<_>>>()?;
    CoarseStructure::generate(hs.len(), &gens)
}

/// The same structure generated from `{B̌ : B ∈ B_s}` for a base `B`, where
/// `B_s` symmetrizes each member.
pub fn hausdorff_structure_from_base(s: &CoarseStructure, base: &[Relation]) -> Result<CoarseStructure> {
    s.check_base(base)?;
    let hs = Hyperspace::new(s.carrier())?;
    let gens = base
        .iter()
        .map(|b| check_entourage(&hs, &b.symmetrize_cap()))
        .collect::<Result<Vec<_>>>()?;
    CoarseStructure::generate(hs.len(), &gens)
}

/// `ď` on `P₀(X)` together with a growth certificate when the index is
/// totally ordered.
#[derive(Debug, Clone)]
pub struct HausdorffMetric {
    pub hyperspace: Hyperspace,
    pub metric: GenMetric,
    pub cert: Option<CoarseMetricCert>,
}

/// `ď(R, S) = inf{α : R ⊆ D_α[S] and S ⊆ D_α[R]}`, with `inf ∅ = ∞`.
///
/// Over a totally ordered index the growth map is `Φ̃(α) = α` at the top
/// and `Φ̃(α) = Φ̂(succ α)` elsewhere.
pub fn hausdorff_metric(d: &GenMetric) -> Result<HausdorffMetric> {
    let idx = d.index();
    if !idx.is_meet_complete() {
        return Err(Error::NotMeetComplete);
    }
    let hs = Hyperspace::new(d.carrier())?;
    let checks = d
        .sublevels()
        .iter()
        .map(|l| check_entourage(&hs, l))
        .collect::<Result<Vec<_>>>()?;
    let metric = GenMetric::from_fn(hs.len(), idx.clone(), |r, s| {
        let mut within = fixedbitset::FixedBitSet::with_capacity(idx.len());
        for (a, c) in checks.iter().enumerate() {
            if c.contains(r, s) {
                within.insert(a);
            }
        }
        match idx.meet_of(&within) {
            Some(a) => Ext::Fin(a),
            None => Ext::Inf,
        }
    })?;

    let cert = if idx.is_totally_ordered() {
        let base = is_coarse_metric(d)?
            .ok_or_else(|| Error::NotCoarseMetric("the base metric has no growth map".into()))?;
        let top = idx.top();
        let table = (0..idx.len())
            .map(|a| {
                if Some(a) == top {
                    a
                } else {
                    // least strict upper bound in a chain
                    let succ = idx
                        .up_set(a)
                        .ones()
                        .filter(|&b| b != a)
                        .min_by_key(|&b| idx.down_set(b).count_ones(..))
                        .expect("a non-top element of a finite chain has a successor");
                    base.phi().apply(succ)
                }
            })
            .collect();
        let phi = OrderMap::new(table, idx, idx)?;
        Some(CoarseMetricCert::new(metric.clone(), phi)?)
    } else {
        None
    };
    Ok(HausdorffMetric {
        hyperspace: hs,
        metric,
        cert,
    })
}

/// Whether the structure induced by `ď` equals the Hausdorff structure of
/// `E_d`; `differing` is a pair controlled in exactly one of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HausdorffComparison {
    pub equal: bool,
    pub differing: Option<(usize, usize)>,
    pub from_metric: CoarseStructure,
    pub from_structure: CoarseStructure,
}

pub(crate) fn compare_structures(a: CoarseStructure, b: CoarseStructure) -> HausdorffComparison {
    let diff = &(a.top() - b.top()) | &(b.top() - a.top());
    let differing = diff.pairs().next();
    HausdorffComparison {
        equal: differing.is_none(),
        differing,
        from_metric: a,
        from_structure: b,
    }
}

/// Compares `E_ď` with the Hausdorff structure of `E_d` for a metric over
/// a meet-complete totally ordered index.
pub fn check_induced_hausdorff_structure(d: &GenMetric) -> Result<HausdorffComparison> {
    let idx = d.index();
    if !idx.is_meet_complete() {
        return Err(Error::NotMeetComplete);
    }
    if !idx.is_totally_ordered() {
        return Err(Error::NotTotallyOrdered);
    }
    let hm = hausdorff_metric(d)?;
    let cert = hm.cert.expect("totally ordered indices are certified");
    let from_metric = crate::coarse::structure_from_metric(&cert);
    let from_structure = hausdorff_structure(&induced_structure(d)?)?;
    Ok(compare_structures(from_metric, from_structure))
}

#[cfg(test)]
mod tests;
