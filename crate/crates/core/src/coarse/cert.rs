use crate::error::{Error, Result};
use crate::metric::GenMetric;
use crate::poset::OrderMap;

use super::CoarseStructure;

/// How a growth map was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthWitness {
    /// `Φ̂(α) = inf{β : D_α ∘ D_α ⊆ D_β}` over a meet-complete index;
    /// always increasing.
    Infimum,
    /// Any `β` with `D_α ∘ D_α ⊆ D_β`; no monotonicity promised.
    FirstFound,
    /// Supplied by a construction and verified.
    Given,
}

/// A coarse metric with a verified growth map `Φ`:
/// `D_α ∘ D_α ⊆ D_{Φ(α)}` for every `α`.
#[derive(Debug, Clone)]
pub struct CoarseMetricCert {
    metric: GenMetric,
    phi: OrderMap,
    witness: GrowthWitness,
}

impl CoarseMetricCert {
    /// Verifies `phi` against `metric`.
    pub fn new(metric: GenMetric, phi: OrderMap) -> Result<Self> {
        check_semi(&metric)?;
        let idx = metric.index();
        if phi.table().len() != idx.len() {
            return Err(Error::InvalidIndex {
                index: phi.table().len(),
                m: idx.len(),
            });
        }
        let levels = metric.sublevels();
        for (a, level) in levels.iter().enumerate() {
            let b = phi.apply(a);
            idx.check_index(b)?;
            if !level.then(level).le(&levels[b]) {
                return Err(Error::NotCoarseMetric(format!(
                    "D_{a} ∘ D_{a} is not contained in D_{b}"
                )));
            }
        }
        Ok(CoarseMetricCert {
            metric,
            phi,
            witness: GrowthWitness::Given,
        })
    }

    pub fn metric(&self) -> &GenMetric {
        &self.metric
    }

    pub fn phi(&self) -> &OrderMap {
        &self.phi
    }

    pub fn witness(&self) -> GrowthWitness {
        self.witness
    }

    /// `D_α ⊆ D_{Φ(α)}` for every `α`; holds for any valid certificate
    /// since `Δ_X ⊆ D_α`.
    pub fn phi_is_extensive_on_sublevels(&self) -> bool {
        let levels = self.metric.sublevels();
        (0..levels.len()).all(|a| levels[a].le(&levels[self.phi.apply(a)]))
    }
}

fn check_semi(d: &GenMetric) -> Result<()> {
    if !d.is_semi_metric() {
        return Err(Error::NotSemiMetric(
            "needs zero diagonal and symmetry".into(),
        ));
    }
    Ok(())
}

/// Finds a growth map for `d`, or `None` when some `D_α ∘ D_α` lies in no
/// sublevel.
pub fn is_coarse_metric(d: &GenMetric) -> Result<Option<CoarseMetricCert>> {
    check_semi(d)?;
    let idx = d.index();
    if !idx.is_upward_directed() {
        return Err(Error::NotUpwardDirected);
    }
    let levels = d.sublevels();
    let meet_complete = idx.is_meet_complete();
    let mut table = Vec::with_capacity(idx.len());
    for level in &levels {
        let sq = level.then(level);
        let mut candidates = fixedbitset::FixedBitSet::with_capacity(idx.len());
        for (b, target) in levels.iter().enumerate() {
            if sq.le(target) {
                candidates.insert(b);
            }
        }
        let Some(first) = candidates.ones().next() else {
            return Ok(None);
        };
        let choice = if meet_complete {
            let hat = idx
                .meet_of(&candidates)
                .expect("meet-complete index has meets of nonempty sets");
            // D_{inf} contains every pair bounded by all candidates
            debug_assert!(sq.le(&levels[hat]));
            hat
        } else {
            first
        };
        table.push(choice);
    }
    let phi = OrderMap::new(table, idx, idx)?;
    let witness = if meet_complete {
        debug_assert!(phi.is_increasing());
        GrowthWitness::Infimum
    } else {
        GrowthWitness::FirstFound
    };
    Ok(Some(CoarseMetricCert {
        metric: d.clone(),
        phi,
        witness,
    }))
}

/// `E_d`: the structure generated by the sublevels of a certified metric.
pub fn structure_from_metric(cert: &CoarseMetricCert) -> CoarseStructure {
    let d = &cert.metric;
    CoarseStructure::generate(d.carrier(), &d.sublevels())
        .expect("sublevels share the metric's carrier")
}

/// `E_d` for a metric not yet certified.
pub fn induced_structure(d: &GenMetric) -> Result<CoarseStructure> {
    match is_coarse_metric(d)? {
        Some(cert) => Ok(structure_from_metric(&cert)),
        None => Err(Error::NotCoarseMetric(
            "some D_α ∘ D_α lies in no sublevel".into(),
        )),
    }
}
