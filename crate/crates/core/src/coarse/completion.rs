use std::sync::Arc;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::metric::GenMetric;
use crate::poset::{OrderMap, Poset};

use super::cert::CoarseMetricCert;

/// `d̃ = j ∘ d` over the poset `Ĩ` of nonempty lower sets of `I` that lie
/// inside some principal down-set `α̃ = {β : β ≤ α}`, ordered by inclusion.
#[derive(Debug, Clone)]
pub struct MeetCompletion {
    /// Members of `Ĩ` as bitmasks over the elements of `I`.
    pub sets: Vec<u32>,
    pub poset: Arc<Poset>,
    /// `j(α) = α̃`, as indices into `sets`.
    pub embedding: OrderMap,
    /// Certified `d̃` with `Φ̃(A) = ∩{j(Φ(α)) : A ⊆ α̃}`.
    pub cert: CoarseMetricCert,
}

impl MeetCompletion {
    pub fn metric(&self) -> &GenMetric {
        self.cert.metric()
    }
}

/// Builds `Ĩ`, `j` and `d̃` for a certified coarse metric with `|I|` at
/// most the configured completion limit.
///
/// Only lower sets are kept: arbitrary nonempty subsets of down-sets would
/// include disjoint singletons with no common lower bound.
pub fn meet_completion(cert: &CoarseMetricCert) -> Result<MeetCompletion> {
    let d = cert.metric();
    let idx = d.index();
    let m = idx.len();
    let limit = Limits::current().max_completion_index;
    if m > limit {
        return Err(Error::Capacity {
            what: "index poset for the meet completion",
            size: m,
            limit,
        });
    }
    let down: Vec<u32> = (0..m)
        .map(|a| idx.down_set(a).ones().fold(0u32, |acc, b| acc | 1 << b))
        .collect();
    let is_lower = |mask: u32| (0..m).all(|a| mask >> a & 1 == 0 || down[a] & !mask == 0);

    let mut sets: Vec<u32> = (1u32..1 << m)
        .filter(|&mask| is_lower(mask) && down.iter().any(|&p| mask & !p == 0))
        .collect();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    let position = |mask: u32| sets.iter().position(|&s| s == mask);

    let poset = Arc::new(Poset::from_leq(sets.len(), |a, b| {
        sets[a] & !sets[b] == 0
    })?);
    let j_table: Vec<usize> = down
        .iter()
        .map(|&p| position(p).expect("principal down-sets are lower sets"))
        .collect();
    let embedding = OrderMap::new(j_table, idx, &poset)?;

    let metric = d.map_values(poset.clone(), |a| embedding.apply(a))?;

    let mut phi_table = Vec::with_capacity(sets.len());
    for &a in &sets {
        let meet = (0..m)
            .filter(|&alpha| a & !down[alpha] == 0)
            .map(|alpha| down[cert.phi().apply(alpha)])
            .fold(u32::MAX, |acc, s| acc & s);
        // intersections of down-sets are nonempty lower sets containing 0_I
        phi_table.push(position(meet).expect("intersection of down-sets lies in Ĩ"));
    }
    let phi = OrderMap::new(phi_table, &poset, &poset)?;
    let cert = CoarseMetricCert::new(metric, phi)?;
    Ok(MeetCompletion {
        sets,
        poset,
        embedding,
        cert,
    })
}

/// The literal family of all nonempty subsets of principal down-sets, as
/// bitmasks; kept to document why [`meet_completion`] restricts to lower
/// sets.
#[cfg(test)]
pub(crate) fn literal_family(idx: &Poset) -> Vec<u32> {
    let m = idx.len();
    let down: Vec<u32> = (0..m)
        .map(|a| idx.down_set(a).ones().fold(0u32, |acc, b| acc | 1 << b))
        .collect();
    (1u32..1 << m)
        .filter(|&mask| down.iter().any(|&p| mask & !p == 0))
        .collect()
}
