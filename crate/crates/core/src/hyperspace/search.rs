//! Bounded search for metrics whose Hausdorff metric is not coarse, or
//! induces a structure other than the Hausdorff structure.

use std::sync::Arc;

use crate::coarse::{induced_structure, is_coarse_metric, structure_from_metric};
use crate::error::Result;
use crate::metric::GenMetric;
use crate::poset::{Ext, Poset};

use super::{compare_structures, hausdorff_metric, hausdorff_structure};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpenQuestion {
    /// `ď` admits no growth map.
    NotCoarse,
    /// `ď` is coarse but induces a different structure.
    StructureDiffers,
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub question: OpenQuestion,
    /// Position of the index poset in the pool.
    pub pool_index: usize,
    pub metric: GenMetric,
    /// For [`OpenQuestion::StructureDiffers`], a hyperspace pair controlled
    /// in exactly one structure.
    pub differing: Option<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(Box<Counterexample>),
    NoneWithinBounds,
    BudgetExhausted,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    /// Coarse metrics whose Hausdorff metric was tested.
    pub examined: usize,
    /// Candidate tables visited, including those that were not coarse.
    pub steps: usize,
    /// Pool entries skipped for lacking meets or a top.
    pub skipped_posets: usize,
    pub outcome: SearchOutcome,
}

/// `0 < a, b < 1`.
pub fn diamond_pool() -> Vec<Arc<Poset>> {
    vec![Arc::new(
        Poset::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("diamond is a partial order"),
    )]
}

/// Small meet-complete lattices that are not chains, plus the diamond.
pub fn lattice_pool() -> Vec<Arc<Poset>> {
    let mut pool = diamond_pool();
    // diamond with an extra element above the top
    pool.push(Arc::new(
        Poset::from_pairs(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).expect("partial order"),
    ));
    // a chain element below the diamond
    pool.push(Arc::new(
        Poset::from_pairs(5, &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)]).expect("partial order"),
    ));
    pool
}

/// Tries every semi-metric on `1..=n_max` points over each usable pool
/// poset, stopping at the first failure or after `budget` candidate tables.
pub fn search_counterexample(n_max: usize, pool: &[Arc<Poset>], budget: usize) -> Result<SearchReport> {
    let mut report = SearchReport {
        examined: 0,
        steps: 0,
        skipped_posets: 0,
        outcome: SearchOutcome::NoneWithinBounds,
    };
    for (pool_index, idx) in pool.iter().enumerate() {
        if !idx.is_meet_complete() || !idx.is_upward_directed() || idx.zero().is_none() {
            report.skipped_posets += 1;
            continue;
        }
        let zero = idx.zero().expect("checked");
        let m = idx.len();
        for n in 1..=n_max {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
            let choices = m + 1;
            let total = choices.checked_pow(pairs.len() as u32).unwrap_or(usize::MAX);
            for code in 0..total {
                if report.steps >= budget {
                    report.outcome = SearchOutcome::BudgetExhausted;
                    return Ok(report);
                }
                report.steps += 1;
                let mut values = vec![Ext::Fin(zero); n * n];
                let mut c = code;
                for &(x, y) in &pairs {
                    let v = if c % choices == m { Ext::Inf } else { Ext::Fin(c % choices) };
                    c /= choices;
                    values[x * n + y] = v;
                    values[y * n + x] = v;
                }
                let d = GenMetric::new(n, idx.clone(), values)?;
                if is_coarse_metric(&d)?.is_none() {
                    continue;
                }
                report.examined += 1;
                let hm = hausdorff_metric(&d)?;
                let Some(cert) = is_coarse_metric(&hm.metric)? else {
                    report.outcome = SearchOutcome::Found(Box::new(Counterexample {
                        question: OpenQuestion::NotCoarse,
                        pool_index,
                        metric: d,
                        differing: None,
                    }));
                    return Ok(report);
                };
                let cmp = compare_structures(
                    structure_from_metric(&cert),
                    hausdorff_structure(&induced_structure(&d)?)?,
                );
                if !cmp.equal {
                    report.outcome = SearchOutcome::Found(Box::new(Counterexample {
                        question: OpenQuestion::StructureDiffers,
                        pool_index,
                        metric: d,
                        differing: cmp.differing,
                    }));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}
