//! Bounded geometry statements with explicit witnesses.

use crate::coarse::{is_coarse_metric, CoarseStructure};
use crate::error::{Error, Result};
use crate::metric::GenMetric;
use crate::relset::{Relation, Subset};

use super::count::{cap, ent, max_independent, Count};
use super::check_induces;

/// One statement: a chosen index element and, for every `α ∈ I`, the
/// bound `n(α)` it produces (maximised over all centers).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub witness: usize,
    pub bounds: Vec<Count>,
}

impl Statement {
    pub fn holds(&self) -> bool {
        self.bounds.iter().all(|b| *b != Count::Infinite)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedGeometryReport {
    /// `E = D_w`, and for `F = D_α` the bound on
    /// `max(cap_E((F∘E)[x]), cap_E((F⁻¹∘E)[x]))`.
    pub capacity_bound: Statement,
    /// `cap_{D_w}(D(x, α))`.
    pub separated_points: Statement,
    /// Pairwise disjoint relative balls `D(x, α) ∩ D(y, w)` inside
    /// `D(x, α)`.
    pub disjoint_relative_balls: Statement,
    /// `ent_{D_w}(D(x, α))`.
    pub ball_cover: Statement,
    /// The separated-points bound at `Φ(w)` never exceeds the relative-ball
    /// bound at `w`, and the relative-ball bound at `w` never exceeds the
    /// separated-points bound at `w`.
    pub transfers_hold: bool,
    /// `cap_{E∘E}(S) ≤ ent_E(S) ≤ cap_E(S)` for every symmetric reflexive
    /// controlled `E` and every `S ⊆ X`; `None` when too large to sweep.
    pub sandwich: Option<bool>,
}

impl BoundedGeometryReport {
    pub fn all_hold(&self) -> bool {
        self.capacity_bound.holds()
            && self.separated_points.holds()
            && self.disjoint_relative_balls.holds()
            && self.ball_cover.holds()
    }
}

/// Largest ground set for which the sandwich sweep runs.
const SANDWICH_MAX_GROUND: usize = 6;

fn max_over_centers(n: usize, f: impl Fn(usize) -> Count) -> Count {
    (0..n).map(f).max().unwrap_or(Count::Finite(0))
}

/// Largest number of pairwise disjoint sets among `ball ∩ D(y, w)` for
/// `y ∈ ball`.
fn disjoint_relative(ball: &Subset, small: &Relation) -> Count {
    let mut sets: Vec<u64> = ball
        .iter()
        .map(|y| small.row(y).bits() & ball.bits())
        .collect();
    sets.sort_unstable();
    sets.dedup();
    let adj: Vec<u64> = sets
        .iter()
        .map(|&a| {
            sets.iter()
                .enumerate()
                .filter(|&(_, &b)| a & b != 0)
                .fold(0u64, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    let all = if sets.len() == 64 { u64::MAX } else { (1u64 << sets.len()) - 1 };
    Count::Finite(max_independent(&adj, all))
}

/// Evaluates the four bounded geometry statements for a coarse metric
/// inducing `s`, with every statement witnessed at `0_I`.
pub fn bounded_geometry_report(s: &CoarseStructure, d: &GenMetric) -> Result<BoundedGeometryReport> {
    check_induces(s, d)?;
    let cert = is_coarse_metric(d)?.ok_or_else(|| Error::NotCoarseMetric("no growth map".into()))?;
    let idx = d.index();
    let zero = idx.require_zero()?;
    let n = d.carrier();
    let levels = d.sublevels();
    let base = &levels[zero];

    let capacity_bound = Statement {
        witness: zero,
        bounds: levels
            .iter()
            .map(|f| {
                let fe = f.then(base);
                let fie = f.inverse().then(base);
                max_over_centers(n, |x| cap(base, &fe.row(x)).max(cap(base, &fie.row(x))))
            })
            .collect(),
    };
    let separated_at = |w: usize| Statement {
        witness: w,
        bounds: levels
            .iter()
            .map(|l| max_over_centers(n, |x| cap(&levels[w], &l.row(x))))
            .collect(),
    };
    let relative_at = |w: usize| Statement {
        witness: w,
        bounds: levels
            .iter()
            .map(|l| max_over_centers(n, |x| disjoint_relative(&l.row(x), &levels[w])))
            .collect(),
    };
    let separated_points = separated_at(zero);
    let disjoint_relative_balls = relative_at(zero);
    let ball_cover = Statement {
        witness: zero,
        bounds: levels
            .iter()
            .map(|l| max_over_centers(n, |x| ent(base, &l.row(x))))
            .collect(),
    };

    let transfers_hold = (0..idx.len()).all(|w| {
        let rel = relative_at(w);
        let sep_same = separated_at(w);
        let sep_grown = separated_at(cert.phi().apply(w));
        (0..idx.len()).all(|a| rel.bounds[a] <= sep_same.bounds[a] && sep_grown.bounds[a] <= rel.bounds[a])
    });

    let sandwich = if n <= SANDWICH_MAX_GROUND {
        Some(sandwich_holds(&s.members_sym()?, n))
    } else {
        None
    };

    Ok(BoundedGeometryReport {
        capacity_bound,
        separated_points,
        disjoint_relative_balls,
        ball_cover,
        transfers_hold,
        sandwich,
    })
}

/// `cap_{E∘E}(S) ≤ ent_E(S) ≤ cap_E(S)` for every `E` given and every
/// `S ⊆ X`.
pub fn sandwich_holds(relations: &[Relation], n: usize) -> bool {
    relations.iter().all(|e| {
        let ee = e.then(e);
        Subset::all(n).all(|s| {
            let en = ent(e, &s);
            cap(&ee, &s) <= en && en <= cap(e, &s)
        })
    })
}
