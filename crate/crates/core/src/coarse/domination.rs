use fixedbitset::FixedBitSet;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::metric::GenMetric;
use crate::poset::{Ext, OrderMap};

/// Outcome of asking whether `d ⪯ d'`, i.e. whether some increasing
/// `Γ: I' → I` gives `d(x, y) ≤ Γ_∞(d'(x, y))` everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domination {
    /// An increasing witness. `canonical` marks
    /// `Γ(α') = inf{α : D'_{α'} ⊆ D_α}` over a meet-complete `I`.
    Increasing { gamma: OrderMap, canonical: bool },
    /// No increasing witness exists, but an arbitrary map satisfies the
    /// pointwise bound.
    OnlyArbitrary { gamma: OrderMap },
    NotDominated,
    /// The indices are too large for the exhaustive search.
    Undetermined,
}

impl Domination {
    pub fn is_dominated(&self) -> bool {
        matches!(self, Domination::Increasing { .. })
    }

    pub fn gamma(&self) -> Option<&OrderMap> {
        match self {
            Domination::Increasing { gamma, .. } | Domination::OnlyArbitrary { gamma } => {
                Some(gamma)
            }
            _ => None,
        }
    }
}

/// The pointwise bound `d(x, y) ≤ Γ_∞(d'(x, y))` for every pair.
fn bounds_pointwise(d: &GenMetric, d_prime: &GenMetric, gamma: &[usize]) -> bool {
    let n = d.carrier();
    let idx = d.index();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let image = match d_prime.get(x, y) {
                Ext::Fin(a) => Ext::Fin(gamma[a]),
                Ext::Inf => Ext::Inf,
            };
            idx.leq_ext_unchecked(d.get(x, y), image)
        })
    })
}

/// Decides `d ⪯ d'`.
///
/// Over a meet-complete `I` the canonical witness is tried; it exists
/// exactly when every `D'_{α'}` lies in some `D_α`. Otherwise small indices
/// are searched exhaustively, first for an increasing map and then for any
/// map, so [`Domination::OnlyArbitrary`] is reported only within the
/// search limit.
pub fn dominates(d: &GenMetric, d_prime: &GenMetric) -> Result<Domination> {
    if d.carrier() != d_prime.carrier() {
        return Err(Error::CarrierMismatch {
            left: d.carrier(),
            right: d_prime.carrier(),
        });
    }
    let idx = d.index();
    let idx_p = d_prime.index();
    let levels = d.sublevels();
    let levels_p = d_prime.sublevels();

    // an increasing witness forces D'_{α'} ⊆ D_{Γ(α')}
    let mut no_increasing = false;
    if idx.is_meet_complete() {
        let mut table = Vec::with_capacity(idx_p.len());
        for lp in &levels_p {
            let mut above = FixedBitSet::with_capacity(idx.len());
            for (a, l) in levels.iter().enumerate() {
                if lp.le(l) {
                    above.insert(a);
                }
            }
            match idx.meet_of(&above) {
                Some(g) => table.push(g),
                None => {
                    no_increasing = true;
                    break;
                }
            }
        }
        if !no_increasing {
            let gamma = OrderMap::new(table, idx_p, idx)?;
            debug_assert!(gamma.is_increasing());
            debug_assert!(bounds_pointwise(d, d_prime, gamma.table()));
            return Ok(Domination::Increasing {
                gamma,
                canonical: true,
            });
        }
    }

    let limit = Limits::current().max_witness_search;
    if idx.len() > limit || idx_p.len() > limit {
        return Ok(if no_increasing {
            Domination::NotDominated
        } else {
            Domination::Undetermined
        });
    }
    let m = idx.len();
    let mp = idx_p.len();
    let mut arbitrary: Option<Vec<usize>> = None;
    let mut table = vec![0usize; mp];
    let total = m.pow(mp as u32);
    for code in 0..total {
        let mut c = code;
        for slot in table.iter_mut() {
            *slot = c % m;
            c /= m;
        }
        if !bounds_pointwise(d, d_prime, &table) {
            continue;
        }
        let gamma = OrderMap::new(table.clone(), idx_p, idx)?;
        if gamma.is_increasing() {
            return Ok(Domination::Increasing {
                gamma,
                canonical: false,
            });
        }
        if arbitrary.is_none() {
            arbitrary = Some(table.clone());
        }
    }
    match arbitrary {
        Some(t) => Ok(Domination::OnlyArbitrary {
            gamma: OrderMap::new(t, idx_p, idx)?,
        }),
        None => Ok(Domination::NotDominated),
    }
}

/// `d ∼ d'`: each dominates the other with an increasing witness.
/// `None` when either direction is undetermined.
pub fn equivalent(d: &GenMetric, d_prime: &GenMetric) -> Result<Option<bool>> {
    let there = dominates(d, d_prime)?;
    let back = dominates(d_prime, d)?;
    if there == Domination::Undetermined || back == Domination::Undetermined {
        return Ok(None);
    }
    Ok(Some(there.is_dominated() && back.is_dominated()))
}
