//! Coarse properties read off from a metric, each paired with a check
//! computed from the coarse structures alone.

mod count;
mod geometry;
pub mod structural;

pub use count::{cap, ent, Count};
pub use geometry::{bounded_geometry_report, sandwich_holds, BoundedGeometryReport, Statement};

use std::sync::Arc;

use crate::coarse::{dominates, induced_structure, CoarseStructure, Domination};
use crate::error::{Error, Result};
use crate::metric::GenMetric;
use crate::poset::{Ext, Poset};
use crate::relset::{Relation, Subset};

/// A total map `f: X → Y` given by its value table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceMap {
    target: usize,
    table: Vec<usize>,
}

impl SpaceMap {
    pub fn new(target: usize, table: Vec<usize>) -> Result<Self> {
        if table.is_empty() {
            return Err(Error::EmptyGround);
        }
        if let Some(&bad) = table.iter().find(|&&y| y >= target) {
            return Err(Error::OutOfRange { elem: bad, n: target });
        }
        Ok(SpaceMap { target, table })
    }

    pub fn identity(n: usize) -> Self {
        SpaceMap {
            target: n,
            table: (0..n).collect(),
        }
    }

    pub fn constant(source: usize, target: usize, y: usize) -> Result<Self> {
        SpaceMap::new(target, vec![y; source])
    }

    pub fn source(&self) -> usize {
        self.table.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// `(f × f)(R)`.
    pub fn image(&self, r: &Relation) -> Relation {
        let mut out = Relation::empty(self.target);
        for (x, y) in r.pairs() {
            out.insert(self.table[x], self.table[y]);
        }
        out
    }

    /// `(f × f)⁻¹(R)`.
    pub fn preimage(&self, r: &Relation) -> Relation {
        Relation::from_fn(self.source(), |x, y| r.contains(self.table[x], self.table[y]))
    }

    /// `f⁻¹(B)`.
    pub fn preimage_set(&self, b: &Subset) -> Subset {
        let bits = (0..self.source())
            .filter(|&x| b.contains(self.table[x]))
            .fold(0u64, |acc, x| acc | 1 << x);
        Subset::from_bits(self.source(), bits).expect("in range")
    }

    fn check_against(&self, dx: &GenMetric, dy: &GenMetric) -> Result<()> {
        if dx.carrier() != self.source() {
            return Err(Error::CarrierMismatch {
                left: self.source(),
                right: dx.carrier(),
            });
        }
        if dy.carrier() != self.target {
            return Err(Error::CarrierMismatch {
                left: self.target,
                right: dy.carrier(),
            });
        }
        Ok(())
    }
}

/// Fails unless `d` is a coarse metric inducing `s`.
pub fn check_induces(s: &CoarseStructure, d: &GenMetric) -> Result<()> {
    if induced_structure(d)? != *s {
        return Err(Error::StructureMismatch);
    }
    Ok(())
}

/// No value of `d` is the adjoined `∞`.
///
/// A largest element inside `I` itself is an ordinary finite value.
pub fn is_coarsely_connected(s: &CoarseStructure, d: &GenMetric) -> Result<bool> {
    check_induces(s, d)?;
    Ok(!d.takes_infinity())
}

/// A ball `D(x, α)` containing `b`, preferring centers in `b` and then
/// small radii in index order.
pub fn is_bounded(s: &CoarseStructure, d: &GenMetric, b: &Subset) -> Result<Option<(usize, usize)>> {
    check_induces(s, d)?;
    bounding_ball(d, b)
}

pub(crate) fn bounding_ball(d: &GenMetric, b: &Subset) -> Result<Option<(usize, usize)>> {
    if b.carrier() != d.carrier() {
        return Err(Error::CarrierMismatch {
            left: d.carrier(),
            right: b.carrier(),
        });
    }
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    let idx = d.index();
    let zero = idx.require_zero()?;
    let mut radii: Vec<usize> = (0..idx.len()).collect();
    // the zero first, then by the size of the down-set
    radii.sort_by_key(|&a| (a != zero, idx.down_set(a).count_ones(..), a));
    let centers = b.iter().chain((0..d.carrier()).filter(|&x| !b.contains(x)));
    for x in centers {
        for &a in &radii {
            let covered = b.iter().all(|y| idx.leq_ext_unchecked(d.get(x, y), Ext::Fin(a)));
            if covered {
                return Ok(Some((x, a)));
            }
        }
    }
    Ok(None)
}

/// Outcome of a property that the metric side decides through domination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationCheck {
    /// Every sublevel is carried into some sublevel.
    pub holds: bool,
    /// The domination verdict it must agree with.
    pub domination: Domination,
}

impl DominationCheck {
    /// Whether the sublevel check and the domination verdict agree; `None`
    /// when domination was undetermined.
    pub fn consistent(&self) -> Option<bool> {
        match self.domination {
            Domination::Undetermined => None,
            ref dom => Some(dom.is_dominated() == self.holds),
        }
    }
}

fn pulled_back(f: &SpaceMap, dy: &GenMetric) -> Result<GenMetric> {
    dy.pullback(f.table())
}

/// `f` is bornologous: each `(f × f)(D_α)` lies in some `D_β`, which must
/// match `d_Y ∘ (f × f) ⪯ d_X`.
pub fn is_bornologous(f: &SpaceMap, dx: &GenMetric, dy: &GenMetric) -> Result<DominationCheck> {
    f.check_against(dx, dy)?;
    let targets = dy.sublevels();
    let holds = dx
        .sublevels()
        .iter()
        .all(|l| {
            let im = f.image(l);
            targets.iter().any(|t| im.le(t))
        });
    let domination = dominates(&pulled_back(f, dy)?, dx)?;
    Ok(DominationCheck { holds, domination })
}

/// `f` is effectively proper: each `(f × f)⁻¹(D_β)` lies in some `D_α`,
/// which must match `d_X ⪯ d_Y ∘ (f × f)`.
pub fn is_effectively_proper(f: &SpaceMap, dx: &GenMetric, dy: &GenMetric) -> Result<DominationCheck> {
    f.check_against(dx, dy)?;
    let sources = dx.sublevels();
    let holds = dy.sublevels().iter().all(|l| {
        let pre = f.preimage(l);
        sources.iter().any(|s| pre.le(s))
    });
    let domination = dominates(dx, &pulled_back(f, dy)?)?;
    Ok(DominationCheck { holds, domination })
}

/// A witness `Υ(y, β) = (x, α)` with `f⁻¹(D(y, β)) ⊆ D(x, α)`, stored
/// row-major over `(y, β)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperWitness {
    pub radii: usize,
    pub table: Vec<(usize, usize)>,
}

impl ProperWitness {
    pub fn get(&self, y: usize, beta: usize) -> (usize, usize) {
        self.table[y * self.radii + beta]
    }
}

/// `f` is proper: the preimage of every ball is bounded. Empty preimages
/// get `(0, 0_I)`.
pub fn is_proper(f: &SpaceMap, dx: &GenMetric, dy: &GenMetric) -> Result<Option<ProperWitness>> {
    f.check_against(dx, dy)?;
    let jdx = dy.index();
    let zero = dx.index().require_zero()?;
    let mut table = Vec::with_capacity(dy.carrier() * jdx.len());
    for y in 0..dy.carrier() {
        for beta in 0..jdx.len() {
            let pre = f.preimage_set(&dy.ball(y, beta)?);
            if pre.is_empty() {
                table.push((0, zero));
                continue;
            }
            match bounding_ball(dx, &pre)? {
                Some(w) => table.push(w),
                None => return Ok(None),
            }
        }
    }
    Ok(Some(ProperWitness {
        radii: jdx.len(),
        table,
    }))
}

/// Some `β` bounding `d_Y(f(x), g(x))` for every `x`: the join when it
/// exists, otherwise the first upper bound.
pub fn are_close(f: &SpaceMap, g: &SpaceMap, dy: &GenMetric) -> Result<Option<usize>> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::CarrierMismatch {
            left: f.source(),
            right: g.source(),
        });
    }
    if dy.carrier() != f.target() {
        return Err(Error::CarrierMismatch {
            left: f.target(),
            right: dy.carrier(),
        });
    }
    let mut values = Vec::with_capacity(f.source());
    for x in 0..f.source() {
        match dy.get(f.apply(x), g.apply(x)) {
            Ext::Fin(a) => values.push(a),
            Ext::Inf => return Ok(None),
        }
    }
    let idx: &Arc<Poset> = dy.index();
    if let Some(j) = idx.join(&values)? {
        return Ok(Some(j));
    }
    Ok(idx.upper_bounds(&values).ones().next())
}
