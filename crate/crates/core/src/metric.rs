//! Generalized metrics `d: X × X → I_∞` valued in a poset with zero.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poset::{Ext, Poset};
use crate::relset::{Relation, Subset};

/// A dense `n × n` table of values in `I_∞`.
///
/// Tables built with [`GenMetric::new`] are semi-metrics: zero on the
/// diagonal and symmetric. [`GenMetric::raw`] skips those checks for
/// constructions that allow an arbitrary map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenMetric {
    n: usize,
    index: Arc<Poset>,
    values: Vec<Ext>,
    semi: bool,
}

impl GenMetric {
    /// A semi-metric; fails unless the table has zero diagonal and is
    /// symmetric.
    pub fn new(n: usize, index: Arc<Poset>, values: Vec<Ext>) -> Result<Self> {
        let mut d = GenMetric::raw(n, index, values)?;
        let zero = d.index.require_zero()?;
        for x in 0..n {
            if d.get(x, x) != Ext::Fin(zero) {
                return Err(Error::NotSemiMetric(format!(
                    "d({x}, {x}) = {} is not the zero",
                    d.get(x, x)
                )));
            }
            for y in x + 1..n {
                if d.get(x, y) != d.get(y, x) {
                    return Err(Error::NotSemiMetric(format!(
                        "d({x}, {y}) = {} but d({y}, {x}) = {}",
                        d.get(x, y),
                        d.get(y, x)
                    )));
                }
            }
        }
        d.semi = true;
        Ok(d)
    }

    /// Any table with in-range values.
    pub fn raw(n: usize, index: Arc<Poset>, values: Vec<Ext>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGround);
        }
        if values.len() != n * n {
            return Err(Error::OutOfRange {
                elem: values.len(),
                n: n * n,
            });
        }
        for v in &values {
            if let Ext::Fin(a) = v {
                index.check_index(*a)?;
            }
        }
        Ok(GenMetric {
            n,
            index,
            values,
            semi: false,
        })
    }

    pub fn from_fn(n: usize, index: Arc<Poset>, f: impl Fn(usize, usize) -> Ext) -> Result<Self> {
        let values = (0..n * n).map(|k| f(k / n, k % n)).collect();
        GenMetric::new(n, index, values)
    }

    pub fn raw_from_fn(
        n: usize,
        index: Arc<Poset>,
        f: impl Fn(usize, usize) -> Ext,
    ) -> Result<Self> {
        let values = (0..n * n).map(|k| f(k / n, k % n)).collect();
        GenMetric::raw(n, index, values)
    }

    pub fn carrier(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> &Arc<Poset> {
        &self.index
    }

    pub fn get(&self, x: usize, y: usize) -> Ext {
        self.values[x * self.n + y]
    }

    pub fn values(&self) -> &[Ext] {
        &self.values
    }

    /// Whether the table was validated as a semi-metric at construction.
    pub fn is_validated_semi(&self) -> bool {
        self.semi
    }

    /// Zero on the diagonal and symmetric, checked pointwise.
    pub fn is_semi_metric(&self) -> bool {
        let Some(zero) = self.index.zero() else {
            return false;
        };
        (0..self.n).all(|x| {
            self.get(x, x) == Ext::Fin(zero) && (0..self.n).all(|y| self.get(x, y) == self.get(y, x))
        })
    }

    pub fn takes_infinity(&self) -> bool {
        self.values.iter().any(|v| v.is_inf())
    }

    /// `D_α = {(x, y) : d(x, y) ≤ α}`.
    pub fn entourage(&self, alpha: usize) -> Result<Relation> {
        self.index.check_index(alpha)?;
        Ok(self.sublevel(alpha))
    }

    pub(crate) fn sublevel(&self, alpha: usize) -> Relation {
        let a = Ext::Fin(alpha);
        Relation::from_fn(self.n, |x, y| self.index.leq_ext_unchecked(self.get(x, y), a))
    }

    /// `D_α` for every `α ∈ I`, indexed by `α`.
    pub fn sublevels(&self) -> Vec<Relation> {
        (0..self.index.len()).map(|a| self.sublevel(a)).collect()
    }

    /// The ball `D(z, α) = D_α[z]`.
    pub fn ball(&self, z: usize, alpha: usize) -> Result<Subset> {
        if z >= self.n {
            return Err(Error::OutOfRange { elem: z, n: self.n });
        }
        Ok(self.entourage(alpha)?.row(z))
    }

    /// The family `{D_α : α ∈ I ∖ {0_I}}` with its indices.
    pub fn base_family(&self) -> Result<Vec<(usize, Relation)>> {
        let zero = self.index.require_zero()?;
        let out: Vec<_> = (0..self.index.len())
            .filter(|&a| a != zero)
            .map(|a| (a, self.sublevel(a)))
            .collect();
        if out.is_empty() {
            return Err(Error::Degenerate("the index has no nonzero element".into()));
        }
        Ok(out)
    }

    /// `d ∘ (f × f)` for a map `f` from a set of `table.len()` elements.
    pub fn pullback(&self, table: &[usize]) -> Result<GenMetric> {
        if let Some(&bad) = table.iter().find(|&&y| y >= self.n) {
            return Err(Error::OutOfRange { elem: bad, n: self.n });
        }
        let m = table.len();
        let values = (0..m * m)
            .map(|k| self.get(table[k / m], table[k % m]))
            .collect();
        let mut d = GenMetric::raw(m, self.index.clone(), values)?;
        d.semi = self.semi;
        Ok(d)
    }

    /// Same table over a different index via `f`, which must send `I` into
    /// the new index; `∞` stays `∞`.
    pub fn map_values(&self, index: Arc<Poset>, f: impl Fn(usize) -> usize) -> Result<GenMetric> {
        let values = self
            .values
            .iter()
            .map(|v| match v {
                Ext::Fin(a) => Ext::Fin(f(*a)),
                Ext::Inf => Ext::Inf,
            })
            .collect();
        if self.semi {
            GenMetric::new(self.n, index, values)
        } else {
            GenMetric::raw(self.n, index, values)
        }
    }

    /// Text block `metric <name> over <ground> index <poset>` followed by
    /// `x y value` lines and `end`. Semi-metrics list only `x < y`; raw
    /// tables list every pair and carry the `raw` marker.
    pub fn to_text(&self, name: &str, ground: &str, index: &str) -> String {
        let mut s = format!("metric {name} over {ground} index {index}");
        if !self.semi {
            s.push_str(" raw");
        }
        s.push('\n');
        for x in 0..self.n {
            for y in 0..self.n {
                if self.semi && x >= y {
                    continue;
                }
                s.push_str(&format!("{x} {y} {}\n", self.get(x, y)));
            }
        }
        s.push_str("end\n");
        s
    }
}
