//! p-adic valuations on `ℤ` and `ℚ`, the valuation metric
//! `d_ν(x, y) = ν(x − y)` on a finite window, and the passage from a coarse
//! metric to a pseudo uniform one when the growth map reaches down to the
//! bottom of the index.
//!
//! Claims about the infinite ring are only ever checked on the window or
//! sample handed in.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coarse::CoarseMetricCert;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::metric::GenMetric;
use crate::poset::{Ext, OrderMap, Poset};
use crate::uniform::{is_pseudo_uniform_metric, DIndexMetricCert};

/// Largest prime accepted; primality is checked by trial division.
pub const MAX_PRIME: u64 = 1_000_000;

/// `Γ⁰ = ℤ ∪ {ω}`. The derived order is the original one, with `ω` above
/// every integer; [`Gamma0::cmp_op`] is the reversed order in which `ω` is
/// the zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gamma0 {
    Fin(i64),
    Omega,
}

impl Gamma0 {
    pub fn cmp_op(&self, other: &Gamma0) -> Ordering {
        other.cmp(self)
    }

    pub fn is_omega(self) -> bool {
        self == Gamma0::Omega
    }
}

impl Add for Gamma0 {
    type Output = Gamma0;

    /// `ω` absorbs.
    fn add(self, rhs: Gamma0) -> Gamma0 {
        match (self, rhs) {
            (Gamma0::Fin(a), Gamma0::Fin(b)) => Gamma0::Fin(a + b),
            _ => Gamma0::Omega,
        }
    }
}

impl fmt::Display for Gamma0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gamma0::Fin(a) => write!(f, "{a}"),
            Gamma0::Omega => f.write_str("omega"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Integers,
    Rationals,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicRing {
    p: u64,
    prime: BigInt,
    domain: Domain,
}

impl PadicRing {
    pub fn new(p: u64, domain: Domain) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::Capacity {
                what: "prime",
                size: p as usize,
                limit: MAX_PRIME as usize,
            });
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PadicRing {
            p,
            prime: BigInt::from(p),
            domain,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Exponent of `p` in a nonzero integer, `ω` at zero.
    pub fn valuate_int(&self, x: &BigInt) -> Gamma0 {
        if x.is_zero() {
            return Gamma0::Omega;
        }
        let mut v = 0;
        let mut m = x.abs();
        loop {
            let (q, r) = m.div_rem(&self.prime);
            if !r.is_zero() {
                return Gamma0::Fin(v);
            }
            m = q;
            v += 1;
        }
    }

    /// Numerator exponent minus denominator exponent; the representation is
    /// reduced, so at most one of them is nonzero.
    pub fn valuate(&self, x: &BigRational) -> Gamma0 {
        match (self.valuate_int(x.numer()), self.valuate_int(x.denom())) {
            (Gamma0::Fin(a), Gamma0::Fin(b)) => Gamma0::Fin(a - b),
            _ => Gamma0::Omega,
        }
    }

    fn admits(&self, x: &BigRational) -> bool {
        self.domain == Domain::Rationals || x.is_integer()
    }

    fn require_elements(&self, xs: &[BigRational]) -> Result<()> {
        match xs.iter().find(|x| !self.admits(x)) {
            Some(x) => Err(Error::Degenerate(format!("{x} is not an integer"))),
            None => Ok(()),
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `a..=b` as ring elements.
pub fn integer_window(a: i64, b: i64) -> Vec<BigRational> {
    (a..=b).map(|x| BigRational::from_integer(x.into())).collect()
}

/// The outcome of checking the valuation axioms over every ordered pair of
/// a finite sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub pairs_checked: usize,
    /// Pairs with `ν(xy) ≠ ν(x) + ν(y)`.
    pub product_failures: Vec<(BigRational, BigRational)>,
    /// Pairs with `ν(x + y) < min{ν(x), ν(y)}`.
    pub sum_failures: Vec<(BigRational, BigRational)>,
    /// Pairs with `ν(x + y) > min{ν(x), ν(y)}`; these need `ν(x) = ν(y)`.
    pub strict_sums: usize,
    pub first_strict_sum: Option<(BigRational, BigRational)>,
    pub unit_is_zero: bool,
    pub zero_is_omega: bool,
    /// Whether `0` itself occurs in the sample.
    pub sample_has_zero: bool,
    /// Over the rationals, nonzero samples with `ν(x) + ν(x⁻¹) ≠ 0`.
    pub inverse_failures: Vec<BigRational>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.product_failures.is_empty()
            && self.sum_failures.is_empty()
            && self.unit_is_zero
            && self.zero_is_omega
            && self.inverse_failures.is_empty()
    }
}

pub fn check_valuation_axioms(ring: &PadicRing, sample: &[BigRational]) -> Result<AxiomReport> {
    if sample.is_empty() {
        return Err(Error::EmptySet);
    }
    ring.require_elements(sample)?;
    let vals: Vec<Gamma0> = sample.iter().map(|x| ring.valuate(x)).collect();
    let mut report = AxiomReport {
        pairs_checked: 0,
        product_failures: Vec::new(),
        sum_failures: Vec::new(),
        strict_sums: 0,
        first_strict_sum: None,
        unit_is_zero: ring.valuate(&BigRational::one()) == Gamma0::Fin(0),
        zero_is_omega: ring.valuate(&BigRational::zero()) == Gamma0::Omega,
        sample_has_zero: sample.iter().any(Zero::is_zero),
        inverse_failures: Vec::new(),
    };
    for (x, &vx) in sample.iter().zip(&vals) {
        for (y, &vy) in sample.iter().zip(&vals) {
            report.pairs_checked += 1;
            if ring.valuate(&(x * y)) != vx + vy {
                report.product_failures.push((x.clone(), y.clone()));
            }
            let vs = ring.valuate(&(x + y));
            match vs.cmp(&vx.min(vy)) {
                Ordering::Less => report.sum_failures.push((x.clone(), y.clone())),
                Ordering::Greater => {
                    report.strict_sums += 1;
                    report.first_strict_sum.get_or_insert_with(|| (x.clone(), y.clone()));
                }
                Ordering::Equal => {}
            }
        }
    }
    if ring.domain == Domain::Rationals {
        for (x, &vx) in sample.iter().zip(&vals) {
            if !x.is_zero() && (vx.is_omega() || vx + ring.valuate(&x.recip()) != Gamma0::Fin(0)) {
                report.inverse_failures.push(x.clone());
            }
        }
    }
    Ok(report)
}

/// `d_ν` on a window. Index element `0` is `ω`, and element `k > 0` is the
/// `k`-th largest finite valuation attained by a difference, so the index
/// order is the reversed order of `Γ⁰` restricted to attained values.
#[derive(Debug, Clone)]
pub struct ValuationMetric {
    pub window: Vec<BigRational>,
    /// `levels[k]` is the value of index element `k`.
    pub levels: Vec<Gamma0>,
    pub metric: GenMetric,
    /// `Φ = id`.
    pub coarse: CoarseMetricCert,
    /// `Ψ = id`.
    pub uniform: DIndexMetricCert,
}

impl ValuationMetric {
    pub fn value(&self, x: usize, y: usize) -> Gamma0 {
        match self.metric.get(x, y) {
            Ext::Fin(k) => self.levels[k],
            Ext::Inf => unreachable!("valuation metrics are finite"),
        }
    }
}

/// Builds `d_ν` on a window of at least two distinct elements and certifies
/// it with identity growth and descent maps.
pub fn valuation_metric(ring: &PadicRing, window: &[BigRational]) -> Result<ValuationMetric> {
    let n = window.len();
    let limit = Limits::current().max_ground;
    if n > limit {
        return Err(Error::Capacity {
            what: "valuation window",
            size: n,
            limit,
        });
    }
    if n < 2 {
        return Err(Error::Degenerate("a window needs two elements".into()));
    }
    ring.require_elements(window)?;
    let raw: Vec<Gamma0> = (0..n * n)
        .map(|k| ring.valuate(&(&window[k / n] - &window[k % n])))
        .collect();
    if (0..n).any(|x| (0..n).any(|y| x != y && raw[x * n + y].is_omega())) {
        return Err(Error::Degenerate("the window repeats an element".into()));
    }
    let mut levels = raw.clone();
    levels.sort_by(Gamma0::cmp_op);
    levels.dedup();
    let idx = Arc::new(Poset::chain(levels.len()));
    let values = raw
        .iter()
        .map(|v| Ext::Fin(levels.binary_search_by(|l| l.cmp_op(v)).expect("attained")))
        .collect();
    let metric = GenMetric::new(n, idx.clone(), values)?;
    let coarse = CoarseMetricCert::new(metric.clone(), OrderMap::identity(&idx))?;
    let psi = (0..idx.len()).map(|k| (k != 0).then_some(k)).collect();
    let uniform = DIndexMetricCert::new(metric.clone(), psi)?;
    Ok(ValuationMetric {
        window: window.to_vec(),
        levels,
        metric,
        coarse,
        uniform,
    })
}

/// `d(x, z) ≤ α` whenever `d(x, y) ≤ α` and `d(y, z) ≤ α`, i.e. every
/// sublevel is transitive.
pub fn is_pseudo_ultra(d: &GenMetric) -> bool {
    d.sublevels().iter().all(|l| l.then(l).le(l))
}

#[derive(Debug, Clone)]
pub enum UniformityVerdict {
    /// `Ψ(β)` is a nonzero `α` with `Φ(α) ≤ β`, preferring `α = β`.
    Confirmed(DIndexMetricCert),
    /// The nonzero `β` below which `Φ` sends no nonzero element; the
    /// criterion says nothing about `d` then.
    Inapplicable { uncovered: usize },
}

/// Tests whether `Φ(I ∖ {0})` is downward cofinal in `I ∖ {0}` and, if so,
/// turns `Φ` into a descent map `Ψ`.
pub fn coarse_to_uniform(cert: &CoarseMetricCert) -> Result<UniformityVerdict> {
    let d = cert.metric();
    let idx = d.index();
    if !idx.is_upward_directed() {
        return Err(Error::NotUpwardDirected);
    }
    if !idx.is_d_index()? {
        return Err(Error::NotDIndex);
    }
    let zero = idx.require_zero()?;
    let nonzero: Vec<usize> = (0..idx.len()).filter(|&a| a != zero).collect();
    let mut psi = vec![None; idx.len()];
    for &b in &nonzero {
        // D_α ∘ D_α ⊆ D_{Φ(α)} ⊆ D_β; β itself is tried first
        let below = |a: usize| {
            let img = cert.phi().apply(a);
            img != zero && idx.leq(img, b)
        };
        match std::iter::once(b).chain(nonzero.iter().copied()).find(|&a| below(a)) {
            Some(a) => psi[b] = Some(a),
            None => return Ok(UniformityVerdict::Inapplicable { uncovered: b }),
        }
    }
    let built = DIndexMetricCert::new(d.clone(), psi)?;
    debug_assert!(is_pseudo_uniform_metric(d)?.is_some());
    Ok(UniformityVerdict::Confirmed(built))
}
