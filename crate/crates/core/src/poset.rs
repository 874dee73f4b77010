//! Finite partially ordered index sets, the adjoined top `∞`, and the
//! order-theoretic predicates the metric constructions depend on.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::relset::Relation;

/// Largest poset for which [`Poset::is_meet_complete_exhaustive`] runs.
pub const EXHAUSTIVE_MEET_LIMIT: usize = 12;

/// A value of `I_∞`: an element of the index poset, or the adjoined top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ext {
    Fin(usize),
    Inf,
}

impl Ext {
    pub fn is_inf(self) -> bool {
        matches!(self, Ext::Inf)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Ext::Fin(a) => Some(a),
            Ext::Inf => None,
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Fin(a) => write!(f, "{a}"),
            Ext::Inf => f.write_str("inf"),
        }
    }
}

/// A finite poset on `0..m`.
///
/// `below[b]` holds every `a` with `a ≤ b` and `above[a]` every `b` with
/// `a ≤ b`. The zero is detected at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    m: usize,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    zero: Option<usize>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("m", &self.m)
            .field("covers", &self.covers())
            .field("zero", &self.zero)
            .finish()
    }
}

impl Poset {
    /// Builds a poset from an order predicate, checking the partial order
    /// axioms.
    #[allow(clippy::needless_range_loop)]
    pub fn from_leq(m: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if m == 0 {
            return Err(Error::NotPartialOrder("no elements".into()));
        }
        let mut below = vec![FixedBitSet::with_capacity(m); m];
        let mut above = vec![FixedBitSet::with_capacity(m); m];
        for a in 0..m {
            for b in 0..m {
                if leq(a, b) {
                    below[b].insert(a);
                    above[a].insert(b);
                }
            }
        }
        for a in 0..m {
            if !below[a].contains(a) {
                return Err(Error::NotPartialOrder(format!("{a} ≤ {a} fails")));
            }
            for b in above[a].ones() {
                if a != b && above[b].contains(a) {
                    return Err(Error::NotPartialOrder(format!(
                        "{a} ≤ {b} and {b} ≤ {a} with {a} ≠ {b}"
                    )));
                }
                if !above[b].is_subset(&above[a]) {
                    let c = above[b].difference(&above[a]).next().unwrap();
                    return Err(Error::NotPartialOrder(format!(
                        "{a} ≤ {b} ≤ {c} but not {a} ≤ {c}"
                    )));
                }
            }
        }
        let zero = (0..m).find(|&z| above[z].count_ones(..) == m);
        Ok(Poset {
            m,
            below,
            above,
            zero,
        })
    }

    /// Builds the reflexive transitive closure of the given `a ≤ b` pairs.
    #[allow(clippy::needless_range_loop)]
    pub fn from_pairs(m: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if m == 0 {
            return Err(Error::NotPartialOrder("no elements".into()));
        }
        let mut leq = vec![vec![false; m]; m];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in pairs {
            if a >= m || b >= m {
                return Err(Error::InvalidIndex { index: a.max(b), m });
            }
            leq[a][b] = true;
        }
        for k in 0..m {
            for i in 0..m {
                if leq[i][k] {
                    for j in 0..m {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Poset::from_leq(m, |a, b| leq[a][b])
    }

    /// The chain `0 < 1 < .. < m-1`.
    pub fn chain(m: usize) -> Self {
        Poset::from_leq(m, |a, b| a <= b).expect("a chain is a partial order")
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn require_zero(&self) -> Result<usize> {
        self.zero.ok_or(Error::MissingZero)
    }

    /// The greatest element, when one exists.
    pub fn top(&self) -> Option<usize> {
        (0..self.m).find(|&t| self.below[t].count_ones(..) == self.m)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn check_index(&self, a: usize) -> Result<()> {
        if a < self.m {
            Ok(())
        } else {
            Err(Error::InvalidIndex {
                index: a,
                m: self.m,
            })
        }
    }

    /// Order on `I_∞`: `∞` sits strictly above every element of `I`.
    pub fn leq_ext(&self, a: Ext, b: Ext) -> Result<bool> {
        for x in [a, b] {
            if let Ext::Fin(i) = x {
                self.check_index(i)?;
            }
        }
        Ok(self.leq_ext_unchecked(a, b))
    }

    pub(crate) fn leq_ext_unchecked(&self, a: Ext, b: Ext) -> bool {
        match (a, b) {
            (_, Ext::Inf) => true,
            (Ext::Inf, Ext::Fin(_)) => false,
            (Ext::Fin(a), Ext::Fin(b)) => self.leq(a, b),
        }
    }

    pub fn down_set(&self, a: usize) -> &FixedBitSet {
        &self.below[a]
    }

    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.above[a]
    }

    pub fn is_upward_directed(&self) -> bool {
        (0..self.m).all(|a| {
            (a..self.m).all(|b| self.above[a].intersection(&self.above[b]).next().is_some())
        })
    }

    /// `I ∖ {0_I}` is nonempty and every pair in it has a lower bound in it.
    pub fn is_d_index(&self) -> Result<bool> {
        let zero = self.require_zero()?;
        let mut rest = FixedBitSet::with_capacity(self.m);
        rest.insert_range(..);
        rest.set(zero, false);
        if rest.count_ones(..) == 0 {
            return Ok(false);
        }
        for a in rest.ones() {
            for b in rest.ones() {
                let mut common = self.below[a].clone();
                common.intersect_with(&self.below[b]);
                common.intersect_with(&rest);
                if common.count_ones(..) == 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn check_nonempty(&self, s: &[usize]) -> Result<()> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        s.iter().try_for_each(|&a| self.check_index(a))
    }

    pub fn lower_bounds(&self, s: &[usize]) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.m);
        acc.insert_range(..);
        for &a in s {
            acc.intersect_with(&self.below[a]);
        }
        acc
    }

    pub fn upper_bounds(&self, s: &[usize]) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.m);
        acc.insert_range(..);
        for &a in s {
            acc.intersect_with(&self.above[a]);
        }
        acc
    }

    /// Greatest element of `bounds`, if any.
    fn greatest_in(&self, bounds: &FixedBitSet) -> Option<usize> {
        bounds.ones().find(|&g| bounds.is_subset(&self.below[g]))
    }

    fn least_in(&self, bounds: &FixedBitSet) -> Option<usize> {
        bounds.ones().find(|&g| bounds.is_subset(&self.above[g]))
    }

    /// Greatest lower bound of a nonempty set, when it exists.
    pub fn meet(&self, s: &[usize]) -> Result<Option<usize>> {
        self.check_nonempty(s)?;
        Ok(self.greatest_in(&self.lower_bounds(s)))
    }

    /// Least upper bound of a nonempty set, when it exists.
    pub fn join(&self, s: &[usize]) -> Result<Option<usize>> {
        self.check_nonempty(s)?;
        Ok(self.least_in(&self.upper_bounds(s)))
    }

    /// Meet of a set given as a bitset; `None` for an empty set.
    pub(crate) fn meet_of(&self, s: &FixedBitSet) -> Option<usize> {
        if s.count_ones(..) == 0 {
            return None;
        }
        let mut lb = FixedBitSet::with_capacity(self.m);
        lb.insert_range(..);
        for a in s.ones() {
            lb.intersect_with(&self.below[a]);
        }
        self.greatest_in(&lb)
    }

    /// Every nonempty subset has a meet. For a finite poset it suffices
    /// that every pair has one; the exhaustive check confirms this in debug
    /// builds on small posets.
    pub fn is_meet_complete(&self) -> bool {
        let pairwise = (0..self.m)
            .all(|a| (a + 1..self.m).all(|b| self.greatest_in(&self.lower_bounds(&[a, b])).is_some()));
        if cfg!(debug_assertions) && self.m <= 8 {
            debug_assert_eq!(Some(pairwise), self.is_meet_complete_exhaustive());
        }
        pairwise
    }

    /// Checks every nonempty subset directly; `None` above
    /// [`EXHAUSTIVE_MEET_LIMIT`] elements.
    pub fn is_meet_complete_exhaustive(&self) -> Option<bool> {
        if self.m > EXHAUSTIVE_MEET_LIMIT {
            return None;
        }
        Some((1u32..1 << self.m).all(|mask| {
            let s: Vec<usize> = (0..self.m).filter(|&i| mask >> i & 1 == 1).collect();
            self.greatest_in(&self.lower_bounds(&s)).is_some()
        }))
    }

    pub fn is_join_complete(&self) -> bool {
        (0..self.m)
            .all(|a| (a + 1..self.m).all(|b| self.least_in(&self.upper_bounds(&[a, b])).is_some()))
    }

    pub fn is_totally_ordered(&self) -> bool {
        (0..self.m).all(|a| (0..self.m).all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// `I_∞` as an ordinary poset, the new top having index `m`.
    pub fn with_top_adjoined(&self) -> Poset {
        let m = self.m;
        Poset::from_leq(m + 1, |a, b| b == m || (a < m && self.leq(a, b)))
            .expect("adjoining a top keeps a partial order")
    }

    /// Complete-lattice test on `I`, or on `I_∞` when `extended` is set.
    pub fn is_complete_lattice(&self, extended: bool) -> bool {
        if extended {
            let ext = self.with_top_adjoined();
            ext.is_meet_complete() && ext.is_join_complete()
        } else {
            self.is_meet_complete() && self.is_join_complete()
        }
    }

    /// Covering pairs `a ⋖ b`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.m {
            for b in self.above[a].ones() {
                if a == b {
                    continue;
                }
                let between = self.above[a]
                    .intersection(&self.below[b])
                    .any(|c| c != a && c != b);
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Text block `poset <name>`, `elems k`, covering pairs `i <= j`, `end`.
    pub fn to_text(&self, name: &str) -> String {
        let mut s = format!("poset {name}\nelems {}\n", self.m);
        for (a, b) in self.covers() {
            s.push_str(&format!("{a} <= {b}\n"));
        }
        s.push_str("end\n");
        s
    }
}

/// A map between index posets together with whether it is increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderMap {
    table: Vec<usize>,
    increasing: bool,
}

impl OrderMap {
    pub fn new(table: Vec<usize>, source: &Poset, target: &Poset) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::InvalidIndex {
                index: table.len(),
                m: source.len(),
            });
        }
        for &t in &table {
            target.check_index(t)?;
        }
        let increasing = (0..source.len()).all(|a| {
            source
                .up_set(a)
                .ones()
                .all(|b| target.leq(table[a], table[b]))
        });
        Ok(OrderMap { table, increasing })
    }

    pub fn identity(p: &Poset) -> Self {
        OrderMap {
            table: (0..p.len()).collect(),
            increasing: true,
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    /// `Λ_∞`: extends the map by `∞ ↦ ∞`.
    pub fn apply_ext(&self, a: Ext) -> Ext {
        match a {
            Ext::Fin(a) => Ext::Fin(self.table[a]),
            Ext::Inf => Ext::Inf,
        }
    }

    pub fn is_increasing(&self) -> bool {
        self.increasing
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &t)| i == t)
    }
}

/// A family of relations ordered by inclusion.
///
/// Members are deduplicated and sorted by size, then canonically, so the
/// element indices are deterministic.
#[derive(Debug, Clone)]
pub struct InclusionPoset {
    poset: Arc<Poset>,
    members: Vec<Relation>,
    index: HashMap<Relation, usize>,
}

impl InclusionPoset {
    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn members(&self) -> &[Relation] {
        &self.members
    }

    pub fn member(&self, a: usize) -> &Relation {
        &self.members[a]
    }

    pub fn index_of(&self, r: &Relation) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Orders a family of relations by inclusion.
pub fn inclusion_poset(family: &[Relation]) -> Result<InclusionPoset> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    let n = first.carrier();
    if let Some(bad) = family.iter().find(|r| r.carrier() != n) {
        return Err(Error::CarrierMismatch {
            left: n,
            right: bad.carrier(),
        });
    }
    let mut members: Vec<Relation> = family.to_vec();
    members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    members.dedup();
    let poset = Poset::from_leq(members.len(), |a, b| members[a].le(&members[b]))?;
    let index = members
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), i))
        .collect();
    Ok(InclusionPoset {
        poset: Arc::new(poset),
        members,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `0 < a, b` with `a`, `b` incomparable.
    fn vee() -> Poset {
        Poset::from_pairs(3, &[(0, 1), (0, 2)]).unwrap()
    }

    /// `0 < a, b < 1`.
    pub(crate) fn diamond() -> Poset {
        Poset::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// `0 < a, b < c, d` with both `a`, `b` below both `c`, `d`.
    fn bowtie() -> Poset {
        Poset::from_pairs(5, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4)]).unwrap()
    }

    #[test]
    fn rejects_non_orders() {
        assert!(Poset::from_pairs(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Poset::from_leq(2, |a, b| a != b).is_err());
        assert!(Poset::from_leq(3, |a, b| a == b || (a, b) == (0, 1) || (a, b) == (1, 2)).is_err());
    }

    #[test]
    fn extended_order() {
        let p = Poset::chain(3);
        assert_eq!(p.zero(), Some(0));
        for k in 0..3 {
            assert!(p.leq_ext(Ext::Fin(0), Ext::Fin(k)).unwrap());
            assert!(!p.leq_ext(Ext::Inf, Ext::Fin(k)).unwrap());
            assert!(p.leq_ext(Ext::Fin(k), Ext::Inf).unwrap());
        }
        assert!(p.leq_ext(Ext::Inf, Ext::Inf).unwrap());
        assert!(p.leq_ext(Ext::Fin(5), Ext::Inf).is_err());
    }

    #[test]
    fn directedness() {
        assert!(!vee().is_upward_directed());
        assert!(diamond().is_upward_directed());
        assert!(Poset::chain(4).is_upward_directed());
    }

    #[test]
    fn d_index_examples() {
        assert!(Poset::chain(3).is_d_index().unwrap());
        assert!(!Poset::chain(1).is_d_index().unwrap());
        assert!(!vee().is_d_index().unwrap());
        let no_zero = Poset::from_pairs(2, &[]).unwrap();
        assert_eq!(no_zero.is_d_index(), Err(Error::MissingZero));
    }

    #[test]
    fn meets() {
        let c = Poset::chain(4);
        assert_eq!(c.meet(&[3, 1, 2]).unwrap(), Some(1));
        let d = diamond();
        assert_eq!(d.meet(&[1, 2]).unwrap(), Some(0));
        assert!(d.is_meet_complete());
        let b = bowtie();
        assert_eq!(b.meet(&[3, 4]).unwrap(), None);
        assert!(!b.is_meet_complete());
        assert_eq!(b.is_meet_complete_exhaustive(), Some(false));
        assert_eq!(c.meet(&[]), Err(Error::EmptySet));
    }

    #[test]
    fn totality_and_lattices() {
        let c = Poset::chain(3);
        assert!(c.is_totally_ordered() && c.is_complete_lattice(false));
        let d = diamond();
        assert!(!d.is_totally_ordered());
        assert!(d.is_complete_lattice(false));
        // the bowtie's extension still lacks a meet for {c, d}
        assert!(!bowtie().is_complete_lattice(true));
        // the vee is not a lattice, but adjoining a top makes it one
        assert!(!vee().is_complete_lattice(false));
        assert!(vee().is_complete_lattice(true));
    }

    #[test]
    fn inclusion_posets() {
        let d = Relation::diagonal(3);
        let one = inclusion_poset(std::slice::from_ref(&d)).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.poset().zero(), Some(0));

        let e1 = Relation::symmetric_from_pairs(3, [(0, 1)]).unwrap();
        let e2 = Relation::symmetric_from_pairs(3, [(1, 2)]).unwrap();
        let chain = inclusion_poset(&[e1.clone(), d.clone()]).unwrap();
        assert!(chain.poset().is_totally_ordered());
        assert_eq!(chain.member(0), &d);

        let dia = inclusion_poset(&[d.clone(), e1.clone(), e2.clone(), &e1 | &e2]).unwrap();
        assert_eq!(dia.poset().covers().len(), 4);
        assert!(!dia.poset().is_totally_ordered());
        assert!(dia.poset().is_meet_complete());
        assert!(inclusion_poset(&[]).is_err());
    }

    #[test]
    fn order_maps() {
        let c = Poset::chain(3);
        let up = OrderMap::new(vec![0, 2, 2], &c, &c).unwrap();
        assert!(up.is_increasing());
        let down = OrderMap::new(vec![2, 1, 0], &c, &c).unwrap();
        assert!(!down.is_increasing());
        assert_eq!(up.apply_ext(Ext::Inf), Ext::Inf);
        assert!(OrderMap::new(vec![0, 3, 1], &c, &c).is_err());
    }
}
