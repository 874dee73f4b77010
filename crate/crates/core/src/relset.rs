//! Binary relations on a finite ground set, stored as dense bit matrices.
//!
//! Elements of a ground set of size `n` are always `0..n`; labels are only
//! used for input and output. Row `i` of a [`Relation`] is a `u64` whose bit
//! `j` records the pair `(i, j)`.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::config::{Limits, HARD_MAX_GROUND};
use crate::error::{Error, Result};

/// A finite ground set `{0, .., n-1}` with optional labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    /// Ground set of `n` unlabeled elements, subject to [`Limits::max_ground`].
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGround);
        }
        let limit = Limits::current().max_ground;
        if n > limit {
            return Err(Error::Capacity {
                what: "ground set",
                size: n,
                limit,
            });
        }
        Ok(GroundSet { n, labels: None })
    }

    pub fn with_labels<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut ground = GroundSet::new(labels.len())?;
        let mut seen = std::collections::HashSet::new();
        if !labels.iter().all(|l| seen.insert(l.as_str())) {
            return Err(Error::BadLabels {
                expected: labels.len(),
                got: seen.len(),
            });
        }
        ground.labels = Some(labels);
        Ok(ground)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of element `i`: its label, or the decimal index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    /// Resolves a label or a decimal index to an element.
    pub fn resolve(&self, token: &str) -> Option<usize> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == token) {
                return Some(i);
            }
        }
        token.parse::<usize>().ok().filter(|&i| i < self.n)
    }
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_n(n: usize) {
    assert!(
        (1..=HARD_MAX_GROUND).contains(&n),
        "carrier size {n} outside 1..={HARD_MAX_GROUND}"
    );
}

/// A subset of a finite ground set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    n: usize,
    bits: u64,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        check_n(n);
        Subset { n, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        check_n(n);
        Subset { n, bits: mask(n) }
    }

    pub fn singleton(n: usize, x: usize) -> Self {
        check_n(n);
        assert!(x < n, "element {x} out of range");
        Subset { n, bits: 1 << x }
    }

    /// Builds a subset from raw bits; bits beyond `n` are rejected.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        check_n(n);
        if bits & !mask(n) != 0 {
            return Err(Error::OutOfRange {
                elem: 63 - (bits & !mask(n)).leading_zeros() as usize,
                n,
            });
        }
        Ok(Subset { n, bits })
    }

    pub fn from_elems(n: usize, elems: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_n(n);
        let mut bits = 0u64;
        for e in elems {
            if e >= n {
                return Err(Error::OutOfRange { elem: e, n });
            }
            bits |= 1 << e;
        }
        Ok(Subset { n, bits })
    }

    pub fn carrier(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.n && self.bits >> x & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x < self.n);
        self.bits |= 1 << x;
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset {
            n: self.n,
            bits: self.bits & other.bits,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..self.n).filter(move |&i| bits >> i & 1 == 1)
    }

    /// All subsets of `{0, .., n-1}`, the empty set first.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        check_n(n);
        assert!(n < 64);
        (0..1u64 << n).map(move |bits| Subset { n, bits })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A relation `A ⊆ X × X` on a ground set of `n` elements.
///
/// The derived ordering is only a canonical total order used to make
/// enumerations deterministic; it has nothing to do with inclusion.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    n: usize,
    rows: Vec<u64>,
}

impl Relation {
    /// The empty relation.
    ///
    /// # Panics
    ///
    /// Panics when `n` is zero or larger than 64. Validated sizes come from
    /// [`GroundSet`].
    pub fn empty(n: usize) -> Self {
        check_n(n);
        Relation {
            n,
            rows: vec![0; n],
        }
    }

    pub fn full(n: usize) -> Self {
        check_n(n);
        Relation {
            n,
            rows: vec![mask(n); n],
        }
    }

    /// `Δ_X = {(i, i)}`.
    pub fn diagonal(n: usize) -> Self {
        check_n(n);
        Relation {
            n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut r = Relation::empty(n);
        for (i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::OutOfRange {
                    elem: i.max(j),
                    n,
                });
            }
            r.rows[i] |= 1 << j;
        }
        Ok(r)
    }

    /// `Δ_X` together with the given pairs and their reverses.
    pub fn symmetric_from_pairs(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        Ok(Relation::from_pairs(n, pairs)?.symmetrize_cup())
    }

    /// Builds a relation from a predicate on pairs.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Relation::empty(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    r.rows[i] |= 1 << j;
                }
            }
        }
        r
    }

    pub fn carrier(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.rows[i] >> j & 1 == 1
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        assert!(i < self.n && j < self.n, "pair ({i}, {j}) out of range");
        self.rows[i] |= 1 << j;
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        assert!(i < self.n && j < self.n, "pair ({i}, {j}) out of range");
        self.rows[i] &= !(1 << j);
    }

    /// Row `i` as the subset `A[i]`.
    pub fn row(&self, i: usize) -> Subset {
        Subset {
            n: self.n,
            bits: self.rows[i],
        }
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            let row = self.rows[i];
            (0..self.n)
                .filter(move |&j| row >> j & 1 == 1)
                .map(move |j| (i, j))
        })
    }

    /// `A⁻¹ = {(j, i) : (i, j) ∈ A}`.
    pub fn inverse(&self) -> Relation {
        let mut out = Relation::empty(self.n);
        for (i, j) in self.pairs() {
            out.rows[j] |= 1 << i;
        }
        out
    }

    fn same_carrier(&self, other: &Relation) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::CarrierMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    /// `A ∘ B = {(i, k) : ∃ j, (i, j) ∈ A and (j, k) ∈ B}`.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        self.same_carrier(other)?;
        Ok(self.then(other))
    }

    /// Unchecked [`Relation::compose`].
    ///
    /// # Panics
    ///
    /// Panics if the carriers differ.
    pub fn then(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n, "carrier mismatch in composition");
        let rows = self
            .rows
            .iter()
            .map(|&row| {
                let mut acc = 0u64;
                let mut bits = row;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    acc |= other.rows[j];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        Relation { n: self.n, rows }
    }

    /// `B[S] = {y : (x, y) ∈ B for some x ∈ S}`.
    pub fn image(&self, s: &Subset) -> Result<Subset> {
        if s.n != self.n {
            return Err(Error::CarrierMismatch {
                left: self.n,
                right: s.n,
            });
        }
        Ok(self.image_unchecked(s.bits))
    }

    pub(crate) fn image_unchecked(&self, set: u64) -> Subset {
        let mut acc = 0u64;
        let mut bits = set;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            acc |= self.rows[j];
            bits &= bits - 1;
        }
        Subset {
            n: self.n,
            bits: acc,
        }
    }

    /// Image of a list of elements, rejecting out-of-range ones.
    pub fn image_of_elems(&self, elems: impl IntoIterator<Item = usize>) -> Result<Subset> {
        let s = Subset::from_elems(self.n, elems)?;
        self.image(&s)
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.same_carrier(other)?;
        Ok(self | other)
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.same_carrier(other)?;
        Ok(self & other)
    }

    pub fn difference(&self, other: &Relation) -> Result<Relation> {
        self.same_carrier(other)?;
        Ok(self - other)
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.same_carrier(other)?;
        Ok(self.le(other))
    }

    /// Unchecked inclusion test.
    pub fn le(&self, other: &Relation) -> bool {
        assert_eq!(self.n, other.n, "carrier mismatch in inclusion test");
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.rows[i] >> i & 1 == 1)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.inverse()
    }

    pub fn is_transitive(&self) -> bool {
        self.then(self).le(self)
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    /// `(A ∩ A⁻¹) ∪ Δ_X`.
    pub fn symmetrize_cap(&self) -> Relation {
        &(self & &self.inverse()) | &Relation::diagonal(self.n)
    }

    /// `A ∪ A⁻¹ ∪ Δ_X`.
    pub fn symmetrize_cup(&self) -> Relation {
        &(self | &self.inverse()) | &Relation::diagonal(self.n)
    }

    /// Off-diagonal pairs `(i, j)` with `i < j` contained in the relation.
    pub fn upper_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs().filter(|&(i, j)| i < j).collect()
    }

    /// Every symmetric reflexive relation contained in `self`, in a
    /// deterministic order starting with `Δ_X` (when contained).
    pub fn symmetric_reflexive_subsets(&self) -> Result<Vec<Relation>> {
        let diag = Relation::diagonal(self.n);
        if !diag.le(self) {
            return Ok(Vec::new());
        }
        let pairs: Vec<_> = self
            .upper_pairs()
            .into_iter()
            .filter(|&(i, j)| self.contains(j, i))
            .collect();
        let limit = Limits::current().max_sym_pairs;
        if pairs.len() > limit {
            return Err(Error::Capacity {
                what: "symmetric pair set",
                size: pairs.len(),
                limit,
            });
        }
        let mut out = Vec::with_capacity(1 << pairs.len());
        for choice in 0u64..1 << pairs.len() {
            let mut r = diag.clone();
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if choice >> k & 1 == 1 {
                    r.rows[i] |= 1 << j;
                    r.rows[j] |= 1 << i;
                }
            }
            out.push(r);
        }
        Ok(out)
    }

    /// The text block `relation <name> over <ground>`, one `i j` pair per
    /// line, closed by `end`.
    pub fn to_text(&self, name: &str, ground: &str) -> String {
        let mut s = format!("relation {name} over {ground}\n");
        for (i, j) in self.pairs() {
            s.push_str(&format!("{i} {j}\n"));
        }
        s.push_str("end\n");
        s
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl BitOr for &Relation {
    type Output = Relation;

    fn bitor(self, rhs: &Relation) -> Relation {
        assert_eq!(self.n, rhs.n, "carrier mismatch in union");
        Relation {
            n: self.n,
            rows: self.rows.iter().zip(&rhs.rows).map(|(a, b)| a | b).collect(),
        }
    }
}

impl BitAnd for &Relation {
    type Output = Relation;

    fn bitand(self, rhs: &Relation) -> Relation {
        assert_eq!(self.n, rhs.n, "carrier mismatch in intersection");
        Relation {
            n: self.n,
            rows: self.rows.iter().zip(&rhs.rows).map(|(a, b)| a & b).collect(),
        }
    }
}

impl Sub for &Relation {
    type Output = Relation;

    fn sub(self, rhs: &Relation) -> Relation {
        assert_eq!(self.n, rhs.n, "carrier mismatch in difference");
        Relation {
            n: self.n,
            rows: self.rows.iter().zip(&rhs.rows).map(|(a, b)| a & !b).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: usize, pairs: &[(usize, usize)]) -> Relation {
        Relation::from_pairs(n, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn diagonal_is_exactly_the_identity_pairs() {
        assert_eq!(Relation::diagonal(1).pairs().collect::<Vec<_>>(), [(0, 0)]);
        assert_eq!(
            Relation::diagonal(3).pairs().collect::<Vec<_>>(),
            [(0, 0), (1, 1), (2, 2)]
        );
        assert_eq!(GroundSet::new(0), Err(Error::EmptyGround));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(rel(2, &[(0, 1)]).inverse(), rel(2, &[(1, 0)]));
        assert_eq!(Relation::diagonal(4).inverse(), Relation::diagonal(4));
        assert_eq!(
            rel(3, &[(0, 1), (1, 0), (2, 0)]).inverse(),
            rel(3, &[(1, 0), (0, 1), (0, 2)])
        );
    }

    #[test]
    fn compose_examples() {
        let d = Relation::diagonal(4);
        let e1 = &d | &rel(4, &[(0, 1), (1, 0)]);
        let e2 = &d | &rel(4, &[(1, 2), (2, 1)]);
        let expected = &d | &rel(4, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2)]);
        assert_eq!(e1.compose(&e2).unwrap(), expected);
        assert_eq!(d.compose(&e1).unwrap(), e1);
        assert!(rel(2, &[(0, 1)]).compose(&rel(2, &[(0, 1)])).unwrap().is_empty());
        assert_eq!(
            d.compose(&Relation::diagonal(3)),
            Err(Error::CarrierMismatch { left: 4, right: 3 })
        );
    }

    #[test]
    fn image_examples() {
        let b = &Relation::diagonal(3) | &rel(3, &[(0, 1), (1, 0)]);
        let s = Subset::from_elems(3, [1]).unwrap();
        assert_eq!(b.image(&s).unwrap(), Subset::from_elems(3, [0, 1]).unwrap());
        let t = Subset::from_elems(3, [0, 2]).unwrap();
        assert_eq!(Relation::diagonal(3).image(&t).unwrap(), t);
        assert!(Relation::empty(3).image(&t).unwrap().is_empty());
        assert_eq!(
            b.image_of_elems([3]),
            Err(Error::OutOfRange { elem: 3, n: 3 })
        );
    }

    #[test]
    fn boolean_examples() {
        let a = rel(2, &[(0, 1)]);
        let b = rel(2, &[(1, 0)]);
        assert_eq!(a.union(&b).unwrap(), rel(2, &[(0, 1), (1, 0)]));
        let d = Relation::diagonal(2);
        assert!(d.is_subset(&(&d | &a)).unwrap());
        assert_eq!(a.intersection(&a).unwrap(), a);
        assert_eq!((&(&d | &a) - &d), a);
    }

    #[test]
    fn symmetrization_examples() {
        let a = rel(2, &[(0, 1)]);
        assert_eq!(a.symmetrize_cap(), Relation::diagonal(2));
        assert_eq!(
            a.symmetrize_cup(),
            &Relation::diagonal(2) | &rel(2, &[(0, 1), (1, 0)])
        );
        let sr = &Relation::diagonal(3) | &rel(3, &[(1, 2), (2, 1)]);
        assert_eq!(sr.symmetrize_cap(), sr);
        assert_eq!(sr.symmetrize_cup(), sr);
        let b = rel(3, &[(0, 1), (1, 0), (0, 2)]);
        assert_eq!(
            b.symmetrize_cap(),
            &Relation::diagonal(3) | &rel(3, &[(0, 1), (1, 0)])
        );
    }

    #[test]
    fn symmetric_reflexive_subsets_of_full_relation() {
        let all = Relation::full(3).symmetric_reflexive_subsets().unwrap();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], Relation::diagonal(3));
        assert!(all.iter().all(|r| r.is_symmetric() && r.is_reflexive()));
        assert!(Relation::empty(3).symmetric_reflexive_subsets().unwrap().is_empty());
    }

    #[test]
    fn labels_must_be_distinct() {
        assert!(GroundSet::with_labels(["a", "b", "a"]).is_err());
        let g = GroundSet::with_labels(["a", "b"]).unwrap();
        assert_eq!(g.resolve("b"), Some(1));
        assert_eq!(g.resolve("1"), Some(1));
        assert_eq!(g.resolve("c"), None);
    }
}
