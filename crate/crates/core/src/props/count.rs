//! Exact `cap` and `ent` by exhaustive search.

use std::fmt;

use crate::relset::{Relation, Subset};

/// A natural number or `∞`; `Finite` sorts below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Count {
    Finite(usize),
    Infinite,
}

impl Count {
    pub fn finite(self) -> Option<usize> {
        match self {
            Count::Finite(k) => Some(k),
            Count::Infinite => None,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(k) => write!(f, "{k}"),
            Count::Infinite => f.write_str("inf"),
        }
    }
}

/// Size of a largest independent set among `cand` in the graph `adj`.
pub(crate) fn max_independent(adj: &[u64], cand: u64) -> usize {
    fn go(adj: &[u64], cand: u64, taken: usize, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(taken);
            return;
        }
        if taken + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        let rest = cand & !(1 << v);
        go(adj, rest & !adj[v], taken + 1, best);
        // skipping an isolated vertex never helps
        if rest & adj[v] != 0 {
            go(adj, rest, taken, best);
        }
    }
    let mut best = 0;
    go(adj, cand, 0, &mut best);
    best
}

/// `cap_E(S)`: the largest `m` with `y_1, ..., y_m ∈ S` and `(y_i, y_j) ∉ E`
/// for `i ≠ j`.
///
/// Repetition is allowed, so a point of `S` with `(y, y) ∉ E` makes it `∞`.
pub fn cap(e: &Relation, s: &Subset) -> Count {
    if s.iter().any(|y| !e.contains(y, y)) {
        return Count::Infinite;
    }
    let n = e.carrier();
    let adj: Vec<u64> = (0..n)
        .map(|x| e.row(x).bits() | e.inverse().row(x).bits())
        .collect();
    Count::Finite(max_independent(&adj, s.bits()))
}

/// `ent_E(S)`: the fewest centers `x_1, ..., x_k ∈ X` with
/// `S ⊆ E[x_1] ∪ ... ∪ E[x_k]`, or `∞` when no cover exists.
pub fn ent(e: &Relation, s: &Subset) -> Count {
    let target = s.bits();
    if target == 0 {
        return Count::Finite(0);
    }
    let n = e.carrier();
    // only the part of each row inside S matters
    let mut rows: Vec<u64> = (0..n).map(|x| e.row(x).bits() & target).filter(|&r| r != 0).collect();
    rows.sort_unstable();
    rows.dedup();
    let reach = rows.iter().fold(0, |acc, r| acc | r);
    if reach & target != target {
        return Count::Infinite;
    }
    for k in 1..=rows.len() {
        if covers_with(&rows, target, k, 0) {
            return Count::Finite(k);
        }
    }
    unreachable!("all rows together cover S")
}

fn covers_with(rows: &[u64], remaining: u64, k: usize, from: usize) -> bool {
    if remaining == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    // some chosen row must cover the lowest uncovered point
    let low = remaining & remaining.wrapping_neg();
    rows[from..]
        .iter()
        .filter(|&&r| r & low != 0)
        .any(|&r| covers_with(rows, remaining & !r, k - 1, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairing() -> Relation {
        Relation::symmetric_from_pairs(4, [(0, 1), (2, 3)]).unwrap()
    }

    #[test]
    fn cap_examples() {
        let all = Subset::full(4);
        assert_eq!(cap(&Relation::full(4), &all), Count::Finite(1));
        assert_eq!(cap(&Relation::diagonal(4), &all), Count::Finite(4));
        assert_eq!(cap(&pairing(), &all), Count::Finite(2));
        assert_eq!(cap(&pairing(), &Subset::empty(4)), Count::Finite(0));
        assert_eq!(cap(&Relation::empty(4), &Subset::singleton(4, 2)), Count::Infinite);
    }

    #[test]
    fn ent_examples() {
        let all = Subset::full(4);
        assert_eq!(ent(&pairing(), &Subset::empty(4)), Count::Finite(0));
        assert_eq!(ent(&pairing(), &all), Count::Finite(2));
        assert_eq!(ent(&Relation::full(4), &all), Count::Finite(1));
        // nothing reaches 3
        let e = Relation::from_pairs(4, [(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(ent(&e, &all), Count::Infinite);
        // centers outside S are allowed
        let star = Relation::from_pairs(3, [(0, 1), (0, 2)]).unwrap();
        assert_eq!(ent(&star, &Subset::from_elems(3, [1, 2]).unwrap()), Count::Finite(1));
    }

    #[test]
    fn independent_set_on_a_path() {
        // path 0-1-2-3-4
        let adj = [0b10, 0b101, 0b1010, 0b10100, 0b1000];
        assert_eq!(max_independent(&adj, 0b11111), 3);
        assert_eq!(max_independent(&adj, 0b00110), 1);
    }
}
