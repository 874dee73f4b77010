use std::sync::Arc;

use super::*;
use crate::coarse::{metric_from_base, saturated_metric};
use crate::poset::Poset;

fn sym(n: usize, pairs: &[(usize, usize)]) -> Relation {
    Relation::symmetric_from_pairs(n, pairs.iter().copied()).unwrap()
}

fn set(hs: &Hyperspace, elems: &[usize]) -> usize {
    hs.index_of(&Subset::from_elems(hs.base(), elems.iter().copied()).unwrap())
        .unwrap()
}

#[test]
fn hyperspace_indexing() {
    let hs = Hyperspace::new(3).unwrap();
    assert_eq!(hs.len(), 7);
    assert_eq!(hs.singleton(2), set(&hs, &[2]));
    assert_eq!(hs.labels()[set(&hs, &[0, 2])], "{0,2}");
    assert!(matches!(Hyperspace::new(5), Err(Error::Capacity { .. })));
}

#[test]
fn check_entourage_examples() {
    let hs = Hyperspace::new(3).unwrap();
    assert_eq!(check_entourage(&hs, &Relation::diagonal(3)).unwrap(), Relation::diagonal(7));
    assert_eq!(check_entourage(&hs, &Relation::full(3)).unwrap(), Relation::full(7));
    let f = check_entourage(&hs, &sym(3, &[(0, 1)])).unwrap();
    assert!(f.contains(set(&hs, &[0]), set(&hs, &[1])));
    assert!(!f.contains(set(&hs, &[0]), set(&hs, &[2])));
    assert!(f.contains(set(&hs, &[0]), set(&hs, &[0, 1])));
}

#[test]
fn check_entourage_is_monotone() {
    let hs = Hyperspace::new(3).unwrap();
    let all = Relation::full(3).symmetric_reflexive_subsets().unwrap();
    for e in &all {
        for f in &all {
            if e.le(f) {
                let (ce, cf) = (check_entourage(&hs, e).unwrap(), check_entourage(&hs, f).unwrap());
                assert!(ce.le(&cf));
            }
        }
    }
}

#[test]
fn hausdorff_structures() {
    let min = CoarseStructure::minimal(3);
    assert_eq!(hausdorff_structure(&min).unwrap(), CoarseStructure::minimal(7));

    let s = CoarseStructure::generate(3, &[sym(3, &[(0, 1)])]).unwrap();
    let hs = Hyperspace::new(3).unwrap();
    let direct = CoarseStructure::generate(
        7,
        &[
            check_entourage(&hs, &Relation::diagonal(3)).unwrap(),
            check_entourage(&hs, &sym(3, &[(0, 1)])).unwrap(),
        ],
    )
    .unwrap();
    assert_eq!(hausdorff_structure(&s).unwrap(), direct);
    assert_eq!(
        hausdorff_structure_from_base(&s, &[sym(3, &[(0, 1)])]).unwrap(),
        direct
    );
}

#[test]
fn hausdorff_metric_on_two_chain() {
    // index {Δ < F}, F = Δ ∪ {01, 10}
    let d = GenMetric::from_fn(3, Arc::new(Poset::chain(2)), |x, y| match (x.min(y), x.max(y)) {
        (a, b) if a == b => Ext::Fin(0),
        (0, 1) => Ext::Fin(1),
        _ => Ext::Inf,
    })
    .unwrap();
    let hm = hausdorff_metric(&d).unwrap();
    let hs = hm.hyperspace;
    let v = |a: &[usize], b: &[usize]| hm.metric.get(set(&hs, a), set(&hs, b));
    assert_eq!(v(&[0], &[1]), Ext::Fin(1));
    assert_eq!(v(&[0], &[2]), Ext::Inf);
    assert_eq!(v(&[0, 1], &[0, 1]), Ext::Fin(0));
    assert!(hm.metric.is_semi_metric());
    assert!(hm.cert.is_some());
    for x in 0..3 {
        for y in 0..3 {
            let single = hm.metric.get(hs.singleton(x), hs.singleton(y));
            assert!(d.index().leq_ext(single, d.get(x, y)).unwrap());
            assert_eq!(single, d.get(x, y));
        }
    }
}

#[test]
fn hausdorff_metric_needs_meets() {
    let idx = Arc::new(
        Poset::from_pairs(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap(),
    );
    let d = GenMetric::from_fn(2, idx, |x, y| Ext::Fin(if x == y { 0 } else { 5 })).unwrap();
    assert_eq!(hausdorff_metric(&d).unwrap_err(), Error::NotMeetComplete);
}

#[test]
fn diamond_metric_is_not_certified() {
    let diamond = diamond_pool().remove(0);
    let d = GenMetric::from_fn(2, diamond, |x, y| Ext::Fin(if x == y { 0 } else { 1 })).unwrap();
    let hm = hausdorff_metric(&d).unwrap();
    assert!(hm.cert.is_none());
    assert!(check_induced_hausdorff_structure(&d).is_err());
}

/// Chains `Δ ⊆ E_1 ⊆ ... ⊆ top` of symmetric reflexive controlled sets.
fn chain_bases(s: &CoarseStructure) -> Vec<Vec<Relation>> {
    let members = s.members_sym().unwrap();
    let top = s.top().clone();
    let mut out = vec![vec![top.clone()]];
    for e in &members {
        if e != &top {
            out.push(vec![e.clone(), top.clone()]);
        }
        for f in &members {
            if e.le(f) && e != f && f != &top {
                out.push(vec![e.clone(), f.clone(), top.clone()]);
            }
        }
    }
    out
}

#[test]
fn totally_ordered_fixtures_induce_the_hausdorff_structure() {
    for mask in [0u64, 0b000_000_010, 0b111_111_111] {
        let gen = Relation::from_fn(3, |i, j| mask >> (i * 3 + j) & 1 == 1);
        let s = CoarseStructure::generate(3, &[gen]).unwrap();
        for base in chain_bases(&s) {
            let bm = metric_from_base(&s, &base).unwrap();
            assert!(bm.closure.poset().is_totally_ordered());
            let cmp = check_induced_hausdorff_structure(&bm.metric).unwrap();
            assert!(cmp.equal, "base {base:?}");
            assert_eq!(cmp.from_structure, hausdorff_structure(&s).unwrap());
        }
    }
    let sat = saturated_metric(&CoarseStructure::minimal(3)).unwrap();
    assert!(check_induced_hausdorff_structure(&sat.metric).unwrap().equal);
}

#[test]
fn search_over_chains_finds_nothing() {
    let pool = vec![Arc::new(Poset::chain(2)), Arc::new(Poset::chain(3))];
    let report = search_counterexample(3, &pool, 100_000).unwrap();
    assert!(matches!(report.outcome, SearchOutcome::NoneWithinBounds));
    assert!(report.examined > 0);

    let empty = search_counterexample(3, &[], 10).unwrap();
    assert!(matches!(empty.outcome, SearchOutcome::NoneWithinBounds));
    assert_eq!(empty.steps, 0);
}

#[test]
fn search_respects_the_budget() {
    let report = search_counterexample(3, &lattice_pool(), 5).unwrap();
    assert!(report.steps <= 5);
    assert!(!matches!(report.outcome, SearchOutcome::NoneWithinBounds) || report.steps < 5);
}
