use std::sync::Arc;

use coarsemet::coarse::{
    dominates, is_coarse_metric, is_saturated, metric_from_base, saturated_metric,
    structure_from_metric, CoarseStructure,
};
use coarsemet::hyperspace::hausdorff_metric;
use coarsemet::metric::GenMetric;
use coarsemet::poset::{Ext, Poset};
use coarsemet::relset::{GroundSet, Relation};
use coarsemet::text::Workspace;
use coarsemet::uniform::{metric_from_uniform_base, uniformity_from_metric, UniformBase, ZeroMode};
use coarsemet::valuation::{check_valuation_axioms, Domain, Gamma0, PadicRing};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// A semi-metric on `n` points over a chain of length `k`; a value of `k`
/// stands for `∞`.
fn chain_metric() -> impl Strategy<Value = GenMetric> {
    (2usize..=5, 1usize..=4).prop_flat_map(|(n, k)| {
        proptest::collection::vec(0..=k, n * n).prop_map(move |raw| {
            GenMetric::from_fn(n, Arc::new(Poset::chain(k)), |x, y| {
                let (a, b) = (x.min(y), x.max(y));
                match raw[a * n + b] {
                    _ if a == b => Ext::Fin(0),
                    v if v == k => Ext::Inf,
                    v => Ext::Fin(v),
                }
            })
            .unwrap()
        })
    })
}

/// Pairs of metrics on the same ground set.
fn metric_pair() -> impl Strategy<Value = (GenMetric, GenMetric)> {
    chain_metric().prop_flat_map(|d| {
        let n = d.carrier();
        (Just(d), chain_metric().prop_filter("same carrier", move |e| e.carrier() == n))
    })
}

fn partition() -> impl Strategy<Value = Vec<usize>> {
    (1usize..=5).prop_flat_map(|n| proptest::collection::vec(0..n, n))
}

/// A partition structure with a base: its top plus random controlled sets.
fn structure_with_base() -> impl Strategy<Value = (CoarseStructure, Vec<Relation>)> {
    (partition(), proptest::collection::vec(any::<u64>(), 0..4)).prop_map(|(blocks, masks)| {
        let s = CoarseStructure::from_partition(&blocks).unwrap();
        let n = s.carrier();
        let mut base = vec![s.top().clone()];
        for m in masks {
            let r = Relation::from_fn(n, |i, j| {
                let (a, b) = (i.min(j), i.max(j));
                a == b || m >> (a * n + b) & 1 == 1
            });
            base.push(&r & s.top());
        }
        (s, base)
    })
}

/// A strictly coarsening chain of equivalence relations, finest first.
fn equivalence_chain() -> impl Strategy<Value = (usize, Vec<Relation>)> {
    (2usize..=7, proptest::collection::vec(any::<u64>(), 1..4)).prop_map(|(n, merges)| {
        let mut blocks: Vec<usize> = (0..n).collect();
        let as_relation = |b: &[usize]| Relation::from_fn(n, |i, j| b[i] == b[j]);
        let mut chain = vec![as_relation(&blocks)];
        for m in merges {
            // merge two pseudo-random classes
            let (a, b) = (blocks[(m as usize) % n], blocks[(m >> 8) as usize % n]);
            for x in blocks.iter_mut() {
                if *x == b {
                    *x = a;
                }
            }
            let r = as_relation(&blocks);
            if chain.last() != Some(&r) {
                chain.push(r);
            }
        }
        (n, chain)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sublevels_are_monotone_symmetric_and_reflexive(d in chain_metric()) {
        let n = d.carrier();
        let levels = d.sublevels();
        for a in 0..levels.len() {
            prop_assert!(Relation::diagonal(n).le(&levels[a]));
            prop_assert!(levels[a].is_symmetric());
            if a + 1 < levels.len() {
                prop_assert!(levels[a].le(&levels[a + 1]));
            }
            for z in 0..n {
                let ball = d.ball(z, a).unwrap();
                let image = levels[a].image_of_elems([z]).unwrap();
                prop_assert_eq!(ball, image);
            }
        }
    }

    #[test]
    fn domination_over_chains_is_inclusion_of_finite_pairs((d, e) in metric_pair()) {
        // a chain has a top, so only ∞ can obstruct a witness
        let finite = |m: &GenMetric| induced_top(m);
        let expected = finite(&e).le(&finite(&d));
        prop_assert_eq!(dominates(&d, &e).unwrap().is_dominated(), expected);
    }

    #[test]
    fn hausdorff_metric_extends_the_base_metric(d in chain_metric()) {
        prop_assume!(d.carrier() <= 4 && is_coarse_metric(&d).unwrap().is_some());
        let hm = hausdorff_metric(&d).unwrap();
        prop_assert!(hm.metric.is_semi_metric());
        let n = d.carrier();
        for x in 0..n {
            for y in 0..n {
                let (sx, sy) = (hm.hyperspace.singleton(x), hm.hyperspace.singleton(y));
                prop_assert_eq!(hm.metric.get(sx, sy), d.get(x, y));
            }
        }
    }

    #[test]
    fn base_metrics_recover_the_structure((s, base) in structure_with_base()) {
        let bm = metric_from_base(&s, &base).unwrap();
        prop_assert_eq!(structure_from_metric(&bm.cert()), s.clone());
        prop_assert!(bm.phi.is_increasing());
        for (a, b) in bm.closure.members().iter().enumerate() {
            prop_assert!(b.le(bm.closure.member(bm.phi.apply(a))));
        }
    }

    #[test]
    fn saturated_metrics_recover_the_structure(blocks in partition()) {
        let s = CoarseStructure::from_partition(&blocks).unwrap();
        let sat = saturated_metric(&s).unwrap();
        prop_assert!(is_saturated(&sat.metric).unwrap());
        prop_assert_eq!(structure_from_metric(&sat.cert()), s);
    }

    #[test]
    fn uniform_chains_round_trip((n, chain) in equivalence_chain()) {
        let ub = UniformBase::new(n, chain.clone()).unwrap();
        let um = metric_from_uniform_base(&ub, &chain, ZeroMode::FormalBottom).unwrap();
        prop_assert!(um.sublevels_match());
        let back = uniformity_from_metric(&um.cert).unwrap();
        prop_assert_eq!(back.base.filter(), ub.filter());
        prop_assert_eq!(back.hausdorff, ub.filter().is_hausdorff());
    }

    #[test]
    fn metric_text_round_trips(d in chain_metric()) {
        let mut ws = Workspace::default();
        ws.add_ground("X", GroundSet::new(d.carrier()).unwrap()).unwrap();
        ws.add_poset("I", d.index().clone()).unwrap();
        ws.add_metric("d", "X", "I", d.clone()).unwrap();
        let text = ws.to_text();
        let back = Workspace::parse(&text).unwrap();
        prop_assert_eq!(&back.metric("d").unwrap().metric, &d);
        prop_assert_eq!(back.to_text(), text);
    }
}

fn induced_top(d: &GenMetric) -> Relation {
    let n = d.carrier();
    Relation::from_fn(n, |x, y| !d.get(x, y).is_inf())
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-500i64..=500, 1i64..=64).prop_map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn padic_valuations_satisfy_the_axioms(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        sample in proptest::collection::vec(rational(), 1..12),
    ) {
        let ring = PadicRing::new(p, Domain::Rationals).unwrap();
        let report = check_valuation_axioms(&ring, &sample).unwrap();
        prop_assert!(report.all_hold(), "{report:?}");
        for x in &sample {
            let zero = x == &BigRational::from_integer(0.into());
            prop_assert_eq!(ring.valuate(x).is_omega(), zero);
        }
    }

    #[test]
    fn padic_valuation_counts_the_prime(p in prop::sample::select(vec![2u64, 3, 5]), k in 0u32..6, u in 1i64..50) {
        prop_assume!(u % p as i64 != 0);
        let ring = PadicRing::new(p, Domain::Rationals).unwrap();
        let x = BigRational::from_integer(BigInt::from(p).pow(k) * u);
        prop_assert_eq!(ring.valuate(&x), Gamma0::Fin(i64::from(k)));
        prop_assert_eq!(ring.valuate(&x.recip()), Gamma0::Fin(-i64::from(k)));
    }
}
