use coarsemet::poset::Poset;
use coarsemet::relset::{Relation, Subset};
use proptest::prelude::*;

fn relation(n: usize) -> impl Strategy<Value = Relation> {
    any::<u64>().prop_map(move |bits| Relation::from_fn(n, |i, j| bits >> (i * n + j) & 1 == 1))
}

fn subset(n: usize) -> impl Strategy<Value = Subset> {
    any::<u64>().prop_map(move |bits| Subset::from_bits(n, bits & ((1 << n) - 1)).unwrap())
}

fn triple() -> impl Strategy<Value = (Relation, Relation, Relation, Subset)> {
    (1usize..=6).prop_flat_map(|n| (relation(n), relation(n), relation(n), subset(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn inverse_is_an_involution((a, _, _, _) in triple()) {
        prop_assert_eq!(a.inverse().inverse(), a);
    }

    #[test]
    fn composition_is_associative((a, b, c, _) in triple()) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
    }

    #[test]
    fn composition_distributes_over_union((a, b, c, _) in triple()) {
        prop_assert_eq!(a.then(&(&b | &c)), &a.then(&b) | &a.then(&c));
    }

    #[test]
    fn inverse_reverses_composition((a, b, _, _) in triple()) {
        prop_assert_eq!(a.then(&b).inverse(), b.inverse().then(&a.inverse()));
    }

    #[test]
    fn image_of_a_composition((a, b, _, s) in triple()) {
        let lhs = a.compose(&b).unwrap().image(&s).unwrap();
        let rhs = b.image(&a.image(&s).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symmetrizations_bracket_the_relation((a, _, _, _) in triple()) {
        let cap = a.symmetrize_cap();
        let cup = a.symmetrize_cup();
        prop_assert!(cap.le(&cup));
        prop_assert!(cap.is_symmetric() && cap.is_reflexive());
        prop_assert!(cup.is_symmetric() && cup.is_reflexive());
        prop_assert_eq!(cap == cup, a.is_symmetric());
    }

    #[test]
    fn boolean_operations_agree_with_pairs((a, b, _, _) in triple()) {
        let n = a.carrier();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!((&a | &b).contains(i, j), a.contains(i, j) || b.contains(i, j));
                prop_assert_eq!((&a & &b).contains(i, j), a.contains(i, j) && b.contains(i, j));
                prop_assert_eq!((&a - &b).contains(i, j), a.contains(i, j) && !b.contains(i, j));
            }
        }
        prop_assert_eq!(a.is_subset(&b).unwrap(), (&a - &b).is_empty());
    }

    #[test]
    fn relation_text_round_trips((a, _, _, _) in triple()) {
        let n = a.carrier();
        let text = format!("ground X {n}\n{}", a.to_text("A", "X"));
        let ws = coarsemet::text::Workspace::parse(&text).unwrap();
        prop_assert_eq!(&ws.relation("A").unwrap().relation, &a);
        prop_assert_eq!(ws.to_text(), text);
    }
}

fn poset(m: usize) -> impl Strategy<Value = Poset> {
    any::<u64>().prop_map(move |bits| {
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .enumerate()
            .filter(|(k, _)| bits >> (k % 64) & 1 == 1)
            .map(|(_, p)| p)
            .collect();
        Poset::from_pairs(m, &pairs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pairwise_meet_completeness_matches_exhaustive(p in (1usize..=10).prop_flat_map(poset)) {
        prop_assert_eq!(Some(p.is_meet_complete()), p.is_meet_complete_exhaustive());
    }

    #[test]
    fn meets_are_greatest_lower_bounds(p in (1usize..=8).prop_flat_map(poset), pick in any::<u16>()) {
        let s: Vec<usize> = (0..p.len()).filter(|&a| pick >> a & 1 == 1).collect();
        prop_assume!(!s.is_empty());
        if let Some(m) = p.meet(&s).unwrap() {
            prop_assert!(s.iter().all(|&a| p.leq(m, a)));
            for l in p.lower_bounds(&s).ones() {
                prop_assert!(p.leq(l, m));
            }
        } else {
            // no lower bound dominates all the others
            let lower: Vec<usize> = p.lower_bounds(&s).ones().collect();
            prop_assert!(!lower.iter().any(|&m| lower.iter().all(|&l| p.leq(l, m))));
        }
    }

    #[test]
    fn intersection_closed_families_have_intersections_as_meets(
        n in 2usize..=4,
        seeds in proptest::collection::vec(any::<u64>(), 1..5),
    ) {
        // close the seeds under intersection
        let mut family: Vec<Relation> = seeds
            .iter()
            .map(|b| Relation::from_fn(n, |i, j| b >> (i * n + j) & 1 == 1))
            .collect();
        let mut k = 0;
        while k < family.len() {
            for j in 0..family.len() {
                let meet = &family[k] & &family[j];
                if !family.contains(&meet) {
                    family.push(meet);
                }
            }
            k += 1;
        }
        family.sort();
        family.dedup();
        let ip = coarsemet::poset::inclusion_poset(&family).unwrap();
        prop_assert!(ip.poset().is_meet_complete());
        for a in 0..ip.len() {
            for b in 0..ip.len() {
                let m = ip.poset().meet(&[a, b]).unwrap().unwrap();
                prop_assert_eq!(ip.member(m), &(ip.member(a) & ip.member(b)));
            }
        }
    }
}
