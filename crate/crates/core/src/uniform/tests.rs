use super::*;

fn sym(n: usize, pairs: &[(usize, usize)]) -> Relation {
    Relation::symmetric_from_pairs(n, pairs.iter().copied()).unwrap()
}

/// `{≡ mod 2^j : j ≤ 3}` on `Z/8`, coarsest first.
fn z8_chain() -> Vec<Relation> {
    [1, 2, 4, 8].iter().map(|&m| congruence(8, m)).collect()
}

fn two_adic(x: usize, y: usize) -> usize {
    let diff = (x + 8 - y) % 8;
    if diff == 0 {
        3
    } else {
        diff.trailing_zeros() as usize
    }
}

#[test]
fn base_validation() {
    assert_eq!(UniformBase::new(3, vec![]), Err(Error::EmptyFamily));
    let missing = Relation::from_pairs(3, [(0, 0), (1, 1)]).unwrap();
    assert!(matches!(UniformBase::new(3, vec![missing]), Err(Error::UniformAxiom(_))));
    // a path is symmetric but has no square root among the members
    let path = sym(3, &[(0, 1), (1, 2)]);
    assert!(matches!(UniformBase::new(3, vec![path.clone()]), Err(Error::UniformAxiom(_))));
    assert!(UniformBase::new(3, vec![path, Relation::diagonal(3)]).is_ok());
}

#[test]
fn generated_filters() {
    let ub = UniformBase::new(3, vec![Relation::diagonal(3)]).unwrap();
    assert_eq!(ub.filter().minimal_members(), vec![Relation::diagonal(3)]);
    assert!(ub.filter().contains(&Relation::full(3)));

    let ub = UniformBase::new(8, z8_chain()).unwrap();
    assert_eq!(ub.zero(), &Relation::diagonal(8));

    let a = sym(4, &[(0, 1), (2, 3)]);
    let b = sym(4, &[(0, 2), (1, 3)]);
    let ub = UniformBase::new(4, vec![a.clone(), b.clone()]).unwrap();
    assert_eq!(ub.filter().minimal_members(), vec![&a & &b]);
    assert!(!ub.is_base());
}

#[test]
fn every_finite_filter_is_trivial() {
    for ub in [
        UniformBase::new(3, vec![Relation::diagonal(3)]).unwrap(),
        UniformBase::new(8, z8_chain()).unwrap(),
    ] {
        let (zero, trivial) = zero_and_triviality(&ub);
        assert!(trivial);
        assert_eq!(&zero, ub.zero());
    }
}

#[test]
fn trivial_metric_regenerates_the_filter() {
    let discrete = UniformBase::new(3, vec![Relation::diagonal(3)]).unwrap();
    let cert = trivial_metric(&discrete).unwrap();
    assert_eq!(cert.metric().get(0, 1), Ext::Fin(2));
    assert!(is_uniform_metric(&cert));

    let coarse = sym(3, &[(0, 1)]);
    let ub = UniformBase::new(3, vec![coarse.clone(), Relation::full(3)]).unwrap();
    let cert = trivial_metric(&ub).unwrap();
    assert_eq!(cert.metric().get(0, 1), Ext::Fin(0));
    assert!(!is_uniform_metric(&cert));

    for ub in [discrete, ub, UniformBase::new(8, z8_chain()).unwrap()] {
        let cert = trivial_metric(&ub).unwrap();
        let back = uniformity_from_metric(&cert).unwrap();
        assert_eq!(back.base.filter(), ub.filter());
        assert_eq!(back.hausdorff, ub.filter().is_hausdorff());
    }
}

#[test]
fn pseudo_uniform_detection() {
    let d = GenMetric::from_fn(8, Arc::new(Poset::chain(4)), |x, y| Ext::Fin(3 - two_adic(x, y))).unwrap();
    let cert = is_pseudo_uniform_metric(&d).unwrap().unwrap();
    assert!(cert.psi_is_identity());
    // the least positive sublevel is ≡ mod 4, not Δ
    assert!(!is_uniform_metric(&cert));

    // D_1 ∘ D_1 reaches (0, 2), which sits at ∞
    let d = GenMetric::from_fn(3, Arc::new(Poset::chain(2)), |x, y| match x.abs_diff(y) {
        0 => Ext::Fin(0),
        1 => Ext::Fin(1),
        _ => Ext::Inf,
    })
    .unwrap();
    assert!(is_pseudo_uniform_metric(&d).unwrap().is_none());

    let only_zero = GenMetric::from_fn(2, Arc::new(Poset::chain(1)), |_, _| Ext::Fin(0)).unwrap();
    assert_eq!(is_pseudo_uniform_metric(&only_zero).unwrap_err(), Error::NotDIndex);
}

#[test]
fn psi_must_avoid_the_zero() {
    let d = GenMetric::from_fn(2, Arc::new(Poset::chain(2)), |x, y| Ext::Fin(usize::from(x != y))).unwrap();
    assert!(DIndexMetricCert::new(d.clone(), vec![None, Some(0)]).is_err());
    assert!(DIndexMetricCert::new(d, vec![None, Some(1)]).is_ok());
}

#[test]
fn z8_metric_from_chain_base() {
    let ub = UniformBase::new(8, z8_chain()).unwrap();
    for mode in [ZeroMode::Literal, ZeroMode::FormalBottom] {
        let um = metric_from_uniform_base(&ub, &z8_chain(), mode).unwrap();
        assert!(um.sublevels_match());
        let d = um.metric();
        for x in 0..8 {
            for y in 0..8 {
                let Ext::Fin(a) = d.get(x, y) else { panic!("finite") };
                if x == y && mode == ZeroMode::FormalBottom {
                    assert_eq!(um.levels[a], None);
                } else {
                    // smallest congruence containing the pair
                    let want = congruence(8, 1 << two_adic(x, y));
                    assert_eq!(um.levels[a].as_ref(), Some(&want));
                }
            }
        }
    }
}

#[test]
fn only_the_formal_zero_regenerates_the_filter() {
    let ub = UniformBase::new(8, z8_chain()).unwrap();
    let formal = metric_from_uniform_base(&ub, &z8_chain(), ZeroMode::FormalBottom).unwrap();
    let back = uniformity_from_metric(&formal.cert).unwrap();
    assert_eq!(back.base.filter(), ub.filter());
    assert!(back.hausdorff);

    // with 0_U as the zero, the positive sublevels stop above 0_U
    let literal = metric_from_uniform_base(&ub, &z8_chain(), ZeroMode::Literal).unwrap();
    let back = uniformity_from_metric(&literal.cert).unwrap();
    assert_ne!(back.base.filter(), ub.filter());
    assert_eq!(back.base.zero(), &congruence(8, 4));
}

#[test]
fn hausdorff_flag_tracks_the_zero() {
    let chain = vec![congruence(4, 2), Relation::full(4)];
    let ub = UniformBase::new(4, chain.clone()).unwrap();
    let um = metric_from_uniform_base(&ub, &chain, ZeroMode::FormalBottom).unwrap();
    let back = uniformity_from_metric(&um.cert).unwrap();
    assert!(!back.hausdorff);
    assert!(!ub.filter().is_hausdorff());
    assert_eq!(back.base.filter(), ub.filter());
}

#[test]
fn base_metric_rejects_open_families() {
    let a = sym(4, &[(0, 1), (2, 3)]);
    let b = sym(4, &[(0, 2), (1, 3)]);
    let ub = UniformBase::new(4, vec![a.clone(), b.clone(), Relation::diagonal(4)]).unwrap();
    // {a, b, Δ} is closed: a ∩ b = Δ
    assert!(metric_from_uniform_base(&ub, &[a.clone(), b.clone(), Relation::diagonal(4)], ZeroMode::FormalBottom).is_ok());
    // without Δ the family is not a base
    assert!(matches!(
        metric_from_uniform_base(&ub, &[a.clone(), b.clone()], ZeroMode::FormalBottom),
        Err(Error::NotABase(_))
    ));
    let c = sym(4, &[(0, 1), (0, 2), (1, 2)]);
    let ub = UniformBase::new(4, vec![a.clone(), c.clone(), Relation::diagonal(4)]).unwrap();
    let d = sym(4, &[(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]);
    // a ∩ c = {01} ∪ Δ is missing
    assert!(matches!(
        metric_from_uniform_base(&ub, &[a, c, d, Relation::diagonal(4)], ZeroMode::FormalBottom),
        Err(Error::NotIntersectionClosed(_))
    ));
}

#[test]
fn closure_base_examples() {
    let ub = UniformBase::new(2, vec![Relation::full(2)]).unwrap();
    assert!(matches!(
        intersection_closure_base(&ub, &[Relation::full(2)], ZeroMode::Literal),
        Err(Error::Degenerate(_))
    ));
    let cb = intersection_closure_base(&ub, &[Relation::full(2)], ZeroMode::FormalBottom).unwrap();
    assert_eq!(cb.base, vec![Relation::full(2)]);
    assert!(cb.is_base);

    let ub = UniformBase::new(8, z8_chain()).unwrap();
    let cb = intersection_closure_base(&ub, &z8_chain(), ZeroMode::FormalBottom).unwrap();
    let mut chain = z8_chain();
    chain.reverse();
    assert_eq!(cb.base, chain);
    let literal = intersection_closure_base(&ub, &z8_chain(), ZeroMode::Literal).unwrap();
    assert_eq!(literal.base.len(), 3);
    assert!(!literal.is_base);
}

#[test]
fn intersection_closed_bases() {
    let ub = UniformBase::new(8, z8_chain()).unwrap();
    let mut chain = z8_chain();
    chain.reverse();
    assert_eq!(has_intersection_closed_base(&ub), Some(chain));

    let a = sym(4, &[(0, 1), (2, 3)]);
    let b = sym(4, &[(0, 2), (1, 3)]);
    let ub = UniformBase::new(4, vec![a, b]).unwrap();
    assert_eq!(has_intersection_closed_base(&ub), Some(vec![Relation::diagonal(4)]));
}

#[test]
fn totally_ordered_path_on_congruence_chains() {
    let ub = UniformBase::new(8, z8_chain()).unwrap();
    let um = totally_ordered_path(&ub, &z8_chain()).unwrap();
    assert!(um.metric().index().is_totally_ordered());
    assert!(um.sublevels_match());
    let back = uniformity_from_metric(&um.cert).unwrap();
    assert_eq!(back.base.filter(), ub.filter());

    let a = sym(4, &[(0, 1), (2, 3)]);
    let b = sym(4, &[(0, 2), (1, 3)]);
    let ub = UniformBase::new(4, vec![a.clone(), b.clone()]).unwrap();
    assert_eq!(totally_ordered_path(&ub, &[a, b]).unwrap_err(), Error::NotTotallyOrdered);
}
