use pogcat_core::ainf::*;
use pogcat_core::fixtures::{cch, dg_category, unit_category, Space};
use pogcat_core::scalars::CoeffMode;
use pogcat_core::{rat, Pog, Rational};
use proptest::prelude::*;

#[test]
fn unit_category_passes() {
    for mode in [CoeffMode::Z, CoeffMode::F2] {
        let r = check_cainf(&unit_category(mode), 4);
        assert!(r.passed(), "{:?}", r.failures);
    }
}

#[test]
fn curved_complexes_pass_through_arity_four() {
    for mode in [CoeffMode::Z, CoeffMode::F2] {
        let c = cch(mode);
        let v = c.object_index("V").unwrap();
        assert!(!c.curvature(&v).is_zero());
        let r = check_cainf(&c, 4);
        assert!(r.passed(), "{}", r.failures[0]);
        assert!(r.checked > 1000);
    }
}

#[test]
fn doubled_unit_is_reported() {
    let mut c = unit_category(CoeffMode::Z);
    let e = c.gen_index("e").unwrap();
    c.set_mu(vec![e, e], Chain::single(e, rat(0, 1), 2)).unwrap();
    let r = check_cainf(&c, 2);
    assert!(r.has(FailureKind::Unit));
}

#[test]
fn sign_errors_are_relation_failures() {
    let mut c = cch(CoeffMode::Z);
    let (key, value) = c.stored_mu().iter().find(|(k, _)| k.len() == 1).map(|(k, v)| (k.clone(), v.clone())).unwrap();
    c.set_mu(key, value.neg()).unwrap();
    let r = check_cainf(&c, 3);
    assert!(r.has(FailureKind::Relation));
    // invisible mod 2
    assert!(check_cainf(&c.with_mode(CoeffMode::F2), 3).passed());
}

#[test]
fn associated_graded_is_idempotent_and_flat() {
    let c = cch(CoeffMode::Z);
    let g = c.gr();
    assert_eq!(g.gr(), g);
    assert!(g.stored_curvature().is_empty());
    assert!(check_cainf(&g, 3).passed());
    // the wrapper agrees with the table
    let wrapped = GrCat(&c);
    let name = |x: &usize| c.gen_name(x);
    assert_eq!(snapshot(&wrapped, 2, &name), snapshot(&g, 2, &name));
}

#[test]
fn flat_part_keeps_uncurved_objects() {
    let c = cch(CoeffMode::Z);
    let f = c.flat();
    assert_eq!(f.object_names(), ["W".to_string()]);
    assert!(check_cainf(&f, 3).passed());
    let full = Full::flat(&c);
    assert_eq!(full.objects(), vec![c.object_index("W").unwrap()]);
}

#[test]
fn identity_functor_is_uncurved() {
    let c = cch(CoeffMode::Z);
    assert!(functor_curvature(&IdentityFunctor(&c), 3).is_empty());
    let u = unit_category(CoeffMode::Z);
    let f = CAinfFunctor::by_names(&u, &u).unwrap();
    assert!(functor_curvature(&f, 3).is_empty());
}

#[test]
fn constant_term_reproduces_the_obstruction() {
    // V with d = 0 and a degree one b of weight 1/2: Φ: flat copy -> C with Φ^0 = b
    let half = rat(1, 2);
    let v = Space::new("V", &[("v0", 0), ("v1", 1), ("v2", 2)], &[]);
    let c = dg_category(Pog::Rationals, rat(2, 1), half, CoeffMode::Z, &[v]).unwrap();
    let f_src = c.clone();
    let mut f = CAinfFunctor::by_names(&f_src, &c).unwrap();
    let b: Chain<usize> =
        [(c.gen_index("v0>v1").unwrap(), half, 1), (c.gen_index("v1>v2").unwrap(), half, 1)].into_iter().collect();
    f.set_phi0(0, b.clone()).unwrap();
    let curv = functor_curvature(&f, 0);
    let mut expect = Chain::new();
    expect.add(&c.curvature(&0));
    expect.add(&mu_chains(&c, std::slice::from_ref(&b)));
    expect.add(&mu_chains(&c, &[b.clone(), b.clone()]));
    expect.add(&mu_chains(&c, &[b.clone(), b.clone(), b.clone()]));
    assert!(!expect.is_zero());
    assert_eq!(curv.len(), 1);
    assert_eq!(curv[0].value, expect);
}

#[test]
fn yoneda_curvature_is_right_multiplication() {
    let c = cch(CoeffMode::Z);
    for y in c.objects() {
        let r = check_module(&Yoneda::new(&c, y), 3);
        assert!(r.passed(), "{:?}", r.failures);
    }
    // for the curved object the module curvature is nonzero somewhere
    let v = c.object_index("V").unwrap();
    let m = Yoneda::new(&c, v);
    let g = c.gen_index("v2>v0").unwrap();
    assert!(!module_curvature(&m, &[g]).is_zero());
}

#[test]
fn gr_homology_of_flat_complex() {
    // End(W) for W = (Z -> Z) is acyclic
    let c = cch(CoeffMode::Z);
    let w = c.object_index("W").unwrap();
    for s in gr_homology(&c, &w, &w).unwrap() {
        assert!(s.homology.iter().all(|(_, h)| h.is_zero()), "{:?}", s);
    }
    // End(V) in Gr has zero differential: ranks 3, 2, 2, 1, 1 spread over degrees -2..2
    let v = c.object_index("V").unwrap();
    let h = gr_homology(&c, &v, &v).unwrap();
    let total: usize = h[0].homology.iter().map(|(_, g)| g.rank).sum();
    assert_eq!(total, 9);
}

fn arb_space(name: &'static str) -> impl Strategy<Value = Space> {
    (1usize..4, proptest::collection::vec((0usize..4, -2i64..3, 0i64..3), 0..4)).prop_map(move |(n, terms)| {
        let basis: Vec<(String, i64)> = (0..n).map(|i| (format!("{}{}", name.to_lowercase(), i), i as i64 - 1)).collect();
        let d = terms
            .into_iter()
            .filter(|(i, _, _)| i + 1 < n)
            .map(|(i, c, s)| (i, i + 1, c, Rational::new(s + 1, 2)))
            .collect();
        Space { name: name.to_string(), basis, d }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_curved_dg_categories_satisfy_the_relations(a in arb_space("A"), b in arb_space("B")) {
        let c = dg_category(Pog::Rationals, rat(2, 1), rat(1, 2), CoeffMode::Z, &[a, b]).unwrap();
        let r = check_cainf(&c, 3);
        prop_assert!(r.passed(), "{}", r.failures[0]);
        let g = c.gr();
        prop_assert!(check_cainf(&g, 3).passed());
    }
}
