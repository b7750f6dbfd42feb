use pogcat_core::fixtures::{bz, circle_module, group_ring, path_category};
use pogcat_core::orbit::*;
use pogcat_core::pog::exhaustion;
use pogcat_core::{rat, Error, Pog, Rational};
use proptest::prelude::*;

fn zmod(n: u64) -> Pog {
    Pog::quotient(Pog::Scaled(n), 1).unwrap()
}

fn all(c: &GradedCategory) -> Vec<usize> {
    (0..c.objects().len()).collect()
}

/// `unorbit(orbit(C))` on the objects `(x, 0)`, renamed back to `C`.
fn back_from_orbit(c: &GradedCategory, o: &Orbit, u: &Unorbit) -> HomTable {
    let keep: Vec<usize> = (0..u.objects.len()).filter(|i| u.objects[*i].1 == rat(0, 1)).collect();
    hom_table(
        &u.cat,
        &keep,
        &|i| c.objects()[u.objects[i].0].clone(),
        &|g| c.gens()[o.origin[u.origin[g].0].0].name.clone(),
        &|_| rat(0, 1),
    )
}

/// `orbit(unorbit(D))` on the objects `(d, 0)`, renamed back to `D`.
fn back_from_unorbit(d: &GradedCategory, u: &Unorbit, o: &Orbit) -> HomTable {
    let keep: Vec<usize> = (0..u.objects.len()).filter(|i| u.objects[*i].1 == rat(0, 1)).collect();
    hom_table(
        &o.cat,
        &keep,
        &|i| d.objects()[u.objects[i].0].clone(),
        &|g| d.gens()[u.origin[o.origin[g].0].0].name.clone(),
        &|g| o.cat.gens()[g].grade,
    )
}

#[test]
fn orbit_of_bz_is_the_group_ring() {
    for n in 1..5 {
        let g = zmod(n);
        let c = bz();
        let o = orbit(&c, &g, &Action::trivial(&c), None).unwrap();
        assert!(o.cat.check().passed());
        let step = rat(1, n as i64);
        let t = hom_table(&o.cat, &[0], &|_| "pt".into(), &|i| format!("t^{}", (o.origin[i].1 / step).to_integer()), &|i| o.cat.gens()[i].grade);
        assert_eq!(t, own_table(&group_ring(&g).unwrap()));
    }
}

#[test]
fn trivial_group_changes_nothing() {
    let c = path_category(Pog::integers(), 2, &[(0, 1, rat(0, 1)), (1, 1, rat(0, 1))], &|i, j| (i + 2 * j + 1) as i64).unwrap();
    let trivial = zmod(1);
    let o = orbit(&c, &trivial, &Action::trivial(&c), None).unwrap();
    let t = hom_table(&o.cat, &all(&c), &|x| c.objects()[x].clone(), &|g| c.gens()[o.origin[g].0].name.clone(), &|_| rat(0, 1));
    assert_eq!(t, own_table(&c));
    let u = unorbit(&c, None).unwrap_err();
    assert!(matches!(u, Error::Invalid(_)));
    let u = unorbit(&o.cat, None).unwrap();
    assert_eq!(back_from_orbit(&c, &o, &u), own_table(&c));
}

#[test]
fn swapping_two_objects() {
    // a: x -> y and b: y -> x, swapped by the action
    let mut c = path_category(Pog::integers(), 2, &[(0, 1, rat(0, 1)), (1, 0, rat(0, 1))], &|_, _| 1).unwrap();
    let a = c.gen_index("a0").unwrap();
    let b = c.gen_index("a1").unwrap();
    let ab = c.gen_index("a0.a1").unwrap();
    let ba = c.gen_index("a1.a0").unwrap();
    let mut gens: Vec<(usize, i64)> = (0..c.gens().len()).map(|g| (g, 1)).collect();
    gens[0] = (c.unit(1).unwrap(), 1);
    gens[c.unit(1).unwrap()] = (0, 1);
    gens[a] = (b, 1);
    gens[b] = (a, 1);
    gens[ab] = (ba, 1);
    gens[ba] = (ab, 1);
    let action = Action { objects: vec![1, 0], gens };
    // infinite cyclic group, window |g| <= 3
    let o = orbit(&c, &Pog::integers(), &action, Some(rat(3, 1))).unwrap();
    assert!(o.cat.check().passed());
    for x in 0..2 {
        for y in 0..2 {
            let by_hand: usize = (-3i64..=3).map(|k| c.hom(x, action.power(k).objects[y]).len()).sum();
            assert_eq!(o.cat.hom(x, y).len(), by_hand);
        }
    }
    // the finite quotient of order two is fine, the trivial group is not
    let o = orbit(&c, &zmod(2), &action, None).unwrap();
    assert!(o.cat.check().passed());
    let e = orbit(&c, &zmod(1), &action, None).unwrap_err();
    assert!(matches!(e, Error::KernelViolation { .. }));
    let _ = c.add_object("extra");
    assert!(matches!(orbit(&c, &zmod(2), &action, None), Err(Error::ActionNotClosed(_))));
}

#[test]
fn unorbit_of_a_group_ring() {
    for n in 1..5 {
        let d = group_ring(&zmod(n)).unwrap();
        let u = unorbit(&d, None).unwrap();
        assert_eq!(u.objects.len(), n as usize);
        for x in 0..n as usize {
            for y in 0..n as usize {
                assert_eq!(u.cat.hom(x, y).len(), 1);
            }
        }
        assert!(u.cat.check().passed());
    }
}

#[test]
fn unorbit_of_the_trivial_grading() {
    let d = group_ring(&zmod(1)).unwrap();
    let u = unorbit(&d, None).unwrap();
    let t = hom_table(&u.cat, &[0], &|_| "pt".into(), &|g| d.gens()[u.origin[g].0].name.clone(), &|_| rat(0, 1));
    assert_eq!(t, own_table(&d));
}

#[test]
fn orbit_pog_of_bz_is_a_polynomial_ring() {
    let c = bz();
    let cont = vec![basis_vector(0)];
    let o = orbit_pog(&c, &Pog::integers(), &Action::trivial(&c), &cont, rat(3, 1)).unwrap();
    assert!(o.cat.check().passed());
    // Z[t, t^-1] in degrees -3..3, t acting by shifting
    let mut r = GradedCategory::new(Pog::integers()).unwrap();
    r.set_window(rat(-3, 1), rat(3, 1));
    let x = r.add_object("pt").unwrap();
    let t: Vec<usize> = (-3..=3).map(|k| r.add_gen(&format!("t^{}", k), x, x, rat(k, 1)).unwrap()).collect();
    r.set_unit(x, t[3]).unwrap();
    r.enrich();
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            if a != 0 && b != 0 && (a + b).abs() <= 3 {
                r.set_comp(t[(a + 3) as usize], t[(b + 3) as usize], basis_vector(t[(a + b + 3) as usize])).unwrap();
            }
        }
        if a < 3 {
            r.set_shift(t[(a + 3) as usize], basis_vector(t[(a + 4) as usize])).unwrap();
        }
    }
    let name = |i: usize| format!("t^{}", o.origin[i].1);
    assert_eq!(hom_table(&o.cat, &[0], &|_| "pt".into(), &name, &|i| o.cat.gens()[i].grade), own_table(&r));
    // the continuation (pt, 0) -> (pt, 1) of the unorbit is T * 1
    let u = unorbit_pog(&o.cat, Some(rat(2, 1))).unwrap();
    let at = u.unorbit.object(0, &rat(0, 1)).unwrap();
    let cont = &u.continuation[at];
    assert_eq!(cont.len(), 1);
    let (g, k) = cont.iter().next().unwrap();
    assert_eq!(*k, 1);
    assert_eq!(u.unorbit.cat.gens()[*g].name, "1[1]@0");
}

#[test]
fn missing_continuations_are_reported() {
    let c = bz();
    let e = orbit_pog(&c, &Pog::integers(), &Action::trivial(&c), &vec![], rat(1, 1)).unwrap_err();
    assert!(matches!(e, Error::MissingContinuation(_)));
    assert!(matches!(unorbit_pog(&group_ring(&zmod(2)).unwrap(), None), Err(Error::MissingContinuation(_))));
}

#[test]
fn half_integer_quotient_of_bz() {
    let c = bz();
    let o = orbit_quotient(&c, &Pog::Scaled(2), 1, &Action::trivial(&c), &vec![basis_vector(0)]).unwrap();
    assert!(o.cat.check().passed());
    let grades: Vec<Rational> = o.cat.gens().iter().map(|g| g.grade).collect();
    assert_eq!(grades, vec![rat(0, 1), rat(1, 2)]);
    let t = hom_table(&o.cat, &[0], &|_| "pt".into(), &|i| format!("t^{}", (o.origin[i].1 * 2).to_integer()), &|i| o.cat.gens()[i].grade);
    assert_eq!(t, own_table(&circle_module(2).unwrap()));
    let u = unorbit_quotient(&o.cat).unwrap();
    assert!(filtration_check(&o.cat, 4).unwrap().passed());
    assert!(u.unorbit.action.is_some());
}

#[test]
fn change_of_enrichment_keeps_integer_grades() {
    let c = bz();
    let d = orbit_pog(&c, &Pog::Scaled(2), &Action::trivial(&c), &vec![basis_vector(0)], rat(2, 1)).unwrap().cat;
    let same = change_of_enrichment(&d, &Pog::Scaled(2), Some(rat(1, 1))).unwrap();
    assert!(same.report.passed());
    assert!(same.gens.iter().enumerate().all(|(i, g)| i == *g));
    let ch = change_of_enrichment(&d, &Pog::integers(), Some(rat(1, 1))).unwrap();
    assert!(ch.report.passed(), "{:?}", ch.report.failures);
    for g in &ch.gens {
        let (f, _) = ch.target.unorbit.origin[*g];
        assert!(d.gens()[f].grade.is_integer());
    }
    let integer_homs = ch.target.unorbit.origin.iter().filter(|(f, p)| d.gens()[*f].grade.is_integer() && p.is_integer()).count();
    assert_eq!(ch.gens.len(), integer_homs);
    assert!(change_of_enrichment(&d, &Pog::Scaled(4), None).is_err());
}

#[test]
fn reconstruction_from_factorial_exhaustions() {
    let q = Pog::parse("Q%Z").unwrap();
    // denominators up to 6
    let d = circle_module(60).unwrap();
    let window: Vec<Rational> = (1..=6).flat_map(|b| (0..b).map(move |a| rat(a, b))).collect();
    let r = reconstruct(&d, &exhaustion(&q, 5).unwrap(), &window).unwrap();
    assert_eq!(r.status, Status::Pass, "{:?}", r.mismatches);
    let r = reconstruct(&d, &exhaustion(&q, 3).unwrap(), &window).unwrap();
    assert_eq!(r.status, Status::Inconclusive);

    // a single grade: every term is already the target
    let d = circle_module(1).unwrap();
    let r = reconstruct(&d, &exhaustion(&q, 3).unwrap(), &[rat(0, 1)]).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert!(r.terms.windows(2).all(|w| w[0].objects == w[1].objects && w[0].morphisms == w[1].morphisms));

    // (1/6)-supported: dropping the last step loses morphisms
    let d = circle_module(6).unwrap();
    let window: Vec<Rational> = (0..6).map(|a| rat(a, 6)).collect();
    let full = reconstruct(&d, &exhaustion(&q, 3).unwrap(), &window).unwrap();
    assert_eq!(full.status, Status::Pass);
    let short = reconstruct(&d, &exhaustion(&q, 2).unwrap(), &window).unwrap();
    assert_ne!(short.status, Status::Pass);
    assert!(!short.mismatches.is_empty());
    assert!(short.terms.last().unwrap().morphisms < full.terms.last().unwrap().morphisms);
}

fn arrows_strategy(objects: usize, grades: i64) -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0..objects, 0..objects, -grades..=grades), 0..=3)
}

/// A random truncated path category with at most six non-identity basis
/// morphisms.
fn random_category(pog: &Pog, objects: usize, arrows: &[(usize, usize, i64)], seed: i64) -> Option<GradedCategory> {
    let step = cyclic(pog).unwrap().0;
    let arrows: Vec<(usize, usize, Rational)> = arrows.iter().map(|(s, t, k)| (*s, *t, step * Rational::from_integer(*k))).collect();
    let c = path_category(pog.clone(), objects, &arrows, &|i, j| ((seed + 3 * i as i64 + 5 * j as i64) % 5) - 2).ok()?;
    let extra = c.gens().len() - objects;
    (extra <= 6).then_some(c)
}

fn plain_round_trip(c: &GradedCategory, group: &Pog, window: Option<Rational>) {
    let o = orbit(c, group, &Action::trivial(c), window).unwrap();
    assert!(o.cat.check().passed());
    let u = unorbit(&o.cat, window.map(|w| w * 2)).unwrap();
    assert_eq!(back_from_orbit(c, &o, &u), own_table(c));
}

fn pog_round_trip(c: &GradedCategory, p: &Pog, window: Rational) {
    let cont: Continuation = (0..c.objects().len()).map(|x| basis_vector(c.unit(x).unwrap())).collect();
    let o = orbit_pog(c, p, &Action::trivial(c), &cont, window).unwrap();
    assert!(o.cat.check().passed());
    let u = unorbit_pog(&o.cat, Some(window)).unwrap();
    assert_eq!(back_from_orbit(c, &o, &u.unorbit), own_table(c));
    let step = o.cat.step();
    for (i, (x, p)) in u.unorbit.objects.iter().enumerate() {
        if *p + step <= window {
            let name = format!("{}[{}]@{}", c.gens()[c.unit(*x).unwrap()].name, pogcat_core::scalars::fmt_rational(&step), pogcat_core::scalars::fmt_rational(p));
            let g = u.unorbit.cat.gen_index(&name).unwrap();
            assert_eq!(u.continuation[i], basis_vector(g));
        }
    }
}

fn quotient_round_trip(c: &GradedCategory, p: &Pog, sub: u64) {
    let cont: Continuation = (0..c.objects().len()).map(|x| basis_vector(c.unit(x).unwrap())).collect();
    let d = orbit_quotient(c, p, sub, &Action::trivial(c), &cont).unwrap();
    assert!(d.cat.check().passed());
    let u = unorbit_quotient(&d.cat).unwrap();
    assert_eq!(back_from_orbit(c, &d, &u.unorbit), own_table(c));
    assert!(filtration_check(&d.cat, 3).unwrap().passed());
    // and back again: orbit of the unorbit recovers D with its T action
    let action = u.unorbit.action.clone().unwrap();
    let again = orbit_quotient(&u.unorbit.cat, p, sub, &action, &u.continuation).unwrap();
    assert_eq!(back_from_unorbit(&d.cat, &u.unorbit, &again), own_table(&d.cat));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn orbit_and_unorbit_are_inverse(objects in 1usize..=3, arrows in arrows_strategy(3, 2), seed in 0i64..50, which in 0usize..3) {
        let arrows: Vec<_> = arrows.into_iter().filter(|(s, t, _)| *s < objects && *t < objects).collect();
        let plain_arrows: Vec<_> = arrows.iter().map(|(s, t, _)| (*s, *t, 0)).collect();
        let Some(c) = random_category(&Pog::integers(), objects, &plain_arrows, seed) else { return Ok(()) };
        let quarter = Pog::quotient(Pog::Scaled(4), 1).unwrap();
        match which {
            0 => {
                plain_round_trip(&c, &Pog::integers(), Some(rat(2, 1)));
                plain_round_trip(&c, &Pog::Scaled(2), Some(rat(1, 1)));
                plain_round_trip(&c, &quarter, None);
                // graded D over a finite group: orbit(unorbit(D)) = D
                if let Some(d) = random_category(&quarter, objects, &arrows, seed) {
                    let u = unorbit(&d, None).unwrap();
                    let o = orbit(&u.cat, &quarter, u.action.as_ref().unwrap(), None).unwrap();
                    prop_assert!(o.cat.check().passed());
                    prop_assert_eq!(back_from_unorbit(&d, &u, &o), own_table(&d));
                }
            }
            1 => {
                pog_round_trip(&c, &Pog::integers(), rat(2, 1));
                pog_round_trip(&c, &Pog::Scaled(2), rat(1, 1));
            }
            _ => quotient_round_trip(&c, &Pog::Scaled(4), 1),
        }
    }

    #[test]
    fn reconstruction_covers_small_denominators(n in 1u64..=6, picks in prop::collection::vec(0i64..60, 1..6)) {
        let q = Pog::parse("Q%Z").unwrap();
        let d = circle_module(60).unwrap();
        let window: Vec<Rational> = picks.iter().map(|k| rat(k % n as i64, n as i64)).collect();
        // (1/n!)Z contains every (1/b)Z with b <= n
        let r = reconstruct(&d, &exhaustion(&q, n as usize).unwrap(), &window).unwrap();
        prop_assert_eq!(r.status, Status::Pass);
    }
}
