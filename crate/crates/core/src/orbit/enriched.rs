//! Orbit and unorbit with the `Z[P₊]`-action on homs, their quotient
//! variants, the filtration on unorbits, and change of enrichment.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{add_scaled, basis_vector, cyclic, orbit, unorbit, Action, CategoryReport, GradedCategory, Orbit, Unorbit, Vector};
use crate::homology::{in_image, IntMatrix};
use crate::pog::Pog;
use crate::scalars::{fmt_rational, Rational};
use crate::{Error, Result};

/// For each object `y`, a morphism `y -> τ y`, natural in `y`.
pub type Continuation = Vec<Vector>;

pub fn check_continuation(c: &GradedCategory, action: &Action, cont: &Continuation) -> Result<()> {
    if cont.len() != c.objects().len() {
        return Err(Error::MissingContinuation(format!("{} maps given for {} objects", cont.len(), c.objects().len())));
    }
    for (y, v) in cont.iter().enumerate() {
        for g in v.keys() {
            let m = &c.gens()[*g];
            if m.source != y || m.target != action.objects[y] {
                return Err(Error::MissingContinuation(format!("{} does not go from {} to its translate", m.name, c.objects()[y])));
            }
        }
    }
    for (f, m) in c.gens().iter().enumerate() {
        let left = c.compose_vec(&basis_vector(f), &cont[m.target]);
        let right = c.compose_vec(&cont[m.source], &action.apply(&basis_vector(f)));
        if left != right {
            return Err(Error::Invalid(format!("the continuation is not natural at {}", m.name)));
        }
    }
    Ok(())
}

fn orbit_enriched(c: &GradedCategory, group: &Pog, action: &Action, cont: &Continuation, window: Option<Rational>) -> Result<Orbit> {
    check_continuation(c, action, cont)?;
    let mut o = orbit(c, group, action, window)?;
    let (step, _) = cyclic(group)?;
    let index: BTreeMap<(usize, Rational), usize> = o.origin.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    o.cat.enrich();
    for i in 0..o.origin.len() {
        let (f, g) = o.origin[i];
        let y = o.cat.gens()[i].target;
        // f: x -> τ^k y, followed by τ^k(c_y): τ^k y -> τ^{k+1} y
        let k = (g / step).to_integer();
        let moved = action.power(k).apply(&cont[y]);
        let v = c.compose_vec(&basis_vector(f), &moved);
        let next = group.normalize(&(g + step));
        let mut w = Vector::new();
        for (h, s) in v {
            if let Some(j) = index.get(&(h, next)) {
                add_scaled(&mut w, &basis_vector(*j), s);
            }
        }
        o.cat.set_shift(i, w)?;
    }
    Ok(o)
}

/// `C[P]` for `P = (1/n)Z`, with `T^a` acting on `hom(x, p y)` by
/// postcomposition with the continuation `p y -> (p + a) y`.
pub fn orbit_pog(c: &GradedCategory, p: &Pog, action: &Action, cont: &Continuation, window: Rational) -> Result<Orbit> {
    if !matches!(p, Pog::Scaled(_)) {
        return Err(Error::Invalid(format!("{p} is not of the form (1/n)Z")));
    }
    orbit_enriched(c, p, action, cont, Some(window))
}

/// `C[P/P₀]` for `P₀ = (1/m)Z` acting trivially.
pub fn orbit_quotient(c: &GradedCategory, p: &Pog, sub: u64, action: &Action, cont: &Continuation) -> Result<Orbit> {
    let group = Pog::quotient(p.clone(), sub)?;
    orbit_enriched(c, &group, action, cont, None)
}

/// `D#P` with the action on the second factor and the continuation
/// `(d, p) -> (d, p + step)` given by `T^{step} 1_d`.
#[derive(Clone, Debug)]
pub struct EnrichedUnorbit {
    pub unorbit: Unorbit,
    /// empty where `(d, p + step)` leaves the window
    pub continuation: Continuation,
}

pub fn unorbit_pog(d: &GradedCategory, window: Option<Rational>) -> Result<EnrichedUnorbit> {
    if !d.is_enriched() {
        return Err(Error::MissingContinuation("the homs carry no T action".to_string()));
    }
    let u = unorbit(d, window)?;
    let index: BTreeMap<(usize, Rational), usize> = u.origin.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut continuation = Vec::new();
    for (x, p) in &u.objects {
        let e = d.unit(*x).ok_or_else(|| Error::Invalid(format!("{} has no unit", d.objects()[*x])))?;
        let mut w = Vector::new();
        if u.object(*x, &d.pog().add(p, &d.step())).is_some() {
            for (h, s) in d.shift_vec(&basis_vector(e)) {
                add_scaled(&mut w, &basis_vector(index[&(h, *p)]), s);
            }
        }
        continuation.push(w);
    }
    Ok(EnrichedUnorbit { unorbit: u, continuation })
}

/// `D#(P/P₀)` for a category graded by a quotient pog.
pub fn unorbit_quotient(d: &GradedCategory) -> Result<EnrichedUnorbit> {
    if !d.pog().is_quotient() {
        return Err(Error::Invalid(format!("{} is not a quotient pog", d.pog())));
    }
    unorbit_pog(d, None)
}

/// Span of `T^c` applied to the grade `r - c` part of `hom(x, y)`, in the
/// coordinates of the grade `r` part.
fn filtration_lattice(d: &GradedCategory, x: usize, y: usize, r: &Rational, c: &Rational) -> Result<(Vec<usize>, IntMatrix)> {
    let target = d.hom_graded(x, y, r);
    let cols: Vec<Vec<i64>> = d
        .hom_graded(x, y, &(r - c))
        .into_iter()
        .map(|g| {
            let v = d.shift_by(&basis_vector(g), c)?;
            Ok(target.iter().map(|t| v.get(t).copied().unwrap_or(0)).collect())
        })
        .collect::<Result<_>>()?;
    Ok((target.clone(), IntMatrix::from_columns(target.len(), &cols)?))
}

fn contained(m: &IntMatrix, v: &[i64]) -> Result<bool> {
    if v.iter().all(|k| *k == 0) {
        return Ok(true);
    }
    if m.cols() == 0 {
        return Ok(false);
    }
    in_image(m, v)
}

/// On the unorbit of `d`, `F^{≥c} hom((x,p), (y,q))` is `T^c` applied to
/// `hom((x,p), (y,q-c))`, i.e. the image of `T^c` in the grade `q - p` part
/// of `hom_D(x, y)`. Checks for `c = 0, step, .., kmax step` that it
/// decreases with `c` and that composition adds levels.
pub fn filtration_check(d: &GradedCategory, kmax: i64) -> Result<CategoryReport> {
    let mut report = CategoryReport::default();
    let step = d.step();
    let mut grades: Vec<Rational> = d.gens().iter().map(|g| g.grade).collect();
    grades.sort();
    grades.dedup();
    let n = d.objects().len();
    let level = |k: i64| step * Rational::from_integer(k);
    for x in 0..n {
        for y in 0..n {
            for r in &grades {
                for k in 0..kmax {
                    let (_, big) = filtration_lattice(d, x, y, r, &level(k))?;
                    let (_, small) = filtration_lattice(d, x, y, r, &level(k + 1))?;
                    for j in 0..small.cols() {
                        report.checked += 1;
                        if !contained(&big, &small.column(j))? {
                            report.failures.push(format!(
                                "F^{} is not inside F^{} in grade {} of {} -> {}",
                                fmt_rational(&level(k + 1)),
                                fmt_rational(&level(k)),
                                fmt_rational(r),
                                d.objects()[x],
                                d.objects()[y]
                            ));
                        }
                    }
                }
            }
        }
    }
    for f in 0..d.gens().len() {
        for g in 0..d.gens().len() {
            let (mf, mg) = (&d.gens()[f], &d.gens()[g]);
            if mf.target != mg.source {
                continue;
            }
            for a in 0..=kmax {
                for b in 0..=kmax - a {
                    let u = d.shift_by(&basis_vector(f), &level(a))?;
                    let v = d.shift_by(&basis_vector(g), &level(b))?;
                    let w = d.compose_vec(&u, &v);
                    let r = d.pog().normalize(&(mf.grade + mg.grade + level(a + b)));
                    let (coords, m) = filtration_lattice(d, mf.source, mg.target, &r, &level(a + b))?;
                    let vec: Vec<i64> = coords.iter().map(|t| w.get(t).copied().unwrap_or(0)).collect();
                    report.checked += 1;
                    if !contained(&m, &vec)? {
                        report.failures.push(format!(
                            "T^{} {} * T^{} {} is not in F^{}",
                            fmt_rational(&level(a)),
                            mf.name,
                            fmt_rational(&level(b)),
                            mg.name,
                            fmt_rational(&level(a + b))
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The functor `D|_P # P -> D # Q` induced by `P ⊂ Q`.
#[derive(Clone, Debug)]
pub struct EnrichmentChange {
    pub source: EnrichedUnorbit,
    pub target: EnrichedUnorbit,
    /// image of each source object and basis morphism
    pub objects: Vec<usize>,
    pub gens: Vec<usize>,
    /// functoriality and equivariance checks
    pub report: CategoryReport,
}

pub fn change_of_enrichment(d: &GradedCategory, sub: &Pog, window: Option<Rational>) -> Result<EnrichmentChange> {
    if !sub.is_subgroup_of(d.pog()) {
        return Err(Error::UnsupportedInclusion { sub: sub.to_string(), sup: d.pog().to_string() });
    }
    let (dp, kept) = d.restrict_grades(sub)?;
    let source = unorbit_pog(&dp, window)?;
    let target = unorbit_pog(d, window)?;
    let (su, tu) = (&source.unorbit, &target.unorbit);
    let objects = su
        .objects
        .iter()
        .map(|(x, p)| tu.object(*x, p).ok_or_else(|| Error::UnknownObject(format!("{}@{}", d.objects()[*x], fmt_rational(p)))))
        .collect::<Result<Vec<_>>>()?;
    let index: BTreeMap<(usize, Rational), usize> = tu.origin.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let gens: Vec<usize> = su.origin.iter().map(|(f, p)| index[&(kept[*f], *p)]).collect();
    let map = |v: &Vector| -> Vector {
        let mut out = Vector::new();
        for (g, s) in v {
            add_scaled(&mut out, &basis_vector(gens[*g]), *s);
        }
        out
    };

    let mut report = CategoryReport::default();
    let (sc, tc) = (&su.cat, &tu.cat);
    for (g, m) in sc.gens().iter().enumerate() {
        let t = &tc.gens()[gens[g]];
        report.checked += 1;
        if t.source != objects[m.source] || t.target != objects[m.target] {
            report.failures.push(format!("{} lands in the wrong hom", m.name));
        }
        for h in 0..sc.gens().len() {
            if sc.gens()[h].source != m.target {
                continue;
            }
            report.checked += 1;
            if map(&sc.compose(g, h)) != tc.compose(gens[g], gens[h]) {
                report.failures.push(format!("composition {} * {} is not preserved", m.name, sc.gens()[h].name));
            }
        }
    }
    for x in 0..sc.objects().len() {
        report.checked += 1;
        if sc.unit(x).map(|e| gens[e]) != tc.unit(objects[x]) {
            report.failures.push(format!("the unit of {} is not preserved", sc.objects()[x]));
        }
    }
    // equivariance for the generator a of P: τ_a then F equals F then τ_a,
    // and continuations go to T^a 1
    let a = dp.step();
    for (g, (f, p)) in su.origin.iter().enumerate() {
        let q = d.pog().add(p, &a);
        if let (Some(s), Some(t)) = (su.origin.iter().position(|o| *o == (*f, q)), index.get(&(kept[*f], q))) {
            report.checked += 1;
            if gens[s] != *t {
                report.failures.push(format!("translation of {} is not preserved", sc.gens()[g].name));
            }
        }
    }
    for (i, (x, p)) in su.objects.iter().enumerate() {
        if source.continuation[i].is_empty() {
            continue;
        }
        let e = d.unit(*x).expect("unit");
        let mut expect = Vector::new();
        for (h, s) in d.shift_by(&basis_vector(e), &a)? {
            add_scaled(&mut expect, &basis_vector(index[&(h, *p)]), s);
        }
        report.checked += 1;
        if map(&source.continuation[i]) != expect {
            report.failures.push(format!("the continuation at {} is not T^{} 1", sc.objects()[i], fmt_rational(&a)));
        }
    }
    Ok(EnrichmentChange { source, target, objects, gens, report })
}
