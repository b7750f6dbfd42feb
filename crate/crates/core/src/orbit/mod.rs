//! Orbit categories `C[G]`, unorbits `D#G` and their enriched variants.
//!
//! Every group here is cyclic: `(1/n)Z`, or its quotient by `(1/m)Z`, with
//! generator `step = 1/n`. An action is the automorphism `τ` by which `step`
//! acts. Infinite groups are only ever seen through a finite window of grades.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::pog::Pog;
use crate::scalars::{fmt_rational, Rational};
use crate::{Error, Result};

pub mod enriched;
pub mod reconstruct;

pub use enriched::*;
pub use reconstruct::*;

/// A finite combination of basis morphisms.
pub type Vector = BTreeMap<usize, i64>;

pub fn add_scaled(out: &mut Vector, v: &Vector, c: i64) {
    for (g, k) in v {
        let e = out.entry(*g).or_insert(0);
        *e += c * k;
        if *e == 0 {
            out.remove(g);
        }
    }
}

pub fn basis_vector(g: usize) -> Vector {
    let mut v = Vector::new();
    v.insert(g, 1);
    v
}

/// `(step, order)` of a cyclic pog; the order is `None` for `(1/n)Z`.
pub fn cyclic(p: &Pog) -> Result<(Rational, Option<i64>)> {
    match p {
        Pog::Scaled(n) => Ok((Rational::new(1, *n as i64), None)),
        Pog::Quotient { base, sub } => match **base {
            Pog::Scaled(n) => Ok((Rational::new(1, n as i64), Some((n / sub) as i64))),
            _ => Err(Error::Invalid(format!("{p} is not cyclic"))),
        },
        Pog::Rationals => Err(Error::Invalid("Q is not cyclic; use a window (1/n)Z".to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub grade: Rational,
}

/// A linear category with finitely many basis morphisms, graded by a cyclic
/// pog, optionally enriched by an action of `T^{step}` raising grades.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCategory {
    pog: Pog,
    step: Rational,
    /// grades outside `[lo, hi]` have been truncated away
    window: Option<(Rational, Rational)>,
    objects: Vec<String>,
    gens: Vec<Morphism>,
    comp: BTreeMap<(usize, usize), Vector>,
    units: BTreeMap<usize, usize>,
    shift: Option<BTreeMap<usize, Vector>>,
}

impl GradedCategory {
    pub fn new(pog: Pog) -> Result<Self> {
        let (step, _) = cyclic(&pog)?;
        Ok(GradedCategory {
            pog,
            step,
            window: None,
            objects: Vec::new(),
            gens: Vec::new(),
            comp: BTreeMap::new(),
            units: BTreeMap::new(),
            shift: None,
        })
    }

    /// Everything in grade zero.
    pub fn plain() -> Self {
        GradedCategory::new(Pog::integers()).expect("Z is cyclic")
    }

    pub fn set_window(&mut self, lo: Rational, hi: Rational) {
        self.window = Some((lo, hi));
    }

    pub fn window(&self) -> Option<(Rational, Rational)> {
        self.window
    }

    pub fn in_window(&self, g: &Rational) -> bool {
        self.window.is_none_or(|(lo, hi)| lo <= *g && *g <= hi)
    }

    pub fn pog(&self) -> &Pog {
        &self.pog
    }

    pub fn step(&self) -> Rational {
        self.step
    }

    pub fn add_object(&mut self, name: &str) -> Result<usize> {
        if self.objects.iter().any(|o| o == name) {
            return Err(Error::Invalid(format!("duplicate object {name}")));
        }
        self.objects.push(name.to_string());
        Ok(self.objects.len() - 1)
    }

    pub fn add_gen(&mut self, name: &str, source: usize, target: usize, grade: Rational) -> Result<usize> {
        if source >= self.objects.len() || target >= self.objects.len() {
            return Err(Error::UnknownObject(format!("{source} or {target}")));
        }
        if self.gens.iter().any(|g| g.name == name) {
            return Err(Error::Invalid(format!("duplicate morphism {name}")));
        }
        self.pog.check(&grade)?;
        let grade = self.pog.normalize(&grade);
        if !self.in_window(&grade) {
            return Err(Error::Invalid(format!("grade {} of {name} lies outside the window", fmt_rational(&grade))));
        }
        self.gens.push(Morphism { name: name.to_string(), source, target, grade });
        Ok(self.gens.len() - 1)
    }

    pub fn set_unit(&mut self, x: usize, g: usize) -> Result<()> {
        let m = &self.gens[g];
        if m.source != x || m.target != x || m.grade != Rational::from_integer(0) {
            return Err(Error::Invalid(format!("{} cannot be the unit of {}", m.name, self.objects[x])));
        }
        self.units.insert(x, g);
        Ok(())
    }

    /// `f` then `g`.
    pub fn set_comp(&mut self, f: usize, g: usize, v: Vector) -> Result<()> {
        let (a, b) = (&self.gens[f], &self.gens[g]);
        if a.target != b.source {
            return Err(Error::Invalid(format!("{} and {} are not composable", a.name, b.name)));
        }
        let grade = self.pog.add(&a.grade, &b.grade);
        for h in v.keys() {
            let c = &self.gens[*h];
            if c.source != a.source || c.target != b.target || c.grade != grade {
                return Err(Error::GradingIncompatible(format!("{} * {} has a term {}", a.name, b.name, c.name)));
            }
        }
        let v: Vector = v.into_iter().filter(|(_, k)| *k != 0).collect();
        if v.is_empty() {
            self.comp.remove(&(f, g));
        } else {
            self.comp.insert((f, g), v);
        }
        Ok(())
    }

    /// `T^{step} g`, making the category enriched.
    pub fn set_shift(&mut self, g: usize, v: Vector) -> Result<()> {
        let a = &self.gens[g];
        let grade = self.pog.add(&a.grade, &self.step);
        for h in v.keys() {
            let c = &self.gens[*h];
            if c.source != a.source || c.target != a.target || c.grade != grade {
                return Err(Error::GradingIncompatible(format!("T {} has a term {}", a.name, c.name)));
            }
        }
        let shift = self.shift.get_or_insert_with(BTreeMap::new);
        let v: Vector = v.into_iter().filter(|(_, k)| *k != 0).collect();
        shift.insert(g, v);
        Ok(())
    }

    /// Marks the category as enriched with `T` acting by zero unless set.
    pub fn enrich(&mut self) {
        self.shift.get_or_insert_with(BTreeMap::new);
    }

    pub fn is_enriched(&self) -> bool {
        self.shift.is_some()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn gens(&self) -> &[Morphism] {
        &self.gens
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn unit(&self, x: usize) -> Option<usize> {
        self.units.get(&x).copied()
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.gens.len()).filter(|g| self.gens[*g].source == x && self.gens[*g].target == y).collect()
    }

    /// The grade-`p` part of `hom(x, y)`.
    pub fn hom_graded(&self, x: usize, y: usize, p: &Rational) -> Vec<usize> {
        let p = self.pog.normalize(p);
        self.hom(x, y).into_iter().filter(|g| self.gens[*g].grade == p).collect()
    }

    pub fn is_plain(&self) -> bool {
        self.gens.iter().all(|g| g.grade == Rational::from_integer(0))
    }

    pub fn compose(&self, f: usize, g: usize) -> Vector {
        if self.gens[f].target != self.gens[g].source {
            return Vector::new();
        }
        if self.units.get(&self.gens[f].target) == Some(&g) {
            return basis_vector(f);
        }
        if self.units.get(&self.gens[f].source) == Some(&f) {
            return basis_vector(g);
        }
        self.comp.get(&(f, g)).cloned().unwrap_or_default()
    }

    pub fn compose_vec(&self, u: &Vector, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (f, a) in u {
            for (g, b) in v {
                add_scaled(&mut out, &self.compose(*f, *g), a * b);
            }
        }
        out
    }

    /// `T^{step} u`; zero in an unenriched category.
    pub fn shift_vec(&self, u: &Vector) -> Vector {
        let mut out = Vector::new();
        if let Some(shift) = &self.shift {
            for (g, a) in u {
                if let Some(v) = shift.get(g) {
                    add_scaled(&mut out, v, *a);
                }
            }
        }
        out
    }

    /// `T^a u` for `a` a non-negative multiple of the step.
    pub fn shift_by(&self, u: &Vector, a: &Rational) -> Result<Vector> {
        let k = a / self.step;
        if !k.is_integer() || k < Rational::from_integer(0) {
            return Err(Error::OutsideCone(fmt_rational(a)));
        }
        let mut v = u.clone();
        for _ in 0..k.to_integer() {
            v = self.shift_vec(&v);
        }
        Ok(v)
    }

    /// The morphisms whose grades lie in `sub`, graded by `sub`. `T` becomes
    /// `T^{step of sub}`.
    pub fn restrict_grades(&self, sub: &Pog) -> Result<(GradedCategory, Vec<usize>)> {
        let mut out = GradedCategory::new(sub.clone())?;
        out.window = self.window;
        for o in &self.objects {
            out.add_object(o)?;
        }
        let mut kept = Vec::new();
        let mut index = BTreeMap::new();
        for (g, m) in self.gens.iter().enumerate() {
            if sub.contains(&m.grade) {
                index.insert(g, out.add_gen(&m.name, m.source, m.target, m.grade)?);
                kept.push(g);
            }
        }
        let map = |v: &Vector| -> Option<Vector> { v.iter().map(|(g, k)| index.get(g).map(|i| (*i, *k))).collect() };
        for (x, g) in &self.units {
            if let Some(i) = index.get(g) {
                out.set_unit(*x, *i)?;
            }
        }
        for ((f, g), v) in &self.comp {
            if let (Some(a), Some(b)) = (index.get(f), index.get(g)) {
                let v = map(v).ok_or_else(|| Error::GradingIncompatible("restriction is not closed".to_string()))?;
                out.set_comp(*a, *b, v)?;
            }
        }
        if self.is_enriched() {
            out.enrich();
            let step = out.step;
            for g in &kept {
                let v = self.shift_by(&basis_vector(*g), &step)?;
                let v = map(&v).ok_or_else(|| Error::GradingIncompatible("restriction is not closed".to_string()))?;
                out.set_shift(index[g], v)?;
            }
        }
        Ok((out, kept))
    }

    /// Associativity, units, grading and the `T`-module axioms on every
    /// basis pair and triple whose grades stay inside the window.
    pub fn check(&self) -> CategoryReport {
        let mut report = CategoryReport::default();
        let n = self.gens.len();
        let grade_of = |v: &Vector| v.keys().map(|g| self.gens[*g].grade).next();
        let fits = |a: &Rational| self.in_window(a);
        for (x, e) in &self.units {
            for g in 0..n {
                let m = &self.gens[g];
                if m.source == *x {
                    report.checked += 1;
                    if self.compose(*e, g) != basis_vector(g) {
                        report.failures.push(format!("{} * {} != {}", self.gens[*e].name, m.name, m.name));
                    }
                }
                if m.target == *x {
                    report.checked += 1;
                    if self.compose(g, *e) != basis_vector(g) {
                        report.failures.push(format!("{} * {} != {}", m.name, self.gens[*e].name, m.name));
                    }
                }
            }
        }
        for f in 0..n {
            for g in self.after(f) {
                let fg = self.compose(f, g);
                let ab = self.gens[f].grade + self.gens[g].grade;
                if let Some(gr) = grade_of(&fg) {
                    report.checked += 1;
                    if gr != self.pog.normalize(&ab) {
                        report.failures.push(format!("{} * {} changes the grade", self.gens[f].name, self.gens[g].name));
                    }
                }
                for h in self.after(g) {
                    let abc = ab + self.gens[h].grade;
                    let bc = self.gens[g].grade + self.gens[h].grade;
                    if !(fits(&ab) && fits(&bc) && fits(&abc)) {
                        continue;
                    }
                    report.checked += 1;
                    let left = self.compose_vec(&fg, &basis_vector(h));
                    let right = self.compose_vec(&basis_vector(f), &self.compose(g, h));
                    if left != right {
                        report.failures.push(format!(
                            "({} * {}) * {} != {} * ({} * {})",
                            self.gens[f].name, self.gens[g].name, self.gens[h].name, self.gens[f].name, self.gens[g].name, self.gens[h].name
                        ));
                    }
                }
            }
        }
        if self.is_enriched() {
            for f in 0..n {
                for g in self.after(f) {
                    let ab = self.gens[f].grade + self.gens[g].grade;
                    let shifted = ab + self.step;
                    let gf = self.gens[f].grade + self.step;
                    let gg = self.gens[g].grade + self.step;
                    if !(fits(&ab) && fits(&shifted) && fits(&gf) && fits(&gg)) {
                        continue;
                    }
                    report.checked += 1;
                    let (u, v) = (basis_vector(f), basis_vector(g));
                    let mid = self.shift_vec(&self.compose(f, g));
                    let left = self.compose_vec(&self.shift_vec(&u), &v);
                    let right = self.compose_vec(&u, &self.shift_vec(&v));
                    if left != mid || right != mid {
                        report.failures.push(format!("T does not commute with {} * {}", self.gens[f].name, self.gens[g].name));
                    }
                }
            }
        }
        report
    }

    fn after(&self, f: usize) -> impl Iterator<Item = usize> + '_ {
        let t = self.gens[f].target;
        (0..self.gens.len()).filter(move |g| self.gens[*g].source == t)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategoryReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CategoryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: CategoryReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

/// The automorphism `τ` by which the generator of a cyclic group acts:
/// an object permutation and a signed permutation of basis morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    pub objects: Vec<usize>,
    pub gens: Vec<(usize, i64)>,
}

impl Action {
    pub fn trivial(c: &GradedCategory) -> Self {
        Action { objects: (0..c.objects.len()).collect(), gens: (0..c.gens.len()).map(|g| (g, 1)).collect() }
    }

    /// Checks that `τ` is an automorphism and that the group relation holds.
    pub fn check(&self, c: &GradedCategory, group: &Pog) -> Result<()> {
        let (_, order) = cyclic(group)?;
        let perm = |v: &[usize], n: usize| v.len() == n && v.iter().copied().collect::<BTreeSet<_>>().len() == n && v.iter().all(|i| *i < n);
        if !perm(&self.objects, c.objects.len()) {
            return Err(Error::ActionNotClosed("objects are not permuted".to_string()));
        }
        let images: Vec<usize> = self.gens.iter().map(|(g, _)| *g).collect();
        if !perm(&images, c.gens.len()) || self.gens.iter().any(|(_, s)| s.abs() != 1) {
            return Err(Error::ActionNotClosed("morphisms are not permuted up to sign".to_string()));
        }
        for (g, m) in c.gens.iter().enumerate() {
            let t = &c.gens[self.gens[g].0];
            if t.source != self.objects[m.source] || t.target != self.objects[m.target] || t.grade != m.grade {
                return Err(Error::ActionNotClosed(format!("{} is sent to {}", m.name, t.name)));
            }
        }
        for (x, e) in &c.units {
            if c.units.get(&self.objects[*x]) != Some(&self.gens[*e].0) || self.gens[*e].1 != 1 {
                return Err(Error::Invalid(format!("the unit of {} is not preserved", c.objects[*x])));
            }
        }
        for f in 0..c.gens.len() {
            for g in c.after(f) {
                let left = self.apply(&c.compose(f, g));
                let right = c.compose_vec(&self.apply(&basis_vector(f)), &self.apply(&basis_vector(g)));
                if left != right {
                    return Err(Error::Invalid(format!("the action does not respect {} * {}", c.gens[f].name, c.gens[g].name)));
                }
            }
        }
        if let Some(n) = order {
            let p = self.power(n);
            if let Some(x) = (0..c.objects.len()).find(|x| p.objects[*x] != *x) {
                return Err(Error::KernelViolation { subgroup: format!("the subgroup of {group}"), object: c.objects[x].clone() });
            }
            if let Some(g) = (0..c.gens.len()).find(|g| p.gens[*g] != (*g, 1)) {
                return Err(Error::KernelViolation { subgroup: format!("the subgroup of {group}"), object: c.gens[g].name.clone() });
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> Action {
        let mut objects = vec![0; self.objects.len()];
        for (x, y) in self.objects.iter().enumerate() {
            objects[*y] = x;
        }
        let mut gens = vec![(0, 1); self.gens.len()];
        for (g, (h, s)) in self.gens.iter().enumerate() {
            gens[*h] = (g, *s);
        }
        Action { objects, gens }
    }

    pub fn then(&self, other: &Action) -> Action {
        Action {
            objects: self.objects.iter().map(|y| other.objects[*y]).collect(),
            gens: self.gens.iter().map(|(h, s)| (other.gens[*h].0, s * other.gens[*h].1)).collect(),
        }
    }

    /// `τ^k`, for any integer `k`.
    pub fn power(&self, k: i64) -> Action {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Action { objects: (0..self.objects.len()).collect(), gens: (0..self.gens.len()).map(|g| (g, 1)).collect() };
        for _ in 0..k.unsigned_abs() {
            out = out.then(&base);
        }
        out
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (g, a) in v {
            let (h, s) = self.gens[*g];
            add_scaled(&mut out, &basis_vector(h), s * a);
        }
        out
    }
}

/// Group elements `k * step` covered by a cyclic group and a window.
fn group_steps(group: &Pog, window: Option<Rational>) -> Result<(Rational, Option<i64>, Vec<i64>)> {
    let (step, order) = cyclic(group)?;
    let steps = match (order, window) {
        (Some(n), _) => (0..n).collect(),
        (None, Some(w)) => {
            let k = (w / step).floor().to_integer();
            (-k..=k).collect()
        }
        (None, None) => return Err(Error::Invalid(format!("{group} is infinite and needs a window"))),
    };
    Ok((step, order, steps))
}

/// `C[G]` together with the origin `(f, g)` of each basis morphism, `f`
/// being a morphism `x -> g y` of `C`.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub cat: GradedCategory,
    pub origin: Vec<(usize, Rational)>,
}

/// `C[G]`: same objects, `hom(x, y) = ⊕_g hom_C(x, g y)`, and
/// `(f, g) * (f', h) = (f * g f', g + h)`.
pub fn orbit(c: &GradedCategory, group: &Pog, action: &Action, window: Option<Rational>) -> Result<Orbit> {
    if !c.is_plain() {
        return Err(Error::GradingIncompatible("orbit expects an ungraded category".to_string()));
    }
    action.check(c, group)?;
    let (step, order, steps) = group_steps(group, window)?;
    let mut out = GradedCategory::new(group.clone())?;
    if order.is_none() {
        let k = Rational::from_integer(*steps.last().unwrap_or(&0));
        out.set_window(-k * step, k * step);
    }
    for o in &c.objects {
        out.add_object(o)?;
    }
    let powers: BTreeMap<i64, Action> = steps.iter().map(|k| (*k, action.power(*k))).collect();
    let mut index: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    let mut origin = Vec::new();
    let mut ends = Vec::new();
    for k in &steps {
        let inv = powers[k].inverse();
        for (f, m) in c.gens.iter().enumerate() {
            // f: x -> τ^k y
            let y = inv.objects[m.target];
            let g = group.normalize(&(step * Rational::from_integer(*k)));
            let i = out.add_gen(&format!("{}[{}]", m.name, fmt_rational(&g)), m.source, y, g)?;
            index.insert((f, *k), i);
            origin.push((f, g));
            ends.push(*k);
        }
    }
    for (x, e) in &c.units {
        out.set_unit(*x, index[&(*e, 0)])?;
    }
    let wrap = |k: i64| match order {
        Some(n) => Some(k.rem_euclid(n)),
        None if steps.contains(&k) => Some(k),
        None => None,
    };
    let n = out.gens.len();
    for a in 0..n {
        for b in out.after(a).collect::<Vec<_>>() {
            if out.units.values().any(|e| *e == a || *e == b) {
                continue;
            }
            let (f, ka) = (origin[a].0, ends[a]);
            let (fp, kb) = (origin[b].0, ends[b]);
            let Some(kc) = wrap(ka + kb) else { continue };
            let moved = powers[&ka].apply(&basis_vector(fp));
            let v = c.compose_vec(&basis_vector(f), &moved);
            let v: Vector = v.into_iter().map(|(h, s)| (index[&(h, kc)], s)).collect();
            out.set_comp(a, b, v)?;
        }
    }
    Ok(Orbit { cat: out, origin })
}

/// `D#G` on the objects `(d, p)` with `p` in the window.
#[derive(Clone, Debug)]
pub struct Unorbit {
    pub cat: GradedCategory,
    pub objects: Vec<(usize, Rational)>,
    /// `(f, p)` for the copy of `f` leaving `(source f, p)`
    pub origin: Vec<(usize, Rational)>,
    /// the action shifting the second factor, when the window is closed
    /// under it
    pub action: Option<Action>,
}

impl Unorbit {
    pub fn object(&self, d: usize, p: &Rational) -> Option<usize> {
        self.objects.iter().position(|(e, q)| *e == d && q == p)
    }
}

/// `D#G`: objects `(d, p)`, and `hom((d, p), (c, q))` the grade `q - p`
/// part of `hom_D(d, c)`.
pub fn unorbit(d: &GradedCategory, window: Option<Rational>) -> Result<Unorbit> {
    let (step, order, steps) = group_steps(&d.pog, window)?;
    let grades: Vec<Rational> = steps.iter().map(|k| d.pog.normalize(&(step * Rational::from_integer(*k)))).collect();
    let mut out = GradedCategory::plain();
    let mut objects = Vec::new();
    for (x, name) in d.objects.iter().enumerate() {
        for p in &grades {
            out.add_object(&format!("{}@{}", name, fmt_rational(p)))?;
            objects.push((x, *p));
        }
    }
    let find = |x: usize, p: &Rational| objects.iter().position(|(e, q)| *e == x && q == p);
    let mut index = BTreeMap::new();
    let mut origin = Vec::new();
    for (f, m) in d.gens.iter().enumerate() {
        for p in &grades {
            let q = d.pog.add(p, &m.grade);
            if let (Some(s), Some(t)) = (find(m.source, p), find(m.target, &q)) {
                let i = out.add_gen(&format!("{}@{}", m.name, fmt_rational(p)), s, t, Rational::from_integer(0))?;
                index.insert((f, *p), i);
                origin.push((f, *p));
            }
        }
    }
    for (x, e) in &d.units {
        for p in &grades {
            out.set_unit(find(*x, p).expect("object"), index[&(*e, *p)])?;
        }
    }
    let n = out.gens.len();
    for a in 0..n {
        for b in out.after(a).collect::<Vec<_>>() {
            let (f, p) = origin[a];
            let v = d.compose(f, origin[b].0);
            let mut w = Vector::new();
            for (h, s) in v {
                let i = index
                    .get(&(h, p))
                    .filter(|i| out.gens[**i].target == out.gens[b].target)
                    .ok_or_else(|| Error::GradingIncompatible(format!("{} * {} has a term {}", d.gens[f].name, d.gens[origin[b].0].name, d.gens[h].name)))?;
                w.insert(*i, s);
            }
            if out.units.values().all(|e| *e != a && *e != b) {
                out.set_comp(a, b, w)?;
            }
        }
    }
    let action = order.map(|_| {
        let shift = |p: &Rational| d.pog.add(p, &step);
        Action {
            objects: objects.iter().map(|(x, p)| find(*x, &shift(p)).expect("closed")).collect(),
            gens: origin.iter().map(|(f, p)| (index[&(*f, shift(p))], 1)).collect(),
        }
    });
    Ok(Unorbit { cat: out, objects, origin, action })
}

/// A name-based picture of the full subcategory on `objects`, for comparing
/// categories up to a renaming of basis morphisms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomTable {
    pub objects: BTreeSet<String>,
    /// name -> (source, target, grade)
    pub gens: BTreeMap<String, (String, String, Rational)>,
    pub comp: BTreeMap<(String, String), BTreeMap<String, i64>>,
    pub units: BTreeMap<String, String>,
    pub shift: BTreeMap<String, BTreeMap<String, i64>>,
}

pub fn hom_table(
    c: &GradedCategory,
    objects: &[usize],
    obj_name: &dyn Fn(usize) -> String,
    gen_name: &dyn Fn(usize) -> String,
    grade: &dyn Fn(usize) -> Rational,
) -> HomTable {
    let mut t = HomTable::default();
    let keep: Vec<usize> = (0..c.gens.len()).filter(|g| objects.contains(&c.gens[*g].source) && objects.contains(&c.gens[*g].target)).collect();
    let named = |v: &Vector| -> BTreeMap<String, i64> { v.iter().map(|(g, k)| (gen_name(*g), *k)).collect() };
    for x in objects {
        t.objects.insert(obj_name(*x));
        if let Some(e) = c.unit(*x) {
            t.units.insert(obj_name(*x), gen_name(e));
        }
    }
    for g in &keep {
        let m = &c.gens[*g];
        t.gens.insert(gen_name(*g), (obj_name(m.source), obj_name(m.target), grade(*g)));
        if c.is_enriched() {
            let s = c.shift_vec(&basis_vector(*g));
            if !s.is_empty() && s.keys().all(|h| keep.contains(h)) {
                t.shift.insert(gen_name(*g), named(&s));
            }
        }
    }
    for f in &keep {
        for g in &keep {
            let v = c.compose(*f, *g);
            if !v.is_empty() {
                t.comp.insert((gen_name(*f), gen_name(*g)), named(&v));
            }
        }
    }
    t
}

/// The table with the category's own names and grades.
pub fn own_table(c: &GradedCategory) -> HomTable {
    let all: Vec<usize> = (0..c.objects.len()).collect();
    hom_table(c, &all, &|x| c.objects[x].clone(), &|g| c.gens[g].name.clone(), &|g| c.gens[g].grade)
}
