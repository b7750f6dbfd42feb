use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{for_each_tuple, outgoing, AinfCategory, Chain};
use crate::scalars::{CoeffMode, Rational};

/// The full subcategory on a list of objects.
#[derive(Clone, Debug)]
pub struct Full<C: AinfCategory> {
    pub base: C,
    objects: Vec<C::Obj>,
}

impl<C: AinfCategory> Full<C> {
    pub fn new(base: C, objects: Vec<C::Obj>) -> Self {
        Full { base, objects }
    }

    /// Objects whose curvature vanishes below the cutoff.
    pub fn flat(base: C) -> Self {
        let objects = base.objects().into_iter().filter(|x| base.curvature(x).is_zero()).collect();
        Full { base, objects }
    }
}

impl<C: AinfCategory> AinfCategory for Full<C> {
    type Obj = C::Obj;
    type Gen = C::Gen;

    fn objects(&self) -> Vec<C::Obj> {
        self.objects.clone()
    }
    fn basis(&self, x: &C::Obj, y: &C::Obj) -> Vec<C::Gen> {
        if self.objects.contains(x) && self.objects.contains(y) {
            self.base.basis(x, y)
        } else {
            Vec::new()
        }
    }
    fn source(&self, g: &C::Gen) -> C::Obj {
        self.base.source(g)
    }
    fn target(&self, g: &C::Gen) -> C::Obj {
        self.base.target(g)
    }
    fn degree(&self, g: &C::Gen) -> i64 {
        self.base.degree(g)
    }
    fn weight(&self, g: &C::Gen) -> Rational {
        self.base.weight(g)
    }
    fn mu(&self, inputs: &[C::Gen]) -> Chain<C::Gen> {
        self.base.mu(inputs)
    }
    fn curvature(&self, x: &C::Obj) -> Chain<C::Gen> {
        self.base.curvature(x)
    }
    fn unit(&self, x: &C::Obj) -> Chain<C::Gen> {
        self.base.unit(x)
    }
    fn cutoff(&self) -> Rational {
        self.base.cutoff()
    }
    fn epsilon(&self) -> Rational {
        self.base.epsilon()
    }
    fn mode(&self) -> CoeffMode {
        self.base.mode()
    }
    fn gen_name(&self, g: &C::Gen) -> String {
        self.base.gen_name(g)
    }
    fn obj_name(&self, x: &C::Obj) -> String {
        self.base.obj_name(x)
    }
    fn take_truncation(&self) -> bool {
        self.base.take_truncation()
    }
}

/// The associated graded: weight-preserving terms only, no curvature.
#[derive(Clone, Debug)]
pub struct GrCat<C>(pub C);

impl<C: AinfCategory> AinfCategory for GrCat<C> {
    type Obj = C::Obj;
    type Gen = C::Gen;

    fn objects(&self) -> Vec<C::Obj> {
        self.0.objects()
    }
    fn basis(&self, x: &C::Obj, y: &C::Obj) -> Vec<C::Gen> {
        self.0.basis(x, y)
    }
    fn source(&self, g: &C::Gen) -> C::Obj {
        self.0.source(g)
    }
    fn target(&self, g: &C::Gen) -> C::Obj {
        self.0.target(g)
    }
    fn degree(&self, g: &C::Gen) -> i64 {
        self.0.degree(g)
    }
    fn weight(&self, g: &C::Gen) -> Rational {
        self.0.weight(g)
    }
    fn mu(&self, inputs: &[C::Gen]) -> Chain<C::Gen> {
        let w: Rational = inputs.iter().map(|g| self.0.weight(g)).sum();
        self.0.mu(inputs).terms().filter(|(g, s, _)| self.0.weight(g) + *s == w).map(|(g, s, c)| (g.clone(), *s, c)).collect()
    }
    fn curvature(&self, _: &C::Obj) -> Chain<C::Gen> {
        Chain::new()
    }
    fn unit(&self, x: &C::Obj) -> Chain<C::Gen> {
        self.0.unit(x)
    }
    fn cutoff(&self) -> Rational {
        self.0.cutoff()
    }
    fn epsilon(&self) -> Rational {
        self.0.epsilon()
    }
    fn mode(&self) -> CoeffMode {
        self.0.mode()
    }
    fn gen_name(&self, g: &C::Gen) -> String {
        self.0.gen_name(g)
    }
    fn obj_name(&self, x: &C::Obj) -> String {
        self.0.obj_name(x)
    }
    fn take_truncation(&self) -> bool {
        self.0.take_truncation()
    }
}

/// A category's data up to arity `dmax`, keyed by names so that different
/// presentations can be compared.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Snapshot {
    /// name -> (source, target, degree, weight)
    pub gens: BTreeMap<String, (String, String, i64, Rational)>,
    pub mu: BTreeMap<Vec<String>, Chain<String>>,
    pub curvature: BTreeMap<String, Chain<String>>,
    pub units: BTreeMap<String, Chain<String>>,
}

pub fn snapshot<C: AinfCategory + ?Sized>(cat: &C, dmax: usize, rename: &dyn Fn(&C::Gen) -> String) -> Snapshot {
    let mut snap = Snapshot::default();
    let outs = outgoing(cat);
    for (x, gens) in &outs {
        for g in gens {
            snap.gens.insert(rename(g), (cat.obj_name(x), cat.obj_name(&cat.target(g)), cat.degree(g), cat.weight(g)));
        }
        let c = cat.curvature(x);
        if !c.is_zero() {
            snap.curvature.insert(cat.obj_name(x), c.map_gens(rename));
        }
        snap.units.insert(cat.obj_name(x), cat.unit(x).map_gens(rename));
    }
    for d in 1..=dmax {
        for_each_tuple(cat, &outs, d, |tuple| {
            let v = cat.mu(tuple);
            if !v.is_zero() {
                snap.mu.insert(tuple.iter().map(rename).collect(), v.map_gens(rename));
            }
        });
    }
    snap
}
