//! Curved A∞-categories over a truncated Novikov ring.
//!
//! Operations use the shifted (bar) sign convention. Write `|a|' = |a| - 1`.
//! The structure maps `b^d` have shifted degree one and satisfy
//!
//! ```text
//! Σ (-1)^{|a_1|' + ... + |a_i|'} b(a_1, ..., a_i, b(a_{i+1}, ..., a_j), a_{j+1}, ..., a_d) = 0
//! ```
//!
//! where `i = j` inserts the curvature `b^0` of the object at that spot.
//! Inputs are listed in path order: `a_1: X_0 -> X_1` comes first. Units
//! satisfy `b^2(e, x) = x` and `b^2(x, e) = (-1)^{|x|} x`.
//!
//! A hom space is the free `Λ`-module on finitely many weighted generators,
//! truncated at the category's cutoff.

mod chain;
mod check;
mod functor;
mod gr;
mod module;
mod mutate;
mod table;
mod wrappers;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::Cell;
use core::fmt::Debug;

pub use chain::Chain;
pub use check::{check_cainf, relation_residual, AinfFailure, AinfReport, FailureKind};
pub use functor::{functor_curvature, functor_residual, phi_chains, AinfFunctor, CAinfFunctor, CurvatureTerm, IdentityFunctor};
pub use gr::{gr_complex, gr_homology, gr_strata, image_homology, inclusion_quasi_iso, GrComplex, Stratum};
pub use module::{check_module, module_curvature, Yoneda};
pub use mutate::{mutation_sweep, single_entry_mutations, Mutation, MutationReport};
pub use table::{CAinfCategory, GenInfo};
pub use wrappers::{snapshot, Full, GrCat, Snapshot};

use crate::scalars::{CoeffMode, Rational};

pub trait AinfCategory {
    type Obj: Clone + Ord + Debug;
    type Gen: Clone + Ord + Debug;

    fn objects(&self) -> Vec<Self::Obj>;
    /// Generators of `hom(x, y)` of weight below the cutoff.
    fn basis(&self, x: &Self::Obj, y: &Self::Obj) -> Vec<Self::Gen>;
    fn source(&self, g: &Self::Gen) -> Self::Obj;
    fn target(&self, g: &Self::Gen) -> Self::Obj;
    /// Unshifted degree.
    fn degree(&self, g: &Self::Gen) -> i64;
    fn weight(&self, g: &Self::Gen) -> Rational;
    /// `b^d` for `d >= 1` on a composable tuple, truncated and reduced.
    fn mu(&self, inputs: &[Self::Gen]) -> Chain<Self::Gen>;
    fn curvature(&self, x: &Self::Obj) -> Chain<Self::Gen>;
    fn unit(&self, x: &Self::Obj) -> Chain<Self::Gen>;
    fn cutoff(&self) -> Rational;
    fn epsilon(&self) -> Rational;
    fn mode(&self) -> CoeffMode;
    fn gen_name(&self, g: &Self::Gen) -> String;
    fn obj_name(&self, x: &Self::Obj) -> String;

    /// Whether some term was dropped for a reason other than weight since
    /// the last call. Categories with length-truncated homs override this.
    fn take_truncation(&self) -> bool {
        false
    }
}

impl<T: AinfCategory + ?Sized> AinfCategory for &T {
    type Obj = T::Obj;
    type Gen = T::Gen;

    fn objects(&self) -> Vec<T::Obj> {
        (**self).objects()
    }
    fn basis(&self, x: &T::Obj, y: &T::Obj) -> Vec<T::Gen> {
        (**self).basis(x, y)
    }
    fn source(&self, g: &T::Gen) -> T::Obj {
        (**self).source(g)
    }
    fn target(&self, g: &T::Gen) -> T::Obj {
        (**self).target(g)
    }
    fn degree(&self, g: &T::Gen) -> i64 {
        (**self).degree(g)
    }
    fn weight(&self, g: &T::Gen) -> Rational {
        (**self).weight(g)
    }
    fn mu(&self, inputs: &[T::Gen]) -> Chain<T::Gen> {
        (**self).mu(inputs)
    }
    fn curvature(&self, x: &T::Obj) -> Chain<T::Gen> {
        (**self).curvature(x)
    }
    fn unit(&self, x: &T::Obj) -> Chain<T::Gen> {
        (**self).unit(x)
    }
    fn cutoff(&self) -> Rational {
        (**self).cutoff()
    }
    fn epsilon(&self) -> Rational {
        (**self).epsilon()
    }
    fn mode(&self) -> CoeffMode {
        (**self).mode()
    }
    fn gen_name(&self, g: &T::Gen) -> String {
        (**self).gen_name(g)
    }
    fn obj_name(&self, x: &T::Obj) -> String {
        (**self).obj_name(x)
    }
    fn take_truncation(&self) -> bool {
        (**self).take_truncation()
    }
}

/// A truncation flag for categories whose homs are cut off by length.
#[derive(Debug, Default)]
pub struct TruncationFlag(Cell<bool>);

impl TruncationFlag {
    pub fn raise(&self) {
        self.0.set(true);
    }

    pub fn take(&self) -> bool {
        self.0.replace(false)
    }
}

impl Clone for TruncationFlag {
    fn clone(&self) -> Self {
        TruncationFlag(Cell::new(self.0.get()))
    }
}

/// Sum of the shifted degrees `|a|'` of a sequence.
pub fn shifted_degree<C: AinfCategory + ?Sized>(cat: &C, gens: &[C::Gen]) -> i64 {
    gens.iter().map(|g| cat.degree(g) - 1).sum()
}

/// Multilinear extension over the terms of each slot: calls `f` on every
/// composable choice of generators with the product coefficient and the
/// summed shift, skipping choices whose total weight reaches the cutoff.
pub fn for_each_choice<C: AinfCategory + ?Sized>(
    cat: &C,
    slots: &[Chain<C::Gen>],
    mut f: impl FnMut(&[C::Gen], i64, Rational),
) {
    let cutoff = cat.cutoff();
    let mut picked: Vec<C::Gen> = Vec::with_capacity(slots.len());
    fn rec<C: AinfCategory + ?Sized>(
        cat: &C,
        slots: &[Chain<C::Gen>],
        cutoff: Rational,
        picked: &mut Vec<C::Gen>,
        coeff: i64,
        shift: Rational,
        weight: Rational,
        f: &mut dyn FnMut(&[C::Gen], i64, Rational),
    ) {
        let k = picked.len();
        if k == slots.len() {
            f(picked, coeff, shift);
            return;
        }
        for (g, s, c) in slots[k].terms() {
            if let Some(prev) = picked.last() {
                if cat.target(prev) != cat.source(g) {
                    continue;
                }
            }
            let w = weight + cat.weight(g) + s;
            if w >= cutoff {
                continue;
            }
            picked.push(g.clone());
            rec(cat, slots, cutoff, picked, coeff * c, shift + s, w, f);
            picked.pop();
        }
    }
    let zero = Rational::from_integer(0);
    rec(cat, slots, cutoff, &mut picked, 1, zero, zero, &mut f);
}

/// `b^d` extended multilinearly to chains, `d >= 1`.
pub fn mu_chains<C: AinfCategory + ?Sized>(cat: &C, slots: &[Chain<C::Gen>]) -> Chain<C::Gen> {
    let mut out = Chain::new();
    for_each_choice(cat, slots, |gens, c, s| {
        out.add_scaled(&cat.mu(gens), c, s);
    });
    finish(cat, out)
}

pub fn finish<C: AinfCategory + ?Sized>(cat: &C, chain: Chain<C::Gen>) -> Chain<C::Gen> {
    chain.finish(cat.mode(), cat.cutoff(), |g| cat.weight(g))
}

/// Generators leaving each object.
pub fn outgoing<C: AinfCategory + ?Sized>(cat: &C) -> BTreeMap<C::Obj, Vec<C::Gen>> {
    let objs = cat.objects();
    let mut out = BTreeMap::new();
    for x in &objs {
        let mut gens = Vec::new();
        for y in &objs {
            gens.extend(cat.basis(x, y));
        }
        out.insert(x.clone(), gens);
    }
    out
}

/// Visits every composable tuple of length `d >= 1`.
pub fn for_each_tuple<C: AinfCategory + ?Sized>(
    cat: &C,
    out: &BTreeMap<C::Obj, Vec<C::Gen>>,
    d: usize,
    mut f: impl FnMut(&[C::Gen]),
) {
    fn rec<C: AinfCategory + ?Sized>(
        cat: &C,
        out: &BTreeMap<C::Obj, Vec<C::Gen>>,
        d: usize,
        at: &C::Obj,
        tuple: &mut Vec<C::Gen>,
        f: &mut dyn FnMut(&[C::Gen]),
    ) {
        if tuple.len() == d {
            f(tuple);
            return;
        }
        for g in out.get(at).map(|v| v.as_slice()).unwrap_or(&[]) {
            tuple.push(g.clone());
            let next = cat.target(g);
            rec(cat, out, d, &next, tuple, f);
            tuple.pop();
        }
    }
    let mut tuple = Vec::with_capacity(d);
    for x in out.keys() {
        rec(cat, out, d, x, &mut tuple, &mut f);
    }
}
