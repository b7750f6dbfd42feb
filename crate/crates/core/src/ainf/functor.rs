use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{finish, for_each_choice, for_each_tuple, mu_chains, outgoing, shifted_degree, AinfCategory, CAinfCategory, Chain};
use crate::scalars::Rational;
use crate::{Error, Result};

/// A curved A∞-functor. Components have shifted degree zero, so
/// `|Φ^0(X)| = 1`.
pub trait AinfFunctor {
    type S: AinfCategory;
    type T: AinfCategory;

    fn source_cat(&self) -> &Self::S;
    fn target_cat(&self) -> &Self::T;
    fn obj(&self, x: &<Self::S as AinfCategory>::Obj) -> <Self::T as AinfCategory>::Obj;
    /// `Φ^d` for `d >= 1`.
    fn phi(&self, inputs: &[<Self::S as AinfCategory>::Gen]) -> Chain<<Self::T as AinfCategory>::Gen>;
    fn phi0(&self, x: &<Self::S as AinfCategory>::Obj) -> Chain<<Self::T as AinfCategory>::Gen>;
}

/// `Φ` extended multilinearly over chains in the source.
pub fn phi_chains<F: AinfFunctor + ?Sized>(
    f: &F,
    slots: &[Chain<<F::S as AinfCategory>::Gen>],
) -> Chain<<F::T as AinfCategory>::Gen> {
    let mut out = Chain::new();
    for_each_choice(f.source_cat(), slots, |gens, c, s| out.add_scaled(&f.phi(gens), c, s));
    finish(f.target_cat(), out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureTerm<G: Ord> {
    pub inputs: Vec<String>,
    pub value: Chain<G>,
}

/// The left side of the functor equation on `tuple`:
/// `Σ b(Φ(..), ..., Φ(..)) - Σ ± Φ(.., b(..), ..)`, with empty blocks read
/// as `Φ^0`.
pub fn functor_residual<F: AinfFunctor + ?Sized>(
    f: &F,
    tuple: &[<F::S as AinfCategory>::Gen],
    start: &<F::S as AinfCategory>::Obj,
) -> Chain<<F::T as AinfCategory>::Gen> {
    let (s_cat, t_cat) = (f.source_cat(), f.target_cat());
    let d = tuple.len();
    let obj_at = |p: usize| if p == 0 { start.clone() } else { s_cat.target(&tuple[p - 1]) };
    let eps = t_cat.epsilon();
    let max_empty = if eps > Rational::from_integer(0) { (t_cat.cutoff() / eps).to_integer() as usize } else { 0 };

    type TGen<F> = <<F as AinfFunctor>::T as AinfCategory>::Gen;
    let mut lhs: Chain<TGen<F>> = Chain::new();
    let mut stack: Vec<(usize, Vec<Chain<TGen<F>>>, usize)> = alloc::vec![(0, Vec::new(), 0)];
    while let Some((p, slots, empties)) = stack.pop() {
        if p == d {
            if slots.is_empty() {
                lhs.add(&t_cat.curvature(&f.obj(start)));
            } else {
                lhs.add(&mu_chains(t_cat, &slots));
            }
        }
        if empties < max_empty {
            let c = f.phi0(&obj_at(p));
            if !c.is_zero() {
                let mut next = slots.clone();
                next.push(c);
                stack.push((p, next, empties + 1));
            }
        }
        for q in p + 1..=d {
            let c = f.phi(&tuple[p..q]);
            if c.is_zero() {
                continue;
            }
            let mut next = slots.clone();
            next.push(c);
            stack.push((q, next, empties));
        }
    }

    let mode = s_cat.mode();
    let zero = Rational::from_integer(0);
    let mut rhs = Chain::new();
    for i in 0..=d {
        let sign = mode.sign(shifted_degree(s_cat, &tuple[..i]));
        for j in i..=d {
            let inner = if i == j { s_cat.curvature(&obj_at(i)) } else { s_cat.mu(&tuple[i..j]) };
            if inner.is_zero() {
                continue;
            }
            let mut slots: Vec<Chain<_>> = tuple[..i].iter().cloned().map(Chain::gen).collect();
            slots.push(inner);
            slots.extend(tuple[j..].iter().cloned().map(Chain::gen));
            rhs.add_scaled(&phi_chains(f, &slots), sign, zero);
        }
    }
    lhs.add_scaled(&rhs, -1, zero);
    finish(t_cat, lhs)
}

/// The curvature `μ^0(Φ)` of a pre-functor, evaluated on every composable
/// tuple of length at most `dmax`; only nonzero components are returned.
pub fn functor_curvature<F: AinfFunctor + ?Sized>(f: &F, dmax: usize) -> Vec<CurvatureTerm<<F::T as AinfCategory>::Gen>> {
    let s_cat = f.source_cat();
    let mut out = Vec::new();
    for x in s_cat.objects() {
        let value = functor_residual(f, &[], &x);
        if !value.is_zero() {
            out.push(CurvatureTerm { inputs: alloc::vec![s_cat.obj_name(&x)], value });
        }
    }
    let outs = outgoing(s_cat);
    for d in 1..=dmax {
        for_each_tuple(s_cat, &outs, d, |tuple| {
            let value = functor_residual(f, tuple, &s_cat.source(&tuple[0]));
            if !value.is_zero() {
                out.push(CurvatureTerm { inputs: tuple.iter().map(|g| s_cat.gen_name(g)).collect(), value });
            }
        });
    }
    out
}

pub struct IdentityFunctor<C>(pub C);

impl<C: AinfCategory> AinfFunctor for IdentityFunctor<C> {
    type S = C;
    type T = C;

    fn source_cat(&self) -> &C {
        &self.0
    }
    fn target_cat(&self) -> &C {
        &self.0
    }
    fn obj(&self, x: &C::Obj) -> C::Obj {
        x.clone()
    }
    fn phi(&self, inputs: &[C::Gen]) -> Chain<C::Gen> {
        if inputs.len() == 1 {
            Chain::gen(inputs[0].clone())
        } else {
            Chain::new()
        }
    }
    fn phi0(&self, _: &C::Obj) -> Chain<C::Gen> {
        Chain::new()
    }
}

/// A functor between table categories given by finite tables. Units go to
/// units unless overridden; other missing entries are zero.
#[derive(Clone, Debug)]
pub struct CAinfFunctor<'a> {
    source: &'a CAinfCategory,
    target: &'a CAinfCategory,
    obj_map: Vec<usize>,
    phi: BTreeMap<Vec<usize>, Chain<usize>>,
    phi0: BTreeMap<usize, Chain<usize>>,
}

impl<'a> CAinfFunctor<'a> {
    pub fn new(source: &'a CAinfCategory, target: &'a CAinfCategory, obj_map: Vec<usize>) -> Result<Self> {
        if obj_map.len() != source.objects().len() || obj_map.iter().any(|y| *y >= target.objects().len()) {
            return Err(Error::ShapeMismatch(String::from("object map")));
        }
        Ok(CAinfFunctor { source, target, obj_map, phi: BTreeMap::new(), phi0: BTreeMap::new() })
    }

    /// On generators with identical names in both categories, `Φ^1` is the
    /// identity and everything else vanishes.
    pub fn by_names(source: &'a CAinfCategory, target: &'a CAinfCategory) -> Result<Self> {
        let obj_map = source
            .object_names()
            .iter()
            .map(|n| target.object_index(n).ok_or_else(|| Error::UnknownObject(n.clone())))
            .collect::<Result<Vec<_>>>()?;
        let mut f = Self::new(source, target, obj_map)?;
        for (i, g) in source.gens().iter().enumerate() {
            let j = target.gen_index(&g.name).ok_or_else(|| Error::Invalid(format!("{} has no image", g.name)))?;
            f.phi.insert(alloc::vec![i], Chain::gen(j));
        }
        Ok(f)
    }

    pub fn set_phi(&mut self, inputs: Vec<usize>, value: Chain<usize>) {
        self.phi.insert(inputs, value);
    }

    pub fn set_phi0(&mut self, object: usize, value: Chain<usize>) -> Result<()> {
        let y = self.obj_map[object];
        for (g, s, _) in value.terms() {
            if self.target.source(g) != y || self.target.target(g) != y || self.target.degree(g) != 1 {
                return Err(Error::Invalid(format!("{} is not a degree one endomorphism", self.target.gen_name(g))));
            }
            if self.target.weight(g) + s < self.target.epsilon() {
                return Err(Error::Invalid(String::from("the constant term needs positive weight")));
            }
        }
        self.phi0.insert(object, value);
        Ok(())
    }
}

impl<'a> AinfFunctor for CAinfFunctor<'a> {
    type S = CAinfCategory;
    type T = CAinfCategory;

    fn source_cat(&self) -> &CAinfCategory {
        self.source
    }
    fn target_cat(&self) -> &CAinfCategory {
        self.target
    }
    fn obj(&self, x: &usize) -> usize {
        self.obj_map[*x]
    }
    fn phi(&self, inputs: &[usize]) -> Chain<usize> {
        if let Some(v) = self.phi.get(inputs) {
            return finish(self.target, v.clone());
        }
        let units = self.source.units();
        let is_unit = |g: &usize| units.get(&self.source.source(g)) == Some(g);
        if inputs.len() == 1 && is_unit(&inputs[0]) {
            return self.target.unit(&self.obj(&self.source.source(&inputs[0])));
        }
        Chain::new()
    }
    fn phi0(&self, x: &usize) -> Chain<usize> {
        self.phi0.get(x).cloned().map(|c| finish(self.target, c)).unwrap_or_default()
    }
}
