use alloc::vec::Vec;

use super::{finish, for_each_tuple, mu_chains, outgoing, shifted_degree, AinfCategory, AinfFailure, AinfReport, Chain, FailureKind};
use crate::scalars::Rational;

/// The Yoneda module `X ↦ hom(X, y)`, with structure maps
/// `b_M(a_1, ..., a_k, m) = b(a_1, ..., a_k, m)`.
#[derive(Clone, Debug)]
pub struct Yoneda<C: AinfCategory> {
    pub cat: C,
    pub y: C::Obj,
}

impl<C: AinfCategory> Yoneda<C> {
    pub fn new(cat: C, y: C::Obj) -> Self {
        Yoneda { cat, y }
    }

    pub fn value(&self, x: &C::Obj) -> Vec<C::Gen> {
        self.cat.basis(x, &self.y)
    }

    pub fn act(&self, inputs: &[C::Gen]) -> Chain<C::Gen> {
        self.cat.mu(inputs)
    }
}

/// The module equation on `(a_1, ..., a_k, m)`: all nested insertions
/// except the curvature after the module element. It vanishes for an
/// uncurved module.
pub fn module_curvature<C: AinfCategory>(m: &Yoneda<C>, tuple: &[C::Gen]) -> Chain<C::Gen> {
    let cat = &m.cat;
    let d = tuple.len();
    let mode = cat.mode();
    let zero = Rational::from_integer(0);
    let mut out = Chain::new();
    for i in 0..d {
        let sign = mode.sign(shifted_degree(cat, &tuple[..i]));
        for j in i..=d {
            let inner = if i == j {
                let at = if i == 0 { cat.source(&tuple[0]) } else { cat.target(&tuple[i - 1]) };
                cat.curvature(&at)
            } else {
                cat.mu(&tuple[i..j])
            };
            if inner.is_zero() {
                continue;
            }
            let mut slots: Vec<Chain<C::Gen>> = tuple[..i].iter().cloned().map(Chain::gen).collect();
            slots.push(inner);
            slots.extend(tuple[j..].iter().cloned().map(Chain::gen));
            out.add_scaled(&mu_chains(cat, &slots), sign, zero);
        }
    }
    finish(cat, out)
}

/// Checks on every tuple of length at most `dmax` ending in `hom(-, y)` that
/// the module curvature is right multiplication by the curvature of `y`,
/// `-(-1)^{Σ|a|'} b(a_1, ..., a_k, m, b^0(y))`.
pub fn check_module<C: AinfCategory>(m: &Yoneda<C>, dmax: usize) -> AinfReport {
    let cat = &m.cat;
    let mut report = AinfReport::default();
    let outs = outgoing(cat);
    let zero = Rational::from_integer(0);
    for d in 1..=dmax {
        for_each_tuple(cat, &outs, d, |tuple| {
            if cat.target(&tuple[d - 1]) != m.y {
                return;
            }
            cat.take_truncation();
            let lhs = module_curvature(m, tuple);
            let mut slots: Vec<Chain<C::Gen>> = tuple.iter().cloned().map(Chain::gen).collect();
            slots.push(cat.curvature(&m.y));
            let mut expect = Chain::new();
            expect.add_scaled(&mu_chains(cat, &slots), -cat.mode().sign(shifted_degree(cat, tuple)), zero);
            let mut diff = lhs;
            diff.add_scaled(&finish(cat, expect), -1, zero);
            let diff = finish(cat, diff);
            report.checked += 1;
            if !diff.is_zero() {
                if cat.take_truncation() {
                    report.truncated += 1;
                } else {
                    report.failures.push(AinfFailure {
                        kind: FailureKind::Relation,
                        arity: d,
                        inputs: tuple.iter().map(|g| cat.gen_name(g)).collect(),
                        detail: diff.render(|g| cat.gen_name(g)),
                    });
                }
            }
        });
    }
    report
}
