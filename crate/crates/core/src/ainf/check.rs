use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{finish, for_each_tuple, mu_chains, outgoing, shifted_degree, AinfCategory, Chain};
use crate::scalars::{fmt_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FailureKind {
    Relation,
    Unit,
    Degree,
    Filtration,
    Curvature,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AinfFailure {
    pub kind: FailureKind,
    pub arity: usize,
    pub inputs: Vec<String>,
    pub detail: String,
}

impl fmt::Display for AinfFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} failure at d={} on ({}): {}", self.kind, self.arity, self.inputs.join(", "), self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AinfReport {
    /// Number of relation instances evaluated.
    pub checked: usize,
    /// Nonzero residuals that involved a length-truncated term.
    pub truncated: usize,
    pub failures: Vec<AinfFailure>,
}

impl AinfReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn has(&self, kind: FailureKind) -> bool {
        self.failures.iter().any(|f| f.kind == kind)
    }
}

/// The left side of the A∞ relation on a composable tuple. For the empty
/// tuple, `start` names the object.
pub fn relation_residual<C: AinfCategory + ?Sized>(cat: &C, tuple: &[C::Gen], start: &C::Obj) -> Chain<C::Gen> {
    let d = tuple.len();
    let mode = cat.mode();
    let zero = Rational::from_integer(0);
    let mut residual = Chain::new();
    for i in 0..=d {
        let sign = mode.sign(shifted_degree(cat, &tuple[..i]));
        for j in i..=d {
            let inner = if i == j {
                let at = if i == 0 { start.clone() } else { cat.target(&tuple[i - 1]) };
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
            residual.add_scaled(&mu_chains(cat, &slots), sign, zero);
        }
    }
    finish(cat, residual)
}

/// Sweeps the A∞ relations for all composable tuples of length at most
/// `dmax`, together with the degree, filtration, curvature and unit axioms.
pub fn check_cainf<C: AinfCategory + ?Sized>(cat: &C, dmax: usize) -> AinfReport {
    let mut report = AinfReport::default();
    let out = outgoing(cat);
    let zero = Rational::from_integer(0);
    let names = |t: &[C::Gen]| t.iter().map(|g| cat.gen_name(g)).collect::<Vec<_>>();
    let render = |c: &Chain<C::Gen>| c.render(|g| cat.gen_name(g));

    for x in out.keys() {
        let curv = cat.curvature(x);
        for (g, s, _) in curv.terms() {
            if cat.degree(g) != 2 || cat.weight(g) + s < cat.epsilon() || cat.source(g) != *x || cat.target(g) != *x {
                report.failures.push(AinfFailure {
                    kind: FailureKind::Curvature,
                    arity: 0,
                    inputs: vec![cat.obj_name(x)],
                    detail: format!("curvature term {} has degree {} and weight {}", cat.gen_name(g), cat.degree(g), fmt_rational(&(cat.weight(g) + s))),
                });
            }
        }
        cat.take_truncation();
        let r = relation_residual(cat, &[], x);
        report.checked += 1;
        if !r.is_zero() {
            if cat.take_truncation() {
                report.truncated += 1;
            } else {
                report.failures.push(AinfFailure { kind: FailureKind::Relation, arity: 0, inputs: vec![cat.obj_name(x)], detail: render(&r) });
            }
        }
    }

    for d in 1..=dmax {
        for_each_tuple(cat, &out, d, |tuple| {
            let inputs_weight: Rational = tuple.iter().map(|g| cat.weight(g)).sum();
            let deg = tuple.iter().map(|g| cat.degree(g)).sum::<i64>() + 2 - d as i64;
            for (g, s, _) in cat.mu(tuple).terms() {
                if cat.degree(g) != deg {
                    report.failures.push(AinfFailure {
                        kind: FailureKind::Degree,
                        arity: d,
                        inputs: names(tuple),
                        detail: format!("output {} has degree {}, expected {}", cat.gen_name(g), cat.degree(g), deg),
                    });
                }
                if cat.weight(g) + s < inputs_weight {
                    report.failures.push(AinfFailure {
                        kind: FailureKind::Filtration,
                        arity: d,
                        inputs: names(tuple),
                        detail: format!("output {} lowers the weight below {}", cat.gen_name(g), fmt_rational(&inputs_weight)),
                    });
                }
            }
            cat.take_truncation();
            let start = cat.source(&tuple[0]);
            let r = relation_residual(cat, tuple, &start);
            report.checked += 1;
            if !r.is_zero() {
                if cat.take_truncation() {
                    report.truncated += 1;
                } else {
                    report.failures.push(AinfFailure { kind: FailureKind::Relation, arity: d, inputs: names(tuple), detail: render(&r) });
                }
            }
        });
    }

    // units
    let mode = cat.mode();
    for x in out.keys() {
        let e = cat.unit(x);
        let fail = |detail: String, inputs: Vec<String>, arity: usize| AinfFailure { kind: FailureKind::Unit, arity, inputs, detail };
        if e.is_zero() || e.terms().any(|(g, s, _)| cat.degree(g) != 0 || cat.weight(g) + s != zero) {
            report.failures.push(fail(format!("unit {} is not of degree 0 and weight 0", render(&e)), vec![cat.obj_name(x)], 0));
            continue;
        }
        if dmax >= 1 && !mu_chains(cat, core::slice::from_ref(&e)).is_zero() {
            report.failures.push(fail(String::from("b^1(e) is nonzero"), vec![cat.obj_name(x)], 1));
        }
        for y in out.keys() {
            for g in cat.basis(x, y) {
                let lhs = mu_chains(cat, &[e.clone(), Chain::gen(g.clone())]);
                let expect = finish(cat, Chain::gen(g.clone()));
                if lhs != expect {
                    report.failures.push(fail(format!("b^2(e, x) = {}", render(&lhs)), vec![String::from("e"), cat.gen_name(&g)], 2));
                }
            }
            for g in cat.basis(y, x) {
                let lhs = mu_chains(cat, &[Chain::gen(g.clone()), e.clone()]);
                let expect = finish(cat, Chain::single(g.clone(), zero, mode.sign(cat.degree(&g))));
                if lhs != expect {
                    report.failures.push(fail(format!("b^2(x, e) = {}", render(&lhs)), vec![cat.gen_name(&g), String::from("e")], 2));
                }
            }
        }
    }
    if dmax >= 3 {
        for_each_tuple(cat, &out, 2, |pair| {
            let objs = [cat.source(&pair[0]), cat.target(&pair[0]), cat.target(&pair[1])];
            for (pos, obj) in objs.iter().enumerate() {
                let mut slots: Vec<Chain<C::Gen>> = pair.iter().cloned().map(Chain::gen).collect();
                slots.insert(pos, cat.unit(obj));
                let r = mu_chains(cat, &slots);
                if !r.is_zero() {
                    let mut inputs = names(pair);
                    inputs.insert(pos, String::from("e"));
                    report.failures.push(AinfFailure { kind: FailureKind::Unit, arity: 3, inputs, detail: render(&r) });
                }
            }
        });
    }
    report
}
