use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::twisted::{TwGen, Twisted, TwistedComplex};
use crate::ainf::{finish, mu_chains, snapshot, AinfCategory, Chain};
use crate::scalars::{CoeffMode, Rational};
use crate::{Error, Result};

/// `Σ_{k >= 0} b^k(b, ..., b)` at `x`, up to the cutoff.
pub fn mc_residual<C: AinfCategory + ?Sized>(cat: &C, x: &C::Obj, b: &Chain<C::Gen>) -> Chain<C::Gen> {
    let mut out = cat.curvature(x);
    let Some(w) = b.min_weight(|g| cat.weight(g)) else { return out };
    // each copy of b adds at least w
    let max_k = if w.is_zero() { 1 } else { (cat.cutoff() / w).ceil().to_integer() as usize };
    for k in 1..=max_k {
        out.add(&mu_chains(cat, &vec![b.clone(); k]));
    }
    finish(cat, out)
}

fn check_shape<C: AinfCategory + ?Sized>(cat: &C, x: &C::Obj, b: &Chain<C::Gen>) -> Result<()> {
    for (g, s, _) in b.terms() {
        if cat.source(g) != *x || cat.target(g) != *x || cat.degree(g) != 1 {
            return Err(Error::Invalid(format!("{} is not a degree one endomorphism of {}", cat.gen_name(g), cat.obj_name(x))));
        }
        if cat.weight(g) + s < cat.epsilon() {
            return Err(Error::Invalid(format!("{} has weight below the gap", cat.gen_name(g))));
        }
    }
    Ok(())
}

pub fn is_bounding_cochain<C: AinfCategory + ?Sized>(cat: &C, x: &C::Obj, b: &Chain<C::Gen>) -> Result<bool> {
    check_shape(cat, x, b)?;
    Ok(mc_residual(cat, x, b).is_zero())
}

/// Degree one generators of `End(x)` at each shift on the grid of the
/// energy gap that puts them at or above the gap.
pub fn candidate_terms<C: AinfCategory + ?Sized>(cat: &C, x: &C::Obj) -> Vec<(C::Gen, Rational)> {
    let (eps, cutoff) = (cat.epsilon(), cat.cutoff());
    let mut out = Vec::new();
    for g in cat.basis(x, x) {
        if cat.degree(&g) != 1 {
            continue;
        }
        let mut s = Rational::zero();
        while cat.weight(&g) + s < cutoff {
            if cat.weight(&g) + s >= eps {
                out.push((g.clone(), s));
            }
            s += eps;
        }
    }
    out
}

/// Every bounding cochain supported on at most `max_support` candidate
/// terms with unit coefficients: `1` mod 2, `±1` over the integers.
pub fn search_bounding_cochains<C: AinfCategory + ?Sized>(cat: &C, x: &C::Obj, max_support: usize) -> Vec<Chain<C::Gen>> {
    let cands = candidate_terms(cat, x);
    let coeffs: &[i64] = match cat.mode() {
        CoeffMode::F2 => &[1],
        CoeffMode::Z => &[1, -1],
    };
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Chain<C::Gen>, usize)> = vec![(0, Chain::new(), 0)];
    while let Some((next, b, size)) = stack.pop() {
        if mc_residual(cat, x, &b).is_zero() {
            out.push(b.clone());
        }
        if size == max_support {
            continue;
        }
        for i in next..cands.len() {
            for c in coeffs {
                let mut b2 = b.clone();
                b2.add_term(cands[i].0.clone(), cands[i].1, *c);
                stack.push((i + 1, b2, size + 1));
            }
        }
    }
    out.sort();
    out
}

/// The category of bounding-cochain objects `(x, b)`.
pub fn bc_category<C: AinfCategory>(base: C, objects: Vec<(String, C::Obj, Chain<C::Gen>)>) -> Result<Twisted<C>> {
    for (name, x, b) in &objects {
        if !is_bounding_cochain(&base, x, b)? {
            return Err(Error::BadTwistedComplex(format!("{} does not solve the Maurer-Cartan equation", name)));
        }
    }
    Twisted::new(base, objects.into_iter().map(|(n, x, b)| (n, TwistedComplex::deformed(x, b))).collect())
}

/// Offsets of each outer entry's block of inner entries.
pub fn flat_offsets<C: AinfCategory>(inner: &Twisted<C>, outer: &TwistedComplex<usize, TwGen<C::Gen>>) -> Vec<usize> {
    let mut offsets = vec![0];
    for (t, _) in &outer.entries {
        offsets.push(offsets.last().unwrap() + inner.complex(*t).entries.len());
    }
    offsets
}

/// The twisted complex over `C` underlying a twisted complex of twisted
/// complexes: entries concatenated with added shifts, inner differentials
/// on the diagonal blocks, outer ones above.
pub fn flatten<C: AinfCategory>(
    inner: &Twisted<C>,
    outer: &TwistedComplex<usize, TwGen<C::Gen>>,
) -> Result<TwistedComplex<C::Obj, C::Gen>> {
    let offsets = flat_offsets(inner, outer);
    let mut entries = Vec::new();
    let mut delta = alloc::collections::BTreeMap::new();
    for (n, (t, k)) in outer.entries.iter().enumerate() {
        let cx = inner.complex(*t);
        for (x, kk) in &cx.entries {
            entries.push((x.clone(), k + kk));
        }
        for ((a, b), c) in &cx.delta {
            delta.insert((offsets[n] + a, offsets[n] + b), c.clone());
        }
    }
    for ((i, j), c) in &outer.delta {
        for (g, s, k) in c.terms() {
            if g.src != outer.entries[*i].0 || g.tgt != outer.entries[*j].0 {
                return Err(Error::BadTwistedComplex("outer differential in the wrong hom".to_string()));
            }
            let key = (offsets[*i] + g.i, offsets[*j] + g.j);
            if key.0 > key.1 {
                return Err(Error::BadTwistedComplex("flattening is not triangular".to_string()));
            }
            delta.entry(key).or_insert_with(Chain::new).add_term(g.g.clone(), *s, k);
        }
    }
    delta.retain(|_, c: &mut Chain<C::Gen>| !c.is_zero());
    Ok(TwistedComplex { entries, delta })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BcComparison {
    /// flat one-entry objects found in the window of curved twisted complexes
    pub flat: usize,
    /// flat objects with no bounding-cochain object, and the converse
    pub unmatched: Vec<String>,
    /// hom generators compared between the two sides
    pub homs: usize,
    pub mismatches: Vec<String>,
}

impl BcComparison {
    pub fn passed(&self) -> bool {
        self.unmatched.is_empty() && self.mismatches.is_empty()
    }
}

/// Compares twisted complexes over the bounding-cochain objects `bc` with
/// the flat part of curved twisted complexes over `base`.
///
/// Objects: every one-entry deformation `(x, b)` with `b` supported on at
/// most `support` candidate terms is built as a curved twisted complex; the
/// flat ones must be exactly the `bc` objects. Homs: each complex in `outer`
/// is flattened, and the two categories must agree entry by entry up to
/// arity `dmax`, generators named by their flattened position.
pub fn compare_bc<C: AinfCategory>(
    base: &C,
    bc: Vec<(String, C::Obj, Chain<C::Gen>)>,
    outer: Vec<(String, TwistedComplex<usize, TwGen<C::Gen>>)>,
    support: usize,
    dmax: usize,
) -> Result<BcComparison> {
    let mut report = BcComparison::default();
    let coeffs: &[i64] = match base.mode() {
        CoeffMode::F2 => &[1],
        CoeffMode::Z => &[1, -1],
    };
    let mut flat = Vec::new();
    for x in base.objects() {
        let cands = candidate_terms(base, &x);
        let mut stack: Vec<(usize, Chain<C::Gen>, usize)> = vec![(0, Chain::new(), 0)];
        while let Some((next, b, size)) = stack.pop() {
            let obj = TwistedComplex::deformed(x.clone(), b.clone());
            if let Ok(tw) = Twisted::new(base, vec![(String::from("t"), obj)]) {
                if tw.curvature(&0).is_zero() {
                    flat.push((x.clone(), b.clone()));
                }
            }
            if size < support {
                for i in next..cands.len() {
                    for c in coeffs {
                        let mut b2 = b.clone();
                        b2.add_term(cands[i].0.clone(), cands[i].1, *c);
                        stack.push((i + 1, b2, size + 1));
                    }
                }
            }
        }
    }
    flat.sort();
    flat.dedup();
    report.flat = flat.len();
    for (x, b) in &flat {
        if !bc.iter().any(|(_, y, c)| y == x && c == b) {
            report.unmatched.push(format!("flat ({}, {}) has no bounding-cochain object", base.obj_name(x), b.render(|g| base.gen_name(g))));
        }
    }
    for (name, x, b) in &bc {
        if !flat.iter().any(|(y, c)| y == x && c == b) {
            report.unmatched.push(format!("{} is not a flat object of the window", name));
        }
    }

    let inner = bc_category(base, bc)?;
    let mut offsets = Vec::new();
    let mut flattened = Vec::new();
    for (name, t) in &outer {
        offsets.push(flat_offsets(&inner, t));
        flattened.push((name.clone(), flatten(&inner, t)?));
    }
    for (a, (na, ta)) in flattened.iter().enumerate() {
        for (nb, tb) in &flattened[..a] {
            if ta == tb {
                report.unmatched.push(format!("{} and {} flatten to the same complex", nb, na));
            }
        }
    }
    let tw_bc = Twisted::new(&inner, outer)?;
    let ctw = Twisted::new(base, flattened)?;
    for k in ctw.objects() {
        if !ctw.curvature(&k).is_zero() {
            report.unmatched.push(format!("{} flattens to a curved complex", ctw.obj_name(&k)));
        }
    }
    let outer_name = |g: &TwGen<TwGen<C::Gen>>| {
        let (p, q) = (offsets[g.src][g.i] + g.g.i, offsets[g.tgt][g.j] + g.g.j);
        format!("{}[{},{}]@{}>{}", base.gen_name(&g.g.g), p, q, tw_bc.obj_name(&g.src), tw_bc.obj_name(&g.tgt))
    };
    let flat_name = |g: &TwGen<C::Gen>| format!("{}[{},{}]@{}>{}", base.gen_name(&g.g), g.i, g.j, ctw.obj_name(&g.src), ctw.obj_name(&g.tgt));
    let left = snapshot(&tw_bc, dmax, &outer_name);
    let right = snapshot(&ctw, dmax, &flat_name);
    report.homs = right.gens.len();
    for g in left.gens.keys().chain(right.gens.keys()) {
        if left.gens.get(g) != right.gens.get(g) {
            report.mismatches.push(format!("generator {}", g));
        }
    }
    for (key, v) in &left.mu {
        if right.mu.get(key) != Some(v) {
            report.mismatches.push(format!("b({})", key.join(", ")));
        }
    }
    for key in right.mu.keys() {
        if !left.mu.contains_key(key) {
            report.mismatches.push(format!("b({})", key.join(", ")));
        }
    }
    if left.curvature != right.curvature || left.units != right.units {
        report.mismatches.push(String::from("curvature or units"));
    }
    report.mismatches.sort();
    report.mismatches.dedup();
    Ok(report)
}
