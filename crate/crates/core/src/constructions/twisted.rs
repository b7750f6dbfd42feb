use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::ainf::{finish, AinfCategory, Chain};
use crate::scalars::{fmt_rational, CoeffMode, Rational};
use crate::{Error, Result};

/// `(⊕ X_i[k_i], δ)` with `δ_{ij} ∈ hom(X_i, X_j)` for `i <= j`, of degree
/// `1 + k_j - k_i`. Diagonal entries must have weight at least the energy
/// gap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex<O, G: Ord> {
    pub entries: Vec<(O, i64)>,
    pub delta: BTreeMap<(usize, usize), Chain<G>>,
}

impl<O: Clone, G: Ord + Clone> TwistedComplex<O, G> {
    pub fn single(x: O, shift: i64) -> Self {
        TwistedComplex { entries: vec![(x, shift)], delta: BTreeMap::new() }
    }

    /// `Cone(m) = (X_1[1] ⊕ X_2, δ_{12} = m)` for `m: X_1 -> X_2`.
    pub fn cone(x1: O, x2: O, m: Chain<G>) -> Self {
        let mut delta = BTreeMap::new();
        delta.insert((0, 1), m);
        TwistedComplex { entries: vec![(x1, 1), (x2, 0)], delta }
    }

    /// `(X, b)` for a degree one endomorphism `b`.
    pub fn deformed(x: O, b: Chain<G>) -> Self {
        let mut delta = BTreeMap::new();
        if !b.is_zero() {
            delta.insert((0, 0), b);
        }
        TwistedComplex { entries: vec![(x, 0)], delta }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwGen<G> {
    pub src: usize,
    pub tgt: usize,
    pub i: usize,
    pub j: usize,
    pub g: G,
}

/// A window of twisted complexes over `base`, as an A∞-category.
#[derive(Clone, Debug)]
pub struct Twisted<C: AinfCategory> {
    pub base: C,
    objects: Vec<TwistedComplex<C::Obj, C::Gen>>,
    names: Vec<String>,
    /// every δ-path of each object
    paths: Vec<Vec<Path<C::Gen>>>,
}

/// `(start, end, letters, shift, coefficient, weight)`
type Path<G> = (usize, usize, Vec<G>, Rational, i64, Rational);

/// One step of a δ-path: the entries it joins and a term of `δ`.
type Step<G> = (usize, G, Rational, i64);

impl<C: AinfCategory> Twisted<C> {
    pub fn new(base: C, objects: Vec<(String, TwistedComplex<C::Obj, C::Gen>)>) -> Result<Self> {
        let eps = base.epsilon();
        for (name, t) in &objects {
            let bad = |why: String| Error::BadTwistedComplex(format!("{}: {}", name, why));
            if t.entries.is_empty() {
                return Err(bad("no entries".to_string()));
            }
            for ((i, j), c) in &t.delta {
                if i > j {
                    return Err(bad(format!("entry ({}, {}) is below the diagonal", i, j)));
                }
                if *j >= t.entries.len() {
                    return Err(bad(format!("entry ({}, {}) out of range", i, j)));
                }
                let ((xi, ki), (xj, kj)) = (&t.entries[*i], &t.entries[*j]);
                for (g, s, _) in c.terms() {
                    if base.source(g) != *xi || base.target(g) != *xj {
                        return Err(bad(format!("{} lies in the wrong hom", base.gen_name(g))));
                    }
                    if base.degree(g) != 1 + kj - ki {
                        return Err(bad(format!("{} has degree {}, needs {}", base.gen_name(g), base.degree(g), 1 + kj - ki)));
                    }
                    if i == j && base.weight(g) + s < eps {
                        return Err(bad(format!("diagonal term {} has weight below the gap", base.gen_name(g))));
                    }
                }
            }
        }
        let (names, objects): (Vec<String>, Vec<_>) = objects.into_iter().unzip();
        let mut tw = Twisted { base, objects, names, paths: Vec::new() };
        tw.paths = (0..tw.objects.len()).map(|t| tw.all_paths(t)).collect();
        for (k, name) in tw.names.iter().enumerate() {
            if let Some(w) = tw.curvature(&k).min_weight(|g| tw.weight(g)) {
                if w < eps {
                    return Err(Error::BadTwistedComplex(format!(
                        "{}: Maurer-Cartan residual has weight {}",
                        name,
                        fmt_rational(&w)
                    )));
                }
            }
        }
        Ok(tw)
    }

    pub fn complex(&self, k: usize) -> &TwistedComplex<C::Obj, C::Gen> {
        &self.objects[k]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn paths(&self, t: usize, from: Option<usize>) -> Vec<Path<C::Gen>> {
        self.paths[t].iter().filter(|p| from.is_none_or(|a| p.0 == a)).cloned().collect()
    }

    /// All δ-paths in object `t` below the cutoff.
    fn all_paths(&self, t: usize) -> Vec<Path<C::Gen>> {
        let cx = &self.objects[t];
        let cutoff = self.base.cutoff();
        let zero = Rational::from_integer(0);
        let mut steps: BTreeMap<usize, Vec<Step<C::Gen>>> = BTreeMap::new();
        for ((i, j), c) in &cx.delta {
            for (g, s, k) in c.terms() {
                steps.entry(*i).or_default().push((*j, g.clone(), *s, k));
            }
        }
        let mut out = Vec::new();
        let mut stack: Vec<Path<C::Gen>> = (0..cx.entries.len()).map(|a| (a, a, Vec::new(), zero, 1, zero)).collect();
        while let Some((a, b, letters, s, c, w)) = stack.pop() {
            for (j, g, s2, k) in steps.get(&b).map(|v| v.as_slice()).unwrap_or(&[]) {
                let w2 = w + self.base.weight(g) + s2;
                if w2 < cutoff {
                    let mut l = letters.clone();
                    l.push(g.clone());
                    stack.push((a, *j, l, s + s2, c * k, w2));
                }
            }
            out.push((a, b, letters, s, c, w));
        }
        out
    }
}

impl<C: AinfCategory> AinfCategory for Twisted<C> {
    type Obj = usize;
    type Gen = TwGen<C::Gen>;

    fn objects(&self) -> Vec<usize> {
        (0..self.objects.len()).collect()
    }

    fn basis(&self, x: &usize, y: &usize) -> Vec<TwGen<C::Gen>> {
        let mut out = Vec::new();
        for (i, (xi, _)) in self.objects[*x].entries.iter().enumerate() {
            for (j, (yj, _)) in self.objects[*y].entries.iter().enumerate() {
                for g in self.base.basis(xi, yj) {
                    out.push(TwGen { src: *x, tgt: *y, i, j, g });
                }
            }
        }
        out
    }

    fn source(&self, g: &TwGen<C::Gen>) -> usize {
        g.src
    }

    fn target(&self, g: &TwGen<C::Gen>) -> usize {
        g.tgt
    }

    fn degree(&self, g: &TwGen<C::Gen>) -> i64 {
        self.base.degree(&g.g) + self.objects[g.src].entries[g.i].1 - self.objects[g.tgt].entries[g.j].1
    }

    fn weight(&self, g: &TwGen<C::Gen>) -> Rational {
        self.base.weight(&g.g)
    }

    fn mu(&self, inputs: &[TwGen<C::Gen>]) -> Chain<TwGen<C::Gen>> {
        let mode = self.base.mode();
        let cutoff = self.base.cutoff();
        let d = inputs.len();
        let (src, tgt) = (inputs[0].src, inputs[d - 1].tgt);
        let mut out = Chain::new();
        // δ-paths ending at the first input's source entry, from anywhere
        let heads: Vec<_> = self.paths(src, None).into_iter().filter(|p| p.1 == inputs[0].i).collect();
        let gaps: Vec<Vec<_>> = (0..d - 1)
            .map(|r| self.paths(inputs[r].tgt, Some(inputs[r].j)).into_iter().filter(|p| p.1 == inputs[r + 1].i).collect())
            .collect();
        let tails = self.paths(tgt, Some(inputs[d - 1].j));
        let base_weight: Rational = inputs.iter().map(|x| self.base.weight(&x.g)).sum();

        // choose a path for every gap, then head and tail
        let mut choice = vec![0usize; d - 1];
        loop {
            if gaps.iter().all(|g| !g.is_empty()) {
                let mut seq: Vec<C::Gen> = Vec::new();
                let (mut shift, mut coeff, mut weight) = (Rational::from_integer(0), 1i64, base_weight);
                for r in 0..d {
                    seq.push(inputs[r].g.clone());
                    if r + 1 < d {
                        let p = &gaps[r][choice[r]];
                        seq.extend(p.2.iter().cloned());
                        shift += p.3;
                        coeff *= p.4;
                        weight += p.5;
                    }
                }
                if weight < cutoff {
                    for h in &heads {
                        if weight + h.5 >= cutoff {
                            continue;
                        }
                        for t in &tails {
                            if weight + h.5 + t.5 >= cutoff {
                                continue;
                            }
                            let mut full = h.2.clone();
                            full.extend(seq.iter().cloned());
                            full.extend(t.2.iter().cloned());
                            let sign = mode.sign(self.objects[src].entries[h.0].1);
                            let v = self.base.mu(&full);
                            for (g, s, c) in v.terms() {
                                out.add_term(
                                    TwGen { src, tgt, i: h.0, j: t.1, g: g.clone() },
                                    s + shift + h.3 + t.3,
                                    sign * c * coeff * h.4 * t.4,
                                );
                            }
                        }
                    }
                }
            }
            // advance the mixed-radix counter
            let mut r = 0;
            while r < d - 1 {
                choice[r] += 1;
                if choice[r] < gaps[r].len() {
                    break;
                }
                choice[r] = 0;
                r += 1;
            }
            if r == d - 1 {
                break;
            }
        }
        finish(self, out)
    }

    fn curvature(&self, x: &usize) -> Chain<TwGen<C::Gen>> {
        let mode = self.base.mode();
        let cx = &self.objects[*x];
        let mut out = Chain::new();
        for (a, b, letters, s, c, _) in self.paths(*x, None) {
            let sign = mode.sign(cx.entries[a].1);
            let v = if letters.is_empty() { self.base.curvature(&cx.entries[a].0) } else { self.base.mu(&letters) };
            for (g, s2, k) in v.terms() {
                out.add_term(TwGen { src: *x, tgt: *x, i: a, j: b, g: g.clone() }, s + s2, sign * c * k);
            }
        }
        finish(self, out)
    }

    fn unit(&self, x: &usize) -> Chain<TwGen<C::Gen>> {
        let mode = self.base.mode();
        let mut out = Chain::new();
        for (i, (xi, k)) in self.objects[*x].entries.iter().enumerate() {
            for (g, s, c) in self.base.unit(xi).terms() {
                out.add_term(TwGen { src: *x, tgt: *x, i, j: i, g: g.clone() }, *s, mode.sign(*k) * c);
            }
        }
        out
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

    fn gen_name(&self, g: &TwGen<C::Gen>) -> String {
        format!("{}[{},{}]@{}>{}", self.base.gen_name(&g.g), g.i, g.j, self.names[g.src], self.names[g.tgt])
    }

    fn obj_name(&self, x: &usize) -> String {
        self.names[*x].clone()
    }

    fn take_truncation(&self) -> bool {
        self.base.take_truncation()
    }
}
