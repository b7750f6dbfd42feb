use alloc::string::String;
use alloc::vec::Vec;

use crate::ainf::{finish, shifted_degree, AinfCategory, Chain, TruncationFlag, Yoneda};
use crate::scalars::{CoeffMode, Rational};

/// A morphism of the quotient: letters `y_0 | y_1 | ... | y_p` whose
/// interior objects lie in the subcategory.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word<G>(pub Vec<G>);

impl<G> Word<G> {
    /// The number of bars, `p`.
    pub fn length(&self) -> usize {
        self.0.len() - 1
    }
}

/// The quotient `C/A`, with words of length at most `lmax`.
#[derive(Clone, Debug)]
pub struct Quotient<C: AinfCategory> {
    pub base: C,
    sub: Vec<C::Obj>,
    lmax: usize,
    flag: TruncationFlag,
}

impl<C: AinfCategory> Quotient<C> {
    pub fn new(base: C, sub: Vec<C::Obj>, lmax: usize) -> Self {
        Quotient { base, sub, lmax, flag: TruncationFlag::default() }
    }

    pub fn lmax(&self) -> usize {
        self.lmax
    }

    pub fn sub(&self) -> &[C::Obj] {
        &self.sub
    }

    fn emit(&self, out: &mut Chain<Word<C::Gen>>, prefix: &[C::Gen], mid: &Chain<C::Gen>, suffix: &[C::Gen], sign: i64) {
        if mid.is_zero() {
            return;
        }
        if prefix.len() + suffix.len() > self.lmax {
            self.flag.raise();
            return;
        }
        for (g, s, c) in mid.terms() {
            let mut letters = prefix.to_vec();
            letters.push(g.clone());
            letters.extend_from_slice(suffix);
            out.add_term(Word(letters), *s, sign * c);
        }
    }
}

impl<C: AinfCategory> AinfCategory for Quotient<C> {
    type Obj = C::Obj;
    type Gen = Word<C::Gen>;

    fn objects(&self) -> Vec<C::Obj> {
        self.base.objects()
    }

    fn basis(&self, x: &C::Obj, y: &C::Obj) -> Vec<Word<C::Gen>> {
        let cutoff = self.base.cutoff();
        let mut out = Vec::new();
        let mut stack: Vec<(Vec<C::Gen>, Rational)> = Vec::new();
        if self.lmax > 0 {
            for a in &self.sub {
                for g in self.base.basis(x, a) {
                    let w = self.base.weight(&g);
                    stack.push((alloc::vec![g], w));
                }
            }
        }
        for g in self.base.basis(x, y) {
            out.push(Word(alloc::vec![g]));
        }
        while let Some((letters, w)) = stack.pop() {
            let at = self.base.target(letters.last().expect("nonempty"));
            for g in self.base.basis(&at, y) {
                if w + self.base.weight(&g) < cutoff {
                    let mut l = letters.clone();
                    l.push(g);
                    out.push(Word(l));
                }
            }
            if letters.len() < self.lmax {
                for a in &self.sub {
                    for g in self.base.basis(&at, a) {
                        let w2 = w + self.base.weight(&g);
                        if w2 < cutoff {
                            let mut l = letters.clone();
                            l.push(g);
                            stack.push((l, w2));
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    fn source(&self, g: &Word<C::Gen>) -> C::Obj {
        self.base.source(&g.0[0])
    }

    fn target(&self, g: &Word<C::Gen>) -> C::Obj {
        self.base.target(g.0.last().expect("nonempty"))
    }

    fn degree(&self, g: &Word<C::Gen>) -> i64 {
        g.0.iter().map(|l| self.base.degree(l)).sum::<i64>() - g.length() as i64
    }

    fn weight(&self, g: &Word<C::Gen>) -> Rational {
        g.0.iter().map(|l| self.base.weight(l)).sum()
    }

    fn mu(&self, inputs: &[Word<C::Gen>]) -> Chain<Word<C::Gen>> {
        let mode = self.base.mode();
        let mut out = Chain::new();
        if inputs.len() == 1 {
            let l = &inputs[0].0;
            let p = l.len();
            for s in 0..p {
                let sign = mode.sign(shifted_degree(&self.base, &l[..s]));
                for e in s + 1..=p {
                    self.emit(&mut out, &l[..s], &self.base.mu(&l[s..e]), &l[e..], sign);
                }
                if s > 0 {
                    let at = self.base.target(&l[s - 1]);
                    self.emit(&mut out, &l[..s], &self.base.curvature(&at), &l[s..], sign);
                }
            }
        } else {
            let first = &inputs[0].0;
            let last = &inputs[inputs.len() - 1].0;
            let mut middle: Vec<C::Gen> = Vec::new();
            for w in &inputs[1..inputs.len() - 1] {
                middle.extend_from_slice(&w.0);
            }
            for s in 0..first.len() {
                let sign = mode.sign(shifted_degree(&self.base, &first[..s]));
                for e in 0..last.len() {
                    let mut block = first[s..].to_vec();
                    block.extend_from_slice(&middle);
                    block.extend_from_slice(&last[..=e]);
                    self.emit(&mut out, &first[..s], &self.base.mu(&block), &last[e + 1..], sign);
                }
            }
        }
        finish(self, out)
    }

    fn curvature(&self, x: &C::Obj) -> Chain<Word<C::Gen>> {
        self.base.curvature(x).map_gens(|g| Word(alloc::vec![g.clone()]))
    }

    fn unit(&self, x: &C::Obj) -> Chain<Word<C::Gen>> {
        self.base.unit(x).map_gens(|g| Word(alloc::vec![g.clone()]))
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

    fn gen_name(&self, g: &Word<C::Gen>) -> String {
        g.0.iter().map(|l| self.base.gen_name(l)).collect::<Vec<_>>().join("|")
    }

    fn obj_name(&self, x: &C::Obj) -> String {
        self.base.obj_name(x)
    }

    fn take_truncation(&self) -> bool {
        let own = self.flag.take();
        self.base.take_truncation() || own
    }
}

/// The localized module `_{A\}M` of a Yoneda module: the Yoneda module of
/// the same object in the quotient.
pub fn localize_module<C: AinfCategory>(m: Yoneda<C>, sub: Vec<C::Obj>, lmax: usize) -> Yoneda<Quotient<C>> {
    Yoneda::new(Quotient::new(m.cat, sub, lmax), m.y)
}
