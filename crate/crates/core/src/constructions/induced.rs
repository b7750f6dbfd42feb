use alloc::vec;
use alloc::vec::Vec;

use super::quotient::{Quotient, Word};
use crate::ainf::{finish, AinfCategory, AinfFunctor, Chain};
use crate::scalars::Rational;

/// The functor `C/A -> D/B` induced by `Φ: C -> D` with `Φ(A) ⊆ B`.
///
/// On words, the concatenated letters are cut into consecutive blocks at
/// some of the bars inside the input words, never at the junctions between
/// them; each block goes through `Φ`, and any cut may also carry extra
/// `Φ^0` letters.
pub struct InducedQuotient<'a, F: AinfFunctor> {
    pub f: &'a F,
    pub source: &'a Quotient<F::S>,
    pub target: &'a Quotient<F::T>,
}

impl<'a, F: AinfFunctor> InducedQuotient<'a, F> {
    pub fn new(f: &'a F, source: &'a Quotient<F::S>, target: &'a Quotient<F::T>) -> Self {
        InducedQuotient { f, source, target }
    }
}

type TGen<F> = <<F as AinfFunctor>::T as AinfCategory>::Gen;

impl<'a, F: AinfFunctor> AinfFunctor for InducedQuotient<'a, F> {
    type S = Quotient<F::S>;
    type T = Quotient<F::T>;

    fn source_cat(&self) -> &Quotient<F::S> {
        self.source
    }

    fn target_cat(&self) -> &Quotient<F::T> {
        self.target
    }

    fn obj(&self, x: &<F::S as AinfCategory>::Obj) -> <F::T as AinfCategory>::Obj {
        self.f.obj(x)
    }

    fn phi(&self, inputs: &[Word<<F::S as AinfCategory>::Gen>]) -> Chain<Word<TGen<F>>> {
        let s_cat = self.f.source_cat();
        let t_cat = self.f.target_cat();
        let letters: Vec<_> = inputs.iter().flat_map(|w| w.0.iter().cloned()).collect();
        // positions after which a cut may go: bars inside a word
        let mut cuttable = vec![false; letters.len()];
        let mut pos = 0;
        for w in inputs {
            for k in 0..w.0.len() - 1 {
                cuttable[pos + k] = true;
            }
            pos += w.0.len();
        }
        let eps = t_cat.epsilon();
        let max_extra = if eps > Rational::from_integer(0) { (t_cat.cutoff() / eps).to_integer() as usize } else { 0 };
        let lmax = self.target.lmax();

        // partial words: letters of the output so far as chains
        let mut out: Chain<Word<TGen<F>>> = Chain::new();
        let mut stack: Vec<(usize, Vec<Chain<TGen<F>>>, usize)> = vec![(0, Vec::new(), 0)];
        while let Some((start, slots, extra)) = stack.pop() {
            for end in start + 1..=letters.len() {
                if end < letters.len() && !cuttable[end - 1] {
                    continue;
                }
                let img = self.f.phi(&letters[start..end]);
                if img.is_zero() {
                    continue;
                }
                let mut next = slots.clone();
                next.push(img);
                if end == letters.len() {
                    if next.len() > lmax + 1 {
                        continue;
                    }
                    expand_word(t_cat, &next, &mut out);
                    continue;
                }
                stack.push((end, next.clone(), extra));
                // Φ^0 letters at this cut
                let at = s_cat.target(&letters[end - 1]);
                let c0 = self.f.phi0(&at);
                let mut with = next;
                for k in extra..max_extra {
                    if c0.is_zero() || with.len() > lmax {
                        break;
                    }
                    with.push(c0.clone());
                    stack.push((end, with.clone(), k + 1));
                }
            }
        }
        finish(self.target, out)
    }

    fn phi0(&self, x: &<F::S as AinfCategory>::Obj) -> Chain<Word<TGen<F>>> {
        self.f.phi0(x).map_gens(|g| Word(vec![g.clone()]))
    }
}

/// Adds every word formed by choosing one term per slot.
fn expand_word<T: AinfCategory>(cat: &T, slots: &[Chain<T::Gen>], out: &mut Chain<Word<T::Gen>>) {
    crate::ainf::for_each_choice(cat, slots, |gens, c, s| out.add_term(Word(gens.to_vec()), s, c));
}
