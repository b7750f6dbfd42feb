use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::scalars::{fmt_rational, CoeffMode, Rational};

/// A finite `Λ`-linear combination `Σ c T^s g` of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain<G: Ord> {
    terms: BTreeMap<(G, Rational), i64>,
}

impl<G: Ord> Default for Chain<G> {
    fn default() -> Self {
        Chain { terms: BTreeMap::new() }
    }
}

impl<G: Ord + Clone> Chain<G> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(g: G, shift: Rational, c: i64) -> Self {
        let mut out = Self::new();
        out.add_term(g, shift, c);
        out
    }

    pub fn gen(g: G) -> Self {
        Self::single(g, Rational::from_integer(0), 1)
    }

    pub fn add_term(&mut self, g: G, shift: Rational, c: i64) {
        if c == 0 {
            return;
        }
        let key = (g, shift);
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    /// `self += c T^shift other`
    pub fn add_scaled(&mut self, other: &Chain<G>, c: i64, shift: Rational) {
        for ((g, s), k) in &other.terms {
            self.add_term(g.clone(), s + shift, c * k);
        }
    }

    pub fn add(&mut self, other: &Chain<G>) {
        self.add_scaled(other, 1, Rational::from_integer(0));
    }

    pub fn scaled(&self, c: i64, shift: Rational) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, c, shift);
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(-1, Rational::from_integer(0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&G, &Rational, i64)> {
        self.terms.iter().map(|((g, s), c)| (g, s, *c))
    }

    pub fn coefficient(&self, g: &G, shift: &Rational) -> i64 {
        self.terms.get(&(g.clone(), *shift)).copied().unwrap_or(0)
    }

    pub fn map_gens<H: Ord + Clone>(&self, mut f: impl FnMut(&G) -> H) -> Chain<H> {
        let mut out = Chain::new();
        for ((g, s), c) in &self.terms {
            out.add_term(f(g), *s, *c);
        }
        out
    }

    /// Reduce coefficients and drop every term of weight at least `cutoff`.
    pub fn finish(self, mode: CoeffMode, cutoff: Rational, weight: impl Fn(&G) -> Rational) -> Self {
        let mut out = Self::new();
        for ((g, s), c) in self.terms {
            let c = mode.reduce(c);
            if c != 0 && weight(&g) + s < cutoff {
                out.terms.insert((g, s), c);
            }
        }
        out
    }

    /// Smallest `weight(g) + shift` over the terms.
    pub fn min_weight(&self, weight: impl Fn(&G) -> Rational) -> Option<Rational> {
        self.terms.keys().map(|(g, s)| weight(g) + s).min()
    }

    pub fn render(&self, name: impl Fn(&G) -> String) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((g, s), c)| {
                if *s == Rational::from_integer(0) {
                    format!("{}*{}", c, name(g))
                } else {
                    format!("{}*T^({}) {}", c, fmt_rational(s), name(g))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl<G: Ord + Clone> FromIterator<(G, Rational, i64)> for Chain<G> {
    fn from_iter<I: IntoIterator<Item = (G, Rational, i64)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (g, s, c) in iter {
            out.add_term(g, s, c);
        }
        out
    }
}
