use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use core::fmt;

use num_traits::Zero;

use super::{fmt_rational, Rational};
use crate::pog::Pog;
use crate::{Error, Result};

/// A finite sum `sum a_i T^{c_i}` with exponents in the positive cone of a pog.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoidRingElt {
    pog: Pog,
    terms: BTreeMap<Rational, i64>,
}

impl MonoidRingElt {
    pub fn zero(pog: Pog) -> Self {
        MonoidRingElt { pog, terms: BTreeMap::new() }
    }

    pub fn one(pog: Pog) -> Self {
        Self::zero(pog).with_term(Rational::zero(), 1)
    }

    pub fn monomial(pog: Pog, exponent: Rational, coeff: i64) -> Result<Self> {
        Self::from_terms(pog, [(exponent, coeff)])
    }

    pub fn from_terms(pog: Pog, terms: impl IntoIterator<Item = (Rational, i64)>) -> Result<Self> {
        let mut out = Self::zero(pog);
        for (e, c) in terms {
            // exponents live in the base cone even when the grading is a quotient
            if !out.pog.base().cone_contains(&e)? {
                return Err(Error::OutsideCone(fmt_rational(&e)));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    fn with_term(mut self, e: Rational, c: i64) -> Self {
        self.add_term(e, c);
        self
    }

    fn add_term(&mut self, e: Rational, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn pog(&self) -> &Pog {
        &self.pog
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &i64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Rational) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
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

    fn same_pog(&self, other: &Self) -> Result<()> {
        if self.pog == other.pog {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(self.pog.to_string(), other.pog.to_string()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_pog(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, *c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        MonoidRingElt { pog: self.pog.clone(), terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_pog(other)?;
        let mut out = Self::zero(self.pog.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        Ok(out)
    }

    #[cfg(test)]
    pub(crate) fn into_terms(self) -> BTreeMap<Rational, i64> {
        self.terms
    }
}

pub(crate) fn render_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Rational, &'a i64)>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let mut s = String::new();
        if first {
            if *c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if *c < 0 { " - " } else { " + " });
        }
        f.write_str(&s)?;
        write!(f, "{}*T^({})", c.abs(), fmt_rational(e))?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for MonoidRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_terms(f, self.terms.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn q() -> Pog {
        Pog::Rationals
    }

    fn elt(terms: &[(i64, i64, i64)]) -> MonoidRingElt {
        MonoidRingElt::from_terms(q(), terms.iter().map(|&(p, d, c)| (rat(p, d), c))).unwrap()
    }

    #[test]
    fn add_examples() {
        let x = elt(&[(0, 1, 1), (1, 2, 1)]);
        let y = elt(&[(0, 1, -1)]);
        assert_eq!(x.add(&y).unwrap(), elt(&[(1, 2, 1)]));
        assert_eq!(x.add(&MonoidRingElt::zero(q())).unwrap(), x);
        let other = MonoidRingElt::one(Pog::Scaled(2));
        assert!(matches!(x.add(&other), Err(Error::DescriptorMismatch(..))));
    }

    #[test]
    fn mul_examples() {
        let h = elt(&[(1, 2, 1)]);
        assert_eq!(h.mul(&h).unwrap(), elt(&[(1, 1, 1)]));
        let a = elt(&[(0, 1, 1), (1, 3, 1)]);
        let b = elt(&[(0, 1, 1), (1, 3, -1)]);
        // distributivity by hand: 1 - T^(1/3) + T^(1/3) - T^(2/3)
        assert_eq!(a.mul(&b).unwrap(), elt(&[(0, 1, 1), (2, 3, -1)]));
        assert_eq!(MonoidRingElt::one(q()).mul(&a).unwrap(), a);
        assert!(MonoidRingElt::monomial(q(), rat(-1, 2), 1).is_err());
    }

    #[test]
    fn rendering() {
        let a = elt(&[(2, 3, -1), (0, 1, 1), (4, 2, 3)]);
        assert_eq!(a.to_string(), "1*T^(0) - 1*T^(2/3) + 3*T^(2)");
        assert_eq!(MonoidRingElt::zero(q()).to_string(), "0");
    }

    fn arb_elt() -> impl Strategy<Value = MonoidRingElt> {
        proptest::collection::vec((0i64..12, 1i64..5, -4i64..5), 0..6)
            .prop_map(|ts| elt(&ts.into_iter().collect::<Vec<_>>()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn ring_axioms(x in arb_elt(), y in arb_elt(), z in arb_elt()) {
            prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
            prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
            prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
            prop_assert_eq!(
                x.mul(&y.add(&z).unwrap()).unwrap(),
                x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
            );
        }

        #[test]
        fn sum_matches_term_collection(x in arb_elt(), y in arb_elt()) {
            // concatenate then collect
            let mut collected: BTreeMap<Rational, i64> = BTreeMap::new();
            for (e, c) in x.terms().chain(y.terms()) {
                *collected.entry(*e).or_insert(0) += c;
            }
            collected.retain(|_, c| *c != 0);
            prop_assert_eq!(x.add(&y).unwrap().into_terms(), collected);
        }
    }
}
