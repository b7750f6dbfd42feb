use alloc::collections::BTreeMap;
use alloc::string::ToString;
use core::fmt;

use num_traits::{Signed, Zero};

use super::monoid::render_terms;
use super::{fmt_rational, MonoidRingElt, Rational};
use crate::pog::Pog;
use crate::{Error, Result};

/// An element of the completed monoid ring known up to `T^cutoff`.
///
/// Every stored exponent is strictly below the cutoff; arithmetic between
/// elements with different cutoffs keeps the smaller one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NovikovElt {
    pog: Pog,
    cutoff: Rational,
    terms: BTreeMap<Rational, i64>,
}

pub fn novikov_truncate(x: &MonoidRingElt, cutoff: Rational) -> Result<NovikovElt> {
    NovikovElt::from_terms(x.pog().clone(), cutoff, x.terms().map(|(e, c)| (*e, *c)))
}

impl NovikovElt {
    pub fn zero(pog: Pog, cutoff: Rational) -> Result<Self> {
        if !cutoff.is_positive() {
            return Err(Error::NonPositiveCutoff(fmt_rational(&cutoff)));
        }
        Ok(NovikovElt { pog, cutoff, terms: BTreeMap::new() })
    }

    pub fn from_terms(
        pog: Pog,
        cutoff: Rational,
        terms: impl IntoIterator<Item = (Rational, i64)>,
    ) -> Result<Self> {
        let mut out = Self::zero(pog, cutoff)?;
        for (e, c) in terms {
            if e.is_negative() || !out.pog.contains(&e) {
                return Err(Error::OutsideCone(fmt_rational(&e)));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, e: Rational, c: i64) {
        if c == 0 || e >= self.cutoff {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn cutoff(&self) -> Rational {
        self.cutoff
    }

    pub fn pog(&self) -> &Pog {
        &self.pog
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<Rational> {
        self.terms.keys().next().copied()
    }

    fn combine(&self, other: &Self) -> Result<Self> {
        if self.pog != other.pog {
            return Err(Error::DescriptorMismatch(self.pog.to_string(), other.pog.to_string()));
        }
        Self::zero(self.pog.clone(), self.cutoff.min(other.cutoff))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.combine(other)?;
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(*e, *c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = self.combine(other)?;
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Re-truncate at a smaller cutoff.
    pub fn truncate(&self, cutoff: Rational) -> Result<Self> {
        Self::from_terms(self.pog.clone(), cutoff.min(self.cutoff), self.terms.iter().map(|(e, c)| (*e, *c)))
    }

    pub fn shift(&self, by: Rational) -> Self {
        let mut out = NovikovElt { pog: self.pog.clone(), cutoff: self.cutoff, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            out.add_term(e + by, *c);
        }
        out
    }
}

impl fmt::Display for NovikovElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_terms(f, self.terms.iter())?;
        if self.cutoff.is_zero() {
            return Ok(());
        }
        write!(f, " + O(T^({}))", fmt_rational(&self.cutoff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn m(terms: &[(Rational, i64)]) -> MonoidRingElt {
        MonoidRingElt::from_terms(Pog::Rationals, terms.iter().copied()).unwrap()
    }

    #[test]
    fn truncation_examples() {
        let x = m(&[(rat(0, 1), 1), (rat(2, 1), 1)]);
        let t = novikov_truncate(&x, rat(1, 1)).unwrap();
        assert_eq!(t.terms().map(|(e, _)| *e).collect::<Vec<_>>(), [rat(0, 1)]);

        // sum_{n=1..5} T^{n + 1/n}, filtered by enumeration
        let terms: Vec<_> = (1..=5i64).map(|n| (rat(n, 1) + rat(1, n), 1)).collect();
        let expected: Vec<_> = terms.iter().map(|(e, _)| *e).filter(|e| *e < rat(3, 1)).collect();
        assert_eq!(expected, [rat(2, 1), rat(5, 2)]);
        let t = novikov_truncate(&m(&terms), rat(3, 1)).unwrap();
        assert_eq!(t.terms().map(|(e, _)| *e).collect::<Vec<_>>(), expected);
        assert_eq!(t.to_string(), "1*T^(2) + 1*T^(5/2) + O(T^(3))");

        let y = m(&[(rat(1, 3), 2)]);
        let t = novikov_truncate(&y, rat(10, 1)).unwrap();
        assert_eq!(t.terms().map(|(e, c)| (*e, *c)).collect::<Vec<_>>(), [(rat(1, 3), 2)]);

        assert!(matches!(novikov_truncate(&y, rat(0, 1)), Err(Error::NonPositiveCutoff(_))));
    }

    #[test]
    fn mixed_cutoffs_take_minimum() {
        let a = NovikovElt::from_terms(Pog::Rationals, rat(2, 1), [(rat(1, 1), 1)]).unwrap();
        let b = NovikovElt::from_terms(Pog::Rationals, rat(3, 2), [(rat(1, 2), 1)]).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.cutoff(), rat(3, 2));
        assert!(p.is_zero());
        assert_eq!(a.add(&b).unwrap().valuation(), Some(rat(1, 2)));
    }

    fn arb() -> impl Strategy<Value = MonoidRingElt> {
        proptest::collection::vec((0i64..16, 1i64..4, -3i64..4), 0..6)
            .prop_map(|ts| m(&ts.into_iter().map(|(p, q, c)| (rat(p, q), c)).collect::<Vec<_>>()))
    }

    proptest! {
        #[test]
        fn truncation_is_multiplicative(x in arb(), y in arb(), c in 1i64..12) {
            let cutoff = rat(c, 2);
            let lhs = novikov_truncate(&x.mul(&y).unwrap(), cutoff).unwrap();
            let rhs = novikov_truncate(&x, cutoff).unwrap().mul(&novikov_truncate(&y, cutoff).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
