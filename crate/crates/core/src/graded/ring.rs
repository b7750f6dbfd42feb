use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::Signed;

use super::GradedModule;
use crate::homology::AbelianGroup;
use crate::pog::Pog;
use crate::scalars::{fmt_rational, rat, NovikovElt, Rational};
use crate::{Error, Result};

/// `Z[P+] / I_c`, where `I_c` is spanned by monomials of exponent at least `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedRing {
    pog: Pog,
    cutoff: Rational,
}

pub fn ring_completion(pog: &Pog, cutoff: Rational) -> Result<TruncatedRing> {
    if !cutoff.is_positive() {
        return Err(Error::NonPositiveCutoff(fmt_rational(&cutoff)));
    }
    // the cone of a quotient is everything, so the ideals I_c do not form a tower
    if pog.is_quotient() {
        return Err(Error::NotDirected(pog.to_string()));
    }
    Ok(TruncatedRing { pog: pog.clone(), cutoff })
}

impl TruncatedRing {
    pub fn pog(&self) -> &Pog {
        &self.pog
    }

    pub fn cutoff(&self) -> Rational {
        self.cutoff
    }

    /// Exponents of the monomial basis; only finite for scaled integers.
    pub fn basis(&self) -> Result<Vec<Rational>> {
        let all = self.pog.elements_in(&rat(0, 1), &self.cutoff)?;
        Ok(all.into_iter().filter(|e| *e < self.cutoff).collect())
    }

    pub fn rank(&self) -> Option<usize> {
        self.basis().ok().map(|b| b.len())
    }

    pub fn element(&self, terms: impl IntoIterator<Item = (Rational, i64)>) -> Result<NovikovElt> {
        NovikovElt::from_terms(self.pog.clone(), self.cutoff, terms)
    }

    pub fn mul(&self, x: &NovikovElt, y: &NovikovElt) -> Result<NovikovElt> {
        x.mul(y)?.truncate(self.cutoff)
    }

    /// The tower map to a smaller cutoff.
    pub fn retruncate(&self, cutoff: Rational) -> Result<TruncatedRing> {
        if cutoff > self.cutoff {
            return Err(Error::IncompatibleCutoff {
                cutoff: fmt_rational(&cutoff),
                reason: "towers only go down".to_string(),
            });
        }
        ring_completion(&self.pog, cutoff)
    }

    pub fn project(&self, x: &NovikovElt) -> Result<NovikovElt> {
        x.truncate(self.cutoff)
    }
}

/// Rank of `M / I^k M` for the monomial module over `(1/n)Z`, computed as
/// the quotient of each grade by the image of every action of exponent `>= k`.
pub fn monomial_quotient_rank(n: u64, k: u64) -> Result<usize> {
    let top = rat(k as i64 + 1, 1);
    let m = GradedModule::monomials(Pog::Scaled(n), rat(0, 1), top)?;
    let kk = rat(k as i64, 1);
    let mut total = 0;
    for g in m.support() {
        let c = m.component(g).ok_or(Error::Overflow)?;
        let mut span = c.relations.clone();
        for ((src, rho), a) in m.actions() {
            if *rho >= kk && m.target(src, rho) == *g {
                span = span.hcat(a)?;
            }
        }
        let q: AbelianGroup = AbelianGroup::cokernel(&span)?;
        total += q.rank;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completion_examples() {
        let r = ring_completion(&Pog::integers(), rat(3, 1)).unwrap();
        assert_eq!(r.basis().unwrap(), [rat(0, 1), rat(1, 1), rat(2, 1)]);
        let t = r.element([(rat(1, 1), 1)]).unwrap();
        assert!(r.mul(&r.mul(&t, &t).unwrap(), &t).unwrap().is_zero());
        assert!(matches!(ring_completion(&Pog::quotient(Pog::integers(), 1).unwrap(), rat(1, 1)), Err(Error::NotDirected(_))));
        assert!(ring_completion(&Pog::Rationals, rat(0, 1)).is_err());
        assert_eq!(ring_completion(&Pog::Rationals, rat(1, 1)).unwrap().rank(), None);
    }

    #[test]
    fn quotient_ranks_match_monomial_counts() {
        for n in [1u64, 2, 4] {
            for k in 1u64..=3 {
                let count = (0..).map(|j| rat(j, n as i64)).take_while(|e| *e < rat(k as i64, 1)).count();
                assert_eq!(monomial_quotient_rank(n, k).unwrap(), count);
                let direct = ring_completion(&Pog::Scaled(n), rat(k as i64, 1)).unwrap().rank();
                assert_eq!(direct, Some(count));
            }
        }
    }

    #[test]
    fn tower_compatibility() {
        let r3 = ring_completion(&Pog::Scaled(2), rat(3, 1)).unwrap();
        let r1 = r3.retruncate(rat(1, 1)).unwrap();
        assert_eq!(r1, ring_completion(&Pog::Scaled(2), rat(1, 1)).unwrap());
        let x = r3.element([(rat(1, 2), 2), (rat(3, 2), 1)]).unwrap();
        let y = r3.element([(rat(0, 1), 1), (rat(1, 2), -1)]).unwrap();
        let lhs = r1.project(&r3.mul(&x, &y).unwrap()).unwrap();
        let rhs = r1.mul(&r1.project(&x).unwrap(), &r1.project(&y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
