//! Partially ordered groups.
//!
//! Only abelian pogs are modelled, written additively: the scaled integers
//! `(1/n)Z`, the rationals, and quotients of those by a scaled integer
//! subgroup. Elements are exact rationals; quotient elements are normalized
//! to the representative in `[0, 1/m)` where `(1/m)Z` is the subgroup.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::Signed;

use crate::scalars::{fmt_rational, rat, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pog {
    /// `(1/n)Z` with the usual order.
    Scaled(u64),
    /// `Q` with the usual order.
    Rationals,
    /// `base / (1/m)Z`, graded by cosets.
    Quotient { base: Box<Pog>, sub: u64 },
}

impl Pog {
    pub fn integers() -> Self {
        Pog::Scaled(1)
    }

    pub fn quotient(base: Pog, sub: u64) -> Result<Self> {
        let q = Pog::Quotient { base: Box::new(base.clone()), sub };
        if matches!(base, Pog::Quotient { .. }) || sub == 0 || !Pog::Scaled(sub).is_subgroup_of(&base) {
            return Err(Error::UnsupportedInclusion {
                sub: Pog::Scaled(sub).to_string(),
                sup: base.to_string(),
            });
        }
        Ok(q)
    }

    /// Parses `Z`, `Z/n`, `Q`, optionally followed by `%Z` or `%Z/m`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::BadPogSpec(spec.to_string());
        let spec = spec.trim();
        let (base, sub) = match spec.split_once('%') {
            Some((b, s)) => (b, Some(s)),
            None => (spec, None),
        };
        let base = match base {
            "Q" => Pog::Rationals,
            "Z" => Pog::Scaled(1),
            other => {
                let n = other.strip_prefix("Z/").ok_or_else(bad)?;
                let n: u64 = n.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                Pog::Scaled(n)
            }
        };
        match sub {
            None => Ok(base),
            Some(s) => {
                let m = match s {
                    "Z" => 1,
                    other => other
                        .strip_prefix("Z/")
                        .and_then(|n| n.parse::<u64>().ok())
                        .filter(|&n| n > 0)
                        .ok_or_else(bad)?,
                };
                Pog::quotient(base, m).map_err(|_| bad())
            }
        }
    }

    pub fn is_quotient(&self) -> bool {
        matches!(self, Pog::Quotient { .. })
    }

    /// The ungraded group this pog (or its base, for quotients) lives in.
    pub fn base(&self) -> &Pog {
        match self {
            Pog::Quotient { base, .. } => base,
            other => other,
        }
    }

    /// The modulus `1/m` of a quotient, if any.
    pub fn period(&self) -> Option<Rational> {
        match self {
            Pog::Quotient { sub, .. } => Some(rat(1, *sub as i64)),
            _ => None,
        }
    }

    pub fn contains(&self, g: &Rational) -> bool {
        match self {
            Pog::Scaled(n) => (g * Rational::from_integer(*n as i64)).is_integer(),
            Pog::Rationals => true,
            Pog::Quotient { base, .. } => base.contains(g),
        }
    }

    pub fn check(&self, g: &Rational) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::MalformedElement { pog: self.to_string(), element: fmt_rational(g) })
        }
    }

    /// Canonical representative: identity for ordinary pogs, the
    /// representative in `[0, 1/m)` for quotients.
    pub fn normalize(&self, g: &Rational) -> Rational {
        match self.period() {
            Some(p) => {
                let k = (g / p).floor();
                g - k * p
            }
            None => *g,
        }
    }

    pub fn add(&self, a: &Rational, b: &Rational) -> Rational {
        self.normalize(&(a + b))
    }

    pub fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        self.normalize(&(a - b))
    }

    /// `1 <= g`. For quotients this asks whether the coset of `g` meets the
    /// cone of the base, which is always the case for a nontrivial subgroup.
    pub fn cone_contains(&self, g: &Rational) -> Result<bool> {
        self.check(g)?;
        Ok(match self {
            Pog::Quotient { .. } => true,
            _ => !g.is_negative(),
        })
    }

    /// `a <= b` iff `b - a` lies in the cone.
    pub fn leq(&self, a: &Rational, b: &Rational) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        self.cone_contains(&(b - a))
    }

    pub fn is_subgroup_of(&self, other: &Pog) -> bool {
        match (self, other) {
            (Pog::Scaled(m), Pog::Scaled(n)) => n % m == 0,
            (Pog::Scaled(_), Pog::Rationals) => true,
            (Pog::Rationals, Pog::Rationals) => true,
            (Pog::Quotient { base: b1, sub: s1 }, Pog::Quotient { base: b2, sub: s2 }) => {
                s1 == s2 && b1.is_subgroup_of(b2)
            }
            _ => false,
        }
    }

    /// Elements of the (non-quotient) pog in the closed interval `[lo, hi]`,
    /// or all cosets of a quotient of a scaled pog.
    pub fn elements_in(&self, lo: &Rational, hi: &Rational) -> Result<Vec<Rational>> {
        match self {
            Pog::Scaled(n) => {
                let n = *n as i64;
                let start = (lo * Rational::from_integer(n)).ceil().to_integer();
                let end = (hi * Rational::from_integer(n)).floor().to_integer();
                Ok((start..=end).map(|k| rat(k, n)).collect())
            }
            Pog::Quotient { base, sub } => match **base {
                Pog::Scaled(n) => {
                    let per_coset = n / sub;
                    Ok((0..per_coset as i64).map(|k| rat(k, n as i64)).collect())
                }
                _ => Err(Error::Invalid(format!("{self} has infinitely many cosets"))),
            },
            Pog::Rationals => Err(Error::Invalid("Q has no finite windows".into())),
        }
    }
}

impl fmt::Display for Pog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pog::Scaled(1) => write!(f, "Z"),
            Pog::Scaled(n) => write!(f, "Z/{n}"),
            Pog::Rationals => write!(f, "Q"),
            Pog::Quotient { base, sub: 1 } => write!(f, "{base}%Z"),
            Pog::Quotient { base, sub } => write!(f, "{base}%Z/{sub}"),
        }
    }
}

fn discrete_scale(sub: &Pog, sup: &Pog) -> Result<i64> {
    let unsupported = || Error::UnsupportedInclusion { sub: sub.to_string(), sup: sup.to_string() };
    match (sub, sup) {
        (Pog::Scaled(m), Pog::Scaled(_) | Pog::Rationals) if sub.is_subgroup_of(sup) => Ok(*m as i64),
        _ => Err(unsupported()),
    }
}

/// Greatest element of `sub` below `g` (right adjoint to the inclusion).
pub fn floor_to(sub: &Pog, sup: &Pog, g: &Rational) -> Result<Rational> {
    let m = discrete_scale(sub, sup)?;
    sup.check(g)?;
    let m = Rational::from_integer(m);
    Ok((g * m).floor() / m)
}

/// Least element of `sub` above `g` (left adjoint to the inclusion).
pub fn ceil_to(sub: &Pog, sup: &Pog, g: &Rational) -> Result<Rational> {
    let m = discrete_scale(sub, sup)?;
    sup.check(g)?;
    let m = Rational::from_integer(m);
    Ok((g * m).ceil() / m)
}

/// A chain of sub-pogs whose union is the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exhaustion {
    pub target: Pog,
    pub steps: Vec<Pog>,
}

impl Exhaustion {
    /// Inclusion witnesses `(m, n)` with `m | n` for consecutive steps.
    pub fn witnesses(&self) -> Vec<(u64, u64)> {
        let scale = |p: &Pog| match p.base() {
            Pog::Scaled(n) => *n,
            _ => 0,
        };
        self.steps.windows(2).map(|w| (scale(&w[0]), scale(&w[1]))).collect()
    }

    pub fn last(&self) -> Option<&Pog> {
        self.steps.last()
    }
}

/// `(1/k!)Z` for `k = 1..=steps`, or its quotient when `q` is a quotient of `Q`.
pub fn exhaustion(q: &Pog, steps: usize) -> Result<Exhaustion> {
    let quotient_sub = match q {
        Pog::Rationals => None,
        Pog::Quotient { base, sub } if **base == Pog::Rationals => Some(*sub),
        other => return Err(Error::UnsupportedExhaustion(other.to_string())),
    };
    let mut out = Vec::with_capacity(steps);
    let mut fact: u64 = 1;
    for k in 1..=steps as u64 {
        fact = fact.checked_mul(k).ok_or(Error::Overflow)?;
        let p = Pog::Scaled(fact);
        out.push(match quotient_sub {
            // the subgroup must sit inside every step
            Some(sub) => Pog::quotient(Pog::Scaled(fact.lcm(&sub)), sub)?,
            None => p,
        });
    }
    Ok(Exhaustion { target: q.clone(), steps: out })
}

/// Smallest scaled pog `(1/n)Z` containing every given rational.
pub fn common_scale<'a>(elements: impl IntoIterator<Item = &'a Rational>) -> u64 {
    elements
        .into_iter()
        .fold(1u64, |acc, g| acc.lcm(&(*g.denom() as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn cone_examples() {
        assert!(Pog::Scaled(2).cone_contains(&rat(3, 2)).unwrap());
        assert!(!Pog::Rationals.cone_contains(&rat(-1, 3)).unwrap());
        let qz = Pog::parse("Q%Z").unwrap();
        // lifts 1/3 + k for k >= 0 are all positive
        let lifts: Vec<_> = (0..4).map(|k| rat(1, 3) + Rational::from_integer(k)).collect();
        assert!(lifts.iter().all(|l| !l.is_negative()));
        assert_eq!(qz.normalize(&rat(4, 3)), rat(1, 3));
        assert!(qz.cone_contains(&rat(4, 3)).unwrap());
        assert!(Pog::Scaled(2).cone_contains(&rat(1, 3)).is_err());
    }

    #[test]
    fn leq_examples() {
        assert!(Pog::Rationals.leq(&rat(0, 1), &rat(5, 7)).unwrap());
        assert!(!Pog::Rationals.leq(&rat(5, 7), &rat(0, 1)).unwrap());
    }

    #[test]
    fn floor_ceil_examples() {
        let z = Pog::integers();
        let q = Pog::Rationals;
        assert_eq!(floor_to(&z, &q, &rat(1, 2)).unwrap(), rat(0, 1));
        assert_eq!(ceil_to(&z, &q, &rat(1, 2)).unwrap(), rat(1, 1));
        let half = rat(1, 2);
        let f = floor_to(&z, &q, &half).unwrap();
        assert_eq!(f + f, rat(0, 1));
        assert_eq!(floor_to(&z, &q, &(half + half)).unwrap(), rat(1, 1));
        // scan multiples of 1/2 below 5/6
        let scanned = (0..10).map(|k| rat(k, 2)).filter(|s| *s <= rat(5, 6)).max().unwrap();
        assert_eq!(floor_to(&Pog::Scaled(2), &Pog::Scaled(6), &rat(5, 6)).unwrap(), scanned);
        assert!(matches!(
            floor_to(&Pog::Rationals, &Pog::Rationals, &half),
            Err(Error::UnsupportedInclusion { .. })
        ));
        assert!(floor_to(&Pog::Scaled(4), &Pog::Scaled(6), &half).is_err());
    }

    #[test]
    fn exhaustion_examples() {
        let ex = exhaustion(&Pog::Rationals, 3).unwrap();
        assert_eq!(ex.steps, vec![Pog::Scaled(1), Pog::Scaled(2), Pog::Scaled(6)]);
        assert_eq!(ex.witnesses(), vec![(1, 2), (2, 6)]);
        let last = ex.last().unwrap();
        for q in 1..=3i64 {
            for p in -7..=7 {
                assert!(last.contains(&rat(p, q)));
            }
        }
        let exq = exhaustion(&Pog::parse("Q%Z").unwrap(), 2).unwrap();
        assert_eq!(exq.steps[1].to_string(), "Z/2%Z");
        assert!(exhaustion(&Pog::Scaled(2), 2).is_err());
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["Z", "Z/4", "Q", "Z/4%Z", "Q%Z", "Z/6%Z/2"] {
            assert_eq!(Pog::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(Pog::parse("Z/1").unwrap(), Pog::Scaled(1));
        assert!(Pog::parse("Z/3%Z/2").is_err());
        assert!(Pog::parse("R").is_err());
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..7).prop_map(|(p, q)| rat(p, q))
    }

    proptest! {
        #[test]
        fn order_axioms(a in small(), b in small(), c in small()) {
            let q = Pog::Rationals;
            prop_assert!(q.leq(&a, &a).unwrap());
            if q.leq(&a, &b).unwrap() && q.leq(&b, &a).unwrap() { prop_assert_eq!(a, b); }
            if q.leq(&a, &b).unwrap() && q.leq(&b, &c).unwrap() { prop_assert!(q.leq(&a, &c).unwrap()); }
            if q.leq(&b, &c).unwrap() { prop_assert!(q.leq(&(a + b), &(a + c)).unwrap()); }
        }

        #[test]
        fn floor_ceil_adjunctions(g in small(), s in -20i64..20) {
            let (sub, sup) = (Pog::Scaled(2), Pog::Rationals);
            let s = rat(s, 2);
            let f = floor_to(&sub, &sup, &g).unwrap();
            let c = ceil_to(&sub, &sup, &g).unwrap();
            prop_assert!(f <= g && g <= c);
            prop_assert!(sub.contains(&f) && sub.contains(&c));
            prop_assert_eq!(s <= g, s <= f);
            prop_assert_eq!(g <= s, c <= s);
        }
    }
}
