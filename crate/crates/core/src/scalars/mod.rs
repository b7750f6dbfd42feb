//! Exact scalars: rationals, the monoid ring `Z[P+]`, truncated Novikov
//! elements and almost-module predicates.

use alloc::format;
use alloc::string::{String, ToString};

use num_rational::Ratio;

use crate::{Error, Result};

mod almost;
mod monoid;
mod novikov;

pub use almost::{almost_iso, almost_zero, AlmostSetup, GridModule, GridModuleMap};
pub use monoid::MonoidRingElt;
pub use novikov::{novikov_truncate, NovikovElt};

/// Reduced fraction with positive denominator.
pub type Rational = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rational {
    Ratio::new(n, d)
}

/// Coefficient ring for chain-level computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum CoeffMode {
    #[default]
    Z,
    /// Everything reduced mod 2; signs are ignored.
    F2,
}

impl CoeffMode {
    pub fn reduce(self, c: i64) -> i64 {
        match self {
            CoeffMode::Z => c,
            CoeffMode::F2 => c.rem_euclid(2),
        }
    }

    /// `(-1)^k` in this ring.
    pub fn sign(self, k: i64) -> i64 {
        match self {
            CoeffMode::F2 => 1,
            CoeffMode::Z if k.rem_euclid(2) == 0 => 1,
            CoeffMode::Z => -1,
        }
    }
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(n, d))
        }
        None => s.parse::<i64>().map(Ratio::from_integer).map_err(|_| bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let r = rat(6, -4);
        assert_eq!((*r.numer(), *r.denom()), (-3, 2));
        assert_eq!(fmt_rational(&r), "-3/2");
        assert_eq!(fmt_rational(&rat(4, 2)), "2");
        assert_eq!(parse_rational(" 10/4 ").unwrap(), rat(5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
