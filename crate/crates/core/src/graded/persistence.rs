use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::homology::{kernel, IntMatrix};
use crate::pog::Pog;
use crate::scalars::{fmt_rational, rat, Rational};
use crate::{Error, Result};

/// A finite-type persistence module, contravariant in the grade: for
/// `a <= b` there is a map `G(b) -> G(a)`.
///
/// The value is constant on each half-open region `[c_i, c_{i+1})` and on
/// `[c_k, inf)`. Below `c_0` the module takes the optional germ value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersistenceModule {
    pog: Pog,
    critical: Vec<Rational>,
    germ: Option<usize>,
    ranks: Vec<usize>,
    /// `maps[i]`: region `i + 1` to region `i`.
    maps: Vec<IntMatrix>,
    /// region 0 to the germ
    germ_map: Option<IntMatrix>,
}

impl PersistenceModule {
    pub fn new(
        pog: Pog,
        critical: Vec<Rational>,
        ranks: Vec<usize>,
        maps: Vec<IntMatrix>,
        germ: Option<(usize, IntMatrix)>,
    ) -> Result<Self> {
        if pog.is_quotient() {
            return Err(Error::Invalid(format!("persistence over {} needs a total order", pog)));
        }
        if critical.windows(2).any(|w| w[0] >= w[1]) || critical.is_empty() {
            return Err(Error::Invalid("critical grades must be nonempty and increasing".to_string()));
        }
        for c in &critical {
            pog.check(c)?;
        }
        if ranks.len() != critical.len() || maps.len() + 1 != critical.len() {
            return Err(Error::ShapeMismatch("one rank per critical grade, one map between each".to_string()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.rows() != ranks[i] || m.cols() != ranks[i + 1] {
                return Err(Error::ShapeMismatch(format!("transition into region {}", i)));
            }
        }
        let (germ, germ_map) = match germ {
            Some((r, m)) => {
                if m.rows() != r || m.cols() != ranks[0] {
                    return Err(Error::ShapeMismatch("germ map".to_string()));
                }
                (Some(r), Some(m))
            }
            None => (None, None),
        };
        Ok(PersistenceModule { pog, critical, germ, ranks, maps, germ_map })
    }

    /// `Z` on `[lo, hi)` and zero elsewhere.
    pub fn interval(pog: Pog, lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(
            pog,
            vec![lo, hi],
            vec![1, 0],
            vec![IntMatrix::zeros(1, 0)],
            Some((0, IntMatrix::zeros(0, 1))),
        )
    }

    pub fn pog(&self) -> &Pog {
        &self.pog
    }

    pub fn critical(&self) -> &[Rational] {
        &self.critical
    }

    pub fn has_germ(&self) -> bool {
        self.germ.is_some()
    }

    /// Region index: `None` below the first critical grade.
    fn region(&self, a: &Rational) -> Option<usize> {
        self.critical.iter().rposition(|c| c <= a)
    }

    pub fn rank_at(&self, a: &Rational) -> Result<usize> {
        match self.region(a) {
            Some(i) => Ok(self.ranks[i]),
            None => self.germ.ok_or_else(|| Error::PresentationIncomplete(fmt_rational(&self.critical[0]))),
        }
    }

    /// The structure map `G(b) -> G(a)` for `a <= b`.
    pub fn transition(&self, b: &Rational, a: &Rational) -> Result<IntMatrix> {
        if a > b {
            return Err(Error::Invalid(format!("{} > {}", fmt_rational(a), fmt_rational(b))));
        }
        let (rb, ra) = (self.region(b), self.region(a));
        let mut m = IntMatrix::identity(self.rank_at(b)?);
        let mut cur = rb;
        while cur != ra {
            match cur {
                Some(0) => {
                    let g = self.germ_map.as_ref().ok_or_else(|| Error::PresentationIncomplete(fmt_rational(&self.critical[0])))?;
                    m = g.mul(&m)?;
                    cur = None;
                }
                Some(i) => {
                    m = self.maps[i - 1].mul(&m)?;
                    cur = Some(i - 1);
                }
                None => break,
            }
        }
        Ok(m)
    }
}

/// `lim_{b >= a} G(b)`, which by right continuity is the value of the
/// region containing `a`.
pub fn complete_persistence(g: &PersistenceModule, a: Rational) -> Result<usize> {
    g.rank_at(&a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomReport {
    /// Rank of the group of natural transformations.
    pub rank: usize,
    /// Natural transformations with every entry in `{-1, 0, 1}`.
    pub small_count: u64,
}

/// Natural transformations `F -> G`, computed on the common refinement of
/// the critical grades.
///
/// With `complete` set, each region is sampled at its left endpoint through
/// [`complete_persistence`]; otherwise at a rational interior point.
pub fn hom_persistence(f: &PersistenceModule, g: &PersistenceModule, complete: bool) -> Result<HomReport> {
    if !f.has_germ() || !g.has_germ() {
        return Err(Error::PresentationIncomplete("germ".to_string()));
    }
    let mut cuts: Vec<Rational> = f.critical.iter().chain(g.critical.iter()).copied().collect();
    cuts.sort();
    cuts.dedup();
    let mut points = vec![cuts[0] - rat(1, 1)];
    for (i, c) in cuts.iter().enumerate() {
        let p = if complete {
            *c
        } else {
            match cuts.get(i + 1) {
                Some(d) => (c + d) / rat(2, 1),
                None => c + rat(1, 1),
            }
        };
        points.push(p);
    }
    let sample = |m: &PersistenceModule, p: &Rational| {
        if complete {
            complete_persistence(m, *p)
        } else {
            m.rank_at(p)
        }
    };
    let fr: Vec<usize> = points.iter().map(|p| sample(f, p)).collect::<Result<_>>()?;
    let gr: Vec<usize> = points.iter().map(|p| sample(g, p)).collect::<Result<_>>()?;
    let mut offsets = vec![0usize];
    for i in 0..points.len() {
        offsets.push(offsets[i] + fr[i] * gr[i]);
    }
    let unknowns = *offsets.last().unwrap_or(&0);
    let var = |region: usize, r: usize, c: usize| offsets[region] + r * fr[region] + c;

    // G(b->a) eta_b - eta_a F(b->a) = 0 for consecutive samples a < b
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for i in 0..points.len() - 1 {
        let (a, b) = (&points[i], &points[i + 1]);
        let ft = f.transition(b, a)?;
        let gt = g.transition(b, a)?;
        for r in 0..gr[i] {
            for c in 0..fr[i + 1] {
                let mut row = vec![0i64; unknowns];
                for k in 0..gr[i + 1] {
                    row[var(i + 1, k, c)] += gt.get(r, k);
                }
                for k in 0..fr[i] {
                    row[var(i, r, k)] -= ft.get(k, c);
                }
                rows.push(row);
            }
        }
    }
    let constraints = if rows.is_empty() { IntMatrix::zeros(0, unknowns) } else { IntMatrix::from_rows(&rows)? };
    let rank = kernel(&constraints)?.cols();
    if unknowns > 14 {
        return Err(Error::Invalid(format!("{} unknowns is too many to enumerate", unknowns)));
    }
    let mut small_count = 0u64;
    let mut x = vec![-1i64; unknowns];
    loop {
        if constraints.apply(&x)?.iter().all(|v| *v == 0) {
            small_count += 1;
        }
        let Some(i) = x.iter().position(|v| *v < 1) else { break };
        x[i] += 1;
        for v in &mut x[..i] {
            *v = -1;
        }
    }
    Ok(HomReport { rank, small_count })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completion_examples() {
        let g = PersistenceModule::interval(Pog::Rationals, rat(0, 1), rat(1, 1)).unwrap();
        assert_eq!(complete_persistence(&g, rat(1, 2)).unwrap(), 1);
        assert_eq!(complete_persistence(&g, rat(1, 1)).unwrap(), 0);
        assert_eq!(complete_persistence(&g, rat(0, 1)).unwrap(), 1);
        let no_germ = PersistenceModule::new(Pog::Rationals, vec![rat(0, 1)], vec![1], vec![], None).unwrap();
        assert!(matches!(complete_persistence(&no_germ, rat(-1, 1)), Err(Error::PresentationIncomplete(_))));
    }

    #[test]
    fn interval_homs() {
        let pog = Pog::Rationals;
        let i01 = PersistenceModule::interval(pog.clone(), rat(0, 1), rat(1, 1)).unwrap();
        let i02 = PersistenceModule::interval(pog.clone(), rat(0, 1), rat(2, 1)).unwrap();
        let im11 = PersistenceModule::interval(pog.clone(), rat(-1, 1), rat(1, 1)).unwrap();
        // endomorphisms of an interval are Z
        assert_eq!(hom_persistence(&i01, &i01, false).unwrap(), HomReport { rank: 1, small_count: 3 });
        // maps go G(b) -> G(a) for a <= b; a transformation [0,2) -> [0,1)
        // must vanish on [0,1) since it is zero on [1,2), the other way is free
        assert_eq!(hom_persistence(&i02, &i01, false).unwrap().rank, 0);
        assert_eq!(hom_persistence(&i01, &i02, false).unwrap().rank, 1);
        for (f, g) in [(&i02, &i01), (&i01, &i02), (&i01, &im11), (&im11, &i01)] {
            let q = hom_persistence(f, g, false).unwrap();
            let r = hom_persistence(f, g, true).unwrap();
            assert_eq!(q, r);
        }
    }
}
