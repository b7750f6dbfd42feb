//! Almost-zero and almost-isomorphism tests over a truncated grid ring.
//!
//! The ring is `R = Z[(1/N)Z+] / (T^cutoff)`; a module is presented by free
//! generators and `R`-linear relations, and is handled as the finite free
//! abelian group on `(generator, j/N)` modulo all shifts of the relations.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{fmt_rational, rat, Rational};
use crate::homology::{kernel, smith_normal_form, IntMatrix, Snf};
use crate::{Error, Result};

/// The maximal ideal is tested on `T^{1/k}` for `k <= bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlmostSetup {
    pub bound: u64,
}

impl AlmostSetup {
    pub fn new(bound: u64) -> Self {
        AlmostSetup { bound }
    }

    /// A positive exponent as a sum of two positive exponents.
    pub fn factor(&self, e: Rational) -> Option<(Rational, Rational)> {
        if e.is_positive() {
            let h = e / rat(2, 1);
            Some((h, h))
        } else {
            None
        }
    }
}

/// `sum c T^e g_i` as `(i, e, c)` triples.
pub type GridElement = Vec<(usize, Rational, i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridModule {
    grid: u64,
    cutoff: Rational,
    gens: usize,
    relations: Vec<GridElement>,
}

fn on_grid(grid: u64, e: &Rational) -> Option<usize> {
    let scaled = e * rat(grid as i64, 1);
    (scaled.is_integer() && !scaled.is_negative()).then(|| *scaled.numer() as usize)
}

impl GridModule {
    pub fn new(grid: u64, cutoff: Rational, gens: usize, relations: Vec<GridElement>) -> Result<Self> {
        if !cutoff.is_positive() {
            return Err(Error::NonPositiveCutoff(fmt_rational(&cutoff)));
        }
        if grid == 0 || on_grid(grid, &cutoff).is_none() {
            return Err(Error::IncompatibleCutoff {
                cutoff: fmt_rational(&cutoff),
                reason: format!("not a multiple of 1/{}", grid),
            });
        }
        for r in &relations {
            for (i, e, _) in r {
                if *i >= gens {
                    return Err(Error::ShapeMismatch(format!("generator {} of {}", i, gens)));
                }
                if on_grid(grid, e).is_none() {
                    return Err(Error::OutsideCone(fmt_rational(e)));
                }
            }
        }
        Ok(GridModule { grid, cutoff, gens, relations })
    }

    pub fn free(grid: u64, cutoff: Rational, gens: usize) -> Result<Self> {
        Self::new(grid, cutoff, gens, Vec::new())
    }

    /// `R / (T^e)`.
    pub fn cyclic(grid: u64, cutoff: Rational, e: Rational) -> Result<Self> {
        Self::new(grid, cutoff, 1, vec![vec![(0, e, 1)]])
    }

    pub fn grid(&self) -> u64 {
        self.grid
    }

    pub fn cutoff(&self) -> Rational {
        self.cutoff
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    fn levels(&self) -> usize {
        on_grid(self.grid, &self.cutoff).unwrap_or(0)
    }

    /// Rank of the underlying free abelian group.
    pub fn basis_len(&self) -> usize {
        self.gens * self.levels()
    }

    fn index(&self, gen: usize, level: usize) -> usize {
        gen * self.levels() + level
    }

    /// `T^{j/N} x` as an integer vector; terms past the cutoff vanish.
    fn vector(&self, x: &[(usize, Rational, i64)], shift: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.basis_len()];
        for (i, e, c) in x {
            let level = on_grid(self.grid, e).unwrap_or(usize::MAX) + shift;
            if level < self.levels() {
                v[self.index(*i, level)] += c;
            }
        }
        v
    }

    /// Columns span the relation subgroup.
    pub fn relation_matrix(&self) -> Result<IntMatrix> {
        let mut cols = Vec::new();
        for r in &self.relations {
            for s in 0..self.levels() {
                cols.push(self.vector(r, s));
            }
        }
        IntMatrix::from_columns(self.basis_len(), &cols)
    }

    fn shift_vector(&self, v: &[i64], by: usize) -> Vec<i64> {
        let mut out = vec![0i64; v.len()];
        for g in 0..self.gens {
            for l in 0..self.levels() {
                if l + by < self.levels() {
                    out[self.index(g, l + by)] = v[self.index(g, l)];
                }
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &GridModule) -> Result<GridModule> {
        if self.grid != other.grid || self.cutoff != other.cutoff {
            return Err(Error::ShapeMismatch(String::from("direct sum over different rings")));
        }
        let mut relations = self.relations.clone();
        for r in &other.relations {
            relations.push(r.iter().map(|(i, e, c)| (i + self.gens, *e, *c)).collect());
        }
        GridModule::new(self.grid, self.cutoff, self.gens + other.gens, relations)
    }

    /// Shifts by `T^{1/k}` that the setup asks about, in grid steps.
    fn test_shifts(&self, setup: &AlmostSetup) -> Vec<usize> {
        (1..=setup.bound).filter(|k| self.grid.is_multiple_of(*k)).map(|k| (self.grid / k) as usize).collect()
    }

    fn check_cutoff(&self, cutoff: Rational) -> Result<usize> {
        match on_grid(self.grid, &cutoff) {
            Some(l) if cutoff <= self.cutoff && !cutoff.is_zero() => Ok(l),
            _ => Err(Error::IncompatibleCutoff {
                cutoff: fmt_rational(&cutoff),
                reason: format!("presentation is over 1/{} up to {}", self.grid, fmt_rational(&self.cutoff)),
            }),
        }
    }
}

/// `f(g_i)` for every generator of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridModuleMap {
    pub source: GridModule,
    pub target: GridModule,
    pub images: Vec<GridElement>,
}

impl GridModuleMap {
    pub fn new(source: GridModule, target: GridModule, images: Vec<GridElement>) -> Result<Self> {
        if images.len() != source.gens || source.grid != target.grid || source.cutoff != target.cutoff {
            return Err(Error::ShapeMismatch(String::from("map does not match its modules")));
        }
        for (i, e, _) in images.iter().flatten() {
            if *i >= target.gens || on_grid(target.grid, e).is_none() {
                return Err(Error::ShapeMismatch(format!("bad image term on generator {}", i)));
            }
        }
        Ok(GridModuleMap { source, target, images })
    }

    pub fn identity(m: &GridModule) -> Self {
        let images = (0..m.gens).map(|i| vec![(i, Rational::zero(), 1)]).collect();
        GridModuleMap { source: m.clone(), target: m.clone(), images }
    }

    pub fn zero(source: &GridModule, target: &GridModule) -> Result<Self> {
        Self::new(source.clone(), target.clone(), vec![Vec::new(); source.gens])
    }

    fn matrix(&self) -> Result<IntMatrix> {
        let mut cols = Vec::new();
        for g in 0..self.source.gens {
            for l in 0..self.source.levels() {
                cols.push(self.target.vector(&self.images[g], l));
            }
        }
        IntMatrix::from_columns(self.target.basis_len(), &cols)
    }
}

fn in_span(span: &Snf, v: &[i64]) -> Result<bool> {
    span.spans(v)
}

/// Every element below `cutoff` is killed by each tested `T^{1/k}`.
pub fn almost_zero(m: &GridModule, setup: &AlmostSetup, cutoff: Rational) -> Result<bool> {
    let top = m.check_cutoff(cutoff)?;
    let rel = smith_normal_form(&m.relation_matrix()?)?;
    for by in m.test_shifts(setup) {
        for g in 0..m.gens {
            for l in 0..top {
                let mut e = vec![0i64; m.basis_len()];
                e[m.index(g, l)] = 1;
                if !in_span(&rel, &m.shift_vector(&e, by))? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Kernel and cokernel of `f` are both almost zero.
pub fn almost_iso(f: &GridModuleMap, setup: &AlmostSetup, cutoff: Rational) -> Result<bool> {
    let (src, tgt) = (&f.source, &f.target);
    src.check_cutoff(cutoff)?;
    tgt.check_cutoff(cutoff)?;
    let fm = f.matrix()?;
    let rel_t = tgt.relation_matrix()?;
    let rel_s = smith_normal_form(&src.relation_matrix()?)?;
    let shifts = src.test_shifts(setup);

    // kernel lattice {x : f x in Rel'}
    let n = src.basis_len();
    let joint = kernel(&fm.hcat(&rel_t.neg())?)?;
    for j in 0..joint.cols() {
        let x = &joint.column(j)[..n];
        for &by in &shifts {
            if !in_span(&rel_s, &src.shift_vector(x, by))? {
                return Ok(false);
            }
        }
    }

    // cokernel: target modulo im f + Rel'
    let span = smith_normal_form(&fm.hcat(&rel_t)?)?;
    for &by in &shifts {
        for g in 0..tgt.gens {
            for l in 0..tgt.levels() {
                let mut e = vec![0i64; tgt.basis_len()];
                e[tgt.index(g, l)] = 1;
                if !in_span(&span, &tgt.shift_vector(&e, by))? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn one() -> Rational {
        rat(1, 1)
    }

    #[test]
    fn almost_zero_examples() {
        let s = AlmostSetup::new(2);
        // R / m, with m generated by T^{1/2} on this grid
        let residue = GridModule::cyclic(2, one(), rat(1, 2)).unwrap();
        assert!(almost_zero(&residue, &s, one()).unwrap());
        let free = GridModule::free(2, one(), 1).unwrap();
        assert!(!almost_zero(&free, &s, one()).unwrap());
        // coker of T^{1/2}: basis {1, T^{1/2}} modulo T^{1/2}; T^{1/2} * 1 is a relation
        assert!(almost_zero(&residue, &s, one()).unwrap());
        assert!(matches!(almost_zero(&free, &s, rat(1, 3)), Err(Error::IncompatibleCutoff { .. })));
    }

    #[test]
    fn finer_grid_sees_more_of_the_ideal() {
        let m = GridModule::cyclic(4, one(), rat(1, 2)).unwrap();
        assert!(!almost_zero(&m, &AlmostSetup::new(4), one()).unwrap());
    }

    #[test]
    fn almost_iso_examples() {
        let s = AlmostSetup::new(2);
        let free = GridModule::free(2, one(), 1).unwrap();
        assert!(almost_iso(&GridModuleMap::identity(&free), &s, one()).unwrap());
        assert!(!almost_iso(&GridModuleMap::zero(&free, &free).unwrap(), &s, one()).unwrap());
        let t_half = GridModuleMap::new(free.clone(), free.clone(), vec![vec![(0, rat(1, 2), 1)]]).unwrap();
        assert!(almost_iso(&t_half, &s, one()).unwrap());
    }

    fn arb_module() -> impl Strategy<Value = GridModule> {
        let rel = proptest::collection::vec((0usize..2, 0i64..4, -2i64..3), 1..3);
        proptest::collection::vec(rel, 0..3).prop_map(|rels| {
            let rels = rels.into_iter().map(|r| r.into_iter().map(|(i, j, c)| (i, rat(j, 2), c)).collect()).collect();
            GridModule::new(2, rat(2, 1), 2, rels).unwrap()
        })
    }

    proptest! {
        #[test]
        fn direct_sum_of_almost_zero(m in arb_module(), n in arb_module()) {
            let s = AlmostSetup::new(2);
            let c = rat(2, 1);
            let sum = m.direct_sum(&n).unwrap();
            let both = almost_zero(&m, &s, c).unwrap() && almost_zero(&n, &s, c).unwrap();
            prop_assert_eq!(almost_zero(&sum, &s, c).unwrap(), both);
        }
    }
}
