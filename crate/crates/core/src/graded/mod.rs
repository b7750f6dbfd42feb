//! Graded modules over `Z[P+]` with finite support, persistence modules and
//! truncated completions of the monoid ring.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::homology::{smith_normal_form, AbelianGroup, IntMatrix};
use crate::pog::Pog;
use crate::scalars::{fmt_rational, Rational};
use crate::{Error, Result};

mod persistence;
mod ring;

pub use persistence::{complete_persistence, hom_persistence, HomReport, PersistenceModule};
pub use ring::{monomial_quotient_rank, ring_completion, TruncatedRing};

/// `Z^rank / im(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub rank: usize,
    pub relations: IntMatrix,
}

impl Component {
    pub fn free(rank: usize) -> Self {
        Component { rank, relations: IntMatrix::zeros(rank, 0) }
    }

    pub fn presented(rank: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != rank {
            return Err(Error::ShapeMismatch(format!("relations for rank {} have {} rows", rank, relations.rows())));
        }
        Ok(Component { rank, relations })
    }

    pub fn group(&self) -> Result<AbelianGroup> {
        AbelianGroup::cokernel(&self.relations)
    }

    /// Every column of `m` is zero in this component.
    fn kills(&self, m: &IntMatrix) -> Result<bool> {
        let snf = smith_normal_form(&self.relations)?;
        for j in 0..m.cols() {
            if !snf.spans(&m.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn sub_matrices(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, a.get(i, j) - b.get(i, j));
        }
    }
    out
}

pub(crate) fn kron(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if x == 0 {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(i * b.rows() + k, j * b.cols() + l, x * b.get(k, l));
                }
            }
        }
    }
    out
}

/// A `P`-graded `Z[P+]`-module with finitely many nonzero grades.
///
/// The action of a cone element `rho` at grade `g` is stored as an integer
/// matrix from the component at `g` to the component at `g + rho`; actions
/// are only recorded between grades in the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    pog: Pog,
    components: BTreeMap<Rational, Component>,
    actions: BTreeMap<(Rational, Rational), IntMatrix>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl ModuleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// How grades are identified when passing to a quotient grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Periodicity {
    /// Colimit along the given maps `M(g) -> M(g + 1/m)`, keyed by source grade.
    Glue(BTreeMap<Rational, IntMatrix>),
    /// Keep every piece; the subgroup part of the action becomes internal.
    Regrade,
}

impl GradedModule {
    pub fn new(pog: Pog) -> Self {
        GradedModule { pog, components: BTreeMap::new(), actions: BTreeMap::new() }
    }

    /// Rank one in every grade of `start + (pog ∩ [0, top - start))`, all actions the identity.
    pub fn monomials(pog: Pog, start: Rational, top: Rational) -> Result<Self> {
        let grades = pog.elements_in(&start, &top)?;
        let grades: Vec<Rational> = grades.into_iter().filter(|g| *g < top).collect();
        let mut m = GradedModule::new(pog);
        for g in &grades {
            m.add_component(*g, Component::free(1))?;
        }
        for g in &grades {
            for h in &grades {
                if h > g {
                    m.set_action(*g, h - g, IntMatrix::identity(1))?;
                }
            }
        }
        Ok(m)
    }

    pub fn pog(&self) -> &Pog {
        &self.pog
    }

    pub fn add_component(&mut self, grade: Rational, c: Component) -> Result<()> {
        self.pog.check(&grade)?;
        self.components.insert(self.pog.normalize(&grade), c);
        Ok(())
    }

    pub fn target(&self, grade: &Rational, rho: &Rational) -> Rational {
        self.pog.add(grade, rho)
    }

    pub fn set_action(&mut self, grade: Rational, rho: Rational, m: IntMatrix) -> Result<()> {
        let grade = self.pog.normalize(&grade);
        self.pog.base().check(&rho)?;
        if rho.is_negative() {
            return Err(Error::OutsideCone(fmt_rational(&rho)));
        }
        let t = self.target(&grade, &rho);
        let (Some(src), Some(tgt)) = (self.components.get(&grade), self.components.get(&t)) else {
            return Err(Error::ShapeMismatch(format!(
                "action {} from {} leaves the support",
                fmt_rational(&rho),
                fmt_rational(&grade)
            )));
        };
        if m.rows() != tgt.rank || m.cols() != src.rank {
            return Err(Error::ShapeMismatch(format!("action {} at {}", fmt_rational(&rho), fmt_rational(&grade))));
        }
        self.actions.insert((grade, rho), m);
        Ok(())
    }

    pub fn support(&self) -> impl Iterator<Item = &Rational> {
        self.components.keys()
    }

    pub fn component(&self, grade: &Rational) -> Option<&Component> {
        self.components.get(&self.pog.normalize(grade))
    }

    pub fn action(&self, grade: &Rational, rho: &Rational) -> Option<IntMatrix> {
        let grade = self.pog.normalize(grade);
        if rho.is_zero() {
            if let Some(m) = self.actions.get(&(grade, *rho)) {
                return Some(m.clone());
            }
            return self.components.get(&grade).map(|c| IntMatrix::identity(c.rank));
        }
        self.actions.get(&(grade, *rho)).cloned()
    }

    pub fn actions(&self) -> impl Iterator<Item = (&(Rational, Rational), &IntMatrix)> {
        self.actions.iter()
    }

    fn rhos(&self) -> BTreeSet<Rational> {
        self.actions.keys().map(|(_, r)| *r).collect()
    }

    /// Abelian group of each component, in grade order.
    pub fn groups(&self) -> Result<Vec<(Rational, AbelianGroup)>> {
        self.components.iter().map(|(g, c)| Ok((*g, c.group()?))).collect()
    }

    /// The component at `grade` modulo images of positive actions whose
    /// exponent lies in `cone`.
    pub fn indecomposables(&self, grade: &Rational, cone: &Pog) -> Result<AbelianGroup> {
        let grade = self.pog.normalize(grade);
        let Some(c) = self.components.get(&grade) else { return Ok(AbelianGroup::default()) };
        let mut span = c.relations.clone();
        for ((g, rho), m) in &self.actions {
            if rho.is_positive() && cone.contains(rho) && self.target(g, rho) == grade {
                span = span.hcat(m)?;
            }
        }
        AbelianGroup::cokernel(&span)
    }

    pub fn restrict(&self, sub: &Pog) -> Result<GradedModule> {
        if !sub.is_subgroup_of(&self.pog) {
            return Err(Error::UnsupportedInclusion { sub: sub.to_string(), sup: self.pog.to_string() });
        }
        let mut out = GradedModule::new(sub.clone());
        for (g, c) in &self.components {
            if sub.contains(g) {
                out.components.insert(*g, c.clone());
            }
        }
        for ((g, rho), m) in &self.actions {
            if sub.contains(g) && sub.base().contains(rho) {
                out.actions.insert((*g, *rho), m.clone());
            }
        }
        Ok(out)
    }

    /// Tensor product over `Z[P+]`, keeping grades below `top` when given.
    pub fn tensor(&self, other: &GradedModule, top: Option<Rational>) -> Result<GradedModule> {
        if self.pog != other.pog {
            return Err(Error::DescriptorMismatch(self.pog.to_string(), other.pog.to_string()));
        }
        let pog = &self.pog;
        let mut pieces: BTreeMap<Rational, Vec<(Rational, Rational)>> = BTreeMap::new();
        for g in self.components.keys() {
            for h in other.components.keys() {
                let t = pog.add(g, h);
                if top.is_none_or(|c| t < c) {
                    pieces.entry(t).or_default().push((*g, *h));
                }
            }
        }
        let rank = |g: &Rational, h: &Rational| self.components[g].rank * other.components[h].rank;
        let offset = |t: &Rational, gh: (Rational, Rational)| -> Option<usize> {
            let list = pieces.get(t)?;
            let pos = list.iter().position(|p| *p == gh)?;
            Some(list[..pos].iter().map(|(a, b)| rank(a, b)).sum())
        };
        let total = |t: &Rational| pieces.get(t).map_or(0, |l| l.iter().map(|(a, b)| rank(a, b)).sum::<usize>());

        let mut rels: BTreeMap<Rational, Vec<Vec<i64>>> = BTreeMap::new();
        for (t, list) in &pieces {
            let n = total(t);
            let col_of = |off: usize, block: &IntMatrix, j: usize| {
                let mut v = vec![0i64; n];
                for i in 0..block.rows() {
                    v[off + i] = block.get(i, j);
                }
                v
            };
            let out = rels.entry(*t).or_default();
            for (g, h) in list {
                let (a, b) = (&self.components[g], &other.components[h]);
                let off = offset(t, (*g, *h)).unwrap_or(0);
                for blk in [kron(&a.relations, &IntMatrix::identity(b.rank)), kron(&IntMatrix::identity(a.rank), &b.relations)] {
                    for j in 0..blk.cols() {
                        out.push(col_of(off, &blk, j));
                    }
                }
            }
        }
        let rhos: BTreeSet<Rational> = self.rhos().union(&other.rhos()).copied().collect();
        let mut actions: BTreeMap<(Rational, Rational), IntMatrix> = BTreeMap::new();
        for (t, list) in &pieces {
            for rho in &rhos {
                let t2 = pog.add(t, rho);
                if !pieces.contains_key(&t2) || rho.is_zero() {
                    continue;
                }
                let mut m = IntMatrix::zeros(total(&t2), total(t));
                let mut any = false;
                for (g, h) in list {
                    let src = offset(t, (*g, *h)).unwrap_or(0);
                    let (ra, rb) = (self.components[g].rank, other.components[h].rank);
                    let left = self.action(g, rho).and_then(|a| Some((a, offset(&t2, (pog.add(g, rho), *h))?)));
                    let right = other.action(h, rho).and_then(|b| Some((b, offset(&t2, (*g, pog.add(h, rho)))?)));
                    if let (Some((a, o1)), Some((b, o2))) = (&left, &right) {
                        // balancing: rho m (x) n = m (x) rho n
                        let l = kron(a, &IntMatrix::identity(rb));
                        let r = kron(&IntMatrix::identity(ra), b);
                        let n = total(&t2);
                        for j in 0..l.cols() {
                            let mut v = vec![0i64; n];
                            for i in 0..l.rows() {
                                v[o1 + i] += l.get(i, j);
                            }
                            for i in 0..r.rows() {
                                v[o2 + i] -= r.get(i, j);
                            }
                            rels.entry(t2).or_default().push(v);
                        }
                    }
                    let block = match (left, right) {
                        (Some((a, o)), _) => Some((kron(&a, &IntMatrix::identity(rb)), o)),
                        (None, Some((b, o))) => Some((kron(&IntMatrix::identity(ra), &b), o)),
                        _ => None,
                    };
                    if let Some((blk, o)) = block {
                        any = true;
                        for i in 0..blk.rows() {
                            for j in 0..blk.cols() {
                                m.set(o + i, src + j, blk.get(i, j));
                            }
                        }
                    }
                }
                if any {
                    actions.insert((*t, *rho), m);
                }
            }
        }
        let mut out = GradedModule::new(pog.clone());
        for t in pieces.keys() {
            let n = total(t);
            let cols = rels.remove(t).unwrap_or_default();
            out.components.insert(*t, Component::presented(n, IntMatrix::from_columns(n, &cols)?)?);
        }
        out.actions = actions;
        Ok(out)
    }

    /// Pass to the grading by `P / (1/sub)Z`.
    pub fn equivariantize(&self, sub: u64, periodicity: &Periodicity) -> Result<GradedModule> {
        let new_pog = match &self.pog {
            Pog::Quotient { base, sub: m } if sub.is_multiple_of(*m) => Pog::quotient((**base).clone(), sub)?,
            Pog::Quotient { .. } => {
                return Err(Error::UnsupportedInclusion {
                    sub: Pog::Scaled(sub).to_string(),
                    sup: self.pog.to_string(),
                })
            }
            other => Pog::quotient(other.clone(), sub)?,
        };
        let shift = Rational::new(1, sub as i64);
        let mut cosets: BTreeMap<Rational, Vec<Rational>> = BTreeMap::new();
        for g in self.components.keys() {
            cosets.entry(new_pog.normalize(g)).or_default().push(*g);
        }
        let offset = |c: &Rational, g: &Rational| -> usize {
            cosets[c].iter().take_while(|x| *x != g).map(|x| self.components[x].rank).sum()
        };
        let total = |c: &Rational| -> usize { cosets[c].iter().map(|x| self.components[x].rank).sum() };

        let mut out = GradedModule::new(new_pog.clone());
        for (c, list) in &cosets {
            let n = total(c);
            let mut cols: Vec<Vec<i64>> = Vec::new();
            for g in list {
                let comp = &self.components[g];
                let off = offset(c, g);
                for j in 0..comp.relations.cols() {
                    let mut v = vec![0i64; n];
                    for i in 0..comp.rank {
                        v[off + i] = comp.relations.get(i, j);
                    }
                    cols.push(v);
                }
                if let Periodicity::Glue(maps) = periodicity {
                    let g2 = self.pog.add(g, &shift);
                    if g2 == *g || !self.components.contains_key(&g2) {
                        continue;
                    }
                    let phi = maps.get(g).ok_or_else(|| Error::MissingPeriodicity(fmt_rational(g)))?;
                    let off2 = offset(c, &g2);
                    if phi.cols() != comp.rank || phi.rows() != self.components[&g2].rank {
                        return Err(Error::ShapeMismatch(format!("periodicity map at {}", fmt_rational(g))));
                    }
                    for j in 0..comp.rank {
                        let mut v = vec![0i64; n];
                        v[off + j] += 1;
                        for i in 0..phi.rows() {
                            v[off2 + i] -= phi.get(i, j);
                        }
                        cols.push(v);
                    }
                }
            }
            out.components.insert(*c, Component::presented(n, IntMatrix::from_columns(n, &cols)?)?);
        }
        for rho in self.rhos() {
            for (c, list) in &cosets {
                let c2 = new_pog.add(c, &rho);
                if !cosets.contains_key(&c2) {
                    continue;
                }
                let mut m = IntMatrix::zeros(total(&c2), total(c));
                let mut any = false;
                for g in list {
                    let Some(a) = self.actions.get(&(*g, rho)) else { continue };
                    any = true;
                    let (o1, o2) = (offset(c, g), offset(&c2, &self.target(g, &rho)));
                    for i in 0..a.rows() {
                        for j in 0..a.cols() {
                            m.set(o2 + i, o1 + j, a.get(i, j));
                        }
                    }
                }
                if any {
                    out.actions.insert((*c, rho), m);
                }
            }
        }
        Ok(out)
    }
}

/// Functor-law sweep: identities, well-definedness on relations and
/// `rho' . rho = rho + rho'` on every stored composable pair.
pub fn module_check(m: &GradedModule) -> Result<ModuleReport> {
    let mut report = ModuleReport::default();
    for ((g, rho), a) in &m.actions {
        let tgt = &m.components[&m.target(g, rho)];
        report.checked += 1;
        if rho.is_zero() && *a != IntMatrix::identity(a.cols()) {
            report.violations.push(format!("action 0 at {} is not the identity", fmt_rational(g)));
        }
        if !tgt.kills(&a.mul(&m.components[g].relations)?)? {
            report.violations.push(format!("action {} at {} does not respect relations", fmt_rational(rho), fmt_rational(g)));
        }
    }
    for ((g, rho), a) in &m.actions {
        let h = m.target(g, rho);
        for ((h2, rho2), b) in m.actions.range((h, Rational::zero())..) {
            if *h2 != h {
                break;
            }
            let Some(c) = m.actions.get(&(*g, rho + rho2)) else { continue };
            report.checked += 1;
            let tgt = &m.components[&m.target(&h, rho2)];
            if !tgt.kills(&sub_matrices(&b.mul(a)?, c))? {
                report.violations.push(format!(
                    "action {} after {} at {} differs from action {}",
                    fmt_rational(rho2),
                    fmt_rational(rho),
                    fmt_rational(g),
                    fmt_rational(&(rho + rho2))
                ));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use proptest::prelude::*;

    fn m1(x: i64) -> IntMatrix {
        IntMatrix::from_rows(&[vec![x]]).unwrap()
    }

    #[test]
    fn module_check_examples() {
        let m = GradedModule::monomials(Pog::integers(), rat(0, 1), rat(1, 1)).unwrap();
        assert!(module_check(&m).unwrap().passed());

        let mut bad = GradedModule::monomials(Pog::integers(), rat(0, 1), rat(3, 1)).unwrap();
        bad.set_action(rat(0, 1), rat(2, 1), m1(2)).unwrap();
        let r = module_check(&bad).unwrap();
        assert!(!r.passed());
        assert!(r.violations[0].contains("action 1 after 1 at 0"));

        // t^theta Z[[t]] for theta in {0, 1/2}, grades below 3
        let big_m = GradedModule::monomials(Pog::Scaled(2), rat(0, 1), rat(3, 1)).unwrap();
        assert_eq!(big_m.support().count(), 6);
        assert!(module_check(&big_m).unwrap().passed());
    }

    #[test]
    fn relations_are_respected() {
        let mut m = GradedModule::new(Pog::integers());
        m.add_component(rat(0, 1), Component::free(1)).unwrap();
        m.add_component(rat(1, 1), Component::presented(1, m1(2)).unwrap()).unwrap();
        m.set_action(rat(0, 1), rat(1, 1), m1(3)).unwrap();
        assert!(module_check(&m).unwrap().passed());
        assert_eq!(m.groups().unwrap()[1].1.to_string(), "Z/2");
        // 3 * 2 = 6 is zero mod 2, while 3 * 3 is not zero mod 4
        let mut n = m.clone();
        n.components.insert(rat(0, 1), Component::presented(1, m1(2)).unwrap());
        assert!(module_check(&n).unwrap().passed());
        let mut n = m.clone();
        n.components.insert(rat(0, 1), Component::presented(1, m1(3)).unwrap());
        n.components.insert(rat(1, 1), Component::presented(1, m1(4)).unwrap());
        assert!(!module_check(&n).unwrap().passed());
    }

    #[test]
    fn restriction() {
        let big_m = GradedModule::monomials(Pog::Scaled(2), rat(0, 1), rat(3, 1)).unwrap();
        let r = big_m.restrict(&Pog::integers()).unwrap();
        let expected: Vec<_> = big_m.support().copied().filter(|g| g.is_integer()).collect();
        assert_eq!(r.support().copied().collect::<Vec<_>>(), expected);
        assert_eq!(r.action(&rat(0, 1), &rat(1, 1)), Some(m1(1)));
        assert!(r.action(&rat(0, 1), &rat(1, 2)).is_none());
        assert!(module_check(&r).unwrap().passed());
        assert_eq!(big_m.restrict(&Pog::Scaled(2)).unwrap(), big_m);
        assert!(r.restrict(&Pog::Scaled(2)).is_err());
    }

    #[test]
    fn restriction_is_monoidal() {
        let top = rat(4, 1);
        let a = GradedModule::monomials(Pog::Scaled(2), rat(0, 1), top).unwrap();
        let b = GradedModule::monomials(Pog::Scaled(2), rat(1, 2), top).unwrap();
        let z = Pog::integers();
        let lhs = a.tensor(&b, Some(top)).unwrap().restrict(&z).unwrap();
        let rhs = a.restrict(&z).unwrap().tensor(&b.restrict(&z).unwrap(), Some(top)).unwrap();
        assert_eq!(lhs.groups().unwrap(), rhs.groups().unwrap());
        assert!(module_check(&lhs).unwrap().passed());
        assert!(module_check(&rhs).unwrap().passed());
        // free rank one generated at 1/2: every grade is Z
        let ab = a.tensor(&b, Some(top)).unwrap();
        assert!(ab.groups().unwrap().iter().all(|(_, g)| g.to_string() == "Z"));
        assert_eq!(ab.support().next(), Some(&rat(1, 2)));
    }

    #[test]
    fn equivariantize_examples() {
        let mut m = GradedModule::monomials(Pog::integers(), rat(0, 1), rat(3, 1)).unwrap();
        m.actions.clear();
        let ident: BTreeMap<_, _> = [(rat(0, 1), m1(1)), (rat(1, 1), m1(1))].into_iter().collect();
        let e = m.equivariantize(1, &Periodicity::Glue(ident)).unwrap();
        assert_eq!(e.groups().unwrap(), vec![(rat(0, 1), AbelianGroup { rank: 1, torsion: vec![] })]);
        assert!(matches!(
            m.equivariantize(1, &Periodicity::Glue(BTreeMap::new())),
            Err(Error::MissingPeriodicity(_))
        ));

        let big_m = GradedModule::monomials(Pog::Scaled(2), rat(0, 1), rat(3, 1)).unwrap();
        let e = big_m.equivariantize(1, &Periodicity::Regrade).unwrap();
        assert_eq!(e.support().copied().collect::<Vec<_>>(), [rat(0, 1), rat(1, 2)]);
        assert!(module_check(&e).unwrap().passed());
        for g in [rat(0, 1), rat(1, 2)] {
            let gens = e.indecomposables(&g, &Pog::integers()).unwrap();
            assert_eq!(gens, AbelianGroup { rank: 1, torsion: vec![] });
        }
    }

    #[test]
    fn nested_equivariantization() {
        let mut m = GradedModule::new(Pog::Scaled(4));
        for g in [rat(0, 1), rat(1, 2), rat(1, 1)] {
            m.add_component(g, Component::free(1)).unwrap();
        }
        let glue = |pairs: &[Rational]| Periodicity::Glue(pairs.iter().map(|g| (*g, m1(1))).collect());
        let step1 = m.equivariantize(1, &glue(&[rat(0, 1)])).unwrap();
        let pieces = IntMatrix::from_rows(&[vec![1, 1]]).unwrap();
        // in the quotient grading [1/2] + 1/2 wraps around to [0]
        let back = IntMatrix::from_rows(&[vec![1], vec![0]]).unwrap();
        let second = Periodicity::Glue([(rat(0, 1), pieces), (rat(1, 2), back)].into_iter().collect());
        let two_step = step1.equivariantize(2, &second).unwrap();
        let one_step = m.equivariantize(2, &glue(&[rat(0, 1), rat(1, 2)])).unwrap();
        assert_eq!(two_step.groups().unwrap(), one_step.groups().unwrap());
        assert_eq!(one_step.groups().unwrap().len(), 1);
    }

    proptest! {
        #[test]
        fn restrict_and_equivariantize_commute(top in 1i64..4, start in 0i64..4) {
            let m = GradedModule::monomials(Pog::Scaled(2), rat(start, 2), rat(top, 1) + rat(start, 2)).unwrap();
            let a = m.restrict(&Pog::integers()).unwrap().equivariantize(1, &Periodicity::Regrade).unwrap();
            let b = m.equivariantize(1, &Periodicity::Regrade).unwrap()
                .restrict(&Pog::quotient(Pog::integers(), 1).unwrap()).unwrap();
            prop_assert_eq!(a.groups().unwrap(), b.groups().unwrap());
        }
    }
}
