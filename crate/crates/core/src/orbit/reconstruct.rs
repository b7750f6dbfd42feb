use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::GradedCategory;
use crate::pog::{Exhaustion, Pog};
use crate::scalars::{fmt_rational, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    /// the chain was still growing on the window
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermSummary {
    pub pog: Pog,
    pub objects: usize,
    pub morphisms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructReport {
    pub status: Status,
    pub terms: Vec<TermSummary>,
    pub checked: usize,
    /// homs of the target the colimit does not reach, with ranks
    pub mismatches: Vec<String>,
}

type Term = (BTreeSet<(usize, Rational)>, BTreeSet<(usize, Rational)>);

/// Compares `colim_i D|_{P_i} # P_i` with `D # Q` on the objects `(d, p)`,
/// `p` in the window. Each term is the set of its objects and basis
/// morphisms `(f, p)`; the chain maps are inclusions, so the colimit is the
/// union.
pub fn reconstruct(d: &GradedCategory, exhaustion: &Exhaustion, window: &[Rational]) -> Result<ReconstructReport> {
    let pog = d.pog();
    let mut grades = Vec::new();
    for p in window {
        pog.check(p)?;
        grades.push(pog.normalize(p));
    }
    grades.sort();
    grades.dedup();
    let n = d.objects().len();
    let target_hom = |x: usize, p: &Rational, y: usize, q: &Rational| -> BTreeSet<(usize, Rational)> {
        d.hom_graded(x, y, &(q - p)).into_iter().map(|f| (f, *p)).collect()
    };

    let mut terms: Vec<Term> = Vec::new();
    let mut summaries = Vec::new();
    for step in &exhaustion.steps {
        let here: Vec<Rational> = grades.iter().filter(|p| step.contains(p)).copied().collect();
        let objects: BTreeSet<(usize, Rational)> = (0..n).flat_map(|x| here.iter().map(move |p| (x, *p))).collect();
        let mut gens = BTreeSet::new();
        for (f, m) in d.gens().iter().enumerate() {
            if !step.contains(&m.grade) {
                continue;
            }
            for p in &here {
                if objects.contains(&(m.target, pog.add(p, &m.grade))) {
                    gens.insert((f, *p));
                }
            }
        }
        summaries.push(TermSummary { pog: step.clone(), objects: objects.len(), morphisms: gens.len() });
        terms.push((objects, gens));
    }

    let mut mismatches = Vec::new();
    let mut checked = 0;
    for w in terms.windows(2) {
        checked += 1;
        if !(w[0].0.is_subset(&w[1].0) && w[0].1.is_subset(&w[1].1)) {
            return Err(Error::Invalid("the exhaustion terms do not form a chain".into()));
        }
    }
    let mut colim: Term = (BTreeSet::new(), BTreeSet::new());
    for (o, g) in &terms {
        colim.0.extend(o.iter().copied());
        colim.1.extend(g.iter().copied());
    }
    let name = |x: usize, p: &Rational| format!("{}@{}", d.objects()[x], fmt_rational(p));
    let mut per_pair: BTreeMap<((usize, Rational), (usize, Rational)), usize> = BTreeMap::new();
    for (f, p) in &colim.1 {
        let m = &d.gens()[*f];
        *per_pair.entry(((m.source, *p), (m.target, pog.add(p, &m.grade)))).or_default() += 1;
    }
    for x in 0..n {
        for p in &grades {
            checked += 1;
            if !colim.0.contains(&(x, *p)) {
                mismatches.push(format!("object {} is not reached", name(x, p)));
                continue;
            }
            for y in 0..n {
                for q in &grades {
                    let want = target_hom(x, p, y, q).len();
                    let got = per_pair.get(&((x, *p), (y, *q))).copied().unwrap_or(0);
                    checked += 1;
                    if got != want {
                        mismatches.push(format!("{} -> {}: colimit rank {}, target rank {}", name(x, p), name(y, q), got, want));
                    }
                }
            }
        }
    }
    // composition in the colimit stays inside it
    for (f, p) in &colim.1 {
        for (g, q) in &colim.1 {
            let (mf, mg) = (&d.gens()[*f], &d.gens()[*g]);
            if mf.target != mg.source || pog.add(p, &mf.grade) != *q {
                continue;
            }
            checked += 1;
            if d.compose(*f, *g).keys().any(|h| !colim.1.contains(&(*h, *p))) {
                mismatches.push(format!("{} * {} leaves the colimit", mf.name, mg.name));
            }
        }
    }

    let growing = terms.len() < 2 || terms[terms.len() - 1] != terms[terms.len() - 2];
    let status = if mismatches.is_empty() {
        Status::Pass
    } else if growing {
        Status::Inconclusive
    } else {
        Status::Fail
    };
    Ok(ReconstructReport { status, terms: summaries, checked, mismatches })
}
