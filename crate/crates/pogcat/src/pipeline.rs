//! From a circle-graded category with a `T` action to its Novikov hom
//! ranks, through finite approximations.
//!
//! Stages:
//! 1. for each step `P_i` of the factorial exhaustion of `Q/Z`, the
//!    restriction of `D` to the grades in `P_i` and its unorbit;
//! 2. the colimit of these against `D#(Q/Z)` on the grades of `D`;
//! 3. completion from `Q` to `R`, which needs `T^{step}` to act invertibly;
//! 4. base change to the Novikov ring, where the rank of `hom(x, y)` is the
//!    number of `T`-orbits on its basis, compared with the colimit's grade
//!    zero part.
//!
//! Each stage reports on its own; a failing stage does not stop the rest.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use pogcat_core::graded::ring_completion;
use pogcat_core::homology::AbelianGroup;
use pogcat_core::orbit::{basis_vector, unorbit_quotient, GradedCategory};
use pogcat_core::scalars::fmt_rational;
use pogcat_core::{rat, Pog, Rational};

use crate::commands::{default_window, matching_exhaustion, reconstruct_cmd, usage, CliError};
use crate::format::Workspace;
use crate::report::{Check, RankRow, Report, Status};

fn free(rank: usize) -> AbelianGroup {
    AbelianGroup { rank, torsion: Vec::new() }
}

/// `n` for a category graded by `(1/n)Z/Z`.
fn circle_scale(d: &GradedCategory) -> Option<u64> {
    match d.pog() {
        Pog::Quotient { base, sub: 1 } => match **base {
            Pog::Scaled(n) => Some(n),
            _ => None,
        },
        _ => None,
    }
}

/// Ranks of `hom((x, 0), (y, q))` in one stage, read off its unorbit and
/// cross-checked against the restricted category.
fn stage(d: &GradedCategory, sub: &Pog) -> Result<Check, CliError> {
    let (di, _) = d.restrict_grades(sub)?;
    let u = unorbit_quotient(&di)?.unorbit;
    let r = u.cat.check();
    let mut witnesses = r.failures.clone();
    let mut rows = Vec::new();
    let (step, order) = pogcat_core::orbit::cyclic(sub)?;
    let grades: Vec<Rational> = (0..order.unwrap_or(1)).map(|k| step * Rational::from_integer(k)).collect();
    for x in 0..d.objects().len() {
        for y in 0..d.objects().len() {
            for q in &grades {
                let direct = di.hom_graded(x, y, q).len();
                let (a, b) = (u.object(x, &rat(0, 1)), u.object(y, q));
                let seen = match (a, b) {
                    (Some(a), Some(b)) => u.cat.hom(a, b).len(),
                    _ => 0,
                };
                if seen != direct {
                    witnesses.push(format!("{} -> {}@{}: unorbit has {}, restriction has {}", d.objects()[x], d.objects()[y], fmt_rational(q), seen, direct));
                }
                if direct > 0 {
                    rows.push(RankRow::new(format!("{}@0 -> {}@{}", d.objects()[x], d.objects()[y], fmt_rational(q)), 0, q, &free(direct)));
                }
            }
        }
    }
    let ok = witnesses.is_empty();
    Ok(Check::new(
        String::new(),
        Status::of(ok),
        format!("{} objects, {} morphisms", u.cat.objects().len(), u.cat.gens().len()),
    )
    .with_witnesses(witnesses)
    .with_ranks(rows))
}

/// The permutation by which `T^{step}` acts on basis morphisms, if it is one
/// up to sign.
fn shift_permutation(d: &GradedCategory) -> Result<BTreeMap<usize, usize>, Vec<String>> {
    let mut perm = BTreeMap::new();
    let mut bad = Vec::new();
    for (g, m) in d.gens().iter().enumerate() {
        let v = d.shift_vec(&basis_vector(g));
        let mut it = v.iter();
        match (it.next(), it.next()) {
            (Some((h, s)), None) if *s == 1 || *s == -1 => {
                perm.insert(g, *h);
            }
            _ => bad.push(format!("T does not send {} to a basis morphism", m.name)),
        }
    }
    let images: BTreeSet<usize> = perm.values().copied().collect();
    if bad.is_empty() && images.len() != d.gens().len() {
        bad.push("T is not injective on basis morphisms".to_string());
    }
    if bad.is_empty() {
        Ok(perm)
    } else {
        Err(bad)
    }
}

pub fn pipeline(ws: &Workspace) -> Result<Report, CliError> {
    let decl = ws.pipeline.ok_or_else(|| usage("the workspace declares no [pipeline]"))?;
    let (name, d) = &ws.graded[decl.category];
    let n = circle_scale(d).ok_or_else(|| usage(format!("{} must be graded by (1/n)Z/Z, got {}", name, d.pog())))?;
    if !d.is_enriched() {
        return Err(usage(format!("{} carries no T action", name)));
    }
    if decl.depth == 0 {
        return Err(usage("the exhaustion depth must be at least 1"));
    }
    let mut report = Report::new("pipeline");
    let base = d.check();
    report.push(
        Check::new(format!("category {}", name), Status::of(base.passed()), format!("{} axioms checked", base.checked)).with_witnesses(base.failures),
    );

    let exh = matching_exhaustion(d, decl.depth)?;
    let mut last_rows = Vec::new();
    for (i, p) in exh.steps.iter().enumerate() {
        let k = match p {
            Pog::Quotient { base, .. } => match **base {
                Pog::Scaled(k) => k,
                _ => unreachable!("factorial steps are scaled"),
            },
            _ => unreachable!("steps of Q/Z are quotients"),
        };
        let sub = Pog::quotient(Pog::Scaled(k.gcd(&n)), 1)?;
        let label = format!("stage {} ({})", i + 1, p);
        match stage(d, &sub) {
            Ok(mut c) => {
                c.name = label;
                last_rows = c.ranks.clone();
                report.push(c);
            }
            Err(e) => report.push(Check::new(label, Status::Fail, e.to_string())),
        }
    }

    let rec = reconstruct_cmd(ws, name, decl.depth, Some(default_window(d)))?;
    let mut colimit = rec.checks.into_iter().next().expect("one check");
    colimit.name = "reconstruction".to_string();
    let rec_status = colimit.status;
    report.push(colimit);

    let completion = shift_permutation(d);
    match &completion {
        Ok(_) => report.push(Check::new("completion", Status::Pass, "T acts by a signed permutation, so the real completion is free over the rational one")),
        Err(bad) => report.push(Check::new("completion", Status::Fail, "T is not invertible on the basis").with_witnesses(bad.clone())),
    }

    let check = match completion {
        Err(_) => Check::new("base change", Status::Fail, "needs the completion stage"),
        Ok(perm) => {
            let lambda = ws.cutoffs.lambda;
            let ring = ring_completion(&Pog::Scaled(n), lambda)?.rank().unwrap_or(0);
            let colimit_rank: BTreeMap<String, usize> = last_rows
                .iter()
                .filter(|r| r.weight == "0")
                .map(|r| (r.hom.clone(), r.rank))
                .collect();
            let mut rows = Vec::new();
            let mut witnesses = Vec::new();
            for x in 0..d.objects().len() {
                for y in 0..d.objects().len() {
                    let basis: BTreeSet<usize> = d.hom(x, y).into_iter().collect();
                    let mut seen = BTreeSet::new();
                    let mut orbits = 0;
                    for g in &basis {
                        if seen.insert(*g) {
                            orbits += 1;
                            let mut h = perm[g];
                            while seen.insert(h) {
                                h = perm[&h];
                            }
                        }
                    }
                    let hom = format!("{} -> {}", d.objects()[x], d.objects()[y]);
                    let key = format!("{}@0 -> {}@0", d.objects()[x], d.objects()[y]);
                    let got = colimit_rank.get(&key).copied().unwrap_or(0);
                    if got != orbits {
                        witnesses.push(format!("{}: colimit gives {}, direct count gives {}", hom, got, orbits));
                    }
                    if orbits > 0 {
                        rows.push(RankRow::new(hom, 0, &lambda, &free(orbits * ring)));
                    }
                }
            }
            let status = if !witnesses.is_empty() {
                Status::Fail
            } else if rec_status != Status::Pass {
                witnesses.push("the reconstruction did not cover the grades of the category".to_string());
                rec_status
            } else {
                Status::Pass
            };
            Check::new(
                "base change",
                status,
                format!("Novikov ranks; Z-ranks below T^{} are {} per generator", fmt_rational(&lambda), ring),
            )
            .with_witnesses(witnesses)
            .with_ranks(rows)
        }
    };
    report.push(check);
    Ok(report)
}
