use std::collections::BTreeSet;

use pogcat_core::ainf::{
    check_cainf, check_module, for_each_tuple, functor_residual, gr_homology, image_homology, outgoing, AinfCategory, AinfFunctor, AinfReport, CAinfCategory, CAinfFunctor,
    Chain, Yoneda,
};
use pogcat_core::constructions::{
    bc_category, check_eligible, compare_bc, localize, search_bounding_cochains, telescope_colimit, Quotient, TwGen, Twisted, TwistedComplex,
    Word,
};
use pogcat_core::graded::{monomial_quotient_rank, ring_completion};
use pogcat_core::homology::AbelianGroup;
use pogcat_core::orbit::{
    enriched::{orbit_pog, orbit_quotient, unorbit_pog, unorbit_quotient},
    orbit, reconstruct::reconstruct, unorbit, GradedCategory,
};
use pogcat_core::pog::exhaustion;
use pogcat_core::scalars::{fmt_rational, NovikovElt};
use pogcat_core::{rat, Pog, Rational};

use crate::format::{format_chain, ParseError, Workspace};
use crate::report::{Check, RankRow, Report, Status};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}:{error}")]
    Parse { path: String, error: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Core(#[from] pogcat_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// At most this many witnesses are listed per check.
const WITNESSES: usize = 20;

fn capped(items: impl IntoIterator<Item = String>) -> Vec<String> {
    let all: Vec<String> = items.into_iter().collect();
    let n = all.len();
    let mut out: Vec<String> = all.into_iter().take(WITNESSES).collect();
    if n > WITNESSES {
        out.push(format!("... and {} more", n - WITNESSES));
    }
    out
}

fn relation_check(name: String, r: &AinfReport, dmax: usize) -> Check {
    let mut summary = format!("{} relations up to arity {}", r.checked, dmax);
    if r.truncated > 0 {
        summary += &format!(", {} cut by the length bound", r.truncated);
    }
    if !r.passed() {
        summary += &format!(", {} failed", r.failures.len());
    }
    Check::new(name, Status::of(r.passed()), summary).with_witnesses(capped(r.failures.iter().map(|f| f.to_string())))
}

fn find_category<'a>(ws: &'a Workspace, name: &str) -> Result<&'a CAinfCategory, CliError> {
    ws.category(name).ok_or_else(|| usage(format!("no category named {:?}", name)))
}

fn find_graded<'a>(ws: &'a Workspace, name: &str) -> Result<&'a GradedCategory, CliError> {
    ws.graded_category(name).ok_or_else(|| usage(format!("no graded category named {:?}", name)))
}

/// `Gr` homology of every hom between the given objects, one row per
/// nonzero group.
pub fn gr_rank_rows<C: AinfCategory>(cat: &C, objects: &[C::Obj]) -> Result<Vec<RankRow>, CliError> {
    let mut rows = Vec::new();
    for x in objects {
        for y in objects {
            let hom = format!("{} -> {}", cat.obj_name(x), cat.obj_name(y));
            for s in gr_homology(cat, x, y)? {
                for (deg, g) in &s.homology {
                    if !g.is_zero() {
                        rows.push(RankRow::new(hom.clone(), *deg as i64, &s.weight, g));
                    }
                }
            }
        }
    }
    Ok(rows)
}

fn free(rank: usize) -> AbelianGroup {
    AbelianGroup { rank, torsion: Vec::new() }
}

/// Ranks of `hom(x, y)` in each grade of a graded category.
pub fn graded_rank_rows(c: &GradedCategory) -> Vec<RankRow> {
    let mut rows = Vec::new();
    for x in 0..c.objects().len() {
        for y in 0..c.objects().len() {
            let grades: BTreeSet<Rational> = c.hom(x, y).iter().map(|g| c.gens()[*g].grade).collect();
            for p in grades {
                let n = c.hom_graded(x, y, &p).len();
                rows.push(RankRow::new(format!("{} -> {}", c.objects()[x], c.objects()[y]), 0, &p, &free(n)));
            }
        }
    }
    rows
}

fn functor_sweep<F: AinfFunctor>(f: &F, dmax: usize) -> (usize, Vec<String>) {
    let s = f.source_cat();
    let t = f.target_cat();
    let mut checked = 0;
    let mut failures = Vec::new();
    for x in s.objects() {
        checked += 1;
        let r = functor_residual(f, &[], &x);
        if !r.is_zero() {
            failures.push(format!("at {}: {}", s.obj_name(&x), format_chain(&r, |g| t.gen_name(g))));
        }
    }
    let outs = outgoing(s);
    for d in 1..=dmax {
        for_each_tuple(s, &outs, d, |tuple| {
            checked += 1;
            let r = functor_residual(f, tuple, &s.source(&tuple[0]));
            if !r.is_zero() {
                let names: Vec<String> = tuple.iter().map(|g| s.gen_name(g)).collect();
                failures.push(format!("on ({}): {}", names.join(", "), format_chain(&r, |g| t.gen_name(g))));
            }
        });
    }
    (checked, failures)
}

/// Every declared structure, checked up to the workspace arity.
pub fn check(ws: &Workspace) -> Result<Report, CliError> {
    let dmax = ws.cutoffs.dmax;
    let mut report = Report::new("check");
    for (name, c) in &ws.categories {
        report.push(relation_check(format!("category {}", name), &check_cainf(c, dmax), dmax));
    }
    for (name, c) in &ws.graded {
        let r = c.check();
        report.push(
            Check::new(format!("graded category {}", name), Status::of(r.passed()), format!("{} axioms checked", r.checked))
                .with_witnesses(capped(r.failures)),
        );
    }
    for a in &ws.actions {
        let (cname, c) = &ws.graded[a.category];
        let check = match a.action.check(c, &a.group) {
            Ok(()) => Check::new(format!("action {}", a.name), Status::Pass, format!("{} acts on {}", a.group, cname)),
            Err(e) => Check::new(format!("action {}", a.name), Status::Fail, e.to_string()),
        };
        report.push(check);
    }
    for m in &ws.modules {
        let (cname, c) = &ws.categories[m.category];
        let y = Yoneda::new(c, m.object);
        let mut check = relation_check(format!("module {}", m.name), &check_module(&y, dmax), dmax);
        check.summary = format!("hom(-, {}) over {}: {}", c.object_names()[m.object], cname, check.summary);
        report.push(check);
    }
    for fd in &ws.functors {
        let (s, t) = (&ws.categories[fd.source].1, &ws.categories[fd.target].1);
        let name = format!("functor {}", fd.name);
        let built = match &fd.objects {
            None => CAinfFunctor::by_names(s, t),
            Some(map) => CAinfFunctor::new(s, t, map.clone()),
        };
        let mut f = match built {
            Ok(f) => f,
            Err(e) => {
                report.push(Check::new(name, Status::Fail, e.to_string()));
                continue;
            }
        };
        for (inputs, v) in &fd.phi {
            f.set_phi(inputs.clone(), v.clone());
        }
        let mut bad = None;
        for (x, v) in &fd.phi0 {
            if let Err(e) = f.set_phi0(*x, v.clone()) {
                bad = Some(e.to_string());
            }
        }
        if let Some(e) = bad {
            report.push(Check::new(name, Status::Fail, e));
            continue;
        }
        let (checked, failures) = functor_sweep(&f, dmax);
        let summary = format!("{} equations up to arity {}, {} failed", checked, dmax, failures.len());
        report.push(Check::new(name, Status::of(failures.is_empty()), summary).with_witnesses(capped(failures)));
    }
    if report.checks.is_empty() {
        return Err(usage("the workspace declares nothing to check"));
    }
    Ok(report)
}

/// The truncated monomial module over `(1/n)Z`, its quotients by powers of
/// the augmentation ideal and the divergent series that only the completion
/// contains.
pub fn demo_novikov(n: u64, cutoff: Rational) -> Result<Report, CliError> {
    if n == 0 {
        return Err(usage("n must be at least 1"));
    }
    if cutoff <= rat(0, 1) {
        return Err(usage(format!("cutoff must be positive, got {}", fmt_rational(&cutoff))));
    }
    let mut report = Report::new("demo-novikov");
    let top = cutoff.ceil().to_integer().max(1) as u64;
    let mut rows = Vec::new();
    let mut witnesses = Vec::new();
    let mut ok = true;
    for k in 1..=top {
        let got = monomial_quotient_rank(n, k)?;
        // exponents j/n in [0, k)
        let expected = (n * k) as usize;
        ok &= got == expected;
        rows.push(RankRow::new(format!("M/I^{}", k), 0, &rat(k as i64, 1), &free(got)));
        witnesses.push(format!("k = {}: rank {}, Z[R]/I^{} in denominators dividing {} has rank {}", k, got, k, n, expected));
    }
    report.push(
        Check::new("quotients", Status::of(ok), format!("M/I^k for k = 1..{} over (1/{})Z", top, n)).with_witnesses(witnesses).with_ranks(rows),
    );

    let mut refine = Vec::new();
    let mut ok = true;
    for m in [n * 2, n * 3] {
        for k in 1..=top {
            let (small, big) = (monomial_quotient_rank(n, k)?, monomial_quotient_rank(m, k)?);
            // (1/n)Z sits inside (1/m)Z with index m/n in every unit interval
            let fine = big == small * (m / n) as usize;
            ok &= fine;
            if !fine {
                refine.push(format!("k = {}: (1/{})Z gives {}, (1/{})Z gives {}", k, n, small, m, big));
            }
        }
    }
    report.push(Check::new("refinement", Status::of(ok), format!("ranks over (1/{})Z and (1/{})Z are compatible", 2 * n, 3 * n)).with_witnesses(refine));

    let ring = ring_completion(&Pog::Scaled(n), cutoff)?;
    let limit = ring.rank().ok_or_else(|| usage("the truncated ring is not finite"))?;
    let direct = (0..).map(|j| rat(j, n as i64)).take_while(|e| *e < cutoff).count();
    report.push(Check::new(
        "tower limit",
        Status::of(limit == direct),
        format!("Λ/I_c at c = {} over (1/{})Z has rank {}", fmt_rational(&cutoff), n, limit),
    ));

    // Σ_{m >= 1} T^{m + 1/m}: finitely many terms below every cutoff, but
    // infinitely many in all, and with unbounded denominators
    let q = ring_completion(&Pog::Rationals, cutoff)?;
    let terms: Vec<(Rational, i64)> = (1..).map(|m| (rat(m, 1) + rat(1, m), 1)).take_while(|(e, _)| *e < cutoff).collect();
    let below: NovikovElt = q.element(terms.iter().cloned())?;
    let mut growth = Vec::new();
    for c in [cutoff, cutoff + rat(1, 1), cutoff + rat(2, 1)] {
        let count = (1..).map(|m| rat(m, 1) + rat(1, m)).take_while(|e| *e < c).count();
        growth.push(format!("{} terms below {}", count, fmt_rational(&c)));
    }
    let outside_grid = (1..).map(|m| rat(m, 1) + rat(1, m)).take(2 * n as usize + 2).any(|e| !Pog::Scaled(n).contains(&e));
    report.push(
        Check::new(
            "divergence witness",
            Status::of(outside_grid),
            format!("sum of T^(m+1/m) has {} terms below the cutoff and lies in the completion, not in M", below.terms().count()),
        )
        .with_witnesses(growth),
    );
    Ok(report)
}

/// `C[G]` for a declared action, with the enriched variant when the action
/// carries continuation data.
pub fn orbit_cmd(ws: &Workspace, action: &str, window: Option<Rational>) -> Result<Report, CliError> {
    let a = ws.action(action).ok_or_else(|| usage(format!("no action named {:?}", action)))?;
    let (cname, c) = &ws.graded[a.category];
    let mut report = Report::new("orbit");
    if let Err(e) = a.action.check(c, &a.group) {
        report.push(Check::new(format!("action {}", a.name), Status::Fail, e.to_string()));
        return Ok(report);
    }
    let built = match (&a.continuation, &a.group) {
        (None, g) => orbit(c, g, &a.action, window),
        (Some(cont), Pog::Scaled(_)) => {
            let w = window.ok_or_else(|| usage("an infinite group needs --window"))?;
            orbit_pog(c, &a.group, &a.action, cont, w)
        }
        (Some(cont), Pog::Quotient { base, sub }) => orbit_quotient(c, base, *sub, &a.action, cont),
        (Some(_), g) => return Err(usage(format!("{} is not cyclic", g))),
    };
    match built {
        Ok(o) => {
            let r = o.cat.check();
            report.push(
                Check::new(
                    format!("{}[{}]", cname, a.group),
                    Status::of(r.passed()),
                    format!("{} objects, {} morphisms, {} axioms checked", o.cat.objects().len(), o.cat.gens().len(), r.checked),
                )
                .with_witnesses(capped(r.failures))
                .with_ranks(graded_rank_rows(&o.cat)),
            );
        }
        Err(e) => report.push(Check::new(format!("{}[{}]", cname, a.group), Status::Fail, e.to_string())),
    }
    Ok(report)
}

pub fn unorbit_cmd(ws: &Workspace, category: &str, window: Option<Rational>) -> Result<Report, CliError> {
    let d = find_graded(ws, category)?;
    let mut report = Report::new("unorbit");
    let finite = pogcat_core::orbit::cyclic(d.pog())?.1.is_some();
    if window.is_none() && !finite && !(d.is_enriched() && d.pog().is_quotient()) {
        return Err(usage(format!("{} is infinite; pass --window", d.pog())));
    }
    let built = if d.is_enriched() && d.pog().is_quotient() {
        unorbit_quotient(d).map(|u| u.unorbit)
    } else if d.is_enriched() {
        unorbit_pog(d, window).map(|u| u.unorbit)
    } else {
        unorbit(d, window)
    };
    let name = format!("{}#{}", category, d.pog());
    match built {
        Ok(u) => {
            let r = u.cat.check();
            report.push(
                Check::new(
                    name,
                    Status::of(r.passed()),
                    format!("{} objects, {} morphisms, {} axioms checked", u.cat.objects().len(), u.cat.gens().len(), r.checked),
                )
                .with_witnesses(capped(r.failures))
                .with_ranks(graded_rank_rows(&u.cat)),
            );
        }
        Err(e) => report.push(Check::new(name, Status::Fail, e.to_string())),
    }
    Ok(report)
}

/// `{0}` and the grade of every generator.
pub fn default_window(d: &GradedCategory) -> Vec<Rational> {
    let mut w: BTreeSet<Rational> = d.gens().iter().map(|g| d.pog().normalize(&g.grade)).collect();
    w.insert(rat(0, 1));
    w.into_iter().collect()
}

/// The exhaustion of `Q` or `Q/Z` matching the grading of `d`.
pub fn matching_exhaustion(d: &GradedCategory, depth: usize) -> Result<pogcat_core::pog::Exhaustion, CliError> {
    let target = match d.pog() {
        Pog::Scaled(_) => Pog::Rationals,
        Pog::Quotient { sub, .. } => Pog::quotient(Pog::Rationals, *sub)?,
        other => return Err(usage(format!("cannot exhaust {}", other))),
    };
    Ok(exhaustion(&target, depth)?)
}

pub fn reconstruct_cmd(ws: &Workspace, category: &str, depth: usize, grades: Option<Vec<Rational>>) -> Result<Report, CliError> {
    let d = find_graded(ws, category)?;
    if depth == 0 {
        return Err(usage("the exhaustion depth must be at least 1"));
    }
    let window = grades.unwrap_or_else(|| default_window(d));
    let exh = matching_exhaustion(d, depth)?;
    let r = reconstruct(d, &exh, &window)?;
    let status = match r.status {
        pogcat_core::orbit::reconstruct::Status::Pass => Status::Pass,
        pogcat_core::orbit::reconstruct::Status::Fail => Status::Fail,
        pogcat_core::orbit::reconstruct::Status::Inconclusive => Status::Inconclusive,
    };
    let terms: Vec<String> = r.terms.iter().map(|t| format!("{}: {} objects, {} morphisms", t.pog, t.objects, t.morphisms)).collect();
    let shown: Vec<String> = window.iter().map(fmt_rational).collect();
    let mut report = Report::new("reconstruct");
    report.push(
        Check::new("colimit", status, format!("depth {} on grades {{{}}}, {} comparisons", depth, shown.join(", "), r.checked))
            .with_witnesses(terms.into_iter().chain(capped(r.mismatches))),
    );
    Ok(report)
}

fn objects_named(c: &CAinfCategory, names: &[String]) -> Result<Vec<usize>, CliError> {
    names.iter().map(|n| c.object_index(n).ok_or_else(|| usage(format!("no object named {:?}", n)))).collect()
}

pub fn quotient_cmd(ws: &Workspace, category: &str, by: &[String]) -> Result<Report, CliError> {
    let c = find_category(ws, category)?;
    let sub = objects_named(c, by)?;
    let q = Quotient::new(c, sub.clone(), ws.cutoffs.lmax);
    let dmax = ws.cutoffs.dmax;
    let mut report = Report::new("quotient");
    report.push(relation_check(format!("{}/{}", category, by.join(",")), &check_cainf(&q, dmax), dmax));
    let rest: Vec<usize> = (0..c.object_names().len()).filter(|x| !sub.contains(x)).collect();
    let rows = gr_rank_rows(&q, &rest)?;
    report.push(Check::new("Gr homology", Status::Pass, format!("words of length at most {}", ws.cutoffs.lmax)).with_ranks(rows));
    Ok(report)
}

pub fn localize_cmd(ws: &Workspace, category: &str, at: &[String]) -> Result<Report, CliError> {
    let c = find_category(ws, category)?;
    let mut ms = Vec::new();
    for (i, s) in at.iter().enumerate() {
        let terms = crate::format::parse_terms(s).map_err(|(k, m)| usage(format!("--at {:?}, byte {}: {}", s, k, m)))?;
        let mut chain = Chain::new();
        for t in terms {
            let g = c.gen_index(&t.name).ok_or_else(|| usage(format!("no generator named {:?}", t.name)))?;
            chain.add_term(g, t.shift, t.coeff);
        }
        ms.push((format!("m{}", i), chain));
    }
    if ms.is_empty() {
        return Err(usage("localize needs at least one --at morphism"));
    }
    let lmax = ws.cutoffs.lmax;
    let loc = localize(c, &ms, lmax)?;
    let dmax = ws.cutoffs.dmax;
    let mut report = Report::new("localize");
    report.push(relation_check(format!("{} localized", category), &check_cainf(&loc, dmax.min(2)), dmax.min(2)));
    // classes of hom(x, y) that survive into words of length lmax; longer
    // truncations only add classes that die one step later
    let objects = loc.objects();
    let short = |w: &Word<TwGen<usize>>| w.length() == 0;
    let mut rows = Vec::new();
    for x in &objects {
        for y in &objects {
            let weights: BTreeSet<Rational> = c.basis(x, y).iter().map(|g| c.weight(g)).collect();
            for w in weights {
                for (deg, g) in image_homology(&loc, x, y, w, &short, &|_| true)? {
                    if !g.is_zero() {
                        rows.push(RankRow::new(format!("{} -> {}", loc.obj_name(x), loc.obj_name(y)), deg as i64, &w, &g));
                    }
                }
            }
        }
    }
    report.push(Check::new("Gr homology", Status::Pass, format!("image of hom in words of length at most {}", lmax)).with_ranks(rows.clone()));
    if let [(_, m)] = ms.as_slice() {
        let (x, y) = check_eligible(c, "m0", m)?;
        let flat = c.basis(&x, &x).iter().all(|g| c.degree(g) == 0 && c.weight(g) == rat(0, 1));
        if x == y && flat {
            let f = pogcat_core::constructions::right_multiplication(c, &x, m)?;
            let check = match telescope_colimit(&f, c.mode()) {
                Err(e) => Check::new("telescope", Status::Inconclusive, e.to_string()),
                Ok(colim) => {
                    let hom = format!("{} -> {}", loc.obj_name(&x), loc.obj_name(&x));
                    let got: Vec<&RankRow> = rows.iter().filter(|r| r.hom == hom).collect();
                    let expect = if colim.is_zero() { vec![] } else { vec![colim.to_string()] };
                    let seen: Vec<String> = got.iter().map(|r| r.group.clone()).collect();
                    let ok = seen == expect && got.iter().all(|r| r.degree == 0);
                    let show = |v: &[String]| if v.is_empty() { "0".to_string() } else { v.join(" + ") };
                    Check::new(
                        "telescope",
                        Status::of(ok),
                        format!("colimit along m is {}, localization gives {}", show(&expect), show(&seen)),
                    )
                }
            };
            report.push(check);
        }
    }
    Ok(report)
}

pub fn tw_cmd(ws: &Workspace, category: &str) -> Result<Report, CliError> {
    let c = find_category(ws, category)?;
    let k = ws.categories.iter().position(|(n, _)| n == category).expect("found above");
    let objects: Vec<(String, TwistedComplex<usize, usize>)> =
        ws.twisted.iter().filter(|t| t.category == k).map(|t| (t.name.clone(), t.complex.clone())).collect();
    if objects.is_empty() {
        return Err(usage(format!("no twisted complexes over {:?}", category)));
    }
    let mut report = Report::new("tw");
    let tw = match Twisted::new(c, objects) {
        Ok(tw) => tw,
        Err(e) => {
            report.push(Check::new(format!("Tw {}", category), Status::Fail, e.to_string()));
            return Ok(report);
        }
    };
    let objs = tw.objects();
    let curved: Vec<String> = objs
        .iter()
        .filter_map(|x| {
            let b0 = tw.curvature(x);
            (!b0.is_zero()).then(|| format!("{}: {}", tw.obj_name(x), format_chain(&b0, |g| tw.gen_name(g))))
        })
        .collect();
    report.push(Check::new("curvature", Status::Pass, format!("{} of {} objects are curved", curved.len(), objs.len())).with_witnesses(curved));
    let dmax = ws.cutoffs.dmax;
    report.push(relation_check(format!("Tw {}", category), &check_cainf(&tw, dmax), dmax));
    report.push(Check::new("Gr homology", Status::Pass, "all homs").with_ranks(gr_rank_rows(&tw, &objs)?));
    Ok(report)
}

/// Singles on every object and cones on closed degree zero maps among the
/// first three.
fn bc_window<C: AinfCategory>(inner: &Twisted<C>) -> Vec<(String, TwistedComplex<usize, TwGen<C::Gen>>)> {
    let objs = inner.objects();
    let mut out: Vec<_> = objs.iter().map(|k| (inner.obj_name(k), TwistedComplex::single(*k, 0))).collect();
    let mut cones = 0;
    for a in objs.iter().take(3) {
        for b in objs.iter().take(3) {
            for m in inner.basis(a, b) {
                if inner.degree(&m) == 0 && inner.mu(std::slice::from_ref(&m)).is_zero() && cones < 4 {
                    cones += 1;
                    out.push((format!("cone{}", cones), TwistedComplex::cone(*a, *b, Chain::gen(m))));
                }
            }
        }
    }
    out
}

pub fn bc_cmd(ws: &Workspace, category: &str, support: usize) -> Result<Report, CliError> {
    let c = find_category(ws, category)?;
    let mut report = Report::new("bc");
    let mut bc = Vec::new();
    for x in 0..c.object_names().len() {
        let sols = search_bounding_cochains(c, &x, support);
        let name = &c.object_names()[x];
        let shown = sols.iter().map(|b| format!("({}, {})", name, format_chain(b, |g| c.gen_name(g))));
        report.push(Check::new(format!("bounding cochains on {}", name), Status::Pass, format!("{} with support at most {}", sols.len(), support)).with_witnesses(capped(shown)));
        for (i, b) in sols.into_iter().enumerate() {
            bc.push((format!("{}.{}", name, i), x, b));
        }
    }
    let dmax = ws.cutoffs.dmax;
    let inner = bc_category(c, bc.clone())?;
    report.push(relation_check(format!("{}^bc", category), &check_cainf(&inner, dmax.min(2)), dmax.min(2)));
    let outer = bc_window(&inner);
    let r = compare_bc(c, bc, outer, support, dmax.min(2))?;
    report.push(
        Check::new(
            "generation",
            Status::of(r.passed()),
            format!("{} flat objects matched, {} hom generators compared", r.flat, r.homs),
        )
        .with_witnesses(capped(r.unmatched.into_iter().chain(r.mismatches))),
    );
    Ok(report)
}

pub fn homology_cmd(ws: &Workspace, category: &str) -> Result<Report, CliError> {
    let c = find_category(ws, category)?;
    let objects: Vec<usize> = (0..c.object_names().len()).collect();
    let mut report = Report::new("homology");
    report.push(Check::new(format!("Gr {}", category), Status::Pass, "homology of every hom by weight stratum").with_ranks(gr_rank_rows(c, &objects)?));
    Ok(report)
}
