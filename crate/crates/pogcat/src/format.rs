//! Workspace files.
//!
//! A workspace is a TOML document. Every cutoff must be given; unknown keys
//! are errors. Chains are written as sums of terms `[c] [T^r] name`, e.g.
//! `2 T^1/2 f - g`, and `0` is the empty chain. Generator names contain no
//! whitespace and are not integers.
//!
//! ```toml
//! pog = "Q"
//! coeff = "z"
//!
//! [cutoffs]
//! lambda = "2"
//! lmax = 2
//! dmax = 3
//! eps = "1/2"
//!
//! [[category]]
//! name = "C"
//! objects = ["X"]
//! gens = [{ name = "e", source = "X", target = "X", degree = 0, weight = "0" }]
//! units = { X = "e" }
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use pogcat_core::ainf::{CAinfCategory, Chain};
use pogcat_core::constructions::TwistedComplex;
use pogcat_core::orbit::{Action, GradedCategory, Vector};
use pogcat_core::scalars::{fmt_rational, parse_rational, CoeffMode};
use pogcat_core::{Pog, Rational};
use serde::Deserialize;
use toml::Spanned;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

/// Values given on the command line replace the file's.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub dmax: Option<usize>,
    pub lmax: Option<usize>,
    pub cutoff: Option<Rational>,
    pub eps: Option<Rational>,
    pub coeff: Option<CoeffMode>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cutoffs {
    pub lambda: Rational,
    pub lmax: usize,
    pub dmax: usize,
    pub eps: Rational,
}

#[derive(Clone, Debug)]
pub struct ActionDecl {
    pub name: String,
    pub category: usize,
    pub group: Pog,
    pub action: Action,
    pub continuation: Option<Vec<Vector>>,
}

#[derive(Clone, Debug)]
pub struct ModuleDecl {
    pub name: String,
    pub category: usize,
    pub object: usize,
}

#[derive(Clone, Debug)]
pub struct FunctorDecl {
    pub name: String,
    pub source: usize,
    pub target: usize,
    /// `None`: generators go to the generators of the same name
    pub objects: Option<Vec<usize>>,
    pub phi: Vec<(Vec<usize>, Chain<usize>)>,
    pub phi0: Vec<(usize, Chain<usize>)>,
}

#[derive(Clone, Debug)]
pub struct TwistedDecl {
    pub name: String,
    pub category: usize,
    pub complex: TwistedComplex<usize, usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct PipelineDecl {
    pub category: usize,
    pub depth: usize,
}

#[derive(Clone, Debug)]
pub struct Workspace {
    pub pog: Pog,
    pub mode: CoeffMode,
    pub cutoffs: Cutoffs,
    pub categories: Vec<(String, CAinfCategory)>,
    pub graded: Vec<(String, GradedCategory)>,
    pub actions: Vec<ActionDecl>,
    pub modules: Vec<ModuleDecl>,
    pub functors: Vec<FunctorDecl>,
    pub twisted: Vec<TwistedDecl>,
    pub pipeline: Option<PipelineDecl>,
}

impl Workspace {
    pub fn category(&self, name: &str) -> Option<&CAinfCategory> {
        self.categories.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn graded_category(&self, name: &str) -> Option<&GradedCategory> {
        self.graded.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn action(&self, name: &str) -> Option<&ActionDecl> {
        self.actions.iter().find(|a| a.name == name)
    }
}

type Name = Spanned<String>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWorkspace {
    pog: Name,
    coeff: Name,
    cutoffs: RawCutoffs,
    #[serde(default)]
    category: Vec<RawCategory>,
    #[serde(default)]
    graded: Vec<RawGraded>,
    #[serde(default)]
    action: Vec<RawAction>,
    #[serde(default)]
    module: Vec<RawModule>,
    #[serde(default)]
    functor: Vec<RawFunctor>,
    #[serde(default)]
    twisted: Vec<RawTwisted>,
    pipeline: Option<RawPipeline>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCutoffs {
    lambda: Name,
    lmax: usize,
    dmax: usize,
    eps: Name,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGen {
    name: Name,
    source: Name,
    target: Name,
    degree: i64,
    weight: Name,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    inputs: Vec<Name>,
    value: Name,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawObjectValue {
    object: Name,
    value: Name,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCategory {
    name: Name,
    objects: Vec<Name>,
    gens: Vec<RawGen>,
    #[serde(default)]
    units: BTreeMap<String, Name>,
    #[serde(default)]
    mu: Vec<RawEntry>,
    #[serde(default)]
    curvature: Vec<RawObjectValue>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGradedGen {
    name: Name,
    source: Name,
    target: Name,
    grade: Name,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawShift {
    gen: Name,
    value: Name,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraded {
    name: Name,
    grading: Name,
    objects: Vec<Name>,
    gens: Vec<RawGradedGen>,
    #[serde(default)]
    units: BTreeMap<String, Name>,
    #[serde(default)]
    comp: Vec<RawEntry>,
    shift: Option<Vec<RawShift>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    name: Name,
    category: Name,
    group: Name,
    #[serde(default)]
    objects: BTreeMap<String, Name>,
    #[serde(default)]
    gens: BTreeMap<String, Name>,
    continuation: Option<BTreeMap<String, Name>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    name: Name,
    category: Name,
    object: Name,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFunctor {
    name: Name,
    source: Name,
    target: Name,
    objects: Option<BTreeMap<String, Name>>,
    #[serde(default)]
    phi: Vec<RawEntry>,
    #[serde(default)]
    phi0: Vec<RawObjectValue>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDelta {
    from: usize,
    to: usize,
    value: Name,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTwisted {
    name: Name,
    category: Name,
    entries: Vec<(Name, i64)>,
    #[serde(default)]
    delta: Vec<RawDelta>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPipeline {
    category: Name,
    depth: usize,
}

struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    fn error(&self, offset: usize, message: impl Into<String>) -> ParseError {
        let before = &self.text[..offset.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError { line, column, message: message.into() }
    }

    fn at(&self, span: &Range<usize>, message: impl Into<String>) -> ParseError {
        self.error(span.start, message)
    }

    /// Offset of byte `k` inside a quoted string value.
    fn inside(&self, span: &Range<usize>, k: usize, message: impl Into<String>) -> ParseError {
        let quoted = self.text[span.clone()].starts_with(['"', '\'']);
        self.error(span.start + k + usize::from(quoted), message)
    }

    fn rational(&self, s: &Name) -> Result<Rational, ParseError> {
        parse_rational(s.get_ref()).map_err(|e| self.at(&s.span(), e.to_string()))
    }

    fn pog(&self, s: &Name) -> Result<Pog, ParseError> {
        Pog::parse(s.get_ref()).map_err(|e| self.at(&s.span(), e.to_string()))
    }

    fn lookup(&self, s: &Name, what: &str, find: impl Fn(&str) -> Option<usize>) -> Result<usize, ParseError> {
        find(s.get_ref()).ok_or_else(|| self.at(&s.span(), format!("unknown {} {:?}", what, s.get_ref())))
    }

    fn chain(&self, s: &Name, find: impl Fn(&str) -> Option<usize>) -> Result<Chain<usize>, ParseError> {
        let terms = parse_terms(s.get_ref()).map_err(|(k, m)| self.inside(&s.span(), k, m))?;
        let mut out = Chain::new();
        for t in terms {
            let g = find(&t.name).ok_or_else(|| self.inside(&s.span(), t.name_at, format!("unknown generator {:?}", t.name)))?;
            out.add_term(g, t.shift, t.coeff);
        }
        Ok(out)
    }

    fn vector(&self, s: &Name, find: impl Fn(&str) -> Option<usize>) -> Result<Vector, ParseError> {
        let terms = parse_terms(s.get_ref()).map_err(|(k, m)| self.inside(&s.span(), k, m))?;
        let mut out = Vector::new();
        for t in terms {
            if t.shift != Rational::from_integer(0) {
                return Err(self.inside(&s.span(), t.offset, "graded categories take no T powers"));
            }
            let g = find(&t.name).ok_or_else(|| self.inside(&s.span(), t.name_at, format!("unknown generator {:?}", t.name)))?;
            *out.entry(g).or_insert(0) += t.coeff;
            if out[&g] == 0 {
                out.remove(&g);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub shift: Rational,
    pub name: String,
    /// byte offsets of the term and of its generator name
    pub offset: usize,
    pub name_at: usize,
}

/// Splits `2 T^1/2 f - g + T^3 h` into terms. On error returns the byte
/// offset and a message.
pub fn parse_terms(s: &str) -> Result<Vec<Term>, (usize, String)> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(b)) => {
                tokens.push((b, &s[b..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(b) = start {
        tokens.push((b, &s[b..]));
    }
    if tokens.len() == 1 && tokens[0].1 == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < tokens.len() {
        let begin = tokens[i].0;
        let mut sign = 1;
        match tokens[i].1 {
            "+" | "-" => {
                if tokens[i].1 == "-" {
                    sign = -1;
                }
                i += 1;
            }
            _ if !first => return Err((tokens[i].0, format!("expected + or -, found {:?}", tokens[i].1))),
            _ => {}
        }
        first = false;
        let Some(&(mut off, mut tok)) = tokens.get(i) else {
            return Err((s.len(), "a term is missing after the sign".to_string()));
        };
        let mut coeff = 1i64;
        if let Ok(c) = tok.parse::<i64>() {
            coeff = c;
            i += 1;
            (off, tok) = *tokens.get(i).ok_or((s.len(), "a generator is missing after the coefficient".to_string()))?;
        }
        let mut shift = Rational::from_integer(0);
        if let Some(r) = tok.strip_prefix("T^") {
            shift = parse_rational(r).map_err(|_| (off + 2, format!("bad exponent {:?}", r)))?;
            if shift < Rational::from_integer(0) {
                return Err((off + 2, "negative exponent".to_string()));
            }
            i += 1;
            (off, tok) = *tokens.get(i).ok_or((s.len(), "a generator is missing after the T power".to_string()))?;
        }
        if tok == "+" || tok == "-" || tok.parse::<i64>().is_ok() {
            return Err((tokens[i].0, format!("expected a generator name, found {:?}", tok)));
        }
        out.push(Term { coeff: sign * coeff, shift, name: tok.to_string(), offset: begin, name_at: off });
        i += 1;
    }
    if out.is_empty() {
        return Err((0, "empty chain; write 0".to_string()));
    }
    Ok(out)
}

fn mode(src: &Source, s: &Name) -> Result<CoeffMode, ParseError> {
    parse_coeff(s.get_ref()).ok_or_else(|| src.at(&s.span(), format!("coefficient mode must be z or f2, got {:?}", s.get_ref())))
}

pub fn parse_coeff(s: &str) -> Option<CoeffMode> {
    match s.to_ascii_lowercase().as_str() {
        "z" => Some(CoeffMode::Z),
        "f2" => Some(CoeffMode::F2),
        _ => None,
    }
}

fn unique<'a>(src: &Source, names: impl IntoIterator<Item = &'a Name>, what: &str) -> Result<(), ParseError> {
    let mut seen = std::collections::BTreeSet::new();
    for n in names {
        if !seen.insert(n.get_ref().clone()) {
            return Err(src.at(&n.span(), format!("duplicate {} {:?}", what, n.get_ref())));
        }
    }
    Ok(())
}

pub fn parse_workspace(text: &str, over: &Overrides) -> Result<Workspace, ParseError> {
    let src = Source { text };
    let raw: RawWorkspace = toml::from_str(text).map_err(|e| {
        let offset = e.span().map_or(0, |s| s.start);
        src.error(offset, e.message().trim_end().to_string())
    })?;
    let pog = src.pog(&raw.pog)?;
    let mode = match over.coeff {
        Some(m) => m,
        None => mode(&src, &raw.coeff)?,
    };
    let cutoffs = Cutoffs {
        lambda: match over.cutoff {
            Some(c) => c,
            None => src.rational(&raw.cutoffs.lambda)?,
        },
        lmax: over.lmax.unwrap_or(raw.cutoffs.lmax),
        dmax: over.dmax.unwrap_or(raw.cutoffs.dmax),
        eps: match over.eps {
            Some(e) => e,
            None => src.rational(&raw.cutoffs.eps)?,
        },
    };
    unique(&src, raw.category.iter().map(|c| &c.name).chain(raw.graded.iter().map(|c| &c.name)), "category")?;

    let mut categories = Vec::new();
    for rc in &raw.category {
        let mut c = CAinfCategory::new(pog.clone(), cutoffs.lambda, cutoffs.eps, mode).map_err(|e| src.at(&raw.cutoffs.lambda.span(), e.to_string()))?;
        unique(&src, &rc.objects, "object")?;
        unique(&src, rc.gens.iter().map(|g| &g.name), "generator")?;
        for o in &rc.objects {
            c.add_object(o.get_ref()).map_err(|e| src.at(&o.span(), e.to_string()))?;
        }
        for g in &rc.gens {
            let s = src.lookup(&g.source, "object", |n| c.object_index(n))?;
            let t = src.lookup(&g.target, "object", |n| c.object_index(n))?;
            let w = src.rational(&g.weight)?;
            c.add_gen(g.name.get_ref(), s, t, g.degree, w).map_err(|e| src.at(&g.name.span(), e.to_string()))?;
        }
        for (o, g) in &rc.units {
            let x = c.object_index(o).ok_or_else(|| src.at(&g.span(), format!("unknown object {:?}", o)))?;
            let e = src.lookup(g, "generator", |n| c.gen_index(n))?;
            c.set_unit(x, e).map_err(|err| src.at(&g.span(), err.to_string()))?;
        }
        for m in &rc.mu {
            let inputs = m.inputs.iter().map(|n| src.lookup(n, "generator", |s| c.gen_index(s))).collect::<Result<Vec<_>, _>>()?;
            let value = src.chain(&m.value, |s| c.gen_index(s))?;
            c.set_mu(inputs, value).map_err(|e| src.at(&m.value.span(), e.to_string()))?;
        }
        for k in &rc.curvature {
            let x = src.lookup(&k.object, "object", |n| c.object_index(n))?;
            let value = src.chain(&k.value, |s| c.gen_index(s))?;
            c.set_curvature(x, value).map_err(|e| src.at(&k.value.span(), e.to_string()))?;
        }
        categories.push((rc.name.get_ref().clone(), c));
    }

    let mut graded = Vec::new();
    for rg in &raw.graded {
        let p = src.pog(&rg.grading)?;
        let mut c = GradedCategory::new(p).map_err(|e| src.at(&rg.grading.span(), e.to_string()))?;
        unique(&src, &rg.objects, "object")?;
        unique(&src, rg.gens.iter().map(|g| &g.name), "generator")?;
        for o in &rg.objects {
            c.add_object(o.get_ref()).map_err(|e| src.at(&o.span(), e.to_string()))?;
        }
        for g in &rg.gens {
            let s = src.lookup(&g.source, "object", |n| c.object_index(n))?;
            let t = src.lookup(&g.target, "object", |n| c.object_index(n))?;
            let grade = src.rational(&g.grade)?;
            c.add_gen(g.name.get_ref(), s, t, grade).map_err(|e| src.at(&g.grade.span(), e.to_string()))?;
        }
        for (o, g) in &rg.units {
            let x = c.object_index(o).ok_or_else(|| src.at(&g.span(), format!("unknown object {:?}", o)))?;
            let e = src.lookup(g, "generator", |n| c.gen_index(n))?;
            c.set_unit(x, e).map_err(|err| src.at(&g.span(), err.to_string()))?;
        }
        for m in &rg.comp {
            let [f, g] = m.inputs.as_slice() else {
                let at = m.inputs.first().map_or(m.value.span(), |n| n.span());
                return Err(src.at(&at, "composition takes two inputs"));
            };
            let f = src.lookup(f, "generator", |n| c.gen_index(n))?;
            let g = src.lookup(g, "generator", |n| c.gen_index(n))?;
            let v = src.vector(&m.value, |n| c.gen_index(n))?;
            c.set_comp(f, g, v).map_err(|e| src.at(&m.value.span(), e.to_string()))?;
        }
        if let Some(shift) = &rg.shift {
            c.enrich();
            for s in shift {
                let g = src.lookup(&s.gen, "generator", |n| c.gen_index(n))?;
                let v = src.vector(&s.value, |n| c.gen_index(n))?;
                c.set_shift(g, v).map_err(|e| src.at(&s.value.span(), e.to_string()))?;
            }
        }
        graded.push((rg.name.get_ref().clone(), c));
    }
    let graded_index = |n: &Name| src.lookup(n, "graded category", |s| graded.iter().position(|(m, _)| m == s));
    let cat_index = |n: &Name| src.lookup(n, "category", |s| categories.iter().position(|(m, _)| m == s));

    let mut actions = Vec::new();
    unique(&src, raw.action.iter().map(|a| &a.name), "action")?;
    for ra in &raw.action {
        let k = graded_index(&ra.category)?;
        let c = &graded[k].1;
        let group = src.pog(&ra.group)?;
        let mut action = Action::trivial(c);
        for (x, y) in &ra.objects {
            let x = c.object_index(x).ok_or_else(|| src.at(&y.span(), format!("unknown object {:?}", x)))?;
            action.objects[x] = src.lookup(y, "object", |n| c.object_index(n))?;
        }
        for (f, v) in &ra.gens {
            let f = c.gen_index(f).ok_or_else(|| src.at(&v.span(), format!("unknown generator {:?}", f)))?;
            let image = src.vector(v, |n| c.gen_index(n))?;
            let mut it = image.into_iter();
            match (it.next(), it.next()) {
                (Some((g, s)), None) if s == 1 || s == -1 => action.gens[f] = (g, s),
                _ => return Err(src.at(&v.span(), "a generator goes to plus or minus one generator")),
            }
        }
        let continuation = match &ra.continuation {
            None => None,
            Some(map) => {
                let mut cont = vec![Vector::new(); c.objects().len()];
                for (x, v) in map {
                    let x = c.object_index(x).ok_or_else(|| src.at(&v.span(), format!("unknown object {:?}", x)))?;
                    cont[x] = src.vector(v, |n| c.gen_index(n))?;
                }
                Some(cont)
            }
        };
        actions.push(ActionDecl { name: ra.name.get_ref().clone(), category: k, group, action, continuation });
    }

    let mut modules = Vec::new();
    for rm in &raw.module {
        let k = cat_index(&rm.category)?;
        let object = src.lookup(&rm.object, "object", |n| categories[k].1.object_index(n))?;
        modules.push(ModuleDecl { name: rm.name.get_ref().clone(), category: k, object });
    }

    let mut functors = Vec::new();
    for rf in &raw.functor {
        let (source, target) = (cat_index(&rf.source)?, cat_index(&rf.target)?);
        let (s, t) = (&categories[source].1, &categories[target].1);
        let objects = match &rf.objects {
            None => None,
            Some(map) => {
                let mut v = vec![usize::MAX; s.object_names().len()];
                for (x, y) in map {
                    let x = s.object_index(x).ok_or_else(|| src.at(&y.span(), format!("unknown object {:?}", x)))?;
                    v[x] = src.lookup(y, "object", |n| t.object_index(n))?;
                }
                if let Some(x) = v.iter().position(|y| *y == usize::MAX) {
                    return Err(src.at(&rf.name.span(), format!("object {} has no image", s.object_names()[x])));
                }
                Some(v)
            }
        };
        let mut phi = Vec::new();
        for e in &rf.phi {
            let inputs = e.inputs.iter().map(|n| src.lookup(n, "generator", |m| s.gen_index(m))).collect::<Result<Vec<_>, _>>()?;
            phi.push((inputs, src.chain(&e.value, |m| t.gen_index(m))?));
        }
        let mut phi0 = Vec::new();
        for e in &rf.phi0 {
            let x = src.lookup(&e.object, "object", |n| s.object_index(n))?;
            phi0.push((x, src.chain(&e.value, |m| t.gen_index(m))?));
        }
        functors.push(FunctorDecl { name: rf.name.get_ref().clone(), source, target, objects, phi, phi0 });
    }

    let mut twisted = Vec::new();
    for rt in &raw.twisted {
        let k = cat_index(&rt.category)?;
        let c = &categories[k].1;
        let mut entries = Vec::new();
        for (x, shift) in &rt.entries {
            entries.push((src.lookup(x, "object", |n| c.object_index(n))?, *shift));
        }
        let mut delta = BTreeMap::new();
        for d in &rt.delta {
            if d.from >= entries.len() || d.to >= entries.len() {
                return Err(src.at(&d.value.span(), "entry index out of range"));
            }
            delta.insert((d.from, d.to), src.chain(&d.value, |n| c.gen_index(n))?);
        }
        twisted.push(TwistedDecl { name: rt.name.get_ref().clone(), category: k, complex: TwistedComplex { entries, delta } });
    }

    let pipeline = match &raw.pipeline {
        None => None,
        Some(p) => Some(PipelineDecl { category: graded_index(&p.category)?, depth: p.depth }),
    };

    Ok(Workspace { pog, mode, cutoffs, categories, graded, actions, modules, functors, twisted, pipeline })
}

/// Inverse of the chain syntax: `2 T^1/2 f - g`.
pub fn format_chain<G: Ord + Clone>(c: &Chain<G>, name: impl Fn(&G) -> String) -> String {
    let mut out = String::new();
    for (g, s, k) in c.terms() {
        let sign = if k < 0 { "-" } else { "+" };
        if out.is_empty() {
            if k < 0 {
                out.push_str("- ");
            }
        } else {
            out.push_str(&format!(" {} ", sign));
        }
        if k.abs() != 1 {
            out.push_str(&format!("{} ", k.abs()));
        }
        if *s != Rational::from_integer(0) {
            out.push_str(&format!("T^{} ", fmt_rational(s)));
        }
        out.push_str(&name(g));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn quoted(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

/// A workspace holding table categories, readable by [`parse_workspace`].
/// All categories must share the pog, cutoffs and coefficients of the first.
pub fn write_workspace(categories: &[(&str, &CAinfCategory)], lmax: usize, dmax: usize) -> String {
    use pogcat_core::ainf::AinfCategory;
    let first = categories[0].1;
    let mut out = String::new();
    out.push_str(&format!("pog = {}\n", quoted(&first.pog().to_string())));
    let coeff = match first.mode() {
        CoeffMode::Z => "z",
        CoeffMode::F2 => "f2",
    };
    out.push_str(&format!("coeff = \"{}\"\n\n[cutoffs]\n", coeff));
    out.push_str(&format!("lambda = {}\nlmax = {}\ndmax = {}\neps = {}\n", quoted(&fmt_rational(&first.cutoff())), lmax, dmax, quoted(&fmt_rational(&first.epsilon()))));
    for (name, c) in categories {
        let gen = |g: &usize| c.gens()[*g].name.clone();
        let obj = |x: usize| c.object_names()[x].clone();
        out.push_str(&format!("\n[[category]]\nname = {}\n", quoted(name)));
        let objs: Vec<String> = c.object_names().iter().map(|o| quoted(o)).collect();
        out.push_str(&format!("objects = [{}]\ngens = [\n", objs.join(", ")));
        for g in c.gens() {
            out.push_str(&format!(
                "  {{ name = {}, source = {}, target = {}, degree = {}, weight = {} }},\n",
                quoted(&g.name),
                quoted(&obj(g.source)),
                quoted(&obj(g.target)),
                g.degree,
                quoted(&fmt_rational(&g.weight))
            ));
        }
        out.push_str("]\n");
        let units: Vec<String> = c.units().iter().map(|(x, e)| format!("{} = {}", quoted(&obj(*x)), quoted(&gen(e)))).collect();
        out.push_str(&format!("units = {{ {} }}\n", units.join(", ")));
        if !c.stored_mu().is_empty() {
            out.push_str("mu = [\n");
            for (inputs, v) in c.stored_mu() {
                let ins: Vec<String> = inputs.iter().map(|g| quoted(&gen(g))).collect();
                out.push_str(&format!("  {{ inputs = [{}], value = {} }},\n", ins.join(", "), quoted(&format_chain(v, gen))));
            }
            out.push_str("]\n");
        }
        let curved: Vec<_> = c.stored_curvature().iter().filter(|(_, v)| !v.is_zero()).collect();
        if !curved.is_empty() {
            out.push_str("curvature = [\n");
            for (x, v) in curved {
                out.push_str(&format!("  {{ object = {}, value = {} }},\n", quoted(&obj(*x)), quoted(&format_chain(v, gen))));
            }
            out.push_str("]\n");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use pogcat_core::rat;

    #[test]
    fn terms() {
        let t = parse_terms("2 T^1/2 f - g + T^3 h").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!((t[0].coeff, t[0].shift, t[0].name.as_str()), (2, rat(1, 2), "f"));
        assert_eq!((t[1].coeff, t[1].offset), (-1, 10));
        assert_eq!(t[2].shift, rat(3, 1));
        assert_eq!(parse_terms("- f").unwrap()[0].coeff, -1);
        assert!(parse_terms("0").unwrap().is_empty());
        assert_eq!(parse_terms("f g").unwrap_err().0, 2);
        assert_eq!(parse_terms("f +").unwrap_err().0, 3);
        assert_eq!(parse_terms("T^x f").unwrap_err().0, 2);
        assert!(parse_terms("").is_err());
    }

    const SMALL: &str = r#"pog = "Q"
coeff = "z"

[cutoffs]
lambda = "2"
lmax = 2
dmax = 3
eps = "1/2"

[[category]]
name = "C"
objects = ["X"]
gens = [{ name = "e", source = "X", target = "X", degree = 0, weight = "0" }]
units = { X = "e" }
"#;

    #[test]
    fn small_workspace() {
        let w = parse_workspace(SMALL, &Overrides::default()).unwrap();
        assert_eq!(w.cutoffs, Cutoffs { lambda: rat(2, 1), lmax: 2, dmax: 3, eps: rat(1, 2) });
        assert_eq!(w.category("C").unwrap().gens().len(), 1);
        let over = Overrides { dmax: Some(5), coeff: Some(CoeffMode::F2), ..Default::default() };
        let w = parse_workspace(SMALL, &over).unwrap();
        assert_eq!((w.cutoffs.dmax, w.mode), (5, CoeffMode::F2));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_workspace(&SMALL.replace("lmax = 2\n", ""), &Overrides::default()).unwrap_err();
        assert!(e.message.contains("lmax"), "{e}");
        let e = parse_workspace(&SMALL.replace("dmax = 3", "dmax = 3\ncolour = 1"), &Overrides::default()).unwrap_err();
        assert_eq!(e.line, 8);
        assert!(e.message.contains("colour"), "{e}");
        let e = parse_workspace(&SMALL.replace("target = \"X\"", "target = \"Y\""), &Overrides::default()).unwrap_err();
        assert_eq!((e.line, e.column), (13, 46));
        assert!(e.message.contains("\"Y\""));
        let e = parse_workspace(&SMALL.replace("eps = \"1/2\"", "eps = \"1/0\""), &Overrides::default()).unwrap_err();
        assert_eq!((e.line, e.column), (8, 7));
    }

    #[test]
    fn chains_round_trip_through_text() {
        let names = ["f", "g", "h"];
        let c: Chain<usize> = [(0, rat(1, 2), 2), (1, rat(0, 1), -1), (2, rat(3, 1), 1)].into_iter().collect();
        let text = format_chain(&c, |g| names[*g].to_string());
        assert_eq!(text, "2 T^1/2 f - g + T^3 h");
        let back: Chain<usize> = parse_terms(&text).unwrap().into_iter().map(|t| (names.iter().position(|n| *n == t.name).unwrap(), t.shift, t.coeff)).collect();
        assert_eq!(back, c);
        assert_eq!(format_chain(&Chain::<usize>::new(), |_| String::new()), "0");
        assert_eq!(format_chain(&Chain::single(0, rat(0, 1), -3), |g| names[*g].to_string()), "- 3 f");
    }

    #[test]
    fn chain_errors_point_inside_the_string() {
        let text = format!("{SMALL}curvature = [{{ object = \"X\", value = \"e + k\" }}]\n");
        let e = parse_workspace(&text, &Overrides::default()).unwrap_err();
        assert_eq!(e.line, 15);
        assert_eq!(e.column, "curvature = [{ object = \"X\", value = \"e + ".len() + 1);
    }
}
