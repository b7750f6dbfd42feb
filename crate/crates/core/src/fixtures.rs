//! Small categories used by the tests, the acceptance suite and the CLI.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::ainf::{CAinfCategory, Chain};
use crate::orbit::{basis_vector, cyclic, GradedCategory};
use crate::pog::Pog;
use crate::scalars::{rat, CoeffMode, Rational};
use crate::{Error, Result};

/// One object, spanned by its unit.
pub fn unit_category(mode: CoeffMode) -> CAinfCategory {
    let mut c = CAinfCategory::new(Pog::Rationals, rat(1, 1), rat(1, 1), mode).expect("valid parameters");
    let x = c.add_object("pt").expect("fresh");
    let e = c.add_gen("e", x, x, 0, rat(0, 1)).expect("fresh");
    c.set_unit(x, e).expect("endomorphism");
    c
}

/// A free graded `Λ`-module with a degree one endomorphism `d`, not
/// necessarily squaring to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    pub name: String,
    /// (name, degree), all of weight zero
    pub basis: Vec<(String, i64)>,
    /// `d` as terms `c T^s (from -> to)`
    pub d: Vec<(usize, usize, i64, Rational)>,
}

impl Space {
    pub fn new(name: &str, basis: &[(&str, i64)], d: &[(usize, usize, i64, Rational)]) -> Self {
        Space { name: name.to_string(), basis: basis.iter().map(|(n, k)| (n.to_string(), *k)).collect(), d: d.to_vec() }
    }
}

type Elem = Chain<(usize, usize)>;

/// The curved dg-category of the given spaces, converted to the shifted
/// convention: `b^1(f) = (-1)^{|f|} D f`, `b^2(f, g) = (-1)^{|f|} g∘f` and
/// `b^0 = -d∘d`.
///
/// `hom(X, Y)` has the elementary maps `a>b` as generators, except that on
/// `End(X)` the first diagonal one is replaced by the identity `1_X`.
pub fn dg_category(pog: Pog, cutoff: Rational, epsilon: Rational, mode: CoeffMode, spaces: &[Space]) -> Result<CAinfCategory> {
    let mut cat = CAinfCategory::new(pog, cutoff, epsilon, mode)?;
    // global vector index -> (space, degree)
    let mut vecs: Vec<(usize, i64, String)> = Vec::new();
    let mut first = Vec::new();
    for (si, sp) in spaces.iter().enumerate() {
        cat.add_object(&sp.name)?;
        if sp.basis.is_empty() {
            return Err(Error::Invalid(format!("space {} is empty", sp.name)));
        }
        first.push(vecs.len());
        for (n, k) in &sp.basis {
            vecs.push((si, *k, n.clone()));
        }
    }
    let mut gen_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut unit_of = Vec::new();
    for (si, sp) in spaces.iter().enumerate() {
        let id = cat.add_gen(&format!("1_{}", sp.name), si, si, 0, rat(0, 1))?;
        cat.set_unit(si, id)?;
        unit_of.push(id);
    }
    for a in 0..vecs.len() {
        for b in 0..vecs.len() {
            let (sa, sb) = (vecs[a].0, vecs[b].0);
            if a == b && first[sa] == a {
                continue;
            }
            let g = cat.add_gen(&format!("{}>{}", vecs[a].2, vecs[b].2), sa, sb, vecs[b].1 - vecs[a].1, rat(0, 1))?;
            gen_of.insert((a, b), g);
        }
    }
    let mut diff: Vec<Elem> = vec![Chain::new(); spaces.len()];
    for (si, sp) in spaces.iter().enumerate() {
        for (from, to, c, s) in &sp.d {
            let (a, b) = (first[si] + from, first[si] + to);
            if *from >= sp.basis.len() || *to >= sp.basis.len() || vecs[b].1 != vecs[a].1 + 1 {
                return Err(Error::Invalid(format!("differential term {} -> {} in {}", from, to, sp.name)));
            }
            diff[si].add_term((a, b), *s, *c);
        }
    }

    let expand = |g: usize| -> Elem {
        if let Some(si) = unit_of.iter().position(|u| *u == g) {
            let n = spaces[si].basis.len();
            (first[si]..first[si] + n).map(|a| ((a, a), rat(0, 1), 1)).collect()
        } else {
            let (a, b) = *gen_of.iter().find(|(_, v)| **v == g).expect("generator").0;
            Chain::gen((a, b))
        }
    };
    let collapse = |e: &Elem| -> Chain<usize> {
        let mut out = Chain::new();
        for ((a, b), s, c) in e.terms() {
            match gen_of.get(&(*a, *b)) {
                Some(g) => out.add_term(*g, *s, c),
                None => {
                    let si = vecs[*a].0;
                    out.add_term(unit_of[si], *s, c);
                    for v in first[si] + 1..first[si] + spaces[si].basis.len() {
                        out.add_term(gen_of[&(v, v)], *s, -c);
                    }
                }
            }
        }
        out
    };
    // path order: f then g
    let comp = |f: &Elem, g: &Elem| -> Elem {
        let mut out = Chain::new();
        for ((a, b), s, c) in f.terms() {
            for ((b2, e), t, k) in g.terms() {
                if b == b2 {
                    out.add_term((*a, *e), s + t, c * k);
                }
            }
        }
        out
    };

    let n_gens = cat.gens().len();
    let mut entries = Vec::new();
    for g in 0..n_gens {
        if unit_of.contains(&g) {
            continue;
        }
        let info = &cat.gens()[g];
        let sign = if info.degree.rem_euclid(2) == 0 { 1 } else { -1 };
        let f = expand(g);
        let mut b1 = comp(&f, &diff[info.target]).scaled(sign, rat(0, 1));
        b1.add_scaled(&comp(&diff[info.source], &f), -1, rat(0, 1));
        entries.push((vec![g], collapse(&b1)));
        for h in 0..n_gens {
            if unit_of.contains(&h) || cat.gens()[h].source != info.target {
                continue;
            }
            let b2 = comp(&f, &expand(h)).scaled(sign, rat(0, 1));
            entries.push((vec![g, h], collapse(&b2)));
        }
    }
    for (k, v) in entries {
        if !v.is_zero() {
            cat.set_mu(k, v)?;
        }
    }
    for si in 0..spaces.len() {
        let c = comp(&diff[si], &diff[si]).neg();
        cat.set_curvature(si, collapse(&c))?;
    }
    Ok(cat)
}

/// Two objects: `V`, spanned in degrees 0, 1, 2 with `d = T^{1/2}` on each
/// step, so `b^0(V) = -T v0>v2`; and the flat two-term complex `W` with
/// `d = w0 -> w1`.
pub fn cch(mode: CoeffMode) -> CAinfCategory {
    let half = rat(1, 2);
    let v = Space::new("V", &[("v0", 0), ("v1", 1), ("v2", 2)], &[(0, 1, 1, half), (1, 2, 1, half)]);
    let w = Space::new("W", &[("w0", 0), ("w1", 1)], &[(0, 1, 1, rat(0, 1))]);
    dg_category(Pog::Rationals, rat(2, 1), half, mode, &[v, w]).expect("fixture is well formed")
}

/// Every hom is a copy of the same algebra `R`, concentrated in degree zero
/// and weight zero, with `b^2(f, g) = f g`. `basis[0]` is the unit and
/// `mult(i, j)` expands `basis[i] basis[j]`.
pub fn algebra_category(
    objects: &[&str],
    basis: &[&str],
    mult: &dyn Fn(usize, usize) -> Vec<(usize, i64)>,
    mode: CoeffMode,
) -> Result<CAinfCategory> {
    let mut c = CAinfCategory::new(Pog::Rationals, rat(1, 1), rat(1, 1), mode)?;
    for o in objects {
        c.add_object(o)?;
    }
    let mut idx = BTreeMap::new();
    for (x, ox) in objects.iter().enumerate() {
        for (y, oy) in objects.iter().enumerate() {
            for (i, b) in basis.iter().enumerate() {
                let g = c.add_gen(&format!("{}_{}{}", b, ox, oy), x, y, 0, rat(0, 1))?;
                idx.insert((x, y, i), g);
            }
        }
        c.set_unit(x, idx[&(x, x, 0)])?;
    }
    let n = objects.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for i in 0..basis.len() {
                    for j in 0..basis.len() {
                        if (x == y && i == 0) || (y == z && j == 0) {
                            continue;
                        }
                        let v: Chain<usize> = mult(i, j).into_iter().map(|(k, a)| (idx[&(x, z, k)], rat(0, 1), a)).collect();
                        c.set_mu(vec![idx[&(x, y, i)], idx[&(y, z, j)]], v)?;
                    }
                }
            }
        }
    }
    Ok(c)
}

/// Test-bed endomorphisms for localization: `(name, category, m)` with `m`
/// an endomorphism of the first object.
pub fn telescope_fixtures(mode: CoeffMode) -> Vec<(&'static str, CAinfCategory, Chain<usize>)> {
    let gen = |c: &CAinfCategory, n: &str| Chain::gen(c.gen_index(n).expect("fixture generator"));
    let mut out = Vec::new();
    // Z[t]/t^2, m = t
    let nil = algebra_category(&["X"], &["1", "t"], &|i, j| if i + j >= 2 { vec![] } else { vec![(i + j, 1)] }, mode).expect("fixture");
    let m = gen(&nil, "t_XX");
    out.push(("nilpotent", nil, m));
    // Z x Z, m = e
    let idem = |i: usize, j: usize| if i == 0 { vec![(j, 1)] } else { vec![(1, 1)] };
    let c = algebra_category(&["X"], &["1", "e"], &idem, mode).expect("fixture");
    let m = gen(&c, "e_XX");
    out.push(("idempotent", c, m));
    let c = algebra_category(&["X"], &["1"], &|_, _| vec![(0, 1)], mode).expect("fixture");
    let m = gen(&c, "1_XX");
    out.push(("identity", c, m));
    // Z[u]/(u^2 - 1), m = u
    let c = algebra_category(&["X"], &["1", "u"], &|i, j| vec![((i + j) % 2, 1)], mode).expect("fixture");
    let m = gen(&c, "u_XX");
    out.push(("automorphism", c, m));
    let c = algebra_category(&["X", "Y"], &["1", "e"], &idem, mode).expect("fixture");
    let m = gen(&c, "e_XX");
    out.push(("two-object", c, m));
    out
}

/// `BZ`: one object, spanned by its identity.
pub fn bz() -> GradedCategory {
    let mut c = GradedCategory::plain();
    let x = c.add_object("pt").expect("fresh");
    let e = c.add_gen("1", x, x, rat(0, 1)).expect("fresh");
    c.set_unit(x, e).expect("endomorphism");
    c
}

/// `B(Z[G])` for a finite cyclic `G`, graded by `G`: one basis element `t^g`
/// per group element.
pub fn group_ring(group: &Pog) -> Result<GradedCategory> {
    let (step, order) = cyclic(group)?;
    let n = order.ok_or_else(|| Error::Invalid(format!("{group} is infinite")))?;
    let mut c = GradedCategory::new(group.clone())?;
    let x = c.add_object("pt")?;
    let g: Vec<usize> = (0..n).map(|k| c.add_gen(&format!("t^{}", k), x, x, step * Rational::from_integer(k))).collect::<Result<_>>()?;
    c.set_unit(x, g[0])?;
    for a in 1..n {
        for b in 1..n {
            c.set_comp(g[a as usize], g[b as usize], basis_vector(g[((a + b) % n) as usize]))?;
        }
    }
    Ok(c)
}

/// One object with a copy of `Z` in every grade of `(1/n)Z/Z`, multiplying
/// by adding grades, and `T` moving each grade up by one step.
pub fn circle_module(n: u64) -> Result<GradedCategory> {
    let mut c = group_ring(&Pog::quotient(Pog::Scaled(n), 1)?)?;
    c.enrich();
    for k in 0..n as usize {
        c.set_shift(k, basis_vector((k + 1) % n as usize))?;
    }
    Ok(c)
}

/// The path category of a quiver modulo paths of length three, graded by
/// `pog`. `arrows` lists `(source, target, grade)`; the product of arrows
/// `i` and `j` is `coeff(i, j)` times their path.
pub fn path_category(
    pog: Pog,
    objects: usize,
    arrows: &[(usize, usize, Rational)],
    coeff: &dyn Fn(usize, usize) -> i64,
) -> Result<GradedCategory> {
    let mut c = GradedCategory::new(pog)?;
    for x in 0..objects {
        c.add_object(&format!("o{}", x))?;
        let e = c.add_gen(&format!("1_{}", x), x, x, rat(0, 1))?;
        c.set_unit(x, e)?;
    }
    let a: Vec<usize> = arrows
        .iter()
        .enumerate()
        .map(|(i, (s, t, g))| c.add_gen(&format!("a{}", i), *s, *t, *g))
        .collect::<Result<_>>()?;
    for (i, (_, t, g)) in arrows.iter().enumerate() {
        for (j, (s2, t2, g2)) in arrows.iter().enumerate() {
            if t != s2 {
                continue;
            }
            let p = c.add_gen(&format!("a{}.a{}", i, j), arrows[i].0, *t2, g + g2)?;
            let k = coeff(i, j);
            if k != 0 {
                c.set_comp(a[i], a[j], [(p, k)].into_iter().collect())?;
            }
        }
    }
    Ok(c)
}
