use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::quotient::Quotient;
use super::twisted::{Twisted, TwistedComplex};
use crate::ainf::{AinfCategory, Chain, Full};
use crate::homology::{smith_normal_form, AbelianGroup, IntMatrix};
use crate::scalars::{fmt_rational, CoeffMode};
use crate::{Error, Result};

/// `C[M^{-1}]`: twisted complexes over `C`, quotiented by the cones of the
/// morphisms in `M`, restricted to the objects of `C`.
pub type Localization<C> = Full<Quotient<Twisted<C>>>;

/// A morphism is eligible when it is a degree zero `x -> y` whose
/// differential lies in positive weight.
pub fn check_eligible<C: AinfCategory + ?Sized>(cat: &C, name: &str, m: &Chain<C::Gen>) -> Result<(C::Obj, C::Obj)> {
    let bad = |reason: String| Error::IneligibleMorphism { name: name.to_string(), reason };
    let mut ends = None;
    for (g, _, _) in m.terms() {
        let e = (cat.source(g), cat.target(g));
        if ends.get_or_insert_with(|| e.clone()) != &e {
            return Err(bad("terms lie in different homs".to_string()));
        }
        if cat.degree(g) != 0 {
            return Err(bad(format!("{} has degree {}", cat.gen_name(g), cat.degree(g))));
        }
    }
    let ends = ends.ok_or_else(|| bad("zero morphism".to_string()))?;
    let d = crate::ainf::mu_chains(cat, core::slice::from_ref(m));
    if let Some(w) = d.min_weight(|g| cat.weight(g)) {
        if w < cat.epsilon() {
            return Err(bad(format!("its differential has weight {}", fmt_rational(&w))));
        }
    }
    Ok(ends)
}

/// Builds `C[M^{-1}]` with quotient words of length at most `lmax`.
pub fn localize<C: AinfCategory>(base: C, morphisms: &[(String, Chain<C::Gen>)], lmax: usize) -> Result<Localization<C>> {
    let mut objects: Vec<(String, TwistedComplex<C::Obj, C::Gen>)> =
        base.objects().into_iter().map(|x| (base.obj_name(&x), TwistedComplex::single(x, 0))).collect();
    let n = objects.len();
    for (name, m) in morphisms {
        let (x, y) = check_eligible(&base, name, m)?;
        objects.push((format!("Cone({})", name), TwistedComplex::cone(x, y, m.clone())));
    }
    let tw = Twisted::new(base, objects)?;
    let cones = (n..n + morphisms.len()).collect();
    Ok(Full::new(Quotient::new(tw, cones, lmax), (0..n).collect()))
}

/// Right multiplication `a -> mu2(a, m)` on the basis of `hom(x, x)`, for
/// an endomorphism `m` of `x`; shifts are dropped.
pub fn right_multiplication<C: AinfCategory + ?Sized>(cat: &C, x: &C::Obj, m: &Chain<C::Gen>) -> Result<IntMatrix> {
    let basis = cat.basis(x, x);
    let mut f = IntMatrix::zeros(basis.len(), basis.len());
    for (j, g) in basis.iter().enumerate() {
        for (h, _, k) in crate::ainf::mu_chains(cat, &[Chain::gen(g.clone()), m.clone()]).terms() {
            let i = basis.iter().position(|b| b == h).ok_or_else(|| Error::ShapeMismatch("m is not an endomorphism".to_string()))?;
            f.set(i, j, f.get(i, j) + k);
        }
    }
    Ok(f)
}

/// `colim(Z^n --f--> Z^n --f--> ...)`, when it is finitely generated.
///
/// The image of `f^n` is stable; the colimit is that image when `f` acts on
/// it invertibly.
pub fn telescope_colimit(f: &IntMatrix, mode: CoeffMode) -> Result<AbelianGroup> {
    let n = f.rows();
    if f.cols() != n {
        return Err(Error::ShapeMismatch("telescope needs an endomorphism".to_string()));
    }
    let mut p = IntMatrix::identity(n);
    for _ in 0..n {
        p = f.mul(&p)?.reduce(mode);
    }
    match mode {
        CoeffMode::F2 => Ok(AbelianGroup { rank: p.rank_f2(), torsion: Vec::new() }),
        CoeffMode::Z => {
            let r = p.rank()?;
            // f restricted to im f^n must be onto im f^n
            let fp = f.mul(&p)?;
            let onto = smith_normal_form(&p.hcat(&fp)?)?.invariants() == smith_normal_form(&fp)?.invariants();
            if !onto {
                return Err(Error::Invalid("the telescope does not stabilize".to_string()));
            }
            Ok(AbelianGroup { rank: r, torsion: Vec::new() })
        }
    }
}
