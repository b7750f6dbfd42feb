use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::AinfCategory;
use crate::homology::{kernel, kernel_f2, quotient_group, AbelianGroup, ChainComplexZ, ChainMap, IntMatrix};
use crate::scalars::{CoeffMode, Rational};
use crate::Result;

/// The weight-`w` piece of `Gr hom(x, y)`: spanned by `T^{w - w(g)} g` for
/// the generators with `w(g) <= w`, with the weight-preserving part of
/// `b^1` as differential.
#[derive(Clone, Debug)]
pub struct GrComplex<G> {
    pub complex: ChainComplexZ,
    /// `basis[n - lo]` lists the generators in degree `n`.
    pub basis: Vec<Vec<G>>,
}

impl<G: Ord + Clone> GrComplex<G> {
    fn position(&self, g: &G) -> Option<(usize, usize)> {
        self.basis.iter().enumerate().find_map(|(k, b)| b.iter().position(|h| h == g).map(|i| (k, i)))
    }
}

/// Homology of one weight stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub weight: Rational,
    pub homology: Vec<(i32, AbelianGroup)>,
}

/// The weights at which `Gr hom(x, y)` changes: the distinct generator
/// weights. Between consecutive ones the complexes agree.
pub fn gr_strata<C: AinfCategory + ?Sized>(cat: &C, x: &C::Obj, y: &C::Obj, keep: &dyn Fn(&C::Gen) -> bool) -> Vec<Rational> {
    let mut w: Vec<Rational> = cat.basis(x, y).iter().filter(|g| keep(g)).map(|g| cat.weight(g)).collect();
    w.sort();
    w.dedup();
    w
}

pub fn gr_complex<C: AinfCategory + ?Sized>(
    cat: &C,
    x: &C::Obj,
    y: &C::Obj,
    w: Rational,
    keep: &dyn Fn(&C::Gen) -> bool,
) -> Result<GrComplex<C::Gen>> {
    let all = cat.basis(x, y);
    let (lo, hi) = match (all.iter().map(|g| cat.degree(g)).min(), all.iter().map(|g| cat.degree(g)).max()) {
        (Some(lo), Some(hi)) => (lo, hi + 1),
        _ => return Ok(GrComplex { complex: ChainComplexZ::zero(), basis: Vec::new() }),
    };
    let mut basis: Vec<Vec<C::Gen>> = vec![Vec::new(); (hi - lo) as usize];
    let mut index = BTreeMap::new();
    for g in all.into_iter().filter(|g| cat.weight(g) <= w && keep(g)) {
        let k = (cat.degree(&g) - lo) as usize;
        index.insert(g.clone(), basis[k].len());
        basis[k].push(g);
    }
    let mut diffs = Vec::new();
    for k in 0..basis.len() {
        let rows = basis.get(k + 1).map_or(0, |b| b.len());
        let mut m = IntMatrix::zeros(rows, basis[k].len());
        for (j, g) in basis[k].iter().enumerate() {
            let wg = cat.weight(g);
            for (h, s, c) in cat.mu(core::slice::from_ref(g)).terms() {
                if cat.weight(h) + s != wg {
                    continue;
                }
                if let Some(i) = index.get(h) {
                    m.add_to(*i, j, c)?;
                }
            }
        }
        diffs.push(m);
    }
    let dims = basis.iter().map(|b| b.len()).collect();
    let complex = ChainComplexZ::new(lo as i32, dims, diffs, cat.mode())?;
    Ok(GrComplex { complex, basis })
}

/// Homology of every weight stratum of `Gr hom(x, y)`.
pub fn gr_homology<C: AinfCategory + ?Sized>(cat: &C, x: &C::Obj, y: &C::Obj) -> Result<Vec<Stratum>> {
    let keep = |_: &C::Gen| true;
    gr_strata(cat, x, y, &keep)
        .into_iter()
        .map(|w| {
            let c = gr_complex(cat, x, y, w, &keep)?;
            Ok(Stratum { weight: w, homology: c.complex.all_homology()? })
        })
        .collect()
}

/// Image of `H(inner) -> H(outer)` in each degree, at stratum `w`, where
/// `inner` selects a subcomplex of the one selected by `outer`.
pub fn image_homology<C: AinfCategory + ?Sized>(
    cat: &C,
    x: &C::Obj,
    y: &C::Obj,
    w: Rational,
    inner: &dyn Fn(&C::Gen) -> bool,
    outer: &dyn Fn(&C::Gen) -> bool,
) -> Result<Vec<(i32, AbelianGroup)>> {
    let small = gr_complex(cat, x, y, w, inner)?;
    let big = gr_complex(cat, x, y, w, outer)?;
    let mut out = Vec::new();
    let c = &big.complex;
    for n in c.lo()..c.hi() {
        let k = (n - c.lo()) as usize;
        let z = match cat.mode() {
            CoeffMode::Z => kernel(&small.complex.d(n))?,
            CoeffMode::F2 => kernel_f2(&small.complex.d(n)),
        };
        let mut emb = IntMatrix::zeros(c.dim(n), z.cols());
        for (i, g) in small.basis[k].iter().enumerate() {
            let (_, bi) = big.position(g).ok_or_else(|| crate::Error::Invalid(alloc::string::String::from("inner generator missing from outer")))?;
            for j in 0..z.cols() {
                emb.set(bi, j, z.get(i, j));
            }
        }
        let boundary = c.d(n - 1);
        let group = match cat.mode() {
            CoeffMode::Z => quotient_group(&emb, &boundary)?,
            CoeffMode::F2 => AbelianGroup { rank: emb.hcat(&boundary)?.rank_f2() - boundary.rank_f2(), torsion: Vec::new() },
        };
        out.push((n, group));
    }
    Ok(out)
}

/// Whether including the generators selected by `inner` into those selected
/// by `outer` is a quasi-isomorphism on every weight stratum.
pub fn inclusion_quasi_iso<C: AinfCategory + ?Sized>(
    cat: &C,
    x: &C::Obj,
    y: &C::Obj,
    inner: &dyn Fn(&C::Gen) -> bool,
    outer: &dyn Fn(&C::Gen) -> bool,
) -> Result<bool> {
    for w in gr_strata(cat, x, y, outer) {
        let small = gr_complex(cat, x, y, w, inner)?;
        let big = gr_complex(cat, x, y, w, outer)?;
        if big.basis.is_empty() {
            continue;
        }
        let lo = big.complex.lo();
        let mut maps = Vec::new();
        for (k, b) in big.basis.iter().enumerate() {
            let mut m = IntMatrix::zeros(b.len(), small.basis[k].len());
            for (j, g) in small.basis[k].iter().enumerate() {
                if let Some(i) = b.iter().position(|h| h == g) {
                    m.set(i, j, 1);
                }
            }
            maps.push(m);
        }
        let f = ChainMap::new(small.complex, big.complex, lo, maps)?;
        if !crate::homology::is_quasi_iso(&f)?.is_quasi_iso {
            return Ok(false);
        }
    }
    Ok(true)
}
