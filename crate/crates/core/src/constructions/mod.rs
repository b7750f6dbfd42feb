//! Quotients, twisted complexes, bounding cochains and localization.

mod bounding;
mod induced;
mod localize;
mod quotient;
mod twisted;

pub use bounding::{bc_category, candidate_terms, compare_bc, BcComparison, flat_offsets, flatten, is_bounding_cochain, mc_residual, search_bounding_cochains};
pub use induced::InducedQuotient;
pub use localize::{check_eligible, localize, right_multiplication, telescope_colimit, Localization};
pub use quotient::{localize_module, Quotient, Word};
pub use twisted::{TwGen, Twisted, TwistedComplex};

use crate::ainf::{image_homology, inclusion_quasi_iso, AinfCategory};
use crate::Result;

/// Certifies that `Gr hom(x, y)` in the quotient is acyclic as far as the
/// length bound can see: on every weight stratum, each cycle of length
/// below `lmax` bounds within length `lmax`.
pub fn certify_acyclic<C: AinfCategory>(q: &Quotient<C>, x: &C::Obj, y: &C::Obj) -> Result<bool> {
    let l = q.lmax();
    if l == 0 {
        return Ok(false);
    }
    let inner = |w: &Word<C::Gen>| w.length() < l;
    let outer = |_: &Word<C::Gen>| true;
    for w in crate::ainf::gr_strata(q, x, y, &outer) {
        if image_homology(q, x, y, w, &inner, &outer)?.iter().any(|(_, h)| !h.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `Gr hom_C(x, y) -> Gr hom_{C/A}(x, y)`, the inclusion of the
/// one-letter words, is a quasi-isomorphism on every stratum.
pub fn inclusion_is_quasi_iso<C: AinfCategory>(q: &Quotient<C>, x: &C::Obj, y: &C::Obj) -> Result<bool> {
    inclusion_quasi_iso(q, x, y, &|w: &Word<C::Gen>| w.length() == 0, &|_| true)
}
