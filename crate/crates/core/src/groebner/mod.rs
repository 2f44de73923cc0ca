//! Polynomials in several variables over `Q`, Gröbner bases in the graded
//! order of [`crate::monomial`], Hilbert functions and affine dimension.

mod buchberger;
mod hilbert;
mod parse;
mod poly;

pub use buchberger::{buchberger, normal_form, s_polynomial, IdealBasis, DEFAULT_PAIR_BUDGET};
pub use hilbert::{
    a_estimate, a_estimates, hilbert_fn, hilbert_poly_check, standard_monomials, variety_dimension,
    HilbertPolyReport, HilbertRecord,
};
pub use poly::{poly_eval_series, MultiPoly};
