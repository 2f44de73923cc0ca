//! The determinant method over `k[t]`: monomials evaluated at points of
//! bounded height, the exact determinant and its order, the two competing
//! bounds, and the auxiliary hypersurface through dependent points.

mod bounds;
mod matrix;
mod taylor;

pub use bounds::{
    certify_bounds, degree_budget, degree_budget_projective, degree_budget_weighted,
    det_fraction_free, Certificate, DetReport, Verdict,
};
pub use matrix::{
    bareiss_det, bezout_bound, build_matrix, kernel_hypersurface, rank, verify_vanishing,
    Hypersurface, PointMatrix,
};
pub use taylor::{
    power_substitution, tr_check, Compose, ExpMap, Margin, PolyMap, TaylorMap, TrCheckReport,
    TruncatedTaylor,
};
