#![no_std]
extern crate alloc;

pub mod curves;
pub mod determinant;
pub mod error;
pub mod groebner;
pub mod monomial;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::{Fp, Scalar};
pub use series::{exp_series, LaurentPoly, ResidueClass, SeriesValue, TruncSeries, Valuation};
