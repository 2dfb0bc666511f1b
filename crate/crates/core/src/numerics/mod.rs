//! Arbitrary precision evaluation: constants, gamma, series, Dirichlet
//! L-values, rational recognition and Barnes integrals.

pub mod barnes;
pub mod bsplit;
pub mod dirichlet;
pub mod gamma;
pub mod pi;
pub mod quad;
pub mod real;
pub mod recognize;
pub mod series;

pub use gamma::{log_gamma_complex, LogGamma};
pub use pi::pi_const;
pub use real::{digits_to_bits, BigFloat, Real};
pub use dirichlet::dirichlet_l;
pub use series::{digits_matched, sum_series, SeriesSpec, SeriesSum};
pub use recognize::recognize_rational_multiple;
