//! Exact verification, certificate search and high-precision certification of
//! Wilf-Zeilberger pairs.

pub mod error;
pub mod exact;
pub mod hyperterm;
pub mod numerics;
pub mod wz;

pub use error::{Error, Result};

pub type Rational = exact::Rational;
pub type Poly2 = exact::BiPoly<Rational>;
pub type RatFunc2 = exact::RatFunc;
pub type Float = numerics::BigFloat;
pub type Complex = num_complex::Complex<numerics::BigFloat>;
