//! Exact arithmetic over the rationals: bivariate polynomials, rational
//! functions, linear factors and a dense linear solver.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub mod factor;
pub mod gcd;
pub mod linsolve;
pub mod modp;
pub mod modsolve;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod upoly;

pub use factor::{FactoredPoly, FactoredRat, Linear};
pub use gcd::{poly_div_exact, poly_gcd};
pub use parse::{parse_poly, parse_ratfunc, parse_rational};
pub use modsolve::solve_linear_modular;
pub use linsolve::{solve_linear, LinearSolution};
pub use poly::BiPoly;
pub use ratfunc::RatFunc;
pub use upoly::UPoly;

/// Coefficient ring for [`BiPoly`].
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// True iff every coefficient of `p` vanishes.
pub fn poly_is_zero(p: &BiPoly<Rational>) -> bool {
    p.is_zero()
}

/// Least common multiple of the coefficient denominators.
pub fn denominator_lcm(p: &BiPoly<Rational>) -> BigInt {
    p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
}

/// Gcd of the numerators of an integer-valued polynomial's coefficients.
pub fn integer_content(p: &BiPoly<Rational>) -> BigInt {
    p.terms().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()))
}

/// `p` scaled to integer coefficients with content 1 and positive grlex
/// leading coefficient, together with the factor divided out (`p = unit * result`).
pub fn primitive_part(p: &BiPoly<Rational>) -> (Rational, BiPoly<Rational>) {
    if p.is_zero() {
        return (Rational::one(), p.clone());
    }
    let l = denominator_lcm(p);
    let scaled = p.scale(&Rational::from_integer(l.clone()));
    let mut g = integer_content(&scaled);
    let (_, lc) = scaled.leading_term().expect("nonzero");
    if lc.is_negative() {
        g = -g;
    }
    let q = scaled.scale(&Rational::new(BigInt::one(), g.clone()));
    (Rational::new(g, l), q)
}

/// `r^e` for a signed exponent.
pub fn rational_pow(r: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}
