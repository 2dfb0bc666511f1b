//! The flawless conditions `F(0,k) = 0` and `F(n,k) -> 0` as `n -> oo`.

use num_traits::{One, Signed, Zero};

use super::WZPair;
use crate::exact::{RatFunc, Rational};
use crate::hyperterm::Dir;
use crate::{Poly2, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlawlessStatus {
    Flawless,
    NotFlawless,
    /// `|rho| = 1`; the ratio test decides nothing.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlawlessReport {
    pub f_zero_at_n0: bool,
    /// `S(0,k)`, identically zero exactly when `f_zero_at_n0`.
    pub witness: RatFunc,
    /// `lim |F(n+1,k)/F(n,k)|`; `None` when the quotient grows without bound.
    pub decay_ratio: Option<Rational>,
    pub flawless: bool,
    pub status: FlawlessStatus,
}

/// Coefficient of the top power of `n`, as a polynomial in `k`.
fn lead_in_n(p: &Poly2) -> Poly2 {
    let d = p.degree_n();
    Poly2::from_terms(p.terms().filter(|(e, _)| e.0 == d).map(|(e, c)| ((0, e.1), c.clone())))
}

/// `lim_{n -> oo} |q(n, k)|`, taken at `k = 0` if the leading coefficients depend on `k`.
fn limit_abs(num: &Poly2, den: &Poly2) -> Option<Rational> {
    if num.is_zero() {
        return Some(Rational::zero());
    }
    match num.degree_n().cmp(&den.degree_n()) {
        std::cmp::Ordering::Less => Some(Rational::zero()),
        std::cmp::Ordering::Greater => None,
        std::cmp::Ordering::Equal => {
            let (a, b) = (lead_in_n(num), lead_in_n(den));
            let zero = Rational::zero();
            let r = if a.is_constant() && b.is_constant() {
                a.constant_term() / b.constant_term()
            } else {
                a.eval(&zero, &zero) / b.eval(&zero, &zero)
            };
            Some(r.abs())
        }
    }
}

pub fn check_flawless(p: &WZPair) -> Result<FlawlessReport> {
    let witness = p.s.substitute(&Poly2::zero(), &Poly2::k())?;
    let f_zero_at_n0 = witness.is_zero();
    let q = p.kernel().shift_quotient_factored(Dir::N)?;
    let s = RatFunc::new(q.num.expand(), q.den.expand())?;
    let decay_ratio = limit_abs(s.num(), s.den());
    let status = match &decay_ratio {
        _ if !f_zero_at_n0 => FlawlessStatus::NotFlawless,
        Some(r) if r.is_one() => FlawlessStatus::Inconclusive,
        Some(r) if *r < Rational::one() => FlawlessStatus::Flawless,
        _ => FlawlessStatus::NotFlawless,
    };
    Ok(FlawlessReport {
        f_zero_at_n0,
        witness,
        flawless: status == FlawlessStatus::Flawless,
        decay_ratio,
        status,
    })
}
