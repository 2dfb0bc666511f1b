//! Closed forms of Gamma products at rational arguments.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{rat, rational_pow, Rational};
use crate::numerics::{BigFloat, Real};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedKind {
    PiPower,
    LValue,
}

/// `r * sqrt((-1)^m chi) / pi^m` or `r * L_chi(m + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub kind: ClosedKind,
    pub r: Rational,
    pub m: u32,
    pub chi: i64,
}

impl ClosedForm {
    pub fn pi_power(r: Rational, m: u32, chi: i64) -> Self {
        ClosedForm { kind: ClosedKind::PiPower, r, m, chi }
    }

    pub fn l_value(r: Rational, m: u32, chi: i64) -> Self {
        ClosedForm { kind: ClosedKind::LValue, r, m, chi }
    }

    /// The real number multiplying `r`.
    pub fn basis(&self, digits: u32) -> Result<BigFloat> {
        let bits = crate::numerics::digits_to_bits(digits);
        match self.kind {
            ClosedKind::PiPower => {
                let d = if self.m % 2 == 0 { self.chi } else { -self.chi };
                if d <= 0 {
                    return Err(Error::RecognitionFailed(format!("sqrt({d}) is not real")));
                }
                let s = BigFloat::from_i64(d, bits).sqrt();
                let pi = BigFloat::pi(bits);
                let mut p = BigFloat::from_i64(1, bits);
                for _ in 0..self.m {
                    p = p * pi.clone();
                }
                Ok(s / p)
            }
            ClosedKind::LValue => crate::numerics::dirichlet_l(self.chi, self.m + 1, digits),
        }
    }

    pub fn value(&self, digits: u32) -> Result<BigFloat> {
        let bits = crate::numerics::digits_to_bits(digits);
        Ok(BigFloat::from_rational(&self.r, bits) * self.basis(digits)?)
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ClosedKind::PiPower => {
                let d = if self.m % 2 == 0 { self.chi } else { -self.chi };
                write!(f, "{} * pi^-{}", self.r, self.m)?;
                if d != 1 {
                    write!(f, " * sqrt({d})")?;
                }
                Ok(())
            }
            ClosedKind::LValue => write!(f, "{} * L({}, {})", self.r, self.chi, self.m + 1),
        }
    }
}

/// `r * sqrt(d) * pi^(half_pi / 2)` with `d` squarefree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaClosed {
    pub r: Rational,
    pub d: BigInt,
    pub half_pi: i64,
}

impl GammaClosed {
    pub fn to_closed_form(&self) -> Option<ClosedForm> {
        if self.half_pi >= 0 || self.half_pi % 2 != 0 {
            return None;
        }
        let m = (-self.half_pi / 2) as u32;
        let d: i64 = (&self.d).try_into().ok()?;
        let chi = if m % 2 == 0 { d } else { -d };
        Some(ClosedForm::pi_power(self.r.clone(), m, chi))
    }

    pub fn mul(&self, o: &GammaClosed) -> GammaClosed {
        let mut sq = SqrtAcc::default();
        sq.push(&self.d, 1);
        sq.push(&o.d, 1);
        let (f, d) = sq.finish();
        GammaClosed { r: &self.r * &o.r * f, d, half_pi: self.half_pi + o.half_pi }
    }

    pub fn rational(r: Rational) -> Self {
        GammaClosed { r, d: BigInt::one(), half_pi: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PochValue {
    Exact(GammaClosed),
    Unevaluated,
}

#[derive(Default)]
struct SqrtAcc {
    primes: BTreeMap<u64, i64>,
}

impl SqrtAcc {
    /// Multiply by `sqrt(v)^e` for a small squarefree `v`.
    fn push(&mut self, v: &BigInt, e: i64) {
        let mut x: u64 = v.try_into().expect("small squarefree radicand");
        let mut p = 2;
        while x > 1 {
            while x % p == 0 {
                *self.primes.entry(p).or_insert(0) += e;
                x /= p;
            }
            p += 1;
        }
    }

    fn finish(self) -> (Rational, BigInt) {
        let mut r = Rational::one();
        let mut d = BigInt::one();
        for (p, c) in self.primes {
            let pr = Rational::from_integer(p.into());
            r *= rational_pow(&pr, c.div_euclid(2));
            if c.rem_euclid(2) == 1 {
                d *= p;
            }
        }
        (r, d)
    }
}

/// `1 / sin(pi x)` as `r * sqrt(d)` for the angles that have one.
fn csc_pi(x: &Rational) -> Option<(Rational, i64)> {
    let t = [(rat(1, 6), (rat(2, 1), 1)), (rat(1, 4), (rat(1, 1), 2)), (rat(1, 3), (rat(2, 3), 3))];
    let y = if *x > rat(1, 2) { Rational::one() - x } else { x.clone() };
    t.iter().find(|(a, _)| *a == y).map(|(_, v)| v.clone())
}

/// Closed form of `prod Gamma(x)^e` if it reduces through integer shifts,
/// `Gamma(1/2) = sqrt(pi)` and reflection at sixths, quarters and thirds.
pub fn gamma_product_closed_form(items: &[(Rational, i64)]) -> Result<Option<GammaClosed>> {
    let mut r = Rational::one();
    let mut reduced: BTreeMap<Rational, i64> = BTreeMap::new();
    for (x, e) in items {
        if *e == 0 {
            continue;
        }
        if x.is_integer() && !x.is_positive() {
            return Err(Error::PoleHit(format!("Gamma({x})")));
        }
        // x0 in (0, 1]
        let x0 = x - (x.ceil() - Rational::one());
        let m = (x - &x0).to_integer();
        let mut f = Rational::one();
        if m.is_positive() {
            let mut j = BigInt::zero();
            while j < m {
                f *= &x0 + Rational::from_integer(j.clone());
                j += 1;
            }
        } else {
            let mut j = BigInt::zero();
            while j < -m.clone() {
                f /= x + Rational::from_integer(j.clone());
                j += 1;
            }
        }
        r *= rational_pow(&f, *e);
        *reduced.entry(x0).or_insert(0) += e;
    }
    let mut half_pi = 0;
    let mut sq = SqrtAcc::default();
    let keys: Vec<Rational> = reduced.keys().cloned().collect();
    for x in keys {
        let e = reduced[&x];
        if e == 0 || x.is_one() {
            continue;
        }
        if x == rat(1, 2) {
            half_pi += e;
            reduced.insert(x, 0);
            continue;
        }
        let y = Rational::one() - &x;
        let ey = reduced.get(&y).copied().unwrap_or(0);
        if ey == 0 || (ey > 0) != (e > 0) {
            return Ok(None);
        }
        let Some((cr, cd)) = csc_pi(&x) else {
            return Ok(None);
        };
        let t = if e > 0 { e.min(ey) } else { e.max(ey) };
        // Gamma(x) Gamma(1-x) = pi csc(pi x)
        r *= rational_pow(&cr, t);
        sq.push(&BigInt::from(cd), t);
        half_pi += 2 * t;
        reduced.insert(x.clone(), e - t);
        reduced.insert(y, ey - t);
        if e - t != 0 {
            return Ok(None);
        }
    }
    if reduced.iter().any(|(x, e)| *e != 0 && !x.is_one() && *x != rat(1, 2)) {
        return Ok(None);
    }
    let (f, d) = sq.finish();
    Ok(Some(GammaClosed { r: r * f, d, half_pi }))
}

/// `(c)_k0 = Gamma(c + k0) / Gamma(c)` in closed form when available.
pub fn poch_closed_form(c: &Rational, k0: &Rational) -> Result<PochValue> {
    let top = c + k0;
    for v in [c, &top] {
        if v.is_integer() && !v.is_positive() {
            return Err(Error::PoleHit(format!("Gamma({v})")));
        }
    }
    let items = [(top, 1), (c.clone(), -1)];
    Ok(match gamma_product_closed_form(&items)? {
        Some(g) if g.half_pi.abs() <= 1 && g.d.is_one() => PochValue::Exact(g),
        _ => PochValue::Unevaluated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_over_half() {
        // (1/2)_{1/2} = 1 / sqrt(pi)
        let v = poch_closed_form(&rat(1, 2), &rat(1, 2)).unwrap();
        assert_eq!(v, PochValue::Exact(GammaClosed { r: rat(1, 1), d: BigInt::one(), half_pi: -1 }));
    }

    #[test]
    fn integer_length_is_rational() {
        let v = poch_closed_form(&rat(1, 3), &rat(3, 1)).unwrap();
        assert_eq!(v, PochValue::Exact(GammaClosed::rational(rat(1 * 4 * 7, 27))));
    }

    #[test]
    fn quarter_is_unevaluated() {
        assert_eq!(poch_closed_form(&rat(3, 4), &rat(1, 2)).unwrap(), PochValue::Unevaluated);
    }

    #[test]
    fn sixths_pair_by_reflection() {
        // (1/6)_{1/2} (5/6)_{1/2} = Gamma(2/3) Gamma(4/3) / (Gamma(1/6) Gamma(5/6)) = 1 / (3 sqrt 3)
        let items = [(rat(2, 3), 1), (rat(4, 3), 1), (rat(1, 6), -1), (rat(5, 6), -1)];
        let g = gamma_product_closed_form(&items).unwrap().unwrap();
        assert_eq!(g, GammaClosed { r: rat(1, 9), d: BigInt::from(3), half_pi: 0 });
    }

    #[test]
    fn closed_form_of_pi_power() {
        let g = GammaClosed { r: rat(2048, 1), d: BigInt::one(), half_pi: -8 };
        assert_eq!(g.to_closed_form(), Some(ClosedForm::pi_power(rat(2048, 1), 4, 1)));
        let g = GammaClosed { r: rat(32, 1), d: BigInt::one(), half_pi: -6 };
        assert_eq!(g.to_closed_form(), Some(ClosedForm::pi_power(rat(32, 1), 3, -1)));
    }

    #[test]
    fn pole_reported() {
        assert!(poch_closed_form(&rat(0, 1), &rat(1, 2)).is_err());
    }
}
