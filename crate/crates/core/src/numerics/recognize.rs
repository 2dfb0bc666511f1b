//! Rational recognition by continued fractions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::real::BigFloat;
use super::series::log10_abs;
use crate::exact::Rational;

/// Best rational `p/q` with `q <= denom_bound` for `v / basis`, accepted only
/// when it matches to `digits / 2` decimal digits.
pub fn recognize_rational_multiple(v: &BigFloat, basis: &BigFloat, denom_bound: u64, digits: u32) -> Option<Rational> {
    if basis.is_zero() {
        return None;
    }
    let x = v.clone() / basis.clone();
    let bound = BigInt::from(denom_bound);
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut best: Option<Rational> = None;
    let mut rest = x.clone();
    let bits = x.precision();
    for _ in 0..(4 * digits as usize + 16) {
        let a = rest.floor_int();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > bound {
            break;
        }
        best = Some(Rational::new(p2.clone(), q2.clone()));
        let frac = rest.clone() - BigFloat::from_bigint(&a, bits);
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        if log10_abs(&frac) < -(digits as f64) + 2.0 {
            break;
        }
        rest = BigFloat::from_i64(1, bits) / frac;
    }
    let r = best?;
    let err = x - BigFloat::from_rational(&r, bits);
    let scale = log10_abs(&BigFloat::from_rational(&r, bits)).max(0.0);
    let tol = -(digits as f64) / 2.0 + scale;
    if err.is_zero() || log10_abs(&err) < tol {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::numerics::{digits_to_bits, pi_const, Real};

    #[test]
    fn round_trip_pi_power() {
        let b = digits_to_bits(60);
        let pi = pi_const(60);
        let p4 = pi.clone() * pi.clone() * pi.clone() * pi.clone();
        let v = BigFloat::from_i64(2048, b) / p4.clone();
        let basis = BigFloat::from_i64(1, b) / p4;
        assert_eq!(recognize_rational_multiple(&v, &basis, 100, 60), Some(int(2048)));
    }

    #[test]
    fn pi_over_pi_is_one() {
        let pi = pi_const(60);
        assert_eq!(recognize_rational_multiple(&pi, &pi, 10, 60), Some(int(1)));
    }

    #[test]
    fn negative_fraction() {
        let b = digits_to_bits(50);
        let v = BigFloat::from_rational(&rat(-355, 113), b);
        assert_eq!(recognize_rational_multiple(&v, &BigFloat::from_i64(1, b), 1000, 50), Some(rat(-355, 113)));
    }

    #[test]
    fn irrational_is_rejected() {
        let b = digits_to_bits(50);
        let v = BigFloat::from_i64(2, b).sqrt();
        assert_eq!(recognize_rational_multiple(&v, &BigFloat::from_i64(1, b), 100, 50), None);
    }
}
