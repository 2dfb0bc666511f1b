//! `zeta(s)` and `beta(s) = L_{-4}(s)` by accelerated alternating series.

use num_bigint::BigInt;

use super::real::{digits_to_bits, BigFloat, Real};
use crate::{Error, Result};

/// `sum_{j>=0} (-1)^j a_j` by the Cohen-Rodriguez Villegas-Zagier
/// acceleration, accurate when `a_j` is a moment sequence.
pub fn alternating_sum(a: impl Fn(u64, usize) -> BigFloat, digits: u32) -> BigFloat {
    let bits = digits_to_bits(digits) + 32;
    // error is about 2 / 5.828^n
    let n = (digits as f64 / 5.828f64.log10()).ceil() as u64 + 4;
    let root8 = BigFloat::from_i64(8, bits).sqrt();
    let base = BigFloat::from_i64(3, bits) + root8;
    let mut d = BigFloat::from_i64(1, bits);
    for _ in 0..n {
        d = d * base.clone();
    }
    let one = BigFloat::from_i64(1, bits);
    d = (d.clone() + one / d) / BigFloat::from_i64(2, bits);
    let mut b = BigFloat::from_i64(-1, bits);
    let mut c = -d.clone();
    let mut s = BigFloat::from_i64(0, bits);
    let ni = n as i64;
    for k in 0..n {
        c = b.clone() - c;
        s = s + c.clone() * a(k, bits);
        let ki = k as i64;
        b = b * BigFloat::from_i64(2 * (ki + ni) * (ki - ni), bits)
            / BigFloat::from_i64((2 * ki + 1) * (ki + 1), bits);
    }
    s / d
}

fn inv_pow(base: u64, s: u32, bits: usize) -> BigFloat {
    let p = num_traits::pow(BigInt::from(base), s as usize);
    BigFloat::from_i64(1, bits) / BigFloat::from_bigint(&p, bits)
}

/// `L_chi(s)` for `chi = 1` (Riemann zeta) and `chi = -4`.
pub fn dirichlet_l(chi: i64, s: u32, digits: u32) -> Result<BigFloat> {
    match (chi, s) {
        (1, s) if s >= 2 => {
            let eta = alternating_sum(|j, b| inv_pow(j + 1, s, b), digits);
            let bits = eta.precision();
            // zeta = eta / (1 - 2^(1-s))
            let f = BigFloat::from_i64(1, bits) - inv_pow(2, s - 1, bits);
            Ok((eta / f).set_precision(digits_to_bits(digits)))
        }
        (-4, s) if s >= 1 => {
            let v = alternating_sum(|j, b| inv_pow(2 * j + 1, s, b), digits);
            Ok(v.set_precision(digits_to_bits(digits)))
        }
        _ => Err(Error::UnsupportedCharacter { chi, s }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::pi::pi_const;

    #[test]
    fn zeta_two_and_four() {
        let pi = pi_const(70);
        let z2 = dirichlet_l(1, 2, 60).unwrap();
        let want = pi.clone() * pi.clone() / BigFloat::from_i64(6, 240);
        assert_eq!(z2.to_decimal(58), want.to_decimal(58));
        let z4 = dirichlet_l(1, 4, 60).unwrap();
        let want = pi.clone() * pi.clone() * pi.clone() * pi / BigFloat::from_i64(90, 240);
        assert_eq!(z4.to_decimal(58), want.to_decimal(58));
    }

    #[test]
    fn catalan_two_routes() {
        // G = pi/8 log(2 + sqrt 3) + 3/8 sum 1/((2n+1)^2 C(2n,n))
        let digits = 50;
        let bits = digits_to_bits(digits) + 32;
        let g = dirichlet_l(-4, 2, digits).unwrap();
        let mut sum = BigFloat::from_i64(0, bits);
        let mut binom = BigInt::from(1);
        for n in 0..200u64 {
            if n > 0 {
                binom = binom * BigInt::from(2 * (2 * n - 1)) / BigInt::from(n);
            }
            let d = BigInt::from((2 * n + 1) * (2 * n + 1)) * &binom;
            sum = sum + BigFloat::from_i64(1, bits) / BigFloat::from_bigint(&d, bits);
        }
        let l = (BigFloat::from_i64(2, bits) + BigFloat::from_i64(3, bits).sqrt()).ln();
        let other = BigFloat::pi(bits) / BigFloat::from_i64(8, bits) * l
            + BigFloat::from_i64(3, bits) / BigFloat::from_i64(8, bits) * sum;
        assert_eq!(g.to_decimal(48), other.to_decimal(48));
        assert!(g.to_decimal(20).starts_with("0.91596559417721901505"));
    }

    #[test]
    fn unsupported_character() {
        assert!(matches!(dirichlet_l(5, 2, 10), Err(Error::UnsupportedCharacter { chi: 5, s: 2 })));
    }
}
