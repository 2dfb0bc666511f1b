//! Complex log-gamma by upward shifting and the Stirling series.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};

use super::real::{cexp, cln, digits_to_bits, BigFloat, Real};
use crate::exact::Rational;
use crate::{Error, Result};

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// `B_0, ..., B_m` (with `B_1 = -1/2`).
pub fn bernoulli(m: usize) -> Vec<Rational> {
    let mut b = BERNOULLI.lock().expect("bernoulli cache");
    if b.is_empty() {
        b.push(Rational::one());
    }
    while b.len() <= m {
        let n = b.len();
        if n > 1 && n % 2 == 1 {
            b.push(Rational::zero());
            continue;
        }
        // sum_{k<n} C(n+1, k) B_k + (n+1) B_n = 0
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                acc += bk * Rational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(n + 1)));
    }
    b[..=m].to_vec()
}

/// Log-gamma evaluator at a fixed working precision.
pub struct LogGamma<R: Real> {
    bits: usize,
    threshold: f64,
    coeffs: Vec<R>,
    half_ln_2pi: R,
    two_pi: R,
}

impl<R: Real> LogGamma<R> {
    pub fn new(bits: usize) -> Self {
        let bits = bits.max(53);
        // smallest Stirling term is about exp(-2 pi |w|)
        let threshold = (bits as f64 + 16.0) * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI) + 2.0;
        let target = -((bits + 16) as f64) * std::f64::consts::LN_2;
        let mut m = 1;
        loop {
            // |B_2j| ~ 2 (2j)! / (2 pi)^(2j)
            let j = m as f64;
            let lb = 2f64.ln() + ln_factorial(2.0 * j) - 2.0 * j * (2.0 * std::f64::consts::PI).ln();
            let lt = lb - (2.0 * j * (2.0 * j - 1.0)).ln() - (2.0 * j - 1.0) * threshold.ln();
            if lt < target || m > 4 * bits {
                break;
            }
            m += 1;
        }
        let b = bernoulli(2 * m);
        let coeffs = (1..=m)
            .map(|j| {
                let d = Rational::from_integer(BigInt::from(2 * j * (2 * j - 1)));
                R::from_rational_p(&(&b[2 * j] / d), bits)
            })
            .collect();
        let pi = R::pi(bits);
        let two_pi = R::from_i64_p(2, bits) * pi;
        let half_ln_2pi = two_pi.ln() / R::from_i64_p(2, bits);
        LogGamma { bits, threshold, coeffs, half_ln_2pi, two_pi }
    }

    fn check_pole(&self, z: &Complex<R>) -> Result<()> {
        if z.im.is_zero() && z.re.to_f64() <= 0.5 {
            let m = z.re.to_f64().round();
            if z.re == R::from_i64_p(m as i64, self.bits) && m <= 0.0 {
                return Err(Error::PoleHit(format!("gamma at {m}")));
            }
        }
        Ok(())
    }

    fn stirling(&self, w: &Complex<R>) -> Complex<R> {
        let half = R::from_rational_p(&Rational::new(BigInt::one(), BigInt::from(2)), self.bits);
        let inv = Complex::new(R::one(), R::zero()) / w.clone();
        let inv2 = inv.clone() * inv.clone();
        let mut s = Complex::new(R::zero(), R::zero());
        for c in self.coeffs.iter().rev() {
            s = s * inv2.clone() + Complex::new(c.clone(), R::zero());
        }
        let s = s * inv;
        (w.clone() - Complex::new(half, R::zero())) * cln(w) - w.clone()
            + Complex::new(self.half_ln_2pi.clone(), R::zero())
            + s
    }

    fn shift_count(&self, z: &Complex<R>) -> usize {
        let re = z.re.to_f64();
        let im = z.im.to_f64();
        if re.hypot(im) >= self.threshold && re > 0.0 {
            return 0;
        }
        let need = (self.threshold * self.threshold - im * im).max(0.0).sqrt();
        (need - re).ceil().max(1.0) as usize
    }

    /// `log Gamma(z)` correct modulo `2 pi i`; one logarithm per call.
    pub fn eval_mod_2pi(&self, z: &Complex<R>) -> Result<Complex<R>> {
        self.check_pole(z)?;
        let n = self.shift_count(z);
        let mut p = Complex::new(R::one(), R::zero());
        for j in 0..n {
            p = p * (z.clone() + Complex::new(R::from_i64_p(j as i64, self.bits), R::zero()));
        }
        let w = z.clone() + Complex::new(R::from_i64_p(n as i64, self.bits), R::zero());
        Ok(self.stirling(&w) - cln(&p))
    }

    /// Principal branch of `log Gamma(z)`.
    pub fn eval(&self, z: &Complex<R>) -> Result<Complex<R>> {
        let v = self.eval_mod_2pi(z)?;
        let n = self.shift_count(z);
        if n == 0 {
            return Ok(v);
        }
        let (re, im) = (z.re.to_f64(), z.im.to_f64());
        let (mut want, mut prod) = (0.0, num_complex::Complex64::new(1.0, 0.0));
        for j in 0..n {
            let f = num_complex::Complex64::new(re + j as f64, im);
            want += f.arg();
            prod *= f / f.norm();
        }
        let got = prod.arg();
        let turns = ((want - got) / (2.0 * std::f64::consts::PI)).round();
        if turns == 0.0 {
            return Ok(v);
        }
        let corr = self.two_pi.clone() * R::from_i64_p(turns as i64, self.bits);
        Ok(Complex::new(v.re, v.im - corr))
    }

    pub fn gamma(&self, z: &Complex<R>) -> Result<Complex<R>> {
        Ok(cexp(&self.eval_mod_2pi(z)?))
    }
}

fn ln_factorial(x: f64) -> f64 {
    if x < 2.0 {
        return 0.0;
    }
    (x + 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x)
}

/// Principal `log Gamma(z)` with `digits` significant digits.
pub fn log_gamma_complex(z: &Complex<BigFloat>, digits: u32) -> Result<Complex<BigFloat>> {
    let bits = digits_to_bits(digits) + 16;
    let lg = LogGamma::<BigFloat>::new(bits);
    let zz = Complex::new(z.re.set_precision(bits), z.im.set_precision(bits));
    lg.eval(&zz)
}

/// `|Gamma(z)|` in double precision, for growth estimates.
pub fn abs_gamma_f64(z: num_complex::Complex64) -> f64 {
    let lg = LogGamma::<f64>::new(53);
    match lg.eval_mod_2pi(&Complex::new(z.re, z.im)) {
        Ok(v) => v.re.exp(),
        Err(_) => f64::INFINITY,
    }
}
