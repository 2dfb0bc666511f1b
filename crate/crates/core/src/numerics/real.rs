//! Real scalars usable by the numeric routines: `f64` and an arbitrary
//! precision binary float.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use astro_float::{Consts, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_traits::{Num, One, ToPrimitive, Zero};

use crate::exact::Rational;

const RM: RoundingMode = RoundingMode::ToEven;
const MIN_BITS: usize = 64;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Bits needed to carry `digits` decimal digits.
pub fn digits_to_bits(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 8
}

/// Binary floating point number of arbitrary precision.
///
/// Every operation rounds to the larger precision of its operands.
#[derive(Clone)]
pub struct BigFloat(astro_float::BigFloat);

impl BigFloat {
    pub fn precision(&self) -> usize {
        self.0.mantissa_max_bit_len().unwrap_or(MIN_BITS)
    }

    pub fn from_i64(v: i64, bits: usize) -> Self {
        BigFloat(astro_float::BigFloat::from_i64(v, bits.max(MIN_BITS)))
    }

    pub fn from_f64(v: f64, bits: usize) -> Self {
        BigFloat(astro_float::BigFloat::from_f64(v, bits.max(MIN_BITS)))
    }

    pub fn from_bigint(v: &BigInt, bits: usize) -> Self {
        if v.is_zero() {
            return Self::from_i64(0, bits);
        }
        let words: Vec<Word> = v.magnitude().to_u64_digits().into_iter().map(|w| w as Word).collect();
        let sign = if v.sign() == num_bigint::Sign::Minus { Sign::Neg } else { Sign::Pos };
        let e = (words.len() * 64) as i32;
        let mut f = astro_float::BigFloat::from_words(&words, sign, e);
        f.set_precision(bits.max(MIN_BITS), RM).expect("precision");
        BigFloat(f)
    }

    pub fn from_rational(r: &Rational, bits: usize) -> Self {
        let b = bits.max(MIN_BITS) + 64;
        let n = Self::from_bigint(r.numer(), b);
        let d = Self::from_bigint(r.denom(), b);
        n.div_p(&d, bits.max(MIN_BITS))
    }

    /// Exact dyadic value, `None` for infinities and NaN.
    pub fn to_rational(&self) -> Option<Rational> {
        let (words, _, sign, e, _) = self.0.as_raw_parts()?;
        let mag = BigUint::from_slice(
            &words.iter().flat_map(|w| [*w as u32, (*w >> 32) as u32]).collect::<Vec<_>>(),
        );
        let shift = e as i64 - 64 * words.len() as i64;
        let mut m = BigInt::from(mag);
        if sign == Sign::Neg {
            m = -m;
        }
        Some(if shift >= 0 {
            Rational::from_integer(m << shift as usize)
        } else {
            Rational::new(m, BigInt::one() << (-shift) as usize)
        })
    }

    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        match self.0.as_raw_parts() {
            None => {
                if self.0.is_negative() {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            }
            Some((words, _, sign, e, _)) => {
                if words.iter().all(|w| *w == 0) {
                    return 0.0;
                }
                let top = *words.last().expect("mantissa") as f64;
                let v = top * 2f64.powi(e - 64);
                if sign == Sign::Neg {
                    -v
                } else {
                    v
                }
            }
        }
    }

    pub fn set_precision(&self, bits: usize) -> Self {
        let mut f = self.0.clone();
        let _ = f.set_precision(bits.max(MIN_BITS), RM);
        BigFloat(f)
    }

    fn div_p(&self, o: &Self, p: usize) -> Self {
        BigFloat(self.0.div(&o.0, p, RM))
    }

    fn p2(&self, o: &Self) -> usize {
        self.precision().max(o.precision())
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Nearest integer below.
    pub fn floor_int(&self) -> BigInt {
        let f = BigFloat(self.0.floor());
        let r = f.to_rational().unwrap_or_else(Rational::zero);
        r.to_integer()
    }

    /// Decimal rendering with `digits` digits after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let Some(r) = self.to_rational() else {
            return format!("{}", self.to_f64());
        };
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = r * Rational::from_integer(scale);
        let neg = scaled < Rational::zero();
        let a = if neg { -scaled } else { scaled };
        let v = (a + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
        let mut s = v.to_string();
        if s.len() <= digits {
            s = "0".repeat(digits + 1 - s.len()) + &s;
        }
        let (ip, fp) = s.split_at(s.len() - digits);
        let body = if digits == 0 { ip.to_string() } else { format!("{ip}.{fp}") };
        if neg && v != BigInt::zero() {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = (self.precision() as f64 / std::f64::consts::LOG2_10) as usize;
        write!(f, "{}", self.to_decimal(d.min(60)))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or((self.precision() as f64 / std::f64::consts::LOG2_10) as usize);
        write!(f, "{}", self.to_decimal(d))
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, o: &Self) -> bool {
        self.0.cmp(&o.0) == Some(0)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.0.cmp(&o.0).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $m(self, o: BigFloat) -> BigFloat {
                $body(&self, &o)
            }
        }
        impl<'a> $tr<&'a BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $m(self, o: &BigFloat) -> BigFloat {
                $body(self, o)
            }
        }
    };
}

binop!(Add, add, |a: &BigFloat, b: &BigFloat| BigFloat(a.0.add(&b.0, a.p2(b), RM)));
binop!(Sub, sub, |a: &BigFloat, b: &BigFloat| BigFloat(a.0.sub(&b.0, a.p2(b), RM)));
binop!(Mul, mul, |a: &BigFloat, b: &BigFloat| BigFloat(a.0.mul(&b.0, a.p2(b), RM)));
binop!(Div, div, |a: &BigFloat, b: &BigFloat| BigFloat(a.0.div(&b.0, a.p2(b), RM)));
binop!(Rem, rem, |a: &BigFloat, b: &BigFloat| BigFloat(a.0.rem(&b.0)));

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(astro_float::BigFloat::neg(&self.0))
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(astro_float::BigFloat::neg(&self.0))
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        BigFloat::from_i64(0, MIN_BITS)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        BigFloat::from_i64(1, MIN_BITS)
    }
}

impl Num for BigFloat {
    type FromStrRadixErr = crate::Error;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, crate::Error> {
        if radix != 10 {
            return Err(crate::Error::NonConvergent("only decimal input is supported".into()));
        }
        let v: f64 = s.parse().map_err(|_| crate::Error::NonConvergent(format!("bad number {s}")))?;
        Ok(BigFloat::from_f64(v, MIN_BITS))
    }
}

/// Scalar field for the numeric routines.
pub trait Real:
    Clone + Num + Neg<Output = Self> + PartialOrd + fmt::Debug + Send + Sync + 'static
{
    fn bits(&self) -> usize;
    fn from_i64_p(v: i64, bits: usize) -> Self;
    fn from_f64_p(v: f64, bits: usize) -> Self;
    fn from_rational_p(r: &Rational, bits: usize) -> Self;
    fn from_bigint_p(v: &BigInt, bits: usize) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan(&self) -> Self;
    fn abs(&self) -> Self;
    fn pi(bits: usize) -> Self;

    fn atan2(y: &Self, x: &Self) -> Self {
        let bits = y.bits().max(x.bits());
        let zero = Self::from_i64_p(0, bits);
        if x.is_zero() {
            let h = Self::pi(bits) / Self::from_i64_p(2, bits);
            return if *y < zero { -h } else if y.is_zero() { zero } else { h };
        }
        let a = (y.clone() / x.clone()).atan();
        if *x > zero {
            a
        } else if *y < zero {
            a - Self::pi(bits)
        } else {
            a + Self::pi(bits)
        }
    }
}

impl Real for f64 {
    fn bits(&self) -> usize {
        53
    }
    fn from_i64_p(v: i64, _: usize) -> Self {
        v as f64
    }
    fn from_f64_p(v: f64, _: usize) -> Self {
        v
    }
    fn from_rational_p(r: &Rational, _: usize) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn from_bigint_p(v: &BigInt, _: usize) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn atan(&self) -> Self {
        f64::atan(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn pi(_: usize) -> Self {
        std::f64::consts::PI
    }
    fn atan2(y: &Self, x: &Self) -> Self {
        f64::atan2(*y, *x)
    }
}

impl Real for BigFloat {
    fn bits(&self) -> usize {
        self.precision()
    }
    fn from_i64_p(v: i64, bits: usize) -> Self {
        BigFloat::from_i64(v, bits)
    }
    fn from_f64_p(v: f64, bits: usize) -> Self {
        BigFloat::from_f64(v, bits)
    }
    fn from_rational_p(r: &Rational, bits: usize) -> Self {
        BigFloat::from_rational(r, bits)
    }
    fn from_bigint_p(v: &BigInt, bits: usize) -> Self {
        BigFloat::from_bigint(v, bits)
    }
    fn to_f64(&self) -> f64 {
        BigFloat::to_f64(self)
    }
    fn sqrt(&self) -> Self {
        BigFloat(self.0.sqrt(self.precision(), RM))
    }
    fn ln(&self) -> Self {
        with_consts(|cc| BigFloat(self.0.ln(self.precision(), RM, cc)))
    }
    fn exp(&self) -> Self {
        with_consts(|cc| BigFloat(self.0.exp(self.precision(), RM, cc)))
    }
    fn sin(&self) -> Self {
        with_consts(|cc| BigFloat(self.0.sin(self.precision(), RM, cc)))
    }
    fn cos(&self) -> Self {
        with_consts(|cc| BigFloat(self.0.cos(self.precision(), RM, cc)))
    }
    fn atan(&self) -> Self {
        with_consts(|cc| BigFloat(self.0.atan(self.precision(), RM, cc)))
    }
    fn abs(&self) -> Self {
        BigFloat(self.0.abs())
    }
    fn pi(bits: usize) -> Self {
        super::pi::pi_bits(bits.max(MIN_BITS))
    }
}

/// Principal logarithm.
pub fn cln<R: Real>(z: &Complex<R>) -> Complex<R> {
    let m = cabs(z);
    Complex::new(m.ln(), R::atan2(&z.im, &z.re))
}

pub fn cexp<R: Real>(z: &Complex<R>) -> Complex<R> {
    let e = z.re.exp();
    Complex::new(e.clone() * z.im.cos(), e * z.im.sin())
}

pub fn cabs<R: Real>(z: &Complex<R>) -> R {
    (z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()).sqrt()
}

/// `z^w` on the principal branch.
pub fn cpow<R: Real>(z: &Complex<R>, w: &Complex<R>) -> Complex<R> {
    cexp(&(cln(z) * w.clone()))
}

pub fn creal<R: Real>(x: R) -> Complex<R> {
    let z = R::from_i64_p(0, x.bits());
    Complex::new(x, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn rational_roundtrip_is_exact_for_dyadics() {
        let r = rat(-3, 8);
        assert_eq!(BigFloat::from_rational(&r, 128).to_rational(), Some(r));
    }

    #[test]
    fn precision_is_max_of_operands() {
        let a = BigFloat::from_i64(1, 64);
        let b = BigFloat::from_i64(3, 256);
        assert!((a / b).precision() >= 256);
    }

    #[test]
    fn decimal_rendering() {
        let x = BigFloat::from_rational(&rat(1, 3), 200);
        assert_eq!(x.to_decimal(10), "0.3333333333");
        assert_eq!(BigFloat::from_rational(&rat(-5, 2), 100).to_decimal(2), "-2.50");
    }

    #[test]
    fn bigint_conversion() {
        let v: BigInt = "123456789012345678901234567890".parse().unwrap();
        let f = BigFloat::from_bigint(&v, 256);
        assert_eq!(f.to_rational().unwrap(), Rational::from_integer(v));
    }

    #[test]
    fn atan2_quadrants() {
        let b = 128;
        let one = BigFloat::from_i64(1, b);
        let m = BigFloat::from_i64(-1, b);
        let a = <BigFloat as Real>::atan2(&one, &m).to_f64();
        assert!((a - 3.0 * std::f64::consts::PI / 4.0).abs() < 1e-15);
    }
}
