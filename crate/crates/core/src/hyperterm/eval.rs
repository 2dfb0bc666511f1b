//! Exact and numeric evaluation of hypergeometric terms.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, Zero};

use super::{rational_power, HyperTerm, LinForm};
use crate::exact::{rational_pow, Rational};
use crate::numerics::real::{cexp, cln};
use crate::numerics::{BigFloat, LogGamma};
use crate::{Error, Result};

/// A value of `k`: exact rational or arbitrary complex.
#[derive(Clone, Debug)]
pub enum KPoint {
    Rational(Rational),
    Complex(Complex<BigFloat>),
}

impl KPoint {
    pub fn to_complex(&self, bits: usize) -> Complex<BigFloat> {
        match self {
            KPoint::Rational(r) => Complex::new(BigFloat::from_rational(r, bits), BigFloat::from_i64(0, bits)),
            KPoint::Complex(c) => Complex::new(c.re.set_precision(bits), c.im.set_precision(bits)),
        }
    }

    /// `self + d`.
    pub fn shifted(&self, d: i64) -> KPoint {
        match self {
            KPoint::Rational(r) => KPoint::Rational(r + Rational::from_integer(d.into())),
            KPoint::Complex(c) => {
                let b = c.re.precision();
                KPoint::Complex(Complex::new(c.re.clone() + BigFloat::from_i64(d, b), c.im.clone()))
            }
        }
    }
}

thread_local! {
    static LG: RefCell<HashMap<usize, Rc<LogGamma<BigFloat>>>> = RefCell::new(HashMap::new());
}

/// Shared log-gamma evaluator for a precision.
pub fn log_gamma_at(bits: usize) -> Rc<LogGamma<BigFloat>> {
    LG.with(|m| m.borrow_mut().entry(bits).or_insert_with(|| Rc::new(LogGamma::new(bits))).clone())
}

fn factorial(m: &BigInt) -> BigInt {
    let mut acc = BigInt::one();
    let mut i = BigInt::one();
    while &i <= m {
        acc *= &i;
        i += 1;
    }
    acc
}

/// `(r)_m` for integer `m >= 0`.
fn poch_int(r: &Rational, m: &BigInt) -> Rational {
    let mut acc = Rational::one();
    let mut j = BigInt::zero();
    while &j < m {
        acc *= r + Rational::from_integer(j.clone());
        j += 1;
    }
    acc
}

/// Result of reducing a product of Gammas at rational arguments.
struct RationalGammas {
    /// Exact rational factor.
    value: Rational,
    /// Remaining `Gamma(r)^e` with `r` not an integer.
    residual: Vec<(Rational, i64)>,
    /// Net pole order (positive means the product is infinite).
    order: i64,
}

/// `args` holds `(x, e, w)`: `Gamma(x)^e` perturbed as `Gamma(x + w eps)`.
fn reduce_rational(args: &[(Rational, i64, Rational)]) -> RationalGammas {
    let mut classes: BTreeMap<Rational, Vec<(Rational, i64, Rational)>> = BTreeMap::new();
    for (x, e, w) in args {
        classes.entry(x - x.floor()).or_default().push((x.clone(), *e, w.clone()));
    }
    let mut value = Rational::one();
    let mut residual = Vec::new();
    let mut order = 0;
    for (fr, members) in classes {
        if fr.is_zero() {
            for (x, e, w) in members {
                let xi = x.to_integer();
                if xi.is_positive() {
                    let f = Rational::from_integer(factorial(&(xi - 1)));
                    value *= rational_pow(&f, e);
                } else {
                    // Gamma(-j + w eps) ~ (-1)^j / (j! w eps)
                    let j = -xi;
                    let mut f = Rational::from_integer(factorial(&j)) * &w;
                    if j.bit(0) {
                        f = -f;
                    }
                    value *= rational_pow(&f.recip(), e);
                    order += e;
                }
            }
            continue;
        }
        let base = members.iter().map(|(x, _, _)| x.clone()).min().expect("nonempty");
        let mut net = 0;
        for (x, e, _) in &members {
            let m = (x - &base).to_integer();
            value *= rational_pow(&poch_int(&base, &m), *e);
            net += e;
        }
        if net != 0 {
            residual.push((base, net));
        }
    }
    RationalGammas { value, residual, order }
}

impl HyperTerm {
    fn rational_args(&self, n: &Rational, k: &Rational) -> Vec<(Rational, i64, Rational)> {
        self.gammas
            .iter()
            .map(|(l, e)| {
                let w = if l.c.is_zero() { Rational::one() } else { l.c.clone() };
                (l.eval(n, k), *e, w)
            })
            .collect()
    }

    /// Exact value at a rational point; `Ok(None)` when it is not rational.
    pub fn eval_exact(&self, n: &Rational, k: &Rational) -> Result<Option<Rational>> {
        let red = reduce_rational(&self.rational_args(n, k));
        if red.order > 0 {
            return Err(Error::PoleHit(format!("gamma product at n = {n}, k = {k}")));
        }
        if red.order < 0 {
            return Ok(Some(Rational::zero()));
        }
        if !red.residual.is_empty() {
            return Ok(None);
        }
        let Some(geo) = self.geometric_exact(n, k) else {
            return Ok(None);
        };
        let pre = self.pre.eval(n, k).ok_or_else(|| Error::PoleHit(format!("prefactor at n = {n}, k = {k}")))?;
        Ok(Some(red.value * geo * pre))
    }

    fn geometric_exact(&self, n: &Rational, k: &Rational) -> Option<Rational> {
        let mut g = rational_power(&self.z, n)? * rational_power(&self.y, k)?;
        for (flag, v) in [(self.sign_n, n), (self.sign_k, k)] {
            if flag {
                if !v.is_integer() {
                    return None;
                }
                if v.to_integer().bit(0) {
                    g = -g;
                }
            }
        }
        Some(g)
    }

    /// Numeric value at integer `n` and any `k`, relative error about `2^-bits`.
    pub fn eval_numeric(&self, n: i64, k: &KPoint, bits: usize) -> Result<Complex<BigFloat>> {
        let nr = Rational::from_integer(n.into());
        if let KPoint::Rational(kr) = k {
            if let Some(v) = self.eval_exact(&nr, kr)? {
                return Ok(real(BigFloat::from_rational(&v, bits), bits));
            }
        }
        self.eval_float(n, k, bits)
    }

    /// As [`Self::eval_numeric`] without trying exact evaluation first; cheaper
    /// when the exact value is a huge rational.
    pub fn eval_float(&self, n: i64, k: &KPoint, bits: usize) -> Result<Complex<BigFloat>> {
        let nr = Rational::from_integer(n.into());
        let lg = log_gamma_at(bits);
        let kc = k.to_complex(bits);
        let mut rat_args = Vec::new();
        let mut log_sum = real(BigFloat::from_i64(0, bits), bits);
        for (l, &e) in &self.gammas {
            let exact_k = match k {
                KPoint::Rational(kr) => Some(kr.clone()),
                KPoint::Complex(_) if l.c.is_zero() => Some(Rational::zero()),
                _ => None,
            };
            if let Some(kr) = exact_k {
                let w = if l.c.is_zero() { Rational::one() } else { l.c.clone() };
                rat_args.push((l.eval(&nr, &kr), e, w));
            } else {
                let x = complex_form(l, n, &kc, bits);
                let v = lg.eval_mod_2pi(&x)?;
                log_sum = log_sum + v * real(BigFloat::from_i64(e, bits), bits);
            }
        }
        let red = reduce_rational(&rat_args);
        if red.order > 0 {
            return Err(Error::PoleHit(format!("gamma product at n = {n}, k = {k:?}")));
        }
        if red.order < 0 {
            return Ok(real(BigFloat::from_i64(0, bits), bits));
        }
        for (r, e) in &red.residual {
            let v = lg.eval_mod_2pi(&real(BigFloat::from_rational(r, bits), bits))?;
            log_sum = log_sum + v * real(BigFloat::from_i64(*e, bits), bits);
        }
        // geometric factors
        log_sum = log_sum + real(BigFloat::from_i64(n, bits), bits) * cln(&signed_base(&self.z, self.sign_n, bits));
        let yb = signed_base(&self.y, self.sign_k, bits);
        if !(self.y.is_one() && !self.sign_k) {
            log_sum = log_sum + kc.clone() * cln(&yb);
        }
        let mut v = cexp(&log_sum) * real(BigFloat::from_rational(&red.value, bits), bits);
        if self.pre != crate::exact::RatFunc::one() {
            let nc = real(BigFloat::from_i64(n, bits), bits);
            let conv = |r: &Rational| real(BigFloat::from_rational(r, bits), bits);
            let num = self.pre.num().eval_with(&nc, &kc, conv);
            let den = self.pre.den().eval_with(&nc, &kc, conv);
            if den.re.is_zero() && den.im.is_zero() {
                return Err(Error::PoleHit(format!("prefactor at n = {n}")));
            }
            v = v * num / den;
        }
        Ok(v)
    }
}

fn real(x: BigFloat, bits: usize) -> Complex<BigFloat> {
    Complex::new(x, BigFloat::from_i64(0, bits))
}

fn signed_base(b: &Rational, flag: bool, bits: usize) -> Complex<BigFloat> {
    let v = if flag { -b.clone() } else { b.clone() };
    real(BigFloat::from_rational(&v, bits), bits)
}

fn complex_form(l: &LinForm, n: i64, k: &Complex<BigFloat>, bits: usize) -> Complex<BigFloat> {
    let a = &l.a + &l.b * Rational::from_integer(n.into());
    let c = BigFloat::from_rational(&l.c, bits);
    Complex::new(BigFloat::from_rational(&a, bits) + c.clone() * k.re.clone(), c * k.im.clone())
}

/// Numeric `Gamma(x)` at a rational argument.
pub fn gamma_rational(x: &Rational, bits: usize) -> Result<BigFloat> {
    let lg = log_gamma_at(bits);
    let v = lg.gamma(&real(BigFloat::from_rational(x, bits), bits))?;
    Ok(v.re)
}
