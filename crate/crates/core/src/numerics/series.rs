//! Summation of hypergeometric series `sum_{n >= start} t(n, k) w(n, k)`.
//!
//! Rational `k` goes through binary splitting on the exact term ratio; any
//! other `k` through a high-precision recurrence. A term-by-term route built
//! on independent evaluation of each term serves as an oracle.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::bsplit::split;
use super::real::{cabs, digits_to_bits, BigFloat};
use crate::exact::{FactoredPoly, FactoredRat, RatFunc, Rational};
use crate::hyperterm::{ClosedForm, Dir, HyperTerm, KPoint};
use crate::{Error, Poly2, Result};

/// A series with the rational weight kept apart from the Gamma part.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec {
    /// Hypergeometric part, prefactor 1.
    pub term: HyperTerm,
    /// Rational weight, the polynomial of a Ramanujan-like series or `R`.
    pub weight: RatFunc,
    pub start: i64,
    pub m: u32,
    pub chi: i64,
    pub claimed: Option<ClosedForm>,
}

#[derive(Clone, Debug)]
pub struct SeriesSum {
    pub value: Complex<BigFloat>,
    pub terms: u64,
    /// `log10` of the estimated truncation error.
    pub tail_log10: f64,
}

impl SeriesSpec {
    pub fn new(term: HyperTerm, weight: RatFunc) -> Self {
        let weight = term.pre.mul(&weight);
        let mut term = term;
        term.pre = RatFunc::one();
        SeriesSpec { term, weight, start: 0, m: 0, chi: 1, claimed: None }
    }

    /// `|t(n+1)/t(n)|` as `n -> oo`; independent of `k`.
    pub fn limit_ratio(&self) -> Result<f64> {
        let q = self.term.shift_quotient_factored(Dir::N)?;
        Ok(limit_of(&specialize(&q, &Rational::zero())))
    }

    /// The dual series `sum_{n >= 1} t(-n) w(-n)`, with `t(-n)` read through
    /// the reflection dictionary.
    pub fn dual(&self) -> Result<SeriesSpec> {
        let term = self.term.dualize()?;
        let neg = Poly2::linear(Rational::zero(), -Rational::one(), Rational::zero());
        let weight = self.weight.substitute(&neg, &Poly2::k())?;
        let mut d = SeriesSpec::new(term, weight);
        d.start = 1;
        d.m = self.m;
        d.chi = self.chi;
        Ok(d)
    }
}

fn specialize_poly(p: &FactoredPoly, k0: &Rational) -> FactoredPoly {
    FactoredPoly::from_poly(&p.expand().specialize_k(k0))
}

/// The quotient at `k = k0`, as a function of `n` alone.
fn specialize(q: &FactoredRat, k0: &Rational) -> FactoredRat {
    FactoredRat::new(specialize_poly(&q.num, k0), specialize_poly(&q.den, k0))
}

fn leading_n(p: &FactoredPoly) -> (u32, f64) {
    let e = p.expand();
    let d = e.degree_n();
    let c = e.coeff(d, 0);
    (d, c.to_f64().unwrap_or(f64::NAN))
}

fn limit_of(q: &FactoredRat) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let (dn, cn) = leading_n(&q.num);
    let (dd, cd) = leading_n(&q.den);
    match dn.cmp(&dd) {
        std::cmp::Ordering::Less => 0.0,
        std::cmp::Ordering::Greater => f64::INFINITY,
        std::cmp::Ordering::Equal => (cn / cd).abs(),
    }
}

fn c64(r: &Rational) -> Complex<f64> {
    Complex::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
}

fn kpoint_f64(k: &KPoint) -> Complex<f64> {
    match k {
        KPoint::Rational(r) => c64(r),
        KPoint::Complex(c) => Complex::new(c.re.to_f64(), c.im.to_f64()),
    }
}

fn abs_f64(p: &FactoredPoly, n: i64, k: Complex<f64>) -> f64 {
    p.eval_with(&Complex::new(n as f64, 0.0), &k, c64).norm()
}

fn ratfunc_abs_f64(f: &RatFunc, n: i64, k: Complex<f64>) -> f64 {
    let nn = Complex::new(n as f64, 0.0);
    f.num().eval_with(&nn, &k, c64).norm() / f.den().eval_with(&nn, &k, c64).norm()
}

/// Terms needed and the estimated cancellation (`log10` of the largest term
/// over the first).
struct Plan {
    terms: u64,
    tail_log10: f64,
    max_log10: f64,
}

fn plan(q: &FactoredRat, w: &RatFunc, start: i64, k: Complex<f64>, rho: f64, digits: u32) -> Result<Plan> {
    if rho >= 1.0 {
        return Err(Error::Divergent { ratio: rho });
    }
    if w.is_zero() {
        return Ok(Plan { terms: 0, tail_log10: f64::NEG_INFINITY, max_log10: 0.0 });
    }
    let ln10 = std::f64::consts::LN_10;
    let target = -(digits as f64 + 10.0) * ln10;
    let mut logt = 0.0f64;
    let mut maxlog = f64::NEG_INFINITY;
    let mut n = start;
    loop {
        let lw = ratfunc_abs_f64(w, n, k).ln();
        let cur = logt + lw;
        if cur.is_finite() {
            maxlog = maxlog.max(cur);
        }
        let r = abs_f64(&q.num, n, k) / abs_f64(&q.den, n, k);
        if r == 0.0 {
            return Ok(Plan { terms: (n - start + 1) as u64, tail_log10: f64::NEG_INFINITY, max_log10: maxlog / ln10 });
        }
        let wr = ratfunc_abs_f64(w, n + 1, k) / ratfunc_abs_f64(w, n, k);
        let reff = if wr.is_finite() { (r * wr).max(rho) } else { r.max(rho) };
        if n - start > 8 && cur.is_finite() && reff < 1.0 {
            let tail = cur + (reff / (1.0 - reff)).ln();
            if tail < maxlog + target {
                return Ok(Plan { terms: (n - start + 1) as u64, tail_log10: tail / ln10, max_log10: maxlog / ln10 });
            }
        }
        logt += r.ln();
        n += 1;
        if n - start > 50_000_000 {
            return Err(Error::NonConvergent(format!("no truncation point found, ratio bound {rho}")));
        }
    }
}

fn integer_poly(p: &Poly2) -> (Poly2, Rational) {
    let l = p.terms().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
    let s = Rational::from_integer(l);
    (p.scale(&s), s)
}

fn eval_int(p: &Poly2, n: i64) -> BigInt {
    let v = p.eval(&Rational::from_integer(n.into()), &Rational::zero());
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// `sum_{n >= start} t(n, k) w(n, k)` within about `10^-digits` relative to the largest term.
pub fn sum_series(spec: &SeriesSpec, k: &KPoint, digits: u32) -> Result<SeriesSum> {
    match k {
        KPoint::Rational(k0) => sum_series_bsplit(spec, k0, digits),
        KPoint::Complex(_) => sum_series_direct(spec, k, digits),
    }
}

/// Binary splitting at a rational `k0`.
pub fn sum_series_bsplit(spec: &SeriesSpec, k0: &Rational, digits: u32) -> Result<SeriesSum> {
    let rho = spec.limit_ratio()?;
    let q = specialize(&spec.term.shift_quotient_factored(Dir::N)?, k0);
    let w = RatFunc::new(spec.weight.num().specialize_k(k0), spec.weight.den().specialize_k(k0))?;
    let s = spec.start;
    let pl = plan(&q, &w, s, c64(k0), rho, digits)?;
    let bits = digits_to_bits(digits + 20 + pl.max_log10.max(0.0) as u32);
    let t0 = spec.term.eval_numeric(s, &KPoint::Rational(k0.clone()), bits)?;
    let zero = || BigFloat::from_i64(0, bits);
    if pl.terms == 0 || (t0.re.is_zero() && t0.im.is_zero()) {
        return Ok(SeriesSum { value: Complex::new(zero(), zero()), terms: pl.terms, tail_log10: pl.tail_log10 });
    }
    let (a, ca) = integer_poly(w.num());
    let (b, cb) = integer_poly(w.den());
    let bs = eval_int(&b, s);
    if bs.is_zero() {
        return Err(Error::PoleHit(format!("weight at n = {s}")));
    }
    let pole = std::sync::atomic::AtomicBool::new(false);
    let leaf = |j: u64| {
        let n = s + j as i64 - 1;
        let nr = Rational::from_integer(n.into());
        let qd = q.den.eval(&nr, &Rational::zero());
        let bn1 = eval_int(&b, n + 1);
        if qd.is_zero() || bn1.is_zero() {
            pole.store(true, std::sync::atomic::Ordering::Relaxed);
            return (BigInt::zero(), BigInt::one(), BigInt::zero());
        }
        let r = q.num.eval(&nr, &Rational::zero()) / qd * Rational::from_integer(eval_int(&b, n)) / Rational::from_integer(bn1);
        let (p, qq) = (r.numer().clone(), r.denom().clone());
        (p, qq, eval_int(&a, n + 1))
    };
    let a0 = eval_int(&a, s);
    let (num, den) = if pl.terms > 1 {
        let sp = split(1, pl.terms, &leaf);
        (&a0 * &sp.q + &sp.t, sp.q)
    } else {
        (a0, BigInt::one())
    };
    if pole.load(std::sync::atomic::Ordering::Relaxed) {
        return Err(Error::PoleHit(format!("term ratio between n = {s} and n = {}", s + pl.terms as i64)));
    }
    let scale = &cb / (&ca * Rational::from_integer(bs));
    let v = BigFloat::from_bigint(&num, bits) / BigFloat::from_bigint(&den, bits) * BigFloat::from_rational(&scale, bits);
    let value = Complex::new(t0.re * v.clone(), t0.im * v);
    Ok(SeriesSum { value, terms: pl.terms, tail_log10: pl.tail_log10 })
}

/// The weight with `k` fixed when `k` is rational, so removable poles cancel.
fn weight_at(spec: &SeriesSpec, k: &KPoint) -> Result<RatFunc> {
    match k {
        KPoint::Rational(k0) => RatFunc::new(spec.weight.num().specialize_k(k0), spec.weight.den().specialize_k(k0)),
        KPoint::Complex(_) => Ok(spec.weight.clone()),
    }
}

fn eval_ratfunc_c(f: &RatFunc, n: &Complex<BigFloat>, k: &Complex<BigFloat>, bits: usize) -> Result<Complex<BigFloat>> {
    let conv = |r: &Rational| Complex::new(BigFloat::from_rational(r, bits), BigFloat::from_i64(0, bits));
    let d = f.den().eval_with(n, k, conv);
    if d.re.is_zero() && d.im.is_zero() {
        return Err(Error::PoleHit("weight".into()));
    }
    Ok(f.num().eval_with(n, k, conv) / d)
}

fn eval_factored_c(p: &FactoredPoly, n: &Complex<BigFloat>, k: &Complex<BigFloat>, bits: usize) -> Complex<BigFloat> {
    p.eval_with(n, k, |r: &Rational| Complex::new(BigFloat::from_rational(r, bits), BigFloat::from_i64(0, bits)))
}

fn cint(n: i64, bits: usize) -> Complex<BigFloat> {
    Complex::new(BigFloat::from_i64(n, bits), BigFloat::from_i64(0, bits))
}

/// Recurrence `t(n+1) = t(n) Q(n, k)` in floating point, any `k`.
pub fn sum_series_direct(spec: &SeriesSpec, k: &KPoint, digits: u32) -> Result<SeriesSum> {
    let rho = spec.limit_ratio()?;
    let q = spec.term.shift_quotient_factored(Dir::N)?;
    let s = spec.start;
    let pl = plan(&q, &spec.weight, s, kpoint_f64(k), rho, digits)?;
    let bits = digits_to_bits(digits + 20 + pl.max_log10.max(0.0) as u32);
    let kc = k.to_complex(bits);
    let w = weight_at(spec, k)?;
    let mut t = spec.term.eval_numeric(s, k, bits)?;
    let mut acc = cint(0, bits);
    for j in 0..pl.terms as i64 {
        let n = cint(s + j, bits);
        acc = acc + t.clone() * eval_ratfunc_c(&w, &n, &kc, bits)?;
        if j + 1 < pl.terms as i64 {
            let d = eval_factored_c(&q.den, &n, &kc, bits);
            if d.re.is_zero() && d.im.is_zero() {
                return Err(Error::PoleHit(format!("term ratio at n = {}", s + j)));
            }
            t = t * eval_factored_c(&q.num, &n, &kc, bits) / d;
        }
    }
    Ok(SeriesSum { value: acc, terms: pl.terms, tail_log10: pl.tail_log10 })
}

/// Oracle: every term evaluated on its own from the Gamma representation.
pub fn sum_series_naive(spec: &SeriesSpec, k: &KPoint, digits: u32) -> Result<SeriesSum> {
    let rho = spec.limit_ratio()?;
    let q = spec.term.shift_quotient_factored(Dir::N)?;
    let s = spec.start;
    let pl = plan(&q, &spec.weight, s, kpoint_f64(k), rho, digits)?;
    let bits = digits_to_bits(digits + 20 + pl.max_log10.max(0.0) as u32);
    let kc = k.to_complex(bits);
    let w = weight_at(spec, k)?;
    let mut acc = cint(0, bits);
    for j in 0..pl.terms as i64 {
        let t = spec.term.eval_numeric(s + j, k, bits)?;
        if t.re.is_zero() && t.im.is_zero() {
            continue;
        }
        acc = acc + t * eval_ratfunc_c(&w, &cint(s + j, bits), &kc, bits)?;
    }
    Ok(SeriesSum { value: acc, terms: pl.terms, tail_log10: pl.tail_log10 })
}

/// Number of leading decimal digits on which `a` and `b` agree.
pub fn digits_matched(a: &Complex<BigFloat>, b: &Complex<BigFloat>) -> f64 {
    let d = cabs(&(a.clone() - b.clone()));
    let m = cabs(b);
    if d.is_zero() {
        return a.re.precision() as f64 * std::f64::consts::LOG10_2;
    }
    let (dl, ml) = (log10_abs(&d), log10_abs(&m));
    (ml - dl).max(0.0)
}

/// `log10 |x|` without overflowing f64.
pub fn log10_abs(x: &BigFloat) -> f64 {
    use super::real::Real;
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    x.abs().ln().to_f64() / std::f64::consts::LN_10
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, parse_poly, rat};
    use crate::hyperterm::{term_from_poch_spec, LinForm, PochFactor};
    use crate::numerics::pi_const;

    fn pn(a: Rational, e: i64) -> PochFactor {
        PochFactor { arg: LinForm::constant(a), dir: Dir::N, exp: e }
    }

    fn ramanujan16() -> SeriesSpec {
        let t = term_from_poch_spec(&[pn(rat(1, 2), 3), pn(int(1), -3)], rat(1, 64), int(1), RatFunc::one()).unwrap();
        SeriesSpec::new(t, RatFunc::from_poly(parse_poly("42n+5").unwrap()))
    }

    fn real(v: &BigFloat) -> Complex<BigFloat> {
        Complex::new(v.clone(), BigFloat::from_i64(0, v.precision()))
    }

    #[test]
    fn sixteen_over_pi() {
        let s = sum_series(&ramanujan16(), &KPoint::Rational(int(0)), 60).unwrap();
        let want = BigFloat::from_i64(16, 300) / pi_const(80);
        assert!(digits_matched(&s.value, &real(&want)) > 58.0);
    }

    #[test]
    fn routes_agree() {
        let spec = ramanujan16();
        let k = KPoint::Rational(int(0));
        let a = sum_series_bsplit(&spec, &int(0), 40).unwrap();
        let b = sum_series_direct(&spec, &k, 40).unwrap();
        let c = sum_series_naive(&spec, &k, 40).unwrap();
        assert!(digits_matched(&a.value, &b.value) > 38.0);
        assert!(digits_matched(&a.value, &c.value) > 38.0);
    }

    #[test]
    fn zero_weight_sums_to_zero() {
        let mut spec = ramanujan16();
        spec.weight = RatFunc::zero();
        let s = sum_series(&spec, &KPoint::Rational(int(0)), 30).unwrap();
        assert!(s.value.re.is_zero());
    }

    #[test]
    fn divergent_series_is_rejected() {
        let t = term_from_poch_spec(&[pn(rat(1, 2), 1), pn(int(1), -1)], int(2), int(1), RatFunc::one()).unwrap();
        let e = sum_series(&SeriesSpec::new(t, RatFunc::one()), &KPoint::Rational(int(0)), 20).unwrap_err();
        assert_eq!(e, Error::Divergent { ratio: 2.0 });
    }

    #[test]
    fn binomial_series() {
        // sum (1/2)_n / n! x^n = (1 - x)^(-1/2) at x = 1/2
        let t = term_from_poch_spec(&[pn(rat(1, 2), 1), pn(int(1), -1)], rat(1, 2), int(1), RatFunc::one()).unwrap();
        let s = sum_series(&SeriesSpec::new(t, RatFunc::one()), &KPoint::Rational(int(0)), 50).unwrap();
        use crate::numerics::Real;
        let want = BigFloat::from_i64(2, 300).sqrt();
        assert!(digits_matched(&s.value, &real(&want)) > 48.0);
    }
}
