//! Numeric probes: periodicity and constancy of `g(k)`, a growth fit for
//! Carlson's condition and the double-sum balance of a WZ pair.

use num_complex::Complex;
use num_traits::Zero;

use super::constant::{pair_series, pair_sum};
use super::WZPair;
use crate::exact::{FactoredRat, RatFunc, Rational};
use crate::hyperterm::{Dir, HyperTerm, KPoint};
use crate::numerics::real::cabs;
use crate::numerics::series::log10_abs;
use crate::numerics::{digits_to_bits, sum_series, BigFloat, Real, SeriesSpec};
use crate::{Error, Poly2, Result};

fn g_at(p: &WZPair, k: &KPoint, digits: u32) -> Result<Complex<BigFloat>> {
    Ok(pair_sum(p, k, digits)?.value)
}

/// `max |g(k+1) - g(k)|` over the samples.
pub fn periodicity_check(p: &WZPair, ks: &[KPoint], digits: u32) -> Result<BigFloat> {
    let mut worst = BigFloat::from_i64(0, digits_to_bits(digits));
    for k in ks {
        let d = cabs(&(g_at(p, &k.shifted(1), digits)? - g_at(p, k, digits)?));
        if d > worst {
            worst = d;
        }
    }
    Ok(worst)
}

/// `max |g(k) - g(0)|` over the samples.
pub fn constancy_check(p: &WZPair, ks: &[KPoint], digits: u32) -> Result<BigFloat> {
    let g0 = g_at(p, &KPoint::Rational(Rational::zero()), digits)?;
    let mut worst = BigFloat::from_i64(0, digits_to_bits(digits));
    for k in ks {
        let d = cabs(&(g_at(p, k, digits)? - g0.clone()));
        if d > worst {
            worst = d;
        }
    }
    Ok(worst)
}

/// Least-squares slope of `(y, log|g|)` samples.
pub fn fit_growth(samples: &[(f64, f64)]) -> f64 {
    let n = samples.len() as f64;
    if samples.len() < 2 {
        return 0.0;
    }
    let mx = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let my = samples.iter().map(|s| s.1).sum::<f64>() / n;
    let sxy: f64 = samples.iter().map(|s| (s.0 - mx) * (s.1 - my)).sum();
    let sxx: f64 = samples.iter().map(|s| (s.0 - mx) * (s.0 - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Fitted `c` in `|g(x + i y)| ~ exp(c |y|)` over a geometric grid of `y`
/// up to `y_max`. Evidence only.
pub fn carlson_growth_probe(p: &WZPair, x: f64, y_max: f64, samples: usize, digits: u32) -> Result<f64> {
    let bits = digits_to_bits(digits);
    let samples = samples.max(2);
    let mut pts = Vec::with_capacity(samples);
    for j in 0..samples {
        let y = y_max.powf(j as f64 / (samples - 1) as f64);
        let k = KPoint::Complex(Complex::new(BigFloat::from_f64(x, bits), BigFloat::from_f64(y, bits)));
        let v = cabs(&g_at(p, &k, digits)?);
        pts.push((y, log10_abs(&v) * std::f64::consts::LN_10));
    }
    Ok(fit_growth(&pts))
}

#[derive(Clone, Debug)]
pub struct Theorem2Report {
    /// `sum_n G(n,0)`, `lim_K sum_{n<=K} G(n,K)`, `sum_k F(0,k)`, `lim_N sum_{k<=N} F(N,k)`.
    pub pieces: [BigFloat; 4],
    pub residual: BigFloat,
    /// Largest cutoff used for the two limits.
    pub cutoff: i64,
}

/// `sum_{j=0}^{m} t(j) w(j)` along one variable, the other held at `fixed`,
/// stepping with the exact quotient where it is defined.
fn partial_sum(t: &HyperTerm, w: &RatFunc, dir: Dir, fixed: i64, m: i64, bits: usize) -> Result<BigFloat> {
    let q: FactoredRat = t.shift_quotient_factored(dir)?;
    let at = |j: i64| -> (Rational, Rational) {
        let (a, b) = (Rational::from_integer(j.into()), Rational::from_integer(fixed.into()));
        match dir {
            Dir::N => (a, b),
            Dir::K => (b, a),
        }
    };
    let eval_term = |j: i64| -> Result<BigFloat> {
        let (n, k) = at(j);
        let n = n.to_integer().try_into().expect("small");
        Ok(t.eval_float(n, &KPoint::Rational(k), bits)?.re)
    };
    let mut acc = BigFloat::from_i64(0, bits);
    let mut cur = eval_term(0)?;
    for j in 0..=m {
        let (n, k) = at(j);
        if !cur.is_zero() {
            let wv = w.eval(&n, &k).ok_or_else(|| Error::PoleHit(format!("weight at ({n}, {k})")))?;
            acc = acc + cur.clone() * BigFloat::from_rational(&wv, bits);
        }
        if j == m {
            break;
        }
        cur = match q.eval(&n, &k) {
            Some(r) if !cur.is_zero() => cur * BigFloat::from_rational(&r, bits),
            _ => eval_term(j + 1)?,
        };
    }
    Ok(acc)
}

/// Three-point stabilization of a sequence at cutoffs `N, 2N, 4N`.
fn extrapolate(x: &[BigFloat; 3]) -> BigFloat {
    let d1 = x[1].clone() - x[0].clone();
    let d2 = x[2].clone() - x[1].clone();
    let den = d2.clone() - d1;
    if den.is_zero() || log10_abs(&den) < log10_abs(&d2) - 1.0 {
        return x[2].clone();
    }
    let corr = d2.clone() * d2 / den;
    x[2].clone() - corr
}

/// Settles at `tol` decimal digits.
fn limit_piece(piece: &str, tol: f64, f: impl Fn(i64) -> Result<BigFloat>) -> Result<(BigFloat, i64)> {
    let mut n = 16i64;
    let mut prev: Option<BigFloat> = None;
    while n <= 2048 {
        let xs = [f(n)?, f(2 * n)?, f(4 * n)?];
        let e = extrapolate(&xs);
        let step = xs[2].clone() - xs[1].clone();
        let settled = step.is_zero() || log10_abs(&step) - log10_abs(&xs[2]).max(0.0) < -tol;
        if settled || prev.as_ref().is_some_and(|p| {
            let d = e.clone() - p.clone();
            d.is_zero() || log10_abs(&d) < -tol
        }) {
            return Ok((e, 4 * n));
        }
        prev = Some(e);
        n *= 2;
    }
    Err(Error::NonConvergent(format!("{piece} did not settle by cutoff {}", 4 * 2048)))
}

/// `sum_n G(n,0) - lim_K sum_{n<=K} G(n,K) - sum_k F(0,k) + lim_N sum_{k<=N} F(N,k)`.
pub fn theorem2_balance(p: &WZPair, digits: u32) -> Result<Theorem2Report> {
    let bits = digits_to_bits(digits + 20);
    let kernel = p.kernel();
    let r = p.r.as_ref().ok_or(Error::MissingCertificate)?;
    let zero = || BigFloat::from_i64(0, bits);
    let tol = digits as f64 / 2.0 + 5.0;
    let a = if r.is_zero() {
        zero()
    } else {
        sum_series(&pair_series(p)?, &KPoint::Rational(Rational::zero()), digits + 10)
            .map_err(|e| Error::NonConvergent(format!("sum_n G(n,0): {e}")))?
            .value
            .re
    };
    let f0 = p.s.substitute(&Poly2::zero(), &Poly2::k())?;
    let c = if f0.is_zero() {
        zero()
    } else {
        let spec = SeriesSpec::new(kernel.swap_vars(), p.s.swap_vars());
        sum_series(&spec, &KPoint::Rational(Rational::zero()), digits + 10)
            .map_err(|e| Error::NonConvergent(format!("sum_k F(0,k): {e}")))?
            .value
            .re
    };
    let (b, nb) = if r.is_zero() {
        (zero(), 0)
    } else {
        limit_piece("lim sum G(n,K)", tol, |m| partial_sum(&kernel, r, Dir::N, m, m, bits))?
    };
    let (d, nd) = if p.s.is_zero() {
        (zero(), 0)
    } else {
        limit_piece("lim sum F(N,k)", tol, |m| partial_sum(&kernel, &p.s, Dir::K, m, m, bits))?
    };
    let residual = (a.clone() - b.clone() - c.clone() + d.clone()).abs();
    Ok(Theorem2Report { pieces: [a, b, c, d], residual, cutoff: nb.max(nd) })
}
