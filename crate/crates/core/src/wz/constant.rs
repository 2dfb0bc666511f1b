//! The constant `g(k) = sum_n G(n,k)` of a flawless pair.
//!
//! The exact route evaluates `G(0, k0)` at a point where every later term
//! vanishes; the numeric route sums `g(0)` and recognizes a rational multiple
//! of a known basis.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::WZPair;
use crate::exact::Rational;
use crate::hyperterm::{gamma_product_closed_form, rational_power, ClosedForm, ClosedKind, KPoint};
use crate::numerics::series::log10_abs;
use crate::numerics::{recognize_rational_multiple, sum_series, BigFloat, SeriesSpec, SeriesSum};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum ConstantValue {
    Closed(ClosedForm),
    Unevaluated,
}

/// `sum_n G(n, k)` as a series in `n`.
pub fn pair_series(p: &WZPair) -> Result<SeriesSpec> {
    let r = p.r.as_ref().ok_or(Error::MissingCertificate)?;
    Ok(SeriesSpec::new(p.kernel(), r.clone()))
}

pub fn pair_sum(p: &WZPair, k: &KPoint, digits: u32) -> Result<SeriesSum> {
    sum_series(&pair_series(p)?, k, digits)
}

fn vanishes_at(p: &WZPair, n: i64, k0: &Rational) -> Result<bool> {
    let g = p.g_term()?;
    if let Some(v) = g.eval_exact(&Rational::from_integer(n.into()), k0)? {
        return Ok(v.is_zero());
    }
    let v = g.eval_numeric(n, &KPoint::Rational(k0.clone()), 64)?;
    Ok(v.re.is_zero() && v.im.is_zero())
}

/// `G(0, k0)` in closed form when the sum over `n` collapses to it at `k0`.
pub fn termination_value(p: &WZPair, k0: &Rational) -> Result<Option<ClosedForm>> {
    let Some(r) = p.r.as_ref() else {
        return Ok(None);
    };
    let kernel = p.kernel();
    let Some(rv) = r.eval(&Rational::zero(), k0) else { return Ok(None) };
    let Some(pre) = kernel.pre.eval(&Rational::zero(), k0) else { return Ok(None) };
    if kernel.sign_k && !k0.is_integer() {
        return Ok(None);
    }
    let Some(yk) = rational_power(&kernel.y, k0) else { return Ok(None) };
    let mut args: BTreeMap<Rational, i64> = BTreeMap::new();
    for (l, &e) in &kernel.gammas {
        *args.entry(&l.a + &l.c * k0).or_insert(0) += e;
    }
    let items: Vec<(Rational, i64)> = args.into_iter().filter(|(_, e)| *e != 0).collect();
    if items.iter().any(|(x, _)| x.is_integer() && *x <= Rational::zero()) {
        return Ok(None);
    }
    // the sum must collapse to its first term
    if !vanishes_at(p, 1, k0)? || !vanishes_at(p, 2, k0)? {
        return Ok(None);
    }
    let Some(mut g) = gamma_product_closed_form(&items)? else { return Ok(None) };
    g.r = g.r * rv * pre * yk;
    if kernel.sign_k && k0.to_integer().bit(0) {
        g.r = -g.r;
    }
    if g.r.is_zero() {
        return Ok(None);
    }
    Ok(g.to_closed_form())
}

/// [`termination_value`] at the first terminating point that gives one.
pub fn constant_via_termination(p: &WZPair) -> Result<ConstantValue> {
    for k0 in p.u.terminating_points() {
        if let Some(c) = termination_value(p, &k0)? {
            return Ok(ConstantValue::Closed(c));
        }
    }
    Ok(ConstantValue::Unevaluated)
}

/// Rational `r` with `v = r * basis(kind, m, chi)`.
pub fn recognize_constant(v: &BigFloat, kind: ClosedKind, m: u32, chi: i64, digits: u32, denom_bound: u64) -> Result<ClosedForm> {
    let shape = ClosedForm { kind, r: Rational::one(), m, chi };
    let basis = shape.basis(digits + 10)?;
    let r = recognize_rational_multiple(v, &basis, denom_bound, digits).ok_or_else(|| {
        Error::RecognitionFailed(format!("no rational multiple of {shape} with denominator <= {denom_bound}"))
    })?;
    Ok(ClosedForm { r, ..shape })
}

/// Shapes tried by [`search_constant`], simplest first.
fn shapes() -> Vec<(ClosedKind, u32, i64)> {
    let mut out = Vec::new();
    for m in 0..=6u32 {
        for d in [1i64, 2, 3] {
            out.push((ClosedKind::PiPower, m, if m % 2 == 0 { d } else { -d }));
        }
    }
    for m in 1..=4u32 {
        for chi in [1i64, -4] {
            out.push((ClosedKind::LValue, m, chi));
        }
    }
    out
}

/// First closed form among the standard shapes that matches `v`.
pub fn search_constant(v: &BigFloat, digits: u32, denom_bound: u64) -> Option<ClosedForm> {
    if v.is_zero() || log10_abs(v) < -(digits as f64) / 2.0 {
        return Some(ClosedForm::pi_power(Rational::zero(), 0, 1));
    }
    shapes()
        .into_iter()
        .find_map(|(kind, m, chi)| recognize_constant(v, kind, m, chi, digits, denom_bound).ok())
}

/// `g(0)` recognized as `r` times the basis of the given shape.
pub fn constant_via_numeric(p: &WZPair, kind: ClosedKind, m: u32, chi: i64, digits: u32, denom_bound: u64) -> Result<ClosedForm> {
    let s = pair_sum(p, &KPoint::Rational(Rational::zero()), digits)?;
    recognize_constant(&s.value.re, kind, m, chi, digits, denom_bound)
}

/// Both routes, termination first; a disagreement is an error. `shape`
/// fixes the numeric basis, otherwise the standard shapes are searched.
pub fn pair_constant(p: &WZPair, shape: Option<&ClosedForm>, digits: u32, denom_bound: u64) -> Result<ClosedForm> {
    let exact = constant_via_termination(p)?;
    let sum = pair_sum(p, &KPoint::Rational(Rational::zero()), digits)?;
    let v = &sum.value.re;
    let numeric = match shape {
        Some(c) => recognize_constant(v, c.kind, c.m, c.chi, digits, denom_bound)?,
        None => search_constant(v, digits, denom_bound)
            .ok_or_else(|| Error::RecognitionFailed(format!("g(0) = {}", v.to_decimal(30))))?,
    };
    if let ConstantValue::Closed(e) = exact {
        let ev = e.value(digits)?;
        let nv = numeric.value(digits)?;
        let diff = ev.clone() - nv;
        if !diff.is_zero() && log10_abs(&diff) - log10_abs(&ev) > -(digits as f64) / 2.0 {
            return Err(Error::ConstantMismatch(format!("termination gives {e}, summation gives {numeric}")));
        }
        return Ok(e);
    }
    Ok(numeric)
}
