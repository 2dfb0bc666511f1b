//! Gauss-Legendre panels with an embedded lower-order error estimate.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use rayon::prelude::*;

use super::real::{BigFloat, Real};
use super::series::log10_abs;
use crate::{Error, Result};

/// Nodes and weights on `[-1, 1]`.
pub struct GaussLegendre {
    pub nodes: Vec<BigFloat>,
    pub weights: Vec<BigFloat>,
}

/// `(P_n(x), P_{n-1}(x))`.
fn legendre(n: usize, x: &BigFloat) -> (BigFloat, BigFloat) {
    let b = x.precision();
    let mut p0 = BigFloat::from_i64(1, b);
    let mut p1 = x.clone();
    for j in 1..n {
        let j = j as i64;
        let p2 = (BigFloat::from_i64(2 * j + 1, b) * x.clone() * p1.clone() - BigFloat::from_i64(j, b) * p0)
            / BigFloat::from_i64(j + 1, b);
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

impl GaussLegendre {
    pub fn new(order: usize, bits: usize) -> Self {
        let work = bits + 32;
        let one = BigFloat::from_i64(1, work);
        let nb = BigFloat::from_i64(order as i64, work);
        let mut nodes = Vec::with_capacity(order);
        let mut weights = Vec::with_capacity(order);
        for i in 1..=order {
            let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (order as f64 + 0.5)).cos();
            let mut x = BigFloat::from_f64(guess, work);
            let mut dp = one.clone();
            for _ in 0..200 {
                let (p, pm) = legendre(order, &x);
                dp = nb.clone() * (x.clone() * p.clone() - pm) / (x.clone() * x.clone() - one.clone());
                let step = p / dp.clone();
                x = x - step.clone();
                if step.is_zero() || log10_abs(&step) < -((work as f64) * 0.30103) + 2.0 {
                    break;
                }
            }
            let (p, pm) = legendre(order, &x);
            dp = if p.is_zero() { dp } else { nb.clone() * (x.clone() * p - pm) / (x.clone() * x.clone() - one.clone()) };
            let w = BigFloat::from_i64(2, work) / ((one.clone() - x.clone() * x.clone()) * dp.clone() * dp);
            nodes.push(x.set_precision(bits));
            weights.push(w.set_precision(bits));
        }
        GaussLegendre { nodes, weights }
    }
}

static RULES: Mutex<Option<HashMap<(usize, usize), Arc<GaussLegendre>>>> = Mutex::new(None);

/// Shared rule for an order and precision.
pub fn rule(order: usize, bits: usize) -> Arc<GaussLegendre> {
    let mut g = RULES.lock().expect("quadrature cache");
    g.get_or_insert_with(HashMap::new)
        .entry((order, bits))
        .or_insert_with(|| Arc::new(GaussLegendre::new(order, bits)))
        .clone()
}

pub type Integrand<'a> = dyn Fn(&BigFloat) -> Result<BigFloat> + Sync + 'a;

struct Panel {
    value: BigFloat,
    error: BigFloat,
    /// `max |f|` over the nodes times the width.
    envelope: f64,
}

fn apply(f: &Integrand<'_>, g: &GaussLegendre, a: &BigFloat, b: &BigFloat) -> Result<(BigFloat, f64)> {
    let bits = a.precision();
    let half = (b.clone() - a.clone()) / BigFloat::from_i64(2, bits);
    let mid = (b.clone() + a.clone()) / BigFloat::from_i64(2, bits);
    let vals: Vec<Result<BigFloat>> = g.nodes.par_iter().map(|x| f(&(mid.clone() + half.clone() * x.clone()))).collect();
    let mut acc = BigFloat::from_i64(0, bits);
    let mut env = f64::NEG_INFINITY;
    for (v, w) in vals.into_iter().zip(&g.weights) {
        let v = v?;
        env = env.max(log10_abs(&v));
        acc = acc + w.clone() * v;
    }
    Ok((acc * half.clone(), env + log10_abs(&half) + std::f64::consts::LOG10_2))
}

fn panel(f: &Integrand<'_>, a: &BigFloat, b: &BigFloat, hi: &GaussLegendre, lo: &GaussLegendre) -> Result<Panel> {
    let (v, env) = apply(f, hi, a, b)?;
    let (w, _) = apply(f, lo, a, b)?;
    Ok(Panel { error: (v.clone() - w).abs(), value: v, envelope: env })
}

#[derive(Clone, Debug)]
pub struct Quadrature {
    pub value: BigFloat,
    /// `log10` of the accumulated error estimate.
    pub error_log10: f64,
    pub panels: usize,
    /// Truncation height of the integration range.
    pub height: f64,
}

const MAX_DEPTH: u32 = 14;

fn adapt(f: &Integrand<'_>, a: &BigFloat, b: &BigFloat, tol: f64, depth: u32, rules: (&GaussLegendre, &GaussLegendre), out: &mut (BigFloat, f64, usize)) -> Result<f64> {
    let p = panel(f, a, b, rules.0, rules.1)?;
    let e = log10_abs(&p.error);
    if e <= tol || depth >= MAX_DEPTH {
        out.0 = out.0.clone() + p.value;
        out.1 = log_add(out.1, e);
        out.2 += 1;
        return Ok(p.envelope);
    }
    let bits = a.precision();
    let m = (a.clone() + b.clone()) / BigFloat::from_i64(2, bits);
    let l = adapt(f, a, &m, tol - 0.3, depth + 1, rules, out)?;
    let r = adapt(f, &m, b, tol - 0.3, depth + 1, rules, out)?;
    Ok(l.max(r))
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + (10f64.powf(a - m) + 10f64.powf(b - m)).log10()
}

/// `int_0^oo f(t) dt` for an integrand with exponential decay, to about
/// `10^-digits` relative to the largest panel.
pub fn integrate_half_line(f: &Integrand<'_>, width: f64, digits: u32, bits: usize) -> Result<Quadrature> {
    let hi = rule(32, bits);
    let lo = rule(16, bits);
    let h = BigFloat::from_f64(width, bits);
    let mut a = BigFloat::from_i64(0, bits);
    let first = panel(f, &a, &h, &hi, &lo)?;
    let mut scale = log10_abs(&first.value).max(first.envelope);
    let mut out = (BigFloat::from_i64(0, bits), f64::NEG_INFINITY, 0usize);
    let mut prev_env = f64::INFINITY;
    let mut j = 0usize;
    loop {
        let b = a.clone() + h.clone();
        let tol = scale - digits as f64 - 3.0;
        let env = adapt(f, &a, &b, tol, 0, (&hi, &lo), &mut out)?;
        scale = scale.max(env);
        j += 1;
        if j >= 2 && env < prev_env {
            let lr = env - prev_env;
            let r = 10f64.powf(lr);
            let tail = env + lr - (1.0 - r).log10();
            if tail < scale - digits as f64 - 3.0 {
                out.1 = log_add(out.1, tail);
                return Ok(Quadrature { value: out.0, error_log10: out.1, panels: out.2, height: width * j as f64 });
            }
        }
        prev_env = env;
        a = b;
        if j > 20_000 {
            return Err(Error::NonConvergent("quadrature tail did not decay".into()));
        }
    }
}
