//! Dense univariate polynomials over the rationals.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Coefficients stored low degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly {
    c: Vec<Rational>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly { c: vec![Rational::one()] }
    }

    pub fn constant(r: Rational) -> Self {
        Self::new(vec![r])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.c.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.c.iter().map(|v| v * r).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        let inv = d.lc().recip();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let f = &r[i + dd] * &inv;
            if !f.is_zero() {
                for (j, dc) in d.c.iter().enumerate() {
                    r[i + j] -= &f * dc;
                }
            }
            q[i] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        if self.degree() == 0 || o.degree() == 0 {
            return Self::one();
        }
        let mut a = self.primitive_integer();
        let mut b = o.primitive_integer();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while b.len() > 1 {
            let r = int_prem(&a, &b);
            if r.is_empty() {
                break;
            }
            a = b;
            b = int_primitive(r);
        }
        if b.len() == 1 {
            return Self::one();
        }
        Self::new(b.into_iter().map(Rational::from_integer).collect()).monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for v in self.c.iter().rev() {
            acc = acc * x + v;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, v)| v * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Integer coefficients with unit content and positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self.c.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints: Vec<BigInt> = self.c.iter().map(|v| (v * &l).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        ints.into_iter().map(|v| v / &g).collect()
    }

    /// Distinct rational roots.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        if self.degree() < 1 {
            return out;
        }
        let mut ints = self.primitive_integer();
        let lead_zero = ints.iter().take_while(|v| v.is_zero()).count();
        if lead_zero > 0 {
            out.push(Rational::zero());
            ints.drain(..lead_zero);
        }
        if ints.len() < 2 {
            return out;
        }
        let p = UPoly::new(ints.iter().map(|v| Rational::from_integer(v.clone())).collect());
        let mut rest = p.square_free();
        let ad = rest.primitive_integer().last().unwrap().abs();
        let small = BigInt::from(1_000_000_000_000i64);
        let qs = if ad < small { divisors(&ad) } else { Vec::new() };
        let mut found = BTreeSet::new();
        for x in numeric_real_roots(&rest) {
            let cands: Vec<Rational> = if qs.is_empty() {
                rationalize(x, &ad).into_iter().collect()
            } else {
                qs.iter()
                    .filter_map(|q| {
                        let num = (x * q.to_f64()?).round();
                        num.is_finite().then(|| Rational::new(BigInt::from(num as i128), q.clone()))
                    })
                    .collect()
            };
            for r in cands {
                if !found.contains(&r) && mod_zero(&rest, &r) && rest.eval(&r).is_zero() {
                    found.insert(r);
                }
            }
        }
        for r in &found {
            rest = rest.divrem(&UPoly::new(vec![-r.clone(), Rational::one()])).0;
        }
        // Exhaustive fallback for anything the numeric pass missed.
        if rest.degree() >= 1 {
            let ints = rest.primitive_integer();
            let (a0, ad) = (ints[0].abs(), ints.last().unwrap().abs());
            let lim = BigInt::from(10_000_000i64);
            if !a0.is_zero() && a0 < lim && ad < lim {
                let ps = divisors(&a0);
                let qs = divisors(&ad);
                if ps.len() * qs.len() <= 4096 {
                    for pp in &ps {
                        for qq in &qs {
                            for s in [1i64, -1] {
                                let r = Rational::new(BigInt::from(s) * pp, qq.clone());
                                if mod_zero(&rest, &r) && rest.eval(&r).is_zero() {
                                    found.insert(r);
                                }
                            }
                        }
                    }
                }
            }
        }
        out.extend(found);
        out
    }

    /// `self / gcd(self, self')`.
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() <= 0 {
            return self.clone();
        }
        self.divrem(&g).0
    }
}

/// False only when `p(r) != 0` is certain from its residue mod 2^61 - 1.
fn mod_zero(p: &UPoly, r: &Rational) -> bool {
    use super::modp;
    let Some(x) = modp::from_rat(r) else { return true };
    let cs: Option<Vec<u64>> = p.coeffs().iter().map(modp::from_rat).collect();
    match cs {
        Some(cs) => modp::eval_u(&cs, x) == 0,
        None => true,
    }
}

fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for v in r.iter_mut() {
            *v *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= bc * &lr;
        }
        while r.last().is_some_and(|v| v.is_zero()) {
            r.pop();
        }
    }
    r
}

fn int_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

/// Positive divisors of a nonzero integer below 10^12.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut m = n.abs().to_u64().expect("divisor enumeration bound");
    if m == 0 {
        return vec![BigInt::one()];
    }
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            primes.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs = vec![1u64];
    for (p, e) in primes {
        let cur = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(cur.iter().map(|d| d * pk));
        }
    }
    divs.into_iter().map(BigInt::from).collect()
}

/// Real roots of a square-free polynomial by Durand-Kerner iteration in f64.
fn numeric_real_roots(p: &UPoly) -> Vec<f64> {
    use num_complex::Complex64;
    let lc = p.lc();
    let c: Vec<f64> = p.coeffs().iter().map(|v| (v / &lc).to_f64().unwrap_or(f64::NAN)).collect();
    let d = c.len() - 1;
    let eval = |x: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, v| acc * x + v);
    let bound = 1.0 + c.iter().take(d).map(|v| v.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|i| Complex64::from_polar(bound, 0.4 + 2.0 * std::f64::consts::PI * i as f64 / d as f64))
        .collect();
    for _ in 0..500 {
        let mut delta: f64 = 0.0;
        for i in 0..d {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 * bound {
            break;
        }
    }
    z.into_iter().filter(|w| w.im.abs() < 1e-3 * (1.0 + w.re.abs())).map(|w| w.re).collect()
}

/// Best continued-fraction approximation with denominator dividing into `qmax`.
fn rationalize(x: f64, qmax: &BigInt) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let qmax = qmax.to_f64().unwrap_or(f64::MAX);
    let (mut h0, mut h1) = (0f64, 1f64);
    let (mut k0, mut k1) = (1f64, 0f64);
    let mut v = x;
    let mut best = None;
    for _ in 0..40 {
        let a = v.floor();
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > qmax {
            break;
        }
        best = Some((h2, k2));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    best.map(|(h, k)| Rational::new(BigInt::from(h as i64), BigInt::from(k as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn up(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let a = up(&[3, 0, -2, 5, 1]);
        let b = up(&[1, 2]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = up(&[1, 1]);
        let a = f.mul(&up(&[2, 0, 1]));
        let b = f.mul(&up(&[-3, 1]));
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn rational_roots_found() {
        // (2x+1)(3x-2)(x+4)^2
        let p = up(&[1, 2]).mul(&up(&[-2, 3])).mul(&up(&[4, 1])).mul(&up(&[4, 1]));
        let roots = p.rational_roots();
        assert_eq!(roots, vec![int(-4), rat(-1, 2), rat(2, 3)]);
    }

    #[test]
    fn rational_roots_large_coefficients() {
        let big = 1_000_003i64 * 999_983;
        let p = up(&[-big, 7]).mul(&up(&[1, 1, 1]));
        assert_eq!(p.rational_roots(), vec![rat(big, 7)]);
    }
}
