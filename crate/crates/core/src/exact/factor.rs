//! Polynomials kept as products of integer linear forms `alpha*n + beta*k + gamma`
//! times opaque primitive residual factors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{poly_div_exact, primitive_part, BiPoly, Rational, RatFunc, UPoly};

type Poly2 = BiPoly<Rational>;

/// `alpha*n + beta*k + gamma` with coprime integer coefficients and the first
/// nonzero of `(beta, alpha, gamma)` positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Linear {
    pub beta: BigInt,
    pub alpha: BigInt,
    pub gamma: BigInt,
}

impl Linear {
    /// Normalize `a + b*n + c*k` into `unit * Linear`; `None` when `b = c = 0`.
    pub fn from_rationals(a: &Rational, b: &Rational, c: &Rational) -> Option<(Rational, Linear)> {
        if b.is_zero() && c.is_zero() {
            return None;
        }
        let l = a.denom().lcm(b.denom()).lcm(c.denom());
        let lr = Rational::from_integer(l);
        let (ga, gb, gc) = ((a * &lr).to_integer(), (b * &lr).to_integer(), (c * &lr).to_integer());
        let mut g = ga.gcd(&gb).gcd(&gc);
        let lead = if !gc.is_zero() { &gc } else { &gb };
        if lead.is_negative() {
            g = -g;
        }
        let lin = Linear { alpha: &gb / &g, beta: &gc / &g, gamma: &ga / &g };
        Some((Rational::from_integer(g) / lr, lin))
    }

    pub fn new(alpha: i64, beta: i64, gamma: i64) -> Linear {
        Self::from_rationals(&Rational::from_integer(gamma.into()), &Rational::from_integer(alpha.into()), &Rational::from_integer(beta.into()))
            .expect("non-constant")
            .1
    }

    pub fn expand(&self) -> Poly2 {
        let r = |v: &BigInt| Rational::from_integer(v.clone());
        Poly2::linear(r(&self.gamma), r(&self.alpha), r(&self.beta))
    }

    pub fn eval(&self, n: &Rational, k: &Rational) -> Rational {
        n * Rational::from_integer(self.alpha.clone()) + k * Rational::from_integer(self.beta.clone()) + Rational::from_integer(self.gamma.clone())
    }

    pub fn eval_with<T, F>(&self, n: &T, k: &T, conv: F) -> T
    where
        T: Clone + Add<Output = T> + Mul<Output = T>,
        F: Fn(&Rational) -> T,
    {
        let r = |v: &BigInt| conv(&Rational::from_integer(v.clone()));
        n.clone() * r(&self.alpha) + k.clone() * r(&self.beta) + r(&self.gamma)
    }

    /// `self(n + dn, k + dk) = unit * result`.
    pub fn shift(&self, dn: &Rational, dk: &Rational) -> (Rational, Linear) {
        let a = Rational::from_integer(self.gamma.clone())
            + dn * Rational::from_integer(self.alpha.clone())
            + dk * Rational::from_integer(self.beta.clone());
        Self::from_rationals(&a, &Rational::from_integer(self.alpha.clone()), &Rational::from_integer(self.beta.clone()))
            .expect("non-constant")
    }

    pub fn swap_vars(&self) -> (Rational, Linear) {
        let r = |v: &BigInt| Rational::from_integer(v.clone());
        Self::from_rationals(&r(&self.gamma), &r(&self.beta), &r(&self.alpha)).expect("non-constant")
    }

    pub fn depends_on_k(&self) -> bool {
        !self.beta.is_zero()
    }

    pub fn depends_on_n(&self) -> bool {
        !self.alpha.is_zero()
    }
}

impl fmt::Display for Linear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expand())
    }
}

/// `unit * prod lin^e * prod res^e`; a zero polynomial has `unit = 0` and no factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactoredPoly {
    pub unit: Rational,
    pub lin: BTreeMap<Linear, u32>,
    pub res: BTreeMap<Poly2, u32>,
}

impl FactoredPoly {
    pub fn constant(unit: Rational) -> Self {
        FactoredPoly { unit, lin: BTreeMap::new(), res: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn from_linear(l: Linear, e: u32) -> Self {
        let mut p = Self::one();
        if e > 0 {
            p.lin.insert(l, e);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.lin.is_empty() && self.res.is_empty()
    }

    /// Split off every rational linear factor of `p`.
    pub fn from_poly(p: &Poly2) -> Self {
        if p.is_zero() {
            return Self::constant(Rational::zero());
        }
        let (unit, mut q) = primitive_part(p);
        let mut lin: BTreeMap<Linear, u32> = BTreeMap::new();
        loop {
            if q.total_degree() == 0 {
                break;
            }
            let mut progress = false;
            for l in linear_candidates(&q) {
                while vanishes_on(&q, &l) {
                    let Some(next) = poly_div_exact(&q, &l.expand()) else { break };
                    q = next;
                    *lin.entry(l.clone()).or_insert(0) += 1;
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
        let (u2, q) = primitive_part(&q);
        let mut res = BTreeMap::new();
        if !q.is_constant() {
            res.insert(q, 1);
        }
        FactoredPoly { unit: unit * u2, lin, res }
    }

    pub fn expand(&self) -> Poly2 {
        let mut acc = Poly2::constant(self.unit.clone());
        for (l, &e) in &self.lin {
            acc = &acc * &l.expand().pow(e);
        }
        for (r, &e) in &self.res {
            acc = &acc * &r.pow(e);
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.lin.values().sum::<u32>() + self.res.iter().map(|(p, e)| p.total_degree() * e).sum::<u32>()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.unit = &self.unit * &o.unit;
        if out.unit.is_zero() {
            return Self::constant(Rational::zero());
        }
        for (l, &e) in &o.lin {
            *out.lin.entry(l.clone()).or_insert(0) += e;
        }
        for (r, &e) in &o.res {
            *out.res.entry(r.clone()).or_insert(0) += e;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        FactoredPoly {
            unit: num_traits::pow(self.unit.clone(), e as usize),
            lin: self.lin.iter().filter(|_| e > 0).map(|(l, m)| (l.clone(), m * e)).collect(),
            res: self.res.iter().filter(|_| e > 0).map(|(r, m)| (r.clone(), m * e)).collect(),
        }
    }

    fn merge(&self, o: &Self, f: fn(u32, u32) -> u32) -> Self {
        let mut lin = BTreeMap::new();
        for l in self.lin.keys().chain(o.lin.keys()) {
            let m = f(*self.lin.get(l).unwrap_or(&0), *o.lin.get(l).unwrap_or(&0));
            if m > 0 {
                lin.insert(l.clone(), m);
            }
        }
        let mut res = BTreeMap::new();
        for r in self.res.keys().chain(o.res.keys()) {
            let m = f(*self.res.get(r).unwrap_or(&0), *o.res.get(r).unwrap_or(&0));
            if m > 0 {
                res.insert(r.clone(), m);
            }
        }
        FactoredPoly { unit: Rational::one(), lin, res }
    }

    /// Monic-style lcm (unit 1) by maximum multiplicities.
    pub fn lcm(&self, o: &Self) -> Self {
        self.merge(o, u32::max)
    }

    /// Gcd (unit 1) by minimum multiplicities of the recorded factors.
    pub fn gcd(&self, o: &Self) -> Self {
        self.merge(o, u32::min)
    }

    /// `self / o` when every factor of `o` occurs in `self`.
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        let mut out = self.clone();
        out.unit = &self.unit / &o.unit;
        for (l, &e) in &o.lin {
            let m = out.lin.get_mut(l)?;
            if *m < e {
                return None;
            }
            *m -= e;
            if *m == 0 {
                out.lin.remove(l);
            }
        }
        for (r, &e) in &o.res {
            let m = out.res.get_mut(r)?;
            if *m < e {
                return None;
            }
            *m -= e;
            if *m == 0 {
                out.res.remove(r);
            }
        }
        Some(out)
    }

    pub fn shift(&self, dn: &Rational, dk: &Rational) -> Self {
        let mut out = Self::constant(self.unit.clone());
        for (l, &e) in &self.lin {
            let (u, l2) = l.shift(dn, dk);
            out.unit *= super::rational_pow(&u, e as i64);
            *out.lin.entry(l2).or_insert(0) += e;
        }
        for (r, &e) in &self.res {
            let (u, r2) = primitive_part(&r.shift(dn, dk));
            out.unit *= super::rational_pow(&u, e as i64);
            *out.res.entry(r2).or_insert(0) += e;
        }
        out
    }

    pub fn swap_vars(&self) -> Self {
        let mut out = Self::constant(self.unit.clone());
        for (l, &e) in &self.lin {
            let (u, l2) = l.swap_vars();
            out.unit *= super::rational_pow(&u, e as i64);
            *out.lin.entry(l2).or_insert(0) += e;
        }
        for (r, &e) in &self.res {
            let sw = Poly2::from_terms(r.terms().map(|(x, c)| ((x.1, x.0), c.clone())));
            let (u, r2) = primitive_part(&sw);
            out.unit *= super::rational_pow(&u, e as i64);
            *out.res.entry(r2).or_insert(0) += e;
        }
        out
    }

    pub fn eval(&self, n: &Rational, k: &Rational) -> Rational {
        let mut acc = self.unit.clone();
        for (l, &e) in &self.lin {
            acc *= super::rational_pow(&l.eval(n, k), e as i64);
        }
        for (r, &e) in &self.res {
            acc *= super::rational_pow(&r.eval(n, k), e as i64);
        }
        acc
    }

    pub fn eval_with<T, F>(&self, n: &T, k: &T, conv: F) -> T
    where
        T: Clone + Zero + One + Add<Output = T> + Mul<Output = T>,
        F: Fn(&Rational) -> T,
    {
        let mut acc = conv(&self.unit);
        for (l, &e) in &self.lin {
            let v = l.eval_with(n, k, &conv);
            for _ in 0..e {
                acc = acc * v.clone();
            }
        }
        for (r, &e) in &self.res {
            let v = r.eval_with(n, k, &conv);
            for _ in 0..e {
                acc = acc * v.clone();
            }
        }
        acc
    }

    /// Split into the factors free of `k` and the rest (the unit stays with the rest).
    pub fn split_k_free(&self) -> (Self, Self) {
        let mut free = Self::one();
        let mut rest = Self::constant(self.unit.clone());
        for (l, &e) in &self.lin {
            let target = if l.depends_on_k() { &mut rest } else { &mut free };
            target.lin.insert(l.clone(), e);
        }
        for (r, &e) in &self.res {
            let target = if r.depends_on_k() { &mut rest } else { &mut free };
            target.res.insert(r.clone(), e);
        }
        (free, rest)
    }

    /// Drop the unit.
    pub fn monic(&self) -> Self {
        FactoredPoly { unit: Rational::one(), ..self.clone() }
    }
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![];
        if !self.unit.is_one() || self.is_constant() {
            parts.push(self.unit.to_string());
        }
        for (l, &e) in &self.lin {
            parts.push(if e == 1 { format!("({l})") } else { format!("({l})^{e}") });
        }
        for (r, &e) in &self.res {
            parts.push(if e == 1 { format!("({r})") } else { format!("({r})^{e}") });
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Necessary condition for `l | q`: `q` vanishes mod p at `deg q + 1` points of `l = 0`.
fn vanishes_on(q: &Poly2, l: &Linear) -> bool {
    use super::modp;
    let Some(mq) = modp::ModPoly::new(q) else { return true };
    let (a, b, g) = (modp::from_int(&l.alpha), modp::from_int(&l.beta), modp::from_int(&l.gamma));
    (0..=q.total_degree() as u64).all(|t| {
        let (n, k) = if a == 0 {
            (t, modp::mul(modp::neg(g), modp::inv(b)))
        } else {
            (modp::mul(modp::neg(modp::add(modp::mul(b, t), g)), modp::inv(a)), t)
        };
        mq.eval(n, k) == 0
    })
}

fn linear_candidates(q: &Poly2) -> Vec<Linear> {
    let d = q.total_degree();
    let h = q.homogeneous_part(d);
    let mut ht = vec![Rational::zero(); d as usize + 1];
    for (&(i, _), c) in h.terms() {
        ht[i as usize] = c.clone();
    }
    let ht = UPoly::new(ht);
    let mut dirs: Vec<(Rational, Rational)> = ht
        .rational_roots()
        .into_iter()
        .map(|r| (Rational::one(), -r))
        .collect();
    if ht.degree() < d as isize {
        dirs.push((Rational::zero(), Rational::one()));
    }
    let mut out = Vec::new();
    for (a, b) in dirs {
        let (_, dir) = Linear::from_rationals(&Rational::zero(), &a, &b).expect("direction");
        let alpha = Rational::from_integer(dir.alpha.clone());
        let beta = Rational::from_integer(dir.beta.clone());
        if !dir.alpha.is_zero() {
            let (k0, f) = first_nonzero(|v| q.specialize_k(&v), |p| upoly_from(p, 0));
            for rho in f.rational_roots() {
                let g = -(&alpha * rho + &beta * &k0);
                out.push(Linear::from_rationals(&g, &alpha, &beta).expect("direction").1);
            }
        } else {
            let (n0, f) = first_nonzero(|v| q.specialize_n(&v), |p| upoly_from(p, 1));
            for rho in f.rational_roots() {
                let g = -(&beta * rho + &alpha * &n0);
                out.push(Linear::from_rationals(&g, &alpha, &beta).expect("direction").1);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn first_nonzero(spec: impl Fn(Rational) -> Poly2, to_u: impl Fn(&Poly2) -> UPoly) -> (Rational, UPoly) {
    for v in 0i64.. {
        let r = Rational::from_integer(BigInt::from(v));
        let u = to_u(&spec(r.clone()));
        if !u.is_zero() {
            return (r, u);
        }
    }
    unreachable!()
}

fn upoly_from(p: &Poly2, var: usize) -> UPoly {
    let deg = if var == 0 { p.degree_n() } else { p.degree_k() };
    let mut c = vec![Rational::zero(); deg as usize + 1];
    for (&(i, j), v) in p.terms() {
        c[if var == 0 { i } else { j } as usize] = v.clone();
    }
    UPoly::new(c)
}

/// `num / den` with both sides factored; common factors cancelled.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactoredRat {
    pub num: FactoredPoly,
    pub den: FactoredPoly,
}

impl FactoredRat {
    pub fn new(num: FactoredPoly, den: FactoredPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = FactoredRat { num, den };
        r.cancel();
        r
    }

    pub fn one() -> Self {
        FactoredRat { num: FactoredPoly::one(), den: FactoredPoly::one() }
    }

    pub fn constant(r: Rational) -> Self {
        FactoredRat { num: FactoredPoly::constant(r), den: FactoredPoly::one() }
    }

    pub fn from_ratfunc(f: &RatFunc) -> Self {
        Self::new(FactoredPoly::from_poly(f.num()), FactoredPoly::from_poly(f.den()))
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::new(self.num.expand(), self.den.expand()).expect("nonzero denominator")
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den = FactoredPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        self.num = self.num.div_exact(&g).expect("gcd divides");
        self.den = self.den.div_exact(&g).expect("gcd divides");
        self.num.unit = &self.num.unit / &self.den.unit;
        self.den.unit = Rational::one();
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.mul(&Self::constant(r.clone()))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let l = self.den.lcm(&o.den);
        let a = self.num.mul(&l.div_exact(&self.den).expect("lcm"));
        let b = o.num.mul(&l.div_exact(&o.den).expect("lcm"));
        let common = a.gcd(&b);
        let ra = a.div_exact(&common).expect("gcd").expand();
        let rb = b.div_exact(&common).expect("gcd").expand();
        let s = &ra + &rb;
        let num = FactoredPoly::from_poly(&s).mul(&common);
        Self::new(num, l)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn shift(&self, dn: &Rational, dk: &Rational) -> Self {
        Self::new(self.num.shift(dn, dk), self.den.shift(dn, dk))
    }

    pub fn swap_vars(&self) -> Self {
        Self::new(self.num.swap_vars(), self.den.swap_vars())
    }

    pub fn eval(&self, n: &Rational, k: &Rational) -> Option<Rational> {
        let d = self.den.eval(n, k);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(n, k) / d)
    }
}

impl fmt::Display for FactoredRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn l(a: i64, b: i64, g: i64) -> Poly2 {
        Poly2::linear(int(g), int(a), int(b))
    }

    #[test]
    fn normalization_sign_and_content() {
        let (u, lin) = Linear::from_rationals(&int(-2), &int(-4), &int(0)).unwrap();
        assert_eq!(lin, Linear::new(2, 0, 1));
        assert_eq!(u, int(-2));
        let (u, lin) = Linear::from_rationals(&rat(1, 2), &int(0), &rat(-1, 4)).unwrap();
        assert_eq!(lin, Linear::new(0, 1, -2));
        assert_eq!(u, rat(-1, 4));
    }

    #[test]
    fn extracts_product_form_denominator() {
        // 2(1+2n)(3+2k+3n)(2n+2k+1)(3n+2k+1)(3n+2k+2)
        let p = [l(2, 0, 1), l(3, 2, 3), l(2, 2, 1), l(3, 2, 1), l(3, 2, 2)]
            .iter()
            .fold(Poly2::constant(int(2)), |acc, f| &acc * f);
        let fp = FactoredPoly::from_poly(&p);
        assert!(fp.res.is_empty());
        assert_eq!(fp.lin.len(), 5);
        assert_eq!(fp.expand(), p);
    }

    #[test]
    fn keeps_irreducible_residual() {
        let q = &(&(&Poly2::n() * &Poly2::n()) + &Poly2::k()) * &l(1, 1, 1).pow(2);
        let fp = FactoredPoly::from_poly(&q);
        assert_eq!(fp.lin.get(&Linear::new(1, 1, 1)), Some(&2));
        assert_eq!(fp.res.len(), 1);
        assert_eq!(fp.expand(), q);
    }

    #[test]
    fn repeated_and_pure_factors() {
        let q = &(&l(0, 1, 0).pow(3) * &l(2, 0, 1).pow(2)) * &l(1, -1, 0);
        let fp = FactoredPoly::from_poly(&q);
        assert_eq!(fp.lin.get(&Linear::new(0, 1, 0)), Some(&3));
        assert_eq!(fp.lin.get(&Linear::new(2, 0, 1)), Some(&2));
        assert_eq!(fp.expand(), q);
    }

    #[test]
    fn factored_sum_matches_ratfunc() {
        let a = FactoredRat::new(FactoredPoly::from_poly(&l(1, 0, 0)), FactoredPoly::from_poly(&l(1, 1, 1)));
        let b = FactoredRat::new(FactoredPoly::from_poly(&l(0, 1, 2)), FactoredPoly::from_poly(&l(1, 1, 1)));
        let s = a.add(&b).to_ratfunc();
        let r = a.to_ratfunc().add(&b.to_ratfunc());
        assert_eq!(s, r);
    }

    #[test]
    fn shift_of_linear() {
        let f = Linear::new(2, 3, 1);
        let (u, g) = f.shift(&rat(1, 2), &int(1));
        assert_eq!(u, int(1));
        assert_eq!(g, Linear::new(2, 3, 5));
    }
}
