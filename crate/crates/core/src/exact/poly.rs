//! Bivariate polynomials in `n` and `k`, generic over the coefficient ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Coeff;

/// Exponent pair `(i, j)` standing for `n^i k^j`.
pub type Exponents = (u32, u32);

/// Graded-lexicographic comparison with `n > k`.
pub fn grlex(a: &Exponents, b: &Exponents) -> Ordering {
    (a.0 + a.1, a.0, a.1).cmp(&(b.0 + b.1, b.0, b.1))
}

/// A polynomial `sum c_{ij} n^i k^j` stored as a dense-by-key map without zero entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly<C> {
    terms: BTreeMap<Exponents, C>,
}

impl<C: Coeff> Default for BiPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> BiPoly<C> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: C, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    /// The variable `n`.
    pub fn n() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    /// The variable `k`.
    pub fn k() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    /// `a + b n + c k`.
    pub fn linear(a: C, b: C, c: C) -> Self {
        let mut p = Self::constant(a);
        p.add_term((1, 0), b);
        p.add_term((0, 1), c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> C {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(0, 0)
    }

    pub fn add_term(&mut self, e: Exponents, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn degree_n(&self) -> u32 {
        self.terms.keys().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn degree_k(&self) -> u32 {
        self.terms.keys().map(|e| e.1).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.0 + e.1).max().unwrap_or(0)
    }

    /// Leading term under graded-lexicographic order (`n > k`).
    pub fn leading_term(&self) -> Option<(Exponents, C)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex(a.0, b.0))
            .map(|(e, c)| (*e, c.clone()))
    }

    pub fn depends_on_n(&self) -> bool {
        self.terms.keys().any(|e| e.0 > 0)
    }

    pub fn depends_on_k(&self) -> bool {
        self.terms.keys().any(|e| e.1 > 0)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (*e, v.clone() * c.clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> BiPoly<D> {
        BiPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Multiply by `n^a k^b`.
    pub fn shift_exponents(&self, a: u32, b: u32) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(e, c)| ((e.0 + a, e.1 + b), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluate at a point of any ring the coefficients map into.
    pub fn eval_with<T, F>(&self, n: &T, k: &T, conv: F) -> T
    where
        T: Clone + Zero + One + Mul<Output = T> + Add<Output = T>,
        F: Fn(&C) -> T,
    {
        let dn = self.degree_n() as usize;
        let dk = self.degree_k() as usize;
        let mut np = Vec::with_capacity(dn + 1);
        let mut kp = Vec::with_capacity(dk + 1);
        np.push(T::one());
        kp.push(T::one());
        for i in 0..dn {
            let next = np[i].clone() * n.clone();
            np.push(next);
        }
        for j in 0..dk {
            let next = kp[j].clone() * k.clone();
            kp.push(next);
        }
        let mut acc = T::zero();
        for (&(i, j), c) in &self.terms {
            acc = acc + conv(c) * np[i as usize].clone() * kp[j as usize].clone();
        }
        acc
    }

    pub fn eval(&self, n: &C, k: &C) -> C {
        self.eval_with(n, k, |c| c.clone())
    }

    /// Substitute polynomials for `n` and `k`.
    pub fn substitute(&self, n_val: &Self, k_val: &Self) -> Self {
        let dn = self.degree_n() as usize;
        let dk = self.degree_k() as usize;
        let mut np = vec![Self::one()];
        let mut kp = vec![Self::one()];
        for i in 0..dn {
            let next = &np[i] * n_val;
            np.push(next);
        }
        for j in 0..dk {
            let next = &kp[j] * k_val;
            kp.push(next);
        }
        let mut acc = Self::zero();
        for (&(i, j), c) in &self.terms {
            let t = (&np[i as usize] * &kp[j as usize]).scale(c);
            acc = &acc + &t;
        }
        acc
    }

    /// `p(n + dn, k + dk)`.
    pub fn shift(&self, dn: &C, dk: &C) -> Self {
        if dn.is_zero() && dk.is_zero() {
            return self.clone();
        }
        let nv = Self::linear(dn.clone(), C::one(), C::zero());
        let kv = Self::linear(dk.clone(), C::zero(), C::one());
        self.substitute(&nv, &kv)
    }

    /// Substitute a constant for `n`, leaving a polynomial in `k` (stored with `i = 0`).
    pub fn specialize_n(&self, n0: &C) -> Self {
        self.substitute(&Self::constant(n0.clone()), &Self::k())
    }

    /// Substitute a constant for `k`, leaving a polynomial in `n`.
    pub fn specialize_k(&self, k0: &C) -> Self {
        self.substitute(&Self::n(), &Self::constant(k0.clone()))
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0 + e.1 == d)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }
}

impl<C: Coeff> Add for &BiPoly<C> {
    type Output = BiPoly<C>;
    fn add(self, rhs: &BiPoly<C>) -> BiPoly<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &BiPoly<C> {
    type Output = BiPoly<C>;
    fn sub(self, rhs: &BiPoly<C>) -> BiPoly<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &BiPoly<C> {
    type Output = BiPoly<C>;
    fn mul(self, rhs: &BiPoly<C>) -> BiPoly<C> {
        let mut acc: BTreeMap<Exponents, C> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = (ea.0 + eb.0, ea.1 + eb.1);
                let prod = ca.clone() * cb.clone();
                match acc.get_mut(&e) {
                    Some(v) => *v = v.clone() + prod,
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        BiPoly { terms: acc }
    }
}

impl<C: Coeff> Neg for &BiPoly<C> {
    type Output = BiPoly<C>;
    fn neg(self) -> BiPoly<C> {
        BiPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for BiPoly<C> {
            type Output = BiPoly<C>;
            fn $m(self, rhs: BiPoly<C>) -> BiPoly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Neg for BiPoly<C> {
    type Output = BiPoly<C>;
    fn neg(self) -> BiPoly<C> {
        -&self
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for BiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| grlex(b, a));
        for (idx, e) in keys.iter().enumerate() {
            let c = &self.terms[e];
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = body == "1";
            let mut parts: Vec<String> = Vec::new();
            if !unit || (e.0 == 0 && e.1 == 0) {
                if body.contains('/') && (e.0 > 0 || e.1 > 0) {
                    parts.push(format!("({body})"));
                } else {
                    parts.push(body);
                }
            }
            match e.0 {
                0 => {}
                1 => parts.push("n".into()),
                d => parts.push(format!("n^{d}")),
            }
            match e.1 {
                0 => {}
                1 => parts.push("k".into()),
                d => parts.push(format!("k^{d}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl<C: Coeff + fmt::Display> fmt::Debug for BiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl<C: Coeff> PartialOrd for BiPoly<C>
where
    C: Ord,
{
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Coeff + Ord> Ord for BiPoly<C> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }
}
