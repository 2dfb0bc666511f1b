//! Hypergeometric terms as multisets of Gamma factors with affine
//! arguments in `n` and `k`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{rational_pow, FactoredPoly, FactoredRat, Linear, RatFunc, Rational};
use crate::{Error, Poly2, Result};

pub mod closed;
pub mod eval;

pub use closed::{gamma_product_closed_form, poch_closed_form, ClosedForm, ClosedKind, GammaClosed, PochValue};
pub use eval::KPoint;

/// `a + b*n + c*k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinForm {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

impl LinForm {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        LinForm { a, b, c }
    }

    pub fn constant(a: Rational) -> Self {
        LinForm { a, b: Rational::zero(), c: Rational::zero() }
    }

    pub fn is_constant(&self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }

    pub fn plus(&self, d: &Rational) -> Self {
        LinForm { a: &self.a + d, b: self.b.clone(), c: self.c.clone() }
    }

    pub fn eval(&self, n: &Rational, k: &Rational) -> Rational {
        &self.a + &self.b * n + &self.c * k
    }

    pub fn to_poly(&self) -> Poly2 {
        Poly2::linear(self.a.clone(), self.b.clone(), self.c.clone())
    }

    /// The integer-offset class: two forms differ by an integer iff their keys agree.
    fn class(&self) -> (Rational, Rational, Rational) {
        (self.b.clone(), self.c.clone(), frac(&self.a))
    }
}

impl Ord for LinForm {
    fn cmp(&self, o: &Self) -> Ordering {
        self.c
            .cmp(&o.c)
            .then_with(|| self.b.cmp(&o.b))
            .then_with(|| frac(&self.a).cmp(&frac(&o.a)))
            .then_with(|| self.a.cmp(&o.a))
    }
}

impl PartialOrd for LinForm {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Debug for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFactor {
    pub arg: LinForm,
    pub exp: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    N,
    K,
}

impl Dir {
    pub fn var(self) -> char {
        match self {
            Dir::N => 'n',
            Dir::K => 'k',
        }
    }
}

/// `(arg)_dir ^ exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PochFactor {
    pub arg: LinForm,
    pub dir: Dir,
    pub exp: i64,
}

/// `(n, k) -> (p n + q k + r1, s n + t k + r2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub p: i64,
    pub q: i64,
    pub r1: Rational,
    pub s: i64,
    pub t: i64,
    pub r2: Rational,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap { p: 1, q: 0, r1: Rational::zero(), s: 0, t: 1, r2: Rational::zero() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn apply(&self, n: &Rational, k: &Rational) -> (Rational, Rational) {
        let i = |v: i64| Rational::from_integer(v.into());
        (i(self.p) * n + i(self.q) * k + &self.r1, i(self.s) * n + i(self.t) * k + &self.r2)
    }

    /// Images of `n` and `k` as polynomials.
    pub fn images(&self) -> (Poly2, Poly2) {
        let i = |v: i64| Rational::from_integer(v.into());
        (
            Poly2::linear(self.r1.clone(), i(self.p), i(self.q)),
            Poly2::linear(self.r2.clone(), i(self.s), i(self.t)),
        )
    }
}

/// `prod Gamma(arg)^exp * z^n * y^k * pre(n, k) * (-1)^(n sign_n + k sign_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperTerm {
    pub gammas: BTreeMap<LinForm, i64>,
    pub z: Rational,
    pub y: Rational,
    pub pre: RatFunc,
    pub sign_n: bool,
    pub sign_k: bool,
}

impl HyperTerm {
    pub fn one() -> Self {
        HyperTerm {
            gammas: BTreeMap::new(),
            z: Rational::one(),
            y: Rational::one(),
            pre: RatFunc::one(),
            sign_n: false,
            sign_k: false,
        }
    }

    pub fn add_gamma(&mut self, arg: LinForm, e: i64) {
        if e == 0 {
            return;
        }
        let v = self.gammas.entry(arg.clone()).or_insert(0);
        *v += e;
        if *v == 0 {
            self.gammas.remove(&arg);
        }
    }

    pub fn gamma_factors(&self) -> Vec<GammaFactor> {
        self.gammas.iter().map(|(a, e)| GammaFactor { arg: a.clone(), exp: *e }).collect()
    }

    /// Multiply by another term.
    pub fn mul(&self, o: &HyperTerm) -> HyperTerm {
        let mut t = self.clone();
        for (a, e) in &o.gammas {
            t.add_gamma(a.clone(), *e);
        }
        t.z = &t.z * &o.z;
        t.y = &t.y * &o.y;
        t.pre = t.pre.mul(&o.pre);
        t.sign_n ^= o.sign_n;
        t.sign_k ^= o.sign_k;
        t
    }

    pub fn with_pre(&self, pre: &RatFunc) -> HyperTerm {
        let mut t = self.clone();
        t.pre = t.pre.mul(pre);
        t
    }

    fn geometric(&self, dir: Dir) -> Rational {
        let (b, s) = match dir {
            Dir::N => (&self.z, self.sign_n),
            Dir::K => (&self.y, self.sign_k),
        };
        if s {
            -b.clone()
        } else {
            b.clone()
        }
    }

    /// `T(n+1,k)/T(n,k)` or `T(n,k+1)/T(n,k)` with factored numerator and denominator.
    pub fn shift_quotient_factored(&self, dir: Dir) -> Result<FactoredRat> {
        let mut symbols: BTreeMap<LinForm, i64> = BTreeMap::new();
        let mut put = |l: LinForm, e: i64| {
            let v = symbols.entry(l.clone()).or_insert(0);
            *v += e;
            if *v == 0 {
                symbols.remove(&l);
            }
        };
        for (l, &e) in &self.gammas {
            let d = match dir {
                Dir::N => &l.b,
                Dir::K => &l.c,
            };
            if d.is_zero() {
                continue;
            }
            put(l.plus(d), e);
            put(l.clone(), -e);
        }
        let mut classes: BTreeMap<(Rational, Rational, Rational), Vec<(LinForm, i64)>> = BTreeMap::new();
        for (l, e) in symbols {
            classes.entry(l.class()).or_default().push((l, e));
        }
        let mut num = FactoredPoly::constant(self.geometric(dir));
        let mut den = FactoredPoly::one();
        for (_, members) in classes {
            let total: i64 = members.iter().map(|(_, e)| e).sum();
            if total != 0 {
                let (l, e) = &members[0];
                return Err(Error::NotHypergeometric {
                    direction: dir.var(),
                    symbol: format!("Gamma({l})^{e}"),
                });
            }
            let base = members.iter().map(|(l, _)| l.a.clone()).min().expect("nonempty class");
            for (l, e) in &members {
                let m = (&l.a - &base).to_integer();
                let mut j = BigInt::zero();
                while j < m {
                    let a = &base + Rational::from_integer(j.clone());
                    let (u, lin) = Linear::from_rationals(&a, &l.b, &l.c).expect("non-constant symbol");
                    let f = FactoredPoly::from_linear(lin, e.unsigned_abs() as u32)
                        .mul(&FactoredPoly::constant(rational_pow(&u, e.abs())));
                    if *e > 0 {
                        num = num.mul(&f);
                    } else {
                        den = den.mul(&f);
                    }
                    j += 1;
                }
            }
        }
        let mut q = FactoredRat::new(num, den);
        if !self.pre.is_constant() {
            let (dn, dk) = match dir {
                Dir::N => (Rational::one(), Rational::zero()),
                Dir::K => (Rational::zero(), Rational::one()),
            };
            let p = FactoredRat::from_ratfunc(&self.pre);
            q = q.mul(&p.shift(&dn, &dk)).div(&p);
        }
        Ok(q)
    }

    pub fn shift_quotient(&self, dir: Dir) -> Result<RatFunc> {
        Ok(self.shift_quotient_factored(dir)?.to_ratfunc())
    }

    /// The term composed with `map`.
    pub fn substitute_affine(&self, map: &AffineMap) -> Result<HyperTerm> {
        if !map.r1.is_integer() || !map.r2.is_integer() {
            return Err(Error::UnsupportedMap(format!(
                "offsets {} and {} must be integers so that lengths stay integer valued",
                map.r1, map.r2
            )));
        }
        let i = |v: i64| Rational::from_integer(v.into());
        let mut t = HyperTerm::one();
        for (l, &e) in &self.gammas {
            let a = &l.a + &l.b * &map.r1 + &l.c * &map.r2;
            let b = &l.b * i(map.p) + &l.c * i(map.s);
            let c = &l.b * i(map.q) + &l.c * i(map.t);
            t.add_gamma(LinForm::new(a, b, c), e);
        }
        let zp = |e: i64| rational_pow(&self.z, e);
        let yp = |e: i64| rational_pow(&self.y, e);
        t.z = zp(map.p) * yp(map.s);
        t.y = zp(map.q) * yp(map.t);
        let r1 = map.r1.to_integer();
        let r2 = map.r2.to_integer();
        let r1i: i64 = r1.try_into().map_err(|_| Error::UnsupportedMap("offset too large".into()))?;
        let r2i: i64 = r2.try_into().map_err(|_| Error::UnsupportedMap("offset too large".into()))?;
        let mut c = zp(r1i) * yp(r2i);
        let odd = |v: i64| v.rem_euclid(2) == 1;
        t.sign_n = (self.sign_n && odd(map.p)) ^ (self.sign_k && odd(map.s));
        t.sign_k = (self.sign_n && odd(map.q)) ^ (self.sign_k && odd(map.t));
        if (self.sign_n && odd(r1i)) ^ (self.sign_k && odd(r2i)) {
            c = -c;
        }
        let (nv, kv) = map.images();
        t.pre = self.pre.substitute(&nv, &kv)?.scale(&c);
        Ok(t)
    }

    /// The dual term under `(1)_{-n} -> n(-1)^n/(1)_n`, `(a)_{-n} -> (-1)^n/(1-a)_n`.
    pub fn dualize(&self) -> Result<HyperTerm> {
        let mut t = HyperTerm::one();
        let mut extra_n = 0i64;
        let mut flips = 0i64;
        for (l, &e) in &self.gammas {
            if !l.c.is_zero() {
                return Err(Error::NotDualizable(format!("Gamma({l}) depends on k")));
            }
            if l.b.is_zero() {
                t.add_gamma(l.clone(), e);
                continue;
            }
            if !l.b.is_one() {
                return Err(Error::NotDualizable(format!("Gamma({l}) is not a plain (a)_n factor")));
            }
            let a = &l.a;
            if !a.is_positive() || *a > Rational::one() {
                return Err(Error::NotDualizable(format!("base {a} outside (0, 1]")));
            }
            let one_minus = Rational::one() - a;
            // (a)_n^e = Gamma(a+n)^e Gamma(a)^-e; the Gamma(a)^-e part is already in the multiset
            t.add_gamma(LinForm::constant(a.clone()), e);
            if a.is_one() {
                extra_n += e;
                t.add_gamma(LinForm::constant(Rational::one()), e);
                t.add_gamma(LinForm::new(Rational::one(), Rational::one(), Rational::zero()), -e);
            } else {
                t.add_gamma(LinForm::constant(one_minus.clone()), e);
                t.add_gamma(LinForm::new(one_minus, Rational::one(), Rational::zero()), -e);
            }
            flips += e;
        }
        t.z = self.z.recip();
        t.y = self.y.clone();
        t.sign_n = self.sign_n ^ (flips.rem_euclid(2) == 1);
        t.sign_k = self.sign_k;
        let neg_n = Poly2::linear(Rational::zero(), -Rational::one(), Rational::zero());
        let mut pre = self.pre.substitute(&neg_n, &Poly2::k())?;
        let nn = RatFunc::from_poly(Poly2::n());
        pre = pre.mul(&nn.pow(extra_n as i32)?);
        t.pre = pre;
        Ok(t)
    }

    /// Rational `k0` at which a numerator `(a + b k)_n` becomes `(0)_n`.
    pub fn terminating_points(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for (l, &e) in &self.gammas {
            if !l.b.is_zero() || l.c.is_zero() || e >= 0 {
                continue;
            }
            let partner = LinForm::new(l.a.clone(), Rational::one(), l.c.clone());
            if self.gammas.get(&partner).is_some_and(|&pe| pe > 0) {
                let k0 = -&l.a / &l.c;
                if !out.contains(&k0) {
                    out.push(k0);
                }
            }
        }
        out.sort();
        out
    }

    /// Specialize `k` to a rational value; the result does not depend on `k`
    /// except through the constant factor `y^k0`, which is dropped.
    pub fn specialize_k_dropping_y(&self, k0: &Rational) -> HyperTerm {
        let mut t = HyperTerm::one();
        for (l, &e) in &self.gammas {
            t.add_gamma(LinForm::new(&l.a + &l.c * k0, l.b.clone(), Rational::zero()), e);
        }
        t.z = self.z.clone();
        t.sign_n = self.sign_n;
        t.pre = self
            .pre
            .substitute(&Poly2::n(), &Poly2::constant(k0.clone()))
            .unwrap_or_else(|_| RatFunc::zero());
        t
    }

    /// Swap the roles of `n` and `k`.
    pub fn swap_vars(&self) -> HyperTerm {
        let mut t = HyperTerm::one();
        for (l, &e) in &self.gammas {
            t.add_gamma(LinForm::new(l.a.clone(), l.c.clone(), l.b.clone()), e);
        }
        t.z = self.y.clone();
        t.y = self.z.clone();
        t.sign_n = self.sign_k;
        t.sign_k = self.sign_n;
        t.pre = self.pre.swap_vars();
        t
    }
}

/// Build the canonical term `prod (arg)_dir^exp * z^n * y^k * pre`.
pub fn term_from_poch_spec(factors: &[PochFactor], z: Rational, y: Rational, pre: RatFunc) -> Result<HyperTerm> {
    if z.is_zero() || y.is_zero() {
        return Err(Error::InvalidFactor("geometric bases must be nonzero".into()));
    }
    let mut t = HyperTerm::one();
    for f in factors {
        match f.dir {
            Dir::N => {
                if !f.arg.b.is_zero() {
                    return Err(Error::InvalidFactor(format!("base {} of an n-factor depends on n", f.arg)));
                }
                t.add_gamma(f.arg.plus(&Rational::zero()).with_b(Rational::one()), f.exp);
            }
            Dir::K => {
                if !f.arg.is_constant() {
                    return Err(Error::InvalidFactor(format!("base {} of a k-factor is not constant", f.arg)));
                }
                t.add_gamma(LinForm::new(f.arg.a.clone(), Rational::zero(), Rational::one()), f.exp);
            }
        }
        t.add_gamma(f.arg.clone(), -f.exp);
    }
    t.z = z;
    t.y = y;
    t.pre = pre;
    Ok(t)
}

impl LinForm {
    fn with_b(mut self, b: Rational) -> Self {
        self.b = b;
        self
    }
}

/// Reads back `(a + c k)_n` and `(c)_k` factors when the term has that shape.
pub fn poch_factors(t: &HyperTerm) -> Option<Vec<PochFactor>> {
    let mut rest = t.gammas.clone();
    let mut out = Vec::new();
    fn take(rest: &mut BTreeMap<LinForm, i64>, l: &LinForm, e: i64) {
        let v = rest.entry(l.clone()).or_insert(0);
        *v -= e;
        if *v == 0 {
            rest.remove(l);
        }
    }
    for (l, e) in t.gammas.iter().filter(|(l, _)| l.b.is_one()) {
        let base = LinForm::new(l.a.clone(), Rational::zero(), l.c.clone());
        take(&mut rest, l, *e);
        take(&mut rest, &base, -*e);
        out.push(PochFactor { arg: base, dir: Dir::N, exp: *e });
    }
    let ks: Vec<(LinForm, i64)> = rest.iter().filter(|(l, _)| l.b.is_zero() && l.c.is_one()).map(|(l, e)| (l.clone(), *e)).collect();
    for (l, e) in ks {
        let base = LinForm::constant(l.a.clone());
        take(&mut rest, &l, e);
        take(&mut rest, &base, -e);
        out.push(PochFactor { arg: base, dir: Dir::K, exp: e });
    }
    if rest.is_empty() {
        Some(out)
    } else {
        None
    }
}

pub(crate) fn is_perfect_power(r: &Rational, q: u32) -> Option<Rational> {
    fn root(v: &BigInt, q: u32) -> Option<BigInt> {
        if v.is_negative() {
            if q % 2 == 0 {
                return None;
            }
            return root(&-v, q).map(|x| -x);
        }
        let x = v.nth_root(q);
        if num_traits::pow(x.clone(), q as usize) == *v {
            Some(x)
        } else {
            None
        }
    }
    Some(Rational::new(root(r.numer(), q)?, root(r.denom(), q)?))
}

/// `r^e` for rational `e`, when the result is rational.
pub fn rational_power(r: &Rational, e: &Rational) -> Option<Rational> {
    let q: u32 = e.denom().try_into().ok()?;
    let p: i64 = e.numer().try_into().ok()?;
    let base = if q == 1 { r.clone() } else { is_perfect_power(r, q)? };
    if base.is_zero() && p < 0 {
        return None;
    }
    Some(rational_pow(&base, p))
}

#[cfg(test)]
mod tests;
