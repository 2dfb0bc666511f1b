//! Rational functions in `n` and `k` over the rationals, kept in canonical form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{denominator_lcm, integer_content, poly_div_exact, poly_gcd, BiPoly, Rational};
use crate::error::{Error, Result};

type Poly2 = BiPoly<Rational>;

/// `num / den` with `gcd(num, den) = 1`, integer coefficients whose joint
/// content is 1, and a positive graded-lexicographic leading coefficient in `den`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly2,
    den: Poly2,
}

impl RatFunc {
    pub fn new(num: Poly2, den: Poly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize_parts(num, den))
    }

    pub fn from_poly(p: Poly2) -> Self {
        Self::normalize_parts(p, Poly2::one())
    }

    pub fn constant(r: Rational) -> Self {
        Self::from_poly(Poly2::constant(r))
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly2::zero(), den: Poly2::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly2::one(), den: Poly2::one() }
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    fn normalize_parts(num: Poly2, den: Poly2) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (poly_div_exact(&num, &g).expect("gcd divides"), poly_div_exact(&den, &g).expect("gcd divides"))
        };
        let l = denominator_lcm(&num).lcm(&denominator_lcm(&den));
        let lr = Rational::from_integer(l);
        num = num.scale(&lr);
        den = den.scale(&lr);
        let mut c = integer_content(&num).gcd(&integer_content(&den));
        let (_, lc) = den.leading_term().expect("nonzero denominator");
        if lc.is_negative() {
            c = -c;
        }
        let inv = Rational::new(BigInt::one(), c);
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    /// Re-run canonicalization; a fixed point for values built by this type.
    pub fn normalize(&self) -> Self {
        Self::normalize_parts(self.num.clone(), self.den.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::normalize_parts(&self.num + &o.num, self.den.clone());
        }
        Self::normalize_parts(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::normalize_parts(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize_parts(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::normalize_parts(self.num.scale(r), self.den.clone())
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e >= 0 {
            Ok(RatFunc { num: self.num.pow(e as u32), den: self.den.pow(e as u32) }.normalize())
        } else {
            Self::one().div(&self.pow(-e)?)
        }
    }

    /// Value at a rational point, `None` where the denominator vanishes.
    pub fn eval(&self, n: &Rational, k: &Rational) -> Option<Rational> {
        let d = self.den.eval(n, k);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(n, k) / d)
    }

    /// `f(n + dn, k + dk)`.
    pub fn shift(&self, dn: &Rational, dk: &Rational) -> Self {
        Self::normalize_parts(self.num.shift(dn, dk), self.den.shift(dn, dk))
    }

    /// `f(n_val, k_val)` for polynomial arguments.
    pub fn substitute(&self, n_val: &Poly2, k_val: &Poly2) -> Result<Self> {
        Self::new(self.num.substitute(n_val, k_val), self.den.substitute(n_val, k_val))
    }

    /// Exchange the roles of `n` and `k`.
    pub fn swap_vars(&self) -> Self {
        let sw = |p: &Poly2| Poly2::from_terms(p.terms().map(|(e, c)| ((e.1, e.0), c.clone())));
        Self::normalize_parts(sw(&self.num), sw(&self.den))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly2| if p.len() > 1 { format!("({p})") } else { format!("{p}") };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Poly2 {
    fn is_one_poly(&self) -> bool {
        self.len() == 1 && self.coeff(0, 0).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn n() -> Poly2 {
        Poly2::n()
    }
    fn k() -> Poly2 {
        Poly2::k()
    }
    fn c(v: i64) -> Poly2 {
        Poly2::constant(int(v))
    }

    #[test]
    fn cancels_common_factor() {
        let num = &(&(&n() * &n()) * &k()) + &(&n() * &k());
        let den = &n() * &k();
        let f = RatFunc::new(num, den).unwrap();
        assert_eq!(f.num(), &(&n() + &c(1)));
        assert_eq!(f.den(), &c(1));
    }

    #[test]
    fn content_normalization() {
        let f = RatFunc::new((&c(2) * &n()).scale(&rat(1, 1)), c(4)).unwrap();
        assert_eq!(f.num(), &n());
        assert_eq!(f.den(), &c(2));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFunc::new(n(), Poly2::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn negative_leading_denominator_flipped() {
        let f = RatFunc::new(c(1), -&n()).unwrap();
        assert_eq!(f.num(), &c(-1));
        assert_eq!(f.den(), &n());
    }

    fn small_poly() -> impl Strategy<Value = Poly2> {
        proptest::collection::vec(((0u32..3, 0u32..3), -5i64..6), 1..5)
            .prop_map(|v| Poly2::from_terms(v.into_iter().map(|(e, c)| (e, int(c)))))
    }

    proptest! {
        #[test]
        fn normalize_preserves_values(a in small_poly(), b in small_poly(), g in small_poly(),
                                      n0 in -7i64..8, k0 in -7i64..8, d in 1i64..5) {
            let den = &b * &g;
            prop_assume!(!den.is_zero());
            let num = &a * &g;
            let f = RatFunc::new(num.clone(), den.clone()).unwrap();
            let (x, y) = (rat(n0, d), rat(k0, d + 1));
            let dv = den.eval(&x, &y);
            prop_assume!(!dv.is_zero());
            prop_assert_eq!(f.eval(&x, &y), Some(num.eval(&x, &y) / dv));
            prop_assert!(poly_gcd(f.num(), f.den()).is_constant() || f.is_zero());
            prop_assert_eq!(f.normalize(), f);
        }

        #[test]
        fn arithmetic_stays_canonical(a in small_poly(), b in small_poly(), c2 in small_poly()) {
            prop_assume!(!b.is_zero() && !c2.is_zero());
            let f = RatFunc::new(a.clone(), b.clone()).unwrap();
            let g = RatFunc::new(b, c2).unwrap();
            for h in [f.add(&g), f.mul(&g), f.sub(&g)] {
                prop_assert_eq!(h.normalize(), h.clone());
                prop_assert!(poly_gcd(h.num(), h.den()).is_constant() || h.is_zero());
            }
        }
    }
}
