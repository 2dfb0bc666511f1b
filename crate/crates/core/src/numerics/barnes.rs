//! Mellin-Barnes integrals
//! `(1/2 pi i) int Gamma(-s) T(s) w(s) base^s ds` over `Re s = start - delta`.
//!
//! Poles of `Gamma(-s)` at `s = start, start + 1, ...` lie to the right of the
//! contour, poles of the numerator Gammas of `T` to the left. Closing to the
//! right gives `sum_{n >= start} T(n) w(n) (-base)^n / n!` whenever that sum
//! converges; otherwise the integral is its analytic continuation.

use num_complex::Complex;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::quad::integrate_half_line;
use super::real::{cexp, digits_to_bits, BigFloat, Real};
use super::series::SeriesSpec;
use crate::exact::{RatFunc, Rational};
use crate::hyperterm::eval::log_gamma_at;
use crate::hyperterm::{HyperTerm, LinForm};
use crate::{Error, Poly2, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct BarnesSpec {
    /// Gamma factors in `s` (written as `n`), free of `k`.
    pub term: HyperTerm,
    pub poly: RatFunc,
    /// `-z`, must be positive.
    pub base: Rational,
    pub start: i64,
    /// Contour at `Re s = start - delta`.
    pub delta: Rational,
}

#[derive(Clone, Debug)]
pub struct BarnesValue {
    pub value: BigFloat,
    pub error_log10: f64,
    pub height: f64,
    pub panels: usize,
}

impl BarnesSpec {
    /// Spec with the default contour offset.
    pub fn new(term: HyperTerm, poly: RatFunc, base: Rational, start: i64) -> Result<Self> {
        let mut s = BarnesSpec { term, poly, base, start, delta: Rational::zero() };
        s.delta = s.default_delta();
        s.check()?;
        Ok(s)
    }

    /// The continuation of `sum_{n >= start} t(n, k0) w(n, k0)`.
    pub fn from_series(series: &SeriesSpec, k0: &Rational) -> Result<Self> {
        let mut term = series.term.specialize_k_dropping_y(k0);
        if !series.term.y.is_one() && !k0.is_zero() {
            return Err(Error::InvalidFactor("y^k must be 1 at the specialization point".into()));
        }
        let z = if term.sign_n { -term.z.clone() } else { term.z.clone() };
        term.z = Rational::one();
        term.sign_n = false;
        term.add_gamma(LinForm::new(Rational::one(), Rational::one(), Rational::zero()), 1);
        let poly = series.weight.substitute(&Poly2::n(), &Poly2::constant(k0.clone()))?;
        BarnesSpec::new(term, poly, -z, series.start)
    }

    fn contour(&self) -> Rational {
        Rational::from_integer(self.start.into()) - &self.delta
    }

    fn s_gammas(&self) -> impl Iterator<Item = (&LinForm, i64)> {
        self.term.gammas.iter().filter(|(l, _)| !l.b.is_zero()).map(|(l, &e)| (l, e))
    }

    /// Half the distance from `start` to the nearest numerator pole, at most 1/2.
    pub fn default_delta(&self) -> Rational {
        let st = Rational::from_integer(self.start.into());
        let mut best = Rational::one();
        for (l, e) in self.s_gammas() {
            if e > 0 && l.b.is_positive() {
                let gap = (&l.a + &l.b * &st) / &l.b;
                if gap.is_positive() && gap < best {
                    best = gap;
                }
            }
        }
        best / Rational::from_integer(2.into())
    }

    /// Net exponential decay rate `d` in `exp(-d pi |t| / 2)`.
    pub fn decay(&self) -> Rational {
        self.s_gammas().fold(Rational::one(), |acc, (l, e)| acc + l.b.abs() * Rational::from_integer(e.into()))
    }

    pub fn check(&self) -> Result<()> {
        if self.term.gammas.keys().any(|l| !l.c.is_zero()) {
            return Err(Error::InvalidFactor("Barnes integrand depends on k".into()));
        }
        if !self.base.is_positive() {
            return Err(Error::InvalidFactor(format!("Barnes base {} must be positive", self.base)));
        }
        let d = self.decay();
        if !d.is_positive() {
            return Err(Error::NoDecay(d.floor().to_integer().to_i64().unwrap_or(i64::MIN)));
        }
        if !self.delta.is_positive() || self.delta >= Rational::one() {
            return Err(Error::ContourPinch(format!("offset {} must lie in (0, 1)", self.delta)));
        }
        let c = self.contour();
        for (l, e) in self.s_gammas() {
            if e > 0 && !(&l.a + &l.b * &c).is_positive() {
                return Err(Error::ContourPinch(format!("poles of Gamma({l}) cross Re s = {c}")));
            }
        }
        Ok(())
    }
}

struct Integrand {
    bits: usize,
    c: BigFloat,
    factors: Vec<(BigFloat, BigFloat, i64)>,
    constant: Complex<BigFloat>,
    ln_base: BigFloat,
    poly: RatFunc,
}

impl Integrand {
    fn new(spec: &BarnesSpec, bits: usize) -> Result<Self> {
        let lg = log_gamma_at(bits);
        let zero = || BigFloat::from_i64(0, bits);
        let mut constant = Complex::new(zero(), zero());
        let mut factors = Vec::new();
        for (l, &e) in &spec.term.gammas {
            if l.b.is_zero() {
                let v = lg.eval_mod_2pi(&Complex::new(BigFloat::from_rational(&l.a, bits), zero()))?;
                constant = constant + v * Complex::new(BigFloat::from_i64(e, bits), zero());
            } else {
                factors.push((BigFloat::from_rational(&l.a, bits), BigFloat::from_rational(&l.b, bits), e));
            }
        }
        let z = if spec.term.sign_n { -spec.term.z.clone() } else { spec.term.z.clone() };
        let base = &spec.base * &z;
        if !base.is_positive() {
            return Err(Error::InvalidFactor(format!("Barnes base {base} must be positive")));
        }
        Ok(Integrand {
            bits,
            c: BigFloat::from_rational(&spec.contour(), bits),
            factors,
            constant,
            ln_base: BigFloat::from_rational(&base, bits).ln(),
            poly: spec.poly.mul(&spec.term.pre),
        })
    }

    /// `Re I(c + i t)`.
    fn eval(&self, t: &BigFloat) -> Result<BigFloat> {
        let b = self.bits;
        let lg = log_gamma_at(b);
        let re = |x: BigFloat| Complex::new(x, BigFloat::from_i64(0, b));
        let s = Complex::new(self.c.clone(), t.set_precision(b));
        let mut acc = self.constant.clone() + lg.eval_mod_2pi(&-s.clone())? + s.clone() * re(self.ln_base.clone());
        for (a, bb, e) in &self.factors {
            let x = re(a.clone()) + s.clone() * re(bb.clone());
            acc = acc + lg.eval_mod_2pi(&x)? * re(BigFloat::from_i64(*e, b));
        }
        let mut v = cexp(&acc);
        if self.poly != RatFunc::one() {
            let conv = |r: &Rational| re(BigFloat::from_rational(r, b));
            let k0 = re(BigFloat::from_i64(0, b));
            let num = self.poly.num().eval_with(&s, &k0, conv);
            let den = self.poly.den().eval_with(&s, &k0, conv);
            v = v * num / den;
        }
        Ok(v.re)
    }
}

/// The integral to about `digits` significant digits.
pub fn barnes_integral(spec: &BarnesSpec, digits: u32) -> Result<BarnesValue> {
    spec.check()?;
    let bits = digits_to_bits(digits + 20);
    let f = Integrand::new(spec, bits)?;
    let g = |t: &BigFloat| f.eval(t);
    let q = integrate_half_line(&g, 1.0, digits + 5, bits)?;
    Ok(BarnesValue {
        value: q.value / BigFloat::pi(bits),
        error_log10: q.error_log10 - std::f64::consts::PI.log10(),
        height: q.height,
        panels: q.panels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::hyperterm::{term_from_poch_spec, Dir, KPoint, PochFactor};
    use crate::numerics::series::{digits_matched, log10_abs, sum_series};

    fn poch(a: Rational, e: i64) -> PochFactor {
        PochFactor { arg: LinForm::constant(a), dir: Dir::N, exp: e }
    }

    #[test]
    fn gauss_hypergeometric_matches_sum() {
        // sum (1/2)_n^2/(1)_n^2 (-1/4)^n
        let t = term_from_poch_spec(&[poch(rat(1, 2), 2), poch(int(1), -2)], rat(-1, 4), int(1), RatFunc::one()).unwrap();
        let series = SeriesSpec::new(t, RatFunc::one());
        let spec = BarnesSpec::from_series(&series, &int(0)).unwrap();
        assert_eq!(spec.delta, rat(1, 4));
        let b = barnes_integral(&spec, 30).unwrap();
        let s = sum_series(&series, &KPoint::Rational(int(0)), 40).unwrap();
        let bc = Complex::new(b.value, BigFloat::from_i64(0, 10));
        assert!(digits_matched(&bc, &s.value) >= 28.0, "{}", digits_matched(&bc, &s.value));
    }

    fn pi_power(m: u32, bits: usize) -> BigFloat {
        let pi = BigFloat::pi(bits);
        (0..m).fold(BigFloat::from_i64(1, bits), |a, _| a * pi.clone())
    }

    fn fifth_term() -> HyperTerm {
        let mut f = vec![poch(rat(1, 2), 5), poch(int(1), -8)];
        f.extend((1..5).map(|j| poch(rat(j, 5), 1)));
        term_from_poch_spec(&f, int(1), int(1), RatFunc::one()).unwrap()
    }

    #[test]
    fn quartic_integral_is_1280_over_pi4() {
        let poly = RatFunc::from_poly(crate::exact::parse_poly("5532n^4+5600n^3+2275n^2+425n+30").unwrap());
        let spec = BarnesSpec::new(fifth_term(), poly, rat(3125, 1024), 0).unwrap();
        assert_eq!(spec.delta, rat(1, 10));
        let bits = digits_to_bits(40);
        let v = barnes_integral(&spec, 30).unwrap().value;
        let want = BigFloat::from_i64(1280, bits) / pi_power(4, bits);
        assert!(log10_abs(&(v - want.clone())) - log10_abs(&want) < -20.0);
    }

    #[test]
    fn dual_of_quadratic_series_continues_to_zeta3_multiple() {
        let t = term_from_poch_spec(&[poch(rat(1, 2), 5), poch(int(1), -5)], rat(-1, 1024), int(1), RatFunc::one()).unwrap();
        let w = RatFunc::from_poly(crate::exact::parse_poly("820n^2+180n+13").unwrap());
        let dual = SeriesSpec::new(t, w).dual().unwrap();
        assert!(matches!(sum_series(&dual, &KPoint::Rational(int(0)), 20), Err(Error::Divergent { .. })));
        let spec = BarnesSpec::from_series(&dual, &int(0)).unwrap();
        assert_eq!((spec.start, spec.delta.clone()), (1, rat(1, 2)));
        let v = barnes_integral(&spec, 30).unwrap().value;
        let z3 = crate::numerics::dirichlet_l(1, 3, 40).unwrap();
        let r = crate::numerics::recognize_rational_multiple(&v, &z3, 100, 30);
        assert_eq!(r, Some(int(-114688)));
    }

    #[test]
    fn no_decay_is_rejected() {
        // Gamma(-s) Gamma(1/2+s)^2 / Gamma(1+s)^4 decays; the reverse does not
        let t = term_from_poch_spec(&[poch(rat(1, 2), -3), poch(int(1), 1)], int(1), int(1), RatFunc::one()).unwrap();
        let err = BarnesSpec::new(t, RatFunc::one(), int(2), 0).unwrap_err();
        assert!(matches!(err, Error::NoDecay(_)));
    }

    #[test]
    fn pinched_contour_is_rejected() {
        let t = term_from_poch_spec(&[poch(rat(1, 2), 2), poch(int(1), -1)], int(1), int(1), RatFunc::one()).unwrap();
        let mut spec = BarnesSpec::new(t, RatFunc::one(), rat(1, 4), 0).unwrap();
        spec.delta = rat(3, 4);
        assert!(matches!(barnes_integral(&spec, 10), Err(Error::ContourPinch(_))));
    }

    #[test]
    fn default_offset() {
        let t = term_from_poch_spec(&[poch(rat(1, 5), 1), poch(int(1), -1)], int(1), int(1), RatFunc::one()).unwrap();
        let spec = BarnesSpec::new(t, RatFunc::one(), int(3), 0).unwrap();
        assert_eq!(spec.delta, rat(1, 10));
        let v = barnes_integral(&spec, 20).unwrap().value;
        assert!(log10_abs(&v).is_finite());
    }
}
