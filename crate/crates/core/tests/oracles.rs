//! Numerical values checked against frozen references computed with mpmath
//! (nsum, hyp2f1, loggamma, zeta, catalan at 70 digits).

use num_traits::Zero;
use proptest::prelude::*;
use wz_core::exact::{int, parse_ratfunc, rat, RatFunc};
use wz_core::hyperterm::{term_from_poch_spec, Dir, KPoint, LinForm, PochFactor};
use wz_core::numerics::barnes::{barnes_integral, BarnesSpec};
use wz_core::numerics::series::{sum_series_direct, sum_series_naive};
use wz_core::numerics::{digits_matched, digits_to_bits, dirichlet_l, log_gamma_complex, sum_series, BigFloat, SeriesSpec};
use wz_core::wz::{verify_pair, WZPair};
use wz_core::{Complex, Rational};

const RAMANUJAN_16: &str = "5.092958178940650744604280427920459585102708663694606359925355009884698";
const HYP_QUARTER: &str = "0.945006330929758054004439797262934872726498701142098375166122829361027";
const LOG_GAMMA_RE: &str = "-2.336559810201500915676426795173990500501373609774016894114703395768427";
const LOG_GAMMA_IM: &str = "-0.8614313391401075240040146042510722989187437530097379918580170044936282";
const CATALAN: &str = "0.915965594177219015054603514932384110774149374281672134266498119621763";
const ZETA_3: &str = "1.202056903159594285399738161511449990764986292340498881792271555341838";

fn dec(s: &str) -> BigFloat {
    let (ip, fp) = s.split_once('.').unwrap();
    let r = Rational::new(format!("{ip}{fp}").parse().unwrap(), num_bigint::BigInt::from(10).pow(fp.len() as u32));
    BigFloat::from_rational(&r, digits_to_bits(80))
}

fn re(v: BigFloat) -> Complex {
    let b = v.precision();
    Complex::new(v, BigFloat::from_i64(0, b))
}

fn pn(a: Rational, c: Rational, e: i64) -> PochFactor {
    PochFactor { arg: LinForm::new(a, Rational::zero(), c), dir: Dir::N, exp: e }
}

fn series(factors: &[PochFactor], z: Rational, poly: &str) -> SeriesSpec {
    let t = term_from_poch_spec(factors, z, int(1), RatFunc::one()).unwrap();
    SeriesSpec::new(t, parse_ratfunc(poly).unwrap())
}

fn ramanujan16() -> SeriesSpec {
    series(&[pn(rat(1, 2), int(0), 3), pn(int(1), int(0), -3)], rat(1, 64), "42n + 5")
}

/// `2F1(1/2, 1/2; 1; -1/4)`.
fn hyp_quarter() -> SeriesSpec {
    series(&[pn(rat(1, 2), int(0), 2), pn(int(1), int(0), -2)], rat(-1, 4), "1")
}

#[test]
fn ramanujan_series_on_three_routes() {
    let s = ramanujan16();
    let k = KPoint::Rational(Rational::zero());
    let want = re(dec(RAMANUJAN_16));
    for v in [sum_series(&s, &k, 60), sum_series_direct(&s, &k, 60), sum_series_naive(&s, &k, 60)] {
        let dm = digits_matched(&v.unwrap().value, &want);
        assert!(dm > 58.0, "{dm}");
    }
}

#[test]
fn hypergeometric_sum_and_barnes_integral() {
    let s = hyp_quarter();
    let want = re(dec(HYP_QUARTER));
    let v = sum_series(&s, &KPoint::Rational(Rational::zero()), 50).unwrap().value;
    assert!(digits_matched(&v, &want) > 48.0);
    let b = barnes_integral(&BarnesSpec::from_series(&s, &Rational::zero()).unwrap(), 25).unwrap().value;
    assert!(digits_matched(&re(b), &want) > 23.0);
}

#[test]
fn log_gamma_off_the_axis() {
    let bits = digits_to_bits(60);
    let z = Complex::new(BigFloat::from_rational(&rat(1, 3), bits), BigFloat::from_i64(2, bits));
    let v = log_gamma_complex(&z, 60).unwrap();
    let want = Complex::new(dec(LOG_GAMMA_RE), dec(LOG_GAMMA_IM));
    assert!(digits_matched(&v, &want) > 58.0);
}

#[test]
fn l_values() {
    assert!(digits_matched(&re(dirichlet_l(-4, 2, 60).unwrap()), &re(dec(CATALAN))) > 58.0);
    assert!(digits_matched(&re(dirichlet_l(1, 3, 60).unwrap()), &re(dec(ZETA_3))) > 58.0);
}

fn zeta2_pair() -> WZPair {
    let pk = |a: Rational, e: i64| PochFactor { arg: LinForm::constant(a), dir: Dir::K, exp: e };
    let u = term_from_poch_spec(
        &[
            pn(int(1), int(0), 1),
            pn(int(1), int(1), 1),
            pn(int(1), int(2), 1),
            pn(int(1), rat(1, 2), 1),
            pn(rat(1, 2), rat(1, 2), 1),
            pn(rat(1, 2), int(0), -1),
            pn(rat(1, 2), int(1), -1),
            pn(int(1), rat(2, 3), -1),
            pn(rat(1, 3), rat(2, 3), -1),
            pn(rat(2, 3), rat(2, 3), -1),
            pk(int(1), 2),
            pk(rat(1, 2), -2),
        ],
        int(1),
        int(1),
        RatFunc::one(),
    )
    .unwrap();
    let s = parse_ratfunc("-n(4k+4n+3)/(2(2k+1)(2k+2n+1)(2k+3n+1)(2k+3n+2))").unwrap();
    let r = parse_ratfunc("(22n^3+(34k+49)n^2+(12k^2+48k+35)n+8(k+1)^2)/(2(1+2n)(3+2k+3n)(2n+2k+1)(3n+2k+1)(3n+2k+2))").unwrap();
    WZPair::new("zeta2", u, s, Some(r), rat(16, 27), int(1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The symbolic check and pointwise evaluation of the WZ equation agree.
    #[test]
    fn wz_equation_holds_pointwise(n in 0i64..25, k in 0i64..25) {
        let p = zeta2_pair();
        prop_assert!(verify_pair(&p).unwrap().verified);
        let (f, g) = (p.f_term(), p.g_term().unwrap());
        let kp = |j: i64| KPoint::Rational(int(j));
        let bits = digits_to_bits(40);
        let lhs = f.eval_numeric(n + 1, &kp(k), bits).unwrap() - f.eval_numeric(n, &kp(k), bits).unwrap();
        let rhs = g.eval_numeric(n, &kp(k + 1), bits).unwrap() - g.eval_numeric(n, &kp(k), bits).unwrap();
        let scale = g.eval_numeric(n, &kp(k), bits).unwrap();
        let d = digits_matched(&(lhs - rhs + scale.clone()), &scale);
        prop_assert!(d > 35.0, "n = {}, k = {}: {}", n, k, d);
    }
}
