use super::*;
use crate::exact::{int, rat};
use proptest::prelude::*;

fn pn(a: Rational, c: Rational, e: i64) -> PochFactor {
    PochFactor { arg: LinForm::new(a, Rational::zero(), c), dir: Dir::N, exp: e }
}

fn pk(a: Rational, e: i64) -> PochFactor {
    PochFactor { arg: LinForm::constant(a), dir: Dir::K, exp: e }
}

fn cullen_factors() -> Vec<PochFactor> {
    vec![
        pn(rat(1, 2), int(0), 5),
        pn(rat(1, 2), int(1), 5),
        pn(rat(1, 2), int(-1), 1),
        pn(int(1), rat(1, 4), 1),
        pn(rat(1, 4), rat(1, 4), 1),
        pn(rat(1, 2), rat(1, 4), 1),
        pn(rat(3, 4), rat(1, 4), 1),
        pn(int(1), int(0), -5),
        pn(int(1), rat(1, 2), -5),
        pn(rat(1, 2), rat(1, 2), -5),
        pk(rat(1, 2), 4),
        pk(int(1), -4),
    ]
}

fn cullen() -> HyperTerm {
    term_from_poch_spec(&cullen_factors(), rat(1, 4096), int(1), RatFunc::one()).unwrap()
}

/// Direct product `x (x+1) ... (x+m-1)`.
fn poch(x: &Rational, m: i64) -> Rational {
    (0..m).fold(Rational::one(), |acc, j| acc * (x + int(j)))
}

/// Oracle: evaluate a factor list straight from the Pochhammer definition.
fn oracle(factors: &[PochFactor], z: &Rational, y: &Rational, n: i64, k: i64) -> Rational {
    let mut v = rational_pow(z, n) * rational_pow(y, k);
    for f in factors {
        let x = f.arg.eval(&int(n), &int(k));
        let len = match f.dir {
            Dir::N => n,
            Dir::K => k,
        };
        v *= rational_pow(&poch(&x, len), f.exp);
    }
    v
}

#[test]
fn ramanujan_term() {
    let t = term_from_poch_spec(&[pn(rat(1, 2), int(0), 3)], rat(1, 64), int(1), RatFunc::one()).unwrap();
    assert_eq!(t.gammas.len(), 2);
    assert_eq!(t.eval_exact(&int(2), &int(0)).unwrap(), Some(rat(27, 64) / int(64 * 64)));
}

#[test]
fn empty_is_one() {
    let t = term_from_poch_spec(&[], int(1), int(1), RatFunc::one()).unwrap();
    assert_eq!(t, HyperTerm::one());
    assert_eq!(t.eval_exact(&int(3), &int(5)).unwrap(), Some(int(1)));
}

#[test]
fn cullen_value_at_one_zero() {
    let t = cullen();
    let want = oracle(&cullen_factors(), &rat(1, 4096), &int(1), 1, 0);
    assert_eq!(t.eval_exact(&int(1), &int(0)).unwrap(), Some(want));
}

#[test]
fn k_factor_must_be_constant() {
    let bad = PochFactor { arg: LinForm::new(int(1), int(0), int(1)), dir: Dir::K, exp: 1 };
    assert!(matches!(term_from_poch_spec(&[bad], int(1), int(1), RatFunc::one()), Err(Error::InvalidFactor(_))));
}

#[test]
fn quotient_of_half_poch() {
    let t = term_from_poch_spec(&[pn(rat(1, 2), int(0), 1)], rat(3, 7), int(1), RatFunc::one()).unwrap();
    let q = t.shift_quotient(Dir::N).unwrap();
    let want = RatFunc::from_poly(Poly2::linear(rat(1, 2), int(1), int(0)).scale(&rat(3, 7)));
    assert_eq!(q, want);
}

#[test]
fn gauss_multiplication_quotient() {
    let f = vec![
        pn(int(1), rat(1, 4), 1),
        pn(rat(1, 4), rat(1, 4), 1),
        pn(rat(1, 2), rat(1, 4), 1),
        pn(rat(3, 4), rat(1, 4), 1),
    ];
    let t = term_from_poch_spec(&f, int(1), int(1), RatFunc::one()).unwrap();
    let q = t.shift_quotient(Dir::K).unwrap();
    let want = RatFunc::new(Poly2::linear(int(1), int(4), int(1)), Poly2::linear(int(1), int(0), int(1))).unwrap();
    assert_eq!(q, want);
    let (n, k) = (2, 3);
    let direct = oracle(&f, &int(1), &int(1), n, k + 1) / oracle(&f, &int(1), &int(1), n, k);
    assert_eq!(q.eval(&int(n), &int(k)), Some(direct));
}

#[test]
fn unmatched_offset_is_not_hypergeometric() {
    let t = term_from_poch_spec(&[pn(rat(1, 3), rat(1, 2), 1)], int(1), int(1), RatFunc::one()).unwrap();
    assert!(matches!(t.shift_quotient(Dir::K), Err(Error::NotHypergeometric { direction: 'k', .. })));
}

#[test]
fn cullen_terminates_at_half() {
    assert!(cullen().terminating_points().contains(&rat(1, 2)));
}

#[test]
fn positive_bases_terminate_at_negative_points() {
    let t = term_from_poch_spec(&[pn(int(2), int(3), 1), pn(int(1), int(1), -1)], int(1), int(1), RatFunc::one())
        .unwrap();
    assert_eq!(t.terminating_points(), vec![rat(-2, 3)]);
}

#[test]
fn zero_poch_vanishes_past_zero() {
    let t = cullen();
    assert_eq!(t.eval_exact(&int(3), &rat(1, 2)).unwrap(), Some(int(0)));
    assert_ne!(t.eval_exact(&int(0), &rat(1, 2)).unwrap(), Some(int(0)));
}

#[test]
fn numeric_matches_exact() {
    let t = term_from_poch_spec(&[pn(rat(1, 2), int(0), 3)], int(1), int(1), RatFunc::one()).unwrap();
    let v = t.eval_numeric(2, &KPoint::Rational(int(0)), 128).unwrap();
    assert_eq!(v.re.to_rational(), Some(rat(27, 64)));
    let one = term_from_poch_spec(&[pn(int(1), int(0), 1)], int(1), int(1), RatFunc::one()).unwrap();
    assert_eq!(one.eval_exact(&int(0), &int(0)).unwrap(), Some(int(1)));
}

#[test]
fn numeric_gamma_at_half_integer_k() {
    // (1/2)_k^4 / (1)_k^4 at k = 1/2 is 1/Gamma(1/2)^4 Gamma(3/2)^-4 ... = (1/sqrt(pi))^4 (2)^4 / ... checked against closed form
    let t = term_from_poch_spec(&[pk(rat(1, 2), 4), pk(int(1), -4)], int(1), int(1), RatFunc::one()).unwrap();
    let v = t.eval_numeric(0, &KPoint::Rational(rat(1, 2)), 200).unwrap();
    // Gamma(1)^4 / (Gamma(1/2)^4 Gamma(3/2)^4) = 16 / pi^4
    let pi = crate::numerics::pi_const(60);
    let want = crate::numerics::BigFloat::from_i64(16, 200) / (pi.clone() * pi.clone() * pi.clone() * pi);
    assert_eq!(v.re.to_decimal(50), want.to_decimal(50));
}

#[test]
fn dual_dictionary_half() {
    let t = term_from_poch_spec(&[pn(rat(1, 2), int(0), 1)], int(1), int(1), RatFunc::one()).unwrap();
    let d = t.dualize().unwrap();
    let want = term_from_poch_spec(&[pn(rat(1, 2), int(0), -1)], int(1), int(1), RatFunc::one()).unwrap();
    assert_eq!(d.gammas, want.gammas);
    assert!(d.sign_n);
}

#[test]
fn dual_dictionary_one() {
    let t = term_from_poch_spec(&[pn(int(1), int(0), 1)], int(1), int(1), RatFunc::one()).unwrap();
    let d = t.dualize().unwrap();
    assert!(d.sign_n);
    assert_eq!(d.pre, RatFunc::from_poly(Poly2::n()));
    let want = term_from_poch_spec(&[pn(int(1), int(0), -1)], int(1), int(1), RatFunc::one()).unwrap();
    assert_eq!(d.gammas, want.gammas);
}

#[test]
fn dual_of_degree_two_series() {
    let t = term_from_poch_spec(&[pn(rat(1, 2), int(0), 5), pn(int(1), int(0), -5)], rat(-1, 1024), int(1), RatFunc::from_poly(
        &(&Poly2::n() * &Poly2::n()).scale(&int(820)) + &(&Poly2::n().scale(&int(180)) + &Poly2::constant(int(13))),
    ))
    .unwrap();
    let d = t.dualize().unwrap();
    assert_eq!(d.z, int(-1024));
    assert!(!d.sign_n);
    let want = term_from_poch_spec(&[pn(rat(1, 2), int(0), -5), pn(int(1), int(0), 5)], int(1), int(1), RatFunc::one())
        .unwrap();
    assert_eq!(d.gammas, want.gammas);
    // (820 n^2 - 180 n + 13) / n^5
    assert_eq!(d.pre.eval(&int(1), &int(0)), Some(int(820 - 180 + 13)));
    assert_eq!(d.pre.eval(&int(2), &int(0)), Some(rat(820 * 4 - 360 + 13, 32)));
}

#[test]
fn dual_rejects_k_dependence() {
    assert!(matches!(cullen().dualize(), Err(Error::NotDualizable(_))));
}

#[test]
fn identity_map_is_identity() {
    let t = cullen();
    assert_eq!(t.substitute_affine(&AffineMap::identity()).unwrap(), t);
}

#[test]
fn fractional_offset_rejected() {
    let m = AffineMap { r1: rat(1, 2), ..AffineMap::identity() };
    assert!(matches!(cullen().substitute_affine(&m), Err(Error::UnsupportedMap(_))));
}

#[test]
fn poch_factors_roundtrip() {
    let t = cullen();
    let f = poch_factors(&t).unwrap();
    let back = term_from_poch_spec(&f, t.z.clone(), t.y.clone(), t.pre.clone()).unwrap();
    assert_eq!(back, t);
}

proptest! {
    #[test]
    fn quotients_match_exact_ratios(n in 0i64..6, k in 0i64..6) {
        let t = cullen();
        let qn = t.shift_quotient(Dir::N).unwrap();
        let qk = t.shift_quotient(Dir::K).unwrap();
        let v = t.eval_exact(&int(n), &int(k)).unwrap().unwrap();
        prop_assume!(!v.is_zero());
        let vn = t.eval_exact(&int(n + 1), &int(k)).unwrap().unwrap();
        let vk = t.eval_exact(&int(n), &int(k + 1)).unwrap().unwrap();
        prop_assert_eq!(qn.eval(&int(n), &int(k)), Some(&vn / &v));
        prop_assert_eq!(qk.eval(&int(n), &int(k)), Some(&vk / &v));
        let want = oracle(&cullen_factors(), &rat(1, 4096), &int(1), n, k);
        prop_assert_eq!(v, want);
    }

    #[test]
    fn substitution_respects_evaluation(n in 0i64..5, k in 0i64..5, q in 0i64..2, t in 1i64..3) {
        let term = term_from_poch_spec(
            &[pn(rat(1, 2), int(1), 2), pn(int(1), rat(1, 1), -1), pk(rat(1, 3), 1)],
            rat(-2, 3), rat(5, 7), RatFunc::one()).unwrap();
        let map = AffineMap { p: 1, q, r1: int(0), s: 0, t, r2: int(1) };
        let moved = term.substitute_affine(&map).unwrap();
        let (mn, mk) = map.apply(&int(n), &int(k));
        let a = moved.eval_exact(&int(n), &int(k));
        let b = term.eval_exact(&mn, &mk);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn dualize_twice_restores_pochhammers(a in 1i64..12, e in -3i64..4, b in 1i64..12) {
        let base = rat(a, 12);
        let other = rat(b, 12);
        let t = term_from_poch_spec(&[pn(base, int(0), e), pn(other, int(0), 1), pn(int(1), int(0), -2)],
            rat(1, 27), int(1), RatFunc::one()).unwrap();
        let dd = t.dualize().unwrap().dualize().unwrap();
        prop_assert_eq!(dd.gammas, t.gammas);
        prop_assert_eq!(dd.z, t.z);
    }

    #[test]
    fn canonical_form_is_a_fixed_point(idx in proptest::collection::vec(0usize..12, 1..8)) {
        let all = cullen_factors();
        let f: Vec<PochFactor> = idx.iter().map(|&i| all[i].clone()).collect();
        let t = term_from_poch_spec(&f, int(2), int(3), RatFunc::one()).unwrap();
        let mut again = HyperTerm::one();
        for g in t.gamma_factors() {
            again.add_gamma(g.arg, g.exp);
        }
        again.z = t.z.clone();
        again.y = t.y.clone();
        prop_assert_eq!(again, t);
    }
}
