use proptest::prelude::*;
use wz_core::exact::parse_ratfunc;
use wz_core::hyperterm::{ClosedForm, Dir, LinForm, PochFactor};
use wz_core::wz::verify_pair;
use wz_core::Rational;
use wzlang::fixtures::{self, FIXTURES};
use wzlang::{parse_wz, print_wz, DocKind, Factor, WzDocument, WzError, WzObject};

#[test]
fn every_fixture_parses_and_builds() {
    for f in FIXTURES {
        let d = parse_wz(f.text).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        assert_eq!(d.name, f.name);
        let obj = d.object().unwrap_or_else(|e| panic!("{}: {e}", f.name));
        match (d.kind, obj) {
            (DocKind::Pair, WzObject::Pair(_)) | (DocKind::Series, WzObject::Series(_)) | (DocKind::Barnes, WzObject::Barnes(_)) => {}
            _ => panic!("{}: kind and object disagree", f.name),
        }
        assert!(d.claim.is_some(), "{} has no claim", f.name);
    }
}

#[test]
fn every_fixture_round_trips() {
    for f in FIXTURES {
        let d = fixtures::load(f.name);
        let text = print_wz(&d);
        assert_eq!(parse_wz(&text).unwrap(), d, "{}:\n{text}", f.name);
        assert_eq!(print_wz(&parse_wz(&text).unwrap()), text);
    }
}

#[test]
fn printed_pair_gives_the_same_term() {
    let d = fixtures::load("cullen");
    let again = parse_wz(&print_wz(&d)).unwrap();
    assert_eq!(again.to_pair().unwrap(), d.to_pair().unwrap());
}

#[test]
fn printed_certificate_is_kept_verbatim() {
    let d = fixtures::load("zeta2");
    let printed = "(22n^3+(34k+49)n^2+(12k^2+48k+35)n+8(k+1)^2)/(2(1+2n)(3+2k+3n)(2n+2k+1)(3n+2k+1)(3n+2k+2))";
    assert_eq!(d.r, Some(parse_ratfunc(printed).unwrap()));
    assert!(verify_pair(&d.to_pair().unwrap()).unwrap().verified);
}

#[test]
fn degree_one_series_document() {
    let d = parse_wz("kind = series\npoch(1/2, n)^3  z = 1/64").unwrap_err();
    assert!(matches!(d, WzError::Parse { line: 2, .. }));
    let d = parse_wz("kind = series\npoch(1/2, n)^3 poch(1, n)^-3\nz = 1/64\npoly = 42*n+5\nclaim = 16 * pi^-1").unwrap();
    let s = d.to_series().unwrap();
    assert_eq!(s.claimed, Some(ClosedForm::pi_power(Rational::from_integer(16.into()), 1, -1)));
    assert_eq!((s.m, s.chi), (1, -1));
}

#[test]
fn transform_directive_is_applied_on_load() {
    let mut d = fixtures::load("gourevitch");
    d.transforms.push(wz_core::wz::parse_map("n -> n - k").unwrap());
    let text = print_wz(&d);
    assert!(text.contains("transform n -> n - k, k -> k"), "{text}");
    let p = parse_wz(&text).unwrap().to_pair().unwrap();
    assert!(verify_pair(&p).unwrap().verified);
    assert_ne!(p, d.raw_pair().unwrap());
}

#[test]
fn missing_keys_are_reported() {
    let d = parse_wz("kind = barnes\npoch(1/2, n)").unwrap();
    assert!(matches!(d.to_barnes(), Err(WzError::Missing { .. })));
    assert!(matches!(parse_wz("z = 1"), Err(WzError::Parse { line: 1, col: 1, .. })));
}

fn rat() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn factor() -> impl Strategy<Value = Factor> {
    prop_oneof![
        (rat(), rat(), -4i64..5).prop_map(|(a, c, e)| Factor::Poch(PochFactor { arg: LinForm::new(a, Rational::from_integer(0.into()), c), dir: Dir::N, exp: e })),
        (rat(), -4i64..5).prop_map(|(a, e)| Factor::Poch(PochFactor { arg: LinForm::constant(a), dir: Dir::K, exp: e })),
        (rat(), rat(), rat(), -3i64..4).prop_map(|(a, b, c, e)| Factor::Gamma { arg: LinForm::new(a, b, c), exp: e }),
    ]
}

fn ratfunc() -> impl Strategy<Value = wz_core::exact::RatFunc> {
    (rat(), rat(), 0u32..3, rat()).prop_map(|(a, b, d, c)| parse_ratfunc(&format!("(({a})n^{d} + ({b})k)/(n + k + ({c})^2 + 1)")).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_then_parse_is_identity(
        factors in prop::collection::vec(factor(), 0..6),
        z in prop::option::of(rat().prop_filter("nonzero", |r| *r != Rational::from_integer(0.into()))),
        s in prop::option::of(ratfunc()),
        r in prop::option::of(ratfunc()),
        start in prop::option::of(0i64..3),
        m in 0u32..5,
        num in rat(),
        header in prop::collection::vec("[a-z ]{0,12}", 0..3),
    ) {
        let mut d = WzDocument::new("p", DocKind::Pair);
        d.factors = factors;
        d.z = z;
        d.s = s;
        d.r = r;
        d.start = start;
        d.claim = Some(ClosedForm::pi_power(num, m, if m % 2 == 0 { 1 } else { -1 }));
        d.header = header.into_iter().map(|h| h.trim().to_string()).collect();
        let text = print_wz(&d);
        prop_assert_eq!(parse_wz(&text).unwrap(), d);
    }
}
