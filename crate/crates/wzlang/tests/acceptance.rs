//! One line per acceptance criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use num_traits::Zero;
use wz_core::exact::{int, parse_ratfunc, rat};
use wz_core::hyperterm::{ClosedForm, KPoint};
use wz_core::numerics::barnes::{barnes_integral, BarnesSpec};
use wz_core::numerics::series::{log10_abs, sum_series_bsplit, sum_series_naive};
use wz_core::numerics::{digits_matched, dirichlet_l, pi_const, recognize_rational_multiple, sum_series, BigFloat, SeriesSpec};
use wz_core::wz::{
    check_flawless, constancy_check, constant_via_numeric, constant_via_termination, find_mate_with, pair_series, pair_sum,
    termination_value, theorem2_balance, verify_pair, ConstantValue, FlawlessStatus, MateOptions, WZPair,
};
use wz_core::{Complex, Rational};
use wzlang::{cli, fixtures, DocKind};

type Outcome = Result<String, String>;

fn pair(name: &str) -> WZPair {
    fixtures::load(name).to_pair().unwrap()
}

fn series(name: &str) -> SeriesSpec {
    fixtures::load(name).to_series().unwrap()
}

fn claim(name: &str) -> ClosedForm {
    fixtures::load(name).claim.unwrap()
}

fn real(v: &BigFloat) -> Complex {
    Complex::new(v.clone(), BigFloat::from_i64(0, v.precision()))
}

fn ms(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn exact_verification() -> Outcome {
    let mut notes = Vec::new();
    for name in ["cullen", "deg2_384", "zeta4", "zeta2", "gourevitch"] {
        let t = Instant::now();
        let rec = cli::verify(&fixtures::load(name)).map_err(|e| format!("{name}: {e}"))?;
        let el = t.elapsed();
        if rec.verdict != "VERIFIED" || el > Duration::from_secs(60) {
            return Err(format!("{name}: {} in {}", rec.verdict, ms(el)));
        }
        notes.push(format!("{name} {}", ms(el)));
    }
    let printed = "(22n^3 + (34k + 49)n^2 + (12k^2 + 48k + 35)n + 8(k + 1)^2)/(2(1 + 2n)(3 + 2k + 3n)(2n + 2k + 1)(3n + 2k + 1)(3n + 2k + 2))";
    if pair("zeta2").r != Some(parse_ratfunc(printed).unwrap()) {
        return Err("zeta2 fixture R is not the printed R".into());
    }
    Ok(notes.join(", "))
}

fn certificate_discovery() -> Outcome {
    let mut notes = Vec::new();
    for (name, deg) in [("zeta2", 8), ("cullen", 10), ("deg2_384", 8)] {
        let mut p = pair(name);
        let given = p.r.take();
        let c = find_mate_with(&p, MateOptions { degree_bound: deg, max_multiplicity: 3 }).map_err(|e| format!("{name}: {e}"))?;
        p.r = Some(c.r.clone());
        if !verify_pair(&p).unwrap().verified {
            return Err(format!("{name}: found R does not verify"));
        }
        if name == "zeta2" && given.as_ref() != Some(&c.r) {
            return Err("zeta2: found R differs from the printed R".into());
        }
        notes.push(format!("{name} degree {}", c.degree_bound_used));
    }
    Ok(notes.join(", "))
}

fn termination_constants() -> Outcome {
    let mut notes = Vec::new();
    for (name, want) in [("cullen", ClosedForm::pi_power(int(2048), 4, 1)), ("gourevitch", ClosedForm::pi_power(int(32), 3, -1))] {
        match constant_via_termination(&pair(name)).unwrap() {
            ConstantValue::Closed(c) if c == want => notes.push(format!("{name} = {c}")),
            other => return Err(format!("{name}: {other:?}")),
        }
    }
    Ok(notes.join(", "))
}

fn numeric_constants() -> Outcome {
    let mut notes = Vec::new();
    for name in ["ramanujan16", "ramanujan128", "cullen", "deg2_384", "zeta4", "zeta2", "gourevitch"] {
        let c = claim(name);
        let t = Instant::now();
        let v = match fixtures::load(name).kind {
            DocKind::Pair => pair_sum(&pair(name), &KPoint::Rational(Rational::zero()), 60),
            _ => sum_series(&series(name), &KPoint::Rational(Rational::zero()), 60),
        }
        .map_err(|e| format!("{name}: {e}"))?
        .value;
        let el = t.elapsed();
        let dm = digits_matched(&v, &real(&c.value(70).unwrap()));
        if dm < 50.0 || el > Duration::from_secs(30) {
            return Err(format!("{name}: {dm:.1} digits in {}", ms(el)));
        }
        if let DocKind::Pair = fixtures::load(name).kind {
            let r = constant_via_numeric(&pair(name), c.kind, c.m, c.chi, 60, 1000).map_err(|e| format!("{name}: {e}"))?;
            if r != c {
                return Err(format!("{name}: recognized {r}, claimed {c}"));
            }
        }
        notes.push(format!("{name} {dm:.0}d"));
    }
    Ok(notes.join(", "))
}

fn k_points() -> Vec<KPoint> {
    ["0.3", "1.3", "1/2+i", "-0.7+2i"].iter().map(|s| cli::parse_k(s, 60).expect("k point")).collect()
}

fn carlson_constancy() -> Outcome {
    let mut notes = Vec::new();
    for name in ["cullen", "zeta4", "zeta2"] {
        let worst = constancy_check(&pair(name), &k_points(), 60).map_err(|e| format!("{name}: {e}"))?;
        let l = log10_abs(&worst);
        if l >= -40.0 {
            return Err(format!("{name}: max |g(k) - g(0)| = 1e{l:.1}"));
        }
        notes.push(format!("{name} 1e{:.0}", l.max(-999.0)));
    }
    Ok(notes.join(", "))
}

fn gourevitch_extension() -> Outcome {
    let p = pair("gourevitch");
    let want = real(&claim("gourevitch").value(60).unwrap());
    let mut notes = Vec::new();
    for k in [rat(0, 1), rat(1, 4), rat(1, 2)] {
        let v = pair_sum(&p, &KPoint::Rational(k.clone()), 50).map_err(|e| format!("k = {k}: {e}"))?.value;
        let dm = digits_matched(&v, &want);
        if dm < 40.0 {
            return Err(format!("k = {k}: {dm:.1} digits"));
        }
        notes.push(format!("k={k} {dm:.0}d"));
    }
    match termination_value(&p, &rat(1, 2)).unwrap() {
        Some(c) if c == claim("gourevitch") => notes.push(format!("G(0,1/2) = {c}")),
        other => return Err(format!("k = 1/2 does not terminate to the claim: {other:?}")),
    }
    Ok(notes.join(", "))
}

fn barnes_integrals() -> Outcome {
    let mut notes = Vec::new();
    for name in ["barnes1280", "barnes80"] {
        let spec = fixtures::load(name).to_barnes().unwrap();
        let t = Instant::now();
        let v = barnes_integral(&spec, 30).map_err(|e| format!("{name}: {e}"))?.value;
        let el = t.elapsed();
        let dm = digits_matched(&real(&v), &real(&claim(name).value(40).unwrap()));
        if dm < 20.0 || el > Duration::from_secs(300) {
            return Err(format!("{name}: {dm:.1} digits in {}", ms(el)));
        }
        notes.push(format!("{name} {dm:.0}d {}", ms(el)));
    }
    let s = series("ramanujan128");
    let b = barnes_integral(&BarnesSpec::from_series(&s, &Rational::zero()).unwrap(), 30).map_err(|e| e.to_string())?.value;
    let d = sum_series(&s, &KPoint::Rational(Rational::zero()), 40).unwrap().value;
    let dm = digits_matched(&real(&b), &d);
    if dm < 25.0 {
        return Err(format!("Barnes vs sum at z = -1/1024: {dm:.1} digits"));
    }
    notes.push(format!("Barnes vs sum {dm:.0}d"));
    Ok(notes.join(", "))
}

fn duality() -> Outcome {
    let d = cli::dual(&fixtures::load("ramanujan128")).map_err(|e| e.to_string())?;
    let dual = d.to_series().unwrap();
    if sum_series(&dual, &KPoint::Rational(Rational::zero()), 20).is_ok() {
        return Err("dual sums directly; expected divergence".into());
    }
    let spec = BarnesSpec::from_series(&dual, &Rational::zero()).map_err(|e| e.to_string())?;
    let v = barnes_integral(&spec, 50).map_err(|e| e.to_string())?.value;
    let z3 = dirichlet_l(1, 3, 60).unwrap();
    match recognize_rational_multiple(&v, &z3, 100, 50) {
        Some(r) if r == int(-114688) => Ok(format!("dual / zeta(3) = {r} (Barnes continuation)")),
        other => Err(format!("dual / zeta(3) recognized as {other:?}")),
    }
}

fn double_sum_balance() -> Outcome {
    let rep = theorem2_balance(&pair("zeta2"), 40).map_err(|e| e.to_string())?;
    let l = log10_abs(&rep.residual);
    if l < -20.0 {
        Ok(format!("residual 1e{:.0}, cutoff {}", l.max(-999.0), rep.cutoff))
    } else {
        Err(format!("residual 1e{l:.1}"))
    }
}

fn performance_floor() -> Outcome {
    let t = Instant::now();
    let pi = pi_const(1000);
    let el = t.elapsed();
    let want = "3.14159265358979323846264338327950288419716939937510";
    if el > Duration::from_secs(10) || !pi.to_decimal(50).starts_with(&want[..50]) {
        return Err(format!("pi_const(1000) in {}", ms(el)));
    }
    let mut checked = 0;
    for f in fixtures::FIXTURES {
        let d = fixtures::load(f.name);
        let s = match d.kind {
            DocKind::Pair => pair_series(&d.to_pair().unwrap()).unwrap(),
            DocKind::Series => d.to_series().unwrap(),
            DocKind::Barnes => continue,
        };
        let a = sum_series_bsplit(&s, &Rational::zero(), 30).map_err(|e| format!("{}: {e}", f.name))?.value;
        let b = sum_series_naive(&s, &KPoint::Rational(Rational::zero()), 30).map_err(|e| format!("{}: {e}", f.name))?.value;
        let dm = digits_matched(&a, &b);
        if dm < 30.0 {
            return Err(format!("{}: binary splitting and naive sum agree to {dm:.1} digits", f.name));
        }
        checked += 1;
    }
    Ok(format!("pi_const(1000) {}, {checked} summable fixtures agree to 30 digits, Barnes fixtures have no convergent series", ms(el)))
}

fn negative_controls() -> Outcome {
    let mut d = fixtures::load("zeta2");
    let printed = "(22n^3 + (34k + 49)n^2 + (12k^2 + 48k + 35)n + 8(k + 1)^2)/(2(1 + 2n)(3 + 2k + 3n)(2n + 2k + 1)(3n + 2k + 1)(3n + 2k + 2))";
    d.r = Some(parse_ratfunc(&printed.replace("22n^3", "23n^3")).unwrap());
    let rec = cli::verify(&d).map_err(|e| e.to_string())?;
    if rec.verdict != "REFUTED" {
        return Err(format!("perturbed zeta2 R: {}", rec.verdict));
    }
    let mut p = pair("cullen");
    p.s = p.s.mul(&parse_ratfunc("1/n^5").unwrap());
    let f = check_flawless(&p).map_err(|e| e.to_string())?;
    if f.status != FlawlessStatus::NotFlawless {
        return Err(format!("cullen with S/n^5: {:?}", f.status));
    }
    Ok(format!("perturbed R refuted, S/n^5 gives F(0,k) = U(0,k)*({})", f.witness))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("exact verification", exact_verification),
        ("certificate discovery", certificate_discovery),
        ("constants by termination", termination_constants),
        ("constants by summation", numeric_constants),
        ("constancy in k", carlson_constancy),
        ("two-parameter Gourevitch", gourevitch_extension),
        ("Barnes integrals", barnes_integrals),
        ("duality", duality),
        ("double-sum balance", double_sum_balance),
        ("performance floor", performance_floor),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let el = ms(t.elapsed());
        match out {
            Ok(m) => println!("criterion {:>2} PASS  {name}: {m} [{el}]", i + 1),
            Err(m) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {m} [{el}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
