//! Command-line driver. Exit codes: 0 success, 1 refuted or failed, 2 usage.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use wz_core::Complex;
use num_traits::{One, Zero};
use rayon::prelude::*;
use wz_core::hyperterm::{ClosedForm, KPoint};
use wz_core::numerics::barnes::{barnes_integral, BarnesSpec};
use wz_core::numerics::{digits_matched, digits_to_bits, sum_series, BigFloat, SeriesSpec};
use wz_core::wz::{
    check_flawless, constant_via_termination, find_mate_with, pair_constant, pair_sum, parse_map, recognize_constant,
    search_constant, transform_pair, verify_pair, ConstantValue, FlawlessStatus, MateOptions, MateSource, WZPair,
};
use wz_core::{Error, Rational};

use crate::doc::{DocKind, WzDocument};
use crate::report::Record;
use crate::{fixtures, parse_wz, print_wz, WzError};

pub const PREC_ENV: &str = "WZLANG_PREC";

#[derive(Parser, Debug)]
#[command(name = "wzlang", version, about = "Verify and certify WZ pairs, Ramanujan-like series and Barnes integrals")]
pub struct Cli {
    /// Emit JSON records instead of key=value lines.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact check of the pair relation with the file's R.
    Verify { file: String },
    /// Search for R from U, S, z, y.
    Certify {
        file: String,
        /// Numerator total-degree bound.
        #[arg(long, default_value_t = 8)]
        deg: u32,
        /// Denominator multiplicity bound.
        #[arg(long, default_value_t = 3)]
        denmult: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// F(0,k) = 0 and decay of F(n,k) in n.
    Flawless { file: String },
    /// Sum of a series, or of G(n,k) over n for a pair.
    Sum {
        file: String,
        /// Rational `p/q`, decimal, or complex `a+bi`.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        k: String,
        #[arg(long, env = PREC_ENV, default_value_t = 50)]
        prec: u32,
    },
    /// Closed form of the sum, by termination where possible.
    Constant {
        file: String,
        #[arg(long, env = PREC_ENV, default_value_t = 50)]
        prec: u32,
        #[arg(long, default_value_t = 1000)]
        denbound: u64,
    },
    /// Write the dual series.
    Dual {
        file: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Apply an affine change of variables to a pair.
    Transform {
        file: String,
        #[arg(long)]
        map: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Evaluate a Barnes integral, or the continuation of a series.
    Barnes {
        file: String,
        #[arg(long, env = PREC_ENV, default_value_t = 30)]
        prec: u32,
        /// Contour offset to the left of the first pole.
        #[arg(long)]
        delta: Option<String>,
    },
    /// Check the bundled fixtures.
    Corpus {
        #[arg(long)]
        all: bool,
        names: Vec<String>,
        #[arg(long, env = PREC_ENV, default_value_t = 50)]
        prec: u32,
    },
}

/// Records to print and the exit code.
pub struct Outcome {
    pub code: i32,
    pub records: Vec<Record>,
    pub json: bool,
}

impl Outcome {
    /// Report lines, one per record.
    pub fn render(&self) -> String {
        self.records.iter().map(|r| if self.json { r.to_json() } else { r.to_text() } + "\n").collect()
    }
}

enum Fail {
    Usage(String),
}

impl From<WzError> for Fail {
    fn from(e: WzError) -> Self {
        Fail::Usage(e.to_string())
    }
}

fn load(file: &str) -> Result<WzDocument, Fail> {
    let text = if Path::new(file).exists() {
        std::fs::read_to_string(file).map_err(|e| Fail::Usage(format!("{file}: {e}")))?
    } else if let Some(f) = fixtures::find(file) {
        f.text.to_string()
    } else {
        return Err(Fail::Usage(format!("{file}: no such file or bundled fixture")));
    };
    parse_wz(&text).map_err(|e| Fail::Usage(format!("{file}: {e}")))
}

fn write_doc(path: &Path, d: &WzDocument) -> Result<(), Fail> {
    std::fs::write(path, print_wz(d)).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn need_kind(d: &WzDocument, kinds: &[DocKind], op: &str) -> Result<(), Fail> {
    if kinds.contains(&d.kind) {
        Ok(())
    } else {
        Err(Fail::Usage(format!("`{op}` does not apply to a {} document", d.kind)))
    }
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (i, f) = body.split_once('.')?;
    if !(i.chars().all(|c| c.is_ascii_digit()) && f.chars().all(|c| c.is_ascii_digit())) || i.len() + f.len() == 0 {
        return None;
    }
    let num: num_bigint::BigInt = format!("{i}{f}").parse().ok()?;
    let v = Rational::new(num, num_bigint::BigInt::from(10).pow(f.len() as u32));
    Some(if neg { -v } else { v })
}

fn parse_real(s: &str) -> Option<Rational> {
    let s = s.trim();
    parse_decimal(s).or_else(|| wz_core::exact::parse_rational(s).ok())
}

/// `3/10`, `0.3`, `1/2+i`, `-7/10+2i`, `2i`.
pub fn parse_k(s: &str, digits: u32) -> Option<KPoint> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i') else {
        return parse_real(&s).map(KPoint::Rational);
    };
    let split = body.char_indices().rev().find(|&(i, c)| i > 0 && (c == '+' || c == '-') && !body[..i].ends_with(['e', '^']));
    let (re, im) = match split {
        Some((i, _)) => (parse_real(&body[..i])?, &body[i..]),
        None => (Rational::zero(), body),
    };
    let im = match im {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        v => parse_real(v)?,
    };
    if im.is_zero() {
        return Some(KPoint::Rational(re));
    }
    let bits = digits_to_bits(digits + 20);
    Some(KPoint::Complex(Complex::new(BigFloat::from_rational(&re, bits), BigFloat::from_rational(&im, bits))))
}

fn show(v: &Complex, digits: u32) -> String {
    let re = v.re.to_decimal(digits as usize);
    if v.im.is_zero() || wz_core::numerics::series::log10_abs(&v.im) < -(digits as f64) {
        re
    } else {
        format!("{re} + {}i", v.im.to_decimal(digits as usize))
    }
}

fn real(v: BigFloat) -> Complex {
    let z = BigFloat::from_i64(0, v.precision());
    Complex::new(v, z)
}

/// Digits on which `v` agrees with `claim`.
fn against(v: &Complex, claim: &ClosedForm, digits: u32) -> Result<f64, Error> {
    Ok(digits_matched(v, &real(claim.value(digits + 10)?)))
}

/// Pass mark for a numeric comparison at `prec` working digits.
pub fn pass_digits(prec: u32) -> f64 {
    prec.saturating_sub(10) as f64
}

fn failed(name: &str, op: &str, e: impl std::fmt::Display) -> Record {
    Record::new(name, op, "ERROR", false).detail(e.to_string())
}

pub fn verify(d: &WzDocument) -> Result<Record, WzError> {
    let p = d.to_pair()?;
    let rep = verify_pair(&p)?;
    Ok(if rep.verified {
        Record::new(&d.name, "verify", "VERIFIED", true).residual("0").detail("exact")
    } else {
        Record::new(&d.name, "verify", "REFUTED", false)
            .residual(format!("nonzero ({} terms)", rep.residual.len()))
            .detail("exact")
    })
}

pub fn certify(d: &WzDocument, deg: u32, denmult: u32) -> Result<(Record, Option<WZPair>), WzError> {
    let mut p = d.to_pair()?;
    let given = p.r.take();
    match find_mate_with(&p, MateOptions { degree_bound: deg, max_multiplicity: denmult }) {
        Ok(c) => {
            let same = given.as_ref().map(|g| *g == c.r);
            p.r = Some(c.r.clone());
            let mut rec = Record::new(&d.name, "certify", "CERTIFIED", true)
                .residual("0")
                .value(c.r.to_string())
                .detail(format!("degree {}", c.degree_bound_used));
            if let Some(s) = same {
                rec = rec.detail(format!("degree {}; {} the file's R", c.degree_bound_used, if s { "equals" } else { "differs from" }));
            }
            Ok((rec, Some(p)))
        }
        Err(e @ Error::NoCertificateAtBound { .. }) => Ok((Record::new(&d.name, "certify", "NOT_FOUND", false).detail(e.to_string()), None)),
        Err(e) => Err(e.into()),
    }
}

pub fn flawless(d: &WzDocument) -> Result<Record, WzError> {
    let r = check_flawless(&d.to_pair()?)?;
    let rho = r.decay_ratio.as_ref().map_or("oo".to_string(), |v| v.to_string());
    let verdict = match r.status {
        FlawlessStatus::Flawless => "FLAWLESS",
        FlawlessStatus::NotFlawless => "NOT_FLAWLESS",
        FlawlessStatus::Inconclusive => "INCONCLUSIVE",
    };
    Ok(Record::new(&d.name, "flawless", verdict, r.flawless)
        .value(format!("F(0,k) = {}", if r.f_zero_at_n0 { "0".to_string() } else { format!("U(0,k)*({})", r.witness) }))
        .detail(format!("rho={rho}")))
}

pub fn sum(d: &WzDocument, k: &KPoint, prec: u32) -> Result<Record, WzError> {
    need_kind_doc(d, &[DocKind::Pair, DocKind::Series])?;
    let s = match d.kind {
        DocKind::Pair => pair_sum(&d.to_pair()?, k, prec),
        _ => sum_series(&d.to_series()?, k, prec),
    };
    let s = match s {
        Ok(s) => s,
        Err(e @ Error::Divergent { .. }) => return Ok(failed(&d.name, "sum", e)),
        Err(e) => return Err(e.into()),
    };
    let mut rec = Record::new(&d.name, "sum", "SUMMED", true).value(show(&s.value, prec)).detail(format!("terms={}", s.terms));
    if let Some(c) = &d.claim {
        let dm = against(&s.value, c, prec)?;
        let ok = dm >= pass_digits(prec);
        rec = Record { verdict: if ok { "PASS" } else { "FAIL" }.into(), ok, ..rec.digits(dm) };
        rec = rec.detail(format!("terms={} claim={c}", s.terms));
    }
    Ok(rec)
}

fn need_kind_doc(d: &WzDocument, kinds: &[DocKind]) -> Result<(), WzError> {
    if kinds.contains(&d.kind) {
        Ok(())
    } else {
        Err(WzError::Semantic { line: 1, col: 1, message: format!("operation does not apply to a {} document", d.kind) })
    }
}

/// Barnes spec for a Barnes document or the continuation of a series at `k = 0`.
pub fn barnes_spec(d: &WzDocument) -> Result<BarnesSpec, WzError> {
    need_kind_doc(d, &[DocKind::Barnes, DocKind::Series])?;
    Ok(match d.kind {
        DocKind::Barnes => d.to_barnes()?,
        _ => BarnesSpec::from_series(&d.to_series()?, &Rational::zero())?,
    })
}

pub fn barnes(d: &WzDocument, prec: u32, delta: Option<Rational>) -> Result<Record, WzError> {
    let mut spec = barnes_spec(d)?;
    if let Some(dl) = delta {
        spec.delta = dl;
        spec.check()?;
    }
    let b = barnes_integral(&spec, prec)?;
    let v = real(b.value);
    let mut rec = Record::new(&d.name, "barnes", "EVALUATED", true)
        .value(show(&v, prec))
        .detail(format!("delta={} panels={} height={:.1}", spec.delta, b.panels, b.height));
    if let Some(c) = &d.claim {
        let dm = against(&v, c, prec)?;
        let ok = dm >= pass_digits(prec);
        rec = Record { verdict: if ok { "PASS" } else { "FAIL" }.into(), ok, ..rec.digits(dm) };
    }
    Ok(rec)
}

fn recognize(v: &BigFloat, claim: Option<&ClosedForm>, prec: u32, denbound: u64) -> Result<ClosedForm, Error> {
    match claim {
        Some(c) => recognize_constant(v, c.kind, c.m, c.chi, prec, denbound),
        None => search_constant(v, prec, denbound).ok_or_else(|| Error::RecognitionFailed(v.to_decimal(30))),
    }
}

pub fn constant(d: &WzDocument, prec: u32, denbound: u64) -> Result<Record, WzError> {
    let (found, route) = match d.kind {
        DocKind::Pair => {
            let p = d.to_pair()?;
            let route = match constant_via_termination(&p)? {
                ConstantValue::Closed(_) => "termination",
                ConstantValue::Unevaluated => "summation",
            };
            (pair_constant(&p, d.claim.as_ref(), prec, denbound), route)
        }
        DocKind::Series => match sum_series(&d.to_series()?, &KPoint::Rational(Rational::zero()), prec) {
            Ok(s) => (recognize(&s.value.re, d.claim.as_ref(), prec, denbound), "summation"),
            Err(Error::Divergent { .. }) => {
                let b = barnes_integral(&barnes_spec(d)?, prec)?;
                (recognize(&b.value, d.claim.as_ref(), prec, denbound), "barnes")
            }
            Err(e) => return Err(e.into()),
        },
        DocKind::Barnes => {
            let b = barnes_integral(&d.to_barnes()?, prec)?;
            (recognize(&b.value, d.claim.as_ref(), prec, denbound), "barnes")
        }
    };
    let c = match found {
        Ok(c) => c,
        Err(e @ (Error::RecognitionFailed(_) | Error::ConstantMismatch(_))) => {
            return Ok(Record::new(&d.name, "constant", "UNRECOGNIZED", false).detail(format!("route={route} {e}")))
        }
        Err(e) => return Err(e.into()),
    };
    let rec = Record::new(&d.name, "constant", "RECOGNIZED", true).value(c.to_string()).detail(format!("route={route}"));
    Ok(match &d.claim {
        Some(claim) if *claim == c => Record { verdict: "PASS".into(), ..rec },
        Some(claim) => Record { verdict: "FAIL".into(), ok: false, ..rec.detail(format!("route={route} claim={claim}")) },
        None => rec,
    })
}

pub fn dual(d: &WzDocument) -> Result<WzDocument, WzError> {
    need_kind_doc(d, &[DocKind::Series])?;
    let s: SeriesSpec = d.to_series()?.dual()?;
    let mut out = WzDocument::from_series(&format!("{}_dual", d.name), &SeriesSpec { claimed: None, ..s });
    out.header = vec![format!("dual of {}", d.name)];
    Ok(out)
}

pub fn transform(d: &WzDocument, map: &str) -> Result<(WzDocument, MateSource), WzError> {
    need_kind_doc(d, &[DocKind::Pair])?;
    let m = parse_map(map)?;
    let (p, src) = transform_pair(&d.to_pair()?, &m, MateOptions::default())?;
    let mut out = WzDocument::from_pair(&p);
    out.header = d.header.clone();
    let how = match src {
        MateSource::Direct => "both sides mapped",
        MateSource::FromS => "R recomputed from S",
        MateSource::FromR => "S recomputed from R",
    };
    out.header.push(format!("transformed from {} by {}; {how}", d.name, wz_core::wz::format_map(&m)));
    Ok((out, src))
}

/// Checks run on one bundled fixture.
pub fn check_fixture(d: &WzDocument, prec: u32) -> Vec<Record> {
    let timed = |f: &dyn Fn() -> Result<Record, WzError>, op: &str| {
        let t = Instant::now();
        let mut r = f().unwrap_or_else(|e| failed(&d.name, op, e));
        r.wall_ms = t.elapsed().as_millis() as u64;
        r
    };
    let k0 = KPoint::Rational(Rational::zero());
    match d.kind {
        DocKind::Pair => vec![
            timed(&|| verify(d), "verify"),
            timed(&|| flawless(d), "flawless"),
            timed(&|| sum(d, &k0, prec), "sum"),
        ],
        DocKind::Series => vec![timed(&|| sum(d, &k0, prec), "sum")],
        DocKind::Barnes => vec![timed(&|| barnes(d, prec, None), "barnes")],
    }
}

fn execute(cmd: Command) -> Result<Vec<Record>, Fail> {
    let t = Instant::now();
    let one = |r: Result<Record, WzError>, name: &str, op: &str| -> Vec<Record> {
        let mut r = r.unwrap_or_else(|e| failed(name, op, e));
        r.wall_ms = t.elapsed().as_millis() as u64;
        vec![r]
    };
    Ok(match cmd {
        Command::Verify { file } => {
            let d = load(&file)?;
            need_kind(&d, &[DocKind::Pair], "verify")?;
            if d.r.is_none() {
                return Err(Fail::Usage(format!("{file}: no `R` to verify; use `certify`")));
            }
            one(verify(&d), &d.name, "verify")
        }
        Command::Certify { file, deg, denmult, output } => {
            let d = load(&file)?;
            need_kind(&d, &[DocKind::Pair], "certify")?;
            let (rec, pair) = match certify(&d, deg, denmult) {
                Ok(v) => v,
                Err(e) => (failed(&d.name, "certify", e), None),
            };
            if let (Some(path), Some(p)) = (output, pair) {
                let out = WzDocument { header: d.header.clone(), claim: d.claim.clone(), ..WzDocument::from_pair(&p) };
                write_doc(&path, &out)?;
            }
            one(Ok(rec), &d.name, "certify")
        }
        Command::Flawless { file } => {
            let d = load(&file)?;
            need_kind(&d, &[DocKind::Pair], "flawless")?;
            one(flawless(&d), &d.name, "flawless")
        }
        Command::Sum { file, k, prec } => {
            let d = load(&file)?;
            need_kind(&d, &[DocKind::Pair, DocKind::Series], "sum")?;
            let kp = parse_k(&k, prec).ok_or_else(|| Fail::Usage(format!("cannot read k = `{k}`")))?;
            one(sum(&d, &kp, prec), &d.name, "sum")
        }
        Command::Constant { file, prec, denbound } => {
            let d = load(&file)?;
            one(constant(&d, prec, denbound), &d.name, "constant")
        }
        Command::Dual { file, output } => {
            let d = load(&file)?;
            need_kind(&d, &[DocKind::Series], "dual")?;
            let rec = match dual(&d) {
                Ok(out) => {
                    write_doc(&output, &out)?;
                    Record::new(&d.name, "dual", "WRITTEN", true).detail(output.display().to_string())
                }
                Err(e) => failed(&d.name, "dual", e),
            };
            one(Ok(rec), &d.name, "dual")
        }
        Command::Transform { file, map, output } => {
            let d = load(&file)?;
            need_kind(&d, &[DocKind::Pair], "transform")?;
            parse_map(&map).map_err(|e| Fail::Usage(format!("--map: {e}")))?;
            let rec = match transform(&d, &map) {
                Ok((out, src)) => {
                    write_doc(&output, &out)?;
                    Record::new(&d.name, "transform", "WRITTEN", true).detail(format!("{} {src:?}", output.display()))
                }
                Err(e) => failed(&d.name, "transform", e),
            };
            one(Ok(rec), &d.name, "transform")
        }
        Command::Barnes { file, prec, delta } => {
            let d = load(&file)?;
            need_kind(&d, &[DocKind::Barnes, DocKind::Series], "barnes")?;
            let delta = match delta {
                Some(s) => Some(parse_real(&s).ok_or_else(|| Fail::Usage(format!("cannot read --delta `{s}`")))?),
                None => None,
            };
            one(barnes(&d, prec, delta), &d.name, "barnes")
        }
        Command::Corpus { all, names, prec } => {
            if all == !names.is_empty() {
                return Err(Fail::Usage("give either --all or fixture names".into()));
            }
            let picked: Vec<&fixtures::Fixture> = if all {
                fixtures::FIXTURES.iter().collect()
            } else {
                names
                    .iter()
                    .map(|n| fixtures::find(n).ok_or_else(|| Fail::Usage(format!("no bundled fixture `{n}`"))))
                    .collect::<Result<_, _>>()?
            };
            let mut out: Vec<(String, Vec<Record>)> = picked
                .par_iter()
                .map(|f| {
                    let d = parse_wz(f.text).expect("bundled fixture parses");
                    (f.name.to_string(), check_fixture(&d, prec))
                })
                .collect();
            out.sort_by(|a, b| a.0.cmp(&b.0));
            out.into_iter().flat_map(|(_, r)| r).collect()
        }
    })
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return Outcome { code, records: Vec::new(), json: false };
        }
    };
    let json = cli.json;
    match execute(cli.command) {
        Ok(records) => {
            let code = if records.iter().all(|r| r.ok) { 0 } else { 1 };
            Outcome { code, records, json }
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            Outcome { code: 2, records: Vec::new(), json }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k_re(s: &str) -> Rational {
        match parse_k(s, 30).unwrap() {
            KPoint::Rational(r) => r,
            KPoint::Complex(_) => panic!("{s} is real"),
        }
    }

    #[test]
    fn reads_k_values() {
        assert_eq!(k_re("0"), Rational::zero());
        assert_eq!(k_re("0.3"), Rational::new(3.into(), 10.into()));
        assert_eq!(k_re("-1/4"), Rational::new((-1).into(), 4.into()));
        assert_eq!(k_re("1.5+0i"), Rational::new(3.into(), 2.into()));
        for (s, re, im) in [("1/2+i", 0.5, 1.0), ("-0.7+2i", -0.7, 2.0), ("2i", 0.0, 2.0), ("1/3-1/2i", 1.0 / 3.0, -0.5)] {
            let KPoint::Complex(c) = parse_k(s, 30).unwrap() else { panic!("{s}") };
            assert!((c.re.to_f64() - re).abs() < 1e-12 && (c.im.to_f64() - im).abs() < 1e-12, "{s}");
        }
        assert!(parse_k("x", 30).is_none());
    }
}
