//! Canonical text form of a document; `parse_wz(&print_wz(d)) == d`.

use std::fmt::Write;

use wz_core::hyperterm::{Dir, LinForm};
use wz_core::wz::format_map;

use crate::doc::{Factor, WzDocument};

fn exp(e: i64) -> String {
    if e == 1 {
        String::new()
    } else {
        format!("^{e}")
    }
}

fn affine(l: &LinForm) -> String {
    let p = l.to_poly();
    if p.is_zero() {
        "0".into()
    } else {
        p.to_string()
    }
}

pub fn print_factor(f: &Factor) -> String {
    match f {
        Factor::Poch(p) => {
            let v = if p.dir == Dir::N { 'n' } else { 'k' };
            format!("poch({}, {v}){}", affine(&p.arg), exp(p.exp))
        }
        Factor::Gamma { arg, exp: e } => format!("gamma({}){}", affine(arg), exp(*e)),
    }
}

pub fn print_wz(d: &WzDocument) -> String {
    let mut out = String::new();
    for h in &d.header {
        let _ = writeln!(out, "# {h}");
    }
    let _ = writeln!(out, "kind = {}", d.kind);
    let _ = writeln!(out, "name = \"{}\"", d.name);
    for f in &d.factors {
        let _ = writeln!(out, "{}", print_factor(f));
    }
    let mut kv = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            let _ = writeln!(out, "{k} = {v}");
        }
    };
    kv("z", d.z.as_ref().map(|v| v.to_string()));
    kv("y", d.y.as_ref().map(|v| v.to_string()));
    kv("S", d.s.as_ref().map(|v| v.to_string()));
    kv("R", d.r.as_ref().map(|v| v.to_string()));
    kv("poly", d.poly.as_ref().map(|v| v.to_string()));
    kv("base", d.base.as_ref().map(|v| v.to_string()));
    kv("delta", d.delta.as_ref().map(|v| v.to_string()));
    kv("start", d.start.map(|v| v.to_string()));
    kv("claim", d.claim.as_ref().map(|v| v.to_string()));
    for m in &d.transforms {
        let _ = writeln!(out, "transform {}", format_map(m));
    }
    out
}
