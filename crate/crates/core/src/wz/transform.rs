//! Affine changes of variables applied to a whole pair.

use num_traits::One;

use super::mate::{find_mate_with, find_s, MateOptions};
use super::{verify_pair, WZPair};
use crate::exact::{parse_poly, Rational};
use crate::hyperterm::{AffineMap, HyperTerm};
use crate::{Error, Poly2, Result};

pub type PairMap = AffineMap;

/// How the certificate of a transformed pair was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MateSource {
    /// Both sides transformed and the result is already a pair.
    Direct,
    /// `R` recomputed from the transformed `S`.
    FromS,
    /// `S` recomputed from the transformed `R`.
    FromR,
}

/// Parse `"n -> 2n, k -> k - n"`; a missing variable maps to itself.
pub fn parse_map(s: &str) -> Result<AffineMap> {
    let mut map = AffineMap::identity();
    let mut offset = 0;
    for part in s.split(',') {
        let syntax = |m: String| Error::Syntax { offset, message: m };
        let (lhs, rhs) = part.split_once("->").ok_or_else(|| syntax(format!("expected `var -> expr` in `{}`", part.trim())))?;
        let img = parse_poly(rhs).map_err(|e| match e {
            Error::Syntax { offset: o, message } => Error::Syntax { offset: offset + lhs.len() + 2 + o, message },
            e => e,
        })?;
        if img.total_degree() > 1 {
            return Err(syntax(format!("`{}` is not affine", rhs.trim())));
        }
        let int = |c: Rational| -> Result<i64> {
            if !c.is_integer() {
                return Err(syntax(format!("coefficient {c} must be an integer")));
            }
            c.to_integer().try_into().map_err(|_| syntax("coefficient too large".into()))
        };
        let (a, b, c) = (int(img.coeff(1, 0))?, int(img.coeff(0, 1))?, img.constant_term());
        match lhs.trim() {
            "n" => (map.p, map.q, map.r1) = (a, b, c),
            "k" => (map.s, map.t, map.r2) = (a, b, c),
            v => return Err(syntax(format!("unknown variable `{v}`"))),
        }
        offset += part.len() + 1;
    }
    if map.p * map.t - map.q * map.s == 0 {
        return Err(Error::UnsupportedMap("map is not invertible".into()));
    }
    Ok(map)
}

/// Pair read off from a transformed `F` term and an optional `G` term with
/// the same Gamma part.
fn pair_from_terms(name: &str, f: &HyperTerm, g: Option<&HyperTerm>) -> WZPair {
    let mut u = f.clone();
    u.pre = crate::exact::RatFunc::one();
    u.z = Rational::one();
    u.y = Rational::one();
    WZPair::new(name, u, f.pre.clone(), g.map(|g| g.pre.clone()), f.z.clone(), f.y.clone())
}

/// Apply `map` to `F` and `G`; when the images are not a pair, recompute the
/// certificate from the new `S`, then the new `S` from the new `R`.
pub fn transform_pair(p: &WZPair, map: &AffineMap, opts: MateOptions) -> Result<(WZPair, MateSource)> {
    if map.is_identity() {
        return Ok((p.clone(), MateSource::Direct));
    }
    let f = p.f_term().substitute_affine(map)?;
    let g = match &p.r {
        Some(_) => Some(p.g_term()?.substitute_affine(map)?),
        None => None,
    };
    let mut q = pair_from_terms(&p.name, &f, g.as_ref());
    if q.r.is_some() && verify_pair(&q)?.verified {
        return Ok((q, MateSource::Direct));
    }
    match find_mate_with(&q, opts) {
        Ok(c) => {
            q.r = Some(c.r);
            Ok((q, MateSource::FromS))
        }
        Err(e) if q.r.as_ref().map_or(true, |r| r.is_zero()) => Err(e),
        Err(_) => {
            q.s = find_s(&q, opts)?;
            Ok((q, MateSource::FromR))
        }
    }
}

/// Inverse of [`parse_map`].
pub fn format_map(map: &AffineMap) -> String {
    let img = |a: i64, b: i64, c: &Rational| {
        let p = &(&Poly2::n().scale(&Rational::from_integer(a.into())) + &Poly2::k().scale(&Rational::from_integer(b.into())))
            + &Poly2::constant(c.clone());
        if p.is_zero() {
            "0".to_string()
        } else {
            p.to_string()
        }
    };
    format!("n -> {}, k -> {}", img(map.p, map.q, &map.r1), img(map.s, map.t, &map.r2))
}
