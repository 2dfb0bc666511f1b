//! Line-oriented parser for `.wz` documents.
//!
//! ```text
//! doc       := { line }
//! line      := [ stmt ] [ '#' comment ]
//! stmt      := factor { ['*'] factor }
//!            | 'transform' map
//!            | key '=' value
//! factor    := 'poch' '(' affine ',' ('n' | 'k') ')' [ '^' int ]
//!            | 'gamma' '(' affine ')' [ '^' int ]
//! key       := 'kind' | 'name' | 'z' | 'y' | 'S' | 'R' | 'poly' | 'base'
//!            | 'delta' | 'start' | 'claim'
//! claim     := part { '*' part }
//! part      := rational | 'pi' '^' int | 'sqrt' '(' int ')' | 'L' '(' int ',' int ')'
//! ```
//!
//! Expressions on the right of `S`, `R`, `poly` and in factor arguments use
//! the rational-function syntax of the engine (`2n`, `3(k+1)`, `n^2`).

use wz_core::exact::{parse_poly, parse_ratfunc, parse_rational, RatFunc};
use wz_core::hyperterm::{ClosedForm, Dir, LinForm, PochFactor};
use wz_core::wz::parse_map;
use wz_core::{Error, Rational};

use crate::doc::{DocKind, Factor, WzDocument};
use crate::WzError;

struct Line<'a> {
    no: usize,
    src: &'a str,
    pos: usize,
}

impl<'a> Line<'a> {
    fn col_at(&self, pos: usize) -> usize {
        self.src[..pos.min(self.src.len())].chars().count() + 1
    }

    fn parse_err<T>(&self, pos: usize, message: impl Into<String>) -> Result<T, WzError> {
        Err(WzError::Parse { line: self.no, col: self.col_at(pos), message: message.into() })
    }

    fn semantic<T>(&self, pos: usize, message: impl Into<String>) -> Result<T, WzError> {
        Err(WzError::Semantic { line: self.no, col: self.col_at(pos), message: message.into() })
    }

    /// Lift an engine error on `self.src[at..]` to a located error.
    fn lift(&self, at: usize, e: Error) -> WzError {
        match e {
            Error::Syntax { offset, message } => WzError::Parse { line: self.no, col: self.col_at(at + offset), message },
            e => WzError::Semantic { line: self.no, col: self.col_at(at), message: e.to_string() },
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    fn expect(&mut self, c: u8) -> Result<(), WzError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.parse_err(self.pos, format!("expected `{}`", c as char))
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str), WzError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        if start == self.pos || self.src.as_bytes()[start].is_ascii_digit() {
            return self.parse_err(start, "expected an identifier");
        }
        Ok((start, &self.src[start..self.pos]))
    }

    /// Text up to the first of `stops` at parenthesis depth zero.
    fn until(&mut self, stops: &[u8]) -> (usize, &'a str, Option<u8>) {
        let start = self.pos;
        let mut depth = 0i32;
        while let Some(c) = self.peek() {
            match c {
                b'(' => depth += 1,
                b')' if depth > 0 => depth -= 1,
                _ if depth == 0 && stops.contains(&c) => return (start, &self.src[start..self.pos], Some(c)),
                _ => {}
            }
            self.pos += 1;
        }
        (start, &self.src[start..self.pos], None)
    }

    fn int(&mut self) -> Result<i64, WzError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().or_else(|_| self.parse_err(start, "expected an integer"))
    }

    fn exponent(&mut self) -> Result<i64, WzError> {
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let e = self.int()?;
            self.expect(b')')?;
            Ok(e)
        } else {
            self.int()
        }
    }

    fn affine(&self, at: usize, text: &str) -> Result<LinForm, WzError> {
        let p = parse_poly(text).map_err(|e| self.lift(at, e))?;
        if p.total_degree() > 1 {
            return self.semantic(at, format!("`{}` is not affine in n, k", text.trim()));
        }
        Ok(LinForm::new(p.constant_term(), p.coeff(1, 0), p.coeff(0, 1)))
    }

    fn factor(&mut self, start: usize, head: &str) -> Result<Factor, WzError> {
        self.expect(b'(')?;
        match head {
            "poch" => {
                let (at, text, stop) = self.until(b",)");
                if stop != Some(b',') {
                    return self.parse_err(self.pos, "expected `,` between base and variable");
                }
                let arg = self.affine(at, text)?;
                self.pos += 1;
                let (vp, var) = self.ident()?;
                let dir = match var {
                    "n" => Dir::N,
                    "k" => Dir::K,
                    _ => return self.parse_err(vp, "expected `n` or `k`"),
                };
                self.expect(b')')?;
                let exp = self.exponent()?;
                if dir == Dir::N && arg.b != Rational::from_integer(0.into()) {
                    return self.semantic(at, "base of an n-factor depends on n");
                }
                if dir == Dir::K && !arg.is_constant() {
                    return self.semantic(at, "base of a k-factor depends on n or k");
                }
                Ok(Factor::Poch(PochFactor { arg, dir, exp }))
            }
            "gamma" => {
                let (at, text, stop) = self.until(b")");
                if stop.is_none() {
                    return self.parse_err(self.pos, "expected `)`");
                }
                let arg = self.affine(at, text)?;
                self.pos += 1;
                let exp = self.exponent()?;
                Ok(Factor::Gamma { arg, exp })
            }
            _ => self.parse_err(start, format!("unknown factor `{head}`")),
        }
    }

    fn rest(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let at = self.pos;
        self.pos = self.src.len();
        (at, self.src[at..].trim_end())
    }

    fn rational(&mut self) -> Result<Rational, WzError> {
        let (at, text) = self.rest();
        parse_rational(text).map_err(|e| self.lift(at, e))
    }

    fn ratfunc(&mut self) -> Result<RatFunc, WzError> {
        let (at, text) = self.rest();
        parse_ratfunc(text).map_err(|e| self.lift(at, e))
    }

    fn string(&mut self) -> Result<String, WzError> {
        self.expect(b'"')?;
        let start = self.pos;
        while self.peek().is_some_and(|c| c != b'"') {
            self.pos += 1;
        }
        if self.peek().is_none() {
            return self.parse_err(start - 1, "unterminated string");
        }
        let s = self.src[start..self.pos].to_string();
        self.pos += 1;
        Ok(s)
    }

    fn claim(&mut self) -> Result<ClosedForm, WzError> {
        let mut r = Rational::from_integer(1.into());
        let (mut m, mut d, mut l): (u32, i64, Option<(i64, u32)>) = (0, 1, None);
        loop {
            self.skip_ws();
            let (at, text, stop) = self.until(b"*");
            let part = text.trim();
            let mut sub = Line { no: self.no, src: self.src, pos: at };
            if part.starts_with("pi") {
                sub.ident()?;
                sub.skip_ws();
                if sub.peek() != Some(b'^') {
                    return sub.parse_err(sub.pos, "expected `^` after `pi`");
                }
                let e = sub.exponent()?;
                if e > 0 {
                    return sub.semantic(at, "only negative powers of pi are supported");
                }
                m = (-e) as u32;
            } else if part.starts_with("sqrt") {
                sub.ident()?;
                sub.expect(b'(')?;
                d = sub.int()?;
                sub.expect(b')')?;
            } else if part.starts_with("L") {
                sub.ident()?;
                sub.expect(b'(')?;
                let chi = sub.int()?;
                sub.expect(b',')?;
                let s = sub.int()?;
                sub.expect(b')')?;
                if s < 1 {
                    return sub.semantic(at, "L-value argument must be positive");
                }
                l = Some((chi, s as u32));
            } else {
                r *= parse_rational(text).map_err(|e| self.lift(at, e))?;
                sub.pos = self.pos;
            }
            if sub.pos < self.pos && !sub.src[sub.pos..self.pos].trim().is_empty() {
                return sub.parse_err(sub.pos, "unexpected input in claim");
            }
            if stop.is_none() {
                break;
            }
            self.pos += 1;
        }
        Ok(match l {
            Some((chi, s)) => {
                if m != 0 || d != 1 {
                    return self.semantic(0, "claim mixes an L-value with pi or sqrt");
                }
                ClosedForm::l_value(r, s - 1, chi)
            }
            None => ClosedForm::pi_power(r, m, if m % 2 == 0 { d } else { -d }),
        })
    }
}

/// Strip a trailing comment that is not inside a string.
fn code_part(line: &str) -> (&str, Option<&str>) {
    let mut quoted = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => return (&line[..i], Some(&line[i + 1..])),
            _ => {}
        }
    }
    (line, None)
}

pub fn parse_wz(text: &str) -> Result<WzDocument, WzError> {
    let mut doc = WzDocument::new("", DocKind::Pair);
    let mut kind: Option<DocKind> = None;
    let mut name: Option<String> = None;
    let mut seen: Vec<&str> = Vec::new();
    let mut in_header = true;
    for (i, raw) in text.lines().enumerate() {
        let (code, comment) = code_part(raw);
        let mut ln = Line { no: i + 1, src: code, pos: 0 };
        if ln.at_end() {
            if in_header {
                if let Some(c) = comment {
                    doc.header.push(c.strip_prefix(' ').unwrap_or(c).to_string());
                }
            }
            continue;
        }
        in_header = false;
        let (kp, key) = ln.ident()?;
        match key {
            "poch" | "gamma" => {
                let mut head = (kp, key);
                loop {
                    doc.factors.push(ln.factor(head.0, head.1)?);
                    if ln.at_end() {
                        break;
                    }
                    if ln.peek() == Some(b'*') {
                        ln.pos += 1;
                    }
                    head = ln.ident()?;
                }
                continue;
            }
            "transform" => {
                let (at, t) = ln.rest();
                let m = parse_map(t).map_err(|e| ln.lift(at, e))?;
                doc.transforms.push(m);
                continue;
            }
            _ => {}
        }
        ln.expect(b'=')?;
        if seen.contains(&key) {
            return ln.semantic(kp, format!("`{key}` given twice"));
        }
        match key {
            "kind" => {
                let (vp, v) = ln.ident()?;
                kind = Some(match v {
                    "pair" => DocKind::Pair,
                    "series" => DocKind::Series,
                    "barnes" => DocKind::Barnes,
                    _ => return ln.parse_err(vp, "expected `pair`, `series` or `barnes`"),
                });
            }
            "name" => name = Some(ln.string()?),
            "z" => doc.z = Some(ln.rational()?),
            "y" => doc.y = Some(ln.rational()?),
            "base" => doc.base = Some(ln.rational()?),
            "delta" => doc.delta = Some(ln.rational()?),
            "S" => doc.s = Some(ln.ratfunc()?),
            "R" => doc.r = Some(ln.ratfunc()?),
            "poly" => doc.poly = Some(ln.ratfunc()?),
            "start" => doc.start = Some(ln.int()?),
            "claim" => doc.claim = Some(ln.claim()?),
            _ => return ln.parse_err(kp, format!("unknown key `{key}`")),
        }
        if !ln.at_end() {
            return ln.parse_err(ln.pos, "unexpected input after value");
        }
        seen.push(key);
    }
    doc.kind = kind.ok_or(WzError::Parse { line: 1, col: 1, message: "missing `kind = pair|series|barnes`".into() })?;
    doc.name = name.unwrap_or_default();
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loc(e: WzError) -> (usize, usize) {
        match e {
            WzError::Parse { line, col, .. } | WzError::Semantic { line, col, .. } => (line, col),
            e => panic!("unlocated error {e}"),
        }
    }

    #[test]
    fn missing_comma_is_located() {
        let e = parse_wz("kind = series\npoch(1/2 n)").unwrap_err();
        assert!(matches!(e, WzError::Parse { .. }));
        assert_eq!(loc(e), (2, 11));
    }

    #[test]
    fn expression_errors_carry_columns() {
        let e = parse_wz("kind = pair\nS = n + (k").unwrap_err();
        assert_eq!(loc(e).0, 2);
        let e = parse_wz("kind = pair\nzz = 1").unwrap_err();
        assert_eq!(loc(e), (2, 1));
    }

    #[test]
    fn k_dependent_base_of_k_factor() {
        let e = parse_wz("kind = pair\npoch(1 + k, k)").unwrap_err();
        assert!(matches!(e, WzError::Semantic { line: 2, col: 6, .. }));
    }

    #[test]
    fn series_document() {
        let d = parse_wz("kind = series  # degree one\npoch(1/2, n)^3 poch(1, n)^-3\nz = 1/64\npoly = 42n + 5\nclaim = 16 * pi^-1").unwrap();
        assert_eq!(d.kind, DocKind::Series);
        assert_eq!(d.factors.len(), 2);
        let c = d.claim.unwrap();
        assert_eq!((c.m, c.chi), (1, -1));
        assert_eq!(c.r, Rational::from_integer(16.into()));
    }

    #[test]
    fn claims() {
        let c = |s: &str| parse_wz(&format!("kind = series\nclaim = {s}")).unwrap().claim.unwrap();
        assert_eq!(c("3/4 * L(1, 2)"), ClosedForm::l_value(Rational::new(3.into(), 4.into()), 1, 1));
        assert_eq!(c("2048 * pi^(-4)"), ClosedForm::pi_power(Rational::from_integer(2048.into()), 4, 1));
        assert_eq!(c("1 * pi^-1 * sqrt(3)"), ClosedForm::pi_power(Rational::from_integer(1.into()), 1, -3));
        assert!(parse_wz("kind = series\nclaim = 2 * L(1, 2) * pi^-1").is_err());
    }

    #[test]
    fn header_comments_are_kept() {
        let d = parse_wz("# first\n#second\nkind = pair\n# not header").unwrap();
        assert_eq!(d.header, vec!["first".to_string(), "second".to_string()]);
    }
}
