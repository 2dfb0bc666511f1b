//! Certificate search: universal denominator plus a polynomial ansatz for
//! the numerator, solved exactly over the rationals.

use num_traits::{One, Zero};

use super::{r_side, s_side, verify_pair, WZPair};
use crate::exact::{solve_linear_modular, FactoredPoly, FactoredRat, LinearSolution, RatFunc, Rational};
use crate::hyperterm::HyperTerm;
use crate::{Error, Poly2, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub r: RatFunc,
    pub degree_bound_used: u32,
}

#[derive(Clone, Copy, Debug)]
pub struct MateOptions {
    /// Total degree bound of the ansatz numerator.
    pub degree_bound: u32,
    /// Largest power of the `k`-free denominator factors tried.
    pub max_multiplicity: u32,
}

impl Default for MateOptions {
    fn default() -> Self {
        MateOptions { degree_bound: 8, max_multiplicity: 3 }
    }
}

fn kshift(p: &FactoredPoly, h: i64) -> FactoredPoly {
    p.shift(&Rational::zero(), &Rational::from_integer(h.into())).monic()
}

/// Largest `h >= 0` with a factor `f` of `b` such that `f(k + h)` divides `a`.
fn dispersion(a: &FactoredPoly, b: &FactoredPoly) -> i64 {
    let mut best = -1;
    for m in b.lin.keys() {
        if m.beta.is_zero() {
            continue;
        }
        for l in a.lin.keys() {
            if l.alpha != m.alpha || l.beta != m.beta {
                continue;
            }
            let diff = &l.gamma - &m.gamma;
            if (&diff % &m.beta).is_zero() {
                let h: i64 = (&diff / &m.beta).try_into().unwrap_or(-1);
                best = best.max(h);
            }
        }
    }
    for r in b.res.keys() {
        if a.res.contains_key(r) {
            best = best.max(0);
        }
    }
    best
}

/// Denominator bound for rational solutions of `p1 X(k+1) + p0 X(k) = rhs`.
fn universal_denominator(p1: &FactoredPoly, p0: &FactoredPoly) -> FactoredPoly {
    let mut a = kshift(p1, -1);
    let mut b = p0.monic();
    let mut u = FactoredPoly::one();
    let n = dispersion(&a, &b);
    for i in (0..=n).rev() {
        let d = a.gcd(&kshift(&b, i));
        if d.is_constant() {
            continue;
        }
        a = a.div_exact(&d).expect("gcd divides");
        b = b.div_exact(&kshift(&d, -i)).expect("shifted gcd divides");
        for j in 0..=i {
            u = u.mul(&kshift(&d, -j));
        }
    }
    u
}

fn radical(p: &FactoredPoly) -> FactoredPoly {
    let mut out = FactoredPoly::one();
    for l in p.lin.keys() {
        out.lin.insert(l.clone(), 1);
    }
    for r in p.res.keys() {
        out.res.insert(r.clone(), 1);
    }
    out
}

/// Deterministic sample points.
struct Points(u64);

impl Points {
    fn next(&mut self) -> (Rational, Rational) {
        let mut draw = || {
            self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((self.0 >> 33) % 97) as i64 - 48
        };
        let n = draw();
        let k = draw();
        (Rational::from_integer(n.into()), Rational::from_integer(k.into()))
    }
}

fn monomials(deg: u32) -> Vec<(u32, u32)> {
    let mut v = Vec::new();
    for t in 0..=deg {
        for i in 0..=t {
            v.push((i, t - i));
        }
    }
    v
}

fn rpow(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

/// Numerator `P` with `q P(k+1)/D(k+1) - P/D = rhs`, or `None`.
fn ansatz(q: &FactoredRat, rhs: &FactoredRat, den: &FactoredPoly, deg: u32) -> Option<Poly2> {
    let (a, b) = (&q.num, &q.den);
    let (c, d) = (&rhs.num, &rhs.den);
    let d1 = den.shift(&Rational::zero(), &Rational::one());
    let m = b.monic().mul(&d1.monic()).lcm(den).lcm(&d.monic());
    let x1 = a
        .mul(&m.div_exact(&b.monic().mul(&d1.monic())).expect("lcm"))
        .mul(&FactoredPoly::constant(Rational::one() / (&b.unit * &d1.unit * &den.unit)));
    let x0 = m.div_exact(den).expect("lcm").mul(&FactoredPoly::constant(den.unit.recip()));
    let y = c
        .mul(&m.div_exact(&d.monic()).expect("lcm"))
        .mul(&FactoredPoly::constant(d.unit.recip()));
    let basis = monomials(deg);
    let mut pts = Points(0x5eed ^ deg as u64);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs_v: Vec<Rational> = Vec::new();
    let mut push = |rows: &mut Vec<Vec<Rational>>, rhs_v: &mut Vec<Rational>, count: usize| {
        for _ in 0..count {
            let (n, k) = pts.next();
            let k1 = &k + Rational::one();
            let v1 = x1.eval(&n, &k);
            let v0 = x0.eval(&n, &k);
            let row = basis
                .iter()
                .map(|&(i, j)| rpow(&n, i) * (&v1 * rpow(&k1, j) - &v0 * rpow(&k, j)))
                .collect();
            rows.push(row);
            rhs_v.push(y.eval(&n, &k));
        }
    };
    push(&mut rows, &mut rhs_v, basis.len() + 12);
    for round in 0..3 {
        match solve_linear_modular(&rows, &rhs_v) {
            LinearSolution::Inconsistent => return None,
            LinearSolution::Unique(sol) => return Some(build(&basis, &sol)),
            LinearSolution::Family { particular, .. } => {
                if round == 2 {
                    return Some(build(&basis, &particular));
                }
                push(&mut rows, &mut rhs_v, basis.len());
            }
        }
    }
    None
}

fn build(basis: &[(u32, u32)], sol: &[Rational]) -> Poly2 {
    let mut p = Poly2::zero();
    for (&(i, j), c) in basis.iter().zip(sol) {
        p.add_term((i, j), c.clone());
    }
    p
}

/// Rational `X` with `q X(n, k+1) - X(n, k) = rhs`.
pub(crate) fn solve_recurrence(q: &FactoredRat, rhs: &FactoredRat, opts: MateOptions) -> Result<(RatFunc, u32)> {
    if rhs.is_zero() {
        return Ok((RatFunc::zero(), 0));
    }
    let p1 = q.num.mul(&rhs.den);
    let p0 = q.den.mul(&rhs.den);
    let (_, p1k) = p1.split_k_free();
    let (_, p0k) = p0.split_k_free();
    let u = universal_denominator(&p1k.monic(), &p0k.monic());
    let (free, _) = rhs.den.split_k_free();
    let v = radical(&free);
    for mult in 0..=opts.max_multiplicity {
        let den = u.mul(&v.pow(mult));
        let Some(p) = ansatz(q, rhs, &den, opts.degree_bound) else { continue };
        let Ok(x) = RatFunc::new(p, den.expand()) else { continue };
        let fx = FactoredRat::from_ratfunc(&x);
        let lhs = q.mul(&fx.shift(&Rational::zero(), &Rational::one())).sub(&fx);
        if lhs.sub(rhs).is_zero() {
            return Ok((x, opts.degree_bound));
        }
    }
    Err(Error::NoCertificateAtBound { degree: opts.degree_bound, multiplicity: opts.max_multiplicity })
}

/// Find `R` for the pair `(U, S, z, y)`.
pub fn find_mate(u: &HyperTerm, s: &RatFunc, z: &Rational, y: &Rational, degree_bound: u32) -> Result<Certificate> {
    let p = WZPair::new("", u.clone(), s.clone(), None, z.clone(), y.clone());
    find_mate_with(&p, MateOptions { degree_bound, ..MateOptions::default() })
}

pub fn find_mate_with(p: &WZPair, opts: MateOptions) -> Result<Certificate> {
    let (qn, qk) = p.quotients()?;
    let rhs = s_side(&qn, &p.s);
    let (r, used) = solve_recurrence(&qk, &rhs, opts)?;
    let mut checked = p.clone();
    checked.r = Some(r.clone());
    assert!(verify_pair(&checked)?.verified, "certificate failed verification");
    Ok(Certificate { r, degree_bound_used: used })
}

/// Find `S` from `R` by running the same search with `n` and `k` exchanged.
pub fn find_s(p: &WZPair, opts: MateOptions) -> Result<RatFunc> {
    let r = p.r.as_ref().ok_or(Error::MissingCertificate)?;
    let (qn, qk) = p.quotients()?;
    let rhs = r_side(&qk, r).swap_vars();
    let (s_sw, _) = solve_recurrence(&qn.swap_vars(), &rhs, opts)?;
    let s = s_sw.swap_vars();
    let mut checked = p.clone();
    checked.s = s.clone();
    assert!(verify_pair(&checked)?.verified, "recovered S failed verification");
    Ok(s)
}
