//! Exact division and gcd of bivariate polynomials, viewing them as
//! polynomials in `n` with coefficients in `Q[k]`.

use num_traits::Zero;

use super::{primitive_part, BiPoly, FactoredPoly, Rational, UPoly};

type Poly2 = BiPoly<Rational>;

/// `a / b` when `b` divides `a` exactly, else `None`.
pub fn poly_div_exact(a: &Poly2, b: &Poly2) -> Option<Poly2> {
    assert!(!b.is_zero(), "division by zero polynomial");
    // BTreeMap keys are ordered lexicographically, so the last term leads.
    let ((bp, bq), bc) = b.terms().last().map(|(e, c)| (*e, c.clone())).expect("nonzero");
    let inv = bc.recip();
    let mut r = a.clone();
    let mut q = Poly2::zero();
    while let Some(((i, j), c)) = r.terms().last().map(|(e, c)| (*e, c.clone())) {
        if i < bp || j < bq {
            return None;
        }
        let f = c * &inv;
        let (di, dj) = (i - bp, j - bq);
        for (&(x, y), v) in b.terms() {
            r.add_term((x + di, y + dj), -(&f * v));
        }
        q.add_term((di, dj), f);
    }
    Some(q)
}

fn to_nk(p: &Poly2) -> Vec<UPoly> {
    let dn = p.degree_n() as usize;
    let dk = p.degree_k() as usize;
    let mut rows = vec![vec![Rational::zero(); dk + 1]; dn + 1];
    for (&(i, j), c) in p.terms() {
        rows[i as usize][j as usize] = c.clone();
    }
    rows.into_iter().map(UPoly::new).collect()
}

fn from_nk(rows: &[UPoly]) -> Poly2 {
    let mut out = Poly2::zero();
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row.coeffs().iter().enumerate() {
            out.add_term((i as u32, j as u32), c.clone());
        }
    }
    out
}

fn trim(mut v: Vec<UPoly>) -> Vec<UPoly> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn content(a: &[UPoly]) -> UPoly {
    a.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
}

fn divide_content(a: &[UPoly], c: &UPoly) -> Vec<UPoly> {
    a.iter().map(|x| x.divrem(c).0).collect()
}

fn prem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<UPoly> = r.iter().map(|c| c.mul(&lb)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&bc.mul(&lr));
        }
        r = trim(next);
    }
    r
}

/// Gcd normalized to integer coefficients, unit content and positive
/// graded-lexicographic leading coefficient; `gcd(0, 0) = 0`.
///
/// Rational linear factors are split off first; the primitive remainder
/// sequence only runs on what is left.
pub fn poly_gcd(a: &Poly2, b: &Poly2) -> Poly2 {
    if a.is_zero() {
        return primitive_part(b).1;
    }
    if b.is_zero() {
        return primitive_part(a).1;
    }
    if a.is_constant() || b.is_constant() {
        return Poly2::one();
    }
    let fa = FactoredPoly::from_poly(a);
    let mut rest_b = primitive_part(b).1;
    let mut g = Poly2::one();
    for (l, &e) in &fa.lin {
        let lp = l.expand();
        for _ in 0..e {
            match poly_div_exact(&rest_b, &lp) {
                Some(q) => {
                    rest_b = q;
                    g = &g * &lp;
                }
                None => break,
            }
        }
    }
    for (r, &e) in &fa.res {
        let h = prs_gcd(&r.pow(e), &rest_b);
        g = &g * &h;
    }
    primitive_part(&g).1
}

fn prs_gcd(a: &Poly2, b: &Poly2) -> Poly2 {
    if a.is_constant() || b.is_constant() {
        return Poly2::one();
    }
    let mut x = trim(to_nk(a));
    let mut y = trim(to_nk(b));
    let cx = content(&x);
    let cy = content(&y);
    let g = cx.gcd(&cy);
    x = divide_content(&x, &cx);
    y = divide_content(&y, &cy);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        if y.len() == 1 {
            y = vec![UPoly::one()];
            break;
        }
        let r = prem(&x, &y);
        if r.is_empty() {
            break;
        }
        let c = content(&r);
        x = y;
        y = divide_content(&r, &c);
    }
    let h: Vec<UPoly> = y.iter().map(|c| c.mul(&g)).collect();
    primitive_part(&from_nk(&h)).1
}
