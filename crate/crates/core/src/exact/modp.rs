//! Arithmetic modulo the Mersenne prime 2^61 - 1, used to reject nonzero
//! values cheaply before an exact check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{BiPoly, Rational};

pub const P: u64 = (1 << 61) - 1;

pub fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn add(a: u64, b: u64) -> u64 {
    (a + b) % P
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

pub fn from_int(v: &BigInt) -> u64 {
    v.mod_floor(&BigInt::from(P)).to_u64().expect("reduced")
}

/// Residue of a rational, `None` when the denominator vanishes mod p.
pub fn from_rat(r: &Rational) -> Option<u64> {
    let d = from_int(r.denom());
    if d == 0 {
        return None;
    }
    Some(mul(from_int(r.numer()), inv(d)))
}

/// A polynomial with coefficients reduced mod p.
pub struct ModPoly {
    terms: Vec<((u32, u32), u64)>,
    dn: u32,
    dk: u32,
}

impl ModPoly {
    pub fn new(p: &BiPoly<Rational>) -> Option<Self> {
        let mut terms = Vec::with_capacity(p.len());
        for (e, c) in p.terms() {
            terms.push((*e, from_rat(c)?));
        }
        Some(ModPoly { terms, dn: p.degree_n(), dk: p.degree_k() })
    }

    pub fn eval(&self, n: u64, k: u64) -> u64 {
        let mut np = vec![1u64; self.dn as usize + 1];
        let mut kp = vec![1u64; self.dk as usize + 1];
        for i in 1..np.len() {
            np[i] = mul(np[i - 1], n);
        }
        for j in 1..kp.len() {
            kp[j] = mul(kp[j - 1], k);
        }
        self.terms
            .iter()
            .fold(0, |acc, ((i, j), c)| add(acc, mul(*c, mul(np[*i as usize], kp[*j as usize]))))
    }
}

/// Residue of a univariate polynomial (low degree first) at `x`.
pub fn eval_u(coeffs: &[u64], x: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, c| add(mul(acc, x), *c))
}

pub fn neg(a: u64) -> u64 {
    (P - a) % P
}
