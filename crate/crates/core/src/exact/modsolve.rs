//! Multi-modular linear solve: eliminate modulo word-sized primes, combine
//! by CRT and lift with rational reconstruction. Callers are expected to check
//! the lifted solution exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{solve_linear, LinearSolution, Rational};

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for b in BASES {
        let mut x = powm(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62` in decreasing order.
fn primes() -> impl Iterator<Item = u64> {
    let mut c: u64 = 1 << 62;
    std::iter::from_fn(move || {
        loop {
            c -= 1;
            if is_prime(c) {
                return Some(c);
            }
        }
    })
}

/// Pivot columns and, for each pivot row, the entries at the non-pivot columns.
struct ModRref {
    pivots: Vec<usize>,
    values: Vec<u64>,
}

fn rref_mod(rows: &[Vec<BigInt>], p: u64) -> ModRref {
    let pb = BigInt::from(p);
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|v| v.mod_floor(&pb).to_u64().expect("reduced")).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(pr) = (row..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(row, pr);
        let inv = powm(m[row][col], p - 2, p);
        for v in m[row].iter_mut() {
            *v = mulm(*v, inv, p);
        }
        let prow = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col] == 0 {
                continue;
            }
            let f = p - other[col];
            for c in col..ncols {
                if prow[c] != 0 {
                    other[c] = ((other[c] as u128 + f as u128 * prow[c] as u128) % p as u128) as u64;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut values = Vec::with_capacity(pivots.len() * free.len());
    for r in 0..pivots.len() {
        for &c in &free {
            values.push(m[r][c]);
        }
    }
    ModRref { pivots, values }
}

/// `r/s` with `r = a mod m` and both below `sqrt(m/2)`.
fn reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Rational::new(r1, s1))
}

/// Better pivot pattern: larger rank first, then lexicographically smaller.
fn better(a: &[usize], b: &[usize]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a < b)
}

const MAX_PRIMES: usize = 400;

/// Same contract as [`solve_linear`], computed modularly.
pub fn solve_linear_modular(matrix: &[Vec<Rational>], rhs: &[Rational]) -> LinearSolution {
    assert_eq!(matrix.len(), rhs.len(), "row count mismatch");
    let ncols = matrix.first().map_or(0, |r| r.len());
    let rows: Vec<Vec<BigInt>> = matrix
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let l = r.iter().chain(std::iter::once(b)).fold(BigInt::one(), |l, v| l.lcm(v.denom()));
            r.iter().chain(std::iter::once(b)).map(|v| v.numer() * (&l / v.denom())).collect()
        })
        .collect();
    let mut pattern: Option<Vec<usize>> = None;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut seen = 0;
    let mut last: Option<Vec<Rational>> = None;
    for p in primes().take(MAX_PRIMES) {
        let red = rref_mod(&rows, p);
        match &pattern {
            Some(pat) if *pat == red.pivots => {}
            Some(pat) if !better(&red.pivots, pat) => continue,
            _ => {
                pattern = Some(red.pivots.clone());
                acc = vec![BigInt::zero(); red.values.len()];
                modulus = BigInt::one();
                seen = 0;
                last = None;
            }
        }
        let pb = BigInt::from(p);
        // CRT: x = acc + modulus * ((v - acc) / modulus mod p)
        let minv = BigInt::from(powm((&modulus % &pb).to_u64().expect("reduced"), p - 2, p));
        for (a, &v) in acc.iter_mut().zip(&red.values) {
            let t = ((BigInt::from(v) - &*a) * &minv).mod_floor(&pb);
            *a += &modulus * t;
        }
        modulus *= &pb;
        seen += 1;
        let pat = pattern.as_ref().expect("set");
        if pat.last() == Some(&ncols) {
            if seen >= 2 {
                return LinearSolution::Inconsistent;
            }
            continue;
        }
        let lifted: Option<Vec<Rational>> = acc.iter().map(|a| reconstruct(a, &modulus)).collect();
        if let Some(v) = lifted {
            if last.as_ref() == Some(&v) {
                return assemble(pat, &v, ncols);
            }
            last = Some(v);
        }
    }
    solve_linear(matrix, rhs)
}

fn assemble(pivots: &[usize], values: &[Rational], ncols: usize) -> LinearSolution {
    let free: Vec<usize> = (0..=ncols).filter(|c| !pivots.contains(c)).collect();
    let at = |r: usize, c: usize| values[r * free.len() + free.iter().position(|&f| f == c).expect("free")].clone();
    let mut particular = vec![Rational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = at(r, ncols);
    }
    if pivots.len() == ncols {
        return LinearSolution::Unique(particular);
    }
    let basis = free
        .iter()
        .filter(|&&f| f < ncols)
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -at(r, f);
            }
            v
        })
        .collect();
    LinearSolution::Family { particular, basis }
}
