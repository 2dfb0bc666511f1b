//! The constant pi from the series `sum (1/2)_n^3 / n!^3 (42n + 5) / 64^n = 16/pi`.

use std::sync::Mutex;

use num_bigint::BigInt;

use super::bsplit::split;
use super::real::{digits_to_bits, BigFloat};

static CACHE: Mutex<Option<BigFloat>> = Mutex::new(None);

fn compute(bits: usize) -> BigFloat {
    let work = bits + 32;
    // each term gains log2(64) = 6 bits
    let terms = (work / 6 + 4) as u64;
    let leaf = |j: u64| {
        let a = BigInt::from(2 * j - 1);
        let b = BigInt::from(j);
        (&a * &a * &a, BigInt::from(512) * &b * &b * &b, BigInt::from(42 * j + 5))
    };
    let s = split(1, terms, &leaf);
    let five = BigInt::from(5);
    let num = &five * &s.q + &s.t;
    let sum = BigFloat::from_bigint(&num, work) / BigFloat::from_bigint(&s.q, work);
    (BigFloat::from_i64(16, work) / sum).set_precision(bits)
}

/// Pi rounded to `bits` bits; the most precise value so far is cached.
pub fn pi_bits(bits: usize) -> BigFloat {
    let mut guard = CACHE.lock().expect("pi cache");
    if let Some(v) = guard.as_ref() {
        if v.precision() >= bits + 32 {
            return v.set_precision(bits);
        }
    }
    let v = compute(bits + 32);
    *guard = Some(v.clone());
    v.set_precision(bits)
}

/// Pi to `digits` significant decimal digits.
pub fn pi_const(digits: u32) -> BigFloat {
    pi_bits(digits_to_bits(digits))
}
