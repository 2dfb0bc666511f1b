//! Binary splitting of hypergeometric-type sums with integer leaves.

use num_bigint::BigInt;
use num_traits::One;

/// Products and weighted sum over a half-open index range.
#[derive(Clone, Debug)]
pub struct Split {
    pub p: BigInt,
    pub q: BigInt,
    pub t: BigInt,
}

/// Leaf data `(p_j, q_j, a_j)` for index `j`.
pub type Leaf<'a> = dyn Fn(u64) -> (BigInt, BigInt, BigInt) + Sync + 'a;

/// For `a < b` returns `P = prod p_j`, `Q = prod q_j` and `T` with
/// `T / Q = sum_{j=a}^{b-1} a_j prod_{i=a}^{j} p_i / q_i`.
pub fn split(a: u64, b: u64, leaf: &Leaf<'_>) -> Split {
    debug_assert!(a < b);
    if b - a == 1 {
        let (p, q, aj) = leaf(a);
        let t = &aj * &p;
        return Split { p, q, t };
    }
    let m = a + (b - a) / 2;
    let (l, r) = if b - a > 256 {
        rayon::join(|| split(a, m, leaf), || split(m, b, leaf))
    } else {
        (split(a, m, leaf), split(m, b, leaf))
    };
    Split { t: &l.t * &r.q + &l.p * &r.t, p: l.p * r.p, q: l.q * r.q }
}

/// Empty range identity.
pub fn empty() -> Split {
    Split { p: BigInt::one(), q: BigInt::one(), t: BigInt::from(0) }
}
