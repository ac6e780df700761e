//! Exact binomials and factorials on big integers.
//!
//! Binomials take signed arguments and vanish outside `0 <= k <= n`, which
//! is what unbounded sums over `k` expect.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `C(n, k)`, zero when `k < 0`, `n < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn binomial_int(n: i64, k: i64) -> BigInt {
    BigInt::from(binomial(n, k))
}

/// `(a + b + c)! / (a! b! c!)`, zero if any part is negative.
pub fn trinomial(a: i64, b: i64, c: i64) -> BigUint {
    if a < 0 || b < 0 || c < 0 {
        return BigUint::zero();
    }
    binomial(a + b + c, a) * binomial(b + c, b)
}
