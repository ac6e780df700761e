//! Component-count distributions `k -> P(G, k)`, i.e. the coefficients of `p_G(x)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::factorial;
use crate::{Error, Result};

/// Exact rational number.
pub type Rational = BigRational;

/// Exact law of the number of trees built by the process.
///
/// `probs` only holds non-zero coefficients. An edgeless graph has the
/// empty map, which acts as the identity for [`ForestDistribution::convolve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestDistribution {
    pub n: usize,
    pub m: usize,
    pub probs: BTreeMap<usize, Rational>,
}

impl ForestDistribution {
    pub fn new(n: usize, m: usize, probs: BTreeMap<usize, Rational>) -> Self {
        let probs = probs.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        ForestDistribution { n, m, probs }
    }

    /// Builds `P(G, k) = F(G, k) / m!` from ordering counts indexed by `k`.
    pub fn from_counts(n: usize, m: usize, counts: &[BigUint]) -> Self {
        let denom = BigInt::from(factorial(m as u64));
        let probs = counts
            .iter()
            .enumerate()
            .filter(|(k, c)| *k > 0 && !c.is_zero())
            .map(|(k, c)| (k, Rational::new(BigInt::from(c.clone()), denom.clone())))
            .collect();
        ForestDistribution { n, m, probs }
    }

    /// `P(G, k)`, zero outside the support.
    pub fn prob(&self, k: usize) -> Rational {
        self.probs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total(&self) -> Rational {
        self.probs.values().fold(Rational::zero(), |acc, p| acc + p)
    }

    /// `sum_k k P(G, k)`.
    pub fn mean(&self) -> Rational {
        self.probs.iter().fold(Rational::zero(), |acc, (&k, p)| {
            acc + p * Rational::from_integer(k.into())
        })
    }

    /// Distribution of the disjoint union (product of the polynomials).
    pub fn convolve(&self, other: &ForestDistribution) -> ForestDistribution {
        let mut probs: BTreeMap<usize, Rational> = BTreeMap::new();
        if self.probs.is_empty() {
            probs = other.probs.clone();
        } else if other.probs.is_empty() {
            probs = self.probs.clone();
        } else {
            for (&a, p) in &self.probs {
                for (&b, q) in &other.probs {
                    *probs.entry(a + b).or_insert_with(Rational::zero) += p * q;
                }
            }
        }
        ForestDistribution::new(self.n + other.n, self.m + other.m, probs)
    }

    /// Same coefficients, whatever the graph sizes.
    pub fn same_polynomial(&self, other: &ForestDistribution) -> bool {
        self.probs == other.probs
    }

    /// `P(k)^2 >= P(k-1) P(k+1)` for every `k`, with absent coefficients read as zero.
    pub fn is_log_concave(&self) -> bool {
        let Some((&hi, _)) = self.probs.last_key_value() else {
            return true;
        };
        (1..=hi).all(|k| {
            let left = if k == 0 {
                Rational::zero()
            } else {
                self.prob(k - 1)
            };
            let mid = self.prob(k);
            &mid * &mid >= left * self.prob(k + 1)
        })
    }

    /// `p_G(x)` evaluated exactly.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.probs
            .iter()
            .fold(Rational::zero(), |acc, (&k, p)| acc + p * pow(x, k))
    }

    /// `p_G(x)` in floating point.
    pub fn evaluate_f64(&self, x: f64) -> f64 {
        self.probs
            .iter()
            .map(|(&k, p)| to_f64(p) * libm::pow(x, k as f64))
            .sum()
    }

    /// True if `P(k) * m!` is an integer for every `k`.
    pub fn counts_are_integral(&self) -> bool {
        let f = Rational::from_integer(BigInt::from(factorial(self.m as u64)));
        self.probs.values().all(|p| (p * &f).is_integer())
    }
}

fn pow(x: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `num/den`, always with the denominator, e.g. `1/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidParameter(format!("not a rational: {text:?}"));
    let (num, den) = match text.trim().split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() || den.is_negative() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}
