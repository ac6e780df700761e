//! Closed-form values for special families, evaluated exactly.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::combinatorics::{binomial, binomial_int, factorial, trinomial};
use crate::{Error, ForestDistribution, Rational, Result};

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `p_{K_n}`: `P(K_n, k) = C(n-1; n-2k, k, k-1) 2^(n-2k) / C(2n-2, n)`.
pub fn complete_distribution(n: usize) -> Result<ForestDistribution> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("K_n needs n >= 2, got {n}")));
    }
    let n_i = n as i64;
    let den = binomial_int(2 * n_i - 2, n_i);
    let probs = (1..=n / 2)
        .map(|k| {
            let k_i = k as i64;
            let num = trinomial(n_i - 2 * k_i, k_i, k_i - 1) << (n - 2 * k);
            (k, ratio(num, den.clone()))
        })
        .collect();
    Ok(ForestDistribution::new(n, pair_count(n), probs))
}

/// `p_{K_{s,t}}`: `P(K_{s,t}, k) = k (s+t) C(s,k) C(t,k) / (s t C(s+t, s))`.
pub fn bipartite_distribution(s: usize, t: usize) -> Result<ForestDistribution> {
    if s == 0 || t == 0 {
        return Err(Error::InvalidSize(format!("K_{{{s},{t}}} needs s, t >= 1")));
    }
    let (s_i, t_i) = (s as i64, t as i64);
    let den = BigInt::from(s * t) * binomial_int(s_i + t_i, s_i);
    let probs = (1..=s.min(t))
        .map(|k| {
            let k_i = k as i64;
            let num = BigUint::from(k * (s + t)) * binomial(s_i, k_i) * binomial(t_i, k_i);
            (k, ratio(num, den.clone()))
        })
        .collect();
    Ok(ForestDistribution::new(s + t, s * t, probs))
}

fn check_q_range(s: usize, t: usize, a: i64, b: i64, l: i64) -> Result<()> {
    if s == 0 || t == 0 || a < 0 || b < 0 || a > s as i64 || b > t as i64 || l < -1 {
        return Err(Error::ParameterOutOfRange(format!(
            "Q_{{{s},{t}}}({a}, {b}, {l}) needs 0 <= a <= s, 0 <= b <= t, l >= -1"
        )));
    }
    Ok(())
}

/// Probability of finishing with exactly `l` more trees on `K_{s,t}`, given
/// `a` and `b` untouched vertices remain on the two sides:
/// `C(b, l) C(s+t-b-1, a-l) / C(s+t-1, a)`. `l = -1` gives zero.
pub fn bipartite_q(s: usize, t: usize, a: i64, b: i64, l: i64) -> Result<Rational> {
    check_q_range(s, t, a, b, l)?;
    let n = (s + t) as i64;
    Ok(ratio(
        binomial(b, l) * binomial(n - b - 1, a - l),
        binomial_int(n - 1, a),
    ))
}

/// The same quantity written symmetrically: `C(a, l) C(s+t-a-1, b-l) / C(s+t-1, b)`.
pub fn bipartite_q_symmetric(s: usize, t: usize, a: i64, b: i64, l: i64) -> Result<Rational> {
    check_q_range(s, t, a, b, l)?;
    let n = (s + t) as i64;
    Ok(ratio(
        binomial(a, l) * binomial(n - a - 1, b - l),
        binomial_int(n - 1, b),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFamily {
    Complete(usize),
    CompleteBipartite(usize, usize),
}

/// Expected tree count: `n(n-1)/(4n-6)` for `K_n`, `st/(s+t-1)` for `K_{s,t}`.
pub fn expected_components_closed(family: ClosedFamily) -> Result<Rational> {
    match family {
        ClosedFamily::Complete(n) if n >= 2 => Ok(ratio(n * (n - 1), 4 * n - 6)),
        ClosedFamily::CompleteBipartite(s, t) if s >= 1 && t >= 1 => Ok(ratio(s * t, s + t - 1)),
        other => Err(Error::InvalidSize(format!("{other:?}"))),
    }
}

/// Expected tree count over `G(n, m)` and a uniform ordering:
/// `C(n,2)/(2n-3) (1 - C(C(n,2)-m, 2n-3) / C(C(n,2), 2n-3))`.
pub fn gnm_expected_components(n: usize, m: usize) -> Result<Rational> {
    let pairs = pair_count(n);
    if n < 2 || m == 0 || m > pairs {
        return Err(Error::ParameterOutOfRange(format!(
            "G(n, m) needs n >= 2 and 1 <= m <= {pairs}, got n = {n}, m = {m}"
        )));
    }
    let (p, t) = (pairs as i64, 2 * n as i64 - 3);
    let miss = ratio(binomial(p - m as i64, t), binomial(p, t));
    Ok(ratio(pairs, 2 * n - 3) * (Rational::one() - miss))
}

/// Jensen lower bound on the `G(n, m)` expectation: `(mn + m) / (4m + n - 3)`.
pub fn gnm_expectation_lower_bound(n: usize, m: usize) -> Result<Rational> {
    if n < 2 || m == 0 {
        return Err(Error::ParameterOutOfRange(format!(
            "bound needs n >= 2 and m >= 1, got n = {n}, m = {m}"
        )));
    }
    Ok(ratio(m * n + m, 4 * m + n - 3))
}

/// `f_n = p_{P_{n+1}}` from `j f_j = sum_{i<j} f_i f_{j-1-i}` with `f_0 = 1`, `f_1 = x`.
pub fn path_distribution(n: usize) -> Result<ForestDistribution> {
    if n == 0 {
        return Err(Error::InvalidSize("path needs at least one edge".into()));
    }
    // f[j][k] = coefficient of x^k in f_j
    let mut f: Vec<Vec<Rational>> = vec![
        vec![Rational::one()],
        vec![Rational::zero(), Rational::one()],
    ];
    for j in 2..=n {
        let mut next = vec![Rational::zero(); j / 2 + 2];
        for i in 0..j {
            for (a, x) in f[i].iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (b, y) in f[j - 1 - i].iter().enumerate() {
                    next[a + b] += x * y;
                }
            }
        }
        let scale = ratio(1, j);
        for c in &mut next {
            *c *= &scale;
        }
        f.push(next);
    }
    let probs: BTreeMap<usize, Rational> = f[n].iter().cloned().enumerate().collect();
    Ok(ForestDistribution::new(n + 1, n, probs))
}

/// Leading Taylor coefficients of the path generating function at `t = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCoefficients {
    pub x: f64,
    pub coeffs: Vec<f64>,
}

/// Relative tolerance used when comparing [`path_series_coefficients`] with exact values.
pub const SERIES_RELATIVE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy)]
struct Complex {
    re: f64,
    im: f64,
}

impl Complex {
    fn mul(self, o: Complex) -> Complex {
        Complex {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }

    fn tan(self) -> Complex {
        let (a, b) = (2.0 * self.re, 2.0 * self.im);
        let den = libm::cos(a) + libm::cosh(b);
        Complex {
            re: libm::sin(a) / den,
            im: libm::sinh(b) / den,
        }
    }

    fn cis(theta: f64) -> Complex {
        Complex {
            re: libm::cos(theta),
            im: libm::sin(theta),
        }
    }
}

/// Taylor coefficients of `Q(t) = r tan(t r + atan(1/r))`, `r = sqrt(x - 1)`.
///
/// Computed by Cauchy's integral formula: the closed form is sampled at `N`
/// equally spaced points on a circle inside its disc of convergence and the
/// coefficients are read off a discrete Fourier sum. The radius of
/// convergence is the distance to the nearest pole, `(pi/2 - atan(1/r)) / r`;
/// the circle sits at `1 - 1/(count+1)` of it and `N >= 64 (count + 1)`,
/// which keeps both the aliasing error and the amplification of rounding
/// error far below `1e-9` relative for the coefficients returned.
pub fn path_series_coefficients(x: f64, count: usize) -> Result<SeriesCoefficients> {
    if !(x > 1.0 && x.is_finite()) || count == 0 {
        return Err(Error::InvalidParameter(format!(
            "need x > 1 and count >= 1, got x = {x}, count = {count}"
        )));
    }
    let r = libm::sqrt(x - 1.0);
    let phase = libm::atan(1.0 / r);
    let q = |t: Complex| {
        let z = Complex {
            re: t.re * r + phase,
            im: t.im * r,
        };
        let w = z.tan();
        Complex {
            re: r * w.re,
            im: r * w.im,
        }
    };
    let convergence = (core::f64::consts::FRAC_PI_2 - phase) / r;
    let rho = convergence * (1.0 - 1.0 / (count as f64 + 1.0));
    let points = (64 * (count + 1)).next_power_of_two();
    let tau = 2.0 * core::f64::consts::PI;
    let samples: Vec<Complex> = (0..points)
        .map(|j| {
            let w = Complex::cis(tau * j as f64 / points as f64);
            q(Complex {
                re: rho * w.re,
                im: rho * w.im,
            })
        })
        .collect();
    let coeffs = (0..count)
        .map(|k| {
            let mut acc = 0.0;
            for (j, s) in samples.iter().enumerate() {
                let angle = -tau * ((j * k) % points) as f64 / points as f64;
                acc += s.mul(Complex::cis(angle)).re;
            }
            acc / points as f64 / libm::pow(rho, k as f64)
        })
        .collect();
    Ok(SeriesCoefficients { x, coeffs })
}

/// `sum_K 2^(N-2K) C(N, K) C(N-K, N-2K)`, which counts `N`-subsets of `2N` items.
pub fn matching_identity_lhs(big_n: u64) -> BigUint {
    let n = big_n as i64;
    (0..=n / 2).fold(BigUint::zero(), |acc, k| {
        acc + ((binomial(n, k) * binomial(n - k, n - 2 * k)) << (n - 2 * k) as usize)
    })
}

/// `P(C_n, 1) = n 2^(n-2) / n!`.
pub fn cycle_single_component(n: usize) -> Result<Rational> {
    if n < 3 {
        return Err(Error::InvalidSize(format!("C_n needs n >= 3, got {n}")));
    }
    Ok(ratio(BigUint::from(n) << (n - 2), factorial(n as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::to_f64;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn probs(d: &ForestDistribution) -> Vec<(usize, Rational)> {
        d.probs.iter().map(|(&k, p)| (k, p.clone())).collect()
    }

    #[test]
    fn complete_examples() {
        assert_eq!(
            probs(&complete_distribution(2).unwrap()),
            vec![(1, r(1, 1))]
        );
        assert_eq!(
            probs(&complete_distribution(3).unwrap()),
            vec![(1, r(1, 1))]
        );
        assert_eq!(
            probs(&complete_distribution(4).unwrap()),
            vec![(1, r(4, 5)), (2, r(1, 5))]
        );
        assert!(complete_distribution(1).is_err());
    }

    #[test]
    fn bipartite_examples() {
        assert_eq!(
            probs(&bipartite_distribution(2, 2).unwrap()),
            vec![(1, r(2, 3)), (2, r(1, 3))]
        );
        assert_eq!(
            probs(&bipartite_distribution(2, 3).unwrap()),
            vec![(1, r(1, 2)), (2, r(1, 2))]
        );
        for t in 1..10 {
            assert_eq!(
                probs(&bipartite_distribution(1, t).unwrap()),
                vec![(1, r(1, 1))]
            );
        }
        assert!(bipartite_distribution(0, 2).is_err());
    }

    #[test]
    fn closed_distributions_sum_to_one() {
        for n in 2..=14 {
            assert_eq!(complete_distribution(n).unwrap().total(), r(1, 1));
        }
        for s in 1..=8 {
            for t in 1..=8 {
                assert_eq!(bipartite_distribution(s, t).unwrap().total(), r(1, 1));
            }
        }
    }

    #[test]
    fn q_examples() {
        for a in 0..=3 {
            assert_eq!(bipartite_q(3, 4, a, 0, 0).unwrap(), r(1, 1));
        }
        assert_eq!(bipartite_q(3, 4, 2, 0, 2).unwrap(), r(0, 1));
        assert_eq!(bipartite_q(2, 2, 2, 2, 1).unwrap(), r(2, 3));
        assert_eq!(bipartite_q(2, 2, 1, 1, -1).unwrap(), r(0, 1));
        assert!(bipartite_q(2, 2, 3, 0, 0).is_err());
        assert!(bipartite_q(2, 2, 0, 0, -2).is_err());
    }

    #[test]
    fn expectation_closed_forms() {
        assert_eq!(
            expected_components_closed(ClosedFamily::Complete(3)).unwrap(),
            r(1, 1)
        );
        assert_eq!(
            expected_components_closed(ClosedFamily::CompleteBipartite(2, 2)).unwrap(),
            r(4, 3)
        );
        assert!(expected_components_closed(ClosedFamily::Complete(1)).is_err());
    }

    #[test]
    fn complete_mean_matches_closed_form() {
        for n in 2..=12 {
            assert_eq!(
                complete_distribution(n).unwrap().mean(),
                r((n * (n - 1)) as i64, (4 * n - 6) as i64)
            );
        }
    }

    #[test]
    fn gnm_closed_forms() {
        for n in 2..=10 {
            let full = n * (n - 1) / 2;
            assert_eq!(
                gnm_expected_components(n, full).unwrap(),
                expected_components_closed(ClosedFamily::Complete(n)).unwrap()
            );
            assert!(
                gnm_expectation_lower_bound(n, full).unwrap()
                    <= gnm_expected_components(n, full).unwrap()
            );
        }
        assert_eq!(gnm_expected_components(5, 1).unwrap(), r(1, 1));
        assert_eq!(gnm_expectation_lower_bound(3, 3).unwrap(), r(1, 1));
        assert!(gnm_expected_components(4, 7).is_err());
        assert!(gnm_expected_components(4, 0).is_err());
        assert!(gnm_expectation_lower_bound(1, 1).is_err());
    }

    #[test]
    fn path_examples() {
        assert_eq!(probs(&path_distribution(1).unwrap()), vec![(1, r(1, 1))]);
        assert_eq!(probs(&path_distribution(2).unwrap()), vec![(1, r(1, 1))]);
        assert_eq!(
            probs(&path_distribution(3).unwrap()),
            vec![(1, r(2, 3)), (2, r(1, 3))]
        );
        assert!(path_distribution(0).is_err());
    }

    #[test]
    fn series_leading_terms() {
        let s = path_series_coefficients(2.0, 2).unwrap();
        assert!((s.coeffs[0] - 1.0).abs() < 1e-12);
        assert!((s.coeffs[1] - 2.0).abs() < 1e-12);
        for x in [1.01, 1.5, 3.0, 10.0, 100.0] {
            let s = path_series_coefficients(x, 1).unwrap();
            assert!((s.coeffs[0] - 1.0).abs() < 1e-12, "x = {x}");
        }
        assert!(path_series_coefficients(1.0, 3).is_err());
        assert!(path_series_coefficients(f64::NAN, 3).is_err());
        assert!(path_series_coefficients(2.0, 0).is_err());
    }

    #[test]
    fn series_obeys_the_riccati_equation() {
        // Q' = Q^2 + (x - 1), Q(0) = 1, read coefficient-wise
        for x in [2.0, 5.0, 1.3] {
            let c = path_series_coefficients(x, 16).unwrap().coeffs;
            let mut ode = vec![1.0f64];
            for n in 0..15 {
                let conv: f64 = (0..=n).map(|i| ode[i] * ode[n - i]).sum();
                let extra = if n == 0 { x - 1.0 } else { 0.0 };
                ode.push((conv + extra) / (n + 1) as f64);
            }
            for (a, b) in c.iter().zip(&ode) {
                assert!((a - b).abs() <= 1e-9 * b.abs(), "x = {x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn series_matches_exact_paths() {
        for x in [2.0, 5.0] {
            let c = path_series_coefficients(x, 11).unwrap().coeffs;
            assert!((c[0] - 1.0).abs() < 1e-12);
            for (n, coeff) in c.iter().enumerate().skip(1) {
                let exact = path_distribution(n).unwrap().evaluate(&r(x as i64, 1));
                let exact = to_f64(&exact);
                assert!((coeff - exact).abs() <= SERIES_RELATIVE_TOLERANCE * exact.abs());
            }
        }
    }

    #[test]
    fn matching_identity() {
        assert_eq!(matching_identity_lhs(0), BigUint::one());
        assert_eq!(matching_identity_lhs(2), BigUint::from(6u32));
        assert_eq!(matching_identity_lhs(10), BigUint::from(184_756u32));
        for n in 0..=30i64 {
            assert_eq!(matching_identity_lhs(n as u64), binomial(2 * n, n));
        }
    }

    #[test]
    fn cycle_one_tree() {
        assert_eq!(cycle_single_component(3).unwrap(), r(1, 1));
        assert_eq!(cycle_single_component(4).unwrap(), r(2, 3));
        assert_eq!(cycle_single_component(6).unwrap(), r(2, 15));
        assert!(cycle_single_component(2).is_err());
    }
}
