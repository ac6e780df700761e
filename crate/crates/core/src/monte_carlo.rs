//! Seeded Monte Carlo estimates.
//!
//! Every trial owns its generator: ChaCha8 keyed by
//! `ChaCha8Rng::seed_from_u64(seed)` (the `rand_core` PCG32 expansion of the
//! 64-bit seed) with the stream id set to the trial index. Trials can run in
//! any order or on any number of threads and still draw the same numbers.
//! Orderings come from a Fisher-Yates shuffle of the edge positions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cheeger::{cheeger_constant, MAX_CHEEGER_VERTICES};
use crate::generate::{gnm, random_regular};
use crate::process::kappa_for_order;
use crate::{Error, Graph, Rational, Result};

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// SplitMix64 finaliser, used to derive sub-seeds.
pub fn mix_seed(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Empirical law of the tree count.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimatedDistribution {
    pub trials: u64,
    pub counts: BTreeMap<usize, u64>,
    pub mean_kappa: f64,
    /// Plug-in standard error `sqrt(var / trials)`.
    pub stderr_kappa: f64,
    pub seed: u64,
}

impl EstimatedDistribution {
    pub fn from_counts(seed: u64, counts: BTreeMap<usize, u64>) -> Self {
        let trials: u64 = counts.values().sum();
        let t = trials as f64;
        let mean = counts
            .iter()
            .map(|(&k, &c)| k as f64 * c as f64)
            .sum::<f64>()
            / t;
        let var = counts
            .iter()
            .map(|(&k, &c)| (k as f64 - mean) * (k as f64 - mean) * c as f64)
            .sum::<f64>()
            / t;
        EstimatedDistribution {
            trials,
            counts,
            mean_kappa: mean,
            stderr_kappa: libm::sqrt(var / t),
            seed,
        }
    }

    /// Fraction of trials that ended with `k` trees.
    pub fn frequency(&self, k: usize) -> f64 {
        self.counts.get(&k).copied().unwrap_or(0) as f64 / self.trials as f64
    }
}

/// Tree count of trial `trial`: shuffle the edge positions with that trial's generator.
pub fn sample_kappa(
    g: &Graph,
    seed: u64,
    trial: u64,
    order: &mut Vec<usize>,
    seen: &mut [bool],
) -> usize {
    let mut rng = trial_rng(seed, trial);
    order.clear();
    order.extend(0..g.m());
    order.shuffle(&mut rng);
    kappa_for_order(g, order, seen)
}

/// Counts of trials `range` for `g`; partial results from disjoint ranges add up.
pub fn tally_trials(g: &Graph, seed: u64, range: core::ops::Range<u64>) -> BTreeMap<usize, u64> {
    let mut counts = BTreeMap::new();
    let mut order = Vec::with_capacity(g.m());
    let mut seen = vec![false; g.n()];
    for trial in range {
        *counts
            .entry(sample_kappa(g, seed, trial, &mut order, &mut seen))
            .or_insert(0) += 1;
    }
    counts
}

pub fn estimate_distribution(g: &Graph, trials: u64, seed: u64) -> Result<EstimatedDistribution> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    Ok(EstimatedDistribution::from_counts(
        seed,
        tally_trials(g, seed, 0..trials),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GnmEstimate {
    pub mean: f64,
    /// Standard error from the spread of per-graph means, which are independent.
    pub stderr: f64,
}

/// Validates the arguments of [`estimate_gnm_expectation`].
pub fn check_gnm(n: usize, m: usize, graph_samples: u64, orderings: u64) -> Result<()> {
    let pairs = n * n.saturating_sub(1) / 2;
    if n < 2 || m == 0 || m > pairs || graph_samples == 0 || orderings == 0 {
        return Err(Error::ParameterOutOfRange(format!(
            "G(n, m) simulation needs n >= 2, 1 <= m <= {pairs} and positive sample counts"
        )));
    }
    Ok(())
}

/// Mean tree count over `orderings` orderings of graph sample `index`.
///
/// Sample `index` draws its graph and then its orderings from `trial_rng(seed, index)`.
pub fn gnm_sample_mean(n: usize, m: usize, orderings: u64, seed: u64, index: u64) -> Result<f64> {
    let mut rng = trial_rng(seed, index);
    let g = gnm(n, m, &mut rng)?;
    let mut order: Vec<usize> = (0..m).collect();
    let mut seen = vec![false; n];
    let mut total = 0usize;
    for _ in 0..orderings {
        order.shuffle(&mut rng);
        total += kappa_for_order(&g, &order, &mut seen);
    }
    Ok(total as f64 / orderings as f64)
}

/// Combines per-graph means into a [`GnmEstimate`] (plug-in variance).
pub fn summarize_gnm(sample_means: &[f64]) -> GnmEstimate {
    let t = sample_means.len() as f64;
    let mean = sample_means.iter().sum::<f64>() / t;
    let var = sample_means
        .iter()
        .map(|x| (x - mean) * (x - mean))
        .sum::<f64>()
        / t;
    GnmEstimate {
        mean,
        stderr: libm::sqrt(var / t),
    }
}

pub fn estimate_gnm_expectation(
    n: usize,
    m: usize,
    graph_samples: u64,
    orderings_per_graph: u64,
    seed: u64,
) -> Result<GnmEstimate> {
    check_gnm(n, m, graph_samples, orderings_per_graph)?;
    let means = (0..graph_samples)
        .map(|i| gnm_sample_mean(n, m, orderings_per_graph, seed, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize_gnm(&means))
}

/// One row of the single-tree decay experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayRow {
    pub n: usize,
    pub trials: u64,
    pub single_tree_trials: u64,
    pub p1_hat: f64,
    /// `-ln(p1_hat) / n`; infinite when no trial ended with one tree.
    pub neg_log_p1_over_n: f64,
    /// Present when `n` is small enough for exact subset enumeration.
    pub cheeger: Option<Rational>,
}

/// Seed used for row `index` of a decay run.
pub fn decay_row_seed(seed: u64, index: usize) -> u64 {
    mix_seed(seed ^ mix_seed(index as u64 + 1))
}

/// Random `d`-regular graph for row `index`; it uses stream `u64::MAX` of the row seed,
/// which no ordering trial touches.
pub fn decay_graph(n: usize, d: usize, seed: u64, index: usize) -> Result<Graph> {
    random_regular(n, d, &mut trial_rng(decay_row_seed(seed, index), u64::MAX))
}

pub fn decay_row(g: &Graph, counts: BTreeMap<usize, u64>) -> Result<DecayRow> {
    let trials: u64 = counts.values().sum();
    let ones = counts.get(&1).copied().unwrap_or(0);
    let p1_hat = ones as f64 / trials as f64;
    let n = g.n();
    let cheeger = if n <= MAX_CHEEGER_VERTICES && g.m() > 0 {
        Some(cheeger_constant(g)?)
    } else {
        None
    };
    Ok(DecayRow {
        n,
        trials,
        single_tree_trials: ones,
        p1_hat,
        neg_log_p1_over_n: -libm::log(p1_hat) / n as f64,
        cheeger,
    })
}

/// For each `n`, sample a random `d`-regular graph and estimate `P(G, 1)`.
pub fn single_component_decay(
    d: usize,
    n_values: &[usize],
    trials: u64,
    seed: u64,
) -> Result<Vec<DecayRow>> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    n_values
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let g = decay_graph(n, d, seed, i)?;
            if g.m() == 0 {
                return Err(Error::InfeasibleSpec(format!(
                    "{d}-regular graph on {n} vertices has no edges"
                )));
            }
            decay_row(&g, tally_trials(&g, decay_row_seed(seed, i), 0..trials))
        })
        .collect()
}
