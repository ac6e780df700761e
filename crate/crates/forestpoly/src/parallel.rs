//! Rayon drivers for the Monte Carlo estimators.
//!
//! Each trial seeds its own generator from `(seed, trial)`, so splitting the
//! trials across threads changes nothing: counts are integers and are added
//! up, G(n, m) sample means are collected in index order.

use std::collections::BTreeMap;

use forestpoly_core::monte_carlo::{
    check_gnm, decay_graph, decay_row, decay_row_seed, gnm_sample_mean, summarize_gnm,
    tally_trials, DecayRow, EstimatedDistribution, GnmEstimate,
};
use forestpoly_core::{Error, Graph, Result};
use rayon::prelude::*;

/// Trials handled by one task.
const CHUNK: u64 = 8192;

fn merge(mut a: BTreeMap<usize, u64>, b: BTreeMap<usize, u64>) -> BTreeMap<usize, u64> {
    for (k, c) in b {
        *a.entry(k).or_insert(0) += c;
    }
    a
}

fn parallel_tally(g: &Graph, seed: u64, trials: u64) -> BTreeMap<usize, u64> {
    (0..trials.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| tally_trials(g, seed, c * CHUNK..((c + 1) * CHUNK).min(trials)))
        .reduce(BTreeMap::new, merge)
}

/// Same result as `monte_carlo::estimate_distribution`, computed on all cores.
pub fn estimate_distribution(g: &Graph, trials: u64, seed: u64) -> Result<EstimatedDistribution> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    Ok(EstimatedDistribution::from_counts(
        seed,
        parallel_tally(g, seed, trials),
    ))
}

/// Same result as `monte_carlo::estimate_gnm_expectation`, computed on all cores.
pub fn estimate_gnm_expectation(
    n: usize,
    m: usize,
    graph_samples: u64,
    orderings_per_graph: u64,
    seed: u64,
) -> Result<GnmEstimate> {
    check_gnm(n, m, graph_samples, orderings_per_graph)?;
    let means = (0..graph_samples)
        .into_par_iter()
        .map(|i| gnm_sample_mean(n, m, orderings_per_graph, seed, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize_gnm(&means))
}

/// Same result as `monte_carlo::single_component_decay`, computed on all cores.
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
            decay_row(&g, parallel_tally(&g, decay_row_seed(seed, i), trials))
        })
        .collect()
}
