//! The forest-building process itself, and the brute-force law over all orderings.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::{EdgeId, Error, ForestDistribution, Graph, Result};

/// Largest edge count [`brute_force_distribution`] will enumerate (10! orderings).
pub const MAX_BRUTE_FORCE_EDGES: usize = 10;

/// A permutation of a graph's edge ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrdering(Vec<EdgeId>);

impl EdgeOrdering {
    pub fn new(perm: Vec<EdgeId>, m: usize) -> Result<Self> {
        if perm.len() != m {
            return Err(Error::InvalidOrdering);
        }
        let mut seen = vec![false; m];
        for e in &perm {
            if e.0 >= m || core::mem::replace(&mut seen[e.0], true) {
                return Err(Error::InvalidOrdering);
            }
        }
        Ok(EdgeOrdering(perm))
    }

    pub fn identity(m: usize) -> Self {
        EdgeOrdering((0..m).map(EdgeId).collect())
    }

    pub fn as_slice(&self) -> &[EdgeId] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessResult {
    pub kept: BTreeSet<EdgeId>,
    /// Number of trees in the kept forest; isolated vertices are not counted.
    pub kappa: usize,
}

/// Runs the process on `g` scanning edges in `ord`'s order.
pub fn run_process(g: &Graph, ord: &EdgeOrdering) -> Result<ProcessResult> {
    if ord.0.len() != g.m() {
        return Err(Error::InvalidOrdering);
    }
    let mut seen = vec![false; g.n()];
    let mut kept = BTreeSet::new();
    let mut kappa = 0;
    for &e in &ord.0 {
        let (u, v) = *g.edges().get(e.0).ok_or(Error::InvalidOrdering)?;
        match (seen[u], seen[v]) {
            (true, true) => {}
            (su, sv) => {
                if !su && !sv {
                    kappa += 1;
                }
                seen[u] = true;
                seen[v] = true;
                if !kept.insert(e) {
                    return Err(Error::InvalidOrdering);
                }
            }
        }
    }
    Ok(ProcessResult { kept, kappa })
}

/// Runs the process for a uniformly random ordering drawn by the caller.
///
/// Returns only the tree count; `order` is the scan order of edge positions.
pub(crate) fn kappa_for_order(g: &Graph, order: &[usize], seen: &mut [bool]) -> usize {
    seen.iter_mut().for_each(|s| *s = false);
    let mut kappa = 0;
    for &e in order {
        let (u, v) = g.edges()[e];
        if !seen[u] && !seen[v] {
            kappa += 1;
        }
        seen[u] = true;
        seen[v] = true;
    }
    kappa
}

/// Exact law of the tree count by walking every ordering.
///
/// Orderings are explored depth first; siblings share the prefix state
/// (touched vertices and trees so far), so the walk never materialises a
/// permutation.
pub fn brute_force_distribution(g: &Graph) -> Result<ForestDistribution> {
    let m = g.m();
    if m > MAX_BRUTE_FORCE_EDGES {
        return Err(Error::TooManyEdges(m, MAX_BRUTE_FORCE_EDGES));
    }
    // compress touched vertices into bit positions (at most 2m of them)
    let mut index = vec![usize::MAX; g.n()];
    let mut next = 0;
    let mut edges = Vec::with_capacity(m);
    for &(u, v) in g.edges() {
        for w in [u, v] {
            if index[w] == usize::MAX {
                index[w] = next;
                next += 1;
            }
        }
        edges.push((1u32 << index[u]) | (1u32 << index[v]));
    }
    let mut counts = vec![0u64; m + 1];
    fn walk(edges: &[u32], unused: u32, seen: u32, trees: usize, counts: &mut [u64]) {
        if unused == 0 {
            counts[trees] += 1;
            return;
        }
        let mut rest = unused;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let ends = edges[e];
            let fresh = usize::from(seen & ends == 0);
            walk(
                edges,
                unused & !(1 << e),
                seen | ends,
                trees + fresh,
                counts,
            );
        }
    }
    walk(&edges, (1u32 << m) - 1, 0, 0, &mut counts);
    let counts: Vec<BigUint> = counts.into_iter().map(BigUint::from).collect();
    Ok(ForestDistribution::from_counts(g.n(), m, &counts))
}
