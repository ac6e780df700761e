//! Exhaustive searches over small graphs and trees.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::canon::{are_isomorphic, canonicalize, BitGraph, CanonicalKey, MAX_CANON_VERTICES};
use crate::generate::{generate, GeneratorSpec};
use crate::graph6::serialize_graph6;
use crate::{is_edge_transitive, Error, ForestDistribution, ForestEngine, Graph, Rational, Result};

/// Largest `n` for [`enumerate_connected_graphs`] and the searches built on it.
pub const MAX_SEARCH_VERTICES: usize = 7;
/// Largest `n` for [`find_tree_pairs`].
pub const MAX_TREE_VERTICES: usize = 10;

fn cap(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        return Err(Error::SizeCapExceeded {
            what,
            actual,
            limit,
        });
    }
    Ok(())
}

impl BitGraph {
    fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let full: u16 = ((1u32 << self.n) - 1) as u16;
        let mut comp: u16 = 1;
        let mut frontier: u16 = 1;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.rows[v] & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        comp == full
    }
}

/// Canonical codes of all graphs on `n` vertices with at most `max_edges` edges,
/// built level by level: every class with `e + 1` edges is some class with `e`
/// edges plus one edge.
fn graph_codes(n: usize, max_edges: usize) -> Vec<u128> {
    let empty = BitGraph {
        n,
        rows: [0; MAX_CANON_VERTICES],
    };
    let mut level = vec![canonicalize(&empty, None).code];
    let mut all = level.clone();
    for _ in 0..max_edges.min(n * n.saturating_sub(1) / 2) {
        let mut next = HashSet::new();
        for &code in &level {
            let g = BitGraph::from_code(code);
            for j in 1..n {
                for i in 0..j {
                    if !g.has(i, j) {
                        let mut h = g;
                        h.rows[i] |= 1 << j;
                        h.rows[j] |= 1 << i;
                        next.insert(canonicalize(&h, None).code);
                    }
                }
            }
        }
        let mut next: Vec<u128> = next.into_iter().collect();
        next.sort_unstable();
        all.extend_from_slice(&next);
        level = next;
    }
    all
}

/// One graph per isomorphism class of connected graphs on `n` vertices,
/// ordered by edge count and then canonical code.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("need n >= 2, got {n}")));
    }
    cap("vertex count", n, MAX_SEARCH_VERTICES)?;
    Ok(graph_codes(n, usize::MAX)
        .into_iter()
        .map(BitGraph::from_code)
        .filter(BitGraph::is_connected)
        .map(|g| g.to_graph())
        .collect())
}

/// Every connected graph (up to isomorphism, any vertex count) with `1..=max_edges` edges.
pub fn connected_graphs_with_at_most(max_edges: usize) -> Result<Vec<Graph>> {
    cap("edge count", max_edges, MAX_CANON_VERTICES - 1)?;
    let mut out = Vec::new();
    for n in 2..=max_edges + 1 {
        out.extend(
            graph_codes(n, max_edges)
                .into_iter()
                .map(BitGraph::from_code)
                .filter(|g| g.m() > 0 && g.is_connected())
                .map(|g| g.to_graph()),
        );
    }
    Ok(out)
}

/// One tree per isomorphism class on `n` vertices, grown by attaching a leaf
/// to every vertex of every tree on `n - 1` vertices.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::InvalidSize("need n >= 1".into()));
    }
    cap("vertex count", n, MAX_CANON_VERTICES)?;
    let mut level = vec![
        canonicalize(
            &BitGraph {
                n: 1,
                rows: [0; MAX_CANON_VERTICES],
            },
            None,
        )
        .code,
    ];
    for size in 2..=n {
        let mut next = HashSet::new();
        for &code in &level {
            let mut g = BitGraph::from_code(code);
            g.n = size;
            for v in 0..size - 1 {
                let mut h = g;
                h.rows[v] |= 1 << (size - 1);
                h.rows[size - 1] = 1 << v;
                next.insert(canonicalize(&h, None).code);
            }
        }
        level = next.into_iter().collect();
        level.sort_unstable();
    }
    Ok(level
        .into_iter()
        .map(|c| BitGraph::from_code(c).to_graph())
        .collect())
}

/// The labelled tree on `n = seq.len() + 2` vertices with Prüfer sequence `seq`.
pub fn prufer_decode(seq: &[usize]) -> Result<Graph> {
    let n = seq.len() + 2;
    if let Some(&bad) = seq.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: bad, n });
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n)
            .find(|&u| degree[u] == 1)
            .expect("a leaf always exists");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let ends: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((ends[0], ends[1]));
    Graph::from_edge_list(n, &edges)
}

/// All `n^(n-2)` labelled trees on `n >= 2` vertices, in Prüfer-sequence order.
pub fn labeled_trees(n: usize) -> impl Iterator<Item = Graph> {
    let len = n.saturating_sub(2);
    let total = if n < 2 { 0 } else { n.pow(len as u32) };
    (0..total).map(move |mut idx| {
        let mut seq = vec![0; len];
        for slot in seq.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        prufer_decode(&seq).expect("sequence entries are below n")
    })
}

/// Two non-isomorphic graphs with identical `p_G(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub key_a: CanonicalKey,
    pub key_b: CanonicalKey,
    pub graph6_a: String,
    pub graph6_b: String,
    pub shared_polynomial: ForestDistribution,
    /// One graph is edge-transitive and the other is it minus an edge.
    pub explained_by_edge_transitivity: bool,
}

/// True if `big` is edge-transitive and `small` is isomorphic to `big` minus one edge.
pub fn is_single_deletion_of_edge_transitive(big: &Graph, small: &Graph) -> Result<bool> {
    if big.n() != small.n() || big.m() != small.m() + 1 || big.m() < 2 {
        return Ok(false);
    }
    if !is_edge_transitive(big)? {
        return Ok(false);
    }
    // any edge will do: they are all equivalent
    are_isomorphic(&big.without_edge(crate::EdgeId(0)), small)
}

fn explained(a: &Graph, b: &Graph) -> Result<bool> {
    Ok(
        is_single_deletion_of_edge_transitive(a, b)?
            || is_single_deletion_of_edge_transitive(b, a)?,
    )
}

struct Evaluated {
    graph: Graph,
    key: CanonicalKey,
    poly: ForestDistribution,
}

fn evaluate_all(engine: &mut ForestEngine, graphs: Vec<Graph>) -> Result<Vec<Evaluated>> {
    graphs
        .into_iter()
        .map(|graph| {
            let poly = engine.forest_polynomial(&graph)?;
            let key = crate::canonical_key(&graph)?;
            Ok(Evaluated { graph, key, poly })
        })
        .collect()
}

/// Pairs of graphs from `items` with equal polynomials, bucketed by the exact coefficients.
fn equal_pairs(items: &[Evaluated]) -> Result<Vec<PairReport>> {
    let mut buckets: BTreeMap<&BTreeMap<usize, Rational>, Vec<usize>> = BTreeMap::new();
    for (i, item) in items.iter().enumerate() {
        buckets.entry(&item.poly.probs).or_default().push(i);
    }
    let mut out = Vec::new();
    for members in buckets.values() {
        for (x, &i) in members.iter().enumerate() {
            for &j in &members[x + 1..] {
                let (a, b) = (&items[i], &items[j]);
                out.push(PairReport {
                    key_a: a.key.clone(),
                    key_b: b.key.clone(),
                    graph6_a: serialize_graph6(&a.graph)?,
                    graph6_b: serialize_graph6(&b.graph)?,
                    shared_polynomial: a.poly.clone(),
                    explained_by_edge_transitivity: explained(&a.graph, &b.graph)?,
                });
            }
        }
    }
    out.sort_by(|p, q| (&p.graph6_a, &p.graph6_b).cmp(&(&q.graph6_a, &q.graph6_b)));
    Ok(out)
}

/// All pairs of non-isomorphic connected `n`-vertex graphs with the same polynomial.
pub fn find_equal_polynomial_pairs(engine: &mut ForestEngine, n: usize) -> Result<Vec<PairReport>> {
    let items = evaluate_all(engine, enumerate_connected_graphs(n)?)?;
    equal_pairs(&items)
}

/// All pairs of non-isomorphic `n`-vertex trees with the same polynomial.
pub fn find_tree_pairs(engine: &mut ForestEngine, n: usize) -> Result<Vec<PairReport>> {
    cap("vertex count", n, MAX_TREE_VERTICES)?;
    let items = evaluate_all(engine, enumerate_trees(n)?)?;
    equal_pairs(&items)
}

/// Connected graphs with the same multiset of edge degree sums `d(u) + d(v)`
/// (so the same expected tree count) but different polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTwin {
    pub graph6_a: String,
    pub graph6_b: String,
    pub expectation: Rational,
    pub poly_a: ForestDistribution,
    pub poly_b: ForestDistribution,
}

pub fn find_edge_degree_twins(engine: &mut ForestEngine, n: usize) -> Result<Vec<DegreeTwin>> {
    let items = evaluate_all(engine, enumerate_connected_graphs(n)?)?;
    let mut buckets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, item) in items.iter().enumerate() {
        buckets
            .entry(item.graph.edge_degree_sums())
            .or_default()
            .push(i);
    }
    let mut out = Vec::new();
    for members in buckets.values() {
        for (x, &i) in members.iter().enumerate() {
            for &j in &members[x + 1..] {
                let (a, b) = (&items[i], &items[j]);
                if a.poly.same_polynomial(&b.poly) {
                    continue;
                }
                out.push(DegreeTwin {
                    graph6_a: serialize_graph6(&a.graph)?,
                    graph6_b: serialize_graph6(&b.graph)?,
                    expectation: crate::expected_components(&a.graph)?,
                    poly_a: a.poly.clone(),
                    poly_b: b.poly.clone(),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureCheck {
    pub k: usize,
    pub holds: bool,
    /// Polynomial of `K_{k,k+1}` plus an edge in the larger part.
    pub p_augmented: ForestDistribution,
    /// Polynomial of `K_{k,k+1}`.
    pub p_bipartite: ForestDistribution,
}

/// Compares `K_{k,k+1} + e` with `K_{k,k+1}` exactly.
pub fn check_conjecture(engine: &mut ForestEngine, k: usize) -> Result<ConjectureCheck> {
    if k == 0 {
        return Err(Error::InvalidSize("need k >= 1".into()));
    }
    cap("vertex count", 2 * k + 1, MAX_CANON_VERTICES)?;
    let p_augmented =
        engine.forest_polynomial(&generate(&GeneratorSpec::BalancedBipartitePlusEdge(k))?)?;
    let p_bipartite =
        engine.forest_polynomial(&generate(&GeneratorSpec::CompleteBipartite(k, k + 1))?)?;
    Ok(ConjectureCheck {
        k,
        holds: p_augmented.same_polynomial(&p_bipartite),
        p_augmented,
        p_bipartite,
    })
}

pub fn check_log_concavity(engine: &mut ForestEngine, g: &Graph) -> Result<bool> {
    Ok(engine.forest_polynomial(g)?.is_log_concave())
}

/// A graph whose coefficients are not log-concave.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogConcavityViolation {
    pub graph6: String,
    pub poly: ForestDistribution,
}

/// Checks every connected graph on `2..=n_max` vertices.
pub fn sweep_log_concavity(
    engine: &mut ForestEngine,
    n_max: usize,
) -> Result<Vec<LogConcavityViolation>> {
    cap("vertex count", n_max, MAX_SEARCH_VERTICES)?;
    let mut out = Vec::new();
    for n in 2..=n_max {
        for g in enumerate_connected_graphs(n)? {
            let poly = engine.forest_polynomial(&g)?;
            if !poly.is_log_concave() {
                out.push(LogConcavityViolation {
                    graph6: serialize_graph6(&g)?,
                    poly,
                });
            }
        }
    }
    Ok(out)
}
