//! Named graph families and seeded random graphs.

use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Graph, Result};

/// Pairing-model attempts before [`Error::GenerationTimeout`].
pub const REGULAR_RETRY_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    Complete(usize),
    CompleteBipartite(usize, usize),
    CompleteMultipartite(Vec<usize>),
    /// Path on `n` vertices.
    Path(usize),
    Cycle(usize),
    /// `K_{1,s}`, centre is vertex 0.
    Star(usize),
    /// `K_{k,k+1}` plus one edge inside the part of size `k + 1`.
    BalancedBipartitePlusEdge(usize),
    Gnm {
        n: usize,
        m: usize,
        seed: u64,
    },
    RandomRegular {
        n: usize,
        d: usize,
        seed: u64,
    },
}

fn infeasible(msg: alloc::string::String) -> Error {
    Error::InfeasibleSpec(msg)
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    use GeneratorSpec::*;
    match *spec {
        Complete(n) => {
            if n == 0 {
                return Err(infeasible("K_n needs n >= 1".into()));
            }
            Ok(multipartite(&alloc::vec![1; n]))
        }
        CompleteBipartite(s, t) => {
            if s == 0 || t == 0 {
                return Err(infeasible(format!(
                    "K_{{{s},{t}}} needs both parts non-empty"
                )));
            }
            Ok(multipartite(&[s, t]))
        }
        CompleteMultipartite(ref parts) => {
            if parts.is_empty() || parts.contains(&0) {
                return Err(infeasible(format!(
                    "multipartite parts must be >= 1, got {parts:?}"
                )));
            }
            Ok(multipartite(parts))
        }
        Path(n) => {
            if n == 0 {
                return Err(infeasible("P_n needs n >= 1".into()));
            }
            Ok(Graph::from_edges_unchecked(
                n,
                (1..n).map(|i| (i - 1, i)).collect(),
            ))
        }
        Cycle(n) => {
            if n < 3 {
                return Err(infeasible(format!("C_n needs n >= 3, got {n}")));
            }
            Ok(Graph::from_edges_unchecked(
                n,
                (0..n).map(|i| (i, (i + 1) % n)).collect(),
            ))
        }
        Star(s) => {
            if s == 0 {
                return Err(infeasible("K_{1,s} needs s >= 1".into()));
            }
            Ok(Graph::from_edges_unchecked(
                s + 1,
                (1..=s).map(|i| (0, i)).collect(),
            ))
        }
        BalancedBipartitePlusEdge(k) => {
            if k == 0 {
                return Err(infeasible("K_{k,k+1} + e needs k >= 1".into()));
            }
            let mut edges = multipartite(&[k, k + 1]).edges().to_vec();
            edges.push((k, k + 1));
            Ok(Graph::from_edges_unchecked(2 * k + 1, edges))
        }
        Gnm { n, m, seed } => gnm(n, m, &mut ChaCha8Rng::seed_from_u64(seed)),
        RandomRegular { n, d, seed } => random_regular(n, d, &mut ChaCha8Rng::seed_from_u64(seed)),
    }
}

/// Complete multipartite graph; parts are consecutive vertex ranges.
fn multipartite(parts: &[usize]) -> Graph {
    let mut part_of = Vec::new();
    for (p, &size) in parts.iter().enumerate() {
        part_of.extend(core::iter::repeat_n(p, size));
    }
    let n = part_of.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges_unchecked(n, edges)
}

/// Uniform graph with `n` labelled vertices and exactly `m` edges.
///
/// Edges come out sorted in column-major upper-triangle order.
pub fn gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Err(infeasible(format!("G(n, m) needs m <= {pairs}, got {m}")));
    }
    let mut chosen = rand::seq::index::sample(rng, pairs, m).into_vec();
    chosen.sort_unstable();
    let mut edges = Vec::with_capacity(m);
    let mut j = 1;
    let mut start = 0;
    for idx in chosen {
        // column j holds indices start..start + j
        while idx >= start + j {
            start += j;
            j += 1;
        }
        edges.push((idx - start, j));
    }
    Ok(Graph::from_edges_unchecked(n, edges))
}

/// Random `d`-regular graph from the pairing model, rejecting loops and multi-edges.
pub fn random_regular<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<Graph> {
    if d >= n.max(1) || (n * d) % 2 == 1 {
        return Err(infeasible(format!(
            "no {d}-regular simple graph on {n} vertices"
        )));
    }
    let mut points: Vec<usize> = (0..n).flat_map(|v| core::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..REGULAR_RETRY_CAP {
        points.shuffle(rng);
        let mut seen = hashbrown::HashSet::with_capacity(points.len() / 2);
        let mut edges = Vec::with_capacity(points.len() / 2);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        edges.sort_unstable_by_key(|&(u, v)| (v, u));
        return Ok(Graph::from_edges_unchecked(n, edges));
    }
    Err(Error::GenerationTimeout(REGULAR_RETRY_CAP))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn named_families() {
        let k4 = generate(&GeneratorSpec::Complete(4)).unwrap();
        assert_eq!((k4.n(), k4.m()), (4, 6));
        let g5 = generate(&GeneratorSpec::BalancedBipartitePlusEdge(2)).unwrap();
        assert_eq!((g5.n(), g5.m()), (5, 7));
        assert!(g5.has_edge(2, 3));
        let k333 = generate(&GeneratorSpec::CompleteMultipartite(alloc::vec![3, 3, 3])).unwrap();
        assert_eq!((k333.n(), k333.m()), (9, 27));
        let c5 = generate(&GeneratorSpec::Cycle(5)).unwrap();
        assert!(c5.degrees().iter().all(|&d| d == 2));
        let star = generate(&GeneratorSpec::Star(4)).unwrap();
        assert_eq!(star.degrees()[0], 4);
        let p1 = generate(&GeneratorSpec::Path(1)).unwrap();
        assert_eq!((p1.n(), p1.m()), (1, 0));
    }

    #[test]
    fn infeasible_specs() {
        for spec in [
            GeneratorSpec::Cycle(2),
            GeneratorSpec::CompleteBipartite(0, 3),
            GeneratorSpec::Gnm {
                n: 4,
                m: 7,
                seed: 1,
            },
            GeneratorSpec::RandomRegular {
                n: 5,
                d: 3,
                seed: 1,
            },
            GeneratorSpec::RandomRegular {
                n: 4,
                d: 4,
                seed: 1,
            },
            GeneratorSpec::CompleteMultipartite(alloc::vec![2, 0]),
        ] {
            assert!(
                matches!(generate(&spec), Err(Error::InfeasibleSpec(_))),
                "{spec:?}"
            );
        }
    }

    #[test]
    fn seeded_determinism() {
        let spec = GeneratorSpec::Gnm {
            n: 5,
            m: 4,
            seed: 7,
        };
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let spec = GeneratorSpec::RandomRegular {
            n: 12,
            d: 3,
            seed: 9,
        };
        let g = generate(&spec).unwrap();
        assert_eq!(g, generate(&spec).unwrap());
        assert!(g.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn gnm_is_roughly_uniform() {
        // G(4, 3): 20 labelled graphs, each should appear about 1/20 of the time
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut tally: hashbrown::HashMap<Vec<(usize, usize)>, u32> = hashbrown::HashMap::new();
        let draws = 40_000;
        for _ in 0..draws {
            *tally
                .entry(gnm(4, 3, &mut rng).unwrap().normalized_edges())
                .or_default() += 1;
        }
        assert_eq!(tally.len(), 20);
        let expect = f64::from(draws) / 20.0;
        let sd = libm::sqrt(expect * (1.0 - 1.0 / 20.0));
        assert!(tally
            .values()
            .all(|&c| libm::fabs(f64::from(c) - expect) < 5.0 * sd));
    }

    proptest! {
        #[test]
        fn gnm_has_exactly_m_distinct_edges(n in 2usize..12, frac in 0.0f64..=1.0, seed in any::<u64>()) {
            let m = (frac * (n * (n - 1) / 2) as f64) as usize;
            let g = generate(&GeneratorSpec::Gnm { n, m, seed }).unwrap();
            prop_assert_eq!(g.m(), m);
            prop_assert!(Graph::from_edge_list(n, g.edges()).is_ok());
        }
    }
}
