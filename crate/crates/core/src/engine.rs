//! Exact `p_G(x)` through the last-edge recurrence.
//!
//! Grouping orderings by their last edge `e` gives `F(G, k) = sum_e F(G - e, k)`
//! for a connected `G` with at least two edges, where `F(G, k) = m! P(G, k)`
//! counts orderings ending with `k` trees. Disjoint pieces run independently,
//! so for a union of `A` (with `a` edges) and `B` (with `b` edges)
//! `F(A + B, k) = C(a + b, a) sum_l F(A, l) F(B, k - l)`. Working with the
//! integer counts keeps every step exact without rational normalisation.
//!
//! Connected pieces are memoised by canonical code, and edges in the same
//! orbit of the automorphisms found while canonicalising are handled once
//! with a multiplicity.

use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::canon::{canonicalize, edge_index_table, edge_orbits, BitGraph};
use crate::combinatorics::{binomial, factorial};
use crate::{Error, ForestDistribution, Graph, Rational, Result};

/// Default cap on memo entries before [`Error::MemoryBudgetExceeded`].
pub const DEFAULT_MEMO_BUDGET: usize = 20_000_000;

/// Ordering counts `F(G, k)` indexed by `k`, for a graph with `m` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Counts {
    m: usize,
    f: Vec<BigUint>,
}

impl Counts {
    fn unit() -> Self {
        Counts {
            m: 0,
            f: vec![BigUint::one()],
        }
    }

    fn single_edge() -> Self {
        Counts {
            m: 1,
            f: vec![BigUint::zero(), BigUint::one()],
        }
    }

    fn product(&self, other: &Counts) -> Counts {
        let scale = binomial((self.m + other.m) as i64, self.m as i64);
        let mut f = vec![BigUint::zero(); self.f.len() + other.f.len() - 1];
        for (a, x) in self.f.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.f.iter().enumerate() {
                if !y.is_zero() {
                    f[a + b] += x * y;
                }
            }
        }
        for c in &mut f {
            *c *= &scale;
        }
        Counts {
            m: self.m + other.m,
            f,
        }
    }

    fn add_scaled(&mut self, other: &Counts, weight: usize) {
        if self.f.len() < other.f.len() {
            self.f.resize(other.f.len(), BigUint::zero());
        }
        for (acc, x) in self.f.iter_mut().zip(&other.f) {
            *acc += x * weight;
        }
    }
}

/// Memoising evaluator for `p_G(x)` and `P(G, 1)`.
///
/// Reuse one engine across many graphs to share the memo.
pub struct ForestEngine {
    memoize: bool,
    budget: usize,
    memo: HashMap<u128, Rc<Counts>>,
    one_memo: HashMap<u128, BigUint>,
}

impl Default for ForestEngine {
    fn default() -> Self {
        Self::new()
    }
}

impl ForestEngine {
    pub fn new() -> Self {
        ForestEngine {
            memoize: true,
            budget: DEFAULT_MEMO_BUDGET,
            memo: HashMap::new(),
            one_memo: HashMap::new(),
        }
    }

    /// Plain recursion over every edge, no canonicalisation or memo. Small graphs only.
    pub fn without_memo() -> Self {
        ForestEngine {
            memoize: false,
            ..Self::new()
        }
    }

    pub fn with_memo_budget(budget: usize) -> Self {
        ForestEngine {
            budget,
            ..Self::new()
        }
    }

    /// Number of memoised connected classes.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn forest_polynomial(&mut self, g: &Graph) -> Result<ForestDistribution> {
        let mut pieces = g
            .components()
            .parts
            .iter()
            .map(|c| BitGraph::from_graph(&c.graph))
            .collect::<Result<Vec<_>>>()?;
        pieces.sort_by_key(BitGraph::m);
        let mut total = Counts::unit();
        for piece in &pieces {
            total = total.product(&*self.component_counts(piece)?);
        }
        Ok(ForestDistribution::from_counts(g.n(), g.m(), &total.f))
    }

    /// Counts for a connected graph with at least one edge.
    fn component_counts(&mut self, comp: &BitGraph) -> Result<Rc<Counts>> {
        let m = comp.m();
        if m == 1 {
            return Ok(Rc::new(Counts::single_edge()));
        }
        let edges = comp.edge_list();
        let (code, orbits) = if self.memoize {
            let canon = canonicalize(comp, None);
            if let Some(hit) = self.memo.get(&canon.code) {
                return Ok(Rc::clone(hit));
            }
            let index = edge_index_table(comp);
            (
                Some(canon.code),
                edge_orbits(&edges, &index, &canon.automorphisms),
            )
        } else {
            (None, (0..edges.len()).collect())
        };
        let mut multiplicity = vec![0usize; edges.len()];
        for &rep in &orbits {
            multiplicity[rep] += 1;
        }
        let mut sum = Counts { m, f: Vec::new() };
        for (e, &(u, v)) in edges.iter().enumerate() {
            if multiplicity[e] == 0 {
                continue;
            }
            let mut rest = *comp;
            rest.remove_edge(u, v);
            let mut pieces = rest.split_components();
            pieces.sort_by_key(BitGraph::m);
            let mut counts = Counts::unit();
            for piece in &pieces {
                counts = counts.product(&*self.component_counts(piece)?);
            }
            sum.add_scaled(&counts, multiplicity[e]);
        }
        let sum = Rc::new(sum);
        if let Some(code) = code {
            if self.memo.len() >= self.budget {
                return Err(Error::MemoryBudgetExceeded(self.budget));
            }
            self.memo.insert(code, Rc::clone(&sum));
        }
        Ok(sum)
    }

    /// `P(G, 1)` by the recurrence restricted to the one-tree coefficient.
    ///
    /// Deleting a large bridge leaves two pieces with edges, which can never
    /// finish as one tree, so only the other edges contribute.
    pub fn single_component_probability(&mut self, g: &Graph) -> Result<Rational> {
        let parts = g.components().parts;
        let comp = match parts.as_slice() {
            [] => return Err(Error::EmptyGraph),
            [only] => BitGraph::from_graph(&only.graph)?,
            _ => return Err(Error::DisconnectedInput),
        };
        let count = self.one_tree_count(&comp)?;
        Ok(Rational::new(
            BigInt::from(count),
            BigInt::from(factorial(comp.m() as u64)),
        ))
    }

    /// Orderings of a connected graph that end with a single tree.
    fn one_tree_count(&mut self, comp: &BitGraph) -> Result<BigUint> {
        if comp.m() == 1 {
            return Ok(BigUint::one());
        }
        let canon = canonicalize(comp, None);
        if self.memoize {
            if let Some(hit) = self.one_memo.get(&canon.code) {
                return Ok(hit.clone());
            }
        }
        let edges = comp.edge_list();
        let orbits = edge_orbits(&edges, &edge_index_table(comp), &canon.automorphisms);
        let mut multiplicity = vec![0usize; edges.len()];
        for &rep in &orbits {
            multiplicity[rep] += 1;
        }
        let mut total = BigUint::zero();
        for (e, &(u, v)) in edges.iter().enumerate() {
            if multiplicity[e] == 0 {
                continue;
            }
            let mut rest = *comp;
            rest.remove_edge(u, v);
            let pieces = rest.split_components();
            if let [piece] = pieces.as_slice() {
                total += self.one_tree_count(piece)? * multiplicity[e];
            }
        }
        if self.memoize {
            if self.one_memo.len() >= self.budget {
                return Err(Error::MemoryBudgetExceeded(self.budget));
            }
            self.one_memo.insert(canon.code, total.clone());
        }
        Ok(total)
    }
}

/// Exact `p_G(x)` with a fresh engine.
pub fn forest_polynomial(g: &Graph) -> Result<ForestDistribution> {
    ForestEngine::new().forest_polynomial(g)
}

/// Exact `P(G, 1)` for a connected graph, with a fresh engine.
pub fn single_component_probability(g: &Graph) -> Result<Rational> {
    ForestEngine::new().single_component_probability(g)
}

/// Expected number of trees: `sum over edges uv of 1 / (d(u) + d(v) - 1)`.
pub fn expected_components(g: &Graph) -> Result<Rational> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    let deg = g.degrees();
    Ok(g.edges().iter().fold(Rational::zero(), |acc, &(u, v)| {
        acc + Rational::new(BigInt::one(), BigInt::from(deg[u] + deg[v] - 1))
    }))
}
