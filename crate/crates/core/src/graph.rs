//! Simple undirected graphs with an ordered edge list.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Position of an edge in [`Graph::edges`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

/// A simple undirected graph on vertices `0..n`.
///
/// Edges keep the order they were given in; an edge's [`EdgeId`] is its
/// position in that list. Isolated vertices are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// A connected piece of a graph together with the original vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub graph: Graph,
    /// `vertices[i]` is the original id of the component's vertex `i`.
    pub vertices: Vec<usize>,
}

/// Result of [`Graph::components`]: components that carry at least one edge,
/// plus the number of isolated vertices that were dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub parts: Vec<Component>,
    pub isolated: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut seen = hashbrown::HashSet::with_capacity(pairs.len());
        for &(u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u, v));
            }
        }
        Ok(Graph {
            n,
            edges: pairs.to_vec(),
        })
    }

    /// Builds a graph from pairs already known to be valid.
    pub(crate) fn from_edges_unchecked(n: usize, edges: Vec<(usize, usize)>) -> Self {
        debug_assert!(Graph::from_edge_list(n, &edges).is_ok());
        Graph { n, edges }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> (usize, usize) {
        self.edges[e.0]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges
            .iter()
            .any(|&(a, b)| (a == u && b == v) || (a == v && b == u))
    }

    /// Edge set as sorted `(min, max)` pairs, ignoring order and orientation.
    pub fn normalized_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// True when both graphs have the same vertex count and adjacency relation.
    pub fn same_adjacency(&self, other: &Graph) -> bool {
        self.n == other.n && self.normalized_edges() == other.normalized_edges()
    }

    pub fn without_edge(&self, e: EdgeId) -> Graph {
        let mut edges = self.edges.clone();
        edges.remove(e.0);
        Graph { n: self.n, edges }
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut edges = self.edges.clone();
        edges.push((u, v));
        Graph::from_edge_list(self.n, &edges)
    }

    /// Renames vertex `v` to `perm[v]`. Edge order is kept.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        Graph { n: self.n, edges }
    }

    /// `self` on vertices `0..n`, `other` shifted to `n..n+other.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph {
            n: self.n + other.n,
            edges,
        }
    }

    pub fn isolated_vertices(&self) -> usize {
        self.degrees().iter().filter(|&&d| d == 0).count()
    }

    /// Connected in the usual sense; the graph on zero vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let labels = self.component_labels(None);
        labels.iter().all(|&c| c == 0)
    }

    /// Component index per vertex, optionally pretending one edge is absent.
    fn component_labels(&self, skip: Option<usize>) -> Vec<usize> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if Some(i) != skip {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Splits into connected components that have at least one edge.
    ///
    /// Components are ordered by their smallest original vertex; within a
    /// component, vertices keep their relative order and edges keep theirs.
    pub fn components(&self) -> Components {
        let labels = self.component_labels(None);
        let deg = self.degrees();
        let count = labels.iter().copied().max().map_or(0, |c| c + 1);
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        for v in 0..self.n {
            members[labels[v]].push(v);
        }
        let mut local = vec![0; self.n];
        let mut parts = Vec::new();
        let mut isolated = 0;
        let mut part_of_label = vec![usize::MAX; count];
        for (c, vs) in members.iter().enumerate() {
            if vs.len() == 1 && deg[vs[0]] == 0 {
                isolated += 1;
                continue;
            }
            for (i, &v) in vs.iter().enumerate() {
                local[v] = i;
            }
            part_of_label[c] = parts.len();
            parts.push(Component {
                graph: Graph::empty(vs.len()),
                vertices: vs.clone(),
            });
        }
        for &(u, v) in &self.edges {
            let p = part_of_label[labels[u]];
            parts[p].graph.edges.push((local[u], local[v]));
        }
        Components { parts, isolated }
    }

    /// Cut edges: removing one disconnects its endpoints.
    pub fn bridges(&self) -> Vec<EdgeId> {
        self.edge_ids()
            .filter(|&e| {
                let (u, v) = self.edge(e);
                let labels = self.component_labels(Some(e.0));
                labels[u] != labels[v]
            })
            .collect()
    }

    /// Edges whose removal leaves two components that each still contain an edge.
    pub fn large_bridges(&self) -> Vec<EdgeId> {
        let deg = self.degrees();
        self.edge_ids()
            .filter(|&e| {
                let (u, v) = self.edge(e);
                let labels = self.component_labels(Some(e.0));
                if labels[u] == labels[v] {
                    return false;
                }
                // after removal, a side has an edge iff its endpoint keeps a neighbour
                deg[u] > 1 && deg[v] > 1
            })
            .collect()
    }

    /// Number of edges sharing a vertex with `e`: `d(u) + d(v) - 2`.
    pub fn edge_codegree(&self, e: EdgeId) -> usize {
        let (u, v) = self.edge(e);
        let deg = self.degrees();
        deg[u] + deg[v] - 2
    }

    /// Sorted multiset of `d(u) + d(v)` over all edges.
    pub fn edge_degree_sums(&self) -> Vec<usize> {
        let deg = self.degrees();
        let mut sums: Vec<usize> = self.edges.iter().map(|&(u, v)| deg[u] + deg[v]).collect();
        sums.sort_unstable();
        sums
    }

    /// Adjacency rows as bitmasks; requires `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64);
        let mut rows = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        rows
    }
}
