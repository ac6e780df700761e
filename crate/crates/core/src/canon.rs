//! Canonical labelling of small graphs.
//!
//! Individualisation-refinement: colour refinement to an equitable
//! partition, then branch on every vertex of the first non-trivial cell.
//! Each leaf of the search tree is a discrete partition, read as a
//! relabelling; the canonical form is the leaf whose relabelled upper
//! triangle is largest. Automorphisms discovered at equal leaves prune
//! sibling branches that fix the current path.

use alloc::vec::Vec;

use crate::{Error, Graph, Result};

/// Largest vertex count accepted by the canonicaliser.
pub const MAX_CANON_VERTICES: usize = 16;

/// Isomorphism-invariant key for a graph of at most [`MAX_CANON_VERTICES`] vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub(crate) fn from_code(code: u128) -> Self {
        CanonicalKey(code.to_be_bytes().to_vec())
    }
}

/// Adjacency bit rows for graphs on at most 16 vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct BitGraph {
    pub n: usize,
    pub rows: [u16; MAX_CANON_VERTICES],
}

/// Position of pair `i < j` in column-major upper-triangle order.
#[inline]
pub(crate) fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

impl BitGraph {
    pub fn from_graph(g: &Graph) -> Result<Self> {
        if g.n() > MAX_CANON_VERTICES {
            return Err(Error::SizeCapExceeded {
                what: "vertex count",
                actual: g.n(),
                limit: MAX_CANON_VERTICES,
            });
        }
        let mut rows = [0u16; MAX_CANON_VERTICES];
        for &(u, v) in g.edges() {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        Ok(BitGraph { n: g.n(), rows })
    }

    /// Edges in column-major upper-triangle order.
    pub fn to_graph(self) -> Graph {
        let mut edges = Vec::new();
        for j in 1..self.n {
            for i in 0..j {
                if self.has(i, j) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges_unchecked(self.n, edges)
    }

    /// Inverse of the code produced by canonicalisation.
    pub fn from_code(code: u128) -> Self {
        let n = (code >> 120) as usize;
        let mut rows = [0u16; MAX_CANON_VERTICES];
        for j in 1..n {
            for i in 0..j {
                if code >> (119 - pair_index(i, j)) & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
        }
        BitGraph { n, rows }
    }

    #[inline]
    pub fn has(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn m(&self) -> usize {
        self.rows[..self.n]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges as `(i, j)` with `i < j`, column-major.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 1..self.n {
            let mut lower = self.rows[j] & ((1u16 << j) - 1);
            while lower != 0 {
                let i = lower.trailing_zeros() as usize;
                out.push((i, j));
                lower &= lower - 1;
            }
        }
        out
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    /// Code of the graph relabelled by `label` (vertex -> new position).
    fn relabelled_code(&self, label: &[u8; MAX_CANON_VERTICES]) -> u128 {
        let mut bits = 0u128;
        for (i, j) in self.edge_list() {
            let (a, b) = (label[i] as usize, label[j] as usize);
            let idx = pair_index(a.min(b), a.max(b));
            bits |= 1u128 << (119 - idx);
        }
        (self.n as u128) << 120 | bits
    }

    /// Connected pieces with at least one edge; isolated vertices dropped.
    pub fn split_components(&self) -> Vec<BitGraph> {
        let mut out = Vec::new();
        let mut unseen: u32 = (1u32 << self.n) - 1;
        while unseen != 0 {
            let s = unseen.trailing_zeros() as usize;
            let mut comp: u16 = 1 << s;
            let mut frontier: u16 = 1 << s;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.rows[v] & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            unseen &= !u32::from(comp);
            if comp.count_ones() < 2 {
                continue;
            }
            let mut local = [0u8; MAX_CANON_VERTICES];
            let mut verts = [0u8; MAX_CANON_VERTICES];
            let mut k = 0;
            let mut c = comp;
            while c != 0 {
                let v = c.trailing_zeros() as usize;
                c &= c - 1;
                local[v] = k as u8;
                verts[k] = v as u8;
                k += 1;
            }
            let mut rows = [0u16; MAX_CANON_VERTICES];
            for (li, &v) in verts[..k].iter().enumerate() {
                let mut r = self.rows[v as usize];
                while r != 0 {
                    let w = r.trailing_zeros() as usize;
                    r &= r - 1;
                    rows[li] |= 1 << local[w];
                }
            }
            out.push(BitGraph { n: k, rows });
        }
        out
    }
}

/// Result of canonicalisation.
pub(crate) struct Canon {
    /// `n << 120 | relabelled upper triangle`; equal iff isomorphic.
    pub code: u128,
    /// Vertex -> canonical position.
    pub labelling: [u8; MAX_CANON_VERTICES],
    /// Automorphisms met during the search (vertex -> image).
    pub automorphisms: Vec<[u8; MAX_CANON_VERTICES]>,
}

type Colours = [u8; MAX_CANON_VERTICES];

struct Search<'a> {
    g: &'a BitGraph,
    best: Option<(u128, Colours)>,
    automorphisms: Vec<Colours>,
}

impl Search<'_> {
    /// Refines `colours` (ranks `0..k`) to the coarsest equitable refinement.
    fn refine(&self, colours: &mut Colours, mut k: usize) -> usize {
        let n = self.g.n;
        loop {
            if k == n {
                return k;
            }
            let mut masks = [0u16; MAX_CANON_VERTICES];
            for v in 0..n {
                masks[colours[v] as usize] |= 1 << v;
            }
            let mut sig = [(0u128, 0u8); MAX_CANON_VERTICES];
            for v in 0..n {
                let row = self.g.rows[v];
                let mut packed = 0u128;
                for (c, &mask) in masks[..k].iter().enumerate() {
                    packed |= u128::from((row & mask).count_ones()) << (4 * (15 - c));
                }
                sig[v] = ((colours[v] as u128) << 64 | packed, v as u8);
            }
            let sig = &mut sig[..n];
            sig.sort_unstable();
            let mut rank = 0u8;
            for i in 0..n {
                if i > 0 && sig[i].0 != sig[i - 1].0 {
                    rank += 1;
                }
                colours[sig[i].1 as usize] = rank;
            }
            let next = rank as usize + 1;
            if next == k {
                return k;
            }
            k = next;
        }
    }

    fn visit(&mut self, colours: Colours, k: usize, path: &mut Vec<u8>) {
        let n = self.g.n;
        if k == n {
            self.leaf(&colours);
            return;
        }
        // first non-singleton cell
        let mut sizes = [0u8; MAX_CANON_VERTICES];
        for &c in &colours[..n] {
            sizes[c as usize] += 1;
        }
        let target = (0..k)
            .find(|&c| sizes[c] > 1)
            .expect("partition is not discrete") as u8;
        let cell: Vec<u8> = (0..n as u8)
            .filter(|&v| colours[v as usize] == target)
            .collect();
        let mut explored: Vec<u8> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.equivalent_to_explored(v, &explored, &cell, path) {
                continue;
            }
            let mut child = colours;
            for w in 0..n {
                let c = colours[w];
                child[w] = if c > target || (c == target && w as u8 != v) {
                    c + 1
                } else {
                    c
                };
            }
            let k2 = self.refine(&mut child, k + 1);
            path.push(v);
            self.visit(child, k2, path);
            path.pop();
            explored.push(v);
        }
    }

    /// True if some known automorphism fixing `path` links `v` to an explored sibling.
    fn equivalent_to_explored(&self, v: u8, explored: &[u8], cell: &[u8], path: &[u8]) -> bool {
        let mut parent: Colours = core::array::from_fn(|i| i as u8);
        fn find(parent: &mut Colours, mut x: u8) -> u8 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if path.iter().any(|&p| gamma[p as usize] != p) {
                continue;
            }
            any = true;
            for &w in cell {
                let (a, b) = (find(&mut parent, w), find(&mut parent, gamma[w as usize]));
                if a != b {
                    parent[a as usize] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }

    fn leaf(&mut self, labelling: &Colours) {
        let code = self.g.relabelled_code(labelling);
        match &self.best {
            None => self.best = Some((code, *labelling)),
            Some((best, _)) if code > *best => self.best = Some((code, *labelling)),
            Some((best, best_lab)) if code == *best => {
                // best_lab^-1 . labelling is an automorphism
                let mut inv = [0u8; MAX_CANON_VERTICES];
                for v in 0..self.g.n {
                    inv[best_lab[v] as usize] = v as u8;
                }
                let mut gamma = [0u8; MAX_CANON_VERTICES];
                for v in 0..self.g.n {
                    gamma[v] = inv[labelling[v] as usize];
                }
                if gamma[..self.g.n]
                    .iter()
                    .enumerate()
                    .any(|(i, &x)| i as u8 != x)
                {
                    self.automorphisms.push(gamma);
                }
            }
            Some(_) => {}
        }
    }
}

/// Canonicalises `g`, optionally respecting an initial vertex colouring.
///
/// With a colouring, two graphs get the same code iff some isomorphism maps
/// colour class `c` onto colour class `c` for every `c`, provided the class
/// sizes agree.
pub(crate) fn canonicalize(g: &BitGraph, initial: Option<&[u8]>) -> Canon {
    let n = g.n;
    let mut colours = [0u8; MAX_CANON_VERTICES];
    let mut k = usize::from(n > 0);
    if let Some(init) = initial {
        // compress to ranks 0..k
        let mut used = [false; 256];
        for &c in &init[..n] {
            used[c as usize] = true;
        }
        let mut rank = [0u8; 256];
        let mut r = 0u8;
        for c in 0..256 {
            if used[c] {
                rank[c] = r;
                r += 1;
            }
        }
        for v in 0..n {
            colours[v] = rank[init[v] as usize];
        }
        k = r as usize;
    }
    let mut search = Search {
        g,
        best: None,
        automorphisms: Vec::new(),
    };
    if n == 0 {
        return Canon {
            code: 0,
            labelling: colours,
            automorphisms: Vec::new(),
        };
    }
    let k = search.refine(&mut colours, k);
    search.visit(colours, k, &mut Vec::new());
    let (code, labelling) = search.best.expect("search reaches at least one leaf");
    Canon {
        code,
        labelling,
        automorphisms: search.automorphisms,
    }
}

pub fn canonical_key(g: &Graph) -> Result<CanonicalKey> {
    let bg = BitGraph::from_graph(g)?;
    Ok(CanonicalKey::from_code(canonicalize(&bg, None).code))
}

/// `g` relabelled into its canonical form (edges in graph6 order).
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let bg = BitGraph::from_graph(g)?;
    let canon = canonicalize(&bg, None);
    let perm: Vec<usize> = canon.labelling[..g.n()]
        .iter()
        .map(|&x| x as usize)
        .collect();
    Ok(BitGraph::from_graph(&g.relabel(&perm))?.to_graph())
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    Ok(a.n() == b.n() && a.m() == b.m() && canonical_key(a)? == canonical_key(b)?)
}

/// True iff the automorphism group is transitive on edges.
///
/// Decided by marking each edge's endpoints with a colour of their own and
/// comparing canonical codes: two marked copies agree iff an automorphism
/// carries one edge onto the other.
pub fn is_edge_transitive(g: &Graph) -> Result<bool> {
    let bg = BitGraph::from_graph(g)?;
    let edges = bg.edge_list();
    let Some(&(u0, v0)) = edges.first() else {
        return Ok(true);
    };
    let marked = |u: usize, v: usize| {
        let mut colours = [1u8; MAX_CANON_VERTICES];
        colours[u] = 0;
        colours[v] = 0;
        canonicalize(&bg, Some(&colours)).code
    };
    let reference = marked(u0, v0);
    // orbits from the unmarked search let most edges skip their own search
    let plain = canonicalize(&bg, None);
    let index = edge_index_table(&bg);
    let orbits = edge_orbits(&edges, &index, &plain.automorphisms);
    let first_orbit = orbits[0];
    for (e, &(u, v)) in edges.iter().enumerate() {
        if orbits[e] == first_orbit {
            continue;
        }
        if marked(u, v) != reference {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) type EdgeIndexTable = [[u8; MAX_CANON_VERTICES]; MAX_CANON_VERTICES];

pub(crate) fn edge_index_table(g: &BitGraph) -> EdgeIndexTable {
    let mut table = [[u8::MAX; MAX_CANON_VERTICES]; MAX_CANON_VERTICES];
    for (e, (i, j)) in g.edge_list().into_iter().enumerate() {
        table[i][j] = e as u8;
        table[j][i] = e as u8;
    }
    table
}

/// Orbit representative per edge under the group generated by `automorphisms`.
pub(crate) fn edge_orbits(
    edges: &[(usize, usize)],
    index: &EdgeIndexTable,
    automorphisms: &[[u8; MAX_CANON_VERTICES]],
) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for gamma in automorphisms {
        for (e, &(u, v)) in edges.iter().enumerate() {
            let f = index[gamma[u] as usize][gamma[v] as usize] as usize;
            let (a, b) = (find(&mut parent, e), find(&mut parent, f));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..edges.len()).map(|e| find(&mut parent, e)).collect()
}
