//! Small undirected graphs (at most 8 vertices) stored as an edge bitset.
//!
//! Vertices are `0..n` internally. Bit `k` of the edge set corresponds to the
//! `k`-th unordered pair in lexicographic order `(0,1), (0,2), .., (n-2,n-1)`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_GRAPH_VERTICES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SmallGraph {
    n: u8,
    edges: u32,
}

/// Index of the unordered pair `{i, j}` (`i < j`) among the pairs of `0..n`.
#[inline]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl SmallGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_GRAPH_VERTICES {
            return Err(Error::TooManyVertices {
                what: "SmallGraph",
                m: n,
                max: MAX_GRAPH_VERTICES,
            });
        }
        Ok(SmallGraph { n: n as u8, edges: 0 })
    }

    /// Builds a graph from 0-based vertex pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(a, b) in edges {
            if a == b {
                return Err(Error::Parse(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::VertexOutOfRange { vertex: a.max(b) + 1, m: n });
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    /// Builds a graph from 1-based vertex pairs, the labelling used in output.
    pub fn from_labelled_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if let Some(&(a, b)) = edges.iter().find(|(a, b)| *a == 0 || *b == 0) {
            return Err(Error::VertexOutOfRange { vertex: a.min(b), m: n });
        }
        let shifted: Vec<_> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        Self::from_edges(n, &shifted)
    }

    pub fn from_bits(n: usize, edges: u32) -> Result<Self> {
        let g = Self::empty(n)?;
        let pairs = pair_count(n);
        if pairs < 32 && edges >> pairs != 0 {
            return Err(Error::Parse(format!(
                "edge bitset {edges:#x} has bits beyond the {pairs} pairs of {n} vertices"
            )));
        }
        Ok(SmallGraph { edges, ..g })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u32 {
        self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones() as usize
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges >> pair_index(self.n(), a, b) & 1 == 1
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges |= 1 << pair_index(self.n(), a, b);
    }

    /// Edges as 0-based pairs in bit order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..n {
            for j in i + 1..n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Edges as 1-based pairs.
    pub fn labelled_edges(&self) -> Vec<(usize, usize)> {
        self.edges().into_iter().map(|(a, b)| (a + 1, b + 1)).collect()
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&u| self.has_edge(u, v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbours(v).count()
    }

    /// Valencies sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<_> = (0..self.n()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Breadth-first distance, `None` when disconnected.
    pub fn distance(&self, from: usize, to: usize) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::from([from]);
        dist[from] = 0;
        while let Some(v) = queue.pop_front() {
            if v == to {
                return Some(dist[v]);
            }
            for u in self.neighbours(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        None
    }

    pub fn complement(&self) -> SmallGraph {
        let pairs = pair_count(self.n());
        let mask = if pairs >= 32 { u32::MAX } else { (1u32 << pairs) - 1 };
        SmallGraph { n: self.n, edges: !self.edges & mask }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> SmallGraph {
        debug_assert_eq!(perm.len(), self.n());
        let mut g = SmallGraph { n: self.n, edges: 0 };
        for (a, b) in self.edges() {
            g.add_edge(perm[a], perm[b]);
        }
        g
    }

    /// Induced subgraph on `vertices`, relabelled `0..vertices.len()` in order.
    pub fn induced(&self, vertices: &[usize]) -> SmallGraph {
        let mut g = SmallGraph { n: vertices.len() as u8, edges: 0 };
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// The minimal edge bitset over all relabellings, together with a
    /// relabelling `perm` such that `self.permute(&perm)` attains it.
    pub fn canonical_labelling(&self) -> (SmallGraph, Vec<usize>) {
        let n = self.n();
        let edges = self.edges();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = (u32::MAX, perm.clone());
        if n == 0 {
            return (*self, perm);
        }
        loop {
            let mut bits = 0u32;
            for &(a, b) in &edges {
                let (x, y) = (perm[a], perm[b]);
                let (x, y) = if x < y { (x, y) } else { (y, x) };
                bits |= 1 << pair_index(n, x, y);
            }
            if bits < best.0 {
                best = (bits, perm.clone());
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        (SmallGraph { n: self.n, edges: best.0 }, best.1)
    }

    pub fn canonical_form(&self) -> SmallGraph {
        self.canonical_labelling().0
    }

    /// Mismatched vertex counts are simply non-isomorphic.
    pub fn is_isomorphic(&self, other: &SmallGraph) -> bool {
        self.n == other.n
            && self.edge_count() == other.edge_count()
            && self.degree_sequence() == other.degree_sequence()
            && self.canonical_form() == other.canonical_form()
    }
}

/// Advances to the next permutation in lexicographic order.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl fmt::Display for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}[", self.n)?;
        for (k, (a, b)) in self.labelled_edges().into_iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}{b}")?;
        }
        write!(f, "]")
    }
}
