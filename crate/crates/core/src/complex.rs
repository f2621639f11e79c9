//! Simplicial complexes on the vertex set `{1, .., m}`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SmallGraph, MAX_GRAPH_VERTICES};

/// Vertex labels are stored in a `u32` mask.
pub const MAX_VERTICES: usize = 32;

/// A subset of `{1, .., 32}` stored as a bitmask (vertex `v` is bit `v - 1`).
///
/// Used both for simplices and for the supports `J` of full subcomplexes.
/// The ordering is by cardinality first and then lexicographic on the
/// ascending vertex lists, which fixes the pivot order of every elimination.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    /// `{1, .., m}`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_VERTICES);
        if m == MAX_VERTICES {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << m) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} out of range");
        VertexSet(1 << (v - 1))
    }

    /// Panics on labels outside `1..=32`; use [`VertexSet::checked`] for input.
    pub fn of(vertices: &[usize]) -> Self {
        vertices.iter().fold(VertexSet::EMPTY, |s, &v| s.with(v))
    }

    /// Validates labels against `1..=m` and rejects repeats.
    pub fn checked(vertices: &[usize], m: usize) -> Result<Self> {
        let mut s = VertexSet::EMPTY;
        for &v in vertices {
            if v == 0 || v > m || v > MAX_VERTICES {
                return Err(Error::VertexOutOfRange { vertex: v, m });
            }
            if s.contains(v) {
                return Err(Error::DuplicateVertex {
                    facet: vertices.to_vec(),
                    vertex: v,
                });
            }
            s = s.with(v);
        }
        Ok(s)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Simplicial dimension `|σ| - 1`.
    pub fn dim(self) -> i32 {
        self.len() as i32 - 1
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | VertexSet::singleton(v).0)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !VertexSet::singleton(v).0)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Number of members strictly below `v`.
    pub fn count_below(self, v: usize) -> usize {
        (self.0 & ((1u32 << (v - 1)) - 1)).count_ones() as usize
    }

    /// Ascending 1-based labels.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let t = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(t + 1)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn max_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    /// All subsets of `self`, in no particular order.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut sub = 0u32;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = VertexSet(sub);
            sub = sub.wrapping_sub(full) & full;
            done = sub == 0;
            Some(out)
        })
    }

    /// Subsets of `self` with exactly `k` members, in [`Ord`] order.
    pub fn subsets_of_size(self, k: usize) -> Vec<VertexSet> {
        let mut out: Vec<_> = self.subsets().filter(|s| s.len() == k).collect();
        out.sort();
        out
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 >> diff.trailing_zeros() & 1 == 1 {
                // `self` holds the smallest differing vertex
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.to_vec()
    }
}

impl TryFrom<Vec<usize>> for VertexSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        VertexSet::checked(&v, MAX_VERTICES)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A downward-closed family of subsets of a ground vertex set.
///
/// The ground set is `{1, .., m}` for complexes built from facets and `J` for
/// a full subcomplex `K_J`; vertex labels are never renumbered. The empty
/// simplex and every ground singleton are always present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    m: usize,
    ground: VertexSet,
    simplices: BTreeSet<VertexSet>,
}

impl SimplicialComplex {
    /// Downward closure of `facets` on `{1, .., m}`.
    pub fn new(m: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if m > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                what: "SimplicialComplex",
                m,
                max: MAX_VERTICES,
            });
        }
        let facets = facets
            .iter()
            .map(|f| VertexSet::checked(f, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_facet_sets(m, VertexSet::full(m), facets))
    }

    fn from_facet_sets(
        m: usize,
        ground: VertexSet,
        facets: impl IntoIterator<Item = VertexSet>,
    ) -> Self {
        let mut simplices = BTreeSet::new();
        simplices.insert(VertexSet::EMPTY);
        for v in ground.iter() {
            simplices.insert(VertexSet::singleton(v));
        }
        for f in facets {
            if simplices.contains(&f) {
                continue;
            }
            simplices.extend(f.subsets());
        }
        SimplicialComplex { m, ground, simplices }
    }

    /// The 1-dimensional complex with the given 1-based edges.
    pub fn from_edges(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let facets: Vec<Vec<usize>> = edges.iter().map(|&(a, b)| vec![a, b]).collect();
        Self::new(m, &facets)
    }

    /// `G` as a 1-dimensional complex on `{1, .., n}`.
    pub fn from_graph(g: &SmallGraph) -> Self {
        Self::from_edges(g.n(), &g.labelled_edges()).expect("graph edges are in range")
    }

    /// The clique complex of `G`.
    pub fn flag(g: &SmallGraph) -> Self {
        Self::flag_from_edges(g.n(), &g.labelled_edges()).expect("graph edges are in range")
    }

    /// The clique complex of a graph given by 1-based edges on `{1, .., m}`.
    pub fn flag_from_edges(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if m > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                what: "SimplicialComplex",
                m,
                max: MAX_VERTICES,
            });
        }
        let mut adj = vec![VertexSet::EMPTY; m + 1];
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > m {
                    return Err(Error::VertexOutOfRange { vertex: v, m });
                }
            }
            if a == b {
                return Err(Error::DuplicateVertex { facet: vec![a, b], vertex: a });
            }
            adj[a] = adj[a].with(b);
            adj[b] = adj[b].with(a);
        }
        let mut cliques = Vec::new();
        fn extend(clique: VertexSet, candidates: VertexSet, adj: &[VertexSet], out: &mut Vec<VertexSet>) {
            out.push(clique);
            for v in candidates.iter() {
                // only extend by vertices above the current maximum
                if clique.max_vertex().is_none_or(|top| v > top) {
                    extend(clique.with(v), candidates.intersection(adj[v]), adj, out);
                }
            }
        }
        extend(VertexSet::EMPTY, VertexSet::full(m), &adj, &mut cliques);
        Ok(SimplicialComplex {
            m,
            ground: VertexSet::full(m),
            simplices: cliques.into_iter().collect(),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ground(&self) -> VertexSet {
        self.ground
    }

    pub fn contains(&self, s: VertexSet) -> bool {
        self.simplices.contains(&s)
    }

    /// All simplices (including the empty one) in [`VertexSet`] order.
    pub fn simplices(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.simplices.iter().copied()
    }

    pub fn dimension(&self) -> i32 {
        self.simplices.iter().next_back().map_or(-1, |s| s.dim())
    }

    /// Simplices of `K_J` of dimension `dim`, in [`VertexSet`] order.
    pub fn faces_in(&self, support: VertexSet, dim: i32) -> Vec<VertexSet> {
        if dim < -1 {
            return Vec::new();
        }
        let k = (dim + 1) as usize;
        self.simplices
            .iter()
            .copied()
            .filter(|s| s.len() == k && s.is_subset(support))
            .collect()
    }

    /// Maximal simplices in [`VertexSet`] order.
    pub fn facets(&self) -> Vec<VertexSet> {
        self.simplices
            .iter()
            .copied()
            .filter(|&s| {
                !self
                    .simplices
                    .iter()
                    .any(|&t| t != s && s.is_subset(t))
            })
            .collect()
    }

    /// `K_J`: the simplices of `K` contained in `J`, on ground set `J`.
    pub fn full_subcomplex(&self, support: VertexSet) -> Result<Self> {
        if !support.is_subset(self.ground) {
            return Err(Error::NotASubset {
                sub: support.to_vec(),
                sup: self.ground.to_vec(),
            });
        }
        Ok(SimplicialComplex {
            m: self.m,
            ground: support,
            simplices: self
                .simplices
                .iter()
                .copied()
                .filter(|s| s.is_subset(support))
                .collect(),
        })
    }

    /// The 1-based edges, in [`VertexSet`] order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces_in(self.ground, 1)
            .into_iter()
            .map(|e| {
                let v = e.to_vec();
                (v[0], v[1])
            })
            .collect()
    }

    /// The one-skeleton as a [`SmallGraph`] on the ground vertices, taken in
    /// ascending order (so `K` on `{1..m}` keeps its labels shifted by one).
    pub fn one_skeleton(&self) -> Result<SmallGraph> {
        let verts = self.ground.to_vec();
        if verts.len() > MAX_GRAPH_VERTICES {
            return Err(Error::TooManyVertices {
                what: "SmallGraph one-skeleton",
                m: verts.len(),
                max: MAX_GRAPH_VERTICES,
            });
        }
        let index = |v: usize| verts.binary_search(&v).expect("edge vertex in ground set");
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(a, b)| (index(a), index(b)))
            .collect();
        SmallGraph::from_edges(verts.len(), &edges)
    }

    /// Relabels vertex `v` as `perm[v - 1]` (1-based images).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.m || VertexSet::checked(perm, self.m)?.len() != self.m {
            return Err(Error::Parse(format!("{perm:?} is not a permutation of 1..={}", self.m)));
        }
        let map = |s: VertexSet| VertexSet::of(&s.iter().map(|v| perm[v - 1]).collect::<Vec<_>>());
        Ok(SimplicialComplex {
            m: self.m,
            ground: map(self.ground),
            simplices: self.simplices.iter().map(|&s| map(s)).collect(),
        })
    }

    /// Checks downward closure and the singleton invariant.
    pub fn validate(&self) -> Result<()> {
        if !self.contains(VertexSet::EMPTY) {
            return Err(Error::Invariant("empty simplex missing".into()));
        }
        for v in self.ground.iter() {
            if !self.contains(VertexSet::singleton(v)) {
                return Err(Error::Invariant(format!("vertex {v} missing")));
            }
        }
        for &s in &self.simplices {
            if !s.is_subset(self.ground) {
                return Err(Error::Invariant(format!("simplex {s} leaves the ground set")));
            }
            for v in s.iter() {
                if !self.contains(s.without(v)) {
                    return Err(Error::Invariant(format!("face of {s} missing")));
                }
            }
        }
        Ok(())
    }
}
