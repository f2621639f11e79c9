//! The eight six-vertex obstruction graphs and their detection as full
//! subcomplexes of a one-skeleton.
//!
//! The catalog is generated from the two witness families (a 7-edge family
//! with three optional edges and an 8-edge family with one optional edge),
//! deduplicated up to isomorphism, and checked against the published valency
//! sequences. A separate labelled transcription of the eight drawn graphs
//! (`a`..`h`) is kept for the non-isomorphism argument.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{next_permutation, SmallGraph};

/// Largest vertex count accepted by [`detect`]; `C(32, 6)` subsets is about
/// 900k lookups.
pub const MAX_DETECT_VERTICES: usize = 32;

/// Valency sequences of the eight obstruction graphs, `a` through `h`.
pub const LEMMA_VALENCIES: [(char, [usize; 6]); 8] = [
    ('a', [3, 3, 2, 2, 2, 2]),
    ('b', [3, 3, 3, 3, 2, 2]),
    ('c', [3, 3, 3, 3, 2, 2]),
    ('d', [4, 3, 3, 3, 3, 2]),
    ('e', [3, 3, 3, 3, 3, 3]),
    ('f', [4, 4, 3, 3, 3, 3]),
    ('g', [4, 3, 3, 3, 3, 2]),
    ('h', [3, 3, 3, 3, 2, 2]),
];

const TRIVIAL_FAMILY: [(usize, usize); 7] = [(1, 3), (3, 5), (2, 5), (2, 4), (4, 6), (3, 6), (1, 4)];
const TRIVIAL_FAMILY_OPTIONAL: [(usize, usize); 3] = [(1, 5), (1, 6), (2, 6)];
const NONTRIVIAL_FAMILY: [(usize, usize); 8] =
    [(2, 6), (3, 6), (3, 5), (2, 5), (2, 4), (1, 4), (1, 5), (1, 6)];
const NONTRIVIAL_FAMILY_OPTIONAL: [(usize, usize); 1] = [(4, 6)];

/// Complements: the path `1-..-6` plus chords.
const PATH: [(usize, usize); 5] = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)];
const PATH_A_OPTIONAL: [(usize, usize); 3] = [(2, 6), (1, 6), (1, 5)];
const PATH_B_SOLID: [(usize, usize); 1] = [(1, 3)];
const PATH_B_OPTIONAL: [(usize, usize); 1] = [(4, 6)];

/// Which witness family a template comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Products with trivial indeterminacy.
    TrivialIndeterminacy,
    /// Products with non-trivial indeterminacy.
    NontrivialIndeterminacy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub family: Family,
    /// Optional edges included, 1-based.
    pub optional: Vec<(usize, usize)>,
    pub graph: SmallGraph,
}

fn family_variants(
    solid: &[(usize, usize)],
    optional: &[(usize, usize)],
) -> Vec<(Vec<(usize, usize)>, SmallGraph)> {
    (0..1u32 << optional.len())
        .map(|mask| {
            let chosen: Vec<_> = optional
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let mut edges = solid.to_vec();
            edges.extend(&chosen);
            (chosen, SmallGraph::from_labelled_edges(6, &edges).expect("static edge data"))
        })
        .collect()
}

/// The ten labelled witness graphs (eight plus two).
pub fn templates() -> Vec<Template> {
    let mut out = Vec::new();
    for (family, solid, optional) in [
        (Family::TrivialIndeterminacy, &TRIVIAL_FAMILY[..], &TRIVIAL_FAMILY_OPTIONAL[..]),
        (Family::NontrivialIndeterminacy, &NONTRIVIAL_FAMILY[..], &NONTRIVIAL_FAMILY_OPTIONAL[..]),
    ] {
        for (optional, graph) in family_variants(solid, optional) {
            out.push(Template { family, optional, graph });
        }
    }
    out
}

/// The edge-complement variants: path plus chords, for each family.
pub fn complement_variants(family: Family) -> Vec<SmallGraph> {
    match family {
        Family::TrivialIndeterminacy => family_variants(&PATH, &PATH_A_OPTIONAL),
        Family::NontrivialIndeterminacy => {
            let mut solid = PATH.to_vec();
            solid.extend(PATH_B_SOLID);
            family_variants(&solid, &PATH_B_OPTIONAL)
        }
    }
    .into_iter()
    .map(|(_, g)| g)
    .collect()
}

/// The eight drawn obstruction graphs, labelled `a`..`h` in reading order.
///
/// Vertex numbering follows the drawing: 1 = origin, 2 = right of it,
/// 3 = above it, 4 = upper right, 5 = top, 6 = lower left.
pub fn drawn_graphs() -> Vec<(char, SmallGraph)> {
    // a-b, b-d, d-e, e-c, c-a as 1-2, 2-4, 4-5, 5-3, 3-1 in this numbering
    let cycle = [(1, 2), (2, 4), (4, 5), (5, 3), (3, 1)];
    let (f_a, f_e, f_b, f_c, c_d) = ((6, 1), (6, 5), (6, 2), (6, 3), (3, 4));
    let with = |extra: &[(usize, usize)]| {
        let mut e = cycle.to_vec();
        e.extend_from_slice(extra);
        e
    };
    let without = |drop: &[(usize, usize)], extra: &[(usize, usize)]| {
        let mut e: Vec<_> = cycle.iter().copied().filter(|x| !drop.contains(x)).collect();
        e.extend_from_slice(extra);
        e
    };
    let lists = [
        ('a', with(&[f_a, f_e])),
        ('b', with(&[f_a, f_e, f_b])),
        ('c', with(&[f_a, f_e, f_c])),
        ('d', with(&[f_a, f_e, f_b, f_c])),
        ('e', with(&[f_a, f_e, f_b, c_d])),
        ('f', with(&[f_a, f_e, f_b, f_c, c_d])),
        ('g', with(&[f_e, f_b, f_c, c_d])),
        ('h', without(&[(5, 3)], &[f_e, f_b, f_c, c_d])),
    ];
    lists
        .into_iter()
        .map(|(c, e)| (c, SmallGraph::from_labelled_edges(6, &e).expect("static edge data")))
        .collect()
}

/// The obstruction catalog with an index of every labelled copy.
#[derive(Clone, Debug)]
pub struct ObstructionCatalog {
    templates: Vec<Template>,
    /// Canonical forms, sorted.
    classes: Vec<SmallGraph>,
    /// Labelled six-vertex graph bits → (class index, relabelling onto the
    /// canonical form).
    orbits: HashMap<u32, (usize, [u8; 6])>,
}

impl ObstructionCatalog {
    /// Builds the catalog and checks it; any failed check is an error.
    pub fn build() -> Result<Self> {
        let templates = templates();
        let mut classes: Vec<SmallGraph> = templates.iter().map(|t| t.graph.canonical_form()).collect();
        classes.sort();
        classes.dedup();

        let mut orbits = HashMap::new();
        for (idx, class) in classes.iter().enumerate() {
            let mut perm: Vec<usize> = (0..6).collect();
            loop {
                let copy = class.permute(&perm);
                let mut inverse = [0u8; 6];
                for (v, &image) in perm.iter().enumerate() {
                    inverse[image] = v as u8;
                }
                orbits.entry(copy.bits()).or_insert((idx, inverse));
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        let catalog = ObstructionCatalog { templates, classes, orbits };
        catalog.self_check()?;
        Ok(catalog)
    }

    fn self_check(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(format!("obstruction catalog: {msg}")));
        if self.classes.len() != 8 {
            return fail(format!("{} isomorphism classes instead of 8", self.classes.len()));
        }
        let mut found: Vec<Vec<usize>> = self.classes.iter().map(|g| g.degree_sequence()).collect();
        let mut expected: Vec<Vec<usize>> = LEMMA_VALENCIES.iter().map(|(_, v)| v.to_vec()).collect();
        found.sort();
        expected.sort();
        if found != expected {
            return fail(format!("valency sequences {found:?} differ from {expected:?}"));
        }
        for (i, g) in self.classes.iter().enumerate() {
            for h in &self.classes[i + 1..] {
                if g.is_isomorphic(h) {
                    return fail(format!("{g} and {h} are isomorphic"));
                }
            }
        }
        for t in &self.templates {
            let complement = t.graph.complement().canonical_form();
            let variants: Vec<_> = complement_variants(t.family).iter().map(|g| g.canonical_form()).collect();
            if !variants.contains(&complement) {
                return fail(format!("complement of template {} is not a path-plus-chords variant", t.graph));
            }
        }
        Ok(())
    }

    pub fn templates(&self) -> &[Template] {
        &self.templates
    }

    /// Canonical forms in sorted order; positions are the class indices.
    pub fn classes(&self) -> &[SmallGraph] {
        &self.classes
    }

    /// Class index and relabelling (vertex `v` ↦ `perm[v]`, 0-based) of a
    /// six-vertex graph that is a copy of an obstruction graph.
    pub fn classify(&self, g: &SmallGraph) -> Option<(usize, [u8; 6])> {
        if g.n() != 6 {
            return None;
        }
        self.orbits.get(&g.bits()).copied()
    }

    pub fn contains(&self, g: &SmallGraph) -> bool {
        self.classify(g).is_some()
    }

    /// Map from each drawn label `a`..`h` to its class index.
    pub fn drawn_labels(&self) -> BTreeMap<char, Option<usize>> {
        drawn_graphs()
            .into_iter()
            .map(|(c, g)| (c, self.classify(&g).map(|(i, _)| i)))
            .collect()
    }
}

/// The catalog, built once per process.
pub fn catalog() -> &'static ObstructionCatalog {
    static CATALOG: OnceLock<ObstructionCatalog> = OnceLock::new();
    CATALOG.get_or_init(|| ObstructionCatalog::build().expect("obstruction catalog self-check"))
}

/// A six-vertex full subcomplex whose one-skeleton is an obstruction graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectionHit {
    pub subset: VertexSet,
    pub class_index: usize,
    /// `(vertex of K, vertex of the canonical catalog graph)`, both 1-based.
    pub iso: Vec<(usize, usize)>,
}

/// Every six-vertex subset `S` with `K^(1)_S` isomorphic to an obstruction
/// graph, in subset order.
pub fn detect(k: &SimplicialComplex) -> Result<Vec<DetectionHit>> {
    let ground = k.ground();
    if ground.len() > MAX_DETECT_VERTICES {
        return Err(Error::TooManyVertices {
            what: "obstruction detection",
            m: ground.len(),
            max: MAX_DETECT_VERTICES,
        });
    }
    let cat = catalog();
    let subsets = ground.subsets_of_size(6);
    let hits = subsets
        .par_iter()
        .filter_map(|&s| {
            let g = k.full_subcomplex(s).ok()?.one_skeleton().ok()?;
            let (class_index, perm) = cat.classify(&g)?;
            let iso = s
                .iter()
                .zip(perm.iter())
                .map(|(v, &image)| (v, image as usize + 1))
                .collect();
            Some(DetectionHit { subset: s, class_index, iso })
        })
        .collect();
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nontrivial_indeterminacy(extra: bool) -> SimplicialComplex {
        let mut e = NONTRIVIAL_FAMILY.to_vec();
        if extra {
            e.push((4, 6));
        }
        SimplicialComplex::from_edges(6, &e).unwrap()
    }

    #[test]
    fn catalog_has_eight_classes() {
        let cat = ObstructionCatalog::build().unwrap();
        assert_eq!(cat.templates().len(), 10);
        assert_eq!(cat.classes().len(), 8);
        let regular: Vec<_> = cat
            .classes()
            .iter()
            .filter(|g| g.degree_sequence() == vec![3; 6])
            .collect();
        assert_eq!(regular.len(), 1);
    }

    #[test]
    fn drawn_graphs_match_catalog() {
        let cat = catalog();
        let labels = cat.drawn_labels();
        let mut seen: Vec<_> = labels.values().map(|i| i.expect("drawn graph in catalog")).collect();
        seen.sort();
        assert_eq!(seen, (0..8).collect::<Vec<_>>());
        for ((c, g), (c2, val)) in drawn_graphs().iter().zip(LEMMA_VALENCIES) {
            assert_eq!(*c, c2);
            assert_eq!(g.degree_sequence(), val.to_vec(), "graph {c}");
        }
    }

    #[test]
    fn nontrivial_family_variants_are_distinct() {
        let t = templates();
        let b: Vec<_> = t
            .iter()
            .filter(|t| t.family == Family::NontrivialIndeterminacy)
            .map(|t| t.graph)
            .collect();
        assert_eq!(b.len(), 2);
        assert_eq!((b[0].edge_count(), b[1].edge_count()), (8, 9));
        assert_ne!(b[0].canonical_form(), b[1].canonical_form());
    }

    #[test]
    fn complement_contains_the_three_non_edges() {
        let g = templates()[0].graph.complement();
        assert!(g.has_edge(0, 1) && g.has_edge(2, 3) && g.has_edge(4, 5));
    }

    #[test]
    fn detect_examples() {
        let hits = detect(&nontrivial_indeterminacy(false)).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].subset, VertexSet::full(6));
        let full = SimplicialComplex::new(6, &[(1..=6).collect()]).unwrap();
        assert!(detect(&full).unwrap().is_empty());
        assert!(detect(&SimplicialComplex::new(6, &[]).unwrap()).unwrap().is_empty());
        assert!(detect(&SimplicialComplex::new(5, &[]).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn detection_iso_maps_edges_exactly() {
        let cat = catalog();
        let mut edges = NONTRIVIAL_FAMILY.to_vec();
        // embed into 8 vertices with an offset and extra noise
        let shifted: Vec<_> = edges.drain(..).map(|(a, b)| (a + 2, b + 2)).collect();
        let mut all = shifted.clone();
        all.extend([(1, 3), (2, 8)]);
        let k = SimplicialComplex::from_edges(8, &all).unwrap();
        let hits = detect(&k).unwrap();
        assert!(!hits.is_empty());
        for hit in hits {
            let class = cat.classes()[hit.class_index];
            let map: HashMap<usize, usize> = hit.iso.iter().copied().collect();
            let sub = k.full_subcomplex(hit.subset).unwrap();
            let image: Vec<_> = sub.edges().iter().map(|&(a, b)| (map[&a], map[&b])).collect();
            assert_eq!(SmallGraph::from_labelled_edges(6, &image).unwrap(), class);
        }
    }

    #[test]
    fn detection_is_label_invariant() {
        let k = SimplicialComplex::from_edges(
            7,
            &[(1, 4), (2, 6), (3, 6), (3, 5), (2, 5), (2, 4), (1, 5), (1, 6), (4, 7), (6, 7)],
        )
        .unwrap();
        let perm = [7, 3, 1, 6, 2, 5, 4];
        let hits = detect(&k).unwrap();
        let moved = detect(&k.relabel(&perm).unwrap()).unwrap();
        let image = |s: VertexSet| VertexSet::of(&s.iter().map(|v| perm[v - 1]).collect::<Vec<_>>());
        let mut expected: Vec<_> = hits.iter().map(|h| (image(h.subset), h.class_index)).collect();
        let mut got: Vec<_> = moved.iter().map(|h| (h.subset, h.class_index)).collect();
        expected.sort();
        got.sort();
        assert!(!got.is_empty());
        assert_eq!(got, expected);
    }
}
