//! Exhaustive verification of the obstruction-graph classification on six
//! vertices.
//!
//! The witness search computes Massey products directly and never looks at
//! the obstruction catalog; the sweep then compares its verdict with
//! [`obstruction::detect`] on every labelled graph.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::Field;
use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{pair_count, SmallGraph};
use crate::hochster::{random_scalar, CohomologyClass, MomentAngleModel, MultiCochain};
use crate::massey::{triple_massey, MasseyResult};
use crate::obstruction::{self, catalog, drawn_graphs, LEMMA_VALENCIES};

/// Number of labelled graphs on six vertices.
pub const GRAPH_COUNT: u32 = 1 << 15;

/// How a graph is turned into a simplicial complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComplexMode {
    /// The graph itself, as a 1-dimensional complex.
    Graph,
    /// The clique complex of the graph.
    Flag,
}

impl ComplexMode {
    pub fn complex(self, g: &SmallGraph) -> SimplicialComplex {
        match self {
            ComplexMode::Graph => SimplicialComplex::from_graph(g),
            ComplexMode::Flag => SimplicialComplex::flag(g),
        }
    }
}

/// Three pairwise-disjoint non-edges with a non-trivial Massey product of
/// their generator classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTriple {
    pub pairs: [VertexSet; 3],
    pub result: MasseyResult,
}

/// Ordered triples of pairwise-disjoint 2-subsets of the ground set that are
/// not edges of `K`.
pub fn candidate_triples(k: &SimplicialComplex) -> Vec<[VertexSet; 3]> {
    let non_edges: Vec<VertexSet> = k
        .ground()
        .subsets_of_size(2)
        .into_iter()
        .filter(|&e| !k.contains(e))
        .collect();
    let mut out = Vec::new();
    for &s1 in &non_edges {
        for &s2 in non_edges.iter().filter(|s| s.is_disjoint(s1)) {
            for &s3 in non_edges.iter().filter(|s| s.is_disjoint(s1.union(s2))) {
                out.push([s1, s2, s3]);
            }
        }
    }
    out
}

/// `[χ_v]` on `K_S`, `v = min S`, for a non-edge `S`.
pub fn generator_class(model: &MomentAngleModel, pair: VertexSet) -> Result<CohomologyClass> {
    let v = pair.iter().next().ok_or_else(|| Error::Parse("empty pair".into()))?;
    model.class(MultiCochain::indicator(model.field(), pair, VertexSet::singleton(v)))
}

/// First ordered candidate triple (in [`candidate_triples`] order) whose
/// generator classes have a non-trivial triple Massey product.
pub fn massey_witness_search(k: &SimplicialComplex, field: Field) -> Result<Option<WitnessTriple>> {
    if k.ground() != VertexSet::full(6) {
        return Err(Error::WrongVertexCount { expected: 6, found: k.ground().len() });
    }
    let model = MomentAngleModel::new(k.clone(), field);
    search_triples(&model, candidate_triples(k))
}

fn search_triples(
    model: &MomentAngleModel,
    triples: impl IntoIterator<Item = [VertexSet; 3]>,
) -> Result<Option<WitnessTriple>> {
    for pairs in triples {
        let [a1, a2, a3] = [0, 1, 2].map(|i| generator_class(model, pairs[i]));
        let result = triple_massey(model, &a1?, &a2?, &a3?)?;
        if result.defined && !result.trivial {
            return Ok(Some(WitnessTriple { pairs, result }));
        }
    }
    Ok(None)
}

/// Whether the complement of `g` has a perfect matching (every vertex
/// covered by pairwise-disjoint non-edges).
pub fn complement_has_perfect_matching(g: &SmallGraph) -> bool {
    fn go(g: &SmallGraph, free: u32) -> bool {
        if free == 0 {
            return true;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);
        (0..g.n())
            .filter(|&u| rest >> u & 1 == 1 && !g.has_edge(u, v))
            .any(|u| go(g, rest & !(1 << u)))
    }
    g.n().is_multiple_of(2) && go(g, (1u32 << g.n()) - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    /// Edge bitset of the labelled graph.
    pub graph: u32,
    pub canonical: u32,
    /// Catalog class detected on the (only) six-vertex subset.
    pub detected_class: Option<usize>,
    pub witness: Option<[VertexSet; 3]>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub edges: Vec<(usize, usize)>,
    pub detected: bool,
    pub witnessed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub total: usize,
    pub agreements: usize,
    pub detected: usize,
    pub witnessed: usize,
    /// Graphs with at least one candidate triple.
    pub with_candidates: usize,
    /// Graphs whose complement has a perfect matching.
    pub with_perfect_matching: usize,
    /// Canonical forms of witnessed graphs.
    pub witnessed_classes: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub field: Field,
    pub mode: ComplexMode,
    pub summary: VerificationSummary,
    pub disagreements: Vec<Disagreement>,
    pub records: Vec<GraphRecord>,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        let s = &self.summary;
        self.disagreements.is_empty()
            && s.agreements == s.total
            && s.total == GRAPH_COUNT as usize
            && s.with_candidates == s.with_perfect_matching
    }
}

fn examine(bits: u32, field: Field, mode: ComplexMode) -> Result<(GraphRecord, bool)> {
    let g = SmallGraph::from_bits(6, bits)?;
    let k = mode.complex(&g);
    let detected_class = obstruction::detect(&k)?.first().map(|h| h.class_index);
    let witness = massey_witness_search(&k, field)?.map(|w| w.pairs);
    let has_candidates = !candidate_triples(&k).is_empty();
    let agree = detected_class.is_some() == witness.is_some();
    let record = GraphRecord {
        graph: bits,
        canonical: g.canonical_form().bits(),
        detected_class,
        witness,
        agree,
    };
    Ok((record, has_candidates))
}

/// Runs `f` on a pool with `jobs` workers, or on the global pool.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

/// Compares detection with the direct witness search on all `2^15` labelled
/// graphs. Records are in graph order regardless of scheduling.
pub fn verify_theorem(field: Field, mode: ComplexMode, jobs: Option<usize>) -> Result<VerificationReport> {
    let start = Instant::now();
    let rows = with_jobs(jobs, || {
        (0..GRAPH_COUNT)
            .into_par_iter()
            .map(|bits| examine(bits, field, mode))
            .collect::<Result<Vec<_>>>()
    })??;

    let mut disagreements = Vec::new();
    let mut classes = BTreeSet::new();
    let mut summary = VerificationSummary {
        total: rows.len(),
        agreements: 0,
        detected: 0,
        witnessed: 0,
        with_candidates: 0,
        with_perfect_matching: 0,
        witnessed_classes: Vec::new(),
    };
    let mut records = Vec::with_capacity(rows.len());
    for (record, has_candidates) in rows {
        let g = SmallGraph::from_bits(6, record.graph)?;
        summary.agreements += record.agree as usize;
        summary.detected += record.detected_class.is_some() as usize;
        summary.witnessed += record.witness.is_some() as usize;
        summary.with_candidates += has_candidates as usize;
        summary.with_perfect_matching += complement_has_perfect_matching(&g) as usize;
        if record.witness.is_some() {
            classes.insert(record.canonical);
        }
        if !record.agree {
            disagreements.push(Disagreement {
                edges: g.labelled_edges(),
                detected: record.detected_class.is_some(),
                witnessed: record.witness.is_some(),
            });
        }
        records.push(record);
    }
    summary.witnessed_classes = classes.into_iter().collect();
    Ok(VerificationReport {
        field,
        mode,
        summary,
        disagreements,
        records,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

/// One labelled representative per isomorphism class of six-vertex graphs.
pub fn isomorphism_class_representatives() -> Vec<SmallGraph> {
    let mut seen = BTreeMap::new();
    for bits in 0..GRAPH_COUNT {
        let g = SmallGraph::from_bits(6, bits).expect("six-vertex bitset");
        seen.entry(g.canonical_form()).or_insert(g);
    }
    seen.into_values().collect()
}

/// Canonical forms of the six-vertex graphs (as 1-dimensional complexes)
/// with a non-trivial triple Massey product of degree-3 classes, sorted.
///
/// Every witness triple covers all six vertices, so the product lies in the
/// multidegree `[6]` part of `H^8`. Witness existence is label-invariant,
/// so one representative per isomorphism class is searched.
pub fn derive_minimal_obstructions(field: Field) -> Result<Vec<SmallGraph>> {
    let reps = isomorphism_class_representatives();
    let found = reps
        .par_iter()
        .map(|g| {
            let k = SimplicialComplex::from_graph(g);
            Ok(massey_witness_search(&k, field)?.map(|w| {
                debug_assert_eq!(w.pairs[0].union(w.pairs[1]).union(w.pairs[2]), VertexSet::full(6));
                g.canonical_form()
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out: Vec<_> = found.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
    pub passed: bool,
}

/// Pairwise non-isomorphism of the eight graphs, plus the valency-based
/// argument: sequences separate `a`, `e`, `f`; adjacency of the valency-2
/// and valency-4 vertices separates `d` from `g`; adjacency of the two
/// valency-2 vertices separates `c` from `b` and `h`; their distance (2 vs 3)
/// separates `b` from `h`.
pub fn verify_lemma() -> LemmaReport {
    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        checks.push(LemmaCheck { name: name.to_string(), passed, detail });
    };

    let cat = catalog();
    let classes = cat.classes();
    let mut iso_pairs = 0;
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            iso_pairs += classes[i].is_isomorphic(&classes[j]) as usize;
        }
    }
    let pairs = classes.len() * (classes.len() - 1) / 2;
    check(
        "pairwise non-isomorphic",
        classes.len() == 8 && pairs == 28 && iso_pairs == 0,
        format!("{pairs} pairs, {iso_pairs} isomorphic"),
    );

    let drawn: BTreeMap<char, SmallGraph> = drawn_graphs().into_iter().collect();
    let labels = cat.drawn_labels();
    let mut hit: Vec<_> = labels.values().flatten().copied().collect();
    hit.sort();
    hit.dedup();
    check(
        "drawn graphs are the catalog",
        labels.values().all(Option::is_some) && hit.len() == 8,
        format!("{labels:?}"),
    );

    let valency_ok = LEMMA_VALENCIES
        .iter()
        .all(|(c, v)| drawn[c].degree_sequence() == v.to_vec());
    check("valency sequences", valency_ok, "a..h as listed".into());

    let unique: Vec<char> = LEMMA_VALENCIES
        .iter()
        .filter(|(_, v)| LEMMA_VALENCIES.iter().filter(|(_, w)| w == v).count() == 1)
        .map(|(c, _)| *c)
        .collect();
    check(
        "valencies separate a, e, f",
        unique == vec!['a', 'e', 'f'],
        format!("unique sequences: {unique:?}"),
    );

    let with_degree = |g: &SmallGraph, d: usize| -> Vec<usize> { (0..6).filter(|&v| g.degree(v) == d).collect() };
    let two_four_adjacent = |g: &SmallGraph| {
        let (twos, fours) = (with_degree(g, 2), with_degree(g, 4));
        twos.iter().any(|&a| fours.iter().any(|&b| g.has_edge(a, b)))
    };
    let (d, g) = (two_four_adjacent(&drawn[&'d']), two_four_adjacent(&drawn[&'g']));
    check(
        "d vs g: valency 2 and 4 adjacent in g only",
        !d && g,
        format!("d: {d}, g: {g}"),
    );

    let twos_distance = |g: &SmallGraph| {
        let t = with_degree(g, 2);
        (t.len() == 2).then(|| g.distance(t[0], t[1])).flatten()
    };
    let dist: BTreeMap<char, Option<usize>> = ['b', 'c', 'h'].iter().map(|&c| (c, twos_distance(&drawn[&c]))).collect();
    check(
        "c vs b, h: valency-2 vertices adjacent in c only",
        dist[&'c'] == Some(1) && dist[&'b'] != Some(1) && dist[&'h'] != Some(1),
        format!("{dist:?}"),
    );
    check(
        "b vs h: valency-2 distance 2 in b, 3 in h",
        dist[&'b'] == Some(2) && dist[&'h'] == Some(3),
        format!("{dist:?}"),
    );

    let passed = checks.iter().all(|c| c.passed);
    LemmaReport { checks, passed }
}

/// Outcome of random non-homogeneous triples (reported, not asserted).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonHomogeneousReport {
    pub samples: usize,
    pub defined: usize,
    pub nontrivial: usize,
    /// Non-trivial products on graphs without a detected obstruction.
    pub nontrivial_without_detection: usize,
}

/// Random combinations of the degree-3 basis on random six-vertex graphs.
pub fn sample_nonhomogeneous(field: Field, samples: usize, seed: u64) -> Result<NonHomogeneousReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = NonHomogeneousReport { samples: 0, defined: 0, nontrivial: 0, nontrivial_without_detection: 0 };
    while report.samples < samples {
        let g = SmallGraph::from_bits(6, rng.gen_range(0..GRAPH_COUNT))?;
        let k = SimplicialComplex::from_graph(&g);
        let model = MomentAngleModel::new(k.clone(), field);
        let basis = model.basis_in_degree(3);
        if basis.is_empty() {
            continue;
        }
        let mut random_class = || -> Result<CohomologyClass> {
            let mut rep = MultiCochain::zero(field, 3);
            for b in &basis {
                rep.add_scaled(&random_scalar(&field, &mut rng), b.representative())?;
            }
            model.class(rep)
        };
        let (a1, a2, a3) = (random_class()?, random_class()?, random_class()?);
        let r = triple_massey(&model, &a1, &a2, &a3)?;
        report.samples += 1;
        report.defined += r.defined as usize;
        if r.defined && !r.trivial {
            report.nontrivial += 1;
            if obstruction::detect(&k)?.is_empty() {
                report.nontrivial_without_detection += 1;
            }
        }
    }
    Ok(report)
}

/// Detection hits on larger complexes versus direct computation there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractionReport {
    pub complexes: usize,
    pub hits: usize,
    /// Hits where a witness triple inside the hit subset is non-trivial on
    /// the whole complex.
    pub confirmed: usize,
}

/// For random graphs on `m` vertices, checks that each detected obstruction
/// subset carries a non-trivial product computed on the whole complex.
pub fn retraction_sanity(field: Field, m: usize, complexes: usize, seed: u64) -> Result<RetractionReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RetractionReport { complexes: 0, hits: 0, confirmed: 0 };
    let pairs = pair_count(m);
    while report.complexes < complexes {
        let bits = rng.gen_range(0..1u64 << pairs) as u32;
        let g = SmallGraph::from_bits(m, bits)?;
        let k = SimplicialComplex::from_graph(&g);
        let hits = obstruction::detect(&k)?;
        if hits.is_empty() {
            continue;
        }
        report.complexes += 1;
        let model = MomentAngleModel::new(k.clone(), field);
        for hit in hits {
            report.hits += 1;
            let triples: Vec<_> = candidate_triples(&k)
                .into_iter()
                .filter(|t| t.iter().all(|s| s.is_subset(hit.subset)))
                .collect();
            if search_triples(&model, triples)?.is_some() {
                report.confirmed += 1;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nontrivial_indeterminacy() -> SimplicialComplex {
        SimplicialComplex::from_edges(
            6,
            &[(2, 6), (3, 6), (3, 5), (2, 5), (2, 4), (1, 4), (1, 5), (1, 6)],
        )
        .unwrap()
    }

    #[test]
    fn witness_for_nontrivial_indeterminacy() {
        let w = massey_witness_search(&nontrivial_indeterminacy(), Field::Gf2).unwrap().unwrap();
        let pairs: Vec<_> = w.pairs.iter().map(|s| s.to_vec()).collect();
        assert_eq!(pairs, vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
    }

    #[test]
    fn no_witness_on_discrete_or_complete() {
        let discrete = SimplicialComplex::new(6, &[]).unwrap();
        assert!(massey_witness_search(&discrete, Field::Gf2).unwrap().is_none());
        let complete = SimplicialComplex::from_graph(&SmallGraph::empty(6).unwrap().complement());
        assert!(candidate_triples(&complete).is_empty());
        assert!(massey_witness_search(&complete, Field::Gf2).unwrap().is_none());
    }

    #[test]
    fn witness_search_needs_six_vertices() {
        let k = SimplicialComplex::new(5, &[]).unwrap();
        assert_eq!(
            massey_witness_search(&k, Field::Gf2),
            Err(Error::WrongVertexCount { expected: 6, found: 5 })
        );
    }

    #[test]
    fn candidate_triple_count_on_discrete_complex() {
        // 15 perfect matchings of K6, each in 3! orders
        assert_eq!(candidate_triples(&SimplicialComplex::new(6, &[]).unwrap()).len(), 90);
    }

    #[test]
    fn six_cycle_verdicts_agree() {
        let c6 = SmallGraph::from_labelled_edges(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]).unwrap();
        for mode in [ComplexMode::Graph, ComplexMode::Flag] {
            let (record, _) = examine(c6.bits(), Field::Gf2, mode).unwrap();
            assert!(record.agree);
        }
    }

    #[test]
    fn lemma_checks_pass() {
        let report = verify_lemma();
        assert!(report.passed, "{report:#?}");
        assert_eq!(report.checks.len(), 7);
    }

    #[test]
    fn perfect_matching_filter() {
        assert!(complement_has_perfect_matching(&SmallGraph::empty(6).unwrap()));
        assert!(!complement_has_perfect_matching(&SmallGraph::empty(6).unwrap().complement()));
        let star = SmallGraph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert!(!complement_has_perfect_matching(&star));
    }

    #[test]
    fn there_are_156_isomorphism_classes() {
        assert_eq!(isomorphism_class_representatives().len(), 156);
    }
}
