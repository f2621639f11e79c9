//! JSON documents read and written by the command-line tool.

use serde::{Deserialize, Serialize};

use zk_massey::hochster::BettiTable;
use zk_massey::massey::{CosetReport, MasseyResult};
use zk_massey::obstruction::DetectionHit;
use zk_massey::oracle::{LemmaReport, VerificationReport};
use zk_massey::{ClassVector, CohomologyClass, Field, MultiCochain, Result, SimplicialComplex, SmallGraph};

/// Input complex: facets over the 1-based vertex set `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl ComplexDocument {
    pub fn build(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::new(self.m, &self.facets)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub args: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub command: CommandEcho,
    pub field: Option<Field>,
    pub payload: Payload,
    pub exit_status: i32,
}

impl ResultDocument {
    /// Pretty JSON with object keys sorted at every level.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("documents serialize");
        serde_json::to_string_pretty(&value).expect("values serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "kebab-case")]
pub enum Payload {
    Betti(BettiDoc),
    Cup(CupDoc),
    Massey(MasseyDoc),
    Detect(DetectDoc),
    Verification(Box<VerificationReport>),
    Obstructions(ObstructionsDoc),
    Lemma(LemmaReport),
}

/// One coefficient of a cochain: `coeff · χ_simplex` on `K_support`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub support: Vec<usize>,
    pub simplex: Vec<usize>,
    pub coeff: String,
}

pub fn terms(c: &MultiCochain) -> Vec<TermDoc> {
    c.pieces()
        .iter()
        .flat_map(|(j, piece)| {
            piece.terms().iter().map(move |(s, x)| TermDoc {
                support: j.to_vec(),
                simplex: s.to_vec(),
                coeff: x.to_string(),
            })
        })
        .collect()
}

/// Coordinates of a class in the cocycle basis of one summand `H̃^*(K_J)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinatesDoc {
    pub support: Vec<usize>,
    pub coords: Vec<String>,
}

pub fn coordinates(v: &ClassVector) -> Vec<CoordinatesDoc> {
    v.coords
        .iter()
        .map(|(j, xs)| CoordinatesDoc { support: j.to_vec(), coords: xs.iter().map(|x| x.to_string()).collect() })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub degree: i32,
    pub representative: Vec<TermDoc>,
    pub coordinates: Vec<CoordinatesDoc>,
    pub zero: bool,
}

impl ClassDoc {
    pub fn new(class: &CohomologyClass, v: &ClassVector) -> Self {
        ClassDoc {
            degree: class.degree(),
            representative: terms(class.representative()),
            coordinates: coordinates(v),
            zero: v.is_zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    /// `|J|`, or the support itself in per-subset tables.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<usize>>,
    /// Degree in `H̃^p(K_J)`.
    pub p: i32,
    /// Degree in `H^*(Z_K)`.
    pub degree: i32,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalEntry {
    pub degree: i32,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiDoc {
    pub m: usize,
    pub totals: Vec<TotalEntry>,
    pub by_cardinality: Vec<BettiEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub by_subset: Option<Vec<BettiEntry>>,
}

impl BettiDoc {
    pub fn new(table: &BettiTable, by_subset: bool) -> Self {
        let degree = |size: usize, p: i32| p + size as i32 + 1;
        BettiDoc {
            m: table.m,
            totals: table.totals().into_iter().map(|(degree, dim)| TotalEntry { degree, dim }).collect(),
            by_cardinality: table
                .by_cardinality()
                .into_iter()
                .map(|((size, p), dim)| BettiEntry { size: Some(size), support: None, p, degree: degree(size, p), dim })
                .collect(),
            by_subset: by_subset.then(|| {
                table
                    .by_subset
                    .iter()
                    .map(|(&(j, p), &dim)| BettiEntry {
                        size: None,
                        support: Some(j.to_vec()),
                        p,
                        degree: degree(j.len(), p),
                        dim,
                    })
                    .collect()
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CupDoc {
    pub a: ClassDoc,
    pub b: ClassDoc,
    pub product: ClassDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetDoc {
    pub samples: usize,
    pub escapes: usize,
    pub difference_rank: usize,
    pub indeterminacy_dim: usize,
    pub coset_size: Option<usize>,
    pub distinct_classes: Option<usize>,
    pub fully_generated: bool,
}

impl From<&CosetReport> for CosetDoc {
    fn from(r: &CosetReport) -> Self {
        CosetDoc {
            samples: r.samples,
            escapes: r.escapes,
            difference_rank: r.difference_rank,
            indeterminacy_dim: r.indeterminacy_dim,
            coset_size: r.coset_size,
            distinct_classes: r.distinct_classes,
            fully_generated: r.fully_generated,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MasseyDoc {
    pub defined: bool,
    pub degree: i32,
    pub trivial: bool,
    pub a12: Option<Vec<TermDoc>>,
    pub a23: Option<Vec<TermDoc>>,
    pub omega: Option<Vec<TermDoc>>,
    pub omega_is_cocycle: bool,
    pub omega_class: Option<Vec<CoordinatesDoc>>,
    pub indeterminacy_dim: usize,
    pub indeterminacy_basis: Vec<Vec<TermDoc>>,
    pub coset_check: Option<CosetDoc>,
}

impl MasseyDoc {
    pub fn new(r: &MasseyResult, coset: Option<&CosetReport>) -> Self {
        MasseyDoc {
            defined: r.defined,
            degree: r.degree,
            trivial: r.trivial,
            a12: r.system.as_ref().map(|s| terms(&s.a12)),
            a23: r.system.as_ref().map(|s| terms(&s.a23)),
            omega: r.omega.as_ref().map(terms),
            omega_is_cocycle: r.omega_is_cocycle,
            omega_class: r.omega_class.as_ref().map(coordinates),
            indeterminacy_dim: r.indeterminacy_dim(),
            indeterminacy_basis: r.indeterminacy_basis.iter().map(|c| terms(c.representative())).collect(),
            coset_check: coset.map(CosetDoc::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitDoc {
    pub subset: Vec<usize>,
    pub class_index: usize,
    /// Edges of the catalog graph in canonical labelling.
    pub class_edges: Vec<(usize, usize)>,
    /// `(vertex of K, vertex of the catalog graph)`.
    pub iso: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectDoc {
    pub hits: Vec<HitDoc>,
}

impl DetectDoc {
    pub fn new(hits: &[DetectionHit], classes: &[SmallGraph]) -> Self {
        DetectDoc {
            hits: hits
                .iter()
                .map(|h| HitDoc {
                    subset: h.subset.to_vec(),
                    class_index: h.class_index,
                    class_edges: classes[h.class_index].labelled_edges(),
                    iso: h.iso.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub bits: u32,
    pub edges: Vec<(usize, usize)>,
    pub degrees: Vec<usize>,
}

impl From<&SmallGraph> for GraphDoc {
    fn from(g: &SmallGraph) -> Self {
        GraphDoc { bits: g.bits(), edges: g.labelled_edges(), degrees: g.degree_sequence() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionsDoc {
    pub graphs: Vec<GraphDoc>,
    pub matches_catalog: bool,
}

/// Error object written to stderr.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDocument {
    pub error: String,
    pub message: String,
    pub exit_status: i32,
}
