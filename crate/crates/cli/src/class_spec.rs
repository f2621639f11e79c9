//! Text form of a cochain on the command line.
//!
//! A spec is one or more pieces joined by `+`. A piece is
//! `SUPPORT|TERM;TERM;...` where `SUPPORT` is a comma-separated vertex list
//! and each `TERM` is `SIMPLEX:COEFF`. An empty `SIMPLEX` is the empty
//! simplex. Examples: `1,2|1:1` is `χ_1` on `K_{12}`, and
//! `1,2,3,4,5,6|1,4:1;1,5:-1` is `χ_14 - χ_15` on the full complex.

use zk_massey::cochain::SimplicialCochain;
use zk_massey::{Error, Field, MultiCochain, Result, VertexSet};

fn vertex_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|v| v.trim().parse::<usize>().map_err(|_| Error::Parse(format!("invalid vertex {v:?}"))))
        .collect()
}

fn vertex_set(s: &str, m: usize) -> Result<VertexSet> {
    VertexSet::checked(&vertex_list(s)?, m)
}

fn piece(field: &Field, m: usize, s: &str) -> Result<SimplicialCochain> {
    let (support, terms) = s
        .split_once('|')
        .ok_or_else(|| Error::Parse(format!("piece {s:?} lacks a '|' after the support")))?;
    let support = vertex_set(support, m)?;
    let mut parsed = Vec::new();
    for term in terms.split(';').filter(|t| !t.trim().is_empty()) {
        let (simplex, coeff) = term
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("term {term:?} lacks a ':' before the coefficient")))?;
        parsed.push((vertex_set(simplex, m)?, field.parse(coeff)?));
    }
    let degree = match parsed.first() {
        Some((s, _)) => s.dim(),
        None => return Err(Error::Parse(format!("piece {s:?} has no terms"))),
    };
    SimplicialCochain::from_terms(field, support, degree, parsed)
}

/// Parses a spec into a homogeneous cochain on a complex with `m` vertices.
pub fn parse(field: Field, m: usize, spec: &str) -> Result<MultiCochain> {
    let pieces = spec
        .split('+')
        .map(|p| piece(&field, m, p))
        .collect::<Result<Vec<_>>>()?;
    let degree = zk_massey::hochster::total_degree(pieces[0].degree(), pieces[0].support());
    MultiCochain::from_pieces(field, degree, pieces)
}
