//! The combinatorial cochain model of a moment-angle complex `Z_K`.
//!
//! A cochain of total degree `n` is a sum over supports `J ⊆ [m]` of reduced
//! simplicial cochains on `K_J` of degree `n - |J| - 1`. The differential acts
//! piecewise; the product of `χ_L` on `K_I` and `χ_M` on `K_J` is
//! `c · χ_{L∪M}` on `K_{I∪J}` when `I ∩ J = ∅` and `L ∪ M ∈ K`, and zero
//! otherwise, with
//!
//! ```text
//! c = ε(L,I) ε(M,J) ζ ε(L∪M, I∪J),   ζ = ∏_{k ∈ I∖L} ε(k, {k} ∪ J∖M),
//! ε(j,J) = (-1)^{r-1} for j the r-th element of J.
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::Rng;

use crate::coeff::{Field, Scalar};
use crate::cochain::{self, CohomologySummand, SimplicialCochain};
use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};

/// Default vertex cap for [`MomentAngleModel::betti_table`]; the sum runs
/// over all `2^m` supports.
pub const DEFAULT_BETTI_CAP: usize = 16;

/// Parity of the exponent in `ε(j, J)`.
#[inline]
fn eps_parity(j: usize, support: VertexSet) -> usize {
    support.count_below(j) & 1
}

#[inline]
fn eps_set_parity(l: VertexSet, support: VertexSet) -> usize {
    l.iter().map(|j| support.count_below(j)).sum::<usize>() & 1
}

/// `ε(j, J) = (-1)^{r-1}` where `j` is the `r`-th smallest element of `J`.
pub fn eps(field: &Field, j: usize, support: VertexSet) -> Result<Scalar> {
    if !support.contains(j) {
        return Err(Error::NotASubset { sub: vec![j], sup: support.to_vec() });
    }
    Ok(field.sign(eps_parity(j, support) == 1))
}

/// `ε(L, J) = ∏_{j ∈ L} ε(j, J)`.
pub fn eps_set(field: &Field, l: VertexSet, support: VertexSet) -> Result<Scalar> {
    if !l.is_subset(support) {
        return Err(Error::NotASubset { sub: l.to_vec(), sup: support.to_vec() });
    }
    Ok(field.sign(eps_set_parity(l, support) == 1))
}

/// Sign parity of `χ_L · χ_M` for `L ⊆ I`, `M ⊆ J`, `I ∩ J = ∅`.
#[inline]
fn product_sign_parity(l: VertexSet, i: VertexSet, m: VertexSet, j: VertexSet) -> usize {
    let free_j = j.difference(m);
    let zeta: usize = i.difference(l).iter().map(|k| free_j.count_below(k)).sum();
    (eps_set_parity(l, i) + eps_set_parity(m, j) + zeta + eps_set_parity(l.union(m), i.union(j))) & 1
}

/// A homogeneous element of the cochain model. Zero pieces are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiCochain {
    field: Field,
    degree: i32,
    pieces: BTreeMap<VertexSet, SimplicialCochain>,
}

/// Total degree of a simplicial degree `p` piece on support `J`.
pub fn total_degree(p: i32, support: VertexSet) -> i32 {
    p + support.len() as i32 + 1
}

/// Simplicial degree of the support-`J` piece in total degree `n`.
pub fn piece_degree(n: i32, support: VertexSet) -> i32 {
    n - support.len() as i32 - 1
}

impl MultiCochain {
    pub fn zero(field: Field, degree: i32) -> Self {
        MultiCochain { field, degree, pieces: BTreeMap::new() }
    }

    /// The unit `χ_∅` on support `∅`.
    pub fn unit(field: Field) -> Self {
        Self::from_piece(field, SimplicialCochain::indicator(&field, VertexSet::EMPTY, VertexSet::EMPTY))
    }

    pub fn from_piece(field: Field, piece: SimplicialCochain) -> Self {
        let degree = total_degree(piece.degree(), piece.support());
        let mut c = Self::zero(field, degree);
        if !piece.is_zero() {
            c.pieces.insert(piece.support(), piece);
        }
        c
    }

    /// Indicator `χ_L` on support `J`, viewed in total degree `dim L + |J| + 1`.
    pub fn indicator(field: Field, support: VertexSet, simplex: VertexSet) -> Self {
        Self::from_piece(field, SimplicialCochain::indicator(&field, support, simplex))
    }

    /// Sums pieces; every piece must sit in this total degree.
    pub fn from_pieces(
        field: Field,
        degree: i32,
        pieces: impl IntoIterator<Item = SimplicialCochain>,
    ) -> Result<Self> {
        let mut c = Self::zero(field, degree);
        for p in pieces {
            c.add_piece(p)?;
        }
        Ok(c)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn pieces(&self) -> &BTreeMap<VertexSet, SimplicialCochain> {
        &self.pieces
    }

    pub fn piece(&self, support: VertexSet) -> Option<&SimplicialCochain> {
        self.pieces.get(&support)
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Union of the supports of all pieces.
    pub fn support(&self) -> VertexSet {
        self.pieces.keys().fold(VertexSet::EMPTY, |a, &b| a.union(b))
    }

    pub fn add_piece(&mut self, piece: SimplicialCochain) -> Result<()> {
        self.add_scaled_piece(&self.field.one(), &piece)
    }

    fn add_scaled_piece(&mut self, c: &Scalar, piece: &SimplicialCochain) -> Result<()> {
        let n = total_degree(piece.degree(), piece.support());
        if n != self.degree {
            return Err(Error::NotHomogeneous(format!(
                "piece on {} has total degree {n}, expected {}",
                piece.support(),
                self.degree
            )));
        }
        if piece.is_zero() || c.is_zero() {
            return Ok(());
        }
        let field = self.field;
        let support = piece.support();
        let slot = self
            .pieces
            .entry(support)
            .or_insert_with(|| SimplicialCochain::zero(support, piece.degree()));
        slot.add_scaled(&field, c, piece);
        if slot.is_zero() {
            self.pieces.remove(&support);
        }
        Ok(())
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &MultiCochain) -> Result<()> {
        self.same_field(other)?;
        if self.degree != other.degree && !other.is_zero() {
            return Err(Error::NotHomogeneous(format!(
                "cannot add degree {} to degree {}",
                other.degree, self.degree
            )));
        }
        for p in other.pieces.values() {
            self.add_scaled_piece(c, p)?;
        }
        Ok(())
    }

    pub fn plus(&self, other: &MultiCochain) -> Result<MultiCochain> {
        let mut out = self.clone();
        out.add_scaled(&self.field.one(), other)?;
        Ok(out)
    }

    pub fn minus(&self, other: &MultiCochain) -> Result<MultiCochain> {
        let mut out = self.clone();
        out.add_scaled(&self.field.from_i64(-1), other)?;
        Ok(out)
    }

    pub fn scaled(&self, c: &Scalar) -> MultiCochain {
        let mut out = Self::zero(self.field, self.degree);
        for p in self.pieces.values() {
            out.add_scaled_piece(c, p).expect("same degree");
        }
        out
    }

    /// `ā = (-1)^{1+n} a`; on a piece of simplicial degree `p` over `J`
    /// this is `(-1)^{p+|J|}`.
    pub fn bar(&self) -> MultiCochain {
        if (1 + self.degree).rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.scaled(&self.field.from_i64(-1))
        }
    }

    fn same_field(&self, other: &MultiCochain) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for MultiCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "0");
        }
        for (i, (j, p)) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊕ ")?;
            }
            write!(f, "[{j}: {p}]")?;
        }
        Ok(())
    }
}

/// The product, extended bilinearly over pieces.
pub fn cup_cochain(k: &SimplicialComplex, a: &MultiCochain, b: &MultiCochain) -> Result<MultiCochain> {
    a.same_field(b)?;
    let field = a.field;
    let mut out = MultiCochain::zero(field, a.degree + b.degree);
    for (&i, x) in &a.pieces {
        for (&j, y) in &b.pieces {
            if !i.is_disjoint(j) {
                continue;
            }
            let u = i.union(j);
            let mut piece = SimplicialCochain::zero(u, x.degree() + y.degree() + 1);
            for (&l, cx) in x.terms() {
                for (&m, cy) in y.terms() {
                    let s = l.union(m);
                    if !k.contains(s) {
                        continue;
                    }
                    let mut c = field.mul(cx, cy);
                    if product_sign_parity(l, i, m, j) == 1 {
                        c = field.neg(&c);
                    }
                    piece.add_term(&field, s, &c);
                }
            }
            out.add_scaled_piece(&field.one(), &piece)?;
        }
    }
    Ok(out)
}

/// The piecewise simplicial coboundary.
pub fn total_coboundary(k: &SimplicialComplex, a: &MultiCochain) -> MultiCochain {
    let mut out = MultiCochain::zero(a.field, a.degree + 1);
    for p in a.pieces.values() {
        let d = cochain::coboundary(k, &a.field, p);
        out.add_scaled_piece(&a.field.one(), &d).expect("coboundary raises degree by one");
    }
    out
}

/// A cohomology class given by a cocycle representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    representative: MultiCochain,
}

impl CohomologyClass {
    pub fn representative(&self) -> &MultiCochain {
        &self.representative
    }

    pub fn degree(&self) -> i32 {
        self.representative.degree
    }

    pub fn field(&self) -> Field {
        self.representative.field
    }
}

/// Coordinates of a class in `⊕_J H̃^*(K_J)` against the cocycle bases of
/// the summands. Supports with zero coordinates are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassVector {
    pub degree: i32,
    pub coords: BTreeMap<VertexSet, Vec<Scalar>>,
}

impl ClassVector {
    pub fn zero(degree: i32) -> Self {
        ClassVector { degree, coords: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, field: &Field, c: &Scalar, other: &ClassVector) {
        for (&j, v) in &other.coords {
            let slot = self
                .coords
                .entry(j)
                .or_insert_with(|| vec![field.zero(); v.len()]);
            for (x, y) in slot.iter_mut().zip(v) {
                *x = field.add(x, &field.mul(c, y));
            }
            if slot.iter().all(Scalar::is_zero) {
                self.coords.remove(&j);
            }
        }
    }

    pub fn scaled(&self, field: &Field, c: &Scalar) -> ClassVector {
        let mut out = ClassVector::zero(self.degree);
        out.add_scaled(field, c, self);
        out
    }

    pub fn minus(&self, field: &Field, other: &ClassVector) -> ClassVector {
        let mut out = self.clone();
        out.add_scaled(field, &field.from_i64(-1), other);
        out
    }
}

/// Aggregated reduced Betti numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub field: Field,
    pub m: usize,
    /// Nonzero `dim H̃^p(K_J)`, keyed by `(J, p)`.
    pub by_subset: BTreeMap<(VertexSet, i32), usize>,
}

impl BettiTable {
    /// Sums over supports of equal cardinality: `(|J|, p) → Σ betti`.
    pub fn by_cardinality(&self) -> BTreeMap<(usize, i32), usize> {
        let mut out = BTreeMap::new();
        for (&(j, p), &b) in &self.by_subset {
            *out.entry((j.len(), p)).or_insert(0) += b;
        }
        out
    }

    /// `n → dim H^n(Z_K)`, nonzero entries only.
    pub fn totals(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (&(j, p), &b) in &self.by_subset {
            *out.entry(total_degree(p, j)).or_insert(0) += b;
        }
        out
    }

    pub fn entry(&self, support: VertexSet, p: i32) -> usize {
        self.by_subset.get(&(support, p)).copied().unwrap_or(0)
    }

    pub fn total(&self, n: i32) -> usize {
        self.totals().get(&n).copied().unwrap_or(0)
    }
}

/// The cochain algebra of `Z_K` over a field, with summand data cached per
/// `(J, p)`. The cache only ever stores values that are a pure function of
/// the key, so concurrent fills are idempotent.
#[derive(Debug)]
pub struct MomentAngleModel {
    complex: SimplicialComplex,
    field: Field,
    cache: Mutex<HashMap<(VertexSet, i32), Arc<CohomologySummand>>>,
}

impl Clone for MomentAngleModel {
    fn clone(&self) -> Self {
        Self::new(self.complex.clone(), self.field)
    }
}

impl MomentAngleModel {
    pub fn new(complex: SimplicialComplex, field: Field) -> Self {
        MomentAngleModel { complex, field, cache: Mutex::new(HashMap::new()) }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn summand(&self, support: VertexSet, p: i32) -> Arc<CohomologySummand> {
        if let Some(s) = self.cache.lock().unwrap().get(&(support, p)) {
            return Arc::clone(s);
        }
        let s = Arc::new(CohomologySummand::new(&self.complex, &self.field, support, p));
        let mut cache = self.cache.lock().unwrap();
        Arc::clone(cache.entry((support, p)).or_insert(s))
    }

    /// Checks that `a` is over this field and lives on `K`.
    pub fn check(&self, a: &MultiCochain) -> Result<()> {
        if a.field != self.field {
            return Err(Error::FieldMismatch(a.field.to_string(), self.field.to_string()));
        }
        for (&j, p) in &a.pieces {
            if !j.is_subset(self.complex.ground()) {
                return Err(Error::NotASubset { sub: j.to_vec(), sup: self.complex.ground().to_vec() });
            }
            p.validate(&self.complex)?;
        }
        Ok(())
    }

    pub fn cup(&self, a: &MultiCochain, b: &MultiCochain) -> Result<MultiCochain> {
        self.check(a)?;
        self.check(b)?;
        cup_cochain(&self.complex, a, b)
    }

    pub fn coboundary(&self, a: &MultiCochain) -> MultiCochain {
        total_coboundary(&self.complex, a)
    }

    /// Coordinates of `[z]`; fails if `z` is not a cocycle.
    pub fn class_vector(&self, z: &MultiCochain) -> Result<ClassVector> {
        let mut out = ClassVector::zero(z.degree);
        for (&j, piece) in &z.pieces {
            let h = self.summand(j, piece.degree());
            let coords = h.class_coordinates(piece).ok_or_else(|| {
                Error::NotACocycle(format!("piece on {j} of degree {} is not closed", piece.degree()))
            })?;
            if coords.iter().any(|x| !x.is_zero()) {
                out.coords.insert(j, coords);
            }
        }
        Ok(out)
    }

    /// A cocycle representing the class with the given coordinates.
    pub fn representative(&self, v: &ClassVector) -> MultiCochain {
        let mut out = MultiCochain::zero(self.field, v.degree);
        for (&j, coords) in &v.coords {
            let h = self.summand(j, piece_degree(v.degree, j));
            out.add_piece(h.class_representative(coords)).expect("degree matches");
        }
        out
    }

    /// Wraps a cocycle as a class.
    pub fn class(&self, representative: MultiCochain) -> Result<CohomologyClass> {
        self.check(&representative)?;
        if !self.coboundary(&representative).is_zero() {
            return Err(Error::NotACocycle(representative.to_string()));
        }
        Ok(CohomologyClass { representative })
    }

    /// Some `x` with `d x = target`, solved piecewise with every free
    /// variable zero, or `None` when `target` is not a coboundary.
    pub fn solve_coboundary(&self, target: &MultiCochain) -> Option<MultiCochain> {
        let mut out = MultiCochain::zero(self.field, target.degree - 1);
        for (&j, piece) in &target.pieces {
            let x = self.summand(j, piece.degree()).preimage(piece)?;
            out.add_piece(x).expect("preimage has matching degree");
        }
        Some(out)
    }

    pub fn cup_classes(&self, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass> {
        let product = self.cup(&a.representative, &b.representative)?;
        debug_assert!(self.coboundary(&product).is_zero());
        Ok(CohomologyClass { representative: product })
    }

    pub fn is_zero_class(&self, a: &CohomologyClass) -> Result<bool> {
        Ok(self.class_vector(&a.representative)?.is_zero())
    }

    pub fn classes_equal(&self, a: &CohomologyClass, b: &CohomologyClass) -> Result<bool> {
        if a.degree() != b.degree() {
            return Ok(a.representative.is_zero() && b.representative.is_zero());
        }
        let diff = a.representative.minus(&b.representative)?;
        Ok(self.class_vector(&diff)?.is_zero())
    }

    /// Summands `H̃^{n-|J|-1}(K_J)` with nonzero Betti number, in support order.
    pub fn summands_in_degree(&self, n: i32) -> Vec<Arc<CohomologySummand>> {
        let mut supports: Vec<_> = self.complex.ground().subsets().collect();
        supports.sort();
        supports
            .into_iter()
            .filter_map(|j| {
                let p = piece_degree(n, j);
                if p < -1 || p >= j.len() as i32 {
                    return None;
                }
                let h = self.summand(j, p);
                (h.betti() > 0).then_some(h)
            })
            .collect()
    }

    /// A basis of `H^n(Z_K)` built from the summand cocycle bases.
    pub fn basis_in_degree(&self, n: i32) -> Vec<CohomologyClass> {
        self.summands_in_degree(n)
            .iter()
            .flat_map(|h| h.cocycle_basis().to_vec())
            .map(|z| CohomologyClass { representative: MultiCochain::from_piece(self.field, z) })
            .collect()
    }

    /// All reduced Betti numbers of full subcomplexes; `m` is capped at `cap`.
    pub fn betti_table(&self, cap: usize) -> Result<BettiTable> {
        let m = self.complex.ground().len();
        if m > cap {
            return Err(Error::TooManyVertices {
                what: "betti table (raise the cap to sum over all 2^m supports)",
                m,
                max: cap,
            });
        }
        let mut by_subset = BTreeMap::new();
        for j in self.complex.ground().subsets() {
            let top = self.complex.full_subcomplex(j)?.dimension();
            for p in -1..=top {
                let b = CohomologySummand::new(&self.complex, &self.field, j, p).betti();
                if b > 0 {
                    by_subset.insert((j, p), b);
                }
            }
        }
        Ok(BettiTable { field: self.field, m: self.complex.m(), by_subset })
    }

    /// A random cochain of total degree `n`: each admissible support is
    /// included with probability `density`, with random coefficients.
    pub fn random_cochain(&self, rng: &mut impl Rng, n: i32, density: f64) -> MultiCochain {
        let mut out = MultiCochain::zero(self.field, n);
        let mut supports: Vec<_> = self.complex.ground().subsets().collect();
        supports.sort();
        for j in supports {
            let p = piece_degree(n, j);
            if p < -1 || !rng.gen_bool(density) {
                continue;
            }
            let terms: Vec<_> = self
                .complex
                .faces_in(j, p)
                .into_iter()
                .map(|s| (s, random_scalar(&self.field, rng)))
                .collect();
            let piece = SimplicialCochain::from_terms(&self.field, j, p, terms).expect("faces have degree p");
            out.add_piece(piece).expect("degree matches");
        }
        out
    }

    /// A random cocycle of total degree `n` (random class plus a random
    /// coboundary).
    pub fn random_cocycle(&self, rng: &mut impl Rng, n: i32) -> MultiCochain {
        let mut out = MultiCochain::zero(self.field, n);
        for h in self.summands_in_degree(n) {
            for z in h.cocycle_basis() {
                let piece = z.scaled(&self.field, &random_scalar(&self.field, rng));
                out.add_piece(piece).expect("degree matches");
            }
        }
        let x = self.random_cochain(rng, n - 1, 0.5);
        out.add_scaled(&self.field.one(), &self.coboundary(&x)).expect("degree matches");
        out
    }
}

/// Uniform over a finite field; small integers and halves over `Q`.
pub fn random_scalar(field: &Field, rng: &mut impl Rng) -> Scalar {
    match field.modulus() {
        Some(p) => Scalar::Residue(rng.gen_range(0..p)),
        None => {
            let n = field.from_i64(rng.gen_range(-3..=3));
            if rng.gen_bool(0.25) {
                field.mul(&n, &field.inv(&field.from_i64(2)).unwrap())
            } else {
                n
            }
        }
    }
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

    fn chi(f: Field, j: &[usize], s: &[usize]) -> MultiCochain {
        MultiCochain::indicator(f, VertexSet::of(j), VertexSet::of(s))
    }

    #[test]
    fn eps_examples() {
        let f = Field::Rational;
        let j = VertexSet::of(&[3, 4, 5, 6]);
        assert_eq!(eps(&f, 3, j).unwrap(), f.one());
        assert_eq!(eps(&f, 4, j).unwrap(), f.from_i64(-1));
        assert_eq!(eps(&f, 5, VertexSet::of(&[5, 6])).unwrap(), f.one());
        assert!(eps(&f, 1, j).is_err());
    }

    #[test]
    fn eps_set_examples() {
        let f = Field::Rational;
        let j = VertexSet::of(&[3, 4, 5, 6]);
        assert_eq!(eps_set(&f, VertexSet::of(&[3, 5]), j).unwrap(), f.one());
        assert_eq!(eps_set(&f, VertexSet::EMPTY, j).unwrap(), f.one());
        assert_eq!(eps_set(&f, VertexSet::of(&[4]), j).unwrap(), f.from_i64(-1));
        assert!(eps_set(&f, VertexSet::of(&[1, 3]), j).is_err());
    }

    #[test]
    fn example_products() {
        let f = Field::Rational;
        let k = nontrivial_indeterminacy();
        let p = cup_cochain(&k, &chi(f, &[3, 4], &[3]), &chi(f, &[5, 6], &[5])).unwrap();
        assert_eq!(p, chi(f, &[3, 4, 5, 6], &[3, 5]));
        let q = cup_cochain(&k, &chi(f, &[1, 2], &[1]), &chi(f, &[3, 4], &[3])).unwrap();
        assert!(q.is_zero());
        assert_eq!(q.degree(), 6);
        let r = cup_cochain(&k, &chi(f, &[1, 2], &[1]), &chi(f, &[1, 2], &[2])).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn unit_is_neutral() {
        let f = Field::Gfp(3);
        let k = nontrivial_indeterminacy();
        let a = chi(f, &[2, 5, 6], &[2, 6]);
        assert_eq!(cup_cochain(&k, &MultiCochain::unit(f), &a).unwrap(), a);
        assert_eq!(cup_cochain(&k, &a, &MultiCochain::unit(f)).unwrap(), a);
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let k = nontrivial_indeterminacy();
        let a = chi(Field::Gf2, &[1, 2], &[1]);
        let b = chi(Field::Rational, &[3, 4], &[3]);
        assert!(matches!(cup_cochain(&k, &a, &b), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn bar_signs() {
        let f = Field::Rational;
        let a = chi(f, &[1, 2], &[1]);
        assert_eq!(a.degree(), 3);
        assert_eq!(a.bar(), a);
        let b = chi(f, &[1], &[1]);
        assert_eq!(b.degree(), 2);
        assert_eq!(b.bar(), b.scaled(&f.from_i64(-1)));
        assert_eq!(b.bar().bar(), b);
    }

    #[test]
    fn total_coboundary_examples() {
        let f = Field::Rational;
        let k = nontrivial_indeterminacy();
        let d = total_coboundary(&k, &chi(f, &[1, 2, 3, 4, 5, 6], &[1]));
        let mut expected = MultiCochain::zero(f, d.degree());
        for e in [[1, 4], [1, 5], [1, 6]] {
            expected.add_scaled(&f.from_i64(-1), &chi(f, &[1, 2, 3, 4, 5, 6], &e)).unwrap();
        }
        assert_eq!(d, expected);
        assert!(total_coboundary(&k, &MultiCochain::unit(f)).is_zero());
        let model = MomentAngleModel::new(k.clone(), f);
        for z in model.basis_in_degree(5) {
            assert!(model.coboundary(z.representative()).is_zero());
        }
    }

    #[test]
    fn example_cup_classes_vanish() {
        let f = Field::Rational;
        let model = MomentAngleModel::new(nontrivial_indeterminacy(), f);
        let a1 = model.class(chi(f, &[1, 2], &[1])).unwrap();
        let a2 = model.class(chi(f, &[3, 4], &[3])).unwrap();
        let a3 = model.class(chi(f, &[5, 6], &[5])).unwrap();
        let p23 = model.cup_classes(&a2, &a3).unwrap();
        assert!(!p23.representative().is_zero());
        assert!(model.is_zero_class(&p23).unwrap());
        assert!(model.is_zero_class(&model.cup_classes(&a1, &a2).unwrap()).unwrap());
        let unit = model.class(MultiCochain::unit(f)).unwrap();
        assert!(model.classes_equal(&model.cup_classes(&unit, &a1).unwrap(), &a1).unwrap());
    }

    #[test]
    fn non_cocycles_are_rejected() {
        let f = Field::Rational;
        let model = MomentAngleModel::new(nontrivial_indeterminacy(), f);
        assert!(matches!(model.class(chi(f, &[1, 4], &[1])), Err(Error::NotACocycle(_))));
        assert!(model.class_vector(&chi(f, &[1, 4], &[1])).is_err());
        assert!(model.class(chi(f, &[1, 3], &[1, 3])).is_err());
    }

    #[test]
    fn betti_table_examples() {
        let f = Field::Rational;
        let two_points = MomentAngleModel::new(SimplicialComplex::new(2, &[]).unwrap(), f);
        let t = two_points.betti_table(DEFAULT_BETTI_CAP).unwrap();
        assert_eq!(t.total(3), 1);
        assert_eq!(t.entry(VertexSet::of(&[1, 2]), 0), 1);
        assert_eq!(t.totals(), BTreeMap::from([(0, 1), (3, 1)]));

        let b = MomentAngleModel::new(nontrivial_indeterminacy(), f).betti_table(DEFAULT_BETTI_CAP).unwrap();
        assert_eq!(b.entry(VertexSet::of(&[1, 2, 3, 4]), 1), 0);

        for m in 1..=5 {
            let simplex = SimplicialComplex::new(m, &[(1..=m).collect()]).unwrap();
            let t = MomentAngleModel::new(simplex, f).betti_table(DEFAULT_BETTI_CAP).unwrap();
            assert_eq!(t.totals(), BTreeMap::from([(0, 1)]));
        }

        let big = MomentAngleModel::new(SimplicialComplex::new(17, &[]).unwrap(), f);
        assert!(big.betti_table(DEFAULT_BETTI_CAP).is_err());
    }

    #[test]
    fn betti_totals_match_summand_sums() {
        let f = Field::Gf2;
        let model = MomentAngleModel::new(nontrivial_indeterminacy(), f);
        let t = model.betti_table(DEFAULT_BETTI_CAP).unwrap();
        for (n, total) in t.totals() {
            let direct: usize = model.summands_in_degree(n).iter().map(|h| h.betti()).sum();
            assert_eq!(direct, total, "degree {n}");
            assert_eq!(model.basis_in_degree(n).len(), total);
        }
    }
}
