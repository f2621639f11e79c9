//! Reduced simplicial cochains on full subcomplexes `K_J` and their cohomology.
//!
//! Simplices are oriented by ascending vertex order. The coboundary of `χ_L`
//! is `Σ (-1)^i χ_M` over simplices `M = L ∪ {v}` of `K_J`, where `i` is the
//! 0-based position of `v` in `M`.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{Field, Scalar};
use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::linalg::{self, Elimination, Matrix};

/// An element of `C̃^p(K_J)`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialCochain {
    support: VertexSet,
    degree: i32,
    terms: BTreeMap<VertexSet, Scalar>,
}

impl SimplicialCochain {
    pub fn zero(support: VertexSet, degree: i32) -> Self {
        SimplicialCochain { support, degree, terms: BTreeMap::new() }
    }

    /// The indicator cochain `χ_L`.
    pub fn indicator(field: &Field, support: VertexSet, simplex: VertexSet) -> Self {
        let mut c = Self::zero(support, simplex.dim());
        c.terms.insert(simplex, field.one());
        c
    }

    /// Builds a cochain from `(simplex, coefficient)` pairs, summing repeats.
    /// Every simplex must have dimension `degree` and lie inside `support`.
    pub fn from_terms(
        field: &Field,
        support: VertexSet,
        degree: i32,
        terms: impl IntoIterator<Item = (VertexSet, Scalar)>,
    ) -> Result<Self> {
        let mut c = Self::zero(support, degree);
        for (s, x) in terms {
            if s.dim() != degree {
                return Err(Error::NotHomogeneous(format!(
                    "simplex {s} has dimension {} in a degree {degree} cochain",
                    s.dim()
                )));
            }
            if !s.is_subset(support) {
                return Err(Error::NotASubset { sub: s.to_vec(), sup: support.to_vec() });
            }
            c.add_term(field, s, &x);
        }
        Ok(c)
    }

    pub fn support(&self) -> VertexSet {
        self.support
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<VertexSet, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, simplex: VertexSet) -> Option<&Scalar> {
        self.terms.get(&simplex)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, field: &Field, simplex: VertexSet, x: &Scalar) {
        if x.is_zero() {
            return;
        }
        match self.terms.get_mut(&simplex) {
            Some(y) => {
                let s = field.add(y, x);
                if s.is_zero() {
                    self.terms.remove(&simplex);
                } else {
                    *y = s;
                }
            }
            None => {
                self.terms.insert(simplex, x.clone());
            }
        }
    }

    /// `self += c * other`; supports and degrees must agree.
    pub fn add_scaled(&mut self, field: &Field, c: &Scalar, other: &SimplicialCochain) {
        debug_assert_eq!(self.support, other.support);
        debug_assert_eq!(self.degree, other.degree);
        if c.is_zero() {
            return;
        }
        for (&s, x) in &other.terms {
            self.add_term(field, s, &field.mul(c, x));
        }
    }

    pub fn scaled(&self, field: &Field, c: &Scalar) -> Self {
        let mut out = Self::zero(self.support, self.degree);
        out.add_scaled(field, c, self);
        out
    }

    /// Every keyed simplex must be a simplex of `K_support`.
    pub fn validate(&self, k: &SimplicialComplex) -> Result<()> {
        for &s in self.terms.keys() {
            if !k.contains(s) || !s.is_subset(self.support) || s.dim() != self.degree {
                return Err(Error::NotASimplex(s.to_vec()));
            }
        }
        Ok(())
    }

    /// Coordinates against an ordered basis of simplices (sorted by [`Ord`]).
    pub fn to_dense(&self, field: &Field, basis: &[VertexSet]) -> Vec<Scalar> {
        let mut v = vec![field.zero(); basis.len()];
        for (s, x) in &self.terms {
            let i = basis.binary_search(s).expect("cochain simplex missing from basis");
            v[i] = x.clone();
        }
        v
    }

    pub fn from_dense(support: VertexSet, degree: i32, basis: &[VertexSet], v: &[Scalar]) -> Self {
        let terms = basis
            .iter()
            .zip(v)
            .filter(|(_, x)| !x.is_zero())
            .map(|(&s, x)| (s, x.clone()))
            .collect();
        SimplicialCochain { support, degree, terms }
    }
}

impl fmt::Display for SimplicialCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, x)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{x}·χ{s}")?;
        }
        Ok(())
    }
}

/// The simplicial coboundary on `K_J`, `J = a.support()`.
pub fn coboundary(k: &SimplicialComplex, field: &Field, a: &SimplicialCochain) -> SimplicialCochain {
    let mut out = SimplicialCochain::zero(a.support, a.degree + 1);
    for (&l, x) in &a.terms {
        for v in a.support.difference(l).iter() {
            let m = l.with(v);
            if !k.contains(m) {
                continue;
            }
            let negative = l.count_below(v) % 2 == 1;
            let c = if negative { field.neg(x) } else { x.clone() };
            out.add_term(field, m, &c);
        }
    }
    out
}

/// Matrix of `d: C̃^p(K_J) → C̃^{p+1}(K_J)` in the given bases.
fn coboundary_matrix(
    field: &Field,
    support: VertexSet,
    source: &[VertexSet],
    target: &[VertexSet],
) -> Matrix {
    let mut m = Matrix::zeros(field, target.len(), source.len());
    for (j, &l) in source.iter().enumerate() {
        for v in support.difference(l).iter() {
            if let Ok(i) = target.binary_search(&l.with(v)) {
                m.set(i, j, field.sign(l.count_below(v) % 2 == 1));
            }
        }
    }
    m
}

/// `H̃^p(K_J)` with explicit bases and the linear maps needed to work with
/// classes: coordinates of cocycles and preimages under the coboundary.
#[derive(Clone, Debug)]
pub struct CohomologySummand {
    field: Field,
    support: VertexSet,
    degree: i32,
    /// `p`-simplices of `K_J` in [`VertexSet`] order.
    basis: Vec<VertexSet>,
    cocycle_basis: Vec<SimplicialCochain>,
    coboundary_basis: Vec<SimplicialCochain>,
    /// Row transform taking `[cocycles | coboundaries]` to `[I; 0]`.
    coordinates: Matrix,
    /// Elimination of `d: C^{p-1} → C^p`, for solving `d x = z`.
    lower: Elimination,
    lower_basis: Vec<VertexSet>,
}

impl CohomologySummand {
    pub fn new(k: &SimplicialComplex, field: &Field, support: VertexSet, degree: i32) -> Self {
        let lower_basis = k.faces_in(support, degree - 1);
        let basis = k.faces_in(support, degree);
        let upper_basis = k.faces_in(support, degree + 1);

        let d_lower = coboundary_matrix(field, support, &lower_basis, &basis);
        let d_upper = coboundary_matrix(field, support, &basis, &upper_basis);
        let lower = Elimination::new(field, &d_lower);
        let cocycles = Elimination::new(field, &d_upper).kernel(field);

        // Extend an independent set of coboundaries to a basis of cocycles.
        let boundary_columns: Vec<Vec<Scalar>> = lower
            .pivots
            .iter()
            .map(|&j| d_lower.column(j))
            .collect();
        let mut candidates = boundary_columns.clone();
        candidates.extend(cocycles.iter().cloned());
        let chosen = linalg::independent_columns(field, basis.len(), &candidates);
        let nb = boundary_columns.len();
        debug_assert!(chosen[..nb].iter().copied().eq(0..nb));
        let harmonic: Vec<Vec<Scalar>> = chosen[nb..].iter().map(|&j| candidates[j].clone()).collect();

        let mut columns = harmonic.clone();
        columns.extend(boundary_columns.iter().cloned());
        let coordinates = Elimination::new(field, &Matrix::from_columns(field, basis.len(), &columns)).transform;

        let to_cochain = |v: &Vec<Scalar>| SimplicialCochain::from_dense(support, degree, &basis, v);
        CohomologySummand {
            field: *field,
            support,
            degree,
            cocycle_basis: harmonic.iter().map(to_cochain).collect(),
            coboundary_basis: boundary_columns.iter().map(to_cochain).collect(),
            basis,
            coordinates,
            lower,
            lower_basis,
        }
    }

    pub fn support(&self) -> VertexSet {
        self.support
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn betti(&self) -> usize {
        self.cocycle_basis.len()
    }

    pub fn cochain_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn cocycle_dim(&self) -> usize {
        self.cocycle_basis.len() + self.coboundary_basis.len()
    }

    pub fn simplices(&self) -> &[VertexSet] {
        &self.basis
    }

    pub fn cocycle_basis(&self) -> &[SimplicialCochain] {
        &self.cocycle_basis
    }

    pub fn coboundary_basis(&self) -> &[SimplicialCochain] {
        &self.coboundary_basis
    }

    fn check(&self, z: &SimplicialCochain) {
        assert_eq!(
            (z.support, z.degree),
            (self.support, self.degree),
            "cochain lives in a different summand"
        );
    }

    /// Coordinates of `[z]` in the cocycle basis, or `None` if `z` is not a
    /// cocycle.
    pub fn class_coordinates(&self, z: &SimplicialCochain) -> Option<Vec<Scalar>> {
        self.check(z);
        let y = self.coordinates.mul_vec(&self.field, &z.to_dense(&self.field, &self.basis));
        let rank = self.cocycle_dim();
        if y[rank..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(y[..self.betti()].to_vec())
    }

    pub fn is_cocycle(&self, z: &SimplicialCochain) -> bool {
        self.class_coordinates(z).is_some()
    }

    /// A cochain `x` of degree `p - 1` with `d x = target`, chosen with every
    /// free variable zero, or `None` if `target` is not a coboundary.
    pub fn preimage(&self, target: &SimplicialCochain) -> Option<SimplicialCochain> {
        self.check(target);
        let b = target.to_dense(&self.field, &self.basis);
        let x = self.lower.solve(&self.field, &b)?;
        Some(SimplicialCochain::from_dense(
            self.support,
            self.degree - 1,
            &self.lower_basis,
            &x,
        ))
    }

    /// The cocycle `Σ c_i h_i` for coordinates `c` in the cocycle basis.
    pub fn class_representative(&self, coords: &[Scalar]) -> SimplicialCochain {
        let mut z = SimplicialCochain::zero(self.support, self.degree);
        for (c, h) in coords.iter().zip(&self.cocycle_basis) {
            z.add_scaled(&self.field, c, h);
        }
        z
    }
}

/// `H̃^p(K_J)` over `field`.
pub fn cohomology(k: &SimplicialComplex, support: VertexSet, degree: i32, field: &Field) -> CohomologySummand {
    CohomologySummand::new(k, field, support, degree)
}

/// Some `x` with `d x = target` on `K_J`, `J = target.support()`.
pub fn solve_coboundary(
    k: &SimplicialComplex,
    field: &Field,
    target: &SimplicialCochain,
) -> Option<SimplicialCochain> {
    cohomology(k, target.support(), target.degree(), field).preimage(target)
}
