//! Triple Massey products `⟨α1, α2, α3⟩` in the cochain model of `Z_K`.
//!
//! With `ā = (-1)^{1+n} a`, a defining system consists of cocycles `a_i`
//! representing `α_i` together with `a12`, `a23` such that
//! `d a12 = ā1 a2` and `d a23 = ā2 a3`. Each defining system gives the
//! cocycle `ω = ā1 a23 + ā12 a3`, and the product is the set of all `[ω]`:
//! a coset of the indeterminacy `α1·H^{p2+p3-1} + H^{p1+p2-1}·α3`.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::{Field, Scalar};
use crate::error::{Error, Result};
use crate::hochster::{ClassVector, CohomologyClass, MomentAngleModel, MultiCochain};
use crate::linalg::{self, Elimination, Matrix};

/// Finite cosets larger than this are not enumerated.
pub const MAX_ENUMERATED_COSET: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSystem {
    pub a1: MultiCochain,
    pub a2: MultiCochain,
    pub a3: MultiCochain,
    pub a12: MultiCochain,
    pub a23: MultiCochain,
}

impl DefiningSystem {
    /// `ā1 a23 + ā12 a3`.
    pub fn omega(&self, model: &MomentAngleModel) -> Result<MultiCochain> {
        let left = model.cup(&self.a1.bar(), &self.a23)?;
        let right = model.cup(&self.a12.bar(), &self.a3)?;
        left.plus(&right)
    }

    /// Both coboundary identities hold exactly.
    pub fn is_valid(&self, model: &MomentAngleModel) -> Result<bool> {
        let l = model.cup(&self.a1.bar(), &self.a2)?;
        let r = model.cup(&self.a2.bar(), &self.a3)?;
        Ok(model.coboundary(&self.a12) == l && model.coboundary(&self.a23) == r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasseyResult {
    pub defined: bool,
    /// `p1 + p2 + p3 - 1`.
    pub degree: i32,
    pub system: Option<DefiningSystem>,
    pub omega: Option<MultiCochain>,
    pub omega_is_cocycle: bool,
    pub omega_class: Option<ClassVector>,
    pub indeterminacy_basis: Vec<CohomologyClass>,
    pub indeterminacy_vectors: Vec<ClassVector>,
    /// The product contains zero.
    pub trivial: bool,
}

impl MasseyResult {
    pub fn indeterminacy_dim(&self) -> usize {
        self.indeterminacy_vectors.len()
    }

    /// Whether `v` lies in the coset `[ω] + indeterminacy`.
    pub fn contains(&self, field: &Field, v: &ClassVector) -> bool {
        match &self.omega_class {
            Some(w) => span_coefficients(field, &self.indeterminacy_vectors, &v.minus(field, w)).is_some(),
            None => false,
        }
    }
}

fn check_cocycle(model: &MomentAngleModel, a: &MultiCochain, name: &str) -> Result<()> {
    model.check(a)?;
    if !model.coboundary(a).is_zero() {
        return Err(Error::NotACocycle(format!("{name} = {a}")));
    }
    Ok(())
}

/// Builds a defining system from cocycle representatives, with the
/// deterministic particular solutions for `a12` and `a23`. `None` if either
/// adjacent product is nonzero in cohomology.
pub fn defining_system(
    model: &MomentAngleModel,
    a1: &MultiCochain,
    a2: &MultiCochain,
    a3: &MultiCochain,
) -> Result<Option<DefiningSystem>> {
    let left = model.cup(&a1.bar(), a2)?;
    let Some(a12) = model.solve_coboundary(&left) else {
        return Ok(None);
    };
    let right = model.cup(&a2.bar(), a3)?;
    let Some(a23) = model.solve_coboundary(&right) else {
        return Ok(None);
    };
    Ok(Some(DefiningSystem {
        a1: a1.clone(),
        a2: a2.clone(),
        a3: a3.clone(),
        a12,
        a23,
    }))
}

pub fn triple_massey(
    model: &MomentAngleModel,
    alpha1: &CohomologyClass,
    alpha2: &CohomologyClass,
    alpha3: &CohomologyClass,
) -> Result<MasseyResult> {
    let (a1, a2, a3) = (alpha1.representative(), alpha2.representative(), alpha3.representative());
    check_cocycle(model, a1, "a1")?;
    check_cocycle(model, a2, "a2")?;
    check_cocycle(model, a3, "a3")?;
    let degree = a1.degree() + a2.degree() + a3.degree() - 1;

    let Some(system) = defining_system(model, a1, a2, a3)? else {
        return Ok(MasseyResult {
            defined: false,
            degree,
            system: None,
            omega: None,
            omega_is_cocycle: false,
            omega_class: None,
            indeterminacy_basis: Vec::new(),
            indeterminacy_vectors: Vec::new(),
            trivial: false,
        });
    };
    let omega = system.omega(model)?;
    if !model.coboundary(&omega).is_zero() {
        return Err(Error::Invariant(format!("ω = {omega} is not a cocycle")));
    }
    let omega_class = model.class_vector(&omega)?;
    let (indeterminacy_basis, indeterminacy_vectors) = indeterminacy(model, alpha1, alpha3, degree)?;
    let field = model.field();
    let trivial = span_coefficients(&field, &indeterminacy_vectors, &omega_class).is_some();

    Ok(MasseyResult {
        defined: true,
        degree,
        system: Some(system),
        omega: Some(omega),
        omega_is_cocycle: true,
        omega_class: Some(omega_class),
        indeterminacy_basis,
        indeterminacy_vectors,
        trivial,
    })
}

/// A basis of `α1·H^{n-p1} + H^{n-p3}·α3` inside `H^n`, as classes and as
/// coordinate vectors.
pub fn indeterminacy(
    model: &MomentAngleModel,
    alpha1: &CohomologyClass,
    alpha3: &CohomologyClass,
    target_degree: i32,
) -> Result<(Vec<CohomologyClass>, Vec<ClassVector>)> {
    let a1 = alpha1.representative();
    let a3 = alpha3.representative();
    let mut products = Vec::new();

    // Products with a summand whose support meets every piece of the other
    // factor vanish identically, so those summands are skipped.
    let meets_some_piece = |a: &MultiCochain, j| a.pieces().keys().any(|&s| s.is_disjoint(j));

    if !a1.is_zero() {
        for h in model.summands_in_degree(target_degree - a1.degree()) {
            if !meets_some_piece(a1, h.support()) {
                continue;
            }
            for z in h.cocycle_basis() {
                let x = MultiCochain::from_piece(model.field(), z.clone());
                products.push(model.cup(a1, &x)?);
            }
        }
    }
    if !a3.is_zero() {
        for h in model.summands_in_degree(target_degree - a3.degree()) {
            if !meets_some_piece(a3, h.support()) {
                continue;
            }
            for z in h.cocycle_basis() {
                let x = MultiCochain::from_piece(model.field(), z.clone());
                products.push(model.cup(&x, a3)?);
            }
        }
    }

    let vectors = products
        .iter()
        .map(|p| model.class_vector(p))
        .collect::<Result<Vec<_>>>()?;
    let keep = independent_vectors(&model.field(), &vectors);
    let classes = keep
        .iter()
        .map(|&i| model.class(products[i].clone()))
        .collect::<Result<Vec<_>>>()?;
    let vectors = keep.iter().map(|&i| vectors[i].clone()).collect();
    Ok((classes, vectors))
}

/// Lays out class vectors as dense columns over the union of their supports.
fn flatten(field: &Field, vectors: &[&ClassVector]) -> (usize, Vec<Vec<Scalar>>) {
    let mut frame: Vec<(crate::complex::VertexSet, usize)> = Vec::new();
    for v in vectors {
        for (&j, c) in &v.coords {
            if let Err(pos) = frame.binary_search_by(|(s, _)| s.cmp(&j)) {
                frame.insert(pos, (j, c.len()));
            }
        }
    }
    let mut offsets = Vec::with_capacity(frame.len());
    let mut len = 0;
    for (_, l) in &frame {
        offsets.push(len);
        len += l;
    }
    let columns = vectors
        .iter()
        .map(|v| {
            let mut col = vec![field.zero(); len];
            for (&j, c) in &v.coords {
                let k = frame.binary_search_by(|(s, _)| s.cmp(&j)).unwrap();
                for (i, x) in c.iter().enumerate() {
                    col[offsets[k] + i] = x.clone();
                }
            }
            col
        })
        .collect();
    (len, columns)
}

/// Indices of a greedy maximal independent subset of `vectors`.
pub fn independent_vectors(field: &Field, vectors: &[ClassVector]) -> Vec<usize> {
    let refs: Vec<_> = vectors.iter().collect();
    let (len, columns) = flatten(field, &refs);
    linalg::independent_columns(field, len, &columns)
}

/// Coefficients `c` with `Σ c_i basis_i = target`, or `None`.
pub fn span_coefficients(field: &Field, basis: &[ClassVector], target: &ClassVector) -> Option<Vec<Scalar>> {
    if target.is_zero() {
        return Some(vec![field.zero(); basis.len()]);
    }
    let mut refs: Vec<_> = basis.iter().collect();
    refs.push(target);
    let (len, mut columns) = flatten(field, &refs);
    let rhs = columns.pop().unwrap();
    let e = Elimination::new(field, &Matrix::from_columns(field, len, &columns));
    e.solve(field, &rhs)
}

/// Every element of a coset over a finite field.
pub fn enumerate_coset(field: &Field, base: &ClassVector, basis: &[ClassVector]) -> Result<Vec<ClassVector>> {
    let p = field
        .modulus()
        .ok_or_else(|| Error::InvalidField("coset enumeration needs a finite field".into()))? as usize;
    let size = (0..basis.len()).try_fold(1usize, |acc, _| acc.checked_mul(p));
    let size = match size {
        Some(s) if s <= MAX_ENUMERATED_COSET => s,
        _ => return Err(Error::Invariant(format!("coset of {p}^{} elements is too large", basis.len()))),
    };
    let mut out = Vec::with_capacity(size);
    for code in 0..size {
        let mut v = base.clone();
        let mut rest = code;
        for b in basis {
            v.add_scaled(field, &field.from_i64((rest % p) as i64), b);
            rest /= p;
        }
        out.push(v);
    }
    Ok(out)
}

/// Outcome of re-running the construction under random perturbations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetReport {
    pub samples: usize,
    pub escapes: usize,
    /// Rank of the differences `[ω'] - [ω]` among the samples.
    pub difference_rank: usize,
    pub indeterminacy_dim: usize,
    /// Number of elements of the coset (finite fields only).
    pub coset_size: Option<usize>,
    /// Distinct classes produced (finite fields only).
    pub distinct_classes: Option<usize>,
    /// The samples span the whole indeterminacy and, over a finite field with
    /// an enumerable coset, hit every element.
    pub fully_generated: bool,
}

/// Perturbs representatives by random coboundaries and the defining system by
/// random cocycles, and checks every resulting `[ω']` against the coset.
///
/// Any escape is a hard error that reports the offending perturbation.
pub fn coset_check(
    model: &MomentAngleModel,
    result: &MasseyResult,
    samples: usize,
    seed: u64,
) -> Result<CosetReport> {
    let (Some(system), Some(omega_class)) = (&result.system, &result.omega_class) else {
        return Err(Error::Invariant("coset check needs a defined Massey product".into()));
    };
    let field = model.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut produced = BTreeSet::new();
    let mut differences = Vec::new();

    for sample in 0..samples {
        let perturb_rep = |a: &MultiCochain, rng: &mut ChaCha8Rng| -> Result<MultiCochain> {
            let x = model.random_cochain(rng, a.degree() - 1, 0.5);
            a.plus(&model.coboundary(&x))
        };
        let a1 = perturb_rep(&system.a1, &mut rng)?;
        let a2 = perturb_rep(&system.a2, &mut rng)?;
        let a3 = perturb_rep(&system.a3, &mut rng)?;
        let base = defining_system(model, &a1, &a2, &a3)?.ok_or_else(|| {
            Error::Invariant(format!("sample {sample}: perturbed representatives lost definedness"))
        })?;
        let z12 = model.random_cocycle(&mut rng, base.a12.degree());
        let z23 = model.random_cocycle(&mut rng, base.a23.degree());
        let perturbed = DefiningSystem {
            a12: base.a12.plus(&z12)?,
            a23: base.a23.plus(&z23)?,
            ..base
        };
        if !perturbed.is_valid(model)? {
            return Err(Error::Invariant(format!("sample {sample}: invalid defining system")));
        }
        let omega = perturbed.omega(model)?;
        let class = model.class_vector(&omega)?;
        let diff = class.minus(&field, omega_class);
        if span_coefficients(&field, &result.indeterminacy_vectors, &diff).is_none() {
            return Err(Error::Invariant(format!(
                "sample {sample} escapes the coset: a1 = {}, a2 = {}, a3 = {}, a12 = {}, a23 = {}, ω = {omega}",
                perturbed.a1, perturbed.a2, perturbed.a3, perturbed.a12, perturbed.a23
            )));
        }
        if field.is_finite() {
            produced.insert(class_key(&class));
        }
        differences.push(diff);
    }

    let difference_rank = independent_vectors(&field, &differences).len();
    let dim = result.indeterminacy_dim();
    let mut fully_generated = difference_rank == dim;
    let mut coset_size = None;
    let mut distinct_classes = None;
    if field.is_finite() {
        distinct_classes = Some(produced.len());
        if let Ok(all) = enumerate_coset(&field, omega_class, &result.indeterminacy_vectors) {
            coset_size = Some(all.len());
            let expected: BTreeSet<_> = all.iter().map(class_key).collect();
            fully_generated &= produced == expected;
        }
    }
    Ok(CosetReport {
        samples,
        escapes: 0,
        difference_rank,
        indeterminacy_dim: dim,
        coset_size,
        distinct_classes,
        fully_generated,
    })
}

/// Order-independent key for finite-field class vectors.
fn class_key(v: &ClassVector) -> Vec<(u32, Vec<u32>)> {
    v.coords
        .iter()
        .map(|(j, c)| {
            let residues = c
                .iter()
                .map(|x| match x {
                    Scalar::Residue(r) => *r,
                    Scalar::Rational(_) => unreachable!("finite field"),
                })
                .collect();
            (j.bits(), residues)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{SimplicialComplex, VertexSet};

    fn nontrivial_indeterminacy(extra: bool) -> SimplicialComplex {
        let mut e = vec![(2, 6), (3, 6), (3, 5), (2, 5), (2, 4), (1, 4), (1, 5), (1, 6)];
        if extra {
            e.push((4, 6));
        }
        SimplicialComplex::from_edges(6, &e).unwrap()
    }

    fn trivial_indeterminacy() -> SimplicialComplex {
        SimplicialComplex::from_edges(6, &[(1, 3), (3, 5), (2, 5), (2, 4), (4, 6), (3, 6), (1, 4)]).unwrap()
    }

    fn generators(model: &MomentAngleModel) -> [CohomologyClass; 3] {
        let f = model.field();
        let c = |j: &[usize], v: usize| {
            model
                .class(MultiCochain::indicator(f, VertexSet::of(j), VertexSet::of(&[v])))
                .unwrap()
        };
        [c(&[1, 2], 1), c(&[3, 4], 3), c(&[5, 6], 5)]
    }

    #[test]
    fn nontrivial_indeterminacy_is_nontrivial_with_two_dimensional_indeterminacy() {
        let model = MomentAngleModel::new(nontrivial_indeterminacy(false), Field::Rational);
        let [a1, a2, a3] = generators(&model);
        let r = triple_massey(&model, &a1, &a2, &a3).unwrap();
        assert!(r.defined && r.omega_is_cocycle && !r.trivial);
        assert_eq!(r.degree, 8);
        assert_eq!(r.indeterminacy_dim(), 2);
        assert!(r.system.as_ref().unwrap().is_valid(&model).unwrap());
    }

    #[test]
    fn nontrivial_indeterminacy_with_extra_edge_has_one_dimensional_indeterminacy() {
        let model = MomentAngleModel::new(nontrivial_indeterminacy(true), Field::Rational);
        let [a1, a2, a3] = generators(&model);
        let r = triple_massey(&model, &a1, &a2, &a3).unwrap();
        assert!(r.defined && !r.trivial);
        assert_eq!(r.indeterminacy_dim(), 1);
    }

    #[test]
    fn trivial_indeterminacy_is_the_singleton_minus_chi_25() {
        for field in [Field::Rational, Field::Gfp(3), Field::Gf2] {
            let model = MomentAngleModel::new(trivial_indeterminacy(), field);
            let [a1, a2, a3] = generators(&model);
            let r = triple_massey(&model, &a1, &a2, &a3).unwrap();
            assert!(r.defined && !r.trivial);
            assert_eq!(r.indeterminacy_dim(), 0);
            let target = MultiCochain::indicator(field, VertexSet::full(6), VertexSet::of(&[2, 5]))
                .scaled(&field.from_i64(-1));
            assert_eq!(r.omega_class.unwrap(), model.class_vector(&target).unwrap());
        }
    }

    #[test]
    fn discrete_complex_gives_trivial_product() {
        let model = MomentAngleModel::new(SimplicialComplex::new(6, &[]).unwrap(), Field::Rational);
        let [a1, a2, a3] = generators(&model);
        let r = triple_massey(&model, &a1, &a2, &a3).unwrap();
        assert!(r.defined && r.trivial);
        assert!(r.omega.unwrap().is_zero());
    }

    #[test]
    fn undefined_when_a_product_survives() {
        // K_{1234} is a 4-cycle 1-3-2-4-1: [χ1]·[χ3] is the nonzero class in H̃^1.
        let k = SimplicialComplex::from_edges(6, &[(1, 3), (3, 2), (2, 4), (4, 1)]).unwrap();
        let model = MomentAngleModel::new(k, Field::Rational);
        let [a1, a2, a3] = generators(&model);
        assert!(!model.is_zero_class(&model.cup_classes(&a1, &a2).unwrap()).unwrap());
        let r = triple_massey(&model, &a1, &a2, &a3).unwrap();
        assert!(!r.defined && !r.trivial);
        assert!(r.omega.is_none() && r.indeterminacy_vectors.is_empty());
    }

    #[test]
    fn zero_outer_classes_have_no_indeterminacy() {
        let model = MomentAngleModel::new(nontrivial_indeterminacy(false), Field::Rational);
        let zero = model.class(MultiCochain::zero(Field::Rational, 3)).unwrap();
        let (classes, vectors) = indeterminacy(&model, &zero, &zero, 8).unwrap();
        assert!(classes.is_empty() && vectors.is_empty());
    }

    #[test]
    fn non_cocycle_input_is_an_error() {
        let model = MomentAngleModel::new(nontrivial_indeterminacy(false), Field::Rational);
        let [a1, a2, _] = generators(&model);
        let bad = model
            .class(MultiCochain::indicator(Field::Rational, VertexSet::of(&[5, 6]), VertexSet::of(&[5])))
            .unwrap();
        // forge a non-cocycle by going through the raw constructor path
        let raw = MultiCochain::indicator(Field::Rational, VertexSet::of(&[1, 5]), VertexSet::of(&[1]));
        assert!(model.class(raw).is_err());
        assert!(triple_massey(&model, &a1, &a2, &bad).is_ok());
        let other = MomentAngleModel::new(nontrivial_indeterminacy(false), Field::Gf2);
        assert!(triple_massey(&other, &a1, &a2, &bad).is_err());
    }

    #[test]
    fn coset_enumeration() {
        let f = Field::Gf2;
        let model = MomentAngleModel::new(nontrivial_indeterminacy(false), f);
        let [a1, a2, a3] = generators(&model);
        let r = triple_massey(&model, &a1, &a2, &a3).unwrap();
        let all = enumerate_coset(&f, r.omega_class.as_ref().unwrap(), &r.indeterminacy_vectors).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|v| !v.is_zero()));
        assert!(enumerate_coset(&Field::Rational, &ClassVector::zero(8), &[]).is_err());
    }

    #[test]
    fn coset_check_on_examples() {
        let model = MomentAngleModel::new(nontrivial_indeterminacy(false), Field::Gf2);
        let [a1, a2, a3] = generators(&model);
        let r = triple_massey(&model, &a1, &a2, &a3).unwrap();
        let report = coset_check(&model, &r, 100, 1).unwrap();
        assert_eq!(report.coset_size, Some(4));
        assert!(report.fully_generated);

        let model = MomentAngleModel::new(SimplicialComplex::new(6, &[]).unwrap(), Field::Gf2);
        let [a1, a2, a3] = generators(&model);
        let r = triple_massey(&model, &a1, &a2, &a3).unwrap();
        let report = coset_check(&model, &r, 20, 2).unwrap();
        assert_eq!(report.coset_size, Some(1));
        assert_eq!(report.distinct_classes, Some(1));
    }
}
