//! Dense exact Gaussian elimination over a [`Field`].
//!
//! Matrices here are tiny (tens of rows), so everything is dense and pivots
//! are taken in plain column order: the first nonzero entry at or below the
//! current row in the leftmost remaining column. No pivoting heuristics.

use crate::coeff::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, field: &Field, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(field, self.row(i), v)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, field: &Field, i: usize, c: &Scalar) {
        for j in 0..self.cols {
            let x = field.mul(self.get(i, j), c);
            self.set(i, j, x);
        }
    }

    /// row[target] -= c * row[source]
    fn eliminate_row(&mut self, field: &Field, target: usize, source: usize, c: &Scalar) {
        for j in 0..self.cols {
            let s = self.get(source, j);
            if s.is_zero() {
                continue;
            }
            let x = field.sub(self.get(target, j), &field.mul(c, s));
            self.set(target, j, x);
        }
    }
}

pub fn dot(field: &Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = field.add(&acc, &field.mul(x, y));
        }
    }
    acc
}

/// Reduced row echelon form of a matrix together with the invertible row
/// transform `T` with `T * original = rref`.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub rref: Matrix,
    pub transform: Matrix,
    pub pivots: Vec<usize>,
}

impl Elimination {
    pub fn new(field: &Field, matrix: &Matrix) -> Self {
        let mut rref = matrix.clone();
        let mut transform = Matrix::identity(field, matrix.rows);
        let pivots = reduce(field, &mut rref, Some(&mut transform));
        Elimination { rref, transform, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A solution of `A x = b` with every free variable zero, or `None`.
    pub fn solve(&self, field: &Field, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let y = self.transform.mul_vec(field, b);
        if y[self.rank()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = vec![field.zero(); self.rref.cols];
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = y[i].clone();
        }
        Some(x)
    }

    /// Kernel basis, one vector per free column in increasing order.
    pub fn kernel(&self, field: &Field) -> Vec<Vec<Scalar>> {
        let cols = self.rref.cols;
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![field.zero(); cols];
                v[f] = field.one();
                for (i, &p) in self.pivots.iter().enumerate() {
                    v[p] = field.neg(self.rref.get(i, f));
                }
                v
            })
            .collect()
    }
}

/// In-place reduction to RREF, applying the same row operations to `aug`.
/// Returns the pivot columns.
pub fn reduce(field: &Field, m: &mut Matrix, mut aug: Option<&mut Matrix>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
            continue;
        };
        m.swap_rows(row, p);
        if let Some(a) = aug.as_deref_mut() {
            a.swap_rows(row, p);
        }
        let inv = field.inv(m.get(row, col)).expect("pivot is nonzero");
        if !inv.is_one() {
            m.scale_row(field, row, &inv);
            if let Some(a) = aug.as_deref_mut() {
                a.scale_row(field, row, &inv);
            }
        }
        for i in 0..m.rows {
            if i == row || m.get(i, col).is_zero() {
                continue;
            }
            let c = m.get(i, col).clone();
            m.eliminate_row(field, i, row, &c);
            if let Some(a) = aug.as_deref_mut() {
                a.eliminate_row(field, i, row, &c);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(field: &Field, m: &Matrix) -> usize {
    reduce(field, &mut m.clone(), None).len()
}

/// Indices of a maximal linearly independent prefix-greedy subset of `vectors`.
pub fn independent_columns(field: &Field, len: usize, vectors: &[Vec<Scalar>]) -> Vec<usize> {
    let mut m = Matrix::from_columns(field, len, vectors);
    reduce(field, &mut m, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(field: &Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, field.from_i64(x));
            }
        }
        m
    }

    #[test]
    fn solve_and_kernel_over_rationals() {
        let f = Field::Rational;
        let a = mat(&f, &[&[1, 2, 3], &[2, 4, 7]]);
        let e = Elimination::new(&f, &a);
        assert_eq!(e.pivots, vec![0, 2]);
        let b = vec![f.from_i64(1), f.from_i64(3)];
        let x = e.solve(&f, &b).unwrap();
        assert_eq!(a.mul_vec(&f, &x), b);
        let k = e.kernel(&f);
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&f, &k[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn inconsistent_system() {
        let f = Field::Gfp(3);
        let a = mat(&f, &[&[1, 1], &[2, 2]]);
        let e = Elimination::new(&f, &a);
        assert!(e.solve(&f, &[f.from_i64(1), f.from_i64(1)]).is_none());
        assert!(e.solve(&f, &[f.from_i64(1), f.from_i64(2)]).is_some());
    }

    #[test]
    fn zero_target_gives_zero_solution() {
        let f = Field::Gf2;
        let a = mat(&f, &[&[1, 1, 0], &[0, 1, 1]]);
        let x = Elimination::new(&f, &a).solve(&f, &[f.zero(), f.zero()]).unwrap();
        assert!(x.iter().all(Scalar::is_zero));
    }

    #[test]
    fn characteristic_dependent_rank() {
        let rows: &[&[i64]] = &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]];
        assert_eq!(rank(&Field::Gf2, &mat(&Field::Gf2, rows)), 2);
        assert_eq!(rank(&Field::Rational, &mat(&Field::Rational, rows)), 3);
    }
}
