//! Dense exact matrices over the ground field.
//!
//! Row-major storage. A matrix represents a linear map by acting on column
//! vectors from the left, so a map `V -> W` has `dim W` rows and `dim V`
//! columns. Everything downstream (Hom solvers, kernels, minimalization)
//! reduces to `rref`, `kernel`, and `solve` here.

use crate::field::{GroundField, Scalar};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub field: GroundField,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zero(field: GroundField, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: GroundField, n: usize) -> Self {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: GroundField, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat { field, rows: r, cols: c, data }
    }

    pub fn from_fn(field: GroundField, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { field, rows, cols, data }
    }

    /// Column vector from entries.
    pub fn col_vec(field: GroundField, entries: Vec<Scalar>) -> Self {
        let rows = entries.len();
        Mat { field, rows, cols: 1, data: entries }
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.field.add(self.at(r, c), other.at(r, c))
        })
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.field.sub(self.at(r, c), other.at(r, c))
        })
    }

    pub fn neg(&self) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |r, c| self.field.neg(self.at(r, c)))
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |r, c| self.field.mul(self.at(r, c), s))
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let f = self.field;
        Mat::from_fn(f, self.rows, other.cols, |r, c| {
            let mut acc = f.zero();
            for k in 0..self.cols {
                let a = self.at(r, k);
                if f.is_zero(a) {
                    continue;
                }
                acc = f.add(&acc, &f.mul(a, other.at(k, c)));
            }
            acc
        })
    }

    /// Stack horizontally: `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    /// Stack vertically: `[self; other]`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        Mat::from_fn(self.field, self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.at(r, c).clone()
            } else {
                other.at(r - self.rows, c).clone()
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        Mat::from_fn(self.field, rows.len(), cols.len(), |r, c| {
            self.at(rows[r], cols[c]).clone()
        })
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !f.is_zero(self.at(r, col))) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = f.inv(self.at(row, col));
            for c in col..self.cols {
                let v = f.mul(self.at(row, c), &inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !f.is_zero(self.at(r, col)) {
                    let factor = self.at(r, col).clone();
                    for c in col..self.cols {
                        let v = f.sub(self.at(r, c), &f.mul(&factor, self.at(row, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the null space, returned as the columns of a matrix.
    pub fn kernel(&self) -> Mat {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Mat::zero(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, f.one());
            for (pr, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, f.neg(m.at(pr, fc)));
            }
        }
        basis
    }

    /// Basis of the column space: the columns of `self` at pivot positions.
    pub fn column_space(&self) -> Mat {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        self.submatrix(&(0..self.rows).collect::<Vec<_>>(), &pivots)
    }

    /// Solves `self * x = rhs` column by column. `None` if any column is
    /// inconsistent.
    pub fn solve(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, rhs.rows);
        let f = self.field;
        let mut aug = self.hstack(rhs);
        let pivots = aug.rref_in_place();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zero(f, self.cols, rhs.cols);
        for (pr, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(pc, c, aug.at(pr, self.cols + c).clone());
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let id = Mat::identity(self.field, self.rows);
        let mut aug = self.hstack(&id);
        let pivots = aug.rref_in_place();
        if pivots.len() != self.rows {
            return None;
        }
        Some(aug.submatrix(
            &(0..self.rows).collect::<Vec<_>>(),
            &(self.cols..2 * self.cols).collect::<Vec<_>>(),
        ))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Flattens to a single column, rows first.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.field.render(self.at(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Extends `basis` (columns, assumed independent) by those columns of
/// `candidates` that enlarge the span; returns indices of adopted columns.
pub fn extend_basis(basis: &mut Vec<Vec<Scalar>>, candidates: &Mat) -> Vec<usize> {
    let f = candidates.field;
    let rows = candidates.rows;
    let mut adopted = Vec::new();
    for c in 0..candidates.cols {
        let cand = candidates.column(c);
        let mut m = Mat::from_fn(f, rows, basis.len() + 1, |r, j| {
            if j < basis.len() {
                basis[j][r].clone()
            } else {
                cand[r].clone()
            }
        });
        let pivots = m.rref_in_place();
        if pivots.len() == basis.len() + 1 {
            basis.push(cand);
            adopted.push(c);
        }
    }
    adopted
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> GroundField {
        GroundField::new_prime(101).unwrap()
    }

    fn m(rows: Vec<Vec<i64>>) -> Mat {
        let field = f();
        Mat::from_rows(
            field,
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.cols, 1);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn rank_nullity_on_random_shapes() {
        // rank + nullity = cols, and A * ker(A) = 0, across a spread of
        // deterministic matrices.
        let field = f();
        let mut seed = 7u64;
        for rows in 0..5 {
            for cols in 0..5 {
                let a = Mat::from_fn(field, rows, cols, |_, _| {
                    seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    field.from_random_word(seed >> 33)
                });
                let k = a.kernel();
                assert_eq!(a.rank() + k.cols, cols);
                if k.cols > 0 {
                    assert!(a.mul(&k).is_zero());
                }
            }
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(vec![vec![1, 1], vec![0, 1], vec![1, 2]]);
        let b = m(vec![vec![3], vec![1], vec![4]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let bad = m(vec![vec![1], vec![0], vec![0]]);
        assert!(a.solve(&bad).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(vec![vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(f(), 2));
        let sing = m(vec![vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn rational_kernel_is_exact() {
        let field = GroundField::Rational;
        let a = Mat::from_rows(
            field,
            vec![
                vec![field.parse("1/2").unwrap(), field.from_i64(1)],
                vec![field.parse("1/4").unwrap(), field.parse("1/2").unwrap()],
            ],
        );
        let k = a.kernel();
        assert_eq!(k.cols, 1);
        assert!(a.mul(&k).is_zero());
    }
}
