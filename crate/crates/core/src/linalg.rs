//! Dense matrices over `F_q` and Gaussian elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::field::{FieldElement, FiniteField};

/// Row-major dense matrix of field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = FieldElement::ONE;
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<FieldElement>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_indices(rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| FieldElement::from_index(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [FieldElement] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[FieldElement]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    /// Element indices, one `Vec` per row.
    pub fn to_indices(&self) -> Vec<Vec<u32>> {
        self.iter_rows()
            .map(|r| r.iter().map(|x| x.index()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out[(i, k)] = self[(i, j)];
            }
        }
        out
    }

    pub fn mul(&self, field: &FiniteField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = field.mul(a, other[(k, j)]);
                    out[(i, j)] = field.add(out[(i, j)], prod);
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, field: &FiniteField, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        self.iter_rows().map(|row| dot(field, row, v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn row_reduce(&mut self, field: &FiniteField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(pivot) = (lead..self.rows).find(|&i| !self[(i, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(lead, pivot);
            let inv = field.inv(self[(lead, col)]).expect("pivot is nonzero");
            for x in self.row_mut(lead) {
                *x = field.mul(*x, inv);
            }
            let pivot_row = self.row(lead).to_vec();
            for i in 0..self.rows {
                if i == lead {
                    continue;
                }
                let factor = self[(i, col)];
                if factor.is_zero() {
                    continue;
                }
                let row = self.row_mut(i);
                for (x, &p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x = field.sub(*x, field.mul(factor, p));
                }
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &FiniteField) -> usize {
        self.clone().row_reduce(field).len()
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self, field: &FiniteField) -> FieldElement {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = FieldElement::ONE;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&i| !m[(i, col)].is_zero()) else {
                return FieldElement::ZERO;
            };
            if pivot != col {
                m.swap_rows(pivot, col);
                det = field.neg(det);
            }
            let p = m[(col, col)];
            det = field.mul(det, p);
            let inv = field.inv(p).expect("pivot is nonzero");
            for i in col + 1..n {
                let factor = field.mul(m[(i, col)], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = field.sub(m[(i, j)], field.mul(factor, m[(col, j)]));
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Whether the row spaces of `self` and `other` coincide.
    pub fn same_row_space(&self, field: &FiniteField, other: &Matrix) -> bool {
        assert_eq!(self.cols, other.cols);
        let mut a = self.clone();
        let mut b = other.clone();
        let ra = a.row_reduce(field).len();
        let rb = b.row_reduce(field).len();
        ra == rb && (0..ra).all(|i| a.row(i) == b.row(i))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElement;

    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    /// One row per line, space-separated element indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.iter_rows() {
            let line: Vec<String> = row.iter().map(|x| x.index().to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

pub fn dot(field: &FiniteField, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter()
        .zip(b)
        .fold(FieldElement::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// Incrementally maintained echelon basis, for testing independence of a
/// growing list of vectors.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    // (pivot column, normalized vector); pivot entry is one and every other
    // basis vector is zero in this column
    rows: Vec<(usize, Vec<FieldElement>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis { rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` against the basis; returns the residue.
    pub fn reduce(&self, field: &FiniteField, v: &[FieldElement]) -> Vec<FieldElement> {
        let mut v = v.to_vec();
        for (col, row) in &self.rows {
            let factor = v[*col];
            if factor.is_zero() {
                continue;
            }
            for (x, &b) in v.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(factor, b));
            }
        }
        v
    }

    /// Adds `v` if it is independent of the basis. Returns `false` (and
    /// leaves the basis untouched) if it is dependent.
    pub fn insert(&mut self, field: &FiniteField, v: &[FieldElement]) -> bool {
        let mut v = self.reduce(field, v);
        let Some(col) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = field.inv(v[col]).expect("nonzero");
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let factor = row[col];
            if factor.is_zero() {
                continue;
            }
            for (x, &b) in row.iter_mut().zip(&v) {
                *x = field.sub(*x, field.mul(factor, b));
            }
        }
        self.rows.push((col, v));
        true
    }
}

impl Default for EchelonBasis {
    fn default() -> Self {
        Self::new()
    }
}
