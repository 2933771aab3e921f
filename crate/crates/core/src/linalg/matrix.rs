use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<u32> = self.row(i).iter().map(|x| x.code()).collect();
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed so that zero-row matrices keep their width.
    pub fn from_rows(cols: usize, rows: &[Vec<FieldElement>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix from integer element codes, validating each code.
    pub fn from_codes(field: &Field, cols: usize, rows: &[&[u64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&c| field.element(c))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(cols, &rows)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.cols + j] = x;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[FieldElement]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn to_codes(&self) -> Vec<Vec<u32>> {
        self.row_iter()
            .map(|r| r.iter().map(|x| x.code()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Row vector times matrix: `x · self`.
    pub fn left_mul_vec(&self, field: &Field, x: &[FieldElement]) -> Vec<FieldElement> {
        debug_assert_eq!(x.len(), self.rows);
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o = field.add(*o, field.mul(xi, a));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, field: &Field, i: usize, s: FieldElement) {
        for j in 0..self.cols {
            let v = self.get(i, j);
            self.set(i, j, field.mul(v, s));
        }
    }

    /// row[dst] -= s * row[src]
    fn sub_scaled_row(&mut self, field: &Field, dst: usize, src: usize, s: FieldElement) {
        for j in 0..self.cols {
            let v = field.sub(self.get(dst, j), field.mul(s, self.get(src, j)));
            self.set(dst, j, v);
        }
    }
}

/// Dot product under the standard inner product.
#[inline]
pub fn dot(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter().zip(b).fold(FieldElement::ZERO, |acc, (&x, &y)| {
        field.add(acc, field.mul(x, y))
    })
}

/// Reduced row echelon form of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; the first `rank` rows are nonzero.
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Rref {
    /// The nonzero rows only.
    pub fn basis(&self) -> Matrix {
        Matrix {
            rows: self.rank,
            cols: self.matrix.cols,
            data: self.matrix.data[..self.rank * self.matrix.cols].to_vec(),
        }
    }
}

pub fn rref(field: &Field, mat: &Matrix) -> Rref {
    let mut a = mat.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(pivot_row) = (row..a.rows).find(|&i| !a.get(i, col).is_zero()) else {
            continue;
        };
        a.swap_rows(row, pivot_row);
        let inv = field.inv(a.get(row, col)).expect("pivot is nonzero");
        a.scale_row(field, row, inv);
        for i in 0..a.rows {
            if i != row {
                let factor = a.get(i, col);
                if !factor.is_zero() {
                    a.sub_scaled_row(field, i, row, factor);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref {
        matrix: a,
        rank: row,
        pivots,
    }
}

pub fn rank(field: &Field, mat: &Matrix) -> usize {
    rref(field, mat).rank
}
