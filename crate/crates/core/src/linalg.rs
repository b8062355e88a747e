//! Dense matrices over GF(2^m) with deterministic Gaussian elimination.

use crate::gf2m::{FieldElement, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.field.el(self.data[r * self.cols + c]).unwrap()
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        assert_eq!(v.spec(), self.field);
        self.data[r * self.cols + c] = v.coords();
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn row_mul_add(&mut self, target: usize, source: usize, factor: FieldElement) {
        for c in 0..self.cols {
            let v = self.get(target, c) + factor.mul(self.get(source, c));
            self.set(target, c, v);
        }
    }

    /// Reduced row echelon form; pivots on the first nonzero column so the
    /// result is reproducible.
    pub fn reduced_echelon(&self) -> Matrix {
        let mut m = self.clone();
        let mut rank = 0usize;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.data.swap_chunks(p, rank, m.cols);
            let inv = m.get(rank, col).inv().unwrap();
            for c in 0..m.cols {
                let v = inv.mul(m.get(rank, c));
                m.set(rank, c, v);
            }
            for r in 0..m.rows {
                if r != rank && !m.get(r, col).is_zero() {
                    let f = m.get(r, col);
                    m.row_mul_add(r, rank, f);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        let e = self.reduced_echelon();
        (0..e.rows)
            .filter(|&r| (0..e.cols).any(|c| !e.get(r, c).is_zero()))
            .count()
    }

    /// self * other^T
    pub fn mul_transpose(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.field, other.field);
        let mut out = Matrix::zeros(self.field, self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                let mut acc = self.field.zero();
                for c in 0..self.cols {
                    acc = acc + self.get(i, c).mul(other.get(j, c));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Does the row space of `self` contain every row of `other`?
    pub fn row_space_contains(&self, other: &Matrix) -> bool {
        assert_eq!(self.cols, other.cols);
        let base_rank = self.rank();
        let mut stacked = Matrix::zeros(self.field, self.rows + other.rows, self.cols);
        stacked.data[..self.data.len()].copy_from_slice(&self.data);
        stacked.data[self.data.len()..].copy_from_slice(&other.data);
        stacked.rank() == base_rank
    }
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize);
}

impl SwapChunks for Vec<u64> {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize) {
        if a == b {
            return;
        }
        for i in 0..width {
            self.swap(a * width + i, b * width + i);
        }
    }
}
