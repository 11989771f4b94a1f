// SPDX-License-Identifier: Apache-2.0

//! Dense matrices over a [`Field`]: reduced row echelon form, rank,
//! nullspaces, determinants and square solves.

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    /// Builds a matrix from rows; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
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
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_rows(
            rows.iter().map(|&r| cols.iter().map(|&c| self.get(r, c)).collect()).collect(),
        )
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn mul(&self, f: &Field, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut m = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = f.add(m.get(i, j), f.mul(a, o.get(k, j)));
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.rows, "dimension mismatch");
        let mut out = vec![Fe::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(r, c)));
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|r| f.sum(self.row(r).iter().zip(v).map(|(&a, &b)| f.mul(a, b))))
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let Some(sel) = (pr..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            self.swap_rows(pr, sel);
            let inv = f.inv(self.get(pr, c)).unwrap();
            for j in c..self.cols {
                let v = f.mul(self.get(pr, j), inv);
                self.set(pr, j, v);
            }
            for r in 0..self.rows {
                if r == pr {
                    continue;
                }
                let factor = self.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(r, j), f.mul(factor, self.get(pr, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(c);
            pr += 1;
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

    pub fn rank(&self, f: &Field) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column, each with
    /// a 1 in its free coordinate. Ordered by free column.
    pub fn right_nullspace(&self, f: &Field) -> Vec<Vec<Fe>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut is_pivot = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![Fe::ZERO; self.cols];
            v[free] = Fe::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(m.get(i, free));
            }
            out.push(v);
        }
        out
    }

    /// Basis of `{v : v * self = 0}`.
    pub fn left_nullspace(&self, f: &Field) -> Vec<Vec<Fe>> {
        self.transpose().right_nullspace(f)
    }

    pub fn determinant(&self, f: &Field) -> Fe {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let mut det = Fe::ONE;
        for c in 0..self.cols {
            let Some(sel) = (c..self.rows).find(|&r| !m.get(r, c).is_zero()) else {
                return Fe::ZERO;
            };
            if sel != c {
                m.swap_rows(c, sel);
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).unwrap();
            for r in c + 1..self.rows {
                let factor = f.mul(m.get(r, c), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(c, j)));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// Some solution of `self * x = b` (free variables zero), or `None` if
    /// the system is inconsistent.
    pub fn solve_any(&self, f: &Field, b: &[Fe]) -> Option<Vec<Fe>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let n = self.cols;
        let mut aug = Matrix::zeros(self.rows, n + 1);
        for r in 0..self.rows {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n, b[r]);
        }
        let piv = aug.rref(f);
        if piv.last() == Some(&n) {
            return None;
        }
        let mut x = vec![Fe::ZERO; n];
        for (i, &p) in piv.iter().enumerate() {
            x[p] = aug.get(i, n);
        }
        Some(x)
    }

    /// Solves `self * x = b` for square invertible `self`.
    pub fn solve(&self, f: &Field, b: &[Fe]) -> Result<Vec<Fe>> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, n + 1);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n, b[r]);
        }
        let piv = aug.rref(f);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::SingularSubmatrix(format!("{n}x{n} system is singular")));
        }
        Ok((0..n).map(|r| aug.get(r, n)).collect())
    }
}
