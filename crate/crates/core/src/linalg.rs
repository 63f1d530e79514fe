//! Small dense matrices over [`Q`] with Gaussian elimination.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::rational::Q;

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Q::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::ONE;
        }
        m
    }

    /// Elementary matrix `E_{i,j}` (0-based) of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        m[(i, j)] = Q::ONE;
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diag(entries: &[Q]) -> Mat {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = *x;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Q::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn scale(&self, c: Q) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| *x * c).collect() }
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn trace(&self) -> Q {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Mat) -> Q {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = Q::ZERO;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if !a.is_zero() {
                    let b = other[(k, i)];
                    if !b.is_zero() {
                        acc += a * b;
                    }
                }
            }
        }
        acc
    }

    /// `[self, other] = self·other − other·self`.
    pub fn bracket(&self, other: &Mat) -> Mat {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, e: u32) -> Mat {
        let mut acc = Mat::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                m[(r, j)] *= inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)];
                    for j in c..m.cols {
                        let v = m[(r, j)];
                        if !v.is_zero() {
                            m[(i, j)] -= f * v;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : self·x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::ZERO; self.cols];
                v[f] = Q::ONE;
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)];
                }
                v
            })
            .collect()
    }

    /// Solve `self·x = b`; `None` when inconsistent. Picks free variables as zero.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::ZERO; self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)];
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = Q::ONE;
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)];
            }
        }
        Some(inv)
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| *a * *b).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, Q)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(k, x)| (k / self.cols, k % self.cols, *x))
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(-Q::ONE)
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Dot product of two rational vectors.
pub fn dot(a: &[Q], b: &[Q]) -> Q {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}
