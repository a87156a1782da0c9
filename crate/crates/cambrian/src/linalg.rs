//! Small exact dense linear algebra over the scalar field.
//!
//! Everything here is n x n for n <= 9 or so; plain Gaussian elimination
//! with exact arithmetic is entirely adequate.

use std::sync::Arc;

use crate::scalar::{NumberField, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    /// Row-major.
    pub data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: &Arc<NumberField>, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Arc<NumberField>, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one(field);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Matrix {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.data[0].field());
                for j in 0..self.cols {
                    acc += &(self.at(i, j) * &v[j]);
                }
                acc
            })
            .collect()
    }

    pub fn mul_mat(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let field = self.data[0].field().clone();
        let mut out = Matrix::zero(&field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = self.at(i, k) * o.at(k, j);
                    *out.at_mut(i, j) += &t;
                }
            }
        }
        out
    }

    /// Inverse by Gauss-Jordan; panics if singular (callers check first via
    /// `solve` when singularity is a real possibility).
    pub fn inverse(&self) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let field = self.data[0].field().clone();
        let mut a = self.clone();
        let mut inv = Matrix::identity(&field, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.at(r, col).is_zero())
                .expect("singular matrix");
            if pivot != col {
                for j in 0..n {
                    a.data.swap(col * n + j, pivot * n + j);
                    inv.data.swap(col * n + j, pivot * n + j);
                }
            }
            let p = a.at(col, col).clone();
            let pinv = p.inverse();
            for j in 0..n {
                let t = a.at(col, j) * &pinv;
                *a.at_mut(col, j) = t;
                let t = inv.at(col, j) * &pinv;
                *inv.at_mut(col, j) = t;
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for j in 0..n {
                    let t = &f * a.at(col, j);
                    *a.at_mut(r, j) -= &t;
                    let t = &f * inv.at(col, j);
                    *inv.at_mut(r, j) -= &t;
                }
            }
        }
        inv
    }

    /// Determinant by fraction-full Gaussian elimination.
    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let field = self.data[0].field().clone();
        let mut a = self.clone();
        let mut det = Scalar::one(&field);
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !a.at(r, col).is_zero()) {
                Some(p) => p,
                None => return Scalar::zero(&field),
            };
            if pivot != col {
                for j in 0..n {
                    a.data.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = a.at(col, col).clone();
            det = &det * &p;
            let pinv = p.inverse();
            for r in col + 1..n {
                if a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col) * &pinv;
                for j in col..n {
                    let t = &f * a.at(col, j);
                    *a.at_mut(r, j) -= &t;
                }
            }
        }
        det
    }
}

/// Solve `A x = b`, returning `None` when the system is inconsistent or
/// underdetermined (A may be rectangular: one row per constraint).
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vector> {
    assert_eq!(a.rows, b.len());
    let n = a.cols;
    let field = b[0].field().clone();
    // augmented row echelon
    let mut rows: Vec<Vector> = (0..a.rows)
        .map(|i| {
            let mut r: Vector = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let m = rows.len();
    let mut rank = 0usize;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (rank..m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pinv = rows[rank][col].inverse();
        for x in rows[rank].iter_mut() {
            *x = &*x * &pinv;
        }
        for r in 0..m {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for j in col..=n {
                let t = &f * &rows[rank][j];
                rows[r][j] -= &t;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m {
            break;
        }
    }
    // inconsistent?
    for r in rank..m {
        if !rows[r][n].is_zero() {
            return None;
        }
    }
    if rank < n {
        return None; // underdetermined
    }
    let mut x = vec![Scalar::zero(&field); n];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = rows[r][n].clone();
    }
    Some(x)
}

/// Express `target` as a nonnegative combination of `gens` (a square,
/// invertible generating set); returns the coefficients if they are all >= 0.
pub fn nonneg_combination(gens: &[Vector], target: &[Scalar]) -> Option<Vector> {
    let n = target.len();
    assert_eq!(gens.len(), n);
    let field = target[0].field().clone();
    // columns are the generators
    let mut a = Matrix::zero(&field, n, n);
    for (j, g) in gens.iter().enumerate() {
        for i in 0..n {
            *a.at_mut(i, j) = g[i].clone();
        }
    }
    let x = solve(&a, target)?;
    if x.iter().all(|c| c.sign() >= 0) {
        Some(x)
    } else {
        None
    }
}

pub fn dot_plain(a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero(a[0].field());
    for (x, y) in a.iter().zip(b) {
        acc += &(x * y);
    }
    acc
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn vec_neg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(|x| x.is_zero())
}
