//! Dense exact linear algebra over `Q(i)`: row reduction, Hermitian
//! congruence diagonalization, linear solves.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::GaussianRational;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn conj_transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == self[(j, i)].conj()))
    }

    /// `P^H A P`.
    pub fn congruence(&self, p: &Matrix) -> Matrix {
        p.conj_transpose().mul(self).mul(p)
    }

    /// Permutes rows and columns simultaneously: `out[i][j] = self[perm[i]][perm[j]]`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Matrix {
        let n = perm.len();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(perm[i], perm[j])].clone();
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Reduced row echelon form of the given rows; returns the nonzero rows.
pub fn row_reduce(mut rows: Vec<Vec<GaussianRational>>) -> Vec<Vec<GaussianRational>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].inv();
        for x in rows[pivot_row].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, pv) in row.iter_mut().zip(&pivot) {
                if !pv.is_zero() {
                    *x -= &(&f * pv);
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

pub fn rank(rows: Vec<Vec<GaussianRational>>) -> usize {
    row_reduce(rows).len()
}

/// One rank-one term `s · u u^H` of a congruence diagonalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub scale: BigRational,
    pub vector: Vec<GaussianRational>,
}

/// Writes a Hermitian matrix as `Σ_k s_k u_k u_k^H` with real nonzero `s_k`
/// and linearly independent `u_k`.
///
/// Each step picks the first nonzero diagonal entry `i` and peels off
/// `w w^H / s` with `w = A e_i`, `s = A_ii`. When the diagonal of the
/// remaining matrix vanishes but an entry `A_ij ≠ 0` survives, the probe
/// vector `v = e_i + conj(A_ij) e_j` gives `v^H A v = 2|A_ij|^2 > 0`, and the
/// step uses `w = A v`, `s = v^H A v` instead. Every step is a congruence, so
/// the signs of the `s_k` are the inertia.
pub fn hermitian_squares(a: &Matrix) -> Vec<Square> {
    let order: Vec<usize> = (0..a.rows()).collect();
    hermitian_squares_ordered(a, &order)
}

/// As [`hermitian_squares`], but pivots are searched in the given index
/// order (a permutation of `0..n`).
pub fn hermitian_squares_ordered(a: &Matrix, order: &[usize]) -> Vec<Square> {
    assert!(a.is_hermitian(), "congruence diagonalization needs a Hermitian matrix");
    let n = a.rows();
    assert_eq!(order.len(), n, "pivot order must be a permutation");
    let mut work = a.clone();
    let mut out = Vec::new();
    loop {
        let probe = order.iter().copied().find(|&i| !work[(i, i)].is_zero()).map(|i| {
            let mut v = vec![GaussianRational::zero(); n];
            v[i] = GaussianRational::one();
            v
        });
        let probe = probe.or_else(|| {
            order
                .iter()
                .enumerate()
                .flat_map(|(k, &i)| order[k + 1..].iter().map(move |&j| (i, j)))
                .find(|&(i, j)| !work[(i, j)].is_zero())
                .map(|(i, j)| {
                    let mut v = vec![GaussianRational::zero(); n];
                    v[i] = GaussianRational::one();
                    v[j] = work[(i, j)].conj();
                    v
                })
        });
        let Some(v) = probe else { break };

        let w: Vec<GaussianRational> = (0..n)
            .map(|r| {
                (0..n).filter(|&c| !v[c].is_zero() && !work[(r, c)].is_zero()).map(|c| &work[(r, c)] * &v[c]).sum()
            })
            .collect();
        let s: GaussianRational = v.iter().zip(&w).map(|(vi, wi)| &vi.conj() * wi).sum();
        debug_assert!(s.is_real() && !s.is_zero());
        let s = s.re;
        let inv = s.recip();
        for r in 0..n {
            if w[r].is_zero() {
                continue;
            }
            let wr = w[r].scale(&inv);
            for c in 0..n {
                if !w[c].is_zero() {
                    let delta = &wr * &w[c].conj();
                    work[(r, c)] -= &delta;
                }
            }
        }
        let u = w.iter().map(|x| x.scale(&inv)).collect();
        out.push(Square { scale: s, vector: u });
    }
    out
}

/// Solves `A x = b` exactly. Returns `None` when inconsistent; free
/// variables (if any) are set to zero.
pub fn solve(a: &Matrix, b: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
    assert_eq!(a.rows(), b.len());
    let nc = a.cols();
    let aug: Vec<Vec<GaussianRational>> =
        (0..a.rows()).map(|i| a.row(i).iter().cloned().chain(std::iter::once(b[i].clone())).collect()).collect();
    let red = row_reduce(aug);
    let mut x = vec![GaussianRational::zero(); nc];
    for row in &red {
        match row.iter().position(|v| !v.is_zero()) {
            Some(p) if p == nc => return None,
            Some(p) => x[p] = row[nc].clone(),
            None => {}
        }
    }
    Some(x)
}
