//! Permutations, matrices over `Z_q`, and the small linear algebra the
//! protocol needs: matrix-vector products, inverses by Gauss-Jordan
//! elimination, and the product polynomial used to recognize permutation
//! matrices.
//!
//! Convention: a permutation `pi` is stored as its mapping array, `pi(i) =
//! map[i]` with 0-based indices. Its matrix `M` has the 1 of row `i` in column
//! `pi(i)`, so `(M x)_i = x[pi(i)]`.

use std::ops::{Index, IndexMut};

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{GroupParams, Scalar};

/// Bijection on `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    /// Uniform permutation by Fisher-Yates.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            map.swap(i, j);
        }
        Permutation { map }
    }

    pub fn from_mapping(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(Error::NotPermutation);
            }
            seen[v] = true;
        }
        Ok(Permutation { map })
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0usize; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { map: inv }
    }
}

/// Dense row-major matrix over `Z_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols || rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch);
        }
        Ok(ScalarMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch);
        }
        Ok(ScalarMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }
}

impl Index<(usize, usize)> for ScalarMatrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ScalarMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }
}

/// Matrix of the permutation: row `i` carries its 1 in column `pi(i)`, so
/// `M x` reads entries of `x` through `pi`.
pub fn perm_to_matrix(perm: &Permutation) -> ScalarMatrix {
    let n = perm.n();
    let mut m = ScalarMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, perm.apply(i))] = Scalar::one();
    }
    m
}

/// Inverse of [`perm_to_matrix`]; rejects anything that is not a permutation
/// matrix.
pub fn matrix_to_perm(m: &ScalarMatrix) -> Result<Permutation> {
    if !is_permutation_matrix(m) {
        return Err(Error::NotPermutation);
    }
    let n = m.rows();
    let mut map = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if m[(i, j)] == Scalar::one() {
                map[i] = j;
            }
        }
    }
    Permutation::from_mapping(map)
}

/// Exactly one 1 per row and per column, zeros elsewhere.
pub fn is_permutation_matrix(m: &ScalarMatrix) -> bool {
    if m.rows() != m.cols() {
        return false;
    }
    let n = m.rows();
    let one = Scalar::one();
    let mut col_ones = vec![0usize; n];
    for i in 0..n {
        let mut row_ones = 0usize;
        for j in 0..n {
            let e = &m[(i, j)];
            if *e == one {
                row_ones += 1;
                col_ones[j] += 1;
            } else if !e.is_zero() {
                return false;
            }
        }
        if row_ones != 1 {
            return false;
        }
    }
    col_ones.iter().all(|&c| c == 1)
}

pub fn inner(params: &GroupParams, a: &[Scalar], b: &[Scalar]) -> Result<Scalar> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let mut acc = Scalar::zero();
    let one = Scalar::one();
    for (x, y) in a.iter().zip(b) {
        // permutation matrices are mostly zeros and ones; skip the
        // multiplications they don't need
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let term = if *x == one {
            y.clone()
        } else if *y == one {
            x.clone()
        } else {
            params.scalar_mul(x, y)
        };
        acc = params.scalar_add(&acc, &term);
    }
    Ok(acc)
}

pub fn mat_vec_mul(params: &GroupParams, m: &ScalarMatrix, x: &[Scalar]) -> Result<Vec<Scalar>> {
    if m.cols() != x.len() {
        return Err(Error::DimensionMismatch);
    }
    (0..m.rows()).map(|i| inner(params, m.row(i), x)).collect()
}

/// Row vector times matrix: `(x M)_j = <x, column_j(M)>`.
pub fn vec_mat_mul(params: &GroupParams, x: &[Scalar], m: &ScalarMatrix) -> Result<Vec<Scalar>> {
    if m.rows() != x.len() {
        return Err(Error::DimensionMismatch);
    }
    (0..m.cols())
        .map(|j| inner(params, x, &m.column(j)))
        .collect()
}

pub fn mat_mul(params: &GroupParams, a: &ScalarMatrix, b: &ScalarMatrix) -> Result<ScalarMatrix> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch);
    }
    let mut out = ScalarMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            out[(i, j)] = inner(params, a.row(i), &b.column(j))?;
        }
    }
    Ok(out)
}

/// Inverse over `Z_q` by Gauss-Jordan elimination with pivot search.
pub fn mat_inverse(params: &GroupParams, m: &ScalarMatrix) -> Result<ScalarMatrix> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch);
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = ScalarMatrix::identity(n);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[(r, col)].is_zero())
            .ok_or(Error::Singular)?;
        if pivot != col {
            for j in 0..n {
                let tmp = a[(pivot, j)].clone();
                a[(pivot, j)] = a[(col, j)].clone();
                a[(col, j)] = tmp;
                let tmp = inv[(pivot, j)].clone();
                inv[(pivot, j)] = inv[(col, j)].clone();
                inv[(col, j)] = tmp;
            }
        }
        let scale = params.scalar_inv(&a[(col, col)])?;
        for j in 0..n {
            a[(col, j)] = params.scalar_mul(&a[(col, j)], &scale);
            inv[(col, j)] = params.scalar_mul(&inv[(col, j)], &scale);
        }
        for r in 0..n {
            if r == col || a[(r, col)].is_zero() {
                continue;
            }
            let factor = a[(r, col)].clone();
            for j in 0..n {
                let sub = params.scalar_mul(&factor, &a[(col, j)]);
                a[(r, j)] = params.scalar_sub(&a[(r, j)], &sub);
                let sub = params.scalar_mul(&factor, &inv[(col, j)]);
                inv[(r, j)] = params.scalar_sub(&inv[(r, j)], &sub);
            }
        }
    }
    Ok(inv)
}

/// Product-polynomial test value `prod_i <col_i(M), x> - prod_i x_i`. Zero for
/// every `x` iff `M` (with row sums 1) is a permutation matrix, and nonzero
/// with high probability at random `x` otherwise.
pub fn perm_product_check(params: &GroupParams, m: &ScalarMatrix, x: &[Scalar]) -> Result<Scalar> {
    if m.rows() != m.cols() || m.rows() != x.len() {
        return Err(Error::DimensionMismatch);
    }
    let n = x.len();
    let mut lhs = Scalar::one();
    for i in 0..n {
        lhs = params.scalar_mul(&lhs, &inner(params, &m.column(i), x)?);
    }
    let rhs = params.scalar_product(x.iter());
    Ok(params.scalar_sub(&lhs, &rhs))
}
