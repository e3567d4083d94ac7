//! Dense exact matrices and permutation similarity.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::MatrixError;
use crate::scalar::{Field, GaussianRational};

/// Row-major dense matrix. Values are never mutated after construction.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

pub type ExactMatrix = Matrix<GaussianRational>;

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Shape(format!("{rows}x{cols} has no entries")));
        }
        if data.len() != rows * cols {
            return Err(MatrixError::Shape(format!(
                "{rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Shape("rows have different lengths".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| F::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { F::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            let row = self.row(i);
            for j in 0..rhs.cols {
                let mut acc = F::zero();
                for (k, a) in row.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        acc = acc.add_ref(&a.mul_ref(b));
                    }
                }
                data.push(acc);
            }
        }
        Ok(Matrix { rows: self.rows, cols: rhs.cols, data })
    }

    fn same_shape(&self, rhs: &Self, op: &'static str) -> Result<(), MatrixError> {
        if self.shape() != rhs.shape() {
            return Err(MatrixError::DimensionMismatch { op, left: self.shape(), right: rhs.shape() });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.same_shape(rhs, "add")?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add_ref(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, MatrixError> {
        self.same_shape(rhs, "sub")?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub_ref(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &F) -> Self {
        let data = self.data.iter().map(|a| a.mul_ref(c)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(F::neg_ref).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    /// First `(row, col)` where the two matrices differ, or `None` when equal.
    /// A shape mismatch reports `(0, 0)`.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.cols, k % self.cols))
    }

    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        assert!(row0 + rows <= self.rows && col0 + cols <= self.cols, "submatrix out of range");
        Matrix::from_fn(rows, cols, |i, j| self.get(row0 + i, col0 + j).clone())
    }

    /// Gaussian elimination over the exact field with the first nonzero entry
    /// as pivot; each row swap flips the sign.
    #[allow(clippy::needless_range_loop)]
    pub fn det(&self) -> Result<F, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { op: "det", rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut m = self.to_rows();
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Ok(F::zero());
            };
            if p != col {
                m.swap(p, col);
                det = det.neg_ref();
            }
            let pivot = m[col][col].clone();
            det = det.mul_ref(&pivot);
            let pivot_inv = pivot.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].mul_ref(&pivot_inv);
                for c in col..n {
                    if m[col][c].is_zero() {
                        continue;
                    }
                    let t = factor.mul_ref(&m[col][c]);
                    m[r][c] = m[r][c].sub_ref(&t);
                }
            }
        }
        Ok(det)
    }

    /// Gauss–Jordan inverse over the exact field.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare { op: "inverse", rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut b = Matrix::<F>::identity(n).to_rows();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(MatrixError::Singular)?;
            a.swap(p, col);
            b.swap(p, col);
            let pivot_inv = a[col][col].inv().expect("pivot is nonzero");
            for c in 0..n {
                if !a[col][c].is_zero() {
                    a[col][c] = a[col][c].mul_ref(&pivot_inv);
                }
                if !b[col][c].is_zero() {
                    b[col][c] = b[col][c].mul_ref(&pivot_inv);
                }
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    if !a[col][c].is_zero() {
                        let ta = factor.mul_ref(&a[col][c]);
                        a[r][c] = a[r][c].sub_ref(&ta);
                    }
                    if !b[col][c].is_zero() {
                        let tb = factor.mul_ref(&b[col][c]);
                        b[r][c] = b[r][c].sub_ref(&tb);
                    }
                }
            }
        }
        Ok(Matrix { rows: n, cols: n, data: b.into_iter().flatten().collect() })
    }

    /// Returns a copy with `block` written at `(row0, col0)`.
    pub fn with_block(&self, row0: usize, col0: usize, block: &Self) -> Result<Self, MatrixError> {
        if row0 + block.rows > self.rows || col0 + block.cols > self.cols {
            return Err(MatrixError::Shape(format!(
                "{}x{} block at ({row0},{col0}) does not fit in {}x{}",
                block.rows, block.cols, self.rows, self.cols
            )));
        }
        let mut data = self.data.clone();
        for i in 0..block.rows {
            for j in 0..block.cols {
                data[(row0 + i) * self.cols + col0 + j] = block.get(i, j).clone();
            }
        }
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

/// Block-diagonal assembly of square blocks, in order.
pub fn direct_sum<F: Field>(blocks: &[Matrix<F>]) -> Result<Matrix<F>, MatrixError> {
    if blocks.is_empty() {
        return Err(MatrixError::Shape("direct sum of no blocks".into()));
    }
    if let Some(b) = blocks.iter().find(|b| !b.is_square()) {
        return Err(MatrixError::NotSquare { op: "direct_sum", rows: b.rows, cols: b.cols });
    }
    let n: usize = blocks.iter().map(|b| b.rows).sum();
    let mut data = vec![F::zero(); n * n];
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows {
            for j in 0..b.cols {
                data[(off + i) * n + off + j] = b.get(i, j).clone();
            }
        }
        off += b.rows;
    }
    Ok(Matrix { rows: n, cols: n, data })
}

/// A bijection of `{0, …, n-1}`; serialized 1-based.
///
/// As a matrix `P` it sends basis vector `e_j` to `e_{images[j]}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PermutationMap {
    images: Vec<usize>,
}

impl PermutationMap {
    pub fn new(images: Vec<usize>) -> Result<Self, MatrixError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &k in &images {
            if k >= n || seen[k] {
                return Err(MatrixError::Permutation(format!("{images:?} is not a bijection")));
            }
            seen[k] = true;
        }
        Ok(PermutationMap { images })
    }

    /// From 1-based images, as in the JSON form.
    pub fn from_one_based(images: &[usize]) -> Result<Self, MatrixError> {
        if images.contains(&0) {
            return Err(MatrixError::Permutation("images are 1-based".into()));
        }
        PermutationMap::new(images.iter().map(|k| k - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        PermutationMap { images: (0..n).collect() }
    }

    /// The transposition of `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        PermutationMap { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|k| k + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &k) in self.images.iter().enumerate() {
            inv[k] = i;
        }
        PermutationMap { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        PermutationMap { images: other.images.iter().map(|&k| self.images[k]).collect() }
    }

    /// +1 or -1, from the cycle decomposition.
    pub fn sign(&self) -> i32 {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.images[k];
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn to_matrix<F: Field>(&self) -> Matrix<F> {
        let n = self.images.len();
        Matrix::from_fn(n, n, |i, j| if self.images[j] == i { F::one() } else { F::zero() })
    }
}

impl Serialize for PermutationMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.one_based().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PermutationMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        PermutationMap::from_one_based(&images).map_err(serde::de::Error::custom)
    }
}

/// `P a P⁻¹` for the permutation matrix `P` of `p`, computed by reindexing:
/// entry `(i, j)` of `a` lands at `(p(i), p(j))`.
pub fn permute_similarity<F: Field>(p: &PermutationMap, a: &Matrix<F>) -> Result<Matrix<F>, MatrixError> {
    if !a.is_square() || a.rows() != p.len() {
        return Err(MatrixError::DimensionMismatch {
            op: "permute_similarity",
            left: (p.len(), p.len()),
            right: a.shape(),
        });
    }
    let inv = p.inverse();
    Ok(Matrix::from_fn(a.rows(), a.cols(), |i, j| a.get(inv.apply(i), inv.apply(j)).clone()))
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl<F: Field> Serialize for Matrix<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, F> Deserialize<'de> for Matrix<F>
where
    F: Field + FromStr,
    F::Err: fmt::Display,
{
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        if raw.entries.len() != raw.rows || raw.entries.iter().any(|r| r.len() != raw.cols) {
            return Err(D::Error::custom(format!(
                "entries do not match the declared {}x{} shape",
                raw.rows, raw.cols
            )));
        }
        let mut data = Vec::with_capacity(raw.rows * raw.cols);
        for (i, row) in raw.entries.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                let v = s
                    .parse::<F>()
                    .map_err(|e| D::Error::custom(format!("entry ({}, {}) {s:?}: {e}", i + 1, j + 1)))?;
                data.push(v);
            }
        }
        Matrix::new(raw.rows, raw.cols, data).map_err(D::Error::custom)
    }
}

/// Aligned text rendering, one row per line.
impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(|s| s.chars().count()).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}
