//! Exact linear algebra over the rationals.
//!
//! Every subspace in this crate is stored as the canonical reduced row
//! echelon form of a spanning set, so two subspaces are equal exactly when
//! their matrices are equal.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational scalar in canonical reduced form.
pub type Scalar = BigRational;

/// Dense coordinate vector.
pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
}

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero_vector(len: usize) -> Vector {
    vec![Scalar::zero(); len]
}

pub fn unit_vector(len: usize, index: usize) -> Vector {
    let mut v = zero_vector(len);
    v[index] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += factor * v`
pub fn axpy(acc: &mut [Scalar], factor: &Scalar, v: &[Scalar]) {
    if factor.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += factor * b;
        }
    }
}

/// Row-major dense matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Stacks row vectors; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(rows: &[Vector], cols: usize) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Result<Self, LinalgError> {
        Ok(Self::from_rows(columns, rows)?.transpose())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vector> = rows
            .iter()
            .map(|r| r.iter().map(|&x| scalar(x)).collect())
            .collect();
        Self::from_rows(&rows, cols).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
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
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = zero_vector(self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.zip_with(other, |a, b| a + b)
    }

    fn zip_with(
        &self,
        other: &Matrix,
        f: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<Matrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::AmbientMismatch {
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Canonical reduced row echelon form; zero rows are kept at the bottom.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                let row = &mut m.data[i * m.cols..(i + 1) * m.cols];
                axpy(row, &-f, &pivot_row);
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column of the rref.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let rref = self.rref();
        kernel_from_rref(&rref.matrix, &rref.pivots, self.cols)
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let rref = aug.rref();
        if rref.pivots.len() < n || rref.pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = rref.matrix[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Keeps only the first `n` rows.
    fn truncate_rows(mut self, n: usize) -> Matrix {
        self.data.truncate(n * self.cols);
        self.rows = n;
        self
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

fn kernel_from_rref(rref: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = zero_vector(cols);
            v[free] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rref[(r, free)].clone();
            }
            v
        })
        .collect()
}

/// Column index of the leading entry of each row of an rref matrix.
fn leading_columns(space: &Matrix) -> Vec<usize> {
    (0..space.rows())
        .map(|i| {
            space
                .row(i)
                .iter()
                .position(|x| !x.is_zero())
                .expect("rref basis rows are nonzero")
        })
        .collect()
}

/// Canonical rref basis of the span of `vectors`, zero rows dropped.
pub fn row_space(vectors: &[Vector], cols: usize) -> Result<Matrix, LinalgError> {
    let m = Matrix::from_rows(vectors, cols)?;
    let rref = m.rref();
    Ok(rref.matrix.truncate_rows(rref.rank))
}

/// Membership test against a space given in canonical rref (no zero rows).
pub fn contains(space: &Matrix, v: &[Scalar]) -> Result<bool, LinalgError> {
    Ok(is_zero_vector(&residual(space, v)?))
}

/// `v` minus its reduction against the pivots of `space`.
///
/// The map is linear in `v` and vanishes exactly on the row space.
pub fn residual(space: &Matrix, v: &[Scalar]) -> Result<Vector, LinalgError> {
    if v.len() != space.cols() {
        return Err(LinalgError::LengthMismatch {
            expected: space.cols(),
            found: v.len(),
        });
    }
    let mut r = v.to_vec();
    for (i, p) in leading_columns(space).into_iter().enumerate() {
        let f = r[p].clone();
        if !f.is_zero() {
            axpy(&mut r, &-f, space.row(i));
        }
    }
    Ok(r)
}

/// Matrix of the linear map [`residual`].
pub fn residual_matrix(space: &Matrix) -> Matrix {
    let n = space.cols();
    let columns: Vec<Vector> = (0..n)
        .map(|j| residual(space, &unit_vector(n, j)).expect("unit vector length"))
        .collect();
    Matrix::from_columns(&columns, n).expect("residual column length")
}

pub fn sum_spaces(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    if a.cols() != b.cols() {
        return Err(LinalgError::AmbientMismatch {
            left: a.cols(),
            right: b.cols(),
        });
    }
    let mut rows = a.row_vectors();
    rows.extend(b.row_vectors());
    row_space(&rows, a.cols())
}

/// Intersection via the kernel of the stacked system `x·A − y·B = 0`.
pub fn intersect_spaces(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    if a.cols() != b.cols() {
        return Err(LinalgError::AmbientMismatch {
            left: a.cols(),
            right: b.cols(),
        });
    }
    let n = a.cols();
    let mut columns = a.row_vectors();
    columns.extend(
        b.row_vectors()
            .into_iter()
            .map(|r| r.into_iter().map(|x| -x).collect()),
    );
    let system = Matrix::from_columns(&columns, n)?;
    let vectors: Vec<Vector> = system
        .kernel_basis()
        .into_iter()
        .map(|coeffs| {
            let mut v = zero_vector(n);
            for (i, c) in coeffs.iter().take(a.rows()).enumerate() {
                axpy(&mut v, c, a.row(i));
            }
            v
        })
        .collect();
    row_space(&vectors, n)
}

/// Incremental sparse Gauss-Jordan reducer.
///
/// Rows are kept fully reduced at all times, so the final state is the
/// canonical rref of everything pushed. Used for constraint systems that have
/// many more (mostly redundant, mostly sparse) equations than unknowns.
#[derive(Debug, Clone)]
pub struct RowReducer {
    cols: usize,
    rows: Vec<BTreeMap<usize, Scalar>>,
    pivot_row: BTreeMap<usize, usize>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds one equation given as `(column, coefficient)` terms; repeated
    /// columns are summed. Returns `true` if the rank grew.
    pub fn push<I>(&mut self, terms: I) -> bool
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, x) in terms {
            assert!(c < self.cols, "column {c} out of range");
            if x.is_zero() {
                continue;
            }
            let e = row.entry(c).or_insert_with(Scalar::zero);
            *e += x;
            if e.is_zero() {
                row.remove(&c);
            }
        }
        let hits: Vec<(usize, usize)> = row
            .keys()
            .filter_map(|c| self.pivot_row.get(c).map(|&r| (*c, r)))
            .collect();
        for (c, r) in hits {
            let f = row.remove(&c).expect("pivot column present");
            for (col, x) in &self.rows[r] {
                if *col == c {
                    continue;
                }
                let e = row.entry(*col).or_insert_with(Scalar::zero);
                *e -= &f * x;
                if e.is_zero() {
                    row.remove(col);
                }
            }
        }
        let Some((&lead, lead_val)) = row.iter().next() else {
            return false;
        };
        let inv = lead_val.recip();
        for x in row.values_mut() {
            *x *= &inv;
        }
        for other in &mut self.rows {
            let Some(f) = other.remove(&lead) else {
                continue;
            };
            for (col, x) in &row {
                if *col == lead {
                    continue;
                }
                let e = other.entry(*col).or_insert_with(Scalar::zero);
                *e -= &f * x;
                if e.is_zero() {
                    other.remove(col);
                }
            }
        }
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Dense canonical rref (rank rows, sorted by pivot).
    pub fn to_rref(&self) -> Rref {
        let mut m = Matrix::zeros(self.rows.len(), self.cols);
        let pivots: Vec<usize> = self.pivot_row.keys().copied().collect();
        for (i, (_, &r)) in self.pivot_row.iter().enumerate() {
            for (c, x) in &self.rows[r] {
                m[(i, *c)] = x.clone();
            }
        }
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    /// Canonical kernel basis, identical to [`Matrix::kernel_basis`] of the
    /// stacked equations.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        (0..self.cols)
            .filter(|c| !self.pivot_row.contains_key(c))
            .map(|free| {
                let mut v = zero_vector(self.cols);
                v[free] = Scalar::one();
                for (&p, &r) in &self.pivot_row {
                    if let Some(x) = self.rows[r].get(&free) {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| scalar(x)).collect()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);

        let z = Matrix::zeros(2, 4);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_collapses_dependent_rows() {
        let m = Matrix::from_i64(&[&[2, 4], &[1, 2]]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(4).kernel_basis().is_empty());
        let k = Matrix::zeros(2, 3).kernel_basis();
        assert_eq!(k, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let k = Matrix::from_i64(&[&[1, 1, 0]]).kernel_basis();
        assert_eq!(k, vec![v(&[-1, 1, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn row_space_examples() {
        assert_eq!(
            row_space(&[v(&[1, 0]), v(&[2, 0])], 2).unwrap(),
            Matrix::from_i64(&[&[1, 0]])
        );
        let empty = row_space(&[], 2).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 2));
        assert_eq!(
            row_space(&[v(&[0, 1]), v(&[1, 0])], 2).unwrap(),
            Matrix::identity(2)
        );
        assert_eq!(
            row_space(&[v(&[1, 0]), v(&[1])], 2),
            Err(LinalgError::LengthMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn contains_examples() {
        let s = row_space(&[v(&[1, 0])], 2).unwrap();
        assert!(contains(&s, &v(&[3, 0])).unwrap());
        assert!(!contains(&s, &v(&[0, 1])).unwrap());
        let s = row_space(&[v(&[1, 1])], 2).unwrap();
        assert!(contains(&s, &v(&[2, 2])).unwrap());
        assert!(contains(&s, &v(&[2])).is_err());
    }

    #[test]
    fn sum_and_intersection_examples() {
        let e1 = row_space(&[v(&[1, 0, 0])], 3).unwrap();
        let e2 = row_space(&[v(&[0, 1, 0])], 3).unwrap();
        assert_eq!(
            sum_spaces(&e1, &e2).unwrap(),
            row_space(&[v(&[1, 0, 0]), v(&[0, 1, 0])], 3).unwrap()
        );
        assert_eq!(intersect_spaces(&e1, &e2).unwrap().rows(), 0);

        let a = row_space(&[v(&[1, 1, 0]), v(&[0, 0, 1])], 3).unwrap();
        let b = row_space(&[v(&[1, 1, 0])], 3).unwrap();
        assert_eq!(intersect_spaces(&a, &b).unwrap(), b);

        let c = row_space(&[v(&[1, 1])], 2).unwrap();
        assert!(matches!(
            sum_spaces(&a, &c),
            Err(LinalgError::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
        assert_eq!(
            Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse(),
            Err(LinalgError::Singular)
        );
    }

    #[test]
    fn reducer_matches_dense_rref() {
        let m = Matrix::from_i64(&[&[0, 2, 4, 1], &[1, 1, 0, 0], &[1, 3, 4, 1], &[0, 0, 0, 5]]);
        let mut red = RowReducer::new(4);
        for i in 0..m.rows() {
            red.push(m.row(i).iter().cloned().enumerate());
        }
        let dense = m.rref();
        let sparse = red.to_rref();
        assert_eq!(sparse.pivots, dense.pivots);
        assert_eq!(
            sparse.matrix,
            dense.matrix.clone().truncate_rows(dense.rank)
        );
        assert_eq!(red.kernel_basis(), m.kernel_basis());
    }

    #[test]
    fn reducer_sums_repeated_columns() {
        let mut red = RowReducer::new(2);
        assert!(!red.push([(0, scalar(1)), (0, scalar(-1))]));
        assert!(red.push([(1, scalar(2)), (1, scalar(1))]));
        assert_eq!(red.kernel_basis(), vec![v(&[1, 0])]);
    }
}
