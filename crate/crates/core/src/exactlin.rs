//! Exact rational linear algebra.
//!
//! Everything downstream (centers, series, derivation solvers, cocycle
//! checks) reduces to kernels and spans over the rationals, so this module
//! keeps arithmetic exact and stores every subspace in reduced row echelon
//! form. Two [`Subspace`] values are equal as sets exactly when their stored
//! bases are equal.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` reduced. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

/// Standard basis vector `e_i` of length `n`.
pub fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(s: &Rational, v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|x| s * x).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{found} entries cannot fill a {rows}x{cols} matrix")]
    Shape {
        rows: usize,
        cols: usize,
        found: usize,
    },
}

fn check_dim(expected: usize, found: usize) -> Result<(), LinalgError> {
    if expected == found {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch { expected, found })
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::Shape {
                rows,
                cols,
                found: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: zero_vec(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must share `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_dim(cols, r.len())?;
            entries.extend(r.iter().cloned());
        }
        Self::new(rows.len(), cols, entries)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        Ok(Self::from_rows(rows, cols)?.transpose())
    }

    /// Integer matrix literal, mostly for tests. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_rows(cols, &rows).expect("ragged integer matrix literal")
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

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.entries)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        check_dim(self.cols, other.rows)?;
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

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        check_dim(self.cols, v.len())?;
        Ok(self.row_vectors().map(|r| dot(r, v)).collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Matrix,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Matrix, LinalgError> {
        check_dim(self.rows, other.rows)?;
        check_dim(self.cols, other.cols)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: scale_vec(s, &self.entries),
        }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.checked_mul(other)?.sub(&other.checked_mul(self)?)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        check_dim(self.cols, other.cols)?;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix::new(self.rows + other.rows, self.cols, entries)
    }

    /// Reduced row echelon form and rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let (m, pivots) = self.rref_with_pivots();
        (m, pivots.len())
    }

    /// Reduced row echelon form together with the pivot column of each
    /// nonzero row.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
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
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &m[(r, j)];
                    m[(i, j)] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Canonical basis of `{v : self * v = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref_with_pivots();
        let mut vectors = Vec::new();
        let mut next_pivot = 0;
        for free in 0..self.cols {
            if next_pivot < pivots.len() && pivots[next_pivot] == free {
                next_pivot += 1;
                continue;
            }
            let mut v = unit_vec(self.cols, free);
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, free)].clone();
            }
            vectors.push(v);
        }
        Subspace::from_vectors_unchecked(self.cols, vectors)
    }

    /// One exact solution of `self * x = rhs`, or `None` if inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
        check_dim(self.rows, rhs.len())?;
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = rhs[i].clone();
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vec(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, `None` if singular or not square.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    /// Panics on incompatible shapes; use [`Matrix::checked_mul`] otherwise.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("incompatible matrix shapes")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of `Q^n`, stored as the nonzero rows of its reduced row
/// echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    /// Span of a family of vectors, all of length `ambient_dim`.
    pub fn span<I>(ambient_dim: usize, vectors: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        let vectors: Vec<Vec<Rational>> = vectors.into_iter().collect();
        for v in &vectors {
            check_dim(ambient_dim, v.len())?;
        }
        Ok(Self::from_vectors_unchecked(ambient_dim, vectors))
    }

    pub(crate) fn from_vectors_unchecked(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Self {
        let entries: Vec<Rational> = vectors.into_iter().flatten().collect();
        let rows = entries.len() / ambient_dim.max(1);
        let m = Matrix {
            rows: if ambient_dim == 0 { 0 } else { rows },
            cols: ambient_dim,
            entries: if ambient_dim == 0 { Vec::new() } else { entries },
        };
        Self::row_space(&m)
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix) -> Self {
        let (r, rank) = m.rref();
        let entries = r.entries[..rank * m.cols].to_vec();
        Self {
            ambient_dim: m.cols,
            basis: Matrix {
                rows: rank,
                cols: m.cols,
                entries,
            },
        }
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[Rational]> {
        self.basis.row_vectors()
    }

    fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.vectors()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("zero basis row"))
    }

    /// Coordinates of `v` in the canonical basis, `None` if `v` lies outside.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
        check_dim(self.ambient_dim, v.len())?;
        let coords: Vec<Rational> = self.pivots().map(|p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coords.iter().zip(self.vectors()) {
            if c.is_zero() {
                continue;
            }
            for (x, b) in residual.iter_mut().zip(row) {
                *x -= c * b;
            }
        }
        Ok(is_zero_vec(&residual).then_some(coords))
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, LinalgError> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        check_dim(other.ambient_dim, self.ambient_dim)?;
        for v in self.vectors() {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        check_dim(self.ambient_dim, other.ambient_dim)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)?))
    }

    /// Orthogonal complement for the standard pairing; over `Q` the double
    /// annihilator is the subspace itself.
    pub fn annihilator(&self) -> Subspace {
        self.basis.kernel_basis()
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        check_dim(self.ambient_dim, other.ambient_dim)?;
        let joint = self.annihilator().sum(&other.annihilator())?;
        Ok(joint.annihilator())
    }

    /// Standard basis vectors completing this subspace to the whole space
    /// (the non-pivot coordinates), in increasing order.
    pub fn complement_indices(&self) -> Vec<usize> {
        let pivots: Vec<usize> = self.pivots().collect();
        (0..self.ambient_dim)
            .filter(|j| !pivots.contains(j))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(2);
        assert_eq!(id.rref(), (id.clone(), 2));

        let dep = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(dep.rref(), (Matrix::from_i64(&[&[1, 2], &[0, 0]]), 1));

        let perm = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(perm.rref(), (Matrix::identity(2), 2));
    }

    #[test]
    fn rref_fractions() {
        let m = Matrix::from_i64(&[&[2, 1, 0], &[4, 3, 1]]);
        let (r, rank) = m.rref();
        assert_eq!(rank, 2);
        assert_eq!(r.row(0), &[rat(1), rat(0), ratio(-1, 2)]);
        assert_eq!(r.row(1), &[rat(0), rat(1), rat(1)]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(3).kernel_basis().dim(), 0);
        assert_eq!(Matrix::zeros(2, 3).kernel_basis(), Subspace::full(3));

        let m = Matrix::from_i64(&[&[1, 1, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k.dim(), 2);
        for row in k.vectors() {
            assert!(is_zero_vec(&m.mul_vec(row).unwrap()));
        }
        assert!(k.contains(&v(&[1, -1, 0])).unwrap());
        assert!(k.contains(&v(&[0, 0, 1])).unwrap());
    }

    #[test]
    fn solve_examples() {
        let r = v(&[3, -4]);
        assert_eq!(Matrix::identity(2).solve(&r).unwrap(), Some(r));

        let m = Matrix::from_i64(&[&[1, 1]]);
        let x = m.solve(&v(&[2])).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), v(&[2]));

        let m = Matrix::from_i64(&[&[1], &[1]]);
        assert_eq!(m.solve(&v(&[1, 2])).unwrap(), None);

        assert!(matches!(
            m.solve(&v(&[1])),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_roundtrip_and_singular() {
        let p = Matrix::from_i64(&[&[1, -1], &[0, 1]]);
        let inv = p.inverse().unwrap();
        assert_eq!(&p * &inv, Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(Matrix::zeros(2, 3).inverse().is_none());
        assert_eq!(Matrix::identity(0).inverse(), Some(Matrix::identity(0)));
    }

    #[test]
    fn subspace_examples() {
        let x_axis = Subspace::span(2, [v(&[1, 0])]).unwrap();
        let y_axis = Subspace::span(2, [v(&[0, 3])]).unwrap();
        assert_eq!(x_axis.sum(&x_axis).unwrap(), x_axis);
        assert_eq!(x_axis.intersection(&y_axis).unwrap(), Subspace::zero(2));
        assert!(!x_axis.contains(&v(&[0, 1])).unwrap());
        assert_eq!(x_axis.sum(&y_axis).unwrap(), Subspace::full(2));
    }

    #[test]
    fn subspace_dimension_mismatch_is_reported() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(a.sum(&b).is_err());
        assert!(a.intersection(&b).is_err());
        assert!(a.contains(&v(&[1, 2, 3])).is_err());
        assert!(Subspace::span(2, [v(&[1])]).is_err());
    }

    #[test]
    fn complement_indices_complete_the_basis() {
        let s = Subspace::span(4, [v(&[0, 1, 1, 0]), v(&[0, 0, 0, 2])]).unwrap();
        assert_eq!(s.complement_indices(), vec![0, 2]);
    }

    fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..=3, r * c)
                .prop_map(move |xs| Matrix::new(r, c, xs.into_iter().map(rat).collect()).unwrap())
        })
    }

    fn small_subspace(n: usize) -> impl Strategy<Value = Subspace> {
        (0..=n).prop_flat_map(move |k| {
            prop::collection::vec(prop::collection::vec(-2i64..=2, n), k).prop_map(move |rows| {
                Subspace::span(n, rows.into_iter().map(|r| v(&r))).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in small_matrix(5, 6)) {
            let (r, rank) = m.rref();
            prop_assert_eq!(r.rref(), (r.clone(), rank));
        }

        #[test]
        fn kernel_vectors_are_annihilated(m in small_matrix(5, 6)) {
            let k = m.kernel_basis();
            prop_assert_eq!(k.dim(), m.cols() - m.rank());
            for row in k.vectors() {
                prop_assert!(is_zero_vec(&m.mul_vec(row).unwrap()));
            }
        }

        #[test]
        fn grassmann_identity(
            (a, b) in (1usize..=8).prop_flat_map(|n| (small_subspace(n), small_subspace(n)))
        ) {
            let s = a.sum(&b).unwrap();
            let i = a.intersection(&b).unwrap();
            prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
            prop_assert!(i.is_subspace_of(&a).unwrap() && i.is_subspace_of(&b).unwrap());
        }

        #[test]
        fn span_is_canonical(a in small_subspace(5), mix in prop::collection::vec(-2i64..=2, 25)) {
            // Random combinations of the basis (plus the basis itself) span the same space.
            let basis: Vec<Vec<Rational>> = a.vectors().map(|r| r.to_vec()).collect();
            let mut gens = Vec::new();
            for (k, _) in basis.iter().enumerate() {
                let mut g = zero_vec(5);
                for (j, b) in basis.iter().enumerate() {
                    let c = rat(mix[(5 * k + j) % 25]) + if j == k { rat(11) } else { rat(0) };
                    g = add_vec(&g, &scale_vec(&c, b));
                }
                gens.push(g);
            }
            gens.reverse();
            prop_assert_eq!(Subspace::span(5, gens).unwrap(), a);
        }
    }

    #[test]
    fn grassmann_identity_many_trials() {
        let mut runner = proptest::test_runner::TestRunner::new(ProptestConfig::with_cases(256));
        runner
            .run(
                &(1usize..=8).prop_flat_map(|n| (small_subspace(n), small_subspace(n))),
                |(a, b)| {
                    let s = a.sum(&b).unwrap();
                    let i = a.intersection(&b).unwrap();
                    prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
                    Ok(())
                },
            )
            .unwrap();
    }
}
