//! Leibniz algebras given by structure constants and their basis-level
//! invariants.
//!
//! Every identity check runs over basis triples only. The bracket is
//! bilinear, so both sides of the left (or right) Leibniz identity are
//! trilinear and agree everywhere once they agree on basis vectors.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactlin::{
    add_vec, is_zero_vec, scale_vec, unit_vec, zero_vec, LinalgError, Matrix, Rational,
    Subspace,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{found} basis labels given for a {dim}-dimensional algebra")]
    LabelCount { dim: usize, found: usize },
    #[error("change of basis matrix is singular or not {0}x{0}")]
    SingularTransport(usize),
    #[error("subspace is not a bilateral ideal")]
    NotAnIdeal,
    #[error("vectors do not span a {0}-dimensional subalgebra")]
    NotASubalgebra(usize),
    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn check_len(expected: usize, found: usize) -> Result<(), AlgebraError> {
    if expected == found {
        Ok(())
    } else {
        Err(AlgebraError::DimensionMismatch { expected, found })
    }
}

/// Structure constants `c[i][j][k]`, the coefficient of `e_k` in `[e_i, e_j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureTensor {
    dim: usize,
    coeffs: Vec<Rational>,
}

impl StructureTensor {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            coeffs: zero_vec(dim * dim * dim),
        }
    }

    /// Flat coefficients in `(i, j, k)` row-major order.
    pub fn new(dim: usize, coeffs: Vec<Rational>) -> Result<Self, AlgebraError> {
        check_len(dim * dim * dim, coeffs.len())?;
        Ok(Self { dim, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        (i * self.dim + j) * self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.coeffs[self.offset(i, j) + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        let at = self.offset(i, j) + k;
        self.coeffs[at] = value;
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        let at = self.offset(i, j);
        &self.coeffs[at..at + self.dim]
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, value: &[Rational]) {
        let at = self.offset(i, j);
        self.coeffs[at..at + self.dim].clone_from_slice(value);
    }

    /// Nonzero basis brackets `(i, j)` in lexicographic order.
    pub fn nonzero_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.dim;
        (0..n)
            .flat_map(move |i| (0..n).map(move |j| (i, j)))
            .filter(move |&(i, j)| !is_zero_vec(self.basis_bracket(i, j)))
    }
}

/// Which side(s) of the bracket an ideal absorbs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `[L, I] ⊆ I`.
    Left,
    /// `[I, L] ⊆ I`.
    Right,
    Bilateral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealWitness {
    pub subspace: Subspace,
    pub side: Side,
}

/// The two non-nilpotent two-dimensional Leibniz algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwoDimKind {
    /// `[e2, e1] = -[e1, e2] = e1` (Lie).
    S1,
    /// `[e2, e1] = [e2, e2] = e1`.
    S2,
}

/// Result of locating the two-dimensional non-nilpotent ideal `S = <x, z>`
/// inside an algebra with one-dimensional derived subalgebra `<z>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonNilpotentIdeal {
    pub witness: IdealWitness,
    pub kind: TwoDimKind,
    /// Spanning vector of `[L, L]`.
    pub z: Vec<Rational>,
    /// A vector with `[x, z] = gamma * z`, `gamma != 0`.
    pub x: Vec<Rational>,
    pub gamma: Rational,
    /// 2x2 change of basis, in coordinates relative to the ordered pair
    /// `(z, x)`, whose columns are the standard generators `e1, e2` of
    /// [`TwoDimKind`].
    pub iso: Matrix,
}

impl NonNilpotentIdeal {
    /// The standard generators `e1, e2` of the ideal as columns in the
    /// coordinates of the ambient algebra.
    pub fn standard_basis(&self) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..2)
            .map(|c| {
                add_vec(
                    &scale_vec(&self.iso[(0, c)], &self.z),
                    &scale_vec(&self.iso[(1, c)], &self.x),
                )
            })
            .collect();
        Matrix::from_columns(self.z.len(), &cols).expect("generators share a length")
    }
}

/// A finite-dimensional algebra over `Q` with labelled basis.
///
/// The left Leibniz identity is not enforced on construction so that
/// deliberately broken tensors can be inspected; use
/// [`LeibnizAlgebra::check_left_leibniz`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizAlgebra {
    tensor: StructureTensor,
    labels: Vec<String>,
}

impl LeibnizAlgebra {
    pub fn new(tensor: StructureTensor, labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.len() != tensor.dim() {
            return Err(AlgebraError::LabelCount {
                dim: tensor.dim(),
                found: labels.len(),
            });
        }
        Ok(Self { tensor, labels })
    }

    /// Labels `e1, ..., en`.
    pub fn with_default_labels(tensor: StructureTensor) -> Self {
        let labels = (1..=tensor.dim()).map(|i| format!("e{i}")).collect();
        Self { tensor, labels }
    }

    pub fn dim(&self) -> usize {
        self.tensor.dim()
    }

    pub fn tensor(&self) -> &StructureTensor {
        &self.tensor
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relabel(mut self, labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.len() != self.dim() {
            return Err(AlgebraError::LabelCount {
                dim: self.dim(),
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        self.tensor.basis_bracket(i, j)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
        check_len(self.dim(), x.len())?;
        check_len(self.dim(), y.len())?;
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for (o, c) in out.iter_mut().zip(self.tensor.basis_bracket(i, j)) {
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        out
    }

    /// `[e_i, v]`.
    fn left_basis(&self, i: usize, v: &[Rational]) -> Vec<Rational> {
        self.bracket_unchecked(&unit_vec(self.dim(), i), v)
    }

    /// `[v, e_j]`.
    fn right_basis(&self, v: &[Rational], j: usize) -> Vec<Rational> {
        self.bracket_unchecked(v, &unit_vec(self.dim(), j))
    }

    /// First basis triple `(i, j, k)` violating
    /// `[x,[y,z]] = [[x,y],z] + [y,[x,z]]`, if any.
    pub fn check_left_leibniz(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let xy = self.basis_bracket(i, j).to_vec();
                for k in 0..n {
                    let lhs = self.left_basis(i, self.basis_bracket(j, k));
                    let rhs = add_vec(
                        &self.right_basis(&xy, k),
                        &self.left_basis(j, self.basis_bracket(i, k)),
                    );
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First basis triple violating `[[x,y],z] = [[x,z],y] + [x,[y,z]]`.
    pub fn check_right_leibniz(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let xy = self.basis_bracket(i, j).to_vec();
                for k in 0..n {
                    let lhs = self.right_basis(&xy, k);
                    let rhs = add_vec(
                        &self.right_basis(self.basis_bracket(i, k), j),
                        &self.left_basis(i, self.basis_bracket(j, k)),
                    );
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_left_leibniz(&self) -> bool {
        self.check_left_leibniz().is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        self.check_left_leibniz().is_none() && self.check_right_leibniz().is_none()
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (i..n).all(|j| {
                let a = self.basis_bracket(i, j);
                let b = self.basis_bracket(j, i);
                a.iter().zip(b).all(|(x, y)| (x + y).is_zero())
            })
        })
    }

    /// Antisymmetric and left Leibniz (the left identity is then Jacobi).
    pub fn is_lie(&self) -> bool {
        self.is_antisymmetric() && self.is_left_leibniz()
    }

    pub fn is_abelian(&self) -> bool {
        self.tensor.coeffs().iter().all(Zero::is_zero)
    }

    /// Matrix of `ad_x = [x, -]`; column `c` is `[x, e_c]`.
    pub fn left_multiplication(&self, x: &[Rational]) -> Result<Matrix, AlgebraError> {
        check_len(self.dim(), x.len())?;
        let cols: Vec<Vec<Rational>> = (0..self.dim()).map(|c| self.right_basis(x, c)).collect();
        Ok(Matrix::from_columns(self.dim(), &cols)?)
    }

    /// Matrix of `Ad_x = [-, x]`; column `c` is `[e_c, x]`.
    pub fn right_multiplication(&self, x: &[Rational]) -> Result<Matrix, AlgebraError> {
        check_len(self.dim(), x.len())?;
        let cols: Vec<Vec<Rational>> = (0..self.dim()).map(|c| self.left_basis(c, x)).collect();
        Ok(Matrix::from_columns(self.dim(), &cols)?)
    }

    /// `Z_l(L) = {x : [x, L] = 0}`.
    pub fn left_center(&self) -> Subspace {
        // Row (j, k), column i: coefficient c_{ij}^k.
        let n = self.dim();
        let mut m = Matrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    m[(j * n + k, i)] = self.tensor.get(i, j, k).clone();
                }
            }
        }
        m.kernel_basis()
    }

    /// `Z_r(L) = {x : [L, x] = 0}`.
    pub fn right_center(&self) -> Subspace {
        let n = self.dim();
        let mut m = Matrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    m[(j * n + k, i)] = self.tensor.get(j, i, k).clone();
                }
            }
        }
        m.kernel_basis()
    }

    pub fn center(&self) -> Subspace {
        self.left_center()
            .intersection(&self.right_center())
            .expect("centers share the ambient space")
    }

    /// `[U, V]`, the span of brackets of basis vectors.
    pub fn product(&self, u: &Subspace, v: &Subspace) -> Result<Subspace, AlgebraError> {
        check_len(self.dim(), u.ambient_dim())?;
        check_len(self.dim(), v.ambient_dim())?;
        let brackets: Vec<Vec<Rational>> = u
            .vectors()
            .flat_map(|a| v.vectors().map(move |b| (a, b)))
            .map(|(a, b)| self.bracket_unchecked(a, b))
            .collect();
        Ok(Subspace::span(self.dim(), brackets)?)
    }

    pub fn derived_algebra(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.product(&full, &full).expect("same ambient space")
    }

    /// `L^0 = L, L^{k+1} = [L^k, L^k]`, up to (excluding) the first repeat.
    pub fn derived_series(&self) -> Vec<Subspace> {
        self.series(|_, last| self.product(last, last).expect("same ambient space"))
    }

    /// `L^(0) = L, L^(k+1) = [L, L^(k)]`, up to (excluding) the first repeat.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        self.series(|full, last| self.product(full, last).expect("same ambient space"))
    }

    fn series(&self, next: impl Fn(&Subspace, &Subspace) -> Subspace) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        let mut terms = vec![full.clone()];
        loop {
            let last = terms.last().expect("series starts at L");
            let term = next(&full, last);
            // Terms are nested, so equal dimension means equal subspaces.
            if term.dim() == last.dim() {
                return terms;
            }
            terms.push(term);
        }
    }

    /// Number of steps `k` with `L^(k) = 0`, or `None` if the lower central
    /// series stabilizes at a nonzero subspace.
    pub fn nilpotency_step(&self) -> Option<usize> {
        let series = self.lower_central_series();
        series.last().filter(|s| s.is_zero()).map(|_| series.len() - 1)
    }

    pub fn solvability_step(&self) -> Option<usize> {
        let series = self.derived_series();
        series.last().filter(|s| s.is_zero()).map(|_| series.len() - 1)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_step().is_some()
    }

    pub fn is_solvable(&self) -> bool {
        self.solvability_step().is_some()
    }

    /// `Leib(L)`: the smallest bilateral ideal containing every square
    /// `[x, x]`. Squares span the same space as `[e_i,e_i]` and
    /// `[e_i,e_j] + [e_j,e_i]` (polarization, char 0).
    pub fn leibniz_kernel(&self) -> Subspace {
        let n = self.dim();
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i..n {
                if i == j {
                    gens.push(self.basis_bracket(i, i).to_vec());
                } else {
                    gens.push(add_vec(self.basis_bracket(i, j), self.basis_bracket(j, i)));
                }
            }
        }
        let mut kernel = Subspace::from_vectors_unchecked(n, gens);
        let full = Subspace::full(n);
        // The dimension grows at most n times before stabilizing.
        for _ in 0..=n {
            let grown = kernel
                .sum(&self.product(&full, &kernel).expect("same ambient space"))
                .and_then(|s| s.sum(&self.product(&kernel, &full).expect("same ambient space")))
                .expect("same ambient space");
            if grown.dim() == kernel.dim() {
                break;
            }
            kernel = grown;
        }
        kernel
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool, AlgebraError> {
        Ok(self.product(s, s)?.is_subspace_of(s)?)
    }

    pub fn is_ideal(&self, s: &Subspace, side: Side) -> Result<bool, AlgebraError> {
        check_len(self.dim(), s.ambient_dim())?;
        let full = Subspace::full(self.dim());
        let left = || -> Result<bool, AlgebraError> {
            Ok(self.product(&full, s)?.is_subspace_of(s)?)
        };
        let right = || -> Result<bool, AlgebraError> {
            Ok(self.product(s, &full)?.is_subspace_of(s)?)
        };
        match side {
            Side::Left => left(),
            Side::Right => right(),
            Side::Bilateral => Ok(left()? && right()?),
        }
    }

    /// `L / I` on the complement spanned by the standard basis vectors that
    /// are not pivots of `I`. Returns the quotient and the projection from
    /// old coordinates to quotient coordinates.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LeibnizAlgebra, Matrix), AlgebraError> {
        if !self.is_ideal(ideal, Side::Bilateral)? {
            return Err(AlgebraError::NotAnIdeal);
        }
        let n = self.dim();
        let complement = ideal.complement_indices();
        let q = complement.len();
        // New basis: complement vectors first, then the ideal basis.
        let mut cols: Vec<Vec<Rational>> = complement.iter().map(|&c| unit_vec(n, c)).collect();
        cols.extend(ideal.vectors().map(<[Rational]>::to_vec));
        let change = Matrix::from_columns(n, &cols)?;
        let inv = change.inverse().expect("complement completes the ideal");
        let mut projection = Matrix::zeros(q, n);
        for r in 0..q {
            for c in 0..n {
                projection[(r, c)] = inv[(r, c)].clone();
            }
        }
        let mut tensor = StructureTensor::zero(q);
        for (a, &ca) in complement.iter().enumerate() {
            for (b, &cb) in complement.iter().enumerate() {
                let image = projection.mul_vec(self.basis_bracket(ca, cb))?;
                tensor.set_bracket(a, b, &image);
            }
        }
        let labels = complement.iter().map(|&c| self.labels[c].clone()).collect();
        Ok((LeibnizAlgebra::new(tensor, labels)?, projection))
    }

    /// Block sum; cross brackets vanish.
    pub fn direct_sum(&self, other: &LeibnizAlgebra) -> LeibnizAlgebra {
        let (p, q) = (self.dim(), other.dim());
        let n = p + q;
        let mut tensor = StructureTensor::zero(n);
        for (i, j) in self.tensor.nonzero_pairs() {
            for k in 0..p {
                tensor.set(i, j, k, self.tensor.get(i, j, k).clone());
            }
        }
        for (i, j) in other.tensor.nonzero_pairs() {
            for k in 0..q {
                tensor.set(p + i, p + j, p + k, other.tensor.get(i, j, k).clone());
            }
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        LeibnizAlgebra { tensor, labels }
    }

    /// Rewrites the tensor in the basis given by the columns of `p` (new
    /// basis vectors in old coordinates): `[e'_i, e'_j] = P^{-1}[P e_i, P e_j]`.
    /// Labels stay attached to positions.
    pub fn transport(&self, p: &Matrix) -> Result<LeibnizAlgebra, AlgebraError> {
        let n = self.dim();
        if p.rows() != n {
            return Err(AlgebraError::SingularTransport(n));
        }
        let inv = p.inverse().ok_or(AlgebraError::SingularTransport(n))?;
        let cols: Vec<Vec<Rational>> = (0..n).map(|c| p.column(c)).collect();
        let mut tensor = StructureTensor::zero(n);
        for i in 0..n {
            for j in 0..n {
                let image = self.bracket_unchecked(&cols[i], &cols[j]);
                if !is_zero_vec(&image) {
                    tensor.set_bracket(i, j, &inv.mul_vec(&image)?);
                }
            }
        }
        Ok(LeibnizAlgebra {
            tensor,
            labels: self.labels.clone(),
        })
    }

    /// The algebra induced on the span of the given independent vectors
    /// (columns of `basis`), in those coordinates.
    pub fn subalgebra(&self, basis: &Matrix) -> Result<LeibnizAlgebra, AlgebraError> {
        check_len(self.dim(), basis.rows())?;
        let k = basis.cols();
        if basis.rank() != k {
            return Err(AlgebraError::NotASubalgebra(k));
        }
        let cols: Vec<Vec<Rational>> = (0..k).map(|c| basis.column(c)).collect();
        let mut tensor = StructureTensor::zero(k);
        for i in 0..k {
            for j in 0..k {
                let image = self.bracket_unchecked(&cols[i], &cols[j]);
                let coords = basis
                    .solve(&image)?
                    .ok_or(AlgebraError::NotASubalgebra(k))?;
                tensor.set_bracket(i, j, &coords);
            }
        }
        Ok(LeibnizAlgebra::with_default_labels(tensor))
    }

    /// Locates a two-dimensional bilateral ideal `S = <x, z>` with
    /// `[L, L] = <z>` and `[x, z] = gamma z != 0`, and identifies `S` with
    /// `S1` or `S2`.
    ///
    /// Requires `dim [L, L] = 1` and `L` not nilpotent.
    pub fn find_nonnilpotent_ideal(&self) -> Result<NonNilpotentIdeal, AlgebraError> {
        let n = self.dim();
        let derived = self.derived_algebra();
        if derived.dim() != 1 {
            return Err(AlgebraError::HypothesesNotMet(format!(
                "dim [L,L] = {}, expected 1",
                derived.dim()
            )));
        }
        if self.is_nilpotent() {
            return Err(AlgebraError::HypothesesNotMet("L is nilpotent".into()));
        }
        let z = derived.vectors().next().expect("dim 1").to_vec();
        // [L, z] != 0 since L is not nilpotent; some basis vector witnesses it.
        let (x, xz) = (0..n)
            .map(|i| (unit_vec(n, i), self.left_basis(i, &z)))
            .find(|(_, xz)| !is_zero_vec(xz))
            .ok_or_else(|| AlgebraError::HypothesesNotMet("[L, [L,L]] = 0".into()))?;
        // z is the canonical basis vector of [L,L], so coordinates are direct.
        let coeff = |v: &[Rational]| -> Rational {
            derived
                .coordinates(v)
                .expect("same ambient space")
                .expect("brackets lie in [L,L]")
                .remove(0)
        };
        let gamma = coeff(&xz);
        let mu = coeff(&self.bracket_unchecked(&z, &x));
        let nu = coeff(&self.bracket_unchecked(&x, &x));

        let subspace = Subspace::span(n, [z.clone(), x.clone()])?;
        let witness = IdealWitness {
            subspace,
            side: Side::Bilateral,
        };
        // Coordinates relative to (z, x): [x,z] = gamma z, [z,x] = mu z,
        // [x,x] = nu z, [z,z] = 0.
        let lie = (&mu + &gamma).is_zero() && nu.is_zero();
        let (kind, iso) = if lie {
            // e1 = z, e2 = x / gamma.
            let mut iso = Matrix::zeros(2, 2);
            iso[(0, 0)] = Rational::one();
            iso[(1, 1)] = gamma.recip();
            (TwoDimKind::S1, iso)
        } else {
            // Non-Lie forces z into Leib(S) ⊆ Z_l(S), so mu = 0. Take
            // e2 = x / gamma + t z and e1 = [e2, e2] = (nu / gamma^2 + t) z.
            let t = if nu.is_zero() {
                Rational::one()
            } else {
                Rational::zero()
            };
            let c = &nu / (&gamma * &gamma) + &t;
            let mut iso = Matrix::zeros(2, 2);
            iso[(0, 0)] = c;
            iso[(0, 1)] = t;
            iso[(1, 1)] = gamma.recip();
            (TwoDimKind::S2, iso)
        };
        Ok(NonNilpotentIdeal {
            witness,
            kind,
            z,
            x,
            gamma,
            iso,
        })
    }
}

impl fmt::Display for LeibnizAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j) in self.tensor.nonzero_pairs() {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "[{}, {}] = ", self.labels[i], self.labels[j])?;
            let mut terms = 0;
            for (k, c) in self.basis_bracket(i, j).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if terms > 0 {
                    write!(f, " + ")?;
                }
                if c.is_one() {
                    write!(f, "{}", self.labels[k])?;
                } else {
                    write!(f, "({c}){}", self.labels[k])?;
                }
                terms += 1;
            }
        }
        if first {
            write!(f, "abelian")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, ratio};
    use crate::families::{abelian, heisenberg, kronecker, l_n, paper_presentation, s1, s2, s2_normalized};
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    fn span(n: usize, vs: &[&[i64]]) -> Subspace {
        Subspace::span(n, vs.iter().map(|x| v(x))).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let l2 = l_n(2).unwrap();
        assert_eq!(l2.bracket(&v(&[0, 1]), &v(&[1, 0])).unwrap(), v(&[1, 0]));
        assert_eq!(l2.bracket(&v(&[3, -2]), &v(&[0, 0])).unwrap(), v(&[0, 0]));
        assert_eq!(s2().bracket(&v(&[0, 1]), &v(&[1, 1])).unwrap(), v(&[2, 0]));
        assert!(matches!(
            l2.bracket(&v(&[1]), &v(&[1, 0])),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn leibniz_violation_is_located() {
        assert_eq!(abelian(3).check_left_leibniz(), None);
        assert_eq!(l_n(3).unwrap().check_left_leibniz(), None);
        // [e1, e1] = e2, [e2, e1] = e1 breaks the identity.
        let mut t = StructureTensor::zero(2);
        t.set(0, 0, 1, rat(1));
        t.set(1, 0, 0, rat(1));
        let bad = LeibnizAlgebra::with_default_labels(t);
        let (i, j, k) = bad.check_left_leibniz().expect("violation");
        let (x, y, z) = (unit_vec(2, i), unit_vec(2, j), unit_vec(2, k));
        let lhs = bad.bracket(&x, &bad.bracket(&y, &z).unwrap()).unwrap();
        let rhs = add_vec(
            &bad.bracket(&bad.bracket(&x, &y).unwrap(), &z).unwrap(),
            &bad.bracket(&y, &bad.bracket(&x, &z).unwrap()).unwrap(),
        );
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn two_dimensional_algebras() {
        assert!(s1().is_lie());
        assert!(s1().is_symmetric());
        assert!(s2().is_left_leibniz());
        assert!(!s2().is_lie());
        assert!(s2().check_right_leibniz().is_some());
        assert!(!s2().is_symmetric());
        assert!(abelian(2).is_abelian() && abelian(2).is_lie());
    }

    #[test]
    fn centers_of_ln() {
        let l = l_n(4).unwrap();
        assert_eq!(l.left_center(), span(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]));
        assert_eq!(l.right_center(), span(4, &[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]));
        assert_eq!(l.center(), span(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]));
        assert_eq!(l.leibniz_kernel(), span(4, &[&[1, 0, 0, 0]]));
        assert!(abelian(3).center().is_full());
        assert!(s1().leibniz_kernel().is_zero());
        assert_eq!(s2().leibniz_kernel(), span(2, &[&[1, 0]]));
    }

    #[test]
    fn series_and_steps() {
        let l = l_n(4).unwrap();
        let dims: Vec<usize> = l.derived_series().iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![4, 1, 0]);
        assert_eq!(l.solvability_step(), Some(2));
        let lcs: Vec<usize> = l.lower_central_series().iter().map(Subspace::dim).collect();
        assert_eq!(lcs, vec![4, 1]);
        assert_eq!(l.nilpotency_step(), None);
        assert!(!l.is_nilpotent() && l.is_solvable());

        let k = kronecker(2).unwrap();
        assert_eq!(k.nilpotency_step(), Some(2));
        assert!(k.is_symmetric());
        assert_eq!(abelian(3).nilpotency_step(), Some(1));
        assert_eq!(abelian(0).nilpotency_step(), Some(0));
    }

    #[test]
    fn ideal_sides() {
        let l2 = l_n(2).unwrap();
        let e1 = span(2, &[&[1, 0]]);
        let e2 = span(2, &[&[0, 1]]);
        assert!(l2.is_ideal(&e1, Side::Bilateral).unwrap());
        // [L, e2] = 0 but [e2, e1] = e1 leaves span{e2}.
        assert!(l2.is_ideal(&e2, Side::Left).unwrap());
        assert!(!l2.is_ideal(&e2, Side::Right).unwrap());
        assert!(!l2.is_ideal(&e2, Side::Bilateral).unwrap());
        assert!(l2.is_subalgebra(&e2).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let (q, proj) = s2().quotient(&span(2, &[&[1, 0]])).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(q.is_abelian());
        assert_eq!(proj, Matrix::from_i64(&[&[0, 1]]));

        let l = l_n(4).unwrap();
        let (q, _) = l.quotient(&l.leibniz_kernel()).unwrap();
        assert!(q.is_lie() && q.dim() == 3);
        assert_eq!(
            l.quotient(&span(4, &[&[0, 1, 0, 0]])),
            Err(AlgebraError::NotAnIdeal)
        );
    }

    #[test]
    fn direct_sum_blocks() {
        let sum = s1().direct_sum(&s2());
        assert_eq!(sum.dim(), 4);
        assert!(sum.is_left_leibniz());
        assert_eq!(sum.basis_bracket(3, 2), v(&[0, 0, 1, 0]).as_slice());
        assert_eq!(sum.basis_bracket(1, 2), v(&[0, 0, 0, 0]).as_slice());
        assert_eq!(sum.labels(), ["e1", "e2", "e1", "e2"]);
    }

    #[test]
    fn transport_examples() {
        let p = Matrix::from_i64(&[&[1, -1], &[0, 1]]);
        assert_eq!(s2().transport(&p).unwrap(), s2_normalized());
        let q = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(s2().transport(&q), Err(AlgebraError::SingularTransport(2)));
        let p_inv = p.inverse().unwrap();
        assert_eq!(s2().transport(&p).unwrap().transport(&p_inv).unwrap(), s2());
    }

    #[test]
    fn nonnilpotent_ideal_in_ln() {
        for n in 2..=5 {
            let l = l_n(n).unwrap();
            let found = l.find_nonnilpotent_ideal().unwrap();
            assert_eq!(found.kind, TwoDimKind::S2);
            assert!(l.is_ideal(&found.witness.subspace, Side::Bilateral).unwrap());
            let sub = l.subalgebra(&found.standard_basis()).unwrap();
            assert_eq!(sub.tensor(), s2().tensor());
        }
    }

    #[test]
    fn nonnilpotent_ideal_in_presentations() {
        let l = paper_presentation(4, &[rat(2), ratio(-1, 3)], &[rat(0), rat(5)]).unwrap();
        let found = l.find_nonnilpotent_ideal().unwrap();
        assert_eq!(found.kind, TwoDimKind::S2);
        let sub = l.subalgebra(&found.standard_basis()).unwrap();
        assert_eq!(sub.tensor(), s2().tensor());
    }

    #[test]
    fn nonnilpotent_ideal_lie_case() {
        let l = s1().direct_sum(&abelian(2));
        let found = l.find_nonnilpotent_ideal().unwrap();
        assert_eq!(found.kind, TwoDimKind::S1);
        let sub = l.subalgebra(&found.standard_basis()).unwrap();
        assert_eq!(sub.tensor(), s1().tensor());
    }

    #[test]
    fn nonnilpotent_ideal_hypotheses() {
        assert!(matches!(
            kronecker(2).unwrap().find_nonnilpotent_ideal(),
            Err(AlgebraError::HypothesesNotMet(_))
        ));
        assert!(matches!(
            heisenberg(&Matrix::zeros(1, 1)).unwrap().find_nonnilpotent_ideal(),
            Err(AlgebraError::HypothesesNotMet(_))
        ));
        assert!(abelian(2).find_nonnilpotent_ideal().is_err());
    }

    #[test]
    fn display_lists_brackets() {
        assert_eq!(l_n(3).unwrap().to_string(), "[e2, e1] = e1");
        assert_eq!(abelian(2).to_string(), "abelian");
        assert_eq!(s1().to_string(), "[e1, e2] = (-1)e1\n[e2, e1] = e1");
    }

    fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
        // Unit lower times unit upper triangular, times a nonzero diagonal.
        (
            prop::collection::vec(-3i64..=3, n * n),
            prop::collection::vec(-3i64..=3, n * n),
            prop::collection::vec(prop_oneof![1i64..=3, -3i64..=-1], n),
        )
            .prop_map(move |(lo, up, d)| {
                let mut a = Matrix::identity(n);
                let mut b = Matrix::identity(n);
                for i in 0..n {
                    for j in 0..n {
                        if i > j {
                            a[(i, j)] = rat(lo[i * n + j]);
                        } else if i < j {
                            b[(i, j)] = rat(up[i * n + j] * d[i]);
                        } else {
                            b[(i, j)] = rat(d[i]);
                        }
                    }
                }
                &a * &b
            })
    }

    fn fingerprint(l: &LeibnizAlgebra) -> Vec<usize> {
        let mut f: Vec<usize> = l.derived_series().iter().map(Subspace::dim).collect();
        f.push(usize::MAX);
        f.extend(l.lower_central_series().iter().map(Subspace::dim));
        f.extend([
            l.leibniz_kernel().dim(),
            l.left_center().dim(),
            l.right_center().dim(),
            l.center().dim(),
            l.is_lie() as usize,
            l.is_symmetric() as usize,
            l.is_left_leibniz() as usize,
        ]);
        f
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn transport_preserves_invariants(
            p in invertible(4),
            a in prop::collection::vec(-2i64..=2, 2),
            b in prop::collection::vec(-2i64..=2, 2),
        ) {
            let alpha: Vec<Rational> = a.iter().map(|&x| rat(x)).collect();
            let beta: Vec<Rational> = b.iter().map(|&x| rat(x)).collect();
            let l = paper_presentation(4, &alpha, &beta).unwrap();
            let t = l.transport(&p).unwrap();
            prop_assert_eq!(fingerprint(&t), fingerprint(&l));
            prop_assert_eq!(t.transport(&p.inverse().unwrap()).unwrap(), l);
        }

        #[test]
        fn transport_composes(p in invertible(3), q in invertible(3)) {
            let l = paper_presentation(3, &[rat(1)], &[rat(-2)]).unwrap();
            let two_steps = l.transport(&p).unwrap().transport(&q).unwrap();
            prop_assert_eq!(two_steps, l.transport(&(&p * &q)).unwrap());
        }
    }
}
