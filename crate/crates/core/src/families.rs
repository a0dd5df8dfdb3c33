//! Constructors for the named algebras: the two-dimensional `S1`, `S2`, the
//! algebras `L_n = S2 ⊕ Q^{n-2}` and their unnormalized presentations, and
//! the three nilpotent families with one-dimensional derived subalgebra
//! (Heisenberg, Kronecker, Dieudonné).
//!
//! Basis labels follow the usual names (`e1`, `f3`, `z`).

use std::collections::HashSet;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{LeibnizAlgebra, StructureTensor};
use crate::exactlin::{rat, Matrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("parameter out of range: {0}")]
    Parameter(String),
}

/// Monic polynomial over `Q`, coefficients in ascending degree.
///
/// Irreducibility is not checked: the Heisenberg family is indexed by powers
/// of monic irreducibles, but the construction itself works for any monic
/// polynomial and the caller decides which ones to feed it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialQ {
    coeffs: Vec<Rational>,
}

impl PolynomialQ {
    pub fn monic(coeffs: Vec<Rational>) -> Result<Self, FamilyError> {
        match coeffs.last() {
            Some(lead) if coeffs.len() >= 2 && lead.is_one() => Ok(Self { coeffs }),
            _ => Err(FamilyError::NotMonic),
        }
    }

    /// `x - root`.
    pub fn linear(root: Rational) -> Self {
        Self {
            coeffs: vec![-root, Rational::one()],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn mul(&self, other: &PolynomialQ) -> PolynomialQ {
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolynomialQ { coeffs: out }
    }

    pub fn pow(&self, k: usize) -> PolynomialQ {
        let mut acc = PolynomialQ {
            coeffs: vec![Rational::one()],
        };
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Companion matrix: ones on the subdiagonal, last column the negated
/// low-order coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionMatrix {
    matrix: Matrix,
}

impl CompanionMatrix {
    pub fn of(p: &PolynomialQ) -> Self {
        let m = p.degree();
        let mut matrix = Matrix::zeros(m, m);
        for i in 1..m {
            matrix[(i, i - 1)] = Rational::one();
        }
        for i in 0..m {
            matrix[(i, m - 1)] = -p.coeffs[i].clone();
        }
        Self { matrix }
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
}

/// Companion matrix of `f^k`, of size `k * deg f`.
pub fn companion_of_power(f: &PolynomialQ, k: usize) -> Result<CompanionMatrix, FamilyError> {
    if k == 0 {
        return Err(FamilyError::Parameter("k must be at least 1".into()));
    }
    Ok(CompanionMatrix::of(&f.pow(k)))
}

/// Writes basis brackets and remembers pairs assigned more than once.
struct TensorBuilder {
    tensor: StructureTensor,
    assigned: HashSet<(usize, usize)>,
    collisions: Vec<(usize, usize)>,
}

impl TensorBuilder {
    fn new(dim: usize) -> Self {
        Self {
            tensor: StructureTensor::zero(dim),
            assigned: HashSet::new(),
            collisions: Vec::new(),
        }
    }

    /// `[e_i, e_j] = coeff * e_k`, replacing any earlier value.
    fn set(&mut self, i: usize, j: usize, k: usize, coeff: Rational) {
        if !self.assigned.insert((i, j)) {
            self.collisions.push((i, j));
        }
        let mut v = vec![Rational::zero(); self.tensor.dim()];
        v[k] = coeff;
        self.tensor.set_bracket(i, j, &v);
    }

    fn finish(self, labels: Vec<String>) -> (LeibnizAlgebra, Vec<(usize, usize)>) {
        let algebra = LeibnizAlgebra::new(self.tensor, labels).expect("labels sized to the tensor");
        (algebra, self.collisions)
    }
}

fn labels(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

fn ef_z_labels(n: usize) -> Vec<String> {
    let mut l = labels("e", 1..=n);
    l.extend(labels("f", 1..=n));
    l.push("z".into());
    l
}

/// Heisenberg algebra `l^A_{2n+1}` for an `n x n` matrix `A`:
/// `[e_i, f_j] = (δ_ij + a_ij) z`, `[f_j, e_i] = (-δ_ij + a_ij) z`.
/// `A = 0` gives the Heisenberg Lie algebra.
pub fn heisenberg(a: &Matrix) -> Result<LeibnizAlgebra, FamilyError> {
    if !a.is_square() {
        return Err(FamilyError::Parameter("A must be square".into()));
    }
    let n = a.rows();
    let z = 2 * n;
    let mut b = TensorBuilder::new(2 * n + 1);
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { Rational::one() } else { Rational::zero() };
            let aij = &a[(i, j)];
            let ef = &delta + aij;
            let fe = aij - &delta;
            if !ef.is_zero() {
                b.set(i, n + j, z, ef);
            }
            if !fe.is_zero() {
                b.set(n + j, i, z, fe);
            }
        }
    }
    Ok(b.finish(ef_z_labels(n)).0)
}

/// Kronecker algebra `k_n`.
pub fn kronecker(n: usize) -> Result<LeibnizAlgebra, FamilyError> {
    if n == 0 {
        return Err(FamilyError::Parameter("n must be at least 1".into()));
    }
    let z = 2 * n;
    let (e, f) = (|i: usize| i - 1, |i: usize| n + i - 1);
    let mut b = TensorBuilder::new(2 * n + 1);
    for i in 1..=n {
        b.set(e(i), f(i), z, rat(1));
        b.set(f(i), e(i), z, rat(1));
    }
    for i in 2..=n {
        b.set(e(i), f(i - 1), z, rat(1));
        b.set(f(i - 1), e(i), z, rat(-1));
    }
    Ok(b.finish(ef_z_labels(n)).0)
}

/// Dieudonné algebra `d_n` (dimension `2n + 2`).
pub fn dieudonne(n: usize) -> Result<LeibnizAlgebra, FamilyError> {
    dieudonne_with_report(n).map(|(l, _)| l)
}

/// Dieudonné algebra plus any basis pair that the defining bracket list
/// assigns twice (the later assignment wins).
pub fn dieudonne_with_report(
    n: usize,
) -> Result<(LeibnizAlgebra, Vec<(usize, usize)>), FamilyError> {
    if n == 0 {
        return Err(FamilyError::Parameter("n must be at least 1".into()));
    }
    let z = 2 * n + 1;
    let e = |i: usize| i - 1;
    let mut b = TensorBuilder::new(2 * n + 2);
    b.set(e(1), e(n + 2), z, rat(1));
    for i in 2..=n {
        b.set(e(i), e(n + i), z, rat(1));
        b.set(e(i), e(n + i + 1), z, rat(1));
    }
    b.set(e(n + 1), e(2 * n + 1), z, rat(1));
    for i in (n + 2)..=(2 * n + 1) {
        b.set(e(i), e(i - n), z, rat(1));
        b.set(e(i), e(i - n - 1), z, rat(-1));
    }
    let mut l = labels("e", 1..=(2 * n + 1));
    l.push("z".into());
    Ok(b.finish(l))
}

/// `S1`: `[e2, e1] = -[e1, e2] = e1`.
pub fn s1() -> LeibnizAlgebra {
    let mut b = TensorBuilder::new(2);
    b.set(1, 0, 0, rat(1));
    b.set(0, 1, 0, rat(-1));
    b.finish(labels("e", 1..=2)).0
}

/// `S2`: `[e2, e1] = [e2, e2] = e1`.
pub fn s2() -> LeibnizAlgebra {
    let mut b = TensorBuilder::new(2);
    b.set(1, 0, 0, rat(1));
    b.set(1, 1, 0, rat(1));
    b.finish(labels("e", 1..=2)).0
}

/// `S2` after `e2 ↦ e2 - e1`: the single bracket `[e2, e1] = e1`.
pub fn s2_normalized() -> LeibnizAlgebra {
    let mut b = TensorBuilder::new(2);
    b.set(1, 0, 0, rat(1));
    b.finish(labels("e", 1..=2)).0
}

pub fn abelian(m: usize) -> LeibnizAlgebra {
    LeibnizAlgebra::new(StructureTensor::zero(m), labels("e", 1..=m)).expect("sized labels")
}

fn ln_labels(n: usize) -> Vec<String> {
    let mut l = labels("e", 1..=2);
    l.extend(labels("f", 3..=n));
    l
}

/// `L_n = S2 ⊕ Q^{n-2}` on the basis `e1, e2, f3, ..., fn`.
pub fn l_n(n: usize) -> Result<LeibnizAlgebra, FamilyError> {
    if n < 2 {
        return Err(FamilyError::Parameter("n must be at least 2".into()));
    }
    Ok(s2_normalized()
        .direct_sum(&abelian(n - 2))
        .relabel(ln_labels(n))
        .expect("sized labels"))
}

/// The presentation on `e1, e2, f3, ..., fn` with
/// `[e2,e1] = e1`, `[e2,f_i] = β_i e1`, `[f_i,e1] = α_i e1`,
/// `[f_i,f_j] = α_i β_j e1`.
pub fn paper_presentation(
    n: usize,
    alpha: &[Rational],
    beta: &[Rational],
) -> Result<LeibnizAlgebra, FamilyError> {
    if n < 2 {
        return Err(FamilyError::Parameter("n must be at least 2".into()));
    }
    if alpha.len() != n - 2 || beta.len() != n - 2 {
        return Err(FamilyError::Parameter(format!(
            "alpha and beta must have length {}",
            n - 2
        )));
    }
    let mut b = TensorBuilder::new(n);
    b.set(1, 0, 0, rat(1));
    for (i, (a, be)) in alpha.iter().zip(beta).enumerate() {
        let fi = i + 2;
        if !be.is_zero() {
            b.set(1, fi, 0, be.clone());
        }
        if !a.is_zero() {
            b.set(fi, 0, 0, a.clone());
        }
        for (j, bj) in beta.iter().enumerate() {
            let c = a * bj;
            if !c.is_zero() {
                b.set(fi, j + 2, 0, c);
            }
        }
    }
    Ok(b.finish(ln_labels(n)).0)
}
