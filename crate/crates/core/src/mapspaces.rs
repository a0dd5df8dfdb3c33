//! Derivations, anti-derivations and biderivations.
//!
//! Each space is the kernel of one stacked linear system in the matrix
//! entries of the unknown map(s). A map `d` is flattened row-major, so
//! entry `d[r][c]` (the `e_r` coefficient of `d(e_c)`) sits at `r * n + c`.
//! Biderivation pairs `(d, D)` are flattened as `d` followed by `D`.

use thiserror::Error;

use crate::algebra::{AlgebraError, LeibnizAlgebra};
use crate::exactlin::{is_zero_vec, unit_vec, LinalgError, Matrix, Rational, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("expected a {expected}x{expected} map, found {rows}x{cols}")]
    Shape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("expected a flat vector of length {expected}, found {found}")]
    FlatLength { expected: usize, found: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Square matrix acting on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap(Matrix);

impl LinearMap {
    pub fn new(m: Matrix) -> Result<Self, MapError> {
        if !m.is_square() {
            return Err(MapError::Shape {
                expected: m.rows(),
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        Ok(Self(m))
    }

    pub fn zero(n: usize) -> Self {
        Self(Matrix::zeros(n, n))
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn flatten(&self) -> Vec<Rational> {
        self.0.entries().to_vec()
    }

    pub fn from_flat(n: usize, flat: &[Rational]) -> Result<Self, MapError> {
        if flat.len() != n * n {
            return Err(MapError::FlatLength {
                expected: n * n,
                found: flat.len(),
            });
        }
        Ok(Self(Matrix::new(n, n, flat.to_vec())?))
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>, MapError> {
        Ok(self.0.mul_vec(v)?)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap, MapError> {
        Ok(Self(self.0.checked_mul(&other.0)?))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn check_size(&self, n: usize) -> Result<(), MapError> {
        if self.size() == n {
            Ok(())
        } else {
            Err(MapError::Shape {
                expected: n,
                rows: self.0.rows(),
                cols: self.0.cols(),
            })
        }
    }
}

/// A pair `(d, D)` with `d` a derivation, `D` an anti-derivation and
/// `[d(x) + D(x), y] = 0` for all `x, y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiderivationPair {
    pub d: LinearMap,
    pub anti: LinearMap,
}

impl BiderivationPair {
    pub fn flatten(&self) -> Vec<Rational> {
        let mut v = self.d.flatten();
        v.extend(self.anti.flatten());
        v
    }

    pub fn from_flat(n: usize, flat: &[Rational]) -> Result<Self, MapError> {
        if flat.len() != 2 * n * n {
            return Err(MapError::FlatLength {
                expected: 2 * n * n,
                found: flat.len(),
            });
        }
        Ok(Self {
            d: LinearMap::from_flat(n, &flat[..n * n])?,
            anti: LinearMap::from_flat(n, &flat[n * n..])?,
        })
    }
}

/// Rows enforcing `d([e_i,e_j]) = [d(e_i),e_j] + [e_i,d(e_j)]`, placed in
/// columns `offset..offset + n²` of a system with `width` columns.
fn derivation_rows(l: &LeibnizAlgebra, width: usize, offset: usize) -> Matrix {
    let n = l.dim();
    let t = l.tensor();
    let mut m = Matrix::zeros(n * n * n, width);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let row = (i * n + j) * n + k;
                for mm in 0..n {
                    m[(row, offset + k * n + mm)] += t.get(i, j, mm);
                }
                for r in 0..n {
                    m[(row, offset + r * n + i)] -= t.get(r, j, k);
                    m[(row, offset + r * n + j)] -= t.get(i, r, k);
                }
            }
        }
    }
    m
}

/// Rows enforcing `D([e_i,e_j]) = [e_i,D(e_j)] - [e_j,D(e_i)]`.
fn antiderivation_rows(l: &LeibnizAlgebra, width: usize, offset: usize) -> Matrix {
    let n = l.dim();
    let t = l.tensor();
    let mut m = Matrix::zeros(n * n * n, width);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let row = (i * n + j) * n + k;
                for mm in 0..n {
                    m[(row, offset + k * n + mm)] += t.get(i, j, mm);
                }
                for r in 0..n {
                    m[(row, offset + r * n + j)] -= t.get(i, r, k);
                    m[(row, offset + r * n + i)] += t.get(j, r, k);
                }
            }
        }
    }
    m
}

/// `Der(L)` as a subspace of flattened `n x n` matrices.
pub fn derivation_space(l: &LeibnizAlgebra) -> Subspace {
    let n = l.dim();
    derivation_rows(l, n * n, 0).kernel_basis()
}

/// `ADer(L)` as a subspace of flattened `n x n` matrices.
pub fn antiderivation_space(l: &LeibnizAlgebra) -> Subspace {
    let n = l.dim();
    antiderivation_rows(l, n * n, 0).kernel_basis()
}

/// `Bider(L)` as a subspace of flattened pairs (`2n²` coordinates).
///
/// The coupling `[d(x) + D(x), y] = 0` for all `y` says exactly that
/// `(d + D)(e_i)` lies in `Z_l(L)`; it is imposed by pairing each column
/// with a basis of the annihilator of `Z_l(L)`.
pub fn biderivation_space(l: &LeibnizAlgebra) -> Subspace {
    let n = l.dim();
    let nn = n * n;
    let width = 2 * nn;
    let annihilator = l.left_center().annihilator();
    let mut coupling = Matrix::zeros(annihilator.dim() * n, width);
    for (w_idx, w) in annihilator.vectors().enumerate() {
        for i in 0..n {
            let row = w_idx * n + i;
            for (r, wr) in w.iter().enumerate() {
                coupling[(row, r * n + i)] = wr.clone();
                coupling[(row, nn + r * n + i)] = wr.clone();
            }
        }
    }
    let system = derivation_rows(l, width, 0)
        .vstack(&antiderivation_rows(l, width, nn))
        .and_then(|m| m.vstack(&coupling))
        .expect("blocks share the column count");
    system.kernel_basis()
}

/// Canonical basis of a flattened map space as matrices.
pub fn basis_maps(space: &Subspace, n: usize) -> Vec<LinearMap> {
    space
        .vectors()
        .map(|v| LinearMap::from_flat(n, v).expect("ambient dimension is n²"))
        .collect()
}

pub fn basis_pairs(space: &Subspace, n: usize) -> Vec<BiderivationPair> {
    space
        .vectors()
        .map(|v| BiderivationPair::from_flat(n, v).expect("ambient dimension is 2n²"))
        .collect()
}

/// Direct check of the derivation rule on basis pairs.
pub fn is_derivation(l: &LeibnizAlgebra, d: &LinearMap) -> Result<bool, MapError> {
    d.check_size(l.dim())?;
    let n = l.dim();
    let images: Vec<Vec<Rational>> = (0..n).map(|c| d.matrix().column(c)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = d.apply(l.basis_bracket(i, j))?;
            let a = l.bracket(&images[i], &unit_vec(n, j))?;
            let b = l.bracket(&unit_vec(n, i), &images[j])?;
            if lhs.iter().zip(a.iter().zip(&b)).any(|(x, (y, z))| *x != y + z) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Direct check of `D([x,y]) = [x,D(y)] - [y,D(x)]` on basis pairs.
pub fn is_antiderivation(l: &LeibnizAlgebra, d: &LinearMap) -> Result<bool, MapError> {
    d.check_size(l.dim())?;
    let n = l.dim();
    let images: Vec<Vec<Rational>> = (0..n).map(|c| d.matrix().column(c)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = d.apply(l.basis_bracket(i, j))?;
            let a = l.bracket(&unit_vec(n, i), &images[j])?;
            let b = l.bracket(&unit_vec(n, j), &images[i])?;
            if lhs.iter().zip(a.iter().zip(&b)).any(|(x, (y, z))| *x != y - z) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_biderivation(l: &LeibnizAlgebra, p: &BiderivationPair) -> Result<bool, MapError> {
    if !is_derivation(l, &p.d)? || !is_antiderivation(l, &p.anti)? {
        return Ok(false);
    }
    let n = l.dim();
    let sum = p.d.matrix().add(p.anti.matrix())?;
    for i in 0..n {
        let image = sum.column(i);
        for j in 0..n {
            if !is_zero_vec(&l.bracket(&image, &unit_vec(n, j))?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `ad_x = [x, -]`.
pub fn inner_derivation(l: &LeibnizAlgebra, x: &[Rational]) -> Result<LinearMap, MapError> {
    Ok(LinearMap(l.left_multiplication(x)?))
}

/// `(ad_x, Ad_x)`.
pub fn inner_biderivation(
    l: &LeibnizAlgebra,
    x: &[Rational],
) -> Result<BiderivationPair, MapError> {
    Ok(BiderivationPair {
        d: LinearMap(l.left_multiplication(x)?),
        anti: LinearMap(l.right_multiplication(x)?),
    })
}

/// `Inn(L) = span{ad_x}` as a subspace of flattened maps.
pub fn inner_derivation_space(l: &LeibnizAlgebra) -> Subspace {
    let n = l.dim();
    let gens = (0..n).map(|i| {
        inner_derivation(l, &unit_vec(n, i))
            .expect("basis vector has length n")
            .flatten()
    });
    Subspace::span(n * n, gens).expect("flattened maps have length n²")
}

/// `[d, d'] = d∘d' - d'∘d`.
pub fn der_bracket(d: &LinearMap, other: &LinearMap) -> Result<LinearMap, MapError> {
    Ok(LinearMap(d.matrix().commutator(other.matrix())?))
}

/// `d · D = d∘D - D∘d`, the action of `Der(L)` on `ADer(L)`.
pub fn der_action(d: &LinearMap, anti: &LinearMap) -> Result<LinearMap, MapError> {
    der_bracket(d, anti)
}

/// `[(d, D), (d', D')] = ([d, d'], d · D')`.
pub fn bider_bracket(
    p: &BiderivationPair,
    q: &BiderivationPair,
) -> Result<BiderivationPair, MapError> {
    Ok(BiderivationPair {
        d: der_bracket(&p.d, &q.d)?,
        anti: der_action(&p.d, &q.anti)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutomorphismCheck {
    Holds,
    Singular,
    /// First basis pair `(i, j)` with `P[e_i,e_j] != [P e_i, P e_j]`.
    Fails(usize, usize),
}

pub fn check_automorphism(l: &LeibnizAlgebra, p: &Matrix) -> Result<AutomorphismCheck, MapError> {
    let n = l.dim();
    if p.rows() != n || p.cols() != n {
        return Err(MapError::Shape {
            expected: n,
            rows: p.rows(),
            cols: p.cols(),
        });
    }
    if p.inverse().is_none() {
        return Ok(AutomorphismCheck::Singular);
    }
    let images: Vec<Vec<Rational>> = (0..n).map(|c| p.column(c)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = p.mul_vec(l.basis_bracket(i, j))?;
            let rhs = l.bracket(&images[i], &images[j])?;
            if lhs != rhs {
                return Ok(AutomorphismCheck::Fails(i, j));
            }
        }
    }
    Ok(AutomorphismCheck::Holds)
}

pub fn is_automorphism(l: &LeibnizAlgebra, p: &Matrix) -> Result<bool, MapError> {
    Ok(check_automorphism(l, p)? == AutomorphismCheck::Holds)
}
