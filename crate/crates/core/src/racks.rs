//! Smooth pointed racks on real n-space, checked in floating point, and their
//! tangent Leibniz algebras.
//!
//! A pointed rack `(X, ▷, 1)` satisfies
//! `x ▷ (y ▷ z) = (x ▷ y) ▷ (x ▷ z)`, has bijective left translations, and
//! `1 ▷ x = x`, `x ▷ 1 = 1`. The tangent bracket at the unit is the mixed
//! partial `∂²/∂s∂t (γ₁(s) ▷ γ₂(t))` at `s = t = 0`.

use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{LeibnizAlgebra, StructureTensor};
use crate::exactlin::rat;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RackError {
    #[error("expected a point of length {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("matrix point is singular")]
    Singular,
    #[error("invalid rack: {0}")]
    Invalid(String),
    #[error("dimension mismatch: tangent tensor has dim {tangent}, algebra has dim {algebra}")]
    CompareDimension { tangent: usize, algebra: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RackVariant {
    /// `x ▷ y = (y₁, y₂ + e^{x₁} y₂, y₃, ..., y_n)`.
    PaperLn,
    /// `x ▷ y = (y₁, e^{x₁} y₂, y₃, ..., y_n)`.
    CorrectedLn,
    /// `x ▷ y = x y x⁻¹` on `k × k` matrices flattened row-major.
    ConjMatrix { k: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothRack {
    variant: RackVariant,
    dim: usize,
    unit: Vec<f64>,
}

impl SmoothRack {
    pub fn paper_ln(n: usize) -> Result<Self, RackError> {
        Self::ln(RackVariant::PaperLn, n)
    }

    pub fn corrected_ln(n: usize) -> Result<Self, RackError> {
        Self::ln(RackVariant::CorrectedLn, n)
    }

    fn ln(variant: RackVariant, n: usize) -> Result<Self, RackError> {
        if n < 2 {
            return Err(RackError::Invalid(format!("need n >= 2, got {n}")));
        }
        Ok(Self {
            variant,
            dim: n,
            unit: vec![0.0; n],
        })
    }

    pub fn conj(k: usize) -> Result<Self, RackError> {
        if k == 0 {
            return Err(RackError::Invalid("need k >= 1".into()));
        }
        let mut unit = vec![0.0; k * k];
        for i in 0..k {
            unit[i * k + i] = 1.0;
        }
        Ok(Self {
            variant: RackVariant::ConjMatrix { k },
            dim: k * k,
            unit,
        })
    }

    pub fn variant(&self) -> RackVariant {
        self.variant
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[f64] {
        &self.unit
    }

    fn check_len(&self, p: &[f64]) -> Result<(), RackError> {
        if p.len() != self.dim {
            return Err(RackError::Dimension {
                expected: self.dim,
                found: p.len(),
            });
        }
        Ok(())
    }

    fn matrix(k: usize, p: &[f64]) -> DMatrix<f64> {
        DMatrix::from_row_slice(k, k, p)
    }

    fn flatten(m: &DMatrix<f64>) -> Vec<f64> {
        m.transpose().as_slice().to_vec()
    }

    /// `x ▷ y`.
    pub fn op(&self, x: &[f64], y: &[f64]) -> Result<Vec<f64>, RackError> {
        self.check_len(x)?;
        self.check_len(y)?;
        match self.variant {
            RackVariant::PaperLn => {
                let mut out = y.to_vec();
                out[1] = y[1] + x[0].exp() * y[1];
                Ok(out)
            }
            RackVariant::CorrectedLn => {
                let mut out = y.to_vec();
                out[1] = x[0].exp() * y[1];
                Ok(out)
            }
            RackVariant::ConjMatrix { k } => {
                let xm = Self::matrix(k, x);
                let inv = xm.clone().try_inverse().ok_or(RackError::Singular)?;
                Ok(Self::flatten(&(xm * Self::matrix(k, y) * inv)))
            }
        }
    }

    /// The closed-form inverse of the left translation by `x`.
    pub fn op_inverse(&self, x: &[f64], y: &[f64]) -> Result<Vec<f64>, RackError> {
        self.check_len(x)?;
        self.check_len(y)?;
        match self.variant {
            RackVariant::PaperLn => {
                let mut out = y.to_vec();
                out[1] = y[1] / (1.0 + x[0].exp());
                Ok(out)
            }
            RackVariant::CorrectedLn => {
                let mut out = y.to_vec();
                out[1] = (-x[0]).exp() * y[1];
                Ok(out)
            }
            RackVariant::ConjMatrix { k } => {
                let xm = Self::matrix(k, x);
                let inv = xm.clone().try_inverse().ok_or(RackError::Singular)?;
                Ok(Self::flatten(&(inv * Self::matrix(k, y) * xm)))
            }
        }
    }

    /// A uniform sample from `[-2, 2]^n`; matrix points with `|det| < 1/2`
    /// are redrawn.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        loop {
            let p: Vec<f64> = (0..self.dim).map(|_| rng.random_range(-2.0..=2.0)).collect();
            match self.variant {
                RackVariant::ConjMatrix { k } if Self::matrix(k, &p).determinant().abs() < 0.5 => {}
                _ => return p,
            }
        }
    }
}

/// `x ▷ y`.
pub fn rack_op(r: &SmoothRack, x: &[f64], y: &[f64]) -> Result<Vec<f64>, RackError> {
    r.op(x, y)
}

/// Residual `max_i |lhs_i - rhs_i| / max(1, max_i |lhs_i|)`.
fn residual(lhs: &[f64], rhs: &[f64]) -> f64 {
    let scale = lhs.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let diff = lhs
        .iter()
        .zip(rhs)
        .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    diff / scale
}

#[derive(Clone, Debug, PartialEq)]
pub struct RackWitness {
    pub inputs: Vec<Vec<f64>>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomResult {
    pub passed: bool,
    pub max_residual: f64,
    /// First input whose residual exceeds the tolerance.
    pub witness: Option<RackWitness>,
}

impl AxiomResult {
    fn new() -> Self {
        Self {
            passed: true,
            max_residual: 0.0,
            witness: None,
        }
    }

    fn record(&mut self, inputs: &[&[f64]], lhs: Vec<f64>, rhs: Vec<f64>, tol: f64) {
        let res = residual(&lhs, &rhs);
        self.max_residual = self.max_residual.max(res);
        if !(res <= tol) && self.passed {
            self.passed = false;
            self.witness = Some(RackWitness {
                inputs: inputs.iter().map(|p| p.to_vec()).collect(),
                lhs,
                rhs,
            });
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RackReport {
    pub autodistributivity: AxiomResult,
    pub left_bijectivity: AxiomResult,
    /// `1 ▷ x = x`.
    pub unit_left: AxiomResult,
    /// `x ▷ 1 = 1`.
    pub unit_right: AxiomResult,
    /// `x ▷ x = x`; not a rack axiom, reported for quandles.
    pub idempotence: AxiomResult,
}

impl RackReport {
    /// All pointed-rack axioms hold (idempotence is not required).
    pub fn is_pointed_rack(&self) -> bool {
        self.autodistributivity.passed
            && self.left_bijectivity.passed
            && self.unit_left.passed
            && self.unit_right.passed
    }

    pub fn is_quandle(&self) -> bool {
        self.is_pointed_rack() && self.idempotence.passed
    }
}

/// Checks the pointed-rack axioms on `samples` seeded draws from
/// `[-2, 2]^n`. The unit axioms are probed on the standard basis vectors
/// first, so a failing witness is deterministic and small.
pub fn check_rack_axioms(
    r: &SmoothRack,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<RackReport, RackError> {
    if !(tol > 0.0) {
        return Err(RackError::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RackReport {
        autodistributivity: AxiomResult::new(),
        left_bijectivity: AxiomResult::new(),
        unit_left: AxiomResult::new(),
        unit_right: AxiomResult::new(),
        idempotence: AxiomResult::new(),
    };
    let unit = r.unit().to_vec();

    let basis: Vec<Vec<f64>> = (0..r.dim())
        .map(|i| {
            let mut e = unit.clone();
            e[i] += 1.0;
            e
        })
        .filter(|p| !matches!(r.variant, RackVariant::ConjMatrix { k } if SmoothRack::matrix(k, p).determinant().abs() < 0.5))
        .collect();
    for p in &basis {
        report.unit_left.record(&[p], r.op(&unit, p)?, p.clone(), tol);
        report.unit_right.record(&[p], r.op(p, &unit)?, unit.clone(), tol);
    }

    for _ in 0..samples {
        let x = r.sample(&mut rng);
        let y = r.sample(&mut rng);
        let z = r.sample(&mut rng);

        let lhs = r.op(&x, &r.op(&y, &z)?)?;
        let rhs = r.op(&r.op(&x, &y)?, &r.op(&x, &z)?)?;
        report.autodistributivity.record(&[&x, &y, &z], lhs, rhs, tol);

        let back = r.op(&x, &r.op_inverse(&x, &y)?)?;
        let forth = r.op_inverse(&x, &r.op(&x, &y)?)?;
        report.left_bijectivity.record(&[&x, &y], back, y.clone(), tol);
        report.left_bijectivity.record(&[&x, &y], forth, y.clone(), tol);

        report.unit_left.record(&[&x], r.op(&unit, &x)?, x.clone(), tol);
        report.unit_right.record(&[&x], r.op(&x, &unit)?, unit.clone(), tol);
        report.idempotence.record(&[&x], r.op(&x, &x)?, x.clone(), tol);
    }
    Ok(report)
}

/// Central mixed difference of `F(s, t) = (1 + s u) ▷ (1 + t v)` at the unit.
pub fn tangent_bracket(r: &SmoothRack, u: &[f64], v: &[f64], h: f64) -> Result<Vec<f64>, RackError> {
    if !(h > 0.0) {
        return Err(RackError::Invalid(format!("step must be positive, got {h}")));
    }
    r.check_len(u)?;
    r.check_len(v)?;
    let path = |w: &[f64], s: f64| -> Vec<f64> {
        r.unit().iter().zip(w).map(|(o, d)| o + s * d).collect()
    };
    let f = |s: f64, t: f64| r.op(&path(u, s), &path(v, t));
    let (pp, pm, mp, mm) = (f(h, h)?, f(h, -h)?, f(-h, h)?, f(-h, -h)?);
    let denom = 4.0 * h * h;
    Ok((0..r.dim())
        .map(|i| (pp[i] - pm[i] - mp[i] + mm[i]) / denom)
        .collect())
}

/// Real structure constants in rack coordinates, flattened like
/// [`StructureTensor`]: entry `(i, j, k)` at `(i * n + j) * n + k`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentTensor {
    dim: usize,
    coeffs: Vec<f64>,
    /// `(4/3) max |T_h - T_{h/2}|`, the Richardson estimate of the
    /// truncation error of `T_h`.
    error_bound: f64,
}

impl TangentTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.coeffs[(i * self.dim + j) * self.dim + k]
    }

    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }

    fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                let c = x[i] * y[j];
                if c != 0.0 {
                    for (k, o) in out.iter_mut().enumerate() {
                        *o += c * self.get(i, j, k);
                    }
                }
            }
        }
        out
    }

    /// Largest residual of the left Leibniz identity over basis triples.
    pub fn left_leibniz_residual(&self) -> f64 {
        let n = self.dim;
        let e = |i: usize| {
            let mut v = vec![0.0; n];
            v[i] = 1.0;
            v
        };
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let lhs = self.bracket(&x, &self.bracket(&y, &z));
                    let a = self.bracket(&self.bracket(&x, &y), &z);
                    let b = self.bracket(&y, &self.bracket(&x, &z));
                    for m in 0..n {
                        worst = worst.max((lhs[m] - a[m] - b[m]).abs());
                    }
                }
            }
        }
        worst
    }
}

fn tangent_coeffs(r: &SmoothRack, h: f64) -> Result<Vec<f64>, RackError> {
    let n = r.dim();
    let e = |i: usize| {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    };
    let mut coeffs = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            coeffs.extend(tangent_bracket(r, &e(i), &e(j), h)?);
        }
    }
    Ok(coeffs)
}

/// Tangent brackets of all basis pairs at step `h`.
pub fn tangent_algebra(r: &SmoothRack, h: f64) -> Result<TangentTensor, RackError> {
    let coeffs = tangent_coeffs(r, h)?;
    let half = tangent_coeffs(r, h / 2.0)?;
    let error_bound = coeffs
        .iter()
        .zip(&half)
        .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
        * 4.0
        / 3.0;
    Ok(TangentTensor {
        dim: r.dim(),
        coeffs,
        error_bound,
    })
}

/// Rack coordinate `p` corresponds to algebra basis index `identification[p]`.
/// For `L_n`: rack coordinate 1 is `e2`, 2 is `e1`, and `k ≥ 3` is `f_k`.
pub fn ln_identification(n: usize) -> Vec<usize> {
    let mut id: Vec<usize> = (0..n).collect();
    if n >= 2 {
        id.swap(0, 1);
    }
    id
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentComparison {
    pub max_deviation: f64,
    /// Rack-coordinate entry `(i, j, k)` (0-based) attaining the maximum.
    pub argmax: (usize, usize, usize),
    pub tol: f64,
    pub passed: bool,
}

/// Entrywise comparison of `T` with the constants of `L`, reading rack
/// coordinate `p` as basis vector `identification[p]` of `L`.
pub fn compare_tangent(
    t: &TangentTensor,
    l: &LeibnizAlgebra,
    identification: &[usize],
    tol: f64,
) -> Result<TangentComparison, RackError> {
    let n = t.dim();
    if l.dim() != n {
        return Err(RackError::CompareDimension {
            tangent: n,
            algebra: l.dim(),
        });
    }
    let mut seen = vec![false; n];
    if identification.len() != n
        || identification
            .iter()
            .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
    {
        return Err(RackError::Invalid("identification is not a permutation".into()));
    }
    let lt = l.tensor();
    let mut max_deviation = 0.0_f64;
    let mut argmax = (0, 0, 0);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let exact = lt
                    .get(identification[i], identification[j], identification[k])
                    .to_f64()
                    .unwrap_or(f64::NAN);
                let dev = (t.get(i, j, k) - exact).abs();
                if dev > max_deviation || dev.is_nan() {
                    max_deviation = dev;
                    argmax = (i, j, k);
                }
            }
        }
    }
    Ok(TangentComparison {
        max_deviation,
        argmax,
        tol,
        passed: max_deviation <= tol,
    })
}

/// `gl(k)` with the commutator bracket on the basis `E_ab` flattened
/// row-major, matching the coordinates of the conjugation rack.
pub fn gl_commutator_algebra(k: usize) -> LeibnizAlgebra {
    let n = k * k;
    let idx = |a: usize, b: usize| a * k + b;
    let mut t = StructureTensor::zero(n);
    // [E_ab, E_cd] = δ_bc E_ad - δ_da E_cb
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for d in 0..k {
                    let (x, y) = (idx(a, b), idx(c, d));
                    if b == c {
                        let cur = t.get(x, y, idx(a, d)).clone();
                        t.set(x, y, idx(a, d), cur + rat(1));
                    }
                    if d == a {
                        let cur = t.get(x, y, idx(c, b)).clone();
                        t.set(x, y, idx(c, b), cur - rat(1));
                    }
                }
            }
        }
    }
    let labels = (0..k)
        .flat_map(|a| (0..k).map(move |b| format!("E{}{}", a + 1, b + 1)))
        .collect();
    LeibnizAlgebra::new(t, labels).expect("k*k labels")
}
