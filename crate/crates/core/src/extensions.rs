//! Non-abelian extensions of an abelian algebra `L0 = Q^m` by a fiber `S`.
//!
//! An extension is described by action maps `l_x, r_x ∈ gl(S)` for each
//! basis vector `x` of `L0` and a bilinear `ω: L0 × L0 → S`. The algebra on
//! `L0 ⊕ S` has bracket
//!
//! ```text
//! [(x, a), (y, b)] = (0, [a, b] + l_x(b) + r_y(a) + ω(x, y))
//! ```
//!
//! and is left Leibniz exactly when `S` is and conditions (L1)–(L7) hold:
//!
//! ```text
//! (L1) l_x([a,b]) = [l_x(a), b] + [a, l_x(b)]
//! (L2) r_x([a,b]) = [a, r_x(b)] - [b, r_x(a)]
//! (L3) [l_x(a) + r_x(a), b] = 0
//! (L4) [l_x, l_y] = ad_{ω(x,y)}
//! (L5) [l_x, r_y] = Ad_{ω(x,y)}
//! (L6) r_y(r_x(a) + l_x(a)) = 0
//! (L7) l_x(ω(y,z)) - l_y(ω(x,z)) - r_z(ω(x,y)) = 0
//! ```
//!
//! `L0` is always abelian here, so every `[x, y]_{L0}` term vanishes.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AlgebraError, LeibnizAlgebra, Side, StructureTensor, TwoDimKind};
use crate::exactlin::{
    add_vec, is_zero_vec, rat, sub_vec, unit_vec, zero_vec, LinalgError, Matrix, Rational,
    Subspace,
};
use crate::families::{l_n, paper_presentation, s1, s2_normalized};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("malformed extension data: {0}")]
    Shape(String),
    #[error("cocycle conditions fail: {0}")]
    CocycleFailed(CocycleReport),
    #[error("input out of scope: {0}")]
    OutOfScope(String),
    #[error("base tensor is not a Lie algebra")]
    NotLie,
    #[error("rho is not a Lie algebra action on the pair ({0}, {1})")]
    NotAnAction(usize, usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Extension data over an abelian base of dimension `base_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    base_dim: usize,
    fiber: LeibnizAlgebra,
    l: Vec<Matrix>,
    r: Vec<Matrix>,
    omega: Vec<Vec<Vec<Rational>>>,
}

impl ExtensionData {
    pub fn new(
        fiber: LeibnizAlgebra,
        l: Vec<Matrix>,
        r: Vec<Matrix>,
        omega: Vec<Vec<Vec<Rational>>>,
    ) -> Result<Self, ExtensionError> {
        let m = l.len();
        let s = fiber.dim();
        if r.len() != m || omega.len() != m {
            return Err(ExtensionError::Shape(format!(
                "expected {m} right actions and {m} rows of omega"
            )));
        }
        if l.iter().chain(&r).any(|a| a.rows() != s || a.cols() != s) {
            return Err(ExtensionError::Shape(format!("actions must be {s}x{s}")));
        }
        if omega
            .iter()
            .any(|row| row.len() != m || row.iter().any(|v| v.len() != s))
        {
            return Err(ExtensionError::Shape(format!(
                "omega must be a {m}x{m} table of length-{s} vectors"
            )));
        }
        Ok(Self {
            base_dim: m,
            fiber,
            l,
            r,
            omega,
        })
    }

    /// `l = r = 0`, `ω = 0`: the direct sum `Q^m ⊕ S`.
    pub fn trivial(base_dim: usize, fiber: LeibnizAlgebra) -> Self {
        let s = fiber.dim();
        Self {
            base_dim,
            l: vec![Matrix::zeros(s, s); base_dim],
            r: vec![Matrix::zeros(s, s); base_dim],
            omega: vec![vec![zero_vec(s); base_dim]; base_dim],
            fiber,
        }
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn fiber(&self) -> &LeibnizAlgebra {
        &self.fiber
    }

    pub fn l(&self) -> &[Matrix] {
        &self.l
    }

    pub fn r(&self) -> &[Matrix] {
        &self.r
    }

    pub fn omega(&self, x: usize, y: usize) -> &[Rational] {
        &self.omega[x][y]
    }

    pub fn set_omega(&mut self, x: usize, y: usize, value: Vec<Rational>) {
        self.omega[x][y] = value;
    }

    fn apply(a: &Matrix, v: &[Rational]) -> Vec<Rational> {
        a.mul_vec(v).expect("actions sized to the fiber")
    }

    fn fiber_bracket(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        self.fiber.bracket(a, b).expect("vectors sized to the fiber")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
}

impl Condition {
    pub const ALL: [Condition; 7] = [
        Condition::L1,
        Condition::L2,
        Condition::L3,
        Condition::L4,
        Condition::L5,
        Condition::L6,
        Condition::L7,
    ];

    /// Names of the basis indices in a witness tuple.
    pub fn arguments(self) -> &'static [&'static str] {
        match self {
            Condition::L1 | Condition::L2 | Condition::L3 => &["x", "a", "b"],
            Condition::L4 | Condition::L5 | Condition::L6 => &["x", "y", "a"],
            Condition::L7 => &["x", "y", "z"],
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// First failing basis tuple for a condition, with both sides evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub args: Vec<usize>,
    pub lhs: Vec<Rational>,
    pub rhs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionResult {
    pub condition: Condition,
    pub violation: Option<Violation>,
}

impl ConditionResult {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    pub results: Vec<ConditionResult>,
}

impl CocycleReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(ConditionResult::passed)
    }

    pub fn get(&self, c: Condition) -> &ConditionResult {
        self.results
            .iter()
            .find(|r| r.condition == c)
            .expect("every condition is evaluated")
    }

    pub fn failed(&self) -> impl Iterator<Item = &ConditionResult> {
        self.results.iter().filter(|r| !r.passed())
    }
}

impl fmt::Display for CocycleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed: Vec<String> = self.failed().map(|r| r.condition.to_string()).collect();
        if failed.is_empty() {
            write!(f, "all conditions hold")
        } else {
            write!(f, "{} failed", failed.join(", "))
        }
    }
}

fn first_violation<I>(cases: I) -> Option<Violation>
where
    I: IntoIterator<Item = (Vec<usize>, Vec<Rational>, Vec<Rational>)>,
{
    cases
        .into_iter()
        .find(|(_, lhs, rhs)| lhs != rhs)
        .map(|(args, lhs, rhs)| Violation { args, lhs, rhs })
}

/// Evaluates (L1)–(L7) on all basis combinations.
pub fn check_cocycle_conditions(e: &ExtensionData) -> CocycleReport {
    let m = e.base_dim;
    let s = e.fiber.dim();
    let basis: Vec<Vec<Rational>> = (0..s).map(|i| unit_vec(s, i)).collect();
    let triples = |a: usize, b: usize, c: usize| {
        (0..a).flat_map(move |i| (0..b).flat_map(move |j| (0..c).map(move |k| (i, j, k))))
    };
    let zero = zero_vec(s);

    let eval = |c: Condition| -> Option<Violation> {
        match c {
            Condition::L1 => first_violation(triples(m, s, s).map(|(x, a, b)| {
                let l = &e.l[x];
                let lhs = ExtensionData::apply(l, e.fiber.basis_bracket(a, b));
                let rhs = add_vec(
                    &e.fiber_bracket(&ExtensionData::apply(l, &basis[a]), &basis[b]),
                    &e.fiber_bracket(&basis[a], &ExtensionData::apply(l, &basis[b])),
                );
                (vec![x, a, b], lhs, rhs)
            })),
            Condition::L2 => first_violation(triples(m, s, s).map(|(x, a, b)| {
                let r = &e.r[x];
                let lhs = ExtensionData::apply(r, e.fiber.basis_bracket(a, b));
                let rhs = sub_vec(
                    &e.fiber_bracket(&basis[a], &ExtensionData::apply(r, &basis[b])),
                    &e.fiber_bracket(&basis[b], &ExtensionData::apply(r, &basis[a])),
                );
                (vec![x, a, b], lhs, rhs)
            })),
            Condition::L3 => first_violation(triples(m, s, s).map(|(x, a, b)| {
                let image = add_vec(
                    &ExtensionData::apply(&e.l[x], &basis[a]),
                    &ExtensionData::apply(&e.r[x], &basis[a]),
                );
                (vec![x, a, b], e.fiber_bracket(&image, &basis[b]), zero.clone())
            })),
            Condition::L4 => first_violation(triples(m, m, s).map(|(x, y, a)| {
                let comm = e.l[x].commutator(&e.l[y]).expect("square actions");
                let lhs = ExtensionData::apply(&comm, &basis[a]);
                let rhs = e.fiber_bracket(&e.omega[x][y], &basis[a]);
                (vec![x, y, a], lhs, rhs)
            })),
            Condition::L5 => first_violation(triples(m, m, s).map(|(x, y, a)| {
                let comm = e.l[x].commutator(&e.r[y]).expect("square actions");
                let lhs = ExtensionData::apply(&comm, &basis[a]);
                let rhs = e.fiber_bracket(&basis[a], &e.omega[x][y]);
                (vec![x, y, a], lhs, rhs)
            })),
            Condition::L6 => first_violation(triples(m, m, s).map(|(x, y, a)| {
                let inner = add_vec(
                    &ExtensionData::apply(&e.r[x], &basis[a]),
                    &ExtensionData::apply(&e.l[x], &basis[a]),
                );
                let lhs = ExtensionData::apply(&e.r[y], &inner);
                (vec![x, y, a], lhs, zero.clone())
            })),
            Condition::L7 => first_violation(triples(m, m, m).map(|(x, y, z)| {
                let lhs = sub_vec(
                    &sub_vec(
                        &ExtensionData::apply(&e.l[x], &e.omega[y][z]),
                        &ExtensionData::apply(&e.l[y], &e.omega[x][z]),
                    ),
                    &ExtensionData::apply(&e.r[z], &e.omega[x][y]),
                );
                (vec![x, y, z], lhs, zero.clone())
            })),
        }
    };

    CocycleReport {
        results: Condition::ALL
            .iter()
            .map(|&condition| ConditionResult {
                condition,
                violation: eval(condition),
            })
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildMode {
    /// Refuse data failing any of (L1)–(L7).
    Checked,
    /// Build regardless, for experiments with deliberate violations.
    Unchecked,
}

/// The algebra `L0 ⋉_ω S` on the basis `x1, ..., xm` followed by the fiber
/// basis.
pub fn build_semidirect(e: &ExtensionData, mode: BuildMode) -> Result<LeibnizAlgebra, ExtensionError> {
    if mode == BuildMode::Checked {
        let report = check_cocycle_conditions(e);
        if !report.all_pass() {
            return Err(ExtensionError::CocycleFailed(report));
        }
    }
    let m = e.base_dim;
    let s = e.fiber.dim();
    let n = m + s;
    let lift = |v: &[Rational]| {
        let mut out = zero_vec(n);
        out[m..].clone_from_slice(v);
        out
    };
    let mut tensor = StructureTensor::zero(n);
    for x in 0..m {
        for y in 0..m {
            tensor.set_bracket(x, y, &lift(&e.omega[x][y]));
        }
        for a in 0..s {
            // [x, a] = l_x(a), [a, x] = r_x(a)
            tensor.set_bracket(x, m + a, &lift(&e.l[x].column(a)));
            tensor.set_bracket(m + a, x, &lift(&e.r[x].column(a)));
        }
    }
    for a in 0..s {
        for b in 0..s {
            tensor.set_bracket(m + a, m + b, &lift(e.fiber.basis_bracket(a, b)));
        }
    }
    let mut labels: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    labels.extend(e.fiber.labels().iter().cloned());
    Ok(LeibnizAlgebra::new(tensor, labels)?)
}

/// Permutation taking the builder's order (base, fiber) to (fiber, base).
pub fn fiber_first_permutation(base_dim: usize, fiber_dim: usize) -> Matrix {
    let n = base_dim + fiber_dim;
    let cols: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let old = if j < fiber_dim { base_dim + j } else { j - fiber_dim };
            unit_vec(n, old)
        })
        .collect();
    Matrix::from_columns(n, &cols).expect("square permutation")
}

/// The closed-form solution over `S = S2` (normalized basis):
/// `l_x = [[α_x, 0], [0, 0]]`, `r_y = [[0, β_y], [0, 0]]`,
/// `ω(x, y) = α_x β_y e1`.
pub fn paper_family_extension(
    n: usize,
    alpha: &[Rational],
    beta: &[Rational],
) -> Result<ExtensionData, ExtensionError> {
    if n < 2 || alpha.len() != n - 2 || beta.len() != n - 2 {
        return Err(ExtensionError::Shape(format!(
            "need n >= 2 and parameter vectors of length n - 2 (n = {n})"
        )));
    }
    let l = alpha
        .iter()
        .map(|a| Matrix::new(2, 2, vec![a.clone(), rat(0), rat(0), rat(0)]))
        .collect::<Result<Vec<_>, _>>()?;
    let r = beta
        .iter()
        .map(|b| Matrix::new(2, 2, vec![rat(0), b.clone(), rat(0), rat(0)]))
        .collect::<Result<Vec<_>, _>>()?;
    let omega = alpha
        .iter()
        .map(|a| beta.iter().map(|b| vec![a * b, rat(0)]).collect())
        .collect();
    ExtensionData::new(s2_normalized(), l, r, omega)
}

/// Extensions with Lie fiber `S = S1`: `l_x = [[α_x, β_x], [0, 0]]`,
/// `r_x = -l_x`. Condition (L4) then pins the cocycle to
/// `ω(x, y) = (α_y β_x - α_x β_y) e1`, which is skew-symmetric.
pub fn lie_family_extension(
    alpha: &[Rational],
    beta: &[Rational],
) -> Result<ExtensionData, ExtensionError> {
    if alpha.len() != beta.len() {
        return Err(ExtensionError::Shape(
            "alpha and beta must have equal length".into(),
        ));
    }
    let l: Vec<Matrix> = alpha
        .iter()
        .zip(beta)
        .map(|(a, b)| Matrix::new(2, 2, vec![a.clone(), b.clone(), rat(0), rat(0)]))
        .collect::<Result<_, _>>()?;
    let r = l.iter().map(|m| m.scale(&rat(-1))).collect();
    let omega = alpha
        .iter()
        .zip(beta)
        .map(|(ax, bx)| {
            alpha
                .iter()
                .zip(beta)
                .map(|(ay, by)| vec![ay * bx - ax * by, rat(0)])
                .collect()
        })
        .collect();
    ExtensionData::new(s1(), l, r, omega)
}

/// Outcome of reducing an algebra to `L_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    /// Composite change of basis; `transport(L, p) = L_n`.
    pub p: Matrix,
    /// Change of basis bringing `L` into the `(α, β)` presentation
    /// (identity when it already is).
    pub adaptation: Matrix,
    /// `[β-stage, α-stage]`: `f_i ↦ f_i/β_i - e1`, then `f_i ↦ f_i/α_i - e2`.
    pub stages: Vec<Matrix>,
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
    /// `L` transported by `p`, labelled `e1, e2, f3, ..., fn`.
    pub normalized: LeibnizAlgebra,
}

/// Reads `(α, β)` off an algebra assumed to be in the presentation
/// `[e2,e1] = e1, [e2,f_i] = β_i e1, [f_i,e1] = α_i e1, [f_i,f_j] = α_i β_j e1`
/// and confirms that it is.
fn read_presentation(l: &LeibnizAlgebra) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let n = l.dim();
    let t = l.tensor();
    let beta: Vec<Rational> = (2..n).map(|i| t.get(1, i, 0).clone()).collect();
    let alpha: Vec<Rational> = (2..n).map(|i| t.get(i, 0, 0).clone()).collect();
    let expected = paper_presentation(n, &alpha, &beta).ok()?;
    (expected.tensor() == t).then_some((alpha, beta))
}

/// Change of basis onto the `(α, β)` presentation: `e1` spans `[L, L]`,
/// `<e1, e2>` is the ideal isomorphic to `S2` with `[e2, e1] = e1`, and the
/// remaining vectors are standard basis vectors completing it.
fn adapt_basis(l: &LeibnizAlgebra) -> Result<Matrix, ExtensionError> {
    let found = l
        .find_nonnilpotent_ideal()
        .map_err(|e| ExtensionError::OutOfScope(e.to_string()))?;
    if found.kind != TwoDimKind::S2 {
        return Err(ExtensionError::OutOfScope(
            "the non-nilpotent ideal is a Lie algebra".into(),
        ));
    }
    let n = l.dim();
    let std = found.standard_basis();
    let e1 = std.column(0);
    // S2 in its original presentation; e2 ↦ e2 - e1 leaves [e2, e1] = e1.
    let e2 = sub_vec(&std.column(1), &e1);
    let span = Subspace::span(n, [e1.clone(), e2.clone()])?;
    let mut cols = vec![e1, e2];
    cols.extend(span.complement_indices().into_iter().map(|c| unit_vec(n, c)));
    Ok(Matrix::from_columns(n, &cols)?)
}

fn stage_matrix(n: usize, params: &[Rational], shift: usize) -> Matrix {
    let mut p = Matrix::identity(n);
    for (i, c) in params.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let fi = i + 2;
        p[(fi, fi)] = c.recip();
        p[(shift, fi)] = rat(-1);
    }
    p
}

/// Reduces a non-nilpotent, non-Lie left Leibniz algebra with
/// one-dimensional derived subalgebra to `L_n = S2 ⊕ Q^{n-2}`.
pub fn normalize_to_ln(l: &LeibnizAlgebra) -> Result<Normalization, ExtensionError> {
    let n = l.dim();
    if let Some((i, j, k)) = l.check_left_leibniz() {
        return Err(ExtensionError::OutOfScope(format!(
            "left Leibniz identity fails on ({i}, {j}, {k})"
        )));
    }
    let derived = l.derived_algebra().dim();
    if derived != 1 {
        return Err(ExtensionError::OutOfScope(format!(
            "dim [L,L] = {derived}, expected 1"
        )));
    }
    if l.is_nilpotent() {
        return Err(ExtensionError::OutOfScope("L is nilpotent".into()));
    }
    if l.is_lie() {
        return Err(ExtensionError::OutOfScope("L is a Lie algebra".into()));
    }

    let (adaptation, (alpha, beta)) = match read_presentation(l) {
        Some(params) => (Matrix::identity(n), params),
        None => {
            let adaptation = adapt_basis(l)?;
            let adapted = l.transport(&adaptation)?;
            let params = read_presentation(&adapted).ok_or_else(|| {
                ExtensionError::OutOfScope("basis adaptation did not reach the presentation".into())
            })?;
            (adaptation, params)
        }
    };

    let beta_stage = stage_matrix(n, &beta, 0);
    // After the β-stage, [f_i, e1] = γ_i e1 with γ_i = α_i / β_i where β_i != 0.
    let gamma: Vec<Rational> = alpha
        .iter()
        .zip(&beta)
        .map(|(a, b)| if b.is_zero() { a.clone() } else { a / b })
        .collect();
    let alpha_stage = stage_matrix(n, &gamma, 1);
    let p = &(&adaptation * &beta_stage) * &alpha_stage;

    let target = l_n(n).map_err(|e| ExtensionError::OutOfScope(e.to_string()))?;
    let normalized = l.transport(&p)?.relabel(target.labels().to_vec())?;
    if normalized != target {
        return Err(ExtensionError::OutOfScope(
            "normalization did not reach L_n".into(),
        ));
    }
    Ok(Normalization {
        p,
        adaptation,
        stages: vec![beta_stage, alpha_stage],
        alpha,
        beta,
        normalized,
    })
}

/// Individual verdicts of the split-structure test for `L = M ⊕ I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    pub leib_in_ideal: bool,
    pub ideal_in_left_center: bool,
    pub ideal_is_bilateral: bool,
    pub m_is_lie_subalgebra: bool,
    pub direct_sum: bool,
    /// `[(x,a),(y,b)] = ([x,y], ρ_x(b))` on basis vectors.
    pub bracket_form: bool,
}

impl SplitReport {
    pub fn holds(&self) -> bool {
        self.leib_in_ideal
            && self.ideal_in_left_center
            && self.ideal_is_bilateral
            && self.m_is_lie_subalgebra
            && self.direct_sum
            && self.bracket_form
    }
}

/// Split structure `Leib(L) ⊆ I ⊆ Z_l(L)` with a Lie subalgebra `M`
/// complementing `I`, and the action `ρ_x = [x, -]|_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitData {
    pub m: Subspace,
    pub i: Subspace,
    /// For each canonical basis vector of `M`, the matrix of `ρ` in the
    /// canonical basis of `I`.
    pub rho: Vec<Matrix>,
}

pub fn check_split_structure(
    l: &LeibnizAlgebra,
    m: &Subspace,
    i: &Subspace,
) -> Result<SplitReport, ExtensionError> {
    let n = l.dim();
    let leib_in_ideal = l.leibniz_kernel().is_subspace_of(i)?;
    let ideal_in_left_center = i.is_subspace_of(&l.left_center())?;
    let ideal_is_bilateral = l.is_ideal(i, Side::Bilateral)?;
    let m_is_lie_subalgebra = l.is_subalgebra(m)? && {
        let vs: Vec<&[Rational]> = m.vectors().collect();
        vs.iter().enumerate().all(|(a, x)| {
            vs[a..].iter().all(|y| {
                let xy = l.bracket(x, y).expect("sized");
                let yx = l.bracket(y, x).expect("sized");
                is_zero_vec(&add_vec(&xy, &yx))
            })
        })
    };
    let direct_sum = m.dim() + i.dim() == n && m.intersection(i)?.is_zero();

    let mut bracket_form = true;
    for x in m.vectors() {
        for y in m.vectors() {
            bracket_form &= m.contains(&l.bracket(x, y)?)?;
        }
        for b in i.vectors() {
            bracket_form &= i.contains(&l.bracket(x, b)?)?;
        }
    }
    for a in i.vectors() {
        for k in 0..n {
            bracket_form &= is_zero_vec(&l.bracket(a, &unit_vec(n, k))?);
        }
    }

    Ok(SplitReport {
        leib_in_ideal,
        ideal_in_left_center,
        ideal_is_bilateral,
        m_is_lie_subalgebra,
        direct_sum,
        bracket_form,
    })
}

/// The split data when the structure holds.
pub fn split_data(
    l: &LeibnizAlgebra,
    m: &Subspace,
    i: &Subspace,
) -> Result<Option<SplitData>, ExtensionError> {
    if !check_split_structure(l, m, i)?.holds() {
        return Ok(None);
    }
    let mut rho = Vec::new();
    for x in m.vectors() {
        let cols: Vec<Vec<Rational>> = i
            .vectors()
            .map(|b| {
                i.coordinates(&l.bracket(x, b).expect("sized"))
                    .expect("sized")
                    .expect("I is an ideal")
            })
            .collect();
        rho.push(Matrix::from_columns(i.dim(), &cols)?);
    }
    Ok(Some(SplitData {
        m: m.clone(),
        i: i.clone(),
        rho,
    }))
}

/// `M ⊕ I` with `{(x, a), (y, b)} = ([x, y], ρ_x(b))`, basis `M` then `I`.
///
/// `lie` must be a Lie algebra and `rho` (one `module_dim`-square matrix
/// per basis vector of `M`) must satisfy `ρ_[x,y] = ρ_x ρ_y - ρ_y ρ_x`.
pub fn demisemidirect(
    lie: &StructureTensor,
    module_dim: usize,
    rho: &[Matrix],
) -> Result<LeibnizAlgebra, ExtensionError> {
    let m = lie.dim();
    if rho.len() != m
        || rho
            .iter()
            .any(|a| a.rows() != module_dim || a.cols() != module_dim)
    {
        return Err(ExtensionError::Shape(format!(
            "need {m} action matrices of size {module_dim}x{module_dim}"
        )));
    }
    if !LeibnizAlgebra::with_default_labels(lie.clone()).is_lie() {
        return Err(ExtensionError::NotLie);
    }
    for x in 0..m {
        for y in 0..m {
            let mut bracket_action = Matrix::zeros(module_dim, module_dim);
            for (k, c) in lie.basis_bracket(x, y).iter().enumerate() {
                if !c.is_zero() {
                    bracket_action = bracket_action.add(&rho[k].scale(c))?;
                }
            }
            if bracket_action != rho[x].commutator(&rho[y])? {
                return Err(ExtensionError::NotAnAction(x, y));
            }
        }
    }
    let n = m + module_dim;
    let mut tensor = StructureTensor::zero(n);
    for x in 0..m {
        for y in 0..m {
            for (k, c) in lie.basis_bracket(x, y).iter().enumerate() {
                tensor.set(x, y, k, c.clone());
            }
        }
        for b in 0..module_dim {
            for k in 0..module_dim {
                tensor.set(x, m + b, m + k, rho[x][(k, b)].clone());
            }
        }
    }
    let mut labels: Vec<String> = (1..=m).map(|i| format!("m{i}")).collect();
    labels.extend((1..=module_dim).map(|i| format!("i{i}")));
    Ok(LeibnizAlgebra::new(tensor, labels)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ratio;
    use crate::families::{abelian, kronecker, s2};
    use proptest::prelude::*;

    fn q(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn paper_family_satisfies_all_conditions() {
        let cases = [
            (q(&[1]), q(&[1])),
            (q(&[0, 2]), q(&[3, 0])),
            (vec![ratio(-1, 2), rat(4), rat(0)], vec![rat(7), ratio(2, 3), rat(-1)]),
        ];
        for (alpha, beta) in cases {
            let n = alpha.len() + 2;
            let e = paper_family_extension(n, &alpha, &beta).unwrap();
            assert!(check_cocycle_conditions(&e).all_pass());
            let built = build_semidirect(&e, BuildMode::Checked).unwrap();
            assert!(built.is_left_leibniz());
            let reordered = built.transport(&fiber_first_permutation(n - 2, 2)).unwrap();
            assert_eq!(
                reordered.tensor(),
                paper_presentation(n, &alpha, &beta).unwrap().tensor()
            );
        }
    }

    #[test]
    fn builder_labels_and_shape_errors() {
        let e = paper_family_extension(3, &q(&[1]), &q(&[2])).unwrap();
        let built = build_semidirect(&e, BuildMode::Checked).unwrap();
        assert_eq!(built.labels(), ["x1", "e1", "e2"]);
        assert!(matches!(
            paper_family_extension(3, &q(&[1, 2]), &q(&[1])),
            Err(ExtensionError::Shape(_))
        ));
        assert!(matches!(
            ExtensionData::new(s1(), vec![Matrix::zeros(2, 2)], vec![], vec![]),
            Err(ExtensionError::Shape(_))
        ));
    }

    #[test]
    fn corrupted_omega_is_reported() {
        let mut e = paper_family_extension(4, &q(&[1, 2]), &q(&[3, 1])).unwrap();
        e.set_omega(0, 1, q(&[0, 1]));
        let report = check_cocycle_conditions(&e);
        assert!(!report.all_pass());
        let l4 = report.get(Condition::L4).violation.clone().expect("L4 fails");
        assert_eq!(l4.args, vec![0, 1, 0]);
        assert!(report.get(Condition::L1).passed());
        assert!(matches!(
            build_semidirect(&e, BuildMode::Checked),
            Err(ExtensionError::CocycleFailed(_))
        ));
        let built = build_semidirect(&e, BuildMode::Unchecked).unwrap();
        assert!(!built.is_left_leibniz());
    }

    #[test]
    fn lie_family_is_lie_with_skew_cocycle() {
        let alpha = vec![rat(1), ratio(-2, 5), rat(0)];
        let beta = vec![rat(3), rat(1), rat(-4)];
        let e = lie_family_extension(&alpha, &beta).unwrap();
        assert!(check_cocycle_conditions(&e).all_pass());
        for x in 0..3 {
            for y in 0..3 {
                let neg: Vec<Rational> = e.omega(y, x).iter().map(|c| -c).collect();
                assert_eq!(e.omega(x, y), neg.as_slice());
            }
        }
        assert!(build_semidirect(&e, BuildMode::Checked).unwrap().is_lie());
    }

    #[test]
    fn lie_family_rejects_the_opposite_cocycle_sign() {
        let alpha = vec![rat(1), rat(0)];
        let beta = vec![rat(0), rat(1)];
        let mut e = lie_family_extension(&alpha, &beta).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                let w = vec![&alpha[x] * &beta[y] - &alpha[y] * &beta[x], rat(0)];
                e.set_omega(x, y, w);
            }
        }
        let report = check_cocycle_conditions(&e);
        assert!(!report.get(Condition::L4).passed());
    }

    #[test]
    fn normalizes_the_basic_presentation() {
        let l = paper_presentation(3, &q(&[1]), &q(&[1])).unwrap();
        let norm = normalize_to_ln(&l).unwrap();
        assert_eq!(norm.adaptation, Matrix::identity(3));
        assert_eq!(norm.normalized, l_n(3).unwrap());
        assert_eq!(
            l.transport(&norm.p).unwrap().tensor(),
            l_n(3).unwrap().tensor()
        );
        assert_eq!(norm.stages.len(), 2);
    }

    #[test]
    fn normalizes_after_a_change_of_basis() {
        let l = paper_presentation(4, &[rat(2), ratio(1, 3)], &[rat(0), rat(-1)]).unwrap();
        let p = Matrix::from_i64(&[&[1, 1, 0, 2], &[0, 1, 0, 0], &[1, 0, 1, 0], &[0, 3, 1, 1]]);
        let scrambled = l.transport(&p).unwrap();
        assert!(read_presentation(&scrambled).is_none());
        let norm = normalize_to_ln(&scrambled).unwrap();
        assert_ne!(norm.adaptation, Matrix::identity(4));
        assert_eq!(norm.normalized, l_n(4).unwrap());
    }

    #[test]
    fn normalize_rejects_out_of_scope_inputs() {
        let l_sum = l_n(2).unwrap().direct_sum(&s2());
        let rejects = [
            kronecker(2).unwrap(),
            s1().direct_sum(&abelian(2)),
            abelian(3),
            l_sum,
        ];
        for l in rejects {
            assert!(
                matches!(normalize_to_ln(&l), Err(ExtensionError::OutOfScope(_))),
                "{l}"
            );
        }
    }

    fn ln_split(n: usize) -> (LeibnizAlgebra, Subspace, Subspace) {
        let l = l_n(n).unwrap();
        let m = Subspace::span(n, [unit_vec(n, 1)]).unwrap();
        let mut ivs = vec![unit_vec(n, 0)];
        ivs.extend((2..n).map(|k| unit_vec(n, k)));
        let i = Subspace::span(n, ivs).unwrap();
        (l, m, i)
    }

    #[test]
    fn ln_has_split_structure() {
        for n in 2..=5 {
            let (l, m, i) = ln_split(n);
            let report = check_split_structure(&l, &m, &i).unwrap();
            assert!(report.holds(), "{report:?}");
            let data = split_data(&l, &m, &i).unwrap().unwrap();
            let mut expected = Matrix::zeros(n - 1, n - 1);
            expected[(0, 0)] = rat(1);
            assert_eq!(data.rho, vec![expected]);
        }
        // Swapping the roles breaks the chain of inclusions.
        let (l, m, i) = ln_split(3);
        assert!(!check_split_structure(&l, &i, &m).unwrap().holds());
    }

    #[test]
    fn demisemidirect_rebuilds_ln() {
        let n = 4;
        let (l, m, i) = ln_split(n);
        let data = split_data(&l, &m, &i).unwrap().unwrap();
        let rebuilt = demisemidirect(&StructureTensor::zero(1), n - 1, &data.rho).unwrap();
        assert!(rebuilt.is_left_leibniz());
        // Basis m1 = e2, i1 = e1, i2 = f3, i3 = f4.
        let swap = Matrix::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(rebuilt.transport(&swap).unwrap().tensor(), l.tensor());
    }

    #[test]
    fn demisemidirect_checks_its_inputs() {
        assert_eq!(
            demisemidirect(s2().tensor(), 1, &[Matrix::zeros(1, 1), Matrix::zeros(1, 1)]),
            Err(ExtensionError::NotLie)
        );
        // S1 acting on Q by e1 ↦ 1, e2 ↦ 0 breaks ρ_[e2,e1] = [ρ_e2, ρ_e1].
        let rho = vec![Matrix::from_i64(&[&[1]]), Matrix::zeros(1, 1)];
        assert!(matches!(
            demisemidirect(s1().tensor(), 1, &rho),
            Err(ExtensionError::NotAnAction(..))
        ));
        // e2 ↦ 1 is a character of S1.
        let rho = vec![Matrix::zeros(1, 1), Matrix::from_i64(&[&[1]])];
        let l = demisemidirect(s1().tensor(), 1, &rho).unwrap();
        assert!(l.is_left_leibniz() && !l.is_lie());
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        prop::collection::vec(prop_oneof![3 => Just(0i64), 1 => -1i64..=1], 4)
            .prop_map(|e| Matrix::new(2, 2, e.into_iter().map(rat).collect()).unwrap())
    }

    fn small_extension() -> impl Strategy<Value = ExtensionData> {
        let fiber = prop_oneof![Just(s2_normalized()), Just(s1()), Just(abelian(2))];
        (
            fiber,
            prop::collection::vec(small_matrix(), 2),
            prop::collection::vec(small_matrix(), 2),
            prop::collection::vec(prop_oneof![3 => Just(0i64), 1 => -1i64..=1], 8),
        )
            .prop_map(|(fiber, l, r, w)| {
                let omega = (0..2)
                    .map(|x| (0..2).map(|y| q(&w[4 * x + 2 * y..4 * x + 2 * y + 2])).collect())
                    .collect();
                ExtensionData::new(fiber, l, r, omega).unwrap()
            })
    }

    proptest! {
        #[test]
        fn conditions_match_the_leibniz_identity(e in small_extension()) {
            let built = build_semidirect(&e, BuildMode::Unchecked).unwrap();
            prop_assert_eq!(check_cocycle_conditions(&e).all_pass(), built.is_left_leibniz());
        }

        #[test]
        fn paper_family_normalizes(
            a in prop::collection::vec(-3i64..=3, 0..=3),
            b in prop::collection::vec(-3i64..=3, 3),
        ) {
            let n = a.len() + 2;
            let (alpha, beta) = (q(&a), q(&b[..a.len()]));
            let e = paper_family_extension(n, &alpha, &beta).unwrap();
            prop_assert!(check_cocycle_conditions(&e).all_pass());
            let l = paper_presentation(n, &alpha, &beta).unwrap();
            let norm = normalize_to_ln(&l).unwrap();
            let transported = l.transport(&norm.p).unwrap();
            let target = l_n(n).unwrap();
            prop_assert_eq!(transported.tensor(), target.tensor());
        }
    }
}
