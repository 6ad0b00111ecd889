//! Trajectory-level cross-checks for shift systems on finite windows.
//!
//! A signal is a function `ℕⁿ → Q^k`; on the window `{0..L-1}ⁿ` it is a
//! vector of `k·Lⁿ` values laid out signal-major (column `j·Lⁿ + i` holds
//! signal `j` at the grid point with row-major index `i`). A law `g` is
//! instantiated at every point `x` whose shifts `x + e`, `e ∈ supp(g)`, stay
//! inside the window; nothing outside the window is assumed.
//!
//! Finite windows under-determine behaviors: the strip near the far edge
//! carries values constrained by fewer laws. Checks therefore evaluate a
//! claimed law only where it is forced. When a claimed law `g` lifts to
//! `g = Σ h_i p_i` over the instantiated generators, every point `x` with
//! `x + hull(h_i) + hull(p_i) ≤ L-1` for all `i` is certified: there `g·f`
//! is a combination of instantiated equations. Laws that do not lift are
//! evaluated on the interior `x + hull(g) + d ≤ L-1`, `d` the window margin.

mod linalg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

pub use linalg::{rank_of, Echelon, SparseRow};

use crate::behavior::{Admissibility, BehaviorError, ControlSystem};
use crate::error::AlgebraError;
use crate::module::ModuleVector;
use crate::ring::{Exponent, OperatorKind, RingSpec};
use crate::{QSubmodule, QVector, Rational};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("the trajectory oracle needs a shift ring; `{0}` rings have no finite-window semantics")]
    Unsupported(&'static str),
    #[error("window side {side} must exceed the largest shift degree {margin}")]
    WindowTooSmall { side: usize, margin: u32 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Behavior(#[from] BehaviorError),
}

pub type Result<T, E = OracleError> = std::result::Result<T, E>;

fn require_shift(ring: &RingSpec) -> Result<()> {
    match ring.kind() {
        OperatorKind::Shift => Ok(()),
        OperatorKind::Differential => Err(OracleError::Unsupported(OperatorKind::Differential.keyword())),
    }
}

/// Largest single-variable shift appearing in any generator.
pub fn max_shift_degree<'a>(modules: impl IntoIterator<Item = &'a QSubmodule>) -> u32 {
    modules
        .into_iter()
        .flat_map(|m| m.generators())
        .flat_map(|g| g.support_hull().powers().to_vec())
        .max()
        .unwrap_or(0)
}

/// The grid `{0..L-1}ⁿ` with margin `d`, the largest shift of the laws
/// instantiated on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    n: usize,
    side: usize,
    margin: u32,
}

impl Window {
    pub fn new(n: usize, side: usize, margin: u32) -> Result<Self> {
        if side <= margin as usize {
            return Err(OracleError::WindowTooSmall { side, margin });
        }
        Ok(Window { n, side, margin })
    }

    /// A window of side `side` whose margin covers every law in `modules`.
    pub fn covering<'a>(n: usize, side: usize, modules: impl IntoIterator<Item = &'a QSubmodule>) -> Result<Self> {
        Window::new(n, side, max_shift_degree(modules))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn margin(&self) -> u32 {
        self.margin
    }

    pub fn npoints(&self) -> usize {
        self.side.pow(self.n as u32)
    }

    pub fn index(&self, point: &[usize]) -> usize {
        point.iter().fold(0, |acc, &x| acc * self.side + x)
    }

    pub fn point(&self, mut index: usize) -> Vec<usize> {
        let mut p = vec![0; self.n];
        for slot in p.iter_mut().rev() {
            *slot = index % self.side;
            index /= self.side;
        }
        p
    }

    /// Points `x` with `x_i + reach_i ≤ L-1` for every coordinate, in
    /// row-major order.
    pub fn points_within(&self, reach: &[u32]) -> Vec<Vec<usize>> {
        let limits: Vec<usize> = (0..self.n)
            .map(|i| {
                let r = reach.get(i).copied().unwrap_or(0) as usize;
                self.side.saturating_sub(r)
            })
            .collect();
        if limits.contains(&0) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut p = vec![0; self.n];
        loop {
            out.push(p.clone());
            let mut i = self.n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                p[i] += 1;
                if p[i] < limits[i] {
                    break;
                }
                p[i] = 0;
            }
        }
    }

    fn column(&self, signal: usize, point: &[usize], shift: &Exponent) -> usize {
        let idx = point
            .iter()
            .zip(shift.powers())
            .fold(0, |acc, (&x, &e)| acc * self.side + x + e as usize);
        signal * self.npoints() + idx
    }
}

/// The instantiated equations of a module on a window.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub ncols: usize,
    pub rows: Vec<SparseRow<BigInt>>,
}

/// Denominator-free copy of a law: `(position, shift, integer coefficient)`.
fn integer_terms(g: &QVector) -> Vec<(usize, Exponent, BigInt)> {
    let den = g
        .entries()
        .iter()
        .flat_map(|p| p.terms().map(|(_, c)| c.denom().clone()))
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let mut out = Vec::new();
    for (j, p) in g.entries().iter().enumerate() {
        for (e, c) in p.terms() {
            let v = c * Rational::from_integer(den.clone());
            out.push((j, e.clone(), v.to_integer()));
        }
    }
    out
}

/// One equation per (generator, point where all of its shifts fit).
pub fn instantiate(ring: &RingSpec, s: &QSubmodule, win: &Window) -> Result<LinearSystem> {
    require_shift(ring)?;
    if s.nvars() != win.n() {
        return Err(AlgebraError::DimensionMismatch { expected: win.n(), found: s.nvars() }.into());
    }
    let mut rows = Vec::new();
    for g in s.generators() {
        if g.is_zero() {
            continue;
        }
        let terms = integer_terms(g);
        for x in win.points_within(g.support_hull().powers()) {
            let mut row: SparseRow<BigInt> =
                terms.iter().map(|(j, e, c)| (win.column(*j, &x, e), c.clone())).collect();
            row.sort_by_key(|(c, _)| *c);
            rows.push(row);
        }
    }
    Ok(LinearSystem { ncols: s.rank() * win.npoints(), rows })
}

/// An integer basis of the window solutions of a module.
#[derive(Clone, Debug)]
pub struct WindowKernel {
    pub window: Window,
    pub nsignals: usize,
    pub basis: Vec<Vec<BigInt>>,
}

impl WindowKernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Values of signal `j` of basis trajectory `t`.
    pub fn signal(&self, t: usize, j: usize) -> &[BigInt] {
        let np = self.window.npoints();
        &self.basis[t][j * np..(j + 1) * np]
    }
}

pub fn window_kernel(ring: &RingSpec, s: &QSubmodule, win: &Window) -> Result<WindowKernel> {
    let sys = instantiate(ring, s, win)?;
    let ech = Echelon::new(sys.ncols, sys.rows);
    Ok(WindowKernel { window: win.clone(), nsignals: s.rank(), basis: ech.kernel() })
}

/// `(g·f)(x)`, with `g` of the same rank as the trajectory `f`.
pub fn evaluate(g: &QVector, f: &[BigInt], win: &Window, x: &[usize]) -> Rational {
    let mut acc = Rational::zero();
    for (j, p) in g.entries().iter().enumerate() {
        for (e, c) in p.terms() {
            let v = &f[win.column(j, x, e)];
            if !v.is_zero() {
                acc += c * Rational::from_integer(v.clone());
            }
        }
    }
    acc
}

/// A claimed law failing on a window trajectory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub trajectory: usize,
    pub law: usize,
    pub point: Vec<usize>,
    pub value: Rational,
}

/// Outcome of checking claimed laws against the window kernel of a system.
#[derive(Clone, Debug)]
pub struct LawCheck {
    pub window: Window,
    pub kernel_dim: usize,
    /// Per claimed law: whether it lifted over the system's generators, so
    /// that its evaluation region is certified.
    pub certified: Vec<bool>,
    /// Evaluation points per claimed law.
    pub points: Vec<usize>,
    pub violations: Vec<Violation>,
}

impl LawCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates each full-rank `law` on every basis trajectory of `kernel`
/// (the window solutions of `system`) over that law's region.
fn check_laws(system: &QSubmodule, laws: &[QVector], kernel: &WindowKernel) -> Result<LawCheck> {
    let win = &kernel.window;
    let lifts = system.lift_all(laws)?;
    let hulls: Vec<Exponent> = system.generators().iter().map(ModuleVector::support_hull).collect();
    let mut certified = Vec::new();
    let mut points = Vec::new();
    let mut violations = Vec::new();
    for (l, (g, lift)) in laws.iter().zip(lifts).enumerate() {
        let reach = match &lift {
            Some(h) => h
                .iter()
                .zip(&hulls)
                .filter(|(hi, _)| !hi.is_zero())
                .fold(Exponent::zero(win.n()), |acc, (hi, pi)| acc.join(&hi.support_hull().mul(pi))),
            None => {
                let pad = Exponent::from_slice(&vec![win.margin(); win.n()]);
                g.support_hull().mul(&pad)
            }
        };
        certified.push(lift.is_some());
        let region = win.points_within(reach.powers());
        points.push(region.len());
        for (t, f) in kernel.basis.iter().enumerate() {
            for x in &region {
                let value = evaluate(g, f, win, x);
                if !value.is_zero() {
                    violations.push(Violation { trajectory: t, law: l, point: x.clone(), value });
                }
            }
        }
    }
    Ok(LawCheck { window: win.clone(), kernel_dim: kernel.dim(), certified, points, violations })
}

/// Checks that every generator of `ι_w⁻¹(P)` annihilates the `w` part of
/// every window solution of `P`.
pub fn oracle_inclusion_check(sys: &ControlSystem<Rational>, side: usize) -> Result<LawCheck> {
    let inv_w = &sys.derived_laws().inv_w;
    oracle_inclusion_check_claimed(sys, inv_w, side)
}

/// [`oracle_inclusion_check`] for an arbitrary claimed module of `w` laws.
pub fn oracle_inclusion_check_claimed(sys: &ControlSystem<Rational>, claimed: &QSubmodule, side: usize) -> Result<LawCheck> {
    require_shift(sys.ring())?;
    let p = sys.laws();
    let win = Window::covering(p.nvars(), side, [p, claimed])?;
    let kernel = window_kernel(sys.ring(), p, &win)?;
    let rank = sys.partition().rank();
    let w = sys.partition().w_positions();
    let laws: Vec<QVector> = claimed.generators().iter().map(|g| g.embed(rank, &w)).collect();
    check_laws(p, &laws, &kernel)
}

/// Window comparison of the canonical controller with the controller
/// behavior implied by the target.
#[derive(Clone, Debug)]
pub struct CanonicalReport {
    pub window: Window,
    pub controller: QSubmodule,
    /// `c` parts of window solutions of `P + ι_w(N)`, checked against the
    /// laws of `Φ(N)`.
    pub inclusion: LawCheck,
    /// Dimension of the span of those `c` parts.
    pub c_set_dim: usize,
    /// Dimension of the window solutions of `Φ(N)`.
    pub controller_dim: usize,
    /// Both dimensions restricted to the interior `x ≤ L-1-d`.
    pub interior_c_set_dim: usize,
    pub interior_controller_dim: usize,
}

impl CanonicalReport {
    pub fn inclusion_holds(&self) -> bool {
        self.inclusion.passed()
    }

    pub fn interior_dims_match(&self) -> bool {
        self.interior_c_set_dim == self.interior_controller_dim
    }
}

fn restricted_rank(vectors: &[Vec<BigInt>], columns: &[usize]) -> usize {
    let rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| columns.iter().map(|&c| v[c].clone()).collect()).collect();
    rank_of(columns.len(), &rows)
}

pub fn oracle_canonical_controller(sys: &ControlSystem<Rational>, n: &QSubmodule, side: usize) -> Result<CanonicalReport> {
    require_shift(sys.ring())?;
    let controller = sys.phi(n, Admissibility::Require)?;
    let part = sys.partition();
    let rank = part.rank();
    let w = part.w_positions();
    let c = part.c_positions();
    let p = sys.laws();
    let q = p.sum(&n.embed(rank, &w)?)?;
    let win = Window::covering(p.nvars(), side, [p, n, &controller])?;
    let kernel = window_kernel(sys.ring(), &q, &win)?;
    let laws: Vec<QVector> = controller.generators().iter().map(|g| g.embed(rank, &c)).collect();
    let inclusion = check_laws(&q, &laws, &kernel)?;

    let np = win.npoints();
    let c_cols: Vec<usize> = c.iter().flat_map(|&j| (j * np)..((j + 1) * np)).collect();
    let c_set_dim = restricted_rank(&kernel.basis, &c_cols);
    let k = window_kernel(sys.ring(), &controller, &win)?;
    let interior: Vec<usize> = win
        .points_within(&vec![win.margin(); win.n()])
        .iter()
        .map(|x| win.index(x))
        .collect();
    let interior_c: Vec<usize> = c.iter().flat_map(|&j| interior.iter().map(move |&i| j * np + i)).collect();
    let interior_k: Vec<usize> = (0..part.k_c()).flat_map(|j| interior.iter().map(move |&i| j * np + i)).collect();
    Ok(CanonicalReport {
        window: win,
        inclusion,
        c_set_dim,
        controller_dim: k.dim(),
        interior_c_set_dim: restricted_rank(&kernel.basis, &interior_c),
        interior_controller_dim: restricted_rank(&k.basis, &interior_k),
        controller,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::behavior::VariablePartition;
    use crate::{QPolynomial, QSubmodule};

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn shift1() -> RingSpec {
        RingSpec::new(OperatorKind::Shift, ["s"]).unwrap()
    }

    fn s() -> QPolynomial {
        QPolynomial::var(1, 0)
    }

    fn c(v: i64) -> QPolynomial {
        QPolynomial::constant(1, q(v))
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    /// `P = ⟨(σ - 1, -1)⟩`: the control is the increment of the output.
    fn increment_system() -> ControlSystem<Rational> {
        let law = ModuleVector::new(1, vec![&s() - &c(1), c(-1)]).unwrap();
        let p = QSubmodule::new(1, 2, vec![law]).unwrap();
        ControlSystem::new(shift1(), VariablePartition::new(["w"], ["c"]).unwrap(), p).unwrap()
    }

    #[test]
    fn instantiation_of_a_geometric_law() {
        let m = QSubmodule::ideal(1, vec![&s() - &c(2)]).unwrap();
        let win = Window::covering(1, 4, [&m]).unwrap();
        let sys = instantiate(&shift1(), &m, &win).unwrap();
        assert_eq!(sys.rows.len(), 3);
        assert_eq!(sys.rows[1], vec![(1, BigInt::from(-2)), (2, BigInt::from(1))]);
        let k = window_kernel(&shift1(), &m, &win).unwrap();
        assert_eq!(k.basis, vec![ints(&[1, 2, 4, 8])]);
    }

    #[test]
    fn trivial_modules() {
        let zero = QSubmodule::zero(1, 1);
        let win = Window::new(1, 3, 0).unwrap();
        assert_eq!(window_kernel(&shift1(), &zero, &win).unwrap().dim(), 3);
        let unit = QSubmodule::full(1, 1);
        assert_eq!(window_kernel(&shift1(), &unit, &win).unwrap().dim(), 0);
    }

    #[test]
    fn increment_law_leaves_last_control_value_free() {
        // Two equations on six unknowns: f_w(0..2) and f_c(2) are free.
        let sys = increment_system();
        let win = Window::covering(1, 3, [sys.laws()]).unwrap();
        let k = window_kernel(sys.ring(), sys.laws(), &win).unwrap();
        assert_eq!(k.dim(), 4);
        let law = &sys.laws().generators()[0];
        for f in &k.basis {
            for x in win.points_within(&[1]) {
                assert!(evaluate(law, f, &win, &x).is_zero());
            }
        }
    }

    #[test]
    fn two_dimensional_indexing() {
        let win = Window::new(2, 3, 1).unwrap();
        assert_eq!(win.npoints(), 9);
        assert_eq!(win.index(&[1, 2]), 5);
        assert_eq!(win.point(5), vec![1, 2]);
        assert_eq!(win.points_within(&[1, 2]), vec![vec![0, 0], vec![1, 0]]);
    }

    #[test]
    fn differential_rings_are_rejected() {
        let ring = RingSpec::new(OperatorKind::Differential, ["dx"]).unwrap();
        let m = QSubmodule::zero(1, 1);
        let err = window_kernel(&ring, &m, &Window::new(1, 2, 0).unwrap()).unwrap_err();
        assert!(matches!(err, OracleError::Unsupported("diff")));
    }

    #[test]
    fn window_must_exceed_margin() {
        assert!(matches!(Window::new(1, 2, 2), Err(OracleError::WindowTooSmall { .. })));
    }

    #[test]
    fn inclusion_check_on_the_increment_system() {
        let sys = increment_system();
        let report = oracle_inclusion_check(&sys, 6).unwrap();
        assert!(report.passed());
        assert!(report.certified.is_empty());
        // A false claim: f_w constant.
        let bogus = QSubmodule::ideal(1, vec![&s() - &c(1)]).unwrap();
        let report = oracle_inclusion_check_claimed(&sys, &bogus, 4).unwrap();
        assert_eq!(report.certified, vec![false]);
        assert!(!report.passed());
    }

    #[test]
    fn canonical_controller_for_a_period_two_target() {
        let sys = increment_system();
        let n = QSubmodule::ideal(1, vec![&(&s() * &s()) - &c(1)]).unwrap();
        let report = oracle_canonical_controller(&sys, &n, 8).unwrap();
        assert!(report.controller.module_equal(&QSubmodule::ideal(1, vec![&s() + &c(1)]).unwrap()).unwrap());
        assert!(report.inclusion_holds());
        assert_eq!(report.inclusion.certified, vec![true]);
        assert_eq!(report.inclusion.points, vec![6]);
        assert_eq!((report.c_set_dim, report.controller_dim), (2, 1));
        assert_eq!((report.interior_c_set_dim, report.interior_controller_dim), (1, 1));
        assert!(report.interior_dims_match());
    }

    #[test]
    fn inadmissible_target_is_rejected() {
        let law = ModuleVector::new(1, vec![&s() - &c(1), c(0)]).unwrap();
        let p = QSubmodule::new(1, 2, vec![law]).unwrap();
        let sys = ControlSystem::new(shift1(), VariablePartition::new(["w"], ["c"]).unwrap(), p).unwrap();
        let err = oracle_canonical_controller(&sys, &QSubmodule::zero(1, 1), 4).unwrap_err();
        assert!(matches!(err, OracleError::Behavior(BehaviorError::Inadmissible(_))));
    }
}
