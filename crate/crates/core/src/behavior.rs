//! The control layer: derived law modules of a partitioned system, the
//! admissibility test, the maps `Φ` (w-side targets to controllers) and `Ψ`
//! (controllers to controlled w-side laws), canonical controller synthesis
//! and verification.
//!
//! Behaviors are never materialized. Under an injective cogenerator signal
//! space, behaviors and law modules correspond inclusion-reversingly, so each
//! statement about trajectories is checked as a statement about modules.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::error::AlgebraError;
use crate::module::{ModuleVector, Submodule};
use crate::ring::RingSpec;
use crate::scalar::Field;

/// Split of the signal variables into the ones to be controlled (`w`,
/// positions `0..k_w`) and the control variables (`c`, the rest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariablePartition {
    w_names: Vec<String>,
    c_names: Vec<String>,
}

impl VariablePartition {
    pub fn new<S: Into<String>>(
        w: impl IntoIterator<Item = S>,
        c: impl IntoIterator<Item = S>,
    ) -> Result<Self, BehaviorError> {
        let w_names: Vec<String> = w.into_iter().map(Into::into).collect();
        let c_names: Vec<String> = c.into_iter().map(Into::into).collect();
        if w_names.is_empty() || c_names.is_empty() {
            return Err(BehaviorError::Partition("both variable blocks must be nonempty".into()));
        }
        let all: Vec<&String> = w_names.iter().chain(&c_names).collect();
        for (i, n) in all.iter().enumerate() {
            if n.is_empty() {
                return Err(BehaviorError::Partition("empty signal name".into()));
            }
            if all[..i].contains(n) {
                return Err(BehaviorError::Partition(format!("signal `{n}` declared twice")));
            }
        }
        Ok(VariablePartition { w_names, c_names })
    }

    pub fn k_w(&self) -> usize {
        self.w_names.len()
    }

    pub fn k_c(&self) -> usize {
        self.c_names.len()
    }

    pub fn rank(&self) -> usize {
        self.k_w() + self.k_c()
    }

    pub fn w_names(&self) -> &[String] {
        &self.w_names
    }

    pub fn c_names(&self) -> &[String] {
        &self.c_names
    }

    pub fn names(&self) -> Vec<String> {
        self.w_names.iter().chain(&self.c_names).cloned().collect()
    }

    pub fn w_positions(&self) -> Vec<usize> {
        (0..self.k_w()).collect()
    }

    pub fn c_positions(&self) -> Vec<usize> {
        (self.k_w()..self.rank()).collect()
    }

    pub fn block_names(&self, side: Side) -> &[String] {
        match side {
            Side::W => &self.w_names,
            Side::C => &self.c_names,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    W,
    C,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::W => "w",
            Side::C => "c",
        })
    }
}

/// The inclusion that an inadmissible module violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// A residual law `ι⁻¹(P)` is missing from the module.
    Lower,
    /// The module has a law outside `π(P)`.
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<F> {
    pub side: Side,
    pub bound: Bound,
    pub law: ModuleVector<F>,
}

#[derive(Debug, Error)]
pub enum BehaviorError<F: Field = crate::Rational> {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("{} module is not admissible ({:?} inclusion fails)", .0.side, .0.bound)]
    Inadmissible(Witness<F>),
}

/// `π_w(P)`, `ι_w⁻¹(P)`, `π_c(P)` and `ι_c⁻¹(P)`.
#[derive(Clone, Debug)]
pub struct LawsQuadruple<F> {
    pub pi_w: Submodule<F>,
    pub inv_w: Submodule<F>,
    pub pi_c: Submodule<F>,
    pub inv_c: Submodule<F>,
}

impl<F: Field> LawsQuadruple<F> {
    pub fn upper(&self, side: Side) -> &Submodule<F> {
        match side {
            Side::W => &self.pi_w,
            Side::C => &self.pi_c,
        }
    }

    pub fn lower(&self, side: Side) -> &Submodule<F> {
        match side {
            Side::W => &self.inv_w,
            Side::C => &self.inv_c,
        }
    }
}

/// Whether `Φ` may be applied to a target that fails the admissibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Admissibility {
    #[default]
    Require,
    /// Evaluate the formula anyway; no achievement guarantee applies.
    Override,
}

/// Evidence that a synthesized controller achieves its target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Verified {
        /// `Ψ(M) = N`.
        achieves_target: bool,
        /// `ι_c⁻¹(P) ⊆ M ⊆ π_c(P)`.
        admissible: bool,
    },
    /// The target was inadmissible and synthesis was forced.
    NotApplicable,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        matches!(self, Certificate::Verified { achieves_target: true, admissible: true })
    }
}

#[derive(Clone, Debug)]
pub struct Synthesis<F> {
    pub controller: Submodule<F>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug)]
pub struct AchievementReport<F> {
    /// `Ψ(M) = N`.
    pub achieves: bool,
    /// `M ∩ π_c(P) = Φ(N)`.
    pub minimal: bool,
    /// `M = Φ(N)` itself.
    pub canonical: bool,
    /// The law module `Ψ(M)` actually imposed on `w`.
    pub achieved: Submodule<F>,
}

/// A system `B = Ker(P)` given symbolically by its law module `P` over a
/// named operator ring, with its signals split into `w` and `c`.
#[derive(Clone, Debug)]
pub struct ControlSystem<F> {
    ring: RingSpec,
    partition: VariablePartition,
    laws: Submodule<F>,
    derived: OnceLock<LawsQuadruple<F>>,
}

impl<F: Field> ControlSystem<F> {
    pub fn new(ring: RingSpec, partition: VariablePartition, laws: Submodule<F>) -> Result<Self, BehaviorError<F>> {
        if laws.nvars() != ring.nvars() {
            return Err(AlgebraError::RingMismatch { left: ring.nvars(), right: laws.nvars() }.into());
        }
        if laws.rank() != partition.rank() {
            return Err(AlgebraError::RankMismatch { expected: partition.rank(), found: laws.rank() }.into());
        }
        Ok(ControlSystem { ring, partition, laws, derived: OnceLock::new() })
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn partition(&self) -> &VariablePartition {
        &self.partition
    }

    /// The law module `P`.
    pub fn laws(&self) -> &Submodule<F> {
        &self.laws
    }

    fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    fn block(&self, side: Side) -> Vec<usize> {
        match side {
            Side::W => self.partition.w_positions(),
            Side::C => self.partition.c_positions(),
        }
    }

    fn block_rank(&self, side: Side) -> usize {
        match side {
            Side::W => self.partition.k_w(),
            Side::C => self.partition.k_c(),
        }
    }

    fn check_side(&self, m: &Submodule<F>, side: Side) -> Result<(), BehaviorError<F>> {
        if m.nvars() != self.nvars() {
            return Err(AlgebraError::RingMismatch { left: self.nvars(), right: m.nvars() }.into());
        }
        let k = self.block_rank(side);
        if m.rank() != k {
            return Err(AlgebraError::RankMismatch { expected: k, found: m.rank() }.into());
        }
        Ok(())
    }

    /// The four derived law modules, computed once per system value.
    pub fn derived_laws(&self) -> &LawsQuadruple<F> {
        self.derived.get_or_init(|| {
            let compute = || -> Result<LawsQuadruple<F>, AlgebraError> {
                let (w, c) = (self.partition.w_positions(), self.partition.c_positions());
                let cached = |m: Submodule<F>| {
                    let ord = m.default_order();
                    m.with_groebner(&ord)
                };
                Ok(LawsQuadruple {
                    pi_w: cached(self.laws.project_block(&w)?)?,
                    inv_w: cached(self.laws.preimage_block(&w)?)?,
                    pi_c: cached(self.laws.project_block(&c)?)?,
                    inv_c: cached(self.laws.preimage_block(&c)?)?,
                })
            };
            compute().expect("system shape validated at construction")
        })
    }

    /// `None` if `m` is admissible on `side`, otherwise a violating law.
    pub fn admissibility_witness(&self, m: &Submodule<F>, side: Side) -> Result<Option<Witness<F>>, BehaviorError<F>> {
        self.check_side(m, side)?;
        let laws = self.derived_laws();
        if let Some(law) = m.first_non_member(laws.lower(side))? {
            return Ok(Some(Witness { side, bound: Bound::Lower, law }));
        }
        if let Some(law) = laws.upper(side).first_non_member(m)? {
            return Ok(Some(Witness { side, bound: Bound::Upper, law }));
        }
        Ok(None)
    }

    pub fn is_admissible_w(&self, n: &Submodule<F>) -> Result<bool, BehaviorError<F>> {
        Ok(self.admissibility_witness(n, Side::W)?.is_none())
    }

    pub fn is_admissible_c(&self, m: &Submodule<F>) -> Result<bool, BehaviorError<F>> {
        Ok(self.admissibility_witness(m, Side::C)?.is_none())
    }

    /// `ι_side⁻¹(ι_other(m) + P)`: laws forced on one block once `m` is
    /// imposed on the other.
    fn transfer(&self, m: &Submodule<F>, from: Side) -> Result<Submodule<F>, BehaviorError<F>> {
        self.check_side(m, from)?;
        let to = match from {
            Side::W => Side::C,
            Side::C => Side::W,
        };
        let embedded = m.embed(self.partition.rank(), &self.block(from))?;
        let out = embedded.sum(&self.laws)?.preimage_block(&self.block(to))?;
        let ord = out.default_order();
        Ok(out.with_groebner(&ord)?)
    }

    /// `Φ(N) = ι_c⁻¹(ι_w(N) + P)`.
    pub fn phi(&self, n: &Submodule<F>, mode: Admissibility) -> Result<Submodule<F>, BehaviorError<F>> {
        if mode == Admissibility::Require {
            if let Some(w) = self.admissibility_witness(n, Side::W)? {
                return Err(BehaviorError::Inadmissible(w));
            }
        }
        self.transfer(n, Side::W)
    }

    /// `Ψ(M) = ι_w⁻¹(ι_c(M) + P)`: the w-laws of the system once the
    /// controller laws `M` are imposed. Total; no admissibility required.
    pub fn psi(&self, m: &Submodule<F>) -> Result<Submodule<F>, BehaviorError<F>> {
        self.transfer(m, Side::C)
    }

    /// The minimal controller achieving an admissible target `N`, with a
    /// certificate that `Ψ` maps it back onto `N`.
    pub fn synthesize_controller(&self, n: &Submodule<F>) -> Result<Synthesis<F>, BehaviorError<F>> {
        self.synthesize_with(n, Admissibility::Require)
    }

    pub fn synthesize_with(&self, n: &Submodule<F>, mode: Admissibility) -> Result<Synthesis<F>, BehaviorError<F>> {
        let admissible = match self.admissibility_witness(n, Side::W)? {
            Some(w) if mode == Admissibility::Require => return Err(BehaviorError::Inadmissible(w)),
            Some(_) => false,
            None => true,
        };
        let controller = self.transfer(n, Side::W)?;
        let certificate = if admissible {
            Certificate::Verified {
                achieves_target: self.psi(&controller)?.module_equal(n)?,
                admissible: self.is_admissible_c(&controller)?,
            }
        } else {
            Certificate::NotApplicable
        };
        Ok(Synthesis { controller, certificate })
    }

    /// `M ∩ π_c(P)`; imposing it has the same effect on `w` as imposing `M`.
    pub fn clip_controller(&self, m: &Submodule<F>) -> Result<Submodule<F>, BehaviorError<F>> {
        self.check_side(m, Side::C)?;
        let pi_c = &self.derived_laws().pi_c;
        if pi_c.contains(m)? {
            return Ok(m.clone());
        }
        Ok(m.intersect(pi_c)?)
    }

    pub fn verify_achieves(&self, m: &Submodule<F>, n: &Submodule<F>) -> Result<AchievementReport<F>, BehaviorError<F>> {
        self.check_side(m, Side::C)?;
        self.check_side(n, Side::W)?;
        let achieved = self.psi(m)?;
        let canonical_controller = self.phi(n, Admissibility::Override)?;
        Ok(AchievementReport {
            achieves: achieved.module_equal(n)?,
            minimal: self.clip_controller(m)?.module_equal(&canonical_controller)?,
            canonical: m.module_equal(&canonical_controller)?,
            achieved,
        })
    }

    /// The system with controller laws `M` adjoined: `P + ι_c(M)`.
    pub fn interconnect(&self, m: &Submodule<F>) -> Result<ControlSystem<F>, BehaviorError<F>> {
        self.check_side(m, Side::C)?;
        let embedded = m.embed(self.partition.rank(), &self.partition.c_positions())?;
        ControlSystem::new(self.ring.clone(), self.partition.clone(), self.laws.sum(&embedded)?)
    }

    /// A w-side module from laws given as rank-`k_w` vectors.
    pub fn w_module(&self, gens: Vec<ModuleVector<F>>) -> Result<Submodule<F>, BehaviorError<F>> {
        Ok(Submodule::new(self.nvars(), self.partition.k_w(), gens)?)
    }

    pub fn c_module(&self, gens: Vec<ModuleVector<F>>) -> Result<Submodule<F>, BehaviorError<F>> {
        Ok(Submodule::new(self.nvars(), self.partition.k_c(), gens)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{OperatorKind, Polynomial};
    use crate::Rational;

    type P = Polynomial<Rational>;
    type V = ModuleVector<Rational>;
    type S = Submodule<Rational>;

    /// One shift variable, `w` then `c`, law `(σ - 1) w - c = 0`.
    fn difference_system() -> ControlSystem<Rational> {
        let s = P::var(1, 0);
        let law = V::new(1, vec![&s - &P::one(1), -P::one(1)]).unwrap();
        ControlSystem::new(
            RingSpec::new(OperatorKind::Shift, ["s"]).unwrap(),
            VariablePartition::new(["w"], ["c"]).unwrap(),
            S::new(1, 2, vec![law]).unwrap(),
        )
        .unwrap()
    }

    /// Same law with the blocks swapped: `c` is constrained only through
    /// `(σ - 1)`, so `π_c(P) = ⟨σ - 1⟩`.
    fn swapped_system() -> ControlSystem<Rational> {
        let s = P::var(1, 0);
        let law = V::new(1, vec![-P::one(1), &s - &P::one(1)]).unwrap();
        ControlSystem::new(
            RingSpec::new(OperatorKind::Shift, ["s"]).unwrap(),
            VariablePartition::new(["w"], ["c"]).unwrap(),
            S::new(1, 2, vec![law]).unwrap(),
        )
        .unwrap()
    }

    fn ideal(p: P) -> S {
        S::ideal(1, vec![p]).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(VariablePartition::new(Vec::<String>::new(), vec!["c".into()]).is_err());
        assert!(VariablePartition::new(["a"], ["a"]).is_err());
        let p = VariablePartition::new(["a", "b"], ["c"]).unwrap();
        assert_eq!(p.c_positions(), vec![2]);
    }

    #[test]
    fn derived_laws_of_difference_system() {
        let sys = difference_system();
        let s = P::var(1, 0);
        let laws = sys.derived_laws();
        assert!(laws.pi_w.module_equal(&ideal(&s - &P::one(1))).unwrap());
        assert!(laws.inv_w.reduced_basis().unwrap().is_empty());
        assert!(laws.pi_c.module_equal(&S::full(1, 1)).unwrap());
        assert!(laws.inv_c.reduced_basis().unwrap().is_empty());
    }

    #[test]
    fn phi_of_hand_example() {
        // (σ² - 1) w = 0 forces (σ + 1) c = 0 through c = (σ - 1) w.
        let sys = difference_system();
        let s = P::var(1, 0);
        let n = ideal(&(&s * &s) - &P::one(1));
        let m = sys.phi(&n, Admissibility::Require).unwrap();
        assert!(m.module_equal(&ideal(&s + &P::one(1))).unwrap());
        assert!(sys.psi(&m).unwrap().module_equal(&n).unwrap());
    }

    #[test]
    fn inadmissible_target_is_rejected_with_witness() {
        let sys = difference_system();
        let s = P::var(1, 0);
        let n = ideal(s.clone());
        match sys.phi(&n, Admissibility::Require) {
            Err(BehaviorError::Inadmissible(w)) => {
                assert_eq!(w.bound, Bound::Upper);
                assert_eq!(w.side, Side::W);
            }
            other => panic!("expected inadmissible, got {other:?}"),
        }
        let forced = sys.synthesize_with(&n, Admissibility::Override).unwrap();
        assert_eq!(forced.certificate, Certificate::NotApplicable);
    }

    #[test]
    fn clip_with_proper_upper_bound() {
        let sys = swapped_system();
        let s = P::var(1, 0);
        let clipped = sys.clip_controller(&S::full(1, 1)).unwrap();
        assert!(clipped.module_equal(&ideal(&s - &P::one(1))).unwrap());
        let psi_full = sys.psi(&S::full(1, 1)).unwrap();
        assert!(psi_full.module_equal(&sys.psi(&clipped).unwrap()).unwrap());
    }

    #[test]
    fn rank_mismatch_is_reported() {
        let sys = difference_system();
        let bad = S::zero(1, 2);
        assert!(matches!(
            sys.psi(&bad),
            Err(BehaviorError::Algebra(AlgebraError::RankMismatch { .. }))
        ));
    }

    #[test]
    fn interconnect_with_zero_is_identity() {
        let sys = difference_system();
        let same = sys.interconnect(&S::zero(1, 1)).unwrap();
        assert!(same.laws().module_equal(sys.laws()).unwrap());
    }
}
