//! Maxwell's equations as a control system: the fields `E`, `B` are to be
//! controlled through the charge density `ρ` and current density `J`.
//!
//! Units are normalized (time measured as `c·t`, `4π` absorbed into `ρ` and
//! `J`), which rescales signals by nonzero constants and leaves every module
//! inclusion and equality intact while keeping all coefficients integral.

use crate::behavior::{ControlSystem, LawsQuadruple, VariablePartition};
use crate::module::{ModuleVector, Submodule};
use crate::ring::{OperatorKind, Polynomial, RingSpec};
use crate::scalar::Field;

/// The system in `.bsys` form; parsing it yields [`maxwell_system`].
pub const MAXWELL_BSYS: &str = include_str!("../fixtures/maxwell.bsys");
/// `M₀ = ⟨ρ, continuity⟩` in `.bsysmod` form.
pub const MAXWELL_RHO0_CONTROLLER: &str = include_str!("../fixtures/maxwell_rho0_controller.bsysmod");
/// `N₀ = ⟨homogeneous, ∇·E⟩` in `.bsysmod` form.
pub const MAXWELL_RHO0_TARGET: &str = include_str!("../fixtures/maxwell_rho0_target.bsysmod");

const DX: usize = 0;
const DY: usize = 1;
const DZ: usize = 2;
const DT: usize = 3;

pub fn maxwell_ring() -> RingSpec {
    RingSpec::new(OperatorKind::Differential, ["dx", "dy", "dz", "dt"]).expect("valid ring")
}

pub fn maxwell_partition() -> VariablePartition {
    VariablePartition::new(["E1", "E2", "E3", "B1", "B2", "B3"], ["rho", "J1", "J2", "J3"])
        .expect("valid partition")
}

/// Builds a vector from `(position, variable or None for 1, sign)` entries.
fn law<F: Field>(rank: usize, entries: &[(usize, Option<usize>, i64)]) -> ModuleVector<F> {
    let mut v = vec![Polynomial::zero(4); rank];
    for &(pos, var, sign) in entries {
        let base = match var {
            Some(d) => Polynomial::var(4, d),
            None => Polynomial::one(4),
        };
        v[pos] = &v[pos] + &base.scale(&F::from_fraction(sign, 1));
    }
    ModuleVector::new(4, v).expect("shared ring")
}

// Positions: E1 E2 E3 B1 B2 B3 | rho J1 J2 J3.
const E1: usize = 0;
const E2: usize = 1;
const E3: usize = 2;
const B1: usize = 3;
const B2: usize = 4;
const B3: usize = 5;
const RHO: usize = 6;
const J1: usize = 7;
const J2: usize = 8;
const J3: usize = 9;

type Row = &'static [(usize, Option<usize>, i64)];

const ROWS: [Row; 8] = [
    &[(E1, Some(DX), 1), (E2, Some(DY), 1), (E3, Some(DZ), 1), (RHO, None, -1)],
    &[(B1, Some(DX), 1), (B2, Some(DY), 1), (B3, Some(DZ), 1)],
    &[(E2, Some(DZ), -1), (E3, Some(DY), 1), (B1, Some(DT), 1)],
    &[(E1, Some(DZ), 1), (E3, Some(DX), -1), (B2, Some(DT), 1)],
    &[(E1, Some(DY), -1), (E2, Some(DX), 1), (B3, Some(DT), 1)],
    &[(E1, Some(DT), 1), (B2, Some(DZ), 1), (B3, Some(DY), -1), (J1, None, 1)],
    &[(E2, Some(DT), 1), (B1, Some(DZ), -1), (B3, Some(DX), 1), (J2, None, 1)],
    &[(E3, Some(DT), 1), (B1, Some(DY), 1), (B2, Some(DX), -1), (J3, None, 1)],
];

/// The eight rows of the Maxwell operator as generators of `P ⊆ A^10`.
pub fn maxwell_rows<F: Field>() -> Vec<ModuleVector<F>> {
    ROWS.iter().map(|r| law(10, r)).collect()
}

pub fn maxwell_system<F: Field>() -> ControlSystem<F> {
    let p = Submodule::new(4, 10, maxwell_rows()).expect("rank 10");
    ControlSystem::new(maxwell_ring(), maxwell_partition(), p).expect("consistent shape")
}

/// The expected derived modules and the `ρ = 0` controller/target pair.
#[derive(Clone, Debug)]
pub struct MaxwellExpected<F> {
    pub laws: LawsQuadruple<F>,
    /// `⟨(1, 0, 0, 0), continuity⟩`.
    pub rho_controller: Submodule<F>,
    /// Homogeneous equations plus `∇·E`.
    pub rho_target: Submodule<F>,
}

/// The continuity law `∂t ρ + ∇·J` on the control block.
pub fn continuity<F: Field>() -> ModuleVector<F> {
    law(4, &[(0, Some(DT), 1), (1, Some(DX), 1), (2, Some(DY), 1), (3, Some(DZ), 1)])
}

/// `∇·E` on the field block.
pub fn divergence_e<F: Field>() -> ModuleVector<F> {
    law(6, &[(E1, Some(DX), 1), (E2, Some(DY), 1), (E3, Some(DZ), 1)])
}

/// Rows 2–5 restricted to the field block.
pub fn homogeneous_laws<F: Field>() -> Vec<ModuleVector<F>> {
    let w: Vec<usize> = (0..6).collect();
    maxwell_rows::<F>()[1..5].iter().map(|r| r.restrict(&w)).collect()
}

/// All eight rows restricted to the field block (the vacuum equations).
pub fn vacuum_laws<F: Field>() -> Vec<ModuleVector<F>> {
    let w: Vec<usize> = (0..6).collect();
    maxwell_rows::<F>().iter().map(|r| r.restrict(&w)).collect()
}

pub fn maxwell_expected<F: Field>() -> MaxwellExpected<F> {
    let module = |rank, gens| Submodule::new(4, rank, gens).expect("shape");
    let mut target = homogeneous_laws();
    target.push(divergence_e());
    MaxwellExpected {
        laws: LawsQuadruple {
            pi_w: module(6, vacuum_laws()),
            inv_w: module(6, homogeneous_laws()),
            pi_c: Submodule::full(4, 4),
            inv_c: module(4, vec![continuity()]),
        },
        rho_controller: module(4, vec![ModuleVector::unit(4, 4, 0), continuity()]),
        rho_target: module(6, target),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn shape_of_the_operator() {
        let sys = maxwell_system::<Rational>();
        assert_eq!(sys.laws().generators().len(), 8);
        assert_eq!(sys.laws().rank(), 10);
        // Rows 2-5 only involve field positions.
        for row in &sys.laws().generators()[1..5] {
            assert!((6..10).all(|p| row.entry(p).is_zero()));
        }
    }

    #[test]
    fn first_two_rows() {
        let rows = maxwell_rows::<Rational>();
        let d = |i| Polynomial::<Rational>::var(4, i);
        assert_eq!(rows[0].entry(0), &d(DX));
        assert_eq!(rows[0].entry(RHO), &-Polynomial::one(4));
        assert_eq!(rows[1].entry(B3), &d(DZ));
        assert!(rows[1].entry(E1).is_zero());
    }

    #[test]
    fn continuity_is_a_consequence() {
        // -dt * row1 + dx * row6 + dy * row7 + dz * row8 = (0, continuity).
        let sys = maxwell_system::<Rational>();
        let embedded = continuity::<Rational>().embed(10, &[6, 7, 8, 9]);
        assert!(sys.laws().is_member(&embedded).unwrap());
    }
}
