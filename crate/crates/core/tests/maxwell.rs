use bsys::behavior::Side;
use bsys::io::{parse_module, parse_system};
use bsys::maxwell::{maxwell_expected, maxwell_system, MAXWELL_BSYS, MAXWELL_RHO0_CONTROLLER, MAXWELL_RHO0_TARGET};
use bsys::{QSubmodule, QVector, Rational};

#[test]
fn fixtures_match_the_built_in_modules() {
    let sys = parse_system(MAXWELL_BSYS).unwrap();
    let exp = maxwell_expected::<Rational>();
    let m0 = parse_module(MAXWELL_RHO0_CONTROLLER, &sys, Side::C).unwrap();
    let n0 = parse_module(MAXWELL_RHO0_TARGET, &sys, Side::W).unwrap();
    assert!(m0.module_equal(&exp.rho_controller).unwrap());
    assert!(n0.module_equal(&exp.rho_target).unwrap());
}

#[test]
fn rho_zero_controller_is_minimal() {
    let sys = maxwell_system::<Rational>();
    let exp = maxwell_expected::<Rational>();
    let report = sys.verify_achieves(&exp.rho_controller, &exp.rho_target).unwrap();
    assert!(report.achieves && report.minimal && report.canonical);
}

#[test]
fn rho_alone_achieves_the_same_target_without_the_continuity_law() {
    // Every trajectory of the system already satisfies continuity, so
    // imposing rho = 0 alone has the same effect on the fields.
    let sys = maxwell_system::<Rational>();
    let exp = maxwell_expected::<Rational>();
    let rho = QSubmodule::new(4, 4, vec![QVector::unit(4, 4, 0)]).unwrap();
    let report = sys.verify_achieves(&rho, &exp.rho_target).unwrap();
    assert!(report.achieves);
    assert!(!report.minimal);
    let with_residual = rho.sum(&sys.derived_laws().inv_c).unwrap();
    assert!(with_residual.module_equal(&exp.rho_controller).unwrap());
}

#[test]
fn oversized_controllers_are_clipped() {
    // Any controller containing rho achieves at least the rho = 0 target;
    // adding J1 = 0 also pins one curl component of B.
    let sys = maxwell_system::<Rational>();
    let exp = maxwell_expected::<Rational>();
    let m = QSubmodule::new(4, 4, vec![QVector::unit(4, 4, 0), QVector::unit(4, 4, 1)]).unwrap();
    let achieved = sys.psi(&m).unwrap();
    assert!(achieved.contains(&exp.rho_target).unwrap());
    assert!(!exp.rho_target.contains(&achieved).unwrap());
    assert!(sys.is_admissible_w(&achieved).unwrap());
}

#[test]
fn vacuum_target_needs_all_sources_off() {
    let sys = maxwell_system::<Rational>();
    let exp = maxwell_expected::<Rational>();
    let synthesis = sys.synthesize_controller(&exp.laws.pi_w).unwrap();
    assert!(synthesis.certificate.passed());
    assert!(synthesis.controller.module_equal(&QSubmodule::full(4, 4)).unwrap());
    let homogeneous = sys.synthesize_controller(&exp.laws.inv_w).unwrap();
    assert!(homogeneous.controller.module_equal(&exp.laws.inv_c).unwrap());
}
