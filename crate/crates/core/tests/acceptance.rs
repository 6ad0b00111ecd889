//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::time::{Duration, Instant};

use bsys::behavior::{Admissibility, ControlSystem};
use bsys::maxwell::{continuity, maxwell_expected, maxwell_system, MaxwellExpected};
use bsys::module::buchberger;
use bsys::oracle::{oracle_inclusion_check, oracle_inclusion_check_claimed};
use bsys::random::{RandomSpec, SystemGenerator};
use bsys::ring::{Exponent, OperatorKind, PositionRule, TermOrder};
use bsys::{ModuleOrder, MonomialOrder, QPolynomial, QSubmodule, QVector, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

type Check = Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Check,
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn maxwell() -> (ControlSystem<Rational>, MaxwellExpected<Rational>) {
    (maxwell_system(), maxwell_expected())
}

fn c1_continuity() -> Check {
    let (sys, exp) = maxwell();
    let inv_c = &sys.derived_laws().inv_c;
    let target = QSubmodule::new(4, 4, vec![continuity()]).map_err(e)?;
    ensure(inv_c.module_equal(&target).map_err(e)?, "inv_c differs from the continuity module")?;
    ensure(inv_c.module_equal(&exp.laws.inv_c).map_err(e)?, "inv_c differs from the expected fixture")?;
    Ok("inv_c = <dt*rho + dx*J1 + dy*J2 + dz*J3>".into())
}

fn c2_control_freedom() -> Check {
    let (sys, _) = maxwell();
    let pi_c = &sys.derived_laws().pi_c;
    for i in 0..4 {
        let unit = QVector::unit(4, 4, i);
        ensure(pi_c.is_member(&unit).map_err(e)?, format!("unit vector {i} not in pi_c"))?;
    }
    Ok("all four unit vectors lie in pi_c".into())
}

fn c3_sandwich() -> Check {
    let (sys, exp) = maxwell();
    let laws = sys.derived_laws();
    ensure(laws.inv_w.module_equal(&exp.laws.inv_w).map_err(e)?, "inv_w is not the homogeneous module")?;
    ensure(laws.pi_w.module_equal(&exp.laws.pi_w).map_err(e)?, "pi_w is not the vacuum module")?;
    ensure(laws.pi_w.contains(&laws.inv_w).map_err(e)?, "inv_w not contained in pi_w")?;
    let witness = laws.inv_w.first_non_member(&laws.pi_w).map_err(e)?.ok_or("inv_w = pi_w")?;
    ensure(laws.pi_w.is_member(&witness).map_err(e)?, "witness outside pi_w")?;
    ensure(!laws.inv_w.is_member(&witness).map_err(e)?, "witness inside inv_w")?;
    let nonzero = witness.entries().iter().filter(|p| !p.is_zero()).count();
    Ok(format!("inv_w = homogeneous (4), pi_w = vacuum (8), strict witness with {nonzero} nonzero entries"))
}

fn c4_rho_zero() -> Check {
    let (sys, exp) = maxwell();
    let achieved = sys.psi(&exp.rho_controller).map_err(e)?;
    ensure(achieved.module_equal(&exp.rho_target).map_err(e)?, "psi(M0) differs from homogeneous + div E")?;
    let synthesis = sys.synthesize_controller(&exp.rho_target).map_err(e)?;
    ensure(synthesis.certificate.passed(), format!("certificate failed: {:?}", synthesis.certificate))?;
    ensure(
        synthesis.controller.module_equal(&exp.rho_controller).map_err(e)?,
        "canonical controller differs from <rho, continuity>",
    )?;
    Ok("psi(<rho, continuity>) = <homogeneous, div E>; phi inverts it; certificate passes".into())
}

const CORPUS: u64 = 100;

fn corpus_generator(seed: u64) -> SystemGenerator {
    let kind = if seed.is_multiple_of(2) { OperatorKind::Differential } else { OperatorKind::Shift };
    SystemGenerator::new(seed, RandomSpec::corpus(kind))
}

fn c5_bijection() -> Check {
    let (mut strict_lower, mut strict_upper, mut nonzero_inv) = (0, 0, 0);
    for seed in 0..CORPUS {
        let mut gen = corpus_generator(seed);
        let sys = gen.system();
        let n = gen.admissible_target(&sys);
        let laws = sys.derived_laws();
        strict_lower += usize::from(!laws.inv_w.contains(&n).map_err(e)?);
        strict_upper += usize::from(!n.contains(&laws.pi_w).map_err(e)?);
        nonzero_inv += usize::from(!laws.inv_w.is_zero_module());
        let phi = sys.phi(&n, Admissibility::Require).map_err(e)?;
        let back = sys.psi(&phi).map_err(e)?;
        ensure(back.module_equal(&n).map_err(e)?, format!("seed {seed}: psi(phi(N)) != N"))?;
        let again = sys.phi(&back, Admissibility::Require).map_err(e)?;
        ensure(again.module_equal(&phi).map_err(e)?, format!("seed {seed}: phi(psi(phi(N))) != phi(N)"))?;
    }
    Ok(format!(
        "{CORPUS} seeded systems; N strictly above inv_w in {strict_lower}, strictly below pi_w in {strict_upper}, inv_w nonzero in {nonzero_inv}"
    ))
}

fn c6_endpoints() -> Check {
    for seed in 0..CORPUS {
        let sys = corpus_generator(seed).system();
        let laws = sys.derived_laws();
        let lo = sys.phi(&laws.inv_w, Admissibility::Require).map_err(e)?;
        ensure(lo.module_equal(&laws.inv_c).map_err(e)?, format!("seed {seed}: phi(inv_w) != inv_c"))?;
        let hi = sys.phi(&laws.pi_w, Admissibility::Require).map_err(e)?;
        ensure(hi.module_equal(&laws.pi_c).map_err(e)?, format!("seed {seed}: phi(pi_w) != pi_c"))?;
    }
    Ok(format!("{CORPUS} seeded systems"))
}

fn c7_clipping() -> Check {
    let mut outside = 0;
    for seed in 0..CORPUS {
        let mut gen = corpus_generator(seed);
        let sys = gen.system();
        let _ = gen.admissible_target(&sys);
        let m = gen.controller(&sys);
        let laws = sys.derived_laws();
        if !laws.pi_c.contains(&m).map_err(e)? {
            outside += 1;
        }
        let clipped = m.intersect(&laws.pi_c).map_err(e)?;
        let a = sys.psi(&m).map_err(e)?;
        let b = sys.psi(&clipped).map_err(e)?;
        ensure(a.module_equal(&b).map_err(e)?, format!("seed {seed}: psi(M) != psi(M ∩ pi_c)"))?;
        let w = sys.partition().w_positions();
        let lhs = sys.interconnect(&m).map_err(e)?.laws().project_block(&w).map_err(e)?;
        let rhs = sys.laws().project_block(&w).map_err(e)?;
        ensure(lhs.module_equal(&rhs).map_err(e)?, format!("seed {seed}: projection changed by controller"))?;
    }
    ensure(outside > 0, "no random controller left pi_c; corpus does not exercise clipping")?;
    Ok(format!("{CORPUS} seeded controllers, {outside} not contained in pi_c"))
}

fn c8_gb_oracle() -> Check {
    let x = QPolynomial::var(2, 0);
    let y = QPolynomial::var(2, 1);
    let xi = QSubmodule::ideal(2, vec![x.clone()]).map_err(e)?;
    let yi = QSubmodule::ideal(2, vec![y.clone()]).map_err(e)?;
    let xy = QSubmodule::ideal(2, vec![&x * &y]).map_err(e)?;
    ensure(xi.intersect(&yi).map_err(e)?.module_equal(&xy).map_err(e)?, "<x> ∩ <y> != <xy>")?;

    let cases = 50;
    for seed in 0..cases {
        let mut gen = SystemGenerator::new(1000 + seed, RandomSpec::corpus(OperatorKind::Differential));
        let nvars = gen.rng().gen_range(1..=3);
        let rank = gen.rng().gen_range(1..=3);
        let g = gen.module(nvars, rank);
        let gens = g.generators().to_vec();
        // Invertible rewriting: unit lower-triangular with monomial
        // multipliers, nonzero rational diagonal, then a shuffle.
        let mut rewritten: Vec<QVector> = Vec::new();
        for (i, gi) in gens.iter().enumerate() {
            let d = Rational::from_integer(gen.rng().gen_range(1..=3).into());
            let mut v = gi.scale(&d);
            for gj in &gens[..i] {
                let m: Exponent = gen.exponent(nvars, 2);
                let a = Rational::from_integer(gen.rng().gen_range(-3..=3).into());
                v = v.try_add(&gj.mul_monomial(&m, &a)).map_err(e)?;
            }
            rewritten.push(v);
        }
        rewritten.shuffle(gen.rng());
        let term = [TermOrder::GrevLex, TermOrder::Lex, TermOrder::GrLex][seed as usize % 3];
        let rule = if seed.is_multiple_of(2) { PositionRule::Top } else { PositionRule::Pot };
        let ord = ModuleOrder::new(MonomialOrder::new(term, nvars), rule, rank);
        let a = buchberger(&gens, nvars, rank, &ord).map_err(e)?;
        let b = buchberger(&rewritten, nvars, rank, &ord).map_err(e)?;
        ensure(a.basis == b.basis, format!("case {seed}: reduced bases differ"))?;
    }
    Ok(format!("<x> ∩ <y> = <xy>; {cases} rewriting cases agree elementwise"))
}

fn c9_grid_oracle() -> Check {
    let side = 6;
    let mut systems = 0;
    let mut evaluations = 0;
    let mut seed = 0;
    while systems < 20 {
        let sys = SystemGenerator::new(2000 + seed, RandomSpec::oracle()).system();
        seed += 1;
        let report = oracle_inclusion_check(&sys, side).map_err(e)?;
        ensure(report.passed(), format!("seed {}: {} violations", 1999 + seed, report.violations.len()))?;
        evaluations += report.points.iter().sum::<usize>() * report.kernel_dim;
        systems += 1;
    }

    let mut found = Vec::new();
    let mut seed = 0;
    while found.len() < 5 {
        ensure(seed < 100, "could not build five corrupted modules")?;
        let mut gen = SystemGenerator::new(3000 + seed, RandomSpec::oracle());
        seed += 1;
        let sys = gen.system();
        let Some(bad) = gen.corrupted(&sys.derived_laws().inv_w) else { continue };
        let mut hit = None;
        for l in 2..=10 {
            match oracle_inclusion_check_claimed(&sys, &bad, l) {
                Ok(r) if !r.passed() => {
                    hit = Some(l);
                    break;
                }
                Ok(_) | Err(bsys::oracle::OracleError::WindowTooSmall { .. }) => {}
                Err(err) => return Err(e(err)),
            }
        }
        let l = hit.ok_or(format!("seed {}: corrupted module shows no violation up to L = 10", 2999 + seed))?;
        found.push(l);
    }
    Ok(format!(
        "20 systems at L = {side}, 0 violations over {evaluations} evaluations; negative controls caught at L = {found:?}"
    ))
}

fn demo_output() -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = bsys::cli::run(["bsys", "demo", "maxwell"], &mut out, &mut err);
    ensure(code == 0, format!("demo exited with {code}: {}", String::from_utf8_lossy(&err)))?;
    Ok(out)
}

fn c10_determinism() -> Check {
    let a = demo_output()?;
    let b = demo_output()?;
    ensure(a == b, "demo outputs differ")?;
    Ok(format!("two runs, {} identical bytes", a.len()))
}

fn main() {
    let criteria = [
        Criterion { id: 1, title: "Maxwell continuity law", limit: Some(Duration::from_secs(5)), run: c1_continuity },
        Criterion { id: 2, title: "Maxwell full control freedom", limit: Some(Duration::from_secs(5)), run: c2_control_freedom },
        Criterion { id: 3, title: "Maxwell w-side sandwich", limit: Some(Duration::from_secs(10)), run: c3_sandwich },
        Criterion { id: 4, title: "rho = 0 synthesis", limit: Some(Duration::from_secs(10)), run: c4_rho_zero },
        Criterion { id: 5, title: "bijection roundtrip", limit: Some(Duration::from_secs(120)), run: c5_bijection },
        Criterion { id: 6, title: "endpoint identities", limit: None, run: c6_endpoints },
        Criterion { id: 7, title: "clipping and residual invariance", limit: None, run: c7_clipping },
        Criterion { id: 8, title: "GB engine oracle", limit: None, run: c8_gb_oracle },
        Criterion { id: 9, title: "grid oracle", limit: Some(Duration::from_secs(120)), run: c9_grid_oracle },
        Criterion { id: 10, title: "demo determinism", limit: None, run: c10_determinism },
    ];
    let results: Vec<(Check, Duration)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|c| {
                s.spawn(move || {
                    let start = Instant::now();
                    let r = (c.run)();
                    (r, start.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| (Err("panicked".into()), Duration::ZERO))).collect()
    });
    let mut failures = 0;
    for (c, (result, elapsed)) in criteria.iter().zip(results) {
        let over = c.limit.is_some_and(|l| elapsed > l);
        let (status, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; exceeded {:?}", c.limit.unwrap())),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("criterion {:>2} {status} ({:.2} s) {}: {detail}", c.id, elapsed.as_secs_f64(), c.title);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
