//! The `bsys` command-line surface. [`run`] takes the argument list and
//! output streams so it can be driven in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::behavior::{Admissibility, BehaviorError, Bound, Certificate, ControlSystem, Side, Witness};
use crate::io::{format_law, parse_module, parse_system, print_canonical};
use crate::maxwell::{MAXWELL_BSYS, MAXWELL_RHO0_CONTROLLER, MAXWELL_RHO0_TARGET};
use crate::oracle::{oracle_canonical_controller, oracle_inclusion_check, LawCheck, OracleError};
use crate::{QSubmodule, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "bsys", version, about = "Achievable subsystems and canonical controllers of linear systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print pi_w, inv_w, pi_c and inv_c of a system.
    Laws { file: PathBuf },
    /// Synthesize the canonical controller for a target module on w.
    Controller {
        file: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Apply the formula even when the target is not admissible.
        #[arg(long)]
        force: bool,
    },
    /// Print the w-laws imposed by a controller (after clipping to pi_c).
    Achieve {
        file: PathBuf,
        #[arg(long)]
        controller: PathBuf,
    },
    /// Check whether a controller achieves a target and whether it is minimal.
    Check {
        file: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        controller: PathBuf,
    },
    /// Cross-check the derived laws on a finite window (shift rings only).
    Oracle {
        file: PathBuf,
        #[arg(long)]
        window: usize,
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Run a worked example end to end.
    Demo {
        #[arg(value_enum)]
        example: Example,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Example {
    Maxwell,
}

/// A failure that ends the command with a message on stderr.
struct Fatal(String);

impl From<std::io::Error> for Fatal {
    fn from(e: std::io::Error) -> Self {
        Fatal(format!("write failed: {e}"))
    }
}

impl From<BehaviorError> for Fatal {
    fn from(e: BehaviorError) -> Self {
        Fatal(e.to_string())
    }
}

impl From<crate::AlgebraError> for Fatal {
    fn from(e: crate::AlgebraError) -> Self {
        Fatal(e.to_string())
    }
}

impl From<OracleError> for Fatal {
    fn from(e: OracleError) -> Self {
        Fatal(e.to_string())
    }
}

type Outcome = Result<i32, Fatal>;

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Laws { file } => laws(&file, out),
        Command::Controller { file, target, force } => controller(&file, &target, force, out),
        Command::Achieve { file, controller } => achieve(&file, &controller, out),
        Command::Check { file, target, controller } => check(&file, &target, &controller, out),
        Command::Oracle { file, window, target } => oracle(&file, window, target.as_deref(), out),
        Command::Demo { example: Example::Maxwell } => demo_maxwell(out),
    };
    match result {
        Ok(code) => code,
        Err(Fatal(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    std::fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<ControlSystem<Rational>, Fatal> {
    parse_system(&read(path)?).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn load_module(path: &Path, sys: &ControlSystem<Rational>, side: Side) -> Result<QSubmodule, Fatal> {
    parse_module(&read(path)?, sys, side).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// The reduced basis of `m`, indented, one law per line.
fn module_text(sys: &ControlSystem<Rational>, m: &QSubmodule, side: Side) -> Result<String, Fatal> {
    let text = print_canonical(m, &m.default_order(), sys.ring().var_names(), sys.partition().block_names(side))?;
    Ok(text.lines().map(|l| format!("  {l}\n")).collect())
}

fn order_line(sys: &ControlSystem<Rational>, side: Side) -> String {
    let names = sys.partition().block_names(side);
    let ord = crate::ModuleOrder::default_for(sys.ring().nvars(), names.len());
    format!("# {side} order: {}\n", ord.describe(sys.ring().var_names(), names))
}

fn law_text(sys: &ControlSystem<Rational>, w: &Witness<Rational>) -> String {
    let ord = crate::MonomialOrder::grevlex(sys.ring().nvars());
    format_law(&w.law, &ord, sys.ring().var_names(), sys.partition().block_names(w.side))
}

fn witness_text(sys: &ControlSystem<Rational>, w: &Witness<Rational>) -> String {
    let law = law_text(sys, w);
    match w.bound {
        Bound::Upper => format!("not admissible: law `{law}` is not in pi_{}", w.side),
        Bound::Lower => format!("not admissible: law `{law}` of inv_{} is missing", w.side),
    }
}

fn laws(file: &Path, out: &mut dyn Write) -> Outcome {
    let sys = load_system(file)?;
    let laws = sys.derived_laws();
    let mut s = String::new();
    s.push_str(&order_line(&sys, Side::W));
    s.push_str(&order_line(&sys, Side::C));
    for (name, m, side) in [
        ("pi_w", &laws.pi_w, Side::W),
        ("inv_w", &laws.inv_w, Side::W),
        ("pi_c", &laws.pi_c, Side::C),
        ("inv_c", &laws.inv_c, Side::C),
    ] {
        let _ = writeln!(s, "{name}:");
        s.push_str(&module_text(&sys, m, side)?);
    }
    out.write_all(s.as_bytes())?;
    Ok(EXIT_OK)
}

fn certificate_text(c: &Certificate) -> String {
    match c {
        Certificate::Verified { achieves_target, admissible } => format!(
            "certificate: achieves target: {}, controller admissible: {}",
            yes(*achieves_target),
            yes(*admissible)
        ),
        Certificate::NotApplicable => "certificate: not applicable (target not admissible)".into(),
    }
}

fn controller(file: &Path, target: &Path, force: bool, out: &mut dyn Write) -> Outcome {
    let sys = load_system(file)?;
    let n = load_module(target, &sys, Side::W)?;
    let mut s = String::new();
    let witness = sys.admissibility_witness(&n, Side::W)?;
    if let Some(w) = &witness {
        let _ = writeln!(s, "{}", witness_text(&sys, w));
        if !force {
            out.write_all(s.as_bytes())?;
            return Ok(EXIT_FALSE);
        }
    }
    let mode = if force { Admissibility::Override } else { Admissibility::Require };
    let synthesis = sys.synthesize_with(&n, mode)?;
    s.push_str(&order_line(&sys, Side::C));
    s.push_str("canonical controller:\n");
    s.push_str(&module_text(&sys, &synthesis.controller, Side::C)?);
    let _ = writeln!(s, "{}", certificate_text(&synthesis.certificate));
    out.write_all(s.as_bytes())?;
    Ok(if synthesis.certificate.passed() { EXIT_OK } else { EXIT_FALSE })
}

fn achieve(file: &Path, controller: &Path, out: &mut dyn Write) -> Outcome {
    let sys = load_system(file)?;
    let m = load_module(controller, &sys, Side::C)?;
    let clipped = sys.clip_controller(&m)?;
    let achieved = sys.psi(&clipped)?;
    let mut s = order_line(&sys, Side::W);
    s.push_str("achieved laws on w:\n");
    s.push_str(&module_text(&sys, &achieved, Side::W)?);
    out.write_all(s.as_bytes())?;
    Ok(EXIT_OK)
}

fn check(file: &Path, target: &Path, controller: &Path, out: &mut dyn Write) -> Outcome {
    let sys = load_system(file)?;
    let n = load_module(target, &sys, Side::W)?;
    let m = load_module(controller, &sys, Side::C)?;
    let report = sys.verify_achieves(&m, &n)?;
    let mut s = String::new();
    if let Some(w) = sys.admissibility_witness(&n, Side::W)? {
        let _ = writeln!(s, "target {}", witness_text(&sys, &w));
    }
    let _ = writeln!(s, "achieves: {}", yes(report.achieves));
    let _ = writeln!(s, "minimal: {}", yes(report.minimal));
    let _ = writeln!(s, "canonical: {}", yes(report.canonical));
    s.push_str(&order_line(&sys, Side::W));
    s.push_str("achieved laws on w:\n");
    s.push_str(&module_text(&sys, &report.achieved, Side::W)?);
    out.write_all(s.as_bytes())?;
    Ok(if report.achieves { EXIT_OK } else { EXIT_FALSE })
}

fn law_check_text(s: &mut String, check: &LawCheck) {
    let certified = check.certified.iter().filter(|c| **c).count();
    let _ = writeln!(s, "  window solutions: {}", check.kernel_dim);
    let _ = writeln!(s, "  laws checked: {} ({} certified by lifting)", check.certified.len(), certified);
    let _ = writeln!(s, "  evaluation points: {}", check.points.iter().sum::<usize>());
    let _ = writeln!(s, "  violations: {}", check.violations.len());
    for v in check.violations.iter().take(10) {
        let _ = writeln!(s, "    law {} on solution {} at {:?}: {}", v.law + 1, v.trajectory + 1, v.point, v.value);
    }
}

fn oracle(file: &Path, side: usize, target: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let sys = load_system(file)?;
    let n = target.map(|t| load_module(t, &sys, Side::W)).transpose()?;
    let mut s = String::new();
    let check = oracle_inclusion_check(&sys, side)?;
    let w = &check.window;
    let _ = writeln!(s, "window: side {}, dimension {}, margin {}", w.side(), w.n(), w.margin());
    s.push_str("inv_w on solutions of P:\n");
    law_check_text(&mut s, &check);
    let mut ok = check.passed();
    if let Some(n) = n {
        if let Some(wit) = sys.admissibility_witness(&n, Side::W)? {
            let _ = writeln!(s, "target {}", witness_text(&sys, &wit));
            out.write_all(s.as_bytes())?;
            return Ok(EXIT_FALSE);
        }
        let report = oracle_canonical_controller(&sys, &n, side)?;
        let _ = writeln!(s, "canonical controller on c parts of solutions of P + N (margin {}):", report.window.margin());
        law_check_text(&mut s, &report.inclusion);
        let _ = writeln!(s, "  dimension of c parts: {}", report.c_set_dim);
        let _ = writeln!(s, "  dimension of controller solutions: {}", report.controller_dim);
        let _ = writeln!(
            s,
            "  interior (x <= L-1-margin): {} vs {} (informative)",
            report.interior_c_set_dim, report.interior_controller_dim
        );
        ok &= report.inclusion_holds();
    }
    let _ = writeln!(s, "result: {}", if ok { "pass" } else { "fail" });
    out.write_all(s.as_bytes())?;
    Ok(if ok { EXIT_OK } else { EXIT_FALSE })
}

/// The Maxwell walkthrough; output depends on nothing but the built-in
/// fixtures.
fn demo_maxwell(out: &mut dyn Write) -> Outcome {
    let sys = parse_system(MAXWELL_BSYS).map_err(|e| Fatal(format!("built-in fixture: {e}")))?;
    let m0 = parse_module(MAXWELL_RHO0_CONTROLLER, &sys, Side::C).map_err(|e| Fatal(e.to_string()))?;
    let n0 = parse_module(MAXWELL_RHO0_TARGET, &sys, Side::W).map_err(|e| Fatal(e.to_string()))?;
    let laws = sys.derived_laws();
    let mut s = String::new();
    s.push_str("Maxwell's equations as a control system\n");
    s.push_str("  fields (to be controlled) w: E1 E2 E3 B1 B2 B3\n");
    s.push_str("  sources (control inputs)  c: rho J1 J2 J3\n");
    s.push_str("  units: time as c*t, 4*pi absorbed into rho and J; every coefficient is an integer\n");
    s.push_str(&order_line(&sys, Side::W));
    s.push_str(&order_line(&sys, Side::C));

    s.push_str("\nLaws the sources obey whatever the fields do (inv_c): charge conservation\n");
    s.push_str(&module_text(&sys, &laws.inv_c, Side::C)?);
    let full = laws.pi_c.module_equal(&QSubmodule::full(4, 4))?;
    let _ = writeln!(s, "pi_c is all of A^4, so the sources are otherwise unconstrained: {}", yes(full));

    s.push_str("\nLaws no controller can remove (inv_w): the homogeneous equations\n");
    s.push_str(&module_text(&sys, &laws.inv_w, Side::W)?);
    s.push_str("\nLaws no controller can exceed (pi_w): the vacuum equations\n");
    s.push_str(&module_text(&sys, &laws.pi_w, Side::W)?);
    if let Some(extra) = laws.inv_w.first_non_member(&laws.pi_w)? {
        let ord = crate::MonomialOrder::grevlex(4);
        let _ = writeln!(
            s,
            "inv_w is strictly smaller than pi_w; for example `{}` lies only in pi_w",
            format_law(&extra, &ord, sys.ring().var_names(), sys.partition().w_names())
        );
    }

    s.push_str("\nController rho = 0, with charge conservation:\n");
    s.push_str(&module_text(&sys, &m0, Side::C)?);
    let achieved = sys.psi(&m0)?;
    s.push_str("Field laws it imposes:\n");
    s.push_str(&module_text(&sys, &achieved, Side::W)?);
    let _ = writeln!(
        s,
        "equal to the homogeneous equations plus div E = 0: {}",
        yes(achieved.module_equal(&n0)?)
    );
    let synthesis = sys.synthesize_controller(&n0)?;
    s.push_str("\nCanonical controller for that target:\n");
    s.push_str(&module_text(&sys, &synthesis.controller, Side::C)?);
    let _ = writeln!(s, "equal to the controller above: {}", yes(synthesis.controller.module_equal(&m0)?));
    let _ = writeln!(s, "{}", certificate_text(&synthesis.certificate));
    out.write_all(s.as_bytes())?;
    Ok(if synthesis.certificate.passed() { EXIT_OK } else { EXIT_FALSE })
}
