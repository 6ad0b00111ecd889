//! Deterministic text output for polynomials, law vectors and modules.

use std::fmt::Write;

use crate::module::{ModuleVector, Submodule};
use crate::ring::{Exponent, ModuleOrder, MonomialOrder, Polynomial};
use crate::scalar::Field;
use crate::error::Result;

fn monomial(exp: &Exponent, var_names: &[String]) -> String {
    let mut parts = Vec::new();
    for (name, &p) in var_names.iter().zip(exp.powers()) {
        match p {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{p}")),
        }
    }
    parts.join("*")
}

/// Appends `coef * mono * tail` with the sign split off, so callers can join
/// terms with ` + ` / ` - `. `tail` may be empty.
fn push_term<F: Field>(out: &mut String, first: bool, coef: &F, mono: &str, tail: &str) {
    let negative = coef.is_negative();
    match (first, negative) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    let mag = coef.abs();
    let mut factors: Vec<String> = Vec::new();
    if !mag.is_one() || (mono.is_empty() && tail.is_empty()) {
        factors.push(mag.to_string());
    }
    if !mono.is_empty() {
        factors.push(mono.to_string());
    }
    if !tail.is_empty() {
        factors.push(tail.to_string());
    }
    out.push_str(&factors.join("*"));
}

/// A polynomial with terms in descending order; `0` for the zero polynomial.
pub fn format_polynomial<F: Field>(p: &Polynomial<F>, ord: &MonomialOrder, var_names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (exp, c)) in p.sorted_terms(ord).into_iter().enumerate() {
        push_term(&mut out, i == 0, c, &monomial(exp, var_names), "");
    }
    out
}

/// A law as a signal-linear expression, positions ascending.
pub fn format_law<F: Field>(
    v: &ModuleVector<F>,
    ord: &MonomialOrder,
    var_names: &[String],
    signal_names: &[String],
) -> String {
    let mut out = String::new();
    let mut first = true;
    for (p, name) in v.entries().iter().zip(signal_names) {
        if p.is_zero() {
            continue;
        }
        if p.len() == 1 {
            let (exp, c) = p.terms().next().expect("one term");
            push_term(&mut out, first, c, &monomial(exp, var_names), name);
        } else {
            if !first {
                out.push_str(" + ");
            }
            let _ = write!(out, "({})*{name}", format_polynomial(p, ord, var_names));
        }
        first = false;
    }
    if first {
        out.push('0');
    }
    out
}

/// The reduced Gröbner basis of `s` under `ord`, one law per line, in basis
/// order (leading position ascending, then leading monomial descending).
/// The zero module prints as `<0>`.
pub fn print_canonical<F: Field>(
    s: &Submodule<F>,
    ord: &ModuleOrder,
    var_names: &[String],
    signal_names: &[String],
) -> Result<String> {
    let gb = s.groebner(ord)?;
    if gb.basis.is_empty() {
        return Ok("<0>\n".into());
    }
    let mut out = String::new();
    for g in &gb.basis {
        out.push_str(&format_law(g, ord.base(), var_names, signal_names));
        out.push('\n');
    }
    Ok(out)
}

/// A `.bsysmod` file for `s`: an order header, the `vars` line and one
/// `law` line per reduced basis element.
pub fn format_module_file<F: Field>(
    s: &Submodule<F>,
    ord: &ModuleOrder,
    var_names: &[String],
    block: &str,
    signal_names: &[String],
) -> Result<String> {
    let gb = s.groebner(ord)?;
    let mut out = String::new();
    let _ = writeln!(out, "# order: {}", ord.describe(var_names, signal_names));
    let _ = writeln!(out, "vars {block}: {}", signal_names.join(" "));
    for g in &gb.basis {
        let _ = writeln!(out, "law {}", format_law(g, ord.base(), var_names, signal_names));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxwell::maxwell_system;
    use crate::{QPolynomial, QSubmodule, Rational};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn polynomial_text() {
        let x = QPolynomial::var(2, 0);
        let y = QPolynomial::var(2, 1);
        let p = &(&(&x * &x).scale(&q(-3, 2)) + &y) - &QPolynomial::one(2);
        let ord = MonomialOrder::grevlex(2);
        assert_eq!(format_polynomial(&p, &ord, &names(&["x", "y"])), "-3/2*x^2 + y - 1");
        assert_eq!(format_polynomial(&QPolynomial::zero(2), &ord, &names(&["x", "y"])), "0");
    }

    #[test]
    fn ideal_of_two_variables() {
        let x = QPolynomial::var(2, 0);
        let y = QPolynomial::var(2, 1);
        let s = QSubmodule::ideal(2, vec![&x + &y, &x - &y]).unwrap();
        let text = print_canonical(&s, &s.default_order(), &names(&["x", "y"]), &names(&["f"])).unwrap();
        assert_eq!(text, "x*f\ny*f\n");
    }

    #[test]
    fn zero_module() {
        let s = QSubmodule::zero(1, 2);
        let text = print_canonical(&s, &s.default_order(), &names(&["s"]), &names(&["a", "b"])).unwrap();
        assert_eq!(text, "<0>\n");
    }

    #[test]
    fn maxwell_continuity_line() {
        let sys = maxwell_system::<Rational>();
        let inv_c = &sys.derived_laws().inv_c;
        let text = print_canonical(inv_c, &inv_c.default_order(), sys.ring().var_names(), sys.partition().c_names()).unwrap();
        assert_eq!(text, "dt*rho + dx*J1 + dy*J2 + dz*J3\n");
    }

    #[test]
    fn multi_term_coefficients_are_parenthesized() {
        let s = QPolynomial::var(1, 0);
        let v = ModuleVector::new(1, vec![&s - &QPolynomial::one(1), QPolynomial::constant(1, q(-1, 1))]).unwrap();
        let text = format_law(&v, &MonomialOrder::grevlex(1), &names(&["s"]), &names(&["a", "b"]));
        assert_eq!(text, "(s - 1)*a - b");
    }
}
