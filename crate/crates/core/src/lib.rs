//! Achievable subsystems of linear distributed systems.
//!
//! A system is a submodule `P ⊆ A^(k_w + k_c)` of laws over a polynomial
//! operator ring `A = Q[x_1, ..., x_n]` (partial derivatives or shifts). This
//! crate computes the derived law modules `π_w(P)`, `ι_w⁻¹(P)`, `π_c(P)` and
//! `ι_c⁻¹(P)`, decides admissibility of target law modules, synthesizes the
//! canonical controller `Φ(N) = ι_c⁻¹(ι_w(N) + P)` and computes the
//! controlled behavior `Ψ(M) = ι_w⁻¹(ι_c(M) + P)`.
//!
//! All algebra is generic over the coefficient [`Field`]; the aliases below
//! fix it to arbitrary-precision rationals, which is what the parser, CLI
//! and trajectory oracle use.

pub mod behavior;
pub mod cli;
pub mod error;
pub mod io;
pub mod maxwell;
pub mod module;
pub mod oracle;
pub mod random;
pub mod ring;
pub mod scalar;

pub use error::AlgebraError;
pub use module::{GBReport, ModuleVector, Submodule};
pub use ring::{ModuleOrder, MonomialOrder, OperatorKind, Polynomial, RingSpec};
pub use scalar::Field;

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
pub type QPolynomial = Polynomial<Rational>;
pub type QVector = ModuleVector<Rational>;
pub type QSubmodule = Submodule<Rational>;
