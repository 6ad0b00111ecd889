//! Exact polynomial arithmetic over the operator ring and the order
//! machinery used by the Gröbner engine.

mod exponent;
mod order;
mod poly;

pub use exponent::Exponent;
pub use order::{ModuleOrder, MonomialOrder, PositionRule, TermOrder};
pub use poly::Polynomial;

use crate::error::{AlgebraError, Result};

/// How the operator variables act on signals. Only printing and oracle
/// availability depend on it; the algebra is identical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    /// Partial derivatives acting on distributions or smooth functions.
    Differential,
    /// Coordinate shifts acting on functions on the lattice `N^n`.
    Shift,
}

impl OperatorKind {
    pub fn keyword(self) -> &'static str {
        match self {
            OperatorKind::Differential => "diff",
            OperatorKind::Shift => "shift",
        }
    }
}

/// The operator ring `Q[x_1, ..., x_n]` with named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    kind: OperatorKind,
    var_names: Vec<String>,
}

impl RingSpec {
    pub fn new<S: Into<String>>(kind: OperatorKind, names: impl IntoIterator<Item = S>) -> Result<Self> {
        let var_names: Vec<String> = names.into_iter().map(Into::into).collect();
        if var_names.is_empty() {
            return Err(AlgebraError::InvalidRing("at least one operator variable is required".into()));
        }
        for (i, n) in var_names.iter().enumerate() {
            if n.is_empty() {
                return Err(AlgebraError::InvalidRing("empty variable name".into()));
            }
            if var_names[..i].contains(n) {
                return Err(AlgebraError::InvalidRing(format!("variable `{n}` declared twice")));
            }
        }
        Ok(RingSpec { kind, var_names })
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|n| n == name)
    }
}
