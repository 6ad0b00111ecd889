use std::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial in the operator variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exponent(SmallVec<[u32; 6]>);

impl Exponent {
    pub fn zero(nvars: usize) -> Self {
        Exponent(SmallVec::from_elem(0, nvars))
    }

    /// The monomial `x_var^power`.
    pub fn var(nvars: usize, var: usize, power: u32) -> Self {
        let mut e = Self::zero(nvars);
        e.0[var] = power;
        e
    }

    pub fn from_slice(powers: &[u32]) -> Self {
        Exponent(SmallVec::from_slice(powers))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn powers(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&p| p == 0)
    }

    pub fn mul(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.nvars(), other.nvars());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Exponent) -> Option<Exponent> {
        if self.divides(other) {
            Some(Exponent(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Componentwise maximum, used for shift margins.
    pub fn join(&self, other: &Exponent) -> Exponent {
        self.lcm(other)
    }

    /// Appends a new variable with the given power.
    pub fn extended(&self, power: u32) -> Exponent {
        let mut v = self.0.clone();
        v.push(power);
        Exponent(v)
    }

    /// Drops the last variable.
    pub fn truncated(&self) -> Exponent {
        let mut v = self.0.clone();
        v.pop();
        Exponent(v)
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}
