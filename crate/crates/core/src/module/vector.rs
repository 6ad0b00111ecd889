use crate::error::{AlgebraError, Result};
use crate::ring::{Exponent, Polynomial};
use crate::scalar::Field;

/// An element of the free module `A^k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModuleVector<F> {
    nvars: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: Field> ModuleVector<F> {
    pub fn new(nvars: usize, entries: Vec<Polynomial<F>>) -> Result<Self> {
        for p in &entries {
            if p.nvars() != nvars {
                return Err(AlgebraError::RingMismatch { left: nvars, right: p.nvars() });
            }
        }
        Ok(ModuleVector { nvars, entries })
    }

    /// Builds a vector from nonempty entries that share a ring.
    pub fn from_entries(entries: Vec<Polynomial<F>>) -> Result<Self> {
        let nvars = entries
            .first()
            .map(Polynomial::nvars)
            .ok_or(AlgebraError::RankMismatch { expected: 1, found: 0 })?;
        Self::new(nvars, entries)
    }

    pub fn zero(nvars: usize, rank: usize) -> Self {
        ModuleVector { nvars, entries: vec![Polynomial::zero(nvars); rank] }
    }

    /// The standard basis vector `e_i`.
    pub fn unit(nvars: usize, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(nvars, rank);
        v.entries[i] = Polynomial::one(nvars);
        v
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entries(&self) -> &[Polynomial<F>] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &Polynomial<F> {
        &self.entries[i]
    }

    pub fn into_entries(self) -> Vec<Polynomial<F>> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub(crate) fn check_shape(&self, nvars: usize, rank: usize) -> Result<()> {
        if self.nvars != nvars {
            return Err(AlgebraError::RingMismatch { left: nvars, right: self.nvars });
        }
        if self.rank() != rank {
            return Err(AlgebraError::RankMismatch { expected: rank, found: self.rank() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        other.check_shape(self.nvars, self.rank())?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(ModuleVector { nvars: self.nvars, entries })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        other.check_shape(self.nvars, self.rank())?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(ModuleVector { nvars: self.nvars, entries })
    }

    /// Multiplies every entry by the ring element `p`.
    pub fn mul_poly(&self, p: &Polynomial<F>) -> Result<Self> {
        if p.nvars() != self.nvars {
            return Err(AlgebraError::RingMismatch { left: self.nvars, right: p.nvars() });
        }
        Ok(ModuleVector { nvars: self.nvars, entries: self.entries.iter().map(|e| e * p).collect() })
    }

    pub fn scale(&self, c: &F) -> Self {
        ModuleVector { nvars: self.nvars, entries: self.entries.iter().map(|e| e.scale(c)).collect() }
    }

    pub fn mul_monomial(&self, exp: &Exponent, c: &F) -> Self {
        ModuleVector {
            nvars: self.nvars,
            entries: self.entries.iter().map(|e| e.mul_monomial(exp, c)).collect(),
        }
    }

    /// The components at `positions`, in that order.
    pub fn restrict(&self, positions: &[usize]) -> Self {
        ModuleVector {
            nvars: self.nvars,
            entries: positions.iter().map(|&p| self.entries[p].clone()).collect(),
        }
    }

    /// Places the components of `self` at `positions` of a rank-`rank`
    /// vector, zero elsewhere.
    pub fn embed(&self, rank: usize, positions: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars, rank);
        for (v, &p) in self.entries.iter().zip(positions) {
            out.entries[p] = v.clone();
        }
        out
    }

    /// Concatenates the components of `self` and `other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        ModuleVector { nvars: self.nvars, entries }
    }

    /// Componentwise maximum exponent over every entry.
    pub fn support_hull(&self) -> Exponent {
        self.entries
            .iter()
            .fold(Exponent::zero(self.nvars), |acc, p| acc.join(&p.support_hull()))
    }

    pub(crate) fn extend_with_var(&self, power: u32) -> Self {
        ModuleVector {
            nvars: self.nvars + 1,
            entries: self.entries.iter().map(|p| p.extend_with_var(power)).collect(),
        }
    }

    pub(crate) fn drop_last_var(&self) -> Option<Self> {
        let entries = self
            .entries
            .iter()
            .map(Polynomial::drop_last_var)
            .collect::<Option<Vec<_>>>()?;
        Some(ModuleVector { nvars: self.nvars - 1, entries })
    }
}
