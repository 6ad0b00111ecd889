//! Finitely generated submodules of `A^k` and the Gröbner machinery behind
//! membership, equality, elimination and intersection.

mod groebner;
mod sorted;
mod vector;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use groebner::{buchberger, normal_form, GBReport, PairStats};
pub use vector::ModuleVector;

use crate::error::{AlgebraError, Result};
use crate::ring::{Exponent, ModuleOrder, MonomialOrder, Polynomial};
use crate::scalar::Field;

/// A submodule of `A^rank` given by generators, with reduced Gröbner bases
/// cached per module order.
#[derive(Clone, Debug)]
pub struct Submodule<F> {
    nvars: usize,
    rank: usize,
    generators: Vec<ModuleVector<F>>,
    cache: BTreeMap<ModuleOrder, Arc<GBReport<F>>>,
}

impl<F: Field> Submodule<F> {
    pub fn new(nvars: usize, rank: usize, generators: Vec<ModuleVector<F>>) -> Result<Self> {
        for g in &generators {
            g.check_shape(nvars, rank)?;
        }
        Ok(Submodule { nvars, rank, generators, cache: BTreeMap::new() })
    }

    pub fn zero(nvars: usize, rank: usize) -> Self {
        Submodule { nvars, rank, generators: Vec::new(), cache: BTreeMap::new() }
    }

    /// The whole free module, generated by the unit vectors.
    pub fn full(nvars: usize, rank: usize) -> Self {
        let gens = (0..rank).map(|i| ModuleVector::unit(nvars, rank, i)).collect();
        Submodule { nvars, rank, generators: gens, cache: BTreeMap::new() }
    }

    /// Ideal generated by `polys` (rank one).
    pub fn ideal(nvars: usize, polys: Vec<Polynomial<F>>) -> Result<Self> {
        let gens = polys
            .into_iter()
            .map(|p| ModuleVector::new(nvars, vec![p]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(nvars, 1, gens)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[ModuleVector<F>] {
        &self.generators
    }

    pub fn default_order(&self) -> ModuleOrder {
        ModuleOrder::default_for(self.nvars, self.rank)
    }

    /// Reduced Gröbner basis under `ord`, taken from the cache when present.
    pub fn groebner(&self, ord: &ModuleOrder) -> Result<Arc<GBReport<F>>> {
        if let Some(gb) = self.cache.get(ord) {
            return Ok(Arc::clone(gb));
        }
        Ok(Arc::new(buchberger(&self.generators, self.nvars, self.rank, ord)?))
    }

    /// Returns the same module with the basis for `ord` cached.
    pub fn with_groebner(mut self, ord: &ModuleOrder) -> Result<Self> {
        if !self.cache.contains_key(ord) {
            let gb = self.groebner(ord)?;
            self.cache.insert(ord.clone(), gb);
        }
        Ok(self)
    }

    /// Reduced basis under the default order.
    pub fn reduced_basis(&self) -> Result<Vec<ModuleVector<F>>> {
        Ok(self.groebner(&self.default_order())?.basis.clone())
    }

    pub fn is_zero_module(&self) -> bool {
        self.generators.iter().all(ModuleVector::is_zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::RingMismatch { left: self.nvars, right: other.nvars });
        }
        if self.rank != other.rank {
            return Err(AlgebraError::RankMismatch { expected: self.rank, found: other.rank });
        }
        Ok(())
    }

    pub fn is_member(&self, v: &ModuleVector<F>) -> Result<bool> {
        v.check_shape(self.nvars, self.rank)?;
        if v.is_zero() {
            return Ok(true);
        }
        let ord = self.default_order();
        let gb = self.groebner(&ord)?;
        Ok(normal_form(v, &gb.basis, &ord)?.is_zero())
    }

    /// First generator of `other` that is not in `self`, if any.
    pub fn first_non_member(&self, other: &Self) -> Result<Option<ModuleVector<F>>> {
        self.check_compatible(other)?;
        for g in &other.generators {
            if !self.is_member(g)? {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        Ok(self.first_non_member(other)?.is_none())
    }

    /// Equality as modules: identical reduced bases under the default order.
    pub fn module_equal(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        let ord = self.default_order();
        Ok(self.groebner(&ord)?.basis == other.groebner(&ord)?.basis)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::new(self.nvars, self.rank, gens)
    }

    fn check_block(&self, block: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.rank];
        for &p in block {
            if p >= self.rank {
                return Err(AlgebraError::InvalidPosition { position: p, rank: self.rank });
            }
            if seen[p] {
                return Err(AlgebraError::DuplicatePosition(p));
            }
            seen[p] = true;
        }
        Ok(())
    }

    /// Image under the projection onto the positions in `block`.
    pub fn project_block(&self, block: &[usize]) -> Result<Self> {
        self.check_block(block)?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.restrict(block))
            .filter(|g| !g.is_zero())
            .collect();
        Self::new(self.nvars, block.len(), gens)
    }

    /// `{ p : ι_block(p) ∈ self }`: the laws of `self` supported on `block`,
    /// computed by eliminating the complementary positions.
    pub fn preimage_block(&self, block: &[usize]) -> Result<Self> {
        self.check_block(block)?;
        let complement: Vec<usize> = (0..self.rank).filter(|p| !block.contains(p)).collect();
        let ord = self.default_order().with_elimination_block(&complement)?;
        let gb = self.groebner(&ord)?;
        let gens = gb
            .basis
            .iter()
            .filter(|g| complement.iter().all(|&p| g.entry(p).is_zero()))
            .map(|g| g.restrict(block))
            .collect();
        Self::new(self.nvars, block.len(), gens)
    }

    /// The module `ι_block(self)` of rank `rank`.
    pub fn embed(&self, rank: usize, block: &[usize]) -> Result<Self> {
        if block.len() != self.rank {
            return Err(AlgebraError::RankMismatch { expected: self.rank, found: block.len() });
        }
        let target = Submodule::<F>::zero(self.nvars, rank);
        target.check_block(block)?;
        let gens = self.generators.iter().map(|g| g.embed(rank, block)).collect();
        Self::new(self.nvars, rank, gens)
    }

    /// `self ∩ other`, by adjoining an auxiliary variable `t` and eliminating
    /// it from `t·self + (1 - t)·other`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.nvars;
        let one_minus_t = Polynomial::one(n + 1)
            - Polynomial::monomial(n + 1, Exponent::var(n + 1, n, 1), F::one());
        let mut gens: Vec<ModuleVector<F>> =
            self.generators.iter().map(|g| g.extend_with_var(1)).collect();
        for g in &other.generators {
            gens.push(g.extend_with_var(0).mul_poly(&one_minus_t)?);
        }
        let base = MonomialOrder::grevlex(n + 1).with_elimination(&[n])?;
        let ord = ModuleOrder::top(base, self.rank);
        let gb = buchberger(&gens, n + 1, self.rank, &ord)?;
        let gens = gb.basis.iter().filter_map(ModuleVector::drop_last_var).collect();
        Self::new(n, self.rank, gens)
    }

    /// Cofactors `h` with `v = Σ h_i g_i` over the generators of `self`, or
    /// `None` when `v` is not in the module.
    pub fn lift(&self, v: &ModuleVector<F>) -> Result<Option<Vec<Polynomial<F>>>> {
        Ok(self.lift_all(std::slice::from_ref(v))?.pop().flatten())
    }

    /// [`Submodule::lift`] for several vectors, sharing one Gröbner basis.
    pub fn lift_all(&self, vs: &[ModuleVector<F>]) -> Result<Vec<Option<Vec<Polynomial<F>>>>> {
        for v in vs {
            v.check_shape(self.nvars, self.rank)?;
        }
        let ell = self.generators.len();
        let total = self.rank + ell;
        // Tag each generator with its own unit vector; eliminating the
        // original positions leaves the cofactors in the tags.
        let gens: Vec<ModuleVector<F>> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| g.concat(&ModuleVector::unit(self.nvars, ell, i)))
            .collect();
        let block: Vec<usize> = (0..self.rank).collect();
        let ord = ModuleOrder::default_for(self.nvars, total).with_elimination_block(&block)?;
        let gb = buchberger(&gens, self.nvars, total, &ord)?;
        let mut out = Vec::with_capacity(vs.len());
        for v in vs {
            let target = v.concat(&ModuleVector::zero(self.nvars, ell));
            let r = normal_form(&target, &gb.basis, &ord)?;
            if block.iter().any(|&p| !r.entry(p).is_zero()) {
                out.push(None);
                continue;
            }
            let cofactors: Vec<Polynomial<F>> = (self.rank..total).map(|p| -r.entry(p)).collect();
            debug_assert!(self.combine(&cofactors).map(|c| &c == v).unwrap_or(false));
            out.push(Some(cofactors));
        }
        Ok(out)
    }

    /// `Σ h_i g_i` over the generators.
    pub fn combine(&self, cofactors: &[Polynomial<F>]) -> Result<ModuleVector<F>> {
        if cofactors.len() != self.generators.len() {
            return Err(AlgebraError::RankMismatch {
                expected: self.generators.len(),
                found: cofactors.len(),
            });
        }
        let mut acc = ModuleVector::zero(self.nvars, self.rank);
        for (h, g) in cofactors.iter().zip(&self.generators) {
            acc = acc.try_add(&g.mul_poly(h)?)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests;
