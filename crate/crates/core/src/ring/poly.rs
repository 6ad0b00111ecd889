use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};


use super::{Exponent, MonomialOrder};
use crate::error::{AlgebraError, Result};
use crate::scalar::Field;

/// Multivariate polynomial with exact coefficients.
///
/// Storage is keyed by exponent and independent of any monomial order;
/// leading terms are computed against an order supplied by the caller.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: BTreeMap<Exponent, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(nvars, Exponent::zero(nvars), c)
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        Self::monomial(nvars, Exponent::var(nvars, var, 1), F::one())
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: F) -> Self {
        assert_eq!(exp.nvars(), nvars, "exponent length does not match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Polynomial { nvars, terms }
    }

    /// Sums the given terms, merging repeated exponents and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, F)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.nvars(), nvars, "exponent length does not match ring");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &Exponent) -> F {
        self.terms.get(exp).cloned().unwrap_or_else(F::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).max()
    }

    /// Componentwise maximum exponent over all terms.
    pub fn support_hull(&self) -> Exponent {
        self.terms
            .keys()
            .fold(Exponent::zero(self.nvars), |acc, e| acc.join(e))
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Exponent, &F)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Exponent, &F)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub(crate) fn add_term(&mut self, exp: Exponent, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::RingMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.mul(eb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, exp: &Exponent, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.mul(exp), x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Embeds into a ring with one extra trailing variable, multiplied by
    /// `var^power`.
    pub fn extend_with_var(&self, power: u32) -> Self {
        Polynomial {
            nvars: self.nvars + 1,
            terms: self.terms.iter().map(|(e, c)| (e.extended(power), c.clone())).collect(),
        }
    }

    /// Inverse of [`extend_with_var`](Self::extend_with_var) for polynomials
    /// free of the trailing variable; `None` if the variable occurs.
    pub fn drop_last_var(&self) -> Option<Self> {
        if self.terms.keys().any(|e| e.powers()[self.nvars - 1] != 0) {
            return None;
        }
        Some(Polynomial {
            nvars: self.nvars - 1,
            terms: self.terms.iter().map(|(e, c)| (e.truncated(), c.clone())).collect(),
        })
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Exponent::is_one)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<F: Field> $trait<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }
        impl<F: Field> $trait for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}
