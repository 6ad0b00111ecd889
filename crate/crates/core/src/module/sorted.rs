//! Order-specific working representation of module vectors: a flat list of
//! `(exponent, position, coefficient)` terms sorted ascending under a fixed
//! module order, so the leading term is the last element.

use std::cmp::Ordering;


use super::ModuleVector;
use crate::ring::{Exponent, ModuleOrder, Polynomial};
use crate::scalar::Field;

#[derive(Clone, Debug)]
pub(crate) struct Term<F> {
    pub exp: Exponent,
    pub pos: usize,
    pub coef: F,
}

#[derive(Clone, Debug)]
pub(crate) struct SortedVec<F> {
    pub terms: Vec<Term<F>>,
}

impl<F: Field> SortedVec<F> {
    pub fn from_vector(v: &ModuleVector<F>, ord: &ModuleOrder) -> Self {
        let mut terms: Vec<Term<F>> = v
            .entries()
            .iter()
            .enumerate()
            .flat_map(|(pos, p)| {
                p.terms().map(move |(e, c)| Term { exp: e.clone(), pos, coef: c.clone() })
            })
            .collect();
        terms.sort_by(|a, b| ord.cmp((&a.exp, a.pos), (&b.exp, b.pos)));
        SortedVec { terms }
    }

    pub fn to_vector(&self, nvars: usize, rank: usize) -> ModuleVector<F> {
        let mut entries = vec![Vec::new(); rank];
        for t in &self.terms {
            entries[t.pos].push((t.exp.clone(), t.coef.clone()));
        }
        let entries = entries
            .into_iter()
            .map(|ts| Polynomial::from_terms(nvars, ts))
            .collect();
        ModuleVector::new(nvars, entries).expect("terms share the ring")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term<F>> {
        self.terms.last()
    }

    pub fn single_position(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].pos == w[1].pos)
    }

    /// `a * self - b * x^m * g`, with `a = None` meaning one.
    pub fn lin_comb(&self, a: Option<&F>, b: &F, m: &Exponent, g: &SortedVec<F>, ord: &ModuleOrder) -> Self {
        let scaled = |t: &Term<F>| match a {
            Some(a) => Term { exp: t.exp.clone(), pos: t.pos, coef: t.coef.clone() * a.clone() },
            None => t.clone(),
        };
        let mut rhs = g.terms.iter().map(|t| Term {
            exp: t.exp.mul(m),
            pos: t.pos,
            coef: -(t.coef.clone() * b.clone()),
        });
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut lhs = self.terms.iter().peekable();
        let mut next = rhs.next();
        loop {
            match (lhs.peek(), next.take()) {
                (Some(x), Some(y)) => match ord.cmp((&x.exp, x.pos), (&y.exp, y.pos)) {
                    Ordering::Less => {
                        out.push(scaled(x));
                        lhs.next();
                        next = Some(y);
                    }
                    Ordering::Greater => {
                        out.push(y);
                        next = rhs.next();
                    }
                    Ordering::Equal => {
                        let mut t = scaled(x);
                        t.coef = t.coef + y.coef;
                        if !t.coef.is_zero() {
                            out.push(t);
                        }
                        lhs.next();
                        next = rhs.next();
                    }
                },
                (Some(x), None) => {
                    out.push(scaled(x));
                    lhs.next();
                }
                (None, Some(y)) => {
                    out.push(y);
                    next = rhs.next();
                }
                (None, None) => break,
            }
        }
        SortedVec { terms: out }
    }

    pub fn mul_monomial(&self, m: &Exponent) -> Self {
        SortedVec {
            terms: self
                .terms
                .iter()
                .map(|t| Term { exp: t.exp.mul(m), pos: t.pos, coef: t.coef.clone() })
                .collect(),
        }
    }

    /// Scales to a primitive integer vector with positive leading coefficient.
    pub fn make_primitive(&mut self) {
        let mut s = F::primitive_scale(self.terms.iter().map(|t| &t.coef));
        if self.lead().is_some_and(|t| t.coef.is_negative()) {
            s = -s;
        }
        if !s.is_one() {
            for t in &mut self.terms {
                t.coef = t.coef.clone() * s.clone();
            }
        }
    }

    pub fn make_monic(&mut self) {
        if let Some(lc) = self.lead().map(|t| t.coef.clone()) {
            if !lc.is_one() {
                let inv = F::one() / lc;
                for t in &mut self.terms {
                    t.coef = t.coef.clone() * inv.clone();
                }
            }
        }
    }
}

/// Index of the first divisor whose leading monomial divides `(exp, pos)`.
pub(crate) fn find_reducer<F>(divisors: &[&SortedVec<F>], exp: &Exponent, pos: usize) -> Option<usize> {
    divisors.iter().position(|g| match g.terms.last() {
        Some(l) => l.pos == pos && l.exp.divides(exp),
        None => false,
    })
}

/// Full reduction over the field: the remainder has no term divisible by a
/// leading monomial of `divisors`, and `p - remainder` lies in their span.
pub(crate) fn reduce_full<F: Field>(mut p: SortedVec<F>, divisors: &[&SortedVec<F>], ord: &ModuleOrder) -> SortedVec<F> {
    let mut rem: Vec<Term<F>> = Vec::new();
    while let Some(lt) = p.terms.last() {
        match find_reducer(divisors, &lt.exp, lt.pos) {
            Some(k) => {
                let g = divisors[k];
                let gl = g.lead().unwrap();
                let m = gl.exp.quotient_of(&lt.exp).unwrap();
                let c = lt.coef.clone() / gl.coef.clone();
                p = p.lin_comb(None, &c, &m, g, ord);
            }
            None => rem.push(p.terms.pop().unwrap()),
        }
    }
    rem.reverse();
    SortedVec { terms: rem }
}

/// Fraction-free top reduction; the result is only defined up to a nonzero
/// scalar, which is all the Gröbner loop needs.
pub(crate) fn top_reduce_primitive<F: Field>(mut p: SortedVec<F>, divisors: &[&SortedVec<F>], ord: &ModuleOrder) -> SortedVec<F> {
    while let Some(lt) = p.terms.last() {
        let Some(k) = find_reducer(divisors, &lt.exp, lt.pos) else {
            break;
        };
        let g = divisors[k];
        let gl = g.lead().unwrap();
        let m = gl.exp.quotient_of(&lt.exp).unwrap();
        let (a, b) = (gl.coef.clone(), lt.coef.clone());
        p = p.lin_comb(Some(&a), &b, &m, g, ord);
        p.make_primitive();
    }
    p
}
