//! Monomial orders on exponents and module orders on `(exponent, position)`
//! pairs.

use std::cmp::Ordering;

use super::Exponent;
use crate::error::{AlgebraError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermOrder {
    Lex,
    GrLex,
    GrevLex,
}

impl TermOrder {
    pub fn name(self) -> &'static str {
        match self {
            TermOrder::Lex => "lex",
            TermOrder::GrLex => "grlex",
            TermOrder::GrevLex => "grevlex",
        }
    }

    fn cmp_on(self, a: &[u32], b: &[u32], vars: &[usize]) -> Ordering {
        let lex = || {
            for &i in vars {
                match a[i].cmp(&b[i]) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            Ordering::Equal
        };
        let degree = |e: &[u32]| vars.iter().map(|&i| e[i] as u64).sum::<u64>();
        match self {
            TermOrder::Lex => lex(),
            TermOrder::GrLex => degree(a).cmp(&degree(b)).then_with(lex),
            TermOrder::GrevLex => degree(a).cmp(&degree(b)).then_with(|| {
                for &i in vars.iter().rev() {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// A term order together with a variable priority. The first `elim_block`
/// variables of the priority list form a block that is compared first (a
/// product order), which is what elimination of auxiliary variables needs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialOrder {
    term_order: TermOrder,
    var_priority: Vec<usize>,
    elim_block: usize,
}

impl MonomialOrder {
    pub fn new(term_order: TermOrder, nvars: usize) -> Self {
        MonomialOrder {
            term_order,
            var_priority: (0..nvars).collect(),
            elim_block: 0,
        }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(TermOrder::GrevLex, nvars)
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(TermOrder::Lex, nvars)
    }

    /// Replaces the variable priority; `priority[0]` is the largest variable.
    pub fn with_priority(mut self, priority: &[usize]) -> Result<Self> {
        check_permutation(priority, self.nvars())?;
        self.var_priority = priority.to_vec();
        self.elim_block = 0;
        Ok(self)
    }

    /// Makes `vars` a dominant block: any monomial involving them beats every
    /// monomial free of them. Relative priorities are otherwise preserved.
    pub fn with_elimination(mut self, vars: &[usize]) -> Result<Self> {
        for &v in vars {
            if v >= self.nvars() {
                return Err(AlgebraError::InvalidOrder(format!("variable {v} out of range")));
            }
        }
        let (mut front, back): (Vec<usize>, Vec<usize>) =
            self.var_priority.iter().partition(|v| vars.contains(v));
        self.elim_block = front.len();
        front.extend(back);
        self.var_priority = front;
        Ok(self)
    }

    pub fn term_order(&self) -> TermOrder {
        self.term_order
    }

    pub fn nvars(&self) -> usize {
        self.var_priority.len()
    }

    pub fn var_priority(&self) -> &[usize] {
        &self.var_priority
    }

    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        let (a, b) = (a.powers(), b.powers());
        let (head, tail) = self.var_priority.split_at(self.elim_block);
        if head.is_empty() {
            return self.term_order.cmp_on(a, b, tail);
        }
        self.term_order
            .cmp_on(a, b, head)
            .then_with(|| self.term_order.cmp_on(a, b, tail))
    }

    pub fn compare(&self, a: &Exponent, b: &Exponent) -> Result<Ordering> {
        for e in [a, b] {
            if e.nvars() != self.nvars() {
                return Err(AlgebraError::DimensionMismatch {
                    expected: self.nvars(),
                    found: e.nvars(),
                });
            }
        }
        Ok(self.cmp(a, b))
    }

    pub fn describe(&self, var_names: &[String]) -> String {
        let name = |i: usize| var_names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
        let (head, tail) = self.var_priority.split_at(self.elim_block);
        let chain = |vs: &[usize]| vs.iter().map(|&v| name(v)).collect::<Vec<_>>().join(" > ");
        if head.is_empty() {
            format!("{}({})", self.term_order.name(), chain(tail))
        } else {
            format!("{}({} >> {})", self.term_order.name(), chain(head), chain(tail))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PositionRule {
    /// Term over position: compare monomials first, positions break ties.
    Top,
    /// Position over term.
    Pot,
}

/// Order on module monomials `x^a e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleOrder {
    base: MonomialOrder,
    rule: PositionRule,
    /// `weight[i]` is the priority of position `i`; larger wins.
    weight: Vec<u32>,
    elim: Vec<bool>,
}

impl ModuleOrder {
    /// Position 0 gets the highest priority.
    pub fn new(base: MonomialOrder, rule: PositionRule, rank: usize) -> Self {
        ModuleOrder {
            base,
            rule,
            weight: (0..rank as u32).rev().collect(),
            elim: vec![false; rank],
        }
    }

    pub fn top(base: MonomialOrder, rank: usize) -> Self {
        Self::new(base, PositionRule::Top, rank)
    }

    pub fn pot(base: MonomialOrder, rank: usize) -> Self {
        Self::new(base, PositionRule::Pot, rank)
    }

    /// Term-over-position grevlex in declaration order.
    pub fn default_for(nvars: usize, rank: usize) -> Self {
        Self::top(MonomialOrder::grevlex(nvars), rank)
    }

    /// `priority` lists all positions, highest first.
    pub fn with_position_priority(mut self, priority: &[usize]) -> Result<Self> {
        check_permutation(priority, self.rank())?;
        let k = self.rank() as u32;
        for (i, &p) in priority.iter().enumerate() {
            self.weight[p] = k - 1 - i as u32;
        }
        Ok(self)
    }

    /// Every monomial at a position in `block` exceeds every monomial at a
    /// position outside it.
    pub fn with_elimination_block(mut self, block: &[usize]) -> Result<Self> {
        let mut elim = vec![false; self.rank()];
        for &p in block {
            if p >= self.rank() {
                return Err(AlgebraError::InvalidPosition { position: p, rank: self.rank() });
            }
            if elim[p] {
                return Err(AlgebraError::DuplicatePosition(p));
            }
            elim[p] = true;
        }
        self.elim = elim;
        Ok(self)
    }

    pub fn base(&self) -> &MonomialOrder {
        &self.base
    }

    pub fn rule(&self) -> PositionRule {
        self.rule
    }

    pub fn rank(&self) -> usize {
        self.weight.len()
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    pub fn elimination_block(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&p| self.elim[p]).collect()
    }

    /// Unchecked comparison used on hot paths.
    pub fn cmp(&self, a: (&Exponent, usize), b: (&Exponent, usize)) -> Ordering {
        let block = self.elim[a.1].cmp(&self.elim[b.1]);
        if block != Ordering::Equal {
            return block;
        }
        let pos = || self.weight[a.1].cmp(&self.weight[b.1]);
        match self.rule {
            PositionRule::Top => self.base.cmp(a.0, b.0).then_with(pos),
            PositionRule::Pot => pos().then_with(|| self.base.cmp(a.0, b.0)),
        }
    }

    pub fn compare(&self, a: (&Exponent, usize), b: (&Exponent, usize)) -> Result<Ordering> {
        for (e, p) in [a, b] {
            if p >= self.rank() {
                return Err(AlgebraError::InvalidPosition { position: p, rank: self.rank() });
            }
            if e.nvars() != self.nvars() {
                return Err(AlgebraError::DimensionMismatch {
                    expected: self.nvars(),
                    found: e.nvars(),
                });
            }
        }
        Ok(self.cmp(a, b))
    }

    pub fn describe(&self, var_names: &[String], position_names: &[String]) -> String {
        let mut positions: Vec<usize> = (0..self.rank()).collect();
        positions.sort_by(|a, b| self.weight[*b].cmp(&self.weight[*a]));
        let pname = |p: usize| {
            position_names.get(p).cloned().unwrap_or_else(|| format!("e{}", p + 1))
        };
        let chain = positions.iter().map(|&p| pname(p)).collect::<Vec<_>>().join(" > ");
        let rule = match self.rule {
            PositionRule::Top => "TOP",
            PositionRule::Pot => "POT",
        };
        let mut s = format!("{rule} {}, positions {chain}", self.base.describe(var_names));
        let block = self.elimination_block();
        if !block.is_empty() {
            let names: Vec<String> = block.into_iter().map(pname).collect();
            s.push_str(&format!(", dominant block {{{}}}", names.join(", ")));
        }
        s
    }
}

fn check_permutation(perm: &[usize], len: usize) -> Result<()> {
    if perm.len() != len {
        return Err(AlgebraError::InvalidOrder(format!(
            "priority lists {} entries, expected {len}",
            perm.len()
        )));
    }
    let mut seen = vec![false; len];
    for &p in perm {
        if p >= len || seen[p] {
            return Err(AlgebraError::InvalidOrder(format!("priority is not a permutation: {perm:?}")));
        }
        seen[p] = true;
    }
    Ok(())
}
