//! Seeded random systems, targets and controllers for property checks.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::behavior::{ControlSystem, VariablePartition};
use crate::ring::{Exponent, OperatorKind, RingSpec};
use crate::{ModuleVector, QPolynomial, QSubmodule, QVector, Rational};

/// Size bounds for generated systems.
#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub kind: OperatorKind,
    pub nvars: RangeInclusive<usize>,
    pub k_w: RangeInclusive<usize>,
    pub k_c: RangeInclusive<usize>,
    pub max_degree: u32,
    /// Coefficients are drawn from `-max_coef..=max_coef`.
    pub max_coef: i64,
    pub max_terms: usize,
    pub generators: RangeInclusive<usize>,
}

impl RandomSpec {
    /// `n ≤ 3`, `k_w, k_c ≤ 3`, degree ≤ 2, coefficients in `-3..=3`.
    pub fn corpus(kind: OperatorKind) -> Self {
        RandomSpec {
            kind,
            nvars: 1..=3,
            k_w: 1..=3,
            k_c: 1..=3,
            max_degree: 2,
            max_coef: 3,
            max_terms: 2,
            generators: 1..=3,
        }
    }

    /// Shift systems small enough for the window oracle: `n ≤ 2`, total
    /// rank ≤ 4, degree ≤ 1.
    pub fn oracle() -> Self {
        RandomSpec {
            kind: OperatorKind::Shift,
            nvars: 1..=2,
            k_w: 1..=2,
            k_c: 1..=2,
            max_degree: 1,
            max_coef: 3,
            max_terms: 2,
            generators: 1..=3,
        }
    }
}

pub struct SystemGenerator {
    rng: ChaCha8Rng,
    bounds: RandomSpec,
}

fn operator_names(kind: OperatorKind, n: usize) -> Vec<String> {
    match kind {
        OperatorKind::Differential if n <= 3 => ["dx", "dy", "dz"][..n].iter().map(|s| s.to_string()).collect(),
        OperatorKind::Differential => (1..=n).map(|i| format!("d{i}")).collect(),
        OperatorKind::Shift => (1..=n).map(|i| format!("s{i}")).collect(),
    }
}

impl SystemGenerator {
    pub fn new(seed: u64, bounds: RandomSpec) -> Self {
        SystemGenerator { rng: ChaCha8Rng::seed_from_u64(seed), bounds }
    }

    fn coefficient(&mut self) -> Rational {
        let c = self.bounds.max_coef;
        loop {
            let v = self.rng.gen_range(-c..=c);
            if v != 0 {
                return Rational::from_integer(v.into());
            }
        }
    }

    pub fn exponent(&mut self, nvars: usize, max_degree: u32) -> Exponent {
        let degree = self.rng.gen_range(0..=max_degree);
        let mut powers = vec![0u32; nvars];
        for _ in 0..degree {
            powers[self.rng.gen_range(0..nvars)] += 1;
        }
        Exponent::from_slice(&powers)
    }

    /// A nonzero polynomial with up to `max_terms` terms.
    pub fn polynomial(&mut self, nvars: usize) -> QPolynomial {
        loop {
            let nterms = self.rng.gen_range(1..=self.bounds.max_terms);
            let terms: Vec<(Exponent, Rational)> = (0..nterms)
                .map(|_| (self.exponent(nvars, self.bounds.max_degree), self.coefficient()))
                .collect();
            let p = QPolynomial::from_terms(nvars, terms);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// A nonzero vector whose entries are each zero with probability 1/2.
    pub fn vector(&mut self, nvars: usize, rank: usize) -> QVector {
        loop {
            let entries = (0..rank)
                .map(|_| if self.rng.gen_bool(0.5) { self.polynomial(nvars) } else { QPolynomial::zero(nvars) })
                .collect();
            let v = ModuleVector::new(nvars, entries).expect("shared ring");
            if !v.is_zero() {
                return v;
            }
        }
    }

    pub fn module(&mut self, nvars: usize, rank: usize) -> QSubmodule {
        let count = self.rng.gen_range(self.bounds.generators.clone());
        let gens = (0..count).map(|_| self.vector(nvars, rank)).collect();
        QSubmodule::new(nvars, rank, gens).expect("consistent shapes")
    }

    pub fn system(&mut self) -> ControlSystem<Rational> {
        let n = self.rng.gen_range(self.bounds.nvars.clone());
        let k_w = self.rng.gen_range(self.bounds.k_w.clone());
        let k_c = self.rng.gen_range(self.bounds.k_c.clone());
        let ring = RingSpec::new(self.bounds.kind, operator_names(self.bounds.kind, n)).expect("distinct names");
        let partition = VariablePartition::new(
            (1..=k_w).map(|i| format!("w{i}")),
            (1..=k_c).map(|i| format!("c{i}")),
        )
        .expect("distinct names");
        let laws = self.module(n, k_w + k_c);
        ControlSystem::new(ring, partition, laws).expect("consistent shapes")
    }

    /// `Σ a_i x^{m_i} g_i` over `gens`, with `deg m_i ≤ 1`.
    fn combination(&mut self, gens: &[QVector], nvars: usize, rank: usize) -> QVector {
        let mut acc = ModuleVector::zero(nvars, rank);
        for g in gens {
            if self.rng.gen_bool(0.3) {
                continue;
            }
            let m = self.exponent(nvars, 1);
            let a = self.coefficient();
            acc = acc.try_add(&g.mul_monomial(&m, &a)).expect("same shape");
        }
        acc
    }

    /// `ι_w⁻¹(P)` plus one or two random combinations of `π_w(P)` generators.
    pub fn admissible_target(&mut self, sys: &ControlSystem<Rational>) -> QSubmodule {
        let laws = sys.derived_laws();
        let (n, k_w) = (sys.ring().nvars(), sys.partition().k_w());
        let upper: Vec<QVector> = laws.pi_w.generators().to_vec();
        let mut gens = laws.inv_w.generators().to_vec();
        for _ in 0..self.rng.gen_range(1..=2) {
            gens.push(self.combination(&upper, n, k_w));
        }
        QSubmodule::new(n, k_w, gens).expect("consistent shapes")
    }

    /// An arbitrary controller module on the `c` block.
    pub fn controller(&mut self, sys: &ControlSystem<Rational>) -> QSubmodule {
        self.module(sys.ring().nvars(), sys.partition().k_c())
    }

    /// `m` plus a random law outside it, when one is found among a few
    /// draws.
    pub fn corrupted(&mut self, m: &QSubmodule) -> Option<QSubmodule> {
        for _ in 0..16 {
            let extra = self.vector(m.nvars(), m.rank());
            if !m.is_member(&extra).expect("same shape") {
                let mut gens = m.generators().to_vec();
                gens.push(extra);
                return Some(QSubmodule::new(m.nvars(), m.rank(), gens).expect("same shape"));
            }
        }
        None
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
