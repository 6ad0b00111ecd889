//! Buchberger's algorithm for submodules of `A^k`.

use std::collections::HashSet;

use super::sorted::{reduce_full, top_reduce_primitive, SortedVec};
use super::ModuleVector;
use crate::error::Result;
use crate::ring::{Exponent, ModuleOrder};
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairStats {
    /// S-pairs created between basis elements with equal leading position.
    pub formed: usize,
    /// Pairs whose S-vector was actually reduced.
    pub reduced: usize,
    /// Reduced pairs whose S-vector vanished.
    pub reduced_to_zero: usize,
    pub skipped_product: usize,
    pub skipped_chain: usize,
}

/// A reduced Gröbner basis together with the order it is reduced for.
#[derive(Clone, Debug)]
pub struct GBReport<F> {
    pub order: ModuleOrder,
    /// Monic, sorted by leading position and then by descending leading
    /// monomial.
    pub basis: Vec<ModuleVector<F>>,
    pub stats: PairStats,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exponent,
    pos: usize,
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

struct Engine<'a, F> {
    ord: &'a ModuleOrder,
    basis: Vec<SortedVec<F>>,
    single: Vec<bool>,
    pairs: Vec<Pair>,
    pending: HashSet<(usize, usize)>,
    stats: PairStats,
}

impl<'a, F: Field> Engine<'a, F> {
    fn lead(&self, i: usize) -> (&Exponent, usize) {
        let t = self.basis[i].lead().expect("basis elements are nonzero");
        (&t.exp, t.pos)
    }

    fn insert(&mut self, v: SortedVec<F>) {
        let idx = self.basis.len();
        let single = v.single_position();
        let (exp, pos) = {
            let t = v.lead().unwrap();
            (t.exp.clone(), t.pos)
        };
        for i in 0..idx {
            let (ei, pi) = self.lead(i);
            if pi != pos {
                continue;
            }
            let coprime = ei.is_coprime(&exp);
            let lcm = ei.lcm(&exp);
            self.stats.formed += 1;
            // For vectors supported on one position the product criterion is
            // the classical ideal one; it is unsound for general vectors.
            if single && self.single[i] && coprime {
                self.stats.skipped_product += 1;
                continue;
            }
            self.pairs.push(Pair { i, j: idx, lcm, pos });
            self.pending.insert((i, idx));
        }
        self.basis.push(v);
        self.single.push(single);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ord = self.ord;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                ord.cmp((&a.lcm, a.pos), (&b.lcm, b.pos))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        let pair = self.pairs.swap_remove(best);
        self.pending.remove(&(pair.i, pair.j));
        Some(pair)
    }

    fn chain_criterion(&self, p: &Pair) -> bool {
        (0..self.basis.len()).any(|k| {
            if k == p.i || k == p.j {
                return false;
            }
            let (ek, pk) = self.lead(k);
            pk == p.pos
                && ek.divides(&p.lcm)
                && !self.pending.contains(&key(p.i, k))
                && !self.pending.contains(&key(p.j, k))
        })
    }

    fn s_vector(&self, p: &Pair) -> SortedVec<F> {
        let (gi, gj) = (&self.basis[p.i], &self.basis[p.j]);
        let (li, lj) = (gi.lead().unwrap(), gj.lead().unwrap());
        let mi = li.exp.quotient_of(&p.lcm).unwrap();
        let mj = lj.exp.quotient_of(&p.lcm).unwrap();
        let (ci, cj) = (li.coef.clone(), lj.coef.clone());
        gi.mul_monomial(&mi).lin_comb(Some(&cj), &ci, &mj, gj, self.ord)
    }

    fn run(&mut self) {
        while let Some(pair) = self.next_pair() {
            if self.chain_criterion(&pair) {
                self.stats.skipped_chain += 1;
                continue;
            }
            self.stats.reduced += 1;
            let mut s = self.s_vector(&pair);
            s.make_primitive();
            let divisors: Vec<&SortedVec<F>> = self.basis.iter().collect();
            let r = top_reduce_primitive(s, &divisors, self.ord);
            if r.is_zero() {
                self.stats.reduced_to_zero += 1;
            } else {
                self.insert(r);
            }
        }
    }

    /// Drops redundant elements, fully reduces the rest, makes them monic.
    fn finish(self) -> Vec<SortedVec<F>> {
        let n = self.basis.len();
        let keep: Vec<usize> = (0..n)
            .filter(|&i| {
                let (ei, pi) = self.lead(i);
                !(0..n).any(|j| {
                    if j == i {
                        return false;
                    }
                    let (ej, pj) = self.lead(j);
                    pj == pi && ej.divides(ei) && (ej != ei || j < i)
                })
            })
            .collect();
        let mut out = Vec::with_capacity(keep.len());
        for &i in &keep {
            let others: Vec<&SortedVec<F>> =
                keep.iter().filter(|&&j| j != i).map(|&j| &self.basis[j]).collect();
            let mut r = reduce_full(self.basis[i].clone(), &others, self.ord);
            r.make_monic();
            out.push(r);
        }
        out
    }
}

/// Computes the reduced Gröbner basis of the module generated by `gens`.
pub fn buchberger<F: Field>(
    gens: &[ModuleVector<F>],
    nvars: usize,
    rank: usize,
    ord: &ModuleOrder,
) -> Result<GBReport<F>> {
    check_order(ord, nvars, rank)?;
    for g in gens {
        g.check_shape(nvars, rank)?;
    }
    let mut engine = Engine {
        ord,
        basis: Vec::new(),
        single: Vec::new(),
        pairs: Vec::new(),
        pending: HashSet::new(),
        stats: PairStats::default(),
    };
    for g in gens {
        let mut v = SortedVec::from_vector(g, ord);
        if v.is_zero() {
            continue;
        }
        v.make_primitive();
        engine.insert(v);
    }
    engine.run();
    let stats = engine.stats;
    let mut reduced = engine.finish();
    reduced.sort_by(|a, b| {
        let (la, lb) = (a.lead().unwrap(), b.lead().unwrap());
        la.pos.cmp(&lb.pos).then_with(|| ord.base().cmp(&lb.exp, &la.exp))
    });
    Ok(GBReport {
        order: ord.clone(),
        basis: reduced.iter().map(|v| v.to_vector(nvars, rank)).collect(),
        stats,
    })
}

/// Multivariate division of `v` by `divisors` (in list order), reducing every
/// term, not just the leading one.
pub fn normal_form<F: Field>(
    v: &ModuleVector<F>,
    divisors: &[ModuleVector<F>],
    ord: &ModuleOrder,
) -> Result<ModuleVector<F>> {
    let (nvars, rank) = (v.nvars(), v.rank());
    check_order(ord, nvars, rank)?;
    for g in divisors {
        g.check_shape(nvars, rank)?;
    }
    let sorted: Vec<SortedVec<F>> = divisors
        .iter()
        .map(|g| SortedVec::from_vector(g, ord))
        .filter(|g| !g.is_zero())
        .collect();
    let refs: Vec<&SortedVec<F>> = sorted.iter().collect();
    let r = reduce_full(SortedVec::from_vector(v, ord), &refs, ord);
    Ok(r.to_vector(nvars, rank))
}

pub(crate) fn check_order(ord: &ModuleOrder, nvars: usize, rank: usize) -> Result<()> {
    use crate::error::AlgebraError;
    if ord.nvars() != nvars {
        return Err(AlgebraError::DimensionMismatch { expected: nvars, found: ord.nvars() });
    }
    if ord.rank() != rank {
        return Err(AlgebraError::RankMismatch { expected: rank, found: ord.rank() });
    }
    Ok(())
}
