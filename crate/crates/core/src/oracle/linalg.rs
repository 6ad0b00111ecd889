//! Sparse fraction-free elimination over the integers.
//!
//! Rows are kept primitive (content divided out after every combination),
//! which bounds entry growth the way Bareiss division does for dense
//! matrices while preserving sparsity.

use num_integer::Integer;
use num_traits::Signed;

/// A sparse row: `(column, value)` with strictly increasing columns and no
/// zero values.
pub type SparseRow<T> = Vec<(usize, T)>;

fn make_primitive<T: Integer + Signed + Clone>(row: &mut SparseRow<T>) {
    let mut g = T::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return;
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.div_floor(&g);
        }
    }
}

/// `a*x - b*y` with both rows sparse.
fn combine<T: Integer + Signed + Clone>(a: &T, x: &SparseRow<T>, b: &T, y: &SparseRow<T>) -> SparseRow<T> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a.clone() * x[i].1.clone()));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b.clone() * y[j].1.clone())));
            j += 1;
        } else {
            let v = a.clone() * x[i].1.clone() - b.clone() * y[j].1.clone();
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn entry<T: Clone>(row: &SparseRow<T>, col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|k| &row[k].1)
}

/// Reduced row echelon form (up to row scaling): every returned row is
/// primitive, has a positive pivot, and is zero in every other pivot column.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub ncols: usize,
    pub rows: Vec<SparseRow<T>>,
    pub pivots: Vec<usize>,
}

impl<T: Integer + Signed + Clone> Echelon<T> {
    pub fn new(ncols: usize, rows: impl IntoIterator<Item = SparseRow<T>>) -> Self {
        let mut pending: Vec<SparseRow<T>> = rows
            .into_iter()
            .filter(|r| !r.is_empty())
            .map(|mut r| {
                debug_assert!(r.iter().all(|(c, v)| *c < ncols && !v.is_zero()));
                make_primitive(&mut r);
                r
            })
            .collect();
        let mut done: Vec<SparseRow<T>> = Vec::new();
        let mut pivots = Vec::new();
        while !pending.is_empty() {
            let col = pending.iter().map(|r| r[0].0).min().expect("nonempty");
            // Among rows starting at `col`, the sparsest one becomes the pivot.
            let k = (0..pending.len())
                .filter(|&k| pending[k][0].0 == col)
                .min_by_key(|&k| pending[k].len())
                .expect("some row starts at col");
            let pivot = pending.swap_remove(k);
            let p = pivot[0].1.clone();
            let eliminate = |row: &mut SparseRow<T>| {
                if let Some(a) = entry(row, col).cloned() {
                    let g = p.gcd(&a);
                    let mut r = combine(&(p.clone() / g.clone()), row, &(a / g), &pivot);
                    if !r.is_empty() {
                        make_primitive(&mut r);
                    }
                    *row = r;
                }
            };
            pending.iter_mut().for_each(eliminate);
            pending.retain(|r| !r.is_empty());
            done.iter_mut().for_each(eliminate);
            done.push(pivot);
            pivots.push(col);
        }
        for row in done.iter_mut() {
            if row[0].1.is_negative() {
                row.iter_mut().for_each(|(_, v)| *v = -v.clone());
            }
        }
        Echelon { ncols, rows: done, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Integer kernel basis, one vector per free column, each primitive with
    /// a positive first nonzero entry. Ordered by free column.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.ncols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            // x_f = 1, x_pivot(r) = -row_r[f] / p_r; clear denominators by
            // the lcm of the pivots that touch column f.
            let touching: Vec<(usize, &T, &T)> = self
                .rows
                .iter()
                .zip(&self.pivots)
                .filter_map(|(row, &c)| entry(row, f).map(|v| (c, &row[0].1, v)))
                .collect();
            let scale = touching.iter().fold(T::one(), |acc, (_, p, _)| acc.lcm(p));
            let mut v = vec![T::zero(); self.ncols];
            v[f] = scale.clone();
            for (c, p, a) in touching {
                v[c] = -(scale.clone() / p.clone()) * a.clone();
            }
            let mut sparse: SparseRow<T> =
                v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
            make_primitive(&mut sparse);
            let mut dense = vec![T::zero(); self.ncols];
            for (i, x) in sparse {
                dense[i] = x;
            }
            basis.push(dense);
        }
        basis
    }
}

/// Rank of a set of dense vectors.
pub fn rank_of<T: Integer + Signed + Clone>(ncols: usize, vectors: &[Vec<T>]) -> usize {
    let rows = vectors.iter().map(|v| {
        v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect::<SparseRow<T>>()
    });
    Echelon::new(ncols, rows).rank()
}
