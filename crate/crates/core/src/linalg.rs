//! Exact linear algebra: an incremental sparse echelon basis that can express
//! a vector as a combination of the inserted rows, and a fraction-free
//! (Bareiss) rank routine over polynomial matrices.

use std::collections::BTreeMap;

use crate::coeff::{Coefficient, MultiPoly};

/// Minimal field interface for the echelon engine.
pub trait Field: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl Field for Coefficient {
    fn zero() -> Self {
        Coefficient::zero()
    }
    fn one() -> Self {
        Coefficient::one()
    }
    fn is_zero(&self) -> bool {
        Coefficient::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Option<Self> {
        Coefficient::inv(self).ok()
    }
}

pub type SparseVec<C, K> = BTreeMap<C, K>;

#[derive(Debug, Clone)]
struct BasisRow<C, K> {
    vec: SparseVec<C, K>,
    origin: usize,
    /// Inverse of the leading coefficient before normalization.
    scale: K,
    /// Multiples of earlier basis rows subtracted during reduction.
    trace: Vec<(usize, K)>,
}

/// Row-echelon basis keyed by leading column (the greatest column present).
///
/// Every stored row is monic at its pivot and remembers how it was derived
/// from an original input row, so membership can be turned into an explicit
/// combination of the inputs.
#[derive(Debug, Clone)]
pub struct EchelonBasis<C, K> {
    rows: Vec<BasisRow<C, K>>,
    pivots: BTreeMap<C, usize>,
}

impl<C: Ord + Clone, K: Field> Default for EchelonBasis<C, K> {
    fn default() -> Self {
        Self::new()
    }
}

fn axpy<C: Ord + Clone, K: Field>(v: &mut SparseVec<C, K>, f: &K, row: &SparseVec<C, K>) {
    for (c, x) in row {
        let t = f.mul(x);
        match v.get_mut(c) {
            Some(y) => {
                let s = y.sub(&t);
                if s.is_zero() {
                    v.remove(c);
                } else {
                    *y = s;
                }
            }
            None => {
                v.insert(c.clone(), K::zero().sub(&t));
            }
        }
    }
}

impl<C: Ord + Clone, K: Field> EchelonBasis<C, K> {
    pub fn new() -> Self {
        EchelonBasis {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Origins of the rows kept as independent, in insertion order.
    pub fn origins(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.origin).collect()
    }

    fn reduce(&self, mut v: SparseVec<C, K>) -> (SparseVec<C, K>, Vec<(usize, K)>) {
        let mut used = Vec::new();
        while let Some((k, c)) = v.last_key_value() {
            let (lead, c) = (k.clone(), c.clone());
            let Some(&r) = self.pivots.get(&lead) else {
                break;
            };
            axpy(&mut v, &c, &self.rows[r].vec);
            used.push((r, c));
        }
        (v, used)
    }

    /// Inserts input row number `origin`; returns false if it was dependent.
    pub fn insert(&mut self, v: SparseVec<C, K>, origin: usize) -> bool {
        let (mut v, trace) = self.reduce(v);
        let Some((lead, lc)) = v.last_key_value().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let scale = lc.inv().expect("nonzero leading coefficient");
        for x in v.values_mut() {
            *x = x.mul(&scale);
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(BasisRow {
            vec: v,
            origin,
            scale,
            trace,
        });
        true
    }

    pub fn contains(&self, v: &SparseVec<C, K>) -> bool {
        self.reduce(v.clone()).0.is_empty()
    }

    /// Writes `target` as `Σ coeff · input[origin]`, or `None` if outside the span.
    pub fn express(&self, target: &SparseVec<C, K>) -> Option<Vec<(usize, K)>> {
        let (rem, used) = self.reduce(target.clone());
        if !rem.is_empty() {
            return None;
        }
        let mut acc: BTreeMap<usize, K> = BTreeMap::new();
        for (r, f) in used {
            let e = acc.entry(r).or_insert_with(K::zero);
            *e = e.add(&f);
        }
        let mut out: BTreeMap<usize, K> = BTreeMap::new();
        while let Some((i, c)) = acc.pop_last() {
            if c.is_zero() {
                continue;
            }
            let row = &self.rows[i];
            let cs = c.mul(&row.scale);
            let e = out.entry(row.origin).or_insert_with(K::zero);
            *e = e.add(&cs);
            for (j, f) in &row.trace {
                let e = acc.entry(*j).or_insert_with(K::zero);
                *e = e.sub(&cs.mul(f));
            }
        }
        Some(out.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}

/// Clears denominators row by row (row scaling preserves rank).
pub fn clear_denominators(rows: &[Vec<Coefficient>]) -> Vec<Vec<MultiPoly>> {
    rows.iter()
        .map(|row| {
            let mut dens: Vec<MultiPoly> = Vec::new();
            for c in row {
                if !c.denom().is_one() && !dens.contains(c.denom()) {
                    dens.push(c.denom().clone());
                }
            }
            let d = dens.iter().fold(MultiPoly::one(), |acc, x| acc.mul(x));
            row.iter()
                .map(|c| {
                    let f = d.div_exact(c.denom()).expect("denominator divides product");
                    c.numer().mul(&f)
                })
                .collect()
        })
        .collect()
}

/// Rank over the fraction field via fraction-free elimination: every division
/// is exact, by the previous pivot.
#[allow(clippy::needless_range_loop)]
pub fn fraction_free_rank(matrix: &[Vec<MultiPoly>]) -> usize {
    let mut m: Vec<Vec<MultiPoly>> = matrix.to_vec();
    let nrows = m.len();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut prev = MultiPoly::one();
    let (mut rank, mut col) = (0, 0);
    while rank < nrows && col < ncols {
        let Some(p) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            col += 1;
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in rank + 1..nrows {
            let lead = m[i][col].clone();
            for j in col + 1..ncols {
                let t = pivot.mul(&m[i][j]).sub(&lead.mul(&m[rank][j]));
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][col] = MultiPoly::zero();
        }
        prev = pivot;
        rank += 1;
        col += 1;
    }
    rank
}

/// Fraction-free determinant of a square polynomial matrix.
pub fn fraction_free_det(matrix: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = matrix.len();
    let mut m: Vec<Vec<MultiPoly>> = matrix.to_vec();
    let mut prev = MultiPoly::one();
    let mut sign = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return MultiPoly::zero();
        };
        if p != k {
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = if n == 0 {
        MultiPoly::one()
    } else {
        m[n - 1][n - 1].clone()
    };
    if sign {
        d.neg()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Coefficient {
        Coefficient::from_int(n)
    }

    fn sv(entries: &[(u32, i64)]) -> SparseVec<u32, Coefficient> {
        entries.iter().map(|&(k, v)| (k, c(v))).collect()
    }

    #[test]
    fn express_recovers_combination() {
        let rows = [sv(&[(0, 1), (1, 1)]), sv(&[(1, 1), (2, 1)]), sv(&[(0, 1), (2, -1)])];
        let mut b = EchelonBasis::new();
        assert!(b.insert(rows[0].clone(), 0));
        assert!(b.insert(rows[1].clone(), 1));
        // row 2 = row 0 - row 1
        assert!(!b.insert(rows[2].clone(), 2));
        assert_eq!(b.rank(), 2);
        let target = sv(&[(0, 2), (1, 5), (2, 3)]);
        let combo = b.express(&target).unwrap();
        let mut sum: SparseVec<u32, Coefficient> = SparseVec::new();
        for (o, k) in combo {
            axpy(&mut sum, &(-&k), &rows[o]);
        }
        assert_eq!(sum, target);
        assert!(b.express(&sv(&[(0, 1)])).is_none());
    }

    #[test]
    fn bareiss_rank_and_det() {
        let x = MultiPoly::var(0);
        let one = MultiPoly::one();
        // [[x, 1], [1, x]] has det x^2 - 1
        let m = vec![vec![x.clone(), one.clone()], vec![one.clone(), x.clone()]];
        assert_eq!(fraction_free_det(&m), x.pow(2).sub(&one));
        assert_eq!(fraction_free_rank(&m), 2);
        let singular = vec![vec![x.clone(), x.pow(2)], vec![one.clone(), x.clone()]];
        assert_eq!(fraction_free_rank(&singular), 1);
        assert!(fraction_free_det(&singular).is_zero());
    }
}
