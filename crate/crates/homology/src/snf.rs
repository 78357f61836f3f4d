//! Smith normal form over the integers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major integer matrix.
pub type Matrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![BigInt::zero(); cols]; rows]
}

pub fn from_i64(rows: &[Vec<i64>]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn mul(a: &Matrix, b: &Matrix, inner: usize) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate().take(inner) {
            if x.is_zero() {
                continue;
            }
            for j in 0..cols {
                out[i][j] += x * &b[k][j];
            }
        }
    }
    out
}

/// `u · m · v = diag(invariants, 0, ...)` with `u`, `v` unimodular.
/// `u_inv` and `v_inv` are tracked alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub invariants: Vec<BigInt>,
    pub diagonal: Matrix,
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

struct Work {
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
    rows: usize,
    cols: usize,
    track: bool,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if self.track {
            self.u.swap(i, j);
            for r in self.u_inv.iter_mut() {
                r.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in self.a.iter_mut().chain(self.v.iter_mut()) {
            r.swap(i, j);
        }
        if self.track {
            self.v_inv.swap(i, j);
        }
    }

    /// row_i -= q · row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        let ms = if self.track { vec![&mut self.a, &mut self.u] } else { vec![&mut self.a] };
        for m in ms {
            let src = m[t].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                *x -= q * y;
            }
        }
        for r in self.u_inv.iter_mut() {
            let add = q * &r[i];
            r[t] += add;
        }
    }

    /// col_j -= q · col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        for r in self.a.iter_mut().chain(self.v.iter_mut()) {
            let sub = q * &r[t];
            r[j] -= sub;
        }
        if self.track {
            let src = self.v_inv[j].clone();
            for (x, y) in self.v_inv[t].iter_mut().zip(&src) {
                *x += q * y;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if self.track {
            for x in self.u[i].iter_mut() {
                *x = -&*x;
            }
        }
        for r in self.u_inv.iter_mut() {
            r[i] = -&r[i];
        }
    }

    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn step(&mut self, t: usize) -> bool {
        let Some((i, j)) = self.smallest(t) else { return false };
        self.swap_rows(t, i);
        self.swap_cols(t, j);
        loop {
            let mut dirty = false;
            for i in t + 1..self.rows {
                if !self.a[i][t].is_zero() {
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.row_sub(i, t, &q);
                    dirty |= !self.a[i][t].is_zero();
                }
            }
            for j in t + 1..self.cols {
                if !self.a[t][j].is_zero() {
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.col_sub(j, t, &q);
                    dirty |= !self.a[t][j].is_zero();
                }
            }
            if dirty {
                // a smaller remainder appeared in row or column t
                let (i, j) = self.smallest_cross(t);
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                continue;
            }
            let bad = (t + 1..self.rows)
                .find(|&i| (t + 1..self.cols).any(|j| !(&self.a[i][j] % &self.a[t][t]).is_zero()));
            match bad {
                Some(i) => self.row_sub(t, i, &BigInt::from(-1)),
                None => break,
            }
        }
        if self.a[t][t].is_negative() {
            self.negate_row(t);
        }
        true
    }

    fn smallest_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut val: Option<BigInt> = None;
        let mut consider = |i: usize, j: usize, x: &BigInt| {
            if !x.is_zero() && val.as_ref().is_none_or(|v| x.abs() < *v) {
                val = Some(x.abs());
                best = (i, j);
            }
        };
        for i in t..self.rows {
            consider(i, t, &self.a[i][t]);
        }
        for j in t..self.cols {
            consider(t, j, &self.a[t][j]);
        }
        best
    }
}

/// Smith normal form with both transforms and their inverses.
pub fn snf(m: &Matrix, cols: usize) -> Snf {
    let rows = m.len();
    let mut w = Work {
        a: m.clone(),
        u: identity(rows),
        u_inv: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
        rows,
        cols,
        track: true,
    };
    let mut invariants = Vec::new();
    for t in 0..rows.min(cols) {
        if !w.step(t) {
            break;
        }
        invariants.push(w.a[t][t].clone());
    }
    Snf { invariants, diagonal: w.a, u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv }
}

/// Invariant factors only, without transforms.
pub fn invariant_factors(m: &Matrix, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut w =
        Work { a: m.clone(), u: Vec::new(), u_inv: Vec::new(), v: Vec::new(), v_inv: Vec::new(), rows, cols, track: false };
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        if !w.step(t) {
            break;
        }
        out.push(w.a[t][t].clone());
    }
    out
}

/// Sparse integer matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = zeros(self.rows, self.ncols());
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, x) in col {
                m[i][j] += x;
            }
        }
        m
    }

    pub fn from_dense(m: &[Vec<i64>], rows: usize, cols: usize) -> SparseMatrix {
        let mut out = SparseMatrix::zero(rows, cols);
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x != 0 {
                    out.cols[j].push((i, x));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.ncols(), self.rows);
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, x) in col {
                out.cols[i].push((j, x));
            }
        }
        out
    }

    /// `self · other`, exact in i128 and checked back into i64.
    pub fn compose(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        let mut out = SparseMatrix::zero(self.rows, other.ncols());
        for (j, col) in other.cols.iter().enumerate() {
            let mut acc: BTreeMap<usize, i128> = BTreeMap::new();
            for &(k, y) in col {
                for &(i, x) in &self.cols[k] {
                    *acc.entry(i).or_default() += i128::from(x) * i128::from(y);
                }
            }
            for (i, v) in acc {
                if v != 0 {
                    out.cols[j].push((i, i64::try_from(v).ok()?));
                }
            }
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(|&(_, x)| x == 0))
    }
}

/// Rank and invariant factors of a sparse matrix. Unit pivots are
/// eliminated first; what remains goes through dense SNF.
pub fn sparse_invariants(m: &SparseMatrix) -> Vec<BigInt> {
    let mut cols: Vec<BTreeMap<usize, BigInt>> = m
        .cols
        .iter()
        .map(|c| {
            let mut map = BTreeMap::new();
            for &(i, x) in c {
                *map.entry(i).or_insert_with(BigInt::zero) += x;
            }
            map.retain(|_, v: &mut BigInt| !v.is_zero());
            map
        })
        .collect();
    let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows];
    for (j, c) in cols.iter().enumerate() {
        for &i in c.keys() {
            rows[i].insert(j);
        }
    }
    let mut alive = vec![true; cols.len()];
    let mut units = 0usize;
    loop {
        let mut progress = false;
        for c in 0..cols.len() {
            if !alive[c] {
                continue;
            }
            let pivot = cols[c]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .min_by_key(|(r, _)| rows[**r].len())
                .map(|(r, v)| (*r, v.clone()));
            let Some((r, u)) = pivot else { continue };
            let pivot_col = cols[c].clone();
            let others: Vec<usize> = rows[r].iter().copied().filter(|&j| j != c).collect();
            for j in others {
                let a = &cols[j][&r] * &u;
                for (i, x) in &pivot_col {
                    let e = cols[j].entry(*i).or_insert_with(BigInt::zero);
                    *e -= &a * x;
                    if e.is_zero() {
                        cols[j].remove(i);
                        rows[*i].remove(&j);
                    } else {
                        rows[*i].insert(j);
                    }
                }
            }
            for i in pivot_col.keys() {
                rows[*i].remove(&c);
            }
            cols[c].clear();
            alive[c] = false;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&c| alive[c] && !cols[c].is_empty()).collect();
    let live_rows: Vec<usize> = (0..m.rows).filter(|&r| !rows[r].is_empty()).collect();
    let row_pos: BTreeMap<usize, usize> = live_rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
    let mut dense = zeros(live_rows.len(), live_cols.len());
    for (k, &c) in live_cols.iter().enumerate() {
        for (r, v) in &cols[c] {
            dense[row_pos[r]][k] = v.clone();
        }
    }
    let mut out = vec![BigInt::one(); units];
    out.extend(invariant_factors(&dense, live_cols.len()));
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &[Vec<i64>]) -> Snf {
        let cols = m.first().map_or(0, Vec::len);
        let a = from_i64(m);
        let s = snf(&a, cols);
        let uav = mul(&mul(&s.u, &a, a.len()), &s.v, cols);
        assert_eq!(uav, s.diagonal);
        assert_eq!(mul(&s.u, &s.u_inv, a.len()), identity(a.len()));
        assert_eq!(mul(&s.v, &s.v_inv, cols), identity(cols));
        for w in s.invariants.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        s
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(check(&[vec![2]]).invariants, ints(&[2]));
        assert_eq!(check(&[vec![1, 0], vec![0, 0]]).invariants, ints(&[1]));
        assert_eq!(check(&[vec![2, 0], vec![0, 3]]).invariants, ints(&[1, 6]));
        assert_eq!(check(&[vec![4, 6], vec![6, 9], vec![2, 3]]).invariants, ints(&[1]));
        // ∂₁ of the triangle: edges 01, 02, 12
        let d1 = [vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]];
        assert_eq!(check(&d1).invariants, ints(&[1, 1]));
    }

    #[test]
    fn sparse_matches_dense() {
        let m = vec![vec![2, 4, 0, 1], vec![0, 6, 3, 0], vec![1, 0, 0, 5]];
        let sp = SparseMatrix::from_dense(&m, 3, 4);
        let dense = check(&m).invariants;
        assert_eq!(sparse_invariants(&sp), dense);
    }
}
