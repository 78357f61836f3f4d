//! Sparse linear algebra over Q and Z/p.

use std::collections::HashMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::snf::SparseMatrix;

pub trait Field {
    type E: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::E;
    fn from_i64(&self, x: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn render(&self, a: &Self::E) -> String;

    fn is_zero(&self, a: &Self::E) -> bool {
        *a == self.zero()
    }
}

/// Integers modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp(pub u64);

impl Field for Fp {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((u128::from(*a) * u128::from(*b)) % u128::from(self.0)) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }

    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2)
        let (mut base, mut e, mut acc) = (*a, self.0 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }

    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

/// Sparse vector sorted by index, with no stored zeros.
pub type SVec<E> = Vec<(usize, E)>;

/// `a + c·b`
pub fn axpy<F: Field>(f: &F, a: &SVec<F::E>, c: &F::E, b: &SVec<F::E>) -> SVec<F::E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, f.mul(c, &b[j].1)));
            j += 1;
        } else {
            let v = f.add(&a[i].1, &f.mul(c, &b[j].1));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn column<F: Field>(f: &F, m: &SparseMatrix, j: usize) -> SVec<F::E> {
    let mut acc: Vec<(usize, F::E)> = Vec::new();
    let mut col = m.cols[j].clone();
    col.sort_by_key(|e| e.0);
    for (i, x) in col {
        let v = f.from_i64(x);
        match acc.last_mut() {
            Some(last) if last.0 == i => last.1 = f.add(&last.1, &v),
            _ => acc.push((i, v)),
        }
    }
    acc.retain(|(_, v)| !f.is_zero(v));
    acc
}

/// `m · v`
pub fn apply<F: Field>(f: &F, m: &SparseMatrix, v: &SVec<F::E>) -> SVec<F::E> {
    let mut out: SVec<F::E> = Vec::new();
    for (j, c) in v {
        out = axpy(f, &out, c, &column(f, m, *j));
    }
    out
}

/// Vectors with pairwise distinct lowest (largest-index) entries, each
/// carrying an optional tag.
pub struct Echelon<F: Field> {
    by_low: HashMap<usize, (SVec<F::E>, Option<usize>)>,
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon { by_low: HashMap::new() }
    }

    pub fn len(&self) -> usize {
        self.by_low.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_low.is_empty()
    }

    /// Reduces `v`; returns the remainder and the accumulated tag
    /// coefficients, so `v = remainder + Σ coeff·(tagged vector) + untagged part`.
    pub fn reduce(&self, f: &F, mut v: SVec<F::E>) -> (SVec<F::E>, HashMap<usize, F::E>) {
        let mut coeffs: HashMap<usize, F::E> = HashMap::new();
        while let Some((low, x)) = v.last().cloned() {
            let Some((w, tag)) = self.by_low.get(&low) else { break };
            let wl = &w.last().expect("nonzero").1;
            let c = f.mul(&x, &f.inv(wl));
            v = axpy(f, &v, &f.neg(&c), w);
            if let Some(t) = tag {
                let e = coeffs.entry(*t).or_insert_with(|| f.zero());
                *e = f.add(e, &c);
            }
        }
        (v, coeffs)
    }

    /// Inserts the reduced form of `v` when it is nonzero.
    pub fn insert(&mut self, f: &F, v: SVec<F::E>, tag: Option<usize>) -> Option<SVec<F::E>> {
        let (r, _) = self.reduce(f, v);
        let low = r.last()?.0;
        self.by_low.insert(low, (r.clone(), tag));
        Some(r)
    }
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon::new()
    }
}

/// Column reduction of `m`: the span of the columns as an echelon, and a
/// basis of the kernel.
pub fn reduce_columns<F: Field>(f: &F, m: &SparseMatrix, want_kernel: bool) -> (Echelon<F>, Vec<SVec<F::E>>) {
    let mut ech: Echelon<F> = Echelon::new();
    // pivot columns also carry their combination of original columns
    let mut combos: HashMap<usize, SVec<F::E>> = HashMap::new();
    let mut kernel = Vec::new();
    for j in 0..m.ncols() {
        let mut v = column(f, m, j);
        let mut combo: SVec<F::E> = if want_kernel { vec![(j, f.from_i64(1))] } else { Vec::new() };
        while let Some((low, x)) = v.last().cloned() {
            let Some((w, _)) = ech.by_low.get(&low) else { break };
            let wl = &w.last().expect("nonzero").1;
            let c = f.neg(&f.mul(&x, &f.inv(wl)));
            v = axpy(f, &v, &c, w);
            if want_kernel {
                combo = axpy(f, &combo, &c, &combos[&low]);
            }
        }
        match v.last() {
            None => {
                if want_kernel {
                    kernel.push(combo);
                }
            }
            Some(&(low, _)) => {
                ech.by_low.insert(low, (v, None));
                if want_kernel {
                    combos.insert(low, combo);
                }
            }
        }
    }
    (ech, kernel)
}

pub fn rank<F: Field>(f: &F, m: &SparseMatrix) -> usize {
    reduce_columns(f, m, false).0.len()
}

/// Rank of a small dense matrix given by columns.
pub fn dense_rank<F: Field>(f: &F, cols: &[Vec<F::E>]) -> usize {
    let mut ech: Echelon<F> = Echelon::new();
    for c in cols {
        let v: SVec<F::E> = c.iter().cloned().enumerate().filter(|(_, x)| !f.is_zero(x)).collect();
        ech.insert(f, v, None);
    }
    ech.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_mod_p() {
        let f = Fp(7);
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn kernel_of_triangle_boundary() {
        // ∂₁ of the triangle: edges 01, 02, 12
        let m = SparseMatrix::from_dense(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]], 3, 3);
        let (ech, ker) = reduce_columns(&Fp(2), &m, true);
        assert_eq!(ech.len(), 2);
        assert_eq!(ker.len(), 1);
        assert!(apply(&Fp(2), &m, &ker[0]).is_empty());
        let (_, kq) = reduce_columns(&Rationals, &m, true);
        assert!(apply(&Rationals, &m, &kq[0]).is_empty());
    }
}
