//! Dense matrices over [`Scalar`] and exact rank of linear spans.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::{Field, Scalar};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_diag(values: &[S]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i].clone() } else { S::zero() })
    }

    /// 0/1 matrix with a one at `(x, p(x))` wherever `p(x)` is defined.
    pub fn from_partial_map(n: usize, p: impl Fn(usize) -> Option<usize>) -> Self {
        let mut m = Self::zeros(n, n);
        for x in 0..n {
            if let Some(y) = p(x) {
                m.set(x, y, S::one());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Matrix product, skipping zero entries of the left factor.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn diagonal(&self) -> Vec<S> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// Zero off the diagonal, up to `tol` for inexact scalars.
    pub fn is_diagonal(&self, tol: f64) -> bool {
        let z = S::zero();
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).near(&z, tol)))
    }

    pub fn near(&self, other: &Self, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self.data.iter().zip(&other.data).all(|(a, b)| a.near(b, tol))
    }

    /// Squared Frobenius norm as a float.
    pub fn frobenius_sqr(&self) -> f64 {
        self.data.iter().map(Scalar::norm_sqr_f64).sum()
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|a| !a.is_zero()).count()
    }

    /// Block-diagonal `diag(self, self)`: the unital doubling embedding.
    pub fn doubled(&self) -> Self {
        let (r, c) = (self.rows, self.cols);
        Self::from_fn(2 * r, 2 * c, |i, j| {
            if (i < r) == (j < c) {
                self.get(i % r, j % c).clone()
            } else {
                S::zero()
            }
        })
    }
}

impl<S: Field> Matrix<S> {
    /// Rank by Gaussian elimination (exact for exact scalars).
    pub fn rank(&self, tol: f64) -> usize {
        let mut span = SpanRank::new(tol);
        for i in 0..self.rows {
            span.insert((0..self.cols).map(|j| (j, self.get(i, j).clone())));
        }
        span.rank()
    }
}

/// Incremental rank of a set of sparse vectors, kept in echelon form.
pub struct SpanRank<S> {
    pivots: BTreeMap<usize, BTreeMap<usize, S>>,
    tol: f64,
}

impl<S: Field> SpanRank<S> {
    pub fn new(tol: f64) -> Self {
        SpanRank { pivots: BTreeMap::new(), tol }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn negligible(&self, s: &S) -> bool {
        s.near(&S::zero(), self.tol)
    }

    /// Adds a vector given by `(index, value)` pairs; returns whether it
    /// enlarged the span.
    pub fn insert(&mut self, entries: impl IntoIterator<Item = (usize, S)>) -> bool {
        let mut v: BTreeMap<usize, S> = BTreeMap::new();
        for (i, s) in entries {
            if !self.negligible(&s) {
                v.insert(i, s);
            }
        }
        loop {
            let Some((&lead, lv)) = v.iter().next() else {
                return false;
            };
            match self.pivots.get(&lead) {
                None => {
                    let inv = lv.inv();
                    let normalized = v.into_iter().map(|(i, s)| (i, s * inv.clone())).collect();
                    self.pivots.insert(lead, normalized);
                    return true;
                }
                Some(row) => {
                    let factor = lv.clone();
                    for (i, s) in row {
                        let cur = v.remove(i).unwrap_or_else(S::zero);
                        let next = cur - factor.clone() * s.clone();
                        if !self.negligible(&next) {
                            v.insert(*i, next);
                        }
                    }
                    v.remove(&lead);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, GaussRational};

    type M = Matrix<GaussRational>;

    fn int(v: i128) -> GaussRational {
        gauss((v, 1), (0, 1))
    }

    #[test]
    fn product_matches_hand_computation() {
        let a = M::from_fn(2, 2, |i, j| int((2 * i + j + 1) as i128));
        let b = M::from_fn(2, 2, |i, j| int(if i == j { 0 } else { 1 }));
        let c = a.mul(&b);
        assert_eq!(c, M::from_fn(2, 2, |i, j| int([[2, 1], [4, 3]][i][j])));
        assert_eq!(a.mul(&M::identity(2)), a);
    }

    #[test]
    fn adjoint_conjugates() {
        let a = M::from_fn(2, 2, |i, j| gauss((i as i128, 1), (j as i128 + 1, 2)));
        let adj = a.adjoint();
        assert_eq!(*adj.get(0, 1), gauss((1, 1), (-1, 2)));
        assert_eq!(adj.adjoint(), a);
    }

    #[test]
    fn rank_examples() {
        let m = M::from_fn(3, 3, |i, j| int((i * 3 + j) as i128));
        assert_eq!(m.rank(0.0), 2);
        assert_eq!(M::identity(4).rank(0.0), 4);
        assert_eq!(M::zeros(3, 2).rank(0.0), 0);
        let mut span = SpanRank::<GaussRational>::new(0.0);
        assert!(span.insert([(0, int(1)), (3, int(2))]));
        assert!(!span.insert([(0, int(2)), (3, int(4))]));
        assert!(span.insert([(3, int(1))]));
        assert!(!span.insert([(0, int(5))]));
        assert_eq!(span.rank(), 2);
    }

    #[test]
    fn doubling_is_block_diagonal() {
        let a = M::from_fn(2, 2, |i, j| int((i + 2 * j) as i128));
        let d = a.doubled();
        assert_eq!(*d.get(3, 3), *a.get(1, 1));
        assert_eq!(*d.get(2, 3), *a.get(0, 1));
        assert!(d.get(0, 3).is_zero());
        assert_eq!(M::identity(2).doubled(), M::identity(4));
    }
}
