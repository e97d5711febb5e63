//! Dense matrices over an arbitrary [`Semiring`].
//!
//! One generic type carries integer tropical matrices, rational tropical
//! matrices and triad matrices. Products use the textbook cubic loop:
//! desk-scale dimensions (n ≤ 64) leave nothing for a fancier kernel to
//! win, and exactness rules out floating-point BLAS analogues.
//!
//! With the `parallel` feature enabled, large products distribute output
//! rows across the rayon pool; results are identical to the sequential
//! path.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::semiring::{RatScalar, Semiring, Trop, TropScalar, Weight};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Minimum `rows * cols * inner` before a product is worth sending to the
/// thread pool; below this the dispatch overhead dominates the loop.
#[cfg(feature = "parallel")]
const PAR_MUL_WORK: usize = 64 * 64 * 64;

/// Dense row-major `rows x cols` grid over a semiring `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

/// Matrix over the integer tropical semiring.
pub type TropMatrix = Matrix<TropScalar>;
/// Matrix over the rational tropical semiring.
pub type RatTropMatrix = Matrix<RatScalar>;

impl<S: Semiring> Matrix<S> {
    /// Builds a matrix from a row-major entry vector.
    pub fn new(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::BadDimensions {
                rows,
                cols,
                entries: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::BadDimensions {
                rows: r,
                cols: c,
                entries: rows.iter().map(Vec::len).sum(),
            });
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// All-zero (all `-inf` for tropical types) matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![S::zero(); rows * cols],
        }
    }

    /// Multiplicative identity: `one` on the diagonal, `zero` elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn map<U: Semiring>(&self, f: impl Fn(S) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| f(e)).collect(),
        }
    }

    /// Entrywise ⊕.
    pub fn join(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(self.shape_mismatch(rhs));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(&a, &b)| a.add(b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Semiring matrix product: entry `(i,j)` is `⊕_k a_ik ⊙ b_kj`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(self.shape_mismatch(rhs));
        }
        if rhs.cols == 0 {
            return Ok(Self::zeros(self.rows, 0));
        }
        let mut entries = vec![S::zero(); self.rows * rhs.cols];

        #[cfg(feature = "parallel")]
        if self.rows * rhs.cols * self.cols >= PAR_MUL_WORK {
            entries
                .par_chunks_mut(rhs.cols)
                .enumerate()
                .try_for_each(|(i, out)| self.fill_product_row(rhs, i, out))?;
            return Ok(Self {
                rows: self.rows,
                cols: rhs.cols,
                entries,
            });
        }

        for (i, out) in entries.chunks_mut(rhs.cols).enumerate() {
            self.fill_product_row(rhs, i, out)?;
        }
        Ok(Self {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        })
    }

    fn fill_product_row(&self, rhs: &Self, i: usize, out: &mut [S]) -> Result<()> {
        for k in 0..self.cols {
            let a = self.get(i, k);
            if a.is_zero() {
                continue;
            }
            let rrow = rhs.row(k);
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.add(a.mul(rrow[j])?);
            }
        }
        Ok(())
    }

    /// `t`-th power by repeated squaring; `t = 0` is the identity.
    pub fn pow(&self, mut t: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Self::identity(self.rows);
        if t == 0 {
            return Ok(acc);
        }
        let mut base = self.clone();
        loop {
            if t & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            t >>= 1;
            if t == 0 {
                return Ok(acc);
            }
            base = base.mul(&base)?;
        }
    }

    fn shape_mismatch(&self, rhs: &Self) -> Error {
        Error::ShapeMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: rhs.rows,
            right_cols: rhs.cols,
        }
    }
}

impl<T: Weight> Matrix<Trop<T>> {
    /// Tropical scalar multiplication: adds `w` to every finite entry.
    pub fn scalar_shift(&self, w: T) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|&e| e.mul(Trop::Fin(w)))
            .collect::<Result<_>>()?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Finite entries as `(row, col, weight)` arcs of the associated digraph.
    pub fn finite_arcs(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter_map(move |(idx, e)| e.finite().map(|w| (idx / self.cols, idx % self.cols, w)))
    }

    pub fn to_rational(&self) -> Matrix<Trop<Rational>> {
        self.map(|e| e.to_rational())
    }
}

impl RatTropMatrix {
    /// Back to integer entries; `None` if any finite entry has a
    /// denominator other than 1.
    pub fn to_integer(&self) -> Option<TropMatrix> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            match e {
                Trop::NegInf => entries.push(Trop::NegInf),
                Trop::Fin(r) => entries.push(Trop::Fin(r.as_integer()?)),
            }
        }
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.entries[i * self.cols + j]
    }
}

impl<S: Semiring + fmt::Display> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
