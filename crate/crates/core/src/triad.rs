//! The triad semiring, its matrices, and the circulant representation.
//!
//! A triad is a 3-tuple of tropical scalars with componentwise ⊕ and the
//! twisted product
//!
//! ```text
//! (a,b,c) ⊙ (d,e,f) = (ad ⊕ bf ⊕ ce,  ae ⊕ bd ⊕ cf,  af ⊕ be ⊕ cd)
//! ```
//!
//! (juxtaposition is tropical ⊙ on scalars). The map sending `(a,b,c)` to
//! the 3×3 circulant matrix `C[a,b,c]` is a semiring isomorphism onto the
//! circulant tropical matrices, and entrywise application embeds n×n triad
//! matrices into 3n×3n tropical matrices. That embedding is what turns a
//! triad key-exchange transcript into a plain tropical one.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, TropMatrix};
use crate::semiring::{Semiring, TropScalar};

/// Element of the triad semiring: three tropical coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triad(pub [TropScalar; 3]);

/// Square matrix over the triad semiring.
pub type TriadMatrix = Matrix<Triad>;

impl Triad {
    pub const fn new(a: TropScalar, b: TropScalar, c: TropScalar) -> Self {
        Triad([a, b, c])
    }

    /// Finite-coordinate shorthand.
    pub const fn fin(a: i64, b: i64, c: i64) -> Self {
        Triad([TropScalar::fin(a), TropScalar::fin(b), TropScalar::fin(c)])
    }

    /// The circulant matrix `C[a,b,c]`: each row is the cyclic right
    /// shift of the one above it.
    pub fn to_circulant(&self) -> TropMatrix {
        circulant(&self.0)
    }

    /// Inverse of [`Triad::to_circulant`]; errors if `m` is not a 3×3
    /// circulant (not in the image of the representation).
    pub fn from_circulant(m: &TropMatrix) -> Result<Self> {
        let c = circulant_coefficients(m)?;
        if c.len() != 3 {
            return Err(Error::NotCirculant { row: 0 });
        }
        Ok(Triad([c[0], c[1], c[2]]))
    }
}

impl Semiring for Triad {
    fn zero() -> Self {
        Triad([TropScalar::NegInf; 3])
    }

    fn one() -> Self {
        Triad([TropScalar::fin(0), TropScalar::NegInf, TropScalar::NegInf])
    }

    fn add(self, rhs: Self) -> Self {
        let [a, b, c] = self.0;
        let [d, e, f] = rhs.0;
        Triad([a.add(d), b.add(e), c.add(f)])
    }

    fn mul(self, rhs: Self) -> Result<Self> {
        let [a, b, c] = self.0;
        let [d, e, f] = rhs.0;
        Ok(Triad([
            a.mul(d)?.add(b.mul(f)?).add(c.mul(e)?),
            a.mul(e)?.add(b.mul(d)?).add(c.mul(f)?),
            a.mul(f)?.add(b.mul(e)?).add(c.mul(d)?),
        ]))
    }
}

/// Expands generating coefficients `[c_0, …, c_{n-1}]` into the n×n
/// circulant whose row `i` is the cyclic right shift of row `i-1`:
/// entry `(i, j)` is `c_{(j - i) mod n}`.
pub fn circulant(coeffs: &[TropScalar]) -> TropMatrix {
    let n = coeffs.len();
    Matrix::from_fn(n, n, |i, j| coeffs[(n + j - i) % n])
}

/// Recovers the generating coefficients of a circulant matrix, validating
/// the row-shift layout on every row.
pub fn circulant_coefficients(m: &TropMatrix) -> Result<Vec<TropScalar>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let coeffs: Vec<TropScalar> = (0..n).map(|j| m.get(0, j)).collect();
    for i in 1..n {
        for j in 0..n {
            if m.get(i, j) != coeffs[(n + j - i) % n] {
                return Err(Error::NotCirculant { row: i });
            }
        }
    }
    Ok(coeffs)
}

/// Replaces every triad entry by its 3×3 circulant block, assembled
/// block-row-major into a `3r x 3c` tropical matrix.
pub fn embed(a: &TriadMatrix) -> TropMatrix {
    let (r, c) = (a.rows(), a.cols());
    Matrix::from_fn(3 * r, 3 * c, |i, j| {
        let [x, y, z] = a.get(i / 3, j / 3).0;
        let coeffs = [x, y, z];
        coeffs[(3 + (j % 3) - (i % 3)) % 3]
    })
}

/// Inverse of [`embed`]: errors unless every 3×3 block is circulant.
pub fn extract(m: &TropMatrix) -> Result<TriadMatrix> {
    if !m.rows().is_multiple_of(3) || !m.cols().is_multiple_of(3) {
        return Err(Error::BadDimensions {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.rows() * m.cols(),
        });
    }
    let (r, c) = (m.rows() / 3, m.cols() / 3);
    let mut out = Vec::with_capacity(r * c);
    for bi in 0..r {
        for bj in 0..c {
            let block = Matrix::from_fn(3, 3, |i, j| m.get(3 * bi + i, 3 * bj + j));
            let triad = Triad::from_circulant(&block).map_err(|_| Error::NotInSubring {
                block_row: bi,
                block_col: bj,
            })?;
            out.push(triad);
        }
    }
    Matrix::new(r, c, out)
}
