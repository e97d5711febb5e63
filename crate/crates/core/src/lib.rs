//! Exact max-plus linear algebra, the triad semiring and its circulant
//! representation, a two-sided monomial key exchange over both, and a
//! CSR-based solver for the tropical two-sided discrete logarithm that
//! recovers the exchange's shared key from public transcripts.
//!
//! Everything is integer- or rational-exact; no floating point touches
//! any algebraic value. All randomness flows through the fixed
//! [`rng::SplitMix64`] generator, so seeded runs are reproducible
//! bit-for-bit.
//!
//! The `parallel` feature (on by default) runs large matrix products,
//! attack residue scans and batch campaigns on the rayon thread pool;
//! outputs are identical either way.

pub mod attack;
pub mod diophantine;
pub mod error;
pub mod matrix;
mod par;
pub mod protocol;
pub mod rational;
pub mod rng;
pub mod semiring;
pub mod spectral;
#[cfg(feature = "testkit")]
pub mod testkit;
pub mod triad;
pub mod trials;

pub use error::{Error, Result};
pub use matrix::{Matrix, RatTropMatrix, TropMatrix};
pub use rational::Rational;
pub use semiring::{RatScalar, Semiring, Trop, TropScalar, Weight};
pub use triad::{Triad, TriadMatrix};
