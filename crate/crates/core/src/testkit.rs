//! Brute-force reference implementations and seeded samplers for the
//! test suites (feature `testkit`).
//!
//! The reference routines here deliberately share no code with the
//! algorithms they check: cycle means come from exhaustive simple-cycle
//! enumeration, powers from iterated products.

use crate::matrix::{Matrix, TropMatrix};
use crate::rational::Rational;
use crate::rng::SplitMix64;
use crate::semiring::{Trop, TropScalar};
use crate::triad::{Triad, TriadMatrix};

/// `-inf` marker for the integer-literal test matrices built by [`tmat`].
pub const NI: i64 = i64::MIN;

/// Builds a tropical matrix from integer literals, reading [`NI`] as `-inf`.
pub fn tmat(rows: &[&[i64]]) -> TropMatrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|&v| if v == NI { Trop::NegInf } else { Trop::Fin(v) })
                    .collect()
            })
            .collect(),
    )
    .expect("literal rows are rectangular")
}

/// Maximum cycle mean by exhaustive enumeration of simple cycles.
///
/// Every cycle is visited exactly once, rooted at its smallest vertex;
/// exponential in n and meant for n ≤ 8 or so.
pub fn enumerate_max_cycle_mean(a: &TropMatrix) -> Option<Rational> {
    let n = a.rows();
    assert!(a.is_square());
    let mut best: Option<Rational> = None;
    let mut on_path = vec![false; n];
    for root in 0..n {
        on_path[root] = true;
        extend_cycle(a, root, root, 0, 0, &mut on_path, &mut best);
        on_path[root] = false;
    }
    best
}

fn extend_cycle(
    a: &TropMatrix,
    root: usize,
    v: usize,
    arcs_so_far: i64,
    weight: i64,
    on_path: &mut [bool],
    best: &mut Option<Rational>,
) {
    let n = a.rows();
    for u in root..n {
        let Trop::Fin(w) = a.get(v, u) else { continue };
        if u == root {
            let mean = Rational::new(weight + w, arcs_so_far + 1);
            *best = Some(best.map_or(mean, |b| b.max(mean)));
        } else if !on_path[u] {
            on_path[u] = true;
            extend_cycle(a, root, u, arcs_so_far + 1, weight + w, on_path, best);
            on_path[u] = false;
        }
    }
}

/// Power by iterated multiplication; reference for repeated squaring.
pub fn naive_pow(a: &TropMatrix, t: u64) -> TropMatrix {
    let mut acc = TropMatrix::identity(a.rows());
    for _ in 0..t {
        acc = acc.mul(a).expect("reference power stays in range");
    }
    acc
}

/// True when every vertex reaches and is reached by vertex 0 through
/// finite arcs.
pub fn is_strongly_connected(a: &TropMatrix) -> bool {
    let n = a.rows();
    if n == 0 {
        return false;
    }
    let forward = reach(a, false);
    let backward = reach(a, true);
    forward.iter().all(|&r| r) && backward.iter().all(|&r| r)
}

#[allow(clippy::needless_range_loop)]
fn reach(a: &TropMatrix, reversed: bool) -> Vec<bool> {
    let n = a.rows();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for u in 0..n {
            let arc = if reversed { a.get(u, v) } else { a.get(v, u) };
            if arc.is_finite() && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen
}

pub fn random_scalar(rng: &mut SplitMix64, lo: i64, hi: i64, density: f64) -> TropScalar {
    if density > 0.0 && rng.chance(density) {
        Trop::NegInf
    } else {
        Trop::Fin(rng.range_i64(lo, hi))
    }
}

pub fn random_trop_matrix(
    rng: &mut SplitMix64,
    n: usize,
    lo: i64,
    hi: i64,
    density: f64,
) -> TropMatrix {
    let entries = (0..n * n)
        .map(|_| random_scalar(rng, lo, hi, density))
        .collect();
    Matrix::new(n, n, entries).expect("entry count matches")
}

/// Resamples until the digraph of finite entries is strongly connected.
pub fn random_strongly_connected(
    rng: &mut SplitMix64,
    n: usize,
    lo: i64,
    hi: i64,
    density: f64,
) -> TropMatrix {
    loop {
        let m = random_trop_matrix(rng, n, lo, hi, density);
        if is_strongly_connected(&m) {
            return m;
        }
    }
}

pub fn random_triad(rng: &mut SplitMix64, lo: i64, hi: i64, density: f64) -> Triad {
    let a = random_scalar(rng, lo, hi, density);
    let b = random_scalar(rng, lo, hi, density);
    let c = random_scalar(rng, lo, hi, density);
    Triad::new(a, b, c)
}

pub fn random_triad_matrix(
    rng: &mut SplitMix64,
    n: usize,
    lo: i64,
    hi: i64,
    density: f64,
) -> TriadMatrix {
    let entries = (0..n * n)
        .map(|_| random_triad(rng, lo, hi, density))
        .collect();
    Matrix::new(n, n, entries).expect("entry count matches")
}
