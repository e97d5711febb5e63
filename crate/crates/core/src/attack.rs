//! Solving the tropical two-sided discrete logarithm, and recovering the
//! shared key of the monomial exchange from its public transcript.
//!
//! Given `U = D1^⊙t1 ⊙ M ⊙ D2^⊙t2` (up to a known global shift τ), the
//! CSR expansions of `D1` and `D2` collapse the unknown huge powers into
//! a scan over residues modulo the two critical cycle lengths. For each
//! residue pair the difference between `U` and a fixed product must be
//! one constant β across the cycle-indexed positions; when it is, β feeds
//! a two-variable linear Diophantine equation whose solution proposes
//! exponents. Every proposal is then checked by exact recomputation —
//! a solution is only ever reported after `U` is reproduced entry for
//! entry.
//!
//! Triad transcripts are attacked through the circulant embedding: an
//! n×n triad instance becomes a 3n×3n tropical one, and the recovered
//! key is pulled back through the inverse map.

use crate::diophantine::{ceil_div, solve_bounded};
use crate::error::{Error, Result};
use crate::matrix::{RatTropMatrix, TropMatrix};
use crate::par::first_hit;
use crate::protocol::{ProtocolMatrix, Transcript};
use crate::rational::Rational;
use crate::semiring::Trop;
use crate::spectral::{csr_decompose, CriticalCycle, CsrDecomposition};
use crate::triad::{embed, extract};

/// One two-sided discrete-logarithm problem: find `t1, t2` with
/// `U = D1^⊙t1 ⊙ M ⊙ D2^⊙t2 ⊙ tau`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DlogInstance {
    pub u: TropMatrix,
    pub d1: TropMatrix,
    pub m: TropMatrix,
    pub d2: TropMatrix,
    /// Known global additive shift on `U`; 0 for the key exchange.
    pub tau: i64,
}

impl DlogInstance {
    pub fn new(
        u: TropMatrix,
        d1: TropMatrix,
        m: TropMatrix,
        d2: TropMatrix,
        tau: i64,
    ) -> Result<Self> {
        let n = u.rows();
        for mat in [&u, &d1, &m, &d2] {
            if !mat.is_square() {
                return Err(Error::NotSquare {
                    rows: mat.rows(),
                    cols: mat.cols(),
                });
            }
            if mat.rows() != n {
                return Err(Error::ShapeMismatch {
                    left_rows: n,
                    left_cols: n,
                    right_rows: mat.rows(),
                    right_cols: mat.cols(),
                });
            }
        }
        Ok(Self { u, d1, m, d2, tau })
    }

    fn size(&self) -> usize {
        self.u.rows()
    }
}

/// Verified exponents reproducing `U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AttackSolution {
    pub t1: u64,
    pub t2: u64,
    /// `(t1 rem l_Z, t2 rem l_W)` from the residue scan; `None` when the
    /// solution came from the brute-force scan instead.
    pub residues: Option<(u64, u64)>,
    pub tau: i64,
    /// Always true on returned solutions: set only after `U` was
    /// reproduced by exact recomputation, never from the CSR expansion
    /// alone.
    pub verified: bool,
}

/// The linear constraint tying β to one residue pair:
/// `β - τ - λ1·t̄1 - λ2·t̄2 = (λ1·l_Z)·x + (λ2·l_W)·y` with
/// `x ≥ ((n-1)·l_Z - t̄1)/l_Z` and `y ≥ ((n-1)·l_W - t̄2)/l_W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftEquation {
    pub beta: Rational,
    pub tau: i64,
    pub lambda1: Rational,
    pub lambda2: Rational,
    pub tbar1: u64,
    pub tbar2: u64,
    pub l_z: u64,
    pub l_w: u64,
    pub n: usize,
}

impl ShiftEquation {
    /// The nonnegative `(x, y)` meeting both lower bounds that minimizes
    /// `x` then `y`, or `None` when the equation has no such solution.
    ///
    /// `λ·l` is a critical cycle weight, hence an integer; with integer
    /// unknowns the right-hand side is an integer, so a fractional
    /// left-hand side rules the pair out immediately.
    pub fn solve(&self) -> Option<(u64, u64)> {
        let coeff_x = self
            .lambda1
            .checked_mul_int(self.l_z as i64)
            .ok()?
            .as_integer()?;
        let coeff_y = self
            .lambda2
            .checked_mul_int(self.l_w as i64)
            .ok()?
            .as_integer()?;

        let target = self
            .beta
            .checked_sub(&Rational::from_int(self.tau))
            .ok()?
            .checked_sub(&self.lambda1.checked_mul_int(self.tbar1 as i64).ok()?)
            .ok()?
            .checked_sub(&self.lambda2.checked_mul_int(self.tbar2 as i64).ok()?)
            .ok()?;
        let target = target.as_integer()?;

        let x_min = lower_bound(self.n, self.l_z, self.tbar1);
        let y_min = lower_bound(self.n, self.l_w, self.tbar2);
        let (x, y) = solve_bounded(
            coeff_x as i128,
            coeff_y as i128,
            target as i128,
            x_min,
            y_min,
        )?;
        Some((u64::try_from(x).ok()?, u64::try_from(y).ok()?))
    }

    /// Exponents assembled from a solution of the equation.
    pub fn exponents(&self, x: u64, y: u64) -> Option<(u64, u64)> {
        let t1 = self.l_z.checked_mul(x)?.checked_add(self.tbar1)?;
        let t2 = self.l_w.checked_mul(y)?.checked_add(self.tbar2)?;
        Some((t1, t2))
    }
}

/// `max(0, ⌈((n-1)·l - t̄) / l⌉)`: the smallest multiplier keeping the
/// assembled exponent at or above the expansion threshold `(n-1)·l`.
fn lower_bound(n: usize, l: u64, tbar: u64) -> i128 {
    let thresh = (n as i128 - 1) * l as i128 - tbar as i128;
    ceil_div(thresh, l as i128).max(0)
}

/// β such that `U - (S_Z^⊙t̄1 ⊙ R_Z ⊙ M ⊙ C_W ⊙ S_W^⊙t̄2)` equals β at
/// every position `(i, j)` with `i` on `Z` and `j` on `W`; `None` when
/// the difference is not one finite constant.
#[allow(clippy::too_many_arguments)]
pub fn residue_check(
    u: &TropMatrix,
    s_z_pow: &RatTropMatrix,
    r_z: &RatTropMatrix,
    m: &TropMatrix,
    c_w: &RatTropMatrix,
    s_w_pow: &RatTropMatrix,
    z: &CriticalCycle,
    w: &CriticalCycle,
) -> Result<Option<Rational>> {
    let product = s_z_pow
        .mul(r_z)?
        .mul(&m.to_rational())?
        .mul(c_w)?
        .mul(s_w_pow)?;
    constant_difference(u, &product, z, w)
}

fn constant_difference(
    u: &TropMatrix,
    product: &RatTropMatrix,
    z: &CriticalCycle,
    w: &CriticalCycle,
) -> Result<Option<Rational>> {
    let mut beta: Option<Rational> = None;
    for &i in z.vertices() {
        for &j in w.vertices() {
            let (Trop::Fin(lhs), Trop::Fin(rhs)) = (u.get(i, j), product.get(i, j)) else {
                return Ok(None);
            };
            let diff = Rational::from_int(lhs).checked_sub(&rhs)?;
            match beta {
                None => beta = Some(diff),
                Some(b) if b == diff => {}
                Some(_) => return Ok(None),
            }
        }
    }
    Ok(beta)
}

/// Residue-scan solver for the two-sided discrete logarithm.
///
/// Scans `(t̄1, t̄2)` over `[0, l_Z) × [0, l_W)` in lexicographic order;
/// each candidate that passes the constant-difference test and whose
/// shift equation is solvable is verified by recomputing
/// `D1^⊙t1 ⊙ M ⊙ D2^⊙t2 ⊙ τ` exactly. The first verified pair in scan
/// order is returned (the scan may run on the thread pool; the winner is
/// still the lexicographically first).
///
/// Requires both `D1` and `D2` to have cycles (λ ≠ -inf).
pub fn two_sided_dlog(inst: &DlogInstance) -> Result<Option<AttackSolution>> {
    let dec1 = csr_decompose(&inst.d1)?;
    let dec2 = csr_decompose(&inst.d2)?;
    two_sided_dlog_with(inst, &dec1, &dec2)
}

/// As [`two_sided_dlog`], reusing precomputed decompositions.
pub fn two_sided_dlog_with(
    inst: &DlogInstance,
    dec1: &CsrDecomposition,
    dec2: &CsrDecomposition,
) -> Result<Option<AttackSolution>> {
    let n = inst.size();
    let l_z = dec1.cycle.len();
    let l_w = dec2.cycle.len();

    let rmc = dec1.r.mul(&inst.m.to_rational())?.mul(&dec2.c)?;
    let left = matrix_powers(&dec1.s, l_z)?
        .into_iter()
        .map(|p| p.mul(&rmc))
        .collect::<Result<Vec<_>>>()?;
    let right = matrix_powers(&dec2.s, l_w)?;

    let outcome = first_hit(l_z * l_w, |idx| {
        let tbar1 = (idx / l_w) as u64;
        let tbar2 = (idx % l_w) as u64;
        match try_residue_pair(
            inst,
            dec1,
            dec2,
            &left[idx / l_w],
            &right[idx % l_w],
            tbar1,
            tbar2,
            n,
        ) {
            Ok(None) => None,
            Ok(Some(sol)) => Some(Ok(sol)),
            Err(e) => Some(Err(e)),
        }
    });
    outcome.transpose()
}

/// `[S^⊙0, S^⊙1, …, S^⊙(count-1)]`.
fn matrix_powers(s: &RatTropMatrix, count: usize) -> Result<Vec<RatTropMatrix>> {
    let mut pows = Vec::with_capacity(count);
    pows.push(RatTropMatrix::identity(s.rows()));
    for k in 1..count {
        let next = pows[k - 1].mul(s)?;
        pows.push(next);
    }
    Ok(pows)
}

#[allow(clippy::too_many_arguments)]
fn try_residue_pair(
    inst: &DlogInstance,
    dec1: &CsrDecomposition,
    dec2: &CsrDecomposition,
    left: &RatTropMatrix,
    s_w_pow: &RatTropMatrix,
    tbar1: u64,
    tbar2: u64,
    n: usize,
) -> Result<Option<AttackSolution>> {
    let product = left.mul(s_w_pow)?;
    let Some(beta) = constant_difference(&inst.u, &product, &dec1.cycle, &dec2.cycle)? else {
        return Ok(None);
    };

    let equation = ShiftEquation {
        beta,
        tau: inst.tau,
        lambda1: dec1.lambda,
        lambda2: dec2.lambda,
        tbar1,
        tbar2,
        l_z: dec1.cycle.len() as u64,
        l_w: dec2.cycle.len() as u64,
        n,
    };
    let Some((x, y)) = equation.solve() else {
        return Ok(None);
    };
    let Some((t1, t2)) = equation.exponents(x, y) else {
        return Ok(None);
    };

    if reproduces(inst, t1, t2)? {
        Ok(Some(AttackSolution {
            t1,
            t2,
            residues: Some((tbar1, tbar2)),
            tau: inst.tau,
            verified: true,
        }))
    } else {
        Ok(None)
    }
}

/// Exact check that `(t1, t2)` reproduces `U`.
fn reproduces(inst: &DlogInstance, t1: u64, t2: u64) -> Result<bool> {
    let p = inst
        .d1
        .pow(t1)?
        .mul(&inst.m)?
        .mul(&inst.d2.pow(t2)?)?
        .scalar_shift(inst.tau)?;
    Ok(p == inst.u)
}

/// Exhaustive reference solver: scans `t1` ascending then `t2` ascending
/// over `[0, max_t]²` with incremental products, returning the first
/// exact match.
pub fn brute_force_dlog(inst: &DlogInstance, max_t: u64) -> Result<Option<(u64, u64)>> {
    let neg_tau = inst.tau.checked_neg().ok_or(Error::Overflow)?;
    let target = inst.u.scalar_shift(neg_tau)?;
    let mut left = inst.m.clone();
    for t1 in 0..=max_t {
        if t1 > 0 {
            left = inst.d1.mul(&left)?;
        }
        let mut p = left.clone();
        for t2 in 0..=max_t {
            if t2 > 0 {
                p = p.mul(&inst.d2)?;
            }
            if p == target {
                return Ok(Some((t1, t2)));
            }
        }
    }
    Ok(None)
}

/// Knobs for [`recover_key`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackConfig {
    /// Largest exponent the brute-force fallback scans when the CSR path
    /// comes up empty. The default keeps the fallback within roughly a
    /// thousand matrix products.
    pub fallback_max_t: u64,
}

impl Default for AttackConfig {
    fn default() -> Self {
        Self { fallback_max_t: 31 }
    }
}

/// How a recovery was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttackMethod {
    Csr,
    BruteForce,
}

impl AttackMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            AttackMethod::Csr => "csr",
            AttackMethod::BruteForce => "brute-force",
        }
    }
}

/// Outcome of a successful key recovery.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyRecovery {
    pub solution: AttackSolution,
    pub key: ProtocolMatrix,
    pub method: AttackMethod,
    /// `(n-1)·max(l_Z, l_W)`: the exponent threshold the CSR expansion
    /// was trusted from. `None` when the brute-force fallback produced
    /// the solution.
    pub csr_threshold: Option<u64>,
}

/// Recovers the shared key from a public transcript.
///
/// Solves `A = X^⊙t1 ⊙ Y^⊙t2` as a two-sided discrete logarithm with
/// `M = I` and τ = 0 — through the circulant embedding for triad
/// transcripts — then evaluates `X^⊙t1 ⊙ B ⊙ Y^⊙t2`, which equals the
/// honest shared key for any verified pair. Falls back to the bounded
/// brute-force scan when the CSR path finds nothing (including when a
/// public matrix is acyclic and has no cycle mean).
pub fn recover_key(transcript: &Transcript, cfg: &AttackConfig) -> Result<KeyRecovery> {
    match (&transcript.x, &transcript.y, &transcript.a, &transcript.b) {
        (
            ProtocolMatrix::Tropical(x),
            ProtocolMatrix::Tropical(y),
            ProtocolMatrix::Tropical(a),
            ProtocolMatrix::Tropical(b),
        ) => {
            let rec = recover_tropical(x, y, a, b, cfg)?;
            Ok(KeyRecovery {
                key: ProtocolMatrix::Tropical(rec.1),
                solution: rec.0,
                method: rec.2,
                csr_threshold: rec.3,
            })
        }
        (
            ProtocolMatrix::Triad(x),
            ProtocolMatrix::Triad(y),
            ProtocolMatrix::Triad(a),
            ProtocolMatrix::Triad(b),
        ) => {
            let rec = recover_tropical(&embed(x), &embed(y), &embed(a), &embed(b), cfg)?;
            Ok(KeyRecovery {
                key: ProtocolMatrix::Triad(extract(&rec.1)?),
                solution: rec.0,
                method: rec.2,
                csr_threshold: rec.3,
            })
        }
        _ => Err(Error::InvalidParams(
            "transcript mixes semirings across matrices".into(),
        )),
    }
}

fn recover_tropical(
    x: &TropMatrix,
    y: &TropMatrix,
    a: &TropMatrix,
    b: &TropMatrix,
    cfg: &AttackConfig,
) -> Result<(AttackSolution, TropMatrix, AttackMethod, Option<u64>)> {
    let n = x.rows();
    let inst = DlogInstance::new(a.clone(), x.clone(), TropMatrix::identity(n), y.clone(), 0)?;

    // No cycle mean means no CSR expansion; the fallback still applies.
    let csr_outcome = match (csr_decompose(&inst.d1), csr_decompose(&inst.d2)) {
        (Ok(dec1), Ok(dec2)) => {
            let threshold = (n as u64 - 1) * (dec1.cycle.len() as u64).max(dec2.cycle.len() as u64);
            two_sided_dlog_with(&inst, &dec1, &dec2)?.map(|sol| (sol, threshold))
        }
        (Err(Error::Acyclic), _) | (_, Err(Error::Acyclic)) => None,
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    if let Some((solution, threshold)) = csr_outcome {
        let key = apply_exponents(x, y, b, solution.t1, solution.t2)?;
        return Ok((solution, key, AttackMethod::Csr, Some(threshold)));
    }

    if let Some((t1, t2)) = brute_force_dlog(&inst, cfg.fallback_max_t)? {
        let solution = AttackSolution {
            t1,
            t2,
            residues: None,
            tau: 0,
            verified: true,
        };
        let key = apply_exponents(x, y, b, t1, t2)?;
        return Ok((solution, key, AttackMethod::BruteForce, None));
    }

    Err(Error::AttackFailed)
}

fn apply_exponents(
    x: &TropMatrix,
    y: &TropMatrix,
    b: &TropMatrix,
    t1: u64,
    t2: u64,
) -> Result<TropMatrix> {
    x.pow(t1)?.mul(b)?.mul(&y.pow(t2)?)
}
