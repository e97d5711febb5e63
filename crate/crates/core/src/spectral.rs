//! Spectral analysis of tropical matrices: maximum cycle mean, critical
//! cycles, Kleene star, and the CSR decomposition that predicts high
//! matrix powers.
//!
//! A square tropical matrix is the weight matrix of a digraph on its
//! indices (finite entry = arc). The maximum cycle mean λ governs the
//! asymptotic growth of powers: past a threshold,
//!
//! ```text
//! A^⊙t = λ·t ⊙ (C ⊙ S^⊙(t rem l) ⊙ R) ⊕ B^⊙t
//! ```
//!
//! where the factors are extracted from a critical cycle of length `l`.
//! The attack uses this expansion to reduce huge powers to a residue scan.
//!
//! λ is a mean of integers, so everything here runs on exact rationals;
//! no equality check ever goes through floating point.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, RatTropMatrix, TropMatrix};
use crate::rational::Rational;
use crate::semiring::{Semiring, Trop, Weight};

/// A cycle attaining the maximum cycle mean.
///
/// `vertices` lists the cycle in walk order; arcs run between consecutive
/// vertices plus the closing arc back to the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalCycle {
    vertices: Vec<usize>,
}

impl CriticalCycle {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Cycle length `l`.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Arcs of the cycle, including the closing arc.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let l = self.vertices.len();
        (0..l).map(move |i| (self.vertices[i], self.vertices[(i + 1) % l]))
    }

    /// Total arc weight of the cycle in `a` (an integer; the mean times
    /// the length).
    pub fn weight_in(&self, a: &TropMatrix) -> Result<i64> {
        let mut total = 0i64;
        for (i, j) in self.arcs() {
            let w = a.get(i, j).finite().ok_or_else(|| {
                Error::InvalidParams(format!("cycle arc ({i},{j}) is not present in the matrix"))
            })?;
            total = total.checked_add(w).ok_or(Error::Overflow)?;
        }
        Ok(total)
    }
}

/// The factors of the CSR expansion of one matrix, together with the
/// spectral data they were built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsrDecomposition {
    pub lambda: Rational,
    pub cycle: CriticalCycle,
    /// Star of the normalized cycle-length power, `((A ⊙ λ⁻¹)^⊙l)^*`.
    pub u: RatTropMatrix,
    /// `u` restricted to columns on the cycle.
    pub c: RatTropMatrix,
    /// Normalized arc weights on the cycle, `-inf` elsewhere.
    pub s: RatTropMatrix,
    /// `u` restricted to rows on the cycle.
    pub r: RatTropMatrix,
    /// Original entries off the cycle's rows and columns, `-inf` on them.
    pub b: RatTropMatrix,
}

/// Maximum over all cycles of (cycle weight)/(cycle length), or `None`
/// when the digraph of finite entries is acyclic.
///
/// Karp's dynamic program, run independently inside each strongly
/// connected component (every cycle lives in one).
pub fn max_cycle_mean<T: Weight>(a: &Matrix<Trop<T>>) -> Result<Option<Rational>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut graph: DiGraph<(), ()> = DiGraph::new();
    for _ in 0..n {
        graph.add_node(());
    }
    for (i, j, _) in a.finite_arcs() {
        graph.add_edge((i as u32).into(), (j as u32).into(), ());
    }

    let mut best: Option<Rational> = None;
    for component in tarjan_scc(&graph) {
        let mut comp: Vec<usize> = component.into_iter().map(|ix| ix.index()).collect();
        comp.sort_unstable();
        if let Some(mean) = karp_component(a, &comp)? {
            best = Some(best.map_or(mean, |b| b.max(mean)));
        }
    }
    Ok(best)
}

/// Karp's formula on one strongly connected component:
/// `λ = max_v min_k (F_m(v) - F_k(v)) / (m - k)` over finite walk
/// weights `F_k` of length exactly `k` from a fixed source.
fn karp_component<T: Weight>(a: &Matrix<Trop<T>>, comp: &[usize]) -> Result<Option<Rational>> {
    let m = comp.len();
    if m == 1 {
        let v = comp[0];
        return Ok(a.get(v, v).finite().map(Weight::to_rational));
    }

    let mut pos = vec![usize::MAX; a.rows()];
    for (idx, &v) in comp.iter().enumerate() {
        pos[v] = idx;
    }

    let mut walk = vec![vec![Trop::NegInf; m]; m + 1];
    walk[0][0] = Trop::Fin(T::zero());
    for k in 1..=m {
        for (ui, &u) in comp.iter().enumerate() {
            let from = walk[k - 1][ui];
            if from == Trop::NegInf {
                continue;
            }
            for (vi, &v) in comp.iter().enumerate() {
                if let Trop::Fin(w) = a.get(u, v) {
                    let cand = from.mul(Trop::Fin(w))?;
                    walk[k][vi] = walk[k][vi].add(cand);
                }
            }
        }
    }

    let mut best: Option<Rational> = None;
    for vi in 0..m {
        let Trop::Fin(last) = walk[m][vi] else {
            continue;
        };
        let mut v_min: Option<Rational> = None;
        for (k, row) in walk.iter().enumerate().take(m) {
            let Trop::Fin(fk) = row[vi] else { continue };
            let diff = last.checked_minus(fk).ok_or(Error::Overflow)?;
            let q = diff.to_rational().checked_div_int((m - k) as i64)?;
            v_min = Some(v_min.map_or(q, |x| x.min(q)));
        }
        if let Some(q) = v_min {
            best = Some(best.map_or(q, |x| x.max(q)));
        }
    }
    Ok(best)
}

/// Kleene star `A* = I ⊕ A ⊕ A^⊙2 ⊕ … ⊕ A^⊙(n-1)`: all-pairs maximum
/// path weight with empty paths allowed. Defined only when λ(A) ≤ 0;
/// a positive cycle makes the series diverge.
pub fn kleene_star<T: Weight>(a: &Matrix<Trop<T>>) -> Result<Matrix<Trop<T>>> {
    match max_cycle_mean(a)? {
        Some(lambda) if lambda > Rational::zero() => return Err(Error::DivergentStar),
        _ => {}
    }
    let n = a.rows();
    let mut d = a.clone();
    for k in 0..n {
        for i in 0..n {
            let via = d.get(i, k);
            if via == Trop::NegInf {
                continue;
            }
            for j in 0..n {
                let cand = via.mul(d.get(k, j))?;
                if cand > d.get(i, j) {
                    d.set(i, j, cand);
                }
            }
        }
    }
    for i in 0..n {
        d.set(i, i, d.get(i, i).add(Trop::Fin(T::zero())));
    }
    Ok(d)
}

/// Deterministically extracts a cycle attaining `lambda`, which must be
/// the maximum cycle mean of `a`.
///
/// An arc `(i,j)` of the λ-normalized matrix `Â` is critical exactly
/// when `Â_ij ⊙ (Â*)_ji = 0`, i.e. it closes a zero-weight circuit. The
/// walk starts at the lowest-index vertex with an outgoing critical arc,
/// always follows the lowest-index critical successor, and returns the
/// first cycle it closes. (Every cycle of the critical graph attains λ,
/// so the greedy walk cannot go wrong.)
pub fn critical_cycle(a: &TropMatrix, lambda: Rational) -> Result<CriticalCycle> {
    let n = a.rows();
    let ahat = a.to_rational().scalar_shift(lambda.checked_neg()?)?;
    let star = kleene_star(&ahat)?;

    let mut successors: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, j, w) in ahat.finite_arcs() {
        if let Trop::Fin(back) = star.get(j, i) {
            if w.checked_add(&back)? == Rational::zero() {
                successors[i].push(j);
            }
        }
    }

    let start = (0..n).find(|&i| !successors[i].is_empty()).ok_or_else(|| {
        Error::InvalidParams("no critical arc: lambda is not the maximum cycle mean".into())
    })?;

    let mut path = vec![start];
    let mut position = vec![usize::MAX; n];
    position[start] = 0;
    loop {
        let current = *path.last().expect("path is never empty");
        let next = *successors[current]
            .first()
            .ok_or_else(|| Error::InvalidParams("critical walk left the critical graph".into()))?;
        if position[next] != usize::MAX {
            let vertices = path.split_off(position[next]);
            return Ok(CriticalCycle { vertices });
        }
        position[next] = path.len();
        path.push(next);
    }
}

/// Builds the CSR factors of `a`. Requires the digraph of finite entries
/// to have at least one cycle.
pub fn csr_decompose(a: &TropMatrix) -> Result<CsrDecomposition> {
    let lambda = max_cycle_mean(a)?.ok_or(Error::Acyclic)?;
    let cycle = critical_cycle(a, lambda)?;
    let n = a.rows();

    let ahat = a.to_rational().scalar_shift(lambda.checked_neg()?)?;
    let u = kleene_star(&ahat.pow(cycle.len() as u64)?)?;

    let mut on_cycle = vec![false; n];
    for &v in cycle.vertices() {
        on_cycle[v] = true;
    }
    let mut cycle_arc = vec![false; n * n];
    for (i, j) in cycle.arcs() {
        cycle_arc[i * n + j] = true;
    }

    let c = Matrix::from_fn(n, n, |i, j| {
        if on_cycle[j] {
            u.get(i, j)
        } else {
            Trop::NegInf
        }
    });
    let r = Matrix::from_fn(n, n, |i, j| {
        if on_cycle[i] {
            u.get(i, j)
        } else {
            Trop::NegInf
        }
    });
    let s = Matrix::from_fn(n, n, |i, j| {
        if cycle_arc[i * n + j] {
            ahat.get(i, j)
        } else {
            Trop::NegInf
        }
    });
    let b = Matrix::from_fn(n, n, |i, j| {
        if on_cycle[i] || on_cycle[j] {
            Trop::NegInf
        } else {
            a.get(i, j).to_rational()
        }
    });

    Ok(CsrDecomposition {
        lambda,
        cycle,
        u,
        c,
        s,
        r,
        b,
    })
}

/// Evaluates `λ·t ⊙ (C ⊙ S^⊙(t rem l) ⊙ R) ⊕ B^⊙t`.
///
/// Agrees with the plain power for every `t` past the expansion
/// threshold; callers below it must verify independently.
pub fn csr_power(d: &CsrDecomposition, t: u64) -> Result<RatTropMatrix> {
    let l = d.cycle.len() as u64;
    let s_rem = d.s.pow(t % l)?;
    let csr = d.c.mul(&s_rem)?.mul(&d.r)?;
    let t_i64 = i64::try_from(t).map_err(|_| Error::Overflow)?;
    let shifted = csr.scalar_shift(d.lambda.checked_mul_int(t_i64)?)?;
    let tail = d.b.pow(t)?;
    shifted.join(&tail)
}
