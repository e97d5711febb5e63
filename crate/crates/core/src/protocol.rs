//! The two-sided monomial key exchange, over plain tropical matrices and
//! over triad matrices.
//!
//! Both parties agree on public square matrices `X`, `Y`. One side picks
//! secret exponents `(a, b)` and sends `A = X^⊙a ⊙ Y^⊙b`; the other picks
//! `(c, d)` and sends `B = X^⊙c ⊙ Y^⊙d`. Each then computes
//! `K = X^⊙(own1) ⊙ (received) ⊙ Y^⊙(own2)`; associativity makes the two
//! values agree, and that matrix is the shared key.
//!
//! Instance generation is a pure function of [`ProtocolParams`]: entries
//! are sampled row-major (all three coordinates in order for triads) for
//! `X` then `Y`, followed by the four exponents, all from one
//! [`SplitMix64`](crate::rng::SplitMix64) stream, so a seed pins the
//! transcript bit-for-bit.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, TropMatrix};
use crate::rng::SplitMix64;
use crate::semiring::{Trop, TropScalar};
use crate::triad::{Triad, TriadMatrix};

/// Which semiring a protocol run lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemiringKind {
    Tropical,
    Triad,
}

impl SemiringKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SemiringKind::Tropical => "tropical",
            SemiringKind::Triad => "triad",
        }
    }
}

/// A matrix from either semiring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProtocolMatrix {
    Tropical(TropMatrix),
    Triad(TriadMatrix),
}

impl ProtocolMatrix {
    pub fn kind(&self) -> SemiringKind {
        match self {
            ProtocolMatrix::Tropical(_) => SemiringKind::Tropical,
            ProtocolMatrix::Triad(_) => SemiringKind::Triad,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            ProtocolMatrix::Tropical(m) => m.rows(),
            ProtocolMatrix::Triad(m) => m.rows(),
        }
    }

    pub fn as_tropical(&self) -> Option<&TropMatrix> {
        match self {
            ProtocolMatrix::Tropical(m) => Some(m),
            ProtocolMatrix::Triad(_) => None,
        }
    }

    pub fn as_triad(&self) -> Option<&TriadMatrix> {
        match self {
            ProtocolMatrix::Triad(m) => Some(m),
            ProtocolMatrix::Tropical(_) => None,
        }
    }
}

/// Instance-generation parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolParams {
    pub n: usize,
    pub entry_min: i64,
    pub entry_max: i64,
    /// Probability that a sampled coordinate is `-inf` instead of a
    /// uniform integer in `[entry_min, entry_max]`.
    pub neginf_density: f64,
    pub exp_min: u64,
    pub exp_max: u64,
    pub semiring: SemiringKind,
    pub seed: u64,
}

pub const DEFAULT_ENTRY_MIN: i64 = -100;
pub const DEFAULT_ENTRY_MAX: i64 = 100;
pub const DEFAULT_EXP_MIN: u64 = 1 << 10;
pub const DEFAULT_EXP_MAX: u64 = 1 << 20;

impl ProtocolParams {
    /// Desk-scale defaults: entries in [-100, 100], no `-inf`, exponents
    /// in [2^10, 2^20].
    pub fn new(n: usize, semiring: SemiringKind, seed: u64) -> Self {
        Self {
            n,
            entry_min: DEFAULT_ENTRY_MIN,
            entry_max: DEFAULT_ENTRY_MAX,
            neginf_density: 0.0,
            exp_min: DEFAULT_EXP_MIN,
            exp_max: DEFAULT_EXP_MAX,
            semiring,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParams(
                "matrix size must be at least 1".into(),
            ));
        }
        if self.entry_min > self.entry_max {
            return Err(Error::InvalidParams(format!(
                "entry range is empty: [{}, {}]",
                self.entry_min, self.entry_max
            )));
        }
        if !(0.0..1.0).contains(&self.neginf_density) {
            return Err(Error::InvalidParams(format!(
                "neginf density {} outside [0, 1)",
                self.neginf_density
            )));
        }
        if self.exp_min < 1 {
            return Err(Error::InvalidParams("exponents must be at least 1".into()));
        }
        if self.exp_min > self.exp_max {
            return Err(Error::InvalidParams(format!(
                "exponent range is empty: [{}, {}]",
                self.exp_min, self.exp_max
            )));
        }
        Ok(())
    }
}

/// The public data of one exchange.
#[derive(Debug, Clone, PartialEq)]
pub struct Transcript {
    pub x: ProtocolMatrix,
    pub y: ProtocolMatrix,
    pub a: ProtocolMatrix,
    pub b: ProtocolMatrix,
}

impl Transcript {
    pub fn semiring(&self) -> SemiringKind {
        self.x.kind()
    }

    pub fn size(&self) -> usize {
        self.x.size()
    }
}

/// The secrets of one exchange: the four exponents and the agreed key.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyMaterial {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub key: ProtocolMatrix,
}

fn sample_scalar(rng: &mut SplitMix64, p: &ProtocolParams) -> TropScalar {
    if p.neginf_density > 0.0 && rng.chance(p.neginf_density) {
        Trop::NegInf
    } else {
        Trop::Fin(rng.range_i64(p.entry_min, p.entry_max))
    }
}

fn sample_trop_matrix(rng: &mut SplitMix64, p: &ProtocolParams) -> TropMatrix {
    let entries = (0..p.n * p.n).map(|_| sample_scalar(rng, p)).collect();
    Matrix::new(p.n, p.n, entries).expect("sampled entry count matches n*n")
}

fn sample_triad_matrix(rng: &mut SplitMix64, p: &ProtocolParams) -> TriadMatrix {
    let entries = (0..p.n * p.n)
        .map(|_| {
            let a = sample_scalar(rng, p);
            let b = sample_scalar(rng, p);
            let c = sample_scalar(rng, p);
            Triad::new(a, b, c)
        })
        .collect();
    Matrix::new(p.n, p.n, entries).expect("sampled entry count matches n*n")
}

/// One full honest exchange: public transcript plus the secrets and the
/// agreed key. Deterministic in `params` (including the seed).
///
/// The two independently derived keys are compared before returning;
/// disagreement would mean broken algebra and is reported as an error.
pub fn generate_instance(params: &ProtocolParams) -> Result<(Transcript, KeyMaterial)> {
    params.validate()?;
    let mut rng = SplitMix64::new(params.seed);

    match params.semiring {
        SemiringKind::Tropical => {
            let x = sample_trop_matrix(&mut rng, params);
            let y = sample_trop_matrix(&mut rng, params);
            let (a, b, c, d) = sample_exponents(&mut rng, params);
            let exchange = run_exchange(&x, &y, a, b, c, d)?;
            Ok(package(
                ProtocolMatrix::Tropical(x),
                ProtocolMatrix::Tropical(y),
                ProtocolMatrix::Tropical(exchange.sent_a),
                ProtocolMatrix::Tropical(exchange.sent_b),
                ProtocolMatrix::Tropical(exchange.key),
                (a, b, c, d),
            ))
        }
        SemiringKind::Triad => {
            let x = sample_triad_matrix(&mut rng, params);
            let y = sample_triad_matrix(&mut rng, params);
            let (a, b, c, d) = sample_exponents(&mut rng, params);
            let exchange = run_exchange(&x, &y, a, b, c, d)?;
            Ok(package(
                ProtocolMatrix::Triad(x),
                ProtocolMatrix::Triad(y),
                ProtocolMatrix::Triad(exchange.sent_a),
                ProtocolMatrix::Triad(exchange.sent_b),
                ProtocolMatrix::Triad(exchange.key),
                (a, b, c, d),
            ))
        }
    }
}

fn sample_exponents(rng: &mut SplitMix64, p: &ProtocolParams) -> (u64, u64, u64, u64) {
    let a = rng.range_u64(p.exp_min, p.exp_max);
    let b = rng.range_u64(p.exp_min, p.exp_max);
    let c = rng.range_u64(p.exp_min, p.exp_max);
    let d = rng.range_u64(p.exp_min, p.exp_max);
    (a, b, c, d)
}

struct Exchange<M> {
    sent_a: M,
    sent_b: M,
    key: M,
}

fn run_exchange<S: crate::semiring::Semiring>(
    x: &Matrix<S>,
    y: &Matrix<S>,
    a: u64,
    b: u64,
    c: u64,
    d: u64,
) -> Result<Exchange<Matrix<S>>> {
    let sent_a = x.pow(a)?.mul(&y.pow(b)?)?;
    let sent_b = x.pow(c)?.mul(&y.pow(d)?)?;
    let key_a = derive_key_inner(x, y, &sent_b, a, b)?;
    let key_b = derive_key_inner(x, y, &sent_a, c, d)?;
    if key_a != key_b {
        return Err(Error::KeyDisagreement);
    }
    Ok(Exchange {
        sent_a,
        sent_b,
        key: key_a,
    })
}

fn package(
    x: ProtocolMatrix,
    y: ProtocolMatrix,
    a: ProtocolMatrix,
    b: ProtocolMatrix,
    key: ProtocolMatrix,
    exps: (u64, u64, u64, u64),
) -> (Transcript, KeyMaterial) {
    (
        Transcript { x, y, a, b },
        KeyMaterial {
            a: exps.0,
            b: exps.1,
            c: exps.2,
            d: exps.3,
            key,
        },
    )
}

fn derive_key_inner<S: crate::semiring::Semiring>(
    x: &Matrix<S>,
    y: &Matrix<S>,
    other_public: &Matrix<S>,
    e1: u64,
    e2: u64,
) -> Result<Matrix<S>> {
    x.pow(e1)?.mul(other_public)?.mul(&y.pow(e2)?)
}

/// `X^⊙e1 ⊙ other ⊙ Y^⊙e2`: the key-derivation step applied to the
/// matrix received from the peer.
pub fn derive_key(
    x: &ProtocolMatrix,
    y: &ProtocolMatrix,
    other_public: &ProtocolMatrix,
    e1: u64,
    e2: u64,
) -> Result<ProtocolMatrix> {
    match (x, y, other_public) {
        (ProtocolMatrix::Tropical(x), ProtocolMatrix::Tropical(y), ProtocolMatrix::Tropical(o)) => {
            Ok(ProtocolMatrix::Tropical(derive_key_inner(x, y, o, e1, e2)?))
        }
        (ProtocolMatrix::Triad(x), ProtocolMatrix::Triad(y), ProtocolMatrix::Triad(o)) => {
            Ok(ProtocolMatrix::Triad(derive_key_inner(x, y, o, e1, e2)?))
        }
        _ => Err(Error::InvalidParams(
            "mixed semirings in one key derivation".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triad::embed;

    #[test]
    fn scalar_exchange_by_hand() {
        // 1×1 tropical: powers are scalar multiples. X=[2], Y=[3],
        // a=b=1, c=d=2: A = 2+3 = 5, B = 4+6 = 10, K = 2+10+3 = 15.
        let x = TropMatrix::from_rows(vec![vec![Trop::Fin(2)]]).unwrap();
        let y = TropMatrix::from_rows(vec![vec![Trop::Fin(3)]]).unwrap();
        let ex = run_exchange(&x, &y, 1, 1, 2, 2).unwrap();
        assert_eq!(ex.sent_a[(0, 0)], Trop::Fin(5));
        assert_eq!(ex.sent_b[(0, 0)], Trop::Fin(10));
        assert_eq!(ex.key[(0, 0)], Trop::Fin(15));
    }

    #[test]
    fn derive_key_consistency() {
        let x = TropMatrix::from_rows(vec![vec![Trop::Fin(2)]]).unwrap();
        let y = TropMatrix::from_rows(vec![vec![Trop::Fin(3)]]).unwrap();
        let k = derive_key_inner(
            &x,
            &y,
            &TropMatrix::from_rows(vec![vec![Trop::Fin(10)]]).unwrap(),
            1,
            1,
        )
        .unwrap();
        assert_eq!(k[(0, 0)], Trop::Fin(15));
    }

    #[test]
    fn derive_key_with_identity_is_plain_product() {
        let mut rng = SplitMix64::new(23);
        let p = ProtocolParams::new(3, SemiringKind::Tropical, 23);
        let x = sample_trop_matrix(&mut rng, &p);
        let y = sample_trop_matrix(&mut rng, &p);
        let k = derive_key_inner(&x, &y, &TropMatrix::identity(3), 1, 1).unwrap();
        assert_eq!(k, x.mul(&y).unwrap());
    }

    #[test]
    fn both_derivations_agree_through_public_api() {
        let mut p = ProtocolParams::new(3, SemiringKind::Triad, 29);
        p.exp_min = 1;
        p.exp_max = 64;
        let (t, km) = generate_instance(&p).unwrap();
        let from_b = derive_key(&t.x, &t.y, &t.b, km.a, km.b).unwrap();
        let from_a = derive_key(&t.x, &t.y, &t.a, km.c, km.d).unwrap();
        assert_eq!(from_b, from_a);
        assert_eq!(from_b, km.key);
    }

    #[test]
    fn same_seed_same_instance() {
        let p = ProtocolParams::new(3, SemiringKind::Triad, 42);
        let one = generate_instance(&p).unwrap();
        let two = generate_instance(&p).unwrap();
        assert_eq!(one.0, two.0);
        assert_eq!(one.1, two.1);
    }

    #[test]
    fn different_seeds_differ() {
        let p1 = ProtocolParams::new(3, SemiringKind::Tropical, 1);
        let p2 = ProtocolParams {
            seed: 2,
            ..p1.clone()
        };
        assert_ne!(
            generate_instance(&p1).unwrap().0,
            generate_instance(&p2).unwrap().0
        );
    }

    #[test]
    fn keys_agree_on_small_sweep() {
        for seed in 0..50 {
            for kind in [SemiringKind::Tropical, SemiringKind::Triad] {
                let mut p = ProtocolParams::new(3, kind, seed);
                // Small exponents keep this sweep fast.
                p.exp_min = 1;
                p.exp_max = 64;
                generate_instance(&p).expect("keys must agree");
            }
        }
    }

    #[test]
    fn exchange_commutes_with_embedding() {
        let mut p = ProtocolParams::new(2, SemiringKind::Triad, 7);
        p.exp_min = 1;
        p.exp_max = 32;
        let (t, km) = generate_instance(&p).unwrap();
        let (x, y) = (t.x.as_triad().unwrap(), t.y.as_triad().unwrap());
        let ex = run_exchange(&embed(x), &embed(y), km.a, km.b, km.c, km.d).unwrap();
        assert_eq!(embed(t.a.as_triad().unwrap()), ex.sent_a);
        assert_eq!(embed(t.b.as_triad().unwrap()), ex.sent_b);
        assert_eq!(embed(km.key.as_triad().unwrap()), ex.key);
    }

    #[test]
    fn invalid_params_are_rejected() {
        let mut p = ProtocolParams::new(3, SemiringKind::Tropical, 0);
        p.exp_min = 0;
        assert!(matches!(
            generate_instance(&p),
            Err(Error::InvalidParams(_))
        ));

        let mut p = ProtocolParams::new(3, SemiringKind::Tropical, 0);
        p.entry_min = 5;
        p.entry_max = -5;
        assert!(matches!(
            generate_instance(&p),
            Err(Error::InvalidParams(_))
        ));

        let mut p = ProtocolParams::new(3, SemiringKind::Tropical, 0);
        p.neginf_density = 1.0;
        assert!(matches!(
            generate_instance(&p),
            Err(Error::InvalidParams(_))
        ));

        let p = ProtocolParams::new(0, SemiringKind::Tropical, 0);
        assert!(matches!(
            generate_instance(&p),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn density_produces_neg_inf_entries() {
        let mut p = ProtocolParams::new(6, SemiringKind::Tropical, 11);
        p.neginf_density = 0.4;
        p.exp_min = 1;
        p.exp_max = 4;
        // Key agreement may still hold; we only care that sampling honors
        // the density knob.
        let mut rng = SplitMix64::new(p.seed);
        let m = sample_trop_matrix(&mut rng, &p);
        let neginf = m.entries().iter().filter(|e| **e == Trop::NegInf).count();
        assert!(neginf > 0);
    }
}
