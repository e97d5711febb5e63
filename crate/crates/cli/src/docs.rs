//! On-disk JSON documents and their conversions to library values.
//!
//! `-inf` is the JSON literal `null`; triad entries are exactly
//! three-element arrays. Field order is fixed by the struct definitions,
//! so serializing the same value twice yields identical bytes.

use serde::{Deserialize, Serialize};

use tropkex::protocol::{KeyMaterial, ProtocolMatrix, ProtocolParams, SemiringKind, Transcript};
use tropkex::semiring::Trop;
use tropkex::triad::Triad;
use tropkex::{Matrix, TriadMatrix, TropMatrix};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemiringTag {
    Tropical,
    Triad,
}

impl From<SemiringKind> for SemiringTag {
    fn from(kind: SemiringKind) -> Self {
        match kind {
            SemiringKind::Tropical => SemiringTag::Tropical,
            SemiringKind::Triad => SemiringTag::Triad,
        }
    }
}

impl From<SemiringTag> for SemiringKind {
    fn from(tag: SemiringTag) -> Self {
        match tag {
            SemiringTag::Tropical => SemiringKind::Tropical,
            SemiringTag::Triad => SemiringKind::Triad,
        }
    }
}

/// One matrix entry: an integer-or-null scalar, or a triple of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Scalar(Option<i64>),
    Triple([Option<i64>; 3]),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub semiring: SemiringTag,
    pub n: usize,
    pub entries: Vec<Vec<Entry>>,
}

fn scalar_to_json(s: Trop<i64>) -> Option<i64> {
    s.finite()
}

fn scalar_from_json(v: Option<i64>) -> Trop<i64> {
    match v {
        None => Trop::NegInf,
        Some(x) => Trop::Fin(x),
    }
}

impl MatrixDocument {
    pub fn from_matrix(m: &ProtocolMatrix) -> Self {
        match m {
            ProtocolMatrix::Tropical(m) => Self {
                semiring: SemiringTag::Tropical,
                n: m.rows(),
                entries: (0..m.rows())
                    .map(|i| {
                        m.row(i)
                            .iter()
                            .map(|&e| Entry::Scalar(scalar_to_json(e)))
                            .collect()
                    })
                    .collect(),
            },
            ProtocolMatrix::Triad(m) => Self {
                semiring: SemiringTag::Triad,
                n: m.rows(),
                entries: (0..m.rows())
                    .map(|i| {
                        m.row(i)
                            .iter()
                            .map(|t| {
                                let [a, b, c] = t.0;
                                Entry::Triple([
                                    scalar_to_json(a),
                                    scalar_to_json(b),
                                    scalar_to_json(c),
                                ])
                            })
                            .collect()
                    })
                    .collect(),
            },
        }
    }

    pub fn to_matrix(&self) -> Result<ProtocolMatrix, CliError> {
        if self.entries.len() != self.n || self.entries.iter().any(|r| r.len() != self.n) {
            return Err(CliError::Document(format!(
                "matrix document claims n={} but entry grid is {}x{}",
                self.n,
                self.entries.len(),
                self.entries.first().map_or(0, Vec::len),
            )));
        }
        match self.semiring {
            SemiringTag::Tropical => {
                let mut rows = Vec::with_capacity(self.n);
                for row in &self.entries {
                    let mut out = Vec::with_capacity(self.n);
                    for e in row {
                        match e {
                            Entry::Scalar(v) => out.push(scalar_from_json(*v)),
                            Entry::Triple(_) => {
                                return Err(CliError::Document(
                                    "triad entry in a tropical matrix".into(),
                                ))
                            }
                        }
                    }
                    rows.push(out);
                }
                let m: TropMatrix =
                    Matrix::from_rows(rows).map_err(|e| CliError::Document(e.to_string()))?;
                Ok(ProtocolMatrix::Tropical(m))
            }
            SemiringTag::Triad => {
                let mut rows = Vec::with_capacity(self.n);
                for row in &self.entries {
                    let mut out = Vec::with_capacity(self.n);
                    for e in row {
                        match e {
                            Entry::Triple([a, b, c]) => out.push(Triad::new(
                                scalar_from_json(*a),
                                scalar_from_json(*b),
                                scalar_from_json(*c),
                            )),
                            Entry::Scalar(_) => {
                                return Err(CliError::Document(
                                    "scalar entry in a triad matrix".into(),
                                ))
                            }
                        }
                    }
                    rows.push(out);
                }
                let m: TriadMatrix =
                    Matrix::from_rows(rows).map_err(|e| CliError::Document(e.to_string()))?;
                Ok(ProtocolMatrix::Triad(m))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsDocument {
    pub n: usize,
    pub entry_min: i64,
    pub entry_max: i64,
    pub neginf_density: f64,
    pub exp_min: u64,
    pub exp_max: u64,
    pub semiring: SemiringTag,
    pub seed: u64,
}

impl From<&ProtocolParams> for ParamsDocument {
    fn from(p: &ProtocolParams) -> Self {
        Self {
            n: p.n,
            entry_min: p.entry_min,
            entry_max: p.entry_max,
            neginf_density: p.neginf_density,
            exp_min: p.exp_min,
            exp_max: p.exp_max,
            semiring: p.semiring.into(),
            seed: p.seed,
        }
    }
}

impl From<&ParamsDocument> for ProtocolParams {
    fn from(d: &ParamsDocument) -> Self {
        ProtocolParams {
            n: d.n,
            entry_min: d.entry_min,
            entry_max: d.entry_max,
            neginf_density: d.neginf_density,
            exp_min: d.exp_min,
            exp_max: d.exp_max,
            semiring: d.semiring.into(),
            seed: d.seed,
        }
    }
}

/// Public file: the exchanged matrices and the parameters that produced
/// them. Contains no secret exponents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranscriptDocument {
    pub params: ParamsDocument,
    pub x: MatrixDocument,
    pub y: MatrixDocument,
    pub a: MatrixDocument,
    pub b: MatrixDocument,
}

impl TranscriptDocument {
    pub fn from_transcript(params: &ProtocolParams, t: &Transcript) -> Self {
        Self {
            params: params.into(),
            x: MatrixDocument::from_matrix(&t.x),
            y: MatrixDocument::from_matrix(&t.y),
            a: MatrixDocument::from_matrix(&t.a),
            b: MatrixDocument::from_matrix(&t.b),
        }
    }

    pub fn to_transcript(&self) -> Result<Transcript, CliError> {
        Ok(Transcript {
            x: self.x.to_matrix()?,
            y: self.y.to_matrix()?,
            a: self.a.to_matrix()?,
            b: self.b.to_matrix()?,
        })
    }
}

/// Secret file: the exponents and the agreed key.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecretsDocument {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub key: MatrixDocument,
}

impl SecretsDocument {
    pub fn from_material(m: &KeyMaterial) -> Self {
        Self {
            a: m.a,
            b: m.b,
            c: m.c,
            d: m.d,
            key: MatrixDocument::from_matrix(&m.key),
        }
    }
}

/// Attack output: recovered exponents, residues, the recovered key, and
/// optionally the wall time (omitted under `--no-timing` so reruns are
/// byte-identical).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttackDocument {
    pub t1: u64,
    pub t2: u64,
    pub tau: i64,
    pub residues: Option<[u64; 2]>,
    pub verified: bool,
    pub method: String,
    pub key: MatrixDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attack_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub trials: usize,
    pub recovered: usize,
    pub success_rate: f64,
    pub csr_solved: usize,
    pub fallback_solved: usize,
    pub failed: usize,
    pub csr_threshold_median: Option<u64>,
    pub csr_threshold_max: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attack_ms_median: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attack_ms_max: Option<f64>,
}

/// Machine-readable benchmark table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchDocument {
    pub semiring: SemiringTag,
    pub seed: u64,
    pub trials_per_size: usize,
    pub fallback_bound: u64,
    pub rows: Vec<BenchRow>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropkex::protocol::SemiringKind;
    use tropkex::rng::SplitMix64;
    use tropkex::testkit::{random_triad_matrix, random_trop_matrix};

    fn round_trip(m: &ProtocolMatrix) {
        let doc = MatrixDocument::from_matrix(m);
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let back: MatrixDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
        assert_eq!(&back.to_matrix().unwrap(), m);
    }

    #[test]
    fn matrices_round_trip_including_neg_inf() {
        let mut rng = SplitMix64::new(1);
        for n in 1..=4 {
            round_trip(&ProtocolMatrix::Tropical(random_trop_matrix(
                &mut rng, n, -50, 50, 0.4,
            )));
            round_trip(&ProtocolMatrix::Triad(random_triad_matrix(
                &mut rng, n, -50, 50, 0.4,
            )));
        }
    }

    #[test]
    fn neg_inf_serializes_as_null_and_rejects_strings() {
        let doc: MatrixDocument =
            serde_json::from_str(r#"{"semiring":"tropical","n":1,"entries":[[null]]}"#).unwrap();
        let m = doc.to_matrix().unwrap();
        assert_eq!(
            m,
            ProtocolMatrix::Tropical(tropkex::TropMatrix::zeros(1, 1))
        );
        assert!(serde_json::from_str::<MatrixDocument>(
            r#"{"semiring":"tropical","n":1,"entries":[["-inf"]]}"#,
        )
        .is_err());
    }

    #[test]
    fn shape_and_tag_mismatches_are_rejected() {
        let wrong_shape: MatrixDocument =
            serde_json::from_str(r#"{"semiring":"tropical","n":2,"entries":[[1,2]]}"#).unwrap();
        assert!(wrong_shape.to_matrix().is_err());

        let wrong_kind: MatrixDocument =
            serde_json::from_str(r#"{"semiring":"triad","n":1,"entries":[[3]]}"#).unwrap();
        assert!(wrong_kind.to_matrix().is_err());
    }

    #[test]
    fn params_round_trip() {
        let p = tropkex::protocol::ProtocolParams::new(4, SemiringKind::Triad, 99);
        let doc = ParamsDocument::from(&p);
        let json = serde_json::to_string(&doc).unwrap();
        let back: ParamsDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(tropkex::protocol::ProtocolParams::from(&back), p);
    }
}
