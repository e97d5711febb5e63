//! Batched generate-and-attack campaigns with per-size summaries.
//!
//! Trial `i` of a campaign runs on seed `base_seed + i`, so campaigns are
//! reproducible and schedule-independent: with the `parallel` feature the
//! trials spread across the thread pool, but the aggregated rows are
//! identical to a sequential run.

use std::time::Instant;

use crate::attack::{recover_key, AttackConfig, AttackMethod};
use crate::error::Result;
use crate::par::map_indexed;
use crate::protocol::{generate_instance, ProtocolParams};

/// What happened in one gen→attack cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub seed: u64,
    /// Attack succeeded and the recovered key equals the honest key.
    pub key_recovered: bool,
    pub method: Option<AttackMethod>,
    /// Exponent threshold the CSR expansion was trusted from, when the
    /// CSR path produced the solution.
    pub csr_threshold: Option<u64>,
    pub attack_micros: u64,
}

/// Aggregate over all trials at one matrix size.
#[derive(Debug, Clone, PartialEq)]
pub struct SizeSummary {
    pub n: usize,
    pub trials: usize,
    pub recovered: usize,
    pub csr_solved: usize,
    pub fallback_solved: usize,
    pub failed: usize,
    pub csr_threshold_median: Option<u64>,
    pub csr_threshold_max: Option<u64>,
    pub attack_micros_median: u64,
    pub attack_micros_max: u64,
}

impl SizeSummary {
    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.recovered as f64 / self.trials as f64
        }
    }
}

/// Runs `trials` full gen→attack cycles with the given template
/// parameters, on seeds `template.seed, template.seed+1, …`.
pub fn run_size(
    template: &ProtocolParams,
    trials: usize,
    cfg: &AttackConfig,
) -> Result<Vec<TrialOutcome>> {
    template.validate()?;
    let outcomes = map_indexed(trials, |i| {
        let params = ProtocolParams {
            seed: template.seed.wrapping_add(i as u64),
            ..template.clone()
        };
        run_trial(&params, cfg)
    });
    outcomes.into_iter().collect()
}

fn run_trial(params: &ProtocolParams, cfg: &AttackConfig) -> Result<TrialOutcome> {
    let (transcript, material) = generate_instance(params)?;

    let started = Instant::now();
    let attack = recover_key(&transcript, cfg);
    let attack_micros = started.elapsed().as_micros() as u64;

    let outcome = match attack {
        Ok(recovery) => TrialOutcome {
            seed: params.seed,
            key_recovered: recovery.key == material.key,
            method: Some(recovery.method),
            csr_threshold: recovery.csr_threshold,
            attack_micros,
        },
        Err(_) => TrialOutcome {
            seed: params.seed,
            key_recovered: false,
            method: None,
            csr_threshold: None,
            attack_micros,
        },
    };
    Ok(outcome)
}

/// Aggregates one size's outcomes into a summary row.
pub fn summarize(n: usize, outcomes: &[TrialOutcome]) -> SizeSummary {
    let recovered = outcomes.iter().filter(|o| o.key_recovered).count();
    let csr_solved = outcomes
        .iter()
        .filter(|o| o.key_recovered && o.method == Some(AttackMethod::Csr))
        .count();
    let fallback_solved = outcomes
        .iter()
        .filter(|o| o.key_recovered && o.method == Some(AttackMethod::BruteForce))
        .count();

    let mut thresholds: Vec<u64> = outcomes.iter().filter_map(|o| o.csr_threshold).collect();
    thresholds.sort_unstable();
    let mut times: Vec<u64> = outcomes.iter().map(|o| o.attack_micros).collect();
    times.sort_unstable();

    SizeSummary {
        n,
        trials: outcomes.len(),
        recovered,
        csr_solved,
        fallback_solved,
        failed: outcomes.len() - recovered,
        csr_threshold_median: median(&thresholds),
        csr_threshold_max: thresholds.last().copied(),
        attack_micros_median: median(&times).unwrap_or(0),
        attack_micros_max: times.last().copied().unwrap_or(0),
    }
}

fn median(sorted: &[u64]) -> Option<u64> {
    if sorted.is_empty() {
        None
    } else {
        Some(sorted[sorted.len() / 2])
    }
}
