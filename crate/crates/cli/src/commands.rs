use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::de::DeserializeOwned;
use serde::Serialize;

use tropkex::attack::{recover_key, AttackConfig};
use tropkex::protocol::{derive_key, generate_instance, ProtocolParams};
use tropkex::trials::{run_size, summarize};

use crate::docs::{
    AttackDocument, BenchDocument, BenchRow, MatrixDocument, SecretsDocument, TranscriptDocument,
};
use crate::{AttackArgs, BenchArgs, CliError, GenArgs, VerifyArgs};

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut body = serde_json::to_string_pretty(value).expect("documents serialize");
    body.push('\n');
    fs::write(path, body).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let body = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&body).map_err(|source| CliError::Malformed {
        path: path.to_path_buf(),
        source,
    })
}

fn default_secrets_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().unwrap_or_default().to_string_lossy();
    out.with_file_name(format!("{stem}.secrets.json"))
}

pub fn gen(args: GenArgs) -> Result<(), CliError> {
    let params = ProtocolParams {
        n: args.n as usize,
        entry_min: args.entry_min,
        entry_max: args.entry_max,
        neginf_density: args.neginf_density,
        exp_min: args.exp_min,
        exp_max: args.exp_max,
        semiring: crate::docs::SemiringTag::from(args.semiring).into(),
        seed: args.seed,
    };
    params.validate().map_err(CliError::from)?;

    let (transcript, material) = generate_instance(&params)?;
    let secrets_path = args
        .secrets_out
        .unwrap_or_else(|| default_secrets_path(&args.out));

    write_json(
        &args.out,
        &TranscriptDocument::from_transcript(&params, &transcript),
    )?;
    write_json(&secrets_path, &SecretsDocument::from_material(&material))?;

    println!(
        "wrote transcript to {} and secrets to {}",
        args.out.display(),
        secrets_path.display()
    );
    Ok(())
}

pub fn attack(args: AttackArgs) -> Result<(), CliError> {
    let doc: TranscriptDocument = read_json(&args.transcript)?;
    let transcript = doc.to_transcript()?;
    let cfg = AttackConfig {
        fallback_max_t: args.fallback_bound,
    };

    let started = Instant::now();
    let recovery = recover_key(&transcript, &cfg)?;
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;

    let out = AttackDocument {
        t1: recovery.solution.t1,
        t2: recovery.solution.t2,
        tau: recovery.solution.tau,
        residues: recovery.solution.residues.map(|(a, b)| [a, b]),
        verified: recovery.solution.verified,
        method: recovery.method.as_str().to_string(),
        key: MatrixDocument::from_matrix(&recovery.key),
        attack_ms: (!args.no_timing).then_some(elapsed_ms),
    };
    write_json(&args.out, &out)?;

    println!(
        "recovered key via {} with exponents ({}, {}); wrote {}",
        recovery.method.as_str(),
        recovery.solution.t1,
        recovery.solution.t2,
        args.out.display()
    );
    Ok(())
}

pub fn verify(args: VerifyArgs) -> Result<(), CliError> {
    let transcript_doc: TranscriptDocument = read_json(&args.transcript)?;
    let secrets: SecretsDocument = read_json(&args.secrets)?;
    let attack_doc: AttackDocument = read_json(&args.attack)?;

    let transcript = transcript_doc.to_transcript()?;
    let claimed_key = secrets.key.to_matrix()?;
    let attacked_key = attack_doc.key.to_matrix()?;

    // Recompute both sides of the exchange from the secrets.
    let key_a = derive_key(
        &transcript.x,
        &transcript.y,
        &transcript.b,
        secrets.a,
        secrets.b,
    )?;
    let key_b = derive_key(
        &transcript.x,
        &transcript.y,
        &transcript.a,
        secrets.c,
        secrets.d,
    )?;
    if key_a != key_b {
        return Err(CliError::Integrity(
            "the two honest key derivations disagree; transcript and secrets do not belong together".into(),
        ));
    }
    if key_a != claimed_key {
        return Err(CliError::Integrity(
            "secrets file key does not match the recomputed shared key".into(),
        ));
    }

    if attacked_key == key_a {
        println!("MATCH");
        Ok(())
    } else {
        println!("MISMATCH");
        Err(CliError::Mismatch(
            "attack document key differs from the honest shared key".into(),
        ))
    }
}

pub fn bench(args: BenchArgs) -> Result<(), CliError> {
    let semiring = crate::docs::SemiringTag::from(args.semiring);
    let cfg = AttackConfig {
        fallback_max_t: args.fallback_bound,
    };

    let mut rows = Vec::new();
    for &n in &args.n_list {
        if n == 0 || n > 64 {
            return Err(CliError::Validation(format!(
                "size {n} outside the supported range [1, 64]"
            )));
        }
        let template = ProtocolParams::new(n as usize, semiring.into(), args.seed);
        let outcomes = run_size(&template, args.trials as usize, &cfg)?;
        let s = summarize(n as usize, &outcomes);
        rows.push(BenchRow {
            n: s.n,
            trials: s.trials,
            recovered: s.recovered,
            success_rate: s.success_rate(),
            csr_solved: s.csr_solved,
            fallback_solved: s.fallback_solved,
            failed: s.failed,
            csr_threshold_median: s.csr_threshold_median,
            csr_threshold_max: s.csr_threshold_max,
            attack_ms_median: (!args.no_timing).then_some(s.attack_micros_median as f64 / 1e3),
            attack_ms_max: (!args.no_timing).then_some(s.attack_micros_max as f64 / 1e3),
        });
    }

    let doc = BenchDocument {
        semiring,
        seed: args.seed,
        trials_per_size: args.trials as usize,
        fallback_bound: args.fallback_bound,
        rows,
    };
    match &args.out {
        Some(path) => {
            write_json(path, &doc)?;
            println!("wrote bench table to {}", path.display());
        }
        None => {
            let mut body = serde_json::to_string_pretty(&doc).expect("documents serialize");
            body.push('\n');
            print!("{body}");
        }
    }
    Ok(())
}
