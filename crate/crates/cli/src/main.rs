//! Command-line front end for the shuffle argument: parameter and key
//! generation, batch encryption, shuffling, proving, verifying, and a
//! small in-process extraction demo, all over canonical envelope files.
//!
//! Exit codes: 0 success/accept, 1 verification reject (or demo FAIL),
//! 2 usage or malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use pshuf::canonical::{
    ciphertexts_from_wire, ciphertexts_to_wire, commit_key_from_wire, commit_key_to_wire,
    keypair_from_wire, keypair_to_wire, params_from_wire, params_to_wire, proof_from_wire,
    proof_to_wire, statement_from_wire, statement_to_wire, witness_from_wire, witness_to_wire,
    parse_envelope, to_envelope_string, CiphertextsBody, CommitKeyBody, KeypairBody, ParamsBody,
    ProofBody, StatementBody, WireKind, WitnessBody,
};
use pshuf::commit::{gen_commit_key, CommitmentKey};
use pshuf::elgamal::{enc, keygen, CiphertextVector, KeyPair};
use pshuf::fiat_shamir::{prove_ni, verify_ni, NIProof};
use pshuf::harness::run_extraction_demo;
use pshuf::shuffle::{check_relation, shuffle};
use pshuf::{gen_params, seeded_rng, Error, GroupParams, Preset};

#[derive(Parser)]
#[command(name = "pshuf", version, about = "Verifiable parallel re-encryption shuffle")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the group parameters of a named preset
    GenParams {
        /// One of: toy, test160, prod2048
        #[arg(long)]
        preset: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate an ElGamal keypair
    Keygen {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        seed: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Derive a commitment key with n message bases from a seed
    GenCommitKey {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypt a batch of n random width-w plaintext vectors (demo input)
    Encrypt {
        #[arg(long)]
        params: PathBuf,
        /// Keypair file; only the public half is used
        #[arg(long)]
        pk: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: usize,
        #[arg(long)]
        seed: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Shuffle a ciphertext batch; writes the public statement and the private witness
    Shuffle {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        pk: PathBuf,
        #[arg(long = "commit-key")]
        commit_key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        seed: String,
        #[arg(long = "out-statement")]
        out_statement: PathBuf,
        #[arg(long = "out-witness")]
        out_witness: PathBuf,
    },
    /// Produce a non-interactive proof from a statement/witness pair
    Prove {
        #[arg(long)]
        statement: PathBuf,
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        seed: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a proof against its statement
    Verify {
        #[arg(long)]
        statement: PathBuf,
        #[arg(long)]
        proof: PathBuf,
    },
    /// Shuffle, prove interactively, rewind, extract, and compare to ground truth
    DemoExtract {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        pk: PathBuf,
        #[arg(long = "commit-key")]
        commit_key: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: usize,
        #[arg(long)]
        seed: String,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::GenParams { preset, out } => {
            let preset: Preset = preset.parse().map_err(|e: Error| e.to_string())?;
            write_envelope(&out, &params_to_wire(&gen_params(preset)))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Keygen { params, seed, out } => {
            let params = load_params(&params)?;
            let mut rng = seeded_rng(b"pshuf/keygen", seed.as_bytes());
            let kp = keygen(&params, &mut rng);
            write_envelope(&out, &keypair_to_wire(&params, &kp))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::GenCommitKey {
            params,
            n,
            seed,
            out,
        } => {
            let params = load_params(&params)?;
            let key = gen_commit_key(&params, n, seed.as_bytes()).map_err(|e| e.to_string())?;
            write_envelope(&out, &commit_key_to_wire(&key))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Encrypt {
            params,
            pk,
            n,
            w,
            seed,
            out,
        } => {
            let params = load_params(&params)?;
            let kp = load_keypair(&params, &pk)?;
            if n == 0 || w == 0 {
                return Err(format!("need n >= 1 and w >= 1, got n={n} w={w}"));
            }
            let mut rng = seeded_rng(b"pshuf/encrypt", seed.as_bytes());
            let batch: Vec<CiphertextVector> = (0..n)
                .map(|_| {
                    let entries = (0..w)
                        .map(|_| {
                            let m = params.random_element(&mut rng);
                            let r = params.random_scalar(&mut rng);
                            enc(&params, &kp.pk, &m, &r)
                        })
                        .collect();
                    CiphertextVector::new(entries).map_err(|e| e.to_string())
                })
                .collect::<Result<_, _>>()?;
            write_envelope(&out, &ciphertexts_to_wire(&batch))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Shuffle {
            params,
            pk,
            commit_key,
            input,
            seed,
            out_statement,
            out_witness,
        } => {
            let params = load_params(&params)?;
            let kp = load_keypair(&params, &pk)?;
            let key = load_commit_key(&params, &commit_key)?;
            let body: CiphertextsBody = read_envelope(&input)?;
            let inputs = ciphertexts_from_wire(&params, &body).map_err(|e| e.to_string())?;
            let mut rng = seeded_rng(b"pshuf/shuffle", seed.as_bytes());
            let (st, wit) = shuffle(&key, &kp.pk, &inputs, &mut rng).map_err(|e| e.to_string())?;
            write_envelope(&out_statement, &statement_to_wire(&st))?;
            write_envelope(&out_witness, &witness_to_wire(&wit))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Prove {
            statement,
            witness,
            seed,
            out,
        } => {
            let body: StatementBody = read_envelope(&statement)?;
            let st = statement_from_wire(&body).map_err(|e| e.to_string())?;
            let body: WitnessBody = read_envelope(&witness)?;
            let wit = witness_from_wire(&st.params, &body).map_err(|e| e.to_string())?;
            if !check_relation(&st, &wit) {
                return Err("witness does not satisfy the statement".into());
            }
            let mut rng = seeded_rng(b"pshuf/prove", seed.as_bytes());
            let proof = prove_ni(&st, &wit, &mut rng).map_err(|e| e.to_string())?;
            write_envelope(&out, &proof_to_wire(&proof.msg2, &proof.resp))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { statement, proof } => cmd_verify(&statement, &proof),
        Cmd::DemoExtract {
            params,
            pk,
            commit_key,
            n,
            w,
            seed,
        } => cmd_demo_extract(&params, &pk, &commit_key, n, w, &seed),
    }
}

/// Malformed files (unreadable, invalid JSON, wrong kind or version) are
/// usage errors; once both envelopes parse structurally, every further
/// failure — bad field values included — is a verification verdict.
fn cmd_verify(statement: &Path, proof: &Path) -> Result<ExitCode, String> {
    let st_body: StatementBody = read_envelope(statement)?;
    let pf_body: ProofBody = read_envelope(proof)?;

    fn rejected(reason: String) -> Result<ExitCode, String> {
        println!("reject: {reason}");
        Ok(ExitCode::from(1))
    }
    let st = match statement_from_wire(&st_body) {
        Ok(st) => st,
        Err(e) => return rejected(format!("bad statement: {e}")),
    };
    let (msg2, resp) = match proof_from_wire(&st.params, &pf_body) {
        Ok(p) => p,
        Err(e) => return rejected(format!("bad proof: {e}")),
    };
    match verify_ni(&st, &NIProof { msg2, resp }) {
        Ok(()) => {
            println!("accept");
            Ok(ExitCode::SUCCESS)
        }
        Err(Error::EquationFailed(i)) => {
            rejected(format!("verification equation {i} does not hold"))
        }
        Err(e) => rejected(e.to_string()),
    }
}

fn cmd_demo_extract(
    params: &Path,
    pk: &Path,
    commit_key: &Path,
    n: usize,
    w: usize,
    seed: &str,
) -> Result<ExitCode, String> {
    if n == 0 || n > 8 {
        return Err(format!("the demo supports 1 <= n <= 8, got n={n}"));
    }
    if w == 0 {
        return Err("w must be positive".into());
    }
    let params = load_params(params)?;
    let kp = load_keypair(&params, pk)?;
    let key = load_commit_key(&params, commit_key)?;
    if key.n() != n {
        return Err(format!(
            "commitment key is sized for n={}, asked for n={n}",
            key.n()
        ));
    }
    let report =
        run_extraction_demo(&key, &kp.pk, w, seed.as_bytes()).map_err(|e| e.to_string())?;
    println!("shuffle size n={}, width w={}", report.n, report.w);
    println!("true permutation:      {:?}", report.truth.mapping());
    println!("recovered permutation: {:?}", report.recovered.mapping());
    println!(
        "re-encryption randomness consistent: {}",
        if report.relation_ok { "yes" } else { "no" }
    );
    if report.retries > 0 {
        println!("singular challenge matrices retried: {}", report.retries);
    }
    if report.pass {
        println!("PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("FAIL");
        Ok(ExitCode::from(1))
    }
}

fn read_envelope<T: DeserializeOwned + WireKind>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_envelope(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_envelope<T: Serialize + WireKind>(path: &Path, body: &T) -> Result<(), String> {
    let mut text = to_envelope_string(body);
    text.push('\n');
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn load_params(path: &Path) -> Result<GroupParams, String> {
    let body: ParamsBody = read_envelope(path)?;
    params_from_wire(&body).map_err(|e| e.to_string())
}

/// Reads a keypair file and insists it was generated for the same group.
fn load_keypair(params: &GroupParams, path: &Path) -> Result<KeyPair, String> {
    let body: KeypairBody = read_envelope(path)?;
    let (kp_params, kp) = keypair_from_wire(&body).map_err(|e| e.to_string())?;
    if &kp_params != params {
        return Err(format!("{}: keypair uses different group parameters", path.display()));
    }
    Ok(kp)
}

fn load_commit_key(params: &GroupParams, path: &Path) -> Result<CommitmentKey, String> {
    let body: CommitKeyBody = read_envelope(path)?;
    let key = commit_key_from_wire(&body).map_err(|e| e.to_string())?;
    if key.params() != params {
        return Err(format!(
            "{}: commitment key uses different group parameters",
            path.display()
        ));
    }
    Ok(key)
}
