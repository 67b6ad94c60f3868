//! Non-interactive proofs via hash-derived challenges.
//!
//! The interactive protocol has two verifier moves, so two derivations: the
//! vector challenge `u` binds the statement alone (it precedes the commit
//! message), the scalar challenge `c` binds statement and commit message.
//! Both hash the canonical byte streams from [`crate::canonical`] under
//! fixed domain-separation tags and reduce the digest mod q. The reduction
//! bias is ~2^-96 at the 160-bit test preset and smaller for larger groups;
//! the toy preset is for tracing, not security.

use num_bigint::BigUint;
use rand::Rng;
use sha2::{Digest, Sha256};

use crate::canonical::{msg2_bytes, statement_bytes};
use crate::error::Result;
use crate::group::{GroupParams, Scalar};
use crate::shuffle::{ShuffleStatement, ShuffleWitness};
use crate::sigma::{
    self, prover_commit, prover_respond, ProverCommitMessage, Response, Transcript,
};

pub const U_TAG: &[u8] = b"PSHUF/u";
pub const C_TAG: &[u8] = b"PSHUF/c";

/// Non-interactive proof. The challenges are recomputable from the
/// statement and `msg2`, so they are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NIProof {
    pub msg2: ProverCommitMessage,
    pub resp: Response,
}

fn hash_to_scalar(params: &GroupParams, parts: &[&[u8]]) -> Scalar {
    let mut hasher = Sha256::new();
    for p in parts {
        hasher.update(p);
    }
    let digest = hasher.finalize();
    Scalar(BigUint::from_bytes_be(&digest) % params.q())
}

/// Vector challenge: `u_i = SHA-256("PSHUF/u" || statement_bytes || i)` mod
/// q, with `i` the 0-based index as 4 big-endian bytes. The common prefix is
/// absorbed once and the hash state cloned per index, so the statement is
/// only traversed a single time.
pub fn derive_u(params: &GroupParams, statement_bytes: &[u8], n: usize) -> Vec<Scalar> {
    let mut prefix = Sha256::new();
    prefix.update(U_TAG);
    prefix.update(statement_bytes);
    (0..n)
        .map(|i| {
            let idx = u32::try_from(i).expect("index fits in 4 bytes").to_be_bytes();
            let mut hasher = prefix.clone();
            hasher.update(idx);
            let digest = hasher.finalize();
            Scalar(BigUint::from_bytes_be(&digest) % params.q())
        })
        .collect()
}

/// Scalar challenge: `c = SHA-256("PSHUF/c" || statement_bytes || msg2_bytes)` mod q.
pub fn derive_c(params: &GroupParams, statement_bytes: &[u8], msg2_bytes: &[u8]) -> Scalar {
    hash_to_scalar(params, &[C_TAG, statement_bytes, msg2_bytes])
}

/// Both challenges for a given statement and commit message, as the
/// verifier recomputes them.
pub fn derive_challenges(
    statement: &ShuffleStatement,
    msg2: &ProverCommitMessage,
) -> (Vec<Scalar>, Scalar) {
    let sb = statement_bytes(statement);
    let u = derive_u(&statement.params, &sb, statement.n());
    let c = derive_c(&statement.params, &sb, &msg2_bytes(msg2));
    (u, c)
}

pub fn prove_ni<R: Rng + ?Sized>(
    statement: &ShuffleStatement,
    witness: &ShuffleWitness,
    rng: &mut R,
) -> Result<NIProof> {
    let sb = statement_bytes(statement);
    let u = derive_u(&statement.params, &sb, statement.n());
    let (state, msg2) = prover_commit(statement, witness, &u, rng)?;
    let c = derive_c(&statement.params, &sb, &msg2_bytes(&msg2));
    let resp = prover_respond(state, &c);
    Ok(NIProof { msg2, resp })
}

pub fn verify_ni(statement: &ShuffleStatement, proof: &NIProof) -> Result<()> {
    let (u, c) = derive_challenges(statement, &proof.msg2);
    sigma::verify(
        statement,
        &Transcript {
            u,
            msg2: proof.msg2.clone(),
            c,
            resp: proof.resp.clone(),
        },
    )
}
