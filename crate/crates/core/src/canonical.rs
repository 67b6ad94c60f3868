//! Canonical JSON wire format.
//!
//! Every file the tool reads or writes is a versioned envelope
//! `{"version":"pshuf-1","kind":...,"body":...}`. Integers are lowercase
//! big-endian hex with no leading zeros ("0" for zero); ciphertexts are
//! `[a,b]` pairs. The canonical rendering — compact JSON, fields in the
//! struct order below — is normative: it is the exact byte stream the
//! challenge derivation hashes. Readers are lenient (whitespace, field
//! order, uppercase hex and leading zeros are accepted); writers and the
//! hash layer always re-serialize canonically.

use num_bigint::BigUint;
use num_traits::Num;
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::commit::CommitmentKey;
use crate::elgamal::{Ciphertext, CiphertextVector, KeyPair};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupParams, Scalar};
use crate::permmat::ScalarMatrix;
use crate::shuffle::{ShuffleStatement, ShuffleWitness};
use crate::sigma::{ProverCommitMessage, Response};

pub const FORMAT_VERSION: &str = "pshuf-1";

/// Marker tying each body type to its `kind` string.
pub trait WireKind {
    const KIND: &'static str;
}

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    version: String,
    kind: String,
    body: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsBody {
    pub p: String,
    pub q: String,
    pub g: String,
}

impl WireKind for ParamsBody {
    const KIND: &'static str = "params";
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommitKeyBody {
    pub params: ParamsBody,
    pub h: String,
    pub basis: Vec<String>,
}

impl WireKind for CommitKeyBody {
    const KIND: &'static str = "commit-key";
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeypairBody {
    pub params: ParamsBody,
    pub pk: String,
    pub sk: String,
}

impl WireKind for KeypairBody {
    const KIND: &'static str = "keypair";
}

/// A ciphertext on the wire: `[a, b]`.
pub type WireCiphertext = [String; 2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CiphertextsBody {
    pub entries: Vec<Vec<WireCiphertext>>,
}

impl WireKind for CiphertextsBody {
    const KIND: &'static str = "ciphertexts";
}

/// Commitment key as it appears inside a statement (the group parameters
/// live at the statement's top level).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeyPart {
    pub h: String,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatementBody {
    pub params: ParamsBody,
    pub key: KeyPart,
    pub pk: String,
    pub c: Vec<String>,
    pub inputs: Vec<Vec<WireCiphertext>>,
    pub outputs: Vec<Vec<WireCiphertext>>,
}

impl WireKind for StatementBody {
    const KIND: &'static str = "statement";
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Msg2Body {
    pub c_hat: Vec<String>,
    pub t1: String,
    pub t2: String,
    pub t3: String,
    pub t4: Vec<WireCiphertext>,
    pub t_hat: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResponseBody {
    pub s1: String,
    pub s2: String,
    pub s3: String,
    pub s4: Vec<String>,
    pub s_hat: Vec<String>,
    pub s_prime: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofBody {
    pub msg2: Msg2Body,
    pub resp: ResponseBody,
}

impl WireKind for ProofBody {
    const KIND: &'static str = "proof";
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessBody {
    pub matrix: Vec<Vec<String>>,
    pub r: Vec<String>,
    pub reenc: Vec<Vec<String>>,
}

impl WireKind for WitnessBody {
    const KIND: &'static str = "witness";
}

/// Renders a body in its canonical envelope: compact JSON, declared field
/// order, trailing newline-free.
pub fn to_envelope_string<T: Serialize + WireKind>(body: &T) -> String {
    serde_json::to_string(&Envelope {
        version: FORMAT_VERSION.to_string(),
        kind: T::KIND.to_string(),
        body,
    })
    .expect("wire structs always serialize")
}

/// Parses an envelope, checking version and kind. All failures here are
/// structural (malformed file), as opposed to the value errors raised later
/// when hex fields are interpreted.
pub fn parse_envelope<T: DeserializeOwned + WireKind>(s: &str) -> Result<T> {
    let env: Envelope<serde_json::Value> =
        serde_json::from_str(s).map_err(|e| Error::Encoding(format!("bad envelope: {e}")))?;
    if env.version != FORMAT_VERSION {
        return Err(Error::Encoding(format!(
            "unsupported version {:?}",
            env.version
        )));
    }
    if env.kind != T::KIND {
        return Err(Error::Encoding(format!(
            "expected kind {:?}, found {:?}",
            T::KIND,
            env.kind
        )));
    }
    serde_json::from_value(env.body).map_err(|e| Error::Encoding(format!("bad body: {e}")))
}

fn hex(v: &BigUint) -> String {
    v.to_str_radix(16)
}

fn from_hex(s: &str) -> Result<BigUint> {
    BigUint::from_str_radix(s, 16).map_err(|_| Error::Encoding(format!("bad hex integer {s:?}")))
}

pub fn params_to_wire(params: &GroupParams) -> ParamsBody {
    ParamsBody {
        p: hex(params.p()),
        q: hex(params.q()),
        g: hex(params.g().value()),
    }
}

pub fn params_from_wire(body: &ParamsBody) -> Result<GroupParams> {
    GroupParams::new(from_hex(&body.p)?, from_hex(&body.q)?, from_hex(&body.g)?)
}

fn elements_to_wire(xs: &[GroupElement]) -> Vec<String> {
    xs.iter().map(|x| x.to_hex()).collect()
}

fn elements_from_wire(params: &GroupParams, xs: &[String]) -> Result<Vec<GroupElement>> {
    xs.iter().map(|s| params.element_from_hex(s)).collect()
}

fn scalars_to_wire(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(|x| x.to_hex()).collect()
}

fn scalars_from_wire(params: &GroupParams, xs: &[String]) -> Result<Vec<Scalar>> {
    xs.iter().map(|s| params.scalar_from_hex(s)).collect()
}

fn ct_to_wire(e: &Ciphertext) -> WireCiphertext {
    [e.a.to_hex(), e.b.to_hex()]
}

fn ct_from_wire(params: &GroupParams, w: &WireCiphertext) -> Result<Ciphertext> {
    Ok(Ciphertext {
        a: params.element_from_hex(&w[0])?,
        b: params.element_from_hex(&w[1])?,
    })
}

fn ctvec_to_wire(v: &CiphertextVector) -> Vec<WireCiphertext> {
    v.entries.iter().map(ct_to_wire).collect()
}

fn ctvec_from_wire(params: &GroupParams, w: &[WireCiphertext]) -> Result<CiphertextVector> {
    CiphertextVector::new(
        w.iter()
            .map(|e| ct_from_wire(params, e))
            .collect::<Result<Vec<_>>>()?,
    )
}

fn ctvecs_to_wire(vs: &[CiphertextVector]) -> Vec<Vec<WireCiphertext>> {
    vs.iter().map(ctvec_to_wire).collect()
}

fn ctvecs_from_wire(
    params: &GroupParams,
    ws: &[Vec<WireCiphertext>],
) -> Result<Vec<CiphertextVector>> {
    ws.iter().map(|v| ctvec_from_wire(params, v)).collect()
}

pub fn commit_key_to_wire(key: &CommitmentKey) -> CommitKeyBody {
    CommitKeyBody {
        params: params_to_wire(key.params()),
        h: key.h().to_hex(),
        basis: elements_to_wire(key.basis()),
    }
}

pub fn commit_key_from_wire(body: &CommitKeyBody) -> Result<CommitmentKey> {
    let params = params_from_wire(&body.params)?;
    let h = params.element_from_hex(&body.h)?;
    let basis = elements_from_wire(&params, &body.basis)?;
    CommitmentKey::from_parts(params, h, basis)
}

pub fn keypair_to_wire(params: &GroupParams, kp: &KeyPair) -> KeypairBody {
    KeypairBody {
        params: params_to_wire(params),
        pk: kp.pk.to_hex(),
        sk: kp.sk.to_hex(),
    }
}

pub fn keypair_from_wire(body: &KeypairBody) -> Result<(GroupParams, KeyPair)> {
    let params = params_from_wire(&body.params)?;
    let pk = params.element_from_hex(&body.pk)?;
    let sk = params.scalar_from_hex(&body.sk)?;
    Ok((params, KeyPair { pk, sk }))
}

pub fn ciphertexts_to_wire(vs: &[CiphertextVector]) -> CiphertextsBody {
    CiphertextsBody {
        entries: ctvecs_to_wire(vs),
    }
}

pub fn ciphertexts_from_wire(
    params: &GroupParams,
    body: &CiphertextsBody,
) -> Result<Vec<CiphertextVector>> {
    ctvecs_from_wire(params, &body.entries)
}

pub fn statement_to_wire(st: &ShuffleStatement) -> StatementBody {
    StatementBody {
        params: params_to_wire(&st.params),
        key: KeyPart {
            h: st.key.h().to_hex(),
            basis: elements_to_wire(st.key.basis()),
        },
        pk: st.pk.to_hex(),
        c: elements_to_wire(&st.c),
        inputs: ctvecs_to_wire(&st.inputs),
        outputs: ctvecs_to_wire(&st.outputs),
    }
}

pub fn statement_from_wire(body: &StatementBody) -> Result<ShuffleStatement> {
    let params = params_from_wire(&body.params)?;
    let h = params.element_from_hex(&body.key.h)?;
    let basis = elements_from_wire(&params, &body.key.basis)?;
    let key = CommitmentKey::from_parts(params.clone(), h, basis)?;
    let st = ShuffleStatement {
        params: params.clone(),
        key,
        pk: params.element_from_hex(&body.pk)?,
        c: elements_from_wire(&params, &body.c)?,
        inputs: ctvecs_from_wire(&params, &body.inputs)?,
        outputs: ctvecs_from_wire(&params, &body.outputs)?,
    };
    st.validate_shape()?;
    Ok(st)
}

pub fn msg2_to_wire(m: &ProverCommitMessage) -> Msg2Body {
    Msg2Body {
        c_hat: elements_to_wire(&m.c_hat),
        t1: m.t1.to_hex(),
        t2: m.t2.to_hex(),
        t3: m.t3.to_hex(),
        t4: ctvec_to_wire(&m.t4),
        t_hat: elements_to_wire(&m.t_hat),
    }
}

pub fn msg2_from_wire(params: &GroupParams, body: &Msg2Body) -> Result<ProverCommitMessage> {
    Ok(ProverCommitMessage {
        c_hat: elements_from_wire(params, &body.c_hat)?,
        t1: params.element_from_hex(&body.t1)?,
        t2: params.element_from_hex(&body.t2)?,
        t3: params.element_from_hex(&body.t3)?,
        t4: ctvec_from_wire(params, &body.t4)?,
        t_hat: elements_from_wire(params, &body.t_hat)?,
    })
}

pub fn response_to_wire(r: &Response) -> ResponseBody {
    ResponseBody {
        s1: r.s1.to_hex(),
        s2: r.s2.to_hex(),
        s3: r.s3.to_hex(),
        s4: scalars_to_wire(&r.s4),
        s_hat: scalars_to_wire(&r.s_hat),
        s_prime: scalars_to_wire(&r.s_prime),
    }
}

pub fn response_from_wire(params: &GroupParams, body: &ResponseBody) -> Result<Response> {
    Ok(Response {
        s1: params.scalar_from_hex(&body.s1)?,
        s2: params.scalar_from_hex(&body.s2)?,
        s3: params.scalar_from_hex(&body.s3)?,
        s4: scalars_from_wire(params, &body.s4)?,
        s_hat: scalars_from_wire(params, &body.s_hat)?,
        s_prime: scalars_from_wire(params, &body.s_prime)?,
    })
}

pub fn proof_to_wire(msg2: &ProverCommitMessage, resp: &Response) -> ProofBody {
    ProofBody {
        msg2: msg2_to_wire(msg2),
        resp: response_to_wire(resp),
    }
}

pub fn proof_from_wire(
    params: &GroupParams,
    body: &ProofBody,
) -> Result<(ProverCommitMessage, Response)> {
    Ok((
        msg2_from_wire(params, &body.msg2)?,
        response_from_wire(params, &body.resp)?,
    ))
}

pub fn witness_to_wire(w: &ShuffleWitness) -> WitnessBody {
    let rows_of = |m: &ScalarMatrix| -> Vec<Vec<String>> {
        (0..m.rows()).map(|i| scalars_to_wire(m.row(i))).collect()
    };
    WitnessBody {
        matrix: rows_of(&w.matrix),
        r: scalars_to_wire(&w.r),
        reenc: rows_of(&w.reenc),
    }
}

pub fn witness_from_wire(params: &GroupParams, body: &WitnessBody) -> Result<ShuffleWitness> {
    let matrix_of = |rows: &[Vec<String>]| -> Result<ScalarMatrix> {
        ScalarMatrix::from_rows(
            rows.iter()
                .map(|r| scalars_from_wire(params, r))
                .collect::<Result<Vec<_>>>()?,
        )
    };
    Ok(ShuffleWitness {
        matrix: matrix_of(&body.matrix)?,
        r: scalars_from_wire(params, &body.r)?,
        reenc: matrix_of(&body.reenc)?,
    })
}

/// The byte stream bound into challenge derivation for a statement: its
/// canonical envelope rendering.
pub fn statement_bytes(st: &ShuffleStatement) -> Vec<u8> {
    to_envelope_string(&statement_to_wire(st)).into_bytes()
}

/// The byte stream bound into the scalar challenge for a commit message:
/// the canonical rendering of the proof's `msg2` record (no envelope; it is
/// not a standalone file).
pub fn msg2_bytes(m: &ProverCommitMessage) -> Vec<u8> {
    serde_json::to_string(&msg2_to_wire(m))
        .expect("wire structs always serialize")
        .into_bytes()
}
