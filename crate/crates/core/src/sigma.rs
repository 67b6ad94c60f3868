//! The interactive argument for the shuffle relation.
//!
//! Message flow: the verifier opens with a vector challenge `u`; the prover
//! answers with a commit message (the chained commitments and the `t`
//! values); the verifier sends a single scalar challenge `c`; the prover
//! closes with the response scalars. Verification evaluates five equations
//! and reports the first one that fails.
//!
//! The chain seed is a verifier-side constant: `c_hat_0 = h_1` from the
//! commitment key, never transmitted. The `t_4` re-encryption uses the
//! *negated* randomness `-omega_4`, mirrored by `-s_4` on the verifier side.

use rand::Rng;

use crate::elgamal::{cexp, cmul, reenc_vec, CiphertextVector};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupParams, Scalar};
use crate::permmat::{inner, mat_vec_mul};
use crate::shuffle::{ShuffleStatement, ShuffleWitness};

/// Second protocol message: chained commitments and the five t-values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProverCommitMessage {
    pub c_hat: Vec<GroupElement>,
    pub t1: GroupElement,
    pub t2: GroupElement,
    pub t3: GroupElement,
    pub t4: CiphertextVector,
    pub t_hat: Vec<GroupElement>,
}

/// Fourth protocol message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Response {
    pub s1: Scalar,
    pub s2: Scalar,
    pub s3: Scalar,
    pub s4: Vec<Scalar>,
    pub s_hat: Vec<Scalar>,
    pub s_prime: Vec<Scalar>,
}

/// Complete interaction record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub u: Vec<Scalar>,
    pub msg2: ProverCommitMessage,
    pub c: Scalar,
    pub resp: Response,
}

/// Everything the prover samples in step 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProverRandomness {
    pub r_hat: Vec<Scalar>,
    pub omega1: Scalar,
    pub omega2: Scalar,
    pub omega3: Scalar,
    pub omega4: Vec<Scalar>,
    pub omega_hat: Vec<Scalar>,
    pub omega_prime: Vec<Scalar>,
}

impl ProverRandomness {
    pub fn sample<R: Rng + ?Sized>(
        params: &GroupParams,
        n: usize,
        w: usize,
        rng: &mut R,
    ) -> Self {
        let vec_of = |len: usize, rng: &mut R| -> Vec<Scalar> {
            (0..len).map(|_| params.random_scalar(rng)).collect()
        };
        ProverRandomness {
            r_hat: vec_of(n, rng),
            omega1: params.random_scalar(rng),
            omega2: params.random_scalar(rng),
            omega3: params.random_scalar(rng),
            omega4: vec_of(w, rng),
            omega_hat: vec_of(n, rng),
            omega_prime: vec_of(n, rng),
        }
    }

    /// All-zero randomness; the blinding terms collapse to identities. Test
    /// hook only -- a transcript built from this leaks the witness.
    pub fn zeros(n: usize, w: usize) -> Self {
        ProverRandomness {
            r_hat: vec![Scalar::zero(); n],
            omega1: Scalar::zero(),
            omega2: Scalar::zero(),
            omega3: Scalar::zero(),
            omega4: vec![Scalar::zero(); w],
            omega_hat: vec![Scalar::zero(); n],
            omega_prime: vec![Scalar::zero(); n],
        }
    }
}

/// Witness material folded with the vector challenge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedSecrets {
    pub u_prime: Vec<Scalar>,
    pub r_bar: Scalar,
    pub r_tilde: Scalar,
    pub r_diamond: Scalar,
    pub r_star: Vec<Scalar>,
}

/// `r_hat[n-1] + sum_{i<n-1} r_hat[i] * prod_{j>i} u_prime[j]`: the opening
/// randomness accumulated by the commitment chain.
pub(crate) fn chain_randomness(
    params: &GroupParams,
    r_hat: &[Scalar],
    u_prime: &[Scalar],
) -> Scalar {
    let mut acc = Scalar::one();
    let mut total = Scalar::zero();
    for i in (0..r_hat.len()).rev() {
        total = params.scalar_add(&total, &params.scalar_mul(&r_hat[i], &acc));
        acc = params.scalar_mul(&acc, &u_prime[i]);
    }
    total
}

/// Folds the witness with the challenge: `u' = M u`, the three scalar
/// aggregates, and the re-encryption aggregate `r* = R u`.
pub fn derive_secrets(
    params: &GroupParams,
    witness: &ShuffleWitness,
    u: &[Scalar],
    r_hat: &[Scalar],
) -> Result<DerivedSecrets> {
    let u_prime = mat_vec_mul(params, &witness.matrix, u)?;
    if r_hat.len() != u_prime.len() {
        return Err(Error::LengthMismatch {
            expected: u_prime.len(),
            got: r_hat.len(),
        });
    }
    let r_bar = params.scalar_sum(witness.r.iter());
    let r_tilde = inner(params, &witness.r, u)?;
    let r_diamond = chain_randomness(params, r_hat, &u_prime);
    let r_star = mat_vec_mul(params, &witness.reenc, u)?;
    Ok(DerivedSecrets {
        u_prime,
        r_bar,
        r_tilde,
        r_diamond,
        r_star,
    })
}

/// Prover context between the commit message and the response. Consumed by
/// [`prover_respond`], so a state answers exactly one challenge.
#[derive(Debug)]
pub struct ProverState {
    params: GroupParams,
    secrets: DerivedSecrets,
    randomness: ProverRandomness,
}

impl ProverState {
    /// Duplicates the state so a second challenge can be answered for the
    /// same commit message. Rewinding is how the extractor harness and the
    /// soundness tests operate; production callers have no business calling
    /// this.
    pub fn fork_for_rewinding(&self) -> ProverState {
        ProverState {
            params: self.params.clone(),
            secrets: self.secrets.clone(),
            randomness: self.randomness.clone(),
        }
    }
}

fn check_witness_shape(statement: &ShuffleStatement, witness: &ShuffleWitness) -> Result<()> {
    let n = statement.n();
    let w = statement.width();
    if witness.matrix.rows() != n || witness.matrix.cols() != n || witness.r.len() != n {
        return Err(Error::DimensionMismatch);
    }
    if witness.reenc.rows() != w || witness.reenc.cols() != n {
        return Err(Error::DimensionMismatch);
    }
    Ok(())
}

/// Step 2 with caller-chosen randomness. Exposed for the zero-randomness test
/// hook; ordinary callers use [`prover_commit`].
pub fn prover_commit_with(
    statement: &ShuffleStatement,
    witness: &ShuffleWitness,
    u: &[Scalar],
    randomness: ProverRandomness,
) -> Result<(ProverState, ProverCommitMessage)> {
    statement.validate_shape()?;
    check_witness_shape(statement, witness)?;
    let params = &statement.params;
    let key = &statement.key;
    let n = statement.n();
    let w = statement.width();
    if u.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: u.len(),
        });
    }
    if randomness.r_hat.len() != n
        || randomness.omega_hat.len() != n
        || randomness.omega_prime.len() != n
        || randomness.omega4.len() != w
    {
        return Err(Error::DimensionMismatch);
    }

    let secrets = derive_secrets(params, witness, u, &randomness.r_hat)?;

    // chained commitments, seeded by h_1
    let h1 = &key.basis()[0];
    let mut c_hat = Vec::with_capacity(n);
    let mut prev = h1.clone();
    for i in 0..n {
        let ci = key.pc(&secrets.u_prime[i], &randomness.r_hat[i], &prev);
        c_hat.push(ci.clone());
        prev = ci;
    }

    let t1 = params.exp(key.h(), &randomness.omega1);
    let t2 = params.exp(key.h(), &randomness.omega2);
    let t3 = key.epc(&randomness.omega_prime, &randomness.omega3)?;

    let mut agg = cexp(params, &statement.outputs[0], &randomness.omega_prime[0]);
    for i in 1..n {
        agg = cmul(
            params,
            &agg,
            &cexp(params, &statement.outputs[i], &randomness.omega_prime[i]),
        )?;
    }
    let neg_omega4: Vec<Scalar> = randomness.omega4.iter().map(|x| params.scalar_neg(x)).collect();
    let t4 = reenc_vec(params, &statement.pk, &agg, &neg_omega4)?;

    let mut t_hat = Vec::with_capacity(n);
    let mut prev = h1.clone();
    for i in 0..n {
        t_hat.push(key.pc(
            &randomness.omega_prime[i],
            &randomness.omega_hat[i],
            &prev,
        ));
        prev = c_hat[i].clone();
    }

    let msg = ProverCommitMessage {
        c_hat,
        t1,
        t2,
        t3,
        t4,
        t_hat,
    };
    let state = ProverState {
        params: params.clone(),
        secrets,
        randomness,
    };
    Ok((state, msg))
}

/// Step 2: sample the blinding randomness and produce the commit message.
pub fn prover_commit<R: Rng + ?Sized>(
    statement: &ShuffleStatement,
    witness: &ShuffleWitness,
    u: &[Scalar],
    rng: &mut R,
) -> Result<(ProverState, ProverCommitMessage)> {
    let randomness =
        ProverRandomness::sample(&statement.params, statement.n(), statement.width(), rng);
    prover_commit_with(statement, witness, u, randomness)
}

/// Step 4: fold the challenge into the blinded secrets. Consumes the state.
pub fn prover_respond(state: ProverState, c: &Scalar) -> Response {
    let params = &state.params;
    let rnd = &state.randomness;
    let sec = &state.secrets;
    let lin = |omega: &Scalar, secret: &Scalar| -> Scalar {
        params.scalar_add(omega, &params.scalar_mul(c, secret))
    };
    Response {
        s1: lin(&rnd.omega1, &sec.r_bar),
        s2: lin(&rnd.omega2, &sec.r_diamond),
        s3: lin(&rnd.omega3, &sec.r_tilde),
        s4: rnd
            .omega4
            .iter()
            .zip(&sec.r_star)
            .map(|(o, s)| lin(o, s))
            .collect(),
        s_hat: rnd
            .r_hat
            .iter()
            .zip(&rnd.omega_hat)
            .map(|(rh, oh)| lin(oh, rh))
            .collect(),
        s_prime: rnd
            .omega_prime
            .iter()
            .zip(&sec.u_prime)
            .map(|(op, up)| lin(op, up))
            .collect(),
    }
}

/// The right-hand sides of the five verification equations, computed from the
/// statement, the challenges, the chained commitments, and the response. The
/// verifier compares these against the received t-values; the simulator uses
/// them to construct t-values that verify by definition.
fn expected_t_values(
    statement: &ShuffleStatement,
    u: &[Scalar],
    c: &Scalar,
    c_hat: &[GroupElement],
    resp: &Response,
) -> Result<(
    GroupElement,
    GroupElement,
    GroupElement,
    CiphertextVector,
    Vec<GroupElement>,
)> {
    let params = &statement.params;
    let key = &statement.key;
    let n = statement.n();
    let h = key.h();
    let h1 = &key.basis()[0];
    let neg_c = params.scalar_neg(c);

    // t1 = (prod c_i / prod h_i)^{-c} h^{s1}
    let prod_c = params.prod(statement.c.iter());
    let prod_h = params.prod(key.basis().iter());
    let t1 = params.mul(
        &params.exp(&params.mul(&prod_c, &params.inv(&prod_h)), &neg_c),
        &params.exp(h, &resp.s1),
    );

    // t2 = (c_hat_N / h_1^{prod u_i})^{-c} h^{s2}
    let prod_u = params.scalar_product(u.iter());
    let t2 = params.mul(
        &params.exp(
            &params.mul(&c_hat[n - 1], &params.inv(&params.exp(h1, &prod_u))),
            &neg_c,
        ),
        &params.exp(h, &resp.s2),
    );

    // t3 = (prod c_i^{u_i})^{-c} h^{s3} prod h_i^{s'_i}
    let mut c_pow_u = GroupElement::one();
    for (ci, ui) in statement.c.iter().zip(u) {
        c_pow_u = params.mul(&c_pow_u, &params.exp(ci, ui));
    }
    let t3 = params.mul(
        &params.exp(&c_pow_u, &neg_c),
        &key.epc(&resp.s_prime, &resp.s3)?,
    );

    // t4 = ReEnc((prod e_i^{u_i})^{-c} prod e'_i^{s'_i}, -s4)
    let mut e_pow_u = cexp(params, &statement.inputs[0], &u[0]);
    for i in 1..n {
        e_pow_u = cmul(params, &e_pow_u, &cexp(params, &statement.inputs[i], &u[i]))?;
    }
    let mut eprime_pow_s = cexp(params, &statement.outputs[0], &resp.s_prime[0]);
    for i in 1..n {
        eprime_pow_s = cmul(
            params,
            &eprime_pow_s,
            &cexp(params, &statement.outputs[i], &resp.s_prime[i]),
        )?;
    }
    let base = cmul(params, &cexp(params, &e_pow_u, &neg_c), &eprime_pow_s)?;
    let neg_s4: Vec<Scalar> = resp.s4.iter().map(|x| params.scalar_neg(x)).collect();
    let t4 = reenc_vec(params, &statement.pk, &base, &neg_s4)?;

    // t_hat_i = c_hat_i^{-c} h^{s_hat_i} c_hat_{i-1}^{s'_i}
    let mut t_hat = Vec::with_capacity(n);
    let mut prev = h1;
    for i in 0..n {
        t_hat.push(params.mul(
            &params.exp(&c_hat[i], &neg_c),
            &key.pc(&resp.s_prime[i], &resp.s_hat[i], prev),
        ));
        prev = &c_hat[i];
    }

    Ok((t1, t2, t3, t4, t_hat))
}

fn check_transcript_shape(statement: &ShuffleStatement, tr: &Transcript) -> Result<()> {
    let n = statement.n();
    let w = statement.width();
    let expect = |len: usize| -> Result<()> {
        if len != n {
            Err(Error::LengthMismatch {
                expected: n,
                got: len,
            })
        } else {
            Ok(())
        }
    };
    expect(tr.u.len())?;
    expect(tr.msg2.c_hat.len())?;
    expect(tr.msg2.t_hat.len())?;
    expect(tr.resp.s_hat.len())?;
    expect(tr.resp.s_prime.len())?;
    if tr.msg2.t4.width() != w {
        return Err(Error::WidthMismatch {
            expected: w,
            got: tr.msg2.t4.width(),
        });
    }
    if tr.resp.s4.len() != w {
        return Err(Error::WidthMismatch {
            expected: w,
            got: tr.resp.s4.len(),
        });
    }
    Ok(())
}

/// Evaluates the five verification equations; `Err(EquationFailed(i))` names
/// the first one that fails.
pub fn verify(statement: &ShuffleStatement, tr: &Transcript) -> Result<()> {
    statement.validate_shape()?;
    check_transcript_shape(statement, tr)?;
    let (t1, t2, t3, t4, t_hat) =
        expected_t_values(statement, &tr.u, &tr.c, &tr.msg2.c_hat, &tr.resp)?;
    if tr.msg2.t1 != t1 {
        return Err(Error::EquationFailed(1));
    }
    if tr.msg2.t2 != t2 {
        return Err(Error::EquationFailed(2));
    }
    if tr.msg2.t3 != t3 {
        return Err(Error::EquationFailed(3));
    }
    if tr.msg2.t4 != t4 {
        return Err(Error::EquationFailed(4));
    }
    if tr.msg2.t_hat != t_hat {
        return Err(Error::EquationFailed(5));
    }
    Ok(())
}

/// Honest-verifier zero-knowledge simulator: samples the response and the
/// chain uniformly, then solves the verification equations for the t-values.
/// The returned transcript verifies by construction.
pub fn simulate<R: Rng + ?Sized>(
    statement: &ShuffleStatement,
    u: &[Scalar],
    c: &Scalar,
    rng: &mut R,
) -> Result<Transcript> {
    statement.validate_shape()?;
    let params = &statement.params;
    let n = statement.n();
    let w = statement.width();
    if u.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: u.len(),
        });
    }
    let c_hat: Vec<GroupElement> = (0..n).map(|_| params.random_element(rng)).collect();
    let resp = Response {
        s1: params.random_scalar(rng),
        s2: params.random_scalar(rng),
        s3: params.random_scalar(rng),
        s4: (0..w).map(|_| params.random_scalar(rng)).collect(),
        s_hat: (0..n).map(|_| params.random_scalar(rng)).collect(),
        s_prime: (0..n).map(|_| params.random_scalar(rng)).collect(),
    };
    let (t1, t2, t3, t4, t_hat) = expected_t_values(statement, u, c, &c_hat, &resp)?;
    Ok(Transcript {
        u: u.to_vec(),
        msg2: ProverCommitMessage {
            c_hat,
            t1,
            t2,
            t3,
            t4,
            t_hat,
        },
        c: c.clone(),
        resp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commit::gen_commit_key;
    use crate::elgamal::{enc_vec, keygen};
    use crate::group::{gen_params, seeded_rng, Preset};
    use crate::shuffle::shuffle;

    fn setup(
        n: usize,
        w: usize,
        seed: &[u8],
    ) -> (GroupParams, ShuffleStatement, ShuffleWitness, impl Rng) {
        let params = gen_params(Preset::Toy);
        let mut rng = seeded_rng(b"sigma-test", seed);
        let key = gen_commit_key(&params, n, seed).unwrap();
        let kp = keygen(&params, &mut rng);
        let inputs: Vec<CiphertextVector> = (0..n)
            .map(|_| {
                let ms: Vec<GroupElement> =
                    (0..w).map(|_| params.random_element(&mut rng)).collect();
                let rs: Vec<Scalar> = (0..w).map(|_| params.random_scalar(&mut rng)).collect();
                enc_vec(&params, &kp.pk, &ms, &rs).unwrap()
            })
            .collect();
        let (statement, witness) = shuffle(&key, &kp.pk, &inputs, &mut rng).unwrap();
        (params, statement, witness, rng)
    }

    fn run_round(
        params: &GroupParams,
        statement: &ShuffleStatement,
        witness: &ShuffleWitness,
        rng: &mut impl Rng,
    ) -> Transcript {
        let u: Vec<Scalar> = (0..statement.n())
            .map(|_| params.random_scalar(rng))
            .collect();
        let (state, msg2) = prover_commit(statement, witness, &u, rng).unwrap();
        let c = params.random_scalar(rng);
        let resp = prover_respond(state, &c);
        Transcript {
            u,
            msg2,
            c,
            resp,
        }
    }

    #[test]
    fn completeness_small_grid() {
        for n in [1usize, 2, 3, 5] {
            for w in [1usize, 2, 3] {
                let (params, statement, witness, mut rng) =
                    setup(n, w, format!("grid-{n}-{w}").as_bytes());
                for _ in 0..20 {
                    let tr = run_round(&params, &statement, &witness, &mut rng);
                    verify(&statement, &tr).unwrap();
                }
            }
        }
    }

    #[test]
    fn zero_randomness_gives_identity_commitments() {
        let (params, statement, witness, mut rng) = setup(3, 2, b"zeros");
        let u: Vec<Scalar> = (0..3).map(|_| params.random_scalar(&mut rng)).collect();
        let (state, msg2) = prover_commit_with(
            &statement,
            &witness,
            &u,
            ProverRandomness::zeros(3, 2),
        )
        .unwrap();
        assert!(msg2.t1.is_one());
        assert!(msg2.t2.is_one());
        assert!(msg2.t3.is_one());
        for e in &msg2.t4.entries {
            assert!(e.a.is_one());
            assert!(e.b.is_one());
        }
        for th in &msg2.t_hat {
            assert!(th.is_one());
        }
        let c = params.random_scalar(&mut rng);
        let resp = prover_respond(state, &c);
        verify(
            &statement,
            &Transcript {
                u,
                msg2,
                c,
                resp,
            },
        )
        .unwrap();
    }

    #[test]
    fn response_tampering_pinpoints_equations() {
        let (params, statement, witness, mut rng) = setup(4, 2, b"per-eq");
        let tr = run_round(&params, &statement, &witness, &mut rng);
        let bump = |s: &Scalar| params.scalar_add(s, &Scalar::one());

        let mut t = tr.clone();
        t.resp.s1 = bump(&t.resp.s1);
        assert_eq!(verify(&statement, &t), Err(Error::EquationFailed(1)));

        let mut t = tr.clone();
        t.resp.s2 = bump(&t.resp.s2);
        assert_eq!(verify(&statement, &t), Err(Error::EquationFailed(2)));

        let mut t = tr.clone();
        t.resp.s3 = bump(&t.resp.s3);
        assert_eq!(verify(&statement, &t), Err(Error::EquationFailed(3)));

        let mut t = tr.clone();
        t.resp.s4[1] = bump(&t.resp.s4[1]);
        assert_eq!(verify(&statement, &t), Err(Error::EquationFailed(4)));

        let mut t = tr.clone();
        t.resp.s_hat[2] = bump(&t.resp.s_hat[2]);
        assert_eq!(verify(&statement, &t), Err(Error::EquationFailed(5)));

        // s' enters equations 3, 4 and 5; 3 is reported first
        let mut t = tr.clone();
        t.resp.s_prime[0] = bump(&t.resp.s_prime[0]);
        assert_eq!(verify(&statement, &t), Err(Error::EquationFailed(3)));
    }

    #[test]
    fn chain_tampering_detected() {
        let (params, statement, witness, mut rng) = setup(3, 1, b"chain-tamper");
        let tr = run_round(&params, &statement, &witness, &mut rng);
        let g = params.g().clone();

        // c_hat other than the last enters only the chain equations
        let mut t = tr.clone();
        t.msg2.c_hat[0] = params.mul(&t.msg2.c_hat[0], &g);
        assert_eq!(verify(&statement, &t), Err(Error::EquationFailed(5)));

        // the last link also backs equation 2
        let mut t = tr.clone();
        let last = t.msg2.c_hat.len() - 1;
        t.msg2.c_hat[last] = params.mul(&t.msg2.c_hat[last], &g);
        assert_eq!(verify(&statement, &t), Err(Error::EquationFailed(2)));

        let mut t = tr.clone();
        t.msg2.t1 = params.mul(&t.msg2.t1, &g);
        assert_eq!(verify(&statement, &t), Err(Error::EquationFailed(1)));
        let mut t = tr.clone();
        t.msg2.t4.entries[0].a = params.mul(&t.msg2.t4.entries[0].a, &g);
        assert_eq!(verify(&statement, &t), Err(Error::EquationFailed(4)));
    }

    #[test]
    fn rewinding_fork_answers_two_challenges() {
        let (params, statement, witness, mut rng) = setup(3, 2, b"fork");
        let u: Vec<Scalar> = (0..3).map(|_| params.random_scalar(&mut rng)).collect();
        let (state, msg2) = prover_commit(&statement, &witness, &u, &mut rng).unwrap();
        let c1 = params.scalar_from_u64(3);
        let c2 = params.scalar_from_u64(7);
        let fork = state.fork_for_rewinding();
        let r1 = prover_respond(state, &c1);
        let r2 = prover_respond(fork, &c2);
        verify(
            &statement,
            &Transcript {
                u: u.clone(),
                msg2: msg2.clone(),
                c: c1,
                resp: r1,
            },
        )
        .unwrap();
        verify(
            &statement,
            &Transcript {
                u,
                msg2,
                c: c2,
                resp: r2,
            },
        )
        .unwrap();
    }

    #[test]
    fn simulator_transcripts_verify() {
        let (params, statement, _witness, mut rng) = setup(3, 2, b"simulate");
        for _ in 0..200 {
            let u: Vec<Scalar> = (0..3).map(|_| params.random_scalar(&mut rng)).collect();
            let c = params.random_scalar(&mut rng);
            let tr = simulate(&statement, &u, &c, &mut rng).unwrap();
            verify(&statement, &tr).unwrap();
            assert_eq!(tr.u, u);
            assert_eq!(tr.c, c);
        }
    }

    #[test]
    fn shape_violations_error() {
        let (params, statement, witness, mut rng) = setup(3, 1, b"shape");
        let short_u: Vec<Scalar> = (0..2).map(|_| params.random_scalar(&mut rng)).collect();
        assert!(prover_commit(&statement, &witness, &short_u, &mut rng).is_err());

        let tr = run_round(&params, &statement, &witness, &mut rng);
        let mut bad = tr.clone();
        bad.u.pop();
        assert!(matches!(
            verify(&statement, &bad),
            Err(Error::LengthMismatch { .. })
        ));
        let mut bad = tr;
        bad.resp.s4.push(Scalar::zero());
        assert!(matches!(
            verify(&statement, &bad),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn derive_secrets_closed_forms() {
        let (params, statement, witness, mut rng) = setup(5, 2, b"secrets");
        let n = 5;
        let u: Vec<Scalar> = (0..n).map(|_| params.random_scalar(&mut rng)).collect();
        let r_hat: Vec<Scalar> = (0..n).map(|_| params.random_scalar(&mut rng)).collect();
        let sec = derive_secrets(&params, &witness, &u, &r_hat).unwrap();
        let perm = witness.permutation().unwrap();
        for i in 0..n {
            assert_eq!(sec.u_prime[i], u[perm.apply(i)]);
        }
        // chain equals its closed form: building c_hat by the recurrence ends
        // at h^{r_diamond} h_1^{prod u'_i}
        let key = &statement.key;
        let h1 = &key.basis()[0];
        let mut prev = h1.clone();
        for i in 0..n {
            prev = key.pc(&sec.u_prime[i], &r_hat[i], &prev);
        }
        let closed = key.pc(
            &params.scalar_product(sec.u_prime.iter()),
            &sec.r_diamond,
            h1,
        );
        assert_eq!(prev, closed);
    }
}
