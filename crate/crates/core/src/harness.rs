//! Rewinding and adversary machinery for the soundness tests and the
//! extraction demo.
//!
//! Nothing here belongs in a deployment: `rewound_pair` replays a prover
//! state against two challenges, and [`Equivocator`] builds statements with
//! a trapdoor commitment key (known discrete logs among h and the basis) so
//! it can answer challenges for a committed matrix that is not a
//! permutation. That is exactly the power a binding break represents, which
//! makes it the right oracle for exercising the extractor's break branches.

use rand::Rng;

use crate::commit::CommitmentKey;
use crate::elgamal::{enc, enc_ones, keygen, CiphertextVector};
use crate::error::{Error, Result};
use crate::extractor::{basic_extract, extended_extract, BasicWitness, ExtractionOutcome};
use crate::group::{seeded_rng, GroupElement, GroupParams, Scalar};
use crate::permmat::{mat_vec_mul, matrix_to_perm, Permutation, ScalarMatrix};
use crate::shuffle::{check_relation, shuffle, ShuffleStatement, ShuffleWitness};
use crate::sigma::{chain_randomness, prover_commit, prover_respond, Transcript};

/// Encryptions of random group elements, the stock test input.
pub fn random_ciphertexts<R: Rng + ?Sized>(
    params: &GroupParams,
    pk: &GroupElement,
    n: usize,
    w: usize,
    rng: &mut R,
) -> Vec<CiphertextVector> {
    (0..n)
        .map(|_| {
            CiphertextVector::new(
                (0..w)
                    .map(|_| {
                        let m = params.random_element(rng);
                        enc(params, pk, &m, &params.random_scalar(rng))
                    })
                    .collect(),
            )
            .expect("w >= 1")
        })
        .collect()
}

/// One rewinding session: a fresh vector challenge, one commit message, two
/// accepting transcripts under distinct scalar challenges.
pub fn rewound_pair<R: Rng + ?Sized>(
    statement: &ShuffleStatement,
    witness: &ShuffleWitness,
    rng: &mut R,
) -> Result<(Transcript, Transcript)> {
    let params = &statement.params;
    let u: Vec<Scalar> = (0..statement.n())
        .map(|_| params.random_scalar(rng))
        .collect();
    let (state, msg2) = prover_commit(statement, witness, &u, rng)?;
    let c1 = params.random_scalar(rng);
    let c2 = loop {
        let c = params.random_scalar(rng);
        if c != c1 {
            break c;
        }
    };
    let fork = state.fork_for_rewinding();
    let resp1 = prover_respond(state, &c1);
    let resp2 = prover_respond(fork, &c2);
    Ok((
        Transcript {
            u: u.clone(),
            msg2: msg2.clone(),
            c: c1,
            resp: resp1,
        },
        Transcript {
            u,
            msg2,
            c: c2,
            resp: resp2,
        },
    ))
}

/// Runs `count` independent rewinding sessions and extracts each pair.
pub fn collect_witnesses<R: Rng + ?Sized>(
    statement: &ShuffleStatement,
    witness: &ShuffleWitness,
    count: usize,
    rng: &mut R,
) -> Result<Vec<BasicWitness>> {
    (0..count)
        .map(|_| {
            let (t, t_star) = rewound_pair(statement, witness, rng)?;
            basic_extract(statement, &t, &t_star)
        })
        .collect()
}

/// A prover that commits to an arbitrary matrix M (row sums unrestricted)
/// and answers challenge vectors with sub-statement-consistent openings,
/// using a trapdoor commitment key and all-ones plaintexts with known
/// encryption randomness.
pub struct Equivocator {
    statement: ShuffleStatement,
    matrix: ScalarMatrix,
    delta: Vec<Scalar>,
    r: Vec<Scalar>,
    in_rand: ScalarMatrix,
    out_rand: ScalarMatrix,
}

impl Equivocator {
    pub fn new<R: Rng + ?Sized>(
        params: &GroupParams,
        matrix: ScalarMatrix,
        w: usize,
        rng: &mut R,
    ) -> Result<Equivocator> {
        let n = matrix.rows();
        if matrix.cols() != n {
            return Err(Error::DimensionMismatch);
        }
        if w == 0 {
            return Err(Error::InvalidParams("width must be positive".into()));
        }

        // h = g^tau, basis_i = h^{delta_i} with the delta distinct and
        // outside {0, 1}, so the key passes the standard well-formedness
        // checks while its discrete logs are known
        let needed = num_bigint::BigUint::from(n as u64 + 2u64);
        if params.q() < &needed {
            return Err(Error::InvalidParams(
                "group too small for a trapdoor key of this size".into(),
            ));
        }
        let tau = loop {
            let t = params.random_scalar(rng);
            if !t.is_zero() {
                break t;
            }
        };
        let h = params.exp(params.g(), &tau);
        let mut delta: Vec<Scalar> = Vec::with_capacity(n);
        while delta.len() < n {
            let d = params.random_scalar(rng);
            if d.is_zero() || d == Scalar::one() || delta.contains(&d) {
                continue;
            }
            delta.push(d);
        }
        let basis: Vec<GroupElement> = delta.iter().map(|d| params.exp(&h, d)).collect();
        let key = CommitmentKey::from_parts(params.clone(), h, basis)?;

        let kp = keygen(params, rng);
        let r: Vec<Scalar> = (0..n).map(|_| params.random_scalar(rng)).collect();
        let c = key.commit_matrix(&matrix, &r)?;

        let rand_matrix = |rng: &mut R| {
            let mut m = ScalarMatrix::zeros(w, n);
            for k in 0..w {
                for j in 0..n {
                    m[(k, j)] = params.random_scalar(rng);
                }
            }
            m
        };
        let in_rand = rand_matrix(rng);
        let out_rand = rand_matrix(rng);
        let encrypt_ones = |rand: &ScalarMatrix| -> Result<Vec<CiphertextVector>> {
            (0..n)
                .map(|j| enc_ones(params, &kp.pk, &rand.column(j)))
                .collect()
        };
        let inputs = encrypt_ones(&in_rand)?;
        let outputs = encrypt_ones(&out_rand)?;
        let statement = ShuffleStatement {
            params: params.clone(),
            key,
            pk: kp.pk,
            c,
            inputs,
            outputs,
        };
        statement.validate_shape()?;
        Ok(Equivocator {
            statement,
            matrix,
            delta,
            r,
            in_rand,
            out_rand,
        })
    }

    pub fn statement(&self) -> &ShuffleStatement {
        &self.statement
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.matrix
    }

    /// Consistent openings for the committed matrix: u' = M u.
    pub fn witness_for<R: Rng + ?Sized>(&self, u: &[Scalar], rng: &mut R) -> Result<BasicWitness> {
        let u_prime = mat_vec_mul(&self.statement.params, &self.matrix, u)?;
        self.witness_with_u_prime(u, &u_prime, rng)
    }

    /// Openings for an arbitrary claimed u'. The trapdoor absorbs the
    /// difference between u' and M u into the randomness, so all five
    /// sub-statements still hold.
    pub fn witness_with_u_prime<R: Rng + ?Sized>(
        &self,
        u: &[Scalar],
        u_prime: &[Scalar],
        rng: &mut R,
    ) -> Result<BasicWitness> {
        let params = &self.statement.params;
        let key = &self.statement.key;
        let n = self.matrix.rows();
        if u.len() != n || u_prime.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: u.len().max(u_prime.len()),
            });
        }

        let r_hat: Vec<Scalar> = (0..n).map(|_| params.random_scalar(rng)).collect();
        let mut c_hat = Vec::with_capacity(n);
        let mut prev = key.basis()[0].clone();
        for i in 0..n {
            let ci = key.pc(&u_prime[i], &r_hat[i], &prev);
            c_hat.push(ci.clone());
            prev = ci;
        }

        let dot = |a: &[Scalar], b: &[Scalar]| {
            a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| {
                params.scalar_add(&acc, &params.scalar_mul(x, y))
            })
        };
        let sub_vec = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> {
            a.iter()
                .zip(b)
                .map(|(x, y)| params.scalar_sub(x, y))
                .collect()
        };
        let ones = vec![Scalar::one(); n];

        let kappa = chain_randomness(params, &r_hat, u_prime);
        let prod_u = params.scalar_product(u.iter());
        let prod_u_prime = params.scalar_product(u_prime.iter());
        let r_diamond = params.scalar_add(
            &kappa,
            &params.scalar_mul(&self.delta[0], &params.scalar_sub(&prod_u_prime, &prod_u)),
        );

        let m_one = mat_vec_mul(params, &self.matrix, &ones)?;
        let r_bar = params.scalar_add(
            &params.scalar_sum(self.r.iter()),
            &dot(&self.delta, &sub_vec(&m_one, &ones)),
        );

        let mu = mat_vec_mul(params, &self.matrix, u)?;
        let r_tilde = params.scalar_add(&dot(&self.r, u), &dot(&self.delta, &sub_vec(&mu, u_prime)));

        let r_star = sub_vec(
            &mat_vec_mul(params, &self.out_rand, u_prime)?,
            &mat_vec_mul(params, &self.in_rand, u)?,
        );

        Ok(BasicWitness {
            u: u.to_vec(),
            c_hat,
            r_bar,
            r_diamond,
            r_tilde,
            r_star,
            r_hat,
            u_prime: u_prime.to_vec(),
        })
    }
}

/// Outcome of one end-to-end extraction demo run.
#[derive(Clone, Debug)]
pub struct DemoReport {
    pub n: usize,
    pub w: usize,
    pub truth: Permutation,
    pub recovered: Permutation,
    pub relation_ok: bool,
    pub pass: bool,
    pub retries: usize,
}

/// Shuffles fresh random ciphertexts, rewinds the honest prover into n
/// basic witnesses, runs the extended extractor and compares the recovered
/// permutation against ground truth. Singular challenge matrices are
/// retried with fresh randomness.
pub fn run_extraction_demo(
    key: &CommitmentKey,
    pk: &GroupElement,
    w: usize,
    seed: &[u8],
) -> Result<DemoReport> {
    let params = key.params().clone();
    let n = key.n();
    let mut rng = seeded_rng(b"pshuf/demo", seed);
    let inputs = random_ciphertexts(&params, pk, n, w, &mut rng);
    let (statement, witness) = shuffle(key, pk, &inputs, &mut rng)?;
    let truth = witness.permutation()?;

    const MAX_RETRIES: usize = 16;
    for retries in 0..MAX_RETRIES {
        let ws = collect_witnesses(&statement, &witness, n, &mut rng)?;
        match extended_extract(&statement, &ws) {
            Ok(ExtractionOutcome::Witness(found)) => {
                let recovered = matrix_to_perm(&found.matrix)?;
                let relation_ok = check_relation(&statement, &found);
                let pass = relation_ok && recovered == truth;
                return Ok(DemoReport {
                    n,
                    w,
                    truth,
                    recovered,
                    relation_ok,
                    pass,
                    retries,
                });
            }
            Ok(ExtractionOutcome::Break(_)) => return Err(Error::InconsistentExtraction),
            Err(Error::Singular) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Singular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commit::gen_commit_key;
    use crate::extractor::check_substatements;
    use crate::group::{gen_params, Preset};
    use crate::sigma::verify;

    #[test]
    fn rewound_pairs_verify_and_share_prefix() {
        let params = gen_params(Preset::Toy);
        let mut rng = seeded_rng(b"harness-test", b"pairs");
        let key = gen_commit_key(&params, 3, b"h").unwrap();
        let kp = keygen(&params, &mut rng);
        let inputs = random_ciphertexts(&params, &kp.pk, 3, 2, &mut rng);
        let (st, wit) = shuffle(&key, &kp.pk, &inputs, &mut rng).unwrap();
        for _ in 0..20 {
            let (t, t_star) = rewound_pair(&st, &wit, &mut rng).unwrap();
            verify(&st, &t).unwrap();
            verify(&st, &t_star).unwrap();
            assert_eq!(t.u, t_star.u);
            assert_eq!(t.msg2, t_star.msg2);
            assert_ne!(t.c, t_star.c);
        }
    }

    #[test]
    fn equivocator_witnesses_are_consistent() {
        let params = gen_params(Preset::Test160);
        let mut rng = seeded_rng(b"harness-test", b"equivocator");
        let m = ScalarMatrix::identity(3);
        let adv = Equivocator::new(&params, m, 2, &mut rng).unwrap();
        for _ in 0..10 {
            let u: Vec<Scalar> = (0..3).map(|_| params.random_scalar(&mut rng)).collect();
            let bw = adv.witness_for(&u, &mut rng).unwrap();
            assert!(check_substatements(adv.statement(), &bw));
        }
    }

    #[test]
    fn demo_recovers_the_permutation() {
        let params = gen_params(Preset::Toy);
        let key = gen_commit_key(&params, 4, b"demo").unwrap();
        let mut rng = seeded_rng(b"harness-test", b"demo-key");
        let kp = keygen(&params, &mut rng);
        let report = run_extraction_demo(&key, &kp.pk, 2, b"demo-seed").unwrap();
        assert!(report.pass);
        assert!(report.relation_ok);
        assert_eq!(report.recovered, report.truth);
    }
}
