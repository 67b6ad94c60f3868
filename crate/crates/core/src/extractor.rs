//! Knowledge extraction from accepting transcripts.
//!
//! `basic_extract` turns a rewound transcript pair (same commit message, two
//! challenges) into openings of the aggregate equations by divided
//! differences. `extended_extract` assembles N of those — the challenge
//! vectors as columns of an invertible matrix U — and linear algebra either
//! recovers a full shuffle witness (M, r, R) or produces two distinct
//! openings of the same commitment, i.e. a binding break. Exactly one of the
//! two happens; both are machine-checkable, which is what the soundness
//! tests exercise.

use crate::commit::{verify_commitment_break, CommitmentBreak};
use crate::elgamal::{cexp, cmul, enc_ones};
use crate::error::{Error, Result};
use crate::group::{GroupElement, Scalar};
use crate::permmat::{
    inner, is_permutation_matrix, mat_inverse, mat_mul, mat_vec_mul, vec_mat_mul, ScalarMatrix,
};
use crate::shuffle::{check_relation, ShuffleStatement, ShuffleWitness};
use crate::sigma::{self, chain_randomness, Transcript};

/// Openings recovered from one rewound pair. `c_hat` is the commitment
/// chain of the shared commit message — the chain sub-statements are
/// relative to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicWitness {
    pub u: Vec<Scalar>,
    pub c_hat: Vec<GroupElement>,
    pub r_bar: Scalar,
    pub r_diamond: Scalar,
    pub r_tilde: Scalar,
    pub r_star: Vec<Scalar>,
    pub r_hat: Vec<Scalar>,
    pub u_prime: Vec<Scalar>,
}

/// A full witness for the shuffle relation, as recovered by extraction.
pub type ExtendedWitness = ShuffleWitness;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtractionOutcome {
    Witness(ExtendedWitness),
    Break(CommitmentBreak),
}

/// Divided-difference extraction from two accepting transcripts that share
/// `u` and the commit message but differ in the scalar challenge.
pub fn basic_extract(
    statement: &ShuffleStatement,
    t: &Transcript,
    t_star: &Transcript,
) -> Result<BasicWitness> {
    sigma::verify(statement, t).map_err(|_| Error::NonAccepting)?;
    sigma::verify(statement, t_star).map_err(|_| Error::NonAccepting)?;
    if t.u != t_star.u {
        return Err(Error::TranscriptMismatch("u"));
    }
    if t.msg2 != t_star.msg2 {
        return Err(Error::TranscriptMismatch("msg2"));
    }
    if t.c == t_star.c {
        return Err(Error::TranscriptMismatch("equal challenges"));
    }
    let params = &statement.params;
    let d = params.scalar_inv(&params.scalar_sub(&t.c, &t_star.c))?;
    let ext = |a: &Scalar, b: &Scalar| params.scalar_mul(&params.scalar_sub(a, b), &d);
    let ext_vec = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| ext(x, y)).collect()
    };
    let (r, s) = (&t.resp, &t_star.resp);
    Ok(BasicWitness {
        u: t.u.clone(),
        c_hat: t.msg2.c_hat.clone(),
        r_bar: ext(&r.s1, &s.s1),
        r_diamond: ext(&r.s2, &s.s2),
        r_tilde: ext(&r.s3, &s.s3),
        r_star: ext_vec(&r.s4, &s.s4),
        r_hat: ext_vec(&r.s_hat, &s.s_hat),
        u_prime: ext_vec(&r.s_prime, &s.s_prime),
    })
}

/// The five aggregate openings a basic witness must satisfy:
/// (1) prod c_j = EPC(1, r_bar)
/// (2) prod c_j^{u_j} = EPC(u', r_tilde)
/// (3) prod e'_i^{u'_i} = Enc(1, r*) * prod e_i^{u_i}
/// (4) c_hat_i = PC(u'_i, r_hat_i; c_hat_{i-1}) for every i
/// (5) c_hat_N = PC(prod u_i, r_diamond; h_1)
pub fn check_substatements(statement: &ShuffleStatement, bw: &BasicWitness) -> bool {
    let params = &statement.params;
    let key = &statement.key;
    let n = statement.n();
    let w = statement.width();
    if bw.u.len() != n
        || bw.c_hat.len() != n
        || bw.r_star.len() != w
        || bw.r_hat.len() != n
        || bw.u_prime.len() != n
    {
        return false;
    }
    let ones = vec![Scalar::one(); n];
    let h1 = &key.basis()[0];

    let prod_c = params.prod(statement.c.iter());
    match key.epc(&ones, &bw.r_bar) {
        Ok(rhs) if rhs == prod_c => {}
        _ => return false,
    }

    let mut c_pow_u = GroupElement::one();
    for (ci, ui) in statement.c.iter().zip(&bw.u) {
        c_pow_u = params.mul(&c_pow_u, &params.exp(ci, ui));
    }
    match key.epc(&bw.u_prime, &bw.r_tilde) {
        Ok(rhs) if rhs == c_pow_u => {}
        _ => return false,
    }

    let fold = |vs: &[crate::elgamal::CiphertextVector], es: &[Scalar]| {
        let mut acc = cexp(params, &vs[0], &es[0]);
        for i in 1..vs.len() {
            acc = cmul(params, &acc, &cexp(params, &vs[i], &es[i])).expect("uniform widths");
        }
        acc
    };
    let lhs = fold(&statement.outputs, &bw.u_prime);
    let rhs = match enc_ones(params, &statement.pk, &bw.r_star) {
        Ok(blind) => match cmul(params, &blind, &fold(&statement.inputs, &bw.u)) {
            Ok(v) => v,
            Err(_) => return false,
        },
        Err(_) => return false,
    };
    if lhs != rhs {
        return false;
    }

    let mut prev = h1;
    for i in 0..n {
        if bw.c_hat[i] != key.pc(&bw.u_prime[i], &bw.r_hat[i], prev) {
            return false;
        }
        prev = &bw.c_hat[i];
    }

    let prod_u = params.scalar_product(bw.u.iter());
    bw.c_hat[n - 1] == key.pc(&prod_u, &bw.r_diamond, h1)
}

/// Assembles at least N basic witnesses into a shuffle witness or a
/// commitment break.
///
/// `Err(Singular)` means the challenge vectors were linearly dependent —
/// the caller should extract from fresh transcripts. `Err(NeedMoreWitnesses)`
/// means the recovered matrix is provably not a permutation matrix yet none
/// of the supplied witnesses exposes two distinct openings; one more
/// witness (whose challenge vector avoids a proper subvariety) resolves it.
pub fn extended_extract(
    statement: &ShuffleStatement,
    witnesses: &[BasicWitness],
) -> Result<ExtractionOutcome> {
    let params = &statement.params;
    let n = statement.n();
    let w = statement.width();
    if witnesses.len() < n {
        return Err(Error::TooFewWitnesses {
            needed: n,
            got: witnesses.len(),
        });
    }
    for (index, bw) in witnesses.iter().enumerate() {
        if !check_substatements(statement, bw) {
            return Err(Error::SubstatementsFailed { index });
        }
    }

    let mut u_mat = ScalarMatrix::zeros(n, n);
    let mut u_prime_mat = ScalarMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            u_mat[(i, j)] = witnesses[j].u[i].clone();
            u_prime_mat[(i, j)] = witnesses[j].u_prime[i].clone();
        }
    }
    let a = mat_inverse(params, &u_mat)?;
    let m = mat_mul(params, &u_prime_mat, &a)?;
    let r_tildes: Vec<Scalar> = witnesses[..n].iter().map(|bw| bw.r_tilde.clone()).collect();
    let r_vec = vec_mat_mul(params, &r_tildes, &a)?;

    let ones = vec![Scalar::one(); n];
    let m_one = mat_vec_mul(params, &m, &ones)?;
    if m_one != ones {
        // two openings of prod c_j: the all-ones row-sum vector vs M*1
        let brk = CommitmentBreak {
            m: ones,
            r: witnesses[0].r_bar.clone(),
            m_prime: m_one,
            r_prime: params.scalar_sum(r_vec.iter()),
        };
        return finish_break(statement, brk);
    }

    if is_permutation_matrix(&m) {
        for bw in &witnesses[n..] {
            let mu = mat_vec_mul(params, &m, &bw.u)?;
            if mu != bw.u_prime {
                return finish_break(statement, opening_pair_break(statement, &r_vec, &m, bw)?);
            }
        }
        let mut r_star_mat = ScalarMatrix::zeros(w, n);
        for j in 0..n {
            for k in 0..w {
                r_star_mat[(k, j)] = witnesses[j].r_star[k].clone();
            }
        }
        let reenc = mat_mul(params, &r_star_mat, &a)?;
        let witness = ShuffleWitness {
            matrix: m,
            r: r_vec,
            reenc,
        };
        if !check_relation(statement, &witness) {
            return Err(Error::InconsistentExtraction);
        }
        return Ok(ExtractionOutcome::Witness(witness));
    }

    // M has row sums 1 but is not a permutation matrix: some witness must
    // expose a collision, either directly against M or on the chain head.
    for (j, bw) in witnesses.iter().enumerate() {
        if j >= n {
            let mu = mat_vec_mul(params, &m, &bw.u)?;
            if mu != bw.u_prime {
                return finish_break(statement, opening_pair_break(statement, &r_vec, &m, bw)?);
            }
        }
        let prod_u_prime = params.scalar_product(bw.u_prime.iter());
        let prod_u = params.scalar_product(bw.u.iter());
        if prod_u_prime != prod_u {
            // both open c_hat_N over the basis (h_1, ...): the chain gives
            // exponent prod u'_i, sub-statement (5) gives prod u_i
            let pad = |head: Scalar| {
                let mut v = vec![Scalar::zero(); n];
                v[0] = head;
                v
            };
            let kappa = chain_randomness(params, &bw.r_hat, &bw.u_prime);
            let brk = CommitmentBreak {
                m: pad(prod_u_prime),
                r: kappa,
                m_prime: pad(prod_u),
                r_prime: bw.r_diamond.clone(),
            };
            return finish_break(statement, brk);
        }
    }
    Err(Error::NeedMoreWitnesses)
}

/// Break from a witness whose u' disagrees with M u: both open
/// prod c_i^{u_i}, once via sub-statement (2) and once via the recovered
/// column openings c_l = EPC(M_l, r_l).
fn opening_pair_break(
    statement: &ShuffleStatement,
    r_vec: &[Scalar],
    m: &ScalarMatrix,
    bw: &BasicWitness,
) -> Result<CommitmentBreak> {
    let params = &statement.params;
    Ok(CommitmentBreak {
        m: bw.u_prime.clone(),
        r: bw.r_tilde.clone(),
        m_prime: mat_vec_mul(params, m, &bw.u)?,
        r_prime: inner(params, r_vec, &bw.u)?,
    })
}

fn finish_break(statement: &ShuffleStatement, brk: CommitmentBreak) -> Result<ExtractionOutcome> {
    if !verify_commitment_break(&statement.key, &brk) {
        return Err(Error::InconsistentExtraction);
    }
    Ok(ExtractionOutcome::Break(brk))
}
