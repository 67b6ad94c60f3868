//! Pedersen commitments over the safe-prime group: the two-base form
//! `h^r * base^m` with an explicit, caller-chosen message base (the chained
//! commitments of the argument recommit against a running base), the extended
//! multi-message form `h^r * prod_i h_i^{m_i}`, and column-wise matrix
//! commitments built from it.
//!
//! Keys are derived from a seed by hashing into the group: each digest is
//! reduced mod `p` and squared, which lands in the order-`q` subgroup; results
//! equal to 0 or 1 or already taken are skipped.

use num_bigint::BigUint;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupParams, Scalar};
use crate::permmat::ScalarMatrix;

const KEYGEN_TAG: &[u8] = b"PSHUF/hgen";

/// Commitment key: randomizer base `h` plus message bases `h_1 .. h_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommitmentKey {
    params: GroupParams,
    h: GroupElement,
    basis: Vec<GroupElement>,
}

impl CommitmentKey {
    /// Assemble a key from existing elements, enforcing the key invariants:
    /// everything a subgroup member, nothing equal to 1, all bases pairwise
    /// distinct.
    pub fn from_parts(
        params: GroupParams,
        h: GroupElement,
        basis: Vec<GroupElement>,
    ) -> Result<CommitmentKey> {
        if basis.is_empty() {
            return Err(Error::LengthMismatch {
                expected: 1,
                got: 0,
            });
        }
        let mut all = vec![h.clone()];
        all.extend(basis.iter().cloned());
        for (i, e) in all.iter().enumerate() {
            if !params.is_member(e.value()) {
                return Err(Error::NonMember);
            }
            if e.is_one() {
                return Err(Error::InvalidParams("commitment base equal to 1".into()));
            }
            if all[..i].contains(e) {
                return Err(Error::InvalidParams("duplicate commitment base".into()));
            }
        }
        Ok(CommitmentKey { params, h, basis })
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn h(&self) -> &GroupElement {
        &self.h
    }

    pub fn basis(&self) -> &[GroupElement] {
        &self.basis
    }

    /// Number of message slots N.
    pub fn n(&self) -> usize {
        self.basis.len()
    }

    /// Two-base Pedersen commitment `h^r * base^m`.
    pub fn pc(&self, m: &Scalar, r: &Scalar, base: &GroupElement) -> GroupElement {
        let p = &self.params;
        p.mul(&p.exp(&self.h, r), &p.exp(base, m))
    }

    /// Extended Pedersen commitment `h^r * prod_i h_i^{m_i}` over all N slots.
    pub fn epc(&self, m: &[Scalar], r: &Scalar) -> Result<GroupElement> {
        if m.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: m.len(),
            });
        }
        let p = &self.params;
        let mut acc = p.exp(&self.h, r);
        for (base, mi) in self.basis.iter().zip(m) {
            acc = p.mul(&acc, &p.exp(base, mi));
        }
        Ok(acc)
    }

    /// Column-wise matrix commitment: `c_i = EPC(column_i(M), r_i)`.
    pub fn commit_matrix(&self, m: &ScalarMatrix, r: &[Scalar]) -> Result<Vec<GroupElement>> {
        if m.rows() != self.n() || m.cols() != r.len() {
            return Err(Error::DimensionMismatch);
        }
        (0..m.cols())
            .map(|i| self.epc(&m.column(i), &r[i]))
            .collect()
    }
}

/// Derives a commitment key for N message slots from `seed`, deterministically
/// in `(params, n, seed)`.
pub fn gen_commit_key(params: &GroupParams, n: usize, seed: &[u8]) -> Result<CommitmentKey> {
    if n == 0 {
        return Err(Error::LengthMismatch {
            expected: 1,
            got: 0,
        });
    }
    // The subgroup has q - 1 usable (non-identity) elements and we need n + 1
    // distinct ones.
    let needed = BigUint::from(n as u64) + BigUint::from(2u32);
    if params.q() < &needed {
        return Err(Error::InvalidParams(
            "group too small for the requested key size".into(),
        ));
    }
    let mut elements: Vec<GroupElement> = Vec::with_capacity(n + 1);
    let mut index: u32 = 0;
    while elements.len() < n + 1 {
        let mut hasher = Sha256::new();
        hasher.update(KEYGEN_TAG);
        hasher.update(seed);
        hasher.update(index.to_be_bytes());
        index = index
            .checked_add(1)
            .expect("commitment key derivation exhausted the index space");
        let x = BigUint::from_bytes_be(&hasher.finalize()) % params.p();
        let y = x.modpow(&BigUint::from(2u32), params.p());
        if y == BigUint::from(0u32) || y == BigUint::from(1u32) {
            continue;
        }
        let candidate = params
            .element_from(y)
            .expect("squares mod p lie in the subgroup");
        if elements.contains(&candidate) {
            continue;
        }
        elements.push(candidate);
    }
    let h = elements.remove(0);
    CommitmentKey::from_parts(params.clone(), h, elements)
}

/// Two different openings of the same extended commitment: the binding game
/// witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommitmentBreak {
    pub m: Vec<Scalar>,
    pub r: Scalar,
    pub m_prime: Vec<Scalar>,
    pub r_prime: Scalar,
}

/// True iff the two openings are well-formed, differ in the message vector,
/// and commit to the same group element.
pub fn verify_commitment_break(key: &CommitmentKey, brk: &CommitmentBreak) -> bool {
    if brk.m.len() != key.n() || brk.m_prime.len() != key.n() {
        return false;
    }
    if brk.m == brk.m_prime {
        return false;
    }
    match (key.epc(&brk.m, &brk.r), key.epc(&brk.m_prime, &brk.r_prime)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}
