//! ElGamal over the safe-prime subgroup, on single ciphertexts and on fixed-
//! width vectors of them. A width-`w` vector is one logical payload: the
//! shuffle permutes whole vectors and re-encrypts them slot by slot.
//!
//! `enc(m, r) = (g^r, pk^r * m)`; re-encryption multiplies in a fresh
//! encryption of 1. Decryption is provided as a correctness oracle for tests
//! and demos; the proof machinery itself never decrypts.

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupParams, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyPair {
    pub pk: GroupElement,
    pub sk: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ciphertext {
    pub a: GroupElement,
    pub b: GroupElement,
}

/// Fixed-width vector of ciphertexts under one public key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiphertextVector {
    pub entries: Vec<Ciphertext>,
}

impl CiphertextVector {
    pub fn new(entries: Vec<Ciphertext>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::WidthMismatch {
                expected: 1,
                got: 0,
            });
        }
        Ok(CiphertextVector { entries })
    }

    pub fn width(&self) -> usize {
        self.entries.len()
    }
}

pub fn keygen<R: Rng + ?Sized>(params: &GroupParams, rng: &mut R) -> KeyPair {
    let sk = params.random_scalar(rng);
    let pk = params.exp(params.g(), &sk);
    KeyPair { pk, sk }
}

pub fn enc(params: &GroupParams, pk: &GroupElement, m: &GroupElement, r: &Scalar) -> Ciphertext {
    Ciphertext {
        a: params.exp(params.g(), r),
        b: params.mul(&params.exp(pk, r), m),
    }
}

/// Test-side oracle: recovers the plaintext with the secret key.
pub fn dec(params: &GroupParams, sk: &Scalar, e: &Ciphertext) -> GroupElement {
    params.mul(&e.b, &params.inv(&params.exp(&e.a, sk)))
}

/// Multiplies in a fresh encryption of 1 with randomness `r`.
pub fn reenc(params: &GroupParams, pk: &GroupElement, e: &Ciphertext, r: &Scalar) -> Ciphertext {
    Ciphertext {
        a: params.mul(&e.a, &params.exp(params.g(), r)),
        b: params.mul(&e.b, &params.exp(pk, r)),
    }
}

pub fn enc_vec(
    params: &GroupParams,
    pk: &GroupElement,
    ms: &[GroupElement],
    rs: &[Scalar],
) -> Result<CiphertextVector> {
    if ms.len() != rs.len() {
        return Err(Error::LengthMismatch {
            expected: ms.len(),
            got: rs.len(),
        });
    }
    CiphertextVector::new(
        ms.iter()
            .zip(rs)
            .map(|(m, r)| enc(params, pk, m, r))
            .collect(),
    )
}

pub fn reenc_vec(
    params: &GroupParams,
    pk: &GroupElement,
    e: &CiphertextVector,
    rs: &[Scalar],
) -> Result<CiphertextVector> {
    if e.width() != rs.len() {
        return Err(Error::WidthMismatch {
            expected: e.width(),
            got: rs.len(),
        });
    }
    CiphertextVector::new(
        e.entries
            .iter()
            .zip(rs)
            .map(|(ei, r)| reenc(params, pk, ei, r))
            .collect(),
    )
}

pub fn dec_vec(params: &GroupParams, sk: &Scalar, e: &CiphertextVector) -> Vec<GroupElement> {
    e.entries.iter().map(|ei| dec(params, sk, ei)).collect()
}

/// Slot-wise product of two equal-width vectors.
pub fn cmul(
    params: &GroupParams,
    x: &CiphertextVector,
    y: &CiphertextVector,
) -> Result<CiphertextVector> {
    if x.width() != y.width() {
        return Err(Error::WidthMismatch {
            expected: x.width(),
            got: y.width(),
        });
    }
    CiphertextVector::new(
        x.entries
            .iter()
            .zip(&y.entries)
            .map(|(a, b)| Ciphertext {
                a: params.mul(&a.a, &b.a),
                b: params.mul(&a.b, &b.b),
            })
            .collect(),
    )
}

/// Slot-wise exponentiation by one scalar.
pub fn cexp(params: &GroupParams, x: &CiphertextVector, k: &Scalar) -> CiphertextVector {
    CiphertextVector {
        entries: x
            .entries
            .iter()
            .map(|e| Ciphertext {
                a: params.exp(&e.a, k),
                b: params.exp(&e.b, k),
            })
            .collect(),
    }
}

/// Width-w vector of 1s encrypted with the given randomness; the homomorphic
/// identity shifted by `rs`.
pub fn enc_ones(params: &GroupParams, pk: &GroupElement, rs: &[Scalar]) -> Result<CiphertextVector> {
    let ones = vec![GroupElement::one(); rs.len()];
    enc_vec(params, pk, &ones, rs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{gen_params, seeded_rng, Preset};
    use num_bigint::BigUint;

    fn toy() -> GroupParams {
        gen_params(Preset::Toy)
    }

    #[test]
    fn enc_example() {
        let p = toy();
        let pk = p.element_from(BigUint::from(4u32)).unwrap();
        let m = p.element_from(BigUint::from(8u32)).unwrap();
        let e = enc(&p, &pk, &m, &p.scalar_from_u64(3));
        assert_eq!(e.a.value(), &BigUint::from(8u32));
        assert_eq!(e.b.value(), &BigUint::from(6u32));
        // sk = 2 matches pk = g^2 = 4
        let back = dec(&p, &p.scalar_from_u64(2), &e);
        assert_eq!(back, m);
    }

    #[test]
    fn reenc_example() {
        let p = toy();
        let pk = p.element_from(BigUint::from(4u32)).unwrap();
        let e = Ciphertext {
            a: p.element_from(BigUint::from(8u32)).unwrap(),
            b: p.element_from(BigUint::from(6u32)).unwrap(),
        };
        let e2 = reenc(&p, &pk, &e, &p.scalar_from_u64(5));
        assert_eq!(e2.a.value(), &BigUint::from(3u32));
        assert_eq!(e2.b.value(), &BigUint::from(3u32));
        // plaintext unchanged
        let sk = p.scalar_from_u64(2);
        assert_eq!(dec(&p, &sk, &e2).value(), &BigUint::from(8u32));
    }

    #[test]
    fn round_trip_random() {
        for params in [toy(), gen_params(Preset::Test160)] {
            let mut rng = seeded_rng(b"test", b"eg-roundtrip");
            let kp = keygen(&params, &mut rng);
            for _ in 0..100 {
                let m = params.random_element(&mut rng);
                let r = params.random_scalar(&mut rng);
                let e = enc(&params, &kp.pk, &m, &r);
                assert_eq!(dec(&params, &kp.sk, &e), m);
                let r2 = params.random_scalar(&mut rng);
                let e2 = reenc(&params, &kp.pk, &e, &r2);
                assert_eq!(dec(&params, &kp.sk, &e2), m);
            }
        }
    }

    #[test]
    fn homomorphic_ops() {
        let params = toy();
        let mut rng = seeded_rng(b"test", b"eg-hom");
        let kp = keygen(&params, &mut rng);
        for _ in 0..200 {
            let m1 = params.random_element(&mut rng);
            let m2 = params.random_element(&mut rng);
            let e1 = enc_vec(&params, &kp.pk, &[m1.clone()], &[params.random_scalar(&mut rng)])
                .unwrap();
            let e2 = enc_vec(&params, &kp.pk, &[m2.clone()], &[params.random_scalar(&mut rng)])
                .unwrap();
            let prod = cmul(&params, &e1, &e2).unwrap();
            assert_eq!(dec_vec(&params, &kp.sk, &prod), vec![params.mul(&m1, &m2)]);
            let k = params.random_scalar(&mut rng);
            let powed = cexp(&params, &e1, &k);
            assert_eq!(dec_vec(&params, &kp.sk, &powed), vec![params.exp(&m1, &k)]);
        }
    }

    #[test]
    fn cexp_zero_gives_identity() {
        let params = toy();
        let mut rng = seeded_rng(b"test", b"eg-zero");
        let kp = keygen(&params, &mut rng);
        let m = params.random_element(&mut rng);
        let e = enc_vec(&params, &kp.pk, &[m], &[params.random_scalar(&mut rng)]).unwrap();
        let z = cexp(&params, &e, &Scalar::zero());
        assert!(z.entries[0].a.is_one());
        assert!(z.entries[0].b.is_one());
    }

    #[test]
    fn width_checks() {
        let params = toy();
        let mut rng = seeded_rng(b"test", b"eg-width");
        let kp = keygen(&params, &mut rng);
        let m = params.random_element(&mut rng);
        let r = params.random_scalar(&mut rng);
        let e1 = enc_vec(&params, &kp.pk, &[m.clone()], &[r.clone()]).unwrap();
        let e2 = enc_vec(
            &params,
            &kp.pk,
            &[m.clone(), m.clone()],
            &[r.clone(), r.clone()],
        )
        .unwrap();
        assert!(cmul(&params, &e1, &e2).is_err());
        assert!(reenc_vec(&params, &kp.pk, &e1, &[r.clone(), r.clone()]).is_err());
        assert!(enc_vec(&params, &kp.pk, &[m], &[r.clone(), r]).is_err());
        assert!(CiphertextVector::new(vec![]).is_err());
    }

    #[test]
    fn enc_ones_is_homomorphic_identity() {
        let params = toy();
        let mut rng = seeded_rng(b"test", b"eg-ones");
        let kp = keygen(&params, &mut rng);
        let m = params.random_element(&mut rng);
        let e = enc_vec(&params, &kp.pk, &[m], &[params.random_scalar(&mut rng)]).unwrap();
        let shift = enc_ones(&params, &kp.pk, &[params.random_scalar(&mut rng)]).unwrap();
        let combined = cmul(&params, &e, &shift).unwrap();
        assert_eq!(
            dec_vec(&params, &kp.sk, &combined),
            dec_vec(&params, &kp.sk, &e)
        );
    }
}
