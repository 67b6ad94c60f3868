//! The shuffle itself and the relation the argument proves.
//!
//! A shuffle of `N` width-`w` ciphertext vectors picks a permutation `pi` and
//! fresh randomness, then publishes `e'_i = ReEnc(e_{pi(i)}, R_{pi(i)})`
//! together with a column-wise commitment to the matrix of `pi`. The witness
//! keeps the matrix `M` (row `i` has its 1 in column `pi(i)`, so `M u` reads
//! `u` through `pi`), the commitment randomness `r`, and the `w x N`
//! re-encryption randomness `R` whose column `j` was spent on input `j`.

use rand::Rng;

use crate::commit::CommitmentKey;
use crate::elgamal::{reenc_vec, CiphertextVector};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupParams, Scalar};
use crate::permmat::{is_permutation_matrix, matrix_to_perm, perm_to_matrix, Permutation, ScalarMatrix};

/// Public input of the argument: group, commitment key, encryption key, the
/// permutation commitment, and both ciphertext lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleStatement {
    pub params: GroupParams,
    pub key: CommitmentKey,
    pub pk: GroupElement,
    pub c: Vec<GroupElement>,
    pub inputs: Vec<CiphertextVector>,
    pub outputs: Vec<CiphertextVector>,
}

impl ShuffleStatement {
    pub fn n(&self) -> usize {
        self.inputs.len()
    }

    pub fn width(&self) -> usize {
        self.inputs.first().map(|e| e.width()).unwrap_or(0)
    }

    /// Structural consistency: matching lengths, uniform width, key sized N.
    pub fn validate_shape(&self) -> Result<()> {
        let n = self.n();
        if n == 0 {
            return Err(Error::LengthMismatch {
                expected: 1,
                got: 0,
            });
        }
        if self.key.params() != &self.params {
            return Err(Error::InvalidParams(
                "commitment key params differ from statement params".into(),
            ));
        }
        if self.key.n() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: self.key.n(),
            });
        }
        if self.c.len() != n || self.outputs.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: if self.c.len() != n {
                    self.c.len()
                } else {
                    self.outputs.len()
                },
            });
        }
        let w = self.width();
        if w == 0 {
            return Err(Error::WidthMismatch {
                expected: 1,
                got: 0,
            });
        }
        for e in self.inputs.iter().chain(&self.outputs) {
            if e.width() != w {
                return Err(Error::WidthMismatch {
                    expected: w,
                    got: e.width(),
                });
            }
        }
        Ok(())
    }
}

/// Private input: permutation matrix, commitment randomness, re-encryption
/// randomness (`w` rows, `N` columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleWitness {
    pub matrix: ScalarMatrix,
    pub r: Vec<Scalar>,
    pub reenc: ScalarMatrix,
}

impl ShuffleWitness {
    pub fn permutation(&self) -> Result<Permutation> {
        matrix_to_perm(&self.matrix)
    }
}

/// Shuffles `inputs` under a fresh uniform permutation and randomness,
/// returning the fully formed statement (commitment included) and the witness.
pub fn shuffle<R: Rng + ?Sized>(
    key: &CommitmentKey,
    pk: &GroupElement,
    inputs: &[CiphertextVector],
    rng: &mut R,
) -> Result<(ShuffleStatement, ShuffleWitness)> {
    let params = key.params().clone();
    let n = inputs.len();
    if n == 0 {
        return Err(Error::LengthMismatch {
            expected: 1,
            got: 0,
        });
    }
    if key.n() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: key.n(),
        });
    }
    let w = inputs[0].width();
    if inputs.iter().any(|e| e.width() != w) {
        return Err(Error::WidthMismatch {
            expected: w,
            got: inputs.iter().map(|e| e.width()).find(|&x| x != w).unwrap(),
        });
    }

    let perm = Permutation::random(n, rng);
    let matrix = perm_to_matrix(&perm);
    let r: Vec<Scalar> = (0..n).map(|_| params.random_scalar(rng)).collect();
    let reenc = ScalarMatrix::new(
        w,
        n,
        (0..w * n).map(|_| params.random_scalar(rng)).collect(),
    )?;
    let c = key.commit_matrix(&matrix, &r)?;
    let outputs: Vec<CiphertextVector> = (0..n)
        .map(|i| {
            let src = perm.apply(i);
            reenc_vec(&params, pk, &inputs[src], &reenc.column(src))
        })
        .collect::<Result<_>>()?;

    let statement = ShuffleStatement {
        params,
        key: key.clone(),
        pk: pk.clone(),
        c,
        inputs: inputs.to_vec(),
        outputs,
    };
    let witness = ShuffleWitness { matrix, r, reenc };
    Ok((statement, witness))
}

/// Decides the shuffle relation: `M` is a permutation matrix, `c` commits to
/// it under `r`, and every output re-encrypts the matching input under `R`.
pub fn check_relation(statement: &ShuffleStatement, witness: &ShuffleWitness) -> bool {
    if statement.validate_shape().is_err() {
        return false;
    }
    let n = statement.n();
    let w = statement.width();
    if !is_permutation_matrix(&witness.matrix)
        || witness.matrix.rows() != n
        || witness.r.len() != n
        || witness.reenc.rows() != w
        || witness.reenc.cols() != n
    {
        return false;
    }
    let perm = match matrix_to_perm(&witness.matrix) {
        Ok(p) => p,
        Err(_) => return false,
    };
    match statement.key.commit_matrix(&witness.matrix, &witness.r) {
        Ok(c) if c == statement.c => {}
        _ => return false,
    }
    for i in 0..n {
        let src = perm.apply(i);
        match reenc_vec(
            &statement.params,
            &statement.pk,
            &statement.inputs[src],
            &witness.reenc.column(src),
        ) {
            Ok(e) if e == statement.outputs[i] => {}
            _ => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commit::gen_commit_key;
    use crate::elgamal::{dec_vec, enc_vec, keygen};
    use crate::group::{gen_params, seeded_rng, Preset};
    use crate::permmat::mat_vec_mul;

    fn random_inputs<R: Rng + ?Sized>(
        params: &GroupParams,
        pk: &GroupElement,
        n: usize,
        w: usize,
        rng: &mut R,
    ) -> Vec<CiphertextVector> {
        (0..n)
            .map(|_| {
                let ms: Vec<GroupElement> = (0..w).map(|_| params.random_element(rng)).collect();
                let rs: Vec<Scalar> = (0..w).map(|_| params.random_scalar(rng)).collect();
                enc_vec(params, pk, &ms, &rs).unwrap()
            })
            .collect()
    }

    #[test]
    fn convention_lock() {
        // The permutation, its matrix, the witness relation, and the matrix-
        // vector product must all agree: outputs[i] re-encrypts
        // inputs[perm(i)], (M u)_i = u[perm(i)], and the commitment for
        // column i opens to the basis element indexed by perm^{-1}(i).
        let params = gen_params(Preset::Toy);
        let mut rng = seeded_rng(b"test", b"convention");
        let n = 5;
        let key = gen_commit_key(&params, n, b"lock").unwrap();
        let kp = keygen(&params, &mut rng);
        let inputs = random_inputs(&params, &kp.pk, n, 2, &mut rng);
        let (statement, witness) = shuffle(&key, &kp.pk, &inputs, &mut rng).unwrap();
        let perm = witness.permutation().unwrap();

        // witness relation, checked through the decryption oracle
        for i in 0..n {
            assert_eq!(
                dec_vec(&params, &kp.sk, &statement.outputs[i]),
                dec_vec(&params, &kp.sk, &statement.inputs[perm.apply(i)]),
            );
            assert_eq!(
                statement.outputs[i],
                reenc_vec(
                    &params,
                    &kp.pk,
                    &statement.inputs[perm.apply(i)],
                    &witness.reenc.column(perm.apply(i))
                )
                .unwrap()
            );
        }

        // M u reads u through the permutation
        let u: Vec<Scalar> = (0..n).map(|_| params.random_scalar(&mut rng)).collect();
        let mu = mat_vec_mul(&params, &witness.matrix, &u).unwrap();
        for i in 0..n {
            assert_eq!(mu[i], u[perm.apply(i)]);
        }

        // column i of M is the unit vector at row perm^{-1}(i), so c_i opens
        // as h^{r_i} * h_{perm^{-1}(i)}
        let inv = perm.inverse();
        for i in 0..n {
            let expect = params.mul(
                &params.exp(key.h(), &witness.r[i]),
                &key.basis()[inv.apply(i)],
            );
            assert_eq!(statement.c[i], expect);
        }
    }

    #[test]
    fn multiset_preserved() {
        let params = gen_params(Preset::Toy);
        let mut rng = seeded_rng(b"test", b"multiset");
        let n = 3;
        let w = 2;
        let key = gen_commit_key(&params, n, b"ms").unwrap();
        let kp = keygen(&params, &mut rng);
        let inputs = random_inputs(&params, &kp.pk, n, w, &mut rng);
        let (statement, _witness) = shuffle(&key, &kp.pk, &inputs, &mut rng).unwrap();

        let mut before: Vec<Vec<String>> = statement
            .inputs
            .iter()
            .map(|e| dec_vec(&params, &kp.sk, e).iter().map(|m| m.to_hex()).collect())
            .collect();
        let mut after: Vec<Vec<String>> = statement
            .outputs
            .iter()
            .map(|e| dec_vec(&params, &kp.sk, e).iter().map(|m| m.to_hex()).collect())
            .collect();
        before.sort();
        after.sort();
        assert_eq!(before, after);
    }

    #[test]
    fn relation_accepts_honest_and_rejects_tampered() {
        let params = gen_params(Preset::Toy);
        let mut rng = seeded_rng(b"test", b"relation");
        let n = 4;
        let key = gen_commit_key(&params, n, b"rel").unwrap();
        let kp = keygen(&params, &mut rng);
        let inputs = random_inputs(&params, &kp.pk, n, 1, &mut rng);
        let (statement, witness) = shuffle(&key, &kp.pk, &inputs, &mut rng).unwrap();
        assert!(check_relation(&statement, &witness));

        // swap two outputs
        let mut tampered = statement.clone();
        tampered.outputs.swap(0, 1);
        assert!(!check_relation(&tampered, &witness));

        // corrupt commitment randomness
        let mut bad = witness.clone();
        bad.r[0] = params.scalar_add(&bad.r[0], &Scalar::one());
        assert!(!check_relation(&statement, &bad));

        // non-permutation matrix
        let mut bad = witness.clone();
        bad.matrix[(0, 0)] = params.scalar_from_u64(2);
        assert!(!check_relation(&statement, &bad));
    }

    #[test]
    fn shape_errors() {
        let params = gen_params(Preset::Toy);
        let mut rng = seeded_rng(b"test", b"shapes");
        let key = gen_commit_key(&params, 3, b"shape").unwrap();
        let kp = keygen(&params, &mut rng);
        assert!(shuffle(&key, &kp.pk, &[], &mut rng).is_err());

        // key sized for 3 but 2 inputs supplied
        let inputs = random_inputs(&params, &kp.pk, 2, 1, &mut rng);
        assert!(shuffle(&key, &kp.pk, &inputs, &mut rng).is_err());

        // ragged widths
        let mut ragged = random_inputs(&params, &kp.pk, 3, 2, &mut rng);
        ragged[1] = random_inputs(&params, &kp.pk, 1, 1, &mut rng).pop().unwrap();
        assert!(shuffle(&key, &kp.pk, &ragged, &mut rng).is_err());
    }

    #[test]
    fn single_element_shuffle() {
        let params = gen_params(Preset::Toy);
        let mut rng = seeded_rng(b"test", b"n1");
        let key = gen_commit_key(&params, 1, b"one").unwrap();
        let kp = keygen(&params, &mut rng);
        let inputs = random_inputs(&params, &kp.pk, 1, 3, &mut rng);
        let (statement, witness) = shuffle(&key, &kp.pk, &inputs, &mut rng).unwrap();
        assert!(check_relation(&statement, &witness));
        assert_eq!(witness.permutation().unwrap(), Permutation::identity(1));
    }
}
