//! Verifiable shuffle of ElGamal ciphertext vectors.
//!
//! A mix node takes a list of ciphertext vectors, re-encrypts each entry and
//! outputs the list in a secret order. This crate implements that shuffle
//! together with a zero-knowledge argument that the output really is a
//! permuted re-encryption of the input: commitment-key generation, the
//! shuffler, the four-message interactive argument, its non-interactive
//! variant, an honest-verifier simulator, and the knowledge extractors used
//! by the soundness test suite.
//!
//! Arithmetic takes place in the prime-order subgroup of Z_p^* for a safe
//! prime p = 2q + 1. Three parameter presets are built in: `toy` (p = 23,
//! for tracing by hand), `test160` (160-bit q, fast enough for statistical
//! tests), and `prod2048` (a well-known 2048-bit MODP group).

pub mod error;
pub mod group;
pub mod permmat;
pub mod commit;
pub mod elgamal;
pub mod shuffle;
pub mod sigma;
pub mod canonical;
pub mod fiat_shamir;
pub mod extractor;
pub mod harness;

pub use error::{Error, Result};
pub use group::{gen_params, seeded_rng, GroupElement, GroupParams, Preset, Scalar};
