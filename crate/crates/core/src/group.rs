//! Arithmetic in the order-`q` subgroup of `Z_p^*` for a safe prime `p = 2q + 1`,
//! together with its exponent field `Z_q`.
//!
//! Group elements and scalars are thin wrappers around big integers; every
//! operation goes through [`GroupParams`], which carries the modulus pair. The
//! subgroup is the set of quadratic residues mod `p`, so membership of `x` is
//! equivalent to `x^q = 1 (mod p)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{Num, One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Element of the prime-order subgroup, kept reduced mod `p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement(pub(crate) BigUint);

/// Exponent in `Z_q`, kept reduced mod `q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(pub(crate) BigUint);

impl GroupElement {
    pub fn one() -> Self {
        GroupElement(BigUint::one())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    /// Lowercase hex, no leading zeros.
    pub fn to_hex(&self) -> String {
        self.0.to_str_radix(16)
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigUint::zero())
    }

    pub fn one() -> Self {
        Scalar(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.to_str_radix(16)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({})", self.to_hex())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self.to_hex())
    }
}

/// Named parameter sets shipped with the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// p = 23, q = 11, g = 2. For unit tests and worked examples only.
    Toy,
    /// 160-bit q: the smallest 160-bit prime q with 2q + 1 prime, g = 4.
    Test160,
    /// 2048-bit safe prime from the well-known MODP group, g = 2.
    Prod2048,
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "toy" => Ok(Preset::Toy),
            "test160" => Ok(Preset::Test160),
            "prod2048" => Ok(Preset::Prod2048),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }
}

const TEST160_P: &str = "1000000000000000000000000000000000001c52b";
const TEST160_Q: &str = "800000000000000000000000000000000000e295";

const PROD2048_P: &str = "ffffffffffffffffc90fdaa22168c234c4c6628b80dc1cd129024e088a67cc74\
020bbea63b139b22514a08798e3404ddef9519b3cd3a431b302b0a6df25f1437\
4fe1356d6d51c245e485b576625e7ec6f44c42e9a637ed6b0bff5cb6f406b7ed\
ee386bfb5a899fa5ae9f24117c4b1fe649286651ece45b3dc2007cb8a163bf05\
98da48361c55d39a69163fa8fd24cf5f83655d23dca3ad961c62f356208552bb\
9ed529077096966d670c354e4abc9804f1746c08ca18217c32905e462e36ce3b\
e39e772c180e86039b2783a2ec07a28fb5c55df06f4c52c9de2bcbf695581718\
3995497cea956ae515d2261898fa051015728e5a8aacaa68ffffffffffffffff";

const PROD2048_Q: &str = "7fffffffffffffffe487ed5110b4611a62633145c06e0e68948127044533e63a\
0105df531d89cd9128a5043cc71a026ef7ca8cd9e69d218d98158536f92f8a1b\
a7f09ab6b6a8e122f242dabb312f3f637a262174d31bf6b585ffae5b7a035bf6\
f71c35fdad44cfd2d74f9208be258ff324943328f6722d9ee1003e5c50b1df82\
cc6d241b0e2ae9cd348b1fd47e9267afc1b2ae91ee51d6cb0e3179ab1042a95d\
cf6a9483b84b4b36b3861aa7255e4c0278ba3604650c10be19482f23171b671d\
f1cf3b960c074301cd93c1d17603d147dae2aef837a62964ef15e5fb4aac0b8c\
1ccaa4be754ab5728ae9130c4c7d02880ab9472d455655347fffffffffffffff";

fn biguint_from_hex(s: &str) -> BigUint {
    BigUint::from_str_radix(s, 16).expect("valid hex constant")
}

/// Group description: safe prime `p = 2q + 1` and a generator `g` of the
/// order-`q` subgroup.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupParams {
    p: BigUint,
    q: BigUint,
    g: GroupElement,
}

/// Returns the named parameter set. The shipped constants are fixed; their
/// primality and generator properties are covered by tests.
pub fn gen_params(preset: Preset) -> GroupParams {
    match preset {
        Preset::Toy => GroupParams {
            p: BigUint::from(23u32),
            q: BigUint::from(11u32),
            g: GroupElement(BigUint::from(2u32)),
        },
        Preset::Test160 => GroupParams {
            p: biguint_from_hex(TEST160_P),
            q: biguint_from_hex(TEST160_Q),
            g: GroupElement(BigUint::from(4u32)),
        },
        Preset::Prod2048 => GroupParams {
            p: biguint_from_hex(PROD2048_P),
            q: biguint_from_hex(PROD2048_Q),
            g: GroupElement(BigUint::from(2u32)),
        },
    }
}

impl GroupParams {
    /// Builds and validates a parameter set from raw integers.
    pub fn new(p: BigUint, q: BigUint, g: BigUint) -> Result<GroupParams> {
        let params = GroupParams {
            p,
            q,
            g: GroupElement(g),
        };
        params.validate()?;
        Ok(params)
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    pub fn g(&self) -> &GroupElement {
        &self.g
    }

    /// Checks the structural invariants: p = 2q + 1, both prime, and g a
    /// non-trivial subgroup member.
    pub fn validate(&self) -> Result<()> {
        let two = BigUint::from(2u32);
        if self.q < two {
            return Err(Error::InvalidParams("q too small".into()));
        }
        if self.p != &two * &self.q + BigUint::one() {
            return Err(Error::InvalidParams("p != 2q + 1".into()));
        }
        if !is_probable_prime(&self.p) {
            return Err(Error::InvalidParams("p is composite".into()));
        }
        if !is_probable_prime(&self.q) {
            return Err(Error::InvalidParams("q is composite".into()));
        }
        if self.g.0 < two || self.g.0 >= self.p {
            return Err(Error::InvalidParams("generator out of range".into()));
        }
        if !self.is_member(&self.g.0) {
            return Err(Error::InvalidParams(
                "generator is not in the order-q subgroup".into(),
            ));
        }
        Ok(())
    }

    /// True iff `v` is in `[1, p)` and `v^q = 1 (mod p)`.
    pub fn is_member(&self, v: &BigUint) -> bool {
        if v.is_zero() || *v >= self.p {
            return false;
        }
        v.modpow(&self.q, &self.p).is_one()
    }

    /// Checked constructor for subgroup elements.
    pub fn element_from(&self, v: BigUint) -> Result<GroupElement> {
        if self.is_member(&v) {
            Ok(GroupElement(v))
        } else {
            Err(Error::NonMember)
        }
    }

    pub fn element_from_hex(&self, s: &str) -> Result<GroupElement> {
        let v = BigUint::from_str_radix(s, 16)
            .map_err(|_| Error::Encoding(format!("bad hex element `{s}`")))?;
        self.element_from(v)
    }

    /// Checked constructor for field scalars (`v < q`).
    pub fn scalar_from(&self, v: BigUint) -> Result<Scalar> {
        if v < self.q {
            Ok(Scalar(v))
        } else {
            Err(Error::ScalarOutOfRange)
        }
    }

    pub fn scalar_from_hex(&self, s: &str) -> Result<Scalar> {
        let v = BigUint::from_str_radix(s, 16)
            .map_err(|_| Error::Encoding(format!("bad hex scalar `{s}`")))?;
        self.scalar_from(v)
    }

    /// Small-integer scalar, reduced mod q.
    pub fn scalar_from_u64(&self, v: u64) -> Scalar {
        Scalar(BigUint::from(v) % &self.q)
    }

    pub fn exp(&self, base: &GroupElement, e: &Scalar) -> GroupElement {
        GroupElement(base.0.modpow(&e.0, &self.p))
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(&a.0 * &b.0 % &self.p)
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        // a^(p-2); elements are nonzero mod the prime p by construction.
        let e = &self.p - BigUint::from(2u32);
        GroupElement(a.0.modpow(&e, &self.p))
    }

    /// Product of a sequence of elements (1 for the empty sequence).
    pub fn prod<'a>(&self, it: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        it.into_iter()
            .fold(GroupElement::one(), |acc, x| self.mul(&acc, x))
    }

    pub fn scalar_add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar((&a.0 + &b.0) % &self.q)
    }

    pub fn scalar_sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar((&a.0 + &self.q - &b.0) % &self.q)
    }

    pub fn scalar_mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar(&a.0 * &b.0 % &self.q)
    }

    pub fn scalar_neg(&self, a: &Scalar) -> Scalar {
        Scalar((&self.q - &a.0) % &self.q)
    }

    /// Multiplicative inverse in `Z_q` via Fermat; zero is not invertible.
    pub fn scalar_inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.0.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let e = &self.q - BigUint::from(2u32);
        Ok(Scalar(a.0.modpow(&e, &self.q)))
    }

    pub fn scalar_sum<'a>(&self, it: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
        it.into_iter()
            .fold(Scalar::zero(), |acc, x| self.scalar_add(&acc, x))
    }

    pub fn scalar_product<'a>(&self, it: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
        it.into_iter()
            .fold(Scalar::one(), |acc, x| self.scalar_mul(&acc, x))
    }

    /// Uniform scalar in `[0, q)`.
    pub fn random_scalar<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        Scalar(rng.gen_biguint_below(&self.q))
    }

    /// Uniform subgroup element (`g^x` for uniform `x`).
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        let x = self.random_scalar(rng);
        self.exp(&self.g, &x)
    }
}

/// Deterministic RNG from a domain tag and a caller-chosen seed string.
pub fn seeded_rng(domain: &[u8], seed: &[u8]) -> ChaCha20Rng {
    let mut h = Sha256::new();
    h.update(domain);
    h.update(seed);
    ChaCha20Rng::from_seed(h.finalize().into())
}

const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller-Rabin with the first twelve primes as bases. Deterministic for all
/// 64-bit inputs and ample for validating shipped constants.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for sp in SMALL_PRIMES {
        let sp = BigUint::from(sp);
        if *n == sp {
            return true;
        }
        if (n % &sp).is_zero() {
            return false;
        }
    }
    // n is odd and > 37: write n - 1 = d * 2^s.
    let n_minus_1 = n - BigUint::one();
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for a in SMALL_PRIMES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}
