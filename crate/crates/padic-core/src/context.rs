use crate::error::PadicError;
use crate::primes::is_prime;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use std::fmt;

/// The ambient ring `Z / p^N`: a prime `p`, a working precision `N >= 1`,
/// and the cached modulus `p^N`.
///
/// Two contexts are interchangeable exactly when they share `(p, N)`. The
/// parity correction `epsilon` is `1` for `p = 2` and `0` otherwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PadicContext {
    p: u64,
    precision: u32,
    epsilon: u32,
    modulus: BigUint,
}

impl PadicContext {
    /// Build a context, verifying primality of `p` deterministically.
    pub fn new(p: u64, precision: u32) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if precision == 0 {
            return Err(PadicError::PrecisionZero);
        }
        Ok(PadicContext {
            p,
            precision,
            epsilon: if p == 2 { 1 } else { 0 },
            modulus: BigUint::from(p).pow(precision),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn epsilon(&self) -> u32 {
        self.epsilon
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// `p^k` as a big integer (no relation to the working precision).
    pub fn p_pow(&self, k: u32) -> BigUint {
        BigUint::from(self.p).pow(k)
    }

    /// Canonical residue of an arbitrary integer in `[0, p^N)`.
    pub fn reduce(&self, n: &BigInt) -> BigUint {
        let m = BigInt::from(self.modulus.clone());
        let r = n.mod_floor(&m);
        debug_assert!(!r.is_negative());
        r.to_biguint().expect("mod_floor by a positive modulus")
    }

    /// Same context (same `p` and `N`)?
    pub fn compatible(&self, other: &Self) -> Result<(), PadicError> {
        if self.p != other.p || self.precision != other.precision {
            return Err(PadicError::ContextMismatch {
                left_p: self.p,
                left_n: self.precision,
                right_p: other.p,
                right_n: other.precision,
            });
        }
        Ok(())
    }

    /// A context over the same prime with a different precision.
    pub fn with_precision(&self, precision: u32) -> Result<Self, PadicError> {
        PadicContext::new(self.p, precision)
    }

    /// Number of bytes needed for one canonical fixed-width residue.
    pub(crate) fn residue_width(&self) -> usize {
        (self.modulus.bits() as usize).div_ceil(8)
    }

    /// How many elements `Z/p^N` has, if it fits a `u64`.
    pub fn modulus_u64(&self) -> Option<u64> {
        self.modulus.to_u64()
    }
}

impl fmt::Debug for PadicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.p, self.precision)
    }
}

/// Modular inverse in `Z/p^N` for a unit residue.
pub(crate) fn invert_residue(ctx: &PadicContext, r: &BigUint) -> Result<BigUint, PadicError> {
    let a = BigInt::from(r.clone());
    let m = BigInt::from(ctx.modulus().clone());
    let gcd = a.extended_gcd(&m);
    if !gcd.gcd.is_one() {
        return Err(PadicError::NotInvertible);
    }
    Ok(ctx.reduce(&gcd.x))
}
