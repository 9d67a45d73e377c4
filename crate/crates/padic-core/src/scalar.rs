use crate::context::{invert_residue, PadicContext};
use crate::error::PadicError;
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use std::fmt;

/// An element of `Z / p^N`, stored as its canonical residue.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    ctx: PadicContext,
    residue: BigUint,
}

impl PadicScalar {
    pub fn new(ctx: &PadicContext, value: &BigInt) -> Self {
        PadicScalar {
            ctx: ctx.clone(),
            residue: ctx.reduce(value),
        }
    }

    pub fn from_i64(ctx: &PadicContext, value: i64) -> Self {
        Self::new(ctx, &BigInt::from(value))
    }

    pub fn zero(ctx: &PadicContext) -> Self {
        PadicScalar {
            ctx: ctx.clone(),
            residue: BigUint::zero(),
        }
    }

    pub fn one(ctx: &PadicContext) -> Self {
        Self::from_i64(ctx, 1)
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// A unit of `Z/p^N` is a residue not divisible by `p`.
    pub fn is_unit(&self) -> bool {
        !(&self.residue % self.ctx.p()).is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self, PadicError> {
        self.ctx.compatible(&other.ctx)?;
        let sum = &self.residue + &other.residue;
        Ok(PadicScalar {
            ctx: self.ctx.clone(),
            residue: sum % self.ctx.modulus(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PadicError> {
        self.ctx.compatible(&other.ctx)?;
        let diff = BigInt::from(self.residue.clone()) - BigInt::from(other.residue.clone());
        Ok(PadicScalar {
            ctx: self.ctx.clone(),
            residue: self.ctx.reduce(&diff),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PadicError> {
        self.ctx.compatible(&other.ctx)?;
        let prod = &self.residue * &other.residue;
        Ok(PadicScalar {
            ctx: self.ctx.clone(),
            residue: prod % self.ctx.modulus(),
        })
    }

    pub fn neg(&self) -> Self {
        let n = -BigInt::from(self.residue.clone());
        PadicScalar {
            ctx: self.ctx.clone(),
            residue: self.ctx.reduce(&n),
        }
    }

    /// Multiplicative inverse; errors for non-units.
    pub fn inverse(&self) -> Result<Self, PadicError> {
        let inv = invert_residue(&self.ctx, &self.residue)?;
        Ok(PadicScalar {
            ctx: self.ctx.clone(),
            residue: inv,
        })
    }

    /// `v_p` of the residue, capped at the precision: zero reports `N`.
    pub fn valuation(&self) -> u32 {
        if self.residue.is_zero() {
            return self.ctx.precision();
        }
        let p = BigUint::from(self.ctx.p());
        let mut k = 0u32;
        let mut rest = self.residue.clone();
        while (&rest % &p).is_zero() {
            rest /= &p;
            k += 1;
        }
        k.min(self.ctx.precision())
    }
}

impl fmt::Debug for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {:?})", self.residue, self.ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, n: u32) -> PadicContext {
        PadicContext::new(p, n).unwrap()
    }

    #[test]
    fn arithmetic_known_values() {
        let c = ctx(5, 2);
        let six = PadicScalar::from_i64(&c, 6);
        let twenty_one = PadicScalar::from_i64(&c, 21);
        assert_eq!(
            six.mul(&six).unwrap().residue(),
            &BigUint::from(11u32),
            "6 * 6 = 36 = 11 mod 25"
        );
        assert_eq!(twenty_one.mul(&twenty_one).unwrap().residue(), &BigUint::from(16u32));
        assert_eq!(six.add(&twenty_one).unwrap().residue(), &BigUint::from(2u32));
    }

    #[test]
    fn inverse_and_units() {
        let c = ctx(5, 3);
        let a = PadicScalar::from_i64(&c, 6);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), PadicScalar::one(&c));
        let five = PadicScalar::from_i64(&c, 5);
        assert!(!five.is_unit());
        assert_eq!(five.inverse(), Err(PadicError::NotInvertible));
    }

    #[test]
    fn valuation_caps_at_precision() {
        let c = ctx(3, 4);
        assert_eq!(PadicScalar::from_i64(&c, 9).valuation(), 2);
        assert_eq!(PadicScalar::from_i64(&c, 0).valuation(), 4);
        assert_eq!(PadicScalar::from_i64(&c, 7).valuation(), 0);
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = PadicScalar::from_i64(&ctx(5, 2), 1);
        let b = PadicScalar::from_i64(&ctx(5, 3), 1);
        assert!(matches!(a.add(&b), Err(PadicError::ContextMismatch { .. })));
    }
}
