use crate::error::LieError;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use padic_core::{is_prime, val_p, PadicContext, PadicError, PadicMatrix, Valuation};
use std::fmt;

/// An element of the powerful Lie algebra `p^(1+eps) * gl_m(Z_p)`, stored as
/// an exact integer matrix whose entries are all divisible by `p^(1+eps)`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieElement {
    p: u64,
    epsilon: u32,
    dim: usize,
    entries: Vec<BigInt>,
}

impl LieElement {
    /// Validating constructor: every entry must be divisible by `p^(1+eps)`.
    pub fn new(p: u64, dim: usize, entries: Vec<BigInt>) -> Result<Self, LieError> {
        if !is_prime(p) {
            return Err(LieError::NotPrime(p));
        }
        if dim == 0 {
            return Err(LieError::ZeroDim);
        }
        if entries.len() != dim * dim {
            return Err(LieError::BadEntryCount {
                dim,
                got: entries.len(),
            });
        }
        let epsilon = if p == 2 { 1 } else { 0 };
        let step = BigInt::from(p).pow(1 + epsilon);
        for (idx, e) in entries.iter().enumerate() {
            if !(e % &step).is_zero() {
                return Err(LieError::NotInAlgebra {
                    row: idx / dim,
                    col: idx % dim,
                    needed: 1 + epsilon,
                });
            }
        }
        Ok(LieElement {
            p,
            epsilon,
            dim,
            entries,
        })
    }

    pub fn from_i64s(p: u64, dim: usize, entries: &[i64]) -> Result<Self, LieError> {
        Self::new(p, dim, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn zero(p: u64, dim: usize) -> Result<Self, LieError> {
        Self::new(p, dim, vec![BigInt::zero(); dim * dim])
    }

    /// The scaled basis element `E_{i,j}(p) = p^(1+eps) E_{i,j}`
    /// (`i`, `j` zero-based).
    pub fn basis(p: u64, dim: usize, i: usize, j: usize) -> Result<Self, LieError> {
        assert!(i < dim && j < dim, "basis index out of range");
        let mut entries = vec![BigInt::zero(); dim * dim];
        let epsilon = if p == 2 { 1u32 } else { 0 };
        entries[i * dim + j] = BigInt::from(p).pow(1 + epsilon);
        Self::new(p, dim, entries)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn epsilon(&self) -> u32 {
        self.epsilon
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn check(&self, other: &Self) -> Result<(), LieError> {
        if self.p != other.p || self.dim != other.dim {
            return Err(LieError::MixedOperands {
                left_p: self.p,
                left_dim: self.dim,
                right_p: other.p,
                right_dim: other.dim,
            });
        }
        Ok(())
    }

    fn with_entries(&self, entries: Vec<BigInt>) -> Self {
        LieElement {
            p: self.p,
            epsilon: self.epsilon,
            dim: self.dim,
            entries,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LieError> {
        self.check(other)?;
        Ok(self.with_entries(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LieError> {
        self.check(other)?;
        Ok(self.with_entries(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn neg(&self) -> Self {
        self.with_entries(self.entries.iter().map(|a| -a).collect())
    }

    pub fn scalar_mul(&self, s: &BigInt) -> Self {
        self.with_entries(self.entries.iter().map(|a| a * s).collect())
    }

    /// Multiply by `p^k`, shifting the element `k` levels down the filtration.
    pub fn mul_by_p_pow(&self, k: u64) -> Self {
        let f = BigInt::from(self.p).pow(k as u32);
        self.scalar_mul(&f)
    }

    /// Associative matrix product (not a Lie-algebra operation on its own;
    /// exposed because downstream layers build series out of it).
    pub fn ass_product(&self, other: &Self) -> Result<Vec<BigInt>, LieError> {
        self.check(other)?;
        let n = self.dim;
        let mut out = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    out[i * n + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// The Lie bracket `(x, y) = xy - yx`, computed exactly.
    pub fn bracket(&self, other: &Self) -> Result<Self, LieError> {
        let ab = self.ass_product(other)?;
        let ba = other.ass_product(self)?;
        Ok(self.with_entries(
            ab.into_iter().zip(ba).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.entry(i, i).clone()).sum()
    }

    pub fn is_traceless(&self) -> bool {
        self.trace().is_zero()
    }

    /// Depth in the filtration: the largest `k` such that the element lies
    /// in `p^k * (p^(1+eps) gl_m)`, i.e. every entry is divisible by
    /// `p^(1+eps+k)`. Zero has infinite depth.
    pub fn w_valuation(&self) -> Valuation {
        let min = self
            .entries
            .iter()
            .map(|e| val_p(e, self.p))
            .min()
            .expect("dim >= 1");
        match min {
            Valuation::Infinite => Valuation::Infinite,
            Valuation::Finite(v) => Valuation::Finite(v - (1 + self.epsilon) as u64),
        }
    }

    /// Residue image at depth `k`: entries divided by `p^(1+eps+k)`, mod `p`.
    /// `None` when some entry is not divisible that far.
    pub fn fp_image(&self, k: u64) -> Option<Vec<u64>> {
        let shift = BigInt::from(self.p).pow(1 + self.epsilon + k as u32);
        let p = BigInt::from(self.p);
        let mut out = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            if !(e % &shift).is_zero() {
                return None;
            }
            let q = e / &shift;
            let mut r = &q % &p;
            if r.is_negative() {
                r += &p;
            }
            // r < p <= u64::MAX
            out.push(u64::try_from(r).expect("residue below p"));
        }
        Some(out)
    }

    /// Truncate into a fixed-precision matrix over `Z/p^N`.
    pub fn to_padic(&self, ctx: &PadicContext) -> Result<PadicMatrix, PadicError> {
        assert_eq!(ctx.p(), self.p, "context prime must match the element");
        PadicMatrix::from_bigints(ctx, self.dim, &self.entries)
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LieElement p={} [", self.p)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                write!(f, "{} ", self.entry(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
