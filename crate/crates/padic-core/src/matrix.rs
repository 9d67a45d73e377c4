use crate::context::{invert_residue, PadicContext};
use crate::error::PadicError;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

/// A square matrix over `Z / p^N`, row-major, with canonical residues.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PadicMatrix {
    ctx: PadicContext,
    dim: usize,
    entries: Vec<BigUint>,
}

impl PadicMatrix {
    pub fn zero(ctx: &PadicContext, dim: usize) -> Self {
        PadicMatrix {
            ctx: ctx.clone(),
            dim,
            entries: vec![BigUint::zero(); dim * dim],
        }
    }

    pub fn identity(ctx: &PadicContext, dim: usize) -> Self {
        let mut m = Self::zero(ctx, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = BigUint::one();
        }
        m
    }

    /// Build from row-major integers, reducing each into `[0, p^N)`.
    pub fn from_bigints(
        ctx: &PadicContext,
        dim: usize,
        entries: &[BigInt],
    ) -> Result<Self, PadicError> {
        if entries.len() != dim * dim {
            return Err(PadicError::BadEntryCount {
                dim,
                got: entries.len(),
            });
        }
        Ok(PadicMatrix {
            ctx: ctx.clone(),
            dim,
            entries: entries.iter().map(|e| ctx.reduce(e)).collect(),
        })
    }

    pub fn from_i64s(ctx: &PadicContext, dim: usize, entries: &[i64]) -> Result<Self, PadicError> {
        let big: Vec<BigInt> = entries.iter().map(|&e| BigInt::from(e)).collect();
        Self::from_bigints(ctx, dim, &big)
    }

    /// Build from row-major residues already reduced into `[0, p^N)`.
    pub fn from_residues(
        ctx: &PadicContext,
        dim: usize,
        entries: Vec<BigUint>,
    ) -> Result<Self, PadicError> {
        if entries.len() != dim * dim {
            return Err(PadicError::BadEntryCount {
                dim,
                got: entries.len(),
            });
        }
        debug_assert!(entries.iter().all(|e| e < ctx.modulus()));
        Ok(PadicMatrix {
            ctx: ctx.clone(),
            dim,
            entries,
        })
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    fn check(&self, other: &Self) -> Result<(), PadicError> {
        self.ctx.compatible(&other.ctx)?;
        if self.dim != other.dim {
            return Err(PadicError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PadicError> {
        self.check(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a + b) % self.ctx.modulus())
            .collect();
        Ok(PadicMatrix {
            ctx: self.ctx.clone(),
            dim: self.dim,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PadicError> {
        self.check(other)?;
        let m = self.ctx.modulus();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| {
                if a >= b {
                    a - b
                } else {
                    m - b + a
                }
            })
            .collect();
        Ok(PadicMatrix {
            ctx: self.ctx.clone(),
            dim: self.dim,
            entries,
        })
    }

    pub fn neg(&self) -> Self {
        let m = self.ctx.modulus();
        let entries = self
            .entries
            .iter()
            .map(|a| if a.is_zero() { a.clone() } else { m - a })
            .collect();
        PadicMatrix {
            ctx: self.ctx.clone(),
            dim: self.dim,
            entries,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PadicError> {
        self.check(other)?;
        let n = self.dim;
        let modulus = self.ctx.modulus();
        let mut entries = vec![BigUint::zero(); n * n];
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
                    entries[i * n + j] += a * b;
                }
            }
        }
        for e in &mut entries {
            *e %= modulus;
        }
        Ok(PadicMatrix {
            ctx: self.ctx.clone(),
            dim: self.dim,
            entries,
        })
    }

    pub fn scalar_mul(&self, s: &BigInt) -> Self {
        let r = self.ctx.reduce(s);
        let entries = self
            .entries
            .iter()
            .map(|e| (e * &r) % self.ctx.modulus())
            .collect();
        PadicMatrix {
            ctx: self.ctx.clone(),
            dim: self.dim,
            entries,
        }
    }

    /// `self^e` by binary exponentiation.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(&self.ctx, self.dim);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same context");
            }
            base = base.mul(&base).expect("same context");
            e >>= 1;
        }
        acc
    }

    /// Inverse modulo `p^N` by Gauss–Jordan elimination on unit pivots.
    ///
    /// A matrix over `Z/p^N` is invertible iff its reduction mod `p` is,
    /// which is exactly the condition that every column admits a unit pivot.
    pub fn inverse(&self) -> Result<Self, PadicError> {
        let n = self.dim;
        let p = BigUint::from(self.ctx.p());
        let modulus = self.ctx.modulus();
        let mut a = self.entries.clone();
        let mut inv = Self::identity(&self.ctx, n).entries;
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !(&a[r * n + col] % &p).is_zero())
                .ok_or(PadicError::NotInvertible)?;
            if pivot_row != col {
                for j in 0..n {
                    a.swap(pivot_row * n + j, col * n + j);
                    inv.swap(pivot_row * n + j, col * n + j);
                }
            }
            let pivot_inv = invert_residue(&self.ctx, &a[col * n + col])?;
            for j in 0..n {
                a[col * n + j] = (&a[col * n + j] * &pivot_inv) % modulus;
                inv[col * n + j] = (&inv[col * n + j] * &pivot_inv) % modulus;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for j in 0..n {
                    let sub_a = (&factor * &a[col * n + j]) % modulus;
                    let sub_i = (&factor * &inv[col * n + j]) % modulus;
                    a[r * n + j] = ((&a[r * n + j] + modulus) - sub_a) % modulus;
                    inv[r * n + j] = ((&inv[r * n + j] + modulus) - sub_i) % modulus;
                }
            }
        }
        Ok(PadicMatrix {
            ctx: self.ctx.clone(),
            dim: n,
            entries: inv,
        })
    }

    /// Determinant in `Z/p^N`, via fraction-free (Bareiss) elimination on
    /// integer lifts so no division by non-units ever happens.
    pub fn det(&self) -> BigUint {
        let n = self.dim;
        if n == 0 {
            return BigUint::one();
        }
        let mut a: Vec<BigInt> = self.entries.iter().map(|e| BigInt::from(e.clone())).collect();
        let mut sign = 1i64;
        let mut denom = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                    Some(r) => {
                        for j in 0..n {
                            a.swap(r * n + j, k * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigUint::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    let (q, r) = t.div_rem(&denom);
                    debug_assert!(r.is_zero(), "Bareiss division is exact");
                    a[i * n + j] = q;
                }
                a[i * n + k] = BigInt::zero();
            }
            denom = a[k * n + k].clone();
        }
        let det = &a[(n - 1) * n + (n - 1)] * BigInt::from(sign);
        self.ctx.reduce(&det)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ctx, self.dim)
    }

    /// Does the matrix reduce to the identity modulo `p^k`?
    pub fn is_identity_mod(&self, k: u32) -> bool {
        let pk = self.ctx.p_pow(k.min(self.ctx.precision()));
        let one = BigUint::one();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let e = self.entry(i, j);
                let want = if i == j { &one } else { &BigUint::zero() as &BigUint };
                let diff = if e >= want {
                    e - want
                } else {
                    want - e
                };
                if !(diff % &pk).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Fixed-width big-endian byte encoding of the entries: a canonical,
    /// order-preserving key for hashing and deterministic sorting.
    pub fn canonical_key(&self) -> Vec<u8> {
        let w = self.ctx.residue_width();
        let mut out = vec![0u8; self.dim * self.dim * w];
        for (idx, e) in self.entries.iter().enumerate() {
            let bytes = e.to_bytes_be();
            out[idx * w + (w - bytes.len())..(idx + 1) * w].copy_from_slice(&bytes);
        }
        out
    }

    /// Decode a `canonical_key` produced with the same context and dimension.
    pub fn from_canonical_key(ctx: &PadicContext, dim: usize, key: &[u8]) -> Self {
        let w = ctx.residue_width();
        debug_assert_eq!(key.len(), dim * dim * w);
        let entries = key
            .chunks_exact(w)
            .map(BigUint::from_bytes_be)
            .collect();
        PadicMatrix {
            ctx: ctx.clone(),
            dim,
            entries,
        }
    }

    /// Commutator `self * other * self^-1 * other^-1`.
    pub fn commutator(&self, other: &Self) -> Result<Self, PadicError> {
        let a_inv = self.inverse()?;
        let b_inv = other.inverse()?;
        self.mul(other)?.mul(&a_inv)?.mul(&b_inv)
    }
}

impl fmt::Debug for PadicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PadicMatrix {:?} [", self.ctx)?;
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

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, n: u32) -> PadicContext {
        PadicContext::new(p, n).unwrap()
    }

    #[test]
    fn square_of_diagonal() {
        // diag(6, 21)^2 = diag(11, 16) over Z/25: frozen from 36 = 25 + 11
        // and 441 = 17 * 25 + 16.
        let c = ctx(5, 2);
        let d = PadicMatrix::from_i64s(&c, 2, &[6, 0, 0, 21]).unwrap();
        let sq = d.mul(&d).unwrap();
        assert_eq!(sq, PadicMatrix::from_i64s(&c, 2, &[11, 0, 0, 16]).unwrap());
    }

    #[test]
    fn inverse_of_unipotent() {
        // (I + 5 E12)^-1 = I - 5 E12 over Z/125 because E12^2 = 0.
        let c = ctx(5, 3);
        let u = PadicMatrix::from_i64s(&c, 2, &[1, 5, 0, 1]).unwrap();
        let expected = PadicMatrix::from_i64s(&c, 2, &[1, -5, 0, 1]).unwrap();
        assert_eq!(u.inverse().unwrap(), expected);
    }

    #[test]
    fn inverse_of_signed_diagonal_is_itself() {
        let c = ctx(7, 3);
        let d = PadicMatrix::from_i64s(&c, 3, &[1, 0, 0, 0, -1, 0, 0, 0, 1]).unwrap();
        assert_eq!(d.inverse().unwrap(), d);
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let c = ctx(5, 2);
        let s = PadicMatrix::from_i64s(&c, 2, &[5, 0, 0, 1]).unwrap();
        assert_eq!(s.inverse(), Err(PadicError::NotInvertible));
    }

    #[test]
    fn determinants() {
        let c = ctx(5, 2);
        let d = PadicMatrix::from_i64s(&c, 2, &[6, 0, 0, 21]).unwrap();
        assert_eq!(d.det(), BigUint::from(1u32), "126 = 1 mod 25");
        let u = PadicMatrix::from_i64s(&c, 2, &[1, 5, 0, 1]).unwrap();
        assert_eq!(u.det(), BigUint::from(1u32));
        let z = PadicMatrix::from_i64s(&c, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]).unwrap();
        assert_eq!(z.det(), BigUint::zero());
        // Needs a row swap in Bareiss.
        let w = PadicMatrix::from_i64s(&c, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(w.det(), c.reduce(&BigInt::from(-1)));
    }

    #[test]
    fn unipotent_power_collapses() {
        let c = ctx(5, 2);
        let u = PadicMatrix::from_i64s(&c, 2, &[1, 5, 0, 1]).unwrap();
        assert!(u.pow(5).is_identity(), "(I + 5E12)^5 = I + 25 E12 = I mod 25");
        assert!(!u.pow(4).is_identity());
    }

    #[test]
    fn canonical_key_round_trip() {
        let c = ctx(11, 3);
        let m = PadicMatrix::from_i64s(&c, 2, &[1, 121, 1229, 1330]).unwrap();
        let key = m.canonical_key();
        assert_eq!(PadicMatrix::from_canonical_key(&c, 2, &key), m);
    }

    #[test]
    fn identity_mod_levels() {
        let c = ctx(3, 3);
        let g = PadicMatrix::from_i64s(&c, 2, &[1, 9, 0, 1]).unwrap();
        assert!(g.is_identity_mod(1));
        assert!(g.is_identity_mod(2));
        assert!(!g.is_identity_mod(3));
    }

    #[test]
    fn dimension_mismatch() {
        let c = ctx(5, 2);
        let a = PadicMatrix::identity(&c, 2);
        let b = PadicMatrix::identity(&c, 3);
        assert!(matches!(
            a.mul(&b),
            Err(PadicError::DimensionMismatch { .. })
        ));
    }
}
