//! The explicit Δ-actions on the standard generator pair: the quadratic
//! involution `A = Σ (-1)^(i+1) E_ii` and the cyclotomic diagonal twist
//! `A_a(s) = Σ ω^(ia)(s) E_ii`.
//!
//! Verification is exponent-level arithmetic. Conjugating by any diagonal
//! matrix scales the entry `E_ij` by `d_i / d_j` exactly, so the quadratic
//! case is checked as an exact integer identity, and the cyclotomic case is
//! checked modulo `p` on `z / p`, where powers of the generator `s` depend
//! only on exponents mod `p - 1` — no Teichmüller lifts are ever needed.

use crate::error::CharacterError;
use lie_matrix::{standard_generators, LieElement};
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use padic_core::{is_prime, mod_inv_u64, mod_pow_u64, smallest_primitive_root};

/// Which of the two diagonal actions is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionKind {
    /// `A = diag(+1, -1, +1, ...)`, an involution.
    Quadratic,
    /// `A_a(s) = diag(s^a, s^{2a}, ..., s^{ma})` for the smallest primitive
    /// root `s` mod `p`; eigenvalues are read as exponents mod `p - 1`.
    Cyclotomic { a: u64 },
}

/// A diagonal Δ-action on `m x m` matrices over `Z_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaAction {
    p: u64,
    m: usize,
    kind: ActionKind,
    /// Smallest primitive root mod p; fixed generator of Δ.
    s: u64,
}

impl DeltaAction {
    /// The alternating-signs involution, defined for every `m >= 2`.
    pub fn quadratic(p: u64, m: usize) -> Result<Self, CharacterError> {
        if !is_prime(p) || p < 3 {
            return Err(CharacterError::NotPrime(p));
        }
        if m < 2 {
            return Err(CharacterError::BadDimension(m));
        }
        Ok(DeltaAction {
            p,
            m,
            kind: ActionKind::Quadratic,
            s: smallest_primitive_root(p),
        })
    }

    /// The diagonal ω-power twist, defined for `m >= 3` and odd
    /// `1 <= a <= p - 2`.
    pub fn cyclotomic(p: u64, m: usize, a: u64) -> Result<Self, CharacterError> {
        if !is_prime(p) || p < 3 {
            return Err(CharacterError::NotPrime(p));
        }
        if m < 3 {
            return Err(CharacterError::ActionUnsupported(m));
        }
        if a == 0 || a.is_multiple_of(2) || a > p - 2 {
            return Err(CharacterError::BadTwist { a, max: p - 2 });
        }
        Ok(DeltaAction {
            p,
            m,
            kind: ActionKind::Cyclotomic { a },
            s: smallest_primitive_root(p),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> ActionKind {
        self.kind
    }

    /// The fixed generator of Δ (smallest primitive root mod p).
    pub fn generator(&self) -> u64 {
        self.s
    }

    /// Diagonal entries of the representative matrix, reduced modulo an
    /// arbitrary modulus (e.g. `p^N` for serialization).
    pub fn diagonal_mod(&self, modulus: &BigUint) -> Vec<BigUint> {
        (1..=self.m as u64)
            .map(|i| match self.kind {
                ActionKind::Quadratic => {
                    if i % 2 == 1 {
                        BigUint::from(1u32) % modulus
                    } else {
                        (modulus - 1u32) % modulus
                    }
                }
                ActionKind::Cyclotomic { a } => {
                    BigUint::from(self.s).modpow(&BigUint::from(i * a), modulus)
                }
            })
            .collect()
    }

    /// Expected eigen-exponents `(on z1, on z2)` mod `p - 1` for the
    /// cyclotomic action: `-a` on `z1` and `a(m-1)` (m odd) or `a(m-2)`
    /// (m even) on `z2`.
    pub fn expected_exponents(&self) -> Option<(u64, u64)> {
        match self.kind {
            ActionKind::Quadratic => None,
            ActionKind::Cyclotomic { a } => {
                let order = self.p - 1;
                let e1 = (order - a % order) % order;
                let shift = if self.m % 2 == 1 {
                    (self.m - 1) as u64
                } else {
                    (self.m - 2) as u64
                };
                let e2 = (a % order) * (shift % order) % order;
                Some((e1, e2))
            }
        }
    }

    /// Expected eigenvalue signs `(on z1, on z2)` for the quadratic action:
    /// `(-1, +1)` for `m >= 3` and `(+1, -1)` for the swapped `m = 2` pair.
    pub fn expected_signs(&self) -> Option<(i8, i8)> {
        match self.kind {
            ActionKind::Quadratic => {
                if self.m == 2 {
                    Some((1, -1))
                } else {
                    Some((-1, 1))
                }
            }
            ActionKind::Cyclotomic { .. } => None,
        }
    }
}

/// One verified property of a Δ-action against a generator pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Structured outcome of [`verify_delta_action`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionReport {
    pub checks: Vec<ActionCheck>,
    pub pass: bool,
}

/// The generator pair in the order the Δ-action expects: the standard pair
/// for `m >= 3`, and the swapped pair `(E_11(p) - E_22(p), E_12(p) + E_21(p))`
/// for `m = 2`, matching the roles the quadratic action assigns.
pub fn action_adapted_pair(m: usize, p: u64) -> Result<(LieElement, LieElement), CharacterError> {
    let (z1, z2) = standard_generators(m, p)?;
    if m == 2 {
        Ok((z2, z1))
    } else {
        Ok((z1, z2))
    }
}

/// Conjugate `z` by the quadratic involution exactly: entry `(i, j)` picks
/// up the sign `(-1)^(i + j)` (1-based indices).
fn quadratic_conjugate(z: &LieElement) -> LieElement {
    let dim = z.dim();
    let entries: Vec<BigInt> = z
        .entries()
        .iter()
        .enumerate()
        .map(|(c, e)| {
            let (i, j) = (c / dim, c % dim);
            if (i + j) % 2 == 0 {
                e.clone()
            } else {
                -e.clone()
            }
        })
        .collect();
    LieElement::new(z.p(), dim, entries).expect("sign flips preserve the algebra")
}

/// Reduce `z / p^(1+eps)` into `F_p` entries (the standard generators have
/// all their structure at the first algebra layer).
fn fp_layer(z: &LieElement) -> Option<Vec<u64>> {
    z.fp_image(0)
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> ActionCheck {
    ActionCheck {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// Verify that the action sends each generator to the expected multiple of
/// itself: exact signs in the quadratic case, the exponent pattern mod
/// `p - 1` (checked mod `p` on the first algebra layer) in the cyclotomic
/// case. Mismatches come back as failed named checks, not errors.
pub fn verify_delta_action(
    action: &DeltaAction,
    z1: &LieElement,
    z2: &LieElement,
) -> Result<ActionReport, CharacterError> {
    if z1.dim() != action.m || z2.dim() != action.m {
        return Err(CharacterError::PairDimension {
            expected: action.m,
            got: if z1.dim() != action.m {
                z1.dim()
            } else {
                z2.dim()
            },
        });
    }
    let mut checks = Vec::new();
    match action.kind {
        ActionKind::Quadratic => {
            let diag: Vec<BigInt> = action
                .diagonal_mod(&BigUint::from(4u32))
                .iter()
                .map(|d| {
                    if *d == BigUint::from(3u32) {
                        BigInt::from(-1)
                    } else {
                        BigInt::from(d.clone())
                    }
                })
                .collect();
            let involution = diag.iter().all(|d| d.abs() == BigInt::from(1));
            checks.push(check(
                "action matrix is a diagonal involution",
                involution,
                format!("diag {:?}", diag),
            ));
            let (s1, s2) = action.expected_signs().expect("quadratic");
            for (label, z, sign) in [("z1", z1, s1), ("z2", z2, s2)] {
                let conj = quadratic_conjugate(z);
                let expected = z.scalar_mul(&BigInt::from(sign));
                let passed = conj == expected;
                checks.push(check(
                    format!("{label} is an eigenvector with eigenvalue {sign:+}"),
                    passed,
                    if passed {
                        String::new()
                    } else {
                        "conjugate is not the expected multiple".into()
                    },
                ));
            }
        }
        ActionKind::Cyclotomic { a } => {
            let p = action.p;
            let s = action.s;
            let d: Vec<u64> = (1..=action.m as u64)
                .map(|i| mod_pow_u64(s, i * a, p))
                .collect();
            let units = d.iter().all(|&x| x != 0);
            checks.push(check(
                "action diagonal consists of units",
                units,
                format!("diag mod p: {:?}", d),
            ));
            let (e1, e2) = action.expected_exponents().expect("cyclotomic");
            for (label, z, e) in [("z1", z1, e1), ("z2", z2, e2)] {
                match verify_weight_mod_p(z, &d, p, mod_pow_u64(s, e, p)) {
                    Ok(()) => checks.push(check(
                        format!("{label} has weight exponent {e} mod {}", p - 1),
                        true,
                        String::new(),
                    )),
                    Err(reason) => checks.push(check(
                        format!("{label} has weight exponent {e} mod {}", p - 1),
                        false,
                        reason,
                    )),
                }
            }
        }
    }
    let pass = checks.iter().all(|c| c.passed);
    Ok(ActionReport { checks, pass })
}

/// Check `D z D^{-1} ≡ c z` on the first algebra layer mod `p`, for a
/// diagonal `D` given by unit residues.
fn verify_weight_mod_p(
    z: &LieElement,
    diag: &[u64],
    p: u64,
    c: u64,
) -> Result<(), String> {
    let layer = fp_layer(z).ok_or_else(|| "generator is not in the algebra layer".to_string())?;
    if layer.iter().all(|&v| v == 0) {
        return Err("generator vanishes mod p^2; weight is undetermined".into());
    }
    let dim = z.dim();
    for (cell, &y) in layer.iter().enumerate() {
        let (i, j) = (cell / dim, cell % dim);
        let inv_j = mod_inv_u64(diag[j], p).ok_or_else(|| {
            format!("diagonal entry {} is not a unit mod {p}", diag[j])
        })?;
        let scaled = diag[i] as u128 * inv_j as u128 % p as u128;
        let lhs = scaled * y as u128 % p as u128;
        let rhs = c as u128 * y as u128 % p as u128;
        if lhs != rhs {
            return Err(format!(
                "entry ({i},{j}): conjugation scales by {} but expected {c}",
                scaled
            ));
        }
    }
    Ok(())
}
