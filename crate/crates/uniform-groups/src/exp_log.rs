//! Truncated exponential and logarithm series between the powerful algebra
//! `p^(1+eps) gl_m(Z_p)` and matrices congruent to the identity, evaluated
//! exactly at a fixed precision.
//!
//! Both series terminate modulo `p^N`: term valuations grow linearly in the
//! index while the factorial (resp. harmonic) denominators only remove
//! logarithmically many powers of `p`. Each routine computes in a slightly
//! deeper working precision so every division is exact, then reduces back;
//! the results depend only on the inputs modulo `p^N`.

use crate::error::GroupError;
use lie_matrix::LieElement;
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use padic_core::{val_p_u64, PadicContext, PadicMatrix, PadicScalar};

/// `v_p(n!)` by Legendre's formula.
fn vp_factorial(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = p;
    loop {
        total += n / q;
        match q.checked_mul(p) {
            Some(next) if next <= n => q = next,
            _ => break,
        }
    }
    total
}

/// Smallest index past which every exponential term vanishes mod `p^N`,
/// plus one guard term.
///
/// A term `x^n / n!` with `x` in `p^(1+eps) gl_m` has valuation at least
/// `n (1+eps) - v_p(n!)`. For odd `p`, `v_p(n!) <= (n-1)/(p-1)`, so the
/// valuation is at least `N` once `n >= (N(p-1) - 1) / (p-2)`; for `p = 2`
/// it is at least `2n - (n-1) = n + 1`, so `n >= N - 1` suffices. Both
/// bounds are monotone in `n`.
pub fn exp_truncation_bound(p: u64, precision: u32) -> u64 {
    let n = precision as u64;
    let raw = if p == 2 {
        n.saturating_sub(1)
    } else {
        // ceil((N(p-1) - 1) / (p-2))
        (n * (p - 1) - 1 + (p - 3)) / (p - 2)
    };
    raw.max(1) + 1
}

/// Smallest index past which every logarithm term vanishes mod `p^N`,
/// plus one guard term. A term `u^n / n` with `u = z - 1` divisible by
/// `p^(1+eps)` has valuation at least `n (1+eps) - floor(log_p n)`, which
/// is non-decreasing in `n`.
pub fn log_truncation_bound(p: u64, precision: u32) -> u64 {
    let eps = if p == 2 { 1u64 } else { 0 };
    let mut n = 1u64;
    loop {
        let f = n * (1 + eps) - n.ilog(p) as u64;
        if f >= precision as u64 {
            return n + 1;
        }
        n += 1;
    }
}

fn is_zero_matrix(m: &PadicMatrix) -> bool {
    m.entries().iter().all(|e| e.is_zero())
}

/// Divide every entry of `pow` (exactly) by `p^shift`, multiply by the unit
/// `unit_inv`, and reduce into `target`: the current series term.
fn series_term(
    pow: &PadicMatrix,
    shift: u64,
    unit_inv: &PadicScalar,
    target: &PadicContext,
) -> Result<PadicMatrix, GroupError> {
    let p_shift = BigUint::from(target.p()).pow(shift as u32);
    let work_modulus = unit_inv.context().modulus();
    let entries: Vec<BigInt> = pow
        .entries()
        .iter()
        .map(|e| {
            debug_assert!((e % &p_shift).is_zero(), "series division must be exact");
            let t = (e / &p_shift) * unit_inv.residue() % work_modulus;
            BigInt::from(t)
        })
        .collect();
    Ok(PadicMatrix::from_bigints(target, pow.dim(), &entries)?)
}

/// Exponential of a powerful-algebra element, exact modulo `p^N`.
///
/// The series is evaluated at a working precision `M = N + v_p(T!)` (with
/// `T` the truncation bound) so that each division by `n!` — an exact
/// division by `p^(v_p(n!))` followed by a unit inverse — still leaves at
/// least `N` correct digits. The result depends only on `x` mod `p^N`.
pub fn exp_mat(x: &LieElement, ctx: &PadicContext) -> Result<PadicMatrix, GroupError> {
    if ctx.p() != x.p() {
        return Err(GroupError::PrimeMismatch {
            context_p: ctx.p(),
            element_p: x.p(),
        });
    }
    let p = ctx.p();
    let t = exp_truncation_bound(p, ctx.precision());
    let work = ctx.with_precision(ctx.precision() + vp_factorial(t, p) as u32)?;
    let xm = x.to_padic(&work)?;
    let mut sum = PadicMatrix::identity(ctx, x.dim());
    let mut pow = PadicMatrix::identity(&work, x.dim());
    let mut v_fact = 0u64;
    let mut unit_inv = PadicScalar::one(&work);
    for n in 1..=t {
        pow = pow.mul(&xm)?;
        if is_zero_matrix(&pow) {
            break;
        }
        let v_n = val_p_u64(n, p).finite().expect("n >= 1");
        v_fact += v_n;
        let unit = n / p.pow(v_n as u32);
        unit_inv = unit_inv
            .mul(&PadicScalar::new(&work, &BigInt::from(unit)).inverse()?)?;
        let term = series_term(&pow, v_fact, &unit_inv, ctx)?;
        sum = sum.add(&term)?;
    }
    Ok(sum)
}

/// Logarithm of a matrix congruent to the identity mod `p^(1+eps)`, exact
/// modulo `p^N`; inverse to [`exp_mat`] at every precision.
pub fn log_mat(z: &PadicMatrix) -> Result<LieElement, GroupError> {
    let ctx = z.context();
    let p = ctx.p();
    let eps = ctx.epsilon();
    let level = (1 + eps).min(ctx.precision());
    if !z.is_identity_mod(level) {
        return Err(GroupError::LogDomain { level });
    }
    let t = log_truncation_bound(p, ctx.precision());
    let headroom = if t >= p { t.ilog(p) } else { 0 };
    let work = ctx.with_precision(ctx.precision() + headroom)?;
    // u = z - I, lifted canonically into the working precision
    let mut u_entries: Vec<BigInt> = z.entries().iter().map(|e| BigInt::from(e.clone())).collect();
    for i in 0..z.dim() {
        u_entries[i * z.dim() + i] -= 1;
    }
    let u = PadicMatrix::from_bigints(&work, z.dim(), &u_entries)?;
    let mut sum = PadicMatrix::zero(ctx, z.dim());
    let mut pow = PadicMatrix::identity(&work, z.dim());
    for n in 1..=t {
        pow = pow.mul(&u)?;
        if is_zero_matrix(&pow) {
            break;
        }
        let v_n = val_p_u64(n, p).finite().expect("n >= 1");
        let unit = n / p.pow(v_n as u32);
        let unit_inv = PadicScalar::new(&work, &BigInt::from(unit)).inverse()?;
        let term = series_term(&pow, v_n, &unit_inv, ctx)?;
        sum = if n % 2 == 1 {
            sum.add(&term)?
        } else {
            sum.sub(&term)?
        };
    }
    let entries: Vec<BigInt> = sum.entries().iter().map(|e| BigInt::from(e.clone())).collect();
    Ok(LieElement::new(p, z.dim(), entries)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lie_matrix::standard_generators;

    fn ctx(p: u64, n: u32) -> PadicContext {
        PadicContext::new(p, n).unwrap()
    }

    #[test]
    fn exp_of_nilpotent_is_exact() {
        // exp(3 E12) = I + 3 E12 exactly: the square of a strictly upper
        // triangular 2x2 matrix vanishes.
        let c = ctx(3, 3);
        let x = LieElement::basis(3, 2, 0, 1).unwrap();
        let g = exp_mat(&x, &c).unwrap();
        assert_eq!(g, PadicMatrix::from_i64s(&c, 2, &[1, 3, 0, 1]).unwrap());
    }

    #[test]
    fn exp_of_diagonal() {
        // exp(diag(5, -5)) mod 25 = diag(1 + 5, 1 - 5) = diag(6, 21): the
        // quadratic term 25/2 vanishes at precision 2.
        let c = ctx(5, 2);
        let x = LieElement::from_i64s(5, 2, &[5, 0, 0, -5]).unwrap();
        let g = exp_mat(&x, &c).unwrap();
        assert_eq!(g, PadicMatrix::from_i64s(&c, 2, &[6, 0, 0, 21]).unwrap());
    }

    #[test]
    fn log_of_unipotent_is_exact() {
        let c = ctx(5, 3);
        let z = PadicMatrix::from_i64s(&c, 2, &[1, 5, 0, 1]).unwrap();
        let x = log_mat(&z).unwrap();
        assert_eq!(x, LieElement::basis(5, 2, 0, 1).unwrap());
    }

    #[test]
    fn log_rejects_matrices_off_the_identity() {
        let c = ctx(5, 3);
        let z = PadicMatrix::from_i64s(&c, 2, &[1, 1, 0, 1]).unwrap();
        assert_eq!(log_mat(&z), Err(GroupError::LogDomain { level: 1 }));
    }

    #[test]
    fn round_trip_on_standard_generators() {
        for (p, m, n) in [(3u64, 2usize, 4u32), (5, 3, 3), (2, 2, 5), (11, 2, 3)] {
            let c = ctx(p, n);
            let (z1, z2) = standard_generators(m, p).unwrap();
            for z in [z1, z2] {
                let g = exp_mat(&z, &c).unwrap();
                let back = log_mat(&g).unwrap();
                assert_eq!(back.to_padic(&c).unwrap(), z.to_padic(&c).unwrap(), "p={p} m={m} N={n}");
            }
        }
    }

    #[test]
    fn exp_determinant_of_traceless_is_one() {
        let c = ctx(3, 4);
        let (z1, z2) = standard_generators(2, 3).unwrap();
        let g = exp_mat(&z1.add(&z2).unwrap(), &c).unwrap();
        assert_eq!(g.det(), num_bigint::BigUint::from(1u32));
    }

    #[test]
    fn exp_respects_integer_powers() {
        // x commutes with itself, so exp(j x) = exp(x)^j holds exactly.
        let c = ctx(3, 4);
        let (z1, _) = standard_generators(2, 3).unwrap();
        let g = exp_mat(&z1, &c).unwrap();
        for j in [2u64, 3, 9] {
            let lhs = exp_mat(&z1.scalar_mul(&BigInt::from(j)), &c).unwrap();
            assert_eq!(lhs, g.pow(j), "j = {j}");
        }
    }

    #[test]
    fn truncation_bounds_are_sane() {
        assert_eq!(exp_truncation_bound(2, 5), 5);
        assert_eq!(exp_truncation_bound(3, 3), 6);
        assert_eq!(exp_truncation_bound(5, 2), 4);
        assert!(log_truncation_bound(3, 3) >= 4);
    }
}
