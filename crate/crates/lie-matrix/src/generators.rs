use crate::element::LieElement;
use crate::error::LieError;
use padic_core::mod_inv_u64;

/// The standard two-element generating pair of `sl_m` inside the powerful
/// algebra (`i`, `j` written one-based to match the usual notation):
///
/// * `m = 2`:  `z1 = E12(p) + E21(p)`, `z2 = E11(p) - E22(p)`;
/// * `m >= 3`: `z1 = sum_{i=1}^{m-1} E_{i,i+1}(p)` together with
///   `z2 = E_{m,1}(p)` for odd `m`, and `z2 = E_{m-1,1}(p) + E_{m,2}(p)`
///   for even `m`.
///
/// The bracket closure of the pair is all of `sl_m`, of dimension `m^2 - 1`.
pub fn standard_generators(m: usize, p: u64) -> Result<(LieElement, LieElement), LieError> {
    if m < 2 {
        return Err(LieError::PairNeedsRank(m));
    }
    if m == 2 {
        let z1 = LieElement::basis(p, 2, 0, 1)?.add(&LieElement::basis(p, 2, 1, 0)?)?;
        let z2 = LieElement::basis(p, 2, 0, 0)?.sub(&LieElement::basis(p, 2, 1, 1)?)?;
        return Ok((z1, z2));
    }
    let mut z1 = LieElement::zero(p, m)?;
    for i in 0..m - 1 {
        z1 = z1.add(&LieElement::basis(p, m, i, i + 1)?)?;
    }
    let z2 = if m % 2 == 1 {
        LieElement::basis(p, m, m - 1, 0)?
    } else {
        LieElement::basis(p, m, m - 2, 0)?.add(&LieElement::basis(p, m, m - 1, 1)?)?
    };
    Ok((z1, z2))
}

/// If `xv = c * yv` coordinate-wise over `F_p` (both nonzero), return `c`.
fn parallel_class(xv: &[u64], yv: &[u64], p: u64) -> Option<u64> {
    let pivot = yv.iter().position(|&c| c != 0)?;
    let c = xv[pivot] * mod_inv_u64(yv[pivot], p).expect("nonzero residue mod a prime") % p;
    if c == 0 {
        return None;
    }
    for (&xc, &yc) in xv.iter().zip(yv) {
        if xc != c * yc % p {
            return None;
        }
    }
    Some(c)
}

/// Normalize a generating pair to common depth with independent residue
/// images.
///
/// Repeatedly (a) multiplies the shallower element by a power of `p` so both
/// sit at the common depth `k = max(w(x), w(y))`, then (b) if the two images
/// in `p^k L / p^(k+1) L` are `F_p`-proportional, subtracts the matching
/// multiple of `y` from `x`, which strictly increases `w(x)`. Stops as soon
/// as the images are independent and returns `(x', y', k)`.
///
/// At most `budget` subtraction steps are attempted. A pair spanning an
/// abelian or one-dimensional algebra never reaches independence: it either
/// collapses a generator to zero ([`LieError::DegeneratePair`]) or runs out
/// of budget ([`LieError::NormalizationBudget`]).
pub fn normalize_generators(
    x: &LieElement,
    y: &LieElement,
    budget: u64,
) -> Result<(LieElement, LieElement, u64), LieError> {
    if x.p() != y.p() || x.dim() != y.dim() {
        return Err(LieError::MixedOperands {
            left_p: x.p(),
            left_dim: x.dim(),
            right_p: y.p(),
            right_dim: y.dim(),
        });
    }
    let p = x.p();
    let mut x = x.clone();
    let mut y = y.clone();
    let mut used = 0u64;
    loop {
        if x.is_zero() || y.is_zero() {
            return Err(LieError::DegeneratePair);
        }
        let wx = x.w_valuation().finite().expect("nonzero");
        let wy = y.w_valuation().finite().expect("nonzero");
        let k = wx.max(wy);
        if wx < wy {
            x = x.mul_by_p_pow(wy - wx);
        } else if wy < wx {
            y = y.mul_by_p_pow(wx - wy);
        }
        let xv = x.fp_image(k).expect("depth k by construction");
        let yv = y.fp_image(k).expect("depth k by construction");
        match parallel_class(&xv, &yv, p) {
            None => return Ok((x, y, k)),
            Some(c) => {
                if used == budget {
                    return Err(LieError::NormalizationBudget { budget });
                }
                x = x.sub(&y.scalar_mul(&num_bigint::BigInt::from(c)))?;
                used += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::span::bracket_closure;
    use num_bigint::BigInt;
    use padic_core::Valuation;

    #[test]
    fn standard_pair_matrices() {
        let (z1, z2) = standard_generators(2, 5).unwrap();
        assert_eq!(z1, LieElement::from_i64s(5, 2, &[0, 5, 5, 0]).unwrap());
        assert_eq!(z2, LieElement::from_i64s(5, 2, &[5, 0, 0, -5]).unwrap());

        let (z1, z2) = standard_generators(3, 3).unwrap();
        assert_eq!(
            z1,
            LieElement::from_i64s(3, 3, &[0, 3, 0, 0, 0, 3, 0, 0, 0]).unwrap()
        );
        assert_eq!(
            z2,
            LieElement::from_i64s(3, 3, &[0, 0, 0, 0, 0, 0, 3, 0, 0]).unwrap()
        );

        let (_, z2) = standard_generators(4, 3).unwrap();
        let expected = LieElement::basis(3, 4, 2, 0)
            .unwrap()
            .add(&LieElement::basis(3, 4, 3, 1).unwrap())
            .unwrap();
        assert_eq!(z2, expected);

        assert!(matches!(
            standard_generators(1, 5),
            Err(LieError::PairNeedsRank(1))
        ));
    }

    #[test]
    fn normalization_scales_the_shallower_element() {
        // w(x) = 1, w(y) = 0: y is raised one level; images are then
        // independent, so nothing else changes and k = 1.
        let p = 5;
        let (z1, z2) = standard_generators(2, p).unwrap();
        let x = z1.mul_by_p_pow(1);
        let (nx, ny, k) = normalize_generators(&x, &z2, 8).unwrap();
        assert_eq!(nx, x);
        assert_eq!(ny, z2.mul_by_p_pow(1));
        assert_eq!(k, 1);
    }

    #[test]
    fn normalization_subtracts_parallel_images() {
        // x = z1 and y = z1 + p z2 have proportional depth-0 images; one
        // subtraction pushes x down to depth 1 and the pair separates.
        let p = 5;
        let (z1, z2) = standard_generators(2, p).unwrap();
        let y = z1.add(&z2.mul_by_p_pow(1)).unwrap();
        let (nx, ny, k) = normalize_generators(&z1, &y, 8).unwrap();
        assert_eq!(k, 1);
        assert_eq!(nx.w_valuation(), Valuation::Finite(1));
        assert_eq!(ny.w_valuation(), Valuation::Finite(1));
        assert_eq!(nx, z2.mul_by_p_pow(1).neg(), "x - y = -p z2");
        // the normalized pair still generates all of sl_2
        let basis = bracket_closure(&[nx, ny], 4).unwrap();
        assert_eq!(basis.dimension(), 3);
    }

    #[test]
    fn equal_generators_degenerate() {
        let (z1, _) = standard_generators(2, 5).unwrap();
        assert_eq!(
            normalize_generators(&z1, &z1, 8),
            Err(LieError::DegeneratePair)
        );
    }

    #[test]
    fn abelian_pair_collapses() {
        let x = LieElement::basis(3, 2, 0, 1).unwrap();
        let y = x.mul_by_p_pow(1);
        assert_eq!(
            normalize_generators(&x, &y, 8),
            Err(LieError::DegeneratePair)
        );
    }

    #[test]
    fn zero_budget_reports_exhaustion() {
        let (z1, _) = standard_generators(2, 5).unwrap();
        let y = z1.scalar_mul(&BigInt::from(2));
        assert_eq!(
            normalize_generators(&z1, &y, 0),
            Err(LieError::NormalizationBudget { budget: 0 })
        );
    }
}
