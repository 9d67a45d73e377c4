//! Randomised algebraic laws for the exp/log bridge.

use lie_matrix::LieElement;
use num_bigint::BigInt;
use padic_core::{PadicContext, PadicMatrix};
use proptest::prelude::*;
use uniform_groups::{exp_mat, log_mat};

/// A random element of `p^(1+eps) gl_2` with small integer coordinates.
fn element(p: u64) -> impl Strategy<Value = LieElement> {
    let unit = if p == 2 { (p * p) as i64 } else { p as i64 };
    prop::collection::vec(-50i64..=50, 4).prop_map(move |coeffs| {
        let entries: Vec<i64> = coeffs.iter().map(|c| c * unit).collect();
        LieElement::from_i64s(p, 2, &entries).unwrap()
    })
}

fn configs() -> impl Strategy<Value = (u64, u32)> {
    prop_oneof![
        Just((3u64, 3u32)),
        Just((3, 5)),
        Just((5, 2)),
        Just((5, 4)),
        Just((2, 5)),
        Just((13, 3)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn log_inverts_exp((p, n) in configs().prop_flat_map(|(p, n)| (Just(p), Just(n))),
                       seed in 0u64..1_000_000) {
        // Derive an element deterministically from the seed so each config
        // gets its own spread of inputs.
        let unit = if p == 2 { (p * p) as i64 } else { p as i64 };
        let coeffs: Vec<i64> = (0..4)
            .map(|i| (((seed >> (8 * i)) & 0xff) as i64 - 128) * unit)
            .collect();
        let x = LieElement::from_i64s(p, 2, &coeffs).unwrap();
        let ctx = PadicContext::new(p, n).unwrap();
        let g = exp_mat(&x, &ctx).unwrap();
        let back = log_mat(&g).unwrap();
        prop_assert_eq!(back.to_padic(&ctx).unwrap(), x.to_padic(&ctx).unwrap());
    }

    #[test]
    fn exp_of_negation_is_the_inverse(x in element(3)) {
        let ctx = PadicContext::new(3, 4).unwrap();
        let g = exp_mat(&x, &ctx).unwrap();
        let h = exp_mat(&x.neg(), &ctx).unwrap();
        prop_assert_eq!(g.mul(&h).unwrap(), PadicMatrix::identity(&ctx, 2));
    }

    #[test]
    fn exp_turns_p_scaling_into_p_powers(x in element(5)) {
        let ctx = PadicContext::new(5, 3).unwrap();
        let g = exp_mat(&x, &ctx).unwrap();
        let scaled = exp_mat(&x.scalar_mul(&BigInt::from(5)), &ctx).unwrap();
        prop_assert_eq!(scaled, g.pow(5));
    }

    #[test]
    fn exp_lands_in_the_congruence_domain(x in element(2)) {
        let ctx = PadicContext::new(2, 6).unwrap();
        let g = exp_mat(&x, &ctx).unwrap();
        prop_assert!(g.is_identity_mod(2));
    }
}
