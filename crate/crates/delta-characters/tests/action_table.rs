//! Sweep of the Δ-actions over the full table of generator pairs.

use delta_characters::{action_adapted_pair, verify_delta_action, DeltaAction};

#[test]
fn quadratic_action_passes_for_all_small_dimensions() {
    for p in [5u64, 13, 17] {
        for m in 2..=8usize {
            let action = DeltaAction::quadratic(p, m).unwrap();
            let (z1, z2) = action_adapted_pair(m, p).unwrap();
            let report = verify_delta_action(&action, &z1, &z2).unwrap();
            assert!(report.pass, "p={p} m={m}: {:#?}", report.checks);
        }
    }
}

#[test]
fn cyclotomic_action_passes_for_all_small_dimensions() {
    for (p, a) in [(13u64, 3u64), (17, 1), (5, 1)] {
        for m in 3..=8usize {
            let action = DeltaAction::cyclotomic(p, m, a).unwrap();
            let (z1, z2) = action_adapted_pair(m, p).unwrap();
            let report = verify_delta_action(&action, &z1, &z2).unwrap();
            assert!(report.pass, "p={p} m={m} a={a}: {:#?}", report.checks);
        }
    }
}

#[test]
fn adjoint_weights_contain_every_pair_difference() {
    // The weight of E_ij under the twist is (i-j)a; spot-check that the
    // reported multiset counts each difference the right number of times.
    for (p, m, a) in [(13u64, 4usize, 1u64), (17, 5, 3), (257, 8, 1)] {
        let v = delta_characters::adjoint_weights(p, m, a).unwrap();
        for d in 1..m as u64 {
            let expected = m as u64 - d;
            let plus = (d * a) % (p - 1);
            let minus = (p - 1 - plus % (p - 1)) % (p - 1);
            assert_eq!(v.multiplicity(plus), expected, "p={p} m={m} a={a} d={d}");
            assert_eq!(v.multiplicity(minus), expected, "p={p} m={m} a={a} d=-{d}");
        }
    }
}
