//! Cross-validation of the modular Bernoulli routes against exact
//! rational Bernoulli numbers, for every prime up to 50.

use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};

use arithmetic_criteria::{
    bernoulli_mod_p, bernoulli_mod_p_power_sum, primes_up_to,
};

/// Exact `B_0, ..., B_max` by the defining recurrence over `Q`.
fn rational_bernoulli(max: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::zero(); max + 1];
    b[0] = BigRational::one();
    // Binomial row C(n+1, j), advanced one Pascal step per n.
    let mut row = vec![BigInt::one(); 2];
    for n in 1..=max {
        // row currently holds C(n, *); advance to C(n+1, *).
        row.push(BigInt::one());
        for j in (1..=n).rev() {
            let sum = &row[j] + &row[j - 1];
            row[j] = sum;
        }
        let mut acc = BigRational::zero();
        for j in 0..n {
            acc += BigRational::from_integer(row[j].clone()) * &b[j];
        }
        b[n] = -acc / BigRational::from_integer(BigInt::from(n as u64 + 1));
    }
    b
}

fn reduce_mod(value: &BigRational, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let numer = ((value.numer() % &p_big) + &p_big) % &p_big;
    let denom = ((value.denom() % &p_big) + &p_big) % &p_big;
    let denom_u64 = u64::from_str(&denom.to_string()).unwrap();
    let inv = padic_core::mod_inv_u64(denom_u64, p).expect("denominator is a unit");
    let numer_u64 = u64::from_str(&numer.to_string()).unwrap();
    numer_u64 * inv % p
}

#[test]
fn exact_rationals_confirm_both_routes_up_to_fifty() {
    let exact = rational_bernoulli(47);
    // Spot-check the exact values themselves before using them as an
    // oracle: B_2 = 1/6, B_12 = -691/2730.
    assert_eq!(exact[2], BigRational::new(BigInt::from(1), BigInt::from(6)));
    assert_eq!(exact[12], BigRational::new(BigInt::from(-691), BigInt::from(2730)));
    assert!(exact[7].is_zero() && exact[13].is_zero());

    for p in primes_up_to(50).into_iter().filter(|&p| p >= 5) {
        let recurrence = bernoulli_mod_p(p).unwrap();
        let power_sum = bernoulli_mod_p_power_sum(p).unwrap();
        let indices: Vec<u64> = (2..=p - 3).step_by(2).collect();
        assert_eq!(recurrence.keys().copied().collect::<Vec<_>>(), indices, "p = {p}");
        assert_eq!(power_sum.keys().copied().collect::<Vec<_>>(), indices, "p = {p}");
        for n in indices {
            let want = reduce_mod(&exact[n as usize], p);
            assert_eq!(recurrence[&n], want, "recurrence at p = {p}, n = {n}");
            assert_eq!(power_sum[&n], want, "power sum at p = {p}, n = {n}");
        }
    }
}
