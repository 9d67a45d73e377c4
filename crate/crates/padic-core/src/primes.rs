//! Deterministic primality and small multiplicative helpers on `u64`.

/// `a * b mod m` without overflow.
#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m` by binary exponentiation (`m >= 1`).
pub fn mod_pow_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` via extended Euclid, `None` when `gcd(a, m) != 1`.
pub fn mod_inv_u64(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller–Rabin, valid for the whole `u64` range.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to
/// have no strong pseudoprimes below 3.3 * 10^24.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of `n >= 1` by trial division, as (prime, exponent)
/// pairs in increasing prime order. Fine for the sizes this workspace uses
/// (factoring `p - 1` for `p` below a few hundred thousand).
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0u32;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Smallest primitive root modulo an odd prime `p`.
pub fn smallest_primitive_root(p: u64) -> u64 {
    debug_assert!(is_prime(p) && p > 2);
    let cofactors: Vec<u64> = factorize(p - 1).iter().map(|&(q, _)| (p - 1) / q).collect();
    (2..p)
        .find(|&g| cofactors.iter().all(|&c| mod_pow_u64(g, c, p) != 1))
        .expect("every prime has a primitive root")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_known_values() {
        for p in [2u64, 3, 5, 7, 11, 257, 3329, 11777, 114689, 163841, 184577] {
            assert!(is_prime(p), "{p} should be prime");
        }
        for n in [0u64, 1, 4, 9, 91, 561, 3215031751, 3825123056546413051] {
            assert!(!is_prime(n), "{n} should be composite");
        }
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(smallest_primitive_root(3), 2);
        assert_eq!(smallest_primitive_root(5), 2);
        assert_eq!(smallest_primitive_root(7), 3);
        assert_eq!(smallest_primitive_root(13), 2);
        assert_eq!(smallest_primitive_root(17), 3);
        assert_eq!(smallest_primitive_root(257), 3);
        assert_eq!(smallest_primitive_root(40487), 5);
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(256), vec![(2, 8)]);
        assert_eq!(factorize(3328), vec![(2, 8), (13, 1)]);
        assert_eq!(factorize(163840), vec![(2, 15), (5, 1)]);
    }

    #[test]
    fn inverses() {
        for m in [5u64, 25, 125, 257, 1 << 32] {
            for a in 1..40u64 {
                if let Some(inv) = mod_inv_u64(a, m) {
                    assert_eq!(mul_mod(a, inv, m), 1 % m);
                }
            }
        }
        assert_eq!(mod_inv_u64(5, 25), None);
    }
}
