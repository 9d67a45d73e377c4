//! Bernoulli numbers modulo `p` by two independent routes.
//!
//! Both routes produce the residues `B_2t mod p` for `2 <= 2t <= p - 3`.
//! The von Staudt–Clausen theorem guarantees these residues exist: the
//! denominator of `B_2t` is the product of the primes `q` with
//! `(q - 1) | 2t`, and `(p - 1) | 2t` is impossible below `p - 1`, so `p`
//! never divides a denominator in this range.
//!
//! The baseline route is the defining recurrence
//! `sum_{j=0}^{n} C(n+1, j) B_j = 0` for `n >= 1`, run entirely over `F_p`.
//! Odd-index values beyond `B_1 = -1/2` vanish, so only even `j`
//! contribute and the `j = 0, 1` terms collapse to `1 - (n+1)/2`:
//!
//! ```text
//! B_n = -(n+1)^{-1} * ( 1 - (n+1)/2 + sum_{j = 2, 4, ..., n-2} C(n+1, j) B_j )
//! ```
//!
//! The binomial row `C(n+1, *)` is carried across iterations by Pascal
//! steps, so the whole table costs `O(p^2)` word operations.
//!
//! The accelerated route rests on the Voronoi congruence: for even `n`
//! with `2 <= n <= p - 3` and any unit `a`,
//!
//! ```text
//! (a^n - 1) B_n / n  ==  a^{n-1} * sum_{j=1}^{p-1} j^{n-1} floor(j a / p)   (mod p).
//! ```
//!
//! Taking `a = g` a primitive root and substituting `j = g^i mod p` turns
//! the right-hand sum into the evaluation of the polynomial
//! `D(x) = sum_i d_i x^i`, `d_i = floor((g^i mod p) g / p)`, at the
//! geometric points `x = g^{n-1} = g * (g^2)^t`. A chirp transform
//! (`i * t = C(i+t, 2) - C(i, 2) - C(t, 2)`) rewrites all evaluations as one
//! cross-correlation, which a number-theoretic transform over the word-size
//! prime `29 * 2^57 + 1` computes exactly: every correlation coefficient is
//! bounded by `p^2 (p - 1) < 2^60`, below that modulus, so no wraparound
//! occurs. This route costs `O(p log p)` and is what makes deep scans
//! practical; the two routes cross-check each other in the test suites.

use std::collections::BTreeMap;

use padic_core::{is_prime, mod_inv_u64, smallest_primitive_root};

use crate::error::ArithmeticError;

/// Largest prime either Bernoulli route accepts.
///
/// The bound keeps `p^2` products and their accumulated sums inside `u64`
/// (recurrence) and keeps exact correlation coefficients below the
/// transform modulus (power-sum route).
pub const MAX_BERNOULLI_PRIME: u64 = 1 << 20;

/// Which route computes the Bernoulli residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BernoulliMethod {
    /// The `O(p^2)` defining recurrence over `F_p`.
    Recurrence,
    /// The `O(p log p)` primitive-root power-sum route.
    PowerSum,
}

/// Barrett reduction for a fixed modulus: one multiply-high replaces the
/// hardware divide in the hot loops.
pub(crate) struct Barrett {
    p: u64,
    factor: u64,
}

impl Barrett {
    pub(crate) fn new(p: u64) -> Self {
        debug_assert!(p >= 2);
        Self { p, factor: ((1u128 << 64) / p as u128) as u64 }
    }

    /// Reduces any `x < 2^64` modulo `p`.
    #[inline]
    pub(crate) fn reduce(&self, x: u64) -> u64 {
        // q >= floor(x/p) - 2, so at most two corrections are needed.
        let q = ((x as u128 * self.factor as u128) >> 64) as u64;
        let mut r = x.wrapping_sub(q.wrapping_mul(self.p));
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    /// Product of two residues below `p` (`p^2` must fit in `u64`).
    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }
}

/// Table of inverses `inv[i] = i^{-1} mod p` for `1 <= i < p`, built by the
/// standard descent `inv[i] = -(p / i) * inv[p mod i]`.
pub(crate) fn inverse_table(p: u64) -> Vec<u64> {
    let n = p as usize;
    let mut inv = vec![0u64; n];
    if n > 1 {
        inv[1] = 1;
    }
    for i in 2..n {
        let q = p / i as u64;
        inv[i] = p - q * inv[(p % i as u64) as usize] % p;
    }
    inv
}

fn validate_bernoulli_prime(p: u64) -> Result<(), ArithmeticError> {
    if !is_prime(p) {
        return Err(ArithmeticError::NotPrime(p));
    }
    if p > MAX_BERNOULLI_PRIME {
        return Err(ArithmeticError::PrimeTooLarge { p, max: MAX_BERNOULLI_PRIME });
    }
    Ok(())
}

/// Residues `B_2t mod p` for `2 <= 2t <= p - 3`, by the defining recurrence.
///
/// For `p < 5` the index range is empty and the map is empty.
pub fn bernoulli_mod_p(p: u64) -> Result<BTreeMap<u64, u64>, ArithmeticError> {
    validate_bernoulli_prime(p)?;
    if p < 5 {
        return Ok(BTreeMap::new());
    }
    let n_max = (p - 3) as usize;
    let br = Barrett::new(p);
    let inv = inverse_table(p);
    let half = inv[2];

    let mut b = vec![0u64; n_max + 1];
    // row[j] = C(k, j) mod p for the current k; k climbs 1, 3, 5, ..., p - 2.
    let mut row = vec![0u64; p as usize];
    row[0] = 1;
    row[1] = 1;
    let mut k = 1usize;

    for n in (2..=n_max).step_by(2) {
        while k < n + 1 {
            k += 1;
            row[k] = 1;
            for j in (1..k).rev() {
                let s = row[j] + row[j - 1];
                row[j] = if s >= p { s - p } else { s };
            }
        }
        // Raw accumulation is safe: terms are < p^2 <= 2^40 and there are
        // fewer than 2^19 of them, which stays under 2^64.
        let mut s = 0u64;
        let mut j = 2usize;
        while j + 2 <= n {
            s += row[j] * b[j];
            j += 2;
        }
        let s = br.reduce(s);
        let half_term = br.mul(n as u64 + 1, half);
        let lead = {
            let v = 1 + p - half_term;
            if v >= p { v - p } else { v }
        };
        let total = {
            let v = lead + s;
            if v >= p { v - p } else { v }
        };
        b[n] = br.mul(p - inv[n + 1], total);
    }

    Ok((2..=n_max as u64).step_by(2).map(|n| (n, b[n as usize])).collect())
}

/// Residues `B_2t mod p` for `2 <= 2t <= p - 3`, by the primitive-root
/// power-sum route (Voronoi congruence, chirp transform, exact transform
/// over a word-size prime).
pub fn bernoulli_mod_p_power_sum(p: u64) -> Result<BTreeMap<u64, u64>, ArithmeticError> {
    validate_bernoulli_prime(p)?;
    if p < 5 {
        return Ok(BTreeMap::new());
    }
    let br = Barrett::new(p);
    let g = smallest_primitive_root(p);
    let coeff_count = (p - 1) as usize;
    let eval_count = ((p - 3) / 2) as usize;

    // d_i = floor((g^i mod p) * g / p): the Voronoi floor data along the
    // orbit of the primitive root.
    let mut d = vec![0u64; coeff_count];
    let mut r = 1u64;
    for slot in d.iter_mut() {
        *slot = r * g / p;
        r = br.mul(r, g);
    }

    // Evaluate D(x) = sum_i d_i x^i at x = c * w^t for c = g, w = g^2.
    let w = br.mul(g, g);
    let w_inv = mod_inv_u64(w, p).expect("g^2 is a unit");

    // u_i = d_i * c^i * w^{-C(i,2)}, built by chirp increments.
    let mut u = vec![0u64; coeff_count];
    {
        let mut c_pow = 1u64;
        let mut chirp = 1u64;
        let mut step = 1u64;
        for (i, slot) in u.iter_mut().enumerate() {
            *slot = br.mul(d[i], br.mul(c_pow, chirp));
            c_pow = br.mul(c_pow, g);
            chirp = br.mul(chirp, step);
            step = br.mul(step, w_inv);
        }
    }

    // v_k = w^{C(k,2)} for k up to (coeff_count - 1) + (eval_count - 1).
    let mut v = vec![0u64; coeff_count + eval_count - 1];
    {
        let mut chirp = 1u64;
        let mut step = 1u64;
        for slot in v.iter_mut() {
            *slot = chirp;
            chirp = br.mul(chirp, step);
            step = br.mul(step, w);
        }
    }

    // corr[t] = sum_i u_i v_{i+t}, exact by the bound p^2 (p-1) < 2^60.
    let reversed: Vec<u64> = u.iter().rev().copied().collect();
    let conv = ntt::convolve(&reversed, &v);

    let mut out = BTreeMap::new();
    let mut chirp = 1u64; // w^{-C(t,2)}
    let mut step = 1u64; // w^{-t}
    let mut g_nm1 = g; // g^{n-1}, n = 2t + 2
    let mut g_n = w; // g^n
    for t in 0..eval_count {
        let n = 2 * t as u64 + 2;
        let s_n = br.mul(chirp, conv[coeff_count - 1 + t] % p);
        let denom_inv =
            mod_inv_u64(g_n - 1, p).expect("g^n != 1 for n strictly inside the period");
        let b_n = br.mul(br.mul(br.reduce(n), g_nm1), br.mul(denom_inv, s_n));
        out.insert(n, b_n);
        chirp = br.mul(chirp, step);
        step = br.mul(step, w_inv);
        g_nm1 = br.mul(g_nm1, w);
        g_n = br.mul(g_n, w);
    }
    Ok(out)
}

/// Residues `B_2t mod p` by the requested route.
pub fn bernoulli_mod_p_with_method(
    p: u64,
    method: BernoulliMethod,
) -> Result<BTreeMap<u64, u64>, ArithmeticError> {
    match method {
        BernoulliMethod::Recurrence => bernoulli_mod_p(p),
        BernoulliMethod::PowerSum => bernoulli_mod_p_power_sum(p),
    }
}

/// Exact convolution over the prime `29 * 2^57 + 1`, whose multiplicative
/// group contains roots of unity of every two-power order up to `2^57`.
pub(crate) mod ntt {
    /// `29 * 2^57 + 1`, prime, with `3` a primitive root.
    pub(crate) const NTT_PRIME: u64 = 4_179_340_454_199_820_289;
    /// A primitive root of [`NTT_PRIME`].
    pub(crate) const NTT_ROOT: u64 = 3;

    #[inline]
    fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % NTT_PRIME as u128) as u64
    }

    fn pow(mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// In-place iterative transform of two-power length; `invert` applies
    /// the inverse transform without the `1/len` scaling.
    fn transform(values: &mut [u64], invert: bool) {
        let n = values.len();
        debug_assert!(n.is_power_of_two());
        let mut j = 0usize;
        for i in 1..n {
            let mut bit = n >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j |= bit;
            if i < j {
                values.swap(i, j);
            }
        }
        let mut len = 2usize;
        while len <= n {
            let mut root = pow(NTT_ROOT, (NTT_PRIME - 1) / len as u64);
            if invert {
                root = pow(root, NTT_PRIME - 2);
            }
            for start in (0..n).step_by(len) {
                let mut w = 1u64;
                for i in start..start + len / 2 {
                    let even = values[i];
                    let odd = mul(values[i + len / 2], w);
                    values[i] = if even + odd >= NTT_PRIME {
                        even + odd - NTT_PRIME
                    } else {
                        even + odd
                    };
                    values[i + len / 2] =
                        if even >= odd { even - odd } else { even + NTT_PRIME - odd };
                    w = mul(w, root);
                }
            }
            len <<= 1;
        }
    }

    /// Convolution of `a` and `b` modulo [`NTT_PRIME`], length
    /// `a.len() + b.len() - 1`. When every true coefficient is below the
    /// modulus the result is the exact integer convolution.
    pub(crate) fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
        assert!(!a.is_empty() && !b.is_empty());
        let out_len = a.len() + b.len() - 1;
        let size = out_len.next_power_of_two();
        let mut fa = vec![0u64; size];
        let mut fb = vec![0u64; size];
        fa[..a.len()].copy_from_slice(a);
        fb[..b.len()].copy_from_slice(b);
        transform(&mut fa, false);
        transform(&mut fb, false);
        for (x, y) in fa.iter_mut().zip(fb.iter()) {
            *x = mul(*x, *y);
        }
        transform(&mut fa, true);
        let scale = pow(size as u64, NTT_PRIME - 2);
        fa.truncate(out_len);
        for x in fa.iter_mut() {
            *x = mul(*x, scale);
        }
        fa
    }
}

#[cfg(test)]
mod tests {
    use padic_core::mod_pow_u64;

    use super::*;

    #[test]
    fn barrett_matches_the_division_operator() {
        for p in [2u64, 3, 5, 257, 3329, 11777, (1 << 20) - 1] {
            let br = Barrett::new(p);
            for x in [0u64, 1, p - 1, p, p + 1, p * p - 1, u64::MAX, 0x1234_5678_9abc_def0] {
                assert_eq!(br.reduce(x), x % p, "x = {x}, p = {p}");
            }
        }
    }

    #[test]
    fn inverse_table_entries_multiply_back_to_one() {
        let p = 97u64;
        let inv = inverse_table(p);
        for i in 1..p {
            assert_eq!(i * inv[i as usize] % p, 1, "i = {i}");
        }
    }

    #[test]
    fn convolution_matches_the_schoolbook_product() {
        let a = [3u64, 1, 4, 1, 5];
        let b = [2u64, 7, 1, 8];
        let got = ntt::convolve(&a, &b);
        let mut want = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                want[i + j] += x * y;
            }
        }
        assert_eq!(got, want);
    }

    #[test]
    fn transform_modulus_has_the_advertised_structure() {
        assert_eq!(ntt::NTT_PRIME, 29 * (1u64 << 57) + 1);
        assert!(is_prime(ntt::NTT_PRIME));
        // 3 is a primitive root: it is nontrivial on both prime cofactors.
        let q = ntt::NTT_PRIME;
        assert_ne!(mod_pow_u64(ntt::NTT_ROOT, (q - 1) / 2, q), 1);
        assert_ne!(mod_pow_u64(ntt::NTT_ROOT, (q - 1) / 29, q), 1);
    }

    #[test]
    fn tiny_primes_have_empty_tables() {
        assert!(bernoulli_mod_p(2).unwrap().is_empty());
        assert!(bernoulli_mod_p(3).unwrap().is_empty());
        assert!(bernoulli_mod_p_power_sum(3).unwrap().is_empty());
    }

    #[test]
    fn smallest_nonempty_table() {
        // B_2 = 1/6 and 6 = 1 mod 5.
        let table = bernoulli_mod_p(5).unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(table[&2], 1);
        assert_eq!(bernoulli_mod_p_power_sum(5).unwrap()[&2], 1);
    }

    #[test]
    fn rejects_composites_and_oversized_primes() {
        assert!(matches!(bernoulli_mod_p(91), Err(ArithmeticError::NotPrime(91))));
        assert!(matches!(
            bernoulli_mod_p_power_sum(1_048_583),
            Err(ArithmeticError::PrimeTooLarge { .. })
        ));
    }

    #[test]
    fn known_zero_residues_mark_the_classical_irregular_pairs() {
        // 37 | B_32, 59 | B_44, 67 | B_58, 101 | B_68, 103 | B_24.
        for (p, idx) in [(37u64, 32u64), (59, 44), (67, 58), (101, 68), (103, 24)] {
            let table = bernoulli_mod_p(p).unwrap();
            let zeros: Vec<u64> =
                table.iter().filter(|&(_, &v)| v == 0).map(|(&n, _)| n).collect();
            assert_eq!(zeros, vec![idx], "p = {p}");
        }
    }

    #[test]
    fn regular_primes_have_no_zero_residues() {
        for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 41, 43, 47, 53, 61, 71, 73, 79, 83, 89, 97]
        {
            let table = bernoulli_mod_p(p).unwrap();
            assert!(table.values().all(|&v| v != 0), "p = {p} should be regular");
        }
    }

    #[test]
    fn both_routes_agree_on_a_spread_of_primes() {
        for p in [5u64, 7, 11, 13, 37, 101, 257, 691, 1093] {
            assert_eq!(
                bernoulli_mod_p(p).unwrap(),
                bernoulli_mod_p_power_sum(p).unwrap(),
                "p = {p}"
            );
        }
    }

    #[test]
    fn method_selector_dispatches() {
        assert_eq!(
            bernoulli_mod_p_with_method(13, BernoulliMethod::Recurrence).unwrap(),
            bernoulli_mod_p_with_method(13, BernoulliMethod::PowerSum).unwrap()
        );
    }
}
