//! Characters of a cyclic group Δ of order `p - 1`, represented purely by
//! exponent multisets.
//!
//! Every irreducible character of Δ is a power `ω^r` of a fixed faithful
//! character, so a semisimple module is described completely by the multiset
//! of exponents `r mod (p-1)`. Orthogonality and invariant dimensions then
//! reduce to multiset arithmetic: two modules are orthogonal when their
//! supports are disjoint, and `(T^∧ ⊗ M)^Δ` has dimension equal to the
//! pointwise multiplicity pairing, since `ω^{-r} · ω^r` is the trivial
//! character.

use crate::error::CharacterError;
use padic_core::is_prime;
use std::collections::BTreeMap;

/// A multiset of character exponents mod `p - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterVector {
    modulus: u64,
    multiplicities: BTreeMap<u64, u64>,
}

impl CharacterVector {
    /// Empty character (the zero module) for a cyclic group of the given
    /// order.
    pub fn empty(modulus: u64) -> Self {
        CharacterVector {
            modulus,
            multiplicities: BTreeMap::new(),
        }
    }

    /// Build from (possibly negative, possibly repeated) exponents.
    pub fn from_exponents(modulus: u64, exponents: &[i64]) -> Self {
        let mut v = Self::empty(modulus);
        for &e in exponents {
            v.add(e, 1);
        }
        v
    }

    /// Add `count` copies of the exponent `e`, reduced mod the modulus.
    pub fn add(&mut self, e: i64, count: u64) {
        let m = self.modulus as i64;
        let r = e.rem_euclid(m) as u64;
        *self.multiplicities.entry(r).or_insert(0) += count;
    }

    /// Order of the cyclic group (i.e. `p - 1`).
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Multiplicity of `ω^r`.
    pub fn multiplicity(&self, r: u64) -> u64 {
        self.multiplicities
            .get(&(r % self.modulus))
            .copied()
            .unwrap_or(0)
    }

    /// Exponents with nonzero multiplicity, ascending.
    pub fn support(&self) -> Vec<u64> {
        self.multiplicities.keys().copied().collect()
    }

    /// The F_p-dimension of the module described: sum of multiplicities.
    pub fn total_multiplicity(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    /// Exponent/multiplicity pairs, ascending by exponent.
    pub fn pairs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.multiplicities.iter().map(|(&r, &m)| (r, m))
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), CharacterError> {
        if self.modulus != other.modulus {
            return Err(CharacterError::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }
}

fn validate_twist(p: u64, a: u64) -> Result<(), CharacterError> {
    if !is_prime(p) {
        return Err(CharacterError::NotPrime(p));
    }
    if a == 0 || a.is_multiple_of(2) || a > p - 2 {
        return Err(CharacterError::BadTwist { a, max: p - 2 });
    }
    Ok(())
}

/// Character of `gl_m` under conjugation by the diagonal twist `A_a`:
/// the multiset `{(i - j) a mod (p-1) : 1 <= i, j <= m}`, of total
/// multiplicity `m^2`.
pub fn adjoint_weights(p: u64, m: usize, a: u64) -> Result<CharacterVector, CharacterError> {
    validate_twist(p, a)?;
    if m < 2 {
        return Err(CharacterError::BadDimension(m));
    }
    let mut v = CharacterVector::empty(p - 1);
    for i in 1..=m as i64 {
        for j in 1..=m as i64 {
            v.add((i - j) * a as i64, 1);
        }
    }
    Ok(v)
}

/// Whether two modules share no common irreducible constituent.
pub fn orthogonal(left: &CharacterVector, right: &CharacterVector) -> Result<bool, CharacterError> {
    left.check_compatible(right)?;
    Ok(left.pairs().all(|(r, _)| right.multiplicity(r) == 0))
}

/// Dimension of `(T^∧ ⊗ M)^Δ`: the multiplicity pairing
/// `Σ_r mult_T(r) · mult_M(r)`.
pub fn obstruction_dimension(
    torsion: &CharacterVector,
    module: &CharacterVector,
) -> Result<u64, CharacterError> {
    torsion.check_compatible(module)?;
    Ok(torsion
        .pairs()
        .map(|(r, mult)| mult * module.multiplicity(r))
        .sum())
}

/// Character of the free part `F/p`: the trivial character together with
/// every odd power of ω, each once — `1 + ω + ω^3 + ... + ω^{p-2}`.
pub fn frank_character(p: u64) -> Result<CharacterVector, CharacterError> {
    if !is_prime(p) || p < 3 {
        return Err(CharacterError::NotPrime(p));
    }
    let modulus = p - 1;
    let mut v = CharacterVector::empty(modulus);
    v.add(0, 1);
    let mut e = 1;
    while e < modulus {
        v.add(e as i64, 1);
        e += 2;
    }
    Ok(v)
}

/// The reflection sending a class-group character index to the torsion
/// index of the mirror character `ω φ^{-1}`: `k ↦ (1 - k) mod (p-1)`.
pub fn mirror_exponent(k: u64, modulus: u64) -> u64 {
    (1i64 - k as i64).rem_euclid(modulus as i64) as u64
}

/// Character of the p-torsion of the relevant Galois module, obtained from
/// class-group character indices through the mirror map.
pub fn torsion_character(p: u64, class_char_indices: &[u64]) -> Result<CharacterVector, CharacterError> {
    if !is_prime(p) || p < 3 {
        return Err(CharacterError::NotPrime(p));
    }
    let modulus = p - 1;
    let mut v = CharacterVector::empty(modulus);
    for &k in class_char_indices {
        v.add(mirror_exponent(k, modulus) as i64, 1);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_weights_small_cases() {
        let v = adjoint_weights(5, 3, 1).unwrap();
        assert_eq!(v.modulus(), 4);
        assert_eq!(v.total_multiplicity(), 9);
        assert_eq!(
            v.pairs().collect::<Vec<_>>(),
            vec![(0, 3), (1, 2), (2, 2), (3, 2)]
        );

        let v = adjoint_weights(5, 2, 1).unwrap();
        assert_eq!(v.pairs().collect::<Vec<_>>(), vec![(0, 2), (1, 1), (3, 1)]);
    }

    #[test]
    fn adjoint_weights_with_twist() {
        let v = adjoint_weights(13, 3, 3).unwrap();
        assert_eq!(v.modulus(), 12);
        assert_eq!(
            v.pairs().collect::<Vec<_>>(),
            vec![(0, 3), (3, 2), (6, 2), (9, 2)]
        );
    }

    #[test]
    fn adjoint_weights_zero_has_diagonal_multiplicity() {
        for (p, m, a) in [(5u64, 2usize, 1u64), (13, 5, 3), (17, 8, 1), (257, 4, 1)] {
            let v = adjoint_weights(p, m, a).unwrap();
            assert!(v.multiplicity(0) >= m as u64, "p={p} m={m} a={a}");
            assert_eq!(v.total_multiplicity(), (m * m) as u64);
        }
    }

    #[test]
    fn adjoint_rejects_bad_twists() {
        assert_eq!(
            adjoint_weights(13, 3, 2).unwrap_err(),
            CharacterError::BadTwist { a: 2, max: 11 }
        );
        assert_eq!(
            adjoint_weights(13, 3, 13).unwrap_err(),
            CharacterError::BadTwist { a: 13, max: 11 }
        );
        assert_eq!(
            adjoint_weights(13, 1, 1).unwrap_err(),
            CharacterError::BadDimension(1)
        );
    }

    #[test]
    fn orthogonality_is_support_disjointness() {
        let m = CharacterVector::from_exponents(4, &[1]);
        let n = CharacterVector::from_exponents(4, &[2, 3]);
        assert!(orthogonal(&m, &n).unwrap());
        let n2 = CharacterVector::from_exponents(4, &[1, 2]);
        assert!(!orthogonal(&m, &n2).unwrap());
    }

    #[test]
    fn orthogonality_requires_equal_moduli() {
        let m = CharacterVector::from_exponents(4, &[1]);
        let n = CharacterVector::from_exponents(6, &[1]);
        assert_eq!(
            orthogonal(&m, &n).unwrap_err(),
            CharacterError::ModulusMismatch { left: 4, right: 6 }
        );
    }

    #[test]
    fn torsion_of_the_first_exception_prime() {
        // k = 93 mirrors to 1 - 93 = -92 ≡ 164 mod 256.
        let t = torsion_character(257, &[93]).unwrap();
        assert_eq!(t.pairs().collect::<Vec<_>>(), vec![(164, 1)]);
    }

    #[test]
    fn torsion_orthogonality_against_adjoint_weights_depends_on_m() {
        // The adjoint support at a = 1 is {-(m-1), ..., m-1} mod 256, which
        // first reaches the torsion exponent 164 ≡ -92 at m = 93.
        let t = torsion_character(257, &[93]).unwrap();
        for m in [2usize, 3, 50, 92] {
            let w = adjoint_weights(257, m, 1).unwrap();
            assert!(orthogonal(&t, &w).unwrap(), "m={m} should be disjoint");
        }
        for m in [93usize, 100, 164, 165] {
            let w = adjoint_weights(257, m, 1).unwrap();
            assert!(!orthogonal(&t, &w).unwrap(), "m={m} should intersect");
        }
    }

    #[test]
    fn obstruction_dimension_counts_matched_multiplicities() {
        let empty = CharacterVector::empty(256);
        let m = adjoint_weights(257, 3, 1).unwrap();
        assert_eq!(obstruction_dimension(&empty, &m).unwrap(), 0);

        let t = CharacterVector::from_exponents(256, &[164]);
        let single = CharacterVector::from_exponents(256, &[164]);
        assert_eq!(obstruction_dimension(&t, &single).unwrap(), 1);

        assert_eq!(obstruction_dimension(&t, &m).unwrap(), 0);
        let wide = adjoint_weights(257, 93, 1).unwrap();
        assert_eq!(
            obstruction_dimension(&t, &wide).unwrap(),
            wide.multiplicity(164)
        );
        assert_eq!(wide.multiplicity(164), 1);
    }

    #[test]
    fn obstruction_vanishes_exactly_on_orthogonal_pairs() {
        let candidates = [
            CharacterVector::from_exponents(12, &[0, 1]),
            CharacterVector::from_exponents(12, &[3, 3, 5]),
            CharacterVector::from_exponents(12, &[7]),
            CharacterVector::empty(12),
            adjoint_weights(13, 4, 1).unwrap(),
            adjoint_weights(13, 2, 5).unwrap(),
        ];
        for a in &candidates {
            for b in &candidates {
                assert_eq!(
                    obstruction_dimension(a, b).unwrap() == 0,
                    orthogonal(a, b).unwrap()
                );
            }
        }
    }

    #[test]
    fn frank_character_values() {
        assert_eq!(
            frank_character(5).unwrap().support(),
            vec![0, 1, 3]
        );
        assert_eq!(
            frank_character(7).unwrap().support(),
            vec![0, 1, 3, 5]
        );
        assert_eq!(frank_character(3).unwrap().support(), vec![0, 1]);
    }

    #[test]
    fn frank_character_has_exactly_one_even_exponent() {
        for p in [3u64, 5, 7, 13, 17, 257] {
            let f = frank_character(p).unwrap();
            let evens: Vec<u64> = f.support().into_iter().filter(|e| e % 2 == 0).collect();
            assert_eq!(evens, vec![0], "p={p}");
            assert_eq!(f.total_multiplicity(), (p - 1) / 2 + 1);
        }
    }

    #[test]
    fn mirror_is_an_involution_on_odd_exponents() {
        for k in (3..255u64).step_by(2) {
            let m = mirror_exponent(k, 256);
            assert_eq!(mirror_exponent(m, 256), k % 256);
            assert_eq!(m % 2, 0, "odd class indices mirror to even torsion exponents");
        }
    }
}
