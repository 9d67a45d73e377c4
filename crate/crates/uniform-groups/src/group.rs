//! Finite matrix groups over `Z/p^N`, represented by explicit element
//! enumeration.
//!
//! Elements are stored as canonical fixed-width byte keys rather than full
//! matrices, which keeps memory proportional to `dim^2 * N * log p` per
//! element during breadth-first closures. Guards bound both the number of
//! elements materialised and (for the quadratic verification routines) the
//! number of pairwise products, so runaway inputs fail fast with a
//! diagnostic instead of exhausting the machine.

use crate::error::GroupError;
use crate::exp_log::exp_mat;
use lie_matrix::LieElement;
use num_bigint::BigUint;
use num_traits::One;
use padic_core::{PadicContext, PadicMatrix};
use std::collections::HashMap;

/// Caps on group enumeration work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Maximum number of distinct elements a closure may materialise.
    pub max_elements: usize,
    /// Maximum number of pairwise products an exhaustive verification may
    /// perform.
    pub max_pairwise: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_elements: 1_000_000,
            max_pairwise: 20_000_000,
        }
    }
}

/// Which congruence kernel to take inside `GL_m(Z/p^N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CongruenceLevel {
    /// Kernel of reduction `GL_m(Z/p^N) -> GL_m(Z/p^k)`.
    General { k: u32 },
    /// The determinant-one part of the same kernel.
    Special { k: u32 },
}

impl CongruenceLevel {
    /// The reduction level `k`.
    pub fn k(self) -> u32 {
        match self {
            CongruenceLevel::General { k } | CongruenceLevel::Special { k } => k,
        }
    }

    fn wants_det_one(self) -> bool {
        matches!(self, CongruenceLevel::Special { .. })
    }
}

/// A finite group of invertible matrices over `Z/p^N`, stored extensionally.
#[derive(Clone)]
pub struct FiniteMatrixGroup {
    ctx: PadicContext,
    dim: usize,
    generators: Vec<PadicMatrix>,
    element_keys: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl FiniteMatrixGroup {
    /// The ambient coefficient ring.
    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    /// Matrix dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The generating set this group was closed from.
    pub fn generators(&self) -> &[PadicMatrix] {
        &self.generators
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.element_keys.len()
    }

    /// Decode the `i`-th element.
    pub fn element(&self, i: usize) -> PadicMatrix {
        PadicMatrix::from_canonical_key(&self.ctx, self.dim, &self.element_keys[i])
    }

    /// Iterate over all elements, decoding on demand.
    pub fn elements(&self) -> impl Iterator<Item = PadicMatrix> + '_ {
        self.element_keys
            .iter()
            .map(|k| PadicMatrix::from_canonical_key(&self.ctx, self.dim, k))
    }

    /// Membership test.
    pub fn contains(&self, g: &PadicMatrix) -> bool {
        self.index.contains_key(&g.canonical_key())
    }

    /// Whether the two groups have exactly the same element set.
    pub fn set_eq(&self, other: &FiniteMatrixGroup) -> bool {
        self.order() == other.order()
            && self
                .element_keys
                .iter()
                .all(|k| other.index.contains_key(k))
    }

    /// Whether every element of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &FiniteMatrixGroup) -> bool {
        self.element_keys
            .iter()
            .all(|k| other.index.contains_key(k))
    }

    /// Close a set of invertible matrices under multiplication.
    ///
    /// Breadth-first orbit algorithm: multiply every discovered element by
    /// every generator (on the right), interning canonical byte keys. Since
    /// the ambient group is finite, closure under products alone already
    /// yields inverses and the identity.
    pub fn generate(
        ctx: &PadicContext,
        dim: usize,
        generators: Vec<PadicMatrix>,
        limits: &EnumerationLimits,
    ) -> Result<Self, GroupError> {
        for g in &generators {
            ctx.compatible(g.context()).map_err(GroupError::from)?;
            if g.dim() != dim {
                return Err(GroupError::NotAGroup {
                    detail: format!(
                        "generator has dimension {}, expected {}",
                        g.dim(),
                        dim
                    ),
                });
            }
        }
        let mut multipliers = generators.clone();
        for g in &generators {
            multipliers.push(g.inverse()?);
        }
        let mut group = FiniteMatrixGroup {
            ctx: ctx.clone(),
            dim,
            generators,
            element_keys: Vec::new(),
            index: HashMap::new(),
        };
        group.insert(PadicMatrix::identity(ctx, dim));
        let mut cursor = 0;
        while cursor < group.element_keys.len() {
            let current = group.element(cursor);
            cursor += 1;
            for m in &multipliers {
                let next = current.mul(m)?;
                if group.insert(next) && group.element_keys.len() > limits.max_elements {
                    return Err(GroupError::EnumerationGuard {
                        limit: limits.max_elements,
                        estimated: format!("more than {}", limits.max_elements),
                    });
                }
            }
        }
        Ok(group)
    }

    /// Build a group from an already-closed element list (verified).
    pub fn from_element_list(
        ctx: &PadicContext,
        dim: usize,
        elements: Vec<PadicMatrix>,
        limits: &EnumerationLimits,
    ) -> Result<Self, GroupError> {
        let mut group = FiniteMatrixGroup {
            ctx: ctx.clone(),
            dim,
            generators: elements.clone(),
            element_keys: Vec::new(),
            index: HashMap::new(),
        };
        for e in elements {
            ctx.compatible(e.context()).map_err(GroupError::from)?;
            group.insert(e);
        }
        group.verify_closed(limits)?;
        Ok(group)
    }

    fn insert(&mut self, g: PadicMatrix) -> bool {
        let key = g.canonical_key();
        if self.index.contains_key(&key) {
            return false;
        }
        self.index.insert(key.clone(), self.element_keys.len());
        self.element_keys.push(key);
        true
    }

    /// Exhaustively verify closure under products and inverses. Quadratic in
    /// the order, so guarded by `max_pairwise`.
    pub fn verify_closed(&self, limits: &EnumerationLimits) -> Result<(), GroupError> {
        let n = self.order() as u64;
        let products = n * n + n;
        if products > limits.max_pairwise {
            return Err(GroupError::PairGuard {
                limit: limits.max_pairwise,
                products,
            });
        }
        if !self.contains(&PadicMatrix::identity(&self.ctx, self.dim)) {
            return Err(GroupError::NotAGroup {
                detail: "identity missing".into(),
            });
        }
        for a in self.elements() {
            if !self.contains(&a.inverse()?) {
                return Err(GroupError::NotAGroup {
                    detail: "inverse escapes the set".into(),
                });
            }
            for b in self.elements() {
                if !self.contains(&a.mul(&b)?) {
                    return Err(GroupError::NotAGroup {
                        detail: "product escapes the set".into(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Whether `self` is normal in `ambient` (checked against the ambient
    /// group's generators, which suffices).
    pub fn is_normal_in(&self, ambient: &FiniteMatrixGroup) -> Result<bool, GroupError> {
        for g in ambient.generators() {
            let g_inv = g.inverse()?;
            for h in self.elements() {
                let conj = g.mul(&h)?.mul(&g_inv)?;
                if !self.contains(&conj) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The intersection of two element sets over the same context.
    pub fn intersection(
        &self,
        other: &FiniteMatrixGroup,
        limits: &EnumerationLimits,
    ) -> Result<FiniteMatrixGroup, GroupError> {
        self.ctx.compatible(&other.ctx).map_err(GroupError::from)?;
        let keep: Vec<PadicMatrix> = self
            .element_keys
            .iter()
            .filter(|k| other.index.contains_key(*k))
            .map(|k| PadicMatrix::from_canonical_key(&self.ctx, self.dim, k))
            .collect();
        FiniteMatrixGroup::from_element_list(&self.ctx, self.dim, keep, limits)
    }
}

impl std::fmt::Debug for FiniteMatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FiniteMatrixGroup(dim {} over {:?}, order {})",
            self.dim,
            self.ctx,
            self.order()
        )
    }
}

/// Close a generating set of uniform-domain matrices (each congruent to the
/// identity mod `p^(1+eps)`) inside `GL_m(Z/p^N)`.
pub fn generated_subgroup(
    ctx: &PadicContext,
    generators: &[PadicMatrix],
    limits: &EnumerationLimits,
) -> Result<FiniteMatrixGroup, GroupError> {
    let dim = generators
        .first()
        .map(|g| g.dim())
        .ok_or_else(|| GroupError::NotAGroup {
            detail: "empty generating set".into(),
        })?;
    let level = (1 + ctx.epsilon()).min(ctx.precision());
    for (index, g) in generators.iter().enumerate() {
        if !g.is_identity_mod(level) {
            return Err(GroupError::GeneratorOutsideDomain { index, level });
        }
    }
    FiniteMatrixGroup::generate(ctx, dim, generators.to_vec(), limits)
}

/// `p^(m^2 r)` or `p^((m^2-1) r)` as a `BigUint`: the exact order of the
/// congruence kernel at levels `r = N - k - eps` deep.
fn kernel_order_estimate(p: u64, dim: usize, level: CongruenceLevel, precision: u32) -> BigUint {
    let eps = if p == 2 { 1u32 } else { 0 };
    let k = level.k();
    if precision <= k + eps {
        return BigUint::one();
    }
    let r = (precision - k - eps) as u64;
    let m2 = (dim * dim) as u64;
    let log_order = if level.wants_det_one() {
        (m2 - 1) * r
    } else {
        m2 * r
    };
    BigUint::from(p).pow(
        u32::try_from(log_order).expect("kernel exponent fits in u32"),
    )
}

/// The congruence kernel `K = ker(GL_m(Z/p^N) -> GL_m(Z/p^k))`, or its
/// determinant-one part, enumerated explicitly.
///
/// Elements are exactly the matrices `I + p^k X`; for `p = 2` and the
/// uniform theory one level deeper, `I + p^(k+1) X`. The enumeration walks
/// `X` odometer-style over all residues mod `p^(N-k-eps)`, filtering on the
/// determinant for the special case. The canonical generating set attached
/// to the result is `exp(p^(k-1) b)` for `b` running over the standard basis
/// of the relevant powerful algebra, which generates the same group.
pub fn congruence_kernel(
    ctx: &PadicContext,
    dim: usize,
    level: CongruenceLevel,
    limits: &EnumerationLimits,
) -> Result<FiniteMatrixGroup, GroupError> {
    let k = level.k();
    if k < 1 || k > ctx.precision() {
        return Err(GroupError::LevelOutOfRange {
            k,
            precision: ctx.precision(),
        });
    }
    let estimate = kernel_order_estimate(ctx.p(), dim, level, ctx.precision());
    if estimate > BigUint::from(limits.max_elements) {
        return Err(GroupError::EnumerationGuard {
            limit: limits.max_elements,
            estimated: estimate.to_string(),
        });
    }
    let eps = ctx.epsilon();
    let depth = k + eps; // entries of X range over p^depth * (Z/p^N)
    let mut group = FiniteMatrixGroup {
        ctx: ctx.clone(),
        dim,
        generators: canonical_kernel_generators(ctx, dim, level)?,
        element_keys: Vec::new(),
        index: HashMap::new(),
    };
    if depth >= ctx.precision() {
        group.insert(PadicMatrix::identity(ctx, dim));
        return Ok(group);
    }
    let step = ctx.p_pow(depth);
    let span = u64::try_from(ctx.p_pow(ctx.precision() - depth))
        .ok()
        .filter(|&s| (s as u128) <= limits.max_elements as u128)
        .ok_or_else(|| GroupError::EnumerationGuard {
            limit: limits.max_elements,
            estimated: estimate.to_string(),
        })?;
    let cells = dim * dim;
    let mut odometer = vec![0u64; cells];
    // Every matrix of this shape has determinant congruent to 1 mod p, hence
    // a unit, so invertibility never needs re-checking; the special kernel
    // additionally filters on exact determinant 1.
    'outer: loop {
        let entries: Vec<BigUint> = (0..cells)
            .map(|c| {
                let offset = BigUint::from(odometer[c]) * &step;
                if c % (dim + 1) == 0 {
                    offset + BigUint::one()
                } else {
                    offset
                }
            })
            .collect();
        let mat = PadicMatrix::from_residues(ctx, dim, entries)?;
        if !level.wants_det_one() || mat.det() == BigUint::one() {
            group.insert(mat);
            if group.order() > limits.max_elements {
                return Err(GroupError::EnumerationGuard {
                    limit: limits.max_elements,
                    estimated: estimate.to_string(),
                });
            }
        }
        for digit in odometer.iter_mut() {
            *digit += 1;
            if *digit < span {
                continue 'outer;
            }
            *digit = 0;
        }
        break;
    }
    Ok(group)
}

/// Canonical generators for the congruence kernel: exponentials of
/// `p^(k-1) b` for `b` in the standard basis of `p^(1+eps) gl_m` (or its
/// traceless part for the special kernel).
fn canonical_kernel_generators(
    ctx: &PadicContext,
    dim: usize,
    level: CongruenceLevel,
) -> Result<Vec<PadicMatrix>, GroupError> {
    let p = ctx.p();
    let k = level.k();
    let mut basis: Vec<LieElement> = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                basis.push(LieElement::basis(p, dim, i, j)?);
            }
        }
    }
    if level.wants_det_one() {
        for i in 0..dim - 1 {
            let a = LieElement::basis(p, dim, i, i)?;
            let b = LieElement::basis(p, dim, i + 1, i + 1)?;
            basis.push(a.sub(&b)?);
        }
    } else {
        for i in 0..dim {
            basis.push(LieElement::basis(p, dim, i, i)?);
        }
    }
    basis
        .into_iter()
        .map(|b| exp_mat(&b.mul_by_p_pow((k - 1) as u64), ctx))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, n: u32) -> PadicContext {
        PadicContext::new(p, n).unwrap()
    }

    fn limits() -> EnumerationLimits {
        EnumerationLimits::default()
    }

    #[test]
    fn single_unipotent_generator_has_order_p() {
        let c = ctx(3, 2);
        let g = PadicMatrix::from_i64s(&c, 2, &[1, 3, 0, 1]).unwrap();
        let grp = generated_subgroup(&c, &[g], &limits()).unwrap();
        assert_eq!(grp.order(), 3);
    }

    #[test]
    fn closure_contains_inverses_and_identity() {
        let c = ctx(5, 2);
        let g = PadicMatrix::from_i64s(&c, 2, &[1, 5, 0, 1]).unwrap();
        let grp = generated_subgroup(&c, std::slice::from_ref(&g), &limits()).unwrap();
        assert!(grp.contains(&PadicMatrix::identity(&c, 2)));
        assert!(grp.contains(&g.inverse().unwrap()));
        grp.verify_closed(&limits()).unwrap();
    }

    #[test]
    fn general_kernel_order_matches_brute_force() {
        // ker(GL_2(Z/9) -> GL_2(Z/3)) has p^(m^2) = 81 elements.
        let c = ctx(3, 2);
        let grp = congruence_kernel(&c, 2, CongruenceLevel::General { k: 1 }, &limits()).unwrap();
        assert_eq!(grp.order(), 81);
        // Brute force: all 4-tuples of residues mod 9 that are I mod 3 and
        // invertible.
        let mut count = 0u32;
        for a in 0..9i64 {
            for b in 0..9 {
                for d in 0..9 {
                    for e in 0..9 {
                        if a % 3 == 1 && e % 3 == 1 && b % 3 == 0 && d % 3 == 0 {
                            let m = PadicMatrix::from_i64s(&c, 2, &[a, b, d, e]).unwrap();
                            if m.inverse().is_ok() {
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(count, 81);
    }

    #[test]
    fn special_kernel_order() {
        // SL part drops one factor of p^r: 3^((4-1)*1) = 27.
        let c = ctx(3, 2);
        let grp = congruence_kernel(&c, 2, CongruenceLevel::Special { k: 1 }, &limits()).unwrap();
        assert_eq!(grp.order(), 27);
        for g in grp.elements() {
            assert_eq!(g.det(), BigUint::one());
            assert!(g.is_identity_mod(1));
        }
    }

    #[test]
    fn special_kernel_depth_two() {
        // ker(SL_2(Z/27) -> SL_2(Z/3)): 3^(3*2) = 729 elements.
        let c = ctx(3, 3);
        let grp = congruence_kernel(&c, 2, CongruenceLevel::Special { k: 1 }, &limits()).unwrap();
        assert_eq!(grp.order(), 729);
    }

    #[test]
    fn kernel_generators_generate_the_kernel() {
        let c = ctx(3, 2);
        let kernel =
            congruence_kernel(&c, 2, CongruenceLevel::Special { k: 1 }, &limits()).unwrap();
        let regenerated =
            generated_subgroup(&c, kernel.generators(), &limits()).unwrap();
        assert!(regenerated.set_eq(&kernel));
    }

    #[test]
    fn p2_kernel_uses_the_deeper_level() {
        // For p = 2 the uniform kernel sits at I + 2^(k+1) X: with N = 3,
        // k = 1 this leaves r = 1, so 2^4 = 16 elements in GL_2.
        let c = ctx(2, 3);
        let grp = congruence_kernel(&c, 2, CongruenceLevel::General { k: 1 }, &limits()).unwrap();
        assert_eq!(grp.order(), 16);
        for g in grp.elements() {
            assert!(g.is_identity_mod(2));
        }
    }

    #[test]
    fn level_must_stay_within_precision() {
        let c = ctx(3, 2);
        let err = congruence_kernel(&c, 2, CongruenceLevel::General { k: 3 }, &limits());
        assert_eq!(
            err.unwrap_err(),
            GroupError::LevelOutOfRange { k: 3, precision: 2 }
        );
    }

    #[test]
    fn trivial_kernel_at_full_level() {
        let c = ctx(3, 2);
        let grp = congruence_kernel(&c, 2, CongruenceLevel::General { k: 2 }, &limits()).unwrap();
        assert_eq!(grp.order(), 1);
    }

    #[test]
    fn guard_trips_on_oversized_kernels() {
        let c = ctx(5, 4);
        let tight = EnumerationLimits {
            max_elements: 100,
            max_pairwise: 1000,
        };
        let err = congruence_kernel(&c, 3, CongruenceLevel::General { k: 1 }, &tight);
        match err.unwrap_err() {
            GroupError::EnumerationGuard { limit, estimated } => {
                assert_eq!(limit, 100);
                assert_eq!(estimated, BigUint::from(5u32).pow(27).to_string());
            }
            other => panic!("expected enumeration guard, got {other:?}"),
        }
    }

    #[test]
    fn intersection_and_normality() {
        let c = ctx(3, 2);
        let big = congruence_kernel(&c, 2, CongruenceLevel::General { k: 1 }, &limits()).unwrap();
        let small =
            congruence_kernel(&c, 2, CongruenceLevel::Special { k: 1 }, &limits()).unwrap();
        let meet = small.intersection(&big, &limits()).unwrap();
        assert!(meet.set_eq(&small));
        assert!(small.is_normal_in(&big).unwrap());
    }
}
