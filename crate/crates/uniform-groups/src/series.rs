//! The p-descending central series, p-rank computations, and the induced
//! (décalage) filtration on subgroups, all at finite level.
//!
//! For a finite p-group the series `G_1 = G`, `G_{n+1} = G_n^p [G, G_n]`
//! can be computed from generating sets alone: `G_{n+1}` is the normal
//! closure in `G` of the p-th powers of generators of `G_n` together with
//! their commutators against generators of `G`. Working with generators
//! keeps every step linear in the subgroup order rather than quadratic.
//!
//! The décalage checks, by contrast, are *verification* routines: they
//! re-establish subgroupness, normality, elementary-abelian quotients and
//! trivial action by exhaustive products, guarded by the pairwise budget,
//! rather than assuming any of it.

use crate::error::GroupError;
use crate::group::{EnumerationLimits, FiniteMatrixGroup};
use padic_core::PadicMatrix;
use std::collections::HashSet;

/// The smallest normal subgroup of `ambient` containing `seeds`.
///
/// Fixpoint iteration: close the seeds under multiplication, conjugate every
/// element by the ambient generators, and repeat until no conjugate escapes.
pub fn normal_closure(
    ambient: &FiniteMatrixGroup,
    seeds: &[PadicMatrix],
    limits: &EnumerationLimits,
) -> Result<FiniteMatrixGroup, GroupError> {
    let ctx = ambient.context();
    let dim = ambient.dim();
    let mut gens: Vec<PadicMatrix> = seeds.to_vec();
    loop {
        let closed = FiniteMatrixGroup::generate(ctx, dim, gens.clone(), limits)?;
        let mut escaped: Vec<PadicMatrix> = Vec::new();
        for a in ambient.generators() {
            let a_inv = a.inverse()?;
            for x in closed.elements() {
                let conj = a.mul(&x)?.mul(&a_inv)?;
                if !closed.contains(&conj) {
                    escaped.push(conj);
                }
            }
        }
        if escaped.is_empty() {
            return Ok(closed);
        }
        gens = closed.elements().collect();
        gens.extend(escaped);
    }
}

/// The Frattini subgroup `Phi(G) = G^p [G, G]` of a finite p-group, computed
/// as the normal closure of generator p-th powers and pairwise generator
/// commutators.
pub fn frattini(group: &FiniteMatrixGroup, limits: &EnumerationLimits) -> Result<FiniteMatrixGroup, GroupError> {
    let p = group.context().p();
    let gens = group.generators();
    let mut seeds: Vec<PadicMatrix> = Vec::new();
    for g in gens {
        seeds.push(g.pow(p));
    }
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            seeds.push(gens[i].commutator(&gens[j])?);
        }
    }
    normal_closure(group, &seeds, limits)
}

/// `log_p` of an exact p-power quotient of two subgroup orders.
fn p_log_quotient(p: u64, total: usize, part: usize) -> Result<u32, GroupError> {
    if part == 0 || !total.is_multiple_of(part) {
        return Err(GroupError::NotAGroup {
            detail: format!("order {part} does not divide order {total}"),
        });
    }
    let mut q = total / part;
    let mut d = 0;
    while q > 1 {
        if !q.is_multiple_of(p as usize) {
            return Err(GroupError::NotAGroup {
                detail: format!("quotient of order {} is not a p-power", total / part),
            });
        }
        q /= p as usize;
        d += 1;
    }
    Ok(d)
}

/// The p-rank `d_p(G) = dim_{F_p} G / G^p[G,G]`: the minimal number of
/// generators of the finite p-group `G`.
pub fn p_rank(group: &FiniteMatrixGroup, limits: &EnumerationLimits) -> Result<u32, GroupError> {
    let phi = frattini(group, limits)?;
    p_log_quotient(group.context().p(), group.order(), phi.order())
}

/// The p-rank of the quotient `G/H` for a normal subgroup `H`, namely
/// `log_p [G : Phi(G) H]`.
pub fn quotient_rank(
    group: &FiniteMatrixGroup,
    normal: &FiniteMatrixGroup,
    limits: &EnumerationLimits,
) -> Result<u32, GroupError> {
    if !normal.is_subgroup_of(group) {
        return Err(GroupError::NotAGroup {
            detail: "quotient by a set that is not contained in the group".into(),
        });
    }
    let phi = frattini(group, limits)?;
    let mut gens: Vec<PadicMatrix> = phi.elements().collect();
    gens.extend(normal.elements());
    let span = FiniteMatrixGroup::generate(group.context(), group.dim(), gens, limits)?;
    p_log_quotient(group.context().p(), group.order(), span.order())
}

/// The p-descending central series of a finite p-group, down to the trivial
/// subgroup.
#[derive(Debug, Clone)]
pub struct CentralSeries {
    terms: Vec<FiniteMatrixGroup>,
}

impl CentralSeries {
    /// Terms `G_1 = G, G_2, ...`; the last term is trivial.
    pub fn terms(&self) -> &[FiniteMatrixGroup] {
        &self.terms
    }

    /// Number of terms including the trivial tail; always at least one.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// A series always carries at least its first term.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The term `G_n` (1-indexed); `None` past the computed tail.
    pub fn term(&self, n: usize) -> Option<&FiniteMatrixGroup> {
        if n == 0 {
            None
        } else {
            self.terms.get(n - 1)
        }
    }

    /// Orders of the terms.
    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.order()).collect()
    }
}

/// Compute the p-descending central series `G_{n+1} = G_n^p [G, G_n]`.
pub fn p_central_series(
    group: &FiniteMatrixGroup,
    limits: &EnumerationLimits,
) -> Result<CentralSeries, GroupError> {
    let p = group.context().p();
    let mut terms = vec![group.clone()];
    while terms.last().expect("nonempty").order() > 1 {
        let current = terms.last().expect("nonempty");
        let mut seeds: Vec<PadicMatrix> = Vec::new();
        for x in current.generators() {
            seeds.push(x.pow(p));
        }
        for g in group.generators() {
            for x in current.generators() {
                seeds.push(g.commutator(x)?);
            }
        }
        let next = normal_closure(group, &seeds, limits)?;
        if next.order() >= current.order() {
            return Err(GroupError::NotAGroup {
                detail: format!(
                    "central series failed to descend at order {}",
                    current.order()
                ),
            });
        }
        terms.push(next);
    }
    Ok(CentralSeries { terms })
}

/// One verified property inside a décalage report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl NamedCheck {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        NamedCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Outcome of [`decalage_check`]: the induced filtration with its verified
/// properties and the precision cut-off.
#[derive(Debug, Clone)]
pub struct DecalageReport {
    /// The ambient-series level the subgroup was generated in.
    pub k: usize,
    /// Number of filtration terms representable at this precision; the
    /// filtration `G'_[n]` is computed for `1 <= n <= cutoff`.
    pub cutoff: usize,
    /// Orders of the computed terms.
    pub level_orders: Vec<usize>,
    /// Individual verdicts.
    pub checks: Vec<NamedCheck>,
    /// Conjunction of all verdicts.
    pub pass: bool,
}

/// An element set with fast membership, not assumed to be a subgroup.
struct RawLevel {
    mats: Vec<PadicMatrix>,
    keys: HashSet<Vec<u8>>,
}

impl RawLevel {
    fn from_intersection(gprime: &FiniteMatrixGroup, term: &FiniteMatrixGroup) -> Self {
        let mats: Vec<PadicMatrix> = gprime.elements().filter(|e| term.contains(e)).collect();
        let keys = mats.iter().map(|m| m.canonical_key()).collect();
        RawLevel { mats, keys }
    }

    fn contains(&self, m: &PadicMatrix) -> bool {
        self.keys.contains(&m.canonical_key())
    }

    fn order(&self) -> usize {
        self.mats.len()
    }
}

fn charge(budget: &mut u64, amount: u64, limits: &EnumerationLimits) -> Result<(), GroupError> {
    *budget += amount;
    if *budget > limits.max_pairwise {
        return Err(GroupError::PairGuard {
            limit: limits.max_pairwise,
            products: *budget,
        });
    }
    Ok(())
}

/// Verify the induced filtration `G'_[n] = G' ∩ G_{n+k-1}` of a subgroup
/// generated in level `k` of an ambient p-central series.
///
/// Every property is re-established exhaustively: each term is a subgroup,
/// normal in `G'`; each successive quotient is elementary abelian with `G'`
/// acting trivially by conjugation; and the final representable term is
/// trivial. Failures are reported per named check rather than as errors, so
/// corrupted inputs yield a structured diagnosis.
pub fn decalage_check(
    gprime: &FiniteMatrixGroup,
    ambient_series: &CentralSeries,
    k: usize,
    limits: &EnumerationLimits,
) -> Result<DecalageReport, GroupError> {
    if k < 1 || k > ambient_series.len() {
        return Err(GroupError::Containment { level: k });
    }
    let anchor = ambient_series.term(k).expect("k in range");
    if !gprime.is_subgroup_of(anchor) {
        return Err(GroupError::Containment { level: k });
    }
    let cutoff = ambient_series.len() - k + 1;
    let levels: Vec<RawLevel> = (1..=cutoff)
        .map(|n| {
            RawLevel::from_intersection(
                gprime,
                ambient_series.term(n + k - 1).expect("n + k - 1 in range"),
            )
        })
        .collect();
    let level_orders: Vec<usize> = levels.iter().map(RawLevel::order).collect();

    let mut checks: Vec<NamedCheck> = Vec::new();
    let mut budget = 0u64;
    let gprime_gens = gprime.generators();

    for (idx, level) in levels.iter().enumerate() {
        let n = idx + 1;
        let sz = level.order() as u64;

        // Subgroup: identity, closure under products (inverses follow in a
        // finite set closed under multiplication).
        charge(&mut budget, sz * sz, limits)?;
        let has_identity = level.contains(&PadicMatrix::identity(gprime.context(), gprime.dim()));
        let mut closed = has_identity;
        'closure: for a in &level.mats {
            for b in &level.mats {
                if !level.contains(&a.mul(b)?) {
                    closed = false;
                    break 'closure;
                }
            }
        }
        checks.push(NamedCheck::new(
            format!("level {n} is a subgroup"),
            closed,
            format!("order {}", level.order()),
        ));

        // Normal in G': conjugation by the generators of G' stays inside.
        charge(&mut budget, gprime_gens.len() as u64 * sz, limits)?;
        let mut normal = true;
        'normality: for g in gprime_gens {
            let g_inv = g.inverse()?;
            for x in &level.mats {
                if !level.contains(&g.mul(x)?.mul(&g_inv)?) {
                    normal = false;
                    break 'normality;
                }
            }
        }
        checks.push(NamedCheck::new(
            format!("level {n} is normal in the subgroup"),
            normal,
            String::new(),
        ));

        if n < cutoff {
            let next = &levels[idx + 1];

            // Elementary abelian quotient: p-th powers and commutators of
            // level-n elements land in level n+1. Inverses are precomputed
            // once so the pairwise pass is pure multiplication.
            charge(&mut budget, sz * sz + sz, limits)?;
            let p = gprime.context().p();
            let inverses: Vec<PadicMatrix> = level
                .mats
                .iter()
                .map(|m| m.inverse())
                .collect::<Result<_, _>>()?;
            let mut elementary = true;
            'elementary: for (a, a_inv) in level.mats.iter().zip(&inverses) {
                if !next.contains(&a.pow(p)) {
                    elementary = false;
                    break 'elementary;
                }
                for (b, b_inv) in level.mats.iter().zip(&inverses) {
                    let comm = a.mul(b)?.mul(a_inv)?.mul(b_inv)?;
                    if !next.contains(&comm) {
                        elementary = false;
                        break 'elementary;
                    }
                }
            }
            checks.push(NamedCheck::new(
                format!("quotient {n}/{} is elementary abelian", n + 1),
                elementary,
                format!("orders {} / {}", level.order(), next.order()),
            ));

            // Trivial conjugation action of G' on the quotient:
            // x^{-1} g x g^{-1} lands in level n+1 for generators g.
            charge(&mut budget, gprime_gens.len() as u64 * sz, limits)?;
            let mut trivial_action = true;
            'action: for g in gprime_gens {
                let g_inv = g.inverse()?;
                for x in &level.mats {
                    let moved = x.inverse()?.mul(&g.mul(x)?.mul(&g_inv)?)?;
                    if !next.contains(&moved) {
                        trivial_action = false;
                        break 'action;
                    }
                }
            }
            checks.push(NamedCheck::new(
                format!("subgroup acts trivially on quotient {n}/{}", n + 1),
                trivial_action,
                String::new(),
            ));
        }
    }

    let final_trivial = levels.last().map(RawLevel::order) == Some(1);
    checks.push(NamedCheck::new(
        format!("level {cutoff} (precision floor) is trivial"),
        final_trivial,
        format!(
            "order {}",
            levels.last().map(RawLevel::order).unwrap_or(0)
        ),
    ));

    let pass = checks.iter().all(|c| c.passed);
    Ok(DecalageReport {
        k,
        cutoff,
        level_orders,
        checks,
        pass,
    })
}

/// Finite-level surjectivity criterion: the quotient ranks
/// `d_p(G'/G'_[n])` and `d_p(G'/G'_[n+1])` agree for every computable
/// `n >= 2` of the induced filtration.
pub fn proper_solution_rank_check(
    gprime: &FiniteMatrixGroup,
    ambient_series: &CentralSeries,
    k: usize,
    limits: &EnumerationLimits,
) -> Result<bool, GroupError> {
    if k < 1 || k > ambient_series.len() {
        return Err(GroupError::Containment { level: k });
    }
    let anchor = ambient_series.term(k).expect("k in range");
    if !gprime.is_subgroup_of(anchor) {
        return Err(GroupError::Containment { level: k });
    }
    let cutoff = ambient_series.len() - k + 1;
    let mut subgroups: Vec<FiniteMatrixGroup> = Vec::with_capacity(cutoff);
    for n in 1..=cutoff {
        let raw = RawLevel::from_intersection(
            gprime,
            ambient_series.term(n + k - 1).expect("in range"),
        );
        subgroups.push(FiniteMatrixGroup::from_element_list(
            gprime.context(),
            gprime.dim(),
            raw.mats,
            limits,
        )?);
    }
    for n in 2..cutoff {
        // terms are 1-indexed: subgroups[n-1] is G'_[n]
        let here = quotient_rank(gprime, &subgroups[n - 1], limits)?;
        let deeper = quotient_rank(gprime, &subgroups[n], limits)?;
        if here != deeper {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{congruence_kernel, generated_subgroup, CongruenceLevel};
    use padic_core::PadicContext;

    fn ctx(p: u64, n: u32) -> PadicContext {
        PadicContext::new(p, n).unwrap()
    }

    fn limits() -> EnumerationLimits {
        EnumerationLimits::default()
    }

    fn sl_kernel(p: u64, n: u32, k: u32) -> FiniteMatrixGroup {
        congruence_kernel(
            &ctx(p, n),
            2,
            CongruenceLevel::Special { k },
            &limits(),
        )
        .unwrap()
    }

    #[test]
    fn rank_of_elementary_abelian_kernel() {
        // ker(SL_2(Z/9) -> SL_2(Z/3)) has order 27, exponent 3, and is
        // abelian, so its Frattini subgroup is trivial and the rank is 3.
        let g = sl_kernel(3, 2, 1);
        assert_eq!(g.order(), 27);
        let phi = frattini(&g, &limits()).unwrap();
        assert_eq!(phi.order(), 1);
        assert_eq!(p_rank(&g, &limits()).unwrap(), 3);
    }

    #[test]
    fn rank_of_trivial_group_is_zero() {
        let g = sl_kernel(3, 2, 2);
        assert_eq!(g.order(), 1);
        assert_eq!(p_rank(&g, &limits()).unwrap(), 0);
    }

    #[test]
    fn central_series_of_sl_kernel_matches_congruence_filtration() {
        // At (p, m, N) = (3, 2, 3) the kernel at level 1 has order 3^6 and
        // its series must walk down the congruence levels: 729, 27, 1.
        let g = sl_kernel(3, 3, 1);
        let series = p_central_series(&g, &limits()).unwrap();
        assert_eq!(series.orders(), vec![729, 27, 1]);
        for (i, term) in series.terms().iter().enumerate() {
            let kernel = sl_kernel(3, 3, (i + 1) as u32);
            assert!(term.set_eq(&kernel), "term {} differs", i + 1);
        }
    }

    #[test]
    fn central_series_of_cyclic_p_squared() {
        // I + 3 E12 mod 27 has order 9; the series of the cyclic group of
        // order p^2 has three terms.
        let c = ctx(3, 3);
        let g = PadicMatrix::from_i64s(&c, 2, &[1, 3, 0, 1]).unwrap();
        let grp = generated_subgroup(&c, &[g], &limits()).unwrap();
        assert_eq!(grp.order(), 9);
        let series = p_central_series(&grp, &limits()).unwrap();
        assert_eq!(series.orders(), vec![9, 3, 1]);
        assert!(series.len() >= 3);
    }

    #[test]
    fn series_of_trivial_group_has_one_term() {
        let g = sl_kernel(3, 2, 2);
        let series = p_central_series(&g, &limits()).unwrap();
        assert_eq!(series.orders(), vec![1]);
    }

    #[test]
    fn decalage_degenerates_on_the_full_kernel() {
        let g = sl_kernel(3, 3, 1);
        let series = p_central_series(&g, &limits()).unwrap();
        let report = decalage_check(&g, &series, 1, &limits()).unwrap();
        assert!(report.pass, "{:#?}", report.checks);
        assert_eq!(report.cutoff, 3);
        assert_eq!(report.level_orders, vec![729, 27, 1]);
    }

    #[test]
    fn decalage_rejects_subgroups_outside_the_anchor_level() {
        let g = sl_kernel(3, 3, 1);
        let series = p_central_series(&g, &limits()).unwrap();
        let err = decalage_check(&g, &series, 2, &limits()).unwrap_err();
        assert_eq!(err, GroupError::Containment { level: 2 });
    }

    #[test]
    fn decalage_flags_corrupted_series_terms() {
        // Replace G_2 by a set that is not normal (a non-normal cyclic
        // subgroup of the same order pulled from level 1): the report must
        // fail with named checks rather than erroring out.
        let g = sl_kernel(3, 3, 1);
        let good = p_central_series(&g, &limits()).unwrap();
        let c = ctx(3, 3);
        let rogue_gen = PadicMatrix::from_i64s(&c, 2, &[1, 3, 0, 1]).unwrap();
        let rogue = generated_subgroup(&c, &[rogue_gen], &limits()).unwrap();
        let corrupted = CentralSeries {
            terms: vec![
                good.terms()[0].clone(),
                rogue,
                good.terms()[2].clone(),
            ],
        };
        let report = decalage_check(&g, &corrupted, 1, &limits()).unwrap();
        assert!(!report.pass);
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        assert!(!failed.is_empty());
    }

    #[test]
    fn proper_solution_ranks_for_the_full_kernel() {
        let g = sl_kernel(3, 3, 1);
        let series = p_central_series(&g, &limits()).unwrap();
        assert!(proper_solution_rank_check(&g, &series, 1, &limits()).unwrap());
    }

    #[test]
    fn proper_solution_ranks_for_a_cyclic_group() {
        // Cyclic of order p^2 with its own series: every quotient rank is 1.
        let c = ctx(3, 3);
        let g = PadicMatrix::from_i64s(&c, 2, &[1, 3, 0, 1]).unwrap();
        let grp = generated_subgroup(&c, &[g], &limits()).unwrap();
        let series = p_central_series(&grp, &limits()).unwrap();
        assert!(proper_solution_rank_check(&grp, &series, 1, &limits()).unwrap());
    }

    #[test]
    fn quotient_rank_against_the_frattini_subgroup() {
        // For the cyclic group of order 9, d_p(G) = 1 and d_p(G/G_2) = 1.
        let c = ctx(3, 3);
        let g = PadicMatrix::from_i64s(&c, 2, &[1, 3, 0, 1]).unwrap();
        let grp = generated_subgroup(&c, &[g], &limits()).unwrap();
        assert_eq!(p_rank(&grp, &limits()).unwrap(), 1);
        let series = p_central_series(&grp, &limits()).unwrap();
        assert_eq!(
            quotient_rank(&grp, &series.terms()[1], &limits()).unwrap(),
            1
        );
    }
}
