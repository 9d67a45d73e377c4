use crate::element::LieElement;
use crate::error::LieError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A Q-linear span of `m x m` matrices in reduced row-echelon form over the
/// `m^2` coordinates. The RREF rows are a canonical basis of the subspace,
/// so equal spans produce identical bases regardless of insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanBasis {
    p: u64,
    dim: usize,
    rows: Vec<Vec<BigRational>>,
}

impl SpanBasis {
    pub fn new(p: u64, dim: usize) -> Self {
        SpanBasis {
            p,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Matrix dimension `m` (vectors have `m^2` coordinates).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rank of the span.
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Canonical RREF rows, each of length `m^2`, ordered by pivot column.
    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    fn pivot_of(row: &[BigRational]) -> Option<usize> {
        row.iter().position(|c| !c.is_zero())
    }

    fn reduce_in_place(&self, v: &mut [BigRational]) {
        for row in &self.rows {
            let pivot = Self::pivot_of(row).expect("stored rows are nonzero");
            if v[pivot].is_zero() {
                continue;
            }
            let factor = v[pivot].clone();
            for (vc, rc) in v.iter_mut().zip(row) {
                *vc -= &factor * rc;
            }
        }
    }

    /// Insert a vector; returns `true` when it enlarged the span.
    pub fn insert_vector(&mut self, mut v: Vec<BigRational>) -> bool {
        assert_eq!(v.len(), self.dim * self.dim, "coordinate count");
        self.reduce_in_place(&mut v);
        let Some(pivot) = Self::pivot_of(&v) else {
            return false;
        };
        let lead = v[pivot].clone();
        for c in v.iter_mut() {
            *c /= &lead;
        }
        // back-substitute to keep all rows fully reduced
        for row in &mut self.rows {
            if row[pivot].is_zero() {
                continue;
            }
            let factor = row[pivot].clone();
            for (rc, vc) in row.iter_mut().zip(&v) {
                *rc -= &factor * vc;
            }
        }
        let at = self
            .rows
            .partition_point(|row| Self::pivot_of(row).unwrap() < pivot);
        self.rows.insert(at, v);
        true
    }

    pub fn insert_element(&mut self, e: &LieElement) -> Result<bool, LieError> {
        if e.p() != self.p || e.dim() != self.dim {
            return Err(LieError::MixedOperands {
                left_p: self.p,
                left_dim: self.dim,
                right_p: e.p(),
                right_dim: e.dim(),
            });
        }
        Ok(self.insert_vector(
            e.entries()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        ))
    }

    /// Does the span contain the element?
    pub fn contains(&self, e: &LieElement) -> bool {
        let mut v: Vec<BigRational> = e
            .entries()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        self.reduce_in_place(&mut v);
        v.iter().all(|c| c.is_zero())
    }

    /// Rows rendered as `num/den` strings (row-major per basis vector), a
    /// stable form for reports and certificates.
    pub fn rows_as_strings(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| {
                        if c.denom() == &BigInt::one() {
                            c.numer().to_string()
                        } else {
                            format!("{}/{}", c.numer(), c.denom())
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Close a generating set under the Lie bracket and return the Q-span.
///
/// New basis representatives are bracketed against every earlier
/// representative in FIFO order until no bracket enlarges the span, so the
/// computation is deterministic. `max_dim` caps the rank as a diagnostic
/// guard; `m^2` is the natural choice, since the closure can never exceed
/// the full matrix algebra.
pub fn bracket_closure(gens: &[LieElement], max_dim: usize) -> Result<SpanBasis, LieError> {
    let Some(first) = gens.first() else {
        // Empty input: the zero span, with no ambient parameters to check.
        return Ok(SpanBasis::new(2, 1));
    };
    let mut basis = SpanBasis::new(first.p(), first.dim());
    let mut reps: Vec<LieElement> = Vec::new();
    for g in gens {
        if basis.insert_element(g)? {
            if basis.dimension() > max_dim {
                return Err(LieError::DimensionCap { cap: max_dim });
            }
            reps.push(g.clone());
        }
    }
    let mut i = 0;
    while i < reps.len() {
        for j in 0..i {
            let b = reps[i].bracket(&reps[j])?;
            if b.is_zero() {
                continue;
            }
            if basis.insert_element(&b)? {
                if basis.dimension() > max_dim {
                    return Err(LieError::DimensionCap { cap: max_dim });
                }
                reps.push(b);
            }
        }
        i += 1;
    }
    Ok(basis)
}
