//! Exact Gaussian elimination over a prime field.

use num_bigint::BigInt;

use crate::error::LinalgError;
use crate::field::{FieldSpec, FieldVector, PrimeField, Rationals, Scalar};

/// Reduced row echelon form of `rows` in place; returns the pivot columns.
fn row_reduce<S: Scalar>(rows: &mut [Vec<S>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).take(ncols) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `Σ_j x_j · columns[j] = target`. Free unknowns are set to zero,
/// so the returned solution is deterministic. `None` when inconsistent.
pub fn solve_columns<F: PrimeField>(
    field: &F,
    columns: &[Vec<F::Scalar>],
    target: &[F::Scalar],
) -> Result<Option<Vec<F::Scalar>>, LinalgError> {
    let n = target.len();
    for c in columns {
        if c.len() != n {
            return Err(LinalgError::DimensionMismatch {
                expected: n,
                found: c.len(),
            });
        }
    }
    let k = columns.len();
    let mut aug: Vec<Vec<F::Scalar>> = (0..n)
        .map(|i| {
            columns
                .iter()
                .map(|c| c[i].clone())
                .chain(std::iter::once(target[i].clone()))
                .collect()
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.last() == Some(&k) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); k];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][k].clone();
    }
    Ok(Some(x))
}

/// Rank of the matrix whose rows are `rows`.
pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

pub(crate) fn embed<F: PrimeField>(field: &F, v: &[BigInt]) -> Vec<F::Scalar> {
    v.iter().map(|x| field.from_integer(x)).collect()
}

/// Coefficients `k` with `Σ k_i · vectors[i] = target` over the prime field,
/// or `None` when `target` is outside the span.
pub fn span_membership<F: PrimeField>(
    field: &F,
    vectors: &[Vec<BigInt>],
    target: &[BigInt],
) -> Result<Option<Vec<F::Scalar>>, LinalgError> {
    let cols: Vec<_> = vectors.iter().map(|v| embed(field, v)).collect();
    solve_columns(field, &cols, &embed(field, target))
}

/// Evidence that a target vector lies outside a span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonMembership {
    /// Rank of the spanning vectors.
    pub rank: usize,
    /// Rank after adjoining the target (always `rank + 1`).
    pub augmented_rank: usize,
    /// A functional `y` with `y · v = 0` on every spanning vector and
    /// `y · target = 1`.
    pub separator: FieldVector,
}

/// [`span_membership`] for a runtime-selected characteristic.
pub fn span_membership_in(
    spec: FieldSpec,
    vectors: &[Vec<BigInt>],
    target: &[BigInt],
) -> Result<Option<FieldVector>, LinalgError> {
    Ok(match spec.gf() {
        None => span_membership(&Rationals, vectors, target)?.map(FieldVector::Rational),
        Some(gf) => span_membership(&gf, vectors, target)?.map(|residues| FieldVector::Modular {
            modulus: gf.modulus(),
            residues,
        }),
    })
}

/// Rank, augmented rank and separating functional.
type Separation<S> = (usize, usize, Vec<S>);

fn separator<F: PrimeField>(
    field: &F,
    vectors: &[Vec<BigInt>],
    target: &[BigInt],
) -> Result<Option<Separation<F::Scalar>>, LinalgError> {
    let n = target.len();
    let mut rows: Vec<Vec<F::Scalar>> = vectors.iter().map(|v| embed(field, v)).collect();
    for r in &rows {
        if r.len() != n {
            return Err(LinalgError::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
    }
    let r0 = rank(&rows);
    rows.push(embed(field, target));
    let r1 = rank(&rows);
    // Unknown y ∈ F^n; one equation per row: row · y = 0, target · y = 1.
    let columns: Vec<Vec<F::Scalar>> = (0..n)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    let mut rhs = vec![field.zero(); rows.len()];
    *rhs.last_mut().expect("target row") = field.one();
    Ok(solve_columns(field, &columns, &rhs)?.map(|y| (r0, r1, y)))
}

/// Certificate of non-membership, `None` when `target` is in the span.
pub fn non_membership_certificate(
    spec: FieldSpec,
    vectors: &[Vec<BigInt>],
    target: &[BigInt],
) -> Result<Option<NonMembership>, LinalgError> {
    Ok(match spec.gf() {
        None => {
            separator(&Rationals, vectors, target)?.map(|(rank, augmented_rank, y)| NonMembership {
                rank,
                augmented_rank,
                separator: FieldVector::Rational(y),
            })
        }
        Some(gf) => {
            separator(&gf, vectors, target)?.map(|(rank, augmented_rank, y)| NonMembership {
                rank,
                augmented_rank,
                separator: FieldVector::Modular {
                    modulus: gf.modulus(),
                    residues: y,
                },
            })
        }
    })
}
