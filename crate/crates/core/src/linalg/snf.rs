//! Smith normal form over ℤ with unimodular certificates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal in Smith form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithDecomposition {
    /// The diagonal `α_1, …, α_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Number of nonzero diagonal entries, which is the rank of `M` over ℚ.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|a| !a.is_zero()).count()
    }
}

/// Position of the nonzero entry of least absolute value in the submatrix
/// starting at `(t, t)`; ties go to the first in row-major order.
fn smallest_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some(b) if a[b].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Computes the Smith normal form of `m` (any shape) together with the
/// row transform `U` and column transform `V`.
///
/// Pivot rule: smallest nonzero absolute value in the working submatrix,
/// ties broken by row-major position. The output is deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        #[allow(clippy::while_let_loop)]
        'pivot: loop {
            let Some((pi, pj)) = smallest_pivot(&d, t) else {
                break;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut residue = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&pivot);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                residue |= !d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&pivot);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                residue |= !d[(t, j)].is_zero();
            }
            if residue {
                // a remainder smaller than the pivot is now in row or column t
                continue;
            }

            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !d[(i, j)].is_multiple_of(&pivot) {
                        // Pull row i into row t, then reduce again.
                        let one = BigInt::from(1);
                        d.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                        continue 'pivot;
                    }
                }
            }
            if pivot.is_negative() {
                d.negate_col(t);
                v.negate_col(t);
            }
            break;
        }
    }
    SmithDecomposition { u, v, d }
}
