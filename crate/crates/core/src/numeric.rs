//! Small numerical helpers: compensated summation, scale-aware comparisons,
//! and a pivoted-Cholesky rank for positive semidefinite Gram matrices.

use nalgebra::DMatrix;

/// Neumaier-compensated accumulator. All brute-force sums in this crate run
/// in a fixed deterministic order; compensation keeps them reproducible at
/// the 1e-10 tolerances used by the identity checks.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Relative deviation with a unit floor: |a-b| / max(|a|, |b|, 1).
///
/// The floor makes comparisons against structurally-zero quantities behave
/// like absolute comparisons, which is what the identity checks want (all
/// quantities in this crate are O(0.01..100)).
#[inline]
pub fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

/// True when `a` and `b` agree to the given relative tolerance (unit floor).
#[inline]
pub fn within_rel(a: f64, b: f64, tol: f64) -> bool {
    rel_dev(a, b) <= tol
}

/// Rank of a symmetric positive semidefinite matrix by diagonally pivoted
/// Cholesky, destroying `a`.
///
/// For a Gram matrix `a = M^T M`, discarding pivots below
/// `rel_cutoff^2 * max_initial_diagonal` matches discarding singular values
/// of `M` below `rel_cutoff` relative to the largest one. Squaring pushes
/// that bound below the roundoff floor of assembling the Gram matrix, so
/// the pivot threshold is additionally floored at `32 n eps * max_diag`;
/// structurally nonzero pivots in the systems handled here sit at least six
/// orders of magnitude above either bound.
pub fn psd_rank(a: &mut DMatrix<f64>, rel_cutoff: f64) -> usize {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let max_diag0 = (0..n).map(|i| a[(i, i)]).fold(0.0_f64, f64::max);
    if max_diag0 <= 0.0 {
        return 0;
    }
    let rel = (rel_cutoff * rel_cutoff).max(32.0 * n as f64 * f64::EPSILON);
    let thresh = rel * max_diag0;
    let mut rank = 0;
    for k in 0..n {
        let mut p = k;
        let mut best = a[(k, k)];
        for i in (k + 1)..n {
            if a[(i, i)] > best {
                best = a[(i, i)];
                p = i;
            }
        }
        if best <= thresh {
            break;
        }
        if p != k {
            a.swap_rows(k, p);
            a.swap_columns(k, p);
        }
        rank += 1;
        let piv = a[(k, k)].sqrt();
        for i in (k + 1)..n {
            a[(i, k)] /= piv;
        }
        // update the whole trailing block; keeping it symmetric is what
        // makes the full row/column pivot swaps above valid
        for j in (k + 1)..n {
            let l_jk = a[(j, k)];
            if l_jk != 0.0 {
                for i in (k + 1)..n {
                    a[(i, j)] -= a[(i, k)] * l_jk;
                }
            }
        }
    }
    rank
}
