//! Constructors for the classical compact algebras used by the catalog.
//!
//! All realizations live inside some so(N) and the basis orderings are fixed
//! so that structure-constant arrays reproduce bit-for-bit across runs:
//!
//! * `so(m)`: `E_ab - E_ba` for `a < b`, pairs in lexicographic order.
//! * `sp(n)` inside `so(4n)`: R^{4n} is H^n with real coordinates ordered
//!   `(1, i, j, k)` per quaternionic coordinate. The algebra acts by left
//!   multiplication with anti-Hermitian quaternionic matrices. Basis order:
//!   the diagonal entries `i, j, k` per coordinate, then each pair `a < b`
//!   with entry `1, i, j, k`. Right scalar multiplication by imaginary
//!   quaternions gives the commuting sp(1), see [`sp1_right_basis`].
//! * `su(m)`/`u(m)` inside `so(2m)`: C^m is R^{2m} with interleaved
//!   coordinates `(Re z_a, Im z_a)`. Basis order: all `E_ab - E_ba` (a < b),
//!   then all `i (E_ab + E_ba)` (a < b), then the diagonal elements
//!   `i (E_aa - E_{a+1,a+1})`; `u(m)` appends the central element `i I`.

use nalgebra::DMatrix;

use super::MatrixLieAlgebra;
use crate::error::{Error, Result};

/// Quaternion as `(1, i, j, k)` coefficients.
pub(crate) type Quat = [f64; 4];

pub(crate) const QI: Quat = [0.0, 1.0, 0.0, 0.0];
pub(crate) const QJ: Quat = [0.0, 0.0, 1.0, 0.0];
pub(crate) const QK: Quat = [0.0, 0.0, 0.0, 1.0];
pub(crate) const QONE: Quat = [1.0, 0.0, 0.0, 0.0];

pub(crate) fn quat_mul(p: Quat, q: Quat) -> Quat {
    [
        p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
        p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
        p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
        p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
    ]
}

pub(crate) fn quat_conj(q: Quat) -> Quat {
    [q[0], -q[1], -q[2], -q[3]]
}

fn quat_neg(q: Quat) -> Quat {
    [-q[0], -q[1], -q[2], -q[3]]
}

fn quat_unit(u: usize) -> Quat {
    let mut q = [0.0; 4];
    q[u] = 1.0;
    q
}

/// Adds the 4x4 block of `x -> q * x` at quaternionic position (a, b).
fn add_left_block(mat: &mut DMatrix<f64>, a: usize, b: usize, q: Quat) {
    for u in 0..4 {
        let col = quat_mul(q, quat_unit(u));
        for r in 0..4 {
            if col[r] != 0.0 {
                mat[(4 * a + r, 4 * b + u)] += col[r];
            }
        }
    }
}

/// Adds the 4x4 block of `x -> x * q` at quaternionic position (a, b).
fn add_right_block(mat: &mut DMatrix<f64>, a: usize, b: usize, q: Quat) {
    for u in 0..4 {
        let col = quat_mul(quat_unit(u), q);
        for r in 0..4 {
            if col[r] != 0.0 {
                mat[(4 * a + r, 4 * b + u)] += col[r];
            }
        }
    }
}

/// Adds the complex entry `re + i im` at position (a, b) of a complex matrix
/// realized on interleaved real coordinates.
pub(crate) fn add_complex_entry(mat: &mut DMatrix<f64>, a: usize, b: usize, re: f64, im: f64) {
    mat[(2 * a, 2 * b)] += re;
    mat[(2 * a, 2 * b + 1)] += -im;
    mat[(2 * a + 1, 2 * b)] += im;
    mat[(2 * a + 1, 2 * b + 1)] += re;
}

/// so(m), m >= 3.
pub fn build_so(m: usize) -> Result<MatrixLieAlgebra> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!(
            "so({m}) requires m >= 3"
        )));
    }
    let mut basis = Vec::with_capacity(m * (m - 1) / 2);
    for a in 0..m {
        for b in (a + 1)..m {
            let mut x = DMatrix::zeros(m, m);
            x[(a, b)] = 1.0;
            x[(b, a)] = -1.0;
            basis.push(x);
        }
    }
    MatrixLieAlgebra::from_basis(format!("so({m})"), basis)
}

/// Quaternionic entry description of the sp(n) basis: a list of
/// `(row, col, quaternion)` entries per basis element, in the documented
/// order. Shared by the so(4n) realization and the su(2n) embedding.
pub(crate) fn sp_entry_table(n: usize) -> Vec<Vec<(usize, usize, Quat)>> {
    let mut table = Vec::with_capacity(n * (2 * n + 1));
    for a in 0..n {
        for q in [QI, QJ, QK] {
            table.push(vec![(a, a, q)]);
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            for q in [QONE, QI, QJ, QK] {
                // anti-Hermitian: the (b, a) entry is minus the conjugate
                table.push(vec![(a, b, q), (b, a, quat_neg(quat_conj(q)))]);
            }
        }
    }
    table
}

/// sp(n) realized inside so(4n) by left quaternion-linear action, n >= 1.
pub fn build_sp(n: usize) -> Result<MatrixLieAlgebra> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!(
            "sp({n}) requires n >= 1"
        )));
    }
    let nn = 4 * n;
    let mut basis = Vec::with_capacity(n * (2 * n + 1));
    for entries in sp_entry_table(n) {
        let mut x = DMatrix::zeros(nn, nn);
        for (a, b, q) in entries {
            add_left_block(&mut x, a, b, q);
        }
        basis.push(x);
    }
    MatrixLieAlgebra::from_basis(format!("sp({n})"), basis)
}

/// The commuting sp(1): right scalar multiplication by i, j, k on H^n,
/// realized as three antisymmetric 4n x 4n matrices.
pub fn sp1_right_basis(n: usize) -> Vec<DMatrix<f64>> {
    let nn = 4 * n;
    [QI, QJ, QK]
        .into_iter()
        .map(|q| {
            let mut x = DMatrix::zeros(nn, nn);
            for a in 0..n {
                add_right_block(&mut x, a, a, q);
            }
            x
        })
        .collect()
}

fn su_basis(m: usize) -> Vec<DMatrix<f64>> {
    let nn = 2 * m;
    let mut basis = Vec::with_capacity(m * m - 1);
    for a in 0..m {
        for b in (a + 1)..m {
            let mut x = DMatrix::zeros(nn, nn);
            add_complex_entry(&mut x, a, b, 1.0, 0.0);
            add_complex_entry(&mut x, b, a, -1.0, 0.0);
            basis.push(x);
        }
    }
    for a in 0..m {
        for b in (a + 1)..m {
            let mut x = DMatrix::zeros(nn, nn);
            add_complex_entry(&mut x, a, b, 0.0, 1.0);
            add_complex_entry(&mut x, b, a, 0.0, 1.0);
            basis.push(x);
        }
    }
    for a in 0..(m - 1) {
        let mut x = DMatrix::zeros(nn, nn);
        add_complex_entry(&mut x, a, a, 0.0, 1.0);
        add_complex_entry(&mut x, a + 1, a + 1, 0.0, -1.0);
        basis.push(x);
    }
    basis
}

/// su(m) realized inside so(2m) via the standard complex structure, m >= 2.
pub fn build_su(m: usize) -> Result<MatrixLieAlgebra> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "su({m}) requires m >= 2"
        )));
    }
    MatrixLieAlgebra::from_basis(format!("su({m})"), su_basis(m))
}

/// u(m) = su(m) plus the central element i*I, realized inside so(2m).
pub fn build_u(m: usize) -> Result<MatrixLieAlgebra> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("u({m}) requires m >= 2")));
    }
    let mut basis = su_basis(m);
    basis.push(u1_center_matrix(m));
    MatrixLieAlgebra::from_basis(format!("u({m})"), basis)
}

fn u1_center_matrix(m: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * m, 2 * m);
    for a in 0..m {
        add_complex_entry(&mut j, a, a, 0.0, 1.0);
    }
    j
}

/// The center of u(m): the single element i*I as a 2m x 2m matrix.
pub fn u1_center_basis(m: usize) -> Vec<DMatrix<f64>> {
    vec![u1_center_matrix(m)]
}

/// Symbolic name of a supported classical algebra, e.g. `so(8)` or `sp(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraSpec {
    So(usize),
    Sp(usize),
    Su(usize),
    U(usize),
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<MatrixLieAlgebra> {
        match *self {
            AlgebraSpec::So(m) => build_so(m),
            AlgebraSpec::Sp(n) => build_sp(n),
            AlgebraSpec::Su(m) => build_su(m),
            AlgebraSpec::U(m) => build_u(m),
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            AlgebraSpec::So(m) => m * (m - 1) / 2,
            AlgebraSpec::Sp(n) => n * (2 * n + 1),
            AlgebraSpec::Su(m) => m * m - 1,
            AlgebraSpec::U(m) => m * m,
        }
    }

    /// Ambient real dimension of the shipped realization.
    pub fn ambient(&self) -> usize {
        match *self {
            AlgebraSpec::So(m) => m,
            AlgebraSpec::Sp(n) => 4 * n,
            AlgebraSpec::Su(m) | AlgebraSpec::U(m) => 2 * m,
        }
    }
}

impl std::fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            AlgebraSpec::So(m) => write!(f, "so({m})"),
            AlgebraSpec::Sp(n) => write!(f, "sp({n})"),
            AlgebraSpec::Su(m) => write!(f, "su({m})"),
            AlgebraSpec::U(m) => write!(f, "u({m})"),
        }
    }
}
