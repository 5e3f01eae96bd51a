//! Real matrix realizations of compact classical Lie algebras.
//!
//! Every algebra here is a list of antisymmetric `N x N` real matrices,
//! closed under the commutator. The negative Killing form
//! `B(X, Y) = -trace(ad X . ad Y)` is positive definite on the compact
//! semisimple algebras this crate builds, and all downstream computations
//! (orthonormal frames, structure constants, curvature sums) are phrased
//! with respect to B.
//!
//! Construction is eager about verification: a [`MatrixLieAlgebra`] will not
//! come into existence unless its basis is antisymmetric, linearly
//! independent, and bracket-closed to the requested tolerance. The adjoint
//! matrices found while checking closure are kept, since the Killing form
//! and most identity checks are traces over them.

pub(crate) mod builders;

pub use builders::{build_so, build_sp, build_su, build_u, sp1_right_basis, u1_center_basis, AlgebraSpec};

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default max-abs residual for bracket closure, see the type invariant.
pub const CLOSURE_TOL: f64 = 1e-10;

/// Commutator `[a, b] = ab - ba`.
pub fn commutator(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a * b - b * a
}

/// A compact Lie algebra realized by antisymmetric real matrices.
#[derive(Debug, Clone)]
pub struct MatrixLieAlgebra {
    label: String,
    ambient_dim: usize,
    basis: Vec<DMatrix<f64>>,
    /// Nonzero entries of each basis matrix; the bases built here are very
    /// sparse and Frobenius products against them dominate construction.
    sparse_basis: Vec<Vec<(usize, usize, f64)>>,
    frob_chol: Cholesky<f64, Dyn>,
    /// Adjoint matrices in the defining basis: `ad_mats[i][(k, j)]` is the
    /// coefficient of `b_k` in `[b_i, b_j]`.
    ad_mats: Vec<DMatrix<f64>>,
    closure_residual: f64,
}

impl MatrixLieAlgebra {
    /// Builds and verifies an algebra from a spanning set of antisymmetric
    /// matrices. Fails if a matrix is not antisymmetric, the set is linearly
    /// dependent, or a bracket leaves the span by more than `closure_tol`.
    pub fn from_basis_with_tol(
        label: impl Into<String>,
        basis: Vec<DMatrix<f64>>,
        closure_tol: f64,
    ) -> Result<Self> {
        let label = label.into();
        let first = basis
            .first()
            .ok_or_else(|| Error::InvalidParameter(format!("{label}: empty basis")))?;
        let n = first.nrows();
        let dim = basis.len();

        let mut sparse_basis = Vec::with_capacity(dim);
        for (index, b) in basis.iter().enumerate() {
            if b.nrows() != n || b.ncols() != n {
                return Err(Error::InvalidParameter(format!(
                    "{label}: basis matrix {index} is {}x{}, expected {n}x{n}",
                    b.nrows(),
                    b.ncols()
                )));
            }
            let asym = (b + b.transpose()).amax();
            if asym > 1e-12 * b.amax().max(1.0) {
                return Err(Error::NotAntisymmetric {
                    index,
                    residual: asym,
                });
            }
            let mut entries = Vec::new();
            for c in 0..n {
                for r in 0..n {
                    let v = b[(r, c)];
                    if v != 0.0 {
                        entries.push((r, c, v));
                    }
                }
            }
            sparse_basis.push(entries);
        }

        let mut gram = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let v = frob_dot(&sparse_basis[i], &basis[j]);
                gram[(i, j)] = v;
                gram[(j, i)] = v;
            }
        }
        let frob_chol =
            Cholesky::new(gram).ok_or_else(|| Error::LinearlyDependent(label.clone()))?;

        // Expand every bracket in the basis by least squares on the Frobenius
        // Gram matrix; these coefficients are the defining structure
        // constants, stored as adjoint matrices.
        let mut ad_mats = vec![DMatrix::zeros(dim, dim); dim];
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in (i + 1)..dim {
                let w = commutator(&basis[i], &basis[j]);
                let rhs = DVector::from_fn(dim, |k, _| frob_dot(&sparse_basis[k], &w));
                let coeff = frob_chol.solve(&rhs);
                let mut resid = w;
                for k in 0..dim {
                    let c = coeff[k];
                    if c != 0.0 {
                        for &(r, cc, v) in &sparse_basis[k] {
                            resid[(r, cc)] -= c * v;
                        }
                    }
                }
                worst = worst.max(resid.amax());
                for k in 0..dim {
                    ad_mats[i][(k, j)] = coeff[k];
                    ad_mats[j][(k, i)] = -coeff[k];
                }
            }
        }
        if worst > closure_tol {
            return Err(Error::BracketNotClosed {
                label,
                residual: worst,
            });
        }

        Ok(Self {
            label,
            ambient_dim: n,
            basis,
            sparse_basis,
            frob_chol,
            ad_mats,
            closure_residual: worst,
        })
    }

    pub fn from_basis(label: impl Into<String>, basis: Vec<DMatrix<f64>>) -> Result<Self> {
        Self::from_basis_with_tol(label, basis, CLOSURE_TOL)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Ambient matrix size N (elements are N x N).
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DMatrix<f64>] {
        &self.basis
    }

    /// Max-abs residual over all basis brackets expanded in the basis.
    pub fn closure_residual(&self) -> f64 {
        self.closure_residual
    }

    /// Adjoint matrices of the defining basis.
    pub fn ad_matrices(&self) -> &[DMatrix<f64>] {
        &self.ad_mats
    }

    /// Coordinates of an ambient matrix with respect to the defining basis
    /// (least squares via the Frobenius Gram matrix).
    pub fn coordinates(&self, x: &DMatrix<f64>) -> DVector<f64> {
        let rhs = DVector::from_fn(self.dim(), |k, _| frob_dot(&self.sparse_basis[k], x));
        self.frob_chol.solve(&rhs)
    }

    /// Rebuilds the ambient matrix `sum_i coords[i] * b_i`.
    pub fn reconstruct(&self, coords: &DVector<f64>) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.ambient_dim, self.ambient_dim);
        for k in 0..self.dim() {
            let c = coords[k];
            if c != 0.0 {
                for &(r, cc, v) in &self.sparse_basis[k] {
                    m[(r, cc)] += c * v;
                }
            }
        }
        m
    }

    /// Jacobi residual `[[x,y],z] + [[y,z],x] + [[z,x],y]` maximized over all
    /// basis triples. Quadratic-cost diagnostics, intended for tests.
    pub fn jacobi_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let d = self.dim();
        let mut brackets = vec![vec![DMatrix::zeros(self.ambient_dim, self.ambient_dim); d]; d];
        for i in 0..d {
            for j in 0..d {
                brackets[i][j] = commutator(&self.basis[i], &self.basis[j]);
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let s = commutator(&brackets[i][j], &self.basis[k])
                        + commutator(&brackets[j][k], &self.basis[i])
                        + commutator(&brackets[k][i], &self.basis[j]);
                    worst = worst.max(s.amax());
                }
            }
        }
        worst
    }
}

fn frob_dot(sparse: &[(usize, usize, f64)], x: &DMatrix<f64>) -> f64 {
    let mut acc = 0.0;
    for &(r, c, v) in sparse {
        acc += v * x[(r, c)];
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    /// Negative of the Killing form; positive definite on compact
    /// semisimple algebras.
    KillingNegative,
    /// Restriction of an ambient form to a subalgebra or submodule.
    Restriction,
    Custom,
}

/// A symmetric bilinear form given by its matrix of values on a basis.
#[derive(Debug, Clone)]
pub struct BilinearForm {
    pub matrix: DMatrix<f64>,
    pub kind: FormKind,
}

impl BilinearForm {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Evaluates the form on coordinate vectors.
    pub fn eval(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        x.dot(&(&self.matrix * y))
    }

    pub fn is_positive_definite(&self) -> bool {
        Cholesky::new(self.matrix.clone()).is_some()
    }

    pub fn symmetry_residual(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).amax()
    }
}

/// Negative Killing form `B(X, Y) = -trace(ad X . ad Y)` on the defining
/// basis, from the stored adjoint matrices.
///
/// Fails on degenerate input (the ratio of extreme eigenvalues is the
/// detector, cutoff 1e-12) and on forms that are not positive definite,
/// since everything downstream needs B as an inner product.
pub fn killing_form(algebra: &MatrixLieAlgebra) -> Result<BilinearForm> {
    let d = algebra.dim();
    let ads = algebra.ad_matrices();
    let ads_t: Vec<DMatrix<f64>> = ads.iter().map(|a| a.transpose()).collect();
    let mut b = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            // trace(ad_i ad_j) as a Frobenius product against the transpose
            let v = -ads[i].dot(&ads_t[j]);
            b[(i, j)] = v;
            b[(j, i)] = v;
        }
    }
    let eig = b.clone().symmetric_eigenvalues();
    let max_abs = eig.iter().fold(0.0_f64, |m, &x| m.max(x.abs()));
    let min_abs = eig.iter().fold(f64::INFINITY, |m, &x| m.min(x.abs()));
    if max_abs == 0.0 || min_abs < 1e-12 * max_abs {
        return Err(Error::DegenerateForm {
            ratio: if max_abs == 0.0 { 0.0 } else { min_abs / max_abs },
        });
    }
    if eig.iter().any(|&x| x < 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(BilinearForm {
        matrix: b,
        kind: FormKind::KillingNegative,
    })
}

/// Ad-invariance residual of a form: max of `|B([x,y],z) + B(y,[x,z])|`
/// over all basis triples, evaluated through the adjoint matrices.
pub fn ad_invariance_residual(algebra: &MatrixLieAlgebra, form: &BilinearForm) -> f64 {
    let d = algebra.dim();
    let mut worst: f64 = 0.0;
    for i in 0..d {
        let ad = &algebra.ad_matrices()[i];
        // B(ad_i y, z) + B(y, ad_i z) = (ad_i^T K + K ad_i)[y, z]
        let m = ad.transpose() * &form.matrix + &form.matrix * ad;
        worst = worst.max(m.amax());
    }
    worst
}

fn project_out(v: &mut DVector<f64>, done: &[DVector<f64>], form: &BilinearForm) {
    for u in done {
        let c = form.eval(u, v);
        v.axpy(-c, u, 1.0);
    }
}

/// Orthonormalizes coordinate vectors with respect to a positive definite
/// form (modified Gram-Schmidt with one re-orthogonalization pass).
///
/// Fails with [`Error::RankDeficient`] when a pivot norm drops below
/// `pivot_tol` times the largest input norm.
pub fn gram_schmidt(
    vectors: &[DVector<f64>],
    form: &BilinearForm,
    pivot_tol: f64,
) -> Result<Vec<DVector<f64>>> {
    let scale = vectors
        .iter()
        .map(|v| form.eval(v, v).max(0.0).sqrt())
        .fold(0.0_f64, f64::max);
    let cutoff = pivot_tol * scale.max(1.0);
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        project_out(&mut w, &out, form);
        project_out(&mut w, &out, form);
        let norm = form.eval(&w, &w).max(0.0).sqrt();
        if norm <= cutoff {
            return Err(Error::RankDeficient {
                index,
                norm,
                cutoff,
            });
        }
        out.push(w / norm);
    }
    Ok(out)
}

/// Gram-Schmidt that skips dependent vectors instead of failing; used to
/// carve orthonormal complements out of spanning candidate sets.
pub fn gram_schmidt_select(
    vectors: &[DVector<f64>],
    seed: &[DVector<f64>],
    form: &BilinearForm,
    pivot_tol: f64,
) -> Vec<DVector<f64>> {
    let scale = vectors
        .iter()
        .map(|v| form.eval(v, v).max(0.0).sqrt())
        .fold(0.0_f64, f64::max);
    let cutoff = pivot_tol * scale.max(1.0);
    let mut out: Vec<DVector<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        project_out(&mut w, seed, form);
        project_out(&mut w, &out, form);
        project_out(&mut w, seed, form);
        project_out(&mut w, &out, form);
        let norm = form.eval(&w, &w).max(0.0).sqrt();
        if norm > cutoff {
            out.push(w / norm);
        }
    }
    out
}

/// Residual of the Gram matrix of `vectors` against the identity.
pub fn gram_identity_residual(vectors: &[DVector<f64>], form: &BilinearForm) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, u) in vectors.iter().enumerate() {
        for (j, v) in vectors.iter().enumerate() {
            let g = form.eval(u, v);
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g - target).abs());
        }
    }
    worst
}

/// A B-orthonormal basis of a subspace, with the cached data needed for fast
/// inner products: `duals[i] . coords(X)` is `B(X, e_i)`.
#[derive(Debug, Clone)]
pub struct OrthonormalFrame {
    coords: Vec<DVector<f64>>,
    mats: Vec<DMatrix<f64>>,
    duals: Vec<DVector<f64>>,
}

impl OrthonormalFrame {
    pub fn new(
        algebra: &MatrixLieAlgebra,
        form: &BilinearForm,
        coords: Vec<DVector<f64>>,
    ) -> Self {
        let mats = coords.iter().map(|c| algebra.reconstruct(c)).collect();
        let duals = coords.iter().map(|c| &form.matrix * c).collect();
        Self {
            coords,
            mats,
            duals,
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[DVector<f64>] {
        &self.coords
    }

    pub fn mats(&self) -> &[DMatrix<f64>] {
        &self.mats
    }

    /// `B(X, e_i)` for the algebra element with defining coordinates `x`.
    #[inline]
    pub fn b_coord(&self, x: &DVector<f64>, i: usize) -> f64 {
        self.duals[i].dot(x)
    }

    /// All frame components of `x` at once.
    pub fn b_coords(&self, x: &DVector<f64>) -> DVector<f64> {
        DVector::from_fn(self.len(), |i, _| self.b_coord(x, i))
    }

    /// Concatenation of frames (same algebra, same form).
    pub fn concat(frames: &[&OrthonormalFrame]) -> Self {
        let mut coords = Vec::new();
        let mut mats = Vec::new();
        let mut duals = Vec::new();
        for f in frames {
            coords.extend(f.coords.iter().cloned());
            mats.extend(f.mats.iter().cloned());
            duals.extend(f.duals.iter().cloned());
        }
        Self {
            coords,
            mats,
            duals,
        }
    }
}

/// Structure constants `c[i][j][k] = B([e_i, e_j], e_k)` of a B-orthonormal
/// basis, stored flat.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    dim: usize,
    c: Vec<f64>,
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[(i * self.dim + j) * self.dim + k]
    }

    /// Max deviation from total antisymmetry over all index triples and
    /// permutations; near zero exactly when the basis was B-orthonormal on a
    /// compact algebra.
    pub fn total_antisymmetry_residual(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = self.get(i, j, k);
                    worst = worst.max((v + self.get(j, i, k)).abs());
                    worst = worst.max((v + self.get(i, k, j)).abs());
                    worst = worst.max((v - self.get(j, k, i)).abs());
                }
            }
        }
        worst
    }
}

/// Structure constants of a B-orthonormal basis given by coordinate vectors.
/// The basis is re-checked for orthonormality first (residual above 1e-8
/// is rejected).
pub fn structure_constants(
    algebra: &MatrixLieAlgebra,
    form: &BilinearForm,
    basis: &[DVector<f64>],
) -> Result<StructureConstants> {
    let residual = gram_identity_residual(basis, form);
    if residual > 1e-8 {
        return Err(Error::NotOrthonormal { residual });
    }
    let frame = OrthonormalFrame::new(algebra, form, basis.to_vec());
    let d = frame.len();
    let mut c = vec![0.0; d * d * d];
    for i in 0..d {
        for j in (i + 1)..d {
            let w = algebra.coordinates(&commutator(&frame.mats()[i], &frame.mats()[j]));
            for k in 0..d {
                let v = frame.b_coord(&w, k);
                c[(i * d + j) * d + k] = v;
                c[(j * d + i) * d + k] = -v;
            }
        }
    }
    Ok(StructureConstants { dim: d, c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::within_rel;

    fn orthonormal_basis(alg: &MatrixLieAlgebra) -> (BilinearForm, Vec<DVector<f64>>) {
        let b = killing_form(alg).unwrap();
        let coords: Vec<_> = alg.basis().iter().map(|m| alg.coordinates(m)).collect();
        let on = gram_schmidt(&coords, &b, 1e-10).unwrap();
        (b, on)
    }

    #[test]
    fn so_dimensions() {
        assert_eq!(build_so(8).unwrap().dim(), 28);
        assert_eq!(build_so(7).unwrap().dim(), 21);
        assert!(build_so(2).is_err());
    }

    #[test]
    fn so4_closure_is_exact() {
        let so4 = build_so(4).unwrap();
        assert!(so4.closure_residual() < 1e-14);
    }

    #[test]
    fn sp_dimensions_and_antisymmetry() {
        assert_eq!(build_sp(2).unwrap().dim(), 10);
        assert_eq!(build_sp(1).unwrap().dim(), 3);
        let sp3 = build_sp(3).unwrap();
        assert_eq!(sp3.ambient_dim(), 12);
        for m in sp3.basis() {
            assert!((m + m.transpose()).amax() == 0.0);
        }
    }

    #[test]
    fn su_and_u_dimensions() {
        assert_eq!(build_su(3).unwrap().dim(), 8);
        assert_eq!(build_u(4).unwrap().dim(), 16);
        assert!(build_su(4).unwrap().closure_residual() < 1e-12);
    }

    #[test]
    fn killing_matches_trace_form_on_so() {
        // On so(m) the negative Killing form is -(m-2) trace(XY).
        for m in [7usize, 8] {
            let so = build_so(m).unwrap();
            let b = killing_form(&so).unwrap();
            for i in 0..so.dim() {
                for j in i..so.dim() {
                    let closed = -((m as f64) - 2.0)
                        * (&so.basis()[i] * &so.basis()[j]).trace();
                    assert!(
                        within_rel(b.matrix[(i, j)], closed, 1e-9),
                        "so({m}) entry ({i},{j}): {} vs {closed}",
                        b.matrix[(i, j)]
                    );
                }
            }
        }
    }

    #[test]
    fn killing_diagonal_values() {
        // X = E12 - E21 has B(X, X) = 2(m-2).
        let so8 = build_so(8).unwrap();
        let b8 = killing_form(&so8).unwrap();
        assert!(within_rel(b8.matrix[(0, 0)], 12.0, 1e-9));
        let so7 = build_so(7).unwrap();
        let b7 = killing_form(&so7).unwrap();
        assert!(within_rel(b7.matrix[(0, 0)], 10.0, 1e-9));
        assert!(b8.symmetry_residual() == 0.0);
    }

    #[test]
    fn killing_rejects_center() {
        // u(m) has a center, so the ad-trace form is degenerate.
        let u3 = build_u(3).unwrap();
        assert!(matches!(
            killing_form(&u3),
            Err(Error::DegenerateForm { .. })
        ));
    }

    #[test]
    fn killing_is_ad_invariant() {
        for alg in [build_so(5).unwrap(), build_sp(2).unwrap(), build_su(3).unwrap()] {
            let b = killing_form(&alg).unwrap();
            assert!(
                ad_invariance_residual(&alg, &b) < 1e-9 * b.matrix.amax(),
                "{}",
                alg.label()
            );
        }
    }

    #[test]
    fn jacobi_holds_on_all_basis_triples() {
        for alg in [
            build_so(5).unwrap(),
            build_sp(2).unwrap(),
            build_su(3).unwrap(),
        ] {
            assert!(alg.jacobi_residual() < 1e-10, "{}", alg.label());
        }
    }

    #[test]
    fn gram_schmidt_is_idempotent_on_orthonormal_input() {
        let so5 = build_so(5).unwrap();
        let (b, on) = orthonormal_basis(&so5);
        let again = gram_schmidt(&on, &b, 1e-10).unwrap();
        for (u, v) in on.iter().zip(&again) {
            assert!((u - v).amax() < 1e-12);
        }
    }

    #[test]
    fn gram_schmidt_detects_rank_deficiency() {
        let so4 = build_so(4).unwrap();
        let b = killing_form(&so4).unwrap();
        let v1 = so4.coordinates(&so4.basis()[0]);
        let v2 = so4.coordinates(&so4.basis()[1]);
        let dependent = vec![v1.clone(), v2.clone(), &v1 + &v2];
        assert!(matches!(
            gram_schmidt(&dependent, &b, 1e-10),
            Err(Error::RankDeficient { index: 2, .. })
        ));
    }

    #[test]
    fn gram_identity_after_orthonormalization() {
        let sp2 = build_sp(2).unwrap();
        let (b, on) = orthonormal_basis(&sp2);
        assert!(gram_identity_residual(&on, &b) < 1e-10);
    }

    #[test]
    fn so3_structure_constant_magnitude() {
        // B-orthonormal so(3): the single independent constant is 1/sqrt(2).
        let so3 = build_so(3).unwrap();
        let (b, on) = orthonormal_basis(&so3);
        let c = structure_constants(&so3, &b, &on).unwrap();
        assert!(within_rel(c.get(0, 1, 2).abs(), 1.0 / 2.0_f64.sqrt(), 1e-9));
        for i in 0..3 {
            for k in 0..3 {
                assert_eq!(c.get(i, i, k), 0.0);
            }
        }
    }

    #[test]
    fn structure_constants_totally_antisymmetric() {
        for alg in [build_so(5).unwrap(), build_sp(2).unwrap(), build_su(3).unwrap()] {
            let (b, on) = orthonormal_basis(&alg);
            let c = structure_constants(&alg, &b, &on).unwrap();
            assert!(
                c.total_antisymmetry_residual() < 1e-9,
                "{}: {}",
                alg.label(),
                c.total_antisymmetry_residual()
            );
        }
    }

    #[test]
    fn structure_constants_reject_non_orthonormal_basis() {
        let so4 = build_so(4).unwrap();
        let b = killing_form(&so4).unwrap();
        let raw: Vec<_> = so4.basis().iter().map(|m| so4.coordinates(m)).collect();
        assert!(matches!(
            structure_constants(&so4, &b, &raw),
            Err(Error::NotOrthonormal { .. })
        ));
    }

    #[test]
    fn coordinates_round_trip() {
        let sp2 = build_sp(2).unwrap();
        let x = &sp2.basis()[3] * 2.5 - &sp2.basis()[7] * 0.5;
        let c = sp2.coordinates(&x);
        assert!((sp2.reconstruct(&c) - &x).amax() < 1e-12);
    }
}
