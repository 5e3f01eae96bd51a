//! B-orthogonal adapted decomposition `g = h + m1 + m2` (with `k = h + m1`)
//! and the representation-theoretic quantities computed from it: Casimir
//! constants, the Killing ratio of the m1 ideal, invariant-form dimensions,
//! and bracket-containment facts.

use nalgebra::{DMatrix, DVector};
use std::sync::OnceLock;

use crate::algebra::{
    commutator, gram_identity_residual, gram_schmidt, gram_schmidt_select, killing_form,
    BilinearForm, MatrixLieAlgebra, OrthonormalFrame,
};
use crate::config::Tolerances;
use crate::embed::{verify_chain, SubalgebraChain};
use crate::error::{Error, Result};
use crate::numeric::psd_rank;

/// Which algebra acts: the enlarged isotropy algebra k = h + m1, or h alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Acting {
    K,
    H,
}

/// Which summand carries the representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    M,
    M1,
    M2,
}

/// Dimensions of a decomposed chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ChainDims {
    pub g: usize,
    pub h: usize,
    pub s: usize,
    pub k: usize,
    pub d1: usize,
    pub d2: usize,
}

/// The B-orthonormal adapted decomposition of a verified chain.
///
/// All frames are orthonormal with respect to the negative Killing form of
/// g, mutually orthogonal, and together span g. Construction fails if any
/// chain invariant or decomposition invariant does not hold.
#[derive(Debug)]
pub struct OrthoDecomposition {
    chain: SubalgebraChain,
    b: BilinearForm,
    h: OrthonormalFrame,
    m1: OrthonormalFrame,
    m2: OrthonormalFrame,
    /// m1 and m2 concatenated; module_of tags each index with 1 or 2.
    m_all: OrthonormalFrame,
    module_of: Vec<u8>,
    gram_residual: f64,
    invariance_residual: f64,
    m1m1_in_k_residual: f64,
    /// B-components on m of all brackets of m-frame pairs, built lazily;
    /// entry pair_index(a, b) with a < b holds coords of `[e_a, e_b]`
    /// projected to m.
    bracket_table: OnceLock<Vec<DVector<f64>>>,
}

/// Builds the adapted decomposition for a chain, verifying the chain first.
pub fn chain_decompose(chain: SubalgebraChain, tol: &Tolerances) -> Result<OrthoDecomposition> {
    let diag = verify_chain(&chain, tol);
    if !diag.pass {
        return Err(Error::ChainInvariantViolated {
            which: diag.violations.join("; "),
            residual: diag
                .centralizer_residual
                .max(diag.k_closure_residual)
                .max(diag.h_closure_residual),
        });
    }
    let alg = &chain.algebra;
    let b = killing_form(alg)?;

    let h_coords: Vec<DVector<f64>> = chain.h_basis.iter().map(|m| alg.coordinates(m)).collect();
    let h_on = gram_schmidt(&h_coords, &b, tol.closure)?;

    // s is B-orthogonal to h by construction; orthonormalize it against h to
    // keep the frame exactly adapted.
    let s_coords: Vec<DVector<f64>> = chain.s_basis.iter().map(|m| alg.coordinates(m)).collect();
    let m1_on = gram_schmidt_select(&s_coords, &h_on, &b, tol.closure);
    if m1_on.len() != chain.s_basis.len() {
        return Err(Error::ComplementRank {
            expected: chain.s_basis.len(),
            found: m1_on.len(),
        });
    }

    let mut k_on = h_on.clone();
    k_on.extend(m1_on.iter().cloned());

    // m2: orthonormal complement of k inside g, carved from the defining
    // basis in its documented deterministic order.
    let candidates: Vec<DVector<f64>> = (0..alg.dim())
        .map(|i| {
            let mut e = DVector::zeros(alg.dim());
            e[i] = 1.0;
            e
        })
        .collect();
    let m2_on = gram_schmidt_select(&candidates, &k_on, &b, tol.closure);
    let d2_expected = alg.dim() - k_on.len();
    if m2_on.len() != d2_expected {
        return Err(Error::ComplementRank {
            expected: d2_expected,
            found: m2_on.len(),
        });
    }

    let mut full = k_on.clone();
    full.extend(m2_on.iter().cloned());
    let gram_residual = gram_identity_residual(&full, &b);
    if gram_residual > 1e-10 {
        return Err(Error::NotOrthonormal {
            residual: gram_residual,
        });
    }

    let h = OrthonormalFrame::new(alg, &b, h_on);
    let m1 = OrthonormalFrame::new(alg, &b, m1_on);
    let m2 = OrthonormalFrame::new(alg, &b, m2_on);
    let m_all = OrthonormalFrame::concat(&[&m1, &m2]);
    let mut module_of = vec![1u8; m1.len()];
    module_of.extend(std::iter::repeat(2u8).take(m2.len()));

    // Ad(H)-invariance of the summands: [h, m_i] stays in m_i.
    let mut invariance: f64 = 0.0;
    for u in h.mats() {
        for (idx, e) in m_all.mats().iter().enumerate() {
            let w = alg.coordinates(&commutator(u, e));
            let own = module_of[idx];
            for gamma in 0..m_all.len() {
                if module_of[gamma] != own {
                    invariance = invariance.max(m_all.b_coord(&w, gamma).abs());
                }
            }
            for gamma in 0..h.len() {
                invariance = invariance.max(h.b_coord(&w, gamma).abs());
            }
        }
    }
    if invariance > tol.identity {
        return Err(Error::ChainInvariantViolated {
            which: "Ad(H)-invariance of m1 and m2".into(),
            residual: invariance,
        });
    }

    // [m1, m1] inside k (this is what kills the [1,1,2] coefficient).
    let mut m1m1: f64 = 0.0;
    for i in 0..m1.len() {
        for j in (i + 1)..m1.len() {
            let w = alg.coordinates(&commutator(&m1.mats()[i], &m1.mats()[j]));
            for gamma in 0..m2.len() {
                m1m1 = m1m1.max(m2.b_coord(&w, gamma).abs());
            }
        }
    }

    Ok(OrthoDecomposition {
        chain,
        b,
        h,
        m1,
        m2,
        m_all,
        module_of,
        gram_residual,
        invariance_residual: invariance,
        m1m1_in_k_residual: m1m1,
        bracket_table: OnceLock::new(),
    })
}

impl OrthoDecomposition {
    pub fn chain(&self) -> &SubalgebraChain {
        &self.chain
    }

    pub fn algebra(&self) -> &MatrixLieAlgebra {
        &self.chain.algebra
    }

    pub fn b(&self) -> &BilinearForm {
        &self.b
    }

    pub fn h_frame(&self) -> &OrthonormalFrame {
        &self.h
    }

    pub fn m1_frame(&self) -> &OrthonormalFrame {
        &self.m1
    }

    pub fn m2_frame(&self) -> &OrthonormalFrame {
        &self.m2
    }

    /// The adapted frame of m = m1 + m2 (m1 first).
    pub fn m_frame(&self) -> &OrthonormalFrame {
        &self.m_all
    }

    /// Module index (1 or 2) of a position in the m frame.
    pub fn module_of(&self, idx: usize) -> u8 {
        self.module_of[idx]
    }

    pub fn d1(&self) -> usize {
        self.m1.len()
    }

    pub fn d2(&self) -> usize {
        self.m2.len()
    }

    pub fn dims(&self) -> ChainDims {
        ChainDims {
            g: self.algebra().dim(),
            h: self.h.len(),
            s: self.chain.s_basis.len(),
            k: self.h.len() + self.m1.len(),
            d1: self.d1(),
            d2: self.d2(),
        }
    }

    pub fn gram_residual(&self) -> f64 {
        self.gram_residual
    }

    pub fn invariance_residual(&self) -> f64 {
        self.invariance_residual
    }

    pub fn m1m1_in_k_residual(&self) -> f64 {
        self.m1m1_in_k_residual
    }

    fn acting_frame(&self, acting: Acting) -> OrthonormalFrame {
        match acting {
            Acting::K => OrthonormalFrame::concat(&[&self.h, &self.m1]),
            Acting::H => self.h.clone(),
        }
    }

    fn space_frame(&self, space: Space) -> &OrthonormalFrame {
        match space {
            Space::M => &self.m_all,
            Space::M1 => &self.m1,
            Space::M2 => &self.m2,
        }
    }

    /// Matrices of the projected adjoint action of the acting frame on a
    /// summand: `A_u[(gamma, delta)] = B([u, e_delta], e_gamma)`.
    pub fn action_matrices(&self, acting: Acting, space: Space) -> Vec<DMatrix<f64>> {
        let act = self.acting_frame(acting);
        let v = self.space_frame(space);
        let alg = self.algebra();
        act.mats()
            .iter()
            .map(|u| {
                let mut a = DMatrix::zeros(v.len(), v.len());
                for delta in 0..v.len() {
                    let w = alg.coordinates(&commutator(u, &v.mats()[delta]));
                    for gamma in 0..v.len() {
                        a[(gamma, delta)] = v.b_coord(&w, gamma);
                    }
                }
                a
            })
            .collect()
    }

    /// Brackets of all m-frame pairs, projected to m in B-coordinates.
    /// Metric-independent, so it is computed once and shared by the
    /// curvature routines.
    pub(crate) fn bracket_table(&self) -> &Vec<DVector<f64>> {
        self.bracket_table.get_or_init(|| {
            let d = self.m_all.len();
            let alg = self.algebra();
            let mut table = Vec::with_capacity(d * (d - 1) / 2);
            for a in 0..d {
                for bidx in (a + 1)..d {
                    let w = alg.coordinates(&commutator(
                        &self.m_all.mats()[a],
                        &self.m_all.mats()[bidx],
                    ));
                    table.push(self.m_all.b_coords(&w));
                }
            }
            table
        })
    }

    /// Index into [`Self::bracket_table`] for a pair `a < b`.
    pub(crate) fn pair_index(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < b);
        let d = self.m_all.len();
        a * d - a * (a + 1) / 2 + (b - a - 1)
    }
}

/// Casimir data of one summand: the scalar part and the deviation of the
/// Casimir matrix from a multiple of the identity.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct CasimirResult {
    pub module_index: u8,
    pub c_star: f64,
    pub off_scalar_residual: f64,
}

/// Casimir operator of the acting algebra on one summand, computed with a
/// single B-orthonormal basis (valid because B restricted to k is positive
/// definite): `C = -sum_u (A_u)^2`. A non-scalar Casimir (reducible module)
/// is reported through the residual, not as an error.
pub fn casimir_on_module(
    decomp: &OrthoDecomposition,
    acting: Acting,
    space: Space,
) -> CasimirResult {
    let actions = decomp.action_matrices(acting, space);
    let d = decomp.space_frame(space).len();
    let mut c = DMatrix::zeros(d, d);
    for a in &actions {
        c -= a * a;
    }
    let c_star = c.trace() / d as f64;
    let mut resid: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let target = if i == j { c_star } else { 0.0 };
            resid = resid.max((c[(i, j)] - target).abs());
        }
    }
    CasimirResult {
        module_index: match space {
            Space::M1 => 1,
            Space::M2 => 2,
            Space::M => 0,
        },
        c_star,
        off_scalar_residual: resid,
    }
}

/// Ratio of the intrinsic negative Killing form of m1, taken as a Lie
/// algebra of its own, to the restriction of B. Requires m1 to be an ideal
/// in k (checked here through the bracket components) and the ratio to be
/// scalar. Returns the ratio and its off-scalar residual.
pub fn killing_ratio(decomp: &OrthoDecomposition, tol: &Tolerances) -> Result<(f64, f64)> {
    let m1 = decomp.m1_frame();
    let d1 = m1.len();
    let alg = decomp.algebra();
    let mut ads = vec![DMatrix::zeros(d1, d1); d1];
    let mut ideal_residual: f64 = 0.0;
    for i in 0..d1 {
        for j in 0..d1 {
            if i == j {
                continue;
            }
            let w = alg.coordinates(&commutator(&m1.mats()[i], &m1.mats()[j]));
            for k in 0..d1 {
                ads[i][(k, j)] = m1.b_coord(&w, k);
            }
            // components outside m1 (on h or m2) would break the ideal property
            for k in 0..decomp.h_frame().len() {
                ideal_residual = ideal_residual.max(decomp.h_frame().b_coord(&w, k).abs());
            }
            for k in 0..decomp.m2_frame().len() {
                ideal_residual = ideal_residual.max(decomp.m2_frame().b_coord(&w, k).abs());
            }
        }
    }
    if ideal_residual > tol.identity {
        return Err(Error::ChainInvariantViolated {
            which: "m1 is not an ideal in k".into(),
            residual: ideal_residual,
        });
    }
    // Intrinsic negative Killing form of m1 on the frame; B restricted to
    // the frame is the identity, so the ratio matrix is the form itself.
    let mut n = DMatrix::zeros(d1, d1);
    for i in 0..d1 {
        for j in i..d1 {
            let v = -(&ads[i] * &ads[j]).trace();
            n[(i, j)] = v;
            n[(j, i)] = v;
        }
    }
    let alpha = n.trace() / d1 as f64;
    let mut resid: f64 = 0.0;
    for i in 0..d1 {
        for j in 0..d1 {
            let target = if i == j { alpha } else { 0.0 };
            resid = resid.max((n[(i, j)] - target).abs());
        }
    }
    if resid > tol.identity * alpha.abs().max(1.0) {
        return Err(Error::NonScalar {
            what: "Killing ratio on m1".into(),
            residual: resid,
        });
    }
    Ok((alpha, resid))
}

/// Dimension of the space of invariant symmetric bilinear forms on a
/// summand, as the null-space dimension of the linear invariance system
/// `A_u^T Q + Q A_u = 0`.
///
/// The null dimension is read off the Gram matrix of the stacked system:
/// its entries come in closed form from the action matrices, and the rank
/// is taken by pivoted Cholesky with relative cutoff `tol.rank_rel`
/// (squared on the Gram side), which matches a singular-value cutoff on the
/// stacked system itself.
pub fn invariant_forms_dim(
    decomp: &OrthoDecomposition,
    acting: Acting,
    space: Space,
    tol: &Tolerances,
) -> usize {
    let actions = decomp.action_matrices(acting, space);
    let d = decomp.space_frame(space).len();
    // symmetric-matrix basis: E_pp, then E_pq + E_qp for p < q
    let mut pairs = Vec::with_capacity(d * (d + 1) / 2);
    for p in 0..d {
        pairs.push((p, p));
    }
    for p in 0..d {
        for q in (p + 1)..d {
            pairs.push((p, q));
        }
    }
    let s = pairs.len();
    let entries = |b: usize| -> ([(usize, usize); 2], usize) {
        let (p, q) = pairs[b];
        if p == q {
            ([(p, p), (p, p)], 1)
        } else {
            ([(p, q), (q, p)], 2)
        }
    };
    let mut t = DMatrix::zeros(s, s);
    for a in &actions {
        let g = a * a;
        // T[b, b'] += <[S_b, A], [S_b', A]>_F
        //           = 2 tr(S_b A S_b' A) - tr(A^2 S_b' S_b) - tr(A^2 S_b S_b')
        for b1 in 0..s {
            let (e1, w1) = entries(b1);
            for b2 in b1..s {
                let (e2, w2) = entries(b2);
                let mut t1 = 0.0;
                let mut t2 = 0.0;
                for &(x, y) in &e1[..w1] {
                    for &(z, w) in &e2[..w2] {
                        t1 += a[(y, z)] * a[(w, x)];
                        if y == z {
                            t2 += g[(w, x)];
                        }
                        if w == x {
                            t2 += g[(y, z)];
                        }
                    }
                }
                t[(b2, b1)] += 2.0 * t1 - t2;
            }
        }
    }
    for b1 in 0..s {
        for b2 in (b1 + 1)..s {
            t[(b1, b2)] = t[(b2, b1)];
        }
    }
    let rank = psd_rank(&mut t, tol.rank_rel);
    s - rank
}

/// Bracket-containment facts with residuals.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct ContainmentReport {
    /// Max m2-component of `[m1, m1]` (zero iff `[m1, m1]` lies in k).
    pub m1m1_in_k_residual: f64,
    pub m1m1_in_k: bool,
    /// Max-abs of `[h, m1]` (zero by the centralizer property).
    pub h_m1_residual: f64,
    pub h_m1_zero: bool,
    /// Max m2-component of `[m2, m2]` (zero iff the pair is symmetric).
    pub m2m2_in_k_residual: f64,
    pub m2m2_in_k: bool,
}

pub fn bracket_containment(decomp: &OrthoDecomposition, tol: &Tolerances) -> ContainmentReport {
    let m1 = decomp.m1_frame();
    let h = decomp.h_frame();

    let mut h_m1: f64 = 0.0;
    for u in h.mats() {
        for e in m1.mats() {
            h_m1 = h_m1.max(commutator(u, e).amax());
        }
    }

    // [m2, m2] components on m2, straight from the bracket table.
    let mut m2m2_max: f64 = 0.0;
    let table = decomp.bracket_table();
    let d = decomp.m_frame().len();
    for a in 0..d {
        for b in (a + 1)..d {
            if decomp.module_of(a) == 2 && decomp.module_of(b) == 2 {
                let w = &table[decomp.pair_index(a, b)];
                for gamma in 0..d {
                    if decomp.module_of(gamma) == 2 {
                        m2m2_max = m2m2_max.max(w[gamma].abs());
                    }
                }
            }
        }
    }
    ContainmentReport {
        m1m1_in_k_residual: decomp.m1m1_in_k_residual(),
        m1m1_in_k: decomp.m1m1_in_k_residual() <= tol.identity,
        h_m1_residual: h_m1,
        h_m1_zero: h_m1 <= tol.identity,
        m2m2_in_k_residual: m2m2_max,
        m2m2_in_k: m2m2_max <= tol.identity,
    }
}
