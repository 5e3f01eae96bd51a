//! Embedded subalgebra chains H in K in G with K = H.S of centralizer type.
//!
//! The two chains with shipped matrix constructions are
//!
//! * the sp-chain: `sp(n) + sp(1)` inside `so(4n)`, where sp(n) acts by left
//!   quaternionic matrices and the commuting sp(1) by right scalar
//!   multiplication, and
//! * the su-chain: `su(m) + u(1)` inside `so(2m)`, where u(1) is the span of
//!   the complex structure.
//!
//! Chains that the source classification handles by citation (triality-
//! twisted spin(7), spin(9), g2) are represented in the catalog but return
//! [`Error::NotRealized`] here.

use nalgebra::{DMatrix, DVector};

use crate::algebra::{
    build_so, build_sp, build_su, commutator, sp1_right_basis, u1_center_basis, AlgebraSpec,
    MatrixLieAlgebra,
};
use crate::config::Tolerances;
use crate::error::{Error, Result};

/// An injective Lie algebra homomorphism given by the images of the source
/// basis in the target's ambient matrix space.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub source: MatrixLieAlgebra,
    pub target: MatrixLieAlgebra,
    pub images: Vec<DMatrix<f64>>,
    /// Max-abs residual of `image([x, y]) - [image(x), image(y)]`.
    pub equivariance_residual: f64,
    /// Max-abs residual of expanding each image in the target basis.
    pub containment_residual: f64,
}

impl Embedding {
    fn verify(source: MatrixLieAlgebra, target: MatrixLieAlgebra, images: Vec<DMatrix<f64>>) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::InvalidParameter(format!(
                "embedding {} -> {}: {} images for {} basis elements",
                source.label(),
                target.label(),
                images.len(),
                source.dim()
            )));
        }
        // independence of the images
        let d = images.len();
        let mut gram = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                gram[(i, j)] = images[i].dot(&images[j]);
            }
        }
        if nalgebra::Cholesky::new(gram).is_none() {
            return Err(Error::LinearlyDependent(format!(
                "images of {} in {}",
                source.label(),
                target.label()
            )));
        }
        // containment in the target algebra
        let mut containment: f64 = 0.0;
        for img in &images {
            let back = target.reconstruct(&target.coordinates(img));
            containment = containment.max((&back - img).amax());
        }
        // bracket equivariance, using the source structure constants
        let mut equivariance: f64 = 0.0;
        for i in 0..d {
            for j in (i + 1)..d {
                let mut expected = commutator(&images[i], &images[j]);
                let coeffs = &source.ad_matrices()[i].column(j);
                for k in 0..d {
                    let c = coeffs[k];
                    if c != 0.0 {
                        expected -= &images[k] * c;
                    }
                }
                equivariance = equivariance.max(expected.amax());
            }
        }
        if equivariance > 1e-10 {
            return Err(Error::ChainInvariantViolated {
                which: format!(
                    "bracket equivariance of {} -> {}",
                    source.label(),
                    target.label()
                ),
                residual: equivariance,
            });
        }
        Ok(Self {
            source,
            target,
            images,
            equivariance_residual: equivariance,
            containment_residual: containment,
        })
    }
}

/// Builds one of the supported standard embeddings:
/// `so(k) < so(m)`, `su(m) < so(2m)`, `u(m) < so(2m)`, `sp(k) < su(2k)`,
/// `sp(n) < so(4n)`. Anything else is not realized.
pub fn embed_standard(source: AlgebraSpec, target: AlgebraSpec) -> Result<Embedding> {
    use AlgebraSpec::*;
    match (source, target) {
        (So(k), So(m)) if k < m => {
            let src = build_so(k)?;
            let tgt = build_so(m)?;
            let images = src
                .basis()
                .iter()
                .map(|x| pad_top_left(x, m))
                .collect();
            Embedding::verify(src, tgt, images)
        }
        (Su(k), So(m)) if m == 2 * k => {
            let src = build_su(k)?;
            let tgt = build_so(m)?;
            let images = src.basis().to_vec();
            Embedding::verify(src, tgt, images)
        }
        (U(k), So(m)) if m == 2 * k => {
            let src = crate::algebra::build_u(k)?;
            let tgt = build_so(m)?;
            let images = src.basis().to_vec();
            Embedding::verify(src, tgt, images)
        }
        (Sp(k), So(m)) if m == 4 * k => {
            let src = build_sp(k)?;
            let tgt = build_so(m)?;
            let images = src.basis().to_vec();
            Embedding::verify(src, tgt, images)
        }
        (Sp(k), Su(m)) if m == 2 * k => {
            let src = build_sp(k)?;
            let tgt = build_su(m)?;
            let images = sp_in_su_images(k);
            Embedding::verify(src, tgt, images)
        }
        _ => Err(Error::NotRealized {
            label: format!("{source} inside {target}"),
        }),
    }
}

fn pad_top_left(x: &DMatrix<f64>, m: usize) -> DMatrix<f64> {
    let k = x.nrows();
    let mut out = DMatrix::zeros(m, m);
    out.view_mut((0, 0), (k, k)).copy_from(x);
    out
}

/// Images of the sp(k) basis inside su(2k), written on the interleaved real
/// coordinates of C^{2k}. A quaternionic entry `q = z + j w` maps to the
/// 2x2 complex block `[[z, -conj(w)], [w, conj(z)]]` at the same position.
fn sp_in_su_images(k: usize) -> Vec<DMatrix<f64>> {
    use crate::algebra::builders::{add_complex_entry, sp_entry_table};
    sp_entry_table(k)
        .into_iter()
        .map(|entries| {
            let mut x = DMatrix::zeros(4 * k, 4 * k);
            for (a, b, q) in entries {
                // q = a0 + a1 i + a2 j + a3 k = z + j w with
                // z = a0 + a1 i and w = a2 - a3 i.
                let (zr, zi) = (q[0], q[1]);
                let (wr, wi) = (q[2], -q[3]);
                add_complex_entry(&mut x, a, b, zr, zi);
                add_complex_entry(&mut x, a, b + k, -wr, wi);
                add_complex_entry(&mut x, a + k, b, wr, wi);
                add_complex_entry(&mut x, a + k, b + k, zr, -zi);
            }
            x
        })
        .collect()
}

/// The triple h in k in g, with k = h + s and s centralizing h, stored as
/// basis sets in g's ambient matrix space.
#[derive(Debug, Clone)]
pub struct SubalgebraChain {
    pub algebra: MatrixLieAlgebra,
    pub h_basis: Vec<DMatrix<f64>>,
    pub s_basis: Vec<DMatrix<f64>>,
    pub k_basis: Vec<DMatrix<f64>>,
    pub label: String,
    /// The family parameter the chain was built from (n for the sp-chain,
    /// m for the su-chain).
    pub param: usize,
}

/// The chain sp(n) in sp(n)+sp(1) in so(4n), n >= 2.
pub fn build_chain_sp(n: usize) -> Result<SubalgebraChain> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "sp-chain requires n >= 2, got {n}"
        )));
    }
    let g = build_so(4 * n)?;
    let h_basis = build_sp(n)?.basis().to_vec();
    let s_basis = sp1_right_basis(n);
    let mut k_basis = h_basis.clone();
    k_basis.extend(s_basis.iter().cloned());
    Ok(SubalgebraChain {
        algebra: g,
        h_basis,
        s_basis,
        k_basis,
        label: format!("sp-chain n={n}: sp({n}) in sp({n})+sp(1) in so({})", 4 * n),
        param: n,
    })
}

/// The chain su(m) in u(m) in so(2m), m >= 2; s is the center of u(m).
pub fn build_chain_su(m: usize) -> Result<SubalgebraChain> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "su-chain requires m >= 2, got {m}"
        )));
    }
    let g = build_so(2 * m)?;
    let h_basis = build_su(m)?.basis().to_vec();
    let s_basis = u1_center_basis(m);
    let mut k_basis = h_basis.clone();
    k_basis.extend(s_basis.iter().cloned());
    Ok(SubalgebraChain {
        algebra: g,
        h_basis,
        s_basis,
        k_basis,
        label: format!("su-chain m={m}: su({m}) in u({m}) in so({})", 2 * m),
        param: m,
    })
}

/// Diagnostics from checking all chain invariants.
#[derive(Debug, Clone)]
pub struct ChainDiagnostics {
    pub h_closure_residual: f64,
    pub s_closure_residual: f64,
    pub k_closure_residual: f64,
    /// Max-abs of `[h_i, s_j]` over all pairs.
    pub centralizer_residual: f64,
    /// Dimension of span(h) intersected with span(s).
    pub intersection_dim: usize,
    pub pass: bool,
    pub violations: Vec<String>,
}

/// Checks bracket closure of h, s and k, the centralizer property
/// `[h, s] = 0`, and the trivial intersection of h and s.
pub fn verify_chain(chain: &SubalgebraChain, tol: &Tolerances) -> ChainDiagnostics {
    let h = subspace_closure_residual(&chain.h_basis);
    let s = subspace_closure_residual(&chain.s_basis);
    let k = subspace_closure_residual(&chain.k_basis);

    let mut centralizer: f64 = 0.0;
    for x in &chain.h_basis {
        for y in &chain.s_basis {
            centralizer = centralizer.max(commutator(x, y).amax());
        }
    }

    let alg = &chain.algebra;
    let stack_rank = |mats: &[&DMatrix<f64>]| -> usize {
        let cols: Vec<DVector<f64>> = mats.iter().map(|m| alg.coordinates(m)).collect();
        let mat = DMatrix::from_columns(&cols);
        mat.rank(tol.rank_rel * mat.amax().max(1.0))
    };
    let all: Vec<&DMatrix<f64>> = chain.h_basis.iter().chain(&chain.s_basis).collect();
    let rank_union = stack_rank(&all);
    let rank_h = stack_rank(&chain.h_basis.iter().collect::<Vec<_>>());
    let rank_s = stack_rank(&chain.s_basis.iter().collect::<Vec<_>>());
    let intersection_dim = rank_h + rank_s - rank_union;

    let mut violations = Vec::new();
    if h > tol.closure {
        violations.push(format!("h not bracket-closed (residual {h:.3e})"));
    }
    if s > tol.closure {
        violations.push(format!("s not bracket-closed (residual {s:.3e})"));
    }
    if k > tol.closure {
        violations.push(format!("k not bracket-closed (residual {k:.3e})"));
    }
    if centralizer > tol.closure {
        violations.push(format!("[h, s] != 0 (residual {centralizer:.3e})"));
    }
    if intersection_dim != 0 {
        violations.push(format!(
            "h and s intersect in dimension {intersection_dim}"
        ));
    }
    ChainDiagnostics {
        h_closure_residual: h,
        s_closure_residual: s,
        k_closure_residual: k,
        centralizer_residual: centralizer,
        intersection_dim,
        pass: violations.is_empty(),
        violations,
    }
}

/// Max residual of brackets of `mats` against the span of `mats`
/// (least squares on the Frobenius Gram matrix).
fn subspace_closure_residual(mats: &[DMatrix<f64>]) -> f64 {
    let d = mats.len();
    if d == 0 {
        return 0.0;
    }
    let mut gram = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            gram[(i, j)] = mats[i].dot(&mats[j]);
        }
    }
    let chol = match nalgebra::Cholesky::new(gram) {
        Some(c) => c,
        None => return f64::INFINITY,
    };
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in (i + 1)..d {
            let w = commutator(&mats[i], &mats[j]);
            let rhs = DVector::from_fn(d, |k, _| mats[k].dot(&w));
            let coeff = chol.solve(&rhs);
            let mut resid = w;
            for k in 0..d {
                if coeff[k] != 0.0 {
                    resid -= &mats[k] * coeff[k];
                }
            }
            worst = worst.max(resid.amax());
        }
    }
    worst
}
