//! Curvature of diagonal invariant metrics from structure constants.
//!
//! For the adapted B-orthonormal frame of `m = m1 + m2` this module
//! brute-forces the triple coefficients
//! `[i,j,k] = sum B([e_a, e_b], e_c)^2` (indices running over the frames of
//! the named summands), evaluates the scalar curvature of the diagonal
//! metric `x1 B|_m1 + x2 B|_m2` along two independent routes, and computes
//! the full Ricci tensor in a metric-orthonormal frame.
//!
//! The Ricci computation is the certification oracle for "Einstein": it is
//! assembled purely from structure constants of the adapted frame and never
//! touches the critical-point polynomial it is used to referee. For a
//! metric-orthonormal frame `f_a` it evaluates
//!
//! ```text
//! Ric(f_a, f_b) = -1/2 sum_i <[f_a, f_i]_m, [f_b, f_i]_m>
//!               + 1/2 B(f_a, f_b)
//!               + 1/4 sum_{i,j} <[f_i, f_j]_m, f_a> <[f_i, f_j]_m, f_b>
//! ```
//!
//! whose trace reproduces the scalar curvature sum exactly.

use nalgebra::DMatrix;

use crate::algebra::{commutator, gram_schmidt, killing_form, MatrixLieAlgebra, OrthonormalFrame};
use crate::decomp::OrthoDecomposition;
use crate::error::{Error, Result};
use crate::numeric::KahanSum;

/// Symmetric triple coefficients of a two-summand decomposition.
#[derive(Debug, Clone, Copy)]
pub struct TripleTensor {
    pub d1: usize,
    pub d2: usize,
    /// `v[i][j][k]` holds `[i+1, j+1, k+1]`.
    v: [[[f64; 2]; 2]; 2],
    /// Max deviation from total symmetry among the computed values.
    pub symmetry_residual: f64,
}

impl TripleTensor {
    /// Builds a tensor from the three independent values (everything else
    /// fixed by symmetry, with `[1,1,2] = 0`).
    pub fn from_values(d1: usize, d2: usize, t111: f64, t122: f64, t222: f64) -> Self {
        let mut v = [[[0.0; 2]; 2]; 2];
        v[0][0][0] = t111;
        v[1][1][1] = t222;
        for (i, j, k) in [(0, 1, 1), (1, 0, 1), (1, 1, 0)] {
            v[i][j][k] = t122;
        }
        Self {
            d1,
            d2,
            v,
            symmetry_residual: 0.0,
        }
    }

    /// `[i, j, k]` with 1-based module indices.
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.v[i - 1][j - 1][k - 1]
    }

    pub fn t111(&self) -> f64 {
        self.get(1, 1, 1)
    }

    pub fn t112(&self) -> f64 {
        self.get(1, 1, 2)
    }

    pub fn t122(&self) -> f64 {
        self.get(1, 2, 2)
    }

    pub fn t222(&self) -> f64 {
        self.get(2, 2, 2)
    }
}

/// Brute-force triple sum over the adapted frame.
pub fn triple_coefficients(decomp: &OrthoDecomposition) -> TripleTensor {
    let d = decomp.m_frame().len();
    let table = decomp.bracket_table();
    let mut acc = [[[KahanSum::new(); 2]; 2]; 2];
    for a in 0..d {
        let ma = (decomp.module_of(a) - 1) as usize;
        for b in 0..d {
            if a == b {
                continue;
            }
            let mb = (decomp.module_of(b) - 1) as usize;
            let w = &table[decomp.pair_index(a.min(b), a.max(b))];
            for gamma in 0..d {
                let mg = (decomp.module_of(gamma) - 1) as usize;
                let val = w[gamma];
                acc[ma][mb][mg].add(val * val);
            }
        }
    }
    let mut v = [[[0.0; 2]; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                v[i][j][k] = acc[i][j][k].value();
            }
        }
    }
    // total symmetry: compare all permutations of each index multiset
    let mut sym: f64 = 0.0;
    for (i, j, k) in [(0, 0, 1), (0, 1, 1)] {
        let perms = [(i, j, k), (j, k, i), (k, i, j), (j, i, k), (i, k, j), (k, j, i)];
        for (a, b, c) in perms {
            sym = sym.max((v[a][b][c] - v[i][j][k]).abs());
        }
    }
    TripleTensor {
        d1: decomp.d1(),
        d2: decomp.d2(),
        v,
        symmetry_residual: sym,
    }
}

/// A diagonal invariant metric `x1 B|_m1 + x2 B|_m2`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct InvariantMetric {
    pub x1: f64,
    pub x2: f64,
}

impl InvariantMetric {
    pub fn new(x1: f64, x2: f64) -> Result<Self> {
        for v in [x1, x2] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::NonPositiveMetric(v));
            }
        }
        Ok(Self { x1, x2 })
    }

    fn weight(&self, module: u8) -> f64 {
        match module {
            1 => self.x1,
            _ => self.x2,
        }
    }
}

/// Scalar curvature of the diagonal metric, brute-forced directly from the
/// orthonormal-frame sum (no triple coefficients involved):
/// `S = 1/2 sum_a B(f_a, f_a) - 1/4 sum_{a,b} |[f_a, f_b]_m|^2` over a
/// metric-orthonormal frame `f`.
pub fn scalar_curvature(decomp: &OrthoDecomposition, metric: InvariantMetric) -> f64 {
    let d = decomp.m_frame().len();
    let table = decomp.bracket_table();
    let mut s = KahanSum::new();
    for a in 0..d {
        s.add(0.5 / metric.weight(decomp.module_of(a)));
    }
    let mut quad = KahanSum::new();
    for a in 0..d {
        let xa = metric.weight(decomp.module_of(a));
        for b in (a + 1)..d {
            let xb = metric.weight(decomp.module_of(b));
            let w = &table[decomp.pair_index(a, b)];
            let mut norm2 = 0.0;
            for gamma in 0..d {
                norm2 += metric.weight(decomp.module_of(gamma)) * w[gamma] * w[gamma];
            }
            // both orders (a,b) and (b,a) contribute
            quad.add(2.0 * norm2 / (xa * xb));
        }
    }
    s.add(-0.25 * quad.value());
    s.value()
}

/// Scalar curvature in the closed two-summand form
/// `S = d1/2x1 + d2/2x2 - [1,1,1]/4x1 - [2,2,2]/4x2
///      - [1,2,2]/4 (x1/x2^2 + 2/x1)`.
pub fn scalar_curvature_two_summand(
    triples: &TripleTensor,
    x1: f64,
    x2: f64,
) -> Result<f64> {
    let m = InvariantMetric::new(x1, x2)?;
    let (x1, x2) = (m.x1, m.x2);
    let d1 = triples.d1 as f64;
    let d2 = triples.d2 as f64;
    Ok(d1 / (2.0 * x1) + d2 / (2.0 * x2)
        - triples.t111() / (4.0 * x1)
        - triples.t222() / (4.0 * x2)
        - triples.t122() / 4.0 * (x1 / (x2 * x2) + 2.0 / x1))
}

/// Per-basis-index sums over a B-orthonormal frame of a compact semisimple
/// algebra: `sum_{j,k} B([e_i,e_j],e_k)^2` and
/// `sum_j B([e_i,e_j],[e_i,e_j])`. Both equal `B(e_i, e_i) = 1`.
pub fn bracket_norm_sums(algebra: &MatrixLieAlgebra) -> Result<Vec<(f64, f64)>> {
    let b = killing_form(algebra)?;
    let coords: Vec<_> = algebra
        .basis()
        .iter()
        .map(|m| algebra.coordinates(m))
        .collect();
    let on = gram_schmidt(&coords, &b, 1e-10)?;
    let frame = OrthonormalFrame::new(algebra, &b, on);
    let d = frame.len();
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let mut s1 = KahanSum::new();
        let mut s2 = KahanSum::new();
        for j in 0..d {
            if i == j {
                continue;
            }
            let w = algebra.coordinates(&commutator(&frame.mats()[i], &frame.mats()[j]));
            for k in 0..d {
                let c = frame.b_coord(&w, k);
                s1.add(c * c);
            }
            s2.add(b.eval(&w, &w));
        }
        out.push((s1.value(), s2.value()));
    }
    Ok(out)
}

/// Ricci tensor of a diagonal invariant metric on the metric-orthonormal
/// adapted frame, with the best-fit Einstein constant.
#[derive(Debug, Clone)]
pub struct RicciData {
    pub ric: DMatrix<f64>,
    pub lambda_hat: f64,
    /// Max-abs deviation of `ric` from `lambda_hat * I`.
    pub residual: f64,
}

impl RicciData {
    /// Fits the Einstein constant by trace averaging and measures the
    /// max-norm deviation from `lambda * I`.
    pub fn from_matrix(ric: DMatrix<f64>) -> Self {
        let d = ric.nrows();
        let lambda_hat = ric.trace() / d as f64;
        let mut residual: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                let target = if a == b { lambda_hat } else { 0.0 };
                residual = residual.max((ric[(a, b)] - target).abs());
            }
        }
        Self {
            ric,
            lambda_hat,
            residual,
        }
    }

    /// Max-abs entry between the m1 and m2 blocks; Ad(K)-invariant metrics
    /// force this to vanish.
    pub fn off_block_residual(&self, decomp: &OrthoDecomposition) -> f64 {
        let d = self.ric.nrows();
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                if decomp.module_of(a) != decomp.module_of(b) {
                    worst = worst.max(self.ric[(a, b)].abs());
                }
            }
        }
        worst
    }
}

/// Independent Ricci oracle, assembled from the bracket table.
pub fn ricci_tensor(decomp: &OrthoDecomposition, metric: InvariantMetric) -> RicciData {
    let d = decomp.m_frame().len();
    let table = decomp.bracket_table();
    let wt: Vec<f64> = (0..d).map(|i| metric.weight(decomp.module_of(i))).collect();
    let sq: Vec<f64> = wt.iter().map(|x| x.sqrt()).collect();

    let mut ric = DMatrix::zeros(d, d);

    // pair term: 1/4 sum_{i<j} 2 v_a v_b sqrt(x_a x_b) / (x_i x_j)
    let mut u: DMatrix<f64> = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in (i + 1)..d {
            let v = &table[decomp.pair_index(i, j)];
            let coeff = 2.0 / (wt[i] * wt[j]);
            for a in 0..d {
                let va = v[a];
                if va == 0.0 {
                    continue;
                }
                for b in 0..d {
                    u[(a, b)] += coeff * va * v[b];
                }
            }
        }
    }
    for a in 0..d {
        for b in 0..d {
            ric[(a, b)] += 0.25 * sq[a] * sq[b] * u[(a, b)];
        }
    }

    // sum over the frame: -1/2 <[f_a, f_i]_m, [f_b, f_i]_m>
    // with [e_a, e_i] = sign * table entry of the sorted pair
    for i in 0..d {
        let mut cols: Vec<Option<(&nalgebra::DVector<f64>, f64)>> = Vec::with_capacity(d);
        for a in 0..d {
            if a == i {
                cols.push(None);
            } else if a < i {
                cols.push(Some((&table[decomp.pair_index(a, i)], 1.0)));
            } else {
                cols.push(Some((&table[decomp.pair_index(i, a)], -1.0)));
            }
        }
        for a in 0..d {
            let Some((va, sa)) = cols[a] else { continue };
            for b in a..d {
                let Some((vb, sb)) = cols[b] else { continue };
                let mut dot = 0.0;
                for gamma in 0..d {
                    dot += wt[gamma] * va[gamma] * vb[gamma];
                }
                let term = -0.5 * sa * sb * dot / (wt[i] * sq[a] * sq[b]);
                ric[(a, b)] += term;
                if a != b {
                    ric[(b, a)] += term;
                }
            }
        }
    }

    // Killing term: +1/2 B(f_a, f_b) = 1/2 delta_ab / x_a
    for a in 0..d {
        ric[(a, a)] += 0.5 / wt[a];
    }

    RicciData::from_matrix(ric)
}

/// Best-fit Einstein constant and max-norm residual of a Ricci matrix.
pub fn einstein_residual(ricci: &RicciData) -> (f64, f64) {
    (ricci.lambda_hat, ricci.residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_so, build_sp, build_su};
    use crate::config::Tolerances;
    use crate::decomp::chain_decompose;
    use crate::embed::{build_chain_sp, build_chain_su};
    use crate::numeric::within_rel;
    use once_cell::sync::Lazy;

    static SP2: Lazy<OrthoDecomposition> = Lazy::new(|| {
        chain_decompose(build_chain_sp(2).unwrap(), &Tolerances::default()).unwrap()
    });
    static SP3: Lazy<OrthoDecomposition> = Lazy::new(|| {
        chain_decompose(build_chain_sp(3).unwrap(), &Tolerances::default()).unwrap()
    });
    static SU4: Lazy<OrthoDecomposition> = Lazy::new(|| {
        chain_decompose(build_chain_su(4).unwrap(), &Tolerances::default()).unwrap()
    });

    #[test]
    fn triples_at_n2() {
        // Hand-derived for the sp-chain: [1,1,1] = 3/(n(2n-1)), so 1/2 at
        // n=2; [1,2,2] = 3 - [1,1,1]; [2,2,2] = 0 (symmetric pair).
        let t = triple_coefficients(&SP2);
        assert!(t.symmetry_residual < 1e-9, "{}", t.symmetry_residual);
        assert!(t.t112().abs() < 1e-9);
        assert!(within_rel(t.t111(), 0.5, 1e-8), "t111 = {}", t.t111());
        assert!(within_rel(t.t122(), 2.5, 1e-8), "t122 = {}", t.t122());
        assert!(t.t222().abs() < 1e-8, "t222 = {}", t.t222());
    }

    #[test]
    fn triples_at_n3() {
        let t = triple_coefficients(&SP3);
        assert!(within_rel(t.t111(), 0.2, 1e-8), "t111 = {}", t.t111());
        assert!(within_rel(t.t122(), 2.8, 1e-8), "t122 = {}", t.t122());
        assert!(within_rel(t.t222(), 11.2, 1e-8), "t222 = {}", t.t222());
    }

    #[test]
    fn triples_sum_identity() {
        // [1,1,1] + [1,2,2] = 3 for the sp-chain (d1 = 3 and [h, m1] = 0).
        for d in [&*SP2, &*SP3] {
            let t = triple_coefficients(d);
            assert!(within_rel(t.t111() + t.t122(), 3.0, 1e-9));
        }
    }

    #[test]
    fn su_chain_triples() {
        // d1 = 1 and [m1, m1] = 0 force [1,1,1] = 0 and [1,2,2] = 1; the
        // pair is symmetric, so [2,2,2] = 0.
        let t = triple_coefficients(&SU4);
        assert!(t.t111().abs() < 1e-12);
        assert!(within_rel(t.t122(), 1.0, 1e-9), "t122 = {}", t.t122());
        assert!(t.t222().abs() < 1e-9);
    }

    #[test]
    fn scalar_curvature_routes_agree_on_grid() {
        let t = triple_coefficients(&SP2);
        for &x1 in &[0.2, 0.7, 1.0, 2.4, 5.0] {
            for &x2 in &[0.3, 1.0, 3.1] {
                let brute = scalar_curvature(&SP2, InvariantMetric::new(x1, x2).unwrap());
                let closed = scalar_curvature_two_summand(&t, x1, x2).unwrap();
                assert!(
                    within_rel(brute, closed, 1e-10),
                    "x=({x1},{x2}): {brute} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn scalar_curvature_at_unit_metric() {
        // S(1,1) = (d1+d2)/2 - ([111] + 3[122] + [222])/4 = 7 at n=2.
        let s = scalar_curvature(&SP2, InvariantMetric::new(1.0, 1.0).unwrap());
        assert!(within_rel(s, 7.0, 1e-9), "S(1,1) = {s}");
    }

    #[test]
    fn metric_must_be_positive() {
        assert!(InvariantMetric::new(0.0, 1.0).is_err());
        assert!(InvariantMetric::new(1.0, -2.0).is_err());
        let t = triple_coefficients(&SP2);
        assert!(scalar_curvature_two_summand(&t, -1.0, 1.0).is_err());
    }

    #[test]
    fn bracket_norm_sums_equal_one() {
        for alg in [build_so(7).unwrap(), build_sp(2).unwrap(), build_su(3).unwrap()] {
            let sums = bracket_norm_sums(&alg).unwrap();
            assert_eq!(sums.len(), alg.dim());
            for (i, (s1, s2)) in sums.iter().enumerate() {
                assert!(
                    within_rel(*s1, 1.0, 1e-9),
                    "{} index {i}: quadratic sum {s1}",
                    alg.label()
                );
                assert!(
                    within_rel(*s2, 1.0, 1e-9),
                    "{} index {i}: norm sum {s2}",
                    alg.label()
                );
            }
        }
    }

    #[test]
    fn ricci_trace_matches_scalar_curvature() {
        for &(x1, x2) in &[(1.0, 1.0), (2.0, 1.0), (0.5, 1.7)] {
            let m = InvariantMetric::new(x1, x2).unwrap();
            let r = ricci_tensor(&SP2, m);
            let s = scalar_curvature(&SP2, m);
            assert!(
                within_rel(r.ric.trace(), s, 1e-8),
                "x=({x1},{x2}): trace {} vs S {s}",
                r.ric.trace()
            );
        }
    }

    #[test]
    fn ricci_is_block_diagonal_and_symmetric() {
        let m = InvariantMetric::new(1.3, 0.8).unwrap();
        let r = ricci_tensor(&SP2, m);
        assert!(r.off_block_residual(&SP2) < 1e-8);
        assert!((&r.ric - r.ric.transpose()).amax() < 1e-12);
    }

    #[test]
    fn unit_metric_is_not_einstein() {
        let r = ricci_tensor(&SP2, InvariantMetric::new(1.0, 1.0).unwrap());
        assert!(r.residual > 1e-3, "residual {}", r.residual);
    }

    #[test]
    fn synthetic_einstein_input_has_zero_residual() {
        let data = RicciData::from_matrix(DMatrix::identity(4, 4) * 0.37);
        let (l, res) = einstein_residual(&data);
        assert_eq!(res, 0.0);
        assert!((l - 0.37).abs() < 1e-15);
    }
}
