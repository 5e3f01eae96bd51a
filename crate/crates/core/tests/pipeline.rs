//! End-to-end integration checks that cut across modules.

use eincert_core::decomp::{casimir_on_module, chain_decompose, Acting, Space};
use eincert_core::einstein::analyze_chain;
use eincert_core::embed::verify_chain;
use eincert_core::numeric::within_rel;
use eincert_core::report::{analyze_single, ChainLabel};
use eincert_core::{
    build_chain_sp, build_chain_su, embed_standard, killing_form, AlgebraSpec, Error, Tolerances,
};

#[test]
fn standard_embedding_surfaces() {
    // every supported pair verifies; everything else reports not realized
    let supported = [
        (AlgebraSpec::So(3), AlgebraSpec::So(6)),
        (AlgebraSpec::Su(2), AlgebraSpec::So(4)),
        (AlgebraSpec::U(3), AlgebraSpec::So(6)),
        (AlgebraSpec::Sp(1), AlgebraSpec::Su(2)),
        (AlgebraSpec::Sp(2), AlgebraSpec::So(8)),
    ];
    for (src, tgt) in supported {
        let e = embed_standard(src, tgt).unwrap();
        assert!(e.equivariance_residual < 1e-10, "{src} in {tgt}");
        assert_eq!(e.images.len(), src.dim());
    }
    assert!(matches!(
        embed_standard(AlgebraSpec::Sp(2), AlgebraSpec::So(9)),
        Err(Error::NotRealized { .. })
    ));
}

#[test]
fn chain_verification_gates_decomposition() {
    let tol = Tolerances::default();
    let mut broken = build_chain_sp(2).unwrap();
    broken.s_basis = broken.h_basis.clone();
    assert!(!verify_chain(&broken, &tol).pass);
    assert!(matches!(
        chain_decompose(broken, &tol),
        Err(Error::ChainInvariantViolated { .. })
    ));
}

#[test]
fn casimir_of_k_on_m1_equals_killing_ratio() {
    // On the sp(1) summand only the sp(1) factor acts, so the Casimir of k
    // reproduces the Killing ratio of m1. Internal cross-check between two
    // independently computed quantities.
    let tol = Tolerances::default();
    for n in [2usize, 3] {
        let d = chain_decompose(build_chain_sp(n).unwrap(), &tol).unwrap();
        let c1 = casimir_on_module(&d, Acting::K, Space::M1);
        let expected = 1.0 / (n as f64 * (2.0 * n as f64 - 1.0));
        assert!(c1.off_scalar_residual < 1e-9);
        assert!(
            within_rel(c1.c_star, expected, 1e-9),
            "n={n}: c1* = {} vs {expected}",
            c1.c_star
        );
    }
}

#[test]
fn b_restricted_to_k_is_positive_definite() {
    for chain in [build_chain_sp(2).unwrap(), build_chain_su(3).unwrap()] {
        let alg = &chain.algebra;
        let b = killing_form(alg).unwrap();
        let coords: Vec<_> = chain.k_basis.iter().map(|m| alg.coordinates(m)).collect();
        let mut gram = nalgebra::DMatrix::zeros(coords.len(), coords.len());
        for i in 0..coords.len() {
            for j in 0..coords.len() {
                gram[(i, j)] = b.eval(&coords[i], &coords[j]);
            }
        }
        assert!(
            nalgebra::Cholesky::new(gram).is_some(),
            "B restricted to k must be positive definite for {}",
            chain.label
        );
    }
}

#[test]
fn sp3_certificates_land_on_polynomial_roots() {
    // The certified parameters are roots of the brute-force polynomial to
    // machine precision.
    let tol = Tolerances::default();
    let analysis = analyze_chain(build_chain_sp(3).unwrap(), &tol).unwrap();
    assert_eq!(analysis.certificates.len(), 2);
    for cert in &analysis.certificates {
        let p = &analysis.polynomial;
        let value = p.eval(cert.t);
        let scale = p.a.abs().max(p.b.abs()).max(p.c.abs());
        assert!(value.abs() < 1e-12 * scale, "p({}) = {value}", cert.t);
    }
    // hand-derived roots of the corrected polynomial at n=3:
    // 134.4 t^2 - 218.4 t + 8.4, i.e. (26 +- sqrt(612))/32
    assert!(within_rel(analysis.certificates[0].t, 0.03941769519668875, 1e-6));
    assert!(within_rel(analysis.certificates[1].t, 1.5855823048033112, 1e-6));
}

#[test]
fn corrected_closed_forms_hold_at_n5() {
    // One parameter beyond the default range, skipping the expensive
    // ansatz gate: the measured quantities must keep following the
    // corrected closed forms alpha = 1/(n(2n-1)), [1,1,1] = 3 alpha,
    // [1,2,2] = 3 - [1,1,1], [2,2,2] = d2 (1 - 2 c2*), with the printed
    // Casimir constant (n^2+2)/(4n^2-2n) confirmed as well.
    let tol = Tolerances::default();
    let n = 5usize;
    let decomp = chain_decompose(build_chain_sp(n).unwrap(), &tol).unwrap();
    assert_eq!((decomp.d1(), decomp.d2()), (3, 132));

    let (alpha, resid) = eincert_core::decomp::killing_ratio(&decomp, &tol).unwrap();
    assert!(resid < 1e-9);
    assert!(within_rel(alpha, 1.0 / 45.0, 1e-9), "alpha = {alpha}");

    let t = eincert_core::curvature::triple_coefficients(&decomp);
    assert!(within_rel(t.t111(), 3.0 / 45.0, 1e-8), "t111 = {}", t.t111());
    assert!(within_rel(t.t122(), 3.0 - 3.0 / 45.0, 1e-8));

    let c2 = casimir_on_module(&decomp, Acting::K, Space::M2);
    assert!(c2.off_scalar_residual < 1e-8);
    assert!(within_rel(c2.c_star, 27.0 / 90.0, 1e-8), "c2* = {}", c2.c_star);
    assert!(within_rel(
        t.t222(),
        132.0 * (1.0 - 2.0 * c2.c_star),
        1e-8
    ));
}

#[test]
fn analyze_single_and_analyze_chain_agree() {
    let tol = Tolerances::default();
    let report = analyze_single(ChainLabel::Sp, 2, &tol).unwrap();
    let analysis = analyze_chain(build_chain_sp(2).unwrap(), &tol).unwrap();
    assert_eq!(report.chains[0].certificates.len(), analysis.certificates.len());
    for (a, b) in report.chains[0]
        .certificates
        .iter()
        .zip(&analysis.certificates)
    {
        assert_eq!(a.t, b.t);
        assert_eq!(a.lambda, b.lambda);
    }
}
