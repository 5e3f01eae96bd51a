//! Closed-form reference values for the SO(4n)/Sp(n) family, as printed in
//! the source classification. The pipeline recomputes every one of these by
//! brute force and reports the deviations; the reference values are data to
//! compare against, never inputs to a certificate.

use crate::einstein::CriticalPolynomial;

/// Dimension of the sp(1) summand m1.
pub const SP_CHAIN_D1: usize = 3;

/// Dimension of m2: `6n^2 - 3n - 3`.
pub fn sp_chain_d2(n: u32) -> usize {
    let n = n as usize;
    6 * n * n - 3 * n - 3
}

/// Reference Killing ratio `alpha = (n + 1) / (4n - 2)`.
pub fn killing_ratio_reference(n: u32) -> f64 {
    let n = n as f64;
    (n + 1.0) / (4.0 * n - 2.0)
}

/// Reference Casimir constant of m2: `(n^2 + 2) / (4n^2 - 2n)`.
pub fn casimir_reference(n: u32) -> f64 {
    let n = n as f64;
    (n * n + 2.0) / (4.0 * n * n - 2.0 * n)
}

/// Reference triple coefficients
/// `[1,1,1] = (3n + 3)/(4n - 2)`, `[1,2,2] = (9n - 9)/(4n - 2)`,
/// `[2,2,2] = 3 (2n^2 - n - 1)(n^2 - n - 2)/(2n^2 - n)`.
pub fn triples_reference(n: u32) -> (f64, f64, f64) {
    let n = n as f64;
    let t111 = (3.0 * n + 3.0) / (4.0 * n - 2.0);
    let t122 = (9.0 * n - 9.0) / (4.0 * n - 2.0);
    let t222 =
        3.0 * (2.0 * n * n - n - 1.0) * (n * n - n - 2.0) / (2.0 * n * n - n);
    (t111, t122, t222)
}

/// Reference critical-point polynomial in `t = x1/x2`:
/// `3(n-1)(2n^2-n+1) t^2 - 2(2n^2-n-1)(3n^2-n+2)/n t + (n+1)(2n^2-n-1)`.
pub fn final_polynomial_reference(n: u32) -> CriticalPolynomial {
    let n = n as f64;
    CriticalPolynomial {
        a: 3.0 * (n - 1.0) * (2.0 * n * n - n + 1.0),
        b: -2.0 * (2.0 * n * n - n - 1.0) * (3.0 * n * n - n + 2.0) / n,
        c: (n + 1.0) * (2.0 * n * n - n - 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::within_rel;

    #[test]
    fn d2_values() {
        assert_eq!(sp_chain_d2(2), 15);
        assert_eq!(sp_chain_d2(3), 42);
        assert_eq!(sp_chain_d2(4), 81);
    }

    #[test]
    fn reference_values_at_small_n() {
        assert!(within_rel(killing_ratio_reference(2), 0.5, 1e-15));
        assert!(within_rel(killing_ratio_reference(3), 0.4, 1e-15));
        assert!(within_rel(killing_ratio_reference(4), 5.0 / 14.0, 1e-15));
        assert!(within_rel(casimir_reference(2), 0.5, 1e-15));
        assert!(within_rel(casimir_reference(3), 11.0 / 30.0, 1e-15));
        assert!(within_rel(casimir_reference(4), 18.0 / 56.0, 1e-15));
    }

    #[test]
    fn reference_triples_at_small_n() {
        let (a, b, c) = triples_reference(2);
        assert!(within_rel(a, 1.5, 1e-15));
        assert!(within_rel(b, 1.5, 1e-15));
        assert!(c.abs() < 1e-15);
        let (a, b, c) = triples_reference(3);
        assert!(within_rel(a, 1.2, 1e-15));
        assert!(within_rel(b, 1.8, 1e-15));
        assert!(within_rel(c, 11.2, 1e-14));
        let (a, b, c) = triples_reference(4);
        assert!(within_rel(a, 15.0 / 14.0, 1e-15));
        assert!(within_rel(b, 27.0 / 14.0, 1e-15));
        assert!(within_rel(c, 810.0 / 28.0, 1e-14));
    }

    #[test]
    fn reference_polynomial_discriminant_positive_up_to_n5() {
        for n in 2..=5 {
            let p = final_polynomial_reference(n);
            assert!(
                p.discriminant() > 0.0,
                "n={n}: discriminant {}",
                p.discriminant()
            );
            let roots = crate::einstein::solve_positive_roots(&p).unwrap();
            assert_eq!(roots.roots.len(), 2, "n={n}");
        }
    }

    #[test]
    fn reference_polynomial_at_small_n() {
        let p2 = final_polynomial_reference(2);
        assert!(within_rel(p2.a, 21.0, 1e-15));
        assert!(within_rel(p2.b, -60.0, 1e-15));
        assert!(within_rel(p2.c, 15.0, 1e-15));
        let p3 = final_polynomial_reference(3);
        assert!(within_rel(p3.a, 96.0, 1e-15));
        assert!(within_rel(p3.b, -728.0 / 3.0, 1e-14));
        assert!(within_rel(p3.c, 56.0, 1e-15));
    }
}
