//! Asymptotics of MacMahon's boxed-plane-partition count.

/// `ℓ(u) = u log u`, extended by `ℓ(0) = 0`.
fn ell(u: f64) -> f64 {
    if u == 0.0 {
        0.0
    } else {
        u * u.ln()
    }
}

/// `Ψ(a,b) = lim N⁻² log PL(N, ⌈aN⌉, ⌈bN⌉)`.
pub fn psi(a: f64, b: f64) -> f64 {
    0.25 * (ell(a * a) - ell((a + 1.0).powi(2)) + ell(b * b) - ell((b + 1.0).powi(2))
        - ell((a + b).powi(2))
        + ell((a + b + 1.0).powi(2)))
}

/// `Ψ(λ-1, λ-1)` in the simplified form.
pub fn psi_equal_args(lambda: f64) -> f64 {
    let s = 2.0 * lambda - 1.0;
    let d = lambda - 1.0;
    0.5 * s * s * s.ln() - lambda * lambda * lambda.ln() - d * ell(d) - 2.0 * d * d * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        for b in [0.0, 0.3, 2.0, 7.5] {
            assert_eq!(psi(0.0, b), 0.0);
            assert_eq!(psi(b, 0.0), 0.0);
        }
        let expected = 4.5 * 3f64.ln() - 6.0 * 2f64.ln();
        assert!((psi(1.0, 1.0) - expected).abs() < 1e-14);
        assert!((psi(1.0, 1.0) - 0.784_872).abs() < 1e-6);
        assert!((psi_equal_args(2.0) - expected).abs() < 1e-14);
        assert_eq!(psi_equal_args(1.0), 0.0);
    }

    #[test]
    fn equal_args_agree() {
        for l in [1.1, 1.5, 2.7, 5.0] {
            assert!((psi_equal_args(l) - psi(l - 1.0, l - 1.0)).abs() <= 1e-12);
        }
    }

    #[test]
    fn symmetric_in_arguments() {
        for (a, b) in [(0.2, 1.7), (3.0, 0.5), (1.25, 4.0)] {
            assert!((psi(a, b) - psi(b, a)).abs() < 1e-14);
        }
    }
}
