//! Small numerical kernels shared by the asymptotic and equilibrium code.

mod quadrature;

pub use quadrature::{integrate, integrate_complex, Integral};

use num_complex::Complex64;

/// `log(1 + w)` without cancellation for small `|w|`.
pub fn complex_ln_1p(w: Complex64) -> Complex64 {
    let (u, v) = (w.re, w.im);
    if u.abs() > 0.5 || v.abs() > 0.5 {
        return (Complex64::new(1.0, 0.0) + w).ln();
    }
    // |1+w|² - 1 = 2u + u² + v²
    Complex64::new(0.5 * (2.0 * u + u * u + v * v).ln_1p(), v.atan2(1.0 + u))
}
