use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default finite-difference step `1e−4·(1 + |z|)`.
pub fn default_step(z: Complex64) -> f64 {
    1e-4 * (1.0 + z.norm())
}

/// Central-difference Wirtinger derivatives `(∂f/∂z, ∂f/∂z̄)` at `z`.
///
/// `∂/∂z = ½(∂x − i∂y)` and `∂/∂z̄ = ½(∂x + i∂y)`, each partial taken on the
/// four-point stencil `z ± step`, `z ± i·step`.
pub fn wirtinger<F>(f: F, z: Complex64, step: f64) -> Result<(Complex64, Complex64)>
where
    F: Fn(Complex64) -> Complex64,
{
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {step}")));
    }
    let dx = Complex64::new(step, 0.0);
    let dy = Complex64::new(0.0, step);
    let samples = [f(z + dx), f(z - dx), f(z + dy), f(z - dy)];
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteStencil { at: z });
    }
    let fx = (samples[0] - samples[1]) / (2.0 * step);
    let fy = (samples[2] - samples[3]) / (2.0 * step);
    let i = Complex64::i();
    Ok(((fx - i * fy) * 0.5, (fx + i * fy) * 0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_and_conjugate() {
        let z = c(0.4, -1.3);
        let (dz, dzb) = wirtinger(|w| w, z, default_step(z)).unwrap();
        assert!((dz - c(1.0, 0.0)).norm() < 1e-10 && dzb.norm() < 1e-10);
        let (dz, dzb) = wirtinger(|w| w.conj(), z, default_step(z)).unwrap();
        assert!(dz.norm() < 1e-10 && (dzb - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn modulus_squared_at_one_plus_i() {
        // product rule: ∂(z z̄)/∂z = z̄, ∂(z z̄)/∂z̄ = z
        let z = c(1.0, 1.0);
        let f = |w: Complex64| w * w.conj();
        for step in [1e-3, 1e-4] {
            let (dz, dzb) = wirtinger(f, z, step).unwrap();
            assert!((dz - c(1.0, -1.0)).norm() < 1e-6);
            assert!((dzb - c(1.0, 1.0)).norm() < 1e-6);
        }
    }

    #[test]
    fn halving_the_step_changes_little() {
        let f = |w: Complex64| w.exp() * w.conj() + (w * w).sin();
        let z = c(0.3, 0.2);
        let (a, b) = wirtinger(f, z, 1e-4).unwrap();
        let (a2, b2) = wirtinger(f, z, 5e-5).unwrap();
        assert!((a - a2).norm() < 1e-7 && (b - b2).norm() < 1e-7);
    }

    #[test]
    fn nonfinite_stencil() {
        let err = wirtinger(|w| 1.0 / (w - c(1e-5, 0.0)), c(0.0, 0.0), 1e-5).unwrap_err();
        assert!(matches!(err, Error::NonFiniteStencil { .. }));
    }
}
