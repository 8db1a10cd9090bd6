//! The Cauchy integral formula, the Cauchy–Pompeiu formula and a holomorphy
//! residual built on them.
//!
//! For a C¹ function on the closure of a bounded domain `Ω`,
//!
//! ```text
//! f(z) = 1/(2πi) ∮_{∂Ω} f(ζ)/(ζ − z) dζ − 1/π ∫∫_Ω (∂f/∂ζ̄)(ζ)/(ζ − z) dA(ζ)
//! ```
//!
//! where the wedge `dζ̄ ∧ dζ = 2i dA` has already been folded into the
//! area term. Boundary pieces are integrated with their stored orientation
//! (outer boundary counterclockwise, holes clockwise).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{contour_integral, singular_area_integral, wirtinger, PlanarDomain, QuadratureSpec};

/// Checks that `z` is inside `d` and further than twice the largest
/// boundary node gap from every boundary polyline.
pub fn check_interior(d: &PlanarDomain, z: Complex64, q: &QuadratureSpec) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::InvalidParameter("evaluation point must be finite".into()));
    }
    let (distance, gap) = d.boundary_clearance(z, q.contour_nodes);
    let threshold = 2.0 * gap;
    if distance <= threshold {
        return Err(Error::PointOnBoundary {
            z,
            distance,
            threshold,
        });
    }
    if !d.contains(z) {
        return Err(Error::PointOutsideDomain);
    }
    Ok(())
}

fn boundary_term<F>(f: &F, d: &PlanarDomain, z: Complex64, q: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for c in d.boundary() {
        acc += contour_integral(|zeta| f(zeta) / (zeta - z), c, q)?;
    }
    Ok(acc / Complex64::new(0.0, 2.0 * PI))
}

/// `1/(2πi) ∮_{∂d} f(ζ)/(ζ − z) dζ`, summed over the outer boundary and holes.
pub fn cauchy_eval<F>(f: F, d: &PlanarDomain, z: Complex64, q: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    q.validate()?;
    check_interior(d, z, q)?;
    boundary_term(&f, d, z, q)
}

/// The two pieces of the Cauchy–Pompeiu formula at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PompeiuTerms {
    /// `1/(2πi) ∮ f(ζ)/(ζ − z) dζ`
    pub boundary: Complex64,
    /// `−1/π ∫∫ (∂f/∂ζ̄)/(ζ − z) dA`
    pub area: Complex64,
}

impl PompeiuTerms {
    pub fn value(&self) -> Complex64 {
        self.boundary + self.area
    }
}

/// Both terms of the Cauchy–Pompeiu formula. When `dbar_f` is `None`,
/// `∂f/∂ζ̄` is taken by central differences with step `h/4`, `h` being the
/// area lattice spacing.
pub fn pompeiu_terms<F>(
    f: F,
    d: &PlanarDomain,
    z: Complex64,
    q: &QuadratureSpec,
    dbar_f: Option<&dyn Fn(Complex64) -> Complex64>,
) -> Result<PompeiuTerms>
where
    F: Fn(Complex64) -> Complex64,
{
    q.validate()?;
    check_interior(d, z, q)?;
    let boundary = boundary_term(&f, d, z, q)?;
    let integral = match dbar_f {
        Some(g) => singular_area_integral(g, z, d, q)?,
        None => {
            let step = d.area_lattice(q.area_resolution).spacing / 4.0;
            // a stencil failure surfaces as a non-finite integrand at that node
            let g = |xi: Complex64| {
                wirtinger(&f, xi, step)
                    .map(|(_, dzbar)| dzbar)
                    .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
            };
            singular_area_integral(g, z, d, q)?
        }
    };
    Ok(PompeiuTerms {
        boundary,
        area: -integral / PI,
    })
}

/// Cauchy–Pompeiu reconstruction of `f(z)` from boundary values and `∂f/∂ζ̄`.
pub fn pompeiu_eval<F>(
    f: F,
    d: &PlanarDomain,
    z: Complex64,
    q: &QuadratureSpec,
    dbar_f: Option<&dyn Fn(Complex64) -> Complex64>,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    pompeiu_terms(f, d, z, q, dbar_f).map(|t| t.value())
}

/// `max |f(z) − cauchy_eval(f, d, z)|` over the sample points.
pub fn holomorphy_residual<F>(
    f: F,
    d: &PlanarDomain,
    sample_points: &[Complex64],
    q: &QuadratureSpec,
) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut worst = 0.0f64;
    for &z in sample_points {
        let direct = f(z);
        if !direct.is_finite() {
            return Err(Error::NonFiniteSample { at: z });
        }
        let reproduced = cauchy_eval(&f, d, z, q)?;
        worst = worst.max((direct - reproduced).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn disc() -> PlanarDomain {
        PlanarDomain::unit_disc(256).unwrap()
    }

    #[test]
    fn constant_and_exponential() {
        let q = QuadratureSpec::default();
        let one = cauchy_eval(|_| c(1.0, 0.0), &disc(), c(0.0, 0.0), &q).unwrap();
        assert!((one - c(1.0, 0.0)).norm() < 1e-12);
        let z = c(0.3, 0.1);
        let v = cauchy_eval(|w: Complex64| w.exp(), &disc(), z, &q).unwrap();
        assert!((v - z.exp()).norm() < 1e-10);
    }

    #[test]
    fn reciprocal_on_annulus_uses_both_contours() {
        let q = QuadratureSpec::default();
        let ann = PlanarDomain::annulus(c(0.0, 0.0), 0.5, 2.0, 256).unwrap();
        let v = cauchy_eval(|w: Complex64| 1.0 / w, &ann, c(1.0, 0.0), &q).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-10);
        // dropping the hole loses the contribution of the pole at 0
        let outer_only = PlanarDomain::disc(c(0.0, 0.0), 2.0, 256).unwrap();
        let wrong = cauchy_eval(|w: Complex64| 1.0 / w, &outer_only, c(1.0, 0.0), &q).unwrap();
        assert!((wrong - c(1.0, 0.0)).norm() > 0.5);
    }

    #[test]
    fn boundary_and_outside_points_rejected() {
        let q = QuadratureSpec::default();
        let err = cauchy_eval(|w| w, &disc(), c(0.99, 0.0), &q).unwrap_err();
        assert!(matches!(err, Error::PointOnBoundary { .. }));
        let err = cauchy_eval(|w| w, &disc(), c(3.0, 0.0), &q).unwrap_err();
        assert_eq!(err, Error::PointOutsideDomain);
        let ann = PlanarDomain::annulus(c(0.0, 0.0), 0.5, 2.0, 256).unwrap();
        assert_eq!(cauchy_eval(|w| w, &ann, c(0.0, 0.0), &q).unwrap_err(), Error::PointOutsideDomain);
    }

    #[test]
    fn pompeiu_conjugate() {
        let q = QuadratureSpec::default();
        let at0 = pompeiu_eval(|w: Complex64| w.conj(), &disc(), c(0.0, 0.0), &q, None).unwrap();
        assert!(at0.norm() < 1e-3);
        let at_half = pompeiu_eval(|w: Complex64| w.conj(), &disc(), c(0.5, 0.0), &q, None).unwrap();
        assert!((at_half - c(0.5, 0.0)).norm() < 1e-2);
    }

    #[test]
    fn pompeiu_holomorphic_area_term_vanishes() {
        let q = QuadratureSpec::default().with_area_resolution(512);
        let z = c(0.3, 0.0);
        let t = pompeiu_terms(|w: Complex64| w.exp(), &disc(), z, &q, None).unwrap();
        assert!(t.area.norm() < 1e-6, "{}", t.area.norm());
        assert!((t.value() - z.exp()).norm() < 1e-6);
        let zero = |_: Complex64| c(0.0, 0.0);
        let exact = pompeiu_terms(|w: Complex64| w.exp(), &disc(), z, &q, Some(&zero)).unwrap();
        assert_eq!(exact.area, c(0.0, 0.0));
        let plain = cauchy_eval(|w: Complex64| w.exp(), &disc(), z, &q).unwrap();
        assert!((exact.value() - plain).norm() <= 1e-6);
    }

    #[test]
    fn residual_examples() {
        let q = QuadratureSpec::default();
        let pts = [c(0.1, 0.2), c(-0.4, 0.3), c(0.5, 0.0)];
        assert!(holomorphy_residual(|w: Complex64| w * w, &disc(), &pts, &q).unwrap() < 1e-10);
        // the boundary data conj ζ = 1/ζ has Cauchy integral 0 inside
        let r = holomorphy_residual(|w: Complex64| w.conj(), &disc(), &pts, &q).unwrap();
        assert!(r >= 0.4 && (r - 0.5).abs() < 1e-10, "{r}");
        assert_eq!(holomorphy_residual(|_| c(0.0, 0.0), &disc(), &pts, &q).unwrap(), 0.0);
    }
}
