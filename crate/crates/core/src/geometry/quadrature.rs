use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::contour::Contour;
use super::domain::PlanarDomain;
use crate::error::{Error, Result};

/// Resolution knobs shared by the quadrature engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub contour_nodes: usize,
    pub area_resolution: usize,
    pub singular_radial_nodes: usize,
    pub singular_angular_nodes: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            contour_nodes: 256,
            area_resolution: 256,
            singular_radial_nodes: 16,
            singular_angular_nodes: 32,
        }
    }
}

impl QuadratureSpec {
    pub fn new(
        contour_nodes: usize,
        area_resolution: usize,
        singular_radial_nodes: usize,
        singular_angular_nodes: usize,
    ) -> Result<Self> {
        let q = QuadratureSpec {
            contour_nodes,
            area_resolution,
            singular_radial_nodes,
            singular_angular_nodes,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn with_contour_nodes(mut self, n: usize) -> Self {
        self.contour_nodes = n;
        self
    }

    pub fn with_area_resolution(mut self, n: usize) -> Self {
        self.area_resolution = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let counts = [
            self.contour_nodes,
            self.area_resolution,
            self.singular_radial_nodes,
            self.singular_angular_nodes,
        ];
        if counts.iter().any(|&c| c < 4) {
            return Err(Error::InvalidParameter(format!(
                "all quadrature counts must be >= 4: {self:?}"
            )));
        }
        Ok(())
    }
}

/// Radius of the polar patch around a singular point, in lattice cells.
pub const PATCH_RADIUS_CELLS: f64 = 8.0;

/// Smooth radial partition of unity splitting a singular integral between
/// the polar patch and the lattice: `χ(s) = exp(2e^{−1/s}/(s − 1))` on
/// `0 < s < 1`, equal to 1 at the pole and 0 from the patch radius on, with
/// every derivative vanishing at both ends. The patch integrates `χ·g/(ξ−p)`
/// and the lattice the remaining `(1 − χ)·g/(ξ−p)`, which is smooth.
pub(crate) fn patch_blend(s: f64) -> f64 {
    if s <= 0.0 {
        1.0
    } else if s >= 1.0 {
        0.0
    } else {
        (2.0 * (-1.0 / s).exp() / (s - 1.0)).exp()
    }
}

/// Lattice weight `1 − χ` for a node `distance_cells` cells from the pole.
pub(crate) fn lattice_share(distance_cells: f64) -> f64 {
    1.0 - patch_blend(distance_cells / PATCH_RADIUS_CELLS)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Periodic trapezoid approximation of `∮_c g(ζ) dζ` with `q.contour_nodes` nodes.
pub fn contour_integral<G>(g: G, c: &Contour, q: &QuadratureSpec) -> Result<Complex64>
where
    G: Fn(Complex64) -> Complex64,
{
    q.validate()?;
    let n = q.contour_nodes;
    let mut acc = Complex64::new(0.0, 0.0);
    for (t, z, v) in c.base_nodes(n) {
        if v.norm() == 0.0 || !v.is_finite() {
            return Err(Error::DegenerateContour { t });
        }
        let gz = g(z);
        if !gz.is_finite() {
            return Err(Error::NonFiniteIntegrand { at: z });
        }
        acc += gz * v;
    }
    Ok(acc * (c.sense() / n as f64))
}

/// Midpoint rule for `∫∫_d g dA` over the lattice nodes inside `d`.
pub fn area_integral<G>(g: G, d: &PlanarDomain, q: &QuadratureSpec) -> Result<Complex64>
where
    G: Fn(Complex64) -> Complex64,
{
    q.validate()?;
    let lattice = d.area_lattice(q.area_resolution);
    let cell = lattice.spacing * lattice.spacing;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut inside = 0usize;
    for (_, _, z) in lattice.nodes() {
        if !d.contains(z) {
            continue;
        }
        inside += 1;
        let gz = g(z);
        if !gz.is_finite() {
            return Err(Error::NonFiniteIntegrand { at: z });
        }
        acc += gz;
    }
    if inside == 0 {
        return Err(Error::EmptyDomain);
    }
    Ok(acc * cell)
}

/// Polar quadrature of `∫∫_{|ξ−p|<r₀} χ g(ξ)/(ξ−p) dA` in the variables
/// `ξ = p + r e^{iθ}`: the Jacobian `r` cancels the kernel's `1/r`, leaving
/// `∫₀^{r₀}∫₀^{2π} χ(r/r₀) g(p + re^{iθ}) e^{−iθ} dθ dr`. Stored for `r₀ = 1`.
#[derive(Debug, Clone)]
pub(crate) struct PolarPatch {
    /// `(offset from the pole, weight including χ and e^{−iθ})`
    nodes: Vec<(Complex64, Complex64)>,
}

impl PolarPatch {
    pub fn new(radial: usize, angular: usize) -> Self {
        let (x, w) = gauss_legendre(radial);
        let mut nodes = Vec::with_capacity(radial * angular);
        let dtheta = 2.0 * PI / angular as f64;
        for (xr, wr) in x.iter().zip(&w) {
            let r = 0.5 * (xr + 1.0);
            let wr = 0.5 * wr * dtheta * patch_blend(r);
            for m in 0..angular {
                let e = Complex64::from_polar(1.0, m as f64 * dtheta);
                nodes.push((e * r, e.conj() * wr));
            }
        }
        PolarPatch { nodes }
    }

    pub fn from_spec(q: &QuadratureSpec) -> Self {
        Self::new(q.singular_radial_nodes, q.singular_angular_nodes)
    }

    /// Nodes of the patch of radius `r₀`.
    pub fn scaled(&self, radius: f64) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.nodes.iter().map(move |&(o, w)| (o * radius, w * radius))
    }
}

/// `∫∫_d g(ξ)/(ξ − pole) dA`: midpoint lattice away from the pole plus a
/// polar patch of radius `8h` centered on it, blended by a smooth partition
/// of unity.
pub fn singular_area_integral<G>(
    g: G,
    pole: Complex64,
    d: &PlanarDomain,
    q: &QuadratureSpec,
) -> Result<Complex64>
where
    G: Fn(Complex64) -> Complex64,
{
    q.validate()?;
    if !pole.is_finite() {
        return Err(Error::InvalidParameter("pole must be finite".into()));
    }
    let lattice = d.area_lattice(q.area_resolution);
    let patch = PolarPatch::from_spec(q);
    let radius = PATCH_RADIUS_CELLS * lattice.spacing;
    let cell = lattice.spacing * lattice.spacing;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut inside = 0usize;
    for (_, _, z) in lattice.nodes() {
        if !d.contains(z) {
            continue;
        }
        inside += 1;
        let offset = z - pole;
        let share = lattice_share(offset.norm() / lattice.spacing);
        if share == 0.0 {
            continue;
        }
        let gz = g(z);
        if !gz.is_finite() {
            return Err(Error::NonFiniteIntegrand { at: z });
        }
        acc += gz / offset * (cell * share);
    }
    if inside == 0 {
        return Err(Error::EmptyDomain);
    }
    for (offset, w) in patch.scaled(radius) {
        let z = pole + offset;
        if !d.contains(z) {
            continue;
        }
        let gz = g(z);
        if !gz.is_finite() {
            return Err(Error::NonFiniteIntegrand { at: z });
        }
        acc += gz * w;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in [1usize, 2, 5, 16] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "n={n}");
            let deg = 2 * n - 1;
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            assert!((got - exact).abs() < 1e-13);
            let even = 2 * n - 2;
            let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(even as i32)).sum();
            assert!((got - 2.0 / (even as f64 + 1.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn residue_of_reciprocal() {
        let q = QuadratureSpec::default().with_contour_nodes(64);
        let circle = Contour::unit_circle(64).unwrap();
        let v = contour_integral(|z| 1.0 / z, &circle, &q).unwrap();
        assert!((v - c(0.0, 2.0 * PI)).norm() < 1e-12);
        let one = contour_integral(|_| c(1.0, 0.0), &circle, &q).unwrap();
        assert!(one.norm() < 1e-14);
    }

    #[test]
    fn conjugate_on_circle() {
        // ∫₀^{2π} e^{−it}·ie^{it} dt = 2πi
        let q = QuadratureSpec::default();
        let circle = Contour::unit_circle(256).unwrap();
        let v = contour_integral(|z| z.conj(), &circle, &q).unwrap();
        assert!((v - c(0.0, 2.0 * PI)).norm() < 1e-12);
    }

    #[test]
    fn reversal_negates_exactly() {
        let q = QuadratureSpec::default().with_contour_nodes(37);
        let circle = Contour::circle(c(0.3, -0.2), 1.7, super::super::Orientation::Counterclockwise, 37).unwrap();
        let g = |z: Complex64| (z * z).exp() + z.conj() / (z - 3.0);
        let fwd = contour_integral(g, &circle, &q).unwrap();
        let back = contour_integral(g, &circle.reverse(), &q).unwrap();
        assert_eq!(fwd, -back);
    }

    #[test]
    fn nonfinite_integrand_is_reported() {
        let q = QuadratureSpec::default().with_contour_nodes(4);
        let circle = Contour::unit_circle(4).unwrap();
        let err = contour_integral(|z| 1.0 / (z - 1.0), &circle, &q).unwrap_err();
        assert!(matches!(err, Error::NonFiniteIntegrand { .. }));
    }

    #[test]
    fn disc_area_moments() {
        let q = QuadratureSpec::default().with_area_resolution(512);
        let d = PlanarDomain::unit_disc(256).unwrap();
        let area = area_integral(|_| c(1.0, 0.0), &d, &q).unwrap();
        assert!((area.re - PI).abs() < 1e-2);
        let first = area_integral(|z| z, &d, &q).unwrap();
        assert!(first.norm() < 1e-3);
        // 2π∫₀¹ r³ dr = π/2
        let second = area_integral(|z| c(z.norm_sqr(), 0.0), &d, &q).unwrap();
        assert!((second.re - PI / 2.0).abs() < 1e-2);
    }

    #[test]
    fn empty_domain() {
        let q = QuadratureSpec::default().with_area_resolution(4);
        let d = PlanarDomain::annulus(c(0.0, 0.0), 0.999, 1.0, 64).unwrap();
        assert_eq!(area_integral(|_| c(1.0, 0.0), &d, &q), Err(Error::EmptyDomain));
    }

    #[test]
    fn singular_integral_examples() {
        let q = QuadratureSpec::default().with_area_resolution(256);
        let d = PlanarDomain::unit_disc(256).unwrap();
        let at0 = singular_area_integral(|_| c(1.0, 0.0), c(0.0, 0.0), &d, &q).unwrap();
        assert!(at0.norm() < 1e-3);
        let zero = singular_area_integral(|_| c(0.0, 0.0), c(0.5, 0.0), &d, &q).unwrap();
        assert_eq!(zero, c(0.0, 0.0));
    }

    #[test]
    fn singular_integral_of_constant_matches_brute_force() {
        // Oracle: polar-coordinate quadrature about the origin, split at |ξ| = |p|;
        // the angular average of 1/(ξ−p) is −1/p inside |ξ|<|p| and 0 outside,
        // giving −π·conj(p). Checked here by a fine independent polar sum.
        let p = c(0.5, 0.0);
        let (nr, nt) = (2000usize, 2000usize);
        let mut oracle = c(0.0, 0.0);
        for a in 0..nr {
            let r = (a as f64 + 0.5) / nr as f64;
            for b in 0..nt {
                let t = 2.0 * PI * (b as f64 + 0.5) / nt as f64;
                let xi = Complex64::from_polar(r, t);
                oracle += 1.0 / (xi - p) * r;
            }
        }
        oracle *= (1.0 / nr as f64) * (2.0 * PI / nt as f64);
        assert!((oracle - c(-PI * 0.5, 0.0)).norm() < 5e-3);

        let q = QuadratureSpec::default().with_area_resolution(512);
        let d = PlanarDomain::unit_disc(256).unwrap();
        let v = singular_area_integral(|_| c(1.0, 0.0), p, &d, &q).unwrap();
        assert!((v - c(-PI * 0.5, 0.0)).norm() < 2e-2, "{v}");
    }
}
