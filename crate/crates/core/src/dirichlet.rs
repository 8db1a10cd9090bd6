//! The Dirichlet problem on the unit disc, solved by the Poisson integral
//!
//! ```text
//! u(re^{iθ}) = 1/(2π) ∫ f(e^{iψ}) P(r, θ − ψ) dψ,   P(r, Δ) = (1 − r²)/(1 − 2r cos Δ + r²)
//! ```
//!
//! together with instruments that measure what the solution is supposed to
//! satisfy: a discrete Laplacian, the gap to the boundary data, Hölder and
//! `C^{k,α}` seminorms, the Hopf normal derivative and the Harnack bound.
//!
//! Boundary data live on `N` equispaced angles and the integral is the
//! periodic trapezoid rule over them. Its aliasing error is about `2rᴺ`, so
//! evaluations close to the circle need correspondingly many samples.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{GridField, Lattice};

/// Values `f(e^{iψ_k})` at `ψ_k = 2πk/N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryData {
    samples: Vec<Complex64>,
}

pub const MIN_BOUNDARY_SAMPLES: usize = 8;

impl BoundaryData {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() < MIN_BOUNDARY_SAMPLES {
            return Err(Error::InvalidParameter(format!(
                "boundary data needs at least {MIN_BOUNDARY_SAMPLES} samples, got {}",
                samples.len()
            )));
        }
        let n = samples.len();
        if let Some(k) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample {
                at: Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64),
            });
        }
        Ok(BoundaryData { samples })
    }

    /// Samples `f(ψ)` at `n` equispaced angles.
    pub fn from_fn<F: Fn(f64) -> Complex64>(f: F, n: usize) -> Result<Self> {
        Self::new((0..n).map(|k| f(2.0 * PI * k as f64 / n as f64)).collect())
    }

    /// Samples a real-valued `f(ψ)`.
    pub fn from_real<F: Fn(f64) -> f64>(f: F, n: usize) -> Result<Self> {
        Self::from_fn(|psi| Complex64::new(f(psi), 0.0), n)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn angle(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.samples.len() as f64
    }

    /// `(ψ_k, f_k)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.samples.iter().enumerate().map(|(k, &v)| (self.angle(k), v))
    }

    /// The boundary value at angle `psi`, linear between samples.
    pub fn value_at(&self, psi: f64) -> Complex64 {
        let n = self.samples.len();
        let t = psi.rem_euclid(2.0 * PI) / (2.0 * PI) * n as f64;
        let k = t.floor();
        let w = t - k;
        let k = k as usize % n;
        self.samples[k] * (1.0 - w) + self.samples[(k + 1) % n] * w
    }

    /// Average of the samples, which is `u(0)`.
    pub fn mean(&self) -> Complex64 {
        self.samples.iter().sum::<Complex64>() / self.samples.len() as f64
    }

    /// The harmonic extension to the closed disc as a real function: the
    /// Poisson integral inside, the boundary data on and beyond the circle.
    /// Failures surface as NaN.
    pub fn closed_disc_extension(&self) -> impl Fn(Complex64) -> f64 + '_ {
        move |z: Complex64| {
            let (r, theta) = z.to_polar();
            if r >= 1.0 {
                self.value_at(theta).re
            } else {
                poisson_solve(self, r, theta).map_or(f64::NAN, |v| v.re)
            }
        }
    }
}

fn check_radius(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::RadiusOutOfRange { r })
    }
}

/// `P(r, Δ) = (1 − r²)/(1 − 2r cos Δ + r²)` for `0 ≤ r < 1`.
pub fn poisson_kernel(r: f64, delta: f64) -> Result<f64> {
    check_radius(r)?;
    Ok((1.0 - r * r) / (1.0 - 2.0 * r * delta.cos() + r * r))
}

/// The Poisson integral of `f` at `re^{iθ}` by the periodic trapezoid rule,
/// divided by the rule's own kernel sum. The raw sum of `P` over `N` nodes
/// is `P(rᴺ, Nθ)`, off from 1 by about `2rᴺ`; dividing by it makes
/// constants exact and `u` a convex combination of the data.
pub fn poisson_solve(f: &BoundaryData, r: f64, theta: f64) -> Result<Complex64> {
    check_radius(r)?;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut mass = 0.0;
    for (psi, v) in f.iter() {
        let p = poisson_kernel(r, theta - psi)?;
        acc += v * p;
        mass += p;
    }
    Ok(acc / mass)
}

/// `(1/N) Σ_k P(r, θ − ψ_k)`, the trapezoid rule applied to the kernel.
pub fn kernel_sum(r: f64, theta: f64, n: usize) -> Result<f64> {
    check_radius(r)?;
    let mut acc = 0.0;
    for k in 0..n {
        acc += poisson_kernel(r, theta - 2.0 * PI * k as f64 / n as f64)?;
    }
    Ok(acc / n as f64)
}

/// Polar samples `u(r_j e^{iθ_k})` with `θ_k = 2πk/M`, stored radius-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarmonicField {
    radii: Vec<f64>,
    angles: usize,
    values: Vec<Complex64>,
}

impl HarmonicField {
    pub fn new(radii: Vec<f64>, angles: usize, values: Vec<Complex64>) -> Result<Self> {
        if angles == 0 || values.len() != radii.len() * angles {
            return Err(Error::LatticeMismatch(format!(
                "{} radii x {angles} angles needs {} values, got {}",
                radii.len(),
                radii.len() * angles,
                values.len()
            )));
        }
        if let Some(&r) = radii.iter().find(|r| !(0.0..1.0).contains(*r)) {
            return Err(Error::RadiusOutOfRange { r });
        }
        if radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter("radii must increase strictly".into()));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            let (j, m) = (k / angles, k % angles);
            return Err(Error::NonFiniteSample {
                at: Complex64::from_polar(radii[j], 2.0 * PI * m as f64 / angles as f64),
            });
        }
        Ok(HarmonicField {
            radii,
            angles,
            values,
        })
    }

    /// Poisson integral of `f` on the given radii and `angles` equispaced angles.
    pub fn solve(f: &BoundaryData, radii: Vec<f64>, angles: usize) -> Result<Self> {
        let mut values = Vec::with_capacity(radii.len() * angles);
        for &r in &radii {
            for k in 0..angles {
                values.push(poisson_solve(f, r, 2.0 * PI * k as f64 / angles.max(1) as f64)?);
            }
        }
        Self::new(radii, angles, values)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angle_count(&self) -> usize {
        self.angles
    }

    pub fn angle(&self, k: usize) -> f64 {
        2.0 * PI * k as f64 / self.angles as f64
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.values[j * self.angles + k]
    }

    /// `(r, θ, u)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, Complex64)> + '_ {
        self.radii.iter().enumerate().flat_map(move |(j, &r)| {
            (0..self.angles).map(move |k| (r, self.angle(k), self.get(j, k)))
        })
    }
}

/// Fields whose harmonicity can be measured with a discrete Laplacian.
pub trait DiscreteLaplacian {
    /// Largest modulus of the discrete Laplacian over interior nodes.
    fn laplacian_residual(&self) -> Result<f64>;
}

impl DiscreteLaplacian for GridField {
    /// Five-point stencil at nodes whose four neighbours lie in the mask.
    fn laplacian_residual(&self) -> Result<f64> {
        let l = self.lattice();
        if l.width < 5 || l.height < 5 {
            return Err(Error::LatticeTooSmall(format!(
                "the five-point stencil needs at least 5x5 nodes, got {}x{}",
                l.width, l.height
            )));
        }
        let h2 = l.spacing * l.spacing;
        let mut worst = 0.0f64;
        let mut checked = 0usize;
        for j in 1..l.height - 1 {
            for i in 1..l.width - 1 {
                let star = [(i, j), (i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)];
                if !star.iter().all(|&(a, b)| self.in_support(a, b)) {
                    continue;
                }
                let lap = self.get(i + 1, j) + self.get(i - 1, j) + self.get(i, j + 1) + self.get(i, j - 1)
                    - self.get(i, j) * 4.0;
                worst = worst.max(lap.norm() / h2);
                checked += 1;
            }
        }
        if checked == 0 {
            return Err(Error::LatticeTooSmall("no interior node has a full stencil".into()));
        }
        Ok(worst)
    }
}

impl DiscreteLaplacian for HarmonicField {
    /// `u_rr + u_r/r + u_θθ/r²` with three-point differences (nonuniform in
    /// `r`, periodic in `θ`) at interior radii.
    fn laplacian_residual(&self) -> Result<f64> {
        if self.radii.len() < 5 || self.angles < 5 {
            return Err(Error::LatticeTooSmall(format!(
                "the polar stencil needs at least 5x5 nodes, got {}x{}",
                self.radii.len(),
                self.angles
            )));
        }
        let dt = 2.0 * PI / self.angles as f64;
        let mut worst = 0.0f64;
        for j in 1..self.radii.len() - 1 {
            let (r0, r, r1) = (self.radii[j - 1], self.radii[j], self.radii[j + 1]);
            if r0 <= 0.0 {
                continue;
            }
            let (hm, hp) = (r - r0, r1 - r);
            for k in 0..self.angles {
                let (km, kp) = ((k + self.angles - 1) % self.angles, (k + 1) % self.angles);
                let (um, u, up) = (self.get(j - 1, k), self.get(j, k), self.get(j + 1, k));
                let urr = (um * hp - u * (hm + hp) + up * hm) * (2.0 / (hm * hp * (hm + hp)));
                let ur = (up * (hm * hm) - um * (hp * hp) + u * (hp * hp - hm * hm)) / (hm * hp * (hm + hp));
                let utt = (self.get(j, kp) - u * 2.0 + self.get(j, km)) / (dt * dt);
                worst = worst.max((urr + ur / r + utt / (r * r)).norm());
            }
        }
        Ok(worst)
    }
}

/// Largest modulus of the discrete Laplacian of `u` over interior nodes.
pub fn laplacian_residual<U: DiscreteLaplacian + ?Sized>(u: &U) -> Result<f64> {
    u.laplacian_residual()
}

/// The Poisson integral of `f` on the `resolution²` Cartesian lattice over
/// `[−radius, radius]²`, masked to `|z| ≤ radius`.
pub fn solve_on_lattice(f: &BoundaryData, radius: f64, resolution: usize) -> Result<GridField> {
    check_radius(radius)?;
    let r = Complex64::new(radius, radius);
    let lattice = Lattice::covering(-r, r, resolution);
    let mut values = Vec::with_capacity(lattice.len());
    let mut mask = Vec::with_capacity(lattice.len());
    for (_, _, z) in lattice.nodes() {
        let inside = z.norm() <= radius;
        mask.push(inside);
        values.push(if inside {
            poisson_solve(f, z.norm(), z.arg())?
        } else {
            Complex64::new(0.0, 0.0)
        });
    }
    GridField::new(lattice, values, mask)
}

/// `max_k |u(r e^{iψ_k}) − f_k|` over the sample angles.
pub fn boundary_continuity_gap(f: &BoundaryData, r: f64) -> Result<f64> {
    if !(0.9..1.0).contains(&r) {
        return Err(Error::RadiusOutOfRange { r });
    }
    let mut worst = 0.0f64;
    for (psi, v) in f.iter() {
        worst = worst.max((poisson_solve(f, r, psi)? - v).norm());
    }
    Ok(worst)
}

/// Largest number of points [`holder_seminorm`] accepts.
pub const HOLDER_POINT_CAP: usize = 50_000;

/// Values of a function at points of the plane (or of the real line,
/// embedded as the real axis).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSamples {
    pub points: Vec<Complex64>,
    pub values: Vec<Complex64>,
}

impl PointSamples {
    pub fn new(points: Vec<Complex64>, values: Vec<Complex64>) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        if let Some(k) = (0..points.len()).find(|&k| !points[k].is_finite() || !values[k].is_finite()) {
            return Err(Error::NonFiniteSample { at: points[k] });
        }
        Ok(PointSamples { points, values })
    }

    /// `g` on `n` equispaced points of `[a, b]`.
    pub fn on_interval<G: Fn(f64) -> f64>(g: G, a: f64, b: f64, n: usize) -> Result<Self> {
        let xs = linspace(a, b, n);
        let values = xs.iter().map(|&x| Complex64::new(g(x), 0.0)).collect();
        Self::new(xs.into_iter().map(|x| Complex64::new(x, 0.0)).collect(), values)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// `max |g(x) − g(y)|/|x − y|^α` over all pairs of distinct sample points.
/// Pairs at the same point are skipped.
pub fn holder_seminorm(g: &PointSamples, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!("Hölder exponent must lie in (0, 1], got {alpha}")));
    }
    if g.len() > HOLDER_POINT_CAP {
        return Err(Error::InvalidParameter(format!(
            "{} points exceed the pairwise cap of {HOLDER_POINT_CAP}",
            g.len()
        )));
    }
    let mut worst = 0.0f64;
    let mut distinct = false;
    for a in 0..g.len() {
        for b in a + 1..g.len() {
            let d = (g.points[a] - g.points[b]).norm();
            if d == 0.0 {
                continue;
            }
            distinct = true;
            worst = worst.max((g.values[a] - g.values[b]).norm() / d.powf(alpha));
        }
    }
    if !distinct {
        return Err(Error::DegenerateSampleSet("fewer than two distinct points".into()));
    }
    Ok(worst)
}

/// Measurements for one derivative order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderReport {
    pub order: usize,
    pub sup_norm: f64,
    /// Present for the top order only.
    pub holder_seminorm: Option<f64>,
}

/// `C^{k,α}` measurements: sup norms of orders `0..=k` and the `α`-seminorm
/// of the order-`k` derivative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CkAlphaReport {
    pub k: usize,
    pub alpha: f64,
    pub orders: Vec<OrderReport>,
}

impl CkAlphaReport {
    pub fn top_seminorm(&self) -> f64 {
        self.orders
            .last()
            .and_then(|o| o.holder_seminorm)
            .unwrap_or(0.0)
    }
}

/// Derivative of samples on increasing real points by three-point
/// differences (one-sided at the ends).
fn differentiate(xs: &[f64], ys: &[Complex64]) -> Vec<Complex64> {
    let n = xs.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let (a, b, c) = match k {
            0 => (0, 1, 2),
            _ if k == n - 1 => (n - 3, n - 2, n - 1),
            _ => (k - 1, k, k + 1),
        };
        // derivative at xs[k] of the quadratic through the three samples
        let x = xs[k];
        let (xa, xb, xc) = (xs[a], xs[b], xs[c]);
        let la = (2.0 * x - xb - xc) / ((xa - xb) * (xa - xc));
        let lb = (2.0 * x - xa - xc) / ((xb - xa) * (xb - xc));
        let lc = (2.0 * x - xa - xb) / ((xc - xa) * (xc - xb));
        out.push(ys[a] * la + ys[b] * lb + ys[c] * lc);
    }
    out
}

/// [`CkAlphaReport`] for `g`. `derivatives[m]` holds the samples of the
/// `(m+1)`-th derivative at `g.points`; missing orders are computed by
/// finite differences, which needs real, strictly increasing points.
pub fn ck_alpha_report(
    g: &PointSamples,
    k: usize,
    alpha: f64,
    derivatives: &[Vec<Complex64>],
) -> Result<CkAlphaReport> {
    let mut layers = vec![g.values.clone()];
    for m in 1..=k {
        let next = match derivatives.get(m - 1) {
            Some(d) => {
                if d.len() != g.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "order-{m} derivative has {} samples for {} points",
                        d.len(),
                        g.len()
                    )));
                }
                d.clone()
            }
            None => {
                let real_line = g.points.iter().all(|p| p.im == 0.0);
                let xs: Vec<f64> = g.points.iter().map(|p| p.re).collect();
                if !real_line || xs.len() < 3 || xs.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidParameter(
                        "finite differences need at least three increasing real points".into(),
                    ));
                }
                differentiate(&xs, &layers[m - 1])
            }
        };
        layers.push(next);
    }
    let mut orders = Vec::with_capacity(k + 1);
    for (order, values) in layers.into_iter().enumerate() {
        let samples = PointSamples::new(g.points.clone(), values)?;
        orders.push(OrderReport {
            order,
            sup_norm: samples.sup_norm(),
            holder_seminorm: if order == k {
                Some(holder_seminorm(&samples, alpha)?)
            } else {
                None
            },
        });
    }
    Ok(CkAlphaReport { k, alpha, orders })
}

/// Steps used when the caller supplies none.
pub const DEFAULT_HOPF_STEPS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

/// Outward normal derivative of `u` at the boundary point `P` (`|P| = 1`):
/// the one-sided quotients `(u(P) − u(P − sν))/s` extrapolated to `s = 0`
/// by the polynomial through all supplied steps (Neville's scheme).
pub fn hopf_normal_derivative<U>(u: U, p: Complex64, steps: &[f64]) -> Result<f64>
where
    U: Fn(Complex64) -> f64,
{
    if !p.is_finite() || (p.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!("{p} is not on the unit circle")));
    }
    if steps.is_empty() || steps.iter().any(|&s| !(s > 0.0 && s < 1.0)) {
        return Err(Error::InvalidParameter("steps must be nonempty and lie in (0, 1)".into()));
    }
    let mut sorted = steps.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("steps must be distinct".into()));
    }
    let nu = p / p.norm();
    let up = u(p);
    if !up.is_finite() {
        return Err(Error::NonFiniteSample { at: p });
    }
    let mut table = Vec::with_capacity(steps.len());
    for &s in steps {
        let z = p - nu * s;
        let v = u(z);
        if !v.is_finite() {
            return Err(Error::NonFiniteSample { at: z });
        }
        table.push((up - v) / s);
    }
    for level in 1..steps.len() {
        for i in 0..steps.len() - level {
            let (si, sj) = (steps[i], steps[i + level]);
            table[i] = (si * table[i + 1] - sj * table[i]) / (si - sj);
        }
    }
    Ok(table[0])
}

/// Outcome of the Harnack comparison at one radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HarnackCheck {
    pub r: f64,
    /// `min_θ u(r, θ)` over the sample angles.
    pub lhs: f64,
    /// `u(0)·(1 − r)/(1 + r)`
    pub rhs: f64,
    pub ok: bool,
}

/// Compares the minimum of `u` on the circle of radius `r` with the lower
/// bound `u(0)(1 − r)/(1 + r)` that the kernel minimum guarantees for
/// nonnegative data.
pub fn harnack_lower_bound_check(f: &BoundaryData, r: f64) -> Result<HarnackCheck> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::RadiusOutOfRange { r });
    }
    if f.samples().iter().any(|v| v.re < 0.0 || v.im != 0.0) {
        return Err(Error::NegativeData);
    }
    if f.samples().iter().all(|v| v.re == 0.0) {
        return Err(Error::InvalidParameter("boundary data vanish identically".into()));
    }
    let mut lhs = f64::INFINITY;
    for (psi, _) in f.iter() {
        lhs = lhs.min(poisson_solve(f, r, psi)?.re);
    }
    let rhs = f.mean().re * (1.0 - r) / (1.0 + r);
    Ok(HarnackCheck {
        r,
        lhs,
        rhs,
        ok: lhs >= rhs - 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_values() {
        assert_eq!(poisson_kernel(0.0, 1.3).unwrap(), 1.0);
        assert!((poisson_kernel(0.5, 0.0).unwrap() - 3.0).abs() < 1e-15);
        assert!((poisson_kernel(0.5, PI).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(poisson_kernel(1.0, 0.0).unwrap_err(), Error::RadiusOutOfRange { r: 1.0 });
        assert!(poisson_kernel(-0.1, 0.0).is_err());
    }

    #[test]
    fn kernel_sum_matches_aliasing_closed_form() {
        // Σ_k P(r, θ − 2πk/N)/N = P(rᴺ, Nθ)
        for &(r, t, n) in &[(0.5, 0.3, 16usize), (0.95, 0.01, 256), (0.9, 1.0, 64)] {
            let exact = poisson_kernel(f64::powi(r, n as i32), n as f64 * t).unwrap();
            assert!((kernel_sum(r, t, n).unwrap() - exact).abs() < 1e-12);
        }
        assert!((kernel_sum(0.85, 0.2, 256).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn harmonic_extensions_of_trig_data() {
        let one = BoundaryData::from_real(|_| 1.0, 64).unwrap();
        assert!((poisson_solve(&one, 0.8, 0.4).unwrap() - 1.0).norm() < 1e-12);
        let cos = BoundaryData::from_real(f64::cos, 256).unwrap();
        let cos2 = BoundaryData::from_real(|p| (2.0 * p).cos(), 256).unwrap();
        for &(r, t) in &[(0.3, 0.1), (0.9, 2.0), (0.0, 0.0)] {
            assert!((poisson_solve(&cos, r, t).unwrap().re - r * t.cos()).abs() < 1e-10);
            assert!((poisson_solve(&cos2, r, t).unwrap().re - r * r * (2.0 * t).cos()).abs() < 1e-10);
        }
    }

    #[test]
    fn laplacians() {
        let l = Lattice::covering(c(-0.9, -0.9), c(0.9, 0.9), 64);
        let disc = |z: Complex64| z.norm() <= 0.9;
        let re = GridField::sample(l, |z| c(z.re, 0.0), disc).unwrap();
        assert!(laplacian_residual(&re).unwrap() < 1e-10);
        let sq = GridField::sample(l, |z| z * z, disc).unwrap();
        assert!(laplacian_residual(&sq).unwrap() < 1e-8);
        let abs2 = GridField::sample(l, |z| c(z.norm_sqr(), 0.0), disc).unwrap();
        assert!((laplacian_residual(&abs2).unwrap() - 4.0).abs() < 1e-8);
        let tiny = Lattice::new(c(0.0, 0.0), 0.1, 4, 4).unwrap();
        assert!(matches!(
            laplacian_residual(&GridField::sample(tiny, |z| z, |_| true).unwrap()),
            Err(Error::LatticeTooSmall(_))
        ));
    }

    #[test]
    fn polar_laplacian() {
        let cos2 = BoundaryData::from_real(|p| (2.0 * p).cos(), 128).unwrap();
        let radii: Vec<f64> = (1..=9).map(|j| 0.1 * j as f64).collect();
        let u = HarmonicField::solve(&cos2, radii.clone(), 128).unwrap();
        assert!(laplacian_residual(&u).unwrap() < 5e-2);
        let values = radii
            .iter()
            .flat_map(|&r| (0..128).map(move |_| c(r * r, 0.0)))
            .collect();
        let abs2 = HarmonicField::new(radii, 128, values).unwrap();
        assert!((laplacian_residual(&abs2).unwrap() - 4.0).abs() < 1e-8);
    }

    #[test]
    fn continuity_gap() {
        let one = BoundaryData::from_real(|_| 1.0, 256).unwrap();
        assert!(boundary_continuity_gap(&one, 0.95).unwrap() < 1e-12);
        let cos = BoundaryData::from_real(f64::cos, 4096).unwrap();
        assert!(boundary_continuity_gap(&cos, 0.99).unwrap() <= 0.01 + 1e-9);
        assert!(boundary_continuity_gap(&cos, 0.5).is_err());
    }

    #[test]
    fn holder() {
        let abs = PointSamples::on_interval(f64::abs, -1.0, 1.0, 201).unwrap();
        assert!((holder_seminorm(&abs, 1.0).unwrap() - 1.0).abs() < 1e-12);
        let root = PointSamples::on_interval(|x| x.abs().sqrt(), -1.0, 1.0, 201).unwrap();
        assert!((holder_seminorm(&root, 0.5).unwrap() - 1.0).abs() < 1e-6);
        let flat = PointSamples::on_interval(|_| 2.0, -1.0, 1.0, 11).unwrap();
        assert_eq!(holder_seminorm(&flat, 0.3).unwrap(), 0.0);
        let single = PointSamples::new(vec![c(0.0, 0.0); 2], vec![c(1.0, 0.0); 2]).unwrap();
        assert!(matches!(holder_seminorm(&single, 1.0), Err(Error::DegenerateSampleSet(_))));
    }

    #[test]
    fn ck_alpha() {
        let sq = PointSamples::on_interval(|x| x * x, -1.0, 1.0, 101).unwrap();
        let rep = ck_alpha_report(&sq, 1, 1.0, &[]).unwrap();
        assert!((rep.top_seminorm() - 2.0).abs() < 1e-9);
        assert!((rep.orders[0].sup_norm - 1.0).abs() < 1e-12);
        let lin = PointSamples::on_interval(|x| 3.0 * x - 1.0, -1.0, 1.0, 51).unwrap();
        assert!(ck_alpha_report(&lin, 1, 0.5, &[]).unwrap().top_seminorm() < 1e-9);
    }

    #[test]
    fn hopf_examples() {
        let lin = |z: Complex64| 1.0 - z.re;
        assert!((hopf_normal_derivative(lin, c(1.0, 0.0), &DEFAULT_HOPF_STEPS).unwrap() + 1.0).abs() < 1e-9);
        let bowl = |z: Complex64| 1.0 - z.norm_sqr();
        assert!((hopf_normal_derivative(bowl, c(1.0, 0.0), &DEFAULT_HOPF_STEPS).unwrap() + 2.0).abs() < 1e-9);
        assert!(hopf_normal_derivative(lin, c(0.5, 0.0), &DEFAULT_HOPF_STEPS).is_err());
        let nan = |_: Complex64| f64::NAN;
        assert!(matches!(
            hopf_normal_derivative(nan, c(1.0, 0.0), &DEFAULT_HOPF_STEPS),
            Err(Error::NonFiniteSample { .. })
        ));
    }

    #[test]
    fn harnack_examples() {
        let one = BoundaryData::from_real(|_| 1.0, 64).unwrap();
        let h = harnack_lower_bound_check(&one, 0.5).unwrap();
        assert!(h.ok && (h.lhs - 1.0).abs() < 1e-12 && (h.rhs - 1.0 / 3.0).abs() < 1e-12);
        let shifted = BoundaryData::from_real(|p| 1.0 + p.cos(), 64).unwrap();
        let h = harnack_lower_bound_check(&shifted, 0.5).unwrap();
        assert!(h.ok && (h.lhs - 0.5).abs() < 1e-12);
        let neg = BoundaryData::from_real(|p| p.cos(), 64).unwrap();
        assert_eq!(harnack_lower_bound_check(&neg, 0.5).unwrap_err(), Error::NegativeData);
    }
}
