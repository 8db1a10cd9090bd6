//! Solution operator for the inhomogeneous Cauchy–Riemann equation
//! `∂f/∂z̄ = α` and the boundary blow-up extension built on it.
//!
//! For a bounded, compactly supported `α` the function
//!
//! ```text
//! f(ζ) = −1/π ∫∫ α(ξ)/(ξ − ζ) dA(ξ)
//! ```
//!
//! solves the equation and is bounded, though not compactly supported.
//! `α` is carried as a [`GridField`]; the transform is a midpoint sum over
//! its lattice plus a polar patch of radius about `8h` around `ζ`, in which `α` is
//! read by cubic convolution. Two evaluation routes exist:
//! [`cauchy_transform`] sums directly at arbitrary points, and
//! [`cauchy_transform_on_lattice`] evaluates at every lattice node at once by
//! FFT convolution. At lattice nodes both produce the same discrete operator.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    cubic_weights, lattice_share, singular_area_integral, GridField, Lattice, PlanarDomain,
    PolarPatch, QuadratureSpec, PATCH_RADIUS_CELLS,
};

/// Cells kept between a checked node and the lattice edge or a support
/// boundary in [`dbar_residual`].
pub const RESIDUAL_MARGIN_CELLS: usize = 2;

/// A right-hand side `α` supported in the disc `|ξ| ≤ support_radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct DbarProblem {
    alpha: GridField,
    support_radius: f64,
}

impl DbarProblem {
    pub fn new(alpha: GridField, support_radius: f64) -> Result<Self> {
        if !(support_radius > 0.0 && support_radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "support radius must be positive, got {support_radius}"
            )));
        }
        let lattice = *alpha.lattice();
        let slack = 1e-9 * (1.0 + support_radius);
        for (i, j, z) in lattice.nodes() {
            if alpha.in_support(i, j) && z.norm() > support_radius + slack {
                return Err(Error::InvalidParameter(format!(
                    "alpha is supported at {z}, outside |ξ| <= {support_radius}"
                )));
            }
        }
        Ok(DbarProblem {
            alpha,
            support_radius,
        })
    }

    pub fn alpha(&self) -> &GridField {
        &self.alpha
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }
}

/// Direct-summation evaluator for one problem.
struct DirectTransform<'a> {
    alpha: &'a GridField,
    support: Vec<(Complex64, Complex64)>,
    patch: PolarPatch,
    cell: f64,
}

impl<'a> DirectTransform<'a> {
    fn new(alpha: &'a GridField, q: &QuadratureSpec) -> Self {
        let lattice = alpha.lattice();
        let support = lattice
            .nodes()
            .filter(|&(i, j, _)| alpha.in_support(i, j))
            .map(|(i, j, z)| (z, alpha.get(i, j)))
            .filter(|(_, a)| *a != Complex64::new(0.0, 0.0))
            .collect();
        DirectTransform {
            alpha,
            support,
            patch: PolarPatch::from_spec(q),
            cell: lattice.spacing * lattice.spacing,
        }
    }

    fn eval(&self, zeta: Complex64) -> Result<Complex64> {
        if !zeta.is_finite() {
            return Err(Error::InvalidParameter("evaluation point must be finite".into()));
        }
        let h = self.alpha.lattice().spacing;
        let mut acc = Complex64::new(0.0, 0.0);
        for &(xi, a) in &self.support {
            let offset = xi - zeta;
            let share = lattice_share(offset.norm() / h);
            if share > 0.0 {
                acc += a / offset * share;
            }
        }
        acc *= self.cell;
        for (offset, w) in self.patch.scaled(PATCH_RADIUS_CELLS * h) {
            acc += self.alpha.cubic(zeta + offset) * w;
        }
        Ok(-acc / PI)
    }
}

/// The lattice part of the kernel at offset `o` (in cells).
fn lattice_kernel(ox: isize, oy: isize, h: f64) -> Complex64 {
    let o = Complex64::new(ox as f64, oy as f64);
    let share = lattice_share(o.norm());
    if share == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        h / o * share
    }
}

/// `f(ζ) = −1/π ∫∫ α(ξ)/(ξ − ζ) dA(ξ)` at each evaluation point.
pub fn cauchy_transform(
    p: &DbarProblem,
    eval_points: &[Complex64],
    q: &QuadratureSpec,
) -> Result<Vec<Complex64>> {
    q.validate()?;
    let t = DirectTransform::new(&p.alpha, q);
    eval_points.iter().map(|&z| t.eval(z)).collect()
}

fn fft2(data: &mut [Complex64], nx: usize, ny: usize, inverse: bool) {
    let mut planner = FftPlanner::<f64>::new();
    let (row, col) = if inverse {
        (planner.plan_fft_inverse(nx), planner.plan_fft_inverse(ny))
    } else {
        (planner.plan_fft_forward(nx), planner.plan_fft_forward(ny))
    };
    for r in data.chunks_exact_mut(nx) {
        row.process(r);
    }
    let mut column = vec![Complex64::new(0.0, 0.0); ny];
    for x in 0..nx {
        for y in 0..ny {
            column[y] = data[y * nx + x];
        }
        col.process(&mut column);
        for y in 0..ny {
            data[y * nx + x] = column[y];
        }
    }
}

/// The transform at every node of `α`'s lattice, computed as one discrete
/// convolution. The returned field has an all-true mask.
pub fn cauchy_transform_on_lattice(p: &DbarProblem, q: &QuadratureSpec) -> Result<GridField> {
    q.validate()?;
    let lattice = *p.alpha.lattice();
    let (w, ht, h) = (lattice.width, lattice.height, lattice.spacing);
    let (nx, ny) = (2 * w, 2 * ht);
    let wrap = |dx: isize, dy: isize| -> usize {
        let x = dx.rem_euclid(nx as isize) as usize;
        let y = dy.rem_euclid(ny as isize) as usize;
        y * nx + x
    };

    // K(o) multiplies α at node k + o when evaluating at node k; stored as
    // G(d) = K(−d) so that f = α ∗ G.
    let mut kernel = vec![Complex64::new(0.0, 0.0); nx * ny];
    for oy in -(ht as isize - 1)..=(ht as isize - 1) {
        for ox in -(w as isize - 1)..=(w as isize - 1) {
            kernel[wrap(-ox, -oy)] += lattice_kernel(ox, oy, h);
        }
    }
    let patch = PolarPatch::from_spec(q);
    for (offset, weight) in patch.scaled(PATCH_RADIUS_CELLS * h) {
        let rel = offset / h;
        for (ox, oy, b) in cubic_weights(rel.re, rel.im) {
            if b != 0.0 {
                kernel[wrap(-ox, -oy)] += weight * b;
            }
        }
    }

    let mut field = vec![Complex64::new(0.0, 0.0); nx * ny];
    for (i, j, _) in lattice.nodes() {
        field[j * nx + i] = p.alpha.masked_value(i as isize, j as isize);
    }
    fft2(&mut field, nx, ny, false);
    fft2(&mut kernel, nx, ny, false);
    for (a, g) in field.iter_mut().zip(&kernel) {
        *a *= g;
    }
    fft2(&mut field, nx, ny, true);
    let scale = -1.0 / (PI * (nx * ny) as f64);
    let values = lattice
        .nodes()
        .map(|(i, j, _)| field[j * nx + i] * scale)
        .collect();
    GridField::new(lattice, values, vec![true; lattice.len()])
}

/// `max |∂f/∂ζ̄ − α|` over nodes of `f`'s lattice that are at least two
/// cells from the lattice edge, from the edge of `f`'s mask, and from any
/// change in `α`'s support mask. `∂/∂ζ̄` is the central-difference Wirtinger
/// stencil at the lattice spacing.
///
/// `f` must refine `α`: its spacing divides `α`'s and its nodes sit on `α`'s
/// lattice lines. Between `α` nodes, `α` is read bilinearly.
pub fn dbar_residual(f_samples: &GridField, alpha: &GridField) -> Result<f64> {
    let fl = f_samples.lattice();
    let al = alpha.lattice();
    let ratio = al.spacing / fl.spacing;
    if ratio < 1.0 - 1e-9 || (ratio - ratio.round()).abs() > 1e-9 {
        return Err(Error::LatticeMismatch(format!(
            "f spacing {} does not refine alpha spacing {}",
            fl.spacing, al.spacing
        )));
    }
    let shift = (fl.origin - al.origin) / fl.spacing;
    if (shift.re - shift.re.round()).abs() > 1e-6 || (shift.im - shift.im.round()).abs() > 1e-6 {
        return Err(Error::LatticeMismatch(
            "f nodes are not aligned with alpha's lattice".into(),
        ));
    }
    let alpha_support = |z: Complex64| -> bool {
        let (x, y) = al.coordinates(z);
        let (i, j) = (x.round(), y.round());
        i >= 0.0
            && j >= 0.0
            && (i as usize) < al.width
            && (j as usize) < al.height
            && alpha.in_support(i as usize, j as usize)
    };

    let m = RESIDUAL_MARGIN_CELLS;
    let h = fl.spacing;
    let mut worst: Option<f64> = None;
    for j in m..fl.height.saturating_sub(m) {
        'node: for i in m..fl.width.saturating_sub(m) {
            let here = alpha_support(fl.node(i, j));
            for b in j - m..=j + m {
                for a in i - m..=i + m {
                    if !f_samples.in_support(a, b) || alpha_support(fl.node(a, b)) != here {
                        continue 'node;
                    }
                }
            }
            let fx = (f_samples.get(i + 1, j) - f_samples.get(i - 1, j)) / (2.0 * h);
            let fy = (f_samples.get(i, j + 1) - f_samples.get(i, j - 1)) / (2.0 * h);
            let dbar = (fx + Complex64::i() * fy) * 0.5;
            let target = alpha.bilinear(fl.node(i, j));
            let r = (dbar - target).norm();
            worst = Some(worst.map_or(r, |w| w.max(r)));
        }
    }
    worst.ok_or_else(|| {
        Error::LatticeTooSmall(format!(
            "no node of the {}x{} lattice clears the {m}-cell margin",
            fl.width, fl.height
        ))
    })
}

/// An a priori bound `B ≥ sup|f|`: `sup|α| · (1/π) ∫∫_{|ξ|≤2R} dA/|ξ|`,
/// the integral computed with the singular quadrature (its exact value is `4R`).
pub fn boundedness_bound(p: &DbarProblem, q: &QuadratureSpec) -> Result<f64> {
    let sup = p.alpha.sup_norm();
    if sup == 0.0 {
        return Ok(0.0);
    }
    let disc = PlanarDomain::disc(Complex64::new(0.0, 0.0), 2.0 * p.support_radius, q.contour_nodes)?;
    // 1/|ξ| = (ξ/|ξ|) / ξ
    let unit = |xi: Complex64| {
        let r = xi.norm();
        if r == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            xi / r
        }
    };
    let integral = singular_area_integral(unit, Complex64::new(0.0, 0.0), &disc, q)?;
    Ok(sup * integral.norm() / PI)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Smoothness {
    C1,
    C2,
}

/// Radial cutoff `φ`: one on `|z − P| ≤ inner`, zero on `|z − P| ≥ outer`,
/// monotone smoothstep in between (cubic for C¹, quintic for C²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffSpec {
    pub center: Complex64,
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub smoothness: Smoothness,
}

impl CutoffSpec {
    pub fn new(center: Complex64, inner_radius: f64, outer_radius: f64, smoothness: Smoothness) -> Result<Self> {
        if !(0.0 < inner_radius && inner_radius < outer_radius && outer_radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "cutoff needs 0 < inner < outer, got {inner_radius}, {outer_radius}"
            )));
        }
        Ok(CutoffSpec {
            center,
            inner_radius,
            outer_radius,
            smoothness,
        })
    }

    /// Profile `s(t)` and `s'(t)` for `t ∈ [0, 1]`, `t = 1` on the inner circle.
    fn profile(&self, t: f64) -> (f64, f64) {
        match self.smoothness {
            Smoothness::C1 => (t * t * (3.0 - 2.0 * t), 6.0 * t * (1.0 - t)),
            Smoothness::C2 => (
                t * t * t * (t * (6.0 * t - 15.0) + 10.0),
                30.0 * t * t * (t - 1.0) * (t - 1.0),
            ),
        }
    }

    fn transition(&self, z: Complex64) -> Option<(f64, f64)> {
        let rho = (z - self.center).norm();
        if rho <= self.inner_radius || rho >= self.outer_radius {
            None
        } else {
            Some((rho, (self.outer_radius - rho) / (self.outer_radius - self.inner_radius)))
        }
    }

    pub fn value(&self, z: Complex64) -> f64 {
        let rho = (z - self.center).norm();
        if rho <= self.inner_radius {
            1.0
        } else if rho >= self.outer_radius {
            0.0
        } else {
            self.profile((self.outer_radius - rho) / (self.outer_radius - self.inner_radius)).0
        }
    }

    /// `∂φ/∂z̄ = φ'(ρ) · (z − P)/(2ρ)` with `ρ = |z − P|`.
    pub fn dbar(&self, z: Complex64) -> Complex64 {
        match self.transition(z) {
            None => Complex64::new(0.0, 0.0),
            Some((rho, t)) => {
                let ds_drho = -self.profile(t).1 / (self.outer_radius - self.inner_radius);
                (z - self.center) * (ds_drho / (2.0 * rho))
            }
        }
    }

    pub fn in_transition(&self, z: Complex64) -> bool {
        self.transition(z).is_some()
    }
}

pub type HolomorphicFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// `ĥ = φ·h − f` with `∂f/∂z̄ = (∂φ/∂z̄)·h` on the domain: holomorphic on the
/// domain and differing from `h` near `P` by the bounded function `f`.
#[derive(Clone)]
pub struct BlowUpExtension {
    h: HolomorphicFn,
    cutoff: CutoffSpec,
    domain: PlanarDomain,
    problem: DbarProblem,
    q: QuadratureSpec,
}

impl std::fmt::Debug for BlowUpExtension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BlowUpExtension")
            .field("cutoff", &self.cutoff)
            .field("support_radius", &self.problem.support_radius)
            .finish()
    }
}

/// Where `α = (∂φ/∂z̄)·h` is sampled for the blow-up extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaSupport {
    /// Lattice nodes in the domain and in the transition annulus.
    DomainOnly,
    /// Every transition-annulus node in the domain, plus those outside it
    /// where `h` is finite. Keeps `α` free of a jump along the boundary.
    #[default]
    TransitionAnnulus,
}

/// Builds `ĥ` for `h` holomorphic near the boundary point `P = cutoff.center`,
/// sampling `α` on the transition annulus (see [`AlphaSupport`]).
pub fn blow_up_extension(
    h: HolomorphicFn,
    cutoff: CutoffSpec,
    d: &PlanarDomain,
    q: &QuadratureSpec,
) -> Result<BlowUpExtension> {
    blow_up_extension_with(h, cutoff, d, q, AlphaSupport::default())
}

/// [`blow_up_extension`] with an explicit sampling region for `α`. `α` lives
/// on the domain's area lattice; `h` must be finite at every transition node
/// inside the domain.
pub fn blow_up_extension_with(
    h: HolomorphicFn,
    cutoff: CutoffSpec,
    d: &PlanarDomain,
    q: &QuadratureSpec,
    support: AlphaSupport,
) -> Result<BlowUpExtension> {
    q.validate()?;
    let p = cutoff.center;
    let (clearance, gap) = d.boundary_clearance(p, q.contour_nodes);
    if d.contains(p) || clearance > gap {
        return Err(Error::InvalidParameter(format!(
            "cutoff center {p} is not on the domain boundary"
        )));
    }
    let base = d.area_lattice(q.area_resolution);
    let lattice = match support {
        AlphaSupport::DomainOnly => base,
        AlphaSupport::TransitionAnnulus => {
            let r = Complex64::new(cutoff.outer_radius, cutoff.outer_radius);
            extend_lattice(&base, p - r, p + r)
        }
    };
    let mut values = Vec::with_capacity(lattice.len());
    let mut mask = Vec::with_capacity(lattice.len());
    let mut radius = 0.0f64;
    for (_, _, z) in lattice.nodes() {
        let mut active = false;
        let mut value = Complex64::new(0.0, 0.0);
        if cutoff.in_transition(z) {
            let inside = d.contains(z);
            if inside || support == AlphaSupport::TransitionAnnulus {
                let hz = h(z);
                if hz.is_finite() {
                    active = true;
                    value = cutoff.dbar(z) * hz;
                    radius = radius.max(z.norm());
                } else if inside {
                    return Err(Error::SingularityInsideCutoffTransition { at: z });
                }
            }
        }
        values.push(value);
        mask.push(active);
    }
    let alpha = GridField::new(lattice, values, mask)?;
    let support_radius = if radius > 0.0 { radius } else { lattice.spacing };
    Ok(BlowUpExtension {
        h,
        cutoff,
        domain: d.clone(),
        problem: DbarProblem::new(alpha, support_radius)?,
        q: *q,
    })
}

impl BlowUpExtension {
    pub fn problem(&self) -> &DbarProblem {
        &self.problem
    }

    pub fn cutoff(&self) -> &CutoffSpec {
        &self.cutoff
    }

    fn cutoff_times_h(&self, z: Complex64) -> Complex64 {
        let phi = self.cutoff.value(z);
        if phi == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            (self.h)(z) * phi
        }
    }

    /// `ĥ` at each point.
    pub fn eval(&self, points: &[Complex64]) -> Result<Vec<Complex64>> {
        let f = cauchy_transform(&self.problem, points, &self.q)?;
        points
            .iter()
            .zip(f)
            .map(|(&z, fz)| {
                let v = self.cutoff_times_h(z) - fz;
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::NonFiniteSample { at: z })
                }
            })
            .collect()
    }

    /// The correction `f = φ·h − ĥ` at each point; `ĥ − h = −f` where `φ = 1`.
    pub fn correction(&self, points: &[Complex64]) -> Result<Vec<Complex64>> {
        cauchy_transform(&self.problem, points, &self.q)
    }

    /// `ĥ` on the area lattice. The mask keeps nodes inside the domain and
    /// outside the cutoff's inner disc, where `ĥ = h − f` carries the
    /// singularity of `h`.
    pub fn sample_lattice(&self) -> Result<GridField> {
        let f = cauchy_transform_on_lattice(&self.problem, &self.q)?;
        let lattice: Lattice = *f.lattice();
        let mut values = Vec::with_capacity(lattice.len());
        let mut mask = Vec::with_capacity(lattice.len());
        for ((_, _, z), fz) in lattice.nodes().zip(f.values()) {
            let keep = self.domain.contains(z)
                && (z - self.cutoff.center).norm() > self.cutoff.inner_radius;
            let v = if keep { self.cutoff_times_h(z) - fz } else { Complex64::new(0.0, 0.0) };
            let keep = keep && v.is_finite();
            mask.push(keep);
            values.push(if keep { v } else { Complex64::new(0.0, 0.0) });
        }
        GridField::new(lattice, values, mask)
    }

    pub fn bound(&self) -> Result<f64> {
        boundedness_bound(&self.problem, &self.q)
    }
}

/// `base` grown by whole cells until its cells cover the box `[lo, hi]`.
fn extend_lattice(base: &Lattice, lo: Complex64, hi: Complex64) -> Lattice {
    let h = base.spacing;
    let first = base.origin - Complex64::new(0.5 * h, 0.5 * h);
    let last = base.node(base.width - 1, base.height - 1) + Complex64::new(0.5 * h, 0.5 * h);
    let grow = |gap: f64| (gap / h).ceil().max(0.0) as usize;
    let (left, bottom) = (grow(first.re - lo.re), grow(first.im - lo.im));
    let (right, top) = (grow(hi.re - last.re), grow(hi.im - last.im));
    Lattice {
        origin: base.origin - Complex64::new(left as f64 * h, bottom as f64 * h),
        spacing: h,
        width: base.width + left + right,
        height: base.height + bottom + top,
    }
}

/// A field of zeros with an all-true mask on `lattice`.
pub fn zero_field(lattice: Lattice) -> GridField {
    GridField::new(
        lattice,
        vec![Complex64::new(0.0, 0.0); lattice.len()],
        vec![true; lattice.len()],
    )
    .expect("zero field is well-formed")
}

/// Indicator of the disc `|ξ| ≤ radius` on the cell-centered `n × n`
/// lattice over `[−radius, radius]²`.
pub fn disc_indicator(radius: f64, n: usize) -> Result<DbarProblem> {
    let r = Complex64::new(radius, radius);
    let lattice = Lattice::covering(-r, r, n);
    let alpha = GridField::sample(lattice, |_| Complex64::new(1.0, 0.0), |z| z.norm() <= radius)?;
    DbarProblem::new(alpha, radius)
}

/// The C² bump `(1 − |ξ|²/ρ²)³` on `|ξ| < ρ`, sampled on the `n × n` lattice
/// over `[−extent, extent]²`.
pub fn radial_bump(rho: f64, extent: f64, n: usize) -> Result<DbarProblem> {
    let e = Complex64::new(extent, extent);
    let lattice = Lattice::covering(-e, e, n);
    let alpha = GridField::sample(
        lattice,
        |z| {
            let s = 1.0 - z.norm_sqr() / (rho * rho);
            Complex64::new(s * s * s, 0.0)
        },
        |z| z.norm() < rho,
    )?;
    DbarProblem::new(alpha, rho)
}
