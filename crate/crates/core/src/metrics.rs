//! Carathéodory and Kobayashi lengths on the unit disc `D`, the bidisc `D²`
//! and the unit ball `B ⊂ ℂ²`.
//!
//! At the origin both lengths of a tangent vector are the norm whose unit
//! ball is the domain itself: `|ξ|` on `D`, `max |ξ_j|` on `D²` and the
//! Euclidean norm on `B`. Elsewhere on `D` and `D²` the base point is moved
//! to the origin by a Möbius automorphism and the origin value is applied to
//! the pushed-forward vector, which gives `|ξ|/(1 − |P|²)` factorwise. On `B`
//! only the origin is supported.
//!
//! Points of `D` are stored as elements of ℂ² with vanishing second
//! coordinate.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::automorphisms::{BidiscAutomorphism, MobiusFactor, Unitary2};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat2, C2};

/// Tolerance for metric equalities on unit-scale inputs.
pub const METRIC_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainModel {
    UnitDisc,
    UnitBall2,
    UnitBidisc,
}

impl DomainModel {
    /// Whether `z` lies in the open domain (for the disc: first coordinate
    /// in `D`, second exactly zero).
    pub fn contains(&self, z: &C2) -> bool {
        match self {
            DomainModel::UnitDisc => z[0].norm() < 1.0 && z[1] == Complex64::new(0.0, 0.0),
            DomainModel::UnitBall2 => linalg::norm(z) < 1.0,
            DomainModel::UnitBidisc => linalg::max_norm(z) < 1.0,
        }
    }

    /// A fixed spread of interior points used to spot-check maps.
    pub fn probe_points(&self) -> Vec<C2> {
        let zero = Complex64::new(0.0, 0.0);
        let mut out = vec![[zero, zero]];
        for &r in &[0.5, 0.9, 0.999] {
            for k in 0..8 {
                let a = Complex64::from_polar(r, k as f64 * std::f64::consts::FRAC_PI_4);
                let b = Complex64::from_polar(r, 0.3 - k as f64 * 1.1);
                out.push(match self {
                    DomainModel::UnitDisc => [a, zero],
                    DomainModel::UnitBidisc => [a, b],
                    DomainModel::UnitBall2 => {
                        let s = std::f64::consts::FRAC_1_SQRT_2;
                        [a * s, b * s]
                    }
                });
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    Caratheodory,
    Kobayashi,
}

/// A tangent vector `ξ` at a base point `P` of a model domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricQuery {
    pub model: DomainModel,
    pub kind: MetricKind,
    pub base: C2,
    pub tangent: C2,
}

impl MetricQuery {
    pub fn new(model: DomainModel, kind: MetricKind, base: C2, tangent: C2) -> Result<Self> {
        if !linalg::is_finite(&base) || !linalg::is_finite(&tangent) {
            return Err(Error::InvalidParameter("base point and tangent must be finite".into()));
        }
        let zero = Complex64::new(0.0, 0.0);
        if model == DomainModel::UnitDisc && (base[1] != zero || tangent[1] != zero) {
            return Err(Error::DimensionMismatch(
                "the disc is one-dimensional; second components must vanish".into(),
            ));
        }
        if !model.contains(&base) {
            return Err(Error::PointOutsideDomain);
        }
        Ok(MetricQuery {
            model,
            kind,
            base,
            tangent,
        })
    }

    /// A query on the disc from scalar data.
    pub fn disc(kind: MetricKind, base: Complex64, tangent: Complex64) -> Result<Self> {
        let zero = Complex64::new(0.0, 0.0);
        Self::new(DomainModel::UnitDisc, kind, [base, zero], [tangent, zero])
    }
}

/// The automorphism moving `P` to the origin (factorwise on `D²`; the
/// second factor is the identity on `D`).
fn recentering(model: DomainModel, base: &C2) -> Result<BidiscAutomorphism> {
    match model {
        DomainModel::UnitDisc => BidiscAutomorphism::new(base[0], Complex64::new(0.0, 0.0)),
        DomainModel::UnitBidisc => BidiscAutomorphism::new(base[0], base[1]),
        DomainModel::UnitBall2 => Err(Error::UnsupportedBasePoint),
    }
}

fn origin_length(model: DomainModel, xi: &C2) -> f64 {
    match model {
        DomainModel::UnitDisc => xi[0].norm(),
        DomainModel::UnitBidisc => linalg::max_norm(xi),
        DomainModel::UnitBall2 => linalg::norm(xi),
    }
}

/// Carathéodory or Kobayashi length of `ξ` at `P`; the two agree on these
/// models.
pub fn metric_length(q: &MetricQuery) -> Result<f64> {
    if !q.model.contains(&q.base) {
        return Err(Error::PointOutsideDomain);
    }
    if q.model == DomainModel::UnitBall2 {
        if linalg::norm(&q.base) != 0.0 {
            return Err(Error::UnsupportedBasePoint);
        }
        return Ok(origin_length(q.model, &q.tangent));
    }
    let psi = recentering(q.model, &q.base)?;
    let pushed = linalg::apply(&psi.jacobian(&q.base), &q.tangent);
    Ok(origin_length(q.model, &pushed))
}

/// [`metric_length`] with the push-forward taken from [`jacobian_c`] of the
/// recentering automorphism instead of its closed-form derivative.
pub fn metric_length_by_differences(q: &MetricQuery, step: f64) -> Result<f64> {
    if q.model == DomainModel::UnitBall2 {
        return metric_length(q);
    }
    if !q.model.contains(&q.base) {
        return Err(Error::PointOutsideDomain);
    }
    let psi = recentering(q.model, &q.base)?;
    let jac = jacobian_c(|z: &C2| psi.map(z), &q.base, step)?;
    Ok(origin_length(q.model, &linalg::apply(&jac.matrix, &q.tangent)))
}

/// Central-difference complex Jacobian with its anti-holomorphic part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexJacobian {
    /// `∂f_i/∂z_j`
    pub matrix: Mat2,
    /// `max |∂f_i/∂z̄_j|`, zero to stencil order for holomorphic `f`.
    pub dbar_residual: f64,
}

/// `∂f_i/∂z_j` by central differences along the real and imaginary
/// directions of each coordinate.
pub fn jacobian_c<F>(f: F, z: &C2, step: f64) -> Result<ComplexJacobian>
where
    F: Fn(&C2) -> C2,
{
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {step}")));
    }
    let mut matrix = [[Complex64::new(0.0, 0.0); 2]; 2];
    let mut dbar_residual = 0.0f64;
    for j in 0..2 {
        let probe = |dir: Complex64| -> Result<C2> {
            let mut w = *z;
            w[j] += dir;
            let v = f(&w);
            if linalg::is_finite(&v) {
                Ok(v)
            } else {
                Err(Error::NonFiniteStencil { at: z[j] })
            }
        };
        let h = Complex64::new(step, 0.0);
        let ih = Complex64::new(0.0, step);
        let (xp, xm, yp, ym) = (probe(h)?, probe(-h)?, probe(ih)?, probe(-ih)?);
        for i in 0..2 {
            let dx = (xp[i] - xm[i]) / (2.0 * step);
            let dy = (yp[i] - ym[i]) / (2.0 * step);
            matrix[i][j] = (dx - Complex64::i() * dy) * 0.5;
            dbar_residual = dbar_residual.max(((dx + Complex64::i() * dy) * 0.5).norm());
        }
    }
    Ok(ComplexJacobian { matrix, dbar_residual })
}

pub type PathFn = Arc<dyn Fn(f64) -> C2 + Send + Sync>;

/// A curve `γ : [0, 1] → model` with its velocity.
#[derive(Clone)]
pub struct CurvePath {
    pub model: DomainModel,
    pub position: PathFn,
    pub velocity: PathFn,
}

impl std::fmt::Debug for CurvePath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CurvePath")
            .field("model", &self.model)
            .field("start", &(self.position)(0.0))
            .field("end", &(self.position)(1.0))
            .finish()
    }
}

impl CurvePath {
    pub fn new(model: DomainModel, position: PathFn, velocity: PathFn) -> Self {
        CurvePath {
            model,
            position,
            velocity,
        }
    }

    /// The straight segment from `a` to `b`.
    pub fn segment(model: DomainModel, a: C2, b: C2) -> Self {
        let d = linalg::sub(&b, &a);
        CurvePath {
            model,
            position: Arc::new(move |t| linalg::add(&a, &linalg::scale(Complex64::new(t, 0.0), &d))),
            velocity: Arc::new(move |_| d),
        }
    }

    /// The same curve traversed as `t ↦ γ(t²)`.
    pub fn reparametrized_by_square(&self) -> Self {
        let (p, v) = (self.position.clone(), self.velocity.clone());
        CurvePath {
            model: self.model,
            position: Arc::new(move |t| p(t * t)),
            velocity: Arc::new(move |t| linalg::scale(Complex64::new(2.0 * t, 0.0), &v(t * t))),
        }
    }
}

/// `∫₀¹ F(γ(t), γ′(t)) dt` by the composite trapezoid rule with `n_steps`
/// intervals.
pub fn curve_length(path: &CurvePath, kind: MetricKind, n_steps: usize) -> Result<f64> {
    if n_steps == 0 {
        return Err(Error::InvalidParameter("curve length needs at least one step".into()));
    }
    let mut acc = 0.0;
    for k in 0..=n_steps {
        let t = k as f64 / n_steps as f64;
        let q = MetricQuery::new(path.model, kind, (path.position)(t), (path.velocity)(t))?;
        let w = if k == 0 || k == n_steps { 0.5 } else { 1.0 };
        acc += w * metric_length(&q)?;
    }
    Ok(acc / n_steps as f64)
}

/// Holomorphic maps between the model domains with exact Jacobians.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "map", rename_all = "snake_case")]
pub enum ModelMap {
    /// `D² → D`, `z ↦ z_index`
    Projection { index: usize },
    /// `D → D²`, `z ↦ (z, 0)`
    Inclusion,
    /// `z ↦ cz` on one model, `|c| ≤ 1`
    Scale { model: DomainModel, c: Complex64 },
    /// A Möbius automorphism of `D`.
    DiscAutomorphism(MobiusFactor),
    /// A factorwise automorphism of `D²`.
    BidiscAutomorphism(BidiscAutomorphism),
    /// A unitary rotation of `B`.
    Unitary(Unitary2),
    /// `z ↦ z₁η₁ + z₂η₂` into `D`, admissible when it cannot leave the disc.
    Functional { source: DomainModel, eta: C2 },
    /// The constant map to `value`.
    Constant {
        source: DomainModel,
        target: DomainModel,
        value: C2,
    },
    /// `outer ∘ inner`
    Compose { outer: Box<ModelMap>, inner: Box<ModelMap> },
}

impl ModelMap {
    pub fn projection(index: usize) -> Result<Self> {
        if index > 1 {
            return Err(Error::InvalidParameter(format!("projection index {index} is not 0 or 1")));
        }
        Ok(ModelMap::Projection { index })
    }

    pub fn scale(model: DomainModel, c: Complex64) -> Result<Self> {
        if !(c.norm() <= 1.0) {
            return Err(Error::InvalidParameter(format!("scale factor {c} has modulus above 1")));
        }
        Ok(ModelMap::Scale { model, c })
    }

    /// `z ↦ z·η`, checked to map `source` into `D`.
    pub fn functional(source: DomainModel, eta: C2) -> Result<Self> {
        let reach = match source {
            DomainModel::UnitDisc => eta[0].norm(),
            DomainModel::UnitBall2 => linalg::norm(&eta),
            DomainModel::UnitBidisc => eta[0].norm() + eta[1].norm(),
        };
        if !(reach <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "functional with |eta| reach {reach} does not map into the disc"
            )));
        }
        Ok(ModelMap::Functional { source, eta })
    }

    pub fn compose(outer: ModelMap, inner: ModelMap) -> Result<Self> {
        if outer.source() != inner.target() {
            return Err(Error::InvalidParameter(format!(
                "cannot compose: inner lands in {:?}, outer starts on {:?}",
                inner.target(),
                outer.source()
            )));
        }
        Ok(ModelMap::Compose {
            outer: Box::new(outer),
            inner: Box::new(inner),
        })
    }

    pub fn source(&self) -> DomainModel {
        match self {
            ModelMap::Projection { .. } => DomainModel::UnitBidisc,
            ModelMap::Inclusion | ModelMap::DiscAutomorphism(_) => DomainModel::UnitDisc,
            ModelMap::Scale { model, .. } => *model,
            ModelMap::BidiscAutomorphism(_) => DomainModel::UnitBidisc,
            ModelMap::Unitary(_) => DomainModel::UnitBall2,
            ModelMap::Functional { source, .. } | ModelMap::Constant { source, .. } => *source,
            ModelMap::Compose { inner, .. } => inner.source(),
        }
    }

    pub fn target(&self) -> DomainModel {
        match self {
            ModelMap::Projection { .. } | ModelMap::DiscAutomorphism(_) | ModelMap::Functional { .. } => {
                DomainModel::UnitDisc
            }
            ModelMap::Inclusion | ModelMap::BidiscAutomorphism(_) => DomainModel::UnitBidisc,
            ModelMap::Scale { model, .. } => *model,
            ModelMap::Unitary(_) => DomainModel::UnitBall2,
            ModelMap::Constant { target, .. } => *target,
            ModelMap::Compose { outer, .. } => outer.target(),
        }
    }

    /// Whether the map is a biholomorphism onto its target, so that it
    /// preserves both metrics.
    pub fn is_biholomorphic(&self) -> bool {
        match self {
            ModelMap::DiscAutomorphism(_) | ModelMap::BidiscAutomorphism(_) | ModelMap::Unitary(_) => true,
            ModelMap::Scale { c, .. } => c.norm() == 1.0,
            ModelMap::Compose { outer, inner } => outer.is_biholomorphic() && inner.is_biholomorphic(),
            _ => false,
        }
    }

    pub fn apply(&self, z: &C2) -> C2 {
        let zero = Complex64::new(0.0, 0.0);
        match self {
            ModelMap::Projection { index } => [z[*index], zero],
            ModelMap::Inclusion => [z[0], zero],
            ModelMap::Scale { c, .. } => linalg::scale(*c, z),
            ModelMap::DiscAutomorphism(m) => [m.apply(z[0]), zero],
            ModelMap::BidiscAutomorphism(a) => a.map(z),
            ModelMap::Unitary(u) => u.apply(z),
            ModelMap::Functional { eta, .. } => [z[0] * eta[0] + z[1] * eta[1], zero],
            ModelMap::Constant { value, .. } => *value,
            ModelMap::Compose { outer, inner } => outer.apply(&inner.apply(z)),
        }
    }

    /// Exact complex Jacobian at `z`. Rows for the unused second coordinate
    /// of `D` are zero.
    pub fn jacobian(&self, z: &C2) -> Mat2 {
        let (o, n) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        match self {
            ModelMap::Projection { index } => {
                let mut m = [[n; 2]; 2];
                m[0][*index] = o;
                m
            }
            ModelMap::Inclusion => [[o, n], [n, n]],
            ModelMap::Scale { c, .. } => linalg::diag(*c, *c),
            ModelMap::DiscAutomorphism(m) => [[m.derivative(z[0]), n], [n, n]],
            ModelMap::BidiscAutomorphism(a) => a.jacobian(z),
            ModelMap::Unitary(u) => *u.matrix(),
            ModelMap::Functional { eta, .. } => [[eta[0], eta[1]], [n, n]],
            ModelMap::Constant { .. } => [[n; 2]; 2],
            ModelMap::Compose { outer, inner } => {
                linalg::mul(&outer.jacobian(&inner.apply(z)), &inner.jacobian(z))
            }
        }
    }
}

/// Outcome of comparing `F(P, ξ)` with `F(f(P), f_*ξ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs ≥ rhs − 1e−8`
    pub ok: bool,
    /// Set for biholomorphisms, which must give `lhs = rhs`.
    pub equality_expected: bool,
    /// `|lhs − rhs|`
    pub gap: f64,
}

fn spot_check(f: &ModelMap) -> Result<()> {
    for z in f.source().probe_points() {
        if !f.target().contains(&f.apply(&z)) {
            return Err(Error::MapLeavesTarget { at: z });
        }
    }
    Ok(())
}

/// Compares the source length `F(P, ξ)` with the target length of the
/// pushed-forward vector `F(f(P), Jac f(P)·ξ)`.
pub fn distance_decreasing_check(f: &ModelMap, source: &MetricQuery) -> Result<DistanceCheck> {
    if f.source() != source.model {
        return Err(Error::InvalidParameter(format!(
            "map starts on {:?} but the query lives on {:?}",
            f.source(),
            source.model
        )));
    }
    let image = f.apply(&source.base);
    if !f.target().contains(&image) {
        return Err(Error::MapLeavesTarget { at: source.base });
    }
    spot_check(f)?;
    let pushed = linalg::apply(&f.jacobian(&source.base), &source.tangent);
    let lhs = metric_length(source)?;
    let rhs = metric_length(&MetricQuery::new(f.target(), source.kind, image, pushed)?)?;
    Ok(DistanceCheck {
        lhs,
        rhs,
        ok: lhs >= rhs - METRIC_TOLERANCE,
        equality_expected: f.is_biholomorphic(),
        gap: (lhs - rhs).abs(),
    })
}

/// Whether `ξ` lies in the indicatrix `{ξ : F(0, ξ) < 1}`.
pub fn indicatrix_membership(model: DomainModel, kind: MetricKind, xi: &C2) -> Result<bool> {
    let origin = [Complex64::new(0.0, 0.0); 2];
    Ok(metric_length(&MetricQuery::new(model, kind, origin, *xi)?)? < 1.0)
}

/// `max |Jac f(0)·ξ|` over candidate maps `model → D` with `f(0) = 0`, a
/// lower bound for the Carathéodory length at the origin.
pub fn caratheodory_lower_bound(model: DomainModel, xi: &C2, candidates: &[ModelMap]) -> Result<f64> {
    let origin = [Complex64::new(0.0, 0.0); 2];
    let mut best = 0.0f64;
    for (index, f) in candidates.iter().enumerate() {
        let admissible = f.source() == model
            && f.target() == DomainModel::UnitDisc
            && f.apply(&origin)[0].norm() <= 1e-12
            && spot_check(f).is_ok();
        if !admissible {
            return Err(Error::CandidateNotAdmissible { index });
        }
        best = best.max(linalg::apply(&f.jacobian(&origin), xi)[0].norm());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const K: MetricKind = MetricKind::Kobayashi;
    const O: C2 = [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];

    #[test]
    fn closed_forms() {
        let ball = MetricQuery::new(DomainModel::UnitBall2, K, O, [c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(metric_length(&ball).unwrap(), 1.0);
        let bi = MetricQuery::new(DomainModel::UnitBidisc, K, O, [c(0.3, 0.0), c(0.0, 0.4)]).unwrap();
        assert!((metric_length(&bi).unwrap() - 0.4).abs() < 1e-15);
        let moved = MetricQuery::new(DomainModel::UnitBidisc, K, [c(0.5, 0.0), c(0.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert!((metric_length(&moved).unwrap() - 4.0 / 3.0).abs() < 1e-14);
        assert!((metric_length_by_differences(&moved, 1e-5).unwrap() - 4.0 / 3.0).abs() < 1e-8);
        let off = MetricQuery::new(DomainModel::UnitBall2, K, [c(0.1, 0.0), c(0.0, 0.0)], O).unwrap();
        assert_eq!(metric_length(&off).unwrap_err(), Error::UnsupportedBasePoint);
        assert_eq!(
            MetricQuery::new(DomainModel::UnitDisc, K, [c(0.1, 0.0), c(0.2, 0.0)], O).unwrap_err(),
            Error::DimensionMismatch("the disc is one-dimensional; second components must vanish".into())
        );
        assert_eq!(
            MetricQuery::disc(K, c(1.5, 0.0), c(1.0, 0.0)).unwrap_err(),
            Error::PointOutsideDomain
        );
    }

    #[test]
    fn jacobians() {
        let z = [c(1.0, 0.0), c(2.0, 0.0)];
        let id = jacobian_c(|w: &C2| *w, &z, 1e-4).unwrap();
        assert!(linalg::max_entry_distance(&id.matrix, &linalg::identity()) < 1e-10);
        let swap = jacobian_c(|w: &C2| [w[1], w[0]], &z, 1e-4).unwrap();
        assert!(linalg::max_entry_distance(&swap.matrix, &[[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]) < 1e-10);
        let poly = jacobian_c(|w: &C2| [w[0] * w[0], w[0] * w[1]], &z, 1e-4).unwrap();
        let want = [[c(2.0, 0.0), c(0.0, 0.0)], [c(2.0, 0.0), c(1.0, 0.0)]];
        assert!(linalg::max_entry_distance(&poly.matrix, &want) < 1e-6);
        assert!(poly.dbar_residual < 1e-6);
        let conj = jacobian_c(|w: &C2| [w[0].conj(), w[1]], &z, 1e-4).unwrap();
        assert!((conj.dbar_residual - 1.0).abs() < 1e-8);
    }

    #[test]
    fn curve_lengths() {
        let seg = CurvePath::segment(DomainModel::UnitDisc, O, [c(0.5, 0.0), c(0.0, 0.0)]);
        assert!((curve_length(&seg, K, 10_000).unwrap() - 0.5f64.atanh()).abs() < 1e-6);
        let bi = CurvePath::segment(DomainModel::UnitBidisc, O, [c(0.5, 0.0), c(0.5, 0.0)]);
        assert!((curve_length(&bi, K, 10_000).unwrap() - 0.5f64.atanh()).abs() < 1e-6);
        let still = CurvePath::segment(DomainModel::UnitBidisc, [c(0.2, 0.0), c(0.1, 0.0)], [c(0.2, 0.0), c(0.1, 0.0)]);
        assert_eq!(curve_length(&still, K, 10).unwrap(), 0.0);
    }

    #[test]
    fn distance_decreasing_examples() {
        let q = MetricQuery::new(DomainModel::UnitBidisc, K, O, [c(0.3, 0.0), c(0.4, 0.0)]).unwrap();
        let d = distance_decreasing_check(&ModelMap::projection(0).unwrap(), &q).unwrap();
        assert!(d.ok && (d.lhs - 0.4).abs() < 1e-15 && (d.rhs - 0.3).abs() < 1e-15);
        let psi = BidiscAutomorphism::new(c(0.2, 0.1), c(-0.5, 0.3)).unwrap();
        let q = MetricQuery::new(DomainModel::UnitBidisc, K, [c(0.1, 0.6), c(-0.3, 0.2)], [c(0.7, 0.1), c(0.2, -0.9)])
            .unwrap();
        let d = distance_decreasing_check(&ModelMap::BidiscAutomorphism(psi), &q).unwrap();
        assert!(d.ok && d.equality_expected && d.gap < 1e-8);
        let constant = ModelMap::Constant {
            source: DomainModel::UnitBidisc,
            target: DomainModel::UnitDisc,
            value: [c(0.3, 0.0), c(0.0, 0.0)],
        };
        let d = distance_decreasing_check(&constant, &q).unwrap();
        assert!(d.ok && d.rhs == 0.0);
        let escape = ModelMap::Constant {
            source: DomainModel::UnitBidisc,
            target: DomainModel::UnitDisc,
            value: [c(1.3, 0.0), c(0.0, 0.0)],
        };
        assert!(matches!(distance_decreasing_check(&escape, &q), Err(Error::MapLeavesTarget { .. })));
    }

    #[test]
    fn indicatrices() {
        assert!(indicatrix_membership(DomainModel::UnitBall2, K, &[c(0.6, 0.0), c(0.7, 0.0)]).unwrap());
        assert!(!indicatrix_membership(DomainModel::UnitBall2, K, &[c(0.99, 0.0), c(0.99, 0.0)]).unwrap());
        assert!(indicatrix_membership(DomainModel::UnitBidisc, K, &[c(0.99, 0.0), c(0.99, 0.0)]).unwrap());
        assert!(indicatrix_membership(DomainModel::UnitBidisc, K, &O).unwrap());
    }

    #[test]
    fn caratheodory_bounds() {
        let e1 = [c(1.0, 0.0), c(0.0, 0.0)];
        let phi = ModelMap::functional(DomainModel::UnitBall2, e1).unwrap();
        assert_eq!(caratheodory_lower_bound(DomainModel::UnitBall2, &e1, &[phi]).unwrap(), 1.0);
        let xi = [c(0.3, 0.0), c(0.4, 0.0)];
        let projections = [ModelMap::projection(0).unwrap(), ModelMap::projection(1).unwrap()];
        assert!((caratheodory_lower_bound(DomainModel::UnitBidisc, &xi, &projections).unwrap() - 0.4).abs() < 1e-15);
        assert_eq!(caratheodory_lower_bound(DomainModel::UnitBidisc, &xi, &[]).unwrap(), 0.0);
        let moved = ModelMap::compose(
            ModelMap::DiscAutomorphism(MobiusFactor::new(c(0.5, 0.0), 0.0).unwrap()),
            ModelMap::projection(0).unwrap(),
        )
        .unwrap();
        assert_eq!(
            caratheodory_lower_bound(DomainModel::UnitBidisc, &xi, &[moved]).unwrap_err(),
            Error::CandidateNotAdmissible { index: 0 }
        );
    }
}
