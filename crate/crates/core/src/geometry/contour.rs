use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A parametrized curve `t ∈ [0, 1] → ℂ`.
pub type CurveFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Counterclockwise,
    Clockwise,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Counterclockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::Counterclockwise,
        }
    }
}

/// A closed C¹ curve together with its traversal orientation.
///
/// The curve keeps the parametrization it was built with; reversing it flips
/// a sense flag rather than re-parametrizing, so quadrature on a reversed
/// contour visits the same nodes in the same order and returns the exact
/// negative of the forward sum.
#[derive(Clone)]
pub struct Contour {
    position: CurveFn,
    velocity: CurveFn,
    orientation: Orientation,
    node_count: usize,
    reversed: bool,
}

impl fmt::Debug for Contour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Contour")
            .field("orientation", &self.orientation)
            .field("node_count", &self.node_count)
            .field("start", &self.position(0.0))
            .finish()
    }
}

/// Closure tolerance `|γ(0) − γ(1)| ≤ 1e−12·(1 + |γ(0)|)`.
fn closure_gap_ok(start: Complex64, end: Complex64) -> bool {
    (start - end).norm() <= 1e-12 * (1.0 + start.norm())
}

impl Contour {
    /// Builds a contour from a position and velocity pair. The declared
    /// orientation is checked against the sign of the enclosed area.
    pub fn new(
        position: CurveFn,
        velocity: CurveFn,
        orientation: Orientation,
        node_count: usize,
    ) -> Result<Self> {
        if node_count < 4 {
            return Err(Error::InvalidParameter(format!(
                "contour node_count must be >= 4, got {node_count}"
            )));
        }
        let start = position(0.0);
        let end = position(1.0);
        if !start.is_finite() || !end.is_finite() {
            return Err(Error::NonFiniteSample { at: start });
        }
        if !closure_gap_ok(start, end) {
            return Err(Error::OpenContour {
                gap: (start - end).norm(),
            });
        }
        let contour = Contour {
            position,
            velocity,
            orientation,
            node_count,
            reversed: false,
        };
        let area = contour.signed_area(node_count.max(64))?;
        let expected = match orientation {
            Orientation::Counterclockwise => area > 0.0,
            Orientation::Clockwise => area < 0.0,
        };
        if !expected {
            return Err(Error::InvalidParameter(format!(
                "declared orientation {orientation:?} disagrees with signed area {area:e}"
            )));
        }
        Ok(contour)
    }

    pub fn circle(
        center: Complex64,
        radius: f64,
        orientation: Orientation,
        node_count: usize,
    ) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "circle radius must be positive, got {radius}"
            )));
        }
        let position: CurveFn =
            Arc::new(move |t: f64| center + Complex64::from_polar(radius, 2.0 * PI * t));
        let velocity: CurveFn = Arc::new(move |t: f64| {
            Complex64::new(0.0, 2.0 * PI) * Complex64::from_polar(radius, 2.0 * PI * t)
        });
        let ccw = Contour::new(position, velocity, Orientation::Counterclockwise, node_count)?;
        Ok(match orientation {
            Orientation::Counterclockwise => ccw,
            Orientation::Clockwise => ccw.reverse(),
        })
    }

    pub fn unit_circle(node_count: usize) -> Result<Self> {
        Self::circle(Complex64::new(0.0, 0.0), 1.0, Orientation::Counterclockwise, node_count)
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn position(&self, t: f64) -> Complex64 {
        if self.reversed {
            (self.position)(1.0 - t)
        } else {
            (self.position)(t)
        }
    }

    pub fn velocity(&self, t: f64) -> Complex64 {
        if self.reversed {
            -(self.velocity)(1.0 - t)
        } else {
            (self.velocity)(t)
        }
    }

    /// The same curve traversed the other way.
    pub fn reverse(&self) -> Self {
        Contour {
            position: Arc::clone(&self.position),
            velocity: Arc::clone(&self.velocity),
            orientation: self.orientation.flipped(),
            node_count: self.node_count,
            reversed: !self.reversed,
        }
    }

    /// ±1: the traversal sense relative to the stored parametrization.
    pub(crate) fn sense(&self) -> f64 {
        if self.reversed {
            -1.0
        } else {
            1.0
        }
    }

    /// Equispaced nodes `(γ(t_k), γ'(t_k))`, `t_k = k/n`, of the stored
    /// parametrization (independent of the traversal sense).
    pub(crate) fn base_nodes(&self, n: usize) -> impl Iterator<Item = (f64, Complex64, Complex64)> + '_ {
        (0..n).map(move |k| {
            let t = k as f64 / n as f64;
            (t, (self.position)(t), (self.velocity)(t))
        })
    }

    /// Samples `n` nodes along the traversal direction.
    pub fn sample(&self, n: usize) -> Vec<Complex64> {
        (0..n).map(|k| self.position(k as f64 / n as f64)).collect()
    }

    /// `½ Im ∮ z̄ dz`, positive for counterclockwise curves.
    pub fn signed_area(&self, n: usize) -> Result<f64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (_, z, v) in self.base_nodes(n) {
            if !(z.is_finite() && v.is_finite()) {
                return Err(Error::NonFiniteSample { at: z });
            }
            acc += z.conj() * v;
        }
        Ok(0.5 * self.sense() * acc.im / n as f64)
    }

    /// Largest distance between consecutive nodes when `n` nodes are used.
    pub fn max_node_gap(&self, n: usize) -> f64 {
        let pts = self.sample(n);
        pts.iter()
            .zip(pts.iter().cycle().skip(1))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Distance from `z` to the closed polyline through `n` nodes.
    pub fn polyline_distance(&self, z: Complex64, n: usize) -> f64 {
        let pts = self.sample(n);
        pts.iter()
            .zip(pts.iter().cycle().skip(1))
            .map(|(&a, &b)| segment_distance(z, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Winding number of the polyline through `n` nodes around `z`.
    pub fn winding_number(&self, z: Complex64, n: usize) -> i64 {
        let pts = self.sample(n);
        let total: f64 = pts
            .iter()
            .zip(pts.iter().cycle().skip(1))
            .map(|(&a, &b)| ((b - z) / (a - z)).arg())
            .sum();
        (total / (2.0 * PI)).round() as i64
    }

    pub fn to_samples(&self) -> ContourSamples {
        ContourSamples {
            orientation: self.orientation,
            nodes: self.sample(self.node_count),
        }
    }
}

fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Serialized form of a contour: its nodes in traversal order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourSamples {
    pub orientation: Orientation,
    pub nodes: Vec<Complex64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_orientation_matches_area_sign() {
        let c = Contour::unit_circle(64).unwrap();
        assert!((c.signed_area(64).unwrap() - PI).abs() < 1e-12);
        let r = c.reverse();
        assert_eq!(r.orientation(), Orientation::Clockwise);
        assert!((r.signed_area(64).unwrap() + PI).abs() < 1e-12);
    }

    #[test]
    fn rejects_open_curve() {
        let pos: CurveFn = Arc::new(|t| Complex64::new(t, 0.0));
        let vel: CurveFn = Arc::new(|_| Complex64::new(1.0, 0.0));
        assert!(matches!(
            Contour::new(pos, vel, Orientation::Counterclockwise, 16),
            Err(Error::OpenContour { .. })
        ));
    }

    #[test]
    fn rejects_wrong_declared_orientation() {
        let pos: CurveFn = Arc::new(|t| Complex64::from_polar(1.0, 2.0 * PI * t));
        let vel: CurveFn =
            Arc::new(|t| Complex64::new(0.0, 2.0 * PI) * Complex64::from_polar(1.0, 2.0 * PI * t));
        assert!(Contour::new(pos, vel, Orientation::Clockwise, 16).is_err());
    }

    #[test]
    fn winding_and_distance() {
        let c = Contour::unit_circle(256).unwrap();
        assert_eq!(c.winding_number(Complex64::new(0.2, 0.1), 256), 1);
        assert_eq!(c.winding_number(Complex64::new(2.0, 0.0), 256), 0);
        assert_eq!(c.reverse().winding_number(Complex64::new(0.0, 0.0), 256), -1);
        let d = c.polyline_distance(Complex64::new(0.5, 0.0), 256);
        assert!((d - 0.5).abs() < 1e-3);
    }
}
