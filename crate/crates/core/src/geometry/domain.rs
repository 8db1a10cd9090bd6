use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::contour::{Contour, Orientation};
use super::grid::Lattice;
use crate::error::{Error, Result};

pub type MembershipFn = Arc<dyn Fn(Complex64) -> bool + Send + Sync>;

/// A bounded planar domain: a counterclockwise outer boundary, clockwise
/// holes, and a membership predicate used by the area quadratures.
#[derive(Clone)]
pub struct PlanarDomain {
    outer: Contour,
    holes: Vec<Contour>,
    contains: MembershipFn,
    lower: Complex64,
    upper: Complex64,
}

impl fmt::Debug for PlanarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlanarDomain")
            .field("outer", &self.outer)
            .field("holes", &self.holes.len())
            .field("bbox", &(self.lower, self.upper))
            .finish()
    }
}

const SHAPE_SAMPLES: usize = 1024;

impl PlanarDomain {
    pub fn new(outer: Contour, holes: Vec<Contour>, contains: MembershipFn) -> Result<Self> {
        if outer.orientation() != Orientation::Counterclockwise {
            return Err(Error::InvalidParameter(
                "outer boundary must be counterclockwise".into(),
            ));
        }
        for hole in &holes {
            if hole.orientation() != Orientation::Clockwise {
                return Err(Error::InvalidParameter("holes must be clockwise".into()));
            }
            if hole
                .sample(64)
                .into_iter()
                .any(|z| outer.winding_number(z, SHAPE_SAMPLES) != 1)
            {
                return Err(Error::InvalidParameter(
                    "hole is not strictly inside the outer boundary".into(),
                ));
            }
        }
        let pts = outer.sample(SHAPE_SAMPLES);
        let (mut lo, mut hi) = (pts[0], pts[0]);
        for z in &pts {
            lo.re = lo.re.min(z.re);
            lo.im = lo.im.min(z.im);
            hi.re = hi.re.max(z.re);
            hi.im = hi.im.max(z.im);
        }
        // polyline sampling can undershoot a curved extremum
        let pad = outer.max_node_gap(SHAPE_SAMPLES);
        let pad = Complex64::new(pad, pad);
        Ok(PlanarDomain {
            outer,
            holes,
            contains,
            lower: lo - pad,
            upper: hi + pad,
        })
    }

    pub fn disc(center: Complex64, radius: f64, node_count: usize) -> Result<Self> {
        let outer = Contour::circle(center, radius, Orientation::Counterclockwise, node_count)?;
        let r = Complex64::new(radius, radius);
        Ok(PlanarDomain {
            outer,
            holes: Vec::new(),
            contains: Arc::new(move |z| (z - center).norm() < radius),
            lower: center - r,
            upper: center + r,
        })
    }

    pub fn unit_disc(node_count: usize) -> Result<Self> {
        Self::disc(Complex64::new(0.0, 0.0), 1.0, node_count)
    }

    pub fn annulus(center: Complex64, inner: f64, outer: f64, node_count: usize) -> Result<Self> {
        if !(0.0 < inner && inner < outer) {
            return Err(Error::InvalidParameter(format!(
                "annulus needs 0 < inner < outer, got {inner}, {outer}"
            )));
        }
        let outer_c = Contour::circle(center, outer, Orientation::Counterclockwise, node_count)?;
        let hole = Contour::circle(center, inner, Orientation::Clockwise, node_count)?;
        let r = Complex64::new(outer, outer);
        Ok(PlanarDomain {
            outer: outer_c,
            holes: vec![hole],
            contains: Arc::new(move |z| {
                let d = (z - center).norm();
                inner < d && d < outer
            }),
            lower: center - r,
            upper: center + r,
        })
    }

    pub fn outer(&self) -> &Contour {
        &self.outer
    }

    pub fn holes(&self) -> &[Contour] {
        &self.holes
    }

    /// Outer boundary followed by the holes, each with its stored orientation.
    pub fn boundary(&self) -> impl Iterator<Item = &Contour> {
        std::iter::once(&self.outer).chain(self.holes.iter())
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (self.contains)(z)
    }

    pub fn bounding_box(&self) -> (Complex64, Complex64) {
        (self.lower, self.upper)
    }

    /// Cell-centered lattice over the bounding box with `resolution` cells
    /// along the longer side.
    pub fn area_lattice(&self, resolution: usize) -> Lattice {
        Lattice::covering(self.lower, self.upper, resolution)
    }

    /// Distance from `z` to the nearest boundary polyline sampled with `n`
    /// nodes, together with the largest node gap among those polylines.
    pub fn boundary_clearance(&self, z: Complex64, n: usize) -> (f64, f64) {
        self.boundary().fold((f64::INFINITY, 0.0), |(d, g), c| {
            (d.min(c.polyline_distance(z, n)), g.max(c.max_node_gap(n)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annulus_membership() {
        let a = PlanarDomain::annulus(Complex64::new(0.0, 0.0), 0.5, 2.0, 64).unwrap();
        assert!(a.contains(Complex64::new(1.0, 0.0)));
        assert!(!a.contains(Complex64::new(0.1, 0.0)));
        assert!(!a.contains(Complex64::new(2.5, 0.0)));
        assert_eq!(a.holes().len(), 1);
    }

    #[test]
    fn generic_domain_bbox_contains_curve() {
        let c = Contour::unit_circle(128).unwrap();
        let d = PlanarDomain::new(c, vec![], Arc::new(|z: Complex64| z.norm() < 1.0)).unwrap();
        let (lo, hi) = d.bounding_box();
        assert!(lo.re <= -1.0 && lo.im <= -1.0 && hi.re >= 1.0 && hi.im >= 1.0);
    }

    #[test]
    fn rejects_hole_outside() {
        let outer = Contour::unit_circle(64).unwrap();
        let hole = Contour::circle(Complex64::new(3.0, 0.0), 0.5, Orientation::Clockwise, 64).unwrap();
        assert!(PlanarDomain::new(outer, vec![hole], Arc::new(|_| true)).is_err());
    }
}
