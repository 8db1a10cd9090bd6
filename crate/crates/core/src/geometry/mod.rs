//! Complex scalars, contours, domains, lattices and the quadrature engines
//! shared by the analytic modules.

mod contour;
mod domain;
mod grid;
mod quadrature;
mod wirtinger;

pub use contour::{Contour, ContourSamples, CurveFn, Orientation};
pub use domain::{MembershipFn, PlanarDomain};
pub use grid::{GridField, Lattice};
pub(crate) use grid::cubic_weights;
pub use quadrature::{
    area_integral, contour_integral, gauss_legendre, singular_area_integral, QuadratureSpec,
    PATCH_RADIUS_CELLS,
};
pub(crate) use quadrature::{lattice_share, PolarPatch};
pub use wirtinger::{default_step, wirtinger};

/// The scalar type used throughout.
pub type ComplexValue = num_complex::Complex64;
