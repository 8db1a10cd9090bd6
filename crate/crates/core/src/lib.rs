//! Executable complex analysis.
//!
//! Each module turns one circle of classical results into operations with
//! checkable numeric output:
//!
//! - [`geometry`]: contours, domains, lattices, contour/area/singular quadrature
//!   and Wirtinger derivatives.
//! - [`cauchy`]: the Cauchy integral formula, the Cauchy–Pompeiu formula and a
//!   holomorphy residual.
//! - [`dbar`]: the solution operator for `∂f/∂z̄ = α` and the boundary
//!   blow-up extension built from it.
//! - [`dirichlet`]: the Poisson integral on the disc with Laplacian, boundary
//!   continuity, Hölder, Harnack and Hopf instruments.
//! - [`metrics`]: Carathéodory and Kobayashi lengths on the disc, bidisc and
//!   ball, curve lengths, indicatrices, distance decreasing.
//! - [`automorphisms`]: bidisc Möbius maps, isotropy groups and the linear
//!   witness that the ball and bidisc are inequivalent.
//! - [`bers`]: characters and algebra homomorphisms of truncated polynomial
//!   algebras.
//! - [`osgood`]: boundedness sets, union covers and the discrete Baire ball.
//!
//! [`linalg`] holds the ℂ² and 2×2 matrix helpers shared by the several-variable
//! modules. The [`cli`] module drives all of the above from the `holokit` binary.

pub mod automorphisms;
pub mod bers;
pub mod cauchy;
pub mod cli;
pub mod dbar;
pub mod dirichlet;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod metrics;
pub mod osgood;
pub mod selftest;

pub use error::{Error, Result};
pub use geometry::{ComplexValue, Contour, GridField, Lattice, Orientation, PlanarDomain, QuadratureSpec};
