//! Solves the Dirichlet problem on the disc by the Poisson integral and runs
//! the instruments that come with it: Laplacian, boundary continuity,
//! Harnack and Hopf.

use holokit::dirichlet::{
    boundary_continuity_gap, harnack_lower_bound_check, hopf_normal_derivative, laplacian_residual, poisson_solve,
    solve_on_lattice, BoundaryData, DEFAULT_HOPF_STEPS,
};
use num_complex::Complex64 as C;

fn main() -> holokit::Result<()> {
    let f = BoundaryData::from_real(|psi| (2.0 * psi).cos(), 256)?;
    for (r, t) in [(0.2, 0.3), (0.6, 1.1), (0.9, 2.5)] {
        let u = poisson_solve(&f, r, t)?.re;
        println!("u({r}, {t}) = {u:+.12}   r^2 cos 2t = {:+.12}", r * r * (2.0 * t).cos());
    }
    let field = solve_on_lattice(&f, 0.9, 64)?;
    println!("discrete Laplacian on r <= 0.9: {:.2e}", laplacian_residual(&field)?);

    let kink = BoundaryData::from_real(|psi| psi.sin().abs(), 1024)?;
    for r in [0.9, 0.99, 0.999] {
        println!("continuity gap of |sin| at r = {r}: {:.3e}", boundary_continuity_gap(&kink, r)?);
    }

    let positive = BoundaryData::from_real(|psi| 1.0 + psi.cos() * psi.sin(), 256)?;
    for r in [0.3, 0.6, 0.9] {
        let h = harnack_lower_bound_check(&positive, r)?;
        println!("harnack at r = {r}: min u = {:.4} >= {:.4}: {}", h.lhs, h.rhs, h.ok);
    }

    let touching = BoundaryData::from_real(|psi| (1.0 - psi.cos()) * (2.0 + psi.sin()), 16384)?;
    let d = hopf_normal_derivative(touching.closed_disc_extension(), C::new(1.0, 0.0), &DEFAULT_HOPF_STEPS)?;
    println!("normal derivative at the boundary minimum: {d:.6} (expected -2)");
    Ok(())
}
