//! Solves ∂f/∂z̄ = α by the area Cauchy transform, once for the indicator of
//! the unit disc (exact solution conj z inside, 1/z outside) and once for a
//! smooth bump, and reports the finite-difference residual and the
//! sup bound.

use holokit::dbar::{
    boundedness_bound, cauchy_transform, cauchy_transform_on_lattice, dbar_residual, disc_indicator, radial_bump,
};
use holokit::QuadratureSpec;
use num_complex::Complex64 as C;

fn main() -> holokit::Result<()> {
    let q = QuadratureSpec::default();
    let p = disc_indicator(1.0, 256)?;
    let probes = [C::new(0.2, 0.5), C::new(-0.6, 0.1), C::new(1.5, 0.0), C::new(0.0, -1.8)];
    let values = cauchy_transform(&p, &probes, &q)?;
    println!("indicator of the unit disc");
    for (z, f) in probes.iter().zip(&values) {
        let exact = if z.norm() < 1.0 { z.conj() } else { 1.0 / z };
        println!("  f({z:.2}) = {f:.6}   error {:.2e}", (f - exact).norm());
    }

    println!("radial bump of radius 0.6");
    for n in [64, 128, 256, 512] {
        let bump = radial_bump(0.6, 1.0, n)?;
        let f = cauchy_transform_on_lattice(&bump, &q)?;
        println!(
            "  {n:>3}^2: residual {:.3e}, sup|f| {:.4} <= bound {:.4}",
            dbar_residual(&f, bump.alpha())?,
            f.sup_norm(),
            boundedness_bound(&bump, &q)?
        );
    }
    Ok(())
}
