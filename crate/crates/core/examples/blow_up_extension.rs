//! Builds a holomorphic function on the unit disc that blows up at the
//! boundary point 1: h(z) = 1/(z − 1) is glued to zero by a cutoff and the
//! glue is repaired with a ∂̄ correction.

use std::sync::Arc;

use holokit::dbar::{blow_up_extension, dbar_residual, zero_field, CutoffSpec, HolomorphicFn, Smoothness};
use holokit::{PlanarDomain, QuadratureSpec};
use num_complex::Complex64 as C;

fn main() -> holokit::Result<()> {
    let d = PlanarDomain::unit_disc(256)?;
    let h: HolomorphicFn = Arc::new(|z: C| 1.0 / (z - 1.0));
    let cutoff = CutoffSpec::new(C::new(1.0, 0.0), 0.2, 0.4, Smoothness::C2)?;
    for n in [128, 256, 512] {
        let q = QuadratureSpec::default().with_area_resolution(n);
        let ext = blow_up_extension(h.clone(), cutoff, &d, &q)?;
        let s = ext.sample_lattice()?;
        println!(
            "{n:>3}^2: residual {:.3e}, correction bound {:.2}",
            dbar_residual(&s, &zero_field(*s.lattice()))?,
            ext.bound()?
        );
    }
    let ext = blow_up_extension(h, cutoff, &d, &QuadratureSpec::default())?;
    println!("approaching the singular point:");
    for k in [1, 3, 5, 8, 12] {
        let z = C::new(1.0 - 0.5f64.powi(k), 0.0);
        let v = ext.eval(&[z])?[0];
        println!("  z = {:.6}: |h^(z)| = {:.4e}", z.re, v.norm());
    }
    Ok(())
}
