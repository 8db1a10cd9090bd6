//! Recovers interior values of holomorphic functions from their boundary
//! values on the unit circle, and shows how the error falls with the number
//! of contour nodes.

use holokit::cauchy::cauchy_eval;
use holokit::{PlanarDomain, QuadratureSpec};
use num_complex::Complex64 as C;

fn main() -> holokit::Result<()> {
    let z = C::new(0.4, -0.3);
    println!("f(z) recovered at z = {z}");
    println!("{:>6}  {:>12}  {:>12}", "nodes", "exp", "1/(2-z)");
    for n in [32, 40, 48, 64, 96, 128] {
        let d = PlanarDomain::unit_disc(n)?;
        let q = QuadratureSpec::default().with_contour_nodes(n);
        let e1 = (cauchy_eval(|w: C| w.exp(), &d, z, &q)? - z.exp()).norm();
        let e2 = (cauchy_eval(|w: C| 1.0 / (2.0 - w), &d, z, &q)? - 1.0 / (2.0 - z)).norm();
        println!("{n:>6}  {e1:>12.3e}  {e2:>12.3e}");
    }
    Ok(())
}
