//! The Cauchy–Pompeiu formula for functions that are not holomorphic: the
//! boundary term alone misses, and the area term over ∂f/∂z̄ closes the gap.

use holokit::cauchy::{cauchy_eval, pompeiu_terms};
use holokit::{PlanarDomain, QuadratureSpec};
use num_complex::Complex64 as C;

type Case = (&'static str, fn(C) -> C);

fn main() -> holokit::Result<()> {
    let d = PlanarDomain::unit_disc(256)?;
    let z = C::new(0.3, 0.2);
    let cases: [Case; 3] = [
        ("conj z", |w| w.conj()),
        ("|z|^2", |w| w * w.conj()),
        ("Re z", |w| C::new(w.re, 0.0)),
    ];
    for (name, f) in cases {
        let boundary_only = cauchy_eval(f, &d, z, &QuadratureSpec::default())?;
        println!("{name}: boundary term alone is off by {:.3e}", (boundary_only - f(z)).norm());
        for n in [64, 128, 256, 512] {
            let q = QuadratureSpec::default().with_area_resolution(n);
            let t = pompeiu_terms(f, &d, z, &q, None)?;
            println!("  {n:>3}^2 lattice: full formula error {:.3e}", (t.value() - f(z)).norm());
        }
    }
    Ok(())
}
