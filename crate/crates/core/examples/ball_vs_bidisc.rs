//! Two ways to see that the ball and the bidisc in C^2 are not
//! biholomorphic: a linear map sends some boundary segment of the bidisc off
//! the sphere, and the isotropy group at the origin is abelian for the bidisc
//! but not for the ball.

use holokit::automorphisms::{isotropy_abelian_report, poincare_witness};
use holokit::linalg;
use num_complex::Complex64 as C;

fn main() -> holokit::Result<()> {
    let c = |re| C::new(re, 0.0);
    let matrices = [
        ("identity", linalg::from_columns(&[c(1.0), c(0.0)], &[c(0.0), c(1.0)])),
        ("scaled", linalg::from_columns(&[c(0.5), c(0.0)], &[c(0.0), c(0.5)])),
        ("shear", linalg::from_columns(&[c(-1.0), c(1.0)], &[c(1.0), c(0.0)])),
    ];
    for (name, l) in matrices {
        let w = poincare_witness(&l)?;
        println!(
            "{name}: boundary point (t, 1) with t = {:.3} maps to norm {:.6} ({:?})",
            w.t, w.image_norm, w.branch
        );
    }
    let r = isotropy_abelian_report(100, 42)?;
    println!("bidisc isotropy: largest commutator defect {:e}", r.bidisc_max_defect);
    println!(
        "ball isotropy: non-commuting unitaries found after {} tries, defect {:.4}",
        r.ball_witness.attempts, r.ball_witness.defect
    );
    Ok(())
}
