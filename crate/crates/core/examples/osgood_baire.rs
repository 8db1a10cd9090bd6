//! Pointwise bounded sequences: the sets {sup_j |f_j| <= k} cover the grid,
//! one of them contains a disc, and on that disc the limit is holomorphic.
//! The grid is the disc of radius 2, so z^j is not bounded on all of it, the
//! divergent sequence is bounded nowhere, and the conj sequence covers but has
//! a non-holomorphic limit.

use holokit::osgood::{
    boundedness_sets, cover_check, dense_ball_search, limit_holomorphy_residual, FunctionSequence, SequenceKind,
    WorkingGrid,
};
use holokit::QuadratureSpec;
use num_complex::Complex64 as C;

fn main() -> holokit::Result<()> {
    let grid = WorkingGrid::closed_disc(C::new(0.0, 0.0), 2.0, 48)?;
    for kind in SequenceKind::ALL {
        let seq = FunctionSequence::registered(kind, 64)?;
        let masks = boundedness_sets(&seq, &grid, 8)?;
        let sizes: Vec<usize> = masks.iter().map(|m| m.count()).collect();
        let cover = cover_check(&masks)?;
        print!("{:<20} |E_k| = {sizes:?}, covered {}", kind.name(), cover.covered);
        if cover.covered {
            let ball = dense_ball_search(&masks)?;
            let residual = limit_holomorphy_residual(&seq, ball.center, ball.radius, &QuadratureSpec::default())?;
            print!(
                ", disc in E_{} at {:.3} of radius {:.3} ({:.1} cells), residual {residual:.2e}",
                ball.k, ball.center, ball.radius, ball.radius_cells
            );
        }
        println!();
    }
    Ok(())
}
