//! Carathéodory and Kobayashi lengths on the disc, bidisc and ball, a curve
//! length, and the distance-decreasing property under a holomorphic map.

use holokit::metrics::{
    curve_length, distance_decreasing_check, metric_length, CurvePath, DomainModel, MetricKind, MetricQuery, ModelMap,
};
use num_complex::Complex64 as C;

fn main() -> holokit::Result<()> {
    let c = |re, im| C::new(re, im);
    let o = [c(0.0, 0.0); 2];
    let xi = [c(0.3, 0.0), c(0.0, 0.4)];
    for model in [DomainModel::UnitBidisc, DomainModel::UnitBall2] {
        for kind in [MetricKind::Caratheodory, MetricKind::Kobayashi] {
            let v = metric_length(&MetricQuery::new(model, kind, o, xi)?)?;
            println!("{model:?} {kind:?} at 0 of (0.3, 0.4i): {v:.6}");
        }
    }
    for r in [0.0, 0.5, 0.9, 0.99] {
        let v = metric_length(&MetricQuery::disc(MetricKind::Kobayashi, c(r, 0.0), c(1.0, 0.0))?)?;
        println!("disc metric at {r}: {v:.4}");
    }
    let seg = CurvePath::segment(DomainModel::UnitDisc, o, [c(0.5, 0.0), c(0.0, 0.0)]);
    let len = curve_length(&seg, MetricKind::Kobayashi, 4096)?;
    println!("length of [0, 0.5]: {len:.10} vs atanh(0.5) = {:.10}", 0.5f64.atanh());

    let q = MetricQuery::new(DomainModel::UnitBidisc, MetricKind::Kobayashi, [c(0.2, 0.1), c(-0.5, 0.3)], xi)?;
    let f = ModelMap::compose(ModelMap::scale(DomainModel::UnitDisc, c(0.0, 0.8))?, ModelMap::projection(1)?)?;
    let check = distance_decreasing_check(&f, &q)?;
    println!("projection then scale: {:.4} >= {:.4}: {}", check.lhs, check.rhs, check.ok);
    Ok(())
}
