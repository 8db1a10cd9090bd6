use std::f64::consts::TAU;

use holokit::automorphisms::{BidiscAutomorphism, MobiusFactor};
use holokit::bers::{compose, divide_at_point, AlgebraHom, Poly};
use holokit::dirichlet::{poisson_kernel, poisson_solve, BoundaryData};
use holokit::metrics::{metric_length, DomainModel, MetricKind, MetricQuery};
use num_complex::Complex64 as C;
use proptest::prelude::*;

fn complex(bound: f64) -> impl Strategy<Value = C> {
    (-bound..bound, -bound..bound).prop_map(|(re, im)| C::new(re, im))
}

fn in_disc(radius: f64) -> impl Strategy<Value = C> {
    (0.0..radius, 0.0..TAU).prop_map(|(r, t)| C::from_polar(r, t))
}

fn poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(complex(2.0), 1..=max_degree + 1).prop_map(|c| Poly::new(c).unwrap())
}

proptest! {
    #[test]
    fn mobius_preserves_the_disc(a in in_disc(0.95), theta in 0.0..TAU, z in in_disc(0.999)) {
        let m = MobiusFactor::new(a, theta).unwrap();
        prop_assert!(m.apply(z).norm() < 1.0);
        prop_assert!((m.inverse().apply(m.apply(z)) - z).norm() < 1e-9);
    }

    #[test]
    fn bidisc_automorphisms_are_metric_isometries(
        a in in_disc(0.9), b in in_disc(0.9), p in (in_disc(0.9), in_disc(0.9)), xi in (complex(1.0), complex(1.0)),
    ) {
        let f = BidiscAutomorphism::new(a, b).unwrap();
        let p = [p.0, p.1];
        let xi = [xi.0, xi.1];
        let q = MetricQuery::new(DomainModel::UnitBidisc, MetricKind::Kobayashi, p, xi).unwrap();
        let pushed = holokit::linalg::apply(&f.jacobian(&p), &xi);
        let q2 = MetricQuery::new(DomainModel::UnitBidisc, MetricKind::Kobayashi, f.map(&p), pushed).unwrap();
        let (l1, l2) = (metric_length(&q).unwrap(), metric_length(&q2).unwrap());
        prop_assert!((l1 - l2).abs() <= 1e-9 * l1.max(1.0));
    }

    #[test]
    fn metric_is_absolutely_homogeneous(p in in_disc(0.95), xi in complex(3.0), s in complex(3.0)) {
        let k = MetricKind::Caratheodory;
        let base = metric_length(&MetricQuery::disc(k, p, xi).unwrap()).unwrap();
        let scaled = metric_length(&MetricQuery::disc(k, p, s * xi).unwrap()).unwrap();
        prop_assert!((scaled - s.norm() * base).abs() <= 1e-12 * scaled.max(1.0));
    }

    #[test]
    fn poisson_kernel_is_positive(r in 0.0..0.999f64, delta in -10.0..10.0f64) {
        prop_assert!(poisson_kernel(r, delta).unwrap() > 0.0);
    }

    #[test]
    fn poisson_solution_obeys_the_maximum_principle(
        coeffs in prop::collection::vec(-1.0..1.0f64, 1..6), r in 0.0..0.99f64, theta in 0.0..TAU,
    ) {
        let f = BoundaryData::from_real(
            |psi| coeffs.iter().enumerate().map(|(k, a)| a * (k as f64 * psi).cos()).sum(),
            256,
        ).unwrap();
        let (lo, hi) = f.samples().iter().fold((f64::MAX, f64::MIN), |(lo, hi), v| (lo.min(v.re), hi.max(v.re)));
        let u = poisson_solve(&f, r, theta).unwrap().re;
        prop_assert!(u >= lo - 1e-12 && u <= hi + 1e-12);
    }

    #[test]
    fn composition_agrees_pointwise(f in poly(4), h in poly(3), z in complex(1.0)) {
        let fh = compose(&f, &h).unwrap();
        let lhs = fh.evaluate(z);
        let rhs = f.evaluate(h.evaluate(z));
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn pullback_is_multiplicative(f in poly(3), g in poly(3), h in poly(3)) {
        let phi = AlgebraHom::from_map(h);
        let lhs = phi.pullback(&f.mul(&g).unwrap()).unwrap();
        let rhs = phi.pullback(&f).unwrap().mul(&phi.pullback(&g).unwrap()).unwrap();
        let scale = rhs.coefficients().iter().map(|c| c.norm()).fold(1.0, f64::max);
        prop_assert!(lhs.max_coefficient_distance(&rhs) <= 1e-12 * scale);
    }

    #[test]
    fn division_at_a_point_reconstructs(g in poly(6), c in complex(1.5), z in complex(1.5)) {
        let (value, quotient) = divide_at_point(&g, c);
        prop_assert!((value - g.evaluate(c)).norm() <= 1e-10 * (1.0 + value.norm()));
        let rebuilt = value + (z - c) * quotient.evaluate(z);
        prop_assert!((rebuilt - g.evaluate(z)).norm() <= 1e-9 * (1.0 + rebuilt.norm()));
    }
}
