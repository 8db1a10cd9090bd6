//! Automorphisms of the bidisc, the isotropy groups of the bidisc and the
//! ball at the origin, and the linear witness that the two domains are not
//! equivalent.
//!
//! A disc automorphism is `z ↦ e^{iθ}(z − a)/(1 − āz)` with `|a| < 1`; the
//! bidisc automorphisms used here act factorwise. At the origin the bidisc
//! isotropy group contains the diagonal rotations, which commute, while the
//! ball's contains all of `U(2)`, which does not.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat2, C2};

/// `z ↦ e^{iθ}(z − a)/(1 − āz)`, an automorphism of the unit disc sending
/// `a` to 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MobiusFactor {
    pub a: Complex64,
    pub theta: f64,
}

impl MobiusFactor {
    pub fn new(a: Complex64, theta: f64) -> Result<Self> {
        if !(a.norm() < 1.0) || !theta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Möbius factor needs |a| < 1 and a finite phase, got a = {a}, theta = {theta}"
            )));
        }
        Ok(MobiusFactor { a, theta })
    }

    pub fn identity() -> Self {
        MobiusFactor {
            a: Complex64::new(0.0, 0.0),
            theta: 0.0,
        }
    }

    fn phase(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.phase() * (z - self.a) / (Complex64::new(1.0, 0.0) - self.a.conj() * z)
    }

    /// `e^{iθ}(1 − |a|²)/(1 − āz)²`
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let d = Complex64::new(1.0, 0.0) - self.a.conj() * z;
        self.phase() * (1.0 - self.a.norm_sqr()) / (d * d)
    }

    /// The inverse map, with parameters `(−e^{iθ}a, −θ)`.
    pub fn inverse(&self) -> Self {
        MobiusFactor {
            a: -self.phase() * self.a,
            theta: -self.theta,
        }
    }

    /// `self ∘ inner`, again of the same form.
    pub fn compose(&self, inner: &MobiusFactor) -> Self {
        let a = inner.inverse().apply(self.a);
        // at its zero a map of this form has derivative e^{iθ}/(1 − |a|²)
        let slope = self.derivative(self.a) * inner.derivative(a);
        MobiusFactor { a, theta: slope.arg() }
    }
}

fn check_bidisc(z: &C2) -> Result<()> {
    if z.iter().all(|w| w.norm() < 1.0) {
        Ok(())
    } else {
        Err(Error::PointOutsideDomain)
    }
}

/// `ψ(z₁, z₂) = (e^{iθ₁}(z₁ − α)/(1 − ᾱz₁), e^{iθ₂}(z₂ − β)/(1 − β̄z₂))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BidiscAutomorphism {
    pub factors: [MobiusFactor; 2],
}

impl BidiscAutomorphism {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        Self::with_rotations(alpha, beta, 0.0, 0.0)
    }

    pub fn with_rotations(alpha: Complex64, beta: Complex64, theta1: f64, theta2: f64) -> Result<Self> {
        Ok(BidiscAutomorphism {
            factors: [MobiusFactor::new(alpha, theta1)?, MobiusFactor::new(beta, theta2)?],
        })
    }

    pub fn alpha(&self) -> Complex64 {
        self.factors[0].a
    }

    pub fn beta(&self) -> Complex64 {
        self.factors[1].a
    }

    pub fn inverse(&self) -> Self {
        BidiscAutomorphism {
            factors: [self.factors[0].inverse(), self.factors[1].inverse()],
        }
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &BidiscAutomorphism) -> Self {
        BidiscAutomorphism {
            factors: [
                self.factors[0].compose(&inner.factors[0]),
                self.factors[1].compose(&inner.factors[1]),
            ],
        }
    }

    /// The diagonal complex Jacobian at `z`.
    pub fn jacobian(&self, z: &C2) -> Mat2 {
        linalg::diag(self.factors[0].derivative(z[0]), self.factors[1].derivative(z[1]))
    }

    /// Image of `z`, computed without a domain check.
    pub fn map(&self, z: &C2) -> C2 {
        [self.factors[0].apply(z[0]), self.factors[1].apply(z[1])]
    }
}

/// `ψ(z)` for `z` in the open bidisc.
pub fn apply_bidisc_automorphism(a: &BidiscAutomorphism, z: &C2) -> Result<C2> {
    check_bidisc(z)?;
    Ok(a.map(z))
}

/// Tolerance on `‖UU* − I‖` accepted as unitary.
pub const UNITARY_TOLERANCE: f64 = 1e-12;

/// A unitary 2×2 matrix, an element of the ball's isotropy group at 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Unitary2 {
    m: Mat2,
}

impl Unitary2 {
    pub fn new(m: Mat2) -> Result<Self> {
        let defect = linalg::max_entry_distance(&linalg::mul(&m, &linalg::adjoint(&m)), &linalg::identity());
        if !(defect <= UNITARY_TOLERANCE) {
            return Err(Error::InvalidParameter(format!(
                "matrix is not unitary: |UU* - I| = {defect:e}"
            )));
        }
        Ok(Unitary2 { m })
    }

    /// `(z₁, z₂) ↦ (z₂, z₁)`
    pub fn swap() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Unitary2 { m: [[z, o], [o, z]] }
    }

    /// `diag(e^{iθ₁}, e^{iθ₂})`
    pub fn diagonal(theta1: f64, theta2: f64) -> Self {
        Unitary2 {
            m: linalg::diag(Complex64::from_polar(1.0, theta1), Complex64::from_polar(1.0, theta2)),
        }
    }

    /// Gram–Schmidt applied to the columns of a matrix with independent
    /// standard complex Gaussian entries.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        loop {
            let mut draw = || Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            let u: C2 = [draw(), draw()];
            let v: C2 = [draw(), draw()];
            let nu = linalg::norm(&u);
            if nu < 1e-8 {
                continue;
            }
            let e1 = linalg::scale(Complex64::new(1.0 / nu, 0.0), &u);
            let proj = e1[0].conj() * v[0] + e1[1].conj() * v[1];
            let w = linalg::sub(&v, &linalg::scale(proj, &e1));
            let nw = linalg::norm(&w);
            if nw < 1e-8 {
                continue;
            }
            let e2 = linalg::scale(Complex64::new(1.0 / nw, 0.0), &w);
            if let Ok(u) = Unitary2::new(linalg::from_columns(&e1, &e2)) {
                return u;
            }
        }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn apply(&self, z: &C2) -> C2 {
        linalg::apply(&self.m, z)
    }
}

/// `diag(e^{iθ₁}, e^{iθ₂})` as an element of the bidisc isotropy group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagonalRotation {
    pub theta1: f64,
    pub theta2: f64,
}

impl DiagonalRotation {
    pub fn new(theta1: f64, theta2: f64) -> Result<Self> {
        if !(theta1.is_finite() && theta2.is_finite()) {
            return Err(Error::InvalidParameter("rotation phases must be finite".into()));
        }
        Ok(DiagonalRotation { theta1, theta2 })
    }

    pub fn matrix(&self) -> Mat2 {
        linalg::diag(Complex64::from_polar(1.0, self.theta1), Complex64::from_polar(1.0, self.theta2))
    }
}

/// An element of one of the two isotropy groups.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IsotropyElement {
    Diagonal(DiagonalRotation),
    Unitary(Unitary2),
}

impl IsotropyElement {
    pub fn matrix(&self) -> Mat2 {
        match self {
            IsotropyElement::Diagonal(d) => d.matrix(),
            IsotropyElement::Unitary(u) => u.m,
        }
    }
}

impl From<DiagonalRotation> for IsotropyElement {
    fn from(d: DiagonalRotation) -> Self {
        IsotropyElement::Diagonal(d)
    }
}

impl From<Unitary2> for IsotropyElement {
    fn from(u: Unitary2) -> Self {
        IsotropyElement::Unitary(u)
    }
}

/// `max |(g₁g₂ − g₂g₁)_{ij}|` for two elements of the same kind.
pub fn commutator_defect(g1: &IsotropyElement, g2: &IsotropyElement) -> Result<f64> {
    if std::mem::discriminant(g1) != std::mem::discriminant(g2) {
        return Err(Error::KindMismatch);
    }
    let (a, b) = (g1.matrix(), g2.matrix());
    Ok(linalg::max_entry_distance(&linalg::mul(&a, &b), &linalg::mul(&b, &a)))
}

/// Defect a unitary pair must exceed to count as a witness.
pub const WITNESS_THRESHOLD: f64 = 0.1;

/// Random pairs tried before falling back to the swap/diagonal pair.
pub const WITNESS_ATTEMPT_CAP: usize = 10_000;

/// A non-commuting pair of unitaries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitaryWitness {
    pub u1: Unitary2,
    pub u2: Unitary2,
    pub defect: f64,
    /// Number of random pairs drawn, including the successful one; zero
    /// when the fixed fallback pair was used.
    pub attempts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsotropyReport {
    pub seed: u64,
    pub sample_count: usize,
    /// Largest commutator defect over random diagonal-rotation pairs.
    pub bidisc_max_defect: f64,
    pub ball_witness: UnitaryWitness,
}

/// Samples `sample_count` pairs of diagonal rotations and measures their
/// commutator, then draws unitary pairs until one fails to commute by more
/// than [`WITNESS_THRESHOLD`].
pub fn isotropy_abelian_report(sample_count: usize, seed: u64) -> Result<IsotropyReport> {
    if sample_count < 2 {
        return Err(Error::InvalidParameter(format!(
            "sample count must be at least 2, got {sample_count}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = 2.0 * std::f64::consts::PI;
    let mut bidisc_max_defect = 0.0f64;
    for _ in 0..sample_count {
        let g1 = DiagonalRotation::new(rng.random::<f64>() * tau, rng.random::<f64>() * tau)?;
        let g2 = DiagonalRotation::new(rng.random::<f64>() * tau, rng.random::<f64>() * tau)?;
        bidisc_max_defect = bidisc_max_defect.max(commutator_defect(&g1.into(), &g2.into())?);
    }
    let mut witness = None;
    for attempt in 1..=WITNESS_ATTEMPT_CAP {
        let (u1, u2) = (Unitary2::random(&mut rng), Unitary2::random(&mut rng));
        let defect = commutator_defect(&u1.into(), &u2.into())?;
        if defect > WITNESS_THRESHOLD {
            witness = Some(UnitaryWitness {
                u1,
                u2,
                defect,
                attempts: attempt,
            });
            break;
        }
    }
    let ball_witness = match witness {
        Some(w) => w,
        None => {
            let (u1, u2) = (Unitary2::swap(), Unitary2::diagonal(0.0, std::f64::consts::PI));
            UnitaryWitness {
                u1,
                u2,
                defect: commutator_defect(&u1.into(), &u2.into())?,
                attempts: 0,
            }
        }
    };
    Ok(IsotropyReport {
        seed,
        sample_count,
        bidisc_max_defect,
        ball_witness,
    })
}

/// Which step of the segment argument produced the witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessBranch {
    /// A corner of the boundary segment is not sent to the sphere.
    Endpoint,
    /// Both corners land on the sphere, so the midpoint falls inside.
    Midpoint,
}

/// Evidence that the linear map `L` does not carry the bidisc onto the ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoincareWitness {
    /// Parameter on the boundary segment `{(t, 1) : 0 ≤ t ≤ 1}`.
    pub t: f64,
    /// The bidisc boundary point `(t, 1)`.
    pub witness_point: C2,
    /// `L·(t, 1)`
    pub image: C2,
    pub image_norm: f64,
    pub branch: WitnessBranch,
}

/// Tolerance for "lies on the unit sphere".
pub const SPHERE_TOLERANCE: f64 = 1e-9;

/// Smallest `|det L|` accepted.
pub const SINGULAR_DET: f64 = 1e-10;

/// Follows the segment `{(t, 1) : 0 ≤ t ≤ 1} ⊂ ∂D²` through `L`. If an
/// endpoint is not mapped to the unit sphere, `L` does not send `∂D²` into
/// `∂B`; otherwise the image segment is a chord of the sphere and its
/// midpoint lies strictly inside, which `∂B` (containing no segments)
/// cannot accommodate either.
pub fn poincare_witness(l: &Mat2) -> Result<PoincareWitness> {
    let det = linalg::det(l).norm();
    if !(det > SINGULAR_DET) {
        return Err(Error::SingularMatrix { det });
    }
    let at = |t: f64| {
        let point = [Complex64::new(t, 0.0), Complex64::new(1.0, 0.0)];
        let image = linalg::apply(l, &point);
        (point, image, linalg::norm(&image))
    };
    for t in [0.0, 1.0] {
        let (witness_point, image, image_norm) = at(t);
        if (image_norm - 1.0).abs() > SPHERE_TOLERANCE {
            return Ok(PoincareWitness {
                t,
                witness_point,
                image,
                image_norm,
                branch: WitnessBranch::Endpoint,
            });
        }
    }
    let (witness_point, image, image_norm) = at(0.5);
    Ok(PoincareWitness {
        t: 0.5,
        witness_point,
        image,
        image_norm,
        branch: WitnessBranch::Midpoint,
    })
}

/// `|(p + q)/2|` for distinct points of the unit sphere in ℂ², which the
/// parallelogram law puts strictly below 1.
pub fn strict_convexity_check(p: &C2, q: &C2) -> Result<f64> {
    for v in [p, q] {
        let n = linalg::norm(v);
        if !((n - 1.0).abs() <= SPHERE_TOLERANCE) {
            return Err(Error::NotOnSphere { norm: n });
        }
    }
    if linalg::norm(&linalg::sub(p, q)) <= 1e-12 {
        return Err(Error::CoincidentPoints);
    }
    Ok(linalg::norm(&linalg::add(p, q)) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &C2, b: &C2, tol: f64) -> bool {
        linalg::norm(&linalg::sub(a, b)) < tol
    }

    #[test]
    fn automorphism_examples() {
        let a = BidiscAutomorphism::new(c(0.5, 0.0), c(0.0, 0.0)).unwrap();
        let z = [c(0.5, 0.0), c(0.3, 0.0)];
        assert!(close(&apply_bidisc_automorphism(&a, &z).unwrap(), &[c(0.0, 0.0), c(0.3, 0.0)], 1e-15));
        let origin = [c(0.0, 0.0); 2];
        assert!(close(&apply_bidisc_automorphism(&a, &origin).unwrap(), &[c(-0.5, 0.0), c(0.0, 0.0)], 1e-15));
        assert_eq!(
            apply_bidisc_automorphism(&a, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap_err(),
            Error::PointOutsideDomain
        );
        assert!(BidiscAutomorphism::new(c(1.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn inverse_and_composition() {
        let a = BidiscAutomorphism::with_rotations(c(0.3, -0.2), c(-0.6, 0.1), 0.7, -2.0).unwrap();
        let b = BidiscAutomorphism::with_rotations(c(-0.1, 0.5), c(0.2, 0.2), 1.3, 0.4).unwrap();
        let z = [c(0.25, 0.4), c(-0.7, 0.05)];
        assert!(close(&a.inverse().map(&a.map(&z)), &z, 1e-12));
        assert!(close(&a.compose(&b).map(&z), &a.map(&b.map(&z)), 1e-12));
    }

    #[test]
    fn commutators() {
        let d1 = DiagonalRotation::new(0.3, 1.1).unwrap();
        let d2 = DiagonalRotation::new(-2.0, 0.4).unwrap();
        assert_eq!(commutator_defect(&d1.into(), &d2.into()).unwrap(), 0.0);
        let s: IsotropyElement = Unitary2::swap().into();
        let f: IsotropyElement = Unitary2::diagonal(0.0, std::f64::consts::PI).into();
        assert!((commutator_defect(&s, &f).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(commutator_defect(&s, &s).unwrap(), 0.0);
        assert_eq!(commutator_defect(&s, &d1.into()).unwrap_err(), Error::KindMismatch);
    }

    #[test]
    fn random_unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let u = Unitary2::random(&mut rng);
            let z = [c(0.3, -1.2), c(2.0, 0.5)];
            assert!((linalg::norm(&u.apply(&z)) - linalg::norm(&z)).abs() < 1e-12);
        }
    }

    #[test]
    fn isotropy_report() {
        let r = isotropy_abelian_report(2, 3).unwrap();
        assert_eq!(r.bidisc_max_defect, 0.0);
        assert!(r.ball_witness.defect > WITNESS_THRESHOLD);
        assert_eq!(isotropy_abelian_report(2, 3).unwrap(), r);
        assert!(isotropy_abelian_report(1, 3).is_err());
    }

    #[test]
    fn poincare_examples() {
        let w = poincare_witness(&linalg::identity()).unwrap();
        assert_eq!(w.branch, WitnessBranch::Endpoint);
        assert_eq!(w.witness_point, [c(1.0, 0.0), c(1.0, 0.0)]);
        assert!((w.image_norm - 2f64.sqrt()).abs() < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let w = poincare_witness(&linalg::diag(c(s, 0.0), c(s, 0.0))).unwrap();
        assert_eq!((w.branch, w.t), (WitnessBranch::Endpoint, 0.0));
        assert!((w.image_norm - s).abs() < 1e-15);
        let l = linalg::from_columns(&[c(-1.0, 0.0), c(1.0, 0.0)], &[c(1.0, 0.0), c(0.0, 0.0)]);
        let w = poincare_witness(&l).unwrap();
        assert_eq!(w.branch, WitnessBranch::Midpoint);
        assert!(close(&w.image, &[c(0.5, 0.0), c(0.5, 0.0)], 1e-15));
        assert!((w.image_norm - 0.5f64.sqrt()).abs() < 1e-12);
        assert!(matches!(poincare_witness(&[[c(0.0, 0.0); 2]; 2]), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn convexity() {
        let e1 = [c(1.0, 0.0), c(0.0, 0.0)];
        let e2 = [c(0.0, 0.0), c(1.0, 0.0)];
        assert!((strict_convexity_check(&e1, &e2).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(strict_convexity_check(&e1, &[c(-1.0, 0.0), c(0.0, 0.0)]).unwrap(), 0.0);
        assert_eq!(strict_convexity_check(&e1, &e1).unwrap_err(), Error::CoincidentPoints);
        assert!(matches!(
            strict_convexity_check(&e1, &[c(2.0, 0.0), c(0.0, 0.0)]),
            Err(Error::NotOnSphere { .. })
        ));
    }
}
