//! Truncated polynomial algebras: point evaluations, characters, synthetic
//! division and the pullback homomorphisms `f ↦ f∘h`.
//!
//! Every polynomial has degree at most [`POLY_DEGREE_CAP`]. Arithmetic is
//! plain floating point, so integer coefficients stay exact as long as the
//! intermediate values fit in the mantissa.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree any [`Poly`] may reach.
pub const POLY_DEGREE_CAP: usize = 64;

/// Defects below this count as zero in audits.
pub const AUDIT_TOLERANCE: f64 = 1e-10;

/// Relative tolerance for the multiplicativity of a character table.
pub const CHARACTER_TOLERANCE: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A polynomial `∑ a_k z^k`, stored without trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct Poly {
    coefficients: Vec<Complex64>,
}

impl TryFrom<Vec<Complex64>> for Poly {
    type Error = Error;
    fn try_from(v: Vec<Complex64>) -> Result<Self> {
        Poly::new(v)
    }
}

impl From<Poly> for Vec<Complex64> {
    fn from(p: Poly) -> Self {
        p.coefficients
    }
}

impl Poly {
    /// Coefficients in increasing degree; trailing zeros are dropped.
    pub fn new(mut coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter("polynomial coefficients must be finite".into()));
        }
        while coefficients.last() == Some(&ZERO) {
            coefficients.pop();
        }
        if coefficients.len() > POLY_DEGREE_CAP + 1 {
            return Err(Error::DegreeOverflow {
                degree: coefficients.len() - 1,
                cap: POLY_DEGREE_CAP,
            });
        }
        Ok(Poly { coefficients })
    }

    pub fn from_real(coefficients: &[f64]) -> Result<Self> {
        Self::new(coefficients.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Poly::new(vec![c]).expect("a finite constant is a polynomial")
    }

    /// The identity function `z`.
    pub fn identity() -> Self {
        Poly {
            coefficients: vec![ZERO, ONE],
        }
    }

    /// `z^k`
    pub fn monomial(k: usize) -> Result<Self> {
        let mut c = vec![ZERO; k + 1];
        c[k] = ONE;
        Self::new(c)
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Coefficient of `z^k`, zero past the degree.
    pub fn coefficient(&self, k: usize) -> Complex64 {
        self.coefficients.get(k).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, with the zero polynomial counted as degree 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, c: Complex64) -> Complex64 {
        self.coefficients.iter().rev().fold(ZERO, |acc, &a| acc * c + a)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coefficients.len().max(other.coefficients.len());
        let c = (0..n).map(|k| self.coefficient(k) + other.coefficient(k)).collect();
        Poly::new(c).expect("sum keeps the larger degree")
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(-ONE))
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly::new(self.coefficients.iter().map(|&a| a * s).collect()).expect("scaling keeps the degree")
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero());
        }
        let degree = self.degree() + other.degree();
        if degree > POLY_DEGREE_CAP {
            return Err(Error::DegreeOverflow {
                degree,
                cap: POLY_DEGREE_CAP,
            });
        }
        let mut c = vec![ZERO; degree + 1];
        for (i, &a) in self.coefficients.iter().enumerate() {
            for (j, &b) in other.coefficients.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    /// Coefficientwise complex conjugate.
    pub fn conj_coefficients(&self) -> Poly {
        Poly::new(self.coefficients.iter().map(|a| a.conj()).collect()).expect("conjugation keeps the degree")
    }

    /// `max_k |a_k − b_k|`
    pub fn max_coefficient_distance(&self, other: &Poly) -> f64 {
        let n = self.coefficients.len().max(other.coefficients.len());
        (0..n)
            .map(|k| (self.coefficient(k) - other.coefficient(k)).norm())
            .fold(0.0, f64::max)
    }
}

/// `f∘h` by Horner's scheme in the algebra.
pub fn compose(f: &Poly, h: &Poly) -> Result<Poly> {
    let degree = f.degree() * h.degree();
    if degree > POLY_DEGREE_CAP {
        return Err(Error::DegreeOverflow {
            degree,
            cap: POLY_DEGREE_CAP,
        });
    }
    let mut acc = Poly::zero();
    for &a in f.coefficients.iter().rev() {
        acc = acc.mul(h)?.add(&Poly::constant(a));
    }
    Ok(acc)
}

/// Synthetic division `g(z) = g(c) + (z − c)·g̃(z)`; returns `(g(c), g̃)`.
pub fn divide_at_point(g: &Poly, c: Complex64) -> (Complex64, Poly) {
    if g.is_zero() {
        return (ZERO, Poly::zero());
    }
    let n = g.degree();
    let mut quotient = vec![ZERO; n];
    let mut carry = ZERO;
    for k in (0..=n).rev() {
        let b = g.coefficients[k] + carry * c;
        if k == 0 {
            return (b, Poly::new(quotient).expect("quotient has lower degree"));
        }
        quotient[k - 1] = b;
        carry = b;
    }
    unreachable!("the loop returns at k = 0")
}

/// The values `φ(z^k)` of a candidate character for `k = 0..N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterTable {
    images: Vec<Complex64>,
}

impl CharacterTable {
    /// Requires `images[0] = 1` and at most `POLY_DEGREE_CAP + 1` entries.
    pub fn new(images: Vec<Complex64>) -> Result<Self> {
        if images.len() < 2 {
            return Err(Error::InvalidParameter("a character table needs φ(1) and φ(z)".into()));
        }
        if images.len() > POLY_DEGREE_CAP + 1 {
            return Err(Error::DegreeOverflow {
                degree: images.len() - 1,
                cap: POLY_DEGREE_CAP,
            });
        }
        if images[0] != ONE {
            return Err(Error::InvalidParameter(format!("φ(1) must be 1, got {}", images[0])));
        }
        Ok(CharacterTable { images })
    }

    /// The table of the point evaluation `f ↦ f(c)` up to degree `n`.
    pub fn evaluation(c: Complex64, n: usize) -> Result<Self> {
        Self::new((0..=n as i32).map(|k| c.powi(k)).collect())
    }

    pub fn images(&self) -> &[Complex64] {
        &self.images
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CharacterPoint {
    /// `φ(z)`
    pub c: Complex64,
    /// Whether `φ(z^k) = c^k` for every listed `k`.
    pub consistent: bool,
    /// `max_k |φ(z^k) − c^k| / max(1, |c^k|)`
    pub max_defect: f64,
}

/// The point `c = φ(z)` a character must evaluate at, and whether the table
/// is multiplicative enough to be that evaluation.
pub fn character_point(t: &CharacterTable) -> CharacterPoint {
    let c = t.images[1];
    let mut power = ONE;
    let mut max_defect = 0.0f64;
    for &image in &t.images {
        max_defect = max_defect.max((image - power).norm() / power.norm().max(1.0));
        power *= c;
    }
    CharacterPoint {
        c,
        consistent: max_defect <= CHARACTER_TOLERANCE,
        max_defect,
    }
}

/// The homomorphism `f ↦ f∘h`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraHom {
    h: Poly,
}

impl AlgebraHom {
    pub fn from_map(h: Poly) -> Self {
        AlgebraHom { h }
    }

    pub fn map(&self) -> &Poly {
        &self.h
    }

    pub fn pullback(&self, f: &Poly) -> Result<Poly> {
        compose(f, &self.h)
    }

    /// For affine `h(z) = az + b` with `a ≠ 0`, the pullback by
    /// `h⁻¹(z) = (z − b)/a`.
    pub fn affine_inverse(&self) -> Result<AlgebraHom> {
        if self.h.degree() != 1 {
            return Err(Error::InvalidParameter(format!(
                "only affine maps are inverted here, got degree {}",
                self.h.degree()
            )));
        }
        let (b, a) = (self.h.coefficient(0), self.h.coefficient(1));
        Ok(AlgebraHom {
            h: Poly::new(vec![-b / a, ONE / a])?,
        })
    }

    /// Largest coefficient gap between the pullbacks of `z^k`, `k ≤ n`, under
    /// two homomorphisms.
    pub fn monomial_distance(&self, other: &AlgebraHom, n: usize) -> Result<f64> {
        let mut worst = 0.0f64;
        for k in 0..=n {
            let m = Poly::monomial(k)?;
            worst = worst.max(self.pullback(&m)?.max_coefficient_distance(&other.pullback(&m)?));
        }
        Ok(worst)
    }
}

/// How audit trial polynomials draw their coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientKind {
    /// Real and imaginary parts uniform on `[−1, 1]`.
    Float,
    /// Gaussian integers with parts in `−3..=3`.
    Integer,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuditTrials {
    pub count: usize,
    pub seed: u64,
    /// Degree of the random trial polynomials.
    pub degree: usize,
    pub kind: CoefficientKind,
}

impl AuditTrials {
    pub fn new(count: usize, seed: u64) -> Self {
        AuditTrials {
            count,
            seed,
            degree: 4,
            kind: CoefficientKind::Float,
        }
    }
}

/// Draws a random polynomial of exactly the given degree slot count.
pub fn random_poly<R: Rng>(rng: &mut R, degree: usize, kind: CoefficientKind) -> Poly {
    let coefficients = (0..=degree)
        .map(|_| match kind {
            CoefficientKind::Float => Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)),
            CoefficientKind::Integer => {
                Complex64::new(rng.random_range(-3i32..=3) as f64, rng.random_range(-3i32..=3) as f64)
            }
        })
        .collect();
    Poly::new(coefficients).expect("random coefficients are finite")
}

/// Measured departure of a black-box map from a ℂ-algebra homomorphism.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MorphismAudit {
    /// `max ‖φ(f+g) − φ(f) − φ(g)‖`
    pub additive_defect: f64,
    /// `max ‖φ(fg) − φ(f)φ(g)‖`
    pub multiplicative_defect: f64,
    /// `‖φ(1) − 1‖`
    pub unital_defect: f64,
    /// `max_k ‖φ(i z^k) − i φ(z^k)‖` over `k ≤ degree`
    pub scalar_defect: f64,
    /// `φ(z)`
    pub recovered_h: Poly,
    /// `max ‖φ(f) − f∘recovered_h‖` over the trials, computed only when
    /// every other defect is below [`AUDIT_TOLERANCE`].
    pub composition_defect: Option<f64>,
    pub is_homomorphism: bool,
}

/// Probes `φ` on seeded random trial pairs `(f, g)`. Norms are maximum
/// coefficient moduli.
pub fn morphism_audit<F>(phi: F, trials: &AuditTrials) -> Result<MorphismAudit>
where
    F: Fn(&Poly) -> Result<Poly>,
{
    if trials.count == 0 {
        return Err(Error::InvalidParameter("the audit needs at least one trial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(trials.seed);
    let unital_defect = phi(&Poly::constant(ONE))?.max_coefficient_distance(&Poly::constant(ONE));
    let recovered_h = phi(&Poly::identity())?;

    let mut scalar_defect = 0.0f64;
    for k in 0..=trials.degree {
        let m = Poly::monomial(k)?;
        let i = Complex64::i();
        scalar_defect = scalar_defect.max(phi(&m.scale(i))?.max_coefficient_distance(&phi(&m)?.scale(i)));
    }

    let mut pairs = Vec::with_capacity(trials.count);
    let (mut additive_defect, mut multiplicative_defect) = (0.0f64, 0.0f64);
    for _ in 0..trials.count {
        let f = random_poly(&mut rng, trials.degree, trials.kind);
        let g = random_poly(&mut rng, trials.degree, trials.kind);
        let (pf, pg) = (phi(&f)?, phi(&g)?);
        additive_defect = additive_defect.max(phi(&f.add(&g))?.max_coefficient_distance(&pf.add(&pg)));
        multiplicative_defect = multiplicative_defect.max(phi(&f.mul(&g)?)?.max_coefficient_distance(&pf.mul(&pg)?));
        pairs.push((f, pf));
    }

    let laws_hold = [additive_defect, multiplicative_defect, unital_defect, scalar_defect]
        .iter()
        .all(|&d| d < AUDIT_TOLERANCE);
    let composition_defect = if laws_hold {
        let mut worst = 0.0f64;
        for (f, pf) in &pairs {
            worst = worst.max(pf.max_coefficient_distance(&compose(f, &recovered_h)?));
        }
        Some(worst)
    } else {
        None
    };
    let is_homomorphism = composition_defect.is_some_and(|d| d < AUDIT_TOLERANCE);
    Ok(MorphismAudit {
        additive_defect,
        multiplicative_defect,
        unital_defect,
        scalar_defect,
        recovered_h,
        composition_defect,
        is_homomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p(a: &[f64]) -> Poly {
        Poly::from_real(a).unwrap()
    }

    #[test]
    fn evaluation_and_composition() {
        let q = p(&[1.0, 0.0, 1.0]);
        assert_eq!(q.evaluate(c(2.0, 0.0)), c(5.0, 0.0));
        assert_eq!(q.evaluate(c(0.0, 2.0)), c(-3.0, 0.0));
        assert_eq!(compose(&p(&[1.0, 1.0]), &p(&[0.0, 0.0, 1.0])).unwrap(), q);
        assert_eq!(compose(&q, &Poly::identity()).unwrap(), q);
        assert_eq!(compose(&p(&[0.0, 0.0, 1.0]), &p(&[1.0, 1.0])).unwrap(), p(&[1.0, 2.0, 1.0]));
        let big = Poly::monomial(9).unwrap();
        assert_eq!(
            compose(&big, &big).unwrap_err(),
            Error::DegreeOverflow { degree: 81, cap: 64 }
        );
        assert!(matches!(Poly::monomial(65), Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn division() {
        assert_eq!(divide_at_point(&p(&[0.0, 0.0, 1.0]), c(1.0, 0.0)), (c(1.0, 0.0), p(&[1.0, 1.0])));
        assert_eq!(divide_at_point(&p(&[3.0]), c(1.0, 2.0)), (c(3.0, 0.0), Poly::zero()));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_poly(&mut rng, 7, CoefficientKind::Float);
        let at = c(0.3, 0.2);
        let (value, quotient) = divide_at_point(&g, at);
        assert!((value - g.evaluate(at)).norm() < 1e-14);
        for _ in 0..10 {
            let z = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            assert!((g.evaluate(z) - value - (z - at) * quotient.evaluate(z)).norm() < 1e-12);
        }
    }

    #[test]
    fn characters() {
        let two_i = CharacterTable::evaluation(c(0.0, 2.0), 8).unwrap();
        let cp = character_point(&two_i);
        assert_eq!(cp.c, c(0.0, 2.0));
        assert!(cp.consistent);
        let bad = CharacterTable::new(vec![c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let cp = character_point(&bad);
        assert!(!cp.consistent && cp.max_defect == 1.0);
        let origin = CharacterTable::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(character_point(&origin).consistent);
        assert!(CharacterTable::new(vec![c(2.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn pullbacks() {
        let hom = AlgebraHom::from_map(p(&[0.0, 0.0, 1.0]));
        assert_eq!(hom.pullback(&p(&[1.0, 1.0])).unwrap(), p(&[1.0, 0.0, 1.0]));
        let affine = AlgebraHom::from_map(p(&[1.0, 2.0]));
        assert_eq!(affine.pullback(&Poly::identity()).unwrap(), p(&[1.0, 2.0]));
        let inv = affine.affine_inverse().unwrap();
        for k in 0..=8 {
            let m = Poly::monomial(k).unwrap();
            assert_eq!(affine.pullback(&inv.pullback(&m).unwrap()).unwrap(), m);
            assert_eq!(inv.pullback(&affine.pullback(&m).unwrap()).unwrap(), m);
        }
        let twin = AlgebraHom::from_map(affine.pullback(&Poly::identity()).unwrap());
        assert_eq!(affine.monomial_distance(&twin, POLY_DEGREE_CAP).unwrap(), 0.0);
    }

    #[test]
    fn audits() {
        let hom = AlgebraHom::from_map(p(&[0.0, 0.0, 1.0]));
        let trials = AuditTrials::new(50, 1);
        let a = morphism_audit(|f| hom.pullback(f), &trials).unwrap();
        assert!(a.is_homomorphism);
        assert_eq!(a.recovered_h, p(&[0.0, 0.0, 1.0]));

        let shift = morphism_audit(|f| Ok(f.add(&Poly::constant(c(1.0, 0.0)))), &trials).unwrap();
        assert_eq!(shift.additive_defect, 1.0);
        assert!(!shift.is_homomorphism && shift.composition_defect.is_none());

        let conj = morphism_audit(|f| Ok(f.conj_coefficients()), &trials).unwrap();
        assert_eq!(conj.additive_defect, 0.0);
        assert_eq!(conj.multiplicative_defect, 0.0);
        assert_eq!(conj.scalar_defect, 2.0);
        assert!(!conj.is_homomorphism);
    }
}
