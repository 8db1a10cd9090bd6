//! Points of ℂ² and 2×2 complex matrices.

use num_complex::Complex64;

/// A point or tangent vector of ℂ².
pub type C2 = [Complex64; 2];

/// A 2×2 complex matrix, row-major: `m[i][j]` is row `i`, column `j`.
pub type Mat2 = [[Complex64; 2]; 2];

pub fn c2(a: Complex64, b: Complex64) -> C2 {
    [a, b]
}

/// Euclidean norm on ℂ².
pub fn norm(v: &C2) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

/// `max |v_j|`, the norm whose unit ball is the bidisc.
pub fn max_norm(v: &C2) -> f64 {
    v[0].norm().max(v[1].norm())
}

pub fn add(a: &C2, b: &C2) -> C2 {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn sub(a: &C2, b: &C2) -> C2 {
    [a[0] - b[0], a[1] - b[1]]
}

pub fn scale(s: Complex64, v: &C2) -> C2 {
    [s * v[0], s * v[1]]
}

pub fn is_finite(v: &C2) -> bool {
    v[0].is_finite() && v[1].is_finite()
}

pub fn identity() -> Mat2 {
    let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    [[o, z], [z, o]]
}

pub fn diag(a: Complex64, b: Complex64) -> Mat2 {
    let z = Complex64::new(0.0, 0.0);
    [[a, z], [z, b]]
}

/// The matrix with the given columns.
pub fn from_columns(u: &C2, v: &C2) -> Mat2 {
    [[u[0], v[0]], [u[1], v[1]]]
}

pub fn column(m: &Mat2, j: usize) -> C2 {
    [m[0][j], m[1][j]]
}

pub fn apply(m: &Mat2, v: &C2) -> C2 {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

pub fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn adjoint(m: &Mat2) -> Mat2 {
    [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]]
}

pub fn det(m: &Mat2) -> Complex64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// `max_{ij} |a_ij − b_ij|`
pub fn max_entry_distance(a: &Mat2, b: &Mat2) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}

/// `[re, im, re, im]` of a ℂ² vector, for serialization.
pub fn to_reals(v: &C2) -> [f64; 4] {
    [v[0].re, v[0].im, v[1].re, v[1].im]
}
