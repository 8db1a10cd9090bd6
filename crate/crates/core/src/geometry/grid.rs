use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Geometry of a rectangular lattice: node `(i, j)` sits at
/// `origin + h·i + i·h·j`, with `i` running along the real axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    pub origin: Complex64,
    pub spacing: f64,
    pub width: usize,
    pub height: usize,
}

impl Lattice {
    pub fn new(origin: Complex64, spacing: f64, width: usize, height: usize) -> Result<Self> {
        if !(spacing > 0.0 && spacing.is_finite()) || width == 0 || height == 0 {
            return Err(Error::InvalidParameter(format!(
                "lattice needs spacing > 0 and nonzero extent (h={spacing}, {width}x{height})"
            )));
        }
        if !origin.is_finite() {
            return Err(Error::InvalidParameter("lattice origin must be finite".into()));
        }
        Ok(Lattice {
            origin,
            spacing,
            width,
            height,
        })
    }

    /// Cell centers of a subdivision of the box `[lo, hi]` with `resolution`
    /// square cells along its longer side. The node set is centered in the box.
    pub fn covering(lo: Complex64, hi: Complex64, resolution: usize) -> Self {
        let resolution = resolution.max(1);
        let (w, ht) = (hi.re - lo.re, hi.im - lo.im);
        let h = w.max(ht) / resolution as f64;
        let nx = ((w / h).round() as usize).max(1);
        let ny = ((ht / h).round() as usize).max(1);
        let center = (lo + hi) * 0.5;
        let origin = Complex64::new(
            center.re - 0.5 * (nx as f64 - 1.0) * h,
            center.im - 0.5 * (ny as f64 - 1.0) * h,
        );
        Lattice {
            origin,
            spacing: h,
            width: nx,
            height: ny,
        }
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.width + i
    }

    pub fn node(&self, i: usize, j: usize) -> Complex64 {
        self.origin + Complex64::new(i as f64 * self.spacing, j as f64 * self.spacing)
    }

    /// Nodes in row-major order.
    pub fn nodes(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.height).flat_map(move |j| (0..self.width).map(move |i| (i, j, self.node(i, j))))
    }

    /// Fractional lattice coordinates of `z`.
    pub fn coordinates(&self, z: Complex64) -> (f64, f64) {
        let d = (z - self.origin) / self.spacing;
        (d.re, d.im)
    }

    pub fn same_geometry(&self, other: &Lattice) -> bool {
        self.width == other.width
            && self.height == other.height
            && (self.spacing - other.spacing).abs() <= 1e-12 * self.spacing
            && (self.origin - other.origin).norm() <= 1e-12 * (1.0 + self.origin.norm())
    }
}

/// Complex samples on a lattice with a support mask.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridFieldJson", into = "GridFieldJson")]
pub struct GridField {
    lattice: Lattice,
    values: Vec<Complex64>,
    mask: Vec<bool>,
}

impl GridField {
    pub fn new(lattice: Lattice, values: Vec<Complex64>, mask: Vec<bool>) -> Result<Self> {
        if values.len() != lattice.len() || mask.len() != lattice.len() {
            return Err(Error::LatticeMismatch(format!(
                "expected {} samples, got {} values and {} mask entries",
                lattice.len(),
                values.len(),
                mask.len()
            )));
        }
        for (k, (v, &m)) in values.iter().zip(&mask).enumerate() {
            if m && !v.is_finite() {
                let node = lattice.node(k % lattice.width, k / lattice.width);
                return Err(Error::NonFiniteSample { at: node });
            }
        }
        Ok(GridField {
            lattice,
            values,
            mask,
        })
    }

    /// Samples `f` where `support(z)` holds; other nodes store zero.
    pub fn sample<F, S>(lattice: Lattice, f: F, support: S) -> Result<Self>
    where
        F: Fn(Complex64) -> Complex64,
        S: Fn(Complex64) -> bool,
    {
        let mut values = Vec::with_capacity(lattice.len());
        let mut mask = Vec::with_capacity(lattice.len());
        for (_, _, z) in lattice.nodes() {
            let inside = support(z);
            mask.push(inside);
            values.push(if inside { f(z) } else { Complex64::new(0.0, 0.0) });
        }
        Self::new(lattice, values, mask)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[self.lattice.index(i, j)]
    }

    pub fn in_support(&self, i: usize, j: usize) -> bool {
        self.mask[self.lattice.index(i, j)]
    }

    /// Value with nodes outside the mask (or outside the lattice) read as zero.
    pub fn masked_value(&self, i: isize, j: isize) -> Complex64 {
        if i < 0 || j < 0 || i as usize >= self.lattice.width || j as usize >= self.lattice.height {
            return Complex64::new(0.0, 0.0);
        }
        let k = self.lattice.index(i as usize, j as usize);
        if self.mask[k] {
            self.values[k]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// Bilinear interpolation of the masked values; zero off the lattice.
    pub fn bilinear(&self, z: Complex64) -> Complex64 {
        let (x, y) = self.lattice.coordinates(z);
        bilinear_weights(x, y)
            .into_iter()
            .map(|(i, j, w)| self.masked_value(i, j) * w)
            .sum()
    }

    /// Cubic-convolution interpolation of the masked values; exact for
    /// quadratic data away from the mask edge.
    pub fn cubic(&self, z: Complex64) -> Complex64 {
        let (x, y) = self.lattice.coordinates(z);
        cubic_weights(x, y)
            .into_iter()
            .map(|(i, j, w)| self.masked_value(i, j) * w)
            .sum()
    }

    /// Largest modulus over the support.
    pub fn sup_norm(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.mask)
            .filter(|(_, &m)| m)
            .map(|(v, _)| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn map_values<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Result<Self> {
        Self::new(
            self.lattice,
            self.values.iter().map(|&v| f(v)).collect(),
            self.mask.clone(),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("grid field serializes")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Corner indices and weights of the bilinear stencil at fractional
/// coordinates `(x, y)`.
pub(crate) fn bilinear_weights(x: f64, y: f64) -> [(isize, isize, f64); 4] {
    let (fx, fy) = (x.floor(), y.floor());
    let (tx, ty) = (x - fx, y - fy);
    let (i, j) = (fx as isize, fy as isize);
    [
        (i, j, (1.0 - tx) * (1.0 - ty)),
        (i + 1, j, tx * (1.0 - ty)),
        (i, j + 1, (1.0 - tx) * ty),
        (i + 1, j + 1, tx * ty),
    ]
}

fn keys(t: f64) -> f64 {
    let t = t.abs();
    if t <= 1.0 {
        (1.5 * t - 2.5) * t * t + 1.0
    } else if t < 2.0 {
        ((-0.5 * t + 2.5) * t - 4.0) * t + 2.0
    } else {
        0.0
    }
}

/// The 4×4 cubic-convolution stencil (Keys, `a = −1/2`) at fractional
/// coordinates `(x, y)`.
pub(crate) fn cubic_weights(x: f64, y: f64) -> [(isize, isize, f64); 16] {
    let (fx, fy) = (x.floor(), y.floor());
    let (i, j) = (fx as isize, fy as isize);
    let mut out = [(0, 0, 0.0); 16];
    for (b, dy) in (-1..=2).enumerate() {
        let wy = keys(y - (fy + dy as f64));
        for (a, dx) in (-1..=2).enumerate() {
            out[4 * b + a] = (i + dx, j + dy, keys(x - (fx + dx as f64)) * wy);
        }
    }
    out
}

/// Wire format: `{origin, spacing, width, height, values, mask}` with
/// `values` as row-major `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct GridFieldJson {
    origin: [f64; 2],
    spacing: f64,
    width: usize,
    height: usize,
    values: Vec<[f64; 2]>,
    mask: Vec<bool>,
}

impl From<GridField> for GridFieldJson {
    fn from(g: GridField) -> Self {
        GridFieldJson {
            origin: [g.lattice.origin.re, g.lattice.origin.im],
            spacing: g.lattice.spacing,
            width: g.lattice.width,
            height: g.lattice.height,
            values: g.values.iter().map(|v| [v.re, v.im]).collect(),
            mask: g.mask,
        }
    }
}

impl TryFrom<GridFieldJson> for GridField {
    type Error = Error;

    fn try_from(j: GridFieldJson) -> Result<Self> {
        let lattice = Lattice::new(
            Complex64::new(j.origin[0], j.origin[1]),
            j.spacing,
            j.width,
            j.height,
        )?;
        GridField::new(
            lattice,
            j.values.iter().map(|v| Complex64::new(v[0], v[1])).collect(),
            j.mask,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covering_is_centered() {
        let l = Lattice::covering(Complex64::new(-1.0, -1.0), Complex64::new(1.0, 1.0), 8);
        assert_eq!((l.width, l.height), (8, 8));
        assert!((l.spacing - 0.25).abs() < 1e-15);
        assert!((l.node(0, 0) - Complex64::new(-0.875, -0.875)).norm() < 1e-15);
        assert!((l.node(7, 7) - Complex64::new(0.875, 0.875)).norm() < 1e-15);
    }

    #[test]
    fn bilinear_reproduces_affine_functions() {
        let l = Lattice::new(Complex64::new(0.0, 0.0), 0.5, 6, 6).unwrap();
        let f = |z: Complex64| z * Complex64::new(2.0, -1.0) + 3.0;
        let g = GridField::sample(l, f, |_| true).unwrap();
        let z = Complex64::new(1.13, 0.71);
        assert!((g.bilinear(z) - f(z)).norm() < 1e-12);
        assert_eq!(g.bilinear(Complex64::new(-5.0, 0.0)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn cubic_reproduces_quadratics() {
        let l = Lattice::new(Complex64::new(0.0, 0.0), 0.5, 8, 8).unwrap();
        let f = |z: Complex64| z * z * Complex64::new(0.5, 1.0) + z.conj() * 2.0 + z.norm_sqr();
        let g = GridField::sample(l, f, |_| true).unwrap();
        let z = Complex64::new(1.63, 2.21);
        assert!((g.cubic(z) - f(z)).norm() < 1e-12);
        assert!((g.cubic(l.node(3, 4)) - f(l.node(3, 4))).norm() < 1e-12);
    }

    #[test]
    fn json_layout() {
        let l = Lattice::new(Complex64::new(0.5, -1.0), 0.25, 2, 1).unwrap();
        let g = GridField::new(
            l,
            vec![Complex64::new(1.0, 2.0), Complex64::new(0.0, 0.0)],
            vec![true, false],
        )
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&g.to_json()).unwrap();
        assert_eq!(v["origin"], serde_json::json!([0.5, -1.0]));
        assert_eq!(v["values"][0], serde_json::json!([1.0, 2.0]));
        assert_eq!(v["mask"], serde_json::json!([true, false]));
        assert_eq!(GridField::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn rejects_nonfinite_support_value() {
        let l = Lattice::new(Complex64::new(0.0, 0.0), 1.0, 1, 1).unwrap();
        assert!(GridField::new(l, vec![Complex64::new(f64::NAN, 0.0)], vec![true]).is_err());
        assert!(GridField::new(l, vec![Complex64::new(f64::NAN, 0.0)], vec![false]).is_ok());
    }
}
