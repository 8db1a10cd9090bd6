//! Boundedness sets of a pointwise sequence on a lattice, the check that
//! they cover the region, the search for a disc inside one of them, and a
//! Cauchy-formula holomorphy residual of the limit proxy on that disc.
//!
//! "For all j" is truncated to `1 ≤ j ≤ j_max`, so each mask is an outer
//! approximation of its boundedness set and shrinks as `j_max` grows.

use std::fmt::Write as _;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cauchy::holomorphy_residual;
use crate::error::{Error, Result};
use crate::geometry::{GridField, Lattice, PlanarDomain, QuadratureSpec};

/// Default truncation of the sequence index.
pub const DEFAULT_J_MAX: usize = 64;

/// Sequences available by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceKind {
    /// `z^j`
    Powers,
    /// `∑_{m ≤ j} z^m/m!`
    ExpPartialSums,
    /// `f_j ≡ j`
    DivergentConstants,
    /// `f_j(z) = z̄`
    Conj,
    /// `f_j ≡ 0`
    Zero,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 5] = [
        SequenceKind::Powers,
        SequenceKind::ExpPartialSums,
        SequenceKind::DivergentConstants,
        SequenceKind::Conj,
        SequenceKind::Zero,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SequenceKind::Powers => "powers",
            SequenceKind::ExpPartialSums => "exp-partial-sums",
            SequenceKind::DivergentConstants => "divergent-constants",
            SequenceKind::Conj => "conj",
            SequenceKind::Zero => "zero",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

pub type MemberFn = Arc<dyn Fn(usize, Complex64) -> Complex64 + Send + Sync>;

/// A sequence `f_1, …, f_{j_max}` of functions on the plane.
#[derive(Clone)]
pub struct FunctionSequence {
    pub name: String,
    member: MemberFn,
    j_max: usize,
}

impl std::fmt::Debug for FunctionSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FunctionSequence")
            .field("name", &self.name)
            .field("j_max", &self.j_max)
            .finish()
    }
}

impl FunctionSequence {
    pub fn new(name: impl Into<String>, member: MemberFn, j_max: usize) -> Result<Self> {
        if j_max == 0 {
            return Err(Error::InvalidParameter("j_max must be positive".into()));
        }
        Ok(FunctionSequence {
            name: name.into(),
            member,
            j_max,
        })
    }

    pub fn registered(kind: SequenceKind, j_max: usize) -> Result<Self> {
        let member: MemberFn = match kind {
            SequenceKind::Powers => Arc::new(|j, z: Complex64| z.powu(j as u32)),
            SequenceKind::ExpPartialSums => Arc::new(|j, z: Complex64| {
                let (mut term, mut sum) = (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
                for m in 1..=j {
                    term *= z / m as f64;
                    sum += term;
                }
                sum
            }),
            SequenceKind::DivergentConstants => Arc::new(|j, _| Complex64::new(j as f64, 0.0)),
            SequenceKind::Conj => Arc::new(|_, z: Complex64| z.conj()),
            SequenceKind::Zero => Arc::new(|_, _| Complex64::new(0.0, 0.0)),
        };
        Self::new(kind.name(), member, j_max)
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    /// `f_j(z)`
    pub fn member(&self, j: usize, z: Complex64) -> Complex64 {
        (self.member)(j, z)
    }

    /// `f_{j_max}`, the stand-in for the pointwise limit.
    pub fn limit_proxy(&self, z: Complex64) -> Complex64 {
        self.member(self.j_max, z)
    }
}

/// A lattice with the region of interest marked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkingGrid {
    pub lattice: Lattice,
    pub region: Vec<bool>,
}

impl WorkingGrid {
    pub fn new(lattice: Lattice, region: Vec<bool>) -> Result<Self> {
        if region.len() != lattice.len() {
            return Err(Error::GeometryMismatch);
        }
        Ok(WorkingGrid { lattice, region })
    }

    /// The geometry and support of a field.
    pub fn from_field(field: &GridField) -> Self {
        WorkingGrid {
            lattice: *field.lattice(),
            region: field.mask().to_vec(),
        }
    }

    /// Nodes of a `resolution`-cell lattice over the bounding square that
    /// lie in the closed disc.
    pub fn closed_disc(center: Complex64, radius: f64, resolution: usize) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidParameter(format!("radius must be positive, got {radius}")));
        }
        let r = Complex64::new(radius, radius);
        let lattice = Lattice::covering(center - r, center + r, resolution);
        let region = lattice.nodes().map(|(_, _, z)| (z - center).norm() <= radius).collect();
        Ok(WorkingGrid { lattice, region })
    }

    /// Every node of a `resolution`-cell lattice over the box `[lo, hi]`.
    pub fn rectangle(lo: Complex64, hi: Complex64, resolution: usize) -> Self {
        let lattice = Lattice::covering(lo, hi, resolution);
        WorkingGrid {
            lattice,
            region: vec![true; lattice.len()],
        }
    }

    fn same_as(&self, other: &WorkingGrid) -> bool {
        self.lattice.same_geometry(&other.lattice) && self.region == other.region
    }
}

/// Sampled `S_k = {z : |f_j(z)| ≤ k for all j ≤ j_max}`; false outside the
/// region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundednessMask {
    pub grid: WorkingGrid,
    pub k: f64,
    pub j_max: usize,
    pub bits: Vec<bool>,
}

impl BoundednessMask {
    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// `self ⊆ other` node by node.
    pub fn is_subset_of(&self, other: &BoundednessMask) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Plain PBM (`P1`), top row first, `1` for nodes in the mask.
    pub fn to_pbm(&self) -> String {
        let l = &self.grid.lattice;
        let mut out = format!("P1\n{} {}\n", l.width, l.height);
        for j in (0..l.height).rev() {
            let row: Vec<&str> = (0..l.width)
                .map(|i| if self.bits[l.index(i, j)] { "1" } else { "0" })
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

/// `max_{j ≤ j_max} |f_j(z)| ≤ k` at every region node.
pub fn boundedness_set(seq: &FunctionSequence, grid: &WorkingGrid, k: f64) -> Result<BoundednessMask> {
    if !(k > 0.0) {
        return Err(Error::InvalidParameter(format!("k must be positive, got {k}")));
    }
    let sups = sup_table(seq, grid)?;
    Ok(mask_from_sups(grid, &sups, k, seq.j_max))
}

/// Masks for `k = 1..=k_max`, sharing one pass over the sequence.
pub fn boundedness_sets(seq: &FunctionSequence, grid: &WorkingGrid, k_max: usize) -> Result<Vec<BoundednessMask>> {
    let sups = sup_table(seq, grid)?;
    Ok((1..=k_max)
        .map(|k| mask_from_sups(grid, &sups, k as f64, seq.j_max))
        .collect())
}

fn sup_table(seq: &FunctionSequence, grid: &WorkingGrid) -> Result<Vec<f64>> {
    let mut sups = vec![f64::NAN; grid.lattice.len()];
    for (i, j, z) in grid.lattice.nodes() {
        let idx = grid.lattice.index(i, j);
        if !grid.region[idx] {
            continue;
        }
        let mut sup = 0.0f64;
        for n in 1..=seq.j_max {
            let v = seq.member(n, z);
            if !v.is_finite() {
                return Err(Error::NonFiniteSample { at: z });
            }
            sup = sup.max(v.norm());
        }
        sups[idx] = sup;
    }
    Ok(sups)
}

fn mask_from_sups(grid: &WorkingGrid, sups: &[f64], k: f64, j_max: usize) -> BoundednessMask {
    BoundednessMask {
        grid: grid.clone(),
        k,
        j_max,
        bits: grid.region.iter().zip(sups).map(|(&r, &s)| r && s <= k).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverReport {
    pub covered: bool,
    /// Region nodes outside every mask.
    pub uncovered_points: Vec<Complex64>,
}

/// Whether every region node lies in some mask.
pub fn cover_check(masks: &[BoundednessMask]) -> Result<CoverReport> {
    let first = masks
        .first()
        .ok_or_else(|| Error::InvalidParameter("cover check needs at least one mask".into()))?;
    if masks.iter().any(|m| !m.grid.same_as(&first.grid)) {
        return Err(Error::GeometryMismatch);
    }
    let grid = &first.grid;
    let uncovered_points: Vec<Complex64> = grid
        .lattice
        .nodes()
        .filter(|&(i, j, _)| {
            let idx = grid.lattice.index(i, j);
            grid.region[idx] && !masks.iter().any(|m| m.bits[idx])
        })
        .map(|(_, _, z)| z)
        .collect();
    Ok(CoverReport {
        covered: uncovered_points.is_empty(),
        uncovered_points,
    })
}

/// A disc whose open interior contains only mask nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BallReport {
    pub k: f64,
    pub center: Complex64,
    pub radius: f64,
    /// `radius` in lattice cells.
    pub radius_cells: f64,
}

/// Distance from node `(i, j)` to the nearest lattice node outside the mask
/// or to the edge of the lattice box, whichever is closer.
pub fn inscribed_radius(mask: &BoundednessMask, i: usize, j: usize) -> f64 {
    let l = &mask.grid.lattice;
    let (w, ht) = (l.width as isize, l.height as isize);
    let (ci, cj) = (i as isize, j as isize);
    let edge = [ci as f64 + 0.5, cj as f64 + 0.5, (w - ci) as f64 - 0.5, (ht - cj) as f64 - 0.5]
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let mut best = edge;
    let mut ring = 1isize;
    while (ring as f64) < best {
        for dj in -ring..=ring {
            for di in -ring..=ring {
                if di.abs() != ring && dj.abs() != ring {
                    continue;
                }
                let (x, y) = (ci + di, cj + dj);
                if x < 0 || y < 0 || x >= w || y >= ht {
                    continue;
                }
                if !mask.bits[l.index(x as usize, y as usize)] {
                    best = best.min(((di * di + dj * dj) as f64).sqrt());
                }
            }
        }
        ring += 1;
    }
    best * l.spacing
}

/// The largest disc centered at a mask node whose open interior contains
/// only nodes of that mask and stays in the lattice box. Ties go to the
/// smaller `k`, then to the smaller center (real part first).
pub fn dense_ball_search(masks: &[BoundednessMask]) -> Result<BallReport> {
    let mut best: Option<BallReport> = None;
    for m in masks {
        let l = &m.grid.lattice;
        for (i, j, z) in l.nodes() {
            if !m.bits[l.index(i, j)] {
                continue;
            }
            let radius = inscribed_radius(m, i, j);
            let candidate = BallReport {
                k: m.k,
                center: z,
                radius,
                radius_cells: radius / l.spacing,
            };
            let better = match &best {
                None => true,
                Some(b) => {
                    let tol = 1e-12 * l.spacing;
                    if (radius - b.radius).abs() > tol {
                        radius > b.radius
                    } else if m.k != b.k {
                        m.k < b.k
                    } else {
                        (z.re, z.im) < (b.center.re, b.center.im)
                    }
                }
            };
            if better {
                best = Some(candidate);
            }
        }
    }
    best.ok_or(Error::AllMasksEmpty)
}

/// Cauchy-formula residual of `f_{j_max}` on the circle `|z − center| =
/// radius`, sampled at the center and eight points at half the radius.
pub fn limit_holomorphy_residual(
    seq: &FunctionSequence,
    center: Complex64,
    radius: f64,
    q: &QuadratureSpec,
) -> Result<f64> {
    let d = PlanarDomain::disc(center, radius, q.contour_nodes)?;
    let mut samples = vec![center];
    samples.extend((0..8).map(|k| center + Complex64::from_polar(0.5 * radius, k as f64 * std::f64::consts::FRAC_PI_4)));
    holomorphy_residual(|z| seq.limit_proxy(z), &d, &samples, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn seq(kind: SequenceKind, j_max: usize) -> FunctionSequence {
        FunctionSequence::registered(kind, j_max).unwrap()
    }

    #[test]
    fn boundedness_examples() {
        let disc = WorkingGrid::closed_disc(c(0.0, 0.0), 1.0, 32).unwrap();
        let m = boundedness_set(&seq(SequenceKind::Powers, 20), &disc, 1.0).unwrap();
        assert_eq!(m.bits, disc.region);
        let big = WorkingGrid::closed_disc(c(0.0, 0.0), 2.0, 32).unwrap();
        let m = boundedness_set(&seq(SequenceKind::ExpPartialSums, 64), &big, 8.0).unwrap();
        assert_eq!(m.bits, big.region);
        let one = FunctionSequence::new("one", Arc::new(|_, _| c(1.0, 0.0)), 5).unwrap();
        assert_eq!(boundedness_set(&one, &big, 0.5).unwrap().count(), 0);
        assert!(boundedness_set(&one, &big, 0.0).is_err());
    }

    #[test]
    fn monotone_in_k_and_j_max() {
        let g = WorkingGrid::closed_disc(c(0.0, 0.0), 1.5, 24).unwrap();
        let masks = boundedness_sets(&seq(SequenceKind::Powers, 10), &g, 4).unwrap();
        for w in masks.windows(2) {
            assert!(w[0].is_subset_of(&w[1]));
        }
        let longer = boundedness_set(&seq(SequenceKind::Powers, 20), &g, 2.0).unwrap();
        assert!(longer.is_subset_of(&masks[1]));
    }

    #[test]
    fn covers() {
        let disc = WorkingGrid::closed_disc(c(0.0, 0.0), 1.0, 16).unwrap();
        let masks = boundedness_sets(&seq(SequenceKind::Powers, 10), &disc, 1).unwrap();
        assert!(cover_check(&masks).unwrap().covered);
        let masks = boundedness_sets(&seq(SequenceKind::DivergentConstants, 64), &disc, 20).unwrap();
        let r = cover_check(&masks).unwrap();
        assert!(!r.covered);
        assert_eq!(r.uncovered_points.len(), disc.region.iter().filter(|&&b| b).count());
        let other = WorkingGrid::closed_disc(c(0.0, 0.0), 1.0, 18).unwrap();
        let mixed = vec![masks[0].clone(), boundedness_set(&seq(SequenceKind::Zero, 1), &other, 1.0).unwrap()];
        assert_eq!(cover_check(&mixed).unwrap_err(), Error::GeometryMismatch);
    }

    #[test]
    fn ball_search() {
        let square = WorkingGrid::rectangle(c(0.0, 0.0), c(1.0, 1.0), 9);
        let all = boundedness_set(&seq(SequenceKind::Zero, 1), &square, 1.0).unwrap();
        let b = dense_ball_search(std::slice::from_ref(&all)).unwrap();
        assert!((b.center - c(0.5, 0.5)).norm() < 1e-12 && (b.radius - 0.5).abs() < 1e-12);

        let mut single = all.clone();
        single.bits = vec![false; single.bits.len()];
        single.bits[square.lattice.index(4, 4)] = true;
        let b = dense_ball_search(&[single.clone()]).unwrap();
        assert!((b.radius_cells - 1.0).abs() < 1e-12 && (b.center - c(0.5, 0.5)).norm() < 1e-12);

        single.bits = vec![false; single.bits.len()];
        assert_eq!(dense_ball_search(&[single]).unwrap_err(), Error::AllMasksEmpty);
    }

    #[test]
    fn holomorphy_residuals() {
        let q = QuadratureSpec::default();
        let exp = seq(SequenceKind::ExpPartialSums, 30);
        assert!(limit_holomorphy_residual(&exp, c(0.0, 0.0), 0.5, &q).unwrap() < 1e-10);
        let conj = seq(SequenceKind::Conj, 3);
        assert!(limit_holomorphy_residual(&conj, c(0.0, 0.0), 0.5, &q).unwrap() >= 0.1);
        let zero = seq(SequenceKind::Zero, 3);
        assert_eq!(limit_holomorphy_residual(&zero, c(0.0, 0.0), 0.5, &q).unwrap(), 0.0);
    }
}
