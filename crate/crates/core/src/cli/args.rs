//! Command-line argument structures and value parsers.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::C2;
use crate::metrics::{DomainModel, MetricKind};

#[derive(Debug, Parser)]
#[command(name = "holokit", version, about = "Executable complex analysis", long_about = None)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cauchy integral formula on a disc.
    #[command(subcommand)]
    Cauchy(CauchyCommand),
    /// Cauchy–Pompeiu reconstruction on a disc.
    #[command(subcommand)]
    Pompeiu(PompeiuCommand),
    /// The solution operator of ∂f/∂z̄ = α.
    #[command(subcommand)]
    Dbar(DbarCommand),
    /// Poisson solution of the Dirichlet problem on the unit disc.
    #[command(subcommand)]
    Dirichlet(DirichletCommand),
    /// Carathéodory and Kobayashi lengths.
    #[command(subcommand)]
    Metric(MetricCommand),
    /// Point clouds around the indicatrix at the origin.
    #[command(subcommand)]
    Indicatrix(IndicatrixCommand),
    /// Linear witness that the ball and bidisc are inequivalent.
    #[command(subcommand)]
    Poincare(PoincareCommand),
    /// Audit of polynomial-algebra homomorphisms.
    #[command(subcommand)]
    Bers(BersCommand),
    /// Boundedness sets, cover and dense ball of a sequence.
    #[command(subcommand)]
    Osgood(OsgoodCommand),
    /// Runs the built-in invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Subcommand)]
pub enum CauchyCommand {
    Eval(CauchyEvalArgs),
}

#[derive(Debug, Subcommand)]
pub enum PompeiuCommand {
    Eval(PompeiuEvalArgs),
}

#[derive(Debug, Subcommand)]
pub enum DbarCommand {
    Solve(DbarSolveArgs),
}

#[derive(Debug, Subcommand)]
pub enum DirichletCommand {
    Solve(DirichletSolveArgs),
}

#[derive(Debug, Subcommand)]
pub enum MetricCommand {
    Eval(MetricEvalArgs),
}

#[derive(Debug, Subcommand)]
pub enum IndicatrixCommand {
    Sample(IndicatrixSampleArgs),
}

#[derive(Debug, Subcommand)]
pub enum PoincareCommand {
    Witness(PoincareWitnessArgs),
}

#[derive(Debug, Subcommand)]
pub enum BersCommand {
    Verify(BersVerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum OsgoodCommand {
    Analyze(OsgoodAnalyzeArgs),
}

/// Where the JSON report goes.
#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Report path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Test functions with closed-form values and `∂/∂z̄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestFunction {
    Exp,
    Square,
    Conj,
    AbsSquared,
    Re,
}

impl TestFunction {
    pub fn value(self, z: Complex64) -> Complex64 {
        match self {
            TestFunction::Exp => z.exp(),
            TestFunction::Square => z * z,
            TestFunction::Conj => z.conj(),
            TestFunction::AbsSquared => Complex64::new(z.norm_sqr(), 0.0),
            TestFunction::Re => Complex64::new(z.re, 0.0),
        }
    }

    pub fn dbar(self, z: Complex64) -> Complex64 {
        match self {
            TestFunction::Exp | TestFunction::Square => Complex64::new(0.0, 0.0),
            TestFunction::Conj => Complex64::new(1.0, 0.0),
            TestFunction::AbsSquared => z,
            TestFunction::Re => Complex64::new(0.5, 0.0),
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CauchyEvalArgs {
    #[arg(long, value_enum)]
    pub function: TestFunction,
    /// Evaluation point `re,im`; repeat for several.
    #[arg(long = "point", required = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub points: Vec<Complex64>,
    /// Radius of the disc centered at the origin.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Contour quadrature nodes.
    #[arg(long, default_value_t = 256)]
    pub nodes: usize,
    /// Largest accepted `|reconstruction − f(z)|`.
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PompeiuEvalArgs {
    #[arg(long, value_enum)]
    pub function: TestFunction,
    /// Evaluation point `re,im`; repeat for several.
    #[arg(long = "point", required = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub points: Vec<Complex64>,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 256)]
    pub nodes: usize,
    /// Cells along the side of the area lattice.
    #[arg(long, default_value_t = 256)]
    pub resolution: usize,
    /// Use the closed-form `∂f/∂z̄` instead of finite differences.
    #[arg(long)]
    pub exact_dbar: bool,
    #[arg(long, default_value_t = 5e-2)]
    pub tolerance: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlphaSource {
    /// Indicator of the disc of radius `--radius`.
    Indicator,
    /// `(1 − |ξ|²/ρ²)³` with `ρ = --radius`.
    Bump,
    /// A GridField JSON file given by `--input`.
    File,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DbarSolveArgs {
    #[arg(long, value_enum)]
    pub alpha: AlphaSource,
    /// Support radius of the built-in data.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Half-width of the lattice box for the bump.
    #[arg(long, default_value_t = 1.0)]
    pub extent: f64,
    #[arg(long, default_value_t = 256)]
    pub resolution: usize,
    /// GridField JSON of `α` for `--alpha file`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Support radius for file data; the farthest support node by default.
    #[arg(long)]
    pub support_radius: Option<f64>,
    /// Writes the solution as GridField JSON.
    #[arg(long)]
    pub field_out: Option<PathBuf>,
    /// Largest accepted ∂̄ residual.
    #[arg(long, default_value_t = 5e-2)]
    pub tolerance: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

/// Built-in boundary data on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryPreset {
    /// `cos 2ψ`
    Cos2,
    /// `1 − cos ψ`
    OneMinusCos,
    /// `2 + sin ψ + cos 3ψ`
    Trig,
    /// `|ψ|` on `(−π, π]`
    AbsAngle,
}

impl BoundaryPreset {
    pub fn value(self, psi: f64) -> f64 {
        match self {
            BoundaryPreset::Cos2 => (2.0 * psi).cos(),
            BoundaryPreset::OneMinusCos => 1.0 - psi.cos(),
            BoundaryPreset::Trig => 2.0 + psi.sin() + (3.0 * psi).cos(),
            BoundaryPreset::AbsAngle => {
                let w = psi.rem_euclid(std::f64::consts::TAU);
                if w > std::f64::consts::PI {
                    std::f64::consts::TAU - w
                } else {
                    w
                }
            }
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DirichletSolveArgs {
    /// Boundary samples as CSV rows `psi,value` (optionally `psi,re,im`) at
    /// equally spaced angles starting from 0.
    #[arg(long, conflicts_with = "boundary", required_unless_present = "boundary")]
    pub input: Option<PathBuf>,
    /// Built-in boundary data instead of a file.
    #[arg(long, value_enum)]
    pub boundary: Option<BoundaryPreset>,
    /// Boundary samples for built-in data.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    /// Radii `0.9·j/radii`, `j = 1..radii`, of the polar output lattice.
    #[arg(long, default_value_t = 9)]
    pub radii: usize,
    /// Angles of the polar output lattice.
    #[arg(long, default_value_t = 64)]
    pub angles: usize,
    /// Cells across the Cartesian lattice used for the Laplacian check.
    #[arg(long, default_value_t = 48)]
    pub resolution: usize,
    /// Writes the polar field as CSV rows `r,theta,re,im`.
    #[arg(long)]
    pub field_out: Option<PathBuf>,
    /// Largest accepted discrete Laplacian on `r ≤ 0.9`.
    #[arg(long, default_value_t = 1e-4)]
    pub tolerance: f64,
    /// Largest accepted boundary continuity gap at `r = 0.99`.
    #[arg(long, default_value_t = 5e-2)]
    pub gap_tolerance: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelArg {
    Disc,
    Ball,
    Bidisc,
}

impl From<ModelArg> for DomainModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Disc => DomainModel::UnitDisc,
            ModelArg::Ball => DomainModel::UnitBall2,
            ModelArg::Bidisc => DomainModel::UnitBidisc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KindArg {
    Caratheodory,
    Kobayashi,
}

impl From<KindArg> for MetricKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Caratheodory => MetricKind::Caratheodory,
            KindArg::Kobayashi => MetricKind::Kobayashi,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MetricEvalArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Base point `re,im+re,im` (one component for the disc).
    #[arg(long = "p", allow_hyphen_values = true, value_parser = parse_c2)]
    pub p: C2,
    /// Tangent vector `re,im+re,im`.
    #[arg(long = "xi", allow_hyphen_values = true, value_parser = parse_c2)]
    pub xi: C2,
    /// Largest accepted disagreement between the two metric kinds.
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IndicatrixSampleArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long)]
    pub seed: u64,
    /// Tangent components are drawn uniformly from `[−scale, scale]`.
    #[arg(long, default_value_t = 1.5)]
    pub scale: f64,
    /// Writes the cloud as CSV rows `xi1_re,xi1_im,xi2_re,xi2_im,value,member`.
    #[arg(long)]
    pub cloud_out: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PoincareWitnessArgs {
    /// Eight reals: re,im of the entries m11, m12, m21, m22 (row-major).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_matrix)]
    pub matrix: [f64; 8],
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

/// The map handed to the audit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditedMap {
    /// `f ↦ f∘h`
    Pullback,
    /// `f ↦ f + 1`
    Shift,
    /// `f ↦` coefficientwise conjugate of `f`
    Conjugate,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BersVerifyArgs {
    /// Coefficients of `h` in increasing degree, `re,im+re,im+…`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex_list)]
    pub h: ComplexList,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    /// Degree of the random trial polynomials.
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
    /// Draw Gaussian-integer trial coefficients.
    #[arg(long)]
    pub integer: bool,
    #[arg(long, value_enum, default_value_t = AuditedMap::Pullback)]
    pub map: AuditedMap,
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OsgoodAnalyzeArgs {
    /// powers, exp-partial-sums, divergent-constants, conj or zero.
    #[arg(long)]
    pub sequence: String,
    #[arg(long, default_value_t = 64)]
    pub j_max: usize,
    /// Masks are built for `k = 1..=k_max`.
    #[arg(long, default_value_t = 8)]
    pub k_max: usize,
    /// Radius of the closed working disc centered at the origin.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 64)]
    pub resolution: usize,
    #[arg(long, default_value_t = 256)]
    pub nodes: usize,
    /// Directory for `mask_kNN.pbm` bitmaps.
    #[arg(long)]
    pub masks_dir: Option<PathBuf>,
    /// Largest accepted holomorphy residual on the found ball.
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

/// A list of complex coefficients as parsed from the command line.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ComplexList(pub Vec<Complex64>);

fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

/// `re,im` or a bare real part.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse_real(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse_real(re)?, parse_real(im)?)),
        _ => Err(format!("'{s}' is not of the form re,im")),
    }
}

/// `+`-separated complex numbers.
pub fn parse_complex_list(s: &str) -> Result<ComplexList, String> {
    s.split('+').map(parse_complex).collect::<Result<Vec<_>, _>>().map(ComplexList)
}

/// One or two `+`-separated complex numbers; a missing second component is 0.
pub fn parse_c2(s: &str) -> Result<C2, String> {
    let list = parse_complex_list(s)?.0;
    match list.as_slice() {
        [a] => Ok([*a, Complex64::new(0.0, 0.0)]),
        [a, b] => Ok([*a, *b]),
        _ => Err(format!("'{s}' has {} components, expected 1 or 2", list.len())),
    }
}

pub fn parse_matrix(s: &str) -> Result<[f64; 8], String> {
    let v: Vec<f64> = s.split(',').map(parse_real).collect::<Result<_, _>>()?;
    v.try_into()
        .map_err(|v: Vec<f64>| format!("expected 8 numbers, got {}", v.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsers() {
        assert_eq!(parse_complex("-0.5,2").unwrap(), Complex64::new(-0.5, 2.0));
        assert_eq!(parse_complex("3").unwrap(), Complex64::new(3.0, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("nan").is_err());
        let v = parse_c2("0.3,0+0,0.4").unwrap();
        assert_eq!(v, [Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.4)]);
        assert_eq!(parse_c2("0.5,0").unwrap()[1], Complex64::new(0.0, 0.0));
        assert!(parse_c2("1+2+3").is_err());
        assert_eq!(parse_complex_list("0,0+1,0").unwrap().0.len(), 2);
        assert_eq!(parse_matrix("-1,0,1,0,1,0,0,0").unwrap()[0], -1.0);
        assert!(parse_matrix("1,2").is_err());
    }
}
