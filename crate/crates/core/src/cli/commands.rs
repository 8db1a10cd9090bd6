//! One handler per subcommand. Handlers compute everything first and return
//! the report together with any files to write.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::args::*;
use super::CliError;
use crate::automorphisms::{poincare_witness, WitnessBranch, SPHERE_TOLERANCE};
use crate::bers::{morphism_audit, AlgebraHom, AuditTrials, CoefficientKind, Poly};
use crate::cauchy::{cauchy_eval, pompeiu_terms};
use crate::dbar::{boundedness_bound, cauchy_transform_on_lattice, dbar_residual, disc_indicator, radial_bump, DbarProblem};
use crate::dirichlet::{
    boundary_continuity_gap, harnack_lower_bound_check, laplacian_residual, solve_on_lattice, BoundaryData,
    HarmonicField,
};
use crate::geometry::{GridField, PlanarDomain, QuadratureSpec};
use crate::linalg;
use crate::metrics::{
    indicatrix_membership, metric_length, metric_length_by_differences, DomainModel, MetricKind, MetricQuery,
};
use crate::osgood::{
    boundedness_sets, cover_check, dense_ball_search, limit_holomorphy_residual, FunctionSequence, SequenceKind,
    WorkingGrid,
};
use crate::selftest::{self, Check};

/// Everything a subcommand produced.
pub struct Outcome {
    pub command: &'static str,
    pub config: Value,
    pub checks: Vec<Check>,
    pub result: Value,
    pub files: Vec<(PathBuf, Vec<u8>)>,
    pub out: Option<PathBuf>,
}

impl Outcome {
    fn new<C: Serialize>(command: &'static str, config: &C, out: &OutputArgs) -> Self {
        Outcome {
            command,
            config: serde_json::to_value(config).expect("argument structs serialize"),
            checks: Vec::new(),
            result: Value::Null,
            files: Vec::new(),
            out: out.out.clone(),
        }
    }
}

fn disc_spec(nodes: usize, resolution: usize) -> Result<QuadratureSpec, CliError> {
    let q = QuadratureSpec::default()
        .with_contour_nodes(nodes)
        .with_area_resolution(resolution);
    q.validate()?;
    Ok(q)
}

pub fn cauchy_eval_cmd(a: &CauchyEvalArgs) -> Result<Outcome, CliError> {
    let q = disc_spec(a.nodes, QuadratureSpec::default().area_resolution)?;
    let d = PlanarDomain::disc(Complex64::new(0.0, 0.0), a.radius, a.nodes)?;
    let f = |z| a.function.value(z);
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for &z in &a.points {
        let value = cauchy_eval(f, &d, z, &q)?;
        let direct = f(z);
        let error = (value - direct).norm();
        worst = worst.max(error);
        rows.push(json!({"z": z, "value": value, "direct": direct, "error": error}));
    }
    let mut o = Outcome::new("cauchy eval", a, &a.output);
    o.checks.push(Check::at_most("max_error", worst, a.tolerance));
    o.result = json!({ "points": rows });
    Ok(o)
}

pub fn pompeiu_eval_cmd(a: &PompeiuEvalArgs) -> Result<Outcome, CliError> {
    let q = disc_spec(a.nodes, a.resolution)?;
    let d = PlanarDomain::disc(Complex64::new(0.0, 0.0), a.radius, a.nodes)?;
    let f = |z| a.function.value(z);
    let exact = |z| a.function.dbar(z);
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for &z in &a.points {
        let dbar: Option<&dyn Fn(Complex64) -> Complex64> = if a.exact_dbar { Some(&exact) } else { None };
        let t = pompeiu_terms(f, &d, z, &q, dbar)?;
        let direct = f(z);
        let error = (t.value() - direct).norm();
        worst = worst.max(error);
        rows.push(json!({
            "z": z, "boundary": t.boundary, "area": t.area,
            "value": t.value(), "direct": direct, "error": error
        }));
    }
    let mut o = Outcome::new("pompeiu eval", a, &a.output);
    o.checks.push(Check::at_most("max_error", worst, a.tolerance));
    o.result = json!({ "points": rows });
    Ok(o)
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn dbar_solve_cmd(a: &DbarSolveArgs) -> Result<Outcome, CliError> {
    let problem = match a.alpha {
        AlphaSource::Indicator => disc_indicator(a.radius, a.resolution)?,
        AlphaSource::Bump => radial_bump(a.radius, a.extent, a.resolution)?,
        AlphaSource::File => {
            let path = a
                .input
                .as_ref()
                .ok_or_else(|| CliError::Usage("--alpha file needs --input".into()))?;
            let alpha = GridField::from_json(&read_text(path)?)
                .map_err(|e| CliError::Usage(format!("{} is not a GridField: {e}", path.display())))?;
            let radius = match a.support_radius {
                Some(r) => r,
                None => alpha
                    .lattice()
                    .nodes()
                    .filter(|&(i, j, _)| alpha.in_support(i, j))
                    .map(|(_, _, z)| z.norm())
                    .fold(0.0, f64::max),
            };
            DbarProblem::new(alpha, radius)?
        }
    };
    let q = QuadratureSpec::default().with_area_resolution(a.resolution);
    let f = cauchy_transform_on_lattice(&problem, &q)?;
    let residual = dbar_residual(&f, problem.alpha())?;
    let bound = boundedness_bound(&problem, &q)?;
    let sup = f.sup_norm();
    let l = *f.lattice();
    let mut o = Outcome::new("dbar solve", a, &a.output);
    o.checks.push(Check::at_most("dbar_residual", residual, a.tolerance));
    o.checks.push(Check::at_most("sup_within_bound", sup, bound));
    o.result = json!({
        "lattice": l,
        "support_radius": problem.support_radius(),
        "sup_norm": sup,
        "bound": bound,
        "residual": residual,
    });
    if let Some(path) = &a.field_out {
        o.files.push((path.clone(), f.to_json().into_bytes()));
    }
    Ok(o)
}

fn read_boundary_csv(path: &Path) -> Result<BoundaryData, CliError> {
    let bad = |msg: String| CliError::Usage(format!("{}: {msg}", path.display()));
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)
        .map_err(|e| bad(e.to_string()))?;
    let mut rows: Vec<(f64, Complex64)> = Vec::new();
    for (n, record) in reader.records().enumerate() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        let fields: Vec<Result<f64, _>> = record.iter().map(str::parse::<f64>).collect();
        if fields.iter().any(Result::is_err) {
            if n == 0 {
                continue; // header
            }
            return Err(bad(format!("row {} is not numeric", n + 1)));
        }
        let v: Vec<f64> = fields.into_iter().map(|r| r.expect("checked above")).collect();
        let value = match v.as_slice() {
            [psi, re] => (*psi, Complex64::new(*re, 0.0)),
            [psi, re, im] => (*psi, Complex64::new(*re, *im)),
            _ => return Err(bad(format!("row {} needs psi,value or psi,re,im", n + 1))),
        };
        rows.push(value);
    }
    let count = rows.len();
    for (k, (psi, _)) in rows.iter().enumerate() {
        if (psi - TAU * k as f64 / count as f64).abs() > 1e-6 {
            return Err(bad(format!(
                "angle {psi} in row {} is not 2πk/N for N = {count}",
                k + 1
            )));
        }
    }
    Ok(BoundaryData::new(rows.into_iter().map(|(_, v)| v).collect())?)
}

pub fn dirichlet_solve_cmd(a: &DirichletSolveArgs) -> Result<Outcome, CliError> {
    let data = match (&a.input, a.boundary) {
        (Some(path), _) => read_boundary_csv(path)?,
        (None, Some(preset)) => BoundaryData::from_real(|psi| preset.value(psi), a.samples)?,
        (None, None) => return Err(CliError::Usage("give --input or --boundary".into())),
    };
    if a.radii == 0 {
        return Err(CliError::Usage("--radii must be positive".into()));
    }
    let radii: Vec<f64> = (1..=a.radii).map(|j| 0.9 * j as f64 / a.radii as f64).collect();
    let polar = HarmonicField::solve(&data, radii, a.angles)?;
    let lattice = solve_on_lattice(&data, 0.9, a.resolution)?;
    let laplacian = laplacian_residual(&lattice)?;
    let gap = boundary_continuity_gap(&data, 0.99)?;

    let mut o = Outcome::new("dirichlet solve", a, &a.output);
    o.checks.push(Check::at_most("laplacian_residual", laplacian, a.tolerance));
    o.checks.push(Check::at_most("continuity_gap", gap, a.gap_tolerance));
    let nonnegative = data.samples().iter().all(|v| v.re >= 0.0 && v.im == 0.0)
        && data.samples().iter().any(|v| v.re > 0.0);
    let mut harnack = Vec::new();
    if nonnegative {
        for r in [0.3, 0.6, 0.9] {
            let h = harnack_lower_bound_check(&data, r)?;
            o.checks.push(Check::flag(format!("harnack_r{r}"), h.ok));
            harnack.push(h);
        }
    }
    o.result = json!({
        "samples": data.len(),
        "laplacian_residual": laplacian,
        "continuity_gap": gap,
        "harnack": if nonnegative { json!(harnack) } else { Value::Null },
    });
    if let Some(path) = &a.field_out {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Usage(e.to_string());
        w.write_record(["r", "theta", "re", "im"]).map_err(io)?;
        for (r, theta, v) in polar.iter() {
            w.serialize((r, theta, v.re, v.im)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
        o.files.push((path.clone(), bytes));
    }
    Ok(o)
}

fn closed_form_origin_length(model: DomainModel, xi: &linalg::C2) -> f64 {
    match model {
        DomainModel::UnitDisc => xi[0].norm(),
        DomainModel::UnitBall2 => linalg::norm(xi),
        DomainModel::UnitBidisc => linalg::max_norm(xi),
    }
}

pub fn metric_eval_cmd(a: &MetricEvalArgs) -> Result<Outcome, CliError> {
    let model: DomainModel = a.model.into();
    let kind: MetricKind = a.kind.into();
    let other = match kind {
        MetricKind::Caratheodory => MetricKind::Kobayashi,
        MetricKind::Kobayashi => MetricKind::Caratheodory,
    };
    let q = MetricQuery::new(model, kind, a.p, a.xi)?;
    let value = metric_length(&q)?;
    let other_value = metric_length(&MetricQuery { kind: other, ..q })?;
    let mut o = Outcome::new("metric eval", a, &a.output);
    o.checks.push(Check::at_most("kinds_agree", (value - other_value).abs(), a.tolerance));
    if model != DomainModel::UnitBall2 {
        let fd = metric_length_by_differences(&q, 1e-5)?;
        o.checks.push(Check::at_most("finite_difference_agrees", (value - fd).abs(), 1e-6));
    }
    o.result = json!({ "value": value });
    Ok(o)
}

pub fn indicatrix_sample_cmd(a: &IndicatrixSampleArgs) -> Result<Outcome, CliError> {
    if !(a.scale > 0.0 && a.scale.is_finite()) {
        return Err(CliError::Usage("--scale must be positive".into()));
    }
    let model: DomainModel = a.model.into();
    let kind: MetricKind = a.kind.into();
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut draw = || Complex64::new(rng.random_range(-a.scale..=a.scale), rng.random_range(-a.scale..=a.scale));
    let origin = [Complex64::new(0.0, 0.0); 2];
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Usage(e.to_string());
    w.write_record(["xi1_re", "xi1_im", "xi2_re", "xi2_im", "value", "member"])
        .map_err(io)?;
    let (mut inside, mut mismatches, mut worst) = (0usize, 0usize, 0.0f64);
    for _ in 0..a.count {
        let first = draw();
        let second = draw();
        let xi = if model == DomainModel::UnitDisc {
            [first, Complex64::new(0.0, 0.0)]
        } else {
            [first, second]
        };
        let value = metric_length(&MetricQuery::new(model, kind, origin, xi)?)?;
        let member = indicatrix_membership(model, kind, &xi)?;
        let exact = closed_form_origin_length(model, &xi);
        worst = worst.max((value - exact).abs());
        inside += member as usize;
        mismatches += (member != (exact < 1.0)) as usize;
        let r = linalg::to_reals(&xi);
        w.serialize((r[0], r[1], r[2], r[3], value, member)).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    let mut o = Outcome::new("indicatrix sample", a, &a.output);
    o.checks.push(Check::at_most("closed_form_error", worst, 1e-12));
    o.checks.push(Check::at_most("membership_mismatches", mismatches as f64, 0.0));
    o.result = json!({
        "count": a.count,
        "inside": inside,
        "fraction_inside": if a.count > 0 { inside as f64 / a.count as f64 } else { 0.0 },
    });
    if let Some(path) = &a.cloud_out {
        o.files.push((path.clone(), bytes));
    }
    Ok(o)
}

pub fn poincare_witness_cmd(a: &PoincareWitnessArgs) -> Result<Outcome, CliError> {
    let m = a.matrix;
    let e = |k: usize| Complex64::new(m[2 * k], m[2 * k + 1]);
    let l = [[e(0), e(1)], [e(2), e(3)]];
    let w = poincare_witness(&l)?;
    let valid = match w.branch {
        WitnessBranch::Endpoint => (w.image_norm - 1.0).abs() > SPHERE_TOLERANCE,
        WitnessBranch::Midpoint => w.image_norm < 1.0 - SPHERE_TOLERANCE,
    };
    let mut o = Outcome::new("poincare witness", a, &a.output);
    o.checks.push(Check::flag("witness_valid", valid));
    o.result = json!(w);
    Ok(o)
}

pub fn bers_verify_cmd(a: &BersVerifyArgs) -> Result<Outcome, CliError> {
    let h = Poly::new(a.h.0.clone())?;
    let hom = AlgebraHom::from_map(h.clone());
    let trials = AuditTrials {
        count: a.trials,
        seed: a.seed,
        degree: a.degree,
        kind: if a.integer { CoefficientKind::Integer } else { CoefficientKind::Float },
    };
    let one = Poly::constant(Complex64::new(1.0, 0.0));
    let audit = match a.map {
        AuditedMap::Pullback => morphism_audit(|f| hom.pullback(f), &trials)?,
        AuditedMap::Shift => morphism_audit(|f| Ok(f.add(&one)), &trials)?,
        AuditedMap::Conjugate => morphism_audit(|f| Ok(f.conj_coefficients()), &trials)?,
    };
    let mut o = Outcome::new("bers verify", a, &a.output);
    o.checks.push(Check::at_most("additive_defect", audit.additive_defect, a.tolerance));
    o.checks.push(Check::at_most("multiplicative_defect", audit.multiplicative_defect, a.tolerance));
    o.checks.push(Check::at_most("unital_defect", audit.unital_defect, a.tolerance));
    o.checks.push(Check::at_most("scalar_defect", audit.scalar_defect, a.tolerance));
    match audit.composition_defect {
        Some(d) => o.checks.push(Check::at_most("composition_defect", d, a.tolerance)),
        None => o.checks.push(Check::failed("composition_defect", a.tolerance)),
    }
    if a.map == AuditedMap::Pullback {
        o.checks.push(Check::at_most(
            "recovered_h",
            audit.recovered_h.max_coefficient_distance(&h),
            a.tolerance,
        ));
    }
    o.result = json!(audit);
    Ok(o)
}

pub fn osgood_analyze_cmd(a: &OsgoodAnalyzeArgs) -> Result<Outcome, CliError> {
    let kind = SequenceKind::from_name(&a.sequence).ok_or_else(|| {
        let names: Vec<&str> = SequenceKind::ALL.iter().map(|k| k.name()).collect();
        CliError::Usage(format!("unknown sequence '{}'; known: {}", a.sequence, names.join(", ")))
    })?;
    if a.k_max == 0 {
        return Err(CliError::Usage("--k-max must be positive".into()));
    }
    let seq = FunctionSequence::registered(kind, a.j_max)?;
    let grid = WorkingGrid::closed_disc(Complex64::new(0.0, 0.0), a.radius, a.resolution)?;
    let masks = boundedness_sets(&seq, &grid, a.k_max)?;
    let cover = cover_check(&masks)?;
    let cell = grid.lattice.spacing;
    let mut o = Outcome::new("osgood analyze", a, &a.output);
    o.checks.push(Check::flag("covered", cover.covered));
    let ball = if masks.iter().any(|m| m.count() > 0) {
        let ball = dense_ball_search(&masks)?;
        let q = QuadratureSpec::default().with_contour_nodes(a.nodes);
        let residual = limit_holomorphy_residual(&seq, ball.center, ball.radius, &q)?;
        o.checks.push(Check::at_least("ball_radius_cells", ball.radius_cells, 1.0));
        o.checks.push(Check::at_most("limit_holomorphy_residual", residual, a.tolerance));
        json!({"ball": ball, "residual": residual})
    } else {
        o.checks.push(Check::failed("ball_radius_cells", 1.0));
        Value::Null
    };
    o.result = json!({
        "cell": cell,
        "mask_counts": masks.iter().map(|m| m.count()).collect::<Vec<_>>(),
        "covered": cover.covered,
        "uncovered_count": cover.uncovered_points.len(),
        "dense_ball": ball,
    });
    if let Some(dir) = &a.masks_dir {
        for m in &masks {
            o.files.push((dir.join(format!("mask_k{:02}.pbm", m.k as usize)), m.to_pbm().into_bytes()));
        }
    }
    Ok(o)
}

pub fn selftest_cmd(a: &SelftestArgs) -> Result<Outcome, CliError> {
    let mut o = Outcome::new("selftest", a, &a.output);
    o.checks = selftest::run(a.seed);
    o.result = json!({ "check_count": o.checks.len() });
    Ok(o)
}
