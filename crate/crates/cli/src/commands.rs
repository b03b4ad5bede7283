//! The subcommands.

use crate::sampler_args::{parse_grid, SamplerArgs};
use crate::{Cli, Report, Status};
use anyhow::Context;
use blaschke::{
    class_fraction, hypersphere_residual, symmetry_scan, AffineImage, ImmersionSampler, ScanOptions, ScanPoint,
    DEFAULT_STEP, SCAN_TOL, TAU_HYPERSPHERE,
};
use clap::Subcommand;
use constructions::Generated;
use cubic_form::{apolarity_residual, pick_invariant, stabilizer_classify, CubicError, CubicFormJson, DEFAULT_TOL};
use lorentz_core::{classify_isometry, isometry_residual, rows_to_mat, Isometry, IsometryRepr, LorentzError, TAU_ISO};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use s3_pde::{
    field_from_points, pde_residual, read_field, read_points, solve, write_field, GridField, S3Case, S3Error,
    SolveOptions,
};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Default tolerance of `s3-solve` and `s3-check`.
const S3_TOL: f64 = 1e-6;
/// Minimum fraction of scan points carrying the advertised class in `verify`.
const CLASS_FRACTION: f64 = 0.95;
/// Tolerance of the curve identity in `verify`.
const CURVE_TOL: f64 = 1e-8;
/// Agreement of `J` between a sampler and its unimodular image in `verify --seed`.
const EQUIVARIANCE_TOL: f64 = 1e-6;

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an element of SO(1,2) (`--tol` default 1e-9).
    ClassifyIsometry {
        /// JSON `{"kind": "ONB"|"LVB", "matrix": [[…], […], […]]}`.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Stabilizer class of an apolar cubic form (`--tol` default 1e-8).
    ClassifyCubic {
        /// JSON `{"frame"?: …, "coeffs": {"kind": "onb"|"lvb"|"dense", …}}`.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Pointwise symmetry scan of a generator (`--tol` default 1e-6).
    Scan {
        #[command(flatten)]
        sampler: SamplerArgs,
        /// `t0:t1:nt,v0:v1:nv,w0:w1:nw`; defaults to 5×5×5 cell centres of the domain.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// Finite-difference step.
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        /// Also write one CSV row per point here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Describe a generator; write it with `--out` for later `scan`/`verify`.
    Generate {
        #[command(flatten)]
        sampler: SamplerArgs,
    },
    /// Check that a generator is a hypersphere with its advertised symmetry
    /// (`--tol` default 1e-4; `--seed` adds a random unimodular image).
    Verify {
        #[command(flatten)]
        sampler: SamplerArgs,
        /// As for `scan`.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
    },
    /// Solve an S3 elliptic system with Dirichlet data (`--tol` default 1e-6).
    S3Solve {
        /// `h-1|h+1|h0` followed by `-gen|-ex`, e.g. `h-1-gen`.
        #[arg(long)]
        case: String,
        /// Nodes per side of the unit square.
        #[arg(long, default_value_t = 33)]
        grid: usize,
        /// CSV `x,y,h,k` with at least the boundary nodes; defaults to the case's
        /// constant solution (or `k = 0`) on the boundary.
        #[arg(long)]
        bc: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        max_sweeps: usize,
        /// Write the solved field (CSV with header line) here.
        #[arg(long)]
        field: Option<PathBuf>,
    },
    /// Residual of a grid field written by `s3-solve` (`--tol` default 1e-6).
    S3Check {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn open(path: &Path) -> anyhow::Result<std::io::BufReader<std::fs::File>> {
    let f = std::fs::File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(std::io::BufReader::new(f))
}

pub(crate) fn execute(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::ClassifyIsometry { input } => classify_isometry_cmd(input, cli.tol.unwrap_or(TAU_ISO)),
        Command::ClassifyCubic { input } => classify_cubic_cmd(input, cli.tol.unwrap_or(DEFAULT_TOL)),
        Command::Scan { sampler, grid, step, csv } => {
            scan_cmd(sampler, grid.as_deref(), *step, cli.tol.unwrap_or(SCAN_TOL), csv.as_deref())
        }
        Command::Generate { sampler } => generate_cmd(sampler),
        Command::Verify { sampler, grid, step } => {
            verify_cmd(sampler, grid.as_deref(), *step, cli.tol.unwrap_or(TAU_HYPERSPHERE), cli.seed)
        }
        Command::S3Solve { case, grid, bc, max_sweeps, field } => {
            s3_solve_cmd(case, *grid, bc.as_deref(), *max_sweeps, cli.tol.unwrap_or(S3_TOL), field.as_deref())
        }
        Command::S3Check { input } => s3_check_cmd(input, cli.tol.unwrap_or(S3_TOL)),
    }
}

fn classify_isometry_cmd(input: &Path, tol: f64) -> anyhow::Result<Report> {
    let repr: IsometryRepr = read_json(input)?;
    let mut r = Report::new("classify-isometry");
    let m = rows_to_mat(&repr.matrix);
    r.residuals.insert("isometry".into(), isometry_residual(&m, repr.kind));
    let result = Isometry::new(m, repr.kind, tol).and_then(|l| classify_isometry(&l, tol).map(|c| (l, c)));
    match result {
        Ok((l, c)) => {
            r.merge(c);
            r.residual("normal_form", lorentz_core::normal_form_residual(&l, &c), 10.0 * tol);
        }
        Err(e @ LorentzError::NumericallyAmbiguous(_)) => r.fail(Status::Ambiguous, &e, e.to_string()),
        Err(e) => r.fail(Status::Error, &e, e.to_string()),
    }
    Ok(r)
}

fn classify_cubic_cmd(input: &Path, tol: f64) -> anyhow::Result<Report> {
    let doc: CubicFormJson = read_json(input)?;
    let mut r = Report::new("classify-cubic");
    let form = match doc.to_form() {
        Ok(f) => f,
        Err(e) => {
            r.fail(Status::Error, &e, e.to_string());
            return Ok(r);
        }
    };
    r.residuals.insert("apolarity".into(), apolarity_residual(&form));
    match stabilizer_classify(&form, tol) {
        Ok(c) => {
            r.put("class", c.tag.name());
            r.put("params", &c.params);
            r.put("canonical_frame", c.canonical_frame);
            r.put("J", pick_invariant(&form).ok());
            r.residual("pattern", c.pattern_residual, 10.0 * tol);
            r.residual("generator", c.generator_residual, 10.0 * tol);
        }
        Err(e @ CubicError::NumericallyAmbiguous(_)) => r.fail(Status::Ambiguous, &e, e.to_string()),
        Err(e) => r.fail(Status::Error, &e, e.to_string()),
    }
    Ok(r)
}

fn build(args: &SamplerArgs, r: &mut Report) -> anyhow::Result<Option<Generated>> {
    let spec = args.spec()?;
    r.put("sampler", &spec);
    match spec.build() {
        Ok(g) => Ok(Some(g)),
        Err(e) => {
            r.fail(Status::Error, &e, e.to_string());
            Ok(None)
        }
    }
}

fn grid_points(grid: Option<&str>, phi: &dyn ImmersionSampler) -> anyhow::Result<Vec<[f64; 3]>> {
    match grid {
        Some(g) => parse_grid(g),
        None => Ok(phi.domain().interior_grid(5)),
    }
}

fn class_counts(report: &[ScanPoint]) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for p in report {
        *counts.entry(p.class.clone()).or_insert(0) += 1;
    }
    counts
}

fn max_egregium(report: &[ScanPoint]) -> f64 {
    report.iter().map(|p| p.residuals.egregium).fold(0.0, f64::max)
}

fn write_scan_csv(path: &Path, report: &[ScanPoint]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    w.write_record(["t", "v", "w", "class", "J", "kappa_hat", "H", "egregium"])?;
    for p in report {
        let f = crate::json::format_f64;
        w.write_record([
            f(p.point[0]),
            f(p.point[1]),
            f(p.point[2]),
            p.class.clone(),
            f(p.j),
            f(p.kappa_hat),
            f(p.h),
            f(p.residuals.egregium),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn scan_cmd(args: &SamplerArgs, grid: Option<&str>, step: f64, tol: f64, csv: Option<&Path>) -> anyhow::Result<Report> {
    let mut r = Report::new("scan");
    let Some(g) = build(args, &mut r)? else { return Ok(r) };
    let pts = grid_points(grid, g.sampler.as_ref())?;
    let opts = ScanOptions { step, tol, ..Default::default() };
    match symmetry_scan(g.sampler.as_ref(), &pts, &opts) {
        Ok(report) => {
            if let Some(path) = csv {
                write_scan_csv(path, &report)?;
            }
            r.put("class_counts", class_counts(&report));
            r.residual("egregium", max_egregium(&report), TAU_HYPERSPHERE);
            r.put("points", &report);
        }
        Err(e) => r.fail(Status::Error, &e, e.to_string()),
    }
    Ok(r)
}

fn generate_cmd(args: &SamplerArgs) -> anyhow::Result<Report> {
    let mut r = Report::new("generate");
    let Some(g) = build(args, &mut r)? else { return Ok(r) };
    r.put("name", g.sampler.name());
    r.put("domain", g.sampler.domain());
    r.put("expected_class", g.expected_class.name());
    r.put("expected_H", g.expected_h);
    r.put("case", g.case);
    if let Some(c) = g.curve_check {
        r.put("curve_check", c);
    }
    Ok(r)
}

/// Random element of SL(4) (entries near the identity) and a translation.
fn random_unimodular(seed: u64) -> ([[f64; 4]; 4], [f64; 4]) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = nalgebra::Matrix4::<f64>::from_fn(|i, j| rng.gen_range(-0.5..0.5) + if i == j { 1.5 } else { 0.0 });
    let det = a.determinant();
    if det < 0.0 {
        a.row_mut(0).neg_mut();
    }
    a /= det.abs().powf(0.25);
    let b = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
    (std::array::from_fn(|i| std::array::from_fn(|j| a[(i, j)])), b)
}

fn verify_cmd(args: &SamplerArgs, grid: Option<&str>, step: f64, tol: f64, seed: Option<u64>) -> anyhow::Result<Report> {
    let mut r = Report::new("verify");
    let Some(g) = build(args, &mut r)? else { return Ok(r) };
    let phi = g.sampler.as_ref();
    let pts = grid_points(grid, phi)?;
    let class = g.expected_class.name();
    r.put("expected_class", class);
    r.put("expected_H", g.expected_h);
    let outcome = (|| -> Result<(), blaschke::BlaschkeError> {
        let (h_est, res) = hypersphere_residual(phi, &pts, step)?;
        r.put("H_est", h_est);
        r.residual("hypersphere", res, tol);
        if let Some(h) = g.expected_h {
            // Generated examples carry their natural scale: compare signs only.
            let sign_ok = if h == 0.0 { h_est.abs() <= tol } else { h_est * h > 0.0 };
            r.put("H_sign_matches", sign_ok);
            if !sign_ok {
                r.status = Status::Error;
            }
        }
        let report = symmetry_scan(phi, &pts, &ScanOptions { step, ..Default::default() })?;
        let fraction = class_fraction(&report, class);
        r.put("class_fraction", fraction);
        r.put("class_counts", class_counts(&report));
        r.residual("class_shortfall", (CLASS_FRACTION - fraction).max(0.0), 0.0);
        r.residual("egregium", max_egregium(&report), tol);
        if let Some(seed) = seed {
            let (a, b) = random_unimodular(seed);
            let image = AffineImage::new(Arc::clone(&g.sampler), a, b);
            let moved = symmetry_scan(&image, &pts, &ScanOptions { step, ..Default::default() })?;
            let same_class = report.iter().zip(&moved).all(|(p, q)| p.class == q.class);
            let dj = report.iter().zip(&moved).map(|(p, q)| (p.j - q.j).abs()).fold(0.0, f64::max);
            r.put("unimodular_classes_agree", same_class);
            r.residual("unimodular_J", dj, EQUIVARIANCE_TOL);
            if !same_class {
                r.status = Status::Error;
            }
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        r.fail(Status::Error, &e, e.to_string());
    }
    if let Some(c) = g.curve_check {
        r.put("curve_check", c);
        r.residual("curve", c.max_residual, CURVE_TOL * c.min_lhs.max(1.0));
        if !(c.sign_clause && c.min_lhs > 0.0) {
            r.status = Status::Error;
        }
    }
    Ok(r)
}

fn s3_fail(r: &mut Report, e: S3Error) {
    if let S3Error::DidNotConverge { iterations, residual, .. } = &e {
        r.put("sweeps", iterations);
        r.residuals.insert("pde".into(), *residual);
    }
    r.fail(Status::Error, &e, e.to_string());
}

fn s3_solve_cmd(
    case: &str,
    n: usize,
    bc: Option<&Path>,
    max_sweeps: usize,
    tol: f64,
    field_out: Option<&Path>,
) -> anyhow::Result<Report> {
    let case: S3Case = case.parse()?;
    if n < 3 {
        anyhow::bail!("--grid must be at least 3");
    }
    let spacing = 1.0 / (n - 1) as f64;
    let boundary = match bc {
        Some(path) => {
            let (_, points) = read_points(open(path)?)?;
            field_from_points(&points, n, n, spacing, case.has_h(), false)?
        }
        None => {
            let (h, k) = case.constant_solution().unwrap_or((0.0, 0.0));
            GridField::unit_square(n, case.has_h(), |_, _| (h, k))?
        }
    };
    let mut r = Report::new("s3-solve");
    r.put("case", case.to_string());
    r.put("nx", n);
    r.put("ny", n);
    r.put("spacing", spacing);
    match solve(case, &boundary, &SolveOptions { max_sweeps, tol, omega: None }) {
        Ok(sol) => {
            r.put("sweeps", sol.sweeps);
            r.put("k_range", sol.field.interior_range(false));
            if case.has_h() {
                r.put("h_range", sol.field.interior_range(true));
            }
            r.residual("pde", sol.residual, tol);
            if let Some(path) = field_out {
                let f = std::fs::File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
                write_field(std::io::BufWriter::new(f), case, &sol.field, Some(sol.residual))?;
            }
        }
        Err(e) => s3_fail(&mut r, e),
    }
    Ok(r)
}

fn s3_check_cmd(input: &Path, tol: f64) -> anyhow::Result<Report> {
    let (case, field, claimed) = read_field(open(input)?)?;
    let mut r = Report::new("s3-check");
    r.put("case", case.to_string());
    r.put("nx", field.nx);
    r.put("ny", field.ny);
    r.put("spacing", field.spacing);
    r.put("header_residual", claimed);
    match pde_residual(case, &field) {
        Ok(res) => r.residual("pde", res, tol),
        Err(e) => s3_fail(&mut r, e),
    }
    Ok(r)
}
