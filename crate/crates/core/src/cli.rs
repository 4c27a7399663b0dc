//! Command-line front end. Every command writes files under the output
//! directory and returns a process exit code:
//! 0 success, 1 IO failure, 2 parse error, 3 degenerate input,
//! 4 tolerance violation, 5 incompatible invariants.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::{analyze_grid, AnalysisError, ClassHistogram, GridAnalysis, PointClass};
use crate::bonnet::{reconstruct_from_invariants, reconstruct_gamma1_zero, BonnetError, ReconstructionResult};
use crate::canonical::{
    check_canonical_parameters, frame_invariants_field_with, to_canonical_parameters, CanonicalError, CanonicalVariant,
    InvariantField,
};
use crate::geom::{Frame4, Vec4};
use crate::grid::{Grid1, ScalarProfile};
use crate::io::mesh::write_mesh;
use crate::io::spec::{build, Input, RunConfig, SpecError, SurfaceSpec};
use crate::io::table::{
    frame_invariants_table, invariant_field_table, invariants_table, profile_residuals_table, profile_table,
    residuals_table, Table,
};
use crate::io::IoError;
use crate::natural::{ode_residuals_with, pde_residuals_munu_with, NaturalError};
use crate::rotational::{self, RotationalError};
use crate::surface::ParametricSurface;
use crate::tol::Tolerances;
use crate::Grid2;

pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;
pub const EXIT_TOLERANCE: i32 = 4;
pub const EXIT_COMPAT: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "minsurf4", about = "Invariants and reconstruction of minimal surfaces in R⁴")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Run configuration (TOML with [tolerances] and [output]).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory; overrides the config.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Sample grid size, e.g. 201x128.
    #[arg(long, global = true, value_name = "NxM", value_parser = parse_grid)]
    pub grid: Option<(usize, usize)>,
    /// Tolerance override, repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE", value_parser = parse_tol)]
    pub tol: Vec<(String, f64)>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants, classes and frame invariants of a chart.
    Analyze { spec: String },
    /// Class histogram only.
    Classify { spec: String },
    /// Moving-frame reconstruction from an invariant field or profile.
    Reconstruct { spec: String },
    /// Meridian profile and line-curvature checks of a rotational surface.
    Rotational { spec: String },
    /// Natural-equation residuals.
    Residuals { spec: String },
    /// Mesh export of a chart.
    Export { spec: String },
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or("expected NxM")?;
    let n: usize = a.trim().parse().map_err(|_| format!("bad N in `{s}`"))?;
    let m: usize = b.trim().parse().map_err(|_| format!("bad M in `{s}`"))?;
    if n < 5 || m < 5 {
        return Err("grid needs at least 5 nodes per direction".into());
    }
    Ok((n, m))
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or("expected NAME=VALUE")?;
    let x: f64 = v.trim().parse().map_err(|_| format!("bad value in `{s}`"))?;
    Ok((k.trim().to_string(), x))
}

/// A failed command: exit code and message for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl ToString) -> Self {
        CliError { code, message: message.to_string() }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        let code = match &e {
            IoError::File { .. } => EXIT_IO,
            IoError::Csv(c) if c.is_io_error() => EXIT_IO,
            _ => EXIT_PARSE,
        };
        CliError::new(code, e)
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Io(io) => io.into(),
            SpecError::Rotational(r) => r.into(),
            SpecError::Tolerance(t) => CliError::new(EXIT_PARSE, t),
        }
    }
}

impl From<RotationalError> for CliError {
    fn from(e: RotationalError) -> Self {
        CliError::new(EXIT_DEGENERATE, e)
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        let code = match e {
            AnalysisError::Decomposition { .. } => EXIT_TOLERANCE,
            _ => EXIT_DEGENERATE,
        };
        CliError::new(code, e)
    }
}

impl From<CanonicalError> for CliError {
    fn from(e: CanonicalError) -> Self {
        match e {
            CanonicalError::Analysis(a) => a.into(),
            CanonicalError::NotSemiCanonical { .. } | CanonicalError::NotReparametrizable { .. } => {
                CliError::new(EXIT_TOLERANCE, e)
            }
            CanonicalError::GridTooSmall => CliError::new(EXIT_PARSE, e),
            _ => CliError::new(EXIT_DEGENERATE, e),
        }
    }
}

impl From<NaturalError> for CliError {
    fn from(e: NaturalError) -> Self {
        let code = match e {
            NaturalError::GridTooSmall | NaturalError::GridMismatch => EXIT_PARSE,
            _ => EXIT_DEGENERATE,
        };
        CliError::new(code, e)
    }
}

impl From<BonnetError> for CliError {
    fn from(e: BonnetError) -> Self {
        let code = match &e {
            BonnetError::CompatibilityRejected { .. } => EXIT_COMPAT,
            BonnetError::Natural(n) => return n.clone().into(),
            BonnetError::Analysis(a) => return a.clone().into(),
            BonnetError::DegenerateInvariants(_) | BonnetError::Surface(_) => EXIT_DEGENERATE,
            BonnetError::DriftExceeded { .. } | BonnetError::ClosureExceeded { .. } | BonnetError::Reanalysis { .. } => {
                EXIT_TOLERANCE
            }
            BonnetError::BadInitialFrame | BonnetError::GridMismatch | BonnetError::GridTooSmall => EXIT_PARSE,
        };
        CliError::new(code, e)
    }
}

/// Parses `args` (program name first), runs the command, prints
/// diagnostics and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            print!("{report}");
            0
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

/// Settings shared by all commands after merging config and flags.
struct Context {
    cfg: RunConfig,
    grid: Option<(usize, usize)>,
}

impl Context {
    fn tol(&self) -> &Tolerances {
        &self.cfg.tolerances
    }

    fn out(&self) -> &Path {
        &self.cfg.out_dir
    }

    fn csv(&self, name: &str, table: &Table) -> Result<(), CliError> {
        if self.cfg.csv {
            table.write(&self.out().join(name))?;
        }
        Ok(())
    }

    fn text(&self, name: &str, body: &str) -> Result<(), CliError> {
        if self.cfg.summary {
            let p = self.out().join(name);
            std::fs::write(&p, body).map_err(|e| IoError::file(&p, e))?;
        }
        Ok(())
    }
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let mut cfg = match &cli.global.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    for (k, v) in &cli.global.tol {
        cfg.tolerances.set(k, *v).map_err(|e| CliError::new(EXIT_PARSE, e))?;
    }
    if let Some(d) = &cli.global.out {
        cfg.out_dir = d.clone();
    }
    let ctx = Context { cfg, grid: cli.global.grid };
    let spec_arg = match &cli.command {
        Command::Analyze { spec }
        | Command::Classify { spec }
        | Command::Reconstruct { spec }
        | Command::Rotational { spec }
        | Command::Residuals { spec }
        | Command::Export { spec } => spec,
    };
    let spec = SurfaceSpec::from_arg(spec_arg)?;
    let input = build(&spec, ctx.grid)?;
    std::fs::create_dir_all(ctx.out()).map_err(|e| IoError::file(ctx.out(), e))?;
    match &cli.command {
        Command::Analyze { .. } => cmd_analyze(&ctx, input),
        Command::Classify { .. } => cmd_classify(&ctx, input),
        Command::Reconstruct { .. } => cmd_reconstruct(&ctx, input),
        Command::Rotational { .. } => cmd_rotational(&ctx, input),
        Command::Residuals { .. } => cmd_residuals(&ctx, input),
        Command::Export { .. } => cmd_export(&ctx, input),
    }
}

fn chart(input: Input, what: &str) -> Result<(ParametricSurface, Grid2), CliError> {
    match input {
        Input::Chart { surface, grid, .. } => Ok((surface, grid)),
        _ => Err(CliError::new(EXIT_PARSE, format!("`{what}` needs a chart spec, not invariants"))),
    }
}

fn histogram_text(h: &ClassHistogram) -> String {
    PointClass::ALL.iter().map(|c| format!("{} {}\n", c.name(), h.count(*c))).collect()
}

fn analysis_summary(a: &GridAnalysis) -> String {
    let mut s = format!("nodes {}\n", a.grid.len());
    s += &histogram_text(&a.histogram);
    let _ = writeln!(s, "max_abs_kappa2_minus_k {:e}", a.max_by(|r| r.inv.minimality_defect().abs()));
    let _ = writeln!(s, "min_K2_minus_kappa2 {:e}", a.min_by(|r| r.inv.conformality_defect()));
    let _ = writeln!(s, "max_K {:e}", a.max_by(|r| r.inv.gauss));
    let _ = writeln!(s, "max_decomposition_residual {:e}", a.max_by(|r| r.decomposition_residual));
    s
}

/// Frame invariants in canonical parameters, reparametrizing when the
/// chart is semi-canonical but not yet normalized.
fn canonical_field(
    surface: &ParametricSurface,
    grid: &Grid2,
    tol: &Tolerances,
) -> Result<(InvariantField, CanonicalVariant), CanonicalError> {
    let field = frame_invariants_field_with(surface, grid, tol)?;
    let variant = if field.max_abs(&field.gamma1, 0) < 1e-5 && field.max_abs(&field.beta1, 0) < 1e-5 {
        CanonicalVariant::Gamma1Zero
    } else {
        CanonicalVariant::StronglyRegular
    };
    if check_canonical_parameters(&field, variant, tol).is_canonical {
        return Ok((field, variant));
    }
    let re = to_canonical_parameters(surface, &field, variant, tol)?;
    let g = re.surface.domain.grid(grid.nu, grid.nv);
    Ok((frame_invariants_field_with(&re.surface, &g, tol)?, variant))
}

/// `μ(u)`, `ν(u)` along the middle v-line.
fn profiles(field: &InvariantField) -> (ScalarProfile, ScalarProfile) {
    let g = field.grid;
    let u = Grid1::new(g.u0, g.hu, g.nu).expect("field grids have at least 5 nodes");
    let j = g.nv / 2;
    let line = |f: &crate::ScalarField| ScalarProfile { grid: u, values: (0..g.nu).map(|i| f.at(i, j)).collect() };
    (line(&field.mu), line(&field.nu))
}

fn cmd_analyze(ctx: &Context, input: Input) -> Result<String, CliError> {
    let (surface, grid) = chart(input, "analyze")?;
    let a = analyze_grid(&surface, &grid, ctx.tol())?;
    ctx.csv("invariants.csv", &invariants_table(&a))?;
    ctx.text("histogram.txt", &histogram_text(&a.histogram))?;
    let mut summary = analysis_summary(&a);
    if a.histogram.uniform() == Some(PointClass::MinimalGeneralType) {
        match canonical_field(&surface, &grid, ctx.tol()) {
            Ok((field, variant)) => {
                let c = field.max_codazzi(1);
                let _ = writeln!(summary, "canonical_variant {variant:?}");
                let _ = writeln!(summary, "max_codazzi {:e}", c.iter().fold(0.0f64, |m, x| m.max(*x)));
                let _ = writeln!(summary, "max_normal_connection {:e}", field.max_abs(&field.normal_connection, 1));
                ctx.csv("frame_invariants.csv", &frame_invariants_table(&field))?;
                match variant {
                    CanonicalVariant::StronglyRegular => {
                        ctx.csv("invariant_field.csv", &invariant_field_table(&field.mu, &field.nu))?
                    }
                    CanonicalVariant::Gamma1Zero => {
                        let (mu, nu) = profiles(&field);
                        ctx.csv("invariant_profile.csv", &profile_table(["u", "mu", "nu"], mu.grid, &mu.values, &nu.values))?
                    }
                }
            }
            Err(e) => {
                let _ = writeln!(summary, "frame_invariants unavailable: {e}");
            }
        }
    }
    ctx.text("summary.txt", &summary)?;
    Ok(summary)
}

fn cmd_classify(ctx: &Context, input: Input) -> Result<String, CliError> {
    let (surface, grid) = chart(input, "classify")?;
    let a = analyze_grid(&surface, &grid, ctx.tol())?;
    let text = histogram_text(&a.histogram);
    ctx.text("histogram.txt", &text)?;
    Ok(text)
}

fn reconstruction_report(ctx: &Context, r: &ReconstructionResult) -> Result<String, CliError> {
    if ctx.cfg.mesh {
        write_mesh(ctx.out(), "surface", &r.grid, &r.points)?;
    }
    let mut s = r.summary();
    s += &histogram_text(&r.histogram);
    ctx.text("summary.txt", &s)?;
    Ok(s)
}

fn cmd_reconstruct(ctx: &Context, input: Input) -> Result<String, CliError> {
    let tol = ctx.tol();
    let result = match input {
        Input::Field { mu, nu } => reconstruct_from_invariants(&mu, &nu, Frame4::standard(), Vec4::ZERO, tol),
        Input::Profile { mu, nu, v_extent, v_nodes } => {
            reconstruct_gamma1_zero(&mu, &nu, v_extent, v_nodes, Frame4::standard(), Vec4::ZERO, tol)
        }
        Input::Chart { .. } => return Err(CliError::new(EXIT_PARSE, "`reconstruct` needs an invariant-field or invariant-profile spec")),
    };
    match result {
        Ok(r) => reconstruction_report(ctx, &r),
        Err(e) => {
            if let BonnetError::CompatibilityRejected { residual, limit } = &e {
                ctx.text("summary.txt", &format!("compatibility {residual:e}\nadmit_tol {limit:e}\nrejected\n"))?;
            }
            Err(e.into())
        }
    }
}

fn cmd_rotational(ctx: &Context, input: Input) -> Result<String, CliError> {
    let Input::Chart { surface, grid, rotational: Some(info) } = input else {
        return Err(CliError::new(EXIT_PARSE, "`rotational` needs a rotational-ode or rotational-profile spec"));
    };
    let p = &info.profile;
    let jets: Vec<_> = (0..p.grid.n).map(|i| p.fg_jet(p.grid.u(i))).collect();
    let f: Vec<f64> = jets.iter().map(|j| j.f[0]).collect();
    let g: Vec<f64> = jets.iter().map(|j| j.g[0]).collect();
    ctx.csv("profile.csv", &profile_table(["u", "f", "g"], p.grid, &f, &g))?;
    let residual = jets.iter().map(|j| rotational::minimality_residual(j, info.alpha, info.beta).abs()).fold(0.0, f64::max);
    let mut s = format!("profile_nodes {}\nmax_minimality_residual {residual:e}\n", p.grid.n);
    if let Some(t) = info.minimal.as_ref().and_then(|m| m.truncated_at) {
        let _ = writeln!(s, "truncated_at {t}");
    }
    if !(residual < 1e-8) {
        s += "profile is not minimal\n";
        ctx.text("summary.txt", &s)?;
        return Err(CliError::new(EXIT_TOLERANCE, format!("minimality residual {residual:e} is not below 1e-8")));
    }
    let field = frame_invariants_field_with(&surface, &grid, ctx.tol())?;
    let rows = [grid.nu / 4, grid.nu / 2, 3 * grid.nu / 4];
    let cols: Vec<usize> = (0..grid.nv).step_by((grid.nv / 8).max(1)).collect();
    let report = rotational::verify_line_curvatures(&surface, &field, &rows, &cols)?;
    let _ = writeln!(s, "max_gamma1 {:e}", field.max_abs(&field.gamma1, 0));
    let _ = writeln!(s, "max_beta1 {:e}", field.max_abs(&field.beta1, 0));
    let _ = writeln!(s, "v_line_variation {:e}", report.max_v_variation());
    let _ = writeln!(s, "v_line_mismatch {:e}", report.max_v_mismatch());
    let _ = writeln!(s, "u_line_torsion {:e}", report.max_u_torsion());
    let _ = writeln!(s, "u_line_curvature_mismatch {:e}", report.max_u_curvature_mismatch());
    let _ = writeln!(s, "line_checks {}", if report.passes() { "pass" } else { "fail" });
    ctx.text("summary.txt", &s)?;
    if !report.passes() {
        return Err(CliError::new(EXIT_TOLERANCE, "line-curvature checks failed"));
    }
    Ok(s)
}

fn cmd_residuals(ctx: &Context, input: Input) -> Result<String, CliError> {
    let tol = ctx.tol();
    let (max, s) = match input {
        Input::Field { mu, nu } => {
            let r = pde_residuals_munu_with(&mu, &nu, tol)?;
            ctx.csv("residuals.csv", &residuals_table(&r.r1, &r.r2))?;
            (r.max_abs(), format!("pde_residual {:e}\n", r.max_abs()))
        }
        Input::Profile { mu, nu, .. } => {
            let r = ode_residuals_with(&mu, &nu, tol)?;
            ctx.csv("residuals.csv", &profile_residuals_table(&r.r1, &r.r2))?;
            (r.max_abs(), format!("ode_residual {:e}\n", r.max_abs()))
        }
        Input::Chart { surface, grid, .. } => {
            let (field, variant) = canonical_field(&surface, &grid, tol)?;
            match variant {
                CanonicalVariant::StronglyRegular => {
                    let r = pde_residuals_munu_with(&field.mu, &field.nu, tol)?;
                    ctx.csv("residuals.csv", &residuals_table(&r.r1, &r.r2))?;
                    (r.max_abs(), format!("pde_residual {:e}\n", r.max_abs()))
                }
                CanonicalVariant::Gamma1Zero => {
                    let (mu, nu) = profiles(&field);
                    let r = ode_residuals_with(&mu, &nu, tol)?;
                    ctx.csv("residuals.csv", &profile_residuals_table(&r.r1, &r.r2))?;
                    (r.max_abs(), format!("ode_residual {:e}\n", r.max_abs()))
                }
            }
        }
    };
    let s = format!("{s}admit_tol {:e}\n", tol.admit_tol);
    ctx.text("summary.txt", &s)?;
    if !(max < tol.admit_tol) {
        return Err(CliError::new(EXIT_TOLERANCE, format!("residual {max:e} is not below {:e}", tol.admit_tol)));
    }
    Ok(s)
}

fn cmd_export(ctx: &Context, input: Input) -> Result<String, CliError> {
    let (surface, grid) = chart(input, "export")?;
    let points = surface.sample(&grid);
    let files = write_mesh(ctx.out(), "surface", &grid, &points)?;
    Ok(files.iter().map(|p| format!("{}\n", p.display())).collect())
}
