//! The `kahler` command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::field::FormField;
use crate::fieldspec::{evaluate_spec, parse_field_spec};
use crate::green::green_identity_residual;
use crate::grid::{GridSpec, Region};
use crate::hodge::{decompose_full_space, decompose_region, Comparison, DecompositionConfig, DecompositionResult, Mode};
use crate::identities::{exact_identities, left_constant_gap, random_field, verify_product_rules};
use crate::oracle::check_dimension;
use crate::potential::{delta_reconstruct_at, KernelSpec, SelfCellRule};
use crate::suites::{
    boundary_row, decreasing_or_negligible, gaussian, gaussian_field, green_configuration, BoundaryKind, BoundaryRow,
    ROUNDING_FLOOR,
};
use crate::table::{format_real, read_field_csv, write_field_csv, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "kahler", version, about = "Kähler calculus and Helmholtz-Hodge decomposition on grids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose a sampled form into closed, co-closed and harmonic parts.
    Decompose(DecomposeArgs),
    /// Compare the algebra against the permutation-sign oracle.
    CheckAlgebra(AlgebraArgs),
    /// Exact discrete identities and second-order product rules.
    CheckCalculus(CalculusArgs),
    /// The Green–Kähler identity, pointwise and integrated.
    CheckGreen(GreenArgs),
    /// Reconstruct exp(−r²) at the origin from its Laplacian.
    CheckDelta(DeltaArgs),
    /// Surface-integral prediction of dF and δF against the discrete remainder.
    BoundaryCheck(BoundaryArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Tolerances {
    /// Relative tolerance.
    #[arg(long)]
    pub tol_rel: Option<f64>,
    /// Absolute tolerance.
    #[arg(long)]
    pub tol_abs: Option<f64>,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    /// Field file (`.fld`) or component table (`.csv`).
    #[arg(long)]
    pub input: PathBuf,
    /// Output directory for report.txt and the component tables.
    #[arg(long)]
    pub out: PathBuf,
    /// Inclusive node ranges `i0:i1,...`, one per axis. Without it the whole
    /// grid is treated as all of space.
    #[arg(long)]
    pub region: Option<String>,
    /// Self-cell rule: stencil-consistent, equal-volume-ball or cube-average.
    #[arg(long, default_value = "stencil-consistent")]
    pub self_cell: String,
    /// Norms skip nodes closer than this to a face.
    #[arg(long, default_value_t = 2)]
    pub offset: usize,
    /// Skip the surface-integral diagnostics in region mode.
    #[arg(long)]
    pub no_boundary: bool,
    #[command(flatten)]
    pub tol: Tolerances,
}

#[derive(Args, Debug)]
pub struct AlgebraArgs {
    /// Dimension; all of 1..=5 when omitted.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CalculusArgs {
    /// Dimensions for the exact identities.
    #[arg(long, value_delimiter = ',', default_values_t = [3, 4])]
    pub n: Vec<usize>,
    /// Random fields per dimension.
    #[arg(long, default_value_t = 20)]
    pub fields: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Nodes per axis for the exact identities.
    #[arg(long, default_value_t = 9)]
    pub points: usize,
    /// Coarse nodes per axis for the product-rule ratio; the fine grid halves h.
    #[arg(long, default_value_t = 25)]
    pub ratio_points: usize,
    #[command(flatten)]
    pub tol: Tolerances,
}

#[derive(Args, Debug)]
pub struct GreenArgs {
    /// Nodes per axis of the fine grid; the coarse grid doubles h.
    #[arg(long, default_value_t = 33)]
    pub points: usize,
    #[command(flatten)]
    pub tol: Tolerances,
}

#[derive(Args, Debug)]
pub struct DeltaArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 32)]
    pub points: usize,
    /// Half-width of the box `[−L, L]^n`.
    #[arg(long, default_value_t = 4.0)]
    pub half_width: f64,
    #[arg(long, default_value = "stencil-consistent")]
    pub self_cell: String,
    #[command(flatten)]
    pub tol: Tolerances,
}

#[derive(Args, Debug)]
pub struct BoundaryArgs {
    /// Refinement sequence, nodes per axis.
    #[arg(long, value_delimiter = ',', default_values_t = [16, 24, 32])]
    pub points: Vec<usize>,
    /// gradient, curl or coexact; all when omitted.
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long, default_value = "stencil-consistent")]
    pub self_cell: String,
}

/// A failure that ends the command with a machine-readable record.
struct Failure {
    code: &'static str,
    location: Option<(usize, usize)>,
    message: String,
}

impl Failure {
    fn new(code: &'static str, message: impl Into<String>) -> Self {
        Failure {
            code,
            location: None,
            message: message.into(),
        }
    }

    fn record(&self) -> String {
        let message = self.message.replace('"', "'");
        match self.location {
            Some((line, column)) => format!("error code={} line={line} column={column} message=\"{message}\"", self.code),
            None => format!("error code={} message=\"{message}\"", self.code),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if let Error::Spec(s) = &e {
            return Failure {
                code: s.code.as_str(),
                location: Some((s.line, s.column)),
                message: s.message.clone(),
            };
        }
        let code = match &e {
            Error::Io(_) => "E_IO",
            Error::Table(_) => "E_TABLE",
            Error::InvalidRegion(_) | Error::EmptyRegion | Error::RegionTooThin(_) => "E_REGION",
            Error::KernelDimension(_) => "E_DIM",
            _ => "E_INPUT",
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = std::result::Result<bool, Failure>;

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    let _ = writeln!(err, "{}", Failure::new("E_ARGS", e.kind().to_string()).record());
                    EXIT_INVALID
                }
            };
        }
    };
    let outcome = match &cli.command {
        Command::Decompose(a) => decompose(a, out, err),
        Command::CheckAlgebra(a) => check_algebra(a, out),
        Command::CheckCalculus(a) => check_calculus(a, out),
        Command::CheckGreen(a) => check_green(a, out),
        Command::CheckDelta(a) => check_delta(a, out),
        Command::BoundaryCheck(a) => boundary_check(a, out),
    };
    match outcome {
        Ok(true) => {
            let _ = writeln!(out, "status: pass");
            EXIT_OK
        }
        Ok(false) => {
            let _ = writeln!(out, "status: fail");
            EXIT_FAILED
        }
        Err(f) => {
            let _ = writeln!(err, "{}", f.record());
            EXIT_INVALID
        }
    }
}

fn self_cell(name: &str) -> std::result::Result<SelfCellRule, Failure> {
    SelfCellRule::parse(name).ok_or_else(|| Failure::new("E_ARGS", format!("unknown self-cell rule {name}")))
}

/// Reads a `.csv` component table or a field file.
pub fn load_field(path: &Path) -> crate::error::Result<FormField> {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        return read_field_csv(path);
    }
    let spec = parse_field_spec(&std::fs::read_to_string(path)?)?;
    Ok(evaluate_spec(&spec)?)
}

fn series_text(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v:.4e}")).collect::<Vec<_>>().join(", ")
}

fn line(out: &mut dyn Write, ok: bool, text: std::fmt::Arguments) -> bool {
    let _ = writeln!(out, "{} {}", if ok { "PASS" } else { "FAIL" }, text);
    ok
}

fn add_comparison(r: &mut Report, prefix: &str, c: &Option<Comparison>) {
    if let Some(c) = c {
        r.real(&format!("{prefix}_predicted_norm"), c.predicted_norm);
        r.real(&format!("{prefix}_discrete_norm"), c.discrete_norm);
        r.real(&format!("{prefix}_difference_norm"), c.difference_norm);
        r.real(&format!("{prefix}_relative_error"), c.relative_error());
    }
}

fn grade_report(r: &mut Report, res: &DecompositionResult) {
    let d = &res.diagnostics;
    r.section(&format!("grade {}", d.grade));
    r.entry("mode", if d.mode == Mode::FullSpace { "full-space" } else { "region" });
    r.entry("self_cell", d.self_cell.name());
    r.entry("offset", d.offset);
    r.real("alpha_norm", d.alpha_norm);
    r.real("closed_norm", d.closed_norm);
    r.real("coclosed_norm", d.coclosed_norm);
    r.real("harmonic_norm", d.harmonic_norm);
    let rel = |x: f64| if d.alpha_norm > 0.0 { x / d.alpha_norm } else { x };
    r.real("closed_relative", rel(d.closed_norm));
    r.real("coclosed_relative", rel(d.coclosed_norm));
    r.real("harmonic_relative", rel(d.harmonic_norm));
    r.real("reconstruction_error", d.reconstruction_error);
    r.real("closed_exterior_residual", d.closed_exterior_residual);
    r.real("coclosed_interior_residual", d.coclosed_interior_residual);
    if let Some((a, b)) = d.hyperharmonic {
        r.real("hyperharmonic_delta_d", a);
        r.real("hyperharmonic_d_delta", b);
    }
    add_comparison(r, "boundary_exterior", &d.boundary_exterior);
    add_comparison(r, "boundary_interior", &d.boundary_interior);
    if d.mode == Mode::FullSpace {
        r.real("decay_ratio", d.decay_ratio);
        r.entry("decay_warning", d.decay_warning);
    }
}

fn decompose(a: &DecomposeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let started = Instant::now();
    let field = load_field(&a.input)?;
    let region = match &a.region {
        Some(text) => Some(Region::parse(field.grid(), text)?),
        None => None,
    };
    let cfg = DecompositionConfig {
        self_cell: self_cell(&a.self_cell)?,
        offset: a.offset,
        boundary_diagnostics: !a.no_boundary,
        ..Default::default()
    };
    let tol_rel = a.tol.tol_rel.unwrap_or(0.05);
    let tol_abs = a.tol.tol_abs.unwrap_or(1e-10);

    let mut grades = field.grades();
    if grades.is_empty() {
        grades.push(0);
    }
    let out_grid: GridSpec = match &region {
        Some(r) => r.sub_grid(),
        None => field.grid().clone(),
    };
    let mut closed = FormField::zeros(&out_grid);
    let mut coclosed = FormField::zeros(&out_grid);
    let mut harmonic = FormField::zeros(&out_grid);
    let mut report = Report::new();
    report.section("run");
    report.entry("input", a.input.display());
    report.entry("mode", if region.is_some() { "region" } else { "full-space" });
    report.entry("n", field.dim());
    report.entry(
        "shape",
        field.grid().shape().iter().map(|p| p.to_string()).collect::<Vec<_>>().join("x"),
    );
    if let Some(r) = &region {
        let ranges: Vec<String> = r.lo().iter().zip(r.hi()).map(|(l, h)| format!("{l}:{h}")).collect();
        report.entry("region", ranges.join(","));
    }
    report.entry("self_cell", cfg.self_cell.name());
    report.entry("grades", grades.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(","));

    let mut ok = true;
    let mut checks = Vec::new();
    let mut results = Vec::new();
    for &k in &grades {
        let part = field.grade_part(k);
        let res = match &region {
            Some(r) => decompose_region(&part, r, &cfg)?,
            None => decompose_full_space(&part, &cfg)?,
        };
        closed = closed.add(&res.closed)?;
        coclosed = coclosed.add(&res.coclosed)?;
        harmonic = harmonic.add(&res.harmonic)?;
        let d = &res.diagnostics;
        let (pass, tol) = match d.mode {
            Mode::FullSpace => (d.reconstruction_error <= tol_rel, tol_rel),
            Mode::Region => (d.reconstruction_error <= tol_abs, tol_abs),
        };
        ok &= pass;
        checks.push(format!(
            "grade {k}: reconstruction_error {} <= {} {}",
            format_real(d.reconstruction_error),
            format_real(tol),
            if pass { "pass" } else { "fail" }
        ));
        if d.decay_warning {
            let _ = writeln!(
                err,
                "warning: grade {k}: field does not decay at the grid boundary (ratio {:.3e}); full-space results are unreliable",
                d.decay_ratio
            );
        }
        let _ = writeln!(
            out,
            "grade {k}: closed {:.6e} coclosed {:.6e} harmonic {:.6e} reconstruction {:.3e} ({:.2}s)",
            d.closed_norm, d.coclosed_norm, d.harmonic_norm, d.reconstruction_error, d.seconds
        );
        results.push(res);
    }
    for res in &results {
        grade_report(&mut report, res);
    }
    report.section("summary");
    for (i, c) in checks.iter().enumerate() {
        report.entry(&format!("check_{i}"), c);
    }
    report.entry("status", if ok { "pass" } else { "fail" });

    std::fs::create_dir_all(&a.out).map_err(Error::Io)?;
    std::fs::write(a.out.join("report.txt"), report.as_str()).map_err(Error::Io)?;
    write_field_csv(&closed, &a.out.join("closed.csv"))?;
    write_field_csv(&coclosed, &a.out.join("coclosed.csv"))?;
    write_field_csv(&harmonic, &a.out.join("harmonic.csv"))?;
    let _ = writeln!(out, "wrote {} ({:.2}s)", a.out.display(), started.elapsed().as_secs_f64());
    Ok(ok)
}

fn check_algebra(a: &AlgebraArgs, out: &mut dyn Write) -> Outcome {
    let dims: Vec<usize> = match a.n {
        Some(n) if n == 0 || n > 8 => return Err(Failure::new("E_DIM", format!("n = {n} outside 1..=8"))),
        Some(n) => vec![n],
        None => (1..=5).collect(),
    };
    let mut ok = true;
    for n in dims {
        let t = Instant::now();
        let r = check_dimension(n);
        ok &= line(
            out,
            r.mismatches() == 0,
            format_args!(
                "n={n} comparisons={} clifford={} exterior={} interior={} reversion={} complement={} ({:.3}s)",
                r.comparisons,
                r.clifford,
                r.exterior,
                r.interior,
                r.reversion,
                r.complement,
                t.elapsed().as_secs_f64()
            ),
        );
    }
    Ok(ok)
}

fn check_calculus(a: &CalculusArgs, out: &mut dyn Write) -> Outcome {
    let tol = a.tol.tol_rel.unwrap_or(1e-12);
    let mut ok = true;
    for &n in &a.n {
        if !(2..=6).contains(&n) {
            return Err(Failure::new("E_DIM", format!("n = {n} outside 2..=6")));
        }
        let g = GridSpec::cube(n, -2.0, 2.0, a.points)?;
        let mut worst: Vec<(String, f64)> = Vec::new();
        for i in 0..a.fields {
            let seed = a.seed.wrapping_mul(1000).wrapping_add(i);
            let u = random_field(&g, seed);
            let f = random_field(&g, seed ^ 0x5bd1e995).grade_part(0);
            let c = random_field(&GridSpec::cube(n, 0.0, 1.0, 3)?, seed.wrapping_add(77)).at(0);
            let field_scale = u.max_abs(0).max(f.max_abs(0));
            for r in exact_identities(&u, &c, &f, 1)? {
                let rel = r.residual / r.scale.max(field_scale);
                match worst.iter_mut().find(|(name, _)| *name == r.name) {
                    Some(w) => w.1 = w.1.max(rel),
                    None => worst.push((r.name.clone(), rel)),
                }
            }
        }
        for (name, rel) in worst {
            ok &= line(out, rel <= tol, format_args!("n={n} {name} relative={rel:.3e} tol={tol:.1e}"));
        }
        let gap = left_constant_gap(&g)?;
        let _ = writeln!(out, "INFO n={n} left-constant gap={gap:.6} (the rule holds only for right constants)");
    }

    let coarse = GridSpec::cube(3, -3.0, 3.0, a.ratio_points)?;
    let fine = GridSpec::cube(3, -3.0, 3.0, 2 * a.ratio_points - 1)?;
    let rules = |g: &GridSpec| verify_product_rules(&gaussian_field(g, 0.0), &gaussian_field(g, 5.0), 1);
    for (c, f) in rules(&coarse)?.iter().zip(rules(&fine)?) {
        let ratio = c.residual / f.residual;
        ok &= line(
            out,
            (3.5..=4.5).contains(&ratio),
            format_args!("n=3 {} ratio={ratio:.4} coarse={:.3e} fine={:.3e}", c.name, c.residual, f.residual),
        );
    }
    Ok(ok)
}

fn check_green(a: &GreenArgs, out: &mut dyn Write) -> Outcome {
    let tol = a.tol.tol_rel.unwrap_or(0.01);
    if a.points < 9 || a.points % 2 == 0 {
        return Err(Failure::new("E_ARGS", "--points must be odd and at least 9"));
    }
    let (u, v, region) = green_configuration(a.points)?;
    let fine = green_identity_residual(&u, &v, &region)?;
    let swapped = green_identity_residual(&v, &u, &region)?;
    let (uc, vc, rc) = green_configuration(a.points / 2 + 1)?;
    let coarse = green_identity_residual(&uc, &vc, &rc)?;
    let ratio = coarse.pointwise / fine.pointwise;
    let mut ok = line(
        out,
        (3.5..=4.5).contains(&ratio),
        format_args!("pointwise ratio={ratio:.4} coarse={:.3e} fine={:.3e}", coarse.pointwise, fine.pointwise),
    );
    ok &= line(
        out,
        fine.integrated_relative() < tol,
        format_args!(
            "integrated relative={:.3e} surface={:.6e} volume={:.6e} tol={tol:.1e}",
            fine.integrated_relative(),
            fine.surface,
            fine.volume
        ),
    );
    let stokes = (fine.surface - fine.divergence).abs() / fine.surface.abs().max(1.0);
    ok &= line(out, stokes < 1e-12, format_args!("discrete stokes relative={stokes:.3e}"));
    let sym = (fine.pointwise - swapped.pointwise).abs();
    ok &= line(out, sym < 1e-14, format_args!("swap symmetry difference={sym:.3e}"));
    Ok(ok)
}

fn check_delta(a: &DeltaArgs, out: &mut dyn Write) -> Outcome {
    let tol = a.tol.tol_rel.unwrap_or(0.05);
    let spec = KernelSpec::new(a.n, self_cell(&a.self_cell)?)?;
    let g = GridSpec::cube(a.n, -a.half_width, a.half_width, a.points)?;
    let phi = FormField::scalar_from_fn(&g, gaussian);
    let t = Instant::now();
    let v = delta_reconstruct_at(&phi, &Region::full(&g), &spec, &[vec![0.0; a.n]])?[0];
    let rel = (v - 1.0).abs();
    Ok(line(
        out,
        rel < tol,
        format_args!(
            "n={} points={} phi(0)={} relative={rel:.3e} tol={tol:.1e} ({:.2}s)",
            a.n,
            a.points,
            format_real(v),
            t.elapsed().as_secs_f64()
        ),
    ))
}

fn boundary_check(a: &BoundaryArgs, out: &mut dyn Write) -> Outcome {
    let kinds: Vec<BoundaryKind> = match &a.kind {
        Some(k) => vec![BoundaryKind::parse(k).ok_or_else(|| Failure::new("E_ARGS", format!("unknown kind {k}")))?],
        None => BoundaryKind::ALL.to_vec(),
    };
    let cfg = DecompositionConfig {
        self_cell: self_cell(&a.self_cell)?,
        ..Default::default()
    };
    let mut ok = true;
    for kind in kinds {
        let mut rows = Vec::new();
        for &p in &a.points {
            let row = boundary_row(kind, p, &cfg)?;
            let _ = writeln!(
                out,
                "{} points={p} exterior_relative={:.4e} interior_relative={:.4e} delta_d={:.4e} d_delta={:.4e} reconstruction={:.1e}",
                kind.name(),
                row.exterior.relative_error(),
                row.interior.relative_error(),
                row.hyperharmonic.0,
                row.hyperharmonic.1,
                row.reconstruction_error
            );
            rows.push(row);
        }
        let series = |f: &dyn Fn(&BoundaryRow) -> f64| rows.iter().map(f).collect::<Vec<_>>();
        let scaled = |f: fn(&BoundaryRow) -> f64| series(&|r: &BoundaryRow| f(r) / r.alpha_norm);
        let errs = series(&|r: &BoundaryRow| r.relative_error());
        ok &= line(
            out,
            decreasing_or_negligible(&errs, ROUNDING_FLOOR),
            format_args!("{} surface term relative error decreasing [{}]", kind.name(), series_text(&errs)),
        );
        for (name, vals) in [("delta_d", scaled(|r| r.hyperharmonic.0)), ("d_delta", scaled(|r| r.hyperharmonic.1))] {
            ok &= line(
                out,
                decreasing_or_negligible(&vals, ROUNDING_FLOOR),
                format_args!("{} {name}/|alpha| decreasing or zero [{}]", kind.name(), series_text(&vals)),
            );
        }
    }
    Ok(ok)
}
