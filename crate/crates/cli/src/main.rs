//! `bmq`: validate, quantize and check b^m-symplectic toric specs.
//!
//! Exit codes: 0 when everything holds, 1 when a check fails, 2 for
//! unreadable or invalid input.

mod cache;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bmq::lattice::intlin::IntVec;
use bmq::model::{validate_spec, ManifoldSpec};
use bmq::quantize::{self, QuantizeError};
use bmq::rational::parse_rational;
use bmq::specfile::{self, module_from_json, module_to_json, spec_to_json};
use bmq::virtmod::{ModuleError, VirtualTModule};
use bmq::{presets, Rational};

use cache::RunCache;

#[derive(Parser)]
#[command(name = "bmq", version, about = "Exact quantization of toric b^m-symplectic manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a spec file against every structural invariant.
    Validate { path: PathBuf },
    /// Quantize a spec and write the module (JSON) and a multiplicity table (CSV, SVG).
    Quantize {
        path: PathBuf,
        /// `lo..hi`, once for all axes or once per axis.
        #[arg(long, allow_hyphen_values = true)]
        window: Vec<String>,
        /// Output formats; both when omitted.
        #[arg(long, value_enum)]
        out: Vec<OutFormat>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Recompute even when a cached result exists.
        #[arg(long)]
        no_cache: bool,
    },
    /// Run a theorem check.
    Check {
        path: PathBuf,
        #[command(subcommand)]
        check: CheckKind,
    },
    /// Write a built-in example spec.
    Example {
        #[command(subcommand)]
        name: ExampleKind,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum CheckKind {
    /// Finiteness for odd m, ray asymptotics for even m.
    Theorem1,
    /// Restriction to a subtorus against fiber sums.
    Stages {
        /// Integer projection matrix as JSON rows, e.g. `[[1,0]]`.
        #[arg(long)]
        proj: String,
    },
    /// Pairing with a polytope module against direct enumeration.
    Qr {
        /// JSON polytope `{"halfspaces": [...]}`.
        #[arg(long)]
        npolytope: PathBuf,
    },
}

#[derive(Args)]
struct Output {
    /// Write here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ExampleKind {
    S2 {
        #[arg(long)]
        m: usize,
        /// Comma-separated collar coefficients `c_1,...,c_m` as `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    S2xs2 {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: Output,
    },
    Chain {
        #[arg(long)]
        pieces: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: Output,
    },
}

/// Input problems; reported with exit code 2.
#[derive(Debug, thiserror::Error)]
enum InputError {
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("{0}")]
    Spec(#[from] specfile::SpecFileError),
    #[error("invalid spec:\n{0}")]
    Invalid(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Engine(#[from] QuantizeError),
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> Result<(), InputError> {
    fs::write(path, text).map_err(|e| InputError::Io(path.to_path_buf(), e))
}

fn load_valid(path: &Path) -> Result<ManifoldSpec, InputError> {
    let spec = specfile::parse_spec(&read(path)?)?;
    let report = validate_spec(&spec);
    if !report.is_empty() {
        return Err(InputError::Invalid(report.to_string()));
    }
    Ok(spec)
}

fn parse_window(raw: &[String], d: usize) -> Result<(IntVec, IntVec), InputError> {
    let parse_one = |s: &str| -> Result<(i64, i64), InputError> {
        let bad = || InputError::Usage(format!("window {s:?} is not of the form lo..hi"));
        let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
        let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
        if hi < lo {
            return Err(InputError::Usage(format!("window {s:?} is reversed (hi < lo)")));
        }
        Ok((lo, hi))
    };
    let axes: Vec<(i64, i64)> = match raw.len() {
        0 => vec![(-10, 10); d],
        1 => vec![parse_one(&raw[0])?; d],
        n if n == d => raw.iter().map(|s| parse_one(s)).collect::<Result<_, _>>()?,
        n => {
            return Err(InputError::Usage(format!(
                "got {n} windows for a rank-{d} torus; give one or {d}"
            )))
        }
    };
    Ok(axes.into_iter().unzip())
}

fn quantize_cached(spec: &ManifoldSpec, use_cache: bool) -> Result<VirtualTModule, InputError> {
    let cache = RunCache::from_env();
    let key = RunCache::key(&spec_to_json(spec));
    if use_cache {
        if let Some(module) = cache.get(&key).and_then(|t| module_from_json(&t).ok()) {
            return Ok(module);
        }
    }
    let module = quantize::quantize(spec)?;
    if let Err(e) = cache.put(&key, &module_to_json(&module)) {
        eprintln!("warning: cache write failed: {e}");
    }
    Ok(module)
}

fn cmd_validate(path: &Path) -> Result<ExitCode, InputError> {
    let spec = specfile::parse_spec(&read(path)?)?;
    let report = validate_spec(&spec);
    if report.is_empty() {
        println!("valid: m = {}, d = {}, {} piece(s), {} hypersurface(s)", spec.m, spec.d, spec.pieces.len(), spec.z_components.len());
        Ok(ExitCode::SUCCESS)
    } else {
        print!("{report}");
        Ok(ExitCode::from(1))
    }
}

fn cmd_quantize(
    path: &Path,
    window: &[String],
    out: &[OutFormat],
    out_dir: &Path,
    use_cache: bool,
) -> Result<ExitCode, InputError> {
    let spec = load_valid(path)?;
    let (lo, hi) = parse_window(window, spec.d)?;
    let module = quantize_cached(&spec, use_cache)?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "spec".into());
    fs::create_dir_all(out_dir).map_err(|e| InputError::Io(out_dir.to_path_buf(), e))?;
    let want = |f: OutFormat| out.is_empty() || out.contains(&f);
    if want(OutFormat::Json) {
        let p = out_dir.join(format!("{stem}.module.json"));
        write(&p, &module_to_json(&module))?;
        println!("wrote {}", p.display());
    }
    if want(OutFormat::Csv) {
        let rows = module.table(&lo, &hi);
        let p = out_dir.join(format!("{stem}.csv"));
        write(&p, &render::csv(spec.d, &rows))?;
        println!("wrote {}", p.display());
        if let Some(svg) = render::svg(spec.d, &rows) {
            let p = out_dir.join(format!("{stem}.svg"));
            write(&p, &svg)?;
            println!("wrote {}", p.display());
        }
    }
    println!("module: {module}");
    Ok(ExitCode::SUCCESS)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_check(path: &Path, check: &CheckKind) -> Result<ExitCode, InputError> {
    let spec = load_valid(path)?;
    let ok = match check {
        CheckKind::Theorem1 if spec.m % 2 == 1 => match quantize::check_finiteness(&spec) {
            Ok(r) => {
                let sums: Vec<String> = r.window_sums.iter().map(|(rad, s, _)| format!("R={rad}:{s}")).collect();
                println!("{} finiteness: dim = {}, window sums {}", verdict(r.passed), r.total_dim, sums.join(" "));
                r.passed
            }
            Err(e @ QuantizeError::RaysSurvive(_)) => {
                println!("FAIL finiteness: {e}");
                false
            }
            Err(e) => return Err(e.into()),
        },
        CheckKind::Theorem1 => {
            let r = quantize::check_asymptotics(&spec)?;
            let p = &r.profile;
            let xi = p.xi.as_ref().map_or("none".to_string(), |x| format!("{x:?}"));
            println!(
                "{} asymptotics: xi={xi} c+={} c-={} lambda0={} off_axis_clean={}",
                verdict(r.passed),
                p.c_plus,
                p.c_minus,
                p.lambda0,
                p.off_axis_clean
            );
            if p.multi_direction {
                println!("note: rays in {} directions; per-axis data:", p.axes.len());
                for a in &p.axes {
                    println!("  xi={:?} c+={} c-={} lambda0={}", a.xi, a.c_plus, a.c_minus, a.lambda0);
                }
            }
            for f in &r.failures {
                println!("  {f}");
            }
            r.passed
        }
        CheckKind::Stages { proj } => {
            let rows: Vec<IntVec> = serde_json::from_str(proj)
                .map_err(|e| InputError::Usage(format!("--proj: {e}")))?;
            match quantize::stages_check(&spec, &rows) {
                Ok(r) => {
                    let w: Vec<String> = r
                        .windows
                        .iter()
                        .map(|(rad, b, n)| format!("R={rad}: {n} weights with |beta| <= {b}"))
                        .collect();
                    println!("{} stages: {}", verdict(r.passed), w.join("; "));
                    for (beta, got, want) in &r.mismatches {
                        println!("  at {beta:?}: restricted {got}, fiber sum {want}");
                    }
                    r.passed
                }
                Err(QuantizeError::Module(e @ ModuleError::NonProperRestriction(_))) => {
                    println!("FAIL stages: {e}");
                    false
                }
                Err(QuantizeError::Module(e @ ModuleError::NonFreeRestriction(_))) => {
                    println!("FAIL stages: {e}");
                    false
                }
                Err(e) => return Err(e.into()),
            }
        }
        CheckKind::Qr { npolytope } => {
            let poly = specfile::parse_polytope(spec.d, &read(npolytope)?)?;
            if !poly.is_bounded() {
                return Err(InputError::Usage("N polytope is not compact".into()));
            }
            let r = quantize::qr_check(&spec, &poly)?;
            println!("{} qr: lhs = {}, rhs = {}", verdict(r.passed), r.lhs, r.rhs);
            if r.mixed_signs {
                println!("note: contributions of both signs; no single global sign reproduces the sum");
            }
            r.passed
        }
    };
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn parse_coeffs(s: &str) -> Result<Vec<Rational>, InputError> {
    s.split(',')
        .map(|t| parse_rational(t).map_err(|e| InputError::Usage(format!("--coeffs: {e}"))))
        .collect()
}

fn cmd_example(name: &ExampleKind) -> Result<ExitCode, InputError> {
    let (spec, out) = match name {
        ExampleKind::S2 { m, coeffs, out } => {
            let c = coeffs.as_deref().map(parse_coeffs).transpose()?;
            (presets::s2(*m, c), out)
        }
        ExampleKind::S2xs2 { m, out } => (presets::s2xs2(*m), out),
        ExampleKind::Chain { pieces, m, out } => (presets::chain(*pieces, *m), out),
    };
    let spec = spec.map_err(InputError::Usage)?;
    let report = validate_spec(&spec);
    if !report.is_empty() {
        return Err(InputError::Invalid(report.to_string()));
    }
    let text = spec_to_json(&spec);
    match &out.output {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { path } => cmd_validate(path),
        Command::Quantize {
            path,
            window,
            out,
            out_dir,
            no_cache,
        } => cmd_quantize(path, window, out, out_dir, !no_cache),
        Command::Check { path, check } => cmd_check(path, check),
        Command::Example { name } => cmd_example(name),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
