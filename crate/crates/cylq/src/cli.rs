//! Command-line driver: config resolution, experiment execution, and
//! serialization. Exit codes: 0 success, 1 check failure, 2 config error,
//! 3 I/O error.

use crate::core::{AngleGrid, ClassicalObservable, FourierState, OperatorMatrix, PhasePoint};
use crate::fiducials::{make_fiducial, FiducialKind};
use crate::fourier::CircleSamples;
use crate::gabor::{gabor_reconstruct, gabor_transform, GaborTable};
use crate::portrait::{portrait, PortraitTable};
use crate::quantize::{
    quantize_angle_only, quantize_momentum_only, weight_from_state, QuantizationContext,
};
use crate::verify::run_report;
use crate::wigner::{wigner_as_parity_expectation, wigner_table};
use crate::core::Weight;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "cylq", version, about = "Covariant integral quantization on the discrete cylinder")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gabor analysis/synthesis of a seeded random state; prints isometry and
    /// reconstruction defects
    Transform(CommonOpts),
    /// Quantize a named observable and write the operator matrix as JSON
    Quantize(CommonOpts),
    /// Wigner table of a state; prints normalization and route agreement
    Wigner(CommonOpts),
    /// Semi-classical portrait of a named observable
    Portrait(CommonOpts),
    /// Run the verification suite and emit a JSON report
    Verify(CommonOpts),
}

#[derive(Debug, Args, Default, Clone)]
pub struct CommonOpts {
    /// key=value config file; explicit flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// basis truncation |n| <= n_max
    #[arg(long)]
    pub n_max: Option<usize>,
    /// momentum truncation |m| <= m_max
    #[arg(long)]
    pub m_max: Option<usize>,
    /// number of angle grid nodes
    #[arg(long)]
    pub grid_size: Option<usize>,
    /// RNG seed for random states
    #[arg(long)]
    pub seed: Option<u64>,
    /// fiducial spec: constant | basis:N | gaussian:SIGMA | dirichlet:N |
    /// fejer:N | vonmises:LAMBDA | poisson:T
    #[arg(long)]
    pub fiducial: Option<String>,
    /// weight spec: parity | coherent
    #[arg(long)]
    pub weight: Option<String>,
    /// observable spec: m | m^2 | cos | sin
    #[arg(long)]
    pub observable: Option<String>,
    /// output file (CSV for tables, JSON for operators and reports)
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// output format for tables: csv | json
    #[arg(long)]
    pub format: Option<String>,
    /// multiply every verification tolerance by this factor
    #[arg(long)]
    pub tol_scale: Option<f64>,
}

/// Fully resolved run configuration (flags over config file over defaults).
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n_max: usize,
    pub m_max: usize,
    pub grid_size: usize,
    pub seed: u64,
    pub fiducial: FiducialKind,
    pub weight: String,
    pub observable: String,
    pub output: Option<PathBuf>,
    pub format: String,
    pub tol_scale: f64,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        message: msg.into(),
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<crate::core::Error> for CliError {
    fn from(e: crate::core::Error) -> Self {
        config_err(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: 3,
            message: e.to_string(),
        }
    }
}

pub fn parse_fiducial(spec: &str) -> Result<FiducialKind, CliError> {
    let (name, arg) = match spec.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (spec, None),
    };
    let need = |what: &str| config_err(format!("fiducial '{name}' needs a parameter: {name}:{what}"));
    let fnum = |a: Option<&str>, what: &str| -> Result<f64, CliError> {
        a.ok_or_else(|| need(what))?
            .parse::<f64>()
            .map_err(|_| config_err(format!("bad numeric parameter in fiducial spec '{spec}'")))
    };
    let inum = |a: Option<&str>, what: &str| -> Result<i64, CliError> {
        a.ok_or_else(|| need(what))?
            .parse::<i64>()
            .map_err(|_| config_err(format!("bad integer parameter in fiducial spec '{spec}'")))
    };
    let kind = match name.to_ascii_lowercase().as_str() {
        "constant" => FiducialKind::Constant,
        "basis" => FiducialKind::Basis(inum(arg, "N")?),
        "gaussian" => FiducialKind::PeriodizedGaussian(fnum(arg, "SIGMA")?),
        "dirichlet" => FiducialKind::Dirichlet(inum(arg, "N")? as usize),
        "fejer" => FiducialKind::Fejer(inum(arg, "N")? as usize),
        "vonmises" => FiducialKind::VonMises(fnum(arg, "LAMBDA")?),
        "poisson" => FiducialKind::Poisson(fnum(arg, "T")?),
        other => return Err(config_err(format!("unknown fiducial family '{other}'"))),
    };
    kind.validate().map_err(|e| config_err(e.to_string()))?;
    Ok(kind)
}

fn read_config_file(path: &Path) -> Result<HashMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)?;
    let mut map = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| config_err(format!("config line {}: expected key=value", i + 1)))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

impl RunConfig {
    pub fn resolve(opts: &CommonOpts) -> Result<RunConfig, CliError> {
        let file = match &opts.config {
            Some(p) => read_config_file(p)?,
            None => HashMap::new(),
        };
        let get = |key: &str| file.get(key).cloned();
        let parse_num = |key: &str, s: String| -> Result<u64, CliError> {
            s.parse::<u64>()
                .map_err(|_| config_err(format!("config key '{key}': bad integer '{s}'")))
        };
        let n_max = match (opts.n_max, get("n_max")) {
            (Some(v), _) => v,
            (None, Some(s)) => parse_num("n_max", s)? as usize,
            _ => 16,
        };
        let m_max = match (opts.m_max, get("m_max")) {
            (Some(v), _) => v,
            (None, Some(s)) => parse_num("m_max", s)? as usize,
            _ => 48,
        };
        let grid_size = match (opts.grid_size, get("grid_size")) {
            (Some(v), _) => v,
            (None, Some(s)) => parse_num("grid_size", s)? as usize,
            _ => AngleGrid::min_size(n_max, m_max).next_power_of_two(),
        };
        let seed = match (opts.seed, get("seed")) {
            (Some(v), _) => v,
            (None, Some(s)) => parse_num("seed", s)?,
            _ => 1,
        };
        let fid_spec = opts
            .fiducial
            .clone()
            .or_else(|| get("fiducial"))
            .unwrap_or_else(|| "vonmises:2.0".to_string());
        let weight = opts
            .weight
            .clone()
            .or_else(|| get("weight"))
            .unwrap_or_else(|| "parity".to_string());
        if weight != "parity" && weight != "coherent" {
            return Err(config_err(format!(
                "unknown weight '{weight}' (expected parity | coherent)"
            )));
        }
        let observable = opts
            .observable
            .clone()
            .or_else(|| get("observable"))
            .unwrap_or_else(|| "m".to_string());
        let format = opts
            .format
            .clone()
            .or_else(|| get("format"))
            .unwrap_or_else(|| "csv".to_string());
        if format != "csv" && format != "json" {
            return Err(config_err(format!(
                "unknown format '{format}' (expected csv | json)"
            )));
        }
        let tol_scale = match (opts.tol_scale, get("tol_scale")) {
            (Some(v), _) => v,
            (None, Some(s)) => s
                .parse::<f64>()
                .map_err(|_| config_err(format!("config key 'tol_scale': bad number '{s}'")))?,
            _ => 1.0,
        };
        let output = opts.output.clone().or_else(|| get("output").map(PathBuf::from));
        let cfg = RunConfig {
            n_max,
            m_max,
            grid_size,
            seed,
            fiducial: parse_fiducial(&fid_spec)?,
            weight,
            observable,
            output,
            format,
            tol_scale,
        };
        // grid rule, rejected at resolution time with the computed minimum
        let min = AngleGrid::min_size(cfg.n_max, cfg.m_max);
        if cfg.grid_size < min {
            return Err(config_err(format!(
                "grid_size {} is below the minimum {} required by n_max={} and m_max={} \
                 (need at least 2*(2*n_max + m_max) + 1 nodes)",
                cfg.grid_size, min, cfg.n_max, cfg.m_max
            )));
        }
        Ok(cfg)
    }
}

// --- serialization -----------------------------------------------------------

/// Format a double with 17 significant digits (bit-faithful round trip).
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn gabor_table_to_csv(t: &GaborTable, seed: u64) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# seed={seed}");
    let _ = writeln!(s, "m,theta,re,im");
    let mm = t.m_max as i64;
    for m in -mm..=mm {
        for j in 0..t.grid.size() {
            let v = t.get(m, j);
            let _ = writeln!(
                s,
                "{m},{},{},{}",
                fmt_f64(t.grid.theta(j)),
                fmt_f64(v.re),
                fmt_f64(v.im)
            );
        }
    }
    s
}

pub fn portrait_table_to_csv(t: &PortraitTable, seed: u64) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# seed={seed}");
    let _ = writeln!(s, "m,theta,re,im");
    let mm = t.m_max as i64;
    for m in -mm..=mm {
        for j in 0..t.grid.size() {
            let v = t.get(m, j);
            let _ = writeln!(
                s,
                "{m},{},{},{}",
                fmt_f64(t.grid.theta(j)),
                fmt_f64(v.re),
                fmt_f64(v.im)
            );
        }
    }
    s
}

pub fn wigner_table_to_csv(t: &crate::wigner::WignerTable, seed: u64) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# seed={seed}");
    let _ = writeln!(s, "m,theta,w");
    let mm = t.m_max as i64;
    for m in -mm..=mm {
        for j in 0..t.grid.size() {
            let _ = writeln!(
                s,
                "{m},{},{}",
                fmt_f64(t.grid.theta(j)),
                fmt_f64(t.get(m, j))
            );
        }
    }
    s
}

/// Parsed CSV row of a complex-valued cylinder table.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub m: i64,
    pub theta: f64,
    pub values: Vec<f64>,
}

/// Read back any of the CSV formats above: `# key=value` headers, one column
/// header line, then m,theta,value... rows.
pub fn read_table_csv(text: &str) -> Result<(HashMap<String, String>, Vec<CsvRow>), CliError> {
    let mut meta = HashMap::new();
    let mut rows = Vec::new();
    let mut seen_header = false;
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.trim().split_once('=') {
                meta.insert(k.trim().to_string(), v.trim().to_string());
            }
            continue;
        }
        if !seen_header {
            seen_header = true; // column-name line
            continue;
        }
        let mut parts = line.split(',');
        let m = parts
            .next()
            .and_then(|v| v.parse::<i64>().ok())
            .ok_or_else(|| config_err(format!("bad CSV row '{line}'")))?;
        let nums: Result<Vec<f64>, CliError> = parts
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| config_err(format!("bad CSV number '{v}'")))
            })
            .collect();
        let mut nums = nums?;
        if nums.is_empty() {
            return Err(config_err(format!("bad CSV row '{line}'")));
        }
        let theta = nums.remove(0);
        rows.push(CsvRow {
            m,
            theta,
            values: nums,
        });
    }
    Ok((meta, rows))
}

#[derive(Debug, serde::Serialize, serde::Deserialize)]
pub struct OperatorEnvelope {
    pub n_max: usize,
    /// row-major over k, l in [-n_max, n_max]
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

pub fn operator_to_json(a: &OperatorMatrix) -> String {
    let env = OperatorEnvelope {
        n_max: a.n_max(),
        re: a.entries().iter().map(|v| v.re).collect(),
        im: a.entries().iter().map(|v| v.im).collect(),
    };
    serde_json::to_string_pretty(&env).expect("operator envelope serializes")
}

pub fn operator_from_json(text: &str) -> Result<OperatorMatrix, CliError> {
    let env: OperatorEnvelope =
        serde_json::from_str(text).map_err(|e| config_err(format!("bad operator JSON: {e}")))?;
    let side = 2 * env.n_max + 1;
    if env.re.len() != side * side || env.im.len() != side * side {
        return Err(config_err("operator JSON has wrong entry count"));
    }
    let entries = env
        .re
        .iter()
        .zip(&env.im)
        .map(|(&r, &i)| Complex64::new(r, i))
        .collect();
    OperatorMatrix::from_entries(env.n_max, entries).map_err(|e| config_err(e.to_string()))
}

fn emit(cfg: &RunConfig, content: &str) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => std::fs::write(path, content).map_err(CliError::from),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

// --- commands ----------------------------------------------------------------

fn random_state(n_max: usize, seed: u64) -> FourierState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<Complex64> = (0..2 * n_max + 1)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    FourierState::new_normalized(n_max, coeffs).expect("random coefficients are finite")
}

fn cmd_transform(cfg: &RunConfig) -> Result<u8, CliError> {
    let grid = AngleGrid::new(cfg.grid_size)?;
    let phi = make_fiducial(cfg.fiducial, cfg.n_max)?;
    let psi = random_state(cfg.n_max, cfg.seed);
    let table = gabor_transform(&phi, &psi, cfg.m_max, grid);
    let iso = (table.norm_sqr() - 1.0).abs();
    let rec = gabor_reconstruct(&phi, &table)?;
    let rec_err = rec
        .indices()
        .map(|n| (rec.get(n) - psi.get(n)).norm())
        .fold(0.0f64, f64::max);
    eprintln!("isometry defect:      {iso:.3e}");
    eprintln!("reconstruction error: {rec_err:.3e}");
    let content = match cfg.format.as_str() {
        "json" => {
            let rows: Vec<Vec<[f64; 2]>> = table
                .values
                .iter()
                .map(|row| row.iter().map(|v| [v.re, v.im]).collect())
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({
                "seed": cfg.seed,
                "m_max": table.m_max,
                "grid_size": grid.size(),
                "values": rows,
            }))
            .expect("table serializes")
        }
        _ => gabor_table_to_csv(&table, cfg.seed),
    };
    emit(cfg, &content)?;
    Ok(0)
}

fn build_weight(cfg: &RunConfig) -> Result<Weight, CliError> {
    match cfg.weight.as_str() {
        "parity" => Ok(Weight::parity(cfg.m_max)),
        _ => {
            let phi = make_fiducial(cfg.fiducial, cfg.n_max.min(cfg.m_max / 2).max(1))?;
            Ok(weight_from_state(&phi)?)
        }
    }
}

fn cmd_quantize(cfg: &RunConfig) -> Result<u8, CliError> {
    let grid = AngleGrid::new(cfg.grid_size)?;
    let weight = build_weight(cfg)?;
    let min = AngleGrid::min_size(cfg.n_max, weight.m_max);
    if grid.size() < min {
        return Err(config_err(format!(
            "grid_size {} is below the minimum {} for this weight (m_max {})",
            grid.size(),
            min,
            weight.m_max
        )));
    }
    let ctx = QuantizationContext::new(weight, cfg.n_max, grid)?;
    let a = match cfg.observable.as_str() {
        "m" => quantize_momentum_only(
            |m| Complex64::new(m as f64, 0.0),
            ctx.n_max + ctx.weight.m_max,
            &ctx,
        )?,
        "m^2" | "m2" => quantize_momentum_only(
            |m| Complex64::new((m * m) as f64, 0.0),
            ctx.n_max + ctx.weight.m_max,
            &ctx,
        )?,
        "cos" => {
            let s = CircleSamples::from_fn(grid, |t| Complex64::new(t.cos(), 0.0));
            quantize_angle_only(&s, &ctx)?
        }
        "sin" => {
            let s = CircleSamples::from_fn(grid, |t| Complex64::new(t.sin(), 0.0));
            quantize_angle_only(&s, &ctx)?
        }
        other => {
            return Err(config_err(format!(
                "unknown observable '{other}' (expected m | m^2 | cos | sin)"
            )))
        }
    };
    eprintln!("hermitian defect: {:.3e}", a.hermitian_defect());
    eprintln!("trace:            {:.6e}", a.trace().re);
    emit(cfg, &operator_to_json(&a))?;
    Ok(0)
}

fn cmd_wigner(cfg: &RunConfig) -> Result<u8, CliError> {
    let grid = AngleGrid::new(cfg.grid_size)?;
    let psi = make_fiducial(cfg.fiducial, cfg.n_max)?;
    let table = wigner_table(&psi, cfg.m_max.min(2 * cfg.n_max), grid);
    let norm = table.normalization();
    // route agreement against the transported-parity expectation at a few nodes
    let mut route: f64 = 0.0;
    for &(m, frac) in &[(0i64, 0.13), (1, 0.4), (-2, 0.77)] {
        let j = (frac * grid.size() as f64) as usize;
        let p = PhasePoint::new(m, grid.theta(j));
        route = route.max((table.get(m, j) - wigner_as_parity_expectation(&psi, p)).abs());
    }
    eprintln!("normalization:        {norm:.12}");
    eprintln!("route agreement:      {route:.3e}");
    emit(cfg, &wigner_table_to_csv(&table, cfg.seed))?;
    Ok(0)
}

fn cmd_portrait(cfg: &RunConfig) -> Result<u8, CliError> {
    let grid = AngleGrid::new(cfg.grid_size)?;
    let weight = build_weight(cfg)?;
    let out_m = cfg.n_max.min(8);
    let f = match cfg.observable.as_str() {
        "m" => {
            let gm = out_m + weight.m_max;
            let g: Vec<Complex64> = (-(gm as i64)..=gm as i64)
                .map(|m| Complex64::new(m as f64, 0.0))
                .collect();
            ClassicalObservable::momentum_only(gm, grid, g)?
        }
        "m^2" | "m2" => {
            let gm = out_m + weight.m_max;
            let g: Vec<Complex64> = (-(gm as i64)..=gm as i64)
                .map(|m| Complex64::new((m * m) as f64, 0.0))
                .collect();
            ClassicalObservable::momentum_only(gm, grid, g)?
        }
        "cos" => ClassicalObservable::angle_only(
            grid,
            grid.points().map(|t| Complex64::new(t.cos(), 0.0)).collect(),
        )?,
        "sin" => ClassicalObservable::angle_only(
            grid,
            grid.points().map(|t| Complex64::new(t.sin(), 0.0)).collect(),
        )?,
        other => {
            return Err(config_err(format!(
                "unknown observable '{other}' (expected m | m^2 | cos | sin)"
            )))
        }
    };
    let t = portrait(&f, &weight, out_m, grid)?;
    eprintln!("status: {:?}", t.status);
    eprintln!("max imaginary residue: {:.3e}", t.max_imag());
    emit(cfg, &portrait_table_to_csv(&t, cfg.seed))?;
    Ok(0)
}

fn cmd_verify(cfg: &RunConfig) -> Result<u8, CliError> {
    let report = run_report(cfg.tol_scale)?;
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    emit(cfg, &text)?;
    for c in &report.checks {
        eprintln!(
            "{} {}: {:.3e} (tol {:.1e})",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.value,
            c.tolerance
        );
    }
    Ok(if report.all_pass { 0 } else { 1 })
}

type SubcommandRunner = fn(&RunConfig) -> Result<u8, CliError>;

/// Parse argv, run, and return the process exit code.
pub fn run() -> u8 {
    let cli = Cli::parse();
    let (opts, runner): (&CommonOpts, SubcommandRunner) = match &cli.command {
        Command::Transform(o) => (o, cmd_transform),
        Command::Quantize(o) => (o, cmd_quantize),
        Command::Wigner(o) => (o, cmd_wigner),
        Command::Portrait(o) => (o, cmd_portrait),
        Command::Verify(o) => (o, cmd_verify),
    };
    let cfg = match RunConfig::resolve(opts) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return e.code;
        }
    };
    match runner(&cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fiducial_specs_parse() {
        assert_eq!(parse_fiducial("constant").unwrap(), FiducialKind::Constant);
        assert_eq!(parse_fiducial("basis:2").unwrap(), FiducialKind::Basis(2));
        assert!(matches!(
            parse_fiducial("vonmises:1.5").unwrap(),
            FiducialKind::VonMises(l) if (l - 1.5).abs() < 1e-15
        ));
        assert!(parse_fiducial("vonmises").is_err());
        assert!(parse_fiducial("nope:1").is_err());
        assert!(parse_fiducial("gaussian:-1").is_err());
    }

    #[test]
    fn grid_rule_names_minimum() {
        let opts = CommonOpts {
            n_max: Some(16),
            m_max: Some(48),
            grid_size: Some(10),
            ..Default::default()
        };
        let err = RunConfig::resolve(&opts).unwrap_err();
        assert_eq!(err.code, 2);
        assert!(err.message.contains("161"), "{}", err.message);
    }

    #[test]
    fn operator_json_round_trip() {
        let mut a = OperatorMatrix::zero(2);
        a.set(0, 1, Complex64::new(0.25, -1.5));
        a.set(-2, 2, Complex64::new(1.0 / 3.0, 7e-17));
        let text = operator_to_json(&a);
        let b = operator_from_json(&text).unwrap();
        assert_eq!(a.entries(), b.entries());
    }

    #[test]
    fn csv_round_trip_is_lossless() {
        let grid = AngleGrid::new(8).unwrap();
        let psi = random_state(2, 9);
        let table = gabor_transform(&psi, &psi, 3, grid);
        let text = gabor_table_to_csv(&table, 9);
        let (meta, rows) = read_table_csv(&text).unwrap();
        assert_eq!(meta["seed"], "9");
        assert_eq!(rows.len(), 7 * 8);
        for (i, row) in rows.iter().enumerate() {
            let m = (i / 8) as i64 - 3;
            let j = i % 8;
            assert_eq!(row.m, m);
            assert_eq!(row.theta, grid.theta(j));
            assert_eq!(row.values[0], table.get(m, j).re);
            assert_eq!(row.values[1], table.get(m, j).im);
        }
    }

    #[test]
    fn config_file_fills_unset_flags() {
        let dir = std::env::temp_dir().join("cylq-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cfg.txt");
        std::fs::write(&path, "n_max = 4\nm_max = 6\nseed = 42\n# comment\nweight = parity\n")
            .unwrap();
        let opts = CommonOpts {
            config: Some(path),
            m_max: Some(8), // flag beats file
            ..Default::default()
        };
        let cfg = RunConfig::resolve(&opts).unwrap();
        assert_eq!(cfg.n_max, 4);
        assert_eq!(cfg.m_max, 8);
        assert_eq!(cfg.seed, 42);
        assert!(cfg.grid_size >= AngleGrid::min_size(4, 8));
    }
}
