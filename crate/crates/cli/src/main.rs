use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fockdual::duality::{anticommutator_check, grid, pin_check, verify_duality};
use fockdual::fock::MAX_MODE_LIMIT;
use fockdual::ph::{bell_square_check, nucleon_check, ph_check};
use fockdual::report::{check_map, LabelDto, ParamsDto, REPORT_VERSION};
use fockdual::{enumerate_frame_pairs, Check, Duality, DualityReport, Family, ModelParams};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Resource(_) | CliError::Io { .. } => 3,
        }
    }
}

impl From<fockdual::Error> for CliError {
    fn from(e: fockdual::Error) -> Self {
        match e {
            fockdual::Error::ModeLimit { .. } => CliError::Resource(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DualityArg {
    #[value(name = "sp-sp")]
    SpSp,
    #[value(name = "o-o")]
    OO,
    #[value(name = "O-o")]
    BigOO,
    #[value(name = "o-Pin")]
    OPin,
}

impl From<DualityArg> for Duality {
    fn from(d: DualityArg) -> Self {
        match d {
            DualityArg::SpSp => Duality::SpSp,
            DualityArg::OO => Duality::OO,
            DualityArg::BigOO => Duality::BigOO,
            DualityArg::OPin => Duality::OPin,
        }
    }
}

/// Exact checks of fermionic Howe dualities on small Fock spaces.
#[derive(Debug, Parser)]
#[command(name = "fockdual", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Write the report here instead of stdout (a directory for `suite`).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Largest number of modes d·k (at most 20).
    #[arg(long, global = true, env = "FOCK_MODE_LIMIT", default_value_t = 16)]
    mode_limit: usize,

    /// Refuse any inexact arithmetic. Every computation is exact, so this only documents intent.
    #[arg(long, global = true)]
    exact_only: bool,

    /// Record wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Oracle decomposition against the predicted frame pairs.
    Verify {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        duality: DualityArg,
    },
    /// List the predicted frame pairs with their dimensions.
    Enumerate {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        duality: DualityArg,
    },
    /// σ, ρ(−1), reflection commutation and the σφ sign formula.
    PinCheck {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
    /// Particle-hole and quasispin identities on an l-shell.
    PhCheck {
        #[arg(long)]
        l: usize,
        /// 2 for spin-½ fermions, 4 for nucleons.
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// The full acceptance grid, one JSON file per point plus index.json.
    Suite {
        /// Largest d·k on the duality grid.
        #[arg(long, default_value_t = 12)]
        max_modes: usize,
    },
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct EnumeratedPair {
    d_label: LabelDto,
    k_label: LabelDto,
    dim_d: u64,
    dim_k: u64,
    d_reducible: bool,
    k_reducible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pin_class: Option<String>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct EnumerateReport {
    version: u32,
    params: ParamsDto,
    duality: String,
    pairs: Vec<EnumeratedPair>,
    dimension_sum: u64,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct CheckReport {
    version: u32,
    command: String,
    params: BTreeMap<String, usize>,
    checks: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    details: BTreeMap<String, String>,
    all_pass: bool,
    elapsed_ms: Option<u64>,
}

impl CheckReport {
    fn new(command: &str, params: &[(&str, usize)], checks: &[Check]) -> Self {
        CheckReport {
            version: REPORT_VERSION,
            command: command.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            checks: check_map(checks),
            details: checks
                .iter()
                .filter_map(|c| c.detail.clone().map(|d| (c.name.clone(), d)))
                .collect(),
            all_pass: checks.iter().all(|c| c.pass),
            elapsed_ms: None,
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let args: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(s, "{} {}", self.command, args.join(" "));
        for (name, pass) in &self.checks {
            let _ = write!(s, "{name}: {}", if *pass { "pass" } else { "FAIL" });
            if let Some(d) = self.details.get(name) {
                let _ = write!(s, "  ({d})");
            }
            s.push('\n');
        }
        let _ = writeln!(s, "all pass: {}", self.all_pass);
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(s, "elapsed: {ms} ms");
        }
        s
    }
}

fn duality_text(r: &DualityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "verify d={} k={} family={:?} duality={}",
        r.params.d, r.params.k, r.params.family, r.duality
    );
    let _ = writeln!(s, "{:<28} {:<28} {:>8} {:>8} {:>5}  checks", "d-label", "k-label", "dimD", "dimK", "mult");
    for p in &r.pairs {
        let failing: Vec<&str> = p.checks.iter().filter(|(_, v)| !**v).map(|(k, _)| k.as_str()).collect();
        let _ = writeln!(
            s,
            "{:<28} {:<28} {:>8} {:>8} {:>5}  {}",
            label_text(&p.d_label, p.d_reducible),
            label_text(&p.k_label, p.k_reducible),
            p.dim_d,
            p.dim_k,
            p.oracle_multiplicity,
            if failing.is_empty() { "ok".to_string() } else { failing.join(",") }
        );
    }
    for (name, pass) in &r.checks {
        let _ = write!(s, "{name}: {}", if *pass { "pass" } else { "FAIL" });
        if let Some(d) = r.details.get(name) {
            let _ = write!(s, "  ({d})");
        }
        s.push('\n');
    }
    let _ = writeln!(s, "dimension sum: {}", r.dimension_sum);
    let _ = writeln!(s, "all pass: {}", r.all_pass);
    if let Some(ms) = r.elapsed_ms {
        let _ = writeln!(s, "elapsed: {ms} ms");
    }
    s
}

fn label_text(l: &LabelDto, reducible: bool) -> String {
    format!("{}[{}]{}", l.family, l.rows.join(","), if reducible { "±" } else { "" })
}

fn enumerate_text(r: &EnumerateReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "enumerate d={} k={} duality={}", r.params.d, r.params.k, r.duality);
    for p in &r.pairs {
        let _ = writeln!(
            s,
            "{:<28} {:<28} {:>8} {:>8}",
            label_text(&p.d_label, p.d_reducible),
            label_text(&p.k_label, p.k_reducible),
            p.dim_d,
            p.dim_k
        );
    }
    let _ = writeln!(s, "dimension sum: {}", r.dimension_sum);
    s
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn write_out(path: Option<&Path>, body: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

struct Ctx {
    format: Format,
    output: Option<PathBuf>,
    mode_limit: usize,
    timing: bool,
}

impl Ctx {
    fn params(&self, d: usize, k: usize, family: Family) -> CliResult<ModelParams> {
        Ok(ModelParams::with_limit(d, k, family, self.mode_limit)?)
    }

    fn elapsed(&self, t: Instant) -> Option<u64> {
        self.timing.then(|| t.elapsed().as_millis() as u64)
    }
}

fn enumerate_report(p: &ModelParams, duality: Duality) -> CliResult<EnumerateReport> {
    let pairs = enumerate_frame_pairs(p, duality)?;
    Ok(EnumerateReport {
        version: REPORT_VERSION,
        params: p.into(),
        duality: duality.name().to_string(),
        dimension_sum: pairs.iter().map(|fp| fockdual::PairReport::new(fp, 0, BTreeMap::new())).map(|p| p.dim_d * p.dim_k).sum(),
        pairs: pairs
            .iter()
            .map(|fp| {
                let pr = fockdual::PairReport::new(fp, 0, BTreeMap::new());
                EnumeratedPair {
                    d_label: pr.d_label,
                    k_label: pr.k_label,
                    dim_d: pr.dim_d,
                    dim_k: pr.dim_k,
                    d_reducible: fp.d_reducible,
                    k_reducible: fp.k_reducible,
                    pin_class: pr.pin_class,
                }
            })
            .collect(),
    })
}

fn ph_checks(l: usize, k: usize, limit: usize) -> CliResult<Vec<Check>> {
    let modes = k * (2 * l + 1);
    if modes > limit.min(MAX_MODE_LIMIT) {
        return Err(CliError::Resource(format!("{modes} modes exceed the mode limit {limit}")));
    }
    match k {
        2 => {
            let mut checks = ph_check(l)?;
            for j2 in [1, 3, 5] {
                checks.push(bell_square_check(j2)?);
            }
            Ok(checks)
        }
        4 => Ok(nucleon_check(l)?),
        _ => Err(CliError::Usage("ph-check needs --k 2 or --k 4".into())),
    }
}

fn pin_checks(p: &ModelParams) -> CliResult<Vec<Check>> {
    if p.family() != Family::Orthogonal {
        return Err(CliError::Usage("pin-check needs the orthogonal family".into()));
    }
    let mut checks = pin_check(p)?;
    checks.push(anticommutator_check(p)?);
    Ok(checks)
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct IndexEntry {
    file: String,
    all_pass: bool,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct SuiteIndex {
    version: u32,
    max_modes: usize,
    reports: Vec<IndexEntry>,
    all_pass: bool,
}

fn run_suite(ctx: &Ctx, max_modes: usize) -> CliResult<bool> {
    let Some(dir) = ctx.output.as_deref() else {
        return Err(CliError::Usage("suite needs --output DIR".into()));
    };
    if max_modes > ctx.mode_limit.min(MAX_MODE_LIMIT) {
        return Err(CliError::Resource(format!(
            "--max-modes {max_modes} exceeds the mode limit {}",
            ctx.mode_limit
        )));
    }
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut entries = Vec::new();
    let mut emit = |name: String, body: String, pass: bool| -> CliResult<()> {
        write_out(Some(&dir.join(&name)), &body)?;
        entries.push(IndexEntry { file: name, all_pass: pass });
        Ok(())
    };

    let mut points: Vec<(usize, usize)> = grid(max_modes).into_iter().map(|(d, k, _)| (d, k)).collect();
    points.dedup();
    for &(d, k) in &points {
        for family in [Family::Orthogonal, Family::Symplectic] {
            if family == Family::Symplectic && d % 2 == 1 {
                continue;
            }
            let t = Instant::now();
            let p = ctx.params(d, k, family)?;
            let mut r = CheckReport::new("anticommutators", &[("d", d), ("k", k)], &[anticommutator_check(&p)?]);
            r.elapsed_ms = ctx.elapsed(t);
            let fam = if family == Family::Orthogonal { "o" } else { "sp" };
            emit(format!("anticommutators_d{d}_k{k}_{fam}.json"), to_json(&r), r.all_pass)?;
        }
    }
    for (d, k, duality) in grid(max_modes) {
        let t = Instant::now();
        let mut r = verify_duality(&ctx.params(d, k, duality.family())?, duality)?;
        r.elapsed_ms = ctx.elapsed(t);
        emit(format!("verify_d{d}_k{k}_{}.json", duality.name()), to_json(&r), r.all_pass)?;
    }
    for d in 1..=5 {
        for k in 1..=2 {
            let t = Instant::now();
            let mut r = CheckReport::new("pin-check", &[("d", d), ("k", k)], &pin_checks(&ctx.params(d, k, Family::Orthogonal)?)?);
            r.elapsed_ms = ctx.elapsed(t);
            emit(format!("pin_d{d}_k{k}.json"), to_json(&r), r.all_pass)?;
        }
    }
    for (l, k) in [(1, 2), (2, 2), (1, 4)] {
        let t = Instant::now();
        let mut r = CheckReport::new("ph-check", &[("k", k), ("l", l)], &ph_checks(l, k, ctx.mode_limit)?);
        r.elapsed_ms = ctx.elapsed(t);
        emit(format!("ph_l{l}_k{k}.json"), to_json(&r), r.all_pass)?;
    }

    let all = entries.iter().all(|e| e.all_pass);
    let index = SuiteIndex {
        version: REPORT_VERSION,
        max_modes,
        reports: entries,
        all_pass: all,
    };
    write_out(Some(&dir.join("index.json")), &to_json(&index))?;
    if ctx.format == Format::Text {
        let failing: Vec<&str> = index.reports.iter().filter(|e| !e.all_pass).map(|e| e.file.as_str()).collect();
        println!("{} reports written to {}", index.reports.len(), dir.display());
        for f in &failing {
            println!("FAIL {f}");
        }
        println!("all pass: {all}");
    }
    Ok(all)
}

fn run(cli: Cli) -> CliResult<bool> {
    if cli.mode_limit > MAX_MODE_LIMIT {
        return Err(CliError::Usage(format!("--mode-limit must be at most {MAX_MODE_LIMIT}")));
    }
    let ctx = Ctx {
        format: cli.format,
        output: cli.output,
        mode_limit: cli.mode_limit,
        timing: cli.timing,
    };
    let out = ctx.output.as_deref();
    let t = Instant::now();
    match cli.command {
        Command::Verify { d, k, duality } => {
            let duality: Duality = duality.into();
            let p = ctx.params(d, k, duality.family())?;
            let mut r = verify_duality(&p, duality)?;
            r.elapsed_ms = ctx.elapsed(t);
            let body = match ctx.format {
                Format::Json => to_json(&r),
                Format::Text => duality_text(&r),
            };
            write_out(out, &body)?;
            Ok(r.all_pass)
        }
        Command::Enumerate { d, k, duality } => {
            let duality: Duality = duality.into();
            let r = enumerate_report(&ctx.params(d, k, duality.family())?, duality)?;
            let body = match ctx.format {
                Format::Json => to_json(&r),
                Format::Text => enumerate_text(&r),
            };
            write_out(out, &body)?;
            Ok(true)
        }
        Command::PinCheck { d, k } => {
            let checks = pin_checks(&ctx.params(d, k, Family::Orthogonal)?)?;
            let mut r = CheckReport::new("pin-check", &[("d", d), ("k", k)], &checks);
            r.elapsed_ms = ctx.elapsed(t);
            let body = match ctx.format {
                Format::Json => to_json(&r),
                Format::Text => r.text(),
            };
            write_out(out, &body)?;
            Ok(r.all_pass)
        }
        Command::PhCheck { l, k } => {
            let checks = ph_checks(l, k, ctx.mode_limit)?;
            let mut r = CheckReport::new("ph-check", &[("k", k), ("l", l)], &checks);
            r.elapsed_ms = ctx.elapsed(t);
            let body = match ctx.format {
                Format::Json => to_json(&r),
                Format::Text => r.text(),
            };
            write_out(out, &body)?;
            Ok(r.all_pass)
        }
        Command::Suite { max_modes } => run_suite(&ctx, max_modes),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CliResult<bool> {
        let mut full = vec!["fockdual"];
        full.extend_from_slice(args);
        run(Cli::try_parse_from(full).expect("valid arguments"))
    }

    fn json_to(args: &[&str]) -> (CliResult<bool>, String) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.json");
        let mut full = args.to_vec();
        let p = path.to_str().unwrap().to_string();
        full.extend_from_slice(&["--format", "json", "--output", &p]);
        let r = run_args(&full);
        (r, std::fs::read_to_string(&path).unwrap_or_default())
    }

    #[test]
    fn verify_report_round_trips() {
        let (r, body) = json_to(&["verify", "--d", "4", "--k", "1", "--duality", "sp-sp"]);
        assert!(r.unwrap());
        let parsed: DualityReport = serde_json::from_str(&body).unwrap();
        assert_eq!(parsed.dimension_sum, 16);
        assert_eq!(parsed.elapsed_ms, None);
        assert_eq!(to_json(&parsed), body);
        let (_, again) = json_to(&["verify", "--d", "4", "--k", "1", "--duality", "sp-sp"]);
        assert_eq!(body, again);
    }

    #[test]
    fn timing_is_opt_in() {
        let (r, body) = json_to(&["verify", "--d", "2", "--k", "1", "--duality", "o-o", "--timing"]);
        assert!(r.unwrap());
        let parsed: DualityReport = serde_json::from_str(&body).unwrap();
        assert!(parsed.elapsed_ms.is_some());
    }

    #[test]
    fn enumerate_dims() {
        let (r, body) = json_to(&["enumerate", "--d", "3", "--k", "1", "--duality", "o-o"]);
        assert!(r.unwrap());
        let v: serde_json::Value = serde_json::from_str(&body).unwrap();
        let dims: Vec<(u64, u64)> = v["pairs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| (p["dimD"].as_u64().unwrap(), p["dimK"].as_u64().unwrap()))
            .collect();
        assert_eq!(dims, vec![(1, 2), (3, 2)]);
    }

    #[test]
    fn ph_check_reports_every_identity() {
        let (r, body) = json_to(&["ph-check", "--l", "1"]);
        let v: serde_json::Value = serde_json::from_str(&body).unwrap();
        let checks = v["checks"].as_object().unwrap();
        assert!(checks.contains_key("C3_equals_C2"));
        assert_eq!(checks["C2_commutes_L_and_S"], serde_json::Value::Bool(true));
        // the exit status follows the report
        assert_eq!(r.unwrap(), v["allPass"].as_bool().unwrap());
    }

    #[test]
    fn pin_check_passes() {
        let (r, _) = json_to(&["pin-check", "--d", "3", "--k", "2"]);
        assert!(r.unwrap());
    }

    #[test]
    fn error_exit_codes() {
        let e = run_args(&["verify", "--d", "5", "--k", "5", "--duality", "o-o"]).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let e = run_args(&["verify", "--d", "3", "--k", "1", "--duality", "sp-sp"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run_args(&["verify", "--d", "2", "--k", "1", "--duality", "o-o", "--mode-limit", "21"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run_args(&["suite"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run_args(&["ph-check", "--l", "1", "--k", "3"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(Cli::try_parse_from(["fockdual", "verify", "--d", "2"]).is_err());
        assert!(Cli::try_parse_from(["fockdual", "verify", "--d", "2", "--k", "1", "--duality", "so-so"]).is_err());
    }

    #[test]
    fn unwritable_output_is_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("missing").join("out.json");
        let e = run_args(&["enumerate", "--d", "2", "--k", "1", "--duality", "o-o", "--output", bad.to_str().unwrap()]).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn small_suite_writes_index() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("suite");
        let _ = run_args(&["suite", "--max-modes", "2", "--format", "json", "--output", out.to_str().unwrap()]).unwrap();
        let index: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("index.json")).unwrap()).unwrap();
        let reports = index["reports"].as_array().unwrap();
        assert!(reports.iter().any(|r| r["file"] == "verify_d2_k1_sp-sp.json"));
        for r in reports {
            assert!(out.join(r["file"].as_str().unwrap()).exists());
        }
    }
}
