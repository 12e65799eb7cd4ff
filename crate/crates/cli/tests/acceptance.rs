//! Acceptance criteria, one line per criterion. Exits non-zero if any fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fockdual::duality::{anticommutator_check, commutant_check, grid, pin_check, verify_duality};
use fockdual::ph::{bell_square_check, nucleon_check, ph_check};
use fockdual::{Check, Duality, Family, ModelParams};

const MAX_MODES: usize = 12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn grid_params() -> Vec<ModelParams> {
    let mut out = Vec::new();
    for d in 1..=MAX_MODES {
        for k in 1..=MAX_MODES / d {
            out.push(ModelParams::new(d, k, Family::Orthogonal).unwrap());
            if d % 2 == 0 {
                out.push(ModelParams::new(d, k, Family::Symplectic).unwrap());
            }
        }
    }
    out
}

fn within(t: Instant, limit: Duration) -> (bool, String) {
    let e = t.elapsed();
    (e < limit, format!("{:.2}s of {}s", e.as_secs_f64(), limit.as_secs()))
}

fn failing(checks: &[Check]) -> Vec<String> {
    checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| match &c.detail {
            Some(d) => format!("{} ({d})", c.name),
            None => c.name.clone(),
        })
        .collect()
}

fn anticommutators() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let points = grid_params();
    for p in &points {
        if !anticommutator_check(p).unwrap().pass {
            bad.push(format!("d={} k={}", p.d(), p.k()));
        }
    }
    let (fast, time) = within(t, Duration::from_secs(10));
    outcome(
        bad.is_empty() && fast,
        format!("{} grid points, {} failing, {time}", points.len(), bad.len()),
    )
}

fn commutant() -> Outcome {
    let points = grid_params();
    let bad: Vec<String> = points
        .iter()
        .filter(|p| !commutant_check(p).unwrap().pass)
        .map(|p| format!("d={} k={} {:?}", p.d(), p.k(), p.family()))
        .collect();
    outcome(bad.is_empty(), format!("{} grid points, failing: {:?}", points.len(), bad))
}

fn duality_grid(dualities: &[Duality]) -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for (d, k, du) in grid(MAX_MODES) {
        if !dualities.contains(&du) {
            continue;
        }
        n += 1;
        let r = verify_duality(&ModelParams::new(d, k, du.family()).unwrap(), du).unwrap();
        if !r.all_pass || r.dimension_sum != 1u64 << (d * k) {
            bad.push(format!("d={d} k={k} {}: {:?}", du.name(), r.failures()));
        }
    }
    outcome(bad.is_empty(), format!("{n} grid points, failing: {bad:?}"))
}

fn sp_sp() -> Outcome {
    let grid_result = duality_grid(&[Duality::SpSp]);
    let r = verify_duality(&ModelParams::new(4, 1, Family::Symplectic).unwrap(), Duality::SpSp).unwrap();
    let mut dims: Vec<(u64, u64)> = r.pairs.iter().map(|p| (p.dim_d, p.dim_k)).collect();
    dims.sort();
    let reference = dims == vec![(1, 3), (4, 2), (5, 1)] && r.dimension_sum == 16;
    outcome(
        grid_result.pass && reference,
        format!("{}; d=4 k=1 dims {dims:?}", grid_result.detail),
    )
}

fn pin_suite() -> Outcome {
    let mut bad = Vec::new();
    for d in 1..=5 {
        for k in 1..=2 {
            let checks = pin_check(&ModelParams::new(d, k, Family::Orthogonal).unwrap()).unwrap();
            for f in failing(&checks) {
                bad.push(format!("d={d} k={k} {f}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("d ≤ 5, k ≤ 2, failing: {bad:?}"))
}

fn particle_hole() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    for l in [1, 2] {
        let checks = ph_check(l).unwrap();
        let wanted = |name: &str| {
            [
                "C3_equals_C2",
                "C2_commutes_L_and_S",
                "C2_conjugation_relation",
                "F_C1_vacuum_is_vacuum",
                "F_C1_vacuum_equals_C1_F_vacuum",
                "Q_commutes_S",
                "Q_sl2_relations",
            ]
            .contains(&name)
                || (name.starts_with("perj_") && (name.ends_with("_conjugation_relation") || name.ends_with("_vacuum_sign")))
        };
        let selected: Vec<Check> = checks.into_iter().filter(|c| wanted(&c.name)).collect();
        for f in failing(&selected) {
            bad.push(format!("l={l} {f}"));
        }
    }
    for j2 in [1, 3, 5] {
        let c = bell_square_check(j2).unwrap();
        if !c.pass {
            bad.push(c.name);
        }
    }
    let (fast, time) = within(t, Duration::from_secs(60));
    outcome(bad.is_empty() && fast, format!("{time}, failing: {bad:?}"))
}

fn nucleon() -> Outcome {
    let t = Instant::now();
    let checks = nucleon_check(1).unwrap();
    let selected: Vec<Check> = checks
        .into_iter()
        .filter(|c| c.name == "composed_commutes_S" || c.name == "composed_commutes_T")
        .collect();
    let bad = failing(&selected);
    let (fast, time) = within(t, Duration::from_secs(120));
    outcome(bad.is_empty() && fast && selected.len() == 2, format!("{time}, failing: {bad:?}"))
}

fn read_tree(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_fockdual");
    let tmp = tempfile::tempdir().unwrap();
    let runs: Vec<_> = ["first", "second"]
        .iter()
        .map(|name| {
            let dir = tmp.path().join(name);
            let status = Command::new(bin)
                .args(["suite", "--format", "json", "--output"])
                .arg(&dir)
                .status()
                .unwrap();
            (status.code(), read_tree(&dir))
        })
        .collect();
    let same = runs[0].1 == runs[1].1;
    let codes_ok = runs.iter().all(|(c, _)| matches!(c, Some(0) | Some(1)));
    outcome(
        same && codes_ok && !runs[0].1.is_empty(),
        format!("{} files, exit codes {:?}, identical: {same}", runs[0].1.len(), (runs[0].0, runs[1].0)),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("anticommutators", anticommutators),
        ("commutant", commutant),
        ("sp-sp closure", sp_sp),
        ("o-o closure", || duality_grid(&[Duality::OO])),
        ("O-o and o-Pin labels", || duality_grid(&[Duality::BigOO, Duality::OPin])),
        ("pin operators", pin_suite),
        ("particle-hole", particle_hole),
        ("nucleon conjugation", nucleon),
        ("determinism", determinism),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        all &= o.pass;
        println!("criterion {} {name}: {} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
