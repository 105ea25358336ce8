use std::time::Instant;

use serde_json::json;

use hyperramsey::bounds::{tow, DEFAULT_BIT_BUDGET};
use hyperramsey::extract::{extract_cfs3, extract_cfs_general, Method};
use hyperramsey::hypergraph::io::{read_text, write_text};
use hyperramsey::lemma::{sigma_sum_enumerated, sigma_sum_exact};
use hyperramsey::verify::{brute_force_ramsey, mutate_key_record, random_coloring, validate_run, RamseyQuery};

use crate::commands::Out;
use crate::{Format, Status};

type Check = fn() -> Result<String, String>;

fn ramsey_values() -> Result<String, String> {
    for (a, k, c, want) in [(1, 3, 2, 5), (2, 3, 2, 6), (3, 3, 3, 3)] {
        let got = brute_force_ramsey(&RamseyQuery::new(a, k, c)).map_err(|e| e.to_string())?.exact();
        if got != Some(want) {
            return Err(format!("R({a},{k},{c}) = {got:?}, expected {want}"));
        }
    }
    Ok("R(1,3,2)=5, R(2,3,2)=6, R(3,3,3)=3".into())
}

fn extractors_validate() -> Result<String, String> {
    let mut runs = 0;
    for seed in 0..20u64 {
        let g = random_coloring(40, 3, 2, seed).map_err(|e| e.to_string())?;
        for method in Method::ALL {
            let run = method.run(&g, 4).map_err(|e| format!("{method}: {e}"))?;
            let report = validate_run(&g, &run).map_err(|e| e.to_string())?;
            if !report.all_pass() || !run.set.holds_in(&g) {
                return Err(format!("{method} seed {seed}:\n{report}"));
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} runs validated"))
}

fn mutations_caught() -> Result<String, String> {
    let g = random_coloring(50, 3, 2, 3).map_err(|e| e.to_string())?;
    let mut caught = 0;
    for method in Method::ALL {
        let run = method.run(&g, 4).map_err(|e| e.to_string())?;
        for choice in 0..5 {
            let Some((bad, what)) = mutate_key_record(&run, choice) else { continue };
            match validate_run(&g, &bad) {
                Ok(r) if r.all_pass() => return Err(format!("{method}: `{what}` not flagged")),
                _ => caught += 1,
            }
        }
    }
    Ok(format!("{caught} mutations flagged"))
}

fn cfs_specializes() -> Result<String, String> {
    for seed in 0..10u64 {
        let g = random_coloring(60, 3, 2, seed).map_err(|e| e.to_string())?;
        let mut general = extract_cfs_general(&g, 4).map_err(|e| e.to_string())?;
        general.trace.method = Method::Cfs3;
        if general != extract_cfs3(&g, 4).map_err(|e| e.to_string())? {
            return Err(format!("seed {seed}: traces differ"));
        }
    }
    Ok("10 seeds agree".into())
}

fn string_sums() -> Result<String, String> {
    for c in 1..=3 {
        for k in 1..=4 {
            let (x, y) = (sigma_sum_exact(c, k), sigma_sum_enumerated(c, k));
            if x.is_err() || x != y {
                return Err(format!("c={c} k={k}: {x:?} vs {y:?}"));
            }
        }
    }
    Ok("DP matches enumeration".into())
}

fn towers() -> Result<String, String> {
    let got = tow(2, &[1, 1, 1], DEFAULT_BIT_BUDGET).map_err(|e| e.to_string())?;
    if got != 16u32.into() {
        return Err(format!("TOW(1,1,1) = {got}"));
    }
    Ok("TOW(1,1,1) = 16".into())
}

fn coloring_round_trip() -> Result<String, String> {
    let g = random_coloring(12, 3, 3, 9).map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    write_text(&g, &mut buf).map_err(|e| e.to_string())?;
    let back = read_text(&buf[..]).map_err(|e| e.to_string())?;
    if back != g {
        return Err("text round trip changed the coloring".into());
    }
    Ok("text round trip exact".into())
}

pub fn run(format: Format) -> Status {
    let checks: [(&str, Check); 7] = [
        ("ramsey-values", ramsey_values),
        ("extractors-validate", extractors_validate),
        ("mutations-caught", mutations_caught),
        ("cfs-specializes", cfs_specializes),
        ("string-sums", string_sums),
        ("towers", towers),
        ("coloring-round-trip", coloring_round_trip),
    ];
    let mut out = Out::new(format, "config selftest".into());
    let mut status = Status::Ok;
    for (name, check) in checks {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        let (verdict, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => {
                status = Status::Invariant;
                ("FAIL", d.clone())
            }
        };
        out.line(format!("{verdict} {name} ({secs:.2}s): {detail}"));
        out.push("checks", json!({"name": name, "pass": result.is_ok(), "seconds": secs, "detail": detail}));
    }
    out.finish();
    status
}
