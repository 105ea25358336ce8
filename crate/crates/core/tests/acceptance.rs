//! Acceptance suite: one PASS/FAIL line per criterion, with timings.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperramsey::bounds::{bound, tow, tow_identity, Family, Relation, TowBindings};
use hyperramsey::extract::{extract_cfs3, extract_cfs_general, extract_erdos_rado, Extraction, Method};
use hyperramsey::hypergraph::search::DEFAULT_NODE_BUDGET;
use hyperramsey::hypergraph::{binomial, is_homogeneous, Color, ColoredHypergraph, Coloring};
use hyperramsey::lemma::{
    hyper_edge_sum_bound, hyper_edge_sum_exact, pascal_second_identity, sigma_bound, sigma_sum_enumerated,
    sigma_sum_exact, stirling_bracket,
};
use hyperramsey::scalar::Interval;
use hyperramsey::verify::{
    brute_force_ramsey, check_witness, er_unfloored_halving, mutate_key_record, random_coloring, validate_run,
    RamseyQuery,
};

struct Outcome {
    pass: bool,
    detail: String,
    /// Failure that comes from a stated law that does not hold as written;
    /// reported, but does not fail the run.
    known_gap: bool,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome {
            pass: true,
            detail: detail.into(),
            known_gap: false,
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Outcome {
            pass: false,
            detail: detail.into(),
            known_gap: false,
        }
    }
}

type Check = fn() -> Outcome;

fn main() -> ExitCode {
    let criteria: [(u8, &str, Check, Duration); 8] = [
        (1, "exact tiny Ramsey values", tiny_values, Duration::from_secs(10)),
        (2, "Erdős–Rado guarantee at n=17", erdos_rado_guarantee, Duration::from_secs(30)),
        (3, "soundness fuzzing", fuzz, Duration::from_secs(300)),
        (4, "string-sum oracles and bound", string_sums, Duration::from_secs(10)),
        (5, "hypergraph edge sum", edge_sum, Duration::from_secs(60)),
        (6, "bound calculator fidelity", bound_fidelity, Duration::from_secs(5)),
        (7, "CFS specialization", specialization, Duration::from_secs(60)),
        (8, "mutation detection", mutation_detection, Duration::from_secs(30)),
    ];
    let mut hard_failures = 0;
    for (id, name, check, limit) in criteria {
        let start = Instant::now();
        let mut out = check();
        let took = start.elapsed();
        if took > limit {
            out.pass = false;
            out.known_gap = false;
            out.detail = format!("{}; over the {:?} limit", out.detail, limit);
        }
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {id} ({name}) in {:.2}s: {}", took.as_secs_f64(), out.detail);
        if !out.pass && !out.known_gap {
            hard_failures += 1;
        }
    }
    if hard_failures > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn tiny_values() -> Outcome {
    let mut checked = 0;
    for c in 2..=3u8 {
        for k in 1..=4usize {
            let got = brute_force_ramsey(&RamseyQuery::new(1, k, c)).map(|o| o.exact());
            let want = c as u32 * k as u32 - c as u32 + 1;
            if got.as_ref().ok() != Some(&Some(want)) {
                return Outcome::fail(format!("R(1,{k},{c}) = {got:?}, expected {want}"));
            }
            checked += 1;
        }
        for a in 1..=4usize {
            let got = brute_force_ramsey(&RamseyQuery::new(a, a, c)).map(|o| o.exact());
            if got.as_ref().ok() != Some(&Some(a as u32)) {
                return Outcome::fail(format!("R({a},{a},{c}) = {got:?}"));
            }
            checked += 1;
        }
    }
    let r = match brute_force_ramsey(&RamseyQuery::new(2, 3, 2)) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let w = r.witness();
    let witness_ok = w.order() == 5 && check_witness(w, 3, DEFAULT_NODE_BUDGET).is_ok_and(|v| v.is_witness());
    if r.exact() != Some(6) || !witness_ok {
        return Outcome::fail(format!("R(2,3,2) = {:?}, witness verified: {witness_ok}", r.exact()));
    }
    Outcome::pass(format!("{} values exact, R(2,3,2) = 6 with a verified 5-vertex witness", checked + 1))
}

/// Hand-built 3-uniform colorings of [17] aimed at the construction's
/// choices: constants, colorings keyed to the first chosen vertices,
/// parity and gap patterns, residue classes mod 17.
fn adversarial(n: u32) -> Vec<ColoredHypergraph> {
    let qr = |d: u32| (1..17u32).any(|x| x * x % 17 == d % 17);
    let high_bit = |x: u32, y: u32| 31 - (x ^ y).leading_zeros();
    let rules: Vec<Box<dyn Fn(&[u32]) -> bool>> = vec![
        Box::new(|_| false),
        Box::new(|_| true),
        Box::new(|e| (e[0] + e[1] + e[2]) % 2 == 0),
        Box::new(|e| e[0] % 2 == 1),
        Box::new(|e| (e[0] + e[1]) % 2 == 0),
        Box::new(|e| e[1] <= n / 2),
        Box::new(|e| (e[0] <= n / 2) == (e[2] <= n / 2)),
        Box::new(|e| (e[2] - e[0]) % 2 == 0),
        Box::new(|e| e[1] - e[0] < e[2] - e[1]),
        Box::new(move |e| high_bit(e[0], e[1]) < high_bit(e[1], e[2])),
        Box::new(|e| (e[0] + e[1] + e[2]) % 3 == 0),
        Box::new(move |e| [e[1] - e[0], e[2] - e[1], e[2] - e[0]].iter().filter(|&&d| qr(d)).count() % 2 == 0),
        Box::new(move |e| qr(e[0])),
        Box::new(|e| matches!((e[1] - e[0]) % 5, 1 | 4)),
        Box::new(|e| e[0] == 1),
        Box::new(|e| e[0] == 1 && e[1] == 2),
        Box::new(|e| e[2] == e[1] + 1),
        Box::new(|e| e[1] == e[0] + 1),
        Box::new(|e| e.iter().map(|v| v.count_ones()).sum::<u32>() % 2 == 0),
        Box::new(|e| (e[0] * 7 + e[1] * 11 + e[2] * 13) % 5 < 2),
    ];
    rules
        .iter()
        .map(|rule| ColoredHypergraph::from_fn(n, 3, 2, |e| rule(e) as Color).expect("valid shape"))
        .collect()
}

fn erdos_rado_guarantee() -> Outcome {
    const N: u32 = 17;
    let check = |g: &ColoredHypergraph, label: &str| -> Option<String> {
        let run = match extract_erdos_rado(g, 3) {
            Ok(run) => run,
            Err(e) => return Some(format!("{label}: {e}")),
        };
        let hom = is_homogeneous(g, &run.set.vertices).ok().flatten() == Some(run.set.color);
        if run.set.len() < 3 || !hom || run.trace.fallback {
            return Some(format!("{label}: returned {:?}", run.set));
        }
        match validate_run(g, &run) {
            Ok(r) if r.all_pass() => None,
            Ok(r) => Some(format!("{label}: {r}")),
            Err(e) => Some(format!("{label}: {e}")),
        }
    };
    for seed in 0..1000 {
        let g = random_coloring(N, 3, 2, seed).expect("valid shape");
        if let Some(err) = check(&g, &format!("seed {seed}")) {
            return Outcome::fail(err);
        }
    }
    for (idx, g) in adversarial(N).iter().enumerate() {
        if let Some(err) = check(g, &format!("adversarial #{idx}")) {
            return Outcome::fail(err);
        }
    }
    Outcome::pass("1000 random and 20 hand-built colorings, each gives a validated homogeneous 3-set")
}

#[derive(Default)]
struct FuzzTally {
    runs: usize,
    failures: Vec<String>,
    /// 3-uniform two-color Erdős–Rado runs and the ones breaking the
    /// unfloored halving law.
    er_literal_runs: usize,
    er_literal_violations: usize,
    er_literal_example: Option<String>,
}

fn fuzz_one(method: Method, seed: u64, tally: &mut FuzzTally) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0000_0000 ^ (method as u64) << 40);
    let uniformities: &[usize] = match method {
        Method::Ramsey => &[1, 2, 3, 4],
        Method::ErdosRado => &[2, 3, 4],
        Method::Cfs3 => &[3],
        Method::CfsGeneral => &[3, 4],
    };
    let a = uniformities[rng.gen_range(0..uniformities.len())];
    let c = rng.gen_range(2..=3u8);
    let k = rng.gen_range(a.max(2)..=a + 3);
    let n_max = if a == 4 { 60 } else { 200 };
    let n = rng.gen_range(k as u32..=n_max);
    let label = format!("{method} seed={seed} n={n} a={a} c={c} k={k}");
    let g = random_coloring(n, a, c, seed).expect("valid shape");
    tally.runs += 1;
    let run = match method.run(&g, k) {
        Ok(run) => run,
        Err(e) => {
            tally.failures.push(format!("{label}: {e}"));
            return;
        }
    };
    if run.set.len() >= a && is_homogeneous(&g, &run.set.vertices).ok().flatten() != Some(run.set.color) {
        tally.failures.push(format!("{label}: set is not homogeneous"));
    }
    match validate_run(&g, &run) {
        Ok(r) if r.all_pass() => {}
        Ok(r) => tally.failures.push(format!("{label}: {}", r.failures().next().map_or(String::new(), |l| {
            format!("{} {}", l.name, l.detail.clone().unwrap_or_default())
        }))),
        Err(e) => tally.failures.push(format!("{label}: {e}")),
    }
    if method == Method::ErdosRado && a == 3 && c == 2 {
        tally.er_literal_runs += 1;
        if let Some(v) = er_unfloored_halving(&run.trace) {
            tally.er_literal_violations += 1;
            tally.er_literal_example.get_or_insert(format!("{label}: {v}"));
        }
    }
}

fn fuzz() -> Outcome {
    let per_method = 1000u64;
    let tallies: Vec<FuzzTally> = std::thread::scope(|s| {
        let handles: Vec<_> = Method::ALL
            .into_iter()
            .flat_map(|m| {
                (0..4u64).map(move |part| (m, part))
            })
            .map(|(m, part)| {
                s.spawn(move || {
                    let mut t = FuzzTally::default();
                    for seed in (part..per_method).step_by(4) {
                        fuzz_one(m, seed, &mut t);
                    }
                    t
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("fuzz worker")).collect()
    });
    let mut all = FuzzTally::default();
    for t in tallies {
        all.runs += t.runs;
        all.failures.extend(t.failures);
        all.er_literal_runs += t.er_literal_runs;
        all.er_literal_violations += t.er_literal_violations;
        if all.er_literal_example.is_none() {
            all.er_literal_example = t.er_literal_example;
        }
    }
    if let Some(first) = all.failures.first() {
        return Outcome::fail(format!("{} of {} runs failed; first: {first}", all.failures.len(), all.runs));
    }
    let summary = format!(
        "{} runs, every set homogeneous, every report all-pass (floored halving laws, squash distinctness, stage cap)",
        all.runs
    );
    if all.er_literal_violations > 0 {
        return Outcome {
            pass: false,
            known_gap: true,
            detail: format!(
                "{summary}; unfloored law |V_i| >= (n-1)/2^((i-1)^2) broken in {} of {} two-color 3-uniform \
                 Erdős–Rado runs, e.g. {} (at i=2 only n-2 vertices remain to halve, so an even split of even \
                 n gives (n-2)/2)",
                all.er_literal_violations,
                all.er_literal_runs,
                all.er_literal_example.unwrap_or_default()
            ),
        };
    }
    Outcome::pass(format!(
        "{summary}; unfloored Erdős–Rado law held in all {} two-color 3-uniform runs",
        all.er_literal_runs
    ))
}

fn string_sums() -> Outcome {
    for c in 1..=3u64 {
        for k in 1..=5u64 {
            let (exact, brute) = (sigma_sum_exact(c, k), sigma_sum_enumerated(c, k));
            if exact.is_err() || exact.as_ref().ok() != brute.as_ref().ok() {
                return Outcome::fail(format!("c={c} k={k}: DP {exact:?}, enumeration {brute:?}"));
            }
        }
    }
    for c in 2..=3u64 {
        for k in 2..=6u64 {
            let exact = Interval::from_biguint(&sigma_sum_exact(c, k).expect("small"));
            let b = sigma_bound(c, k).expect("small");
            let two_ok = b.two_color.as_ref().map_or(true, |t| exact.certainly_le(t));
            if !exact.certainly_le(&b.general) || !two_ok {
                return Outcome::fail(format!("c={c} k={k}: sum {} not below the bound", exact.lo));
            }
        }
    }
    for a in 0..=50u64 {
        for n in 0..=50u64 {
            let (lhs, rhs, ok) = pascal_second_identity(a, n);
            if !ok || lhs != rhs {
                return Outcome::fail(format!("Pascal identity at a={a} n={n}: {lhs} vs {rhs}"));
            }
        }
    }
    for n in 1..=200 {
        if !stirling_bracket(n).is_ok_and(|s| s.holds()) {
            return Outcome::fail(format!("Stirling bracket fails at n={n}"));
        }
    }
    Outcome::pass("DP = enumeration on 15 pairs, bound on 10 pairs, Pascal on 51x51, Stirling on n <= 200")
}

fn edge_sum() -> Outcome {
    let exact = match hyper_edge_sum_exact(4, 2, 4) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    let r = match brute_force_ramsey(&RamseyQuery::new(2, 3, 2)).map(|o| o.exact()) {
        Ok(Some(r)) => r as u64,
        other => return Outcome::fail(format!("R(2,3,2) unavailable: {other:?}")),
    };
    let top = exact.orders.last().map_or(0, |o| o.m);
    if top > 6 || exact.orders.iter().any(|o| o.m >= 6 && o.qualifying > 0) {
        return Outcome::fail(format!("qualifying graphs found on {top} vertices"));
    }
    let bound = match hyper_edge_sum_bound(4, 2, r, 1 << 16) {
        Ok(b) => b,
        Err(e) => return Outcome::fail(e.to_string()),
    };
    if exact.total > bound {
        return Outcome::fail(format!("sum {} above bound {bound}", exact.total));
    }
    Outcome::pass(format!("sum {} over graphs on <= 5 vertices, bound {bound} with r = {r}", exact.total))
}

fn bound_fidelity() -> Outcome {
    const BUDGET: u64 = 4096;
    let examples: [(&[u64], u64); 5] = [(&[1], 2), (&[1, 1], 4), (&[1, 1, 1], 16), (&[6], 64), (&[1, 3], 256)];
    for (args, want) in examples {
        if tow(2, args, BUDGET).ok() != Some(BigUint::from(want)) {
            return Outcome::fail(format!("TOW{args:?} is not {want}"));
        }
    }
    let mut checked = 0usize;
    let mut lists: Vec<Vec<u64>> = Vec::new();
    for len in 1..=3 {
        let mut cur = vec![1u64; len];
        loop {
            lists.push(cur.clone());
            let Some(p) = cur.iter().rposition(|&v| v < 4) else { break };
            cur[p] += 1;
            cur[p + 1..].iter_mut().for_each(|v| *v = 1);
        }
    }
    for part in 1..=6u8 {
        for args in &lists {
            for b in 1..=3u64 {
                for delta in 0..=3u64 {
                    for position in 1..args.len().max(2) {
                        let bind = TowBindings {
                            args: args.clone(),
                            b,
                            delta,
                            position,
                            ones: 0,
                        };
                        // bindings whose values reach 2^4096 are out of scope
                        let Ok(r) = tow_identity(part, &bind, BUDGET) else { continue };
                        let want = if matches!(part, 2 | 5) { Relation::Equal } else { Relation::AtMost };
                        if r.relation != want || !r.holds {
                            return Outcome::fail(format!("part {part}: {} vs {}", r.lhs_text, r.rhs_text));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    for k in 2..=10u64 {
        let want = binomial(2 * k - 2, k - 1).map(BigUint::from);
        let got = bound(Family::Base, 2, k, 2, BUDGET).ok().and_then(|b| b.value);
        if got != want {
            return Outcome::fail(format!("base bound at k={k}: {got:?}, expected {want:?}"));
        }
    }
    Outcome::pass(format!("TOW examples exact, {checked} identity instances hold, base bound = C(2k-2,k-1) for k <= 10"))
}

fn strip_method(run: &Extraction) -> Extraction {
    let mut out = run.clone();
    out.trace.method = Method::Cfs3;
    out
}

fn specialization() -> Outcome {
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = rng.gen_range(2..=3u8);
        let k = rng.gen_range(2..=6usize);
        let n = rng.gen_range(k as u32..=200);
        let g = random_coloring(n, 3, c, seed).expect("valid shape");
        let (general, three) = match (extract_cfs_general(&g, k), extract_cfs3(&g, k)) {
            (Ok(x), Ok(y)) => (x, y),
            (x, y) => return Outcome::fail(format!("seed {seed}: {:?} / {:?}", x.err(), y.err())),
        };
        let body = |r: &Extraction| r.to_text().split_once('\n').map(|(_, rest)| rest.to_string());
        if strip_method(&general) != three || body(&general) != body(&three) {
            return Outcome::fail(format!("seed {seed} (n={n} c={c} k={k}): traces differ"));
        }
    }
    Outcome::pass("100 seeds, identical traces apart from the method tag")
}

fn mutation_detection() -> Outcome {
    let mut mutated = 0;
    let mut seed = 0u64;
    let methods = [Method::Ramsey, Method::ErdosRado, Method::Cfs3, Method::CfsGeneral];
    while mutated < 50 {
        let method = methods[(seed % 4) as usize];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = match method {
            Method::Cfs3 | Method::CfsGeneral => 3 + (method == Method::CfsGeneral && seed % 8 == 7) as usize,
            _ => rng.gen_range(2..=4usize),
        };
        let c = rng.gen_range(2..=3u8);
        let k = rng.gen_range(a..=a + 2);
        let n = rng.gen_range(k as u32 + 10..=if a == 4 { 40 } else { 80 });
        let g = random_coloring(n, a, c, seed).expect("valid shape");
        seed += 1;
        let Ok(run) = method.run(&g, k) else { continue };
        let Some((bad, what)) = mutate_key_record(&run, rng.gen()) else { continue };
        mutated += 1;
        let flagged = match validate_run(&g, &bad) {
            Ok(r) => !r.all_pass(),
            Err(_) => true,
        };
        if !flagged {
            return Outcome::fail(format!("{method} seed {}: mutation `{what}` not flagged", seed - 1));
        }
    }
    Outcome::pass(format!("{mutated} of {mutated} single-field mutations flagged"))
}
