use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use hyperramsey::bounds::{bit_budget_from_env, bound, compare_bounds, Bound, Family};
use hyperramsey::extract::{
    extract_cfs_general_with, extract_ramsey_with, ExtractOptions, Extraction, Method, Termination,
};
use hyperramsey::hypergraph::io::{read_binary, read_text, write_binary, write_text};
use hyperramsey::hypergraph::{ColoredHypergraph, Coloring, HomogeneousSet};
use hyperramsey::lemma::{
    hyper_edge_sum_bound, hyper_edge_sum_exact, pascal_second_identity, sigma_sum_enumerated, sigma_table,
    stirling_bracket,
};
use hyperramsey::verify::{brute_force_ramsey, random_coloring, validate_run, LawStatus, RamseyOutcome, RamseyQuery};
use hyperramsey::{Error, Result};

use crate::{BoundArgs, Cli, Command, ExtractArgs, Format, LemmaCommand, SearchArgs, Status, ValidateArgs};

/// Collects a report; text lines stream to stdout as they come, the
/// structured form is printed once at the end.
pub struct Out {
    format: Format,
    fields: Map<String, Value>,
}

impl Out {
    pub fn new(format: Format, config: String) -> Self {
        let mut fields = Map::new();
        match format {
            Format::Text => println!("{config}"),
            Format::Structured => {
                eprintln!("{config}");
                fields.insert("config".into(), Value::String(config));
            }
        }
        Out { format, fields }
    }

    pub fn line(&self, text: impl AsRef<str>) {
        if self.format == Format::Text {
            println!("{}", text.as_ref());
        }
    }

    pub fn field(&mut self, key: &str, value: Value) {
        self.fields.insert(key.into(), value);
    }

    pub fn push(&mut self, key: &str, value: Value) {
        let slot = self.fields.entry(key).or_insert_with(|| Value::Array(Vec::new()));
        if let Value::Array(items) = slot {
            items.push(value);
        }
    }

    pub fn finish(self) {
        if self.format == Format::Structured {
            println!("{}", Value::Object(self.fields));
        }
    }
}

fn config_line(sub: &str, pairs: &[(&str, String)]) -> String {
    let mut out = format!("config {sub}");
    for (k, v) in pairs {
        let _ = write!(out, " {k}={v}");
    }
    out
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Input(format!("{}: {e}", path.display()))
}

pub fn load_coloring(path: &Path) -> Result<ColoredHypergraph> {
    let bytes = fs::read(path).map_err(|e| io_error(path, e))?;
    if bytes.starts_with(b"RCOL") {
        read_binary(&bytes[..])
    } else {
        read_text(&bytes[..])
    }
}

pub fn save_coloring(path: &Path, g: &ColoredHypergraph, binary: bool) -> Result<()> {
    let mut buf = Vec::new();
    if binary {
        write_binary(g, &mut buf)?;
    } else {
        write_text(g, &mut buf)?;
    }
    fs::write(path, buf).map_err(|e| io_error(path, e))
}

fn save_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| io_error(path, e))
}

fn join(v: &[u32]) -> String {
    if v.is_empty() {
        return "-".into();
    }
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn set_text(set: &HomogeneousSet) -> String {
    format!("set color={} size={} vertices={}", set.color, set.len(), join(&set.vertices))
}

pub fn dispatch(cli: &Cli) -> Result<Status> {
    match &cli.command {
        Command::Extract(args) => extract(cli.format, args),
        Command::Bound(args) => bounds(cli.format, args),
        Command::Lemma { which } => lemma(cli.format, which),
        Command::Search(args) => search(cli.format, args),
        Command::Validate(args) => validate(cli.format, args),
        Command::Selftest => Ok(crate::selftest::run(cli.format)),
    }
}

fn extract(format: Format, args: &ExtractArgs) -> Result<Status> {
    let method: Method = args.method.parse()?;
    let (g, source) = match &args.input {
        Some(path) => {
            let g = load_coloring(path)?;
            let clash = args.a.is_some_and(|a| a != g.uniformity())
                || args.n.is_some_and(|n| n != g.order())
                || args.c.is_some_and(|c| c != g.colors());
            if clash {
                return Err(Error::Input(format!(
                    "--a/--n/--c disagree with {} (a={} n={} c={})",
                    path.display(),
                    g.uniformity(),
                    g.order(),
                    g.colors()
                )));
            }
            (g, ("input", path.display().to_string()))
        }
        None => {
            let (Some(a), Some(n), Some(seed)) = (args.a, args.n, args.seed) else {
                return Err(Error::Input("without --input, give --a, --n and --seed".into()));
            };
            let g = random_coloring(n, a, args.c.unwrap_or(2), seed)?;
            (g, ("seed", seed.to_string()))
        }
    };
    let config = config_line(
        "extract",
        &[
            ("method", method.to_string()),
            ("k", args.k.to_string()),
            ("a", g.uniformity().to_string()),
            ("n", g.order().to_string()),
            ("c", g.colors().to_string()),
            (source.0, source.1),
            ("exact_inner", args.exact_inner.to_string()),
        ],
    );
    let mut out = Out::new(format, config);
    let opts = ExtractOptions {
        exact_inner: args.exact_inner,
        ..Default::default()
    };
    let run = match method {
        Method::Ramsey => extract_ramsey_with(&g, args.k, &opts)?,
        Method::CfsGeneral => extract_cfs_general_with(&g, args.k, &opts)?,
        _ => method.run(&g, args.k)?,
    };
    if let Some(p) = &args.coloring_out {
        save_coloring(p, &g, args.binary)?;
    }
    if let Some(p) = &args.trace_out {
        save_text(p, &run.to_text())?;
    }
    if let Some(p) = &args.set_out {
        save_text(p, &format!("{}\n", set_text(&run.set)))?;
    }
    let report = validate_run(&g, &run)?;
    report_run(&mut out, &run);
    report_laws(&mut out, &report);
    out.finish();
    Ok(if !report.all_pass() {
        Status::Invariant
    } else if run.trace.termination == Termination::BudgetAborted {
        Status::Budget
    } else {
        Status::Ok
    })
}

fn report_run(out: &mut Out, run: &Extraction) {
    let t = &run.trace;
    out.line(set_text(&run.set));
    out.line(format!(
        "run stages={} events={} termination={} fallback={}",
        t.stages.len(),
        t.event_count(),
        t.termination.name(),
        t.fallback
    ));
    out.field(
        "set",
        json!({"color": run.set.color, "size": run.set.len(), "vertices": run.set.vertices}),
    );
    out.field(
        "run",
        json!({
            "stages": t.stages.len(),
            "events": t.event_count(),
            "termination": t.termination.name(),
            "fallback": t.fallback,
            "final": t.final_vertex,
        }),
    );
}

fn report_laws(out: &mut Out, report: &hyperramsey::verify::ValidationReport) {
    let verdict = if report.all_pass() { "pass" } else { "fail" };
    out.line(format!("validation {verdict}"));
    for law in &report.laws {
        if law.status != LawStatus::Pass {
            out.line(format!(
                "  law {} {:?}: {}",
                law.name,
                law.status,
                law.detail.clone().unwrap_or_default()
            ));
        }
        out.push(
            "laws",
            json!({"name": law.name, "status": format!("{:?}", law.status).to_lowercase(), "detail": law.detail}),
        );
    }
    out.field("validation", Value::String(verdict.into()));
}

fn value_text(v: &BigUint, full: bool) -> String {
    if full || v.bits() <= 256 {
        v.to_string()
    } else {
        format!("<{} bits>", v.bits())
    }
}

fn bounds(format: Format, args: &BoundArgs) -> Result<Status> {
    let budget = args.bit_budget.unwrap_or_else(bit_budget_from_env);
    let family = args.family.as_deref().map(str::parse::<Family>).transpose()?;
    let config = config_line(
        "bound",
        &[
            ("a", args.a.to_string()),
            ("k", args.k.to_string()),
            ("c", args.c.to_string()),
            ("family", family.map_or("all".into(), |f| f.to_string())),
            ("bit_budget", budget.to_string()),
        ],
    );
    let mut out = Out::new(format, config);
    let list: Vec<Bound> = match family {
        Some(f) => vec![bound(f, args.a, args.k, args.c, budget)?],
        None => compare_bounds(args.a, args.k, args.c, budget)?,
    };
    for b in &list {
        let value = b.value.as_ref().map_or("-".into(), |v| value_text(v, args.digits));
        let notes = b.notes().join("; ");
        out.line(format!("bound {} size={} value={value}", b.family, b.magnitude));
        out.line(format!("  expr {}", b.expr));
        if !notes.is_empty() {
            out.line(format!("  note {notes}"));
        }
        out.push(
            "bounds",
            json!({
                "family": b.family.name(),
                "magnitude": b.magnitude.to_string(),
                "value": b.value.as_ref().map(|v| v.to_string()),
                "expr": b.expr.to_string(),
                "notes": b.notes(),
            }),
        );
    }
    out.finish();
    Ok(Status::Ok)
}

fn lemma(format: Format, which: &LemmaCommand) -> Result<Status> {
    let mut status = Status::Ok;
    match which {
        LemmaCommand::Sigma { c, k, enumerate } => {
            let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            let config = config_line(
                "lemma sigma",
                &[("c", list(c)), ("k", list(k)), ("enumerate", enumerate.to_string())],
            );
            let mut out = Out::new(format, config);
            for row in sigma_table(c, k)? {
                let brute = if *enumerate {
                    let b = sigma_sum_enumerated(row.c, row.k)?;
                    if b != row.exact {
                        status = Status::Invariant;
                    }
                    b.to_string()
                } else {
                    "-".into()
                };
                if row.exact > row.bound {
                    status = Status::Invariant;
                }
                out.line(format!(
                    "sigma c={} k={} exact={} enumerated={brute} bound={} ratio={:.3e}",
                    row.c, row.k, row.exact, row.bound, row.ratio
                ));
                out.push(
                    "rows",
                    json!({"c": row.c, "k": row.k, "exact": row.exact.to_string(), "enumerated": brute,
                           "bound": row.bound.to_string(), "ratio": row.ratio}),
                );
            }
            out.finish();
        }
        LemmaCommand::Pascal { a, n } => {
            let mut out = Out::new(format, config_line("lemma pascal", &[("a", a.to_string()), ("n", n.to_string())]));
            let (lhs, rhs, equal) = pascal_second_identity(*a, *n);
            if !equal {
                status = Status::Invariant;
            }
            out.line(format!("pascal lhs={lhs} rhs={rhs} equal={equal}"));
            out.field("pascal", json!({"lhs": lhs.to_string(), "rhs": rhs.to_string(), "equal": equal}));
            out.finish();
        }
        LemmaCommand::Stirling { n } => {
            let mut out = Out::new(format, config_line("lemma stirling", &[("n", n.to_string())]));
            let s = stirling_bracket(*n)?;
            if !s.holds() {
                status = Status::Invariant;
            }
            let (lo, hi) = (s.lower.midpoint_f64(), s.upper.midpoint_f64());
            out.line(format!("stirling n={n} lower~{lo:.6e} factorial={} upper~{hi:.6e} holds={}", value_text(&s.factorial, false), s.holds()));
            out.field(
                "stirling",
                json!({"n": n, "lower": lo, "factorial": s.factorial.to_string(), "upper": hi, "holds": s.holds()}),
            );
            out.finish();
        }
        LemmaCommand::EdgeSum { a, c, k, r } => {
            let config = config_line(
                "lemma edge-sum",
                &[
                    ("a", a.to_string()),
                    ("c", c.to_string()),
                    ("k", k.to_string()),
                    ("r", r.map_or("-".into(), |r| r.to_string())),
                ],
            );
            let mut out = Out::new(format, config);
            let sum = hyper_edge_sum_exact(*a, *c, *k)?;
            for o in &sum.orders {
                out.line(format!(
                    "order m={} colorings={} qualifying={} edges_each={}",
                    o.m, o.colorings, o.qualifying, o.edges_each
                ));
                out.push(
                    "orders",
                    json!({"m": o.m, "colorings": o.colorings, "qualifying": o.qualifying, "edges_each": o.edges_each}),
                );
            }
            out.line(format!("total {}", sum.total));
            out.field("total", Value::String(sum.total.to_string()));
            if let Some(r) = r {
                let b = hyper_edge_sum_bound(*a, *c, *r, bit_budget_from_env())?;
                let holds = sum.total <= b;
                if !holds {
                    status = Status::Invariant;
                }
                out.line(format!("bound {b} holds={holds}"));
                out.field("bound", json!({"value": b.to_string(), "holds": holds}));
            }
            out.finish();
        }
    }
    Ok(status)
}

fn search(format: Format, args: &SearchArgs) -> Result<Status> {
    let config = config_line(
        "search",
        &[
            ("a", args.a.to_string()),
            ("k", args.k.to_string()),
            ("c", args.c.to_string()),
            ("n_max", args.n_max.to_string()),
            ("budget", args.budget.to_string()),
            ("workers", args.workers.to_string()),
        ],
    );
    let mut out = Out::new(format, config);
    let q = RamseyQuery {
        n_max: args.n_max,
        budget: args.budget,
        workers: args.workers,
        ..RamseyQuery::new(args.a, args.k, args.c)
    };
    let outcome = brute_force_ramsey(&q)?;
    let hi_text = |hi: &Option<BigUint>| hi.as_ref().map_or("-".into(), |h| value_text(h, false));
    let status = match &outcome {
        RamseyOutcome::Exact { value, colorings, .. } => {
            out.line(format!("exact R({},{},{}) = {value} colorings={colorings}", q.a, q.k, q.c));
            out.field("exact", json!({"value": value, "colorings": colorings}));
            Status::Ok
        }
        RamseyOutcome::Bracket { lo, hi, colorings, .. } => {
            out.line(format!("bracket {lo} <= R({},{},{}) <= {} colorings={colorings}", q.a, q.k, q.c, hi_text(hi)));
            out.field("bracket", json!({"lo": lo, "hi": hi.as_ref().map(|h| h.to_string()), "colorings": colorings}));
            Status::Ok
        }
        RamseyOutcome::BudgetExceeded {
            lo,
            hi,
            frontier,
            needed,
            colorings,
            ..
        } => {
            out.line(format!(
                "budget-exceeded {lo} <= R({},{},{}) <= {} frontier={frontier} needed={} colorings={colorings}",
                q.a,
                q.k,
                q.c,
                hi_text(hi),
                needed.map_or("-".into(), |n| n.to_string())
            ));
            out.field(
                "budget_exceeded",
                json!({"lo": lo, "hi": hi.as_ref().map(|h| h.to_string()), "frontier": frontier,
                       "needed": needed, "colorings": colorings}),
            );
            Status::Budget
        }
    };
    let w = outcome.witness();
    out.line(format!("witness n={}", w.order()));
    if let Some(p) = &args.witness_out {
        save_coloring(p, w, false)?;
    }
    out.finish();
    Ok(status)
}

fn validate(format: Format, args: &ValidateArgs) -> Result<Status> {
    let config = config_line(
        "validate",
        &[
            ("trace", args.trace.display().to_string()),
            ("coloring", args.coloring.display().to_string()),
        ],
    );
    let mut out = Out::new(format, config);
    let g = load_coloring(&args.coloring)?;
    let text = fs::read_to_string(&args.trace).map_err(|e| io_error(&args.trace, e))?;
    let run = Extraction::parse(&text)?;
    let report = validate_run(&g, &run)?;
    report_run(&mut out, &run);
    report_laws(&mut out, &report);
    out.finish();
    Ok(if report.all_pass() { Status::Ok } else { Status::Invariant })
}
