//! Text form of an [`Extraction`]: one record per line, `key=value` fields.
//!
//! ```text
//! trace method=cfs n=20 a=3 c=2 k=4
//! stage i=2 x=2 before=19 color=-
//! event i=2 edge=1 color=0 before=18 after=18
//! survivors i=2 v=3,4,5
//! graph i=2 edges=1:0
//! result termination=target fallback=0 color=0 vertices=1,2,3,4 final=4
//! ```

use std::collections::HashMap;
use std::fmt::Write;
use std::str::FromStr;

use super::{Extraction, ExtractionTrace, HalvingEvent, Method, StageColor, StageRecord, Termination};
use crate::error::{Error, Result};
use crate::hypergraph::{HomogeneousSet, PartialColoredGraph};

fn list(items: &[u32], sep: &str) -> String {
    if items.is_empty() {
        return "-".into();
    }
    items.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

pub(super) fn write(run: &Extraction) -> String {
    let t = &run.trace;
    let mut out = String::new();
    let _ = writeln!(out, "trace method={} n={} a={} c={} k={}", t.method, t.n, t.a, t.c, t.k);
    for s in &t.stages {
        let color = match s.color {
            StageColor::Unset => "-".to_string(),
            StageColor::Wild => "*".to_string(),
            StageColor::Is(c) => c.to_string(),
        };
        let _ = writeln!(out, "stage i={} x={} before={} color={}", s.i, s.x, s.before, color);
        for e in &s.events {
            let _ = writeln!(
                out,
                "event i={} edge={} color={} before={} after={}",
                s.i,
                list(&e.edge, "."),
                e.color,
                e.before,
                e.after
            );
        }
        let _ = writeln!(out, "survivors i={} v={}", s.i, list(&s.survivors, ","));
        if let Some(g) = &s.graph {
            let _ = writeln!(out, "graph i={} edges={}", s.i, g);
        }
    }
    let _ = writeln!(
        out,
        "result termination={} fallback={} color={} vertices={} final={}",
        t.termination.name(),
        u8::from(t.fallback),
        run.set.color,
        list(&run.set.vertices, ","),
        t.final_vertex.map_or("-".to_string(), |v| v.to_string())
    );
    out
}

struct Fields<'a> {
    line: usize,
    map: HashMap<&'a str, &'a str>,
}

impl<'a> Fields<'a> {
    fn new(line: usize, rest: &'a str) -> Result<Self> {
        let mut map = HashMap::new();
        for tok in rest.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::parse(line, format!("expected key=value, got `{tok}`")))?;
            if map.insert(k, v).is_some() {
                return Err(Error::parse(line, format!("field `{k}` repeated")));
            }
        }
        Ok(Fields { line, map })
    }

    fn raw(&self, key: &str) -> Result<&'a str> {
        self.map
            .get(key)
            .copied()
            .ok_or_else(|| Error::parse(self.line, format!("missing field `{key}`")))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<T> {
        let raw = self.raw(key)?;
        raw.parse()
            .map_err(|_| Error::parse(self.line, format!("bad value `{raw}` for `{key}`")))
    }

    fn list(&self, key: &str, sep: char) -> Result<Vec<u32>> {
        let raw = self.raw(key)?;
        if raw == "-" {
            return Ok(Vec::new());
        }
        raw.split(sep)
            .map(|v| {
                v.parse()
                    .map_err(|_| Error::parse(self.line, format!("bad vertex `{v}` in `{key}`")))
            })
            .collect()
    }
}

pub(super) fn read(text: &str) -> Result<Extraction> {
    let mut trace: Option<ExtractionTrace> = None;
    let mut set: Option<HomogeneousSet> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        if set.is_some() {
            return Err(Error::parse(line, "content after the result line"));
        }
        let (kind, rest) = body.split_once(' ').unwrap_or((body, ""));
        let f = Fields::new(line, rest)?;
        if kind == "trace" {
            if trace.is_some() {
                return Err(Error::parse(line, "second trace header"));
            }
            let method = Method::from_str(f.raw("method")?).map_err(|e| Error::parse(line, e.to_string()))?;
            trace = Some(ExtractionTrace {
                method,
                n: f.get("n")?,
                a: f.get("a")?,
                c: f.get("c")?,
                k: f.get("k")?,
                stages: Vec::new(),
                termination: Termination::VerticesExhausted,
                fallback: false,
                final_vertex: None,
            });
            continue;
        }
        let t = trace
            .as_mut()
            .ok_or_else(|| Error::parse(line, "record before the trace header"))?;
        match kind {
            "stage" => {
                let color = match f.raw("color")? {
                    "-" => StageColor::Unset,
                    "*" => StageColor::Wild,
                    _ => StageColor::Is(f.get("color")?),
                };
                t.stages.push(StageRecord {
                    i: f.get("i")?,
                    x: f.get("x")?,
                    before: f.get("before")?,
                    color,
                    events: Vec::new(),
                    survivors: Vec::new(),
                    graph: None,
                });
            }
            "event" | "survivors" | "graph" => {
                let uniformity = t.a.saturating_sub(2);
                let stage = t
                    .stages
                    .last_mut()
                    .ok_or_else(|| Error::parse(line, format!("`{kind}` before any stage")))?;
                let i: u32 = f.get("i")?;
                if i != stage.i {
                    return Err(Error::parse(line, format!("`{kind}` for stage {i} inside stage {}", stage.i)));
                }
                match kind {
                    "event" => stage.events.push(HalvingEvent {
                        edge: f.list("edge", '.')?,
                        color: f.get("color")?,
                        before: f.get("before")?,
                        after: f.get("after")?,
                    }),
                    "survivors" => stage.survivors = f.list("v", ',')?,
                    _ => {
                        let g = PartialColoredGraph::parse(uniformity, f.raw("edges")?)
                            .map_err(|e| Error::parse(line, e.to_string()))?;
                        stage.graph = Some(g);
                    }
                }
            }
            "result" => {
                t.termination =
                    Termination::from_str(f.raw("termination")?).map_err(|e| Error::parse(line, e.to_string()))?;
                t.fallback = match f.raw("fallback")? {
                    "0" => false,
                    "1" => true,
                    other => return Err(Error::parse(line, format!("bad fallback flag `{other}`"))),
                };
                t.final_vertex = match f.raw("final")? {
                    "-" => None,
                    _ => Some(f.get("final")?),
                };
                set = Some(HomogeneousSet::new(f.list("vertices", ',')?, f.get("color")?));
            }
            other => return Err(Error::parse(line, format!("unknown record `{other}`"))),
        }
    }
    let trace = trace.ok_or_else(|| Error::parse(1, "missing trace header"))?;
    let set = set.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing result line"))?;
    Ok(Extraction { set, trace })
}
