//! Re-derivation of every construction law from a trace and the coloring
//! alone. Nothing here calls back into the extractors.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::extract::{cfs_detection, Extraction, ExtractionTrace, Method, StageColor, StageRecord, Termination};
use crate::hypergraph::{
    agree_prefix, binomial, is_homogeneous, subsets_of, Color, ColexSubsets, Coloring, PartialColoredGraph,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawStatus {
    Pass,
    Fail,
    /// Not applicable to this run, or too costly to decide.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Law {
    pub name: &'static str,
    pub status: LawStatus,
    /// First counterexample, or why the law was skipped.
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub method: Method,
    pub laws: Vec<Law>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.laws.iter().all(|l| l.status != LawStatus::Fail)
    }

    pub fn law(&self, name: &str) -> Option<&Law> {
        self.laws.iter().find(|l| l.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Law> {
        self.laws.iter().filter(|l| l.status == LawStatus::Fail)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "report method={}", self.method)?;
        for law in &self.laws {
            let status = match law.status {
                LawStatus::Pass => "pass",
                LawStatus::Fail => "fail",
                LawStatus::Skipped => "skip",
            };
            match &law.detail {
                Some(d) => writeln!(f, "law {} {status}: {d}", law.name)?,
                None => writeln!(f, "law {} {status}", law.name)?,
            }
        }
        Ok(())
    }
}

struct Laws(Vec<Law>);

impl Laws {
    fn record(&mut self, name: &'static str, counterexample: Option<String>) {
        let status = if counterexample.is_some() {
            LawStatus::Fail
        } else {
            LawStatus::Pass
        };
        self.0.push(Law {
            name,
            status,
            detail: counterexample,
        });
    }

    fn skip(&mut self, name: &'static str, why: impl Into<String>) {
        self.0.push(Law {
            name,
            status: LawStatus::Skipped,
            detail: Some(why.into()),
        });
    }
}

/// Check `run` against `col`. Structural damage (indices out of range,
/// missing graphs) is an input error; anything else becomes a law result.
pub fn validate_run(col: &dyn Coloring, run: &Extraction) -> Result<ValidationReport> {
    let t = &run.trace;
    check_structure(col, run)?;
    let mut laws = Laws(Vec::new());
    law_homogeneous(col, run, &mut laws);
    law_survivors(t, &mut laws);
    match t.method {
        Method::Ramsey => ramsey_laws(col, run, &mut laws),
        Method::ErdosRado => erdos_rado_laws(col, run, &mut laws),
        Method::Cfs3 | Method::CfsGeneral => cfs_laws(col, run, &mut laws),
    }
    Ok(ValidationReport {
        method: t.method,
        laws: laws.0,
    })
}

fn check_structure(col: &dyn Coloring, run: &Extraction) -> Result<()> {
    let t = &run.trace;
    let bad = |msg: String| Err(Error::input(format!("malformed trace: {msg}")));
    if (t.n, t.a, t.c) != (col.order(), col.uniformity(), col.colors()) {
        return bad(format!(
            "trace is for n={} a={} c={}, coloring has n={} a={} c={}",
            t.n,
            t.a,
            t.c,
            col.order(),
            col.uniformity(),
            col.colors()
        ));
    }
    let in_range = |v: u32| (1..=t.n).contains(&v);
    for (idx, s) in t.stages.iter().enumerate() {
        if s.i as usize != idx + 1 {
            return bad(format!("stage {} recorded at position {}", s.i, idx + 1));
        }
        if !in_range(s.x) || !s.survivors.iter().all(|&v| in_range(v)) {
            return bad(format!("stage {} names a vertex outside [1, {}]", s.i, t.n));
        }
        if s.survivors.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!("stage {} survivors are not strictly increasing", s.i));
        }
        for e in &s.events {
            if e.edge.iter().any(|&j| j == 0 || j > s.i) || e.edge.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("stage {} event edge {:?} is not a set of stage indices", s.i, e.edge));
            }
            if e.color >= t.c {
                return bad(format!("stage {} event color {} out of range", s.i, e.color));
            }
        }
        if let StageColor::Is(c) = s.color {
            if c >= t.c {
                return bad(format!("stage {} color {c} out of range", s.i));
            }
        }
        let cfs = matches!(t.method, Method::Cfs3 | Method::CfsGeneral);
        match (&s.graph, cfs) {
            (None, true) => return bad(format!("stage {} has no graph", s.i)),
            (Some(_), false) => return bad(format!("stage {} has a graph under {}", s.i, t.method)),
            (Some(g), true) => {
                if g.uniformity() + 2 != t.a {
                    return bad(format!("stage {} graph has uniformity {}", s.i, g.uniformity()));
                }
                if g.edges().any(|(e, c)| e.last().is_some_and(|&m| m >= s.i) || c >= t.c) {
                    return bad(format!("stage {} graph uses indices >= {} or bad colors", s.i, s.i));
                }
            }
            (None, false) => {}
        }
    }
    if run.set.vertices.iter().any(|&v| !in_range(v)) || run.set.vertices.windows(2).any(|w| w[0] >= w[1]) {
        return bad("result vertices are not a set inside [n]".into());
    }
    if run.set.color >= t.c {
        return bad("result color out of range".into());
    }
    Ok(())
}

fn law_homogeneous(col: &dyn Coloring, run: &Extraction, laws: &mut Laws) {
    let (set, t) = (&run.set, &run.trace);
    if set.len() < t.a {
        // only a target below a can make a set this small legitimate
        let cex = (t.k >= t.a || set.len() + 1 < t.k)
            .then(|| format!("{} vertices for a={} k={}", set.len(), t.a, t.k));
        laws.record("homogeneous", cex);
        return;
    }
    let cex = match is_homogeneous(col, &set.vertices) {
        Ok(Some(c)) if c == set.color => None,
        Ok(Some(c)) => Some(format!("set is homogeneous in color {c}, reported {}", set.color)),
        Ok(None) => Some(format!("set {:?} is not homogeneous", set.vertices)),
        Err(e) => Some(e.to_string()),
    };
    laws.record("homogeneous", cex);
}

fn law_survivors(t: &ExtractionTrace, laws: &mut Laws) {
    let mut prev: Vec<u32> = (1..=t.n).collect();
    let mut least = None;
    let mut increasing = None;
    let mut php = None;
    let c = t.c as usize;
    for (idx, s) in t.stages.iter().enumerate() {
        if least.is_none() {
            if prev.first() != Some(&s.x) || s.before != prev.len() {
                least = Some(format!(
                    "stage {}: x={} before={} but V has least {:?} and size {}",
                    s.i,
                    s.x,
                    s.before,
                    prev.first(),
                    prev.len()
                ));
            } else if s.survivors.iter().any(|v| *v == s.x || prev.binary_search(v).is_err()) {
                least = Some(format!("stage {}: survivors are not inside V minus x", s.i));
            }
        }
        if idx > 0 && increasing.is_none() && t.stages[idx - 1].x >= s.x {
            increasing = Some(format!("x_{} = {} is not above x_{} = {}", s.i, s.x, s.i - 1, t.stages[idx - 1].x));
        }
        if php.is_none() {
            let mut size = prev.len().saturating_sub(1);
            for e in &s.events {
                if e.before != size || e.after > e.before || e.after * c < e.before {
                    php = Some(format!(
                        "stage {} event {:?}: {} -> {} from a set of {size}",
                        s.i, e.edge, e.before, e.after
                    ));
                    break;
                }
                size = e.after;
            }
            let halving = matches!(t.method, Method::ErdosRado | Method::Cfs3 | Method::CfsGeneral);
            if php.is_none() && halving && s.survivors.len() != size {
                php = Some(format!("stage {}: {} survivors after events ending at {size}", s.i, s.survivors.len()));
            }
        }
        prev = s.survivors.clone();
    }
    laws.record("least-survivor", least);
    laws.record("increasing", increasing);
    laws.record("pigeonhole", php);
}

fn pow_or_max(c: u64, e: u64) -> u64 {
    u32::try_from(e).ok().and_then(|e| c.checked_pow(e)).unwrap_or(u64::MAX)
}

fn ramsey_laws(col: &dyn Coloring, run: &Extraction, laws: &mut Laws) {
    let t = &run.trace;
    let (a, c) = (t.a, t.c);
    if a == 1 {
        let points: Vec<u32> = (1..=t.n).collect();
        let mut counts = vec![0usize; c as usize];
        for &p in &points {
            counts[col.color(&[p]) as usize] += 1;
        }
        let best = (0..c as usize).fold(0, |b, i| if counts[i] > counts[b] { i } else { b });
        let cex = (run.set.color as usize != best || run.set.len() != counts[best])
            .then(|| format!("majority class is color {best} of size {}", counts[best]));
        laws.record("majority", cex);
        return;
    }
    let mut shape = None;
    let mut key = None;
    for s in &t.stages {
        // `before` itself is pinned by the least-survivor law
        let left = s.before.saturating_sub(1);
        match s.color {
            StageColor::Wild if left >= a - 1 => {
                shape.get_or_insert(format!("stage {} is wild with {left} vertices left", s.i));
            }
            StageColor::Wild if s.survivors.len() != left => {
                shape.get_or_insert(format!("wild stage {} dropped vertices", s.i));
            }
            StageColor::Is(_) if left < a - 1 => {
                shape.get_or_insert(format!("stage {} has a color with only {left} vertices left", s.i));
            }
            StageColor::Unset => {
                shape.get_or_insert(format!("stage {} has no color", s.i));
            }
            _ => {}
        }
        if let (StageColor::Is(color), None) = (s.color, &key) {
            let mut edge = vec![s.x];
            for sub in subsets_of(&s.survivors, a - 1) {
                edge.truncate(1);
                edge.extend_from_slice(&sub);
                let got = col.color(&edge);
                if got != color {
                    key = Some(format!("stage {}: COL({edge:?}) = {got}, stage color {color}", s.i));
                    break;
                }
            }
        }
    }
    laws.record("stage-color", shape);
    laws.record("key", key);

    let cap = c as usize * (t.k - 1) + 1;
    let m = t.stages.len();
    let ended = t.stages.last().map_or(true, |s| s.survivors.is_empty());
    let cap_cex = if m > cap {
        Some(format!("{m} stages, cap {cap}"))
    } else if (t.termination == Termination::StageCap) != (m == cap) {
        Some(format!("termination {} after {m} of {cap} stages", t.termination.name()))
    } else if m < cap && !ended {
        Some(format!("stopped after {m} stages with survivors left"))
    } else {
        None
    };
    laws.record("stage-cap", cap_cex);

    let mut counts = vec![0usize; c as usize];
    for s in &t.stages {
        if let StageColor::Is(col) = s.color {
            counts[col as usize] += 1;
        }
    }
    let best = (0..c as usize).fold(0, |b, i| if counts[i] > counts[b] { i } else { b }) as Color;
    let expected: Vec<u32> = t
        .stages
        .iter()
        .filter(|s| s.color == StageColor::Is(best) || s.color == StageColor::Wild)
        .map(|s| s.x)
        .collect();
    let cex = if t.fallback {
        (expected.len() >= a || run.set.len() != a).then(|| "fallback taken although the pass gave a full set".into())
    } else if run.set.vertices != expected || run.set.color != best {
        Some(format!("pigeonhole pass gives color {best} on {expected:?}"))
    } else if run.set.len() * (c as usize) < m {
        Some(format!("{} vertices from {m} stages", run.set.len()))
    } else {
        None
    };
    laws.record("pigeonhole-pass", cex);
}

fn erdos_rado_laws(col: &dyn Coloring, run: &Extraction, laws: &mut Laws) {
    let t = &run.trace;
    let (n, a, c) = (t.n as u64, t.a, t.c as u64);
    let xs = t.chosen();
    let mut star: HashMap<Vec<u32>, Color> = HashMap::new();
    let mut shape = None;
    let mut key = None;
    let mut halving = None;
    for s in &t.stages {
        let i = s.i;
        let expected: Vec<Vec<u32>> = if (i as usize) < a - 1 {
            Vec::new()
        } else {
            ColexSubsets::new(i - 1, a - 2)
                .map(|mut j| {
                    j.push(i);
                    j
                })
                .collect()
        };
        let got: Vec<Vec<u32>> = s.events.iter().map(|e| e.edge.clone()).collect();
        if got != expected && shape.is_none() {
            shape = Some(format!("stage {i} colors {got:?}, construction colors {expected:?}"));
        }
        for e in &s.events {
            star.insert(e.edge.clone(), e.color);
            if key.is_some() {
                continue;
            }
            let mut edge: Vec<u32> = e.edge.iter().map(|&j| xs[j as usize - 1]).collect();
            edge.push(0);
            for &y in &s.survivors {
                edge[a - 1] = y;
                let got = col.color(&edge);
                if got != e.color {
                    key = Some(format!("stage {i}: COL({edge:?}) = {got}, COL** = {}", e.color));
                    break;
                }
            }
        }
        // |V_i| >= floor((n - a + 2) / c^{C(i, a-1)}), and for a = 3 the
        // (i-1)^2 form
        if halving.is_none() && i as usize >= a - 2 {
            let v = s.survivors.len() as u64;
            let general = (n + 2 - a as u64) / pow_or_max(c, binomial(i as u64, a as u64 - 1).unwrap_or(u64::MAX));
            let square = if a == 3 {
                (n - 1) / pow_or_max(c, (i as u64 - 1).pow(2))
            } else {
                0
            };
            if v < general.max(square) {
                halving = Some(format!("|V_{i}| = {v} < {}", general.max(square)));
            }
        }
    }
    laws.record("stage-shape", shape);
    laws.record("key", key);
    laws.record("halving", halving);

    let last = t.stages.last();
    let set = &run.set;
    let cex = match (t.final_vertex, last) {
        (Some(f), Some(s)) if s.survivors.first() == Some(&f) => {
            let index: HashMap<u32, u32> = xs.iter().enumerate().map(|(p, &x)| (x, p as u32 + 1)).collect();
            let rest: Vec<u32> = set.vertices.iter().copied().filter(|&v| v != f).collect();
            let idx: Option<Vec<u32>> = rest.iter().map(|v| index.get(v).copied()).collect();
            match idx {
                None => Some("result uses vertices that were never chosen".to_string()),
                Some(_) if !set.vertices.contains(&f) => Some("final vertex missing from the result".into()),
                Some(idx) if idx.len() + 1 < a => Some(format!("only {} chosen vertices", idx.len())),
                Some(idx) => {
                    let wrong = subsets_of(&idx, a - 1).find(|e| star.get(e) != Some(&set.color));
                    match wrong {
                        Some(e) => Some(format!("COL**({e:?}) is not {}", set.color)),
                        None if t.termination == Termination::TargetReached && idx.len() + 1 != t.k => {
                            Some(format!("target reached with {} vertices", idx.len() + 1))
                        }
                        None if t.termination == Termination::VerticesExhausted && s.survivors.len() != 1 => {
                            Some("exhausted with survivors to spare".into())
                        }
                        None => None,
                    }
                }
            }
        }
        _ => Some("final vertex is not the least survivor of the last stage".into()),
    };
    laws.record("result", cex);
}

/// `x_J ∪ {x_i, y}` for every `y`, against the color recorded for `J`.
fn cfs_key(col: &dyn Coloring, xs: &[u32], s: &StageRecord) -> Option<String> {
    let g = s.graph.as_ref()?;
    for (j_set, color) in g.edges() {
        let mut edge: Vec<u32> = j_set.iter().map(|&j| xs[j as usize - 1]).collect();
        edge.push(s.x);
        edge.push(0);
        let last = edge.len() - 1;
        for &y in &s.survivors {
            edge[last] = y;
            let got = col.color(&edge);
            if got != color {
                return Some(format!("stage {}: COL({edge:?}) = {got}, G_{} has {color}", s.i, s.i));
            }
        }
    }
    None
}

fn cfs_laws(col: &dyn Coloring, run: &Extraction, laws: &mut Laws) {
    let t = &run.trace;
    let (n, a, c, k) = (t.n as u64, t.a, t.c, t.k);
    let u = a - 2;
    let xs = t.chosen();
    let graphs: Vec<&PartialColoredGraph> = t.stages.iter().map(|s| s.graph.as_ref().expect("checked")).collect();

    // replay the agreement rule against the recorded graphs
    let mut agreement = None;
    for s in &t.stages {
        let i = s.i;
        let mut g = PartialColoredGraph::new(u);
        let mut events = s.events.iter();
        let mut cex = None;
        if (i as usize) > u {
            for j_set in ColexSubsets::new(i - 1, u) {
                if !j_set.iter().all(|&j| agree_prefix(graphs[j as usize - 1], &g, j - 1)) {
                    continue;
                }
                match events.next() {
                    Some(e) if e.edge == j_set => {
                        let _ = g.insert(j_set, e.color);
                    }
                    other => {
                        cex = Some(format!("stage {i}: expected edge {j_set:?}, trace has {:?}", other.map(|e| &e.edge)));
                        break;
                    }
                }
            }
        }
        if cex.is_none() {
            if let Some(e) = events.next() {
                cex = Some(format!("stage {i}: extra event on {:?}", e.edge));
            } else if &g != graphs[i as usize - 1] {
                cex = Some(format!("stage {i}: G_{i} = {} but events give {g}", graphs[i as usize - 1]));
            }
        }
        if cex.is_some() {
            agreement = cex;
            break;
        }
    }
    laws.record("agreement", agreement);

    let key = t.stages.iter().find_map(|s| cfs_key(col, &xs, s));
    laws.record("key", key);

    let first = 2.max(a - 1);
    let mut seen: HashMap<PartialColoredGraph, u32> = HashMap::new();
    let mut claim1 = None;
    for s in t.stages.iter().filter(|s| s.i as usize >= first) {
        if let Some(prev) = seen.insert(graphs[s.i as usize - 1].squash(), s.i) {
            claim1 = Some(format!("squash(G_{prev}) = squash(G_{})", s.i));
            break;
        }
    }
    laws.record("claim1-distinct", claim1);

    let claim2 = t
        .stages
        .iter()
        .find(|s| !graphs[s.i as usize - 1].is_complete())
        .map(|s| format!("G_{} = {} is not complete", s.i, graphs[s.i as usize - 1]));
    laws.record("claim2-complete", claim2);

    let l = t.stages.len() as u64;
    if a == 3 {
        // sum_{m=0}^{c(k-2)+1} c^m
        let top = c as u64 * (k as u64).saturating_sub(2) + 1;
        let cap = (0..=top).fold(0u64, |acc, m| acc.saturating_add(pow_or_max(c as u64, m)));
        laws.record("stage-cap", (l > cap).then(|| format!("L = {l} > {cap}")));
    } else {
        laws.skip("stage-cap", "no closed cap stated for a > 3");
    }

    let events = t.event_count() as u64;
    let edges: u64 = graphs.iter().map(|g| g.edge_count() as u64).sum();
    let v_final = t.stages.last().map_or(n, |s| s.survivors.len() as u64);
    let floor = n.saturating_sub(l) / pow_or_max(c as u64, events);
    let cex = if events != edges {
        Some(format!("{events} events but {edges} graph edges"))
    } else if v_final < floor {
        Some(format!("|V_final| = {v_final} < floor((n - L) / c^E) = {floor}"))
    } else {
        None
    };
    laws.record("halving", cex);

    cfs_result(run, &xs, &graphs, laws);
}

fn cfs_result(run: &Extraction, xs: &[u32], graphs: &[&PartialColoredGraph], laws: &mut Laws) {
    let t = &run.trace;
    let (a, k) = (t.a, t.k);
    let set = &run.set;
    if t.fallback {
        let cex = (set.len() != a).then(|| format!("fallback set has {} vertices", set.len()));
        laws.record("result", cex);
        laws.skip("stop-rule", "fallback result");
        return;
    }
    let index: HashMap<u32, u32> = xs.iter().enumerate().map(|(p, &x)| (x, p as u32 + 1)).collect();
    let Some(f) = t.final_vertex else {
        laws.record("result", Some("no final vertex".into()));
        return;
    };
    let (Some(&l), true) = (index.get(&f), set.vertices.contains(&f)) else {
        laws.record("result", Some(format!("final vertex {f} is not a chosen vertex of the result")));
        return;
    };
    let idx: Option<Vec<u32>> = set.vertices.iter().filter(|&&v| v != f).map(|v| index.get(v).copied()).collect();
    let Some(idx) = idx else {
        laws.record("result", Some("result uses vertices that were never chosen".into()));
        return;
    };
    let g = graphs[l as usize - 1];
    let u = a - 2;
    let verts: BTreeSet<u32> = g.vertices();
    let cex = if idx.iter().any(|j| !verts.contains(j)) {
        Some(format!("indices {idx:?} are not all vertices of G_{l}"))
    } else if idx.len() < u.max(1) {
        Some(format!("{} indices from G_{l}", idx.len()))
    } else if let Some(e) = subsets_of(&idx, u).find(|e| g.get(e) != Some(set.color)) {
        Some(format!("G_{l} does not color {e:?} with {}", set.color))
    } else {
        match t.termination {
            Termination::TargetReached if idx.len() + 1 != k || l as usize != t.stages.len() => {
                Some(format!("target reached with {} points read from G_{l}", idx.len()))
            }
            Termination::VerticesExhausted if t.stages.last().is_some_and(|s| s.survivors.len() >= 2) => {
                Some("exhausted with survivors to spare".into())
            }
            Termination::BudgetAborted | Termination::StageCap => {
                Some(format!("termination {} without fallback", t.termination.name()))
            }
            _ => None,
        }
    };
    laws.record("result", cex);

    // no earlier G_j may already hold k - 1 homogeneous points
    let stop_at = if t.termination == Termination::TargetReached {
        t.stages.len() - 1
    } else {
        t.stages.len()
    };
    let mut cex = None;
    for (j, g) in graphs.iter().enumerate().take(stop_at) {
        match cfs_detection(g, t.c) {
            Ok(Some((found, _))) if found.len() + 1 >= k => {
                cex = Some(format!("G_{} already has {} homogeneous points", j + 1, found.len()));
                break;
            }
            Ok(_) => {}
            Err(_) => {
                laws.skip("stop-rule", format!("detection on G_{} over budget", j + 1));
                return;
            }
        }
    }
    laws.record("stop-rule", cex);
}

/// A copy of `run` with the color of one key record changed. Key records
/// are stage colors (Ramsey), `COL**` entries (Erdős–Rado), and `G_i` edge
/// colors or event colors (CFS). `choice` picks the record and the new
/// color; the description names both.
pub fn mutate_key_record(run: &Extraction, choice: u64) -> Option<(Extraction, String)> {
    let t = &run.trace;
    let c = t.c as u64;
    // (stage position, record position, is-graph)
    let mut slots: Vec<(usize, usize, bool)> = Vec::new();
    for (p, s) in t.stages.iter().enumerate() {
        match t.method {
            Method::Ramsey => slots.push((p, 0, false)),
            Method::ErdosRado => slots.extend((0..s.events.len()).map(|q| (p, q, false))),
            Method::Cfs3 | Method::CfsGeneral => {
                slots.extend((0..s.events.len()).map(|q| (p, q, false)));
                let edges = s.graph.as_ref().map_or(0, |g| g.edge_count());
                slots.extend((0..edges).map(|q| (p, q, true)));
            }
        }
    }
    if slots.is_empty() {
        return None;
    }
    let (p, q, in_graph) = slots[(choice % slots.len() as u64) as usize];
    let shift = 1 + (choice / slots.len() as u64) % (c - 1);
    let recolor = |old: Color| ((old as u64 + shift) % c) as Color;
    let mut out = run.clone();
    let stage = &mut out.trace.stages[p];
    let what = if t.method == Method::Ramsey {
        let old = stage.color;
        stage.color = match old {
            StageColor::Is(col) => StageColor::Is(recolor(col)),
            _ => StageColor::Is((choice % c) as Color),
        };
        format!("stage {} color {:?} -> {:?}", stage.i, old, stage.color)
    } else if in_graph {
        let g = stage.graph.as_ref().expect("graph slot");
        let (edge, old) = g.edges().nth(q).map(|(e, col)| (e.to_vec(), col)).expect("edge slot");
        let recolored = g
            .edges()
            .map(|(e, col)| (e.to_vec(), if e == edge.as_slice() { recolor(old) } else { col }));
        let g = PartialColoredGraph::from_edges(g.uniformity(), recolored.collect::<Vec<_>>()).expect("same edges");
        stage.graph = Some(g);
        format!("G_{} edge {edge:?} color {old} -> {}", stage.i, recolor(old))
    } else {
        let e = &mut stage.events[q];
        let old = e.color;
        e.color = recolor(old);
        format!("stage {} event {:?} color {old} -> {}", stage.i, e.edge, e.color)
    };
    Some((out, what))
}

/// A copy of a CFS run with `G_j` overwritten by `G_i`, for the first pair
/// `i < j` past the initial stages. Breaks squash distinctness.
pub fn inject_duplicate_graph(run: &Extraction) -> Option<Extraction> {
    let t = &run.trace;
    if !matches!(t.method, Method::Cfs3 | Method::CfsGeneral) {
        return None;
    }
    let first = 2.max(t.a - 1);
    let eligible: Vec<usize> = (0..t.stages.len()).filter(|&p| p + 1 >= first).collect();
    let (&i, &j) = (eligible.first()?, eligible.get(1)?);
    let mut out = run.clone();
    out.trace.stages[j].graph = out.trace.stages[i].graph.clone();
    Some(out)
}

/// First stage violating `|V_i| >= (n-1) / c^{(i-1)^2}` read over the
/// rationals, for 3-uniform Erdős–Rado traces. The validator's `halving`
/// law checks the floored form, which is what the construction supports.
pub fn er_unfloored_halving(t: &ExtractionTrace) -> Option<String> {
    if t.method != Method::ErdosRado || t.a != 3 {
        return None;
    }
    for s in &t.stages {
        let e = (s.i as u64 - 1).pow(2);
        let scale = pow_or_max(t.c as u64, e);
        let v = s.survivors.len() as u128;
        if v * (scale as u128) < (t.n as u128 - 1) {
            return Some(format!("|V_{}| = {v} < ({} - 1) / {}^{e}", s.i, t.n, t.c));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::{extract_cfs3, extract_cfs_general, extract_erdos_rado, extract_ramsey};
    use crate::verify::random_coloring;

    #[test]
    fn clean_runs_pass() {
        for seed in 0..20 {
            let g = random_coloring(30, 3, 2, seed).unwrap();
            for run in [
                extract_ramsey(&g, 3).unwrap(),
                extract_erdos_rado(&g, 4).unwrap(),
                extract_cfs3(&g, 4).unwrap(),
                extract_cfs_general(&g, 4).unwrap(),
            ] {
                let report = validate_run(&g, &run).unwrap();
                assert!(report.all_pass(), "seed {seed}\n{report}");
            }
        }
    }

    #[test]
    fn forged_colors_are_caught() {
        let g = random_coloring(40, 3, 2, 5).unwrap();
        for run in [
            extract_ramsey(&g, 3).unwrap(),
            extract_erdos_rado(&g, 4).unwrap(),
            extract_cfs3(&g, 4).unwrap(),
        ] {
            for choice in 0..30 {
                let (bad, what) = mutate_key_record(&run, choice).unwrap();
                let report = validate_run(&g, &bad).unwrap();
                assert!(!report.all_pass(), "{what} slipped through\n{report}");
            }
        }
    }

    #[test]
    fn duplicated_graph_breaks_claim_one() {
        let g = random_coloring(60, 3, 2, 3).unwrap();
        let run = extract_cfs3(&g, 4).unwrap();
        let bad = inject_duplicate_graph(&run).unwrap();
        let report = validate_run(&g, &bad).unwrap();
        assert_eq!(report.law("claim1-distinct").unwrap().status, LawStatus::Fail);
    }

    #[test]
    fn mismatched_coloring_is_an_input_error() {
        let g = random_coloring(20, 3, 2, 1).unwrap();
        let run = extract_ramsey(&g, 3).unwrap();
        let other = random_coloring(21, 3, 2, 1).unwrap();
        assert!(validate_run(&other, &run).is_err());
    }
}
