//! The homogeneous-set constructions, run as deterministic algorithms that
//! log every stage.
//!
//! All four share one shape: vertices `x_1 < x_2 < ...` are taken as the
//! least survivor, and after each choice the survivor set `V` is cut down by
//! pigeonhole steps. What differs is which colorings drive the cuts and how
//! the final set is read off the bookkeeping.

mod cfs;
mod cfs_general;
mod erdos_rado;
mod ramsey;
mod trace_io;

use std::fmt;
use std::str::FromStr;

pub use cfs::extract_cfs3;
pub use cfs_general::{extract_cfs_general, extract_cfs_general_with};
pub use erdos_rado::extract_erdos_rado;
pub use ramsey::{extract_ramsey, extract_ramsey_with};

use crate::error::{Error, Result};
use crate::hypergraph::{Color, Coloring, HomogeneousSet, PartialColoredGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Ramsey,
    ErdosRado,
    Cfs3,
    CfsGeneral,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Ramsey, Method::ErdosRado, Method::Cfs3, Method::CfsGeneral];

    pub fn name(self) -> &'static str {
        match self {
            Method::Ramsey => "ramsey",
            Method::ErdosRado => "erdos-rado",
            Method::Cfs3 => "cfs",
            Method::CfsGeneral => "cfs-general",
        }
    }

    /// Run this method with default options.
    pub fn run(self, col: &dyn Coloring, k: usize) -> Result<Extraction> {
        match self {
            Method::Ramsey => extract_ramsey(col, k),
            Method::ErdosRado => extract_erdos_rado(col, k),
            Method::Cfs3 => extract_cfs3(col, k),
            Method::CfsGeneral => extract_cfs_general(col, k),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('_', "-");
        match key.as_str() {
            "cfs3" => return Ok(Method::Cfs3),
            "er" => return Ok(Method::ErdosRado),
            _ => {}
        }
        Method::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .ok_or_else(|| Error::input(format!("unknown extraction method `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Termination {
    /// The Ramsey construction ran its `ck - c + 1` stages.
    StageCap,
    /// The construction's own stop rule fired.
    TargetReached,
    /// The survivor set ran out first.
    VerticesExhausted,
    /// Homogeneous-set detection went over its limits.
    BudgetAborted,
}

impl Termination {
    pub fn name(self) -> &'static str {
        match self {
            Termination::StageCap => "stage-cap",
            Termination::TargetReached => "target",
            Termination::VerticesExhausted => "exhausted",
            Termination::BudgetAborted => "budget",
        }
    }
}

impl FromStr for Termination {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Termination::StageCap,
            Termination::TargetReached,
            Termination::VerticesExhausted,
            Termination::BudgetAborted,
        ]
        .into_iter()
        .find(|t| t.name() == s)
        .ok_or_else(|| Error::input(format!("unknown termination `{s}`")))
    }
}

/// Color of a Ramsey-method stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StageColor {
    /// Methods that color edges rather than stages.
    Unset,
    /// Fewer than `a - 1` survivors were left, so every color fits.
    Wild,
    Is(Color),
}

/// One pigeonhole cut of the survivor set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalvingEvent {
    /// Stage indices naming the colored edge: `J ∪ {i}` for Erdős–Rado
    /// (an edge of `COL**`), `J` for CFS (an edge of `G_i`).
    pub edge: Vec<u32>,
    pub color: Color,
    pub before: usize,
    pub after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StageRecord {
    pub i: u32,
    pub x: u32,
    /// `|V_{i-1}|`, before `x_i` is removed.
    pub before: usize,
    pub color: StageColor,
    pub events: Vec<HalvingEvent>,
    /// `V_i`, ascending.
    pub survivors: Vec<u32>,
    /// `G_i` for the CFS methods.
    pub graph: Option<PartialColoredGraph>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtractionTrace {
    pub method: Method,
    pub n: u32,
    pub a: usize,
    pub c: u8,
    pub k: usize,
    pub stages: Vec<StageRecord>,
    pub termination: Termination,
    /// The result is a bare `a`-set rather than the construction's output.
    pub fallback: bool,
    /// The vertex appended after the read-off set, when the method has one.
    pub final_vertex: Option<u32>,
}

impl ExtractionTrace {
    fn new(method: Method, col: &dyn Coloring, k: usize) -> Self {
        ExtractionTrace {
            method,
            n: col.order(),
            a: col.uniformity(),
            c: col.colors(),
            k,
            stages: Vec::new(),
            termination: Termination::VerticesExhausted,
            fallback: false,
            final_vertex: None,
        }
    }

    pub fn chosen(&self) -> Vec<u32> {
        self.stages.iter().map(|s| s.x).collect()
    }

    pub fn event_count(&self) -> usize {
        self.stages.iter().map(|s| s.events.len()).sum()
    }
}

/// A homogeneous set and the run that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Extraction {
    pub set: HomogeneousSet,
    pub trace: ExtractionTrace,
}

impl Extraction {
    /// Line-oriented text form; see [`Extraction::parse`].
    pub fn to_text(&self) -> String {
        trace_io::write(self)
    }

    pub fn parse(text: &str) -> Result<Self> {
        trace_io::read(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractOptions {
    /// Ramsey method: replace the recursive inner extraction by a true
    /// maximum homogeneous set. Allowed for `n <= 20` only.
    pub exact_inner: bool,
    /// CFS with `a >= 4`: largest `G_i` vertex count on which detection runs.
    pub detection_vertex_limit: usize,
    /// Node budget of one detection search.
    pub detection_budget: u64,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            exact_inner: false,
            detection_vertex_limit: 24,
            detection_budget: 5_000_000,
        }
    }
}

pub const EXACT_INNER_MAX_N: u32 = 20;

/// The CFS stop-rule detector with default limits.
pub(crate) fn cfs_detection(g: &PartialColoredGraph, c: u8) -> Result<Option<(Vec<u32>, Color)>> {
    cfs_general::largest_homogeneous(g, c, &ExtractOptions::default())
}

fn check_target(col: &dyn Coloring, k: usize) -> Result<()> {
    check_target_from(col, k, col.uniformity())
}

/// Like [`check_target`] with a custom least `k`.
fn check_target_from(col: &dyn Coloring, k: usize, least_k: usize) -> Result<()> {
    let (n, a) = (col.order(), col.uniformity());
    if a == 0 {
        return Err(Error::input("uniformity must be at least 1"));
    }
    if (n as usize) < a {
        return Err(Error::input(format!("need n >= a, got n={n} a={a}")));
    }
    if k < least_k.max(1) {
        return Err(Error::input(format!("target k={k} is below {least_k} for a={a}")));
    }
    Ok(())
}

/// Any `a` vertices span one edge, so they are homogeneous. Prefers the
/// chosen vertices, then the smallest others.
fn bare_edge(col: &dyn Coloring, chosen: &[u32]) -> HomogeneousSet {
    let a = col.uniformity();
    let mut verts: Vec<u32> = chosen.iter().copied().take(a).collect();
    let mut next = 1;
    while verts.len() < a {
        if !verts.contains(&next) {
            verts.push(next);
        }
        next += 1;
    }
    verts.sort_unstable();
    let color = col.color(&verts);
    HomogeneousSet::new(verts, color)
}

/// `V` without its least element, which is returned separately.
fn take_least(v: &mut Vec<u32>) -> u32 {
    v.remove(0)
}
