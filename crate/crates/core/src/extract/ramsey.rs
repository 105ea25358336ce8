use super::{
    bare_edge, check_target, take_least, ExtractOptions, Extraction, ExtractionTrace, Method, StageColor, StageRecord,
    Termination, EXACT_INNER_MAX_N,
};
use crate::error::{Error, Result};
use crate::hypergraph::search::{max_homogeneous, DEFAULT_NODE_BUDGET};
use crate::hypergraph::{majority_class, Color, Coloring, HomogeneousSet, LinkView};

/// The stage construction: pick the least survivor `x_i`, keep a set on
/// which `A -> COL(A ∪ {x_i})` is constant, and finish with a pigeonhole
/// pass over the stage colors.
pub fn extract_ramsey(col: &dyn Coloring, k: usize) -> Result<Extraction> {
    extract_ramsey_with(col, k, &ExtractOptions::default())
}

pub fn extract_ramsey_with(col: &dyn Coloring, k: usize, opts: &ExtractOptions) -> Result<Extraction> {
    check_target(col, k)?;
    let (n, a, c) = (col.order(), col.uniformity(), col.colors());
    if opts.exact_inner && n > EXACT_INNER_MAX_N {
        return Err(Error::input(format!(
            "the exact inner maximum is limited to n <= {EXACT_INNER_MAX_N}, got n={n}"
        )));
    }
    let mut trace = ExtractionTrace::new(Method::Ramsey, col, k);
    if a == 1 {
        let points: Vec<u32> = (1..=n).collect();
        let (class, color) = majority_class(&points, |p| col.color(&[p]), c)?;
        trace.termination = Termination::TargetReached;
        return Ok(Extraction {
            set: HomogeneousSet::new(class, color),
            trace,
        });
    }
    // c(k-1) + 1 stage colors force k equal ones
    let cap = c as usize * (k - 1) + 1;
    let stages = run_stages(col, Some(cap), opts.exact_inner)?;
    trace.termination = if stages.len() == cap {
        Termination::StageCap
    } else {
        Termination::VerticesExhausted
    };
    let picked = pigeonhole(&stages, c);
    trace.stages = stages;
    let set = match picked {
        Some(set) if set.len() >= a => set,
        _ => {
            trace.fallback = true;
            bare_edge(col, &trace.chosen())
        }
    };
    Ok(Extraction { set, trace })
}

/// Homogeneous set of `col` from an uncapped stage run, at least `a`
/// vertices whenever `n >= a`. This is the "largest homogeneous set" step
/// one uniformity up.
pub(crate) fn homogeneous_by_stages(col: &dyn Coloring) -> Result<HomogeneousSet> {
    let (n, a, c) = (col.order(), col.uniformity(), col.colors());
    if a == 1 {
        let points: Vec<u32> = (1..=n).collect();
        let (class, color) = majority_class(&points, |p| col.color(&[p]), c)?;
        return Ok(HomogeneousSet::new(class, color));
    }
    let stages = run_stages(col, None, false)?;
    match pigeonhole(&stages, c) {
        Some(set) if set.len() >= a => Ok(set),
        _ => Ok(bare_edge(col, &stages.iter().map(|s| s.x).collect::<Vec<_>>())),
    }
}

fn run_stages(col: &dyn Coloring, cap: Option<usize>, exact: bool) -> Result<Vec<StageRecord>> {
    let a = col.uniformity();
    let mut v: Vec<u32> = (1..=col.order()).collect();
    let mut stages = Vec::new();
    while !v.is_empty() && cap.map_or(true, |cap| stages.len() < cap) {
        let before = v.len();
        let x = take_least(&mut v);
        let color = if v.len() < a - 1 {
            StageColor::Wild
        } else {
            let link = LinkView::new(col, vec![x], &v);
            let inner = if exact {
                max_homogeneous(&link, DEFAULT_NODE_BUDGET)?
            } else {
                homogeneous_by_stages(&link)?
            };
            let kept: Vec<u32> = inner.vertices.iter().map(|&l| v[l as usize - 1]).collect();
            v = kept;
            StageColor::Is(inner.color)
        };
        stages.push(StageRecord {
            i: stages.len() as u32 + 1,
            x,
            before,
            color,
            events: Vec::new(),
            survivors: v.clone(),
            graph: None,
        });
    }
    Ok(stages)
}

/// The most frequent stage color, wild stages counting for every color.
fn pigeonhole(stages: &[StageRecord], c: u8) -> Option<HomogeneousSet> {
    if stages.is_empty() {
        return None;
    }
    // wild stages add the same amount to every color, so only fixed
    // colors decide the winner
    let mut counts = vec![0usize; c as usize];
    for s in stages {
        if let StageColor::Is(col) = s.color {
            counts[col as usize] += 1;
        }
    }
    let mut best: Color = 0;
    for (col, &count) in counts.iter().enumerate() {
        if count > counts[best as usize] {
            best = col as Color;
        }
    }
    let vertices = stages
        .iter()
        .filter(|s| matches!(s.color, StageColor::Is(col) if col == best) || s.color == StageColor::Wild)
        .map(|s| s.x)
        .collect();
    Some(HomogeneousSet::new(vertices, best))
}
