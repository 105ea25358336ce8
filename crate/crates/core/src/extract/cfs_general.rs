use super::{
    bare_edge, check_target_from, take_least, ExtractOptions, Extraction, ExtractionTrace, HalvingEvent, Method,
    StageColor, StageRecord, Termination,
};
use crate::error::{Error, Result};
use crate::hypergraph::{
    agree_prefix, majority_class, subsets_of, Color, ColexSubsets, Coloring, HomogeneousSet, PartialColoredGraph,
};

/// The CFS construction for any `a >= 3`, with `(a-2)`-uniform bookkeeping
/// graphs `G_i`.
///
/// Candidate edges `J ⊆ [i-1]` are tried in colex order, which puts smaller
/// maxima first; `J` is colored iff every `j ∈ J` has `G_j` agreeing with
/// `G_i` on `{1..j-1}`. At `a = 3` this is exactly [`super::extract_cfs3`].
pub fn extract_cfs_general(col: &dyn Coloring, k: usize) -> Result<Extraction> {
    extract_cfs_general_with(col, k, &ExtractOptions::default())
}

pub fn extract_cfs_general_with(col: &dyn Coloring, k: usize, opts: &ExtractOptions) -> Result<Extraction> {
    let a = col.uniformity();
    if a < 3 {
        return Err(Error::input(format!("the CFS extraction needs a >= 3, got a={a}")));
    }
    check_target_from(col, k, a - 1)?;
    let (n, c) = (col.order(), col.colors());
    let u = a - 2;
    let mut trace = ExtractionTrace::new(Method::CfsGeneral, col, k);
    let mut v: Vec<u32> = (1..=n).collect();
    let mut xs: Vec<u32> = Vec::new();
    let mut graphs: Vec<PartialColoredGraph> = Vec::new();

    for i in 1..=u as u32 {
        let before = v.len();
        let x = take_least(&mut v);
        xs.push(x);
        graphs.push(PartialColoredGraph::new(u));
        trace.stages.push(StageRecord {
            i,
            x,
            before,
            color: StageColor::Unset,
            events: Vec::new(),
            survivors: v.clone(),
            graph: Some(PartialColoredGraph::new(u)),
        });
    }

    let mut best: Option<(Vec<u32>, Color, usize)> = None;
    loop {
        let i = graphs.len() + 1;
        let found = match largest_homogeneous(&graphs[i - 2], c, opts) {
            Ok(found) => found,
            Err(Error::Budget(_)) => {
                trace.termination = Termination::BudgetAborted;
                trace.fallback = true;
                let set = bare_edge(col, &xs);
                return Ok(Extraction { set, trace });
            }
            Err(e) => return Err(e),
        };
        if let Some((verts, color)) = found {
            if verts.len() >= k - 1 {
                let x_l = xs[i - 2];
                let mut h: Vec<u32> = verts[..k - 1].iter().map(|&p| xs[p as usize - 1]).collect();
                h.push(x_l);
                trace.termination = Termination::TargetReached;
                trace.final_vertex = Some(x_l);
                return Ok(Extraction {
                    set: HomogeneousSet::new(h, color),
                    trace,
                });
            }
            if best.as_ref().map_or(true, |b| verts.len() > b.0.len()) {
                best = Some((verts, color, i - 1));
            }
        }
        if v.len() < 2 {
            break;
        }
        let before = v.len();
        let x = take_least(&mut v);
        xs.push(x);
        let mut g = PartialColoredGraph::new(u);
        let mut events = Vec::new();
        let mut edge = vec![0u32; a];
        for j_set in ColexSubsets::new(i as u32 - 1, u) {
            if !j_set.iter().all(|&j| agree_prefix(&graphs[j as usize - 1], &g, j - 1)) {
                continue;
            }
            for (slot, &j) in edge.iter_mut().zip(&j_set) {
                *slot = xs[j as usize - 1];
            }
            edge[u] = x;
            let prior = v.len();
            let (kept, color) = majority_class(
                &v,
                |y| {
                    let mut e = edge.clone();
                    e[a - 1] = y;
                    col.color(&e)
                },
                c,
            )?;
            v = kept;
            g.insert(j_set.clone(), color)?;
            events.push(HalvingEvent {
                edge: j_set,
                color,
                before: prior,
                after: v.len(),
            });
        }
        trace.stages.push(StageRecord {
            i: i as u32,
            x,
            before,
            color: StageColor::Unset,
            events,
            survivors: v.clone(),
            graph: Some(g.clone()),
        });
        graphs.push(g);
    }

    trace.termination = Termination::VerticesExhausted;
    match best {
        // a homogeneous set of G_L with a - 1 members lifts with x_L
        Some((verts, color, l)) if verts.len() >= a - 1 => {
            let x_l = xs[l - 1];
            let mut h: Vec<u32> = verts.iter().map(|&p| xs[p as usize - 1]).collect();
            h.push(x_l);
            trace.final_vertex = Some(x_l);
            Ok(Extraction {
                set: HomogeneousSet::new(h, color),
                trace,
            })
        }
        _ => {
            trace.fallback = true;
            let set = bare_edge(col, &xs);
            Ok(Extraction { set, trace })
        }
    }
}

/// Largest vertex set of `g` whose `u`-subsets are all edges of one color,
/// `u` the uniformity; at least one edge. Ties go to the smaller color,
/// then the lexicographically first set.
pub(crate) fn largest_homogeneous(
    g: &PartialColoredGraph,
    c: u8,
    opts: &ExtractOptions,
) -> Result<Option<(Vec<u32>, Color)>> {
    let u = g.uniformity();
    let verts: Vec<u32> = g.vertices().into_iter().collect();
    if u >= 2 && verts.len() > opts.detection_vertex_limit {
        return Err(Error::Budget(format!(
            "homogeneous-set detection on {} vertices exceeds the limit of {}",
            verts.len(),
            opts.detection_vertex_limit
        )));
    }
    let mut search = Detect {
        g,
        verts: &verts,
        u,
        color: 0,
        chosen: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        budget: opts.detection_budget,
    };
    let mut out: Option<(Vec<u32>, Color)> = None;
    for color in 0..c {
        search.color = color;
        search.best.clear();
        search.grow(0)?;
        if search.best.len() >= u.max(1) && out.as_ref().map_or(true, |o| search.best.len() > o.0.len()) {
            out = Some((search.best.clone(), color));
        }
    }
    Ok(out)
}

struct Detect<'a> {
    g: &'a PartialColoredGraph,
    verts: &'a [u32],
    u: usize,
    color: Color,
    chosen: Vec<u32>,
    best: Vec<u32>,
    nodes: u64,
    budget: u64,
}

impl Detect<'_> {
    fn grow(&mut self, from: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget(format!(
                "homogeneous-set detection passed {} search nodes",
                self.budget
            )));
        }
        if self.chosen.len() >= self.u && self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        for idx in from..self.verts.len() {
            if self.chosen.len() + self.verts.len() - idx <= self.best.len() {
                break;
            }
            let v = self.verts[idx];
            if self.fits(v) {
                self.chosen.push(v);
                self.grow(idx + 1)?;
                self.chosen.pop();
            }
        }
        Ok(())
    }

    fn fits(&self, v: u32) -> bool {
        if self.chosen.len() + 1 < self.u {
            return true;
        }
        subsets_of(&self.chosen, self.u - 1).all(|mut t| {
            t.push(v);
            self.g.get(&t) == Some(self.color)
        })
    }
}
