use super::{
    bare_edge, check_target_from, take_least, Extraction, ExtractionTrace, HalvingEvent, Method, StageColor, StageRecord,
    Termination,
};
use crate::error::{Error, Result};
use crate::hypergraph::{agree_prefix, majority_class, Coloring, HomogeneousSet, PartialColoredGraph};

/// The CFS construction for 3-uniform colorings.
///
/// Each `x_i` carries a colored point set `G_i`. Point `j` joins `G_i`,
/// cutting `V` by `y -> COL(x_j, x_i, y)`, only if `G_j` and `G_i` agree
/// below `j` at that moment. The run stops once some `G_L` has `k-1`
/// points of one color; those `x`'s and `x_L` form the answer.
pub fn extract_cfs3(col: &dyn Coloring, k: usize) -> Result<Extraction> {
    // k = 2 is allowed: the stop rule then fires after one event, and
    // the 2-set it returns is homogeneous only vacuously
    check_target_from(col, k, 2)?;
    let (n, c) = (col.order(), col.colors());
    if col.uniformity() != 3 {
        return Err(Error::input(format!(
            "the CFS extraction is for 3-uniform colorings, got a={}",
            col.uniformity()
        )));
    }
    let mut trace = ExtractionTrace::new(Method::Cfs3, col, k);
    let mut v: Vec<u32> = (1..=n).collect();
    let mut xs = vec![take_least(&mut v)];
    let mut graphs = vec![PartialColoredGraph::new(1)];
    trace.stages.push(StageRecord {
        i: 1,
        x: xs[0],
        before: n as usize,
        color: StageColor::Unset,
        events: Vec::new(),
        survivors: v.clone(),
        graph: Some(graphs[0].clone()),
    });

    // (points, color, stage) of the largest class seen so far
    let mut best: Option<(Vec<u32>, u8, usize)> = None;
    loop {
        let i = graphs.len() + 1;
        let last = &graphs[i - 2];
        if let Some((points, color)) = last.largest_point_class() {
            if points.len() >= k - 1 {
                let mut verts: Vec<u32> = points[..k - 1].iter().map(|&p| xs[p as usize - 1]).collect();
                let x_l = xs[i - 2];
                verts.push(x_l);
                trace.termination = Termination::TargetReached;
                trace.final_vertex = Some(x_l);
                return Ok(Extraction {
                    set: HomogeneousSet::new(verts, color),
                    trace,
                });
            }
            if best.as_ref().map_or(true, |b| points.len() > b.0.len()) {
                best = Some((points, color, i - 1));
            }
        }
        if v.len() < 2 {
            break;
        }
        let before = v.len();
        let x = take_least(&mut v);
        xs.push(x);
        let mut g = PartialColoredGraph::new(1);
        let mut events = Vec::new();
        for j in 1..i {
            if !agree_prefix(&graphs[j - 1], &g, j as u32 - 1) {
                continue;
            }
            let xj = xs[j - 1];
            let prior = v.len();
            let (kept, color) = majority_class(&v, |y| col.color(&[xj, x, y]), c)?;
            v = kept;
            g.insert(vec![j as u32], color)?;
            events.push(HalvingEvent {
                edge: vec![j as u32],
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
        // two same-colored points of G_L plus x_L already cover a triple
        Some((points, color, l)) if points.len() >= 2 => {
            let x_l = xs[l - 1];
            let mut verts: Vec<u32> = points.iter().map(|&p| xs[p as usize - 1]).collect();
            verts.push(x_l);
            trace.final_vertex = Some(x_l);
            Ok(Extraction {
                set: HomogeneousSet::new(verts, color),
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
