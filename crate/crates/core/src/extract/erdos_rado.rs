use std::collections::BTreeMap;

use super::ramsey::homogeneous_by_stages;
use super::{
    check_target, take_least, Extraction, ExtractionTrace, HalvingEvent, Method, StageColor, StageRecord, Termination,
};
use crate::error::{Error, Result};
use crate::hypergraph::{majority_class, Color, ColexSubsets, ColoredHypergraph, Coloring, HomogeneousSet};

/// The Erdős–Rado construction.
///
/// Stage `i` takes `x_i = min V`, then for every `J ⊆ [i-1]` of size `a-2`
/// (colex order) keeps the majority class of `y -> COL(x_J ∪ {x_i, y})`
/// and records that class color as `COL**(J ∪ {i})`. After each stage the
/// Ramsey extraction at uniformity `a-1` runs on `COL**`; once it finds
/// `k-1` indices, their vertices plus the least survivor are returned.
pub fn extract_erdos_rado(col: &dyn Coloring, k: usize) -> Result<Extraction> {
    check_target(col, k)?;
    let (n, a, c) = (col.order(), col.uniformity(), col.colors());
    if a < 2 {
        return Err(Error::input("the Erdős–Rado extraction needs a >= 2"));
    }
    let mut trace = ExtractionTrace::new(Method::ErdosRado, col, k);
    let mut v: Vec<u32> = (1..=n).collect();
    let mut xs: Vec<u32> = Vec::new();

    // x_1, ..., x_{a-2} carry no halvings
    for i in 1..=a as u32 - 2 {
        let before = v.len();
        let x = take_least(&mut v);
        xs.push(x);
        trace.stages.push(StageRecord {
            i,
            x,
            before,
            color: StageColor::Unset,
            events: Vec::new(),
            survivors: v.clone(),
            graph: None,
        });
    }

    let mut star: BTreeMap<Vec<u32>, Color> = BTreeMap::new();
    let mut best: Option<HomogeneousSet> = None;
    let mut i = a as u32 - 1;
    // a stage needs a survivor left once x_i is gone
    while v.len() >= 2 {
        let before = v.len();
        let x = take_least(&mut v);
        xs.push(x);
        let mut events = Vec::new();
        let mut edge = vec![0u32; a];
        for j_set in ColexSubsets::new(i - 1, a - 2) {
            for (slot, &j) in edge.iter_mut().zip(&j_set) {
                *slot = xs[j as usize - 1];
            }
            edge[a - 2] = x;
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
            let mut key = j_set;
            key.push(i);
            star.insert(key.clone(), color);
            events.push(HalvingEvent {
                edge: key,
                color,
                before: prior,
                after: v.len(),
            });
        }
        trace.stages.push(StageRecord {
            i,
            x,
            before,
            color: StageColor::Unset,
            events,
            survivors: v.clone(),
            graph: None,
        });

        let inner = star_extraction(&star, i, a - 1, c)?;
        if inner.len() + 1 >= k {
            let mut verts: Vec<u32> = inner.vertices[..k - 1].iter().map(|&j| xs[j as usize - 1]).collect();
            verts.push(v[0]);
            trace.termination = Termination::TargetReached;
            trace.final_vertex = Some(v[0]);
            return Ok(Extraction {
                set: HomogeneousSet::new(verts, inner.color),
                trace,
            });
        }
        best = Some(inner);
        i += 1;
    }

    // Out of survivors: the last inner set still lifts, with the one
    // remaining survivor as its last vertex.
    let inner = best.expect("n >= a leaves room for stage a-1");
    let last = v[0];
    let mut verts: Vec<u32> = inner.vertices.iter().map(|&j| xs[j as usize - 1]).collect();
    verts.push(last);
    trace.termination = Termination::VerticesExhausted;
    trace.final_vertex = Some(last);
    Ok(Extraction {
        set: HomogeneousSet::new(verts, inner.color),
        trace,
    })
}

/// Extraction on `COL**` over stage indices `1..=m`.
fn star_extraction(star: &BTreeMap<Vec<u32>, Color>, m: u32, uniformity: usize, c: u8) -> Result<HomogeneousSet> {
    let g = ColoredHypergraph::from_fn(m, uniformity, c, |e| star[e])?;
    homogeneous_by_stages(&g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{BLUE, RED};

    #[test]
    fn constant_blue_takes_first_vertices() {
        let g = ColoredHypergraph::constant(9, 3, 2, BLUE).unwrap();
        let r = extract_erdos_rado(&g, 4).unwrap();
        assert_eq!(r.set.vertices, vec![1, 2, 3, 4]);
        assert_eq!(r.set.color, BLUE);
        assert_eq!(r.trace.termination, Termination::TargetReached);
    }

    #[test]
    fn stage_sizes_follow_the_construction() {
        let g = ColoredHypergraph::from_fn(40, 3, 2, |e| ((e[0] * e[1] + e[2]) % 3 == 0) as Color).unwrap();
        let r = extract_erdos_rado(&g, 4).unwrap();
        for s in &r.trace.stages {
            assert_eq!(s.events.len(), s.i as usize - 1);
            for e in &s.events {
                assert!(e.after * 2 >= e.before);
            }
        }
        assert!(r.set.holds_in(&g));
    }

    #[test]
    fn rejects_points() {
        let g = ColoredHypergraph::constant(5, 1, 2, RED).unwrap();
        assert!(extract_erdos_rado(&g, 3).is_err());
    }
}
