use hyperramsey::extract::{extract_cfs3, extract_erdos_rado, extract_ramsey, Method};
use hyperramsey::hypergraph::search::DEFAULT_NODE_BUDGET;
use hyperramsey::hypergraph::{ColoredHypergraph, Coloring, BLUE, RED};
use hyperramsey::verify::{
    brute_force_ramsey, check_witness, er_unfloored_halving, inject_duplicate_graph, mutate_key_record,
    random_coloring, validate_run, LawStatus, RamseyQuery,
};

#[test]
fn exact_values_come_with_witnesses() {
    for (a, k, c) in [(1, 3, 2), (1, 4, 3), (2, 3, 2), (2, 2, 3), (3, 3, 2), (4, 4, 3)] {
        let out = brute_force_ramsey(&RamseyQuery::new(a, k, c)).unwrap();
        let value = out.exact().unwrap_or_else(|| panic!("R({a},{k},{c}) not settled: {out:?}"));
        let w = out.witness();
        assert_eq!(w.order(), value - 1);
        assert!(check_witness(w, k, DEFAULT_NODE_BUDGET).unwrap().is_witness(), "R({a},{k},{c})");
    }
}

#[test]
fn every_unmutated_run_passes_and_every_mutation_fails() {
    let mut mutated = 0;
    for seed in 0..40u64 {
        let (a, c) = (2 + (seed % 3) as usize, 2 + (seed % 2) as u8);
        let g = random_coloring(if a == 4 { 25 } else { 50 }, a, c, seed).unwrap();
        for method in Method::ALL {
            let Ok(run) = method.run(&g, a + 1) else { continue };
            assert!(validate_run(&g, &run).unwrap().all_pass(), "{method} seed {seed}");
            for choice in 0..5 {
                if let Some((bad, what)) = mutate_key_record(&run, seed * 7 + choice) {
                    mutated += 1;
                    let report = validate_run(&g, &bad).unwrap();
                    assert!(!report.all_pass(), "{method} seed {seed}: {what}");
                }
            }
        }
    }
    assert!(mutated > 300);
}

#[test]
fn duplicated_graphs_are_caught() {
    for seed in 0..10 {
        let g = random_coloring(80, 3, 2, seed).unwrap();
        let run = extract_cfs3(&g, 5).unwrap();
        let Some(bad) = inject_duplicate_graph(&run) else { continue };
        let report = validate_run(&g, &bad).unwrap();
        assert_eq!(report.law("claim1-distinct").unwrap().status, LawStatus::Fail);
    }
}

#[test]
fn traces_survive_text_and_stay_valid() {
    let g = random_coloring(60, 3, 3, 11).unwrap();
    for run in [extract_ramsey(&g, 4).unwrap(), extract_erdos_rado(&g, 4).unwrap(), extract_cfs3(&g, 4).unwrap()] {
        let back = hyperramsey::extract::Extraction::parse(&run.to_text()).unwrap();
        assert!(validate_run(&g, &back).unwrap().all_pass());
    }
}

#[test]
fn unfloored_halving_fails_on_an_even_split() {
    // four vertices: stage 2 halves {3, 4} by COL(1, 2, y), which splits evenly
    let g = ColoredHypergraph::from_fn(4, 3, 2, |e| if e == [1, 2, 4] { BLUE } else { RED }).unwrap();
    let run = extract_erdos_rado(&g, 3).unwrap();
    let report = validate_run(&g, &run).unwrap();
    assert!(report.all_pass(), "{report}");
    assert_eq!(report.law("halving").unwrap().status, LawStatus::Pass);
    assert!(er_unfloored_halving(&run.trace).is_some());
}

#[test]
fn foreign_traces_are_rejected() {
    let g = random_coloring(30, 3, 2, 1).unwrap();
    let run = extract_cfs3(&g, 4).unwrap();
    let mut text = run.to_text();
    text = text.replacen("n=30", "n=31", 1);
    let moved = hyperramsey::extract::Extraction::parse(&text).unwrap();
    assert!(validate_run(&g, &moved).is_err());
}
