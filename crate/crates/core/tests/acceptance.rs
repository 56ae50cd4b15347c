use std::time::{Duration, Instant};

use suture_core::verify::{
    annulus_relations, catalan_counts, disk_ranks, distinctness, gluing_tables, lift_infeasible, multiplicativity, oracle_equivalence, superposition, vanishing,
};
use suture_core::{Check, MarkedSurface};

struct Criterion {
    id: usize,
    limit: Duration,
    run: fn() -> Vec<Check>,
}

fn vanishing_all() -> Vec<Check> {
    let mut out: Vec<Check> = (1..=4).map(|n| vanishing(&format!("disk n={n}"), &MarkedSurface::disk(2 * n).unwrap(), 0)).collect();
    out.push(vanishing("annulus 2+2", &MarkedSurface::annulus(2, 2).unwrap(), 4));
    out.push(vanishing("punctured torus", &MarkedSurface::punctured_torus(2).unwrap(), 4));
    out
}

fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion { id: 1, limit: secs(1), run: || vec![catalan_counts()] },
        Criterion { id: 2, limit: secs(60), run: || vec![disk_ranks(6)] },
        Criterion { id: 3, limit: secs(60), run: || vec![distinctness(6)] },
        Criterion { id: 4, limit: secs(10), run: || vec![superposition()] },
        Criterion { id: 5, limit: secs(60), run: || vec![annulus_relations()] },
        Criterion { id: 6, limit: secs(300), run: vanishing_all },
        Criterion { id: 7, limit: secs(10), run: || vec![gluing_tables()] },
        Criterion { id: 8, limit: secs(10), run: || vec![lift_infeasible()] },
        Criterion { id: 9, limit: secs(60), run: || vec![oracle_equivalence(4)] },
        Criterion { id: 10, limit: secs(60), run: || vec![multiplicativity()] },
    ]
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let checks = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        let passed = in_time && checks.iter().all(|k| k.passed);
        let detail: Vec<String> = checks.iter().map(|k| format!("{}: {}", k.name, k.detail)).collect();
        println!(
            "criterion {:>2} {} [{:.3}s / limit {}s] {}",
            c.id,
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            detail.join("; ")
        );
        if !passed {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
