use barpack::matching::{
    brute_force_matching, max_cardinality_matching, max_weight_matching, Graph, Objective,
    BRUTE_FORCE_EDGE_LIMIT,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut ChaCha8Rng, max_vertices: usize, max_weight: u64) -> Graph {
    let n = rng.gen_range(0..=max_vertices);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    let m = rng.gen_range(0..=pairs.len().min(BRUTE_FORCE_EDGE_LIMIT));
    let edges = pairs[..m]
        .iter()
        .map(|&(u, v)| {
            let (u, v) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
            (u, v, rng.gen_range(1..=max_weight))
        })
        .collect();
    Graph::new(n, edges).unwrap()
}

#[test]
fn weighted_solver_matches_brute_force_on_wide_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1500 {
        let g = random_graph(&mut rng, 10, 20);
        let m = max_weight_matching(&g);
        assert!(m.is_valid(&g));
        let best = brute_force_matching(&g, Objective::Weight).unwrap();
        assert_eq!(m.weight(&g), best.weight(&g), "graph {g:?}");
    }
}

#[test]
fn cardinality_solver_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..1500 {
        let g = random_graph(&mut rng, 10, 1);
        let m = max_cardinality_matching(&g);
        assert!(m.is_valid(&g));
        let best = brute_force_matching(&g, Objective::Cardinality).unwrap();
        assert_eq!(m.len(), best.len(), "graph {g:?}");
    }
}

#[test]
fn solvers_agree_on_unit_weights_for_larger_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let n = rng.gen_range(10..40);
        let p: f64 = rng.gen_range(0.05..0.5);
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = Graph::unweighted(n, &edges).unwrap();
        let card = max_cardinality_matching(&g);
        let weighted = max_weight_matching(&g);
        assert!(card.is_valid(&g) && weighted.is_valid(&g));
        assert_eq!(card.len() as u64, weighted.weight(&g));
    }
}

#[test]
fn adding_an_edge_never_lowers_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut checked = 0;
    while checked < 300 {
        let g = random_graph(&mut rng, 10, 2);
        let n = g.vertex_count();
        if n < 2 {
            continue;
        }
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let Ok(bigger) = g.with_edge(u, v, rng.gen_range(1..=2)) else {
            continue;
        };
        let before = max_weight_matching(&g).weight(&g);
        let after = max_weight_matching(&bigger).weight(&bigger);
        assert!(after >= before);
        assert!(max_cardinality_matching(&bigger).len() >= max_cardinality_matching(&g).len());
        checked += 1;
    }
}

#[test]
fn results_are_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..100 {
        let g = random_graph(&mut rng, 10, 2);
        assert_eq!(max_weight_matching(&g), max_weight_matching(&g));
        assert_eq!(max_cardinality_matching(&g), max_cardinality_matching(&g));
    }
}
