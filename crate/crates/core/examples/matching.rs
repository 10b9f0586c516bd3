//! The matching engines on their own: cardinality, weight, and brute force.

use barpack::matching::{
    brute_force_matching, max_cardinality_matching, max_weight_matching, Graph, Objective,
};

fn main() -> barpack::Result<()> {
    // A 5-cycle with a pendant vertex; the odd cycle needs a blossom.
    let g = Graph::new(
        6,
        vec![
            (0, 1, 1),
            (1, 2, 2),
            (2, 3, 1),
            (3, 4, 2),
            (4, 0, 1),
            (4, 5, 2),
        ],
    )?;
    let card = max_cardinality_matching(&g);
    let weight = max_weight_matching(&g);
    let brute = brute_force_matching(&g, Objective::Weight)?;
    println!("cardinality: {} pairs {:?}", card.len(), card.pairs(&g));
    println!("weight: {} pairs {:?}", weight.weight(&g), weight.pairs(&g));
    println!("brute-force weight: {}", brute.weight(&g));
    Ok(())
}
