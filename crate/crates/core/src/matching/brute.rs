use super::{Graph, Matching, Objective};
use crate::error::{Error, Result};

pub const BRUTE_FORCE_EDGE_LIMIT: usize = 24;

/// Optimum over all matchings of `g`, by exhaustive include/exclude search.
pub fn brute_force_matching(g: &Graph, objective: Objective) -> Result<Matching> {
    if g.edges().len() > BRUTE_FORCE_EDGE_LIMIT {
        return Err(Error::TooLarge(g.edges().len()));
    }
    let mut search = Search {
        g,
        objective,
        used: vec![false; g.vertex_count()],
        current: Vec::new(),
        best: Vec::new(),
        best_value: 0,
    };
    search.visit(0, 0);
    Ok(Matching::from_edges(search.best))
}

struct Search<'a> {
    g: &'a Graph,
    objective: Objective,
    used: Vec<bool>,
    current: Vec<usize>,
    best: Vec<usize>,
    best_value: u64,
}

impl Search<'_> {
    fn visit(&mut self, k: usize, value: u64) {
        if k == self.g.edges().len() {
            if value > self.best_value {
                self.best_value = value;
                self.best = self.current.clone();
            }
            return;
        }
        let (u, v, w) = self.g.edges()[k];
        if !self.used[u] && !self.used[v] {
            self.used[u] = true;
            self.used[v] = true;
            self.current.push(k);
            let gain = match self.objective {
                Objective::Cardinality => 1,
                Objective::Weight => w,
            };
            self.visit(k + 1, value + gain);
            self.current.pop();
            self.used[u] = false;
            self.used[v] = false;
        }
        self.visit(k + 1, value);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph() {
        let g = Graph::new(0, vec![]).unwrap();
        let m = brute_force_matching(&g, Objective::Weight).unwrap();
        assert!(m.is_empty());
        assert_eq!(m.weight(&g), 0);
    }

    #[test]
    fn single_edge() {
        let g = Graph::new(2, vec![(0, 1, 2)]).unwrap();
        let m = brute_force_matching(&g, Objective::Weight).unwrap();
        assert_eq!(m.edges(), &[0]);
    }

    #[test]
    fn five_cycle() {
        let g = Graph::unweighted(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let m = brute_force_matching(&g, Objective::Cardinality).unwrap();
        assert_eq!(m.len(), 2);
        assert!(m.is_valid(&g));
    }

    #[test]
    fn refuses_large_graphs() {
        let edges: Vec<_> = (0..9)
            .flat_map(|u| (u + 1..9).map(move |v| (u, v)))
            .collect();
        let g = Graph::unweighted(9, &edges).unwrap();
        assert_eq!(
            brute_force_matching(&g, Objective::Cardinality),
            Err(Error::TooLarge(36))
        );
    }
}
