use std::collections::VecDeque;

use super::{Graph, Matching};

/// Maximum-cardinality matching by repeated augmenting-path search with
/// blossom contraction. O(V^3).
pub fn max_cardinality_matching(g: &Graph) -> Matching {
    let mut search = AugmentingSearch::new(g);
    for root in 0..g.vertex_count() {
        if search.mate[root].is_none() {
            if let Some(end) = search.find_path(root) {
                search.augment(end);
            }
        }
    }
    Matching::from_mates(&search.mate)
}

struct AugmentingSearch {
    adj: Vec<Vec<(usize, usize)>>,
    /// `(partner, edge index)`.
    mate: Vec<Option<(usize, usize)>>,
    /// Tree parent of an odd vertex, with the connecting edge.
    parent: Vec<Option<(usize, usize)>>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
    queue: VecDeque<usize>,
}

impl AugmentingSearch {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        AugmentingSearch {
            adj: g.adjacency(),
            mate: vec![None; n],
            parent: vec![None; n],
            base: (0..n).collect(),
            in_tree: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn partner(&self, v: usize) -> Option<usize> {
        self.mate[v].map(|(w, _)| w)
    }

    /// Lowest common ancestor of two even vertices in the alternating tree.
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.base.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.partner(a) {
                None => break,
                Some(m) => a = self.parent[m].expect("odd vertex has a parent").0,
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            let m = self.partner(b).expect("non-root even vertex is matched");
            b = self.parent[m].expect("odd vertex has a parent").0;
        }
    }

    fn mark_path(
        &self,
        mut v: usize,
        b: usize,
        mut child: (usize, usize),
        marks: &mut [bool],
        parent: &mut [Option<(usize, usize)>],
    ) {
        while self.base[v] != b {
            let m = self.partner(v).expect("blossom path vertex is matched");
            marks[self.base[v]] = true;
            marks[self.base[m]] = true;
            parent[v] = Some(child);
            let (up, k) = parent[m].expect("odd vertex has a parent");
            child = (m, k);
            v = up;
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.base.len();
        self.in_tree.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|p| *p = None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.queue.push_back(root);
        self.in_tree[root] = true;

        while let Some(v) = self.queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let (to, k) = self.adj[v][i];
                if self.base[v] == self.base[to] || self.partner(v) == Some(to) {
                    continue;
                }
                let to_is_even =
                    to == root || self.partner(to).is_some_and(|m| self.parent[m].is_some());
                if to_is_even {
                    let cur = self.lca(v, to);
                    let mut marks = vec![false; n];
                    let mut parent = std::mem::take(&mut self.parent);
                    self.mark_path(v, cur, (to, k), &mut marks, &mut parent);
                    self.mark_path(to, cur, (v, k), &mut marks, &mut parent);
                    self.parent = parent;
                    for u in 0..n {
                        if marks[self.base[u]] {
                            self.base[u] = cur;
                            if !self.in_tree[u] {
                                self.in_tree[u] = true;
                                self.queue.push_back(u);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some((v, k));
                    match self.partner(to) {
                        None => return Some(to),
                        Some(m) => {
                            self.in_tree[m] = true;
                            self.queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while let Some((pv, k)) = self.parent[v] {
            let next = self.partner(pv);
            self.mate[v] = Some((pv, k));
            self.mate[pv] = Some((v, k));
            match next {
                Some(w) => v = w,
                None => break,
            }
        }
    }
}
