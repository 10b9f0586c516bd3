//! Maximum-weight matching by the primal-dual blossom method (Edmonds,
//! Galil), O(V^3).
//!
//! Dual variables are kept doubled for vertices so that with integer edge
//! weights every quantity stays an integer: `slack(k) = dual[u] + dual[v] -
//! 2 w(k)`. Edge endpoints are addressed as `p = 2k` / `p = 2k + 1`, and
//! `p ^ 1` is the opposite end of the same edge.

use super::{Graph, Matching};

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Label {
    Free,
    Outer,
    Inner,
    /// Temporary mark used while scanning for a blossom base.
    Breadcrumb,
}

/// Maximum-weight matching of `g` (not necessarily of maximum cardinality).
pub fn max_weight_matching(g: &Graph) -> Matching {
    if g.edges().is_empty() {
        return Matching::default();
    }
    let mut solver = Solver::new(g);
    solver.solve();
    let mates: Vec<_> = solver
        .mate
        .iter()
        .map(|&p| (p != NONE).then(|| (solver.endpoint[p], p / 2)))
        .collect();
    Matching::from_mates(&mates)
}

struct Solver {
    nvertex: usize,
    edges: Vec<(usize, usize, i64)>,
    endpoint: Vec<usize>,
    /// Per vertex, the remote endpoints of incident edges.
    neighbend: Vec<Vec<usize>>,
    /// Per vertex, the remote endpoint of its matched edge.
    mate: Vec<usize>,
    label: Vec<Label>,
    /// Endpoint through which a vertex or top-level blossom got its label.
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Option<Vec<usize>>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<i64>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

impl Solver {
    fn new(g: &Graph) -> Self {
        let nvertex = g.vertex_count();
        let edges: Vec<(usize, usize, i64)> = g
            .edges()
            .iter()
            .map(|&(u, v, w)| (u, v, w as i64))
            .collect();
        let maxweight = edges.iter().map(|e| e.2).max().unwrap_or(0).max(0);
        let endpoint = (0..2 * edges.len())
            .map(|p| {
                if p % 2 == 0 {
                    edges[p / 2].0
                } else {
                    edges[p / 2].1
                }
            })
            .collect();
        let mut neighbend = vec![Vec::new(); nvertex];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        let mut blossombase: Vec<usize> = (0..nvertex).collect();
        blossombase.extend(std::iter::repeat_n(NONE, nvertex));
        let mut dualvar = vec![maxweight; nvertex];
        dualvar.extend(std::iter::repeat_n(0, nvertex));
        Solver {
            nvertex,
            endpoint,
            neighbend,
            mate: vec![NONE; nvertex],
            label: vec![Label::Free; 2 * nvertex],
            labelend: vec![NONE; 2 * nvertex],
            inblossom: (0..nvertex).collect(),
            blossomparent: vec![NONE; 2 * nvertex],
            blossomchilds: vec![Vec::new(); 2 * nvertex],
            blossombase,
            blossomendps: vec![Vec::new(); 2 * nvertex],
            bestedge: vec![NONE; 2 * nvertex],
            blossombestedges: vec![None; 2 * nvertex],
            unusedblossoms: (nvertex..2 * nvertex).collect(),
            dualvar,
            allowedge: vec![false; edges.len()],
            queue: Vec::new(),
            edges,
        }
    }

    fn slack(&self, k: usize) -> i64 {
        let (i, j, w) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - 2 * w
    }

    fn leaves(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![b];
        while let Some(t) = stack.pop() {
            if t < self.nvertex {
                out.push(t);
            } else {
                stack.extend(self.blossomchilds[t].iter().rev());
            }
        }
        out
    }

    fn assign_label(&mut self, w: usize, t: Label, p: usize) {
        let b = self.inblossom[w];
        debug_assert!(self.label[w] == Label::Free && self.label[b] == Label::Free);
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = NONE;
        self.bestedge[b] = NONE;
        match t {
            Label::Outer => {
                let leaves = self.leaves(b);
                self.queue.extend(leaves);
            }
            Label::Inner => {
                let base = self.blossombase[b];
                let mb = self.mate[base];
                debug_assert!(mb != NONE);
                self.assign_label(self.endpoint[mb], Label::Outer, mb ^ 1);
            }
            _ => unreachable!("only outer and inner labels are assigned"),
        }
    }

    /// Traces back from `v` and `w` to find a new blossom's base, or `NONE`
    /// if they lie in different trees (an augmenting path exists).
    fn scan_blossom(&mut self, mut v: usize, mut w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NONE;
        while v != NONE || w != NONE {
            let mut b = self.inblossom[v];
            if self.label[b] == Label::Breadcrumb {
                base = self.blossombase[b];
                break;
            }
            debug_assert!(self.label[b] == Label::Outer);
            path.push(b);
            self.label[b] = Label::Breadcrumb;
            if self.labelend[b] == NONE {
                v = NONE;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                debug_assert!(self.label[b] == Label::Inner);
                v = self.endpoint[self.labelend[b]];
            }
            if w != NONE {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = Label::Outer;
        }
        base
    }

    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unusedblossoms.pop().expect("blossom slot available");
        self.blossombase[b] = base;
        self.blossomparent[b] = NONE;
        self.blossomparent[bb] = b;
        let mut path = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.blossomparent[bv] = b;
            path.push(bv);
            endps.push(self.labelend[bv]);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        path.push(bb);
        path.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.blossomparent[bw] = b;
            path.push(bw);
            endps.push(self.labelend[bw] ^ 1);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }
        debug_assert!(self.label[bb] == Label::Outer);
        self.blossomchilds[b] = path.clone();
        self.blossomendps[b] = endps;
        self.label[b] = Label::Outer;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;
        for leaf in self.leaves(b) {
            if self.label[self.inblossom[leaf]] == Label::Inner {
                self.queue.push(leaf);
            }
            self.inblossom[leaf] = b;
        }

        let mut bestedgeto = vec![NONE; 2 * self.nvertex];
        for &sub in &path {
            let nblists: Vec<Vec<usize>> = match self.blossombestedges[sub].take() {
                Some(list) => vec![list],
                None => self
                    .leaves(sub)
                    .into_iter()
                    .map(|leaf| self.neighbend[leaf].iter().map(|p| p / 2).collect())
                    .collect(),
            };
            for nblist in nblists {
                for k in nblist {
                    let (mut i, mut j, _) = self.edges[k];
                    if self.inblossom[j] == b {
                        std::mem::swap(&mut i, &mut j);
                    }
                    let _ = i;
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == Label::Outer
                        && (bestedgeto[bj] == NONE || self.slack(k) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = k;
                    }
                }
            }
            self.bestedge[sub] = NONE;
        }
        let best: Vec<usize> = bestedgeto.into_iter().filter(|&k| k != NONE).collect();
        self.bestedge[b] = NONE;
        for &k in &best {
            if self.bestedge[b] == NONE || self.slack(k) < self.slack(self.bestedge[b]) {
                self.bestedge[b] = k;
            }
        }
        self.blossombestedges[b] = Some(best);
    }

    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        let childs = self.blossomchilds[b].clone();
        for &s in &childs {
            self.blossomparent[s] = NONE;
            if s < self.nvertex {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for leaf in self.leaves(s) {
                    self.inblossom[leaf] = s;
                }
            }
        }

        if !endstage && self.label[b] == Label::Inner {
            // The inner blossom dissolves: relabel the even-length path of
            // sub-blossoms from the entry child to the base.
            let len = childs.len() as isize;
            let at = |j: isize| j.rem_euclid(len) as usize;
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let mut j = childs
                .iter()
                .position(|&c| c == entrychild)
                .expect("entry child belongs to blossom") as isize;
            let (jstep, endptrick): (isize, usize) = if j & 1 == 1 {
                j -= len;
                (1, 0)
            } else {
                (-1, 1)
            };
            let endps = self.blossomendps[b].clone();
            let mut p = self.labelend[b];
            while j != 0 {
                let q = self.endpoint[p ^ 1];
                self.label[q] = Label::Free;
                let r = self.endpoint[endps[at(j - endptrick as isize)] ^ endptrick ^ 1];
                self.label[r] = Label::Free;
                self.assign_label(q, Label::Inner, p);
                self.allowedge[endps[at(j - endptrick as isize)] / 2] = true;
                j += jstep;
                p = endps[at(j - endptrick as isize)] ^ endptrick;
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            let bv = childs[at(j)];
            let q = self.endpoint[p ^ 1];
            self.label[q] = Label::Inner;
            self.label[bv] = Label::Inner;
            self.labelend[q] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = NONE;
            j += jstep;
            while childs[at(j)] != entrychild {
                let bv = childs[at(j)];
                if self.label[bv] == Label::Outer {
                    j += jstep;
                    continue;
                }
                let reached = self
                    .leaves(bv)
                    .into_iter()
                    .find(|&v| self.label[v] != Label::Free);
                if let Some(v) = reached {
                    debug_assert!(self.label[v] == Label::Inner);
                    debug_assert!(self.inblossom[v] == bv);
                    self.label[v] = Label::Free;
                    let m = self.endpoint[self.mate[self.blossombase[bv]]];
                    self.label[m] = Label::Free;
                    let le = self.labelend[v];
                    self.assign_label(v, Label::Inner, le);
                }
                j += jstep;
            }
        }

        self.label[b] = Label::Free;
        self.labelend[b] = NONE;
        self.blossomchilds[b].clear();
        self.blossomendps[b].clear();
        self.blossombase[b] = NONE;
        self.blossombestedges[b] = None;
        self.bestedge[b] = NONE;
        self.unusedblossoms.push(b);
    }

    /// Swaps matched and unmatched edges on the even path inside blossom `b`
    /// from vertex `v` to the base, making `v` the new base.
    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= self.nvertex {
            self.augment_blossom(t, v);
        }
        let len = self.blossomchilds[b].len() as isize;
        let at = |j: isize| j.rem_euclid(len) as usize;
        let i = self.blossomchilds[b]
            .iter()
            .position(|&c| c == t)
            .expect("child belongs to blossom");
        let mut j = i as isize;
        let (jstep, endptrick): (isize, usize) = if i & 1 == 1 {
            j -= len;
            (1, 0)
        } else {
            (-1, 1)
        };
        while j != 0 {
            j += jstep;
            let t = self.blossomchilds[b][at(j)];
            let p = self.blossomendps[b][at(j - endptrick as isize)] ^ endptrick;
            if t >= self.nvertex {
                self.augment_blossom(t, self.endpoint[p]);
            }
            j += jstep;
            let t = self.blossomchilds[b][at(j)];
            if t >= self.nvertex {
                self.augment_blossom(t, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert_eq!(self.blossombase[b], v);
    }

    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                debug_assert!(self.label[bs] == Label::Outer);
                if bs >= self.nvertex {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == NONE {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                debug_assert!(self.label[bt] == Label::Inner);
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                debug_assert_eq!(self.blossombase[bt], t);
                if bt >= self.nvertex {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    fn solve(&mut self) {
        let n = self.nvertex;
        for _stage in 0..n {
            self.label.iter_mut().for_each(|l| *l = Label::Free);
            self.bestedge.iter_mut().for_each(|e| *e = NONE);
            for slot in &mut self.blossombestedges[n..] {
                *slot = None;
            }
            self.allowedge.iter_mut().for_each(|a| *a = false);
            self.queue.clear();
            for v in 0..n {
                if self.mate[v] == NONE && self.label[self.inblossom[v]] == Label::Free {
                    self.assign_label(v, Label::Outer, NONE);
                }
            }

            let mut augmented = false;
            loop {
                while !augmented {
                    let Some(v) = self.queue.pop() else { break };
                    debug_assert!(self.label[self.inblossom[v]] == Label::Outer);
                    for idx in 0..self.neighbend[v].len() {
                        let p = self.neighbend[v][idx];
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowedge[k] = true;
                            }
                        }
                        if self.allowedge[k] {
                            match self.label[self.inblossom[w]] {
                                Label::Free => self.assign_label(w, Label::Inner, p ^ 1),
                                Label::Outer => {
                                    let base = self.scan_blossom(v, w);
                                    if base != NONE {
                                        self.add_blossom(base, k);
                                    } else {
                                        self.augment_matching(k);
                                        augmented = true;
                                        break;
                                    }
                                }
                                _ => {
                                    if self.label[w] == Label::Free {
                                        self.label[w] = Label::Inner;
                                        self.labelend[w] = p ^ 1;
                                    }
                                }
                            }
                        } else if self.label[self.inblossom[w]] == Label::Outer {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == NONE || kslack < self.slack(self.bestedge[b]) {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == Label::Free
                            && (self.bestedge[w] == NONE || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                }
                if augmented {
                    break;
                }

                // Dual adjustment. Type 1 means no further improvement.
                let mut deltatype = 1;
                let mut delta = self.dualvar[..n].iter().copied().min().unwrap_or(0);
                let mut deltaedge = NONE;
                let mut deltablossom = NONE;
                for v in 0..n {
                    if self.label[self.inblossom[v]] == Label::Free && self.bestedge[v] != NONE {
                        let d = self.slack(self.bestedge[v]);
                        if d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * n {
                    if self.blossomparent[b] == NONE
                        && self.label[b] == Label::Outer
                        && self.bestedge[b] != NONE
                    {
                        let kslack = self.slack(self.bestedge[b]);
                        debug_assert!(kslack % 2 == 0);
                        let d = kslack / 2;
                        if d < delta {
                            delta = d;
                            deltatype = 3;
                            deltaedge = self.bestedge[b];
                        }
                    }
                }
                for b in n..2 * n {
                    if self.blossombase[b] != NONE
                        && self.blossomparent[b] == NONE
                        && self.label[b] == Label::Inner
                        && self.dualvar[b] < delta
                    {
                        delta = self.dualvar[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }

                for v in 0..n {
                    match self.label[self.inblossom[v]] {
                        Label::Outer => self.dualvar[v] -= delta,
                        Label::Inner => self.dualvar[v] += delta,
                        _ => {}
                    }
                }
                for b in n..2 * n {
                    if self.blossombase[b] != NONE && self.blossomparent[b] == NONE {
                        match self.label[b] {
                            Label::Outer => self.dualvar[b] += delta,
                            Label::Inner => self.dualvar[b] -= delta,
                            _ => {}
                        }
                    }
                }

                match deltatype {
                    1 => break,
                    2 => {
                        self.allowedge[deltaedge] = true;
                        let (mut i, j, _) = self.edges[deltaedge];
                        if self.label[self.inblossom[i]] == Label::Free {
                            i = j;
                        }
                        debug_assert!(self.label[self.inblossom[i]] == Label::Outer);
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowedge[deltaedge] = true;
                        let (i, _, _) = self.edges[deltaedge];
                        debug_assert!(self.label[self.inblossom[i]] == Label::Outer);
                        self.queue.push(i);
                    }
                    _ => self.expand_blossom(deltablossom, false),
                }
            }

            if !augmented {
                break;
            }
            for b in n..2 * n {
                if self.blossomparent[b] == NONE
                    && self.blossombase[b] != NONE
                    && self.label[b] == Label::Outer
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weight_of(n: usize, edges: &[(usize, usize, u64)]) -> u64 {
        let g = Graph::new(n, edges.to_vec()).unwrap();
        let m = max_weight_matching(&g);
        assert!(m.is_valid(&g));
        m.weight(&g)
    }

    #[test]
    fn path_prefers_heavy_middle() {
        let g = Graph::new(4, vec![(0, 1, 1), (1, 2, 3), (2, 3, 1)]).unwrap();
        let m = max_weight_matching(&g);
        assert_eq!(m.pairs(&g), vec![(1, 2)]);
        assert_eq!(m.weight(&g), 3);
    }

    #[test]
    fn path_prefers_outer_pair() {
        let g = Graph::new(4, vec![(0, 1, 2), (1, 2, 3), (2, 3, 2)]).unwrap();
        let m = max_weight_matching(&g);
        assert_eq!(m.pairs(&g), vec![(0, 1), (2, 3)]);
        assert_eq!(m.weight(&g), 4);
    }

    #[test]
    fn empty_and_single() {
        assert_eq!(weight_of(3, &[]), 0);
        assert_eq!(weight_of(2, &[(0, 1, 5)]), 5);
    }

    // Cases from the classic blossom test suite: they force creation,
    // relabeling and expansion of nested blossoms.
    #[test]
    fn s_blossom_and_augment() {
        assert_eq!(
            weight_of(4, &[(0, 1, 8), (0, 2, 9), (1, 2, 10), (2, 3, 7)]),
            15
        );
        assert_eq!(
            weight_of(
                6,
                &[
                    (0, 1, 8),
                    (0, 2, 9),
                    (1, 2, 10),
                    (2, 3, 7),
                    (0, 5, 5),
                    (3, 4, 6)
                ]
            ),
            21
        );
    }

    #[test]
    fn t_blossom_relabel_and_expand() {
        assert_eq!(
            weight_of(
                6,
                &[
                    (0, 1, 9),
                    (0, 2, 8),
                    (1, 2, 10),
                    (0, 3, 5),
                    (3, 4, 4),
                    (0, 5, 3)
                ]
            ),
            17
        );
        assert_eq!(
            weight_of(
                6,
                &[
                    (0, 1, 9),
                    (0, 2, 8),
                    (1, 2, 10),
                    (0, 3, 5),
                    (3, 4, 3),
                    (0, 5, 4)
                ]
            ),
            17
        );
        assert_eq!(
            weight_of(
                6,
                &[
                    (0, 1, 9),
                    (0, 2, 8),
                    (1, 2, 10),
                    (0, 3, 5),
                    (3, 4, 3),
                    (2, 5, 4)
                ]
            ),
            16
        );
    }

    #[test]
    fn nested_blossoms() {
        assert_eq!(
            weight_of(
                6,
                &[
                    (0, 1, 9),
                    (0, 2, 9),
                    (1, 2, 10),
                    (1, 3, 8),
                    (2, 4, 8),
                    (3, 4, 10),
                    (4, 5, 6)
                ]
            ),
            23
        );
        assert_eq!(
            weight_of(
                8,
                &[
                    (0, 1, 10),
                    (0, 6, 10),
                    (1, 2, 12),
                    (2, 3, 20),
                    (2, 4, 20),
                    (3, 4, 25),
                    (4, 5, 10),
                    (5, 6, 10),
                    (6, 7, 8)
                ]
            ),
            48
        );
        assert_eq!(
            weight_of(
                10,
                &[
                    (0, 1, 45),
                    (0, 4, 45),
                    (1, 2, 50),
                    (2, 3, 45),
                    (3, 4, 50),
                    (0, 5, 30),
                    (2, 8, 35),
                    (3, 7, 35),
                    (4, 6, 26),
                    (8, 9, 5)
                ]
            ),
            146
        );
        assert_eq!(
            weight_of(
                10,
                &[
                    (0, 1, 45),
                    (0, 4, 45),
                    (1, 2, 50),
                    (2, 3, 45),
                    (3, 4, 50),
                    (0, 5, 30),
                    (2, 8, 35),
                    (3, 7, 26),
                    (4, 6, 40),
                    (8, 9, 5)
                ]
            ),
            151
        );
    }
}
