//! Exact clique search on small dense graphs.
//!
//! Vertex sets are bitsets; branching follows greedy colour classes so that a
//! vertex of colour `c` can only extend the current clique by `c` more vertices.
//! An optional partition of the vertices into groups with per-group caps gives a
//! second bound (at most two lines per omega-orbit, at most one rank-four bundle
//! per omega-orbit).

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = BitSet::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * 64 + w.trailing_zeros() as usize)
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn intersection_len(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + t)
            })
        })
    }
}

/// Undirected simple graph on `0..n`.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<BitSet>,
    groups: Vec<(BitSet, usize)>,
}

impl Graph {
    pub fn from_predicate(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adj = vec![BitSet::new(n); n];
        for a in 0..n {
            for b in a + 1..n {
                if edge(a, b) {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        Graph {
            n,
            adj,
            groups: Vec::new(),
        }
    }

    /// Declares that a clique holds at most `cap` vertices of `members`.
    pub fn add_group_cap(&mut self, members: impl IntoIterator<Item = usize>, cap: usize) {
        let mut s = BitSet::new(self.n);
        for v in members {
            s.insert(v);
        }
        self.groups.push((s, cap));
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbours(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    fn group_bound(&self, p: &BitSet) -> usize {
        if self.groups.is_empty() {
            return usize::MAX;
        }
        let grouped: usize = self.groups.iter().map(|(g, cap)| p.intersection_len(g).min(*cap)).sum();
        let mut rest = p.clone();
        for (g, _) in &self.groups {
            rest.difference_with(g);
        }
        grouped + rest.len()
    }

    /// Greedy sequential colouring; returns vertices ordered by colour with their colours.
    fn colour_order(&self, p: &BitSet) -> Vec<(usize, usize)> {
        let mut uncoloured = p.clone();
        let mut out = Vec::with_capacity(p.len());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                avail.difference_with(&self.adj[v]);
                uncoloured.remove(v);
                out.push((v, colour));
            }
        }
        out
    }

    /// Calls `visit` on every clique of exactly `target` vertices that contains
    /// `required` and otherwise uses vertices of `candidates`. `visit` returns
    /// false to stop the search. Returns false if stopped early.
    pub fn for_each_clique_of_size(
        &self,
        target: usize,
        required: &[usize],
        candidates: &BitSet,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let mut p = candidates.clone();
        for &r in required {
            p = p.intersection(&self.adj[r]);
        }
        let mut r = required.to_vec();
        self.expand(target, &mut r, p, visit)
    }

    fn expand(
        &self,
        target: usize,
        r: &mut Vec<usize>,
        p: BitSet,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if r.len() == target {
            return visit(r);
        }
        if r.len() + p.len() < target || r.len().saturating_add(self.group_bound(&p)) < target {
            return true;
        }
        let order = self.colour_order(&p);
        let mut p = p;
        for &(v, colour) in order.iter().rev() {
            if r.len() + colour < target {
                break;
            }
            r.push(v);
            let next = p.intersection(&self.adj[v]);
            let go_on = self.expand(target, r, next, visit);
            r.pop();
            if !go_on {
                return false;
            }
            p.remove(v);
        }
        true
    }

    /// All cliques of exactly `target` vertices, each sorted.
    pub fn cliques_of_size(&self, target: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each_clique_of_size(target, &[], &BitSet::full(self.n), &mut |c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            out.push(c);
            true
        });
        out.sort();
        out
    }

    pub fn max_clique(&self) -> Vec<usize> {
        let mut best: Vec<usize> = Vec::new();
        let all = BitSet::full(self.n);
        loop {
            let target = best.len() + 1;
            let mut found = None;
            self.for_each_clique_of_size(target, &[], &all, &mut |c| {
                found = Some(c.to_vec());
                false
            });
            match found {
                Some(c) => best = c,
                None => break,
            }
        }
        best.sort_unstable();
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_cliques(g: &Graph, target: usize) -> Vec<Vec<usize>> {
        let n = g.len();
        let mut out = Vec::new();
        for mask in 0u32..1 << n {
            if mask.count_ones() as usize != target {
                continue;
            }
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if vs.iter().all(|&a| vs.iter().all(|&b| a == b || g.adjacent(a, b))) {
                out.push(vs);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn matches_brute_force() {
        // deterministic pseudo-random graphs
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..30 {
            let n = 12;
            let density = rnd() % 60 + 30;
            let edges: Vec<bool> = (0..n * n).map(|_| rnd() % 100 < density).collect();
            let g = Graph::from_predicate(n, |a, b| edges[a * n + b]);
            for t in 1..=6 {
                assert_eq!(g.cliques_of_size(t), brute_cliques(&g, t));
            }
            let best = g.max_clique();
            let t = best.len();
            assert!(!brute_cliques(&g, t).is_empty());
            assert!(brute_cliques(&g, t + 1).is_empty());
        }
    }

    #[test]
    fn group_caps_are_respected_by_bound_only() {
        // complete graph on 6 vertices with a cap that the true cliques satisfy
        let mut g = Graph::from_predicate(6, |_, _| true);
        g.add_group_cap([0, 1, 2], 3);
        assert_eq!(g.cliques_of_size(6).len(), 1);
        assert_eq!(g.max_clique(), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn bitset_ops() {
        let mut s = BitSet::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(s.len(), 3);
        s.remove(64);
        assert!(!s.contains(64));
    }
}
