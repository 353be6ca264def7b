//! Simple undirected graphs with bitset adjacency, metric computations and
//! twin/isomorphism predicates.
//!
//! Graphs are immutable after construction. Adjacency is stored as one
//! bitset per vertex, which makes the neighborhood-equality tests behind
//! the twin predicates a word-wise comparison.

use crate::error::{domain, Error, Result};
use crate::matrix::{rank_of_int_matrix, rat, ExactMatrix};

/// Fixed-size bitset, one per adjacency row.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub(crate) fn new(n: usize) -> Self {
        Bits { words: vec![0; n.div_ceil(64)] }
    }

    pub(crate) fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Copy with bit `i` additionally set (used for closed neighborhoods).
    pub(crate) fn with(&self, i: usize) -> Bits {
        let mut b = self.clone();
        b.set(i);
        b
    }

    pub(crate) fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<Bits>,
}

impl Graph {
    /// Builds a graph from an explicit edge list; duplicate edges collapse.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        assert!(n >= 1, "graphs have at least one vertex");
        let mut adj = vec![Bits::new(n); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::IndexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(Error::IndexOutOfRange { v, n });
            }
            if u == v {
                return Err(Error::InvalidEdge { u, v });
            }
            adj[u].set(v);
            adj[v].set(u);
        }
        Ok(Graph { n, adj })
    }

    pub fn complete(n: usize) -> Graph {
        assert!(n >= 1);
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::build(n, &edges).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        assert!(n >= 1);
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::build(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(domain(format!("cycle requires n >= 3, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::build(n, &edges)
    }

    /// Star `K_{1,n-1}` with the center at vertex 0.
    pub fn star(n: usize) -> Graph {
        assert!(n >= 1);
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::build(n, &edges).unwrap()
    }

    /// Join `G ∨ H`: disjoint union plus all cross edges.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in self.n..g.n {
                g.adj[u].set(v);
                g.adj[v].set(u);
            }
        }
        g
    }

    /// Disjoint union `G + H`; vertices of `H` are shifted by `|V(G)|`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut edges = self.edges();
        edges.extend(other.edges().iter().map(|&(u, v)| (u + self.n, v + self.n)));
        Graph::build(n, &edges).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].ones() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub(crate) fn closed_neighborhood(&self, v: usize) -> Bits {
        self.adj[v].with(v)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = Bits::new(self.n);
        seen.set(0);
        let mut frontier = vec![0];
        let mut count = 1;
        while let Some(u) = frontier.pop() {
            for v in self.adj[u].ones() {
                if !seen.contains(v) {
                    seen.set(v);
                    count += 1;
                    frontier.push(v);
                }
            }
        }
        count == self.n
    }

    /// BFS distances from `src`; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[src] = 0;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for v in self.adj[u].ones() {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance_matrix(&self) -> Result<DistanceMatrix> {
        let mut entries = Vec::with_capacity(self.n * self.n);
        for v in 0..self.n {
            let d = self.bfs_distances(v);
            if d.contains(&usize::MAX) {
                return Err(Error::NotConnected);
            }
            entries.extend(d.iter().map(|&x| x as u32));
        }
        Ok(DistanceMatrix { n: self.n, entries })
    }

    pub fn diameter(&self) -> Result<usize> {
        Ok(self.distance_matrix()?.max_entry() as usize)
    }

    /// `rank_d(G)`: exact rank of the distance matrix.
    pub fn distance_rank(&self) -> Result<usize> {
        Ok(self.distance_matrix()?.rank())
    }

    /// `N[u] = N[v]`.
    pub fn are_true_twins(&self, u: usize, v: usize) -> bool {
        assert_ne!(u, v);
        self.closed_neighborhood(u) == self.closed_neighborhood(v)
    }

    /// `N(u) = N(v)`.
    pub fn are_false_twins(&self, u: usize, v: usize) -> bool {
        assert_ne!(u, v);
        self.adj[u] == self.adj[v]
    }

    /// Induced subgraph `G[S]`, vertices relabeled by position in `s`.
    pub fn induced(&self, s: &[usize]) -> Result<Graph> {
        if s.is_empty() {
            return Err(domain("vertex subset must be nonempty"));
        }
        for &v in s {
            if v >= self.n {
                return Err(Error::IndexOutOfRange { v, n: self.n });
            }
        }
        let mut edges = Vec::new();
        for (i, &u) in s.iter().enumerate() {
            for (j, &v) in s.iter().enumerate() {
                if i < j && self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        Graph::build(s.len(), &edges)
    }

    /// True iff `G[S]` preserves all host distances between members of `S`.
    pub fn is_isometric_subgraph(&self, s: &[usize]) -> Result<bool> {
        let sub = self.induced(s)?;
        let d_sub = sub.distance_matrix()?;
        let d_host = self.distance_matrix()?;
        for i in 0..s.len() {
            for j in 0..s.len() {
                if d_sub.get(i, j) != d_host.get(s[i], s[j]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Distance matrix of a connected graph: symmetric, zero diagonal, entries
/// satisfy the triangle inequality, and an entry is 1 exactly on edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<u32>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn max_entry(&self) -> u32 {
        *self.entries.iter().max().unwrap()
    }

    pub fn to_exact(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.n, self.n, |i, j| rat(self.get(i, j) as i64))
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        let data: Vec<i64> = self.entries.iter().map(|&x| x as i64).collect();
        rank_of_int_matrix(self.n, self.n, &data)
    }

    /// Row `i` sorted, used as an isomorphism invariant.
    fn sorted_row(&self, i: usize) -> Vec<u32> {
        let mut row = self.entries[i * self.n..(i + 1) * self.n].to_vec();
        row.sort_unstable();
        row
    }
}

/// Decision-only isomorphism test: invariant screening (order, degree
/// sequence, distance-row multiset), then iterative neighborhood
/// refinement, then backtracking over color-compatible assignments.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n != h.n || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg: Vec<usize> = (0..g.n).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.n).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    if let (Ok(mg), Ok(mh)) = (g.distance_matrix(), h.distance_matrix()) {
        let mut rg: Vec<_> = (0..g.n).map(|i| mg.sorted_row(i)).collect();
        let mut rh: Vec<_> = (0..h.n).map(|i| mh.sorted_row(i)).collect();
        rg.sort();
        rh.sort();
        if rg != rh {
            return false;
        }
    }
    let cg = refine_colors(g);
    let ch = refine_colors(h);
    let mut sg = cg.clone();
    let mut sh = ch.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return false;
    }
    // Map the rarest colors first to cut the branching factor.
    let mut freq = vec![0usize; g.n + 1];
    for &c in &cg {
        freq[c] += 1;
    }
    let mut order: Vec<usize> = (0..g.n).collect();
    order.sort_by_key(|&v| (freq[cg[v]], v));
    let mut map = vec![usize::MAX; g.n];
    let mut used = vec![false; h.n];
    backtrack(g, h, &cg, &ch, &order, 0, &mut map, &mut used)
}

fn backtrack(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    'candidates: for v in 0..h.n {
        if used[v] || ch[v] != cg[u] {
            continue;
        }
        for &w in order[..depth].iter() {
            if g.has_edge(u, w) != h.has_edge(v, map[w]) {
                continue 'candidates;
            }
        }
        map[u] = v;
        used[v] = true;
        if backtrack(g, h, cg, ch, order, depth + 1, map, used) {
            return true;
        }
        map[u] = usize::MAX;
        used[v] = false;
    }
    false
}

/// Iterative refinement: a vertex's color is repeatedly replaced by the
/// multiset of its neighbors' colors until stable.
fn refine_colors(g: &Graph) -> Vec<usize> {
    let mut colors: Vec<usize> = (0..g.n).map(|v| g.degree(v)).collect();
    for _ in 0..g.n {
        let mut sigs: Vec<(usize, Vec<usize>)> = (0..g.n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = sigs
            .drain(..)
            .map(|s| sorted.binary_search(&s).unwrap())
            .collect();
        if next == colors {
            break;
        }
        colors = next;
    }
    colors
}
