//! Labeled small-graph enumeration and the distance-rank census.
//!
//! Graphs on `n` vertices are identified with bitmasks over the
//! upper-triangle pairs `(0,1),(0,2),...,(0,n-1),(1,2),...` in
//! lexicographic order; masks are visited ascending. The mask space can be
//! split into disjoint contiguous shards whose merged results equal the
//! unsharded run.

use std::ops::Range;

use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::graph::{is_isomorphic, Graph};
use crate::matrix::rank_of_int_matrix;

/// Default cap on the enumeration order; 2^C(7,2) = 2^21 masks.
pub const DEFAULT_ENUM_CAP: usize = 7;

/// Hard limit from the 64-bit mask representation.
const MASK_LIMIT: usize = 11;

/// Upper-triangle pairs in mask-bit order.
pub fn pair_order(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

pub fn total_masks(n: usize) -> u64 {
    assert!((1..=MASK_LIMIT).contains(&n), "total_masks requires 1 <= n <= {MASK_LIMIT}");
    1u64 << (n * (n - 1) / 2)
}

fn check_order(n: usize, allow_over_cap: bool) -> Result<()> {
    if n < 1 {
        return Err(domain("enumeration requires n >= 1".to_string()));
    }
    if n > MASK_LIMIT {
        return Err(domain(format!(
            "enumeration supports n <= {MASK_LIMIT} (64-bit edge masks), got {n}"
        )));
    }
    if n > DEFAULT_ENUM_CAP && !allow_over_cap {
        return Err(domain(format!(
            "n = {n} exceeds the enumeration cap {DEFAULT_ENUM_CAP}; pass the override to proceed"
        )));
    }
    Ok(())
}

/// Mask range of shard `index` out of `of` equal contiguous pieces.
pub fn shard_range(n: usize, index: u64, of: u64) -> Result<Range<u64>> {
    if of == 0 || index >= of {
        return Err(domain(format!("invalid shard {index}/{of}")));
    }
    if !(1..=MASK_LIMIT).contains(&n) {
        return Err(domain(format!("shard_range requires 1 <= n <= {MASK_LIMIT}, got {n}")));
    }
    let total = total_masks(n);
    let per = total.div_ceil(of);
    let start = (index * per).min(total);
    let end = ((index + 1) * per).min(total);
    Ok(start..end)
}

/// Stream of every connected labeled graph on `n` vertices, in ascending
/// mask order.
pub fn enumerate_connected(n: usize, allow_over_cap: bool) -> Result<ConnectedGraphs> {
    check_order(n, allow_over_cap)?;
    enumerate_connected_range(n, allow_over_cap, 0..total_masks(n))
}

/// Shardable variant restricted to a contiguous mask range.
pub fn enumerate_connected_range(
    n: usize,
    allow_over_cap: bool,
    masks: Range<u64>,
) -> Result<ConnectedGraphs> {
    check_order(n, allow_over_cap)?;
    Ok(ConnectedGraphs { n, pairs: pair_order(n), masks })
}

pub struct ConnectedGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    masks: Range<u64>,
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        for mask in &mut self.masks {
            let adj = mask_adjacency(self.n, &self.pairs, mask);
            if !mask_connected(self.n, &adj) {
                continue;
            }
            let edges: Vec<_> = self
                .pairs
                .iter()
                .enumerate()
                .filter(|&(b, _)| mask >> b & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            return Some(Graph::build(self.n, &edges).unwrap());
        }
        None
    }
}

fn mask_adjacency(n: usize, pairs: &[(usize, usize)], mask: u64) -> [u64; MASK_LIMIT] {
    let mut adj = [0u64; MASK_LIMIT];
    for (b, &(i, j)) in pairs.iter().enumerate() {
        if mask >> b & 1 == 1 {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    let _ = n;
    adj
}

fn mask_connected(n: usize, adj: &[u64; MASK_LIMIT]) -> bool {
    let full = (1u64 << n) - 1;
    let mut reach = 1u64;
    loop {
        let mut next = reach;
        let mut frontier = reach;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            next |= adj[v];
        }
        if next == reach {
            return reach == full;
        }
        reach = next;
    }
}

/// BFS distances into `dist` (row-major n x n); returns false if
/// disconnected.
fn mask_distances(n: usize, adj: &[u64; MASK_LIMIT], dist: &mut [i64]) -> bool {
    let full = (1u64 << n) - 1;
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        row[s] = 0;
        let mut d = 0i64;
        while seen != full {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[v];
            }
            next &= !seen;
            if next == 0 {
                return false;
            }
            d += 1;
            let mut nf = next;
            while nf != 0 {
                let v = nf.trailing_zeros() as usize;
                nf &= nf - 1;
                row[v] = d;
            }
            seen |= next;
            frontier = next;
        }
    }
    true
}

/// Sizes the global worker pool used by the census; call once, before any
/// parallel work.
pub fn configure_thread_pool(jobs: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| domain(format!("thread pool: {e}")))
}

/// Report for one census run: pairwise non-isomorphic representatives of
/// the connected graphs whose distance matrix has the given rank, plus the
/// number of labeled graphs hit.
pub struct CensusWitness {
    pub rank: usize,
    pub representatives: Vec<Graph>,
    pub labeled_count: u64,
}

#[derive(Clone, Copy, Default)]
pub struct CensusOptions {
    pub allow_over_cap: bool,
    /// `(index, of)`: restrict each order's mask space to one shard.
    pub shard: Option<(u64, u64)>,
}

/// Scans every connected graph on up to `n_max` vertices and collects
/// those with distance rank exactly `k`.
pub fn census_by_distance_rank(
    k: usize,
    n_max: usize,
    opts: CensusOptions,
) -> Result<CensusWitness> {
    if k < 2 {
        return Err(domain("census requires rank k >= 2".to_string()));
    }
    check_order(n_max, opts.allow_over_cap)?;
    let mut labeled_count = 0u64;
    let mut reps: Vec<(Vec<u64>, Graph)> = Vec::new();
    for n in 1..=n_max {
        let range = match opts.shard {
            Some((i, of)) => shard_range(n, i, of)?,
            None => 0..total_masks(n),
        };
        // Chunked so rayon can balance; chunk results merged in order for
        // deterministic output.
        let chunk = ((range.end - range.start) / 256).max(4096);
        let starts: Vec<u64> = (range.start..range.end).step_by(chunk as usize).collect();
        let pairs = pair_order(n);
        let partials: Vec<(u64, Vec<Graph>)> = starts
            .par_iter()
            .map(|&start| {
                let end = (start + chunk).min(range.end);
                let mut count = 0u64;
                let mut hits: Vec<Graph> = Vec::new();
                let mut dist = vec![0i64; n * n];
                for mask in start..end {
                    let adj = mask_adjacency(n, &pairs, mask);
                    if !mask_connected(n, &adj) {
                        continue;
                    }
                    mask_distances(n, &adj, &mut dist);
                    if rank_of_int_matrix(n, n, &dist) != k {
                        continue;
                    }
                    count += 1;
                    let edges: Vec<_> = pairs
                        .iter()
                        .enumerate()
                        .filter(|&(b, _)| mask >> b & 1 == 1)
                        .map(|(_, &p)| p)
                        .collect();
                    hits.push(Graph::build(n, &edges).unwrap());
                }
                (count, hits)
            })
            .collect();
        for (count, hits) in partials {
            labeled_count += count;
            for g in hits {
                let key = iso_key(&g);
                if !reps
                    .iter()
                    .any(|(rk, rg)| *rk == key && is_isomorphic(rg, &g))
                {
                    reps.push((key, g));
                }
            }
        }
    }
    Ok(CensusWitness {
        rank: k,
        representatives: reps.into_iter().map(|(_, g)| g).collect(),
        labeled_count,
    })
}

/// Cheap isomorphism invariant used to bucket census hits.
fn iso_key(g: &Graph) -> Vec<u64> {
    let mut key = vec![g.n() as u64, g.edge_count() as u64];
    let mut degs: Vec<u64> = (0..g.n()).map(|v| g.degree(v) as u64).collect();
    degs.sort_unstable();
    key.extend(degs);
    key
}
