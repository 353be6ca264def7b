//! Twin partitions and the quotient matrix whose nullity equals that of
//! the full distance matrix.

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::graph::Graph;
use crate::matrix::{rat, ExactMatrix, Rat};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TwinKind {
    True,
    False,
}

/// One class of a twin partition: members are pairwise true twins (a
/// clique) or pairwise false twins (an independent set). Singletons are
/// tagged true by convention; both diagonal formulas give 0 for them.
#[derive(Clone, Debug)]
pub struct TwinClass {
    pub members: Vec<usize>,
    pub kind: TwinKind,
}

impl TwinClass {
    /// Least-index member, the designated representative.
    pub fn representative(&self) -> usize {
        self.members[0]
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Partition of `V(G)` into twin classes, ordered by least member.
#[derive(Clone, Debug)]
pub struct TwinPartition {
    pub classes: Vec<TwinClass>,
}

impl TwinPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

impl fmt::Display for TwinPartition {
    /// One line per class: `T|F <size>: v1 v2 ...` with 1-based vertices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for class in &self.classes {
            let tag = match class.kind {
                TwinKind::True => 'T',
                TwinKind::False => 'F',
            };
            write!(f, "{tag} {}:", class.size())?;
            for &v in &class.members {
                write!(f, " {}", v + 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Maximal twin partition under the combined relation
/// `u ~ v iff N(u) = N(v) or N[u] = N[v]`.
///
/// Each class of size >= 2 is verified homogeneous; a mixed class cannot
/// exist (adjacency forces true, non-adjacency forces false) and raises an
/// internal-consistency error if ever observed.
pub fn twin_partition(g: &Graph) -> Result<TwinPartition> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if g.are_true_twins(u, v) || g.are_false_twins(u, v) {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru.max(rv)] = ru.min(rv);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        let r = find(&mut parent, v);
        groups[r].push(v);
    }
    let mut classes = Vec::new();
    for members in groups.into_iter().filter(|m| !m.is_empty()) {
        let kind = classify(g, &members)?;
        classes.push(TwinClass { members, kind });
    }
    classes.sort_by_key(|c| c.members[0]);
    Ok(TwinPartition { classes })
}

fn classify(g: &Graph, members: &[usize]) -> Result<TwinKind> {
    if members.len() == 1 {
        return Ok(TwinKind::True);
    }
    let mut all_true = true;
    let mut all_false = true;
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            all_true &= g.are_true_twins(u, v);
            all_false &= g.are_false_twins(u, v);
        }
    }
    match (all_true, all_false) {
        (true, false) => Ok(TwinKind::True),
        (false, true) => Ok(TwinKind::False),
        _ => Err(Error::Internal(format!(
            "mixed twin class {members:?}: neither all true twins nor all false twins"
        ))),
    }
}

/// The quotient matrix `D/W`: off-diagonal `|W_j| d(w_i, w_j)`, diagonal
/// `|W_i| - 1` for true-twin classes and `2(|W_i| - 1)` for false-twin
/// classes.
pub fn quotient_matrix(g: &Graph, p: &TwinPartition) -> Result<ExactMatrix> {
    let covered: usize = p.classes.iter().map(TwinClass::size).sum();
    if covered != g.n() {
        return Err(domain(format!(
            "partition covers {covered} vertices, graph has {}",
            g.n()
        )));
    }
    let mut seen = vec![false; g.n()];
    for class in &p.classes {
        for &v in &class.members {
            if v >= g.n() || seen[v] {
                return Err(domain(format!("partition does not partition V(G): vertex {v}")));
            }
            seen[v] = true;
        }
    }
    let d = g.distance_matrix()?;
    let k = p.len();
    Ok(ExactMatrix::from_fn(k, k, |i, j| {
        if i == j {
            let base = rat(p.classes[i].size() as i64 - 1);
            match p.classes[i].kind {
                TwinKind::True => base,
                TwinKind::False => base * rat(2),
            }
        } else {
            let wi = p.classes[i].representative();
            let wj = p.classes[j].representative();
            rat(p.classes[j].size() as i64) * rat(d.get(wi, wj) as i64)
        }
    }))
}

/// Computes the nullity of `D(G)` twice: from the full matrix and from the
/// twin quotient. Callers assert equality.
pub fn verify_nullity_equivalence(g: &Graph) -> Result<(usize, usize)> {
    let full = g.distance_matrix()?.to_exact().nullity();
    let p = twin_partition(g)?;
    let quotient = quotient_matrix(g, &p)?.nullity();
    Ok((full, quotient))
}

/// True iff `x` is constant on every twin pair of `G`, the property every
/// null vector of `D(G)` must satisfy.
pub fn null_vector_twin_constancy(g: &Graph, x: &[Rat]) -> Result<bool> {
    if x.len() != g.n() {
        return Err(Error::Shape(format!(
            "vector of length {} against graph on {} vertices",
            x.len(),
            g.n()
        )));
    }
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            if (g.are_true_twins(u, v) || g.are_false_twins(u, v)) && x[u] != x[v] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Homogeneity check used by tests: every class of size >= 2 is a clique
/// of true twins or an independent set of false twins.
pub fn check_homogeneity(g: &Graph, p: &TwinPartition) -> Result<()> {
    for class in &p.classes {
        if class.size() < 2 {
            continue;
        }
        for (i, &u) in class.members.iter().enumerate() {
            for &v in &class.members[i + 1..] {
                let ok = match class.kind {
                    TwinKind::True => g.are_true_twins(u, v) && g.has_edge(u, v),
                    TwinKind::False => g.are_false_twins(u, v) && !g.has_edge(u, v),
                };
                if !ok {
                    return Err(Error::Internal(format!(
                        "class {:?} not homogeneous at pair ({u}, {v})",
                        class.members
                    )));
                }
            }
        }
    }
    Ok(())
}
