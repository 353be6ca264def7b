//! Trivially perfect graphs from rooted clique trees: construction, arrow
//! ordering and arrow matrices, the first reduction stage of the quotient,
//! the nullity families, and the singular 3x3 gadget catalog.

use std::fmt;

use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::graph::Graph;
use crate::matrix::{rat, ExactMatrix, Rat, RowOp};
use crate::twins::{TwinClass, TwinKind, TwinPartition};

/// Rooted tree of clique sizes. Nodes are stored in depth-first preorder
/// with children in textual order, which is exactly an arrow ordering: no
/// node precedes an ancestor, and each node's descendants are contiguous.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliqueTree {
    sizes: Vec<u64>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl CliqueTree {
    pub fn node_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self, node: usize) -> u64 {
        self.sizes[node]
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn children(&self, node: usize) -> &[usize] {
        &self.children[node]
    }

    /// Total vertex count of the encoded graph.
    pub fn vertex_count(&self) -> u64 {
        self.sizes.iter().sum()
    }

    pub fn is_ancestor(&self, a: usize, d: usize) -> bool {
        let mut cur = self.parent[d];
        while let Some(p) = cur {
            if p == a {
                return true;
            }
            cur = self.parent[p];
        }
        false
    }

    /// The arrow ordering; preorder storage makes it the identity.
    pub fn arrow_ordering(&self) -> Vec<usize> {
        (0..self.node_count()).collect()
    }

    /// Height: leaves at 0, else 1 + max over children.
    pub fn height(&self, node: usize) -> usize {
        self.children[node]
            .iter()
            .map(|&c| 1 + self.height(c))
            .max()
            .unwrap_or(0)
    }

    /// Number of nodes in the subtree rooted at `node`. Preorder storage
    /// makes the subtree the contiguous span starting at `node`.
    fn span(&self, node: usize) -> usize {
        1 + self.children[node].iter().map(|&c| self.span(c)).sum::<usize>()
    }

    pub fn subtree(&self, node: usize) -> CliqueTree {
        let span = self.span(node);
        let sizes = self.sizes[node..node + span].to_vec();
        let mut parent = vec![None; span];
        let mut children = vec![Vec::new(); span];
        for i in node + 1..node + span {
            let p = self.parent[i].unwrap() - node;
            parent[i - node] = Some(p);
            children[p].push(i - node);
        }
        CliqueTree { sizes, parent, children }
    }

    /// The trivially perfect graph: vertices of the same node form a
    /// clique, and a node's clique is joined to every descendant's clique.
    /// The root clique is universal, so the diameter is at most 2.
    pub fn to_graph(&self) -> Graph {
        let offsets = self.offsets();
        let n = self.vertex_count() as usize;
        let mut edges = Vec::new();
        for i in 0..self.node_count() {
            let (si, ei) = offsets[i];
            for u in si..ei {
                for v in u + 1..ei {
                    edges.push((u, v));
                }
            }
            for j in i + 1..self.node_count() {
                if self.is_ancestor(i, j) {
                    let (sj, ej) = offsets[j];
                    for u in si..ei {
                        for v in sj..ej {
                            edges.push((u, v));
                        }
                    }
                }
            }
        }
        Graph::build(n, &edges).unwrap()
    }

    fn offsets(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.node_count());
        let mut pos = 0usize;
        for &s in &self.sizes {
            out.push((pos, pos + s as usize));
            pos += s as usize;
        }
        out
    }

    /// The node partition as a true-twin partition of `to_graph()`.
    pub fn node_partition(&self) -> TwinPartition {
        let classes = self
            .offsets()
            .iter()
            .map(|&(s, e)| TwinClass { members: (s..e).collect(), kind: TwinKind::True })
            .collect();
        TwinPartition { classes }
    }

    /// Quotient of `D` under the node partition: diagonal `|W_i| - 1`,
    /// off-diagonal `|W_j| d(w_i, w_j)` with distance 1 between
    /// ancestor-related nodes and 2 otherwise.
    pub fn quotient(&self) -> ExactMatrix {
        let k = self.node_count();
        ExactMatrix::from_fn(k, k, |i, j| {
            if i == j {
                rat(self.sizes[i] as i64 - 1)
            } else {
                let related = self.is_ancestor(i, j) || self.is_ancestor(j, i);
                let d = if related { 1 } else { 2 };
                rat(self.sizes[j] as i64) * rat(d)
            }
        })
    }

    /// Nullity of `D(G)` via the quotient and exact elimination.
    pub fn nullity(&self) -> usize {
        self.quotient().nullity()
    }

    /// Applies `r_W - 2 r_R -> r_W` then `-r_W -> r_W` for every non-root
    /// row of the quotient. The result has first column `|R| - 2` below the
    /// top row and the arrow matrices of the root's child subtrees on the
    /// block diagonal; that structure is checked, not assumed.
    pub fn m1_reduction(&self) -> Result<ExactMatrix> {
        let k = self.node_count();
        if k < 2 {
            return Err(domain("m1 reduction requires a tree with at least 2 nodes"));
        }
        let mut ops = Vec::with_capacity(2 * (k - 1));
        for i in 1..k {
            ops.push(RowOp::AddMultiple { src: 0, factor: rat(-2), dst: i });
            ops.push(RowOp::Scale(i, rat(-1)));
        }
        let m1 = self.quotient().row_reduce(&ops)?;
        self.check_m1_structure(&m1)?;
        Ok(m1)
    }

    fn check_m1_structure(&self, m1: &ExactMatrix) -> Result<()> {
        let below = rat(self.sizes[0] as i64 - 2);
        for i in 1..self.node_count() {
            if *m1.get(i, 0) != below {
                return Err(Error::Internal(format!(
                    "m1 reduction: entry ({i}, 0) is {}, expected |R| - 2 = {below}",
                    m1.get(i, 0)
                )));
            }
        }
        let mut col = 1usize;
        for &child in &self.children[0] {
            let sub = self.subtree(child);
            let block = sub.arrow_matrix(true);
            let m = sub.node_count();
            for i in 0..self.node_count() - 1 {
                for j in 0..m {
                    let got = m1.get(1 + i, col + j);
                    let want = if (col - 1..col - 1 + m).contains(&i) {
                        block.get(i - (col - 1), j).clone()
                    } else {
                        Rat::zero()
                    };
                    if *got != want {
                        return Err(Error::Internal(format!(
                            "m1 reduction: block mismatch at ({}, {})",
                            1 + i,
                            col + j
                        )));
                    }
                }
            }
            col += m;
        }
        Ok(())
    }

    /// The arrow matrix. With `as_subtree = true` the tree hangs under
    /// some ancestor: top-left `|R| + 1`, first row the descendant sizes in
    /// arrow order, first column `|R|` repeated, children's arrow matrices
    /// on the block diagonal (a leaf gives the 1x1 matrix `[size + 1]`).
    /// With `as_subtree = false` a single-node tree is the whole graph and
    /// gives `[|R| - 1]`.
    pub fn arrow_matrix(&self, as_subtree: bool) -> ExactMatrix {
        let k = self.node_count();
        if !as_subtree && k == 1 {
            return ExactMatrix::from_fn(1, 1, |_, _| rat(self.sizes[0] as i64 - 1));
        }
        let mut data = vec![vec![Rat::zero(); k]; k];
        self.fill_arrow(0, 0, &mut data);
        ExactMatrix::from_fn(k, k, |i, j| data[i][j].clone())
    }

    // Fills the arrow block of the subtree at `node`; `base` is the
    // preorder index mapped to row/column 0 of `data`.
    fn fill_arrow(&self, node: usize, base: usize, data: &mut [Vec<Rat>]) {
        let off = node - base;
        let span = self.span(node);
        data[off][off] = rat(self.sizes[node] as i64 + 1);
        for d in node + 1..node + span {
            data[off][d - base] = rat(self.sizes[d] as i64);
            data[d - base][off] = rat(self.sizes[node] as i64);
        }
        for &c in &self.children[node] {
            self.fill_arrow(c, base, data);
        }
    }
}

impl fmt::Display for CliqueTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_node(t: &CliqueTree, node: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{}", t.sizes[node])?;
            if !t.children[node].is_empty() {
                write!(f, "(")?;
                for (i, &c) in t.children[node].iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write_node(t, c, f)?;
                }
                write!(f, ")")?;
            }
            Ok(())
        }
        write_node(self, 0, f)
    }
}

/// Parses the tree grammar `tree := SIZE [ "(" tree ("," tree)* ")" ]`,
/// whitespace insensitive.
pub fn parse_clique_tree(text: &str) -> Result<CliqueTree> {
    let bytes: Vec<u8> = text.bytes().collect();
    let mut pos = 0usize;
    let mut sizes = Vec::new();
    let mut parent = Vec::new();
    let mut children: Vec<Vec<usize>> = Vec::new();

    fn skip_ws(bytes: &[u8], pos: &mut usize) {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    }

    fn err(pos: usize, msg: &str) -> Error {
        Error::Parse { line: 1, col: pos, msg: msg.to_string() }
    }

    fn parse_node(
        bytes: &[u8],
        pos: &mut usize,
        parent_of: Option<usize>,
        sizes: &mut Vec<u64>,
        parent: &mut Vec<Option<usize>>,
        children: &mut Vec<Vec<usize>>,
    ) -> Result<usize> {
        skip_ws(bytes, pos);
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            return Err(err(start, "expected a clique size"));
        }
        let size: u64 = std::str::from_utf8(&bytes[start..*pos])
            .unwrap()
            .parse()
            .map_err(|_| err(start, "clique size out of range"))?;
        if size == 0 {
            return Err(err(start, "clique sizes must be positive"));
        }
        let node = sizes.len();
        sizes.push(size);
        parent.push(parent_of);
        children.push(Vec::new());
        if let Some(p) = parent_of {
            children[p].push(node);
        }
        skip_ws(bytes, pos);
        if *pos < bytes.len() && bytes[*pos] == b'(' {
            *pos += 1;
            loop {
                parse_node(bytes, pos, Some(node), sizes, parent, children)?;
                skip_ws(bytes, pos);
                match bytes.get(*pos) {
                    Some(b',') => *pos += 1,
                    Some(b')') => {
                        *pos += 1;
                        break;
                    }
                    _ => return Err(err(*pos, "expected `,` or `)`")),
                }
            }
        }
        Ok(node)
    }

    parse_node(&bytes, &mut pos, None, &mut sizes, &mut parent, &mut children)?;
    skip_ws(&bytes, &mut pos);
    if pos != bytes.len() {
        return Err(Error::Parse {
            line: 1,
            col: pos,
            msg: "trailing input after tree".to_string(),
        });
    }
    Ok(CliqueTree { sizes, parent, children })
}

/// The 3x3 gadget `[[w+1, a, b], [w, a+1, 0], [w, 0, b+1]]`, the arrow
/// matrix of a size-`w` node with two leaf children of sizes `a`, `b`.
pub fn gadget_matrix(w: u64, a: u64, b: u64) -> ExactMatrix {
    ExactMatrix::from_int_rows(&[
        vec![w as i64 + 1, a as i64, b as i64],
        vec![w as i64, a as i64 + 1, 0],
        vec![w as i64, 0, b as i64 + 1],
    ])
}

/// All `(w, a, b)` with entries up to `bound` whose gadget is singular,
/// in lexicographic order.
pub fn singular_gadget_triples(bound: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for w in 1..=bound {
        for a in 1..=bound {
            for b in 1..=bound {
                if gadget_matrix(w, a, b).determinant().unwrap().is_zero() {
                    out.push((w, a, b));
                }
            }
        }
    }
    out
}

/// The nullity-`{k-1, k}` family: root of size `root_sizes[0]` with leaf
/// children of sizes `root_sizes[1..]` and `k` gadget subtrees, each a
/// size-3 node with two size-2 leaves. The nullity is `k` exactly when the
/// root size is 2, else `k - 1`.
pub fn nullity_family(k: u64, r: u64, n: u64, root_sizes: &[u64]) -> Result<CliqueTree> {
    if k < 2 {
        return Err(domain("nullity family requires k >= 2"));
    }
    if !(1..=3).contains(&r) {
        return Err(domain(format!("nullity family requires r in 1..=3, got {r}")));
    }
    if n < 7 * k + r {
        return Err(domain(format!("nullity family requires n >= 7k + r = {}", 7 * k + r)));
    }
    if root_sizes.len() != r as usize {
        return Err(domain(format!(
            "expected {r} root sizes, got {}",
            root_sizes.len()
        )));
    }
    if root_sizes.contains(&0) {
        return Err(domain("root sizes must be positive"));
    }
    if root_sizes.iter().sum::<u64>() != n - 7 * k {
        return Err(domain(format!(
            "root sizes must sum to n - 7k = {}",
            n - 7 * k
        )));
    }
    let mut text = root_sizes[0].to_string();
    text.push('(');
    let mut parts: Vec<String> = root_sizes[1..].iter().map(u64::to_string).collect();
    parts.extend(std::iter::repeat_n("3(2,2)".to_string(), k as usize));
    text.push_str(&parts.join(","));
    text.push(')');
    parse_clique_tree(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;

    const NINE_NODE: &str = "6(7(9,8),9(8(6,7),6))";

    #[test]
    fn parsing_examples() {
        let t = parse_clique_tree(NINE_NODE).unwrap();
        assert_eq!(t.node_count(), 9);
        let sizes: Vec<u64> = (0..9).map(|i| t.size(i)).collect();
        assert_eq!(sizes, vec![6, 7, 9, 8, 9, 8, 6, 7, 6]);
        assert_eq!(parse_clique_tree("5").unwrap().node_count(), 1);
        let t = parse_clique_tree("3(2,2)").unwrap();
        assert_eq!(t.children(0), &[1, 2]);
        assert!(parse_clique_tree("3(0,2)").is_err());
        assert!(parse_clique_tree("3(2,2").is_err());
        assert_eq!(parse_clique_tree(NINE_NODE).unwrap().to_string(), NINE_NODE);
    }

    #[test]
    fn graphs_from_trees() {
        assert!(is_isomorphic(
            &parse_clique_tree("5").unwrap().to_graph(),
            &Graph::complete(5)
        ));
        assert!(is_isomorphic(
            &parse_clique_tree("1(1,1)").unwrap().to_graph(),
            &Graph::path(3)
        ));
        let g = parse_clique_tree(NINE_NODE).unwrap().to_graph();
        assert_eq!(g.n(), 66);
        assert_eq!(g.diameter().unwrap(), 2);
    }

    #[test]
    fn heights_of_the_nine_node_tree() {
        let t = parse_clique_tree(NINE_NODE).unwrap();
        let h: Vec<usize> = (0..9).map(|i| t.height(i)).collect();
        assert_eq!(h, vec![3, 1, 0, 0, 2, 1, 0, 0, 0]);
        assert_eq!(parse_clique_tree("5").unwrap().height(0), 0);
        assert_eq!(parse_clique_tree("3(2,2)").unwrap().height(0), 1);
    }

    #[test]
    fn arrow_ordering_invariants() {
        let t = parse_clique_tree(NINE_NODE).unwrap();
        let ord = t.arrow_ordering();
        for i in 0..ord.len() {
            for j in i + 1..ord.len() {
                assert!(!t.is_ancestor(ord[j], ord[i]));
                for k in j + 1..ord.len() {
                    if t.is_ancestor(ord[i], ord[k]) {
                        assert!(t.is_ancestor(ord[i], ord[j]));
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_of_single_clique_and_p3() {
        let q = parse_clique_tree("5").unwrap().quotient();
        assert_eq!(q, ExactMatrix::from_int_rows(&[vec![4]]));
        let q = parse_clique_tree("1(1,1)").unwrap().quotient();
        let want = ExactMatrix::from_int_rows(&[vec![0, 1, 1], vec![1, 0, 2], vec![1, 2, 0]]);
        assert_eq!(q, want);
    }

    #[test]
    fn m1_reduction_of_p3_tree() {
        let m1 = parse_clique_tree("1(1,1)").unwrap().m1_reduction().unwrap();
        let want =
            ExactMatrix::from_int_rows(&[vec![0, 1, 1], vec![-1, 2, 0], vec![-1, 0, 2]]);
        assert_eq!(m1, want);
        assert!(parse_clique_tree("5").unwrap().m1_reduction().is_err());
    }

    #[test]
    fn m1_preserves_rank() {
        for text in [NINE_NODE, "1(1,1)", "3(2,2)", "2(3(2,2),3(2,2))"] {
            let t = parse_clique_tree(text).unwrap();
            let q = t.quotient();
            let m1 = t.m1_reduction().unwrap();
            assert_eq!(m1.rank(), q.rank(), "{text}");
        }
    }

    #[test]
    fn arrow_matrix_examples() {
        // First internal subtree of the nine-node example.
        let sub = parse_clique_tree("7(9,8)").unwrap();
        let want = ExactMatrix::from_int_rows(&[
            vec![8, 9, 8],
            vec![7, 10, 0],
            vec![7, 0, 9],
        ]);
        assert_eq!(sub.arrow_matrix(true), want);
        // Leaf as subtree.
        let leaf = parse_clique_tree("9").unwrap();
        assert_eq!(leaf.arrow_matrix(true), ExactMatrix::from_int_rows(&[vec![10]]));
        // Whole graph a single clique.
        let whole = parse_clique_tree("5").unwrap();
        assert_eq!(whole.arrow_matrix(false), ExactMatrix::from_int_rows(&[vec![4]]));
    }

    #[test]
    fn tp_nullity_examples() {
        assert_eq!(parse_clique_tree(NINE_NODE).unwrap().nullity(), 0);
        assert_eq!(parse_clique_tree("5").unwrap().nullity(), 0);
        // K3 joined to two K2 leaves is nonsingular: the (3,2,2) gadget is
        // singular only as an arrow-matrix block under a root, not as a
        // whole-graph quotient.
        let t = parse_clique_tree("3(2,2)").unwrap();
        assert_eq!(t.nullity(), 0);
        let full = t.to_graph().distance_matrix().unwrap().to_exact();
        assert_eq!(full.nullity(), 0);
        assert_eq!(full.determinant().unwrap(), rat(6));
    }

    #[test]
    fn gadget_examples() {
        let g = gadget_matrix(3, 2, 2);
        assert_eq!(
            g,
            ExactMatrix::from_int_rows(&[vec![4, 2, 2], vec![3, 3, 0], vec![3, 0, 3]])
        );
        assert!(g.determinant().unwrap().is_zero());
        assert!(gadget_matrix(6, 1, 2).determinant().unwrap().is_zero());
        let triples = singular_gadget_triples(6);
        let want = vec![
            (2, 2, 5),
            (2, 3, 3),
            (2, 5, 2),
            (3, 1, 5),
            (3, 2, 2),
            (3, 5, 1),
            (4, 1, 3),
            (4, 3, 1),
            (6, 1, 2),
            (6, 2, 1),
        ];
        assert_eq!(triples, want);
    }

    #[test]
    fn nullity_family_examples() {
        let t = nullity_family(2, 1, 16, &[2]).unwrap();
        assert_eq!(t.size(0), 2);
        assert_eq!(t.nullity(), 2);
        let t = nullity_family(2, 1, 15, &[1]).unwrap();
        assert_eq!(t.nullity(), 1);
        let t = nullity_family(3, 2, 25, &[2, 2]).unwrap();
        assert_eq!(t.nullity(), 3);
        assert!(nullity_family(2, 1, 14, &[1]).is_err());
        assert!(nullity_family(2, 1, 16, &[3]).is_err());
        assert!(nullity_family(2, 4, 20, &[1, 1, 1, 3]).is_err());
    }
}
