//! Threshold graphs via power sequences: construction, the explicit twin
//! quotient, the tridiagonal alpha form and the continuant recursion that
//! decides nullity, plus the singular-family search.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{rat, ExactMatrix, Rat};
use crate::twins::{TwinClass, TwinKind, TwinPartition};

/// Block encoding `[n_1, ..., n_2k]` of the creation sequence
/// `0^{n_1} 1^{n_2} 0^{n_3} ... 1^{n_2k}` of a connected threshold graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSequence {
    parts: Vec<u64>,
}

impl PowerSequence {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.is_empty() || !parts.len().is_multiple_of(2) {
            return Err(Error::Format(format!(
                "power sequence must have even positive length, got {}",
                parts.len()
            )));
        }
        if parts.contains(&0) {
            return Err(Error::Format("power sequence parts must be >= 1".into()));
        }
        Ok(PowerSequence { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Number of blocks, `2k`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Vertex count of the encoded graph.
    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Builds the threshold graph: each 1-vertex is joined to everything
    /// before it.
    pub fn to_graph(&self) -> Graph {
        let n = self.total() as usize;
        let mut edges = Vec::new();
        let mut pos = 0usize;
        for (b, &cnt) in self.parts.iter().enumerate() {
            for _ in 0..cnt {
                if b % 2 == 1 {
                    for s in 0..pos {
                        edges.push((s, pos));
                    }
                }
                pos += 1;
            }
        }
        Graph::build(n, &edges).unwrap()
    }

    /// Block-by-block twin partition: 0-blocks are false twins, 1-blocks
    /// true twins, without merging across blocks.
    pub fn natural_partition(&self) -> TwinPartition {
        let mut classes = Vec::new();
        let mut pos = 0usize;
        for (b, &cnt) in self.parts.iter().enumerate() {
            classes.push(TwinClass {
                members: (pos..pos + cnt as usize).collect(),
                kind: if b % 2 == 0 { TwinKind::False } else { TwinKind::True },
            });
            pos += cnt as usize;
        }
        TwinPartition { classes }
    }

    /// The `2k x 2k` quotient of `D` under the natural partition. Between
    /// distinct blocks the distance is 1 when the later block is a
    /// 1-block and 2 when it is a 0-block.
    pub fn quotient(&self) -> ExactMatrix {
        let k2 = self.len();
        ExactMatrix::from_fn(k2, k2, |i, j| {
            if i == j {
                let base = rat(self.parts[i] as i64 - 1);
                if i % 2 == 0 {
                    base * rat(2)
                } else {
                    base
                }
            } else {
                let later = i.max(j);
                let d = if later % 2 == 1 { 1 } else { 2 };
                rat(self.parts[j] as i64) * rat(d)
            }
        })
    }

    /// The diagonal of the tridiagonal form reached by the row reduction
    /// of the quotient.
    pub fn alpha_sequence(&self) -> AlphaSequence {
        let k2 = self.len();
        let alphas = (0..k2)
            .map(|idx| {
                let n_i = rat(self.parts[idx] as i64);
                match idx {
                    0 => n_i - rat(2),
                    i if i == k2 - 1 => (rat(2) - n_i) / rat(2),
                    i if i % 2 == 0 => n_i,
                    _ => -n_i / rat(2),
                }
            })
            .collect();
        AlphaSequence(alphas)
    }

    /// Nullity of `D` decided by the continuant recursion: 1 iff the last
    /// continuant vanishes.
    pub fn nullity(&self) -> usize {
        let d = continuants(&self.alpha_sequence());
        usize::from(d.0.last().unwrap().is_zero())
    }

    /// Nullity of the full distance matrix by exact elimination,
    /// independent of the recursion.
    pub fn oracle_nullity(&self) -> usize {
        self.to_graph()
            .distance_matrix()
            .expect("threshold graphs are connected")
            .to_exact()
            .nullity()
    }
}

impl FromStr for PowerSequence {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let parts = text
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Format(format!("bad power sequence part `{}`", tok.trim())))
            })
            .collect::<Result<Vec<u64>>>()?;
        PowerSequence::new(parts)
    }
}

impl fmt::Display for PowerSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u64::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

pub fn parse_power_sequence(text: &str) -> Result<PowerSequence> {
    text.parse()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlphaSequence(pub Vec<Rat>);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ContinuantSequence(pub Vec<Rat>);

/// `d_1 = a_1`, `d_2 = 1 + a_1 a_2`, `d_i = a_i d_{i-1} + d_{i-2}`.
pub fn continuants(alphas: &AlphaSequence) -> ContinuantSequence {
    let a = &alphas.0;
    assert!(a.len() >= 2);
    let mut d = Vec::with_capacity(a.len());
    d.push(a[0].clone());
    d.push(Rat::one() + &a[0] * &a[1]);
    for i in 2..a.len() {
        let next = &a[i] * &d[i - 1] + &d[i - 2];
        d.push(next);
    }
    ContinuantSequence(d)
}

/// The two nullity-1 families named by the quotient reduction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    /// `[4, 1, m, 2]`, the graph `K_2 ∨ (m K_1 + (K_1 ∨ 4 K_1))`.
    A,
    /// `[3, 2, m, 2]`, the graph `K_2 ∨ (m K_1 + (K_2 ∨ 3 K_1))`.
    B,
}

pub fn family_generator(family: Family, m: u64) -> Result<PowerSequence> {
    if m < 1 {
        return Err(Error::Domain("family parameter m must be >= 1".into()));
    }
    let parts = match family {
        Family::A => vec![4, 1, m, 2],
        Family::B => vec![3, 2, m, 2],
    };
    PowerSequence::new(parts)
}

/// Enumerates every valid power sequence with vertex total at most
/// `max_total`, in lexicographic order of (length, parts), and returns
/// those with nullity 1. Every hit is cross-checked against the
/// full-matrix oracle.
pub fn search_singular_power_sequences(max_total: u64) -> Result<Vec<PowerSequence>> {
    if max_total < 2 {
        return Err(Error::Domain("search requires a vertex budget >= 2".into()));
    }
    let mut hits = Vec::new();
    let mut len = 2usize;
    while (len as u64) <= max_total {
        let mut parts = vec![1u64; len];
        loop {
            let ps = PowerSequence::new(parts.clone()).unwrap();
            let by_recursion = ps.nullity();
            let by_oracle = ps.oracle_nullity();
            if by_recursion != by_oracle {
                return Err(Error::Internal(format!(
                    "continuant test disagrees with oracle on [{ps}]: {by_recursion} vs {by_oracle}"
                )));
            }
            if by_recursion == 1 {
                hits.push(ps);
            }
            if !next_bounded_composition(&mut parts, max_total) {
                break;
            }
        }
        len += 2;
    }
    Ok(hits)
}

/// Advances `parts` to the lexicographically next vector of positive
/// integers with the same length and sum <= `budget`.
fn next_bounded_composition(parts: &mut [u64], budget: u64) -> bool {
    let len = parts.len() as u64;
    for i in (0..parts.len()).rev() {
        parts[i] += 1;
        let tail_min = (parts.len() - 1 - i) as u64;
        let prefix: u64 = parts[..=i].iter().sum();
        if prefix + tail_min <= budget {
            for p in parts[i + 1..].iter_mut() {
                *p = 1;
            }
            return true;
        }
        parts[i] = 1;
    }
    let _ = len;
    false
}
