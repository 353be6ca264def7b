//! Graph ingestion formats: DIMACS-style edge lists and graph6.

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Parses the edge-list format: `p edge <n> <m>` header, then exactly `m`
/// lines `e <u> <v>` with 1-based endpoints. Blank lines and lines starting
/// with `c` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(parse_err(lineno, 0, "duplicate problem line"));
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(parse_err(lineno, 0, "expected `p edge <n> <m>`"));
                }
                let n: usize = fields[2]
                    .parse()
                    .map_err(|_| parse_err(lineno, 7, "vertex count is not a number"))?;
                let m: usize = fields[3]
                    .parse()
                    .map_err(|_| parse_err(lineno, 7, "edge count is not a number"))?;
                if n == 0 {
                    return Err(parse_err(lineno, 7, "vertex count must be positive"));
                }
                header = Some((n, m));
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(parse_err(lineno, 0, "edge line before problem line"));
                };
                if fields.len() != 3 {
                    return Err(parse_err(lineno, 0, "expected `e <u> <v>`"));
                }
                let u: usize = fields[1]
                    .parse()
                    .map_err(|_| parse_err(lineno, 2, "endpoint is not a number"))?;
                let v: usize = fields[2]
                    .parse()
                    .map_err(|_| parse_err(lineno, 2, "endpoint is not a number"))?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(parse_err(
                        lineno,
                        2,
                        format!("endpoint out of range 1..={n}"),
                    ));
                }
                if u == v {
                    return Err(Error::InvalidEdge { u, v });
                }
                edges.push((u - 1, v - 1));
            }
            _ => return Err(parse_err(lineno, 0, format!("unknown line type `{}`", fields[0]))),
        }
    }
    let Some((n, m)) = header else {
        return Err(parse_err(1, 0, "missing problem line"));
    };
    if edges.len() != m {
        return Err(parse_err(
            text.lines().count(),
            0,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::build(n, &edges)
}

/// Decodes a short-form graph6 string (n <= 62): size byte `n + 63`, then
/// the upper triangle packed column-major, 6 bits per character, zero
/// padded.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes: Vec<u8> = text.trim().bytes().collect();
    if bytes.is_empty() {
        return Err(parse_err(1, 0, "empty graph6 string"));
    }
    if bytes[0] == 126 {
        return Err(parse_err(1, 0, "long-form graph6 (n > 62) is not supported"));
    }
    if !(63..=125).contains(&bytes[0]) {
        return Err(parse_err(1, 0, "size character out of range 63..=125"));
    }
    let n = (bytes[0] - 63) as usize;
    if n == 0 {
        return Err(parse_err(1, 0, "graph6 order must be at least 1"));
    }
    let nbits = n * (n - 1) / 2;
    let nchars = nbits.div_ceil(6);
    if bytes.len() != 1 + nchars {
        return Err(parse_err(
            1,
            bytes.len(),
            format!("expected {} payload characters, found {}", nchars, bytes.len() - 1),
        ));
    }
    let mut bits = Vec::with_capacity(nchars * 6);
    for (k, &b) in bytes[1..].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(1, 1 + k, "payload character out of range 63..=126"));
        }
        let v = b - 63;
        for s in (0..6).rev() {
            bits.push(v >> s & 1 == 1);
        }
    }
    if bits[nbits..].iter().any(|&b| b) {
        return Err(parse_err(1, bytes.len(), "nonzero padding bits"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::build(n, &edges)
}

/// Encodes a graph (n <= 62) in short-form graph6.
pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > 62 {
        return Err(Error::Domain(format!(
            "short-form graph6 supports n <= 62, got {n}"
        )));
    }
    let mut bits = Vec::with_capacity(n * (n - 1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for (s, &b) in chunk.iter().enumerate() {
            if b {
                v |= 1 << (5 - s);
            }
        }
        out.push((v + 63) as char);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;

    #[test]
    fn edge_list_p3() {
        let g = parse_edge_list("p edge 3 2\ne 1 2\ne 2 3").unwrap();
        assert!(is_isomorphic(&g, &Graph::path(3)));
    }

    #[test]
    fn edge_list_ignores_comments_and_blanks() {
        let g = parse_edge_list("c a comment\n\np edge 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn edge_list_rejects_self_loop() {
        assert!(matches!(
            parse_edge_list("p edge 2 1\ne 1 1"),
            Err(Error::InvalidEdge { .. })
        ));
    }

    #[test]
    fn edge_list_reports_position() {
        let err = parse_edge_list("p edge 2 1\ne 1 5").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn graph6_bw_is_k3() {
        // 'B' = order 3, 'w' = 56 = 111000: bits (0,1),(0,2),(1,2) all set.
        let g = parse_graph6("Bw").unwrap();
        assert!(is_isomorphic(&g, &Graph::complete(3)));
        assert_eq!(encode_graph6(&g).unwrap(), "Bw");
    }

    #[test]
    fn graph6_roundtrip_on_small_graphs() {
        for g in [
            Graph::path(5),
            Graph::cycle(6).unwrap(),
            Graph::star(7),
            Graph::build(1, &[]).unwrap(),
        ] {
            let s = encode_graph6(&g).unwrap();
            assert_eq!(parse_graph6(&s).unwrap(), g);
        }
    }

    #[test]
    fn graph6_rejects_bad_padding_and_length() {
        assert!(parse_graph6("B").is_err());
        assert!(parse_graph6("").is_err());
    }
}
