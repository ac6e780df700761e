//! graph6 codec, short form only (`n <= 62`).
//!
//! The header byte is `n + 63`. The upper triangle of the adjacency matrix
//! is read column by column, `(0,1), (0,2), (1,2), (0,3), ...`, packed
//! big-endian into 6-bit groups, zero padded, each group offset by 63.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Graph, Result};

pub const MAX_VERTICES: usize = 62;

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim().as_bytes();
    let (&header, body) = bytes
        .split_first()
        .ok_or_else(|| Error::MalformedGraph6("empty input".into()))?;
    if let Some(&bad) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::MalformedGraph6(format!(
            "byte {bad} outside 63..=126"
        )));
    }
    if header == 126 {
        return Err(Error::UnsupportedSize("graph6 long form (n > 62)".into()));
    }
    let n = usize::from(header - 63);
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::MalformedGraph6(format!(
            "expected {expected} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..expected * 6).any(bit) {
        return Err(Error::MalformedGraph6("non-zero padding bits".into()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges_unchecked(n, edges))
}

pub fn serialize_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(Error::UnsupportedSize(format!(
            "graph6 short form needs n <= {MAX_VERTICES}, got {n}"
        )));
    }
    let mut present = alloc::vec![false; n * n];
    for &(u, v) in g.edges() {
        present[u * n + v] = true;
        present[v * n + u] = true;
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(1 + bits.div_ceil(6));
    out.push(n as u8 + 63);
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = group << 1 | u8::from(present[i * n + j]);
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    // every byte is in 63..=126
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn complete(n: usize) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        Graph::from_edge_list(n, &pairs).unwrap()
    }

    #[test]
    fn known_strings() {
        let k4 = parse_graph6("C~").unwrap();
        assert!(k4.same_adjacency(&complete(4)));
        assert_eq!(serialize_graph6(&complete(3)).unwrap(), "Bw");
        assert_eq!(serialize_graph6(&complete(4)).unwrap(), "C~");
        // the five-vertex example from petgraph's test suite
        let g = Graph::from_edge_list(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(serialize_graph6(&g).unwrap(), "DQc");
        assert_eq!(serialize_graph6(&Graph::empty(0)).unwrap(), "?");
        assert_eq!(serialize_graph6(&Graph::empty(1)).unwrap(), "@");
    }

    #[test]
    fn parse_orders_edges_column_major() {
        let g = parse_graph6("Bw").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_graph6(""), Err(Error::MalformedGraph6(_))));
        assert!(matches!(parse_graph6("C"), Err(Error::MalformedGraph6(_))));
        assert!(matches!(
            parse_graph6("C~~"),
            Err(Error::MalformedGraph6(_))
        ));
        assert!(matches!(parse_graph6("B "), Err(Error::MalformedGraph6(_))));
        // n = 3 uses 3 of 6 bits; 'x' = 57 + 63 sets a padding bit
        assert!(matches!(parse_graph6("Bx"), Err(Error::MalformedGraph6(_))));
        assert!(matches!(
            parse_graph6("~?@~"),
            Err(Error::UnsupportedSize(_))
        ));
        assert!(matches!(
            serialize_graph6(&Graph::empty(63)),
            Err(Error::UnsupportedSize(_))
        ));
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..=10, mask in any::<u64>()) {
            let mut pairs = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if mask >> (k % 64) & 1 == 1 {
                        pairs.push((v, u));
                    }
                    k += 1;
                }
            }
            let g = Graph::from_edge_list(n, &pairs).unwrap();
            let text = serialize_graph6(&g).unwrap();
            let back = parse_graph6(&text).unwrap();
            prop_assert!(back.same_adjacency(&g));
        }
    }
}
