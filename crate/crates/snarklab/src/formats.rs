//! Interchange formats: a compact parenthesized adjacency text, the
//! standard graph6 encoding, and DOT export for visualization.
//!
//! The adjacency text has the grammar `vertex '(' id (',' id)* ')'`
//! repeated, with whitespace insignificant. Each edge appears exactly
//! once in the whole string, under either of its endpoints; for example
//! `0(1,2,3)1(2,3)2(3)` is K4. A vertex may never occur as a key as long
//! as its degree reaches 3 through other entries.

use thiserror::Error;

use crate::bits::EdgeSet;
use crate::graph::{CubicGraph, GraphError};
use crate::hist::Hist;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("syntax error at byte {at}: {message}")]
    Syntax { at: usize, message: String },
    #[error("edge {u}-{v} listed more than once")]
    DuplicateEdge { u: usize, v: usize },
    #[error("malformed graph6 data: {0}")]
    MalformedGraph6(String),
    #[error("graph is not cubic or not simple: {0}")]
    NotCubic(#[from] GraphError),
    #[error("declared cycle lists non-adjacent consecutive vertices {u} and {v}")]
    NonAdjacentPair { u: usize, v: usize },
    #[error("declared cycles share vertex {0}")]
    OverlappingCycles(usize),
}

/// Parses the parenthesized adjacency format into a cubic graph.
pub fn parse_adjacency_text(text: &str) -> Result<CubicGraph, FormatError> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0usize;
    let syntax = |at: usize, message: &str| FormatError::Syntax {
        at,
        message: message.to_string(),
    };
    let read_number = |i: &mut usize| -> Option<usize> {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        if *i == start {
            None
        } else {
            std::str::from_utf8(&bytes[start..*i]).ok()?.parse().ok()
        }
    };
    loop {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= bytes.len() {
            break;
        }
        let key = read_number(&mut i).ok_or_else(|| syntax(i, "expected vertex id"))?;
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= bytes.len() || bytes[i] != b'(' {
            return Err(syntax(i, "expected '(' after vertex id"));
        }
        i += 1;
        loop {
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            let w = read_number(&mut i).ok_or_else(|| syntax(i, "expected neighbor id"))?;
            let (a, b) = (key.min(w), key.max(w));
            if edges.contains(&(a, b)) {
                return Err(FormatError::DuplicateEdge { u: a, v: b });
            }
            edges.push((a, b));
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            match bytes.get(i) {
                Some(b',') => i += 1,
                Some(b')') => {
                    i += 1;
                    break;
                }
                _ => return Err(syntax(i, "expected ',' or ')'")),
            }
        }
    }
    if edges.is_empty() {
        return Err(syntax(0, "empty adjacency text"));
    }
    let n = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap() + 1;
    Ok(CubicGraph::from_edge_list(n, &edges)?)
}

/// Emits the parenthesized adjacency text for `g`, listing every edge
/// once under its smaller endpoint.
pub fn emit_adjacency_text(g: &CubicGraph) -> String {
    let mut out = String::new();
    for v in 0..g.n() {
        let nbrs: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| w > v).collect();
        if nbrs.is_empty() {
            continue;
        }
        out.push_str(&v.to_string());
        out.push('(');
        for (k, w) in nbrs.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&w.to_string());
        }
        out.push(')');
    }
    out
}

/// Strictness of graph6 ingestion with respect to the cubic restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Graph6Strictness {
    /// Any non-cubic graph in the input is an error.
    Strict,
    /// Non-cubic graphs are silently skipped.
    SkipNonCubic,
}

/// Parses graph6 data (one graph per line) into cubic graphs.
///
/// Empty lines and the optional `>>graph6<<` header are ignored. Graphs
/// on more than 258047 vertices (the eight-byte size form) are rejected.
pub fn parse_graph6(
    data: &str,
    strictness: Graph6Strictness,
) -> Result<Vec<CubicGraph>, FormatError> {
    let mut out = Vec::new();
    for line in data.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let line = line.strip_prefix(">>graph6<<").unwrap_or(line).trim();
        if line.is_empty() {
            continue;
        }
        match parse_graph6_line(line) {
            Ok(g) => out.push(g),
            Err(FormatError::NotCubic(e)) => match strictness {
                Graph6Strictness::Strict => return Err(FormatError::NotCubic(e)),
                Graph6Strictness::SkipNonCubic => continue,
            },
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Parses a single graph6 line.
pub fn parse_graph6_line(line: &str) -> Result<CubicGraph, FormatError> {
    let bytes = line.trim().as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::MalformedGraph6("empty line".into()));
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(FormatError::MalformedGraph6(format!(
                "byte {b} outside graph6 range 63..=126"
            )));
        }
    }
    let (n, mut pos) = if bytes[0] == b'~' {
        if bytes.len() >= 2 && bytes[1] == b'~' {
            return Err(FormatError::MalformedGraph6(
                "graphs above 258047 vertices are not supported".into(),
            ));
        }
        if bytes.len() < 4 {
            return Err(FormatError::MalformedGraph6("truncated size field".into()));
        }
        let n = (((bytes[1] - 63) as usize) << 12)
            | (((bytes[2] - 63) as usize) << 6)
            | ((bytes[3] - 63) as usize);
        (n, 4)
    } else {
        ((bytes[0] - 63) as usize, 1)
    };
    let bits_needed = n * (n - 1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if bytes.len() - pos < bytes_needed {
        return Err(FormatError::MalformedGraph6(format!(
            "expected {bytes_needed} data bytes for n={n}, found {}",
            bytes.len() - pos
        )));
    }
    let mut edges = Vec::new();
    let mut bit_index = 0usize;
    let mut current = 0u8;
    let mut bits_left = 0u8;
    for col in 1..n {
        for row in 0..col {
            if bits_left == 0 {
                current = bytes[pos] - 63;
                pos += 1;
                bits_left = 6;
            }
            let bit = (current >> (bits_left - 1)) & 1;
            bits_left -= 1;
            bit_index += 1;
            if bit == 1 {
                edges.push((row, col));
            }
        }
    }
    debug_assert_eq!(bit_index, bits_needed);
    Ok(CubicGraph::from_edge_list(n, &edges)?)
}

/// Emits the graph6 encoding of `g` (bit-exact with the standard).
pub fn emit_graph6(g: &CubicGraph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        assert!(n <= 258047, "graph6 output limited to n <= 258047");
        out.push(b'~');
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
    let mut current = 0u8;
    let mut filled = 0u8;
    for col in 1..n {
        for row in 0..col {
            current <<= 1;
            if g.has_edge(row, col) {
                current |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(current + 63);
                current = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        current <<= 6 - filled;
        out.push(current + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Emits DOT text for `g`. Hist edges are drawn bold, outer-cycle edges
/// dashed, everything else plain. Output is deterministic: vertices by
/// id, edges in canonical order.
pub fn emit_dot(g: &CubicGraph, hist: Option<&Hist>, outer_cycles: Option<&[EdgeSet]>) -> String {
    let mut out = String::from("graph snark {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        out.push_str(&format!("  {v};\n"));
    }
    for (i, e) in g.edges().iter().enumerate() {
        let in_hist = hist.map(|h| h.tree_edges().contains(i)).unwrap_or(false);
        let in_outer = outer_cycles
            .map(|cs| cs.iter().any(|c| c.contains(i)))
            .unwrap_or(false);
        let attr = if in_outer {
            " [style=dashed]"
        } else if in_hist {
            " [style=bold]"
        } else {
            ""
        };
        out.push_str(&format!("  {} -- {}{};\n", e.u, e.v, attr));
    }
    out.push_str("}\n");
    out
}

/// Parses a declaration of outer cycles, e.g. `[10,15,14,17,16] [2,7,3,8,9]`.
///
/// Each bracket lists the vertices of one cycle in cyclic order.
/// Consecutive vertices (with wraparound) must be adjacent in `g`, and
/// the cycles must be pairwise vertex-disjoint. Returns one edge set per
/// declared cycle.
pub fn parse_outer_cycle_declaration(
    text: &str,
    g: &CubicGraph,
) -> Result<Vec<EdgeSet>, FormatError> {
    let sequences = parse_bracket_sequences(text)?;
    let mut used = vec![false; g.n()];
    let mut out = Vec::new();
    for seq in &sequences {
        if seq.len() < 3 {
            return Err(FormatError::Syntax {
                at: 0,
                message: format!("cycle of length {} is too short", seq.len()),
            });
        }
        let mut cycle = EdgeSet::new(g.edge_count());
        for (k, &v) in seq.iter().enumerate() {
            if v >= g.n() {
                return Err(FormatError::Syntax {
                    at: 0,
                    message: format!("vertex {v} out of range"),
                });
            }
            if used[v] {
                return Err(FormatError::OverlappingCycles(v));
            }
            used[v] = true;
            let w = seq[(k + 1) % seq.len()];
            match g.edge_index(v, w) {
                Some(idx) => cycle.insert(idx),
                None => return Err(FormatError::NonAdjacentPair { u: v, v: w }),
            }
        }
        out.push(cycle);
    }
    Ok(out)
}

/// Splits `[a,b,c] [d,e]`-style text into vertex sequences.
pub fn parse_bracket_sequences(text: &str) -> Result<Vec<Vec<usize>>, FormatError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if bytes[i] != b'[' {
            return Err(FormatError::Syntax {
                at: i,
                message: "expected '['".into(),
            });
        }
        i += 1;
        let mut seq = Vec::new();
        loop {
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i == start {
                return Err(FormatError::Syntax {
                    at: i,
                    message: "expected vertex id".into(),
                });
            }
            let v: usize = std::str::from_utf8(&bytes[start..i])
                .unwrap()
                .parse()
                .map_err(|_| FormatError::Syntax {
                    at: start,
                    message: "vertex id too large".into(),
                })?;
            seq.push(v);
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            match bytes.get(i) {
                Some(b',') => i += 1,
                Some(b']') => {
                    i += 1;
                    break;
                }
                _ => {
                    return Err(FormatError::Syntax {
                        at: i,
                        message: "expected ',' or ']'".into(),
                    })
                }
            }
        }
        out.push(seq);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{k4, petersen};

    const T55_TEXT: &str = "0(4,8,12)1(5,6,14)2(4,7,9)3(5,7,8)4(5)6(7,16)8(9)9(11)10(11,15,16)11(13)12(13,15)13(17)14(15,17)16(17)";

    #[test]
    fn t55_parses_to_an_18_vertex_cubic_graph() {
        let g = parse_adjacency_text(T55_TEXT).unwrap();
        assert_eq!(g.n(), 18);
        assert_eq!(g.edge_count(), 27);
    }

    #[test]
    fn degree_one_text_is_not_cubic() {
        assert!(matches!(
            parse_adjacency_text("0(1)"),
            Err(FormatError::NotCubic(_))
        ));
    }

    #[test]
    fn duplicate_edges_are_rejected() {
        assert!(matches!(
            parse_adjacency_text("0(1,2,3)1(0,2,3)2(3)"),
            Err(FormatError::DuplicateEdge { u: 0, v: 1 })
        ));
    }

    #[test]
    fn paper_text_round_trips() {
        let g = parse_adjacency_text(T55_TEXT).unwrap();
        let text = emit_adjacency_text(&g);
        let g2 = parse_adjacency_text(&text).unwrap();
        assert_eq!(g.edges(), g2.edges());
    }

    #[test]
    fn k4_graph6_is_c_tilde() {
        // K4 is the classic "C~" example of the format.
        assert_eq!(emit_graph6(&k4()), "C~");
        let parsed = parse_graph6_line("C~").unwrap();
        assert_eq!(parsed.edges(), k4().edges());
    }

    /// Independent writer used as an oracle: builds the bit string
    /// character by character and packs it without any of the
    /// incremental state of the production encoder.
    fn naive_graph6(g: &CubicGraph) -> String {
        assert!(g.n() <= 62);
        let mut bits = String::new();
        for col in 1..g.n() {
            for row in 0..col {
                bits.push(if g.has_edge(row, col) { '1' } else { '0' });
            }
        }
        while !bits.len().is_multiple_of(6) {
            bits.push('0');
        }
        let mut out = String::new();
        out.push((g.n() as u8 + 63) as char);
        for chunk in bits.as_bytes().chunks(6) {
            let mut x = 0u8;
            for &c in chunk {
                x = (x << 1) | (c - b'0');
            }
            out.push((x + 63) as char);
        }
        out
    }

    #[test]
    fn petersen_graph6_matches_independent_writer_and_round_trips() {
        let p = petersen();
        let enc = emit_graph6(&p);
        assert_eq!(enc, naive_graph6(&p));
        // Frozen expected value for the canonical labeling.
        assert_eq!(enc, "IheA@GUAo");
        let back = parse_graph6_line(&enc).unwrap();
        assert_eq!(back.edges(), p.edges());
    }

    #[test]
    fn empty_lines_are_skipped() {
        let graphs = parse_graph6("\nC~\n\n", Graph6Strictness::Strict).unwrap();
        assert_eq!(graphs.len(), 1);
    }

    #[test]
    fn three_byte_size_form_round_trips() {
        // A circular ladder on 100 vertices exercises the n > 62 size
        // encoding.
        let mut pairs = Vec::new();
        for i in 0..50usize {
            pairs.push((i, (i + 1) % 50));
            pairs.push((50 + i, 50 + (i + 1) % 50));
            pairs.push((i, 50 + i));
        }
        let g = CubicGraph::from_edge_list(100, &pairs).unwrap();
        let enc = emit_graph6(&g);
        assert!(enc.starts_with('~'));
        let back = parse_graph6_line(&enc).unwrap();
        assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn outer_cycle_declaration_on_t55() {
        let g = parse_adjacency_text(T55_TEXT).unwrap();
        let cycles = parse_outer_cycle_declaration("[10,15,14,17,16] [2,7,3,8,9]", &g).unwrap();
        assert_eq!(cycles.len(), 2);
        assert_eq!(cycles[0].count(), 5);
        assert_eq!(cycles[1].count(), 5);
        assert!(cycles[0].is_disjoint(&cycles[1]));
    }

    #[test]
    fn non_adjacent_pair_is_rejected() {
        let p = petersen();
        assert!(matches!(
            parse_outer_cycle_declaration("[0,1,2]", &p),
            Err(FormatError::NonAdjacentPair { .. })
        ));
    }

    #[test]
    fn overlapping_cycles_are_rejected() {
        let p = petersen();
        assert!(matches!(
            parse_outer_cycle_declaration("[0,1,2,3,4] [0,5,7,9,4]", &p),
            Err(FormatError::OverlappingCycles(0))
        ));
    }

    #[test]
    fn dot_marks_outer_cycles_dashed() {
        let p = petersen();
        let outer = parse_outer_cycle_declaration("[0,1,2,3,4]", &p).unwrap();
        let dot = emit_dot(&p, None, Some(&outer));
        assert_eq!(dot.matches("dashed").count(), 5);
        let plain = emit_dot(&p, None, None);
        assert_eq!(plain.matches("dashed").count(), 0);
    }
}
