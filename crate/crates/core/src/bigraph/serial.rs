//! Text format:
//!
//! ```text
//! <|X|> <|Y|>
//! <hex row of x_1>
//! ...
//! <hex row of x_|X|>
//! <x labels, comma separated>
//! <y labels, comma separated>
//! ```
//!
//! A row is the integer whose bit `j` is set iff `x ~ y_{j+1}`, written as
//! upper-case hex, most significant digit first, zero padded to
//! `ceil(|Y|/4)` digits.

use std::fmt::Write;

use super::BipartiteGraph;
use crate::bitset::BitSet;
use crate::{Error, Result};

fn nibble(row: &BitSet, k: usize) -> u32 {
    (0..4).fold(0, |acc, b| acc | (row.contains(4 * k + b) as u32) << b)
}

pub fn serialize(g: &BipartiteGraph) -> String {
    let digits = g.y_len().div_ceil(4);
    let mut out = format!("{} {}\n", g.x_len(), g.y_len());
    for row in &g.adj_x {
        for k in (0..digits).rev() {
            out.push(char::from_digit(nibble(row, k), 16).unwrap().to_ascii_uppercase());
        }
        out.push('\n');
    }
    writeln!(out, "{}", g.x_labels.join(",")).unwrap();
    writeln!(out, "{}", g.y_labels.join(",")).unwrap();
    out
}

fn malformed(line: usize, msg: impl Into<String>) -> Error {
    Error::Malformed {
        line,
        msg: msg.into(),
    }
}

pub fn deserialize(text: &str) -> Result<BipartiteGraph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| malformed(1, "missing header"))?;
    let sizes: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| malformed(1, format!("bad header: {e}")))?;
    let [nx, ny] = sizes[..] else {
        return Err(malformed(1, "header must be `<|X|> <|Y|>`"));
    };
    if nx == 0 || ny == 0 {
        return Err(malformed(1, "parts must be nonempty"));
    }
    let digits = ny.div_ceil(4);
    let mut rows = Vec::with_capacity(nx);
    for _ in 0..nx {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| malformed(2 + rows.len(), "missing adjacency row"))?;
        if line.len() != digits {
            return Err(malformed(
                ln,
                format!("expected {digits} hex digits, got {}", line.len()),
            ));
        }
        let mut row = BitSet::new(ny);
        for (pos, c) in line.chars().enumerate() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| malformed(ln, format!("invalid hex digit `{c}`")))?;
            let k = digits - 1 - pos;
            for b in 0..4 {
                if v >> b & 1 == 1 {
                    let j = 4 * k + b;
                    if j >= ny {
                        return Err(malformed(ln, "bit set beyond |Y|"));
                    }
                    row.insert(j);
                }
            }
        }
        rows.push(row);
    }
    let mut labels = |expected: usize, what: &str, at: usize| -> Result<Vec<String>> {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| malformed(at, format!("missing {what} labels")))?;
        let parts: Vec<String> = line.split(',').map(str::to_string).collect();
        if parts.len() != expected {
            return Err(malformed(
                ln,
                format!("expected {expected} {what} labels, got {}", parts.len()),
            ));
        }
        Ok(parts)
    };
    let x_labels = labels(nx, "X", nx + 2)?;
    let y_labels = labels(ny, "Y", nx + 3)?;
    if let Some((ln, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(malformed(ln, "trailing content"));
    }
    BipartiteGraph::from_rows(x_labels, y_labels, rows).map_err(|e| malformed(nx + 2, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::{
        build_circulant_graph, build_permutation_graph, build_set_graph, build_subspace_graph,
    };
    use crate::Budget;
    use proptest::prelude::*;

    #[test]
    fn circulant_rows() {
        let g = build_circulant_graph(5, 3).unwrap();
        let text = serialize(&g);
        let body: Vec<&str> = text.lines().skip(1).take(5).collect();
        assert_eq!(body, ["07", "0E", "1C", "19", "13"]);
        assert_eq!(text.lines().next(), Some("5 5"));
        assert_eq!(text.lines().nth(6), Some("x1,x2,x3,x4,x5"));
    }

    #[test]
    fn edgeless_one_by_one() {
        let g = BipartiteGraph::from_edges(1, 1, []).unwrap();
        assert_eq!(serialize(&g), "1 1\n0\nx0\ny0\n");
        assert_eq!(deserialize("1 1\n0\nx0\ny0\n").unwrap(), g);
    }

    #[test]
    fn round_trips_built_graphs() {
        let b = Budget::default();
        for g in [
            build_set_graph(6, 2, 3, 1, &b).unwrap(),
            build_subspace_graph(4, 2, 2, 2, 1, &b).unwrap(),
            build_permutation_graph(4, 2, &b).unwrap(),
            build_circulant_graph(9, 4).unwrap(),
        ] {
            assert_eq!(deserialize(&serialize(&g)).unwrap(), g);
        }
    }

    #[test]
    fn malformed_inputs_report_lines() {
        let err = |s: &str| match deserialize(s) {
            Err(Error::Malformed { line, .. }) => line,
            other => panic!("expected malformed, got {other:?}"),
        };
        assert_eq!(err(""), 1);
        assert_eq!(err("2\n"), 1);
        assert_eq!(err("1 5\n0Z\na\nb,c,d,e,f\n"), 2);
        assert_eq!(err("1 5\n020\na\nb,c,d,e,f\n"), 2);
        assert_eq!(err("1 5\n20\na\nb,c,d,e,f\n"), 2);
        assert_eq!(err("1 2\n1\na\nb\n"), 4);
        assert_eq!(err("1 1\n1\na\n"), 4);
        assert_eq!(err("1 1\n1\na\nb\nextra\n"), 5);
    }

    proptest! {
        #[test]
        fn round_trip_random(nx in 1usize..12, ny in 1usize..30, seed in proptest::collection::vec(any::<bool>(), 360)) {
            let edges = (0..nx).flat_map(|x| (0..ny).map(move |y| (x, y)))
                .filter(|&(x, y)| seed[x * 30 + y]);
            let g = BipartiteGraph::from_edges(nx, ny, edges).unwrap();
            prop_assert_eq!(deserialize(&serialize(&g)).unwrap(), g);
        }
    }
}
