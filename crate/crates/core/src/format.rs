//! Text formats for hypergraphs and orientations.
//!
//! Hypergraph: first data line `n m`, then one line of vertex names per
//! hyperedge. Lines starting with `#` are comments, except that a comment of
//! the form `# vertices: a b c` fixes the index order of all `n` names (so
//! isolated vertices survive a round trip). Without it, names are indexed in
//! order of first appearance and unnamed vertices are padded as `_0`, `_1`, ...
//!
//! Orientation: `m` data lines, line `i` holding the head name of hyperedge `i`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Orientation, VertexNames};

const VERTICES_DIRECTIVE: &str = "vertices:";

/// A line of text with its 1-based line number.
type Numbered<T> = (usize, T);

/// Non-comment lines, plus the vertex directive if present.
fn data_lines(text: &str) -> (Vec<Numbered<&str>>, Option<Numbered<Vec<&str>>>) {
    let mut lines = Vec::new();
    let mut directive = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(rest) = comment.trim_start().strip_prefix(VERTICES_DIRECTIVE) {
                directive = Some((idx + 1, rest.split_whitespace().collect()));
            }
            continue;
        }
        if !line.is_empty() {
            lines.push((idx + 1, line));
        }
    }
    (lines, directive)
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let (lines, directive) = data_lines(text);
    let Some(&(header_line, header)) = lines.first() else {
        return Err(Error::parse(1, "missing `n m` header"));
    };
    let counts: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::parse(header_line, "header must be two non-negative integers `n m`"))?;
    let [n, m] = counts[..] else {
        return Err(Error::parse(header_line, "header must be `n m`"));
    };
    let body = &lines[1..];
    if body.len() != m {
        let line = body.last().map_or(header_line, |l| l.0);
        return Err(Error::parse(line, format!("expected {m} hyperedge lines, found {}", body.len())));
    }

    let mut names = VertexNames::default();
    if let Some((line, listed)) = directive {
        if listed.len() != n {
            return Err(Error::parse(line, format!("vertex list names {} vertices, header says {n}", listed.len())));
        }
        for name in listed {
            names.push(name.to_string()).map_err(|e| Error::parse(line, e.to_string()))?;
        }
    }
    let fixed = !names.is_empty() || n == 0;
    let mut edges = Vec::with_capacity(m);
    for &(line, text) in body {
        let mut edge = Vec::new();
        for name in text.split_whitespace() {
            let v = match names.get(name) {
                Some(v) => v,
                None if fixed => return Err(Error::parse(line, format!("unknown vertex name `{name}`"))),
                None => {
                    if names.len() == n {
                        return Err(Error::parse(line, format!("more than {n} distinct vertex names")));
                    }
                    names.push(name.to_string()).expect("name is new")
                }
            };
            edge.push(v);
        }
        edges.push(edge);
    }
    let mut pad = 0;
    while names.len() < n {
        let candidate = format!("_{pad}");
        pad += 1;
        if names.get(&candidate).is_none() {
            names.push(candidate).expect("name is new");
        }
    }
    Hypergraph::with_names(names, edges).map_err(|e| {
        let line = match &e {
            Error::EdgeTooSmall { edge, .. } => body[*edge].0,
            _ => header_line,
        };
        Error::parse(line, e.to_string())
    })
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::new();
    let names: Vec<&str> = h.names().iter().collect();
    let _ = writeln!(out, "# {VERTICES_DIRECTIVE} {}", names.join(" "));
    let _ = writeln!(out, "{} {}", h.n(), h.m());
    for e in h.edges() {
        let line: Vec<&str> = e.iter().map(|&v| h.name(v)).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn parse_orientation(text: &str, h: &Hypergraph) -> Result<Orientation> {
    let (lines, _) = data_lines(text);
    if lines.len() != h.m() {
        let line = lines.last().map_or(1, |l| l.0);
        return Err(Error::parse(line, format!("expected {} head lines, found {}", h.m(), lines.len())));
    }
    let heads = lines
        .iter()
        .map(|&(line, name)| h.names().resolve(name).map_err(|e| Error::parse(line, e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let o = Orientation::new(heads);
    o.validate(h)?;
    Ok(o)
}

pub fn write_orientation(h: &Hypergraph, o: &Orientation) -> String {
    o.heads.iter().map(|&v| format!("{}\n", h.name(v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_format() {
        let h = parse_hypergraph("# triangle plus a hyperedge\n4 2\na b c\n\nc d\n").unwrap();
        assert_eq!((h.n(), h.m()), (4, 2));
        assert_eq!(h.name(3), "d");
        assert_eq!(h.edge(1), &[2, 3]);
    }

    #[test]
    fn pads_isolated_vertices() {
        let h = parse_hypergraph("4 1\na b\n").unwrap();
        assert_eq!(h.names().iter().collect::<Vec<_>>(), ["a", "b", "_0", "_1"]);
    }

    #[test]
    fn round_trip_keeps_order() {
        let h = parse_hypergraph("# vertices: q p r\n3 2\np r\nr q p\n").unwrap();
        assert_eq!(h.name(0), "q");
        let again = parse_hypergraph(&write_hypergraph(&h)).unwrap();
        assert_eq!(again, h);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse_hypergraph(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_hypergraph("2 1\na\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_hypergraph("2 1\na b c\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_hypergraph("2 2\na b\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_hypergraph("x y\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_hypergraph("# vertices: a b\n2 1\na c\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn orientation_round_trip() {
        let h = parse_hypergraph("3 2\na b c\nb c\n").unwrap();
        let o = parse_orientation("# heads\nc\nb\n", &h).unwrap();
        assert_eq!(o.heads, vec![2, 1]);
        assert_eq!(write_orientation(&h, &o), "c\nb\n");
        assert!(parse_orientation("a\na\n", &h).is_err());
        assert!(parse_orientation("a\n", &h).is_err());
    }
}
