//! Interchange formats: graph6, DIMACS edge lists, plain edge lists, and a
//! labelled JSON form that preserves the (a,b,c)_i coordinates.
//!
//! All writers are deterministic: vertex order is codec order, edge lists
//! ascend, and re-serializing a parsed file reproduces it byte for byte.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldInfo};
use crate::graph::{BipartiteGraph, Labeling};
use crate::label::{Coord, Label, LabelCodec, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    DimacsEdge,
    EdgeList,
    LabeledJson,
}

impl GraphFormat {
    pub const ALL: [GraphFormat; 4] = [
        GraphFormat::Graph6,
        GraphFormat::DimacsEdge,
        GraphFormat::EdgeList,
        GraphFormat::LabeledJson,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphFormat::Graph6 => "graph6",
            GraphFormat::DimacsEdge => "dimacs-edge",
            GraphFormat::EdgeList => "edge-list",
            GraphFormat::LabeledJson => "labeled-json",
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            GraphFormat::Graph6 => "g6",
            GraphFormat::DimacsEdge => "dimacs",
            GraphFormat::EdgeList => "edges",
            GraphFormat::LabeledJson => "json",
        }
    }

    pub fn from_extension(path: &Path) -> Option<GraphFormat> {
        let ext = path.extension()?.to_str()?;
        match ext {
            "g6" | "graph6" => Some(GraphFormat::Graph6),
            "dimacs" | "col" => Some(GraphFormat::DimacsEdge),
            "edges" | "txt" => Some(GraphFormat::EdgeList),
            "json" => Some(GraphFormat::LabeledJson),
            _ => None,
        }
    }
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<GraphFormat> {
        match s {
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            "dimacs-edge" | "dimacs" => Ok(GraphFormat::DimacsEdge),
            "edge-list" | "edges" => Ok(GraphFormat::EdgeList),
            "labeled-json" | "json" => Ok(GraphFormat::LabeledJson),
            _ => Err(Error::Construction(format!("unknown format '{s}'"))),
        }
    }
}

pub fn serialize_graph(g: &BipartiteGraph, format: GraphFormat) -> Result<Vec<u8>> {
    match format {
        GraphFormat::Graph6 => Ok(write_graph6(g)),
        GraphFormat::DimacsEdge => Ok(write_dimacs(g)),
        GraphFormat::EdgeList => Ok(write_edge_list(g)),
        GraphFormat::LabeledJson => write_labeled_json(g),
    }
}

pub fn parse_graph(bytes: &[u8], format: GraphFormat) -> Result<BipartiteGraph> {
    match format {
        GraphFormat::Graph6 => parse_graph6(bytes),
        GraphFormat::DimacsEdge => parse_dimacs(bytes),
        GraphFormat::EdgeList => parse_edge_list(bytes),
        GraphFormat::LabeledJson => parse_labeled_json(bytes),
    }
}

// --- graph6 ---------------------------------------------------------------

fn push_graph6_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12u32, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30u32, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

fn write_graph6(g: &BipartiteGraph) -> Vec<u8> {
    let n = g.order();
    let mut out = Vec::new();
    push_graph6_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0u8;
    // Upper triangle in column order: (0,1), (0,2), (1,2), (0,3), ...
    for v in 1..n as u32 {
        let below: Vec<u32> = g
            .neighbors(v)
            .iter()
            .copied()
            .take_while(|&u| u < v)
            .collect();
        let mut it = below.iter().peekable();
        for u in 0..v {
            let bit = match it.peek() {
                Some(&&w) if w == u => {
                    it.next();
                    1
                }
                _ => 0,
            };
            acc = (acc << 1) | bit;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    out.push(b'\n');
    out
}

fn parse_graph6(bytes: &[u8]) -> Result<BipartiteGraph> {
    let mut data = bytes;
    if let Some(stripped) = data.strip_prefix(b">>graph6<<") {
        data = stripped;
    }
    let line_end = data.iter().position(|&b| b == b'\n').unwrap_or(data.len());
    let data = &data[..line_end];
    if data.is_empty() {
        return Err(Error::Parse {
            line: 1,
            msg: "empty graph6 payload".into(),
        });
    }
    let bad_char = |pos: usize| Error::Parse {
        line: 1,
        msg: format!("invalid graph6 byte at offset {pos}"),
    };
    let (n, pos): (usize, usize) = if data[0] != 126 {
        if data[0] < 63 {
            return Err(bad_char(0));
        }
        ((data[0] - 63) as usize, 1)
    } else if data.len() > 1 && data[1] != 126 {
        if data.len() < 4 {
            return Err(bad_char(data.len() - 1));
        }
        let mut n = 0usize;
        for (i, &b) in data[1..4].iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(bad_char(1 + i));
            }
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 4)
    } else {
        if data.len() < 8 {
            return Err(bad_char(data.len() - 1));
        }
        let mut n = 0usize;
        for (i, &b) in data[2..8].iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(bad_char(2 + i));
            }
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 8)
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if data.len() != pos + nbytes {
        return Err(Error::Parse {
            line: 1,
            msg: format!(
                "graph6 payload for n = {n} needs {nbytes} data bytes, found {}",
                data.len() - pos
            ),
        });
    }
    let mut edges = Vec::new();
    let mut bit_index = 0usize;
    'outer: for v in 1..n as u32 {
        for u in 0..v {
            let byte = data[pos + bit_index / 6];
            if !(63..=126).contains(&byte) {
                return Err(bad_char(pos + bit_index / 6));
            }
            let value = byte - 63;
            if (value >> (5 - (bit_index % 6))) & 1 == 1 {
                edges.push((u, v));
            }
            bit_index += 1;
            if bit_index >= nbits {
                break 'outer;
            }
        }
    }
    BipartiteGraph::from_edges(n, &edges, None, None)
}

// --- DIMACS edge format -----------------------------------------------------

fn write_dimacs(g: &BipartiteGraph) -> Vec<u8> {
    let mut out = String::new();
    out.push_str(&format!("p edge {} {}\n", g.order(), g.size()));
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out.into_bytes()
}

fn parse_dimacs(bytes: &[u8]) -> Result<BipartiteGraph> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::Parse {
        line: 1,
        msg: "not valid UTF-8".into(),
    })?;
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.first() {
            None => continue,
            Some(&"c") => continue,
            Some(&"p") => {
                if header.is_some() {
                    return Err(Error::Parse {
                        line,
                        msg: "duplicate problem line".into(),
                    });
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(Error::Parse {
                        line,
                        msg: "expected 'p edge <n> <m>'".into(),
                    });
                }
                let n = fields[2].parse().map_err(|_| Error::Parse {
                    line,
                    msg: "invalid vertex count".into(),
                })?;
                let m = fields[3].parse().map_err(|_| Error::Parse {
                    line,
                    msg: "invalid edge count".into(),
                })?;
                header = Some((n, m));
            }
            Some(&"e") => {
                let (n, _) = header.ok_or(Error::Parse {
                    line,
                    msg: "edge before problem line".into(),
                })?;
                if fields.len() != 3 {
                    return Err(Error::Parse {
                        line,
                        msg: "expected 'e <u> <v>'".into(),
                    });
                }
                let parse = |s: &str| -> Result<u32> {
                    let v: u64 = s.parse().map_err(|_| Error::Parse {
                        line,
                        msg: format!("invalid vertex '{s}'"),
                    })?;
                    if v == 0 || v > n as u64 {
                        return Err(Error::Parse {
                            line,
                            msg: format!("vertex {v} out of range 1..={n}"),
                        });
                    }
                    Ok((v - 1) as u32)
                };
                edges.push((parse(fields[1])?, parse(fields[2])?));
            }
            Some(other) => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unexpected line type '{other}'"),
                });
            }
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 1,
        msg: "missing problem line".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: format!("header promises {m} edges, found {}", edges.len()),
        });
    }
    BipartiteGraph::from_edges(n, &edges, None, None)
}

// --- plain edge list --------------------------------------------------------

fn write_edge_list(g: &BipartiteGraph) -> Vec<u8> {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out.into_bytes()
}

fn parse_edge_list(bytes: &[u8]) -> Result<BipartiteGraph> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::Parse {
        line: 1,
        msg: "not valid UTF-8".into(),
    })?;
    let mut edges = Vec::new();
    let mut max = 0u32;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 2 {
            return Err(Error::Parse {
                line,
                msg: "expected two vertex indices".into(),
            });
        }
        let parse = |s: &str| -> Result<u32> {
            s.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("invalid vertex '{s}'"),
            })
        };
        let (u, v) = (parse(fields[0])?, parse(fields[1])?);
        max = max.max(u).max(v);
        edges.push((u, v));
    }
    let order = if edges.is_empty() {
        0
    } else {
        max as usize + 1
    };
    BipartiteGraph::from_edges(order, &edges, None, None)
}

// --- labelled JSON ----------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoordJson {
    Val(u32),
    Sym(String),
}

impl CoordJson {
    fn from_coord(c: Coord) -> CoordJson {
        match c {
            Coord::Elem(e) => CoordJson::Val(e.value()),
            Coord::Rho => CoordJson::Sym("rho".into()),
        }
    }

    fn to_coord(&self, field: &Field) -> Result<Coord> {
        match self {
            CoordJson::Val(v) => Ok(Coord::Elem(field.try_elem(*v)?)),
            CoordJson::Sym(s) if s == "rho" => Ok(Coord::Rho),
            CoordJson::Sym(s) => Err(Error::Parse {
                line: 0,
                msg: format!("unknown coordinate symbol '{s}'"),
            }),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    side: u8,
    a: CoordJson,
    b: CoordJson,
    c: CoordJson,
}

#[derive(Serialize, Deserialize)]
struct LabeledJson {
    format: String,
    version: u32,
    q: u32,
    field: FieldInfo,
    vertices: Vec<VertexJson>,
    edges: Vec<(u32, u32)>,
}

const LABELED_FORMAT: &str = "cagekit-labeled-graph";

fn write_labeled_json(g: &BipartiteGraph) -> Result<Vec<u8>> {
    let labeling = g.labeling().ok_or_else(|| {
        Error::Construction("graph carries no labels; labeled-json is unavailable".into())
    })?;
    let q = labeling.codec().q();
    let field = Field::new(q as u64)?;
    let vertices = (0..g.order() as u32)
        .map(|v| {
            let label = labeling.label_of(v);
            VertexJson {
                side: label.side.index() as u8,
                a: CoordJson::from_coord(label.a),
                b: CoordJson::from_coord(label.b),
                c: CoordJson::from_coord(label.c),
            }
        })
        .collect();
    let doc = LabeledJson {
        format: LABELED_FORMAT.into(),
        version: 1,
        q,
        field: field.info(),
        vertices,
        edges: g.edges().collect(),
    };
    let mut out = serde_json::to_vec(&doc)?;
    out.push(b'\n');
    Ok(out)
}

fn parse_labeled_json(bytes: &[u8]) -> Result<BipartiteGraph> {
    let doc: LabeledJson = serde_json::from_slice(bytes).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    if doc.format != LABELED_FORMAT || doc.version != 1 {
        return Err(Error::Parse {
            line: 1,
            msg: format!("unsupported document format '{}'", doc.format),
        });
    }
    let field = Field::new(doc.q as u64)?;
    if doc.field != field.info() {
        return Err(Error::Parse {
            line: 1,
            msg: "field parameters do not match the canonical construction".into(),
        });
    }
    let codec = LabelCodec::new(doc.q);
    let mut sides = Vec::with_capacity(doc.vertices.len());
    let mut indices = Vec::with_capacity(doc.vertices.len());
    for v in &doc.vertices {
        let side = Side::from_index(v.side as usize)?;
        let label = Label::new(
            side,
            v.a.to_coord(&field)?,
            v.b.to_coord(&field)?,
            v.c.to_coord(&field)?,
        )?;
        sides.push(v.side);
        indices.push(codec.try_encode(&label)?);
    }
    let labeling = Labeling::new(codec, indices)?;
    BipartiteGraph::from_edges(doc.vertices.len(), &doc.edges, Some(sides), Some(labeling))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cage::build_gamma;

    #[test]
    fn graph6_known_vectors() {
        // The worked example from the published format definition:
        // n = 5, edges {02, 04, 13, 34} encodes to "DQc".
        let g =
            BipartiteGraph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)], None, None).unwrap();
        assert_eq!(write_graph6(&g), b"DQc\n");
        // K4 is "C~".
        let k4 = BipartiteGraph::from_edges(
            4,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            None,
            None,
        )
        .unwrap();
        assert_eq!(write_graph6(&k4), b"C~\n");
    }

    #[test]
    fn graph6_roundtrip_small_and_long_form() {
        let g = build_gamma(2).unwrap();
        let bytes = write_graph6(&g);
        let parsed = parse_graph6(&bytes).unwrap();
        assert!(parsed.same_adjacency(&g));
        // 63 vertices forces the three-byte size form.
        let edges: Vec<(u32, u32)> = (0..62).map(|i| (i, i + 1)).collect();
        let long = BipartiteGraph::from_edges(63, &edges, None, None).unwrap();
        let bytes = write_graph6(&long);
        assert_eq!(bytes[0], 126);
        let parsed = parse_graph6(&bytes).unwrap();
        assert!(parsed.same_adjacency(&long));
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(parse_graph6(b"").is_err());
        assert!(parse_graph6(b"D\x01\x01\n").is_err());
        // Truncated payload.
        assert!(parse_graph6(b"D\n").is_err());
    }

    #[test]
    fn dimacs_roundtrip_and_comments() {
        let g = build_gamma(2).unwrap();
        let bytes = write_dimacs(&g);
        let parsed = parse_dimacs(&bytes).unwrap();
        assert!(parsed.same_adjacency(&g));
        let with_comments = b"c hello\np edge 3 2\nc mid\ne 1 2\ne 2 3\n";
        let g = parse_dimacs(with_comments).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.size(), 2);
    }

    #[test]
    fn dimacs_error_lines() {
        let err = parse_dimacs(b"p edge 3 1\ne 1 9\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_dimacs(b"e 1 2\n").is_err());
        assert!(parse_dimacs(b"p edge 3 5\ne 1 2\n").is_err());
    }

    #[test]
    fn edge_list_roundtrip_and_errors() {
        let g = build_gamma(2).unwrap();
        let bytes = write_edge_list(&g);
        let parsed = parse_edge_list(&bytes).unwrap();
        assert!(parsed.same_adjacency(&g));
        let err = parse_edge_list(b"0 1\n1 2\nbroken\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn labeled_json_preserves_labels() {
        let g = build_gamma(2).unwrap();
        let bytes = write_labeled_json(&g).unwrap();
        let parsed = parse_labeled_json(&bytes).unwrap();
        assert!(parsed.same_adjacency(&g));
        for v in 0..g.order() as u32 {
            assert_eq!(parsed.label_of(v), g.label_of(v));
        }
        assert_eq!(parsed.sides(), g.sides());
    }

    #[test]
    fn labeled_json_requires_labels() {
        let plain = BipartiteGraph::from_edges(2, &[(0, 1)], None, None).unwrap();
        assert!(write_labeled_json(&plain).is_err());
    }

    #[test]
    fn byte_identical_reserialization() {
        let g = build_gamma(3).unwrap();
        for fmt in GraphFormat::ALL {
            let first = serialize_graph(&g, fmt).unwrap();
            let parsed = parse_graph(&first, fmt).unwrap();
            let second = serialize_graph(&parsed, fmt).unwrap();
            assert_eq!(first, second, "{}", fmt.name());
        }
    }

    #[test]
    fn format_names_and_extensions() {
        use std::str::FromStr;
        for fmt in GraphFormat::ALL {
            assert_eq!(GraphFormat::from_str(fmt.name()).unwrap(), fmt);
            let path = format!("file.{}", fmt.extension());
            assert_eq!(GraphFormat::from_extension(Path::new(&path)), Some(fmt));
        }
        assert!(GraphFormat::from_str("gif").is_err());
    }
}
