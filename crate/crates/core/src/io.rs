//! Line-oriented text formats for graphs, colored drawings and red/blue
//! segment families. Blank lines and lines starting with `#` are ignored.
//! Rationals are written reduced as `p/q`, or `p` when `q = 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::arrangements::{ArrangementError, ColoredSegmentFamily};
use crate::exactgeom::{Point, Rat, Segment};
use crate::graphs::{degeneracy_order, DegenerateGraph, GraphError, VertexId};
use crate::layout::{ColoredDrawing, EdgeColor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Family(#[from] ArrangementError),
}

fn parse_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse { line, msg: msg.into() }
}

pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    Rat::from_str(s).ok()
}

/// Non-empty, non-comment lines as (1-based line number, fields).
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('#')).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn field<T: FromStr>(line: usize, fields: &[&str], idx: usize, what: &str) -> Result<T, IoError> {
    fields
        .get(idx)
        .ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what} {:?}", fields[idx])))
}

fn rat_field(line: usize, fields: &[&str], idx: usize, what: &str) -> Result<Rat, IoError> {
    let s = fields.get(idx).ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    parse_rat(s).ok_or_else(|| parse_err(line, format!("invalid rational {what} {s:?}")))
}

fn arity(line: usize, fields: &[&str], n: usize) -> Result<(), IoError> {
    if fields.len() != n {
        return Err(parse_err(line, format!("expected {} fields after {:?}, found {}", n - 1, fields[0], fields.len() - 1)));
    }
    Ok(())
}

/// Contents of a graph file before a degeneracy order is computed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphFile {
    pub vertex_count: usize,
    pub edges: Vec<(VertexId, VertexId)>,
    pub layers: Vec<Option<u32>>,
}

impl GraphFile {
    pub fn into_graph(self) -> Result<DegenerateGraph, IoError> {
        Ok(degeneracy_order(self.vertex_count, &self.edges)?.with_layers(self.layers)?)
    }
}

pub fn parse_graph(text: &str) -> Result<GraphFile, IoError> {
    let mut out: Option<GraphFile> = None;
    for (line, f) in records(text) {
        match f[0] {
            "n" => {
                if out.is_some() {
                    return Err(parse_err(line, "repeated header"));
                }
                arity(line, &f, 2)?;
                let n = field(line, &f, 1, "vertex count")?;
                out = Some(GraphFile { vertex_count: n, edges: Vec::new(), layers: vec![None; n] });
            }
            tag @ ("e" | "l") => {
                let g = out.as_mut().ok_or_else(|| parse_err(line, "missing header `n <count>`"))?;
                arity(line, &f, 3)?;
                let v: VertexId = field(line, &f, 1, "vertex")?;
                if v >= g.vertex_count {
                    return Err(parse_err(line, format!("vertex {v} out of range")));
                }
                if tag == "e" {
                    let w: VertexId = field(line, &f, 2, "vertex")?;
                    if w >= g.vertex_count {
                        return Err(parse_err(line, format!("vertex {w} out of range")));
                    }
                    g.edges.push((v, w));
                } else {
                    g.layers[v] = Some(field(line, &f, 2, "layer")?);
                }
            }
            other => return Err(parse_err(line, format!("unknown record {other:?}"))),
        }
    }
    out.ok_or_else(|| parse_err(0, "missing header `n <count>`"))
}

pub fn write_graph(g: &DegenerateGraph) -> String {
    let mut s = format!("n {}\n", g.vertex_count());
    for &(u, v) in g.edges() {
        writeln!(s, "e {u} {v}").unwrap();
    }
    for (v, l) in g.layers().iter().enumerate() {
        if let Some(l) = l {
            writeln!(s, "l {v} {l}").unwrap();
        }
    }
    s
}

pub fn parse_drawing(text: &str) -> Result<ColoredDrawing, IoError> {
    let mut pos = BTreeMap::new();
    let mut colors = Vec::new();
    let mut seen = BTreeSet::new();
    for (line, f) in records(text) {
        match f[0] {
            "v" => {
                arity(line, &f, 4)?;
                let id: VertexId = field(line, &f, 1, "vertex")?;
                let p = Point::new(rat_field(line, &f, 2, "x")?, rat_field(line, &f, 3, "y")?);
                if pos.insert(id, p).is_some() {
                    return Err(parse_err(line, format!("vertex {id} placed twice")));
                }
            }
            "c" => {
                arity(line, &f, 4)?;
                let u: VertexId = field(line, &f, 1, "vertex")?;
                let w: VertexId = field(line, &f, 2, "vertex")?;
                let c: EdgeColor = field(line, &f, 3, "color")?;
                if !seen.insert((u.min(w), u.max(w))) {
                    return Err(parse_err(line, format!("edge {u}-{w} colored twice")));
                }
                colors.push(((u, w), c));
            }
            other => return Err(parse_err(line, format!("unknown record {other:?}"))),
        }
    }
    for &((u, w), _) in &colors {
        if !pos.contains_key(&u) || !pos.contains_key(&w) {
            return Err(parse_err(0, format!("colored edge {u}-{w} has an unplaced endpoint")));
        }
    }
    Ok(ColoredDrawing::new(pos, colors))
}

pub fn write_drawing(d: &ColoredDrawing) -> String {
    let mut s = String::new();
    for (v, p) in d.positions() {
        writeln!(s, "v {v} {} {}", format_rat(&p.x), format_rat(&p.y)).unwrap();
    }
    for (&(u, w), c) in d.colors() {
        writeln!(s, "c {u} {w} {c}").unwrap();
    }
    s
}

pub fn parse_segments(text: &str) -> Result<ColoredSegmentFamily, IoError> {
    let mut red = Vec::new();
    let mut blue = Vec::new();
    for (line, f) in records(text) {
        let target = match f[0] {
            "r" => &mut red,
            "b" => &mut blue,
            other => return Err(parse_err(line, format!("unknown record {other:?}"))),
        };
        arity(line, &f, 5)?;
        let a = Point::new(rat_field(line, &f, 1, "x1")?, rat_field(line, &f, 2, "y1")?);
        let b = Point::new(rat_field(line, &f, 3, "x2")?, rat_field(line, &f, 4, "y2")?);
        target.push(Segment::new(a, b).map_err(|e| parse_err(line, e.to_string()))?);
    }
    Ok(ColoredSegmentFamily::new(red, blue)?)
}

pub fn write_segments(f: &ColoredSegmentFamily) -> String {
    let mut s = String::new();
    for (tag, segs) in [("r", f.red()), ("b", f.blue())] {
        for seg in segs {
            let [x1, y1, x2, y2] = [&seg.a.x, &seg.a.y, &seg.b.x, &seg.b.y].map(format_rat);
            writeln!(s, "{tag} {x1} {y1} {x2} {y2}").unwrap();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat;

    #[test]
    fn rationals_are_reduced() {
        assert_eq!(format_rat(&rat(6, 4)), "3/2");
        assert_eq!(format_rat(&rat(-4, 2)), "-2");
        assert_eq!(parse_rat("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
    }

    #[test]
    fn graph_round_trip() {
        let text = "# triangle\nn 4\ne 0 1\ne 1 2\ne 0 2\nl 3 1\n";
        let g = parse_graph(text).unwrap().into_graph().unwrap();
        let again = parse_graph(&write_graph(&g)).unwrap().into_graph().unwrap();
        assert_eq!(g, again);
        assert_eq!(g.layer(3), Some(1));
    }

    #[test]
    fn graph_errors_name_the_line() {
        assert_eq!(parse_graph("n 2\ne 0 5\n"), Err(IoError::Parse { line: 2, msg: "vertex 5 out of range".into() }));
        assert!(matches!(parse_graph("e 0 1\n"), Err(IoError::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("n 2\nq\n"), Err(IoError::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("n 2\ne 0\n"), Err(IoError::Parse { line: 2, .. })));
    }

    #[test]
    fn drawing_round_trip() {
        let text = "v 0 0 0\nv 1 3/2 -1/3\nc 1 0 hs\n";
        let d = parse_drawing(text).unwrap();
        assert_eq!(d.color_of(0, 1), Some(EdgeColor::Hs));
        assert_eq!(write_drawing(&d), "v 0 0 0\nv 1 3/2 -1/3\nc 0 1 hs\n");
        assert!(parse_drawing("v 0 0 0\nc 0 1 h\n").is_err());
        assert!(parse_drawing("v 0 0 0\nv 1 1 1\nc 0 1 x\n").is_err());
    }

    #[test]
    fn segments_round_trip() {
        let text = "r 0 0 10 0\nb 5 -5 5 5\n";
        let f = parse_segments(text).unwrap();
        assert_eq!(write_segments(&f), text);
        assert!(matches!(parse_segments("r 0 0 1 1\nr 0 1 1 0\n"), Err(IoError::Family(_))));
        assert!(parse_segments("r 0 0 0 0\n").is_err());
    }
}
