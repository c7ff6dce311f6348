//! Plain-text instance files.
//!
//! ```text
//! embedding <n>            graph <n> <m>          orderings <n>
//! <id> <x> <y>             <u> <v>    (u < v)     <v> <id_1> ... <id_n>
//! ```
//!
//! Indices are 0-based. Coordinates are written with 17 significant digits
//! so that a write/read cycle reproduces them bit for bit. Blank lines are
//! ignored.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::{Embedding, GeometricGraph, InstanceError, OrderingOracle};
use crate::geometry::{Point, SquareDomain};

fn parse_err(line: usize, message: impl Into<String>) -> InstanceError {
    InstanceError::Parse {
        line,
        message: message.into(),
    }
}

/// Non-blank lines with their 1-based line numbers.
struct Lines<R> {
    inner: std::io::Lines<R>,
    number: usize,
}

impl<R: BufRead> Lines<R> {
    fn new(reader: R) -> Self {
        Lines {
            inner: reader.lines(),
            number: 0,
        }
    }

    fn next_line(&mut self) -> Result<Option<(usize, String)>, InstanceError> {
        for line in self.inner.by_ref() {
            self.number += 1;
            let line = line?;
            if !line.trim().is_empty() {
                return Ok(Some((self.number, line)));
            }
        }
        Ok(None)
    }

    fn expect_line(&mut self, what: &str) -> Result<(usize, String), InstanceError> {
        self.next_line()?
            .ok_or_else(|| parse_err(self.number + 1, format!("unexpected end of file, expected {what}")))
    }

    fn expect_end(&mut self) -> Result<(), InstanceError> {
        match self.next_line()? {
            None => Ok(()),
            Some((line, _)) => Err(parse_err(line, "unexpected trailing content")),
        }
    }
}

fn parse_field<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T, InstanceError> {
    field
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what} {field:?}")))
}

fn parse_header(
    lines: &mut Lines<impl BufRead>,
    keyword: &str,
    counts: usize,
) -> Result<Vec<usize>, InstanceError> {
    let (line, text) = lines.expect_line("header")?;
    let mut fields = text.split_whitespace();
    if fields.next() != Some(keyword) {
        return Err(parse_err(line, format!("expected header \"{keyword} ...\"")));
    }
    let values = fields
        .map(|f| parse_field::<usize>(line, f, "count"))
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != counts {
        return Err(parse_err(line, format!("header needs {counts} count(s)")));
    }
    Ok(values)
}

pub fn write_embedding<W: Write>(mut w: W, e: &Embedding) -> std::io::Result<()> {
    writeln!(w, "embedding {}", e.len())?;
    for (v, p) in e.points().iter().enumerate() {
        writeln!(w, "{v} {:.16e} {:.16e}", p.x, p.y)?;
    }
    w.flush()
}

pub fn read_embedding<R: BufRead>(reader: R) -> Result<Embedding, InstanceError> {
    let mut lines = Lines::new(reader);
    let n = parse_header(&mut lines, "embedding", 1)?[0];
    if n == 0 {
        return Err(parse_err(lines.number, "embedding must have at least one vertex"));
    }
    let domain = SquareDomain::new(n);
    let mut points: Vec<Option<Point>> = vec![None; n];
    for _ in 0..n {
        let (line, text) = lines.expect_line("point")?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(line, "expected \"id x y\""));
        }
        let id: usize = parse_field(line, fields[0], "vertex id")?;
        let x: f64 = parse_field(line, fields[1], "coordinate")?;
        let y: f64 = parse_field(line, fields[2], "coordinate")?;
        let p = Point::new(x, y);
        if id >= n {
            return Err(parse_err(line, format!("vertex id {id} out of range")));
        }
        if points[id].is_some() {
            return Err(parse_err(line, format!("vertex id {id} repeated")));
        }
        if !p.is_finite() || !domain.contains(&p) {
            return Err(parse_err(line, format!("point ({x}, {y}) outside the square")));
        }
        points[id] = Some(p);
    }
    lines.expect_end()?;
    let points = points.into_iter().map(|p| p.expect("all ids seen")).collect();
    Embedding::new(domain, points)
}

pub fn write_graph<W: Write>(mut w: W, g: &GeometricGraph) -> std::io::Result<()> {
    writeln!(w, "graph {} {}", g.n(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    w.flush()
}

/// Reads an adjacency-only graph; the result carries no threshold.
pub fn read_graph<R: BufRead>(reader: R) -> Result<GeometricGraph, InstanceError> {
    let mut lines = Lines::new(reader);
    let header = parse_header(&mut lines, "graph", 2)?;
    let (n, m) = (header[0], header[1]);
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    for _ in 0..m {
        let (line, text) = lines.expect_line("edge")?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(line, "expected \"u v\""));
        }
        let u: usize = parse_field(line, fields[0], "vertex id")?;
        let v: usize = parse_field(line, fields[1], "vertex id")?;
        if u >= v || v >= n {
            return Err(parse_err(line, format!("edge ({u}, {v}) needs u < v < n")));
        }
        if !seen.insert((u, v)) {
            return Err(parse_err(line, format!("edge ({u}, {v}) repeated")));
        }
        edges.push((u, v));
    }
    lines.expect_end()?;
    GeometricGraph::from_edges(n, &edges, None)
}

pub fn write_orderings<W: Write>(mut w: W, oracle: &OrderingOracle) -> std::io::Result<()> {
    writeln!(w, "orderings {}", oracle.n())?;
    let mut line = String::new();
    for v in 0..oracle.n() {
        line.clear();
        line.push_str(&v.to_string());
        for u in oracle.order(v) {
            line.push(' ');
            line.push_str(&u.to_string());
        }
        writeln!(w, "{line}")?;
    }
    w.flush()
}

pub fn read_orderings<R: BufRead>(reader: R) -> Result<OrderingOracle, InstanceError> {
    let mut lines = Lines::new(reader);
    let n = parse_header(&mut lines, "orderings", 1)?[0];
    let mut rows: Vec<Option<Vec<u32>>> = vec![None; n];
    let mut seen = vec![usize::MAX; n];
    for _ in 0..n {
        let (line, text) = lines.expect_line("ordering row")?;
        let mut fields = text.split_whitespace();
        let v: usize = parse_field(line, fields.next().unwrap_or(""), "vertex id")?;
        if v >= n {
            return Err(parse_err(line, format!("vertex id {v} out of range")));
        }
        if rows[v].is_some() {
            return Err(parse_err(line, format!("row for vertex {v} repeated")));
        }
        let row = fields
            .map(|f| parse_field::<u32>(line, f, "vertex id"))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(parse_err(line, format!("row has {} entries, expected {n}", row.len())));
        }
        if row[0] as usize != v {
            return Err(parse_err(line, format!("row for vertex {v} must start with {v}")));
        }
        for &u in &row {
            let u = u as usize;
            if u >= n {
                return Err(parse_err(line, format!("vertex id {u} out of range")));
            }
            if seen[u] == v {
                return Err(parse_err(line, format!("vertex {u} repeated; not a permutation")));
            }
            seen[u] = v;
        }
        rows[v] = Some(row);
    }
    lines.expect_end()?;
    OrderingOracle::from_table(rows.into_iter().map(|r| r.expect("all rows seen")).collect())
}

pub fn save_embedding(path: &Path, e: &Embedding) -> Result<(), InstanceError> {
    Ok(write_embedding(BufWriter::new(File::create(path)?), e)?)
}

pub fn load_embedding(path: &Path) -> Result<Embedding, InstanceError> {
    read_embedding(BufReader::new(File::open(path)?))
}

pub fn save_graph(path: &Path, g: &GeometricGraph) -> Result<(), InstanceError> {
    Ok(write_graph(BufWriter::new(File::create(path)?), g)?)
}

pub fn load_graph(path: &Path) -> Result<GeometricGraph, InstanceError> {
    read_graph(BufReader::new(File::open(path)?))
}

pub fn save_orderings(path: &Path, oracle: &OrderingOracle) -> Result<(), InstanceError> {
    Ok(write_orderings(BufWriter::new(File::create(path)?), oracle)?)
}

pub fn load_orderings(path: &Path) -> Result<OrderingOracle, InstanceError> {
    read_orderings(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{build_graph, build_ordering_oracle, sample_embedding};

    fn parse_line(err: InstanceError) -> usize {
        match err {
            InstanceError::Parse { line, .. } => line,
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn empty_graph_round_trips() {
        let g = GeometricGraph::from_edges(5, &[], None).unwrap();
        let mut buf = Vec::new();
        write_graph(&mut buf, &g).unwrap();
        assert_eq!(String::from_utf8_lossy(&buf), "graph 5 0\n");
        assert_eq!(read_graph(buf.as_slice()).unwrap(), g);
    }

    #[test]
    fn random_graph_round_trips() {
        let e = sample_embedding(200, 2).unwrap();
        let g = build_graph(&e, 2.0).unwrap();
        let mut buf = Vec::new();
        write_graph(&mut buf, &g).unwrap();
        let back = read_graph(buf.as_slice()).unwrap();
        assert_eq!(back.r(), None);
        for v in 0..200 {
            assert_eq!(back.neighbors(v), g.neighbors(v));
        }
    }

    #[test]
    fn embedding_round_trip_is_bit_exact() {
        let e = sample_embedding(64, 99).unwrap();
        let mut buf = Vec::new();
        write_embedding(&mut buf, &e).unwrap();
        let back = read_embedding(buf.as_slice()).unwrap();
        for (p, q) in e.points().iter().zip(back.points()) {
            assert_eq!(p.x.to_bits(), q.x.to_bits());
            assert_eq!(p.y.to_bits(), q.y.to_bits());
        }
    }

    #[test]
    fn orderings_round_trip() {
        let e = sample_embedding(25, 5).unwrap();
        let o = build_ordering_oracle(&e);
        let mut buf = Vec::new();
        write_orderings(&mut buf, &o).unwrap();
        let back = read_orderings(buf.as_slice()).unwrap();
        for v in 0..25 {
            assert_eq!(back.order(v), o.order(v));
        }
    }

    #[test]
    fn repeated_vertex_in_ordering_rejected() {
        let text = "orderings 3\n0 0 1 2\n1 1 0 0\n2 2 1 0\n";
        assert_eq!(parse_line(read_orderings(text.as_bytes()).unwrap_err()), 3);
        let text = "orderings 2\n0 1 0\n1 1 0\n";
        assert_eq!(parse_line(read_orderings(text.as_bytes()).unwrap_err()), 2);
    }

    #[test]
    fn malformed_headers_and_ranges() {
        assert_eq!(parse_line(read_graph("grph 3 0\n".as_bytes()).unwrap_err()), 1);
        assert_eq!(parse_line(read_graph("graph 3\n".as_bytes()).unwrap_err()), 1);
        assert_eq!(parse_line(read_graph("graph 3 1\n0 3\n".as_bytes()).unwrap_err()), 2);
        assert_eq!(parse_line(read_graph("graph 3 1\n2 1\n".as_bytes()).unwrap_err()), 2);
        assert_eq!(
            parse_line(read_graph("graph 3 2\n0 1\n\n0 1\n".as_bytes()).unwrap_err()),
            4
        );
        assert_eq!(parse_line(read_graph("graph 3 2\n0 1\n".as_bytes()).unwrap_err()), 3);
        assert_eq!(
            parse_line(read_embedding("embedding 2\n0 0 0\n2 0 0\n".as_bytes()).unwrap_err()),
            3
        );
        assert_eq!(
            parse_line(read_embedding("embedding 1\n0 0.6 0\n".as_bytes()).unwrap_err()),
            2
        );
        assert_eq!(
            parse_line(read_embedding("embedding 1\n0 0 0\n0 0 0\n".as_bytes()).unwrap_err()),
            3
        );
    }
}
