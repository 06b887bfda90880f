//! OFF reader. Coordinates are parsed exactly: decimal literals become the
//! rationals they denote (0.5 -> 1/2) and `p/q` fractions are accepted.

use super::{MeshError, Polyhedron};
use crate::kernel::{parse_exact, Vec3};

pub fn load_off(text: &str) -> Result<Polyhedron, MeshError> {
    let mut tokens = Tokens::new(text);
    let header = tokens.next().ok_or_else(|| err(0, "empty input"))?;
    if header.0 != "OFF" {
        return Err(err(header.1, "expected OFF header"));
    }
    let n_vertices = tokens.usize("vertex count")?;
    let n_facets = tokens.usize("facet count")?;
    let _n_edges = tokens.usize("edge count")?;

    let mut vertices = Vec::with_capacity(n_vertices);
    for _ in 0..n_vertices {
        let x = tokens.scalar("x coordinate")?;
        let y = tokens.scalar("y coordinate")?;
        let z = tokens.scalar("z coordinate")?;
        vertices.push(Vec3::new(x, y, z));
    }
    let mut boundaries = Vec::with_capacity(n_facets);
    for _ in 0..n_facets {
        let k = tokens.usize("facet vertex count")?;
        if k < 3 {
            return Err(err(tokens.line, "facet with fewer than 3 vertices"));
        }
        let mut boundary = Vec::with_capacity(k);
        for _ in 0..k {
            boundary.push(tokens.usize("vertex id")?);
        }
        tokens.skip_rest_of_line(); // per-facet color values, if any
        boundaries.push(boundary);
    }
    Polyhedron::from_parts(vertices, boundaries)
}

/// Serializes a polyhedron as OFF text. Coordinates are written exactly
/// (integers, or `p/q` fractions, which the reader accepts back).
pub fn to_off(p: &Polyhedron) -> String {
    use crate::kernel::format_exact;
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "OFF");
    let _ = writeln!(out, "{} {} {}", p.vertices.len(), p.facets.len(), p.edge_count());
    for v in &p.vertices {
        let _ = writeln!(
            out,
            "{} {} {}",
            format_exact(&v.x),
            format_exact(&v.y),
            format_exact(&v.z)
        );
    }
    for f in &p.facets {
        let _ = write!(out, "{}", f.boundary.len());
        for &v in &f.boundary {
            let _ = write!(out, " {v}");
        }
        let _ = writeln!(out);
    }
    out
}

fn err(line: usize, message: impl Into<String>) -> MeshError {
    MeshError::Parse {
        line,
        message: message.into(),
    }
}

struct Tokens<'a> {
    lines: Vec<(usize, &'a str)>,
    row: usize,
    col: usize,
    line: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| {
                let l = l.split('#').next().unwrap_or("");
                (i + 1, l)
            })
            .filter(|(_, l)| !l.trim().is_empty())
            .collect();
        Self {
            lines,
            row: 0,
            col: 0,
            line: 0,
        }
    }

    fn next(&mut self) -> Option<(&'a str, usize)> {
        while self.row < self.lines.len() {
            let (lineno, content) = self.lines[self.row];
            let rest = &content[self.col..];
            let trimmed = rest.trim_start();
            if trimmed.is_empty() {
                self.row += 1;
                self.col = 0;
                continue;
            }
            let start = content.len() - trimmed.len();
            let end = trimmed
                .find(char::is_whitespace)
                .map(|e| start + e)
                .unwrap_or(content.len());
            self.col = end;
            self.line = lineno;
            return Some((&content[start..end], lineno));
        }
        None
    }

    fn skip_rest_of_line(&mut self) {
        self.row += 1;
        self.col = 0;
    }

    fn usize(&mut self, what: &str) -> Result<usize, MeshError> {
        let (tok, line) = self
            .next()
            .ok_or_else(|| err(self.line, format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| err(line, format!("invalid {what}: {tok:?}")))
    }

    fn scalar(&mut self, what: &str) -> Result<crate::kernel::Scalar, MeshError> {
        let (tok, line) = self
            .next()
            .ok_or_else(|| err(self.line, format!("missing {what}")))?;
        parse_exact(tok).ok_or_else(|| err(line, format!("invalid {what}: {tok:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ratio;

    #[test]
    fn parses_cube_with_comments_and_colors() {
        let text = "# a cube\nOFF\n8 6 12\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n0 0 1\n1 0 1\n1 1 1\n0 1 1\n4 0 3 2 1 255 0 0\n4 4 5 6 7\n4 0 1 5 4\n4 1 2 6 5\n4 2 3 7 6\n4 3 0 4 7\n";
        let p = load_off(text).unwrap();
        assert_eq!(p.facets.len(), 6);
    }

    #[test]
    fn decimal_coordinates_parse_exactly() {
        let p = load_off(crate::fixtures::SQUARE_PYRAMID_OFF).unwrap();
        assert_eq!(p.vertices[4].x, ratio(1, 2));
    }

    #[test]
    fn off_round_trip_is_exact() {
        let p = crate::fixtures::square_pyramid();
        let text = to_off(&p);
        let back = load_off(&text).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn missing_header_is_a_parse_error() {
        match load_off("8 6 12\n") {
            Err(MeshError::Parse { .. }) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn truncated_file_is_a_parse_error() {
        match load_off("OFF\n8 6 12\n0 0 0\n") {
            Err(MeshError::Parse { .. }) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
