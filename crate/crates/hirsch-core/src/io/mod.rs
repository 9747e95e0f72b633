//! The text file format shared by all commands, plus a JSON mirror.
//!
//! The text format is polymake-flavored: named all-caps sections separated
//! by blank lines, one item per line with a single leading space. `POINTS`
//! rows are homogenized (leading 1), `VERTICES_IN_FACETS` rows are
//! brace-wrapped 0-indexed vertex sets, `FACETS` rows are brace-wrapped
//! label sets, `INEQUALITIES`/`EQUATIONS` rows `c0 c1 .. cd` encode
//! `c0 + c . x >= 0` (respectively `= 0`). Rationals render as `p/q`, or
//! `p` when the denominator is one.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::PureComplex;
use crate::exact::{RVector, Rational};
use crate::geometry::{HPolyhedron, Halfspace, IncidenceStructure, LinearEquation, VPolytope};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing section {0}")]
    MissingSection(&'static str),
    #[error("invalid payload: {0}")]
    InvalidPayload(String),
    #[error("json: {0}")]
    Json(String),
}

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        message: message.into(),
    }
}

pub const FORMAT_VERSION: u32 = 1;

/// Parsed file: ordered sections, each with its body lines and the line
/// number of its header (for error reporting).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Document {
    pub sections: Vec<(String, Vec<String>, usize)>,
}

impl Document {
    pub fn section(&self, name: &str) -> Option<&(String, Vec<String>, usize)> {
        self.sections.iter().find(|(n, _, _)| n == name)
    }

    pub fn has_section(&self, name: &str) -> bool {
        self.section(name).is_some()
    }
}

fn is_section_header(line: &str) -> bool {
    !line.is_empty()
        && !line.starts_with(' ')
        && line
            .chars()
            .all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '_')
}

/// Split a text document into sections. Trailing whitespace is ignored, so
/// round trips are byte-exact modulo trailing whitespace.
pub fn parse_document(text: &str) -> Result<Document, IoError> {
    let mut doc = Document::default();
    let mut current: Option<(String, Vec<String>, usize)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end();
        if line.is_empty() {
            if let Some(sec) = current.take() {
                doc.sections.push(sec);
            }
            continue;
        }
        if is_section_header(line) {
            if let Some(sec) = current.take() {
                doc.sections.push(sec);
            }
            if doc.sections.iter().any(|(n, _, _)| n == line) {
                return Err(parse_err(i + 1, format!("duplicate section {line}")));
            }
            current = Some((line.to_string(), Vec::new(), i + 1));
        } else {
            match &mut current {
                Some((_, body, _)) => body.push(line.trim().to_string()),
                None => return Err(parse_err(i + 1, "content before any section header")),
            }
        }
    }
    if let Some(sec) = current.take() {
        doc.sections.push(sec);
    }
    for (name, body, at) in &doc.sections {
        if body.is_empty() {
            return Err(parse_err(*at, format!("section {name} has an empty body")));
        }
    }
    Ok(doc)
}

fn parse_rational(tok: &str, line: usize) -> Result<Rational, IoError> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("cannot parse rational `{tok}`")))
}

fn parse_brace_row(row: &str, line: usize) -> Result<Vec<String>, IoError> {
    let inner = row
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| parse_err(line, "expected a brace-wrapped row"))?;
    let items: Vec<String> = inner.split_whitespace().map(|s| s.to_string()).collect();
    if items.is_empty() {
        return Err(parse_err(line, "empty brace row"));
    }
    Ok(items)
}

/// Typed payloads extracted from a document.
impl Document {
    /// POINTS (homogenized, leading 1) with optional LABELS.
    pub fn to_vpolytope(&self) -> Result<VPolytope, IoError> {
        let (_, body, at) = self
            .section("POINTS")
            .ok_or(IoError::MissingSection("POINTS"))?;
        let mut points = Vec::with_capacity(body.len());
        for (off, row) in body.iter().enumerate() {
            let line = at + 1 + off;
            let toks: Vec<&str> = row.split_whitespace().collect();
            if toks.len() < 2 {
                return Err(parse_err(line, "point row needs a leading 1 and coordinates"));
            }
            let lead = parse_rational(toks[0], line)?;
            if lead != Rational::one() {
                return Err(parse_err(line, "points must be homogenized with a leading 1"));
            }
            let coords = toks[1..]
                .iter()
                .map(|t| parse_rational(t, line))
                .collect::<Result<Vec<_>, _>>()?;
            points.push(RVector::new(coords));
        }
        let labels = self.parse_labels(points.len())?;
        VPolytope::new(points, labels).map_err(|e| IoError::InvalidPayload(e.to_string()))
    }

    fn parse_labels(&self, expected: usize) -> Result<Option<Vec<String>>, IoError> {
        let Some((_, body, at)) = self.section("LABELS") else {
            return Ok(None);
        };
        let labels: Vec<String> = body
            .iter()
            .flat_map(|l| l.split_whitespace())
            .map(|s| s.to_string())
            .collect();
        if labels.len() != expected {
            return Err(parse_err(
                *at,
                format!("{} labels for {} items", labels.len(), expected),
            ));
        }
        Ok(Some(labels))
    }

    /// INEQUALITIES (`c0 + c . x >= 0`) with optional EQUATIONS.
    pub fn to_hpolyhedron(&self) -> Result<HPolyhedron, IoError> {
        let (_, body, at) = self
            .section("INEQUALITIES")
            .ok_or(IoError::MissingSection("INEQUALITIES"))?;
        let mut dim = None;
        let mut parse_rows = |body: &[String], at: usize| -> Result<Vec<(RVector, Rational)>, IoError> {
            let mut out = Vec::new();
            for (off, row) in body.iter().enumerate() {
                let line = at + 1 + off;
                let toks: Vec<&str> = row.split_whitespace().collect();
                if toks.len() < 2 {
                    return Err(parse_err(line, "constraint row needs c0 and coefficients"));
                }
                match dim {
                    None => dim = Some(toks.len() - 1),
                    Some(d) if d != toks.len() - 1 => {
                        return Err(parse_err(line, "constraint rows have mixed dimensions"))
                    }
                    _ => {}
                }
                let c0 = parse_rational(toks[0], line)?;
                // row encodes c0 + c . x >= 0, i.e. (-c) . x <= c0
                let normal = RVector::new(
                    toks[1..]
                        .iter()
                        .map(|t| parse_rational(t, line).map(|r| -r))
                        .collect::<Result<Vec<_>, _>>()?,
                );
                out.push((normal, c0));
            }
            Ok(out)
        };
        let ineqs = parse_rows(body, *at)?
            .into_iter()
            .map(|(n, r)| Halfspace::new(n, r))
            .collect();
        let eqs = match self.section("EQUATIONS") {
            Some((_, body, at)) => parse_rows(body, *at)?
                .into_iter()
                .map(|(n, r)| LinearEquation::new(n, r))
                .collect(),
            None => Vec::new(),
        };
        let dim = dim.ok_or(IoError::MissingSection("INEQUALITIES"))?;
        HPolyhedron::new(ineqs, eqs, dim).map_err(|e| IoError::InvalidPayload(e.to_string()))
    }

    /// FACETS of labels, with optional LABELS fixing the vertex order.
    pub fn to_complex(&self) -> Result<PureComplex, IoError> {
        let (_, body, at) = self
            .section("FACETS")
            .ok_or(IoError::MissingSection("FACETS"))?;
        let mut facets = Vec::with_capacity(body.len());
        for (off, row) in body.iter().enumerate() {
            facets.push(parse_brace_row(row, at + 1 + off)?);
        }
        let complex = PureComplex::from_labelled_facets_owned(&facets)
            .map_err(|e| IoError::InvalidPayload(e.to_string()))?;
        Ok(complex)
    }

    /// VERTICES_IN_FACETS as 0-indexed sets.
    pub fn to_facet_sets(&self) -> Result<Vec<Vec<usize>>, IoError> {
        let (_, body, at) = self
            .section("VERTICES_IN_FACETS")
            .ok_or(IoError::MissingSection("VERTICES_IN_FACETS"))?;
        let mut out = Vec::with_capacity(body.len());
        for (off, row) in body.iter().enumerate() {
            let line = at + 1 + off;
            let mut set = Vec::new();
            for item in parse_brace_row(row, line)? {
                set.push(
                    item.parse::<usize>()
                        .map_err(|_| parse_err(line, format!("bad vertex index `{item}`")))?,
                );
            }
            set.sort();
            out.push(set);
        }
        Ok(out)
    }
}

/// Column-aligned rendering: each row one line, every line indented by one
/// space, columns right-aligned to their widest entry.
fn aligned_rows(rows: &[Vec<String>]) -> Vec<String> {
    let n_cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..n_cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
        .collect();
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r
                .iter()
                .enumerate()
                .map(|(c, s)| format!("{s:>width$}", width = widths[c]))
                .collect();
            format!(" {}", cells.join(" "))
        })
        .collect()
}

/// Emission builder over named sections.
#[derive(Default)]
pub struct DocumentWriter {
    parts: Vec<String>,
}

impl DocumentWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn section(&mut self, name: &str, lines: Vec<String>) -> &mut Self {
        let mut block = String::from(name);
        for l in lines {
            block.push('\n');
            block.push_str(&l);
        }
        self.parts.push(block);
        self
    }

    pub fn aligned_section(&mut self, name: &str, rows: &[Vec<String>]) -> &mut Self {
        self.section(name, aligned_rows(rows))
    }

    pub fn finish(&self) -> String {
        let mut out = self.parts.join("\n\n");
        out.push('\n');
        out
    }
}

/// V-polytope as POINTS (+ LABELS when present).
pub fn emit_vpolytope(p: &VPolytope) -> String {
    let mut w = DocumentWriter::new();
    if let Some(labels) = &p.labels {
        w.section("LABELS", vec![format!(" {}", labels.join(" "))]);
    }
    let rows: Vec<Vec<String>> = p
        .points
        .iter()
        .map(|pt| {
            let mut row = vec!["1".to_string()];
            row.extend(pt.iter().map(Rational::to_string));
            row
        })
        .collect();
    w.aligned_section("POINTS", &rows);
    w.finish()
}

/// H-polyhedron as INEQUALITIES (+ EQUATIONS when present).
pub fn emit_hpolyhedron(h: &HPolyhedron) -> String {
    let encode = |normal: &RVector, rhs: &Rational| -> Vec<String> {
        let mut row = vec![rhs.to_string()];
        row.extend(normal.iter().map(|c| (-c).to_string()));
        row
    };
    let mut w = DocumentWriter::new();
    let rows: Vec<Vec<String>> = h
        .inequalities
        .iter()
        .map(|i| encode(&i.normal, &i.rhs))
        .collect();
    w.aligned_section("INEQUALITIES", &rows);
    if !h.equalities.is_empty() {
        let rows: Vec<Vec<String>> = h
            .equalities
            .iter()
            .map(|e| encode(&e.normal, &e.rhs))
            .collect();
        w.aligned_section("EQUATIONS", &rows);
    }
    w.finish()
}

/// Complex as LABELS + FACETS.
pub fn emit_complex(c: &PureComplex) -> String {
    let mut w = DocumentWriter::new();
    w.section(
        "LABELS",
        vec![format!(" {}", c.vertex_labels().join(" "))],
    );
    let rows: Vec<String> = c
        .facets()
        .iter()
        .map(|f| {
            let labels: Vec<&str> = f
                .iter()
                .map(|&v| c.vertex_labels()[v].as_str())
                .collect();
            format!(" {{{}}}", labels.join(" "))
        })
        .collect();
    w.section("FACETS", rows);
    w.finish()
}

/// Incidence as VERTICES_IN_FACETS (canonical order), preceded by the vertex
/// coordinates when available, and trailed by RAYS for unbounded inputs.
pub fn emit_incidence(inc: &IncidenceStructure) -> String {
    let mut w = DocumentWriter::new();
    if let Some(coords) = &inc.vertex_coords {
        if let Some(labels) = &coords.labels {
            w.section("LABELS", vec![format!(" {}", labels.join(" "))]);
        }
        let rows: Vec<Vec<String>> = coords
            .points
            .iter()
            .map(|pt| {
                let mut row = vec!["1".to_string()];
                row.extend(pt.iter().map(Rational::to_string));
                row
            })
            .collect();
        w.aligned_section("POINTS", &rows);
    }
    let rows: Vec<String> = (0..inc.n_facets)
        .map(|f| {
            let vs: Vec<String> = inc
                .facet_vertex_set(f)
                .into_iter()
                .map(|v| v.to_string())
                .collect();
            format!(" {{{}}}", vs.join(" "))
        })
        .collect();
    w.section("VERTICES_IN_FACETS", rows);
    if !inc.rays.is_empty() {
        let rows: Vec<Vec<String>> = inc
            .rays
            .iter()
            .map(|r| {
                let mut row = vec![r.base_vertex.to_string()];
                row.extend(r.direction.iter().map(Rational::to_string));
                row
            })
            .collect();
        w.aligned_section("RAYS", &rows);
    }
    w.finish()
}

/// JSON mirror of the payload types, versioned.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JsonDocument {
    pub format_version: u32,
    #[serde(flatten)]
    pub payload: crate::constructions::Payload,
}

pub fn to_json(payload: &crate::constructions::Payload) -> String {
    serde_json::to_string_pretty(&JsonDocument {
        format_version: FORMAT_VERSION,
        payload: payload.clone(),
    })
    .expect("payloads serialize")
}

pub fn from_json(text: &str) -> Result<crate::constructions::Payload, IoError> {
    let doc: JsonDocument =
        serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    if doc.format_version != FORMAT_VERSION {
        return Err(IoError::Json(format!(
            "unsupported format_version {}",
            doc.format_version
        )));
    }
    Ok(doc.payload)
}

/// Read either format: JSON when the text starts with `{`, the sectioned
/// text format otherwise. Payload kind is inferred from the sections.
pub fn read_payload(text: &str) -> Result<crate::constructions::Payload, IoError> {
    use crate::constructions::Payload;
    if text.trim_start().starts_with('{') {
        return from_json(text);
    }
    let doc = parse_document(text)?;
    if doc.has_section("FACETS") {
        Ok(Payload::Complex(doc.to_complex()?))
    } else if doc.has_section("POINTS") {
        Ok(Payload::VPolytope(doc.to_vpolytope()?))
    } else if doc.has_section("INEQUALITIES") {
        Ok(Payload::HPolyhedron(doc.to_hpolyhedron()?))
    } else {
        Err(IoError::InvalidPayload(
            "no FACETS, POINTS or INEQUALITIES section".into(),
        ))
    }
}

pub fn emit_payload(payload: &crate::constructions::Payload) -> String {
    use crate::constructions::Payload;
    match payload {
        Payload::VPolytope(p) => emit_vpolytope(p),
        Payload::HPolyhedron(h) => emit_hpolyhedron(h),
        Payload::Complex(c) => emit_complex(c),
    }
}

/// Canonically sorted facet sets, the comparison form used by golden tests.
pub fn canonical_facet_sets(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| {
            let mut t = s.clone();
            t.sort();
            t
        })
        .collect();
    out.sort();
    out
}

/// Render facet sets in the brace format, one per line with the leading
/// space, canonical order.
pub fn render_facet_sets(sets: &[Vec<usize>]) -> String {
    let mut out = String::from("VERTICES_IN_FACETS\n");
    for s in canonical_facet_sets(sets) {
        let items: Vec<String> = s.iter().map(usize::to_string).collect();
        out.push_str(&format!(" {{{}}}\n", items.join(" ")));
    }
    out
}

/// Label map helper for CLI output: optional LABELS section applied to facet
/// sets.
pub fn facet_sets_of(inc: &IncidenceStructure) -> Vec<Vec<usize>> {
    (0..inc.n_facets).map(|f| inc.facet_vertex_set(f)).collect()
}

#[allow(unused)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<Document>();
    check::<BTreeMap<String, String>>();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{klee_walkup_q4, Payload};

    #[test]
    fn parse_and_emit_points_round_trip() {
        let q4 = klee_walkup_q4();
        let text = emit_vpolytope(&q4);
        let doc = parse_document(&text).unwrap();
        let back = doc.to_vpolytope().unwrap();
        assert_eq!(back, q4);
        // emission is canonical: emit(parse(emit(x))) == emit(x)
        assert_eq!(emit_vpolytope(&back), text);
    }

    #[test]
    fn q4_points_block_renders_like_the_published_file() {
        let text = emit_vpolytope(&klee_walkup_q4());
        assert!(text.contains("POINTS\n 1  0  0  0 -2\n 1 -3  3  1  2\n"));
    }

    #[test]
    fn parse_rejects_non_homogeneous_points() {
        let bad = "POINTS\n 2 0 0\n";
        let doc = parse_document(bad).unwrap();
        let err = doc.to_vpolytope().unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 2, .. }));
    }

    #[test]
    fn parse_reports_line_numbers() {
        let bad = "POINTS\n 1 0 0\n 1 x 0\n";
        let doc = parse_document(bad).unwrap();
        let err = doc.to_vpolytope().unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 3, .. }));
    }

    #[test]
    fn hpolyhedron_round_trip() {
        let h = HPolyhedron::cube(3, 0, 1);
        let text = emit_hpolyhedron(&h);
        let back = parse_document(&text).unwrap().to_hpolyhedron().unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn complex_round_trip() {
        let c = PureComplex::crosspolytope_boundary(3);
        let text = emit_complex(&c);
        let back = parse_document(&text).unwrap().to_complex().unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn vertices_in_facets_parses_the_published_layout() {
        let text = "VERTICES_IN_FACETS\n {2 3 7 8}\n {0 1 2 3}\n";
        let sets = parse_document(text).unwrap().to_facet_sets().unwrap();
        assert_eq!(sets, vec![vec![2, 3, 7, 8], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn json_mirror_round_trip() {
        let payload = Payload::VPolytope(klee_walkup_q4());
        let json = to_json(&payload);
        assert!(json.contains("\"format_version\": 1"));
        let back = from_json(&json).unwrap();
        assert_eq!(back, payload);
        // rationals render as strings in json
        assert!(json.contains("\"-2\""));
    }

    #[test]
    fn read_payload_dispatches_on_sections() {
        let c = PureComplex::crosspolytope_boundary(2);
        match read_payload(&emit_complex(&c)).unwrap() {
            Payload::Complex(back) => assert_eq!(back, c),
            _ => panic!("expected a complex"),
        }
        let h = HPolyhedron::cube(2, 0, 1);
        match read_payload(&emit_hpolyhedron(&h)).unwrap() {
            Payload::HPolyhedron(back) => assert_eq!(back, h),
            _ => panic!("expected an H-polyhedron"),
        }
    }
}
