//! Facet-list file formats: a plain-text list and a JSON object.
//!
//! Text:
//!
//! ```text
//! # dim=2 n=3 space=V
//! 1 2 3
//! 1 2 -3
//! ```
//!
//! The header is optional. Without it the ambient size is the largest
//! absolute label and the label space is `V`. The line `{}` stands for the
//! empty facet.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, LabelSpace};
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Format {
    /// `.json` means JSON, anything else text.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Text,
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" | "txt" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidParameters(format!("unknown format {other:?}"))),
        }
    }
}

pub fn to_text(c: &Complex) -> String {
    let mut out = format!("# dim={} n={} space={}\n", c.dim(), c.ambient_n(), c.space().tag());
    for f in c.facets() {
        if f.is_empty() {
            out.push_str("{}\n");
            continue;
        }
        let labels: Vec<String> = f.vertices().map(|v| v.label().to_string()).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

struct Header {
    dim: Option<i32>,
    n: Option<u32>,
    space: Option<LabelSpace>,
}

fn parse_header(body: &str, line: usize) -> Result<Header> {
    let mut h = Header { dim: None, n: None, space: None };
    let err = |msg: String| Error::Parse { line, msg };
    for token in body.split_whitespace() {
        let Some((key, value)) = token.split_once('=') else {
            return Err(err(format!("malformed header field {token:?}")));
        };
        match key {
            "dim" => h.dim = Some(value.parse().map_err(|_| err(format!("bad dim {value:?}")))?),
            "n" => h.n = Some(value.parse().map_err(|_| err(format!("bad n {value:?}")))?),
            "space" => {
                h.space = Some(match value {
                    "V" => LabelSpace::V,
                    "W" => LabelSpace::W,
                    _ => return Err(err(format!("unknown label space {value:?}"))),
                })
            }
            _ => return Err(err(format!("unknown header field {key:?}"))),
        }
    }
    Ok(h)
}

pub fn from_text(s: &str) -> Result<Complex> {
    let mut header = Header { dim: None, n: None, space: None };
    let mut facets = Vec::new();
    let mut max_abs = 0;
    for (i, raw) in s.lines().enumerate() {
        let line = i + 1;
        let text = raw.trim();
        if let Some(rest) = text.strip_prefix('#') {
            let rest = rest.trim();
            if i == 0 && rest.starts_with("dim=") {
                header = parse_header(rest, line)?;
            }
            continue;
        }
        if text.is_empty() {
            continue;
        }
        if text == "{}" {
            facets.push(Face::EMPTY);
            continue;
        }
        let mut vs = Vec::new();
        for tok in text.split_whitespace() {
            let label: i32 = tok.parse().map_err(|_| Error::Parse { line, msg: format!("not an integer: {tok:?}") })?;
            let v = Vertex::new(label).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
            if vs.contains(&v) {
                return Err(Error::Parse { line, msg: format!("vertex {label} repeated") });
            }
            max_abs = max_abs.max(v.abs());
            vs.push(v);
        }
        facets.push(Face::from_vertices(vs));
    }
    let space = header.space.unwrap_or(LabelSpace::V);
    let n = header.n.unwrap_or_else(|| match space {
        LabelSpace::V => max_abs.max(1),
        LabelSpace::W => max_abs.saturating_sub(2).max(1),
    });
    let c = Complex::new(n, space, facets).map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?;
    if let Some(d) = header.dim {
        if d != c.dim() {
            return Err(Error::Parse { line: 1, msg: format!("header says dim={d}, facets give {}", c.dim()) });
        }
    }
    Ok(c)
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    ambient_n: u32,
    dim: i32,
    #[serde(default = "default_space")]
    space: LabelSpace,
    facets: Vec<Vec<i32>>,
}

fn default_space() -> LabelSpace {
    LabelSpace::V
}

pub fn to_json(c: &Complex) -> String {
    let doc = ComplexJson {
        ambient_n: c.ambient_n(),
        dim: c.dim(),
        space: c.space(),
        facets: c.facets().iter().map(|f| f.labels()).collect(),
    };
    let mut s = serde_json::to_string(&doc).expect("plain data");
    s.push('\n');
    s
}

pub fn from_json(s: &str) -> Result<Complex> {
    let doc: ComplexJson = serde_json::from_str(s)?;
    let facets = doc
        .facets
        .iter()
        .map(|l| Face::try_from_labels(l))
        .collect::<Result<Vec<_>>>()?;
    let c = Complex::new(doc.ambient_n, doc.space, facets)?;
    if c.dim() != doc.dim {
        return Err(Error::DimensionMismatch { expected: doc.dim, found: c.dim() });
    }
    Ok(c)
}

pub fn export(c: &Complex, format: Format) -> String {
    match format {
        Format::Text => to_text(c),
        Format::Json => to_json(c),
    }
}

pub fn import(s: &str, format: Format) -> Result<Complex> {
    match format {
        Format::Text => from_text(s),
        Format::Json => from_json(s),
    }
}

pub fn read_complex(path: &Path) -> Result<Complex> {
    import(&std::fs::read_to_string(path)?, Format::from_path(path))
}

pub fn write_complex(c: &Complex, path: &Path) -> Result<()> {
    std::fs::write(path, export(c, Format::from_path(path)))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_delta, build_lambda, cross_polytope};

    #[test]
    fn octahedron_text() {
        let text = to_text(&cross_polytope(3).unwrap());
        let lines: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(lines.len(), 8);
        assert!(lines.iter().all(|l| l.split(' ').count() == 3));
        assert!(text.starts_with("# dim=2 n=3 space=V\n"));
    }

    #[test]
    fn round_trips() {
        let d = build_delta(3, 6).unwrap();
        assert_eq!(from_text(&to_text(&d)).unwrap(), *d);
        assert_eq!(from_json(&to_json(&d)).unwrap(), *d);
        let l = build_lambda(3, 5).unwrap();
        assert_eq!(from_text(&to_text(&l)).unwrap(), l);
        let e = Complex::empty_face(2, LabelSpace::V);
        assert_eq!(from_text(&to_text(&e)).unwrap(), e);
    }

    #[test]
    fn zero_label_rejected() {
        let err = from_text("# dim=1 n=3 space=V\n1 2\n0 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(matches!(from_text("1 x\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn headerless_and_mismatch() {
        let c = from_text("1 2\n2 -3\n").unwrap();
        assert_eq!((c.ambient_n(), c.dim()), (3, 1));
        assert!(from_text("# dim=2 n=3 space=V\n1 2\n").is_err());
        assert!(from_json(r#"{"ambient_n":3,"dim":0,"facets":[[1,2]]}"#).is_err());
    }

    #[test]
    fn json_shape() {
        let c = Complex::cycle(3, &[1, 2, 3]).unwrap();
        assert_eq!(to_json(&c), "{\"ambient_n\":3,\"dim\":1,\"space\":\"V\",\"facets\":[[1,2],[1,3],[2,3]]}\n");
    }
}
