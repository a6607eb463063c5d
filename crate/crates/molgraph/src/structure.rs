//! 3D structure input: XYZ and V2000 molfile/SDF readers.
//!
//! Both formats are reduced to a [`LabeledPointCloud`]: element labels plus
//! Cartesian coordinates, which is all the downstream spectral machinery
//! needs. Connectivity blocks in SDF files are ignored.

use std::path::Path;

use crate::element::Element;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPoint {
    pub element: Element,
    pub position: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LabeledPointCloud {
    pub points: Vec<LabeledPoint>,
}

impl LabeledPointCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Positions of the points whose element is in `elements`.
    pub fn positions_of(&self, elements: &[Element]) -> Vec<[f64; 3]> {
        self.points
            .iter()
            .filter(|p| elements.contains(&p.element))
            .map(|p| p.position)
            .collect()
    }

    /// Positions of every non-hydrogen point.
    pub fn heavy_positions(&self) -> Vec<[f64; 3]> {
        self.points
            .iter()
            .filter(|p| p.element != Element::H)
            .map(|p| p.position)
            .collect()
    }
}

fn bad(line: usize, detail: impl Into<String>) -> Error {
    Error::MalformedRecord {
        line,
        detail: detail.into(),
    }
}

fn parse_element(sym: &str, line: usize) -> Result<Element> {
    Element::from_symbol(sym).ok_or_else(|| bad(line, format!("unknown element `{sym}`")))
}

fn parse_coord(tok: &str, line: usize, axis: char) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| bad(line, format!("{axis} coordinate `{tok}` is not a number")))
}

/// Parse XYZ text: an atom count, a comment line, then `symbol x y z` rows.
/// Extra columns on atom rows are ignored; only the first frame of a
/// multi-frame file is read.
pub fn parse_xyz(text: &str) -> Result<LabeledPointCloud> {
    let mut lines = text.lines().enumerate();
    let (_, count_line) = lines.next().ok_or_else(|| bad(1, "empty file"))?;
    let natoms: usize = count_line
        .trim()
        .parse()
        .map_err(|_| bad(1, format!("expected an atom count, found `{}`", count_line.trim())))?;
    lines.next().ok_or_else(|| bad(2, "missing comment line"))?;

    let mut points = Vec::with_capacity(natoms);
    for _ in 0..natoms {
        let (idx, row) = lines
            .next()
            .ok_or_else(|| bad(points.len() + 3, "file ends before declared atom count"))?;
        let line_no = idx + 1;
        let toks: Vec<&str> = row.split_whitespace().collect();
        if toks.len() < 4 {
            return Err(bad(line_no, "expected `symbol x y z`"));
        }
        points.push(LabeledPoint {
            element: parse_element(toks[0], line_no)?,
            position: [
                parse_coord(toks[1], line_no, 'x')?,
                parse_coord(toks[2], line_no, 'y')?,
                parse_coord(toks[3], line_no, 'z')?,
            ],
        });
    }
    Ok(LabeledPointCloud { points })
}

/// Parse the first record of a V2000 molfile/SDF. Only the counts line and
/// the atom block are interpreted.
pub fn parse_sdf(text: &str) -> Result<LabeledPointCloud> {
    let lines: Vec<&str> = text.lines().collect();
    if lines.len() < 4 {
        return Err(bad(lines.len().max(1), "molfile header is four lines"));
    }
    let counts = lines[3];
    if let Some(version) = counts.split_whitespace().last().filter(|t| t.starts_with('V')) {
        if version != "V2000" {
            return Err(bad(4, format!("unsupported connection table version {version}")));
        }
    }
    if counts.len() < 6 {
        return Err(bad(4, "counts line too short"));
    }
    let natoms: usize = counts[0..3]
        .trim()
        .parse()
        .map_err(|_| bad(4, format!("bad atom count field `{}`", &counts[0..3])))?;

    let mut points = Vec::with_capacity(natoms);
    for i in 0..natoms {
        let line_no = 5 + i;
        let row = lines
            .get(4 + i)
            .ok_or_else(|| bad(line_no, "file ends before declared atom count"))?;
        let toks: Vec<&str> = row.split_whitespace().collect();
        if toks.len() < 4 {
            return Err(bad(line_no, "expected `x y z symbol` atom row"));
        }
        points.push(LabeledPoint {
            element: parse_element(toks[3], line_no)?,
            position: [
                parse_coord(toks[0], line_no, 'x')?,
                parse_coord(toks[1], line_no, 'y')?,
                parse_coord(toks[2], line_no, 'z')?,
            ],
        });
    }
    Ok(LabeledPointCloud { points })
}

/// Read a structure file, dispatching on its extension (`.xyz`, `.sdf`,
/// `.mol`).
pub fn load_structure(path: impl AsRef<Path>) -> Result<LabeledPointCloud> {
    let path = path.as_ref();
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .unwrap_or_default();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;
    match ext.as_str() {
        "xyz" => parse_xyz(&text),
        "sdf" | "mol" => parse_sdf(&text),
        _ => Err(Error::UnsupportedFormat { ext }),
    }
}
