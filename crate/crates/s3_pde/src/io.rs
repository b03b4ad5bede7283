//! Grid I/O: CSV rows `x,y,h,k` preceded by a one-line JSON header
//! `# {"case": …, "spacing": …, "nx": …, "ny": …, "residual": …}`.
//!
//! `h` is left empty on exceptional branches. Rows are matched to grid nodes by
//! rounding `x/spacing` and `y/spacing`.

use crate::{GridField, S3Case, S3Error};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Read, Write};

/// Metadata line of a grid file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldHeader {
    pub case: String,
    pub spacing: f64,
    pub nx: usize,
    pub ny: usize,
    pub residual: Option<f64>,
}

/// One CSV row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub x: f64,
    pub y: f64,
    pub h: Option<f64>,
    pub k: f64,
}

/// Writes the header line and all nodes (row-major, `x` fastest).
pub fn write_field<W: Write>(
    mut out: W,
    case: S3Case,
    field: &GridField,
    residual: Option<f64>,
) -> Result<(), S3Error> {
    let header = FieldHeader { case: case.to_string(), spacing: field.spacing, nx: field.nx, ny: field.ny, residual };
    writeln!(out, "# {}", serde_json::to_string(&header)?)?;
    let mut w = csv::Writer::from_writer(out);
    for idx in 0..field.len() {
        let (x, y) = field.coords(idx);
        let h = field.h.as_ref().map(|h| h[idx]);
        w.serialize(GridPoint { x, y, h, k: field.k[idx] })?;
    }
    w.flush()?;
    Ok(())
}

/// Reads an optional header line and the rows.
pub fn read_points<R: BufRead>(mut input: R) -> Result<(Option<FieldHeader>, Vec<GridPoint>), S3Error> {
    let mut first = String::new();
    input.read_line(&mut first)?;
    let (header, rest): (Option<FieldHeader>, String) = match first.trim_start().strip_prefix('#') {
        Some(json) => (Some(serde_json::from_str(json.trim())?), String::new()),
        None => (None, first),
    };
    let reader = std::io::Cursor::new(rest).chain(input);
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let points = r.deserialize().collect::<Result<Vec<GridPoint>, _>>()?;
    Ok((header, points))
}

/// Node index of `(x, y)` on a grid, if it lies on one within 1e−6 spacings.
fn node_of(x: f64, y: f64, nx: usize, ny: usize, spacing: f64) -> Option<usize> {
    let (fi, fj) = (x / spacing, y / spacing);
    let (i, j) = (fi.round(), fj.round());
    let on = (fi - i).abs() < 1e-6 && (fj - j).abs() < 1e-6;
    (on && i >= 0.0 && j >= 0.0 && (i as usize) < nx && (j as usize) < ny).then(|| i as usize + nx * j as usize)
}

/// Builds an `nx × ny` field from points. Every boundary node must be present;
/// with `require_all` every node must be. Missing interior nodes are set to `0`.
pub fn field_from_points(
    points: &[GridPoint],
    nx: usize,
    ny: usize,
    spacing: f64,
    with_h: bool,
    require_all: bool,
) -> Result<GridField, S3Error> {
    let mut f = GridField::from_fn(nx, ny, spacing, with_h, |_, _| (0.0, 0.0))?;
    let mut seen = vec![false; f.len()];
    for p in points {
        let Some(idx) = node_of(p.x, p.y, nx, ny, spacing) else { continue };
        f.k[idx] = p.k;
        if let Some(h) = f.h.as_mut() {
            h[idx] = p.h.ok_or_else(|| S3Error::InvalidGrid(format!("missing h at ({}, {})", p.x, p.y)))?;
        }
        seen[idx] = true;
    }
    for j in 0..ny {
        for i in 0..nx {
            if !seen[f.index(i, j)] && (require_all || f.is_boundary(i, j)) {
                let (x, y) = f.coords(f.index(i, j));
                return Err(S3Error::InvalidGrid(format!("no value for node ({x}, {y})")));
            }
        }
    }
    Ok(f)
}

/// Reads a complete field written by [`write_field`].
pub fn read_field<R: BufRead>(input: R) -> Result<(S3Case, GridField, Option<f64>), S3Error> {
    let (header, points) = read_points(input)?;
    let header = header.ok_or_else(|| S3Error::InvalidGrid("missing header line".into()))?;
    let case: S3Case = header.case.parse()?;
    let field = field_from_points(&points, header.nx, header.ny, header.spacing, case.has_h(), true)?;
    Ok((case, field, header.residual))
}
