//! Component tables (CSV) and key-value reports.

use std::fmt::Write as _;
use std::path::Path;

use crate::algebra::BasisIndex;
use crate::error::{Error, Result};
use crate::field::FormField;
use crate::grid::{Axis, GridSpec};

/// Formats a value with 17 significant digits, enough to round-trip.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row per node: coordinates `x1..xn`, then one column per component
/// labelled by its digit string (`13` for `dx¹∧dx³`, `0` for the scalar).
pub fn field_to_csv(field: &FormField) -> String {
    let grid = field.grid();
    let n = grid.dim();
    let comps: Vec<(BasisIndex, &[f64])> = field.components().collect();
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let header: Vec<String> = (1..=n)
        .map(|i| format!("x{i}"))
        .chain(comps.iter().map(|(b, _)| b.label(n)))
        .collect();
    w.write_record(&header).expect("in-memory write");
    let coords = grid.axis_coordinates();
    for k in 0..grid.len() {
        let m = grid.multi_index(k);
        let row = m
            .iter()
            .enumerate()
            .map(|(i, &j)| format_real(coords[i][j]))
            .chain(comps.iter().map(|(_, v)| format_real(v[k])));
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

fn table_err(line: u64, msg: impl std::fmt::Display) -> Error {
    Error::Table(format!("line {line}: {msg}"))
}

/// Reads a table written by [`field_to_csv`]. The grid is inferred from the
/// distinct coordinates of each axis; rows may come in any order.
pub fn field_from_csv(text: &str) -> Result<FormField> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let cols: Vec<String> = rdr
        .headers()
        .map_err(|e| table_err(1, e))?
        .iter()
        .map(str::to_string)
        .collect();
    let n = cols.iter().take_while(|c| c.starts_with('x')).count();
    if n == 0 {
        return Err(table_err(1, "no coordinate columns"));
    }
    for (i, c) in cols[..n].iter().enumerate() {
        if *c != format!("x{}", i + 1) {
            return Err(table_err(1, format!("expected x{} but found {c}", i + 1)));
        }
    }
    let labels = cols[n..]
        .iter()
        .map(|l| BasisIndex::parse_label(l, n))
        .collect::<Result<Vec<_>>>()?;

    let mut rows: Vec<Vec<f64>> = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Table(e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        let vals = rec
            .iter()
            .map(|v| v.parse::<f64>().map_err(|e| table_err(line, e)))
            .collect::<Result<Vec<_>>>()?;
        rows.push(vals);
    }
    if rows.is_empty() {
        return Err(table_err(2, "no rows"));
    }

    let mut distinct: Vec<Vec<f64>> = vec![Vec::new(); n];
    for row in &rows {
        for (i, d) in distinct.iter_mut().enumerate() {
            d.push(row[i]);
        }
    }
    for d in distinct.iter_mut() {
        d.sort_by(f64::total_cmp);
        d.dedup();
    }
    let axes = distinct
        .iter()
        .map(|d| Axis::new(d[0], d[d.len() - 1], d.len()))
        .collect();
    let grid = GridSpec::new(axes)?;
    for (axis, d) in grid.axes().iter().zip(&distinct) {
        let tol = 1e-9 * axis.spacing();
        if d.iter().enumerate().any(|(j, x)| (axis.coordinate(j) - x).abs() > tol) {
            return Err(Error::Table(format!("coordinates {d:?} are not uniformly spaced")));
        }
    }
    if rows.len() != grid.len() {
        return Err(Error::Table(format!("{} rows for a grid of {} nodes", rows.len(), grid.len())));
    }
    let mut data = vec![vec![0.0; grid.len()]; labels.len()];
    let mut seen = vec![false; grid.len()];
    for row in &rows {
        let m: Vec<usize> = (0..n)
            .map(|i| distinct[i].binary_search_by(|v| v.total_cmp(&row[i])).unwrap())
            .collect();
        let k = grid.index(&m);
        if std::mem::replace(&mut seen[k], true) {
            return Err(Error::Table(format!("node {m:?} appears twice")));
        }
        for (c, d) in data.iter_mut().enumerate() {
            d[k] = row[n + c];
        }
    }
    FormField::from_components(&grid, labels.into_iter().zip(data))
}

pub fn write_field_csv(field: &FormField, path: &Path) -> Result<()> {
    std::fs::write(path, field_to_csv(field))?;
    Ok(())
}

pub fn read_field_csv(path: &Path) -> Result<FormField> {
    field_from_csv(&std::fs::read_to_string(path)?)
}

/// `name: value` lines grouped into `[section]` blocks.
#[derive(Clone, Debug, Default)]
pub struct Report {
    text: String,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn section(&mut self, name: &str) -> &mut Self {
        if !self.text.is_empty() {
            self.text.push('\n');
        }
        let _ = writeln!(self.text, "[{name}]");
        self
    }

    pub fn entry(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        let _ = writeln!(self.text, "{key}: {value}");
        self
    }

    pub fn real(&mut self, key: &str, value: f64) -> &mut Self {
        self.entry(key, format_real(value))
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let g = GridSpec::new(vec![Axis::new(-1.0, 2.0, 4), Axis::new(0.1, 0.7, 3), Axis::new(-3.0, 3.0, 5)]).unwrap();
        let f = FormField::from_fn(&g, BasisIndex::from_axes(&[1, 3], 3).unwrap(), |x| (x[0] * 1.1).exp() / 7.0 + x[2])
            .add(&FormField::scalar_from_fn(&g, |x| x[1].sin() * 1e-300))
            .unwrap();
        let text = field_to_csv(&f);
        assert!(text.starts_with("x1,x2,x3,0,13\n"));
        let back = field_from_csv(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(field_to_csv(&back), text);
    }

    #[test]
    fn shuffled_rows() {
        let g = GridSpec::cube(2, 0.0, 1.0, 3).unwrap();
        let f = FormField::from_fn(&g, BasisIndex::axis(2), |x| x[0] + 10.0 * x[1]);
        let text = field_to_csv(&f);
        let mut lines: Vec<&str> = text.lines().collect();
        lines[1..].reverse();
        assert_eq!(field_from_csv(&lines.join("\n")).unwrap(), f);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(field_from_csv("").is_err());
        assert!(field_from_csv("a,b\n1,2\n").is_err());
        assert!(field_from_csv("x1,1\n0,1\n1\n").is_err());
        assert!(field_from_csv("x1,1\n").is_err());
        assert!(field_from_csv("x1,1\n0,1\n1,1\n3,1\n").is_err());
        assert!(field_from_csv("x1,11\n0,1\n1,2\n").is_err());
    }

    #[test]
    fn report_layout() {
        let mut r = Report::new();
        r.section("run").entry("n", 3).real("norm", 0.5);
        r.section("parts").entry("grade", 1);
        assert_eq!(r.as_str(), "[run]\nn: 3\nnorm: 5.0000000000000000e-1\n\n[parts]\ngrade: 1\n");
    }
}
