//! Plain-text field snapshots.
//!
//! Line 1 is `n N L representation`; then `N^n` lines `re im` in row-major order,
//! every float written with 17 significant digits.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use super::field::{Field, Representation};
use super::grid::Grid;
use crate::error::{Error, Result};

pub(crate) fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_field<W: Write>(f: &Field, mut out: W) -> Result<()> {
    let g = f.grid();
    writeln!(out, "{} {} {} {}", g.dim(), g.points(), fmt_f64(g.period()), f.representation())?;
    for z in f.values() {
        writeln!(out, "{} {}", fmt_f64(z.re), fmt_f64(z.im))?;
    }
    Ok(())
}

pub fn save_field(f: &Field, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_field(f, &mut w)?;
    w.flush()?;
    Ok(())
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub(crate) fn parse_pair(text: &str, line: usize) -> Result<Complex64> {
    let mut it = text.split_whitespace();
    let re = it.next().ok_or_else(|| parse_err(line, "missing real part"))?;
    let im = it.next().ok_or_else(|| parse_err(line, "missing imaginary part"))?;
    if it.next().is_some() {
        return Err(parse_err(line, "expected exactly two numbers"));
    }
    let re: f64 = re.parse().map_err(|_| parse_err(line, format!("bad number {re:?}")))?;
    let im: f64 = im.parse().map_err(|_| parse_err(line, format!("bad number {im:?}")))?;
    Ok(Complex64::new(re, im))
}

pub fn read_field<R: Read>(input: R) -> Result<Field> {
    let mut lines = BufReader::new(input).lines();
    let header = lines.next().ok_or_else(|| parse_err(1, "empty file"))??;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 4 {
        return Err(parse_err(1, "header must be `n N L representation`"));
    }
    let dim: usize = parts[0].parse().map_err(|_| parse_err(1, "bad dimension"))?;
    let points: usize = parts[1].parse().map_err(|_| parse_err(1, "bad point count"))?;
    let period: f64 = parts[2].parse().map_err(|_| parse_err(1, "bad period"))?;
    let repr = match parts[3] {
        "physical" => Representation::Physical,
        "spectral" => Representation::Spectral,
        other => return Err(parse_err(1, format!("unknown representation {other:?}"))),
    };
    let grid = Grid::new(dim, points, period)?;
    let mut values = Vec::with_capacity(grid.len());
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        values.push(parse_pair(&line, i + 2)?);
    }
    if values.len() != grid.len() {
        return Err(parse_err(
            values.len() + 1,
            format!("expected {} samples, found {}", grid.len(), values.len()),
        ));
    }
    Field::new(grid, values, repr)
}

pub fn load_field(path: impl AsRef<Path>) -> Result<Field> {
    read_field(File::open(path)?)
}
