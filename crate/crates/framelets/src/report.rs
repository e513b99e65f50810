//! Deterministic report and CSV emission.
//!
//! Reports are serialized through `serde_json::Value`, whose object maps are
//! ordered, so identical inputs give byte-identical output with sorted keys.
//! CSV uses `.` as the decimal separator and always carries a header row.

use crate::fwt::{Pyramid, Signal};
use crate::scalar::{Coeff, ExactScalar};
use crate::{Error, Result};
use num::complex::Complex64;
use num::{BigRational, ToPrimitive};
use serde::Serialize;
use std::io::{BufRead, Write};

/// Canonical JSON: sorted keys, trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

/// Writes a report to the given path, or to stdout when the path is `None`.
pub fn emit<T: Serialize>(value: &T, path: Option<&std::path::Path>) -> Result<()> {
    let text = to_canonical_json(value)?;
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn rational_parts(r: &BigRational) -> Result<(i64, i64)> {
    let num = r.numer().to_i64();
    let den = r.denom().to_i64();
    match (num, den) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::InvalidParameter(
            "coefficient exceeds 64-bit rational range in CSV output".into(),
        )),
    }
}

/// Exact-mode signal CSV: `index,re_num,re_den,im_num,im_den`.
pub fn write_exact_signal_csv<W: Write>(s: &Signal<ExactScalar>, mut w: W) -> Result<()> {
    writeln!(w, "index,re_num,re_den,im_num,im_den")?;
    for (k, c) in s.iter() {
        let (rn, rd) = rational_parts(&c.re)?;
        let (im_n, im_d) = rational_parts(&c.im)?;
        writeln!(w, "{k},{rn},{rd},{im_n},{im_d}")?;
    }
    Ok(())
}

/// Float-mode signal CSV: `index,re,im`.
pub fn write_float_signal_csv<W: Write>(s: &Signal<Complex64>, mut w: W) -> Result<()> {
    writeln!(w, "index,re,im")?;
    for (k, c) in s.iter() {
        writeln!(w, "{k},{},{}", c.re, c.im)?;
    }
    Ok(())
}

fn split_line(line: &str, cols: usize, lineno: usize) -> Result<Vec<String>> {
    let parts: Vec<String> = line.split(',').map(|p| p.trim().to_string()).collect();
    if parts.len() != cols {
        return Err(Error::Config(format!(
            "line {lineno}: expected {cols} columns, got {}",
            parts.len()
        )));
    }
    Ok(parts)
}

fn parse_i64(s: &str, lineno: usize) -> Result<i64> {
    s.parse()
        .map_err(|_| Error::Config(format!("line {lineno}: bad integer {s:?}")))
}

fn parse_f64(s: &str, lineno: usize) -> Result<f64> {
    let v: f64 = s
        .parse()
        .map_err(|_| Error::Config(format!("line {lineno}: bad number {s:?}")))?;
    if !v.is_finite() {
        return Err(Error::Config(format!("line {lineno}: non-finite {s:?}")));
    }
    Ok(v)
}

/// Reads an exact-mode signal CSV (header mandatory).
pub fn read_exact_signal_csv<R: BufRead>(r: R) -> Result<Signal<ExactScalar>> {
    let mut pairs = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if i == 0 {
            if line.trim() != "index,re_num,re_den,im_num,im_den" {
                return Err(Error::Config(format!("unexpected header {line:?}")));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let p = split_line(&line, 5, i + 1)?;
        let k = parse_i64(&p[0], i + 1)?;
        let rd = parse_i64(&p[2], i + 1)?;
        let im_d = parse_i64(&p[4], i + 1)?;
        if rd == 0 || im_d == 0 {
            return Err(Error::Config(format!("line {}: zero denominator", i + 1)));
        }
        pairs.push((
            k,
            ExactScalar::from_ratios(parse_i64(&p[1], i + 1)?, rd, parse_i64(&p[3], i + 1)?, im_d),
        ));
    }
    Ok(Signal::from_pairs(pairs))
}

/// Reads a float-mode signal CSV (header mandatory).
pub fn read_float_signal_csv<R: BufRead>(r: R) -> Result<Signal<Complex64>> {
    let mut pairs = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if i == 0 {
            if line.trim() != "index,re,im" {
                return Err(Error::Config(format!("unexpected header {line:?}")));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let p = split_line(&line, 3, i + 1)?;
        pairs.push((
            parse_i64(&p[0], i + 1)?,
            Complex64::new(parse_f64(&p[1], i + 1)?, parse_f64(&p[2], i + 1)?),
        ));
    }
    Ok(Signal::from_pairs(pairs))
}

/// Pyramid CSV: a `channel` column (`coarse` or `detail.<step>.<index>`)
/// followed by the signal columns of the configured mode.
pub fn write_pyramid_csv<C, W, F>(pyr: &Pyramid<C>, mut w: W, mut row: F) -> Result<()>
where
    C: Coeff,
    W: Write,
    F: FnMut(&C) -> String,
{
    writeln!(w, "channel,index,{}", if C::EXACT { "re_num,re_den,im_num,im_den" } else { "re,im" })?;
    for (k, c) in pyr.coarse.iter() {
        writeln!(w, "coarse,{k},{}", row(c))?;
    }
    for (step, channels) in pyr.details.iter().enumerate() {
        for (ell, sig) in channels.iter().enumerate() {
            for (k, c) in sig.iter() {
                writeln!(w, "detail.{step}.{ell},{k},{}", row(c))?;
            }
        }
    }
    Ok(())
}

pub fn exact_csv_cell(c: &ExactScalar) -> String {
    let (rn, rd) = rational_parts(&c.re).unwrap_or((0, 1));
    let (im_n, im_d) = rational_parts(&c.im).unwrap_or((0, 1));
    format!("{rn},{rd},{im_n},{im_d}")
}

pub fn float_csv_cell(c: &Complex64) -> String {
    format!("{},{}", c.re, c.im)
}

/// Parses a pyramid CSV back into `levels` steps of `channels` detail
/// signals each (absent rows mean zero coefficients); rows outside that
/// shape are a mismatch error.
pub fn read_pyramid_csv<C, R, F>(
    r: R,
    cols: usize,
    levels: usize,
    channels: usize,
    parse_cell: F,
) -> Result<Pyramid<C>>
where
    C: Coeff,
    R: BufRead,
    F: Fn(&[String], usize) -> Result<C>,
{
    let mut coarse: Vec<(i64, C)> = Vec::new();
    let mut details: Vec<Vec<Vec<(i64, C)>>> = vec![vec![Vec::new(); channels]; levels];
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if i == 0 {
            continue; // header checked loosely; the cell parser validates data
        }
        if line.trim().is_empty() {
            continue;
        }
        let p = split_line(&line, cols + 2, i + 1)?;
        let k = parse_i64(&p[1], i + 1)?;
        let c = parse_cell(&p[2..], i + 1)?;
        if p[0] == "coarse" {
            coarse.push((k, c));
            continue;
        }
        let parts: Vec<&str> = p[0].split('.').collect();
        if parts.len() != 3 || parts[0] != "detail" {
            return Err(Error::Config(format!(
                "line {}: bad channel {:?}",
                i + 1,
                p[0]
            )));
        }
        let step: usize = parts[1]
            .parse()
            .map_err(|_| Error::Config(format!("line {}: bad step", i + 1)))?;
        let ell: usize = parts[2]
            .parse()
            .map_err(|_| Error::Config(format!("line {}: bad channel index", i + 1)))?;
        if step >= levels || ell >= channels {
            return Err(Error::BankPyramidMismatch(format!(
                "channel {} outside {} levels x {} channels",
                p[0], levels, channels
            )));
        }
        details[step][ell].push((k, c));
    }
    Ok(Pyramid::from_parts(
        Signal::from_pairs(coarse),
        details
            .into_iter()
            .map(|lvl| lvl.into_iter().map(Signal::from_pairs).collect())
            .collect(),
    ))
}

pub fn parse_exact_cell(cells: &[String], lineno: usize) -> Result<ExactScalar> {
    let rd = parse_i64(&cells[1], lineno)?;
    let im_d = parse_i64(&cells[3], lineno)?;
    if rd == 0 || im_d == 0 {
        return Err(Error::Config(format!("line {lineno}: zero denominator")));
    }
    Ok(ExactScalar::from_ratios(
        parse_i64(&cells[0], lineno)?,
        rd,
        parse_i64(&cells[2], lineno)?,
        im_d,
    ))
}

pub fn parse_float_cell(cells: &[String], lineno: usize) -> Result<Complex64> {
    Ok(Complex64::new(
        parse_f64(&cells[0], lineno)?,
        parse_f64(&cells[1], lineno)?,
    ))
}
