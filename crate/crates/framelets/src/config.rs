//! JSON configuration ingestion.
//!
//! A configuration describes one filter bank (stationary or level-dependent)
//! in one arithmetic mode:
//!
//! ```json
//! {
//!   "mode": "exact",
//!   "dilation": 2,
//!   "a":       [[0, [1,2], [0,1]], [1, [1,2], [0,1]]],
//!   "a_tilde": [[0, [1,2], [0,1]], [1, [1,2], [0,1]]],
//!   "b":       [[[0, [1,2], [0,1]], [1, [-1,2], [0,1]]]],
//!   "b_tilde": [[[0, [1,2], [0,1]], [1, [-1,2], [0,1]]]],
//!   "theta":   [[0, [1,1], [0,1]]]
//! }
//! ```
//!
//! Exact coefficients are `[k, [re_num, re_den], [im_num, im_den]]`; float
//! mode writes `[k, "re", "im"]` with decimal strings. `theta_pairs` may
//! replace `theta`. A level-dependent bank instead carries
//! `"nonstationary": {"levels": [...], "tail_rule": "repeat_last" |
//! "terminate", "theta_final": ...}` where each level repeats the stationary
//! fields. Mixing the two coefficient syntaxes in one file is an error.

use crate::filterbank::{BankLevel, FilterBank, NonstationaryBank, TailRule, ThetaSpec};
use crate::laurent::{Dilation, LaurentPoly};
use crate::scalar::{Coeff, ExactScalar};
use crate::{Error, Result};
use num::complex::Complex64;
use serde::Deserialize;
use std::path::Path;

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoeff {
    Exact(i64, (i64, i64), (i64, i64)),
    Float(i64, String, String),
}

type RawPoly = Vec<RawCoeff>;

#[derive(Deserialize)]
struct RawLevel {
    dilation: i64,
    a: RawPoly,
    a_tilde: RawPoly,
    b: Vec<RawPoly>,
    b_tilde: Vec<RawPoly>,
    #[serde(default)]
    theta: Option<RawPoly>,
    #[serde(default)]
    theta_pairs: Option<Vec<(RawPoly, RawPoly)>>,
}

#[derive(Deserialize)]
struct RawNonstationary {
    levels: Vec<RawLevel>,
    tail_rule: String,
    #[serde(default)]
    theta_final: Option<RawPoly>,
}

#[derive(Deserialize)]
struct RawConfig {
    mode: String,
    #[serde(default)]
    dilation: Option<i64>,
    #[serde(default)]
    a: Option<RawPoly>,
    #[serde(default)]
    a_tilde: Option<RawPoly>,
    #[serde(default)]
    b: Option<Vec<RawPoly>>,
    #[serde(default)]
    b_tilde: Option<Vec<RawPoly>>,
    #[serde(default)]
    theta: Option<RawPoly>,
    #[serde(default)]
    theta_pairs: Option<Vec<(RawPoly, RawPoly)>>,
    #[serde(default)]
    nonstationary: Option<RawNonstationary>,
}

/// Arithmetic mode of a configuration.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Exact,
    Float,
}

/// A parsed configuration: a stationary or level-dependent bank in one mode.
pub enum LoadedConfig {
    Stationary(BankPair),
    Nonstationary(NsPair),
}

pub enum BankPair {
    Exact(FilterBank<ExactScalar>),
    Float(FilterBank<Complex64>),
}

pub enum NsPair {
    Exact(NonstationaryBank<ExactScalar>),
    Float(NonstationaryBank<Complex64>),
}

impl LoadedConfig {
    pub fn mode(&self) -> Mode {
        match self {
            LoadedConfig::Stationary(BankPair::Exact(_))
            | LoadedConfig::Nonstationary(NsPair::Exact(_)) => Mode::Exact,
            _ => Mode::Float,
        }
    }
}

trait FromRaw: Coeff + Sized {
    fn from_raw(raw: &RawCoeff) -> Result<(i64, Self)>;
}

impl FromRaw for ExactScalar {
    fn from_raw(raw: &RawCoeff) -> Result<(i64, Self)> {
        match raw {
            RawCoeff::Exact(k, (rn, rd), (im_n, im_d)) => {
                if *rd == 0 || *im_d == 0 {
                    return Err(Error::Config("zero denominator".into()));
                }
                Ok((*k, ExactScalar::from_ratios(*rn, *rd, *im_n, *im_d)))
            }
            RawCoeff::Float(..) => Err(Error::ModeMismatch(
                "float coefficient in an exact-mode configuration".into(),
            )),
        }
    }
}

impl FromRaw for Complex64 {
    fn from_raw(raw: &RawCoeff) -> Result<(i64, Self)> {
        match raw {
            RawCoeff::Float(k, re, im) => {
                let parse = |s: &str| -> Result<f64> {
                    let v: f64 = s
                        .trim()
                        .parse()
                        .map_err(|_| Error::Config(format!("bad decimal literal {s:?}")))?;
                    if !v.is_finite() {
                        return Err(Error::Config(format!("non-finite literal {s:?}")));
                    }
                    Ok(v)
                };
                Ok((*k, Complex64::new(parse(re)?, parse(im)?)))
            }
            RawCoeff::Exact(..) => Err(Error::ModeMismatch(
                "exact coefficient in a float-mode configuration".into(),
            )),
        }
    }
}

fn poly<C: FromRaw>(raw: &RawPoly) -> Result<LaurentPoly<C>> {
    let mut pairs = Vec::with_capacity(raw.len());
    for rc in raw {
        pairs.push(C::from_raw(rc)?);
    }
    Ok(LaurentPoly::from_pairs(pairs))
}

fn poly_list<C: FromRaw>(raw: &[RawPoly]) -> Result<Vec<LaurentPoly<C>>> {
    raw.iter().map(|p| poly(p)).collect()
}

fn theta_spec<C: FromRaw>(
    theta: &Option<RawPoly>,
    pairs: &Option<Vec<(RawPoly, RawPoly)>>,
) -> Result<ThetaSpec<C>> {
    match (theta, pairs) {
        (Some(t), None) => Ok(ThetaSpec::Direct(poly(t)?)),
        (None, Some(ps)) => Ok(ThetaSpec::Pairs(
            ps.iter()
                .map(|(a, b)| Ok((poly(a)?, poly(b)?)))
                .collect::<Result<_>>()?,
        )),
        (None, None) => Ok(ThetaSpec::Direct(LaurentPoly::one())),
        (Some(_), Some(_)) => Err(Error::Config(
            "give either theta or theta_pairs, not both".into(),
        )),
    }
}

fn stationary_bank<C: FromRaw>(raw: &RawConfig) -> Result<FilterBank<C>> {
    let missing = |f: &str| Error::Config(format!("missing field {f:?}"));
    let d = Dilation::new(raw.dilation.ok_or_else(|| missing("dilation"))?)?;
    FilterBank::new(
        d,
        poly(raw.a.as_ref().ok_or_else(|| missing("a"))?)?,
        poly(raw.a_tilde.as_ref().ok_or_else(|| missing("a_tilde"))?)?,
        poly_list(raw.b.as_ref().ok_or_else(|| missing("b"))?)?,
        poly_list(raw.b_tilde.as_ref().ok_or_else(|| missing("b_tilde"))?)?,
        theta_spec(&raw.theta, &raw.theta_pairs)?,
    )
}

fn level<C: FromRaw>(raw: &RawLevel) -> Result<BankLevel<C>> {
    Ok(BankLevel {
        dilation: Dilation::new(raw.dilation)?,
        lowpass: poly(&raw.a)?,
        lowpass_dual: poly(&raw.a_tilde)?,
        highpass: poly_list(&raw.b)?,
        highpass_dual: poly_list(&raw.b_tilde)?,
        theta: theta_spec(&raw.theta, &raw.theta_pairs)?,
    })
}

fn nonstationary_bank<C: FromRaw>(raw: &RawNonstationary) -> Result<NonstationaryBank<C>> {
    let tail = match raw.tail_rule.as_str() {
        "repeat_last" => TailRule::RepeatLast,
        "terminate" => TailRule::Terminate,
        other => {
            return Err(Error::Config(format!(
                "tail_rule must be repeat_last or terminate, got {other:?}"
            )))
        }
    };
    let levels: Vec<BankLevel<C>> = raw.levels.iter().map(level).collect::<Result<_>>()?;
    let theta_final = raw.theta_final.as_ref().map(|t| poly(t)).transpose()?;
    NonstationaryBank::new(levels, tail, theta_final)
}

/// Parses a configuration document.
pub fn parse(text: &str) -> Result<LoadedConfig> {
    let raw: RawConfig =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid JSON: {e}")))?;
    let mode = match raw.mode.as_str() {
        "exact" => Mode::Exact,
        "float" => Mode::Float,
        other => {
            return Err(Error::Config(format!(
                "mode must be \"exact\" or \"float\", got {other:?}"
            )))
        }
    };
    match (&raw.nonstationary, mode) {
        (Some(ns), Mode::Exact) => Ok(LoadedConfig::Nonstationary(NsPair::Exact(
            nonstationary_bank(ns)?,
        ))),
        (Some(ns), Mode::Float) => Ok(LoadedConfig::Nonstationary(NsPair::Float(
            nonstationary_bank(ns)?,
        ))),
        (None, Mode::Exact) => Ok(LoadedConfig::Stationary(BankPair::Exact(stationary_bank(
            &raw,
        )?))),
        (None, Mode::Float) => Ok(LoadedConfig::Stationary(BankPair::Float(stationary_bank(
            &raw,
        )?))),
    }
}

/// Reads and parses a configuration file.
pub fn load(path: &Path) -> Result<LoadedConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}
