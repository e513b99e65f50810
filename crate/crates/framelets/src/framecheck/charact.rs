//! Grid residuals of the dual-frame characterization identities.
//!
//! For integer dilations the two pointwise families are
//!
//! ```text
//! (eq-refine)  Σ_ℓ conj(φ^ℓ(d xi)) φ̃^ℓ(d(xi+2πk)) + Σ_ℓ conj(ψ^ℓ(d xi)) ψ̃^ℓ(d(xi+2πk))
//!                = Σ_ℓ conj(φ^ℓ(xi)) φ̃^ℓ(xi+2πk)          for all k,
//! (eq-alias)   Σ_ℓ conj(φ^ℓ(xi)) φ̃^ℓ(xi+2πk0) + Σ_ℓ conj(ψ^ℓ(xi)) ψ̃^ℓ(xi+2πk0) = 0
//!                                                          for k0 outside dZ,
//! ```
//!
//! plus the normalization `Σ_ℓ conj(φ^ℓ(d^{-j}·)) φ̃^ℓ(d^{-j}·) -> 1`. The
//! limit is a distributional statement; this module probes the stronger
//! pointwise-on-grid convergence and labels the result a "limit probe", not a
//! proof: a non-decreasing probe is inconclusive rather than failing, unless
//! it grows.
//!
//! Real dilations split the shift families by the declared rationality of
//! `d` (integer / rational p/q in lowest terms / irrational), and the
//! nonstationary variant sums the finitely many levels whose lattice
//! `λ_j^{-1} Z` contains the probed shift.

use super::pairing::CheckOpts;
use super::system::{GeneratorPair, System, SystemKind};
use crate::{Error, Result};
use num::complex::Complex64;
use num::integer::gcd;
use num::{BigRational, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Uniform inclusive grid.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        if !(min < max) || n < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid needs min < max and n >= 2, got [{min}, {max}] with {n}"
            )));
        }
        Ok(GridSpec { min, max, n })
    }

    pub fn points(&self) -> Vec<f64> {
        let step = (self.max - self.min) / (self.n - 1) as f64;
        (0..self.n).map(|i| self.min + step * i as f64).collect()
    }
}

/// `Σ_ℓ conj(primal^ℓ(x)) dual^ℓ(y)` with first-order certificate
/// propagation.
fn pair_sum(pairs: &[GeneratorPair], x: f64, y: f64) -> Result<(Complex64, f64)> {
    let mut value = Complex64::new(0.0, 0.0);
    let mut unc = 0.0f64;
    for p in pairs {
        let a = p.primal.eval_certified(x)?;
        let b = p.dual.eval_certified(y)?;
        value += a.value.conj() * b.value;
        unc += a.tail_bound * b.value.norm()
            + b.tail_bound * a.value.norm()
            + a.tail_bound * b.tail_bound;
    }
    Ok((value, unc))
}

/// Max residual of one identity at one shift index.
#[derive(Clone, Debug, Serialize)]
pub struct CharRow {
    pub identity: String,
    pub k: i64,
    pub max_residual: f64,
    pub max_uncertainty: f64,
    pub vacuous: bool,
}

/// One step of the normalization limit probe.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeRow {
    pub step: i64,
    pub max_deviation: f64,
    pub max_uncertainty: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeVerdict {
    /// Deviations decrease toward zero on the grid.
    Decreasing,
    /// Bounded but not decreasing; says nothing about the distributional
    /// limit.
    Inconclusive,
    /// Deviations grow; the limit cannot hold boundedly.
    Growing,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterizationReport {
    pub rows: Vec<CharRow>,
    pub probe: Vec<ProbeRow>,
    pub probe_verdict: ProbeVerdict,
    pub max_residual: f64,
    pub max_uncertainty: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn classify_probe(probe: &[ProbeRow]) -> ProbeVerdict {
    if probe.len() < 2 {
        return ProbeVerdict::Inconclusive;
    }
    let eps = 1e-14;
    let decreasing = probe
        .windows(2)
        .all(|w| w[1].max_deviation <= w[0].max_deviation + eps);
    let growing = probe
        .windows(2)
        .all(|w| w[1].max_deviation >= w[0].max_deviation * 1.5 - eps)
        && probe.last().unwrap().max_deviation > probe[0].max_deviation * 2.0;
    if decreasing {
        ProbeVerdict::Decreasing
    } else if growing {
        ProbeVerdict::Growing
    } else {
        ProbeVerdict::Inconclusive
    }
}

fn finish_report(
    rows: Vec<CharRow>,
    probe: Vec<ProbeRow>,
    tolerance: f64,
) -> CharacterizationReport {
    let max_residual = rows.iter().map(|r| r.max_residual).fold(0.0, f64::max);
    let max_uncertainty = rows.iter().map(|r| r.max_uncertainty).fold(0.0, f64::max);
    let probe_verdict = classify_probe(&probe);
    let pass = max_residual <= tolerance.max(max_uncertainty) && probe_verdict != ProbeVerdict::Growing;
    CharacterizationReport {
        rows,
        probe,
        probe_verdict,
        max_residual,
        max_uncertainty,
        tolerance,
        pass,
    }
}

fn row_over_grid<F>(identity: &str, k: i64, grid: &[f64], f: F) -> Result<CharRow>
where
    F: Fn(f64) -> Result<(Complex64, f64)> + Sync,
{
    let evals: Result<Vec<(Complex64, f64)>> = grid.par_iter().map(|&xi| f(xi)).collect();
    let mut max_residual = 0.0f64;
    let mut max_uncertainty = 0.0f64;
    for (v, u) in evals? {
        max_residual = max_residual.max(v.norm());
        max_uncertainty = max_uncertainty.max(u);
    }
    Ok(CharRow {
        identity: identity.into(),
        k,
        max_residual,
        max_uncertainty,
        vacuous: false,
    })
}

fn stationary_parts(system: &System) -> Result<(&[GeneratorPair], &[GeneratorPair], f64)> {
    match &system.kind {
        SystemKind::Stationary { dilation, psi } => Ok((&system.phi, psi, *dilation)),
        SystemKind::Nonstationary { .. } => Err(Error::InvalidParameter(
            "stationary characterization needs a stationary system".into(),
        )),
    }
}

/// Integer-dilation characterization residuals over a grid, for shifts
/// `k ∈ [-k_range, k_range]`, plus the normalization limit probe for
/// `j = 1..=j_probe_max`.
pub fn check_characterization(
    system: &System,
    grid: &GridSpec,
    k_range: i64,
    j_probe_max: usize,
    tolerance: f64,
    _opts: &CheckOpts,
) -> Result<CharacterizationReport> {
    let (phi, psi, d) = stationary_parts(system)?;
    if d.fract() != 0.0 || d.abs() < 2.0 {
        return Err(Error::InvalidDilation(format!(
            "integer |d| >= 2 required, got {d}"
        )));
    }
    let di = d as i64;
    let pts = grid.points();
    let mut rows = Vec::new();
    for k in -k_range..=k_range {
        let shift = 2.0 * PI * k as f64;
        rows.push(row_over_grid("eq-refine", k, &pts, |xi| {
            let (lhs_phi, u1) = pair_sum(phi, d * xi, d * (xi + shift))?;
            let (lhs_psi, u2) = pair_sum(psi, d * xi, d * (xi + shift))?;
            let (rhs, u3) = pair_sum(phi, xi, xi + shift)?;
            Ok((lhs_phi + lhs_psi - rhs, u1 + u2 + u3))
        })?);
        if k.rem_euclid(di.abs()) != 0 {
            rows.push(row_over_grid("eq-alias", k, &pts, |xi| {
                let (a, u1) = pair_sum(phi, xi, xi + shift)?;
                let (b, u2) = pair_sum(psi, xi, xi + shift)?;
                Ok((a + b, u1 + u2))
            })?);
        }
    }
    let mut probe = Vec::new();
    for j in 1..=j_probe_max {
        let scale = d.powi(-(j as i32));
        let one = Complex64::new(1.0, 0.0);
        let evals: Result<Vec<(Complex64, f64)>> = pts
            .par_iter()
            .map(|&xi| pair_sum(phi, scale * xi, scale * xi))
            .collect();
        let mut dev = 0.0f64;
        let mut unc = 0.0f64;
        for (v, u) in evals? {
            dev = dev.max((v - one).norm());
            unc = unc.max(u);
        }
        probe.push(ProbeRow {
            step: j as i64,
            max_deviation: dev,
            max_uncertainty: unc,
        });
    }
    Ok(finish_report(rows, probe, tolerance))
}

/// Declared arithmetic nature of a real dilation factor.
#[derive(Clone, Copy, Debug)]
pub enum RealDilation {
    Integer(i64),
    /// `p/q` in lowest terms, `|p/q| > 1`.
    Rational(i64, i64),
    Irrational(f64),
}

impl RealDilation {
    pub fn value(&self) -> f64 {
        match self {
            RealDilation::Integer(d) => *d as f64,
            RealDilation::Rational(p, q) => *p as f64 / *q as f64,
            RealDilation::Irrational(d) => *d,
        }
    }

    /// `(p, q)` with the convention `q = 1` for integers; `None` for
    /// irrational.
    fn reduced(&self) -> Option<(i64, i64)> {
        match self {
            RealDilation::Integer(d) => Some((*d, 1)),
            RealDilation::Rational(p, q) => {
                let g = gcd(p.abs(), q.abs()).max(1);
                let sign = if (*p < 0) != (*q < 0) { -1 } else { 1 };
                Some((sign * (p / g).abs(), (q / g).abs()))
            }
            RealDilation::Irrational(_) => None,
        }
    }
}

/// Real-dilation characterization: the three identity families with their
/// index sets resolved from the declared rationality of `d`.
///
/// * `Z ∩ dZ` — refinement family (`pZ` for `d = p/q` reduced, `{0}` for
///   irrational `d`);
/// * `Z \ dZ` — alias family;
/// * `dZ \ Z` — the Φ-only family `Σ_ℓ conj(φ^ℓ(xi)) φ̃^ℓ(xi + 2π m) = 0`
///   for shifts `k = d m` that are not integers (empty for integer `d`).
pub fn check_characterization_real(
    system: &System,
    decl: RealDilation,
    grid: &GridSpec,
    k_range: i64,
    tolerance: f64,
    _opts: &CheckOpts,
) -> Result<CharacterizationReport> {
    let (phi, psi, d_sys) = stationary_parts(system)?;
    let d = decl.value();
    if !(d.abs() > 1.0) {
        return Err(Error::InvalidDilation(format!("|d| > 1 required, got {d}")));
    }
    if (d - d_sys).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "declared dilation {d} does not match the system's {d_sys}"
        )));
    }
    let pts = grid.points();
    let reduced = decl.reduced();
    let in_d_lattice = |k: i64| -> bool {
        match reduced {
            Some((p, _)) => p != 0 && k.rem_euclid(p.abs()) == 0,
            None => k == 0,
        }
    };
    let mut rows = Vec::new();
    for k in -k_range..=k_range {
        let shift = 2.0 * PI * k as f64;
        if in_d_lattice(k) {
            rows.push(row_over_grid("eq-refine", k, &pts, |xi| {
                let (a, u1) = pair_sum(phi, xi, xi + shift)?;
                let (b, u2) = pair_sum(psi, xi, xi + shift)?;
                let (c, u3) = pair_sum(phi, xi / d, (xi + shift) / d)?;
                Ok((a + b - c, u1 + u2 + u3))
            })?);
        } else {
            rows.push(row_over_grid("eq-alias", k, &pts, |xi| {
                let (a, u1) = pair_sum(phi, xi, xi + shift)?;
                let (b, u2) = pair_sum(psi, xi, xi + shift)?;
                Ok((a + b, u1 + u2))
            })?);
        }
    }
    // k = d m in dZ \ Z: the shift applied to the Φ bracket is 2π m; for
    // rational d = p/q these are the m outside qZ, for irrational d every
    // m != 0.
    let phi_only_ms: Vec<i64> = match reduced {
        Some((_, 1)) => Vec::new(),
        Some((_, q)) => (-k_range..=k_range)
            .filter(|m| *m != 0 && m.rem_euclid(q) != 0)
            .collect(),
        None => (-k_range..=k_range).filter(|m| *m != 0).collect(),
    };
    for m in phi_only_ms {
        let shift = 2.0 * PI * m as f64;
        rows.push(row_over_grid("eq-phi-only", m, &pts, |xi| {
            pair_sum(phi, xi, xi + shift)
        })?);
    }
    Ok(finish_report(rows, Vec::new(), tolerance))
}

#[derive(Clone, Debug, Serialize)]
pub struct NonstatRow {
    pub k: i64,
    pub vacuous: bool,
    pub levels_used: usize,
    pub max_residual: f64,
    pub max_uncertainty: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonstatReport {
    pub rows: Vec<NonstatRow>,
    pub probe: Vec<ProbeRow>,
    pub probe_verdict: ProbeVerdict,
    pub max_residual: f64,
    pub max_uncertainty: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Nonstationary characterization: for every integer shift `k` within reach,
/// the finitely many levels with `λ_j k ∈ Z` are summed; shifts on no level's
/// lattice are reported vacuous. The normalization is probed by the partial
/// sums `I_Φ^0(λ_J·) + Σ_{j<J'} I_{Ψ^j}^0(λ_j·) -> 1`.
pub fn check_nonstationary(
    system: &System,
    grid: &GridSpec,
    k_reach: i64,
    probe_max: i64,
    tolerance: f64,
    _opts: &CheckOpts,
) -> Result<NonstatReport> {
    let SystemKind::Nonstationary { start_level, .. } = &system.kind else {
        return Err(Error::InvalidParameter(
            "nonstationary characterization needs a nonstationary system".into(),
        ));
    };
    let j0 = *start_level as i64;
    let pts = grid.points();
    let mut rows = Vec::new();
    for k in -k_reach..=k_reach {
        if k == 0 {
            continue;
        }
        // collect the levels whose lattice contains k: λ_j k ∈ Z. The scales
        // shrink strictly, so once |λ_j k| < 1 no later level contributes.
        let mut terms: Vec<(i64, f64, i64)> = Vec::new(); // (level, λ_j, integer shift λ_j k)
        let one = BigRational::from(num::BigInt::from(1));
        let mut j = j0;
        while j - j0 <= 128 {
            let shifted = system.lambda_exact(j)? * BigRational::from(num::BigInt::from(k));
            if shifted.abs() < one {
                break;
            }
            if shifted.is_integer() {
                terms.push((
                    j,
                    system.lambda(j)?,
                    shifted
                        .to_integer()
                        .to_i64()
                        .ok_or_else(|| Error::InvalidParameter("shift exceeds i64".into()))?,
                ));
            }
            j += 1;
        }
        if terms.is_empty() {
            rows.push(NonstatRow {
                k,
                vacuous: true,
                levels_used: 0,
                max_residual: 0.0,
                max_uncertainty: 0.0,
            });
            continue;
        }
        let levels_used = terms.len();
        let evals: Result<Vec<(Complex64, f64)>> = pts
            .par_iter()
            .map(|&xi| {
                let mut acc = Complex64::new(0.0, 0.0);
                let mut unc = 0.0f64;
                for &(j, lam, n) in &terms {
                    let shift = 2.0 * PI * n as f64;
                    // the Φ layer sits at the start level, Ψ^j at every level
                    if j == j0 {
                        let (v, u) = pair_sum(&system.phi, lam * xi, lam * xi + shift)?;
                        acc += v;
                        unc += u;
                    }
                    let (v, u) = pair_sum(system.psi_pairs(j)?, lam * xi, lam * xi + shift)?;
                    acc += v;
                    unc += u;
                }
                Ok((acc, unc))
            })
            .collect();
        let mut max_residual = 0.0f64;
        let mut max_uncertainty = 0.0f64;
        for (v, u) in evals? {
            max_residual = max_residual.max(v.norm());
            max_uncertainty = max_uncertainty.max(u);
        }
        rows.push(NonstatRow {
            k,
            vacuous: false,
            levels_used,
            max_residual,
            max_uncertainty,
        });
    }

    // normalization probe: partial Θ-corrected sums at increasing J'
    let mut probe = Vec::new();
    let one = Complex64::new(1.0, 0.0);
    let lam0 = system.lambda(j0)?;
    let mut partial: Vec<(Complex64, f64)> = pts
        .par_iter()
        .map(|&xi| pair_sum(&system.phi, lam0 * xi, lam0 * xi))
        .collect::<Result<_>>()?;
    for jp in (j0 + 1)..=(j0 + probe_max.max(1)) {
        let j = jp - 1;
        let lam = system.lambda(j)?;
        let layer: Vec<(Complex64, f64)> = pts
            .par_iter()
            .map(|&xi| pair_sum(system.psi_pairs(j)?, lam * xi, lam * xi))
            .collect::<Result<_>>()?;
        for (acc, l) in partial.iter_mut().zip(layer) {
            acc.0 += l.0;
            acc.1 += l.1;
        }
        let mut dev = 0.0f64;
        let mut unc = 0.0f64;
        for (v, u) in &partial {
            dev = dev.max((v - one).norm());
            unc = unc.max(*u);
        }
        probe.push(ProbeRow {
            step: jp,
            max_deviation: dev,
            max_uncertainty: unc,
        });
    }

    let max_residual = rows.iter().map(|r| r.max_residual).fold(0.0, f64::max);
    let max_uncertainty = rows.iter().map(|r| r.max_uncertainty).fold(0.0, f64::max);
    let probe_verdict = classify_probe(&probe);
    Ok(NonstatReport {
        pass: max_residual <= tolerance.max(max_uncertainty)
            && probe_verdict != ProbeVerdict::Growing,
        rows,
        probe,
        probe_verdict,
        max_residual,
        max_uncertainty,
        tolerance,
    })
}
