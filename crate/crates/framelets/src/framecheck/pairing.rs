//! Pairing quadrature and the bracket-product identity.
//!
//! The pairing is `<f, g_{λ;k,n}> = ∫ f(xi) conj(|λ|^{1/2} e^{-i n λ xi}
//! g(λ xi - k)) dxi` over the support of `f`. The wavelet systems checked
//! here only use translation 0 and modulation `k`.
//!
//! `bracket_series` and `bracket_integral` are the two sides of the identity
//!
//! ```text
//! Σ_k <f, ψ_{λ;0,k}> <ψ̃_{λ;0,k}, g>
//!   = 2π ∫ Σ_k f(xi) conj(g(xi + 2π λ^{-1} k)) conj(ψ(λ xi)) ψ̃(λ xi + 2π k) dxi,
//! ```
//!
//! whose right-hand `k`-sum is finite by support arithmetic. Their agreement
//! is the main numerical oracle for everything built on pairings.

use super::quad::{adaptive_trapezoid, adaptive_trapezoid_min};
use super::testfn::TestFn;
use crate::refinable::{CertEval, CertifiedValue, Generator};
use crate::{Error, Result};
use num::complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// A frequency-domain function a pairing can integrate against: a certified
/// refinable generator, a test function, a constant, or zero.
#[derive(Clone)]
pub enum FreqFn {
    Generator(Generator),
    Test(TestFn),
    Constant(Complex64),
    Zero,
}

impl FreqFn {
    pub fn eval_certified(&self, xi: f64) -> Result<CertifiedValue> {
        match self {
            FreqFn::Generator(g) => g.eval_certified(xi),
            FreqFn::Test(t) => Ok(CertifiedValue {
                value: Complex64::new(t.eval(xi), 0.0),
                tail_bound: 0.0,
            }),
            FreqFn::Constant(c) => Ok(CertifiedValue {
                value: *c,
                tail_bound: 0.0,
            }),
            FreqFn::Zero => Ok(CertifiedValue {
                value: Complex64::new(0.0, 0.0),
                tail_bound: 0.0,
            }),
        }
    }
}

/// Numerical tolerances of the framecheck layer.
#[derive(Clone, Copy, Debug)]
pub struct CheckOpts {
    /// Stop refining a quadrature when successive estimates agree this well.
    pub quad_tol: f64,
    /// Stop growing a lattice sum when this many consecutive shells
    /// contribute less than `shell_tol`.
    pub shell_tol: f64,
    pub shell_window: usize,
    pub max_quad_points: usize,
    pub max_shells: usize,
}

impl Default for CheckOpts {
    fn default() -> Self {
        CheckOpts {
            quad_tol: 1e-9,
            shell_tol: 1e-10,
            shell_window: 16,
            max_quad_points: 1 << 22,
            max_shells: 1 << 21,
        }
    }
}

/// Value plus accumulated numerical uncertainty (quadrature deltas plus
/// certified generator tails).
#[derive(Clone, Copy, Debug)]
pub struct Paired {
    pub value: Complex64,
    pub uncertainty: f64,
}

/// `<f, g_{λ; translation, modulation}>`; the system checks always call this
/// with translation 0 and integer modulation.
pub fn pairing(
    f: &TestFn,
    g: &FreqFn,
    lambda: f64,
    translation: f64,
    modulation: f64,
    opts: &CheckOpts,
) -> Result<Paired> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidParameter("lambda must be nonzero".into()));
    }
    let Some((a, b)) = f.support() else {
        return Ok(Paired {
            value: Complex64::new(0.0, 0.0),
            uncertainty: 0.0,
        });
    };
    let amp = lambda.abs().sqrt();
    // resolve the e^{i n λ xi} oscillation before trusting the refinement
    let periods = (modulation * lambda).abs() * (b - a) / (2.0 * std::f64::consts::PI);
    let min_intervals = (4.0 * periods).max(256.0) as usize;
    let mut max_tail = 0.0f64;
    let mut eval_err: Option<Error> = None;
    let quad = adaptive_trapezoid_min(
        |xi| {
            let fv = f.eval(xi);
            if fv == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            match g.eval_certified(lambda * xi - translation) {
                Ok(cv) => {
                    max_tail = max_tail.max(cv.tail_bound);
                    let phase = modulation * lambda * xi;
                    // conj of |λ|^{1/2} e^{-i n λ xi} g(λ xi - k)
                    fv * amp * Complex64::new(phase.cos(), phase.sin()) * cv.value.conj()
                }
                Err(e) => {
                    if eval_err.is_none() {
                        eval_err = Some(e);
                    }
                    Complex64::new(0.0, 0.0)
                }
            }
        },
        a,
        b,
        opts.quad_tol,
        min_intervals,
        opts.max_quad_points,
    )?;
    if let Some(e) = eval_err {
        return Err(e);
    }
    Ok(Paired {
        value: quad.value,
        uncertainty: quad.est_error + opts.quad_tol + amp * max_tail * (b - a),
    })
}

/// One bracket term `<f, ψ_{λ;0,k}> <ψ̃_{λ;0,k}, g>`.
fn bracket_term(
    f: &TestFn,
    g: &TestFn,
    psi: &FreqFn,
    psi_dual: &FreqFn,
    lambda: f64,
    k: i64,
    opts: &CheckOpts,
) -> Result<Paired> {
    let left = pairing(f, psi, lambda, 0.0, k as f64, opts)?;
    // <ψ̃_{λ;0,k}, g> = conj(<g, ψ̃_{λ;0,k}>)
    let right = pairing(g, psi_dual, lambda, 0.0, k as f64, opts)?;
    Ok(Paired {
        value: left.value * right.value.conj(),
        uncertainty: left.uncertainty * right.value.norm()
            + right.uncertainty * left.value.norm()
            + left.uncertainty * right.uncertainty,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct BracketValue {
    pub value: Complex64,
    pub uncertainty: f64,
    /// Magnitude of the outermost shell, the truncation heuristic.
    pub last_shell: f64,
}

/// `Σ_{|k| <= kmax} <f, ψ_{λ;0,k}> <ψ̃_{λ;0,k}, g>`.
pub fn bracket_series(
    f: &TestFn,
    g: &TestFn,
    psi: &FreqFn,
    psi_dual: &FreqFn,
    lambda: f64,
    kmax: i64,
    opts: &CheckOpts,
) -> Result<BracketValue> {
    if lambda == 0.0 {
        return Err(Error::InvalidParameter("lambda must be nonzero".into()));
    }
    let terms: Result<Vec<(i64, Paired)>> = (-kmax..=kmax)
        .into_par_iter()
        .map(|k| bracket_term(f, g, psi, psi_dual, lambda, k, opts).map(|p| (k, p)))
        .collect();
    let terms = terms?;
    let mut value = Complex64::new(0.0, 0.0);
    let mut uncertainty = 0.0;
    let mut last_shell = 0.0f64;
    for (k, p) in &terms {
        value += p.value;
        uncertainty += p.uncertainty;
        if k.abs() == kmax {
            last_shell += p.value.norm();
        }
    }
    Ok(BracketValue {
        value,
        uncertainty,
        last_shell,
    })
}

/// `2π ∫ Σ_k f(xi) conj(g(xi + 2π λ^{-1} k)) conj(ψ(λ xi)) ψ̃(λ xi + 2π k) dxi`,
/// with `k` ranging over the finitely many values where the supports of `f`
/// and the shifted `g` meet.
pub fn bracket_integral(
    f: &TestFn,
    g: &TestFn,
    psi: &FreqFn,
    psi_dual: &FreqFn,
    lambda: f64,
    opts: &CheckOpts,
) -> Result<BracketValue> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidParameter("lambda must be nonzero".into()));
    }
    let (Some((fa, fb)), Some((ga, gb))) = (f.support(), g.support()) else {
        return Ok(BracketValue {
            value: Complex64::new(0.0, 0.0),
            uncertainty: 0.0,
            last_shell: 0.0,
        });
    };
    // need xi in supp f with xi + 2π k / λ in supp g
    let t0 = lambda * (ga - fb) / (2.0 * PI);
    let t1 = lambda * (gb - fa) / (2.0 * PI);
    let (klo, khi) = ((t0.min(t1)).ceil() as i64, (t0.max(t1)).floor() as i64);
    let mut value = Complex64::new(0.0, 0.0);
    let mut uncertainty = 0.0f64;
    for k in klo..=khi {
        let shift = 2.0 * PI * k as f64 / lambda;
        let lo = fa.max(ga - shift);
        let hi = fb.min(gb - shift);
        if !(lo < hi) {
            continue;
        }
        let mut max_tail = 0.0f64;
        let mut eval_err: Option<Error> = None;
        let quad = adaptive_trapezoid(
            |xi| {
                let fv = f.eval(xi);
                let gv = g.eval(xi + shift);
                if fv == 0.0 || gv == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let p = psi.eval_certified(lambda * xi);
                let pd = psi_dual.eval_certified(lambda * xi + 2.0 * PI * k as f64);
                match (p, pd) {
                    (Ok(p), Ok(pd)) => {
                        max_tail = max_tail.max(
                            p.tail_bound * pd.value.norm()
                                + pd.tail_bound * p.value.norm()
                                + p.tail_bound * pd.tail_bound,
                        );
                        fv * gv * p.value.conj() * pd.value
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        if eval_err.is_none() {
                            eval_err = Some(e);
                        }
                        Complex64::new(0.0, 0.0)
                    }
                }
            },
            lo,
            hi,
            opts.quad_tol,
            opts.max_quad_points,
        )?;
        if let Some(e) = eval_err {
            return Err(e);
        }
        value += quad.value;
        uncertainty += quad.est_error + opts.quad_tol + max_tail * (hi - lo);
    }
    Ok(BracketValue {
        value: value * 2.0 * PI,
        uncertainty: uncertainty * 2.0 * PI,
        last_shell: 0.0,
    })
}

/// Both sides of the bracket identity and their difference.
#[derive(Clone, Copy, Debug)]
pub struct BracketReport {
    pub series: Complex64,
    pub integral: Complex64,
    pub difference: f64,
    pub uncertainty: f64,
    pub pass: bool,
}

pub fn check_bracket_identity(
    f: &TestFn,
    g: &TestFn,
    psi: &FreqFn,
    psi_dual: &FreqFn,
    lambda: f64,
    kmax: i64,
    tol: f64,
    opts: &CheckOpts,
) -> Result<BracketReport> {
    let series = bracket_series(f, g, psi, psi_dual, lambda, kmax, opts)?;
    let integral = bracket_integral(f, g, psi, psi_dual, lambda, opts)?;
    let difference = (series.value - integral.value).norm();
    let uncertainty = series.uncertainty + integral.uncertainty + series.last_shell;
    Ok(BracketReport {
        series: series.value,
        integral: integral.value,
        difference,
        uncertainty,
        pass: difference < tol.max(uncertainty),
    })
}
