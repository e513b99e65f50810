//! Wavelet systems and their partial-sum convergence toward `2π <f, g>`.
//!
//! A [`System`] holds the coarsest-layer generator pairs Φ and the per-scale
//! pairs Ψ (one set reused at every scale in the stationary case, one set per
//! level otherwise). The mixed partial sum
//!
//! ```text
//! S_J^{J'}(f, g) = Σ_ℓ Σ_k <f, φ^ℓ_{λ_J;0,k}> <φ̃^ℓ_{λ_J;0,k}, g>
//!               + Σ_{j=J}^{J'-1} Σ_ℓ Σ_k <f, ψ^{j,ℓ}_{λ_j;0,k}> <ψ̃^{j,ℓ}_{λ_j;0,k}, g>
//! ```
//!
//! must converge to `2π <f, g>` for every pair of test functions when the two
//! systems form dual frames in the distribution space. `check_duality`
//! tabulates `S_J^{J'}` for increasing `J'` against that target.
//!
//! Each layer's `k`-sum is a lattice of pairings sharing one set of sampled
//! generator values, so the layer is computed batched: sample
//! `f(xi) conj(gen(λ xi))` once on a refined trapezoid grid, then sweep `k`
//! (the pairing with modulation `k` is a discrete Fourier sum of those
//! samples) until a window of consecutive shells contributes nothing.

use super::pairing::{CheckOpts, Paired};
use super::testfn::TestFn;
use super::FreqFn;
use crate::filterbank::{FilterBank, NonstationaryBank, TailRule};
use crate::refinable::{Generator, Refinable};
use crate::scalar::Coeff;
use crate::{Error, Result};
use num::complex::Complex64;
use num::{BigInt, BigRational};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::io::Write;
use std::sync::Arc;

/// A primal generator and its dual partner.
#[derive(Clone)]
pub struct GeneratorPair {
    pub primal: FreqFn,
    pub dual: FreqFn,
}

impl GeneratorPair {
    pub fn self_dual(g: FreqFn) -> Self {
        GeneratorPair {
            primal: g.clone(),
            dual: g,
        }
    }
}

/// Scale structure plus the Ψ layers.
pub enum SystemKind {
    /// `λ_j = d^{-j}` with one Ψ reused at every level. Real `|d| > 1`.
    Stationary {
        dilation: f64,
        psi: Vec<GeneratorPair>,
    },
    /// `λ_j = (d_1 ... d_j)^{-1}` with per-level Ψ starting at level
    /// `start_level`; the tail rule says how levels continue past the data.
    Nonstationary {
        dilations: Vec<i64>,
        tail: TailRule,
        start_level: usize,
        psi: Vec<Vec<GeneratorPair>>,
    },
}

/// Generator data of one frequency-based nonhomogeneous (or nonstationary)
/// wavelet system pair.
pub struct System {
    pub phi: Vec<GeneratorPair>,
    pub kind: SystemKind,
}

static EMPTY_LAYER: &[GeneratorPair] = &[];

impl System {
    /// Builds the generator pairs of a stationary bank:
    /// `φ^ℓ = θ^ℓ φ`, `ψ^ℓ(xi) = b^ℓ(xi/d) φ(xi/d)` and their duals, with the
    /// refinable functions truncated at `m` factors. With `self_dual` the
    /// primal filters are used on both sides (tight-frame checking mode).
    pub fn from_bank<C: Coeff>(bank: &FilterBank<C>, m: usize, self_dual: bool) -> Result<System> {
        let d = bank.dilation.get() as f64;
        let phi = Arc::new(Refinable::stationary(&bank.lowpass, d, m)?);
        let phi_dual = if self_dual {
            phi.clone()
        } else {
            Arc::new(Refinable::stationary(&bank.lowpass_dual, d, m)?)
        };
        let mut phi_pairs = Vec::new();
        for (th, th_dual) in bank.theta.pairs() {
            let primal = FreqFn::Generator(Generator::new(&th, phi.clone(), 1.0)?);
            let dual = if self_dual {
                FreqFn::Generator(Generator::new(&th, phi_dual.clone(), 1.0)?)
            } else {
                FreqFn::Generator(Generator::new(&th_dual, phi_dual.clone(), 1.0)?)
            };
            phi_pairs.push(GeneratorPair { primal, dual });
        }
        let mut psi_pairs = Vec::new();
        for (b, b_dual) in bank.highpass.iter().zip(&bank.highpass_dual) {
            let primal = FreqFn::Generator(Generator::new(b, phi.clone(), d)?);
            let dual = if self_dual {
                FreqFn::Generator(Generator::new(b, phi_dual.clone(), d)?)
            } else {
                FreqFn::Generator(Generator::new(b_dual, phi_dual.clone(), d)?)
            };
            psi_pairs.push(GeneratorPair { primal, dual });
        }
        Ok(System {
            phi: phi_pairs,
            kind: SystemKind::Stationary {
                dilation: d,
                psi: psi_pairs,
            },
        })
    }

    /// Builds the level-dependent generators of a nonstationary bank starting
    /// at level `start_level` (0 = the coarsest function the bank defines):
    /// `φ^{J,ℓ} = θ^{J+1,ℓ} φ^J` and
    /// `ψ^{j,ℓ}(xi) = b^{j+1,ℓ}(xi/d_{j+1}) φ^{j+1}(xi/d_{j+1})`.
    pub fn from_nonstationary_bank<C: Coeff>(
        bank: &NonstationaryBank<C>,
        m: usize,
        start_level: usize,
    ) -> Result<System> {
        let n = bank.num_levels();
        if start_level >= n {
            return Err(Error::LevelsExhausted {
                requested: start_level,
                provided: n,
            });
        }
        let base = |j: usize| -> Result<(Arc<Refinable>, Arc<Refinable>)> {
            Ok((
                Arc::new(Refinable::nonstationary(bank, j, m)?),
                Arc::new(Refinable::nonstationary_dual(bank, j, m)?),
            ))
        };
        let (phi0, phi0_dual) = base(start_level)?;
        let mut phi_pairs = Vec::new();
        for (th, th_dual) in bank.level(start_level + 1)?.theta.pairs() {
            phi_pairs.push(GeneratorPair {
                primal: FreqFn::Generator(Generator::new(&th, phi0.clone(), 1.0)?),
                dual: FreqFn::Generator(Generator::new(&th_dual, phi0_dual.clone(), 1.0)?),
            });
        }
        let mut psi = Vec::new();
        let mut dilations = Vec::new();
        for j in start_level..n {
            let lvl = bank.level(j + 1)?;
            let d = lvl.dilation.get() as f64;
            let (phij, phij_dual) = base(j + 1)?;
            let mut layer = Vec::new();
            for (b, b_dual) in lvl.highpass.iter().zip(&lvl.highpass_dual) {
                layer.push(GeneratorPair {
                    primal: FreqFn::Generator(Generator::new(b, phij.clone(), d)?),
                    dual: FreqFn::Generator(Generator::new(b_dual, phij_dual.clone(), d)?),
                });
            }
            psi.push(layer);
            dilations.push(lvl.dilation.get());
        }
        Ok(System {
            phi: phi_pairs,
            kind: SystemKind::Nonstationary {
                dilations,
                tail: bank.tail_rule(),
                start_level,
                psi,
            },
        })
    }

    /// A system whose generators are all zero (keeps the Φ/Ψ arity of a
    /// reference system).
    pub fn zero(num_phi: usize, num_psi: usize, dilation: f64) -> System {
        System {
            phi: (0..num_phi)
                .map(|_| GeneratorPair::self_dual(FreqFn::Zero))
                .collect(),
            kind: SystemKind::Stationary {
                dilation,
                psi: (0..num_psi)
                    .map(|_| GeneratorPair::self_dual(FreqFn::Zero))
                    .collect(),
            },
        }
    }

    pub fn start_level(&self) -> i64 {
        match &self.kind {
            SystemKind::Stationary { .. } => i64::MIN, // any J works
            SystemKind::Nonstationary { start_level, .. } => *start_level as i64,
        }
    }

    /// `λ_j`; for nonstationary systems `j` must be at or past the start
    /// level, and levels beyond the data follow the tail rule.
    pub fn lambda(&self, j: i64) -> Result<f64> {
        match &self.kind {
            SystemKind::Stationary { dilation, .. } => {
                let j32 = i32::try_from(j)
                    .map_err(|_| Error::InvalidParameter(format!("level {j} out of range")))?;
                Ok(dilation.powi(-j32))
            }
            SystemKind::Nonstationary { .. } => {
                let r = self.lambda_rational(j)?;
                Ok(r.to_f64())
            }
        }
    }

    /// Exact `λ_j`. Stationary systems need an integer dilation for this;
    /// nonstationary scales are always products of integer dilations.
    pub fn lambda_exact(&self, j: i64) -> Result<BigRational> {
        match &self.kind {
            SystemKind::Stationary { dilation, .. } => {
                if dilation.fract() != 0.0 || dilation.abs() > i64::MAX as f64 {
                    return Err(Error::UndeclaredRationality);
                }
                let d = BigInt::from(*dilation as i64);
                if j >= 0 {
                    Ok(BigRational::new(BigInt::from(1), num::pow::pow(d, j as usize)))
                } else {
                    Ok(BigRational::from(num::pow::pow(d, (-j) as usize)))
                }
            }
            SystemKind::Nonstationary { .. } => {
                let r = self.lambda_rational(j)?;
                Ok(BigRational::new(BigInt::from(r.num_sign), r.denom))
            }
        }
    }

    fn lambda_rational(&self, j: i64) -> Result<LambdaRat> {
        let SystemKind::Nonstationary { dilations, .. } = &self.kind else {
            return Err(Error::InvalidParameter(
                "rational scales only exist for nonstationary systems".into(),
            ));
        };
        if j < 0 {
            return Err(Error::InvalidParameter(
                "nonstationary systems start at level 0".into(),
            ));
        }
        // past the provided data the scales keep shrinking with the last
        // dilation under either tail rule (terminated layers are empty, so
        // only the probe scale matters there)
        let last = *dilations.last().ok_or(Error::LevelsExhausted {
            requested: j as usize,
            provided: 0,
        })?;
        let mut denom = BigInt::from(1);
        let mut sign = 1i32;
        for n in 0..j as usize {
            let d = dilations.get(n).copied().unwrap_or(last);
            denom *= BigInt::from(d.abs());
            if d < 0 {
                sign = -sign;
            }
        }
        Ok(LambdaRat {
            num_sign: sign,
            denom,
        })
    }

    /// Ψ generator pairs active at level `j`.
    pub fn psi_pairs(&self, j: i64) -> Result<&[GeneratorPair]> {
        match &self.kind {
            SystemKind::Stationary { psi, .. } => Ok(psi),
            SystemKind::Nonstationary {
                psi,
                tail,
                start_level,
                ..
            } => {
                let j0 = *start_level as i64;
                if j < j0 {
                    return Err(Error::InvalidParameter(format!(
                        "level {j} precedes the system start {j0}"
                    )));
                }
                let idx = (j - j0) as usize;
                if idx < psi.len() {
                    Ok(&psi[idx])
                } else {
                    match tail {
                        TailRule::RepeatLast => Ok(psi.last().map(|v| v.as_slice()).unwrap_or(EMPTY_LAYER)),
                        TailRule::Terminate => Ok(EMPTY_LAYER),
                    }
                }
            }
        }
    }
}

struct LambdaRat {
    num_sign: i32,
    denom: BigInt,
}

impl LambdaRat {
    fn to_f64(&self) -> f64 {
        use num::ToPrimitive;
        let d = self.denom.to_f64().unwrap_or(f64::INFINITY);
        self.num_sign as f64 / d
    }
}

struct LayerSamples {
    /// trapezoid-weighted `f(xi) conj(gen(λ xi))`
    weighted: Vec<Complex64>,
    /// `λ xi` per node (the phase steps in `k` by these)
    scaled_xi: Vec<f64>,
    /// Σ w |f| tail(λ xi): the certified-error mass of this side
    tail_mass: f64,
    max_step: f64,
}

fn sample_side(
    f: &TestFn,
    gen: &FreqFn,
    lambda: f64,
    a: f64,
    b: f64,
    intervals: usize,
) -> Result<LayerSamples> {
    let h = (b - a) / intervals as f64;
    let mut weighted = Vec::with_capacity(intervals + 1);
    let mut scaled_xi = Vec::with_capacity(intervals + 1);
    let mut tail_mass = 0.0f64;
    for i in 0..=intervals {
        let xi = a + h * i as f64;
        let w = if i == 0 || i == intervals { h * 0.5 } else { h };
        let fv = f.eval(xi);
        if fv == 0.0 {
            weighted.push(Complex64::new(0.0, 0.0));
            scaled_xi.push(lambda * xi);
            continue;
        }
        let cv = gen.eval_certified(lambda * xi)?;
        weighted.push(cv.value.conj() * (fv * w));
        scaled_xi.push(lambda * xi);
        tail_mass += w * fv.abs() * cv.tail_bound;
    }
    Ok(LayerSamples {
        weighted,
        scaled_xi,
        tail_mass,
        max_step: h,
    })
}

fn fourier_sum(samples: &LayerSamples, k: i64) -> Complex64 {
    let kf = k as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (u, sx) in samples.weighted.iter().zip(&samples.scaled_xi) {
        if u.re == 0.0 && u.im == 0.0 {
            continue;
        }
        let phase = kf * sx;
        acc += u * Complex64::new(phase.cos(), phase.sin());
    }
    acc
}

/// `Σ_k <f, gen_{λ;0,k}> <gen~_{λ;0,k}, g>` for one generator pair. The two
/// pairing factors are `|λ|^{1/2} A_k` and `conj(|λ|^{1/2} B_k)` with `A_k`,
/// `B_k` Fourier sums of the shared samples.
pub fn layer_bracket(
    f: &TestFn,
    g: &TestFn,
    pair: &GeneratorPair,
    lambda: f64,
    opts: &CheckOpts,
) -> Result<Paired> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidParameter("lambda must be nonzero".into()));
    }
    let (Some((fa, fb)), Some((ga, gb))) = (f.support(), g.support()) else {
        return Ok(Paired {
            value: Complex64::new(0.0, 0.0),
            uncertainty: 0.0,
        });
    };
    let mut intervals = 256usize;
    let mut prev: Option<Complex64> = None;
    loop {
        let fs = sample_side(f, &pair.primal, lambda, fa, fb, intervals)?;
        let gs = sample_side(g, &pair.dual, lambda, ga, gb, intervals)?;
        // keep the phase step below ~1 radian per node
        let k_cap = (1.0 / (lambda.abs() * fs.max_step.max(gs.max_step))).floor() as i64;
        // the layer's spectral mass sits near k ~ 1/|λ| (the first shells can
        // be suppressed by symmetry); never stop before passing that region
        let min_quiet_k = (16.0 / lambda.abs()).ceil() as i64;

        let mut value = Complex64::new(0.0, 0.0);
        let mut abs_a_sum = 0.0f64;
        let mut abs_b_sum = 0.0f64;
        let mut quiet = 0usize;
        let mut shells = 0i64;
        let mut resolved = true;
        const BLOCK: i64 = 128;
        'kloop: loop {
            let lo = shells;
            let hi = (shells + BLOCK).min(opts.max_shells as i64);
            let block: Vec<(f64, Complex64, f64, f64)> = (lo..hi)
                .into_par_iter()
                .map(|s| {
                    let mut term = Complex64::new(0.0, 0.0);
                    let mut absa = 0.0;
                    let mut absb = 0.0;
                    let mut mag = 0.0;
                    for k in [s, -s] {
                        let a = fourier_sum(&fs, k);
                        let b = fourier_sum(&gs, k);
                        let t = a * b.conj() * lambda.abs();
                        term += t;
                        mag += t.norm();
                        absa += a.norm();
                        absb += b.norm();
                        if s == 0 {
                            break; // the zero shell has a single member
                        }
                    }
                    (mag, term, absa, absb)
                })
                .collect();
            for (mag, term, absa, absb) in block {
                value += term;
                abs_a_sum += absa;
                abs_b_sum += absb;
                shells += 1;
                if mag < opts.shell_tol {
                    quiet += 1;
                    if quiet >= opts.shell_window && shells > min_quiet_k {
                        break 'kloop;
                    }
                } else {
                    quiet = 0;
                }
                if shells > k_cap {
                    resolved = false;
                    break 'kloop;
                }
            }
            if shells >= opts.max_shells as i64 {
                return Err(Error::QuadratureDidNotConverge {
                    points: intervals,
                    last_delta: opts.shell_tol,
                });
            }
        }

        if resolved {
            if let Some(p) = prev {
                let delta = (value - p).norm();
                if delta < opts.quad_tol {
                    let amp = lambda.abs().sqrt();
                    let tails = amp * amp
                        * (abs_b_sum * fs.tail_mass + abs_a_sum * gs.tail_mass
                            + shells as f64 * 2.0 * fs.tail_mass * gs.tail_mass);
                    let uncertainty = delta
                        + opts.quad_tol
                        + opts.shell_window as f64 * opts.shell_tol
                        + tails;
                    return Ok(Paired { value, uncertainty });
                }
            }
            prev = Some(value);
        }
        intervals *= 2;
        if intervals > opts.max_quad_points {
            return Err(Error::QuadratureDidNotConverge {
                points: intervals,
                last_delta: opts.quad_tol,
            });
        }
    }
}

/// `S_J^{J'}(f, g)`: the Φ layer at `λ_J` plus the Ψ layers `J..J'-1`.
pub fn partial_sum(
    system: &System,
    f: &TestFn,
    g: &TestFn,
    j_start: i64,
    j_end: i64,
    opts: &CheckOpts,
) -> Result<Paired> {
    if j_end <= j_start {
        return Err(Error::InvalidParameter("need J' > J".into()));
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut uncertainty = 0.0;
    let lam = system.lambda(j_start)?;
    for pair in &system.phi {
        let p = layer_bracket(f, g, pair, lam, opts)?;
        value += p.value;
        uncertainty += p.uncertainty;
    }
    for j in j_start..j_end {
        let lam = system.lambda(j)?;
        for pair in system.psi_pairs(j)? {
            let p = layer_bracket(f, g, pair, lam, opts)?;
            value += p.value;
            uncertainty += p.uncertainty;
        }
    }
    Ok(Paired { value, uncertainty })
}

/// One row of a duality convergence table.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct ConvRow {
    pub j_prime: i64,
    pub s_re: f64,
    pub s_im: f64,
    pub target_re: f64,
    pub target_im: f64,
    pub abs_err: f64,
}

/// Partial sums `S_J^{J'}` for `J' = J+1 ..= J'max` against `2π <f, g>`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct DualityReport {
    pub rows: Vec<ConvRow>,
    pub target_re: f64,
    pub target_im: f64,
    pub tolerance: f64,
    pub final_error: f64,
    pub errors_non_increasing: bool,
    pub pass: bool,
}

impl DualityReport {
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "J_prime,S_re,S_im,target_re,target_im,abs_err")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                r.j_prime, r.s_re, r.s_im, r.target_re, r.target_im, r.abs_err
            )?;
        }
        Ok(())
    }
}

/// Tabulates the partial sums incrementally (each new row adds one Ψ layer)
/// and passes iff the final error is below `tol` and the last three errors
/// are non-increasing.
pub fn check_duality(
    system: &System,
    f: &TestFn,
    g: &TestFn,
    j_start: i64,
    j_max: i64,
    tol: f64,
    opts: &CheckOpts,
) -> Result<DualityReport> {
    if j_max <= j_start {
        return Err(Error::InvalidParameter("need J'max > J".into()));
    }
    // target 2π <f, g>
    let overlap = match (f.support(), g.support()) {
        (Some((fa, fb)), Some((ga, gb))) => {
            let lo = fa.max(ga);
            let hi = fb.min(gb);
            (lo < hi).then_some((lo, hi))
        }
        _ => None,
    };
    let target = match overlap {
        Some((lo, hi)) => {
            super::quad::adaptive_trapezoid(
                |xi| Complex64::new(f.eval(xi) * g.eval(xi), 0.0),
                lo,
                hi,
                opts.quad_tol,
                opts.max_quad_points,
            )?
            .value
                * 2.0
                * PI
        }
        None => Complex64::new(0.0, 0.0),
    };

    let mut s = Complex64::new(0.0, 0.0);
    let lam = system.lambda(j_start)?;
    for pair in &system.phi {
        s += layer_bracket(f, g, pair, lam, opts)?.value;
    }
    let mut rows = Vec::new();
    for j in j_start..j_max {
        let lam = system.lambda(j)?;
        for pair in system.psi_pairs(j)? {
            s += layer_bracket(f, g, pair, lam, opts)?.value;
        }
        rows.push(ConvRow {
            j_prime: j + 1,
            s_re: s.re,
            s_im: s.im,
            target_re: target.re,
            target_im: target.im,
            abs_err: (s - target).norm(),
        });
    }
    let final_error = rows.last().map(|r| r.abs_err).unwrap_or(f64::INFINITY);
    let slack = 1e-15 * (1.0 + target.norm());
    let tail = rows.iter().rev().take(3).collect::<Vec<_>>();
    let errors_non_increasing = tail.windows(2).all(|w| w[0].abs_err <= w[1].abs_err + slack);
    Ok(DualityReport {
        pass: final_error < tol && errors_non_increasing,
        rows,
        target_re: target.re,
        target_im: target.im,
        tolerance: tol,
        final_error,
        errors_non_increasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::banks;
    use crate::framecheck::pairing::{bracket_series, pairing};

    fn opts() -> CheckOpts {
        CheckOpts::default()
    }

    #[test]
    fn layer_bracket_matches_naive_series() {
        // test-function generators keep the naive route cheap and exact
        let f = TestFn::bump(0.0, 1.0).unwrap();
        let g = TestFn::bump(0.2, 0.8).unwrap();
        let gen = FreqFn::Test(TestFn::bump(0.1, 1.5).unwrap());
        let pair = GeneratorPair::self_dual(gen.clone());
        for lambda in [1.0, 0.5, -0.5] {
            let batched = layer_bracket(&f, &g, &pair, lambda, &opts()).unwrap();
            // the naive series needs k up to ~const/|λ| before its own tail
            // drops below the comparison tolerance
            let kmax = (192.0 / lambda.abs()).ceil() as i64;
            let naive = bracket_series(&f, &g, &gen, &gen, lambda, kmax, &opts()).unwrap();
            assert!(
                (batched.value - naive.value).norm() < 1e-7,
                "lambda={lambda}: {} vs {}",
                batched.value,
                naive.value
            );
        }
    }

    #[test]
    fn layer_bracket_haar_phi_matches_series() {
        let sys = System::from_bank(&banks::haar(), 30, false).unwrap();
        let f = TestFn::bump(0.0, 1.0).unwrap();
        let pair = &sys.phi[0];
        let batched = layer_bracket(&f, &f, pair, 1.0, &opts()).unwrap();
        let naive = bracket_series(
            &f,
            &f,
            &pair.primal,
            &pair.dual,
            1.0,
            128,
            &opts(),
        )
        .unwrap();
        assert!((batched.value - naive.value).norm() < 1e-7);
        // self-dual layer sums are real and positive
        assert!(batched.value.im.abs() < 1e-9);
        assert!(batched.value.re > 0.0);
    }

    #[test]
    fn phi_layer_reduction_when_psi_empty() {
        // a system with zero Ψ: S_J^{J+1} is the Φ-layer bracket alone
        let sys = System {
            phi: vec![GeneratorPair::self_dual(FreqFn::Test(
                TestFn::bump(0.0, 2.0).unwrap(),
            ))],
            kind: SystemKind::Stationary {
                dilation: 2.0,
                psi: vec![GeneratorPair::self_dual(FreqFn::Zero)],
            },
        };
        let f = TestFn::bump(0.0, 1.0).unwrap();
        let s = partial_sum(&sys, &f, &f, 0, 1, &opts()).unwrap();
        let direct = layer_bracket(&f, &f, &sys.phi[0], 1.0, &opts()).unwrap();
        assert!((s.value - direct.value).norm() < 1e-10);
    }

    #[test]
    fn pairing_translation_zero_modulation_equivalence() {
        // g_{λ;0,k} uses modulation k: check one pairing by hand against the
        // batched Fourier-sum route at k = 3
        let f = TestFn::bump(0.0, 1.0).unwrap();
        let gen = FreqFn::Test(TestFn::bump(0.0, 1.5).unwrap());
        let p = pairing(&f, &gen, 0.5, 0.0, 3.0, &opts()).unwrap();
        let (fa, fb) = f.support().unwrap();
        let samples = sample_side(&f, &gen, 0.5, fa, fb, 4096).unwrap();
        let a3 = fourier_sum(&samples, 3) * 0.5f64.sqrt();
        assert!((p.value - a3).norm() < 1e-8);
    }

    #[test]
    fn zero_system_misses_target() {
        let sys = System::zero(1, 1, 2.0);
        let f = TestFn::bump(0.0, 1.0).unwrap();
        let report = check_duality(&sys, &f, &f, 0, 4, 1e-6, &opts()).unwrap();
        assert!(!report.pass);
        let expect = 2.0 * PI * 0.9833808129127184;
        assert!((report.final_error - expect).abs() < 1e-6);
    }

    #[test]
    fn lambda_rules() {
        let sys = System::from_bank(&banks::haar(), 5, false).unwrap();
        assert_eq!(sys.lambda(3).unwrap(), 0.125);
        assert_eq!(sys.lambda(-2).unwrap(), 4.0);

        let ns = banks::nonstationary_haar(3);
        let sysn = System::from_nonstationary_bank(&ns, 5, 0).unwrap();
        assert_eq!(sysn.lambda(0).unwrap(), 1.0);
        assert_eq!(sysn.lambda(5).unwrap(), 1.0 / 32.0); // repeat_last extends
        assert!(sysn.psi_pairs(7).unwrap().len() == 1);
        assert!(sysn.lambda(-1).is_err());
    }
}
