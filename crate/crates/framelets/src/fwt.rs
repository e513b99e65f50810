//! Discrete multi-level framelet transform.
//!
//! Signals are finitely supported bi-infinite sequences. One analysis step is
//! the transition operator `w(k) = Σ_n v(n) conj(p(n - d k))`, one synthesis
//! step the subdivision operator `r(n) = |d| Σ_k w(k) q(n - d k)`; the `|d|`
//! factor lives entirely in subdivision so the one-level reconstruction
//! identity holds with constant exactly 1.
//!
//! For a bank that satisfies the fundamental identities, analysis with
//! `(a, b^ℓ)`, a single Θ-convolution of the coarsest channel, and synthesis
//! with `(ã, b̃^ℓ)` reproduces `Θ * v`. In the level-dependent case the
//! level-`j` filters connect level-`j` data to level-`j-1` data, so an
//! `L`-level analysis applies the level-`L` filters first and the level-1
//! filters last; the coarsest channel is convolved with `Θ^1` and the
//! reconstruction equals `Θ^{L+1} * v`.

use crate::filterbank::{FilterBank, NonstationaryBank, TailRule};
use crate::laurent::{Dilation, LaurentPoly};
use crate::scalar::{Coeff, ExactScalar};
use crate::{Error, Result};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;

/// Finitely supported sequence in canonical sparse form (no stored zeros).
#[derive(Clone, PartialEq, Debug)]
pub struct Signal<C: Coeff> {
    coeffs: BTreeMap<i64, C>,
}

impl<C: Coeff> Default for Signal<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Signal<C> {
    pub fn zero() -> Self {
        Signal {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn delta(k: i64) -> Self {
        Self::from_pairs([(k, C::one())])
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, C)>>(pairs: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in pairs {
            s.accumulate(k, c);
        }
        s
    }

    fn accumulate(&mut self, k: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let updated = match self.coeffs.get(&k) {
            Some(old) => old.add(&c),
            None => c,
        };
        if updated.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, updated);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, k: i64) -> C {
        self.coeffs.get(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        Some((
            *self.coeffs.keys().next()?,
            *self.coeffs.keys().next_back()?,
        ))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in rhs.iter() {
            out.accumulate(k, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in rhs.iter() {
            out.accumulate(k, c.neg());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (k, a) in self.iter() {
            out.accumulate(k, a.mul(c));
        }
        out
    }

    /// Coefficient convolution with a polynomial: `(p * v)(n) = Σ_m p(m) v(n - m)`.
    pub fn convolve_poly(&self, p: &LaurentPoly<C>) -> Self {
        let mut out = Self::zero();
        for (m, pm) in p.iter() {
            for (n, vn) in self.iter() {
                out.accumulate(m + n, pm.mul(vn));
            }
        }
        out
    }

    /// Largest coefficient modulus of `self - rhs`, in double precision.
    pub fn max_deviation(&self, rhs: &Self) -> f64 {
        self.sub(rhs)
            .iter()
            .map(|(_, c)| c.to_c64().norm())
            .fold(0.0, f64::max)
    }
}

/// Analysis half of the two-scale relation: `w(k) = Σ_n v(n) conj(p(n - d k))`.
pub fn transition<C: Coeff>(v: &Signal<C>, p: &LaurentPoly<C>, d: Dilation) -> Signal<C> {
    let d = d.get();
    let mut out = Signal::zero();
    for (n, vn) in v.iter() {
        for (m, pm) in p.iter() {
            let delta = n - m;
            if delta % d == 0 {
                out.accumulate(delta / d, vn.mul(&pm.conj()));
            }
        }
    }
    out
}

/// Synthesis half: `r(n) = |d| Σ_k w(k) q(n - d k)`.
pub fn subdivision<C: Coeff>(w: &Signal<C>, q: &LaurentPoly<C>, d: Dilation) -> Signal<C> {
    let scale = C::from_ratio(d.abs(), 1);
    let mut out = Signal::zero();
    for (k, wk) in w.iter() {
        for (m, qm) in q.iter() {
            out.accumulate(d.get() * k + m, scale.mul(&wk.mul(qm)));
        }
    }
    out
}

/// Coarse channel plus per-step detail channels of a multi-level analysis.
/// `details[i]` holds the channels produced by analysis step `i` (step 0
/// first); each step also records the dilation it used so synthesis can
/// validate bank/pyramid consistency.
#[derive(Clone, Debug)]
pub struct Pyramid<C: Coeff> {
    pub coarse: Signal<C>,
    pub details: Vec<Vec<Signal<C>>>,
    step_dilations: Vec<i64>,
}

impl<C: Coeff> Pyramid<C> {
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    /// Rebuilds a pyramid from serialized parts. The per-step dilations are
    /// unknown here, so synthesis validates only the channel shape.
    pub fn from_parts(coarse: Signal<C>, details: Vec<Vec<Signal<C>>>) -> Self {
        Pyramid {
            coarse,
            details,
            step_dilations: Vec::new(),
        }
    }
}

/// Level indices a bank assigns to analysis steps: step `i` of an `L`-level
/// transform uses bank level `L - i` (the level-`L` filters touch the input
/// first, the level-1 filters produce the coarsest data).
fn step_level(levels: usize, step: usize) -> usize {
    levels - step
}

fn analyze_with<C: Coeff, F>(v: &Signal<C>, levels: usize, filters_at: F) -> Result<Pyramid<C>>
where
    F: Fn(usize) -> Result<(Dilation, LaurentPoly<C>, Vec<LaurentPoly<C>>)>,
{
    if levels == 0 {
        return Err(Error::InvalidParameter(
            "analysis needs at least one level".into(),
        ));
    }
    let mut coarse = v.clone();
    let mut details = Vec::with_capacity(levels);
    let mut step_dilations = Vec::with_capacity(levels);
    for step in 0..levels {
        let (d, low, highs) = filters_at(step)?;
        details.push(highs.iter().map(|b| transition(&coarse, b, d)).collect());
        coarse = transition(&coarse, &low, d);
        step_dilations.push(d.get());
    }
    Ok(Pyramid {
        coarse,
        details,
        step_dilations,
    })
}

/// Multi-level analysis with a stationary bank.
pub fn analyze<C: Coeff>(v: &Signal<C>, bank: &FilterBank<C>, levels: usize) -> Result<Pyramid<C>> {
    analyze_with(v, levels, |_| {
        Ok((
            bank.dilation,
            bank.lowpass.clone(),
            bank.highpass.clone(),
        ))
    })
}

/// Multi-level analysis with a level-dependent bank; step `i` uses the bank's
/// level `L - i` filters (tail rule applies past the provided levels).
pub fn analyze_nonstationary<C: Coeff>(
    v: &Signal<C>,
    bank: &NonstationaryBank<C>,
    levels: usize,
) -> Result<Pyramid<C>> {
    analyze_with(v, levels, |step| {
        let lvl = bank.level(step_level(levels, step))?;
        Ok((lvl.dilation, lvl.lowpass.clone(), lvl.highpass.clone()))
    })
}

fn synthesize_with<C: Coeff, F>(
    pyr: &Pyramid<C>,
    theta_coarse: &LaurentPoly<C>,
    filters_at: F,
) -> Result<Signal<C>>
where
    F: Fn(usize) -> Result<(Dilation, LaurentPoly<C>, Vec<LaurentPoly<C>>)>,
{
    let mut current = pyr.coarse.convolve_poly(theta_coarse);
    for step in (0..pyr.details.len()).rev() {
        let (d, low_dual, highs_dual) = filters_at(step)?;
        if !pyr.step_dilations.is_empty() && d.get() != pyr.step_dilations[step] {
            return Err(Error::BankPyramidMismatch(format!(
                "step {step} was analyzed with dilation {} but the bank provides {}",
                pyr.step_dilations[step],
                d.get()
            )));
        }
        if highs_dual.len() != pyr.details[step].len() {
            return Err(Error::BankPyramidMismatch(format!(
                "step {step} has {} detail channels but the bank provides {}",
                pyr.details[step].len(),
                highs_dual.len()
            )));
        }
        let mut out = subdivision(&current, &low_dual, d);
        for (w, q) in pyr.details[step].iter().zip(&highs_dual) {
            out = out.add(&subdivision(w, q, d));
        }
        current = out;
    }
    Ok(current)
}

/// Reconstruction with a stationary bank: the coarsest channel is convolved
/// with Θ once, so the result equals `Θ * v` whenever the bank verifies.
pub fn synthesize<C: Coeff>(pyr: &Pyramid<C>, bank: &FilterBank<C>) -> Result<Signal<C>> {
    synthesize_with(pyr, &bank.theta_of(), |_| {
        Ok((
            bank.dilation,
            bank.lowpass_dual.clone(),
            bank.highpass_dual.clone(),
        ))
    })
}

/// Reconstruction with a level-dependent bank: the coarsest channel is
/// convolved with `Θ^1` and the result equals `Θ^{L+1} * v`.
pub fn synthesize_nonstationary<C: Coeff>(
    pyr: &Pyramid<C>,
    bank: &NonstationaryBank<C>,
) -> Result<Signal<C>> {
    let levels = pyr.details.len();
    let theta1 = bank.level(1)?.theta.resolve();
    synthesize_with(pyr, &theta1, |step| {
        let lvl = bank.level(step_level(levels, step))?;
        Ok((
            lvl.dilation,
            lvl.lowpass_dual.clone(),
            lvl.highpass_dual.clone(),
        ))
    })
}

/// What a verified bank reconstructs: `Θ * v` (stationary).
pub fn expected_reconstruction<C: Coeff>(bank: &FilterBank<C>, v: &Signal<C>) -> Signal<C> {
    v.convolve_poly(&bank.theta_of())
}

/// What a verified level-dependent bank reconstructs from `L` levels:
/// `Θ^{L+1} * v`.
pub fn expected_reconstruction_nonstationary<C: Coeff>(
    bank: &NonstationaryBank<C>,
    v: &Signal<C>,
    levels: usize,
) -> Result<Signal<C>> {
    Ok(v.convolve_poly(&bank.theta_next(levels)?))
}

/// Outcome of a randomized perfect-reconstruction run.
#[derive(Clone, Debug)]
pub struct PrReport {
    pub pass: bool,
    pub trials: usize,
    pub failures: usize,
    pub max_defect: f64,
    pub tolerance: f64,
}

fn random_exact_signal(rng: &mut StdRng, maxlen: usize) -> Signal<ExactScalar> {
    let len = rng.gen_range(1..=maxlen.max(1));
    let offset = rng.gen_range(-8..=8i64);
    Signal::from_pairs((0..len).map(|i| {
        let num = rng.gen_range(-9..=9i64);
        let den = rng.gen_range(1..=9i64);
        (offset + i as i64, ExactScalar::real(num, den))
    }))
}

fn pr_defect<C: Coeff>(got: &Signal<C>, want: &Signal<C>) -> f64 {
    got.max_deviation(want)
}

fn pr_verdict<C: Coeff>(defect: f64, exact_equal: bool, tol: f64) -> bool {
    if C::EXACT {
        exact_equal
    } else {
        defect <= tol
    }
}

/// Draws random exact-rational signals, runs `synthesize(analyze(v))` through
/// the bank and compares against `Θ * v` — coefficientwise equality in exact
/// mode, `1e-10` in float mode. Deterministic for a fixed seed.
pub fn pr_test<C: Coeff>(
    bank: &FilterBank<C>,
    trials: usize,
    maxlen: usize,
    max_levels: usize,
    seed: u64,
) -> Result<PrReport>
where
    Signal<C>: FromExactSignal,
{
    if max_levels == 0 {
        return Err(Error::InvalidParameter("need at least one level".into()));
    }
    let tol = 1e-10;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut max_defect: f64 = 0.0;
    let mut failures = 0;
    for _ in 0..trials {
        let levels = rng.gen_range(1..=max_levels);
        let v = Signal::<C>::from_exact(&random_exact_signal(&mut rng, maxlen));
        let pyr = analyze(&v, bank, levels)?;
        let got = synthesize(&pyr, bank)?;
        let want = expected_reconstruction(bank, &v);
        let defect = pr_defect(&got, &want);
        max_defect = max_defect.max(defect);
        if !pr_verdict::<C>(defect, got == want, tol) {
            failures += 1;
        }
    }
    Ok(PrReport {
        pass: failures == 0,
        trials,
        failures,
        max_defect,
        tolerance: tol,
    })
}

/// Level-dependent variant of [`pr_test`]; compares against `Θ^{L+1} * v`.
pub fn pr_test_nonstationary<C: Coeff>(
    bank: &NonstationaryBank<C>,
    trials: usize,
    maxlen: usize,
    max_levels: usize,
    seed: u64,
) -> Result<PrReport>
where
    Signal<C>: FromExactSignal,
{
    if max_levels == 0 {
        return Err(Error::InvalidParameter("need at least one level".into()));
    }
    let cap = match bank.tail_rule() {
        TailRule::Terminate => max_levels.min(bank.num_levels()),
        TailRule::RepeatLast => max_levels,
    };
    let tol = 1e-10;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut max_defect: f64 = 0.0;
    let mut failures = 0;
    for _ in 0..trials {
        let levels = rng.gen_range(1..=cap);
        let v = Signal::<C>::from_exact(&random_exact_signal(&mut rng, maxlen));
        let pyr = analyze_nonstationary(&v, bank, levels)?;
        let got = synthesize_nonstationary(&pyr, bank)?;
        let want = expected_reconstruction_nonstationary(bank, &v, levels)?;
        let defect = pr_defect(&got, &want);
        max_defect = max_defect.max(defect);
        if !pr_verdict::<C>(defect, got == want, tol) {
            failures += 1;
        }
    }
    Ok(PrReport {
        pass: failures == 0,
        trials,
        failures,
        max_defect,
        tolerance: tol,
    })
}

/// Conversion from the exact random test signals into the bank's mode.
pub trait FromExactSignal {
    fn from_exact(v: &Signal<ExactScalar>) -> Self;
}

impl FromExactSignal for Signal<ExactScalar> {
    fn from_exact(v: &Signal<ExactScalar>) -> Self {
        v.clone()
    }
}

impl FromExactSignal for Signal<num::complex::Complex64> {
    fn from_exact(v: &Signal<ExactScalar>) -> Self {
        Signal::from_pairs(v.iter().map(|(k, c)| (k, c.to_c64())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::banks;

    fn haar_d() -> Dilation {
        Dilation::new(2).unwrap()
    }

    #[test]
    fn transition_hand_cases() {
        let bank = banks::haar();
        let w = transition(&Signal::delta(0), &bank.lowpass, haar_d());
        assert_eq!(w, Signal::from_pairs([(0, ExactScalar::real(1, 2))]));

        let v = Signal::from_pairs([(0, ExactScalar::one()), (1, ExactScalar::one())]);
        let w = transition(&v, &bank.lowpass, haar_d());
        assert_eq!(w, Signal::from_pairs([(0, ExactScalar::one())]));

        // delta filter downsamples
        let v = Signal::from_pairs((0..6).map(|k| (k, ExactScalar::real(k + 1, 1))));
        let w = transition(&v, &LaurentPoly::one(), haar_d());
        assert_eq!(
            w,
            Signal::from_pairs([
                (0, ExactScalar::real(1, 1)),
                (1, ExactScalar::real(3, 1)),
                (2, ExactScalar::real(5, 1)),
            ])
        );
    }

    #[test]
    fn subdivision_hand_cases() {
        let bank = banks::haar();
        let r = subdivision(&Signal::delta(0), &bank.lowpass_dual, haar_d());
        assert_eq!(
            r,
            Signal::from_pairs([(0, ExactScalar::one()), (1, ExactScalar::one())])
        );

        let w = Signal::from_pairs([(1, ExactScalar::real(3, 1))]);
        let r = subdivision(&w, &LaurentPoly::one(), haar_d());
        assert_eq!(r, Signal::from_pairs([(2, ExactScalar::real(6, 1))]));

        assert!(subdivision(&Signal::zero(), &bank.lowpass_dual, haar_d()).is_zero());
    }

    #[test]
    fn analyze_hand_cases() {
        let bank = banks::haar();
        let pyr = analyze(&Signal::delta(0), &bank, 1).unwrap();
        assert_eq!(pyr.coarse, Signal::from_pairs([(0, ExactScalar::real(1, 2))]));
        assert_eq!(
            pyr.details[0][0],
            Signal::from_pairs([(0, ExactScalar::real(1, 2))])
        );

        let v = Signal::from_pairs([(0, ExactScalar::one()), (1, ExactScalar::one())]);
        let pyr = analyze(&v, &bank, 1).unwrap();
        assert_eq!(pyr.coarse, Signal::from_pairs([(0, ExactScalar::one())]));
        assert!(pyr.details[0][0].is_zero());

        let pyr = analyze(&Signal::zero(), &bank, 3).unwrap();
        assert!(pyr.coarse.is_zero());
        assert!(pyr.details.iter().all(|lvl| lvl.iter().all(|s| s.is_zero())));

        assert!(analyze(&Signal::<ExactScalar>::delta(0), &bank, 0).is_err());
    }

    #[test]
    fn synthesize_round_trips() {
        let bank = banks::haar();
        for v in [
            Signal::delta(0),
            Signal::from_pairs([(0, ExactScalar::one()), (1, ExactScalar::one())]),
            Signal::from_pairs([
                (-3, ExactScalar::real(2, 3)),
                (0, ExactScalar::real(-1, 7)),
                (5, ExactScalar::real(4, 1)),
            ]),
        ] {
            for levels in 1..=4 {
                let pyr = analyze(&v, &bank, levels).unwrap();
                let got = synthesize(&pyr, &bank).unwrap();
                assert_eq!(got, v, "levels={levels}");
            }
        }
    }

    #[test]
    fn linearity_exact() {
        let bank = banks::haar_shifted();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..16 {
            let u = random_exact_signal(&mut rng, 12);
            let v = random_exact_signal(&mut rng, 12);
            let alpha = ExactScalar::real(rng.gen_range(-5..=5), rng.gen_range(1..=5));
            let combo = u.scale(&alpha).add(&v);
            let left = analyze(&combo, &bank, 2).unwrap();
            let ua = analyze(&u, &bank, 2).unwrap();
            let va = analyze(&v, &bank, 2).unwrap();
            assert_eq!(left.coarse, ua.coarse.scale(&alpha).add(&va.coarse));
            for (l, (a, b)) in left
                .details
                .iter()
                .zip(ua.details.iter().zip(va.details.iter()))
            {
                for (x, (y, z)) in l.iter().zip(a.iter().zip(b.iter())) {
                    assert_eq!(*x, y.scale(&alpha).add(z));
                }
            }
        }
    }

    #[test]
    fn support_growth_bound() {
        let bank = banks::haar_shifted();
        let levels = 3usize;
        let v = Signal::from_pairs([(0, ExactScalar::one()), (9, ExactScalar::real(1, 3))]);
        let pyr = analyze(&v, &bank, levels).unwrap();
        let out = synthesize(&pyr, &bank).unwrap();
        let (vlo, vhi) = v.support().unwrap();
        let (olo, ohi) = out.support().unwrap();
        let max_deg = bank
            .highpass
            .iter()
            .chain([&bank.lowpass])
            .map(|p| p.degree().unwrap())
            .max()
            .unwrap() as i64;
        let margin = levels as i64 * max_deg; // theta is constant here
        assert!(olo >= vlo - margin && ohi <= vhi + margin);
    }

    #[test]
    fn theta_applied_exactly_once() {
        // haar_oblique has Θ = e^{-i xi}, so Θ*v is v shifted by one: a
        // double (or missing) Θ application would shift by two (or zero).
        let bank = banks::haar_oblique();
        assert!(bank.verify_oep(1e-12).passed());
        let v = Signal::from_pairs([
            (0, ExactScalar::one()),
            (2, ExactScalar::real(-3, 5)),
            (7, ExactScalar::real(1, 3)),
        ]);
        for levels in 1..=3 {
            let pyr = analyze(&v, &bank, levels).unwrap();
            let got = synthesize(&pyr, &bank).unwrap();
            let shifted = Signal::from_pairs(v.iter().map(|(k, c)| (k + 1, c.clone())));
            assert_eq!(got, shifted, "levels={levels}");
            assert_eq!(got, expected_reconstruction(&bank, &v));
        }
    }

    #[test]
    fn pr_test_haar_and_perturbed() {
        let ok = pr_test(&banks::haar(), 50, 32, 4, 42).unwrap();
        assert!(ok.pass);
        assert_eq!(ok.max_defect, 0.0);

        let bad = pr_test(&banks::haar_perturbed(), 20, 16, 3, 42).unwrap();
        assert!(!bad.pass);
        assert!(bad.max_defect > 0.0);

        assert!(pr_test(&banks::haar(), 1, 8, 0, 1).is_err());
    }

    #[test]
    fn pr_matches_oep_for_float_banks() {
        let good = banks::bspline_framelet();
        assert!(good.verify_oep(1e-12).passed());
        assert!(pr_test(&good, 40, 24, 3, 9).unwrap().pass);

        let bad = banks::bspline_broken();
        assert!(!bad.verify_oep(1e-12).passed());
        assert!(!pr_test(&bad, 10, 16, 2, 9).unwrap().pass);
    }

    #[test]
    fn nonstationary_order_is_pinned_by_chained_thetas() {
        let bank = banks::nonstationary_chained();
        let report = bank.verify_nonstationary_oep(1e-12).unwrap();
        assert!(report.passed());

        // right order: the level-2 filters touch v first, the coarse channel
        // is convolved with Θ^1 = 1, and the result is Θ^3 * v = v shifted
        let v = Signal::from_pairs([(0, ExactScalar::one()), (3, ExactScalar::real(1, 2))]);
        let pyr = analyze_nonstationary(&v, &bank, 2).unwrap();
        let got = synthesize_nonstationary(&pyr, &bank).unwrap();
        let want = expected_reconstruction_nonstationary(&bank, &v, 2).unwrap();
        assert_eq!(got, want);
        assert_eq!(
            want,
            Signal::from_pairs(v.iter().map(|(k, c)| (k + 1, c.clone())))
        );
        let pr = pr_test_nonstationary(&bank, 40, 24, 2, 5).unwrap();
        assert!(pr.pass, "max defect {}", pr.max_defect);

        // opposite order (level-1 filters first) breaks the Θ-chain
        let lvl1 = bank.level(1).unwrap();
        let lvl2 = bank.level(2).unwrap();
        let d = lvl1.dilation;
        let c1 = transition(&v, &lvl1.lowpass, d);
        let det1: Vec<_> = lvl1.highpass.iter().map(|b| transition(&v, b, d)).collect();
        let c2 = transition(&c1, &lvl2.lowpass, d);
        let det2: Vec<_> = lvl2.highpass.iter().map(|b| transition(&c1, b, d)).collect();
        let mut back1 = subdivision(&c2, &lvl2.lowpass_dual, d);
        for (w, q) in det2.iter().zip(&lvl2.highpass_dual) {
            back1 = back1.add(&subdivision(w, q, d));
        }
        let mut back0 = subdivision(&back1, &lvl1.lowpass_dual, d);
        for (w, q) in det1.iter().zip(&lvl1.highpass_dual) {
            back0 = back0.add(&subdivision(w, q, d));
        }
        assert_ne!(back0, want);
    }

    #[test]
    fn nonstationary_haar_round_trip() {
        let bank = banks::nonstationary_haar(4);
        let pr = pr_test_nonstationary(&bank, 30, 24, 4, 11).unwrap();
        assert!(pr.pass);
        // repeat_last lets the transform go deeper than the provided levels
        let v = Signal::delta(0);
        let pyr = analyze_nonstationary(&v, &bank, 6).unwrap();
        let got = synthesize_nonstationary(&pyr, &bank).unwrap();
        assert_eq!(got, v);
    }
}
