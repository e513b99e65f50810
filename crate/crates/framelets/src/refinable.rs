//! Frequency-domain refinable functions as certified truncated products.
//!
//! The standard refinable function with mask `a` and dilation `d` is
//! `phi(xi) = Π_{j>=1} a(d^{-j} xi)`; the level-`j` function of a
//! level-dependent bank is `phi^j(xi) = Π_{n>=1} a^{j+n}(s_n xi)` with
//! `s_n = λ_{j+n}/λ_j`. Both are evaluated as products of the first `M`
//! factors, and every value carries a rigorous bound on the discarded tail.
//!
//! The bound splits the full product into the computed part times the
//! discarded tail. With the tail weight
//! `t(M) = Σ_{n>M} |s_n| deg(a^{j+n}) ‖a^{j+n}‖` (sup norms replaced by the
//! coefficient l1 sums, which only over-estimate), the discarded factors
//! satisfy `|1 - Π_tail| <= e^{t(M) |xi|} |xi| t(M)`, so
//!
//! ```text
//! |phi(xi) - value| = |value| · |1 - Π_tail| <= |value| e^{t(M) |xi|} |xi| t(M).
//! ```
//!
//! Floating-point rounding is absorbed by an `M·4·eps·magnitude` term, and
//! evaluation refuses arguments where the a-priori envelope `e^{c |xi|}`
//! (with `c` the total weight sum) overflows. Masks must be trigonometric
//! polynomials with `a(0) = 1`: that normalization makes the per-factor
//! bound `|1 - a(s xi)| <= |s xi| deg(a) ‖a‖` valid (a Bernstein inequality
//! applied to `a - a(0)`).

use crate::filterbank::{NonstationaryBank, TailRule};
use crate::laurent::LaurentPoly;
use crate::scalar::Coeff;
use crate::{Error, Result};
use num::complex::Complex64;
use std::io::Write;
use std::sync::Arc;

/// Exponent cap: past this the certified bound is not representable in f64.
const EXP_LIMIT: f64 = 700.0;

/// A value together with a rigorous bound on `|true - value|`.
#[derive(Clone, Copy, Debug)]
pub struct CertifiedValue {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// Anything that evaluates pointwise with a certificate.
pub trait CertEval: Send + Sync {
    fn eval_certified(&self, xi: f64) -> Result<CertifiedValue>;
}

#[derive(Clone, Debug)]
struct Factor {
    mask: LaurentPoly<Complex64>,
    /// argument scale s_n (signed).
    scale: f64,
}

/// Truncated-product evaluator for one refinable function.
#[derive(Clone, Debug)]
pub struct Refinable {
    factors: Vec<Factor>,
    truncation: usize,
    /// Σ of all factor weights (closed-form tail included).
    c_total: f64,
    /// Σ of the weights past the truncation.
    tail_weight: f64,
}

fn mask_norm_check<C: Coeff>(mask: &LaurentPoly<C>) -> Result<(LaurentPoly<Complex64>, f64, u64)> {
    let at_zero = mask.value_at_zero();
    let ok = if C::EXACT {
        at_zero == C::one()
    } else {
        (at_zero.to_c64() - Complex64::new(1.0, 0.0)).norm() <= 1e-12
    };
    if !ok {
        return Err(Error::NormalizationViolated(format!(
            "mask sums to {} instead of 1",
            at_zero.to_c64()
        )));
    }
    let deg = mask.degree().map_err(|_| {
        Error::NormalizationViolated("zero mask cannot be refinable".into())
    })?;
    Ok((mask.to_float(), mask.l1_upper_f64(), deg))
}

impl Refinable {
    /// Standard refinable function `Π_{j=1..M} a(d^{-j} xi)`; real `|d| > 1`
    /// is accepted.
    pub fn stationary<C: Coeff>(mask: &LaurentPoly<C>, dilation: f64, truncation: usize) -> Result<Self> {
        if !(dilation.abs() > 1.0) || !dilation.is_finite() {
            return Err(Error::InvalidDilation(format!(
                "|d| > 1 required for the infinite product, got {dilation}"
            )));
        }
        if truncation == 0 {
            return Err(Error::InvalidParameter("truncation must be positive".into()));
        }
        let (fmask, l1, deg) = mask_norm_check(mask)?;
        let base = deg as f64 * l1;
        let mut factors = Vec::with_capacity(truncation);
        let mut scale = 1.0f64;
        for _ in 0..truncation {
            scale /= dilation;
            factors.push(Factor {
                mask: fmask.clone(),
                scale,
            });
        }
        // geometric sums: Σ_{j>=1} |d|^{-j} = 1/(|d|-1), tail after M scales by |d|^{-M}
        let ad = dilation.abs();
        let c_total = base / (ad - 1.0) * round_up();
        let tail_weight = base * ad.powi(-(truncation as i32)) / (ad - 1.0) * round_up();
        Ok(Refinable {
            factors,
            truncation,
            c_total,
            tail_weight,
        })
    }

    /// Level-`j` refinable function of a level-dependent bank
    /// (`j = 0` is the coarsest): `Π_{n=1..M} a^{j+n}(s_n xi)`.
    pub fn nonstationary<C: Coeff>(
        bank: &NonstationaryBank<C>,
        level_j: usize,
        truncation: usize,
    ) -> Result<Self> {
        if truncation == 0 {
            return Err(Error::InvalidParameter("truncation must be positive".into()));
        }
        Self::from_level_masks(bank, level_j, truncation, |lvl| &lvl.lowpass)
    }

    /// Same, for the dual masks.
    pub fn nonstationary_dual<C: Coeff>(
        bank: &NonstationaryBank<C>,
        level_j: usize,
        truncation: usize,
    ) -> Result<Self> {
        Self::from_level_masks(bank, level_j, truncation, |lvl| &lvl.lowpass_dual)
    }

    fn from_level_masks<C: Coeff, F>(
        bank: &NonstationaryBank<C>,
        level_j: usize,
        truncation: usize,
        pick: F,
    ) -> Result<Self>
    where
        F: Fn(&crate::filterbank::BankLevel<C>) -> &LaurentPoly<C>,
    {
        let provided = bank.num_levels();
        let mut factors = Vec::new();
        let mut scale = 1.0f64;
        let mut c_total = 0.0f64;
        let mut tail_weight = 0.0f64;
        let mut last: Option<(f64, f64)> = None; // (weight at current scale, |d|)
        for n in 1..=truncation {
            let idx = level_j + n;
            if idx > provided && bank.tail_rule() == TailRule::Terminate {
                break; // finite product: later factors are 1
            }
            let lvl = bank.level(idx)?;
            let (fmask, l1, deg) = mask_norm_check(pick(lvl))?;
            scale /= lvl.dilation.get() as f64;
            let weight = scale.abs() * deg as f64 * l1;
            c_total += weight;
            factors.push(Factor {
                mask: fmask,
                scale,
            });
            last = Some((weight, lvl.dilation.abs() as f64));
        }
        // closed-form continuation past what was materialized
        match bank.tail_rule() {
            TailRule::Terminate => {
                // tail beyond the provided levels is empty; if truncation cut
                // the product early the remaining provided factors feed both
                // sums
                let mut s = scale;
                for idx in (level_j + factors.len() + 1)..=provided {
                    let lvl = bank.level(idx)?;
                    let (_, l1, deg) = mask_norm_check(pick(lvl))?;
                    s /= lvl.dilation.get() as f64;
                    let w = s.abs() * deg as f64 * l1;
                    c_total += w;
                    tail_weight += w;
                }
            }
            TailRule::RepeatLast => {
                if let Some((w, ad)) = last {
                    if factors.len() == truncation && level_j + truncation >= provided {
                        // all remaining factors repeat the last provided one
                        let geo = w / (ad - 1.0);
                        c_total += geo;
                        tail_weight += geo;
                    } else {
                        // truncation < reach of provided levels: walk the rest
                        let mut s = scale;
                        let mut w_last = w;
                        let mut ad_last = ad;
                        for idx in (level_j + factors.len() + 1).. {
                            if idx > provided {
                                let geo = w_last / (ad_last - 1.0);
                                c_total += geo;
                                tail_weight += geo;
                                break;
                            }
                            let lvl = bank.level(idx)?;
                            let (_, l1, deg) = mask_norm_check(pick(lvl))?;
                            s /= lvl.dilation.get() as f64;
                            let wi = s.abs() * deg as f64 * l1;
                            c_total += wi;
                            tail_weight += wi;
                            w_last = wi;
                            ad_last = lvl.dilation.abs() as f64;
                        }
                    }
                }
            }
        }
        c_total *= round_up();
        tail_weight *= round_up();
        Ok(Refinable {
            factors,
            truncation,
            c_total,
            tail_weight,
        })
    }

    /// The certified convergence constant of this product (l1-based).
    pub fn constant(&self) -> f64 {
        self.c_total
    }

    /// Σ of the Bernstein weights beyond the kept factors.
    pub fn tail_weight(&self) -> f64 {
        self.tail_weight
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Largest `|xi|` this evaluator accepts before the a-priori envelope
    /// `e^{c |xi|}` overflows.
    pub fn xi_limit(&self) -> f64 {
        if self.c_total <= 0.0 {
            f64::INFINITY
        } else {
            EXP_LIMIT / self.c_total
        }
    }
}

// Positive-sum rounding slop.
fn round_up() -> f64 {
    1.0 + 1e-13
}

impl CertEval for Refinable {
    fn eval_certified(&self, xi: f64) -> Result<CertifiedValue> {
        if self.c_total * xi.abs() > EXP_LIMIT {
            return Err(Error::EvaluationRange {
                xi,
                limit: self.xi_limit(),
            });
        }
        let mut value = Complex64::new(1.0, 0.0);
        let mut max_mag = 1.0f64;
        for f in &self.factors {
            value *= f.mask.evaluate(f.scale * xi);
            max_mag = max_mag.max(value.norm());
        }
        let rounding = self.factors.len() as f64 * 4.0 * f64::EPSILON * max_mag;
        // |value| (1 + rounding slack) bounds the computed part, the
        // exponential factor bounds the discarded one
        let kept = value.norm() + rounding;
        let truncation_bound =
            kept * (self.tail_weight * xi.abs()).exp() * xi.abs() * self.tail_weight;
        Ok(CertifiedValue {
            value,
            tail_bound: truncation_bound + rounding,
        })
    }
}

/// A refinable function times a trigonometric-polynomial multiplier, with an
/// optional argument scale: `g(xi) = m(xi/q) · phi(xi/q)`.
///
/// The generators of Theorem-style systems are built this way:
/// `phi^ℓ = θ^ℓ · phi` (scale 1) and `psi^ℓ(xi) = b^ℓ(xi/d) phi(xi/d)`
/// (scale `d`).
#[derive(Clone)]
pub struct Generator {
    pub multiplier: LaurentPoly<Complex64>,
    pub base: Arc<Refinable>,
    pub arg_divisor: f64,
}

impl Generator {
    pub fn new<C: Coeff>(multiplier: &LaurentPoly<C>, base: Arc<Refinable>, arg_divisor: f64) -> Result<Self> {
        if arg_divisor == 0.0 || !arg_divisor.is_finite() {
            return Err(Error::InvalidParameter("argument divisor must be nonzero".into()));
        }
        Ok(Generator {
            multiplier: multiplier.to_float(),
            base,
            arg_divisor,
        })
    }

    pub fn unit(base: Arc<Refinable>) -> Self {
        Generator {
            multiplier: LaurentPoly::one(),
            base,
            arg_divisor: 1.0,
        }
    }
}

impl CertEval for Generator {
    fn eval_certified(&self, xi: f64) -> Result<CertifiedValue> {
        let eta = xi / self.arg_divisor;
        let base = self.base.eval_certified(eta)?;
        let mul = self.multiplier.evaluate(eta);
        let value = mul * base.value;
        let l1 = self.multiplier.l1_upper_f64();
        let tail = l1 * base.tail_bound
            + 4.0 * f64::EPSILON * (value.norm() + l1 * base.tail_bound);
        Ok(CertifiedValue {
            value,
            tail_bound: tail,
        })
    }
}

/// Max residual of the refinement relation `phi(d xi) = a(xi) phi(xi)` over a
/// grid, together with the accumulated certificates it must stay below.
#[derive(Clone, Copy, Debug)]
pub struct RefinementCheck {
    pub max_residual: f64,
    pub max_bound: f64,
    pub within_bound: bool,
}

pub fn verify_refinement<C: Coeff>(
    spec: &Refinable,
    mask: &LaurentPoly<C>,
    dilation: f64,
    grid: &[f64],
) -> Result<RefinementCheck> {
    let fmask = mask.to_float();
    let l1 = fmask.l1_upper_f64();
    let mut max_residual = 0.0f64;
    let mut max_bound = 0.0f64;
    for &xi in grid {
        let outer = spec.eval_certified(dilation * xi)?;
        let inner = spec.eval_certified(xi)?;
        let a = fmask.evaluate(xi);
        let residual = (outer.value - a * inner.value).norm();
        let bound = outer.tail_bound
            + l1 * inner.tail_bound
            + 8.0 * f64::EPSILON * (outer.value.norm() + l1 * inner.value.norm());
        max_residual = max_residual.max(residual);
        max_bound = max_bound.max(bound);
        if residual > bound {
            return Ok(RefinementCheck {
                max_residual,
                max_bound,
                within_bound: false,
            });
        }
    }
    Ok(RefinementCheck {
        max_residual,
        max_bound,
        within_bound: true,
    })
}

/// Level-`j` refinement relation `phi^{j-1}(d_j xi) = a^j(xi) phi^j(xi)` of a
/// level-dependent bank, `j >= 1`.
pub fn verify_refinement_nonstationary<C: Coeff>(
    bank: &NonstationaryBank<C>,
    j: usize,
    truncation: usize,
    grid: &[f64],
) -> Result<RefinementCheck> {
    if j == 0 {
        return Err(Error::InvalidParameter("levels are 1-based".into()));
    }
    let coarse = Refinable::nonstationary(bank, j - 1, truncation + 1)?;
    let fine = Refinable::nonstationary(bank, j, truncation)?;
    let lvl = bank.level(j)?;
    let fmask = lvl.lowpass.to_float();
    let l1 = fmask.l1_upper_f64();
    let d = lvl.dilation.get() as f64;
    let mut max_residual = 0.0f64;
    let mut max_bound = 0.0f64;
    let mut within = true;
    for &xi in grid {
        let outer = coarse.eval_certified(d * xi)?;
        let inner = fine.eval_certified(xi)?;
        let a = fmask.evaluate(xi);
        let residual = (outer.value - a * inner.value).norm();
        let bound = outer.tail_bound
            + l1 * inner.tail_bound
            + 8.0 * f64::EPSILON * (outer.value.norm() + l1 * inner.value.norm());
        max_residual = max_residual.max(residual);
        max_bound = max_bound.max(bound);
        within &= residual <= bound;
    }
    Ok(RefinementCheck {
        max_residual,
        max_bound,
        within_bound: within,
    })
}

/// Uniform frequency grid with certified values.
#[derive(Clone, Debug)]
pub struct FrequencySample {
    pub xi: Vec<f64>,
    pub value: Vec<Complex64>,
    pub tail_bound: Vec<f64>,
}

impl FrequencySample {
    /// CSV with columns `xi, re, im, tail_bound`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "xi,re,im,tail_bound")?;
        for i in 0..self.xi.len() {
            writeln!(
                w,
                "{},{},{},{}",
                self.xi[i], self.value[i].re, self.value[i].im, self.tail_bound[i]
            )?;
        }
        Ok(())
    }
}

/// Samples `f` on `n >= 2` uniform points spanning `[xi_min, xi_max]`.
pub fn sample_grid(f: &dyn CertEval, xi_min: f64, xi_max: f64, n: usize) -> Result<FrequencySample> {
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two samples".into()));
    }
    if !(xi_min < xi_max) {
        return Err(Error::InvalidParameter(format!(
            "invalid range [{xi_min}, {xi_max}]"
        )));
    }
    let step = (xi_max - xi_min) / (n - 1) as f64;
    let mut out = FrequencySample {
        xi: Vec::with_capacity(n),
        value: Vec::with_capacity(n),
        tail_bound: Vec::with_capacity(n),
    };
    for i in 0..n {
        let xi = xi_min + step * i as f64;
        let cv = f.eval_certified(xi)?;
        out.xi.push(xi);
        out.value.push(cv.value);
        out.tail_bound.push(cv.tail_bound);
    }
    Ok(out)
}

/// Closed form of the Haar refinable function, `(1 - e^{-i xi}) / (i xi)`,
/// written as `e^{-i xi/2} sinc(xi/2)` so it is well defined at zero. Used as
/// an independent oracle in tests and examples.
pub fn haar_closed_form(xi: f64) -> Complex64 {
    let h = xi / 2.0;
    let sinc = if h.abs() < 1e-8 {
        1.0 - h * h / 6.0
    } else {
        h.sin() / h
    };
    Complex64::new((-h).cos(), (-h).sin()) * sinc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::banks;
    use crate::filterbank::NonstationaryBank;
    use crate::filterbank::TailRule;
    use std::f64::consts::PI;

    fn haar_refinable(m: usize) -> Refinable {
        Refinable::stationary(&banks::haar().lowpass, 2.0, m).unwrap()
    }

    #[test]
    fn haar_at_zero_is_one_with_zero_bound() {
        for m in [1, 5, 30] {
            let r = haar_refinable(m);
            let cv = r.eval_certified(0.0).unwrap();
            assert_eq!(cv.value, Complex64::new(1.0, 0.0));
            assert!(cv.tail_bound < 1e-12);
        }
    }

    #[test]
    fn haar_closed_form_oracle_points() {
        let r = haar_refinable(30);
        // phi(2π) = 0
        let cv = r.eval_certified(2.0 * PI).unwrap();
        assert!(cv.value.norm() < 1e-8);
        // phi(π) = -2i/π
        let cv = r.eval_certified(PI).unwrap();
        let expect = Complex64::new(0.0, -2.0 / PI);
        assert!((cv.value - expect).norm() < 1e-8);
        assert!((cv.value.norm() - 2.0 / PI).abs() < 1e-8);
    }

    #[test]
    fn oracle_agreement_within_certificates() {
        for m in [5, 10, 20] {
            let r = haar_refinable(m);
            for i in 0..1024 {
                let xi = -8.0 * PI + 16.0 * PI * i as f64 / 1023.0;
                let cv = r.eval_certified(xi).unwrap();
                let err = (cv.value - haar_closed_form(xi)).norm();
                assert!(
                    err <= cv.tail_bound,
                    "m={m} xi={xi}: err {err:.3e} > bound {:.3e}",
                    cv.tail_bound
                );
            }
        }
    }

    #[test]
    fn certificates_shrink_with_truncation() {
        // monotone up to the documented machine-epsilon inflation: at exact
        // zeros of the product the truncation part vanishes and only the
        // M·4·eps rounding floor remains, which grows by ~4 eps per factor
        let eps_floor = 1e-14;
        let grid: Vec<f64> = (0..64).map(|i| -2.0 * PI + 4.0 * PI * i as f64 / 63.0).collect();
        for m in [5, 10, 20, 29] {
            let a = haar_refinable(m);
            let b = haar_refinable(m + 1);
            for &xi in &grid {
                let ba = a.eval_certified(xi).unwrap().tail_bound;
                let bb = b.eval_certified(xi).unwrap().tail_bound;
                assert!(bb <= ba + eps_floor, "m={m} xi={xi}");
            }
        }
    }

    #[test]
    fn bound_tight_enough_at_m20() {
        let r = haar_refinable(20);
        for i in 0..=256 {
            let xi = -PI + 2.0 * PI * i as f64 / 256.0;
            assert!(r.eval_certified(xi).unwrap().tail_bound < 1e-4);
        }
    }

    #[test]
    fn refinement_residual_within_bounds() {
        let grid: Vec<f64> = (0..256).map(|i| -PI + 2.0 * PI * i as f64 / 255.0).collect();
        let r = haar_refinable(30);
        let chk = verify_refinement(&r, &banks::haar().lowpass, 2.0, &grid).unwrap();
        assert!(chk.within_bound);
        assert!(chk.max_residual < 1e-8);

        // constant mask: phi = 1, residual identically zero
        let one = LaurentPoly::<crate::scalar::ExactScalar>::one();
        let r1 = Refinable::stationary(&one, 2.0, 10).unwrap();
        let chk = verify_refinement(&r1, &one, 2.0, &grid).unwrap();
        assert_eq!(chk.max_residual, 0.0);

        // coarse truncation: residual may be visible but stays certified
        let r_coarse = haar_refinable(1);
        let chk = verify_refinement(&r_coarse, &banks::haar().lowpass, 2.0, &grid).unwrap();
        assert!(chk.within_bound);
    }

    #[test]
    fn normalization_is_required() {
        let bad = LaurentPoly::from_pairs([
            (0, crate::scalar::ExactScalar::one()),
            (1, crate::scalar::ExactScalar::one()),
        ]);
        assert!(matches!(
            Refinable::stationary(&bad, 2.0, 10),
            Err(Error::NormalizationViolated(_))
        ));
        assert!(Refinable::stationary(&banks::haar().lowpass, 1.0, 10).is_err());
        assert!(Refinable::stationary(&banks::haar().lowpass, 2.0, 0).is_err());
    }

    #[test]
    fn out_of_range_evaluation_errors() {
        let r = haar_refinable(30);
        let limit = r.xi_limit();
        assert!(r.eval_certified(limit * 1.01).is_err());
        assert!(r.eval_certified(limit * 0.5).is_ok());
    }

    #[test]
    fn generator_evaluations() {
        let base = Arc::new(haar_refinable(30));
        // unit multiplier: phi itself
        let unit = Generator::unit(base.clone());
        let cv = unit.eval_certified(PI).unwrap();
        assert!((cv.value - haar_closed_form(PI)).norm() < 1e-8);

        // Haar psi at 0: b(0) phi(0) = 0
        let psi = Generator::new(&banks::haar().highpass[0], base.clone(), 2.0).unwrap();
        let cv = psi.eval_certified(0.0).unwrap();
        assert!(cv.value.norm() < 1e-14);

        // Haar psi at 2π: b(π) phi(π) = -2i/π
        let cv = psi.eval_certified(2.0 * PI).unwrap();
        let expect = Complex64::new(0.0, -2.0 / PI);
        assert!((cv.value - expect).norm() < 1e-8, "{}", cv.value);
    }

    #[test]
    fn nonstationary_reduces_to_stationary() {
        let ns = NonstationaryBank::replicate(&banks::haar(), 4, TailRule::RepeatLast).unwrap();
        let r_ns = Refinable::nonstationary(&ns, 0, 30).unwrap();
        let r_st = haar_refinable(30);
        for i in 0..128 {
            let xi = -2.0 * PI + 4.0 * PI * i as f64 / 127.0;
            let a = r_ns.eval_certified(xi).unwrap();
            let b = r_st.eval_certified(xi).unwrap();
            assert!((a.value - b.value).norm() < 1e-12);
        }
        let chk = verify_refinement_nonstationary(&ns, 1, 30, &[0.3, 1.1, -2.2]).unwrap();
        assert!(chk.within_bound);
        assert!(chk.max_residual < 1e-8);
    }

    #[test]
    fn terminate_rule_gives_finite_product() {
        let ns = NonstationaryBank::replicate(&banks::haar(), 2, TailRule::Terminate).unwrap();
        // with only 2 levels the product from level 0 has exactly 2 factors;
        // truncation beyond that changes nothing and the tail bound is zero
        let r = Refinable::nonstationary(&ns, 0, 30).unwrap();
        let cv = r.eval_certified(1.7).unwrap();
        let manual = banks::haar().lowpass.to_float().evaluate(1.7 / 2.0)
            * banks::haar().lowpass.to_float().evaluate(1.7 / 4.0);
        assert!((cv.value - manual).norm() < 1e-15);
        assert!(cv.tail_bound < 1e-12);
    }

    #[test]
    fn sample_grid_shapes() {
        let r = haar_refinable(10);
        let s = sample_grid(&r, -PI, PI, 3).unwrap();
        assert_eq!(s.xi, vec![-PI, 0.0, PI]);
        let s2 = sample_grid(&r, 0.0, 1.0, 2).unwrap();
        assert_eq!(s2.xi.len(), 2);
        assert!(sample_grid(&r, 1.0, -1.0, 4).is_err());
        assert!(sample_grid(&r, -1.0, 1.0, 1).is_err());

        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("xi,re,im,tail_bound\n"));
        assert_eq!(text.lines().count(), 4);
    }
}
