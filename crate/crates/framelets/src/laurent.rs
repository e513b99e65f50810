//! Sparse Laurent polynomials `p(xi) = sum_k c(k) e^{-i k xi}`.
//!
//! A `LaurentPoly` is a finitely supported coefficient sequence representing a
//! 2π-periodic trigonometric polynomial. The representation is canonical:
//! zero coefficients are never stored, so exact-mode equality is coefficient
//! equality.
//!
//! Besides ring arithmetic, the module provides the three transforms the
//! filter-bank identities are built from:
//!
//! * [`LaurentPoly::conj_reflect`] — realizes `xi -> conj(p(xi))` on the real
//!   line (coefficient at `k` becomes the conjugate of the one at `-k`);
//! * [`LaurentPoly::upsample`] — realizes the argument dilation `xi -> p(d xi)`;
//! * [`LaurentPoly::coset_extract`] — keeps the coefficients with `k ≡ γ (mod |d|)`.
//!
//! The coset split is the workhorse: `(1/|d|) sum_ω e^{i 2π ω γ / d} p(xi + 2π ω/d)`
//! equals the γ-coset of `p`, so the ω-shifted identities of a filter bank can
//! be checked entirely inside rational arithmetic, without d-th roots of unity.

use crate::scalar::Coeff;
use crate::{Error, Result};
use num::complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// Integer dilation factor with `|d| >= 2`. Negative dilations are allowed
/// throughout; cosets are taken mod `|d|`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Dilation(i64);

impl Dilation {
    pub fn new(d: i64) -> Result<Self> {
        if d.abs() < 2 {
            return Err(Error::InvalidDilation(format!(
                "|d| >= 2 required, got {d}"
            )));
        }
        Ok(Dilation(d))
    }

    pub fn get(self) -> i64 {
        self.0
    }

    pub fn abs(self) -> i64 {
        self.0.abs()
    }
}

impl fmt::Display for Dilation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Finitely supported coefficient sequence `k -> c(k)` in canonical sparse form.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentPoly<C: Coeff> {
    coeffs: BTreeMap<i64, C>,
}

impl<C: Coeff> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, c)
    }

    /// Single term `c e^{-i k xi}`.
    pub fn monomial(k: i64, c: C) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        LaurentPoly { coeffs }
    }

    /// Builds from `(index, coefficient)` pairs; repeated indices accumulate.
    pub fn from_pairs<I: IntoIterator<Item = (i64, C)>>(pairs: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in pairs {
            p.accumulate(k, c);
        }
        p
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

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: i64) -> C {
        self.coeffs.get(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    /// `(kmin, kmax)` of the support, `None` for the zero polynomial.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self.coeffs.keys().next()?;
        let hi = self.coeffs.keys().next_back()?;
        Some((*lo, *hi))
    }

    /// `max(|kmin|, |kmax|)`. The zero polynomial has no degree.
    pub fn degree(&self) -> Result<u64> {
        let (lo, hi) = self.support().ok_or(Error::ZeroPolynomialDegree)?;
        Ok(lo.unsigned_abs().max(hi.unsigned_abs()))
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

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    /// Coefficient convolution; support bounds add.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in self.iter() {
            for (j, b) in rhs.iter() {
                out.accumulate(i + j, a.mul(b));
            }
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

    pub fn div_int(&self, n: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.div_int(n))).collect(),
        }
    }

    /// Coefficientwise complex conjugation (no index reflection).
    pub fn conj_coeffs(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.conj())).collect(),
        }
    }

    /// The polynomial whose value at real `xi` is `conj(p(xi))`: the output
    /// coefficient at `k` is the conjugate of the input coefficient at `-k`.
    pub fn conj_reflect(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (-*k, c.conj())).collect(),
        }
    }

    /// Realizes `xi -> p(d xi)`: the coefficient at `k` moves to `d k`.
    pub fn upsample(&self, d: Dilation) -> Self {
        let d = d.get();
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (d * *k, c.clone())).collect(),
        }
    }

    /// Keeps exactly the coefficients with `k ≡ γ (mod |d|)`.
    pub fn coset_extract(&self, gamma: i64, d: Dilation) -> Result<Self> {
        let m = d.abs();
        if gamma < 0 || gamma >= m {
            return Err(Error::CosetIndexOutOfRange { gamma, modulus: m });
        }
        Ok(LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| (*k).rem_euclid(m) == gamma)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        })
    }

    /// `sum_k c(k) e^{-i k xi}` in double precision.
    pub fn evaluate(&self, xi: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.iter() {
            let phase = -(k as f64) * xi;
            acc += c.to_c64() * Complex64::new(phase.cos(), phase.sin());
        }
        acc
    }

    /// Sum of the coefficients, i.e. the value at `xi = 0`, computed in the
    /// coefficient field.
    pub fn value_at_zero(&self) -> C {
        let mut acc = C::zero();
        for (_, c) in self.iter() {
            acc = acc.add(c);
        }
        acc
    }

    /// `sum_k |c(k)|` as a field element: a certified upper bound for the sup
    /// norm on the torus.
    pub fn l1_upper(&self) -> C {
        let mut acc = C::zero();
        for (_, c) in self.iter() {
            acc = acc.add(&c.mag_upper());
        }
        acc
    }

    pub fn l1_upper_f64(&self) -> f64 {
        self.l1_upper().real_to_f64()
    }

    /// Certified sup-norm upper bound (the coefficient l1 sum) together with a
    /// grid-sampled lower estimate for reporting.
    pub fn sup_norm_upper(&self) -> SupNormBound {
        let upper = self.l1_upper_f64();
        let mut est: f64 = 0.0;
        let n = 256;
        for i in 0..=n {
            let xi = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            est = est.max(self.evaluate(xi).norm());
        }
        SupNormBound {
            upper,
            grid_estimate: est,
        }
    }

    /// Largest coefficient modulus, in double precision. Zero for the zero
    /// polynomial.
    pub fn max_coeff_modulus(&self) -> f64 {
        self.coeffs
            .values()
            .map(|c| c.to_c64().norm())
            .fold(0.0, f64::max)
    }

    /// Converts the coefficients to complex doubles.
    pub fn to_float(&self) -> LaurentPoly<Complex64> {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(_, c)| !c.to_c64().is_zero())
                .map(|(k, c)| (*k, c.to_c64()))
                .collect(),
        }
    }
}

/// Certified sup-norm upper bound plus a sampled lower estimate.
#[derive(Clone, Copy, Debug)]
pub struct SupNormBound {
    pub upper: f64,
    pub grid_estimate: f64,
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})z^{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactScalar;

    type P = LaurentPoly<ExactScalar>;

    fn haar_mask() -> P {
        P::from_pairs([
            (0, ExactScalar::real(1, 2)),
            (1, ExactScalar::real(1, 2)),
        ])
    }

    #[test]
    fn add_identity_and_cancellation() {
        let half = P::monomial(0, ExactScalar::real(1, 2));
        assert_eq!(half.add(&half), P::one());
        let p = haar_mask();
        assert_eq!(p.add(&P::zero()), p);
        assert!(P::one().add(&P::one().neg()).is_zero());
    }

    #[test]
    fn mul_hand_expansion() {
        // (1/2 + 1/2 z)(1/2 - 1/2 z) = 1/4 - 1/4 z^2, z = e^{-i xi}
        let p = haar_mask();
        let q = P::from_pairs([
            (0, ExactScalar::real(1, 2)),
            (1, ExactScalar::real(-1, 2)),
        ]);
        let expected = P::from_pairs([
            (0, ExactScalar::real(1, 4)),
            (2, ExactScalar::real(-1, 4)),
        ]);
        assert_eq!(p.mul(&q), expected);
        assert_eq!(p.mul(&P::one()), p);
        assert!(p.mul(&P::zero()).is_zero());
    }

    #[test]
    fn conj_reflect_cases() {
        let i_term = P::monomial(1, ExactScalar::from_ratios(0, 1, 1, 1));
        assert_eq!(
            i_term.conj_reflect(),
            P::monomial(-1, ExactScalar::from_ratios(0, 1, -1, 1))
        );
        // real symmetric polynomial is a fixed point
        let sym = P::from_pairs([
            (-1, ExactScalar::real(1, 3)),
            (0, ExactScalar::real(1, 1)),
            (1, ExactScalar::real(1, 3)),
        ]);
        assert_eq!(sym.conj_reflect(), sym);
        let haar = haar_mask();
        let expected = P::from_pairs([
            (0, ExactScalar::real(1, 2)),
            (-1, ExactScalar::real(1, 2)),
        ]);
        assert_eq!(haar.conj_reflect(), expected);
    }

    #[test]
    fn upsample_moves_indices() {
        let d2 = Dilation::new(2).unwrap();
        assert_eq!(
            P::monomial(1, ExactScalar::one()).upsample(d2),
            P::monomial(2, ExactScalar::one())
        );
        assert_eq!(P::one().upsample(d2), P::one());
        let p = P::from_pairs([
            (-1, ExactScalar::real(1, 2)),
            (1, ExactScalar::real(1, 2)),
        ]);
        let dm2 = Dilation::new(-2).unwrap();
        let expected = P::from_pairs([
            (2, ExactScalar::real(1, 2)),
            (-2, ExactScalar::real(1, 2)),
        ]);
        assert_eq!(p.upsample(dm2), expected);
    }

    #[test]
    fn coset_extract_partitions() {
        let d = Dilation::new(2).unwrap();
        let a = haar_mask();
        assert_eq!(
            a.coset_extract(0, d).unwrap(),
            P::monomial(0, ExactScalar::real(1, 2))
        );
        assert_eq!(
            a.coset_extract(1, d).unwrap(),
            P::monomial(1, ExactScalar::real(1, 2))
        );
        assert!(a.coset_extract(2, d).is_err());

        let p = P::from_pairs((-5..=5).map(|k| (k, ExactScalar::real(k + 7, 3))));
        let d3 = Dilation::new(3).unwrap();
        let mut sum = P::zero();
        for gamma in 0..3 {
            sum = sum.add(&p.coset_extract(gamma, d3).unwrap());
        }
        assert_eq!(sum, p);
    }

    #[test]
    fn evaluate_haar() {
        let a = haar_mask();
        let at0 = a.evaluate(0.0);
        assert!((at0 - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let atpi = a.evaluate(std::f64::consts::PI);
        assert!(atpi.norm() < 1e-15);
        assert_eq!(P::zero().evaluate(1.234), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn degree_rules() {
        assert_eq!(haar_mask().degree().unwrap(), 1);
        let p = P::from_pairs([(-3, ExactScalar::one()), (2, ExactScalar::one())]);
        assert_eq!(p.degree().unwrap(), 3);
        assert_eq!(P::monomial(0, ExactScalar::real(5, 1)).degree().unwrap(), 0);
        assert!(matches!(
            P::zero().degree(),
            Err(Error::ZeroPolynomialDegree)
        ));
    }

    #[test]
    fn sup_norm_bounds() {
        let haar = haar_mask();
        let b = haar.sup_norm_upper();
        assert_eq!(b.upper, 1.0);
        assert!((b.grid_estimate - 1.0).abs() < 1e-12);

        // |p(xi)| = |sin xi|: upper bound 1, attained near pi/2
        let p = P::from_pairs([
            (-1, ExactScalar::real(1, 2)),
            (1, ExactScalar::real(-1, 2)),
        ]);
        let b = p.sup_norm_upper();
        assert_eq!(b.upper, 1.0);
        assert!(b.grid_estimate > 0.9999);
        assert!(b.grid_estimate <= b.upper + 1e-12);

        assert_eq!(P::one().sup_norm_upper().upper, 1.0);
    }
}
