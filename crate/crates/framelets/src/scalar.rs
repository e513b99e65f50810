//! Coefficient scalars: exact complex rationals and complex doubles.
//!
//! Every polynomial, signal and filter bank in this crate is generic over a
//! [`Coeff`] implementation, so exact and floating data can never mix inside
//! one computation. The two modes meet only at the configuration boundary
//! (see [`crate::config`]), where mixing is rejected as an error.

use num::complex::Complex64;
use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use std::fmt;

/// Field operations needed by the verification pipeline.
///
/// `EXACT` distinguishes the verdict rule: exact residuals must vanish
/// identically, floating residuals must stay below a tolerance.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    /// Real rational `num/den`. Panics if `den == 0`; validate at the boundary.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Complex conjugate.
    fn conj(&self) -> Self;
    /// Division by a nonzero integer.
    fn div_int(&self, n: i64) -> Self;

    fn is_zero(&self) -> bool;
    fn to_c64(&self) -> Complex64;

    /// Nonnegative real element of the same field bounding the modulus from
    /// above. Exact mode uses `|re| + |im|` so certificates stay rational;
    /// float mode uses the modulus with an ulp-level inflation.
    fn mag_upper(&self) -> Self;

    /// `f64` view of a real (imaginary part zero) element, used when
    /// certificates computed in the field are reported.
    fn real_to_f64(&self) -> f64;
}

/// Complex number with arbitrary-precision rational parts, kept in canonical
/// reduced form by `BigRational` (nonzero denominator, gcd 1, positive
/// denominator).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactScalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ExactScalar { re, im }
    }

    pub fn from_ratios(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        ExactScalar {
            re: big_ratio(re_num, re_den),
            im: big_ratio(im_num, im_den),
        }
    }

    pub fn real(num: i64, den: i64) -> Self {
        ExactScalar {
            re: big_ratio(num, den),
            im: BigRational::zero(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

fn big_ratio(num: i64, den: i64) -> BigRational {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Coeff for ExactScalar {
    const EXACT: bool = true;

    fn zero() -> Self {
        ExactScalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn one() -> Self {
        ExactScalar::real(1, 1)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        ExactScalar::real(num, den)
    }

    fn add(&self, rhs: &Self) -> Self {
        ExactScalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        ExactScalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        ExactScalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn neg(&self) -> Self {
        ExactScalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn conj(&self) -> Self {
        ExactScalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn div_int(&self, n: i64) -> Self {
        assert!(n != 0, "division by zero");
        let d = BigRational::from(BigInt::from(n));
        ExactScalar {
            re: &self.re / &d,
            im: &self.im / &d,
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    fn mag_upper(&self) -> Self {
        ExactScalar {
            re: self.re.abs() + self.im.abs(),
            im: BigRational::zero(),
        }
    }

    fn real_to_f64(&self) -> f64 {
        rat_to_f64(&self.re)
    }
}

impl Coeff for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn div_int(&self, n: i64) -> Self {
        assert!(n != 0, "division by zero");
        self / n as f64
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn mag_upper(&self) -> Self {
        // Inflate past the norm's rounding so the bound stays an upper bound.
        Complex64::new(self.norm() * (1.0 + 4.0 * f64::EPSILON), 0.0)
    }

    fn real_to_f64(&self) -> f64 {
        self.re
    }
}
