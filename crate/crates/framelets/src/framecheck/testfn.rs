//! Compactly supported smooth test functions.

use crate::{Error, Result};

/// A member of the test-function space used by all pairings: either the
/// standard bump `exp(1 - 1/(1 - ((xi-c)/r)^2))` on `(c-r, c+r)` (value 1 at
/// the center), or a pointwise product of two of them.
#[derive(Clone, Debug)]
pub enum TestFn {
    Bump { center: f64, radius: f64 },
    Product(Box<TestFn>, Box<TestFn>),
}

impl TestFn {
    pub fn bump(center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || !center.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "bump needs a finite center and positive radius, got ({center}, {radius})"
            )));
        }
        Ok(TestFn::Bump { center, radius })
    }

    pub fn product(a: TestFn, b: TestFn) -> Self {
        TestFn::Product(Box::new(a), Box::new(b))
    }

    pub fn eval(&self, xi: f64) -> f64 {
        match self {
            TestFn::Bump { center, radius } => {
                let t = (xi - center) / radius;
                let t2 = t * t;
                if t2 >= 1.0 {
                    0.0
                } else {
                    (1.0 - 1.0 / (1.0 - t2)).exp()
                }
            }
            TestFn::Product(a, b) => a.eval(xi) * b.eval(xi),
        }
    }

    /// Closed support interval; `None` when the support is empty (product of
    /// bumps too far apart).
    pub fn support(&self) -> Option<(f64, f64)> {
        match self {
            TestFn::Bump { center, radius } => Some((center - radius, center + radius)),
            TestFn::Product(a, b) => {
                let (a0, a1) = a.support()?;
                let (b0, b1) = b.support()?;
                let lo = a0.max(b0);
                let hi = a1.min(b1);
                (lo < hi).then_some((lo, hi))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_shape() {
        let f = TestFn::bump(0.0, 1.0).unwrap();
        assert_eq!(f.eval(0.0), 1.0);
        assert_eq!(f.eval(1.0), 0.0);
        assert_eq!(f.eval(-1.5), 0.0);
        assert!(f.eval(0.5) > 0.0 && f.eval(0.5) < 1.0);
        assert_eq!(f.support(), Some((-1.0, 1.0)));
        assert!(TestFn::bump(0.0, 0.0).is_err());
    }

    #[test]
    fn product_support_intersects() {
        let a = TestFn::bump(0.0, 1.0).unwrap();
        let b = TestFn::bump(0.5, 1.0).unwrap();
        let p = TestFn::product(a.clone(), b);
        assert_eq!(p.support(), Some((-0.5, 1.0)));
        assert!(p.eval(0.25) > 0.0);

        let far = TestFn::product(a, TestFn::bump(10.0, 1.0).unwrap());
        assert!(far.support().is_none());
        assert_eq!(far.eval(0.0), 0.0);
    }
}
