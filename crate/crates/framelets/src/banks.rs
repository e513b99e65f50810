//! Reference filter banks used by the examples, tests and shipped configs.

use crate::filterbank::{BankLevel, FilterBank, NonstationaryBank, TailRule, ThetaSpec};
use crate::laurent::{Dilation, LaurentPoly};
use crate::scalar::ExactScalar;
use num::complex::Complex64;

type EPoly = LaurentPoly<ExactScalar>;

fn epoly(pairs: &[(i64, (i64, i64))]) -> EPoly {
    LaurentPoly::from_pairs(
        pairs
            .iter()
            .map(|(k, (num, den))| (*k, ExactScalar::real(*num, *den))),
    )
}

/// Haar orthonormal bank: `d = 2`, `a = ã = (1/2, 1/2)`,
/// `b = b̃ = (1/2, -1/2)`, `Θ = 1`.
pub fn haar() -> FilterBank<ExactScalar> {
    FilterBank::new(
        Dilation::new(2).unwrap(),
        epoly(&[(0, (1, 2)), (1, (1, 2))]),
        epoly(&[(0, (1, 2)), (1, (1, 2))]),
        vec![epoly(&[(0, (1, 2)), (1, (-1, 2))])],
        vec![epoly(&[(0, (1, 2)), (1, (-1, 2))])],
        ThetaSpec::Direct(LaurentPoly::one()),
    )
    .expect("valid bank")
}

/// Haar with its support shifted to `{2, 3}`; still perfect-reconstruction
/// with `Θ = 1`.
pub fn haar_shifted() -> FilterBank<ExactScalar> {
    FilterBank::new(
        Dilation::new(2).unwrap(),
        epoly(&[(2, (1, 2)), (3, (1, 2))]),
        epoly(&[(2, (1, 2)), (3, (1, 2))]),
        vec![epoly(&[(2, (1, 2)), (3, (-1, 2))])],
        vec![epoly(&[(2, (1, 2)), (3, (-1, 2))])],
        ThetaSpec::Direct(LaurentPoly::one()),
    )
    .expect("valid bank")
}

/// Haar with the low-pass coefficient at 1 perturbed to `499/1000`; the
/// identities fail by an exactly representable margin.
pub fn haar_perturbed() -> FilterBank<ExactScalar> {
    FilterBank::new(
        Dilation::new(2).unwrap(),
        epoly(&[(0, (1, 2)), (1, (499, 1000))]),
        epoly(&[(0, (1, 2)), (1, (499, 1000))]),
        vec![epoly(&[(0, (1, 2)), (1, (-1, 2))])],
        vec![epoly(&[(0, (1, 2)), (1, (-1, 2))])],
        ThetaSpec::Direct(LaurentPoly::one()),
    )
    .expect("valid bank")
}

/// Haar low-pass pair with `Θ = e^{-i xi}` and two high-pass channels solved
/// so that every coset residual vanishes exactly. Since `Θ * v` is `v`
/// shifted by one, this bank pins down that reconstruction applies Θ exactly
/// once.
pub fn haar_oblique() -> FilterBank<ExactScalar> {
    FilterBank::new(
        Dilation::new(2).unwrap(),
        epoly(&[(0, (1, 2)), (1, (1, 2))]),
        epoly(&[(0, (1, 2)), (1, (1, 2))]),
        vec![epoly(&[(0, (1, 1))]), epoly(&[(1, (1, 1))])],
        vec![
            epoly(&[(1, (1, 2)), (2, (-1, 4)), (3, (-1, 4))]),
            epoly(&[(2, (1, 4)), (3, (-1, 4))]),
        ],
        ThetaSpec::Direct(LaurentPoly::monomial(1, ExactScalar::real(1, 1))),
    )
    .expect("valid bank")
}

fn fpoly(pairs: &[(i64, f64)]) -> LaurentPoly<Complex64> {
    LaurentPoly::from_pairs(pairs.iter().map(|(k, re)| (*k, Complex64::new(*re, 0.0))))
}

/// Piecewise-linear B-spline tight framelet (float mode): `d = 2`,
/// `a = (1/4, 1/2, 1/4)`, `b¹ = (-1/4, 1/2, -1/4)`, `b² = (√2/4, 0, -√2/4)`,
/// self-dual with `Θ = 1`.
pub fn bspline_framelet() -> FilterBank<Complex64> {
    let s = 2.0f64.sqrt() / 4.0;
    let a = fpoly(&[(0, 0.25), (1, 0.5), (2, 0.25)]);
    let b1 = fpoly(&[(0, -0.25), (1, 0.5), (2, -0.25)]);
    let b2 = fpoly(&[(0, s), (2, -s)]);
    FilterBank::new(
        Dilation::new(2).unwrap(),
        a.clone(),
        a,
        vec![b1.clone(), b2.clone()],
        vec![b1, b2],
        ThetaSpec::Direct(LaurentPoly::one()),
    )
    .expect("valid bank")
}

/// The B-spline framelet with its second high-pass dropped; the unshifted
/// identity loses the `sin²` mass and fails.
pub fn bspline_broken() -> FilterBank<Complex64> {
    let a = fpoly(&[(0, 0.25), (1, 0.5), (2, 0.25)]);
    let b1 = fpoly(&[(0, -0.25), (1, 0.5), (2, -0.25)]);
    FilterBank::new(
        Dilation::new(2).unwrap(),
        a.clone(),
        a,
        vec![b1.clone()],
        vec![b1],
        ThetaSpec::Direct(LaurentPoly::one()),
    )
    .expect("valid bank")
}

/// Haar replicated across `n` levels with the repeat-last tail rule.
pub fn nonstationary_haar(n: usize) -> NonstationaryBank<ExactScalar> {
    NonstationaryBank::replicate(&haar(), n, TailRule::RepeatLast).expect("valid bank")
}

/// Two-level bank whose Θ's change along the chain: level 1 maps `Θ^1 = 1`
/// to `Θ^2 = e^{-i xi}` and level 2 maps `Θ^2` to `Θ^3 = e^{-i xi}` (the
/// oblique Haar level). Because the Θ-chain is asymmetric, reconstruction
/// works only when the levels are applied in the right order — unlike a
/// stack of individually perfect-reconstruction levels with `Θ = 1`.
pub fn nonstationary_chained() -> NonstationaryBank<ExactScalar> {
    let z = LaurentPoly::monomial(1, ExactScalar::real(1, 1));
    let haar_mask = epoly(&[(0, (1, 2)), (1, (1, 2))]);
    let level1 = BankLevel {
        dilation: Dilation::new(2).unwrap(),
        lowpass: haar_mask.clone(),
        lowpass_dual: haar_mask.clone(),
        highpass: vec![epoly(&[(0, (1, 1))]), epoly(&[(1, (1, 1))])],
        highpass_dual: vec![
            epoly(&[(0, (-1, 4)), (1, (1, 4))]),
            epoly(&[(0, (-1, 4)), (1, (-1, 4)), (2, (1, 2))]),
        ],
        theta: ThetaSpec::Direct(LaurentPoly::one()),
    };
    let ob = haar_oblique();
    let level2 = BankLevel {
        dilation: ob.dilation,
        lowpass: ob.lowpass.clone(),
        lowpass_dual: ob.lowpass_dual.clone(),
        highpass: ob.highpass.clone(),
        highpass_dual: ob.highpass_dual.clone(),
        theta: ThetaSpec::Direct(z.clone()),
    };
    NonstationaryBank::new(vec![level1, level2], TailRule::Terminate, Some(z))
        .expect("valid bank")
}

/// Four Haar levels with the level-2 mask replaced by the identity mask
/// `{1@0}` and no compensating high-pass change; fails at level 2.
pub fn nonstationary_broken_level2() -> NonstationaryBank<ExactScalar> {
    let haar = haar();
    let good = BankLevel {
        dilation: haar.dilation,
        lowpass: haar.lowpass.clone(),
        lowpass_dual: haar.lowpass_dual.clone(),
        highpass: haar.highpass.clone(),
        highpass_dual: haar.highpass_dual.clone(),
        theta: haar.theta.clone(),
    };
    let mut broken = good.clone();
    broken.lowpass = LaurentPoly::one();
    broken.lowpass_dual = LaurentPoly::one();
    NonstationaryBank::new(
        vec![good.clone(), broken, good.clone(), good],
        TailRule::RepeatLast,
        None,
    )
    .expect("valid bank")
}

impl FilterBank<ExactScalar> {
    /// Converts every coefficient to a complex double.
    pub fn to_float(&self) -> FilterBank<Complex64> {
        FilterBank::new(
            self.dilation,
            self.lowpass.to_float(),
            self.lowpass_dual.to_float(),
            self.highpass.iter().map(|p| p.to_float()).collect(),
            self.highpass_dual.iter().map(|p| p.to_float()).collect(),
            match &self.theta {
                ThetaSpec::Direct(t) => ThetaSpec::Direct(t.to_float()),
                ThetaSpec::Pairs(ps) => ThetaSpec::Pairs(
                    ps.iter()
                        .map(|(a, b)| (a.to_float(), b.to_float()))
                        .collect(),
                ),
            },
        )
        .expect("already validated")
    }
}

impl NonstationaryBank<ExactScalar> {
    pub fn to_float(&self) -> NonstationaryBank<Complex64> {
        let levels = self
            .provided_levels()
            .iter()
            .map(|lvl| BankLevel {
                dilation: lvl.dilation,
                lowpass: lvl.lowpass.to_float(),
                lowpass_dual: lvl.lowpass_dual.to_float(),
                highpass: lvl.highpass.iter().map(|p| p.to_float()).collect(),
                highpass_dual: lvl.highpass_dual.iter().map(|p| p.to_float()).collect(),
                theta: match &lvl.theta {
                    ThetaSpec::Direct(t) => ThetaSpec::Direct(t.to_float()),
                    ThetaSpec::Pairs(ps) => ThetaSpec::Pairs(
                        ps.iter()
                            .map(|(a, b)| (a.to_float(), b.to_float()))
                            .collect(),
                    ),
                },
            })
            .collect();
        NonstationaryBank::new(levels, self.tail_rule(), None).expect("already validated")
    }
}
