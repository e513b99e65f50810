//! Cross-checks between the coset route and the direct ω-form of the
//! filter-bank identities, and the OEP ⇔ perfect-reconstruction equivalence.

use framelets::banks;
use framelets::filterbank::FilterBank;
use framelets::fwt;
use framelets::scalar::Coeff;
use num::complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;

/// The DFT over ω maps the coset residual family onto the ω-form residuals:
/// `F_ω(xi) - δ(ω)Θ(xi) = Σ_γ e^{-i 2π ω γ / d} R_γ(xi)`. Checks both that
/// relation and the verdict equivalence at random points.
fn omega_form_agrees<C: Coeff>(bank: &FilterBank<C>, seed: u64) {
    let report = bank.verify_oep(1e-12);
    let d = bank.dilation.get();
    let dd = bank.dilation.abs();
    let theta = bank.theta_of();

    // rebuild the residual polynomials the way the verifier does
    let residuals: Vec<_> = (0..dd)
        .map(|gamma| {
            let mut r = theta
                .upsample(bank.dilation)
                .mul(&bank.lowpass.conj_reflect())
                .mul(&bank.lowpass_dual.coset_extract(gamma, bank.dilation).unwrap());
            for (b, bd) in bank.highpass.iter().zip(&bank.highpass_dual) {
                r = r.add(
                    &b.conj_reflect()
                        .mul(&bd.coset_extract(gamma, bank.dilation).unwrap()),
                );
            }
            r.sub(&theta.div_int(dd))
        })
        .collect();

    let mut rng = StdRng::seed_from_u64(seed);
    let mut max_direct = 0.0f64;
    for _ in 0..128 {
        let xi = rng.gen_range(-4.0 * PI..4.0 * PI);
        for omega in 0..dd {
            let direct = bank.oep_residual_numeric(xi, omega);
            max_direct = max_direct.max(direct.norm());
            let mut reconstructed = Complex64::new(0.0, 0.0);
            for (gamma, r) in residuals.iter().enumerate() {
                let phase = -2.0 * PI * omega as f64 * gamma as f64 / d as f64;
                reconstructed += Complex64::new(phase.cos(), phase.sin()) * r.evaluate(xi);
            }
            assert!(
                (direct - reconstructed).norm() < 1e-10,
                "omega-form and coset route disagree at xi={xi}, omega={omega}"
            );
        }
    }
    // verdict equivalence: the numeric residual is below 1e-10 everywhere
    // sampled iff the coset check passed
    assert_eq!(report.passed(), max_direct < 1e-10);
}

#[test]
fn omega_form_cross_checks_all_shipped_banks() {
    omega_form_agrees(&banks::haar(), 1);
    omega_form_agrees(&banks::haar_shifted(), 2);
    omega_form_agrees(&banks::haar_oblique(), 3);
    omega_form_agrees(&banks::haar_perturbed(), 4);
    omega_form_agrees(&banks::bspline_framelet(), 5);
    omega_form_agrees(&banks::bspline_broken(), 6);
}

#[test]
fn oep_verdict_equals_pr_verdict_for_every_shipped_bank() {
    // exact banks
    for (bank, name) in [
        (banks::haar(), "haar"),
        (banks::haar_shifted(), "haar_shifted"),
        (banks::haar_oblique(), "haar_oblique"),
        (banks::haar_perturbed(), "haar_perturbed"),
    ] {
        let oep = bank.verify_oep(1e-12).passed();
        let pr = fwt::pr_test(&bank, 40, 32, 3, 17).unwrap().pass;
        assert_eq!(oep, pr, "{name}");
    }
    // float banks
    for (bank, name) in [
        (banks::bspline_framelet(), "bspline"),
        (banks::bspline_broken(), "bspline_broken"),
    ] {
        let oep = bank.verify_oep(1e-12).passed();
        let pr = fwt::pr_test(&bank, 40, 32, 3, 17).unwrap().pass;
        assert_eq!(oep, pr, "{name}");
    }
}

#[test]
fn negative_dilation_bank_round_trips() {
    // Haar filters with d = -2 still satisfy the coset identities (cosets
    // are taken mod |d|) and the transform reconstructs exactly
    let haar = banks::haar();
    let bank = FilterBank::new(
        framelets::laurent::Dilation::new(-2).unwrap(),
        haar.lowpass.clone(),
        haar.lowpass_dual.clone(),
        haar.highpass.clone(),
        haar.highpass_dual.clone(),
        haar.theta.clone(),
    )
    .unwrap();
    assert!(bank.verify_oep(1e-12).passed());
    omega_form_agrees(&bank, 8);
    let pr = fwt::pr_test(&bank, 30, 24, 3, 23).unwrap();
    assert!(pr.pass, "max defect {}", pr.max_defect);
}
