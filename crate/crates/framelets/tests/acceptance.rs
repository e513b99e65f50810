//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test -p framelets --test acceptance -- --nocapture`.

use framelets::banks;
use framelets::filterbank::TailRule;
use framelets::framecheck::{
    check_bracket_identity, check_characterization, check_duality, check_nonstationary,
    CheckOpts, FreqFn, GridSpec, ProbeVerdict, System, TestFn,
};
use framelets::fwt;
use framelets::refinable::{haar_closed_form, CertEval, Generator, Refinable};
use num::complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;
use std::sync::Arc;
use std::time::Instant;

struct Criterion {
    id: u32,
    label: &'static str,
    ok: bool,
}

impl Criterion {
    fn new(id: u32, label: &'static str) -> Self {
        Criterion { id, label, ok: true }
    }

    fn check(&mut self, cond: bool, what: &str) {
        if !cond {
            self.ok = false;
            eprintln!("[criterion {:2}] check failed: {what}", self.id);
        }
    }

    fn finish(self) {
        println!(
            "[criterion {:2}] {} — {}",
            self.id,
            if self.ok { "PASS" } else { "FAIL" },
            self.label
        );
        assert!(self.ok, "criterion {} failed: {}", self.id, self.label);
    }
}

#[test]
fn criterion_01_haar_oep_exact_pass() {
    let mut c = Criterion::new(1, "Haar identities vanish identically in exact mode");
    let started = Instant::now();
    let report = banks::haar().verify_oep(1e-12);
    c.check(report.passed(), "verdict");
    c.check(
        report.residuals.iter().all(|r| r.exactly_zero),
        "residual polynomials identically zero",
    );
    c.check(started.elapsed().as_secs_f64() < 1.0, "runtime under 1 s");
    c.finish();
}

#[test]
fn criterion_02_perturbation_detection() {
    let mut c = Criterion::new(2, "perturbed Haar fails exactly, ω-form cross-check agrees");
    let bank = banks::haar_perturbed();
    let report = bank.verify_oep(1e-12);
    c.check(!report.passed(), "verdict is fail");
    let r0 = report.residuals.iter().find(|r| r.coset == 0);
    c.check(
        r0.map(|r| !r.exactly_zero && r.max_modulus > 0.0) == Some(true),
        "nonzero exact residual in the coset-0 polynomial",
    );

    // numeric ω-form cross-check at 128 random points: the DFT over the
    // coset residuals must reproduce the direct identity residual
    let theta = bank.theta_of();
    let d = bank.dilation.get();
    let residuals: Vec<_> = (0..d.abs())
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
            r.sub(&theta.div_int(d.abs()))
        })
        .collect();
    let mut rng = StdRng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    let mut saw_violation = false;
    for _ in 0..128 {
        let xi = rng.gen_range(-4.0 * PI..4.0 * PI);
        for omega in 0..d.abs() {
            let direct = bank.oep_residual_numeric(xi, omega);
            if direct.norm() > 1e-10 {
                saw_violation = true;
            }
            let mut reconstructed = Complex64::new(0.0, 0.0);
            for (gamma, r) in residuals.iter().enumerate() {
                let phase = -2.0 * PI * omega as f64 * gamma as f64 / d as f64;
                reconstructed += Complex64::new(phase.cos(), phase.sin()) * r.evaluate(xi);
            }
            worst = worst.max((direct - reconstructed).norm());
        }
    }
    c.check(worst < 1e-10, "coset and ω-form routes agree within 1e-10");
    c.check(saw_violation, "the numeric route also sees the violation");
    c.finish();
}

#[test]
fn criterion_03_bspline_tight_framelet_float() {
    let mut c = Criterion::new(3, "B-spline tight framelet passes in float mode");
    let report = banks::bspline_framelet().verify_oep(1e-12);
    c.check(report.passed(), "verdict");
    c.check(
        report.max_residual < 1e-12,
        "max residual coefficient below 1e-12",
    );
    c.finish();
}

#[test]
fn criterion_04_perfect_reconstruction_haar() {
    let mut c = Criterion::new(4, "100 random signals reconstruct exactly through Haar");
    let started = Instant::now();
    let pr = fwt::pr_test(&banks::haar(), 100, 64, 4, 424242).unwrap();
    c.check(pr.pass && pr.failures == 0, "all trials reconstruct");
    c.check(pr.max_defect == 0.0, "coefficientwise equality");
    c.check(started.elapsed().as_secs_f64() < 5.0, "runtime under 5 s");
    c.finish();
}

#[test]
fn criterion_05_oep_iff_pr_for_shipped_banks() {
    let mut c = Criterion::new(5, "verify_oep verdict equals pr_test verdict on shipped banks");
    // three passing, two failing
    let exact = [
        ("haar", banks::haar(), true),
        ("haar_oblique", banks::haar_oblique(), true),
        ("haar_perturbed", banks::haar_perturbed(), false),
    ];
    for (name, bank, expected) in exact {
        let oep = bank.verify_oep(1e-12).passed();
        let pr = fwt::pr_test(&bank, 60, 48, 4, 5).unwrap().pass;
        c.check(oep == expected, name);
        c.check(oep == pr, name);
    }
    let float = [
        ("bspline", banks::bspline_framelet(), true),
        ("bspline_broken", banks::bspline_broken(), false),
    ];
    for (name, bank, expected) in float {
        let oep = bank.verify_oep(1e-12).passed();
        let pr = fwt::pr_test(&bank, 60, 48, 4, 5).unwrap().pass;
        c.check(oep == expected, name);
        c.check(oep == pr, name);
    }
    c.finish();
}

#[test]
fn criterion_06_refinable_oracle() {
    let mut c = Criterion::new(6, "truncated Haar product matches the closed form within certificates");
    let grid: Vec<f64> = (0..1024)
        .map(|i| -8.0 * PI + 16.0 * PI * i as f64 / 1023.0)
        .collect();
    let mask = banks::haar().lowpass.clone();
    let mut max_err = Vec::new();
    for m in [5usize, 10, 20] {
        let r = Refinable::stationary(&mask, 2.0, m).unwrap();
        let mut worst = 0.0f64;
        let mut certified = true;
        for &xi in &grid {
            let cv = r.eval_certified(xi).unwrap();
            let err = (cv.value - haar_closed_form(xi)).norm();
            worst = worst.max(err);
            certified &= err <= cv.tail_bound;
        }
        c.check(certified, "error within the certified tail bound");
        max_err.push(worst);
    }
    // decay proportional to 2^{-M}: five extra factors shrink the error ~32x
    let r5_10 = max_err[0] / max_err[1];
    let r10_20 = max_err[1] / max_err[2];
    c.check(
        (16.0..64.0).contains(&r5_10),
        &format!("error ratio M=5/M=10 near 32, got {r5_10:.1}"),
    );
    c.check(
        (256.0..4096.0).contains(&r10_20),
        &format!("error ratio M=10/M=20 near 1024, got {r10_20:.1}"),
    );
    // the certificate itself is small at M=20 on [-π, π]
    let r20 = Refinable::stationary(&mask, 2.0, 20).unwrap();
    let mut worst_bound = 0.0f64;
    for i in 0..=256 {
        let xi = -PI + 2.0 * PI * i as f64 / 256.0;
        worst_bound = worst_bound.max(r20.eval_certified(xi).unwrap().tail_bound);
    }
    c.check(
        worst_bound < 1e-4,
        &format!("M=20 bound below 1e-4 on [-π, π], got {worst_bound:.3e}"),
    );
    c.finish();
}

#[test]
fn criterion_07_bracket_identity_oracle() {
    let mut c = Criterion::new(7, "bracket series equals bracket integral for Haar generators");
    let started = Instant::now();
    let f = TestFn::bump(0.0, 1.0).unwrap();
    let base = Arc::new(Refinable::stationary(&banks::haar().lowpass, 2.0, 30).unwrap());
    let phi = FreqFn::Generator(Generator::unit(base.clone()));
    let psi = FreqFn::Generator(Generator::new(&banks::haar().highpass[0], base, 2.0).unwrap());
    let opts = CheckOpts::default();
    for lambda in [1.0, 0.5, 0.25] {
        // the series needs k up to ~160/λ before its own tail is negligible
        let kmax = (160.0 / lambda) as i64;
        for (name, gen) in [("phi", &phi), ("psi", &psi)] {
            let rep =
                check_bracket_identity(&f, &f, gen, gen, lambda, kmax, 1e-7, &opts).unwrap();
            c.check(
                rep.difference < 1e-7,
                &format!("{name}, λ={lambda}: |series-integral| = {:.3e}", rep.difference),
            );
        }
    }
    c.check(
        started.elapsed().as_secs_f64() < 120.0,
        "runtime under 2 min",
    );
    c.finish();
}

#[test]
fn criterion_08_duality_convergence() {
    let mut c = Criterion::new(8, "Haar partial sums converge to 2π<f,f>");
    let started = Instant::now();
    let sys = System::from_bank(&banks::haar(), 30, false).unwrap();
    let f = TestFn::bump(0.0, 1.0).unwrap();
    let mut opts = CheckOpts::default();
    opts.quad_tol = 1e-9;
    opts.shell_tol = 1e-13;
    let report = check_duality(&sys, &f, &f, 0, 12, 1e-6, &opts).unwrap();
    c.check(report.pass, "duality verdict");
    c.check(
        report.final_error < 1e-6,
        &format!("error at J'=12 below 1e-6, got {:.3e}", report.final_error),
    );
    let errs: Vec<f64> = report
        .rows
        .iter()
        .filter(|r| r.j_prime >= 9)
        .map(|r| r.abs_err)
        .collect();
    c.check(errs.len() == 4, "rows J'=9..12 present");
    c.check(
        errs.windows(2).all(|w| w[1] <= w[0] + 1e-15),
        &format!("errors non-increasing over J'=9..12: {errs:?}"),
    );
    c.check(
        started.elapsed().as_secs_f64() < 600.0,
        "runtime under 10 min",
    );
    c.finish();
}

#[test]
fn criterion_09_characterization_residuals() {
    let mut c = Criterion::new(9, "Haar characterization residuals and limit probe");
    let sys = System::from_bank(&banks::haar(), 30, false).unwrap();
    let grid = GridSpec::new(-PI, PI, 512).unwrap();
    let report =
        check_characterization(&sys, &grid, 8, 8, 1e-8, &CheckOpts::default()).unwrap();
    c.check(
        report.max_residual < 1e-8,
        &format!("max residual {:.3e} below 1e-8", report.max_residual),
    );
    c.check(report.probe.len() == 8, "probe steps j = 1..8");
    c.check(
        report
            .probe
            .windows(2)
            .all(|w| w[1].max_deviation < w[0].max_deviation),
        "limit probe decreases monotonically",
    );
    c.check(report.probe_verdict == ProbeVerdict::Decreasing, "probe verdict");
    c.finish();
}

#[test]
fn criterion_10_nonstationary_reduction() {
    let mut c = Criterion::new(10, "4-level Haar bank reduces to the stationary checks");
    let bank = banks::nonstationary_haar(4);
    assert_eq!(bank.tail_rule(), TailRule::RepeatLast);
    let report = bank.verify_nonstationary_oep(1e-12).unwrap();
    c.check(report.passed(), "per-level identities pass");
    let mc = bank.mask_constants().unwrap();
    c.check(mc.c == 1.0, &format!("C = 1 exactly, got {}", mc.c));
    c.check(mc.c_dual == 1.0, &format!("C~ = 1 exactly, got {}", mc.c_dual));

    // residual comparison on a shared grid: for odd shifts the nonstationary
    // lattice sum has exactly one level and is the same expression as the
    // stationary alias-family residual
    let grid = GridSpec::new(-PI, PI, 256).unwrap();
    let opts = CheckOpts::default();
    let ns_sys = System::from_nonstationary_bank(&bank, 30, 0).unwrap();
    let ns = check_nonstationary(&ns_sys, &grid, 8, 6, 1e-8, &opts).unwrap();
    let st_sys = System::from_bank(&banks::haar(), 30, false).unwrap();
    let st = check_characterization(&st_sys, &grid, 8, 6, 1e-8, &opts).unwrap();
    c.check(ns.max_residual < 1e-8, "nonstationary residuals small");
    c.check(st.max_residual < 1e-8, "stationary residuals small");
    let mut compared = 0;
    for row in ns.rows.iter().filter(|r| r.k % 2 != 0) {
        let partner = st
            .rows
            .iter()
            .find(|s| s.identity == "eq-alias" && s.k == row.k)
            .expect("matching stationary row");
        let diff = (row.max_residual - partner.max_residual).abs();
        c.check(
            diff < 1e-10,
            &format!("k={}: residuals differ by {diff:.3e}", row.k),
        );
        compared += 1;
    }
    c.check(compared == 8, "eight odd shifts compared");
    c.finish();
}
