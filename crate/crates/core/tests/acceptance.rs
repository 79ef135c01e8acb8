//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Each check computes its reference values first (closed forms, landmark
//! constants, independent oracles) and then the measured values. The process
//! exits nonzero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI, TAU};
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ybsys::berry::{berry_analytic, berry_wilson, closed_form, zero_level_phase};
use ybsys::braid::{build_braidset, check_es2_relations};
use ybsys::dynamics::{hamiltonian, hamiltonian_from_r, spectrum, su2_report, DriveParams, Level};
use ybsys::entanglement::{
    concurrence, full_report, one_vs_rest_closed_form, pair_concurrence_closed_form, tangle_closed_form,
    three_tangle,
};
use ybsys::linalg::{c64, frobenius_distance, partial_trace, ComplexVector};
use ybsys::states::{apply_r, apply_r_two_qubit, basis_state, BasisLabel, ThreeQubitState};
use ybsys::yangbaxter::{unitarity_residual, ybe_residual, RParams, SpectralParam, System};

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn theta_grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| PI * k as f64 / (n - 1) as f64)
}

fn ac1_algebra() -> Outcome {
    let tol = 1e-10;
    let names = [
        "m4_squared_minus_identity",
        "mbb_squared_alpha",
        "mbb_hermitian",
        "ab_anticommute",
        "aba_equals_b",
        "bab_equals_a",
    ];
    let mut worst = 0.0f64;
    for k in 0..17 {
        let phi = TAU * k as f64 / 17.0;
        let bs = build_braidset(phi);
        // 𝕄² = I₈ needs α = 1
        worst = worst.max((bs.alpha - 1.0).abs());
        let report = check_es2_relations(&bs, tol);
        for name in names {
            worst = worst.max(report.residual(name).expect("relation present"));
        }
    }
    outcome(worst <= tol, format!("max residual {worst:.3e} over 17 phi (tol {tol:e})"))
}

fn ac2_unitarity() -> Outcome {
    let tol = 1e-12;
    let mut worst = 0.0f64;
    for system in [System::TwoQubit, System::ThreeQubit] {
        for i in 0..11 {
            for j in 0..11 {
                let p = RParams::new(PI * i as f64 / 10.0, TAU * j as f64 / 10.0);
                worst = worst.max(unitarity_residual(system, p));
            }
        }
    }
    outcome(worst <= tol, format!("max |R^dag R - I|_F {worst:.3e} on 11x11 grid, 4x4 and 8x8 (tol {tol:e})"))
}

fn ac3_ybe() -> Outcome {
    let tol = 1e-10;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut draw = || loop {
        let x = SpectralParam::from_arg(rng.gen_range(-PI..PI));
        if (x.value() + x.value().inv()).norm() > 1e-3 {
            return x;
        }
    };
    let (mut worst2, mut worst3) = (0.0f64, 0.0f64);
    let mut count = 0;
    for j in 0..5 {
        let phi = TAU * j as f64 / 5.0;
        let mut n = 0;
        while n < 50 {
            let (x, y) = (draw(), draw());
            let xy = x.compose(y).value();
            if (xy + xy.inv()).norm() <= 1e-3 {
                continue;
            }
            worst2 = worst2.max(ybe_residual(System::TwoQubit, x, y, phi).expect("regular point"));
            worst3 = worst3.max(ybe_residual(System::ThreeQubit, x, y, phi).expect("regular point"));
            n += 1;
            count += 1;
        }
    }
    outcome(
        worst2 <= tol,
        format!("4x4 max residual {worst2:.3e} over {count} (x, y, phi) samples (tol {tol:e}); 8x8 max residual {worst3:.3e} reported only"),
    )
}

fn ac4_curves() -> Outcome {
    let tol = 1e-9;
    let phi_tol = 1e-10;
    let mut worst = 0.0f64;
    let mut worst_phi = 0.0f64;
    for theta in theta_grid(25) {
        let (tau_ref, c_ref, o_ref) = (
            tangle_closed_form(theta),
            pair_concurrence_closed_form(theta),
            one_vs_rest_closed_form(theta),
        );
        for label in BasisLabel::all() {
            let measure = |phi: f64| {
                let s = apply_r(RParams::new(theta, phi), &basis_state(label)).expect("unitary");
                full_report(&s).expect("valid state")
            };
            let r = measure(0.0);
            for (m, e) in [
                (r.tau_abc, tau_ref),
                (r.c_ab, c_ref),
                (r.c_bc, c_ref),
                (r.c_ac, c_ref),
                (r.c2_a_bc, o_ref),
                (r.c2_b_ac, o_ref),
                (r.c2_c_ab, o_ref),
            ] {
                worst = worst.max((m - e).abs());
            }
            for phi in [0.9, 2.4, 4.1, 5.7] {
                let q = measure(phi);
                for (a, b) in [
                    (r.tau_abc, q.tau_abc),
                    (r.c_ab, q.c_ab),
                    (r.c_bc, q.c_bc),
                    (r.c_ac, q.c_ac),
                    (r.c2_a_bc, q.c2_a_bc),
                    (r.c2_b_ac, q.c2_b_ac),
                    (r.c2_c_ab, q.c2_c_ab),
                ] {
                    worst_phi = worst_phi.max((a - b).abs());
                }
            }
        }
    }
    outcome(
        worst <= tol && worst_phi <= phi_tol,
        format!("closed-form max error {worst:.3e} (tol {tol:e}); phi spread {worst_phi:.3e} (tol {phi_tol:e}); 8 inputs x 25 theta"),
    )
}

fn ac5_landmarks() -> Outcome {
    let tol = 1e-9;
    // (θ, τ, pair concurrence, one-vs-rest²)
    let landmarks = [(FRAC_PI_6, 1.0, 0.0, 1.0), (FRAC_PI_2, 0.0, 0.0, 0.0), (0.0, 0.0, 2.0 / 3.0, 8.0 / 9.0)];
    let mut worst = 0.0f64;
    for (theta, tau, c, o) in landmarks {
        for label in BasisLabel::all() {
            let s = apply_r(RParams::new(theta, 0.3), &basis_state(label)).expect("unitary");
            let r = full_report(&s).expect("valid state");
            for (m, e) in [
                (r.tau_abc, tau),
                (r.c_ab, c),
                (r.c_bc, c),
                (r.c_ac, c),
                (r.c2_a_bc, o),
                (r.c2_b_ac, o),
                (r.c2_c_ab, o),
            ] {
                worst = worst.max((m - e).abs());
            }
        }
    }
    outcome(worst <= tol, format!("theta = pi/6, pi/2, 0: max error {worst:.3e} (tol {tol:e})"))
}

fn ac6_two_qubit() -> Outcome {
    let tol = 1e-10;
    let mut worst = 0.0f64;
    for theta in theta_grid(25) {
        let expect = (2.0 * theta).sin().abs();
        for k in 0..4 {
            let v = apply_r_two_qubit(RParams::new(theta, 0.8), k).expect("k < 4");
            let c = concurrence(&v.projector()).expect("pure two-qubit state");
            worst = worst.max((c - expect).abs());
        }
    }
    outcome(worst <= tol, format!("|C - |sin 2theta|| max {worst:.3e} over 4 inputs x 25 theta (tol {tol:e})"))
}

fn ac7_hamiltonian() -> Outcome {
    let (fd_tol, tol) = (1e-6, 1e-10);
    let (mut fd, mut spec, mut fix) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..5 {
        let theta = PI * i as f64 / 4.0;
        for j in 0..5 {
            let phi = TAU * j as f64 / 5.0;
            for phi_dot in [0.5, 1.0, 2.0] {
                let d = DriveParams::new(theta, phi, phi_dot, 1.0).expect("finite");
                let oracle = hamiltonian_from_r(&d, 1e-5).expect("dt in range");
                fd = fd.max(frobenius_distance(&hamiltonian(&d), &oracle).expect("8x8"));
                let s = spectrum(&d).expect("eigensolver converges");
                spec = spec.max(s.closed_form_match);
                for f in &s.fixtures {
                    fix = fix.max(f.residual);
                }
            }
        }
    }
    outcome(
        fd <= fd_tol && spec <= tol && fix <= tol,
        format!("finite difference {fd:.3e} (tol {fd_tol:e}); spectrum {spec:.3e}, fixtures {fix:.3e} (tol {tol:e}); 5x5x3 grid"),
    )
}

fn ac8_su2() -> Outcome {
    let tol = 1e-12;
    let (mut sq, mut pm, mut ladder, mut dec, mut glob, mut span, mut kappa) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (theta, phi) in [(0.4, 0.2), (1.1, 2.5), (2.3, 4.0)] {
        let r = su2_report(&DriveParams::new(theta, phi, 1.3, 0.9).expect("finite")).expect("fixtures valid");
        sq = sq.max(r.i_plus_squared.max(r.i_minus_squared));
        pm = pm.max(r.plus_minus_commutator);
        ladder = ladder.max(r.three_plus_commutator.max(r.three_minus_commutator));
        dec = dec.max(r.decomposition);
        glob = glob.max(r.i3_squared_global);
        span = span.max(r.i3_squared_on_span);
        kappa = r.ladder_scale;
    }
    outcome(
        sq <= tol && pm <= tol && ladder <= tol,
        format!(
            "(I+-)^2 {sq:.3e}, [I+,I-]-2I3 {pm:.3e}, [I3,I+-]-+I+- {ladder:.3e} (tol {tol:e}; measured [I3,I+] = {kappa:.6} I+); \
             reported: H - B.I {dec:.3e}, I3^2-1/4 global {glob:.3e}, on span(chi5..chi8) {span:.3e}"
        ),
    )
}

fn ac9_berry() -> Outcome {
    let (a_tol, w_tol) = (1e-5, 1e-4);
    let mut analytic = 0.0f64;
    for theta in theta_grid(25) {
        for i in 5..=8 {
            let expect = closed_form(i, theta).expect("5..=8");
            analytic = analytic.max((berry_analytic(i, theta, 10_000).expect("valid") - expect).abs());
        }
    }
    // each level's Wilson eigenphases against the closed form of the
    // fixtures spanning it, compared modulo 2π
    let mut wilson = 0.0f64;
    for theta in [FRAC_PI_6, FRAC_PI_3, 2.0 * FRAC_PI_3, 5.0 * FRAC_PI_6] {
        for level in [Level::Minus, Level::Plus] {
            let expect = closed_form(level.fixtures()[0], theta).expect("fixture");
            for p in berry_wilson(level, theta, 4000).expect("separated levels") {
                let d = p - expect;
                wilson = wilson.max((d - TAU * (d / TAU).round()).abs());
            }
        }
    }
    let zero = theta_grid(25)
        .map(|t| zero_level_phase(t).expect("phi-free fixtures").abs())
        .fold(0.0f64, f64::max);
    outcome(
        analytic <= a_tol && wilson <= w_tol && zero == 0.0,
        format!("analytic {analytic:.3e} (tol {a_tol:e}, 25 theta, steps 1e4); Wilson {wilson:.3e} (tol {w_tol:e}, steps 4000); zero level {zero}"),
    )
}

fn ac10_monogamy() -> Outcome {
    let tol = 1e-8;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut mono, mut oracle) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let input: Vec<_> = (0..8).map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let input = ThreeQubitState::normalize(ComplexVector::new(input)).expect("nonzero");
        let p = RParams::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..TAU));
        let s = apply_r(p, &input).expect("unitary");
        // C²_A(BC) = 4 det ρ_A for a pure state
        let rho_a = partial_trace(&s.density_matrix(), &[0], 3).expect("qubit 0");
        let det = (rho_a.get(0, 0) * rho_a.get(1, 1) - rho_a.get(0, 1) * rho_a.get(1, 0)).re;
        let c2_a = 4.0 * det;
        let r = full_report(&s).expect("valid state");
        mono = mono.max(r.monogamy_residual);
        let tau_oracle = c2_a - r.c_ab * r.c_ab - r.c_ac * r.c_ac;
        oracle = oracle.max((three_tangle(&s) - tau_oracle).abs());
    }
    outcome(
        mono <= tol && oracle <= tol,
        format!("CKW residual {mono:.3e}; tau vs 4det(rho_A) - C_AB^2 - C_AC^2 {oracle:.3e} over 200 states (tol {tol:e})"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1", "algebra suite", ac1_algebra),
        ("AC2", "unitarity", ac2_unitarity),
        ("AC3", "4x4 Yang-Baxter equation", ac3_ybe),
        ("AC4", "entanglement curves", ac4_curves),
        ("AC5", "landmark points", ac5_landmarks),
        ("AC6", "two-qubit closure", ac6_two_qubit),
        ("AC7", "Hamiltonian", ac7_hamiltonian),
        ("AC8", "su(2) structure", ac8_su2),
        ("AC9", "Berry phases", ac9_berry),
        ("AC10", "CKW monogamy", ac10_monogamy),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let o = check();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {id} {name}: {}", o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
