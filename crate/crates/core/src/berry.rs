//! Geometric phases for the adiabatic loop `φ: 0 → 2π` at fixed `θ`.
//!
//! Two independent routes: the discrete line integral over the tabulated
//! eigenstates, and the Wilson loop over numerical eigenbases of each
//! two-fold degenerate level.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::dynamics::{eigenstate_fixture, hamiltonian, DriveParams, Level};
use crate::error::{Error, Result};
use crate::linalg::{c64, eigh, C64, ComplexVector, DEFAULT_TOL};

/// Smallest number of φ samples accepted by the loop integrals.
pub const MIN_STEPS: usize = 100;

/// Minimum separation between a level and the rest of the spectrum.
pub const LEVEL_GAP: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Analytic,
    Wilson,
}

fn check_steps(steps: usize) -> Result<()> {
    if steps < MIN_STEPS {
        return Err(Error::InvalidArgument(format!("steps must be at least {MIN_STEPS}, got {steps}")));
    }
    Ok(())
}

fn check_theta(theta: f64) -> Result<()> {
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(format!("theta must be finite, got {theta}")));
    }
    Ok(())
}

fn phi_grid(steps: usize) -> impl Iterator<Item = f64> {
    (0..steps).map(move |k| TAU * k as f64 / steps as f64)
}

/// `Ω = 2π(1 − cosθ)`
pub fn solid_angle(theta: f64) -> f64 {
    TAU * (1.0 - theta.cos())
}

/// Closed-form phase of fixture `i`: `+Ω/2` for χ₅, χ₇, `−Ω/2` for χ₆, χ₈,
/// and 0 for χ₁…χ₄.
pub fn closed_form(i: usize, theta: f64) -> Result<f64> {
    match i {
        1..=4 => Ok(0.0),
        5 | 7 => Ok(solid_angle(theta) / 2.0),
        6 | 8 => Ok(-solid_angle(theta) / 2.0),
        _ => Err(Error::InvalidArgument(format!("fixture index {i} outside 1..=8"))),
    }
}

/// `γ = −Σₖ arg⟨χₖ|χₖ₊₁⟩` around the closed loop of `states`, the last
/// state linking back to the first. Invariant modulo 2π under
/// `|χₖ⟩ → e^{iαₖ}|χₖ⟩`; for a finely sampled smooth loop every link phase
/// is small and the sum also fixes the branch.
pub fn discrete_berry_phase(states: &[ComplexVector]) -> f64 {
    let n = states.len();
    -(0..n).map(|k| states[k].inner(&states[(k + 1) % n]).arg()).sum::<f64>()
}

fn check_fixture(i: usize) -> Result<()> {
    if !(5..=8).contains(&i) {
        return Err(Error::InvalidArgument(format!("fixture index {i} outside 5..=8")));
    }
    Ok(())
}

fn fixture_loop(i: usize, theta: f64, steps: usize) -> Result<Vec<ComplexVector>> {
    phi_grid(steps)
        .map(|phi| eigenstate_fixture(i, theta, phi).map(|s| s.amplitudes().clone()))
        .collect()
}

/// Discrete Berry phase of fixture `i ∈ 5..=8` over `steps` uniform φ
/// samples. Second-order accurate in `1/steps`.
pub fn berry_analytic(i: usize, theta: f64, steps: usize) -> Result<f64> {
    check_fixture(i)?;
    check_theta(theta)?;
    check_steps(steps)?;
    Ok(discrete_berry_phase(&fixture_loop(i, theta, steps)?))
}

/// `i∮⟨χ|∂_φχ⟩dφ` by central differences and the rectangle rule. Depends
/// on the fixture gauge; kept only to cross-check [`berry_analytic`].
pub fn berry_analytic_naive(i: usize, theta: f64, steps: usize) -> Result<f64> {
    check_fixture(i)?;
    check_theta(theta)?;
    check_steps(steps)?;
    let h = TAU / steps as f64;
    let mut sum = c64(0.0, 0.0);
    for phi in phi_grid(steps) {
        let chi = eigenstate_fixture(i, theta, phi)?;
        let fwd = eigenstate_fixture(i, theta, phi + h)?;
        let bwd = eigenstate_fixture(i, theta, phi - h)?;
        let deriv = fwd.amplitudes().sub(bwd.amplitudes()).scale(c64(0.5 / h, 0.0));
        sum += chi.amplitudes().inner(&deriv);
    }
    Ok((c64(0.0, 1.0) * sum * h).re)
}

/// Orthonormal basis of the numerical eigenspace of `level` at `d`.
fn level_basis(level: Level, d: &DriveParams) -> Result<Vec<ComplexVector>> {
    let e = eigh(&hamiltonian(d), DEFAULT_TOL)?;
    let target = level.energy(d);
    let mut order: Vec<usize> = (0..e.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        (e.eigenvalues[a] - target)
            .abs()
            .total_cmp(&(e.eigenvalues[b] - target).abs())
    });
    let width = level.fixtures().len();
    let inside = order[..width].iter().map(|&k| (e.eigenvalues[k] - target).abs()).fold(0.0, f64::max);
    let outside = order[width..]
        .iter()
        .map(|&k| (e.eigenvalues[k] - target).abs())
        .fold(f64::INFINITY, f64::min);
    let gap = outside - inside;
    if gap < LEVEL_GAP {
        return Err(Error::DegenerateCrossing { gap });
    }
    Ok(order[..width].iter().map(|&k| e.eigenvectors[k].clone()).collect())
}

type Mat2 = [[C64; 2]; 2];

fn overlap(a: &[ComplexVector], b: &[ComplexVector]) -> Mat2 {
    [
        [a[0].inner(&b[0]), a[0].inner(&b[1])],
        [a[1].inner(&b[0]), a[1].inner(&b[1])],
    ]
}

fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[c64(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn eigenvalues2(m: &Mat2) -> [C64; 2] {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (tr * tr - 4.0 * det).sqrt();
    [(tr + disc) / 2.0, (tr - disc) / 2.0]
}

/// Eigenphases `−arg λ` of the Wilson loop `W = Πₖ Vₖ†Vₖ₊₁` over the
/// two-dimensional eigenspace of `level`, with `V_N ≡ V₀` so the loop
/// closes exactly. Sorted ascending, each in `(−π, π]`.
pub fn berry_wilson(level: Level, theta: f64, steps: usize) -> Result<Vec<f64>> {
    if level == Level::Zero {
        return Err(Error::InvalidArgument("the Wilson loop runs over the minus or plus level".into()));
    }
    check_theta(theta)?;
    check_steps(steps)?;
    let d = DriveParams::unit(theta, 0.0);
    let bases: Vec<Vec<ComplexVector>> = phi_grid(steps)
        .map(|phi| level_basis(level, &d.with_phi(phi)))
        .collect::<Result<_>>()?;
    let one = c64(1.0, 0.0);
    let zero = c64(0.0, 0.0);
    let mut w: Mat2 = [[one, zero], [zero, one]];
    for k in 0..steps {
        w = mul2(&w, &overlap(&bases[k], &bases[(k + 1) % steps]));
    }
    let mut phases: Vec<f64> = eigenvalues2(&w).iter().map(|l| -l.arg()).collect();
    phases.sort_by(f64::total_cmp);
    Ok(phases)
}

/// The phase shared by χ₁…χ₄. These fixtures carry no φ dependence, so the
/// integrand vanishes identically; the independence is checked on a grid
/// before returning 0.
pub fn zero_level_phase(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    for i in Level::Zero.fixtures() {
        let reference = eigenstate_fixture(*i, theta, 0.0)?;
        for phi in phi_grid(MIN_STEPS) {
            if eigenstate_fixture(*i, theta, phi)? != reference {
                return Err(Error::InvalidArgument(format!("fixture {i} depends on phi")));
            }
        }
    }
    Ok(0.0)
}

/// Representative of `x` modulo 2π nearest to `target`.
fn nearest_branch(x: f64, target: f64) -> f64 {
    x + TAU * ((target - x) / TAU).round()
}

#[derive(Clone, Debug, Serialize)]
pub struct BerryReport {
    pub theta: f64,
    pub level: Level,
    pub method: Method,
    /// One phase per state of the level, in `(−2π, 2π]`.
    pub phases: Vec<f64>,
    /// Closed form for each entry of `phases`.
    pub closed_form: Vec<f64>,
    pub solid_angle: f64,
    /// `|phase − closed_form|`
    pub residuals: Vec<f64>,
}

/// Phases of every state in `level` by `method`, paired with the closed
/// form. Wilson eigenphases are only defined modulo 2π; each is reported on
/// the branch nearest its closed-form value.
pub fn berry_report(theta: f64, level: Level, method: Method, steps: usize) -> Result<BerryReport> {
    let fixtures = level.fixtures();
    let closed: Vec<f64> = fixtures.iter().map(|&i| closed_form(i, theta)).collect::<Result<_>>()?;
    let phases: Vec<f64> = match (level, method) {
        (Level::Zero, _) => fixtures.iter().map(|_| zero_level_phase(theta)).collect::<Result<_>>()?,
        (_, Method::Analytic) => fixtures
            .iter()
            .map(|&i| berry_analytic(i, theta, steps))
            .collect::<Result<_>>()?,
        (_, Method::Wilson) => berry_wilson(level, theta, steps)?
            .into_iter()
            .zip(&closed)
            .map(|(p, &c)| nearest_branch(p, c))
            .collect(),
    };
    let phases: Vec<f64> = phases
        .into_iter()
        .map(|p| if p <= -TAU { p + TAU } else if p > TAU { p - TAU } else { p })
        .collect();
    let residuals = phases.iter().zip(&closed).map(|(p, c)| (p - c).abs()).collect();
    Ok(BerryReport {
        theta,
        level,
        method,
        phases,
        closed_form: closed,
        solid_angle: solid_angle(theta),
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    #[test]
    fn equator_values() {
        assert!((berry_analytic(5, FRAC_PI_2, 10_000).unwrap() - PI).abs() < 1e-6);
        assert!((berry_analytic(6, FRAC_PI_2, 10_000).unwrap() + PI).abs() < 1e-6);
    }

    #[test]
    fn vanishes_at_the_pole() {
        for i in 5..=8 {
            assert!(berry_analytic(i, 0.0, 1000).unwrap().abs() < 1e-8);
        }
    }

    #[test]
    fn matches_half_solid_angle_on_grid() {
        for j in 0..25 {
            let theta = PI * j as f64 / 24.0;
            for i in 5..=8 {
                let g = berry_analytic(i, theta, 10_000).unwrap();
                let expect = closed_form(i, theta).unwrap();
                assert!((g - expect).abs() <= 1e-5, "χ{i} θ={theta}: {g} vs {expect}");
            }
        }
    }

    #[test]
    fn second_order_convergence() {
        for (i, theta) in [(5, 0.7), (6, 1.9), (8, 2.5)] {
            let expect = closed_form(i, theta).unwrap();
            let n = 1000;
            let e1 = (berry_analytic(i, theta, n).unwrap() - expect).abs();
            let e2 = (berry_analytic(i, theta, 2 * n).unwrap() - expect).abs();
            assert!(e2 <= 0.25 * e1 + 1e-12, "χ{i}: {e1} → {e2}");
        }
    }

    #[test]
    fn gauge_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let states = fixture_loop(7, 1.1, 500).unwrap();
        let regauged: Vec<ComplexVector> = states
            .iter()
            .map(|s| s.scale(C64::from_polar(1.0, rng.gen_range(-PI..PI))))
            .collect();
        // each link phase shifts by αₖ₊₁ − αₖ, which telescopes to zero
        // modulo the 2π branch of the individual args
        let diff = discrete_berry_phase(&states) - discrete_berry_phase(&regauged);
        assert!((diff - TAU * (diff / TAU).round()).abs() < 1e-10, "{diff}");
    }

    #[test]
    fn naive_quadrature_agrees_for_smooth_fixtures() {
        let g = berry_analytic_naive(5, 1.0, 4000).unwrap();
        assert!((g - closed_form(5, 1.0).unwrap()).abs() < 1e-5);
    }

    #[test]
    fn wilson_loop_at_pi_over_three() {
        // Both states of a level carry the same phase: the minus level holds
        // χ₅ and χ₇, the plus level χ₆ and χ₈.
        let minus = berry_wilson(Level::Minus, FRAC_PI_3, 4000).unwrap();
        let plus = berry_wilson(Level::Plus, FRAC_PI_3, 4000).unwrap();
        for p in minus {
            assert!((p - FRAC_PI_2).abs() < 1e-4, "{p}");
        }
        for p in plus {
            assert!((p + FRAC_PI_2).abs() < 1e-4, "{p}");
        }
    }

    #[test]
    fn wilson_loop_near_pole() {
        for level in [Level::Minus, Level::Plus] {
            for p in berry_wilson(level, 1e-3, 400).unwrap() {
                assert!(p.abs() < 1e-4);
            }
        }
    }

    #[test]
    fn wilson_report_uses_nearest_branch() {
        let r = berry_report(2.5, Level::Minus, Method::Wilson, 2000).unwrap();
        for (p, res) in r.phases.iter().zip(&r.residuals) {
            assert!(*res < 1e-4, "{p}");
            assert!(*p > -TAU && *p <= TAU);
        }
    }

    #[test]
    fn zero_level() {
        for theta in [0.0, 0.4, FRAC_PI_2, 3.0] {
            assert_eq!(zero_level_phase(theta).unwrap(), 0.0);
        }
        let r = berry_report(1.0, Level::Zero, Method::Wilson, 100).unwrap();
        assert_eq!(r.phases, vec![0.0; 4]);
    }

    #[test]
    fn rejections() {
        assert!(berry_analytic(5, 1.0, 99).is_err());
        assert!(berry_analytic(4, 1.0, 100).is_err());
        assert!(berry_wilson(Level::Zero, 1.0, 100).is_err());
        assert!(matches!(
            berry_wilson(Level::Minus, FRAC_PI_2, 100),
            Err(Error::DegenerateCrossing { .. })
        ));
    }
}
