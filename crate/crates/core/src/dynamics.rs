//! The Hamiltonian generated by driving `φ` at fixed `θ`, its spectrum and
//! its su(2) ladder structure.
//!
//! `H = iħ (∂R̆/∂t) R̆†` is built here directly from spin operators; the
//! finite-difference form in [`hamiltonian_from_r`] is kept as an
//! independent check of that expression.

use serde::{Deserialize, Serialize};

use crate::braid::{on_sites, SpinOps};
use crate::error::{Error, Result};
use crate::linalg::{c64, cis, commutator, eigh, frobenius_distance, span_projector, C64, ComplexMatrix, ComplexVector, DEFAULT_TOL};
use crate::states::ThreeQubitState;
use crate::yangbaxter::{r_matrix, RParams, System};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriveParams {
    pub theta: f64,
    pub phi: f64,
    /// dφ/dt
    pub phi_dot: f64,
    pub hbar: f64,
}

impl DriveParams {
    pub fn new(theta: f64, phi: f64, phi_dot: f64, hbar: f64) -> Result<Self> {
        if !(theta.is_finite() && phi.is_finite() && phi_dot.is_finite() && hbar.is_finite()) {
            return Err(Error::InvalidArgument("drive parameters must be finite".into()));
        }
        if hbar <= 0.0 {
            return Err(Error::InvalidArgument(format!("hbar must be positive, got {hbar}")));
        }
        Ok(Self {
            theta,
            phi,
            phi_dot,
            hbar,
        })
    }

    /// `ħ = φ̇ = 1`
    pub fn unit(theta: f64, phi: f64) -> Self {
        Self {
            theta,
            phi,
            phi_dot: 1.0,
            hbar: 1.0,
        }
    }

    pub fn with_phi(self, phi: f64) -> Self {
        Self { phi, ..self }
    }

    /// `ħφ̇cosθ`, the magnitude of the nonzero levels.
    pub fn level_scale(&self) -> f64 {
        self.hbar * self.phi_dot * self.theta.cos()
    }
}

/// Three-site spin operators, indexed by site 0..3.
struct ChainOps {
    plus: [ComplexMatrix; 3],
    minus: [ComplexMatrix; 3],
    z: [ComplexMatrix; 3],
}

impl ChainOps {
    fn new() -> Self {
        let sp = SpinOps::new();
        let lift = |op: &ComplexMatrix| [0, 1, 2].map(|site| on_sites(&[(site, op)], 3));
        Self {
            plus: lift(&sp.s_plus),
            minus: lift(&sp.s_minus),
            z: lift(&sp.s3),
        }
    }
}

fn prod(ops: &[&ComplexMatrix]) -> ComplexMatrix {
    ops.iter()
        .skip(1)
        .fold(ops[0].clone(), |acc, m| &acc * m)
}

/// The driven Hamiltonian for time-independent `θ` and `φ(t)`:
///
/// ```text
/// H = (ħφ̇/√3) sinθ cosθ [ 2S₂³(e^{-iφ}S₁⁺S₃⁺ + e^{iφ}S₁⁻S₃⁻)
///                         + e^{-iφ}(S₁⁺S₂⁺ + S₂⁺S₃⁺) + e^{iφ}(S₁⁻S₂⁻ + S₂⁻S₃⁻) ]
///   + (ħφ̇/3) cos²θ [ 2(S₁³ + S₂³ + S₃³) + 2S₂³(S₁⁺S₃⁻ + S₁⁻S₃⁺)
///                    − (S₁⁺S₂⁻ + S₂⁺S₃⁻ + S₁⁻S₂⁺ + S₂⁻S₃⁺) ]
/// ```
pub fn hamiltonian(d: &DriveParams) -> ComplexMatrix {
    let o = ChainOps::new();
    let (p, m, z) = (&o.plus, &o.minus, &o.z);
    let (s, c) = d.theta.sin_cos();
    let e_minus = cis(-d.phi);
    let e_plus = cis(d.phi);

    let outer = &(e_minus * &prod(&[&p[0], &p[2]])) + &(e_plus * &prod(&[&m[0], &m[2]]));
    let pairing = &(&(2.0 * &(&z[1] * &outer)) + &(e_minus * &(&prod(&[&p[0], &p[1]]) + &prod(&[&p[1], &p[2]]))))
        + &(e_plus * &(&prod(&[&m[0], &m[1]]) + &prod(&[&m[1], &m[2]])));

    let total_z = &(&z[0] + &z[1]) + &z[2];
    let hop13 = &prod(&[&p[0], &m[2]]) + &prod(&[&m[0], &p[2]]);
    let hop_nn = &(&(&prod(&[&p[0], &m[1]]) + &prod(&[&p[1], &m[2]])) + &prod(&[&m[0], &p[1]])) + &prod(&[&m[1], &p[2]]);
    let diagonal = &(&(2.0 * &total_z) + &(2.0 * &(&z[1] * &hop13))) - &hop_nn;

    let a = d.hbar * d.phi_dot * s * c / 3f64.sqrt();
    let b = d.hbar * d.phi_dot * c * c / 3.0;
    &(a * &pairing) + &(b * &diagonal)
}

/// Central finite difference of `iħ (∂R̆/∂t) R̆†` with step `dt`.
pub fn hamiltonian_from_r(d: &DriveParams, dt: f64) -> Result<ComplexMatrix> {
    if !(dt > 0.0 && dt <= 1e-3) {
        return Err(Error::InvalidArgument(format!("dt must lie in (0, 1e-3], got {dt}")));
    }
    let r = |phi| r_matrix(System::ThreeQubit, RParams::new(d.theta, phi));
    let forward = r(d.phi + d.phi_dot * dt);
    let backward = r(d.phi - d.phi_dot * dt);
    let deriv = (1.0 / (2.0 * dt)) * &(&forward - &backward);
    Ok(c64(0.0, d.hbar) * &(&deriv * &r(d.phi).dagger()))
}

/// Ladder operators and their field coefficients, `H = B₊I₊ + B₋I₋ + B₃I₃`.
#[derive(Clone, Debug)]
pub struct Su2Ops {
    pub i_plus: ComplexMatrix,
    pub i_minus: ComplexMatrix,
    pub i_3: ComplexMatrix,
    pub b_plus: C64,
    pub b_minus: C64,
    pub b_3: f64,
}

impl Su2Ops {
    pub fn hamiltonian(&self) -> ComplexMatrix {
        &(&(self.b_plus * &self.i_plus) + &(self.b_minus * &self.i_minus)) + &(self.b_3 * &self.i_3)
    }
}

pub fn su2_ops(d: &DriveParams) -> Su2Ops {
    let o = ChainOps::new();
    let (p, m, z) = (&o.plus, &o.minus, &o.z);
    let i_plus = &(&prod(&[&p[0], &p[1]]) + &prod(&[&p[1], &p[2]])) + &(2.0 * &prod(&[&z[1], &p[0], &p[2]]));
    let i_minus = &(&prod(&[&m[0], &m[1]]) + &prod(&[&m[1], &m[2]])) + &(2.0 * &prod(&[&z[1], &m[0], &m[2]]));
    let i_3 = &(&(&(&z[0] + &z[1]) + &z[2]) + &(&z[1] * &(&prod(&[&p[0], &m[2]]) + &prod(&[&m[0], &p[2]]))))
        - &(0.5
            * &(&(&(&prod(&[&p[0], &m[1]]) + &prod(&[&m[0], &p[1]])) + &prod(&[&p[1], &m[2]])) + &prod(&[&m[1], &p[2]])));
    let (s, c) = d.theta.sin_cos();
    let b = d.hbar * d.phi_dot * s * c / 3f64.sqrt();
    Su2Ops {
        i_plus,
        i_minus,
        i_3,
        b_plus: cis(-d.phi) * b,
        b_minus: cis(d.phi) * b,
        b_3: 2.0 / 3.0 * d.hbar * d.phi_dot * c * c,
    }
}

/// Measured algebra of the ladder operators.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Su2Report {
    pub i_plus_squared: f64,
    pub i_minus_squared: f64,
    /// `‖[I₊, I₋] − 2I₃‖`
    pub plus_minus_commutator: f64,
    /// `‖[I₃, I₊] − I₊‖`
    pub three_plus_commutator: f64,
    /// `‖[I₃, I₋] + I₋‖`
    pub three_minus_commutator: f64,
    /// `‖H − (B₊I₊ + B₋I₋ + B₃I₃)‖`
    pub decomposition: f64,
    /// `‖I₃² − ¼I‖` on the full space
    pub i3_squared_global: f64,
    /// `‖P(I₃² − ¼I)P‖`, P the projector onto span{χ₅…χ₈}
    pub i3_squared_on_span: f64,
    /// κ fitted from `[I₃, I₊] = κ I₊`
    pub ladder_scale: f64,
    pub ladder_scale_residual: f64,
    /// `J± = I±/√κ`, `J₃ = I₃/κ`: `‖[J₃, J₊] − J₊‖`, `‖[J₊, J₋] − 2J₃‖`, and
    /// `‖P(J₃² − ¼I)P‖`.
    pub rescaled_three_plus: f64,
    pub rescaled_plus_minus: f64,
    pub rescaled_j3_squared_on_span: f64,
}

fn frob_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| x.conj() * y).sum()
}

pub fn su2_report(d: &DriveParams) -> Result<Su2Report> {
    let ops = su2_ops(d);
    let dist = |a: &ComplexMatrix, b: &ComplexMatrix| frobenius_distance(a, b).expect("8x8");
    let id = ComplexMatrix::identity(8);
    let quarter = 0.25 * &id;

    let fixtures: Vec<ComplexVector> = (5..=8)
        .map(|i| eigenstate_fixture(i, d.theta, d.phi).map(|s| s.amplitudes().clone()))
        .collect::<Result<_>>()?;
    let proj = span_projector(&fixtures, 1e-12);
    let on_span = |m: &ComplexMatrix| (&(&proj * m) * &proj).frobenius_norm();

    let c3p = commutator(&ops.i_3, &ops.i_plus);
    let kappa = (frob_inner(&ops.i_plus, &c3p) / frob_inner(&ops.i_plus, &ops.i_plus)).re;
    let j_plus = (1.0 / kappa.sqrt()) * &ops.i_plus;
    let j_minus = (1.0 / kappa.sqrt()) * &ops.i_minus;
    let j_3 = (1.0 / kappa) * &ops.i_3;

    Ok(Su2Report {
        i_plus_squared: (&ops.i_plus * &ops.i_plus).frobenius_norm(),
        i_minus_squared: (&ops.i_minus * &ops.i_minus).frobenius_norm(),
        plus_minus_commutator: dist(&commutator(&ops.i_plus, &ops.i_minus), &(2.0 * &ops.i_3)),
        three_plus_commutator: dist(&c3p, &ops.i_plus),
        three_minus_commutator: dist(&commutator(&ops.i_3, &ops.i_minus), &(-&ops.i_minus)),
        decomposition: dist(&hamiltonian(d), &ops.hamiltonian()),
        i3_squared_global: dist(&(&ops.i_3 * &ops.i_3), &quarter),
        i3_squared_on_span: on_span(&(&(&ops.i_3 * &ops.i_3) - &quarter)),
        ladder_scale: kappa,
        ladder_scale_residual: dist(&c3p, &(kappa * &ops.i_plus)),
        rescaled_three_plus: dist(&commutator(&j_3, &j_plus), &j_plus),
        rescaled_plus_minus: dist(&commutator(&j_plus, &j_minus), &(2.0 * &j_3)),
        rescaled_j3_squared_on_span: on_span(&(&(&j_3 * &j_3) - &quarter)),
    })
}

/// The three energy levels `0`, `−ħφ̇cosθ` and `+ħφ̇cosθ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Zero,
    Minus,
    Plus,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Zero, Level::Minus, Level::Plus];

    pub fn energy(self, d: &DriveParams) -> f64 {
        match self {
            Level::Zero => 0.0,
            Level::Minus => -d.level_scale(),
            Level::Plus => d.level_scale(),
        }
    }

    /// Fixture states spanning the level. χ₆ and χ₇ sit on the opposite
    /// levels from the ones their printed energies name; see
    /// [`printed_fixture_energy`].
    pub fn fixtures(self) -> &'static [usize] {
        match self {
            Level::Zero => &[1, 2, 3, 4],
            Level::Minus => &[5, 7],
            Level::Plus => &[6, 8],
        }
    }

    pub fn of_fixture(i: usize) -> Option<Level> {
        Level::ALL.into_iter().find(|l| l.fixtures().contains(&i))
    }
}

/// Energy printed next to fixture `i` (`E₅ = E₆ = −ħφ̇cosθ`,
/// `E₇ = E₈ = +ħφ̇cosθ`).
pub fn printed_fixture_energy(i: usize, d: &DriveParams) -> f64 {
    match i {
        1..=4 => 0.0,
        5 | 6 => -d.level_scale(),
        _ => d.level_scale(),
    }
}

/// The eigenstate `|χᵢ⟩`, `i ∈ 1..=8`, as tabulated.
pub fn eigenstate_fixture(i: usize, theta: f64, phi: f64) -> Result<ThreeQubitState> {
    let (s, c) = (theta / 2.0).sin_cos();
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let r3 = 1.0 / 3f64.sqrt();
    let e = cis(phi);
    let f = cis(-phi);
    let re = |x: f64| c64(x, 0.0);
    let terms: Vec<(usize, C64)> = match i {
        1 => vec![(0b011, re(-r2)), (0b110, re(r2))],
        2 => vec![(0b001, re(-r2)), (0b100, re(r2))],
        3 => vec![(0b011, re(-r2)), (0b101, re(r2))],
        4 => vec![(0b001, re(r2)), (0b010, re(r2))],
        5 => vec![(0b001, -f * r3 * s), (0b010, f * r3 * s), (0b100, -f * r3 * s), (0b111, re(c))],
        6 => vec![(0b001, re(r3 * c)), (0b010, re(-r3 * c)), (0b100, re(r3 * c)), (0b111, e * s)],
        7 => vec![(0b000, -f * s), (0b011, re(r3 * c)), (0b101, re(r3 * c)), (0b110, re(r3 * c))],
        8 => vec![(0b000, re(c)), (0b011, e * r3 * s), (0b101, e * r3 * s), (0b110, e * r3 * s)],
        _ => return Err(Error::InvalidArgument(format!("fixture index {i} outside 1..=8"))),
    };
    let mut v = vec![c64(0.0, 0.0); 8];
    for (k, z) in terms {
        v[k] = z;
    }
    ThreeQubitState::new(ComplexVector::new(v))
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureCheck {
    pub index: usize,
    pub level: Level,
    pub energy: f64,
    /// `‖Hχ − Eχ‖` with the level energy
    pub residual: f64,
    pub printed_energy: f64,
    /// `‖Hχ − E_printed χ‖`
    pub printed_residual: f64,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct LevelProjectors {
    pub zero: f64,
    pub minus: f64,
    pub plus: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub params: DriveParams,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    #[serde(skip)]
    pub eigenvectors: Vec<ComplexVector>,
    /// Multiplicities of consecutive eigenvalue clusters, ascending.
    pub degeneracy_pattern: Vec<usize>,
    /// `{0×4, ±ħφ̇cosθ×2}`, ascending.
    pub closed_form: Vec<f64>,
    pub closed_form_match: f64,
    pub fixtures: Vec<FixtureCheck>,
    /// Projector distance per level between the numerical eigenspace and
    /// the span of the fixtures; absent when the levels are not separated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level_projectors: Option<LevelProjectors>,
}

pub fn spectrum(d: &DriveParams) -> Result<SpectrumReport> {
    let h = hamiltonian(d);
    let e = eigh(&h, DEFAULT_TOL)?;
    let gap = 1e-8 * (h.frobenius_norm() + d.hbar * d.phi_dot.abs());

    let mut degeneracy_pattern = Vec::new();
    let mut run = 1;
    for w in e.eigenvalues.windows(2) {
        if w[1] - w[0] <= gap {
            run += 1;
        } else {
            degeneracy_pattern.push(run);
            run = 1;
        }
    }
    degeneracy_pattern.push(run);

    let scale = d.level_scale().abs();
    let mut closed_form = vec![-scale, -scale, 0.0, 0.0, 0.0, 0.0, scale, scale];
    closed_form.sort_by(f64::total_cmp);
    let closed_form_match = e
        .eigenvalues
        .iter()
        .zip(&closed_form)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let fixtures = (1..=8)
        .map(|i| {
            let chi = eigenstate_fixture(i, d.theta, d.phi)?;
            let h_chi = h.apply(chi.amplitudes())?;
            let level = Level::of_fixture(i).expect("1..=8");
            let energy = level.energy(d);
            let printed_energy = printed_fixture_energy(i, d);
            let res = |en: f64| h_chi.sub(&chi.amplitudes().scale(c64(en, 0.0))).norm();
            Ok(FixtureCheck {
                index: i,
                level,
                energy,
                residual: res(energy),
                printed_energy,
                printed_residual: res(printed_energy),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let level_projectors = if scale > gap.max(1e-12) {
        let numeric = |level: Level| {
            let vecs: Vec<ComplexVector> = e
                .eigenvalues
                .iter()
                .zip(&e.eigenvectors)
                .filter(|(l, _)| {
                    Level::ALL
                        .into_iter()
                        .min_by(|a, b| (a.energy(d) - **l).abs().total_cmp(&(b.energy(d) - **l).abs()))
                        == Some(level)
                })
                .map(|(_, v)| v.clone())
                .collect();
            span_projector(&vecs, 1e-12)
        };
        let fixture_proj = |level: Level| -> Result<ComplexMatrix> {
            let vecs = level
                .fixtures()
                .iter()
                .map(|&i| eigenstate_fixture(i, d.theta, d.phi).map(|s| s.amplitudes().clone()))
                .collect::<Result<Vec<_>>>()?;
            Ok(span_projector(&vecs, 1e-12))
        };
        let dist = |level| -> Result<f64> { frobenius_distance(&numeric(level), &fixture_proj(level)?) };
        Some(LevelProjectors {
            zero: dist(Level::Zero)?,
            minus: dist(Level::Minus)?,
            plus: dist(Level::Plus)?,
        })
    } else {
        None
    };

    Ok(SpectrumReport {
        params: *d,
        eigenvalues: e.eigenvalues,
        eigenvectors: e.eigenvectors,
        degeneracy_pattern,
        closed_form,
        closed_form_match,
        fixtures,
        level_projectors,
    })
}
