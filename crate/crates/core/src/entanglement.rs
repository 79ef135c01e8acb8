//! Three-tangle, Wootters concurrence and one-vs-rest concurrence for pure
//! three-qubit states, with the closed forms for the states `R̆|klm⟩`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c64, eigh, partial_trace, ComplexMatrix};
use crate::states::ThreeQubitState;

/// Validation tolerance for two-qubit density matrices.
pub const DENSITY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Qubit {
    A,
    B,
    C,
}

impl Qubit {
    pub fn site(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pair {
    AB,
    BC,
    AC,
}

impl Pair {
    pub fn sites(self) -> [usize; 2] {
        match self {
            Pair::AB => [0, 1],
            Pair::BC => [1, 2],
            Pair::AC => [0, 2],
        }
    }
}

/// Coffman-Kundu-Wootters residual tangle `4|d₁ − 2d₂ + 4d₃|`.
pub fn three_tangle(s: &ThreeQubitState) -> f64 {
    let a = |i, j, k| s.coeff(i, j, k);
    let d1 = a(0, 0, 0).powi(2) * a(1, 1, 1).powi(2)
        + a(0, 0, 1).powi(2) * a(1, 1, 0).powi(2)
        + a(0, 1, 0).powi(2) * a(1, 0, 1).powi(2)
        + a(1, 0, 0).powi(2) * a(0, 1, 1).powi(2);
    let p0 = a(0, 0, 0) * a(1, 1, 1);
    let p1 = a(0, 1, 1) * a(1, 0, 0);
    let p2 = a(1, 0, 1) * a(0, 1, 0);
    let p3 = a(1, 1, 0) * a(0, 0, 1);
    let d2 = p0 * p1 + p0 * p2 + p0 * p3 + p1 * p2 + p1 * p3 + p2 * p3;
    let d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1)
        + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm()
}

/// `16√3 |sinθ cos³θ| / 9`
pub fn tangle_closed_form(theta: f64) -> f64 {
    16.0 * 3f64.sqrt() * (theta.sin() * theta.cos().powi(3)).abs() / 9.0
}

/// `|(1/√3)|sin2θ| − (2/3)cos²θ|`
pub fn pair_concurrence_closed_form(theta: f64) -> f64 {
    ((2.0 * theta).sin().abs() / 3f64.sqrt() - 2.0 / 3.0 * theta.cos().powi(2)).abs()
}

/// `(8/9) cos²θ (1 + 2 sin²θ)`
pub fn one_vs_rest_closed_form(theta: f64) -> f64 {
    8.0 / 9.0 * theta.cos().powi(2) * (1.0 + 2.0 * theta.sin().powi(2))
}

/// `σ_y ⊗ σ_y`
fn spin_flip() -> ComplexMatrix {
    let o = c64(0.0, 0.0);
    let sy = ComplexMatrix::from_rows(&[vec![o, c64(0.0, -1.0)], vec![c64(0.0, 1.0), o]]).expect("2x2");
    sy.kron(&sy)
}

fn check_density(rho: &ComplexMatrix) -> Result<crate::linalg::EigenDecomposition> {
    if rho.shape() != (4, 4) {
        return Err(Error::NotDensityMatrix(format!("shape {:?}", rho.shape())));
    }
    if !rho.is_finite() {
        return Err(Error::NotDensityMatrix("non-finite entries".into()));
    }
    let herm = rho.hermiticity_residual();
    if herm > DENSITY_TOL {
        return Err(Error::NotDensityMatrix(format!("Hermiticity residual {herm:e}")));
    }
    let tr = rho.trace();
    if (tr - c64(1.0, 0.0)).norm() > DENSITY_TOL {
        return Err(Error::NotDensityMatrix(format!("trace {tr}")));
    }
    let e = eigh(rho, DENSITY_TOL).map_err(|err| Error::NotDensityMatrix(err.to_string()))?;
    if e.eigenvalues[0] < -DENSITY_TOL {
        return Err(Error::NotDensityMatrix(format!("negative eigenvalue {:e}", e.eigenvalues[0])));
    }
    Ok(e)
}

/// Density eigenvalues at or below this are treated as exact zeros.
const RANK_CUTOFF: f64 = 1e-14;

/// Spectrum of `ρρ̃` in decreasing order, `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
///
/// With `ρ = WW†`, `W = V_r √Λ_r` over the numerically nonzero eigenvalues,
/// the nonzero spectrum of `ρρ̃` equals that of the Hermitian `τ†τ` with
/// `τ = Wᵀ (σ_y⊗σ_y) W`. Working in the rank-r space keeps round-off zeros
/// of `ρρ̃` from turning into `√ε`-sized λ. Missing entries are padded with 0.
fn spin_flip_spectrum(rho: &ComplexMatrix) -> Result<Vec<f64>> {
    let e = check_density(rho)?;
    let kept: Vec<_> = e
        .eigenvalues
        .iter()
        .zip(&e.eigenvectors)
        .filter(|(p, _)| **p > RANK_CUTOFF)
        .map(|(p, v)| v.scale(c64(p.sqrt(), 0.0)))
        .collect();
    let r = kept.len();
    let w = ComplexMatrix::from_fn(4, r, |i, j| kept[j].get(i));
    let tau = &(&w.transpose() * &spin_flip()) * &w;
    let gram = &tau.dagger() * &tau;
    let gram = 0.5 * &(&gram + &gram.dagger());
    let mut mu = eigh(&gram, DENSITY_TOL)?.eigenvalues;
    mu.resize(4, 0.0);
    mu.sort_by(|a, b| b.total_cmp(a));
    Ok(mu)
}

/// Wootters concurrence `max{0, λ₁ − λ₂ − λ₃ − λ₄}`, with λ the decreasing
/// square roots of the spectrum of `ρρ̃`.
pub fn concurrence(rho2: &ComplexMatrix) -> Result<f64> {
    let lambda: Vec<f64> = spin_flip_spectrum(rho2)?
        .into_iter()
        .map(|m| m.max(0.0).sqrt())
        .collect();
    Ok((lambda[0] - lambda[1] - lambda[2] - lambda[3]).max(0.0))
}

/// Both readings of the concurrence formula, for diagnostics.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConcurrenceConventions {
    /// λ are square roots of the spectrum of `ρρ̃` (the standard form).
    pub square_roots: f64,
    /// λ are the eigenvalues of `ρρ̃` themselves.
    pub raw_eigenvalues: f64,
}

pub fn concurrence_conventions(rho2: &ComplexMatrix) -> Result<ConcurrenceConventions> {
    let mu = spin_flip_spectrum(rho2)?;
    let combine = |l: &[f64]| (l[0] - l[1] - l[2] - l[3]).max(0.0);
    let roots: Vec<f64> = mu.iter().map(|m| m.max(0.0).sqrt()).collect();
    Ok(ConcurrenceConventions {
        square_roots: combine(&roots),
        raw_eigenvalues: combine(&mu),
    })
}

pub fn reduced_pair(s: &ThreeQubitState, pair: Pair) -> ComplexMatrix {
    partial_trace(&s.density_matrix(), &pair.sites(), 3).expect("valid qubit pair")
}

pub fn pair_concurrence(s: &ThreeQubitState, pair: Pair) -> Result<f64> {
    concurrence(&reduced_pair(s, pair))
}

/// Squared concurrence between one qubit and the other two,
/// `2(1 − tr ρ_q²)` for a pure state.
pub fn one_vs_rest_sq(s: &ThreeQubitState, which: Qubit) -> f64 {
    let rho = partial_trace(&s.density_matrix(), &[which.site()], 3).expect("valid qubit");
    let purity = (&rho * &rho).trace().re;
    2.0 * (1.0 - purity)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct EntanglementReport {
    pub tau_abc: f64,
    pub c_ab: f64,
    pub c_bc: f64,
    pub c_ac: f64,
    pub c2_a_bc: f64,
    pub c2_b_ac: f64,
    pub c2_c_ab: f64,
    /// `|C²_A(BC) − C²_AB − C²_AC − τ|`
    pub monogamy_residual: f64,
    /// The same identity with `C²_BC` in place of `C²_AB`.
    pub monogamy_residual_bc_form: f64,
}

pub fn full_report(s: &ThreeQubitState) -> Result<EntanglementReport> {
    let tau_abc = three_tangle(s);
    let c_ab = pair_concurrence(s, Pair::AB)?;
    let c_bc = pair_concurrence(s, Pair::BC)?;
    let c_ac = pair_concurrence(s, Pair::AC)?;
    let c2_a_bc = one_vs_rest_sq(s, Qubit::A);
    Ok(EntanglementReport {
        tau_abc,
        c_ab,
        c_bc,
        c_ac,
        c2_a_bc,
        c2_b_ac: one_vs_rest_sq(s, Qubit::B),
        c2_c_ab: one_vs_rest_sq(s, Qubit::C),
        monogamy_residual: (c2_a_bc - c_ab * c_ab - c_ac * c_ac - tau_abc).abs(),
        monogamy_residual_bc_form: (c2_a_bc - c_bc * c_bc - c_ac * c_ac - tau_abc).abs(),
    })
}
