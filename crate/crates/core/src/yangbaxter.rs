//! Yang-Baxterized R-matrices `R̆(θ, φ) = sinθ·I + cosθ·ℳ` for the two- and
//! three-qubit generators, the spectral-parameter map, and YBE residuals.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::braid::{build_braidset, build_m4};
use crate::error::{Error, Result};
use crate::linalg::{c64, frobenius_distance, C64, ComplexMatrix};

/// Which generator the R-matrix is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum System {
    /// 4×4, from `M`
    TwoQubit,
    /// 8×8, from `ℳ`
    ThreeQubit,
}

impl System {
    pub fn dim(self) -> usize {
        match self {
            System::TwoQubit => 4,
            System::ThreeQubit => 8,
        }
    }

    /// The anti-Hermitian generator squaring to `−I`.
    pub fn generator(self, phi: f64) -> ComplexMatrix {
        match self {
            System::TwoQubit => build_m4(phi),
            System::ThreeQubit => build_braidset(phi).mcal,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RParams {
    pub theta: f64,
    pub phi: f64,
}

impl RParams {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// Both angles wrapped into `[0, 2π)`.
    pub fn normalized(self) -> Self {
        Self {
            theta: self.theta.rem_euclid(TAU),
            phi: self.phi.rem_euclid(TAU),
        }
    }
}

/// Multiplicative spectral parameter on the unit circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralParam(C64);

impl SpectralParam {
    pub const UNIT_TOL: f64 = 1e-12;

    pub fn new(x: C64) -> Result<Self> {
        let modulus = x.norm();
        if !modulus.is_finite() || (modulus - 1.0).abs() > Self::UNIT_TOL {
            return Err(Error::OffUnitCircle { modulus });
        }
        Ok(Self(x))
    }

    /// `x = e^{iα}`
    pub fn from_arg(alpha: f64) -> Self {
        Self(C64::from_polar(1.0, alpha))
    }

    /// The point with `sinθ = (x + 1/x)/2` on the principal branch.
    pub fn from_theta(theta: f64) -> Self {
        Self::from_arg(FRAC_PI_2 - theta)
    }

    pub fn value(self) -> C64 {
        self.0
    }

    /// `θ = π/2 − arg x` with `arg ∈ (−π, π]`.
    pub fn theta(self) -> f64 {
        let mut arg = self.0.arg();
        if arg <= -PI {
            arg += TAU;
        }
        FRAC_PI_2 - arg
    }

    pub fn compose(self, other: Self) -> Self {
        // renormalise so repeated products stay on the circle
        let z = self.0 * other.0;
        Self(z / z.norm())
    }
}

/// `sinθ·I + cosθ·G(φ)` with `G = M` or `ℳ`.
pub fn r_matrix(system: System, p: RParams) -> ComplexMatrix {
    let g = system.generator(p.phi);
    let (s, c) = p.theta.sin_cos();
    &(s * &ComplexMatrix::identity(system.dim())) + &(c * &g)
}

/// The R-matrix from the spectral parameter,
/// `(x + x⁻¹)/2 · (I + (x − x⁻¹)/(x + x⁻¹) · 𝕄)` with `𝕄 = −i·G`.
pub fn r_from_spectral(system: System, x: SpectralParam, phi: f64) -> Result<ComplexMatrix> {
    let x = x.value();
    let xi = x.inv();
    let sum = x + xi;
    if sum.norm() <= SpectralParam::UNIT_TOL {
        return Err(Error::SingularParameterization);
    }
    let hermitian = c64(0.0, -1.0) * &system.generator(phi);
    let inner = &ComplexMatrix::identity(system.dim()) + &(((x - xi) / sum) * &hermitian);
    Ok((sum * 0.5) * &inner)
}

/// Frobenius norm of `R̆₁₂(x) R̆₂₃(xy) R̆₁₂(y) − R̆₂₃(y) R̆₁₂(xy) R̆₂₃(x)`,
/// with `R̆₁₂ = R̆⊗I₂` and `R̆₂₃ = I₂⊗R̆`.
///
/// For the three-qubit system the 8×8 R̆ is placed on the overlapping
/// triples (1,2,3) and (2,3,4) of a four-site chain.
pub fn ybe_residual(system: System, x: SpectralParam, y: SpectralParam, phi: f64) -> Result<f64> {
    let xy = x.compose(y);
    let id2 = ComplexMatrix::identity(2);
    let r = |z: SpectralParam| r_from_spectral(system, z, phi);
    let (rx, ry, rxy) = (r(x)?, r(y)?, r(xy)?);
    let left = |m: &ComplexMatrix| m.kron(&id2);
    let right = |m: &ComplexMatrix| id2.kron(m);
    let lhs = &(&left(&rx) * &right(&rxy)) * &left(&ry);
    let rhs = &(&right(&ry) * &left(&rxy)) * &right(&rx);
    frobenius_distance(&lhs, &rhs)
}

/// `‖R̆†R̆ − I‖_F`
pub fn unitarity_residual(system: System, p: RParams) -> f64 {
    let r = r_matrix(system, p);
    frobenius_distance(&(&r.dagger() * &r), &ComplexMatrix::identity(system.dim())).expect("square")
}
