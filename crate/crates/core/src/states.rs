//! Three-qubit pure states and the action of `R̆(θ, φ)` on product states.
//!
//! Qubits A, B, C are sites 0, 1, 2; A is the most significant bit, so the
//! amplitude `a_{ijk}` sits at index `4i + 2j + k`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{c64, cis, C64, ComplexMatrix, ComplexVector};
use crate::yangbaxter::{r_matrix, RParams, System};

pub const NORM_TOL: f64 = 1e-12;

/// A computational basis label `|klm⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel(u8);

impl BasisLabel {
    pub fn all() -> impl Iterator<Item = BasisLabel> {
        (0..8).map(BasisLabel)
    }

    pub fn from_index(index: usize) -> Result<Self> {
        if index < 8 {
            Ok(Self(index as u8))
        } else {
            Err(Error::InvalidBasisLabel(index.to_string()))
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl FromStr for BasisLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('|').trim_end_matches('>').trim_end_matches('⟩');
        if s.len() != 3 || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidBasisLabel(s.to_string()));
        }
        Ok(Self(u8::from_str_radix(s, 2).expect("binary digits")))
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:03b}", self.0)
    }
}

/// Normalized pure state of three qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeQubitState {
    amplitudes: ComplexVector,
}

impl ThreeQubitState {
    pub fn new(amplitudes: ComplexVector) -> Result<Self> {
        if amplitudes.dim() != 8 {
            return Err(Error::DimensionMismatch {
                op: "ThreeQubitState::new",
                left: (amplitudes.dim(), 1),
                right: (8, 1),
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalize(amplitudes: ComplexVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        Self::new(amplitudes.normalized())
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amplitudes
    }

    /// `a_{ijk}`
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> C64 {
        self.amplitudes.get(4 * i + 2 * j + k)
    }

    pub fn density_matrix(&self) -> ComplexMatrix {
        self.amplitudes.projector()
    }

    /// `(|000⟩ + |111⟩)/√2`
    pub fn ghz() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = vec![c64(0.0, 0.0); 8];
        v[0] = c64(r, 0.0);
        v[7] = c64(r, 0.0);
        Self::new(ComplexVector::new(v)).expect("normalized")
    }

    /// `(|001⟩ + |010⟩ + |100⟩)/√3`
    pub fn w() -> Self {
        let r = 1.0 / 3f64.sqrt();
        let mut v = vec![c64(0.0, 0.0); 8];
        for k in [1, 2, 4] {
            v[k] = c64(r, 0.0);
        }
        Self::new(ComplexVector::new(v)).expect("normalized")
    }
}

pub fn basis_state(label: BasisLabel) -> ThreeQubitState {
    ThreeQubitState {
        amplitudes: ComplexVector::basis(8, label.index()),
    }
}

/// `R̆(θ, φ)|s⟩`. The result must already be normalized since R̆ is unitary;
/// a norm drift beyond [`NORM_TOL`] is reported as an error.
pub fn apply_r(p: RParams, s: &ThreeQubitState) -> Result<ThreeQubitState> {
    let out = r_matrix(System::ThreeQubit, p).apply(s.amplitudes())?;
    ThreeQubitState::new(out)
}

/// `R̆(θ, φ)` on the two-qubit basis state `|k⟩`, `k ∈ 0..4`.
pub fn apply_r_two_qubit(p: RParams, k: usize) -> Result<ComplexVector> {
    if k >= 4 {
        return Err(Error::InvalidBasisLabel(k.to_string()));
    }
    r_matrix(System::TwoQubit, p).apply(&ComplexVector::basis(4, k))
}

/// Closed-form image of a basis state under `R̆(θ, φ)`, transcribed term by
/// term from the reference table. Used to cross-check [`apply_r`].
pub fn closed_form_image(label: BasisLabel, p: RParams) -> ComplexVector {
    let (s, c) = p.theta.sin_cos();
    let q = c / 3f64.sqrt();
    let e = cis(p.phi);
    let f = cis(-p.phi);
    let one = c64(1.0, 0.0);
    // (index, coefficient) pairs; index 0b011 is |011⟩
    let terms: Vec<(usize, C64)> = match label.index() {
        0b000 => vec![(0b000, one * s), (0b011, -e * q), (0b101, -e * q), (0b110, -e * q)],
        0b001 => vec![(0b001, one * s), (0b010, -one * q), (0b100, -one * q), (0b111, -e * q)],
        0b010 => vec![(0b010, one * s), (0b001, one * q), (0b100, -one * q), (0b111, e * q)],
        0b011 => vec![(0b011, one * s), (0b000, f * q), (0b101, -one * q), (0b110, one * q)],
        0b100 => vec![(0b100, one * s), (0b001, one * q), (0b010, one * q), (0b111, -e * q)],
        0b101 => vec![(0b101, one * s), (0b000, f * q), (0b011, one * q), (0b110, -one * q)],
        0b110 => vec![(0b110, one * s), (0b000, f * q), (0b011, -one * q), (0b101, one * q)],
        _ => vec![(0b111, one * s), (0b001, f * q), (0b010, -f * q), (0b100, f * q)],
    };
    let mut v = vec![c64(0.0, 0.0); 8];
    for (i, z) in terms {
        v[i] += z;
    }
    ComplexVector::new(v)
}
