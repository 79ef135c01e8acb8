use thiserror::Error;

/// Errors raised by the numerical kernel and the physics layers built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (relative residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal mass {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("invalid qubit selection {keep:?} for {n_qubits} qubits")]
    InvalidQubits { keep: Vec<usize>, n_qubits: usize },

    #[error("invalid basis label {0:?}; expected three binary digits such as \"011\"")]
    InvalidBasisLabel(String),

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("spectral parameter {modulus} is off the unit circle")]
    OffUnitCircle { modulus: f64 },

    #[error("x + 1/x vanishes; build this point from the angle form instead")]
    SingularParameterization,

    #[error("not a two-qubit density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("energy level is not separated from its neighbours (gap {gap:e})")]
    DegenerateCrossing { gap: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
