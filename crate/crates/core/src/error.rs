use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("transverse Green tensor singular at origin; use imaginary_part_at_origin")]
    TransverseAtOrigin,

    #[error("longitudinal Green tensor is distributional at origin")]
    LongitudinalAtOrigin,

    #[error("delta dyadic is distributional at origin")]
    DeltaAtOrigin,

    #[error("k_z = 0; integrate in the k_z variable")]
    NormalWavevectorZero,

    #[error("on guided-mode pole; use pole-aware quadrature")]
    OnGuidedModePole,

    #[error(
        "quadrature did not converge within {subdivisions} subdivisions \
         (estimate {estimate}, error bound {error:e})"
    )]
    MaxSubdivisions {
        estimate: Complex64,
        error: f64,
        subdivisions: usize,
    },

    #[error("non-decaying evanescent integrand")]
    NonDecaying,

    #[error("pole {pole} outside integration interval ({a}, {b})")]
    PoleOutsideInterval { pole: f64, a: f64, b: f64 },

    #[error("coincident positions; use gamma_free / delta conventions")]
    CoincidentPositions,

    #[error("shift diverges on plane")]
    AtomOnPlane,

    #[error("unsupported geometry: {0}")]
    Geometry(String),

    #[error("at resonance pole")]
    ResonancePole,

    #[error("collective resonance at this frequency")]
    CollectiveResonance,

    #[error("degenerate pair; atoms effectively uncoupled and equivalent")]
    DegeneratePair,

    #[error("detector coincident with atom or plane")]
    DetectorPlacement,
}

impl Error {
    /// True for errors caused by a physically forbidden configuration
    /// (atom on the plane, coincident atoms) rather than a numerical failure.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::AtomOnPlane
                | Error::CoincidentPositions
                | Error::DetectorPlacement
                | Error::DegeneratePair
                | Error::NonDecaying
        )
    }
}
