//! Multiple-scattering engine for point-dipole emitters in inhomogeneous
//! lossless dielectrics, specialised to free space and a partially reflecting
//! plane.
//!
//! All quantities use the scaled units of [`units`]: lengths in λ, rates and
//! interactions in Γ₀, frequencies in Ω.

pub mod coupling;
pub mod dyad;
pub mod error;
pub mod green_free;
pub mod multiatom;
pub mod plane_green;
pub mod quad;
pub mod spectral;
pub mod superradiance;
pub mod sweep;
pub mod system;
pub mod units;

pub use dyad::{contract, CDyad, Vec3};
pub use error::{Error, Result};
pub use quad::QuadSpec;
pub use system::{Dipole, PlaneMedium};
