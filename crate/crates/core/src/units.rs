//! Scaled unit system.
//!
//! Lengths are measured in the emission wavelength λ = 2πc/Ω, frequencies in
//! the bare transition frequency Ω, and all rates, shifts and interactions in
//! the free-space decay rate Γ₀ = μ²Ω³/(3πħε₀c³). Under this convention
//! λ = 1, c/Ω = 1/(2π) and Γ₀ = 1.

use std::f64::consts::PI;

pub const WAVELENGTH: f64 = 1.0;

/// c/Ω in units of λ.
pub const SPEED_OF_LIGHT: f64 = 1.0 / (2.0 * PI);

pub const GAMMA0: f64 = 1.0;

/// Converts a Green-tensor contraction μ̂₁·𝗚·μ̂₂ [λ⁻¹] at ω = Ω into an
/// interaction in Γ₀: μ²Ω²/(ħε₀c²) / Γ₀ = 3πc/Ω.
pub const COUPLING_PREFACTOR: f64 = 3.0 * PI * SPEED_OF_LIGHT;

/// Vacuum wavenumber ω/c in units of 1/λ for a frequency in units of Ω.
#[inline]
pub fn wavenumber(omega: f64) -> f64 {
    omega / SPEED_OF_LIGHT
}

/// Prefactor μ₁μ₂ω²/(ħε₀c²) expressed in Γ₀·λ for relative dipole magnitudes
/// and a frequency in units of Ω.
#[inline]
pub fn coupling_prefactor(omega: f64, mu1: f64, mu2: f64) -> f64 {
    COUPLING_PREFACTOR * omega * omega * mu1 * mu2
}

pub mod si {
    pub const HBAR: f64 = 1.054_571_817e-34;
    pub const EPSILON0: f64 = 8.854_187_812_8e-12;
    pub const C: f64 = 299_792_458.0;
}

/// Conversion between scaled observables and SI for a given transition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiScale {
    /// Transition dipole moment [C·m].
    pub dipole_moment: f64,
    /// Angular transition frequency [rad/s].
    pub omega: f64,
}

impl SiScale {
    pub fn new(dipole_moment: f64, omega: f64) -> Self {
        Self {
            dipole_moment,
            omega,
        }
    }

    /// Γ₀ in s⁻¹.
    pub fn gamma0(&self) -> f64 {
        self.dipole_moment.powi(2) * self.omega.powi(3)
            / (3.0 * std::f64::consts::PI * si::HBAR * si::EPSILON0 * si::C.powi(3))
    }

    /// λ in metres.
    pub fn wavelength(&self) -> f64 {
        2.0 * std::f64::consts::PI * si::C / self.omega
    }

    pub fn rate_to_si(&self, scaled: f64) -> f64 {
        scaled * self.gamma0()
    }

    pub fn rate_from_si(&self, rate: f64) -> f64 {
        rate / self.gamma0()
    }

    pub fn length_to_si(&self, scaled: f64) -> f64 {
        scaled * self.wavelength()
    }

    pub fn length_from_si(&self, length: f64) -> f64 {
        length / self.wavelength()
    }

    pub fn frequency_to_si(&self, scaled: f64) -> f64 {
        scaled * self.omega
    }

    pub fn frequency_from_si(&self, frequency: f64) -> f64 {
        frequency / self.omega
    }

    /// Γ₀/Ω, the dimensionless coupling strength of the transition.
    pub fn gamma0_over_omega(&self) -> f64 {
        self.gamma0() / self.omega
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn scaled_constants() {
        assert_eq!(WAVELENGTH, 1.0);
        assert!((wavenumber(1.0) - 2.0 * PI).abs() < 1e-15);
        assert!((COUPLING_PREFACTOR - 1.5).abs() < 1e-15);
    }

    #[test]
    fn wavelength_matches_definition() {
        // sodium D line, roughly
        let s = SiScale::new(2.0e-29, 3.2e15);
        let lambda = s.wavelength();
        assert!((lambda * s.omega / si::C - 2.0 * PI).abs() < 1e-12);
        assert!(s.gamma0_over_omega() < 1e-6);
    }

    proptest! {
        #[test]
        fn si_round_trip(x in -1e3f64..1e3, mu in 1e-30f64..1e-28, w in 1e14f64..1e16) {
            let s = SiScale::new(mu, w);
            let tol = 1e-12 * x.abs().max(1e-300);
            prop_assert!((s.rate_from_si(s.rate_to_si(x)) - x).abs() <= tol);
            prop_assert!((s.length_from_si(s.length_to_si(x)) - x).abs() <= tol);
            prop_assert!((s.frequency_from_si(s.frequency_to_si(x)) - x).abs() <= tol);
        }
    }
}
