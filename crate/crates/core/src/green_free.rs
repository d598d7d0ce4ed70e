//! Homogeneous-medium dyadic Green tensors and delta-function dyadics.
//!
//! Sign convention: 𝗚 solves −∇×∇×𝗚 + n²(ω/c)²𝗚 = δ(r)Î, so the far field of
//! the transverse part is −e^{ikr}(Î − r̂⊗r̂)/(4πr) with k = nω/c.
//!
//! Distributional terms are never returned pointwise. They enter only through
//! documented weights:
//!
//! * δᵀ carries (2/3)δ(r)Î and δᴸ carries (1/3)δ(r)Î;
//! * 𝗚ᴸ carries δ(r)Î/(3k²).
//!
//! The regular part of the propagator 𝗞₀ = 𝗚₀ᵀ − δᵀ/k² has a vanishing angle
//! integral for its 1/r³ dipole term, so its volume integral over a small
//! sphere shrinks like radius². The field 𝗙 radiated by a point polarization
//! 𝗣 therefore integrates to (2/3ε₀)𝗣, entirely from the delta weight of δᵀ.
//! The electric field differs from 𝗙 by −𝗣/ε₀ at the source, which turns the
//! volume-integrated 𝗘 into −(1/3ε₀)𝗣.

use crate::dyad::{CDyad, Vec3};
use crate::error::{Error, Result};
use crate::quad::{integrate_adaptive, QuadSpec};
use crate::units::wavenumber;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Delta weight of the transverse delta dyadic.
pub const DELTA_T_WEIGHT: f64 = 2.0 / 3.0;
/// Delta weight of the longitudinal delta dyadic.
pub const DELTA_L_WEIGHT: f64 = 1.0 / 3.0;
/// Volume-integrated 𝗙 around a point source, in units of 𝗣/ε₀.
pub const VOLUME_INTEGRATED_F: f64 = DELTA_T_WEIGHT;
/// Volume-integrated 𝗘 around a point source, in units of 𝗣/ε₀.
pub const VOLUME_INTEGRATED_E: f64 = DELTA_T_WEIGHT - 1.0;

/// Below this |kr| the transverse tensor is evaluated from a power series.
const SERIES_SWITCH: f64 = 0.5;

/// Lossless homogeneous dielectric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousMedium {
    pub n: f64,
}

impl HomogeneousMedium {
    pub const VACUUM: HomogeneousMedium = HomogeneousMedium { n: 1.0 };

    pub fn new(n: f64) -> Result<Self> {
        if !(n.is_finite() && n >= 1.0) {
            return Err(Error::InvalidInput("refractive index must be >= 1".into()));
        }
        Ok(Self { n })
    }

    /// nω/c [1/λ].
    pub fn wavenumber(&self, omega: f64) -> f64 {
        self.n * wavenumber(omega)
    }
}

impl Default for HomogeneousMedium {
    fn default() -> Self {
        Self::VACUUM
    }
}

/// P(z) = 1 − z⁻¹ + z⁻².
pub fn p_fn(z: Complex64) -> Complex64 {
    1.0 - 1.0 / z + 1.0 / (z * z)
}

/// Q(z) = −1 + 3z⁻¹ − 3z⁻².
pub fn q_fn(z: Complex64) -> Complex64 {
    -1.0 + 3.0 / z - 3.0 / (z * z)
}

/// (eᶻ − 1 − z·eᶻ)/z², which stays finite as z → 0.
fn near_field_remainder(z: Complex64) -> Complex64 {
    if z.norm() < SERIES_SWITCH {
        // Σ_{m≥0} −(m+1) zᵐ/(m+2)!
        let mut term_power = Complex64::new(1.0, 0.0);
        let mut factorial = 2.0;
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 0..24 {
            acc -= term_power * ((m + 1) as f64 / factorial);
            term_power *= z;
            factorial *= (m + 3) as f64;
        }
        acc
    } else {
        let ez = z.exp();
        (ez - 1.0 - z * ez) / (z * z)
    }
}

fn split(r: &Vec3) -> Option<(f64, Vec3)> {
    let len = r.norm();
    (len > 0.0 && len.is_finite()).then(|| (len, r / len))
}

/// Î − 3r̂⊗r̂.
fn dipole_dyad(rhat: &Vec3) -> CDyad {
    CDyad::identity() - CDyad::outer(rhat, rhat) * 3.0
}

/// Transverse Green tensor 𝗚₀ᵀ(r, ω), near-field term included.
pub fn g0_transverse(r: &Vec3, medium: &HomogeneousMedium, omega: f64) -> Result<CDyad> {
    let (len, rhat) = split(r).ok_or(Error::TransverseAtOrigin)?;
    let k = medium.wavenumber(omega);
    let z = Complex64::new(0.0, k * len);
    // 𝗚₀ᵀ = −[eᶻ(Î − r̂⊗r̂) + (Î − 3r̂⊗r̂)·h(z)]/(4πr)
    let transverse = CDyad::identity() - CDyad::outer(&rhat, &rhat);
    let g = transverse * z.exp() + dipole_dyad(&rhat) * near_field_remainder(z);
    Ok(g * (-1.0 / (4.0 * PI * len)))
}

/// Regular part of the longitudinal Green tensor, (Î − 3r̂⊗r̂)/(4πk²r³).
pub fn g0_longitudinal(r: &Vec3, medium: &HomogeneousMedium, omega: f64) -> Result<CDyad> {
    let (len, rhat) = split(r).ok_or(Error::LongitudinalAtOrigin)?;
    let k = medium.wavenumber(omega);
    Ok(dipole_dyad(&rhat) * (1.0 / (4.0 * PI * k * k * len.powi(3))))
}

/// Full Green tensor 𝗚₀ = 𝗚₀ᵀ + 𝗚₀ᴸ for r ≠ 0 in its retarded form
/// −e^{ikr}[P(ikr)Î + Q(ikr)r̂⊗r̂]/(4πr).
pub fn g0(r: &Vec3, medium: &HomogeneousMedium, omega: f64) -> Result<CDyad> {
    let (len, rhat) = split(r).ok_or(Error::CoincidentPositions)?;
    let k = medium.wavenumber(omega);
    let z = Complex64::new(0.0, k * len);
    let d = CDyad::isotropic_plus_radial(p_fn(z), q_fn(z), &rhat);
    Ok(d * (-z.exp() / (4.0 * PI * len)))
}

/// Regular dipole part of the transverse delta dyadic, −(Î − 3r̂⊗r̂)/(4πr³).
pub fn delta_transverse_regular(r: &Vec3) -> Result<CDyad> {
    let (len, rhat) = split(r).ok_or(Error::DeltaAtOrigin)?;
    Ok(dipole_dyad(&rhat) * (-1.0 / (4.0 * PI * len.powi(3))))
}

/// Regular dipole part of the longitudinal delta dyadic, +(Î − 3r̂⊗r̂)/(4πr³).
pub fn delta_longitudinal_regular(r: &Vec3) -> Result<CDyad> {
    delta_transverse_regular(r).map(|d| -d)
}

/// Regular part of 𝗞₀ = 𝗚₀ᵀ − δᵀ/k² for r ≠ 0.
pub fn k0_regular(r: &Vec3, medium: &HomogeneousMedium, omega: f64) -> Result<CDyad> {
    let k = medium.wavenumber(omega);
    Ok(g0_transverse(r, medium, omega)? - delta_transverse_regular(r)? * (1.0 / (k * k)))
}

/// lim_{r→0} Im 𝗚₀ᵀ(r) = −nω/(6πc) Î, the diagonal value in 1/λ.
pub fn imaginary_part_at_origin(medium: &HomogeneousMedium, omega: f64) -> f64 {
    -medium.wavenumber(omega) / (6.0 * PI)
}

/// Volume integral of û·(regular 𝗞₀)·û over a vacuum sphere of the given
/// radius [λ] centred on a ẑ-oriented unit dipole.
///
/// Composed from nested one-dimensional rules: azimuth inside polar angle
/// inside radius.
pub fn volume_integral_sum_rule(radius: f64, omega: f64) -> Result<Complex64> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidInput("sphere radius must be > 0".into()));
    }
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::InvalidInput("frequency must be > 0".into()));
    }
    let medium = HomogeneousMedium::VACUUM;
    let u = Vec3::z();
    let k = medium.wavenumber(omega);
    let outer = QuadSpec::default()
        .with_rel_tol(1e-10)
        .with_abs_tol(1e-13 * radius * radius);

    let shell = |r: f64| -> Complex64 {
        // the static dipole term cancels over angles; resolve it relative to
        // its own magnitude
        let static_scale = 1.0 / (4.0 * PI * k * k * r.powi(3));
        let inner = QuadSpec::default()
            .with_rel_tol(1e-12)
            .with_abs_tol(1e-12 * static_scale);
        let polar = |cos_t: f64| -> Complex64 {
            let sin_t = (1.0 - cos_t * cos_t).max(0.0).sqrt();
            let azimuth = |phi: f64| -> Complex64 {
                let rv = Vec3::new(r * sin_t * phi.cos(), r * sin_t * phi.sin(), r * cos_t);
                k0_regular(&rv, &medium, omega)
                    .map(|d| d.contract(&u, &u))
                    .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
            };
            integrate_adaptive(azimuth, 0.0, 2.0 * PI, &inner)
                .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
        };
        let angular = integrate_adaptive(polar, -1.0, 1.0, &inner)
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        angular * (r * r)
    };
    integrate_adaptive(shell, 0.0, radius, &outer)
}
