//! Dipole-dipole interaction, decay rate and radiative shift.
//!
//! An interaction in Γ₀ is (3/2)ω²μ₁μ₂·μ̂₁·𝗚·μ̂₂ with 𝗚 in 1/λ, so that a
//! single atom in free space decays at −2 Im J(r → 0) = 1.
//!
//! Near the plane only on-axis dipoles parallel to the plane are supported.
//! Their contraction is
//!
//! ```text
//! x̂·𝗚(z₁, z₂)·x̂ = (1/4π) ∫₀^∞ dk∥ k∥ [Gˢˢ + Gᵛᵛ]
//! ```
//!
//! split into a radiative part integrated over k_z ∈ [0, k₀] and an
//! evanescent part integrated over κ ∈ [0, ∞). The scattered s integrand has
//! the guided-mode pole at κ₀ = D_eff k₀²/2; it is taken as a principal value
//! plus iπ times the residue, which adds to the decay rate.
//!
//! Decay rates and shifts use only the scattered part. The free-space self
//! interaction contributes the bare rate μ²ω³ and no shift, its divergent real
//! part being absorbed into the observed transition frequency.

use crate::dyad::Vec3;
use crate::error::{Error, Result};
use crate::green_free::{g0, HomogeneousMedium};
use crate::plane_green::{guided_mode_kappa, inverse_strength, path_via_plane};
use crate::quad::{
    integrate_adaptive, integrate_evanescent_tail, integrate_principal_value, PVResult, QuadSpec,
};
use crate::system::{Dipole, PlaneMedium};
use crate::units::{coupling_prefactor, wavenumber};
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Interaction, decay rate and shift of an emitter with itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    /// Renormalized self interaction Δ − iΓ/2 [Γ₀].
    pub j: Complex64,
    /// Amplitude decay rate Γ [Γ₀].
    pub gamma: f64,
    /// Radiative shift Δ [Γ₀].
    pub delta: f64,
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::InvalidInput("frequency must be > 0".into()));
    }
    Ok(())
}

/// Free-space interaction J₁₂ [Γ₀].
pub fn j_free(d1: &Dipole, d2: &Dipole, omega: f64) -> Result<Complex64> {
    check_omega(omega)?;
    let r: Vec3 = d1.position - d2.position;
    if r.norm() == 0.0 {
        return Err(Error::CoincidentPositions);
    }
    let g = g0(&r, &HomogeneousMedium::VACUUM, omega)?;
    Ok(g.contract(&d1.orientation, &d2.orientation)
        * coupling_prefactor(omega, d1.mu_rel, d2.mu_rel))
}

/// Free-space amplitude decay rate μ²ω³ [Γ₀].
pub fn gamma_free(d: &Dipole, omega: f64) -> f64 {
    d.mu_rel * d.mu_rel * omega.powi(3)
}

fn check_plane_geometry(dipoles: &[&Dipole], plane: &PlaneMedium) -> Result<()> {
    for d in dipoles {
        if !d.is_on_axis() {
            return Err(Error::Geometry("atoms must lie on the plane normal through the origin".into()));
        }
        if !d.is_parallel_to_plane() {
            return Err(Error::Geometry("dipoles must be parallel to the plane".into()));
        }
        if plane.contains(d.z()) {
            return Err(Error::AtomOnPlane);
        }
    }
    if let [a, b] = dipoles {
        if (a.orientation - b.orientation).norm() > 1e-12 && (a.orientation + b.orientation).norm() > 1e-12 {
            return Err(Error::Geometry("dipoles must be parallel to each other".into()));
        }
    }
    Ok(())
}

fn orientation_sign(d1: &Dipole, d2: &Dipole) -> f64 {
    d1.orientation.dot(&d2.orientation).signum()
}

/// Radiative scattered integrand in k_z for plane path length `path`.
fn radiative_scattered(q: f64, path: f64, a: f64, k0: f64) -> Complex64 {
    let q = Complex64::new(q, 0.0);
    // Tˢˢ/k_z = −2/(2ak_z − i)
    let t_ss_over_q = -2.0 / (2.0 * a * q - I);
    let t_vv = -1.0 / (a - I * q / (2.0 * k0 * k0));
    -(I * q * path).exp() * 0.25 * (t_ss_over_q + q.powi(3) * t_vv / k0.powi(4))
}

/// Evanescent scattered s integrand in κ; `a` may carry a small absorption.
fn evanescent_scattered_s(kappa: f64, path: f64, a: Complex64) -> Complex64 {
    -(-kappa * path).exp() / (2.0 * (2.0 * a * kappa - 1.0))
}

/// Evanescent scattered p integrand in κ; regular for κ ≥ 0.
fn evanescent_scattered_p(kappa: f64, path: f64, a: f64, k0: f64) -> f64 {
    let t_vv = -1.0 / (a + kappa / (2.0 * k0 * k0));
    kappa.powi(3) * (-kappa * path).exp() * t_vv / (4.0 * k0.powi(4))
}

/// Scattered contraction ∫dk∥ k∥ [Gˢˢ + Gᵛᵛ]_scat split into its parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteredIntegral {
    pub radiative: Complex64,
    /// Evanescent principal value and guided-mode pole term.
    pub evanescent: PVResult,
    pub evanescent_tail: Complex64,
}

impl ScatteredIntegral {
    pub fn total(&self) -> Complex64 {
        self.radiative + self.evanescent.total() + self.evanescent_tail
    }
}

/// ∫₀^∞ dk∥ k∥ [Gˢˢ + Gᵛᵛ]_scat for plane path length `path` [λ].
pub fn scattered_k_integral(
    path: f64,
    omega: f64,
    plane: &PlaneMedium,
    spec: &QuadSpec,
) -> Result<ScatteredIntegral> {
    check_omega(omega)?;
    if !(path.is_finite() && path > 0.0) {
        return Err(Error::NonDecaying);
    }
    let k0 = wavenumber(omega);
    let a = inverse_strength(plane, omega);
    let radiative = integrate_adaptive(|q| radiative_scattered(q, path, a, k0), 0.0, k0, spec)?;

    let kappa0 = guided_mode_kappa(plane, omega);
    let ac = Complex64::new(a, 0.0);
    let evanescent_f = |kappa: f64| {
        evanescent_scattered_s(kappa, path, ac) + evanescent_scattered_p(kappa, path, a, k0)
    };
    let residue = guided_mode_residue(path, omega, plane);
    let split = 2.0 * kappa0;
    let evanescent = integrate_principal_value(evanescent_f, 0.0, split, kappa0, residue, spec)?;
    let tail = integrate_evanescent_tail(evanescent_f, split, path, spec)?;
    Ok(ScatteredIntegral {
        radiative,
        evanescent,
        evanescent_tail: tail.value,
    })
}

/// Residue of the evanescent scattered s integrand at the guided-mode pole,
/// −e^{−κ₀L}/(4a).
pub fn guided_mode_residue(path: f64, omega: f64, plane: &PlaneMedium) -> Complex64 {
    let a = inverse_strength(plane, omega);
    let kappa0 = guided_mode_kappa(plane, omega);
    Complex64::new(-(-kappa0 * path).exp() / (4.0 * a), 0.0)
}

/// Evanescent scattered s integrand with 1/D_eff shifted by `shift`, used to
/// fix the side from which the contour passes the guided-mode pole.
pub fn absorbing_evanescent_s(
    kappa: f64,
    path: f64,
    omega: f64,
    plane: &PlaneMedium,
    shift: Complex64,
) -> Complex64 {
    let a = inverse_strength(plane, omega);
    let k0 = wavenumber(omega);
    evanescent_scattered_s(kappa, path, a + shift / (k0 * k0))
}

/// Evanescent scattered s integrand on the real κ axis.
pub fn evanescent_s_integrand(kappa: f64, path: f64, omega: f64, plane: &PlaneMedium) -> Complex64 {
    absorbing_evanescent_s(kappa, path, omega, plane, Complex64::new(0.0, 0.0))
}

/// Plane-scattered interaction between on-axis dipoles parallel to the
/// plane [Γ₀]. Coincident positions are allowed.
pub fn j_scattered(d1: &Dipole, d2: &Dipole, omega: f64, plane: &PlaneMedium) -> Result<Complex64> {
    j_scattered_with(d1, d2, omega, plane, &QuadSpec::default())
}

pub fn j_scattered_with(
    d1: &Dipole,
    d2: &Dipole,
    omega: f64,
    plane: &PlaneMedium,
    spec: &QuadSpec,
) -> Result<Complex64> {
    check_plane_geometry(&[d1, d2], plane)?;
    let path = path_via_plane(d1.z(), d2.z(), plane);
    let integral = scattered_k_integral(path, omega, plane, spec)?;
    Ok(integral.total() * k_integral_prefactor(d1, d2, omega))
}

/// (3/2)ω²μ₁μ₂/(4π) with the relative orientation sign.
fn k_integral_prefactor(d1: &Dipole, d2: &Dipole, omega: f64) -> f64 {
    coupling_prefactor(omega, d1.mu_rel, d2.mu_rel) * orientation_sign(d1, d2) / (4.0 * PI)
}

/// Interaction in the presence of the plane [Γ₀]: the analytic free part
/// plus the k-space scattered part.
pub fn j_plane(d1: &Dipole, d2: &Dipole, omega: f64, plane: &PlaneMedium) -> Result<Complex64> {
    j_plane_with(d1, d2, omega, plane, &QuadSpec::default())
}

pub fn j_plane_with(
    d1: &Dipole,
    d2: &Dipole,
    omega: f64,
    plane: &PlaneMedium,
    spec: &QuadSpec,
) -> Result<Complex64> {
    check_plane_geometry(&[d1, d2], plane)?;
    Ok(j_free(d1, d2, omega)? + j_scattered_with(d1, d2, omega, plane, spec)?)
}

/// Interaction in the presence of the plane with the free part also taken
/// from the k-space integral, an independent route to [`j_plane`].
pub fn j_plane_kspace(
    d1: &Dipole,
    d2: &Dipole,
    omega: f64,
    plane: &PlaneMedium,
    spec: &QuadSpec,
) -> Result<Complex64> {
    check_plane_geometry(&[d1, d2], plane)?;
    let separation = (d1.z() - d2.z()).abs();
    if separation == 0.0 {
        return Err(Error::CoincidentPositions);
    }
    let k0 = wavenumber(omega);
    let free_radiative = integrate_adaptive(
        |q| (I * q * separation).exp() * (1.0 + q * q / (k0 * k0)) / (2.0 * I),
        0.0,
        k0,
        spec,
    )?;
    let free_evanescent = integrate_evanescent_tail(
        |kappa| {
            Complex64::new(
                -(-kappa * separation).exp() * (1.0 - kappa * kappa / (k0 * k0)) / 2.0,
                0.0,
            )
        },
        0.0,
        separation,
        spec,
    )?;
    let path = path_via_plane(d1.z(), d2.z(), plane);
    let scattered = scattered_k_integral(path, omega, plane, spec)?;
    Ok((free_radiative + free_evanescent.value + scattered.total()) * k_integral_prefactor(d1, d2, omega))
}

/// Amplitude decay rate Γ and radiative shift Δ [Γ₀] of an on-axis dipole
/// parallel to the plane.
pub fn gamma_and_delta(d: &Dipole, omega: f64, plane: &PlaneMedium) -> Result<(f64, f64)> {
    self_coupling(d, omega, plane).map(|c| (c.gamma, c.delta))
}

pub fn self_coupling(d: &Dipole, omega: f64, plane: &PlaneMedium) -> Result<Coupling> {
    self_coupling_with(d, omega, plane, &QuadSpec::default())
}

pub fn self_coupling_with(
    d: &Dipole,
    omega: f64,
    plane: &PlaneMedium,
    spec: &QuadSpec,
) -> Result<Coupling> {
    let scattered = j_scattered_with(d, d, omega, plane, spec)?;
    let gamma = gamma_free(d, omega) - 2.0 * scattered.im;
    let delta = scattered.re;
    Ok(Coupling {
        j: Complex64::new(delta, -0.5 * gamma),
        gamma,
        delta,
    })
}

/// Free-space self coupling: Γ = μ²ω³ and no shift.
pub fn self_coupling_free(d: &Dipole, omega: f64) -> Coupling {
    let gamma = gamma_free(d, omega);
    Coupling {
        j: Complex64::new(0.0, -0.5 * gamma),
        gamma,
        delta: 0.0,
    }
}
