//! Partially reflecting plane in the in-plane wavevector representation.
//!
//! For a fixed in-plane wavevector k∥ the field separates into s and p
//! channels. The plane acts as a point scatterer in z with T-matrices
//!
//! ```text
//! Tˢˢ = −1/(a − i/(2k_z)),   Tᵛᵛ = −1/(a − i k_z/(2k₀²)),   a = 1/(D_eff k₀²)
//! ```
//!
//! and the scattered Green components are G₀(z₁, z_p)·T·G₀(z_p, z₂), where
//! the vv channel uses G₀ᵛᵛ = (k_z/k₀)²G₀ˢˢ.
//!
//! The public k∥ functions refuse k_z = 0. The `*_kz` forms take k_z
//! directly; callers integrating across the light line use those, with
//! k_z = iκ on the evanescent side.

use crate::error::{Error, Result};
use crate::quad::{integrate_real, QuadSpec};
use crate::system::PlaneMedium;
use crate::units::wavenumber;
use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Distance from the guided-mode pole below which Tˢˢ is refused.
const POLE_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// k∥ < ω/c, real k_z.
    Radiative,
    /// k∥ > ω/c, k_z = iκ.
    Evanescent,
}

/// Total (free plus scattered) s and p Green components at one k∥.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KSpaceGreen {
    pub k_par: f64,
    pub k_z: Complex64,
    pub g_ss: Complex64,
    pub g_vv: Complex64,
    pub regime: Regime,
}

/// Normal wavevector sqrt(k₀² − k∥²) on the branch Im k_z ≥ 0.
pub fn kz(k_par: f64, omega: f64) -> Complex64 {
    let k0 = wavenumber(omega);
    let d = (k0 - k_par) * (k0 + k_par);
    if d >= 0.0 {
        Complex64::new(d.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-d).sqrt())
    }
}

pub fn regime(k_par: f64, omega: f64) -> Regime {
    if k_par < wavenumber(omega) {
        Regime::Radiative
    } else {
        Regime::Evanescent
    }
}

/// 1/(D_eff k₀²), the inverse scattering strength of the plane.
pub fn inverse_strength(plane: &PlaneMedium, omega: f64) -> f64 {
    let k0 = wavenumber(omega);
    1.0 / (plane.d_eff * k0 * k0)
}

/// κ₀ = D_eff k₀²/2, location of the s-polarized guided mode.
pub fn guided_mode_kappa(plane: &PlaneMedium, omega: f64) -> f64 {
    let k0 = wavenumber(omega);
    0.5 * plane.d_eff * k0 * k0
}

fn check_k_par(k_par: f64) -> Result<()> {
    if !(k_par.is_finite() && k_par >= 0.0) {
        return Err(Error::InvalidInput("k_par must be finite and >= 0".into()));
    }
    Ok(())
}

fn nonzero_kz(k_par: f64, omega: f64) -> Result<Complex64> {
    check_k_par(k_par)?;
    let q = kz(k_par, omega);
    if q.norm() <= 1e-12 * wavenumber(omega) {
        return Err(Error::NormalWavevectorZero);
    }
    Ok(q)
}

/// e^{ik_z|Δz|}/(2ik_z).
pub fn g0_ss_kz(q: Complex64, dz: f64) -> Complex64 {
    (I * q * dz.abs()).exp() / (2.0 * I * q)
}

/// (k_z/k₀)²·e^{ik_z|Δz|}/(2ik_z).
pub fn g0_vv_kz(q: Complex64, dz: f64, omega: f64) -> Complex64 {
    let k0 = wavenumber(omega);
    g0_ss_kz(q, dz) * (q * q / (k0 * k0))
}

/// Tˢˢ for a given normal wavevector; vanishes at k_z = 0.
pub fn t_ss_kz(q: Complex64, omega: f64, plane: &PlaneMedium) -> Complex64 {
    let a = inverse_strength(plane, omega);
    // −1/(a − i/(2q)) = −2q/(2aq − i)
    -2.0 * q / (2.0 * a * q - I)
}

/// Tᵛᵛ for a given normal wavevector.
pub fn t_vv_kz(q: Complex64, omega: f64, plane: &PlaneMedium) -> Complex64 {
    let a = inverse_strength(plane, omega);
    let k0 = wavenumber(omega);
    -1.0 / (a - I * q / (2.0 * k0 * k0))
}

pub fn g0_ss(k_par: f64, z1: f64, z2: f64, omega: f64) -> Result<Complex64> {
    Ok(g0_ss_kz(nonzero_kz(k_par, omega)?, z1 - z2))
}

pub fn g0_vv(k_par: f64, z1: f64, z2: f64, omega: f64) -> Result<Complex64> {
    Ok(g0_vv_kz(nonzero_kz(k_par, omega)?, z1 - z2, omega))
}

pub fn t_ss(k_par: f64, omega: f64, plane: &PlaneMedium) -> Result<Complex64> {
    check_k_par(k_par)?;
    let q = kz(k_par, omega);
    if regime(k_par, omega) == Regime::Evanescent
        && (q.im - guided_mode_kappa(plane, omega)).abs() < POLE_GUARD
    {
        return Err(Error::OnGuidedModePole);
    }
    Ok(t_ss_kz(q, omega, plane))
}

pub fn t_vv(k_par: f64, omega: f64, plane: &PlaneMedium) -> Result<Complex64> {
    check_k_par(k_par)?;
    Ok(t_vv_kz(kz(k_par, omega), omega, plane))
}

/// Combined plane distance |z₁ − z_p| + |z₂ − z_p|.
pub fn path_via_plane(z1: f64, z2: f64, plane: &PlaneMedium) -> f64 {
    plane.distance(z1) + plane.distance(z2)
}

/// Scattered s component −e^{ik_zL}Tˢˢ/(4k_z²).
pub fn g_scattered_ss(
    k_par: f64,
    z1: f64,
    z2: f64,
    omega: f64,
    plane: &PlaneMedium,
) -> Result<Complex64> {
    let q = nonzero_kz(k_par, omega)?;
    let t = t_ss(k_par, omega, plane)?;
    let path = path_via_plane(z1, z2, plane);
    Ok(-(I * q * path).exp() * t / (4.0 * q * q))
}

/// Scattered p component −k_z²e^{ik_zL}Tᵛᵛ/(4k₀⁴).
pub fn g_scattered_vv(
    k_par: f64,
    z1: f64,
    z2: f64,
    omega: f64,
    plane: &PlaneMedium,
) -> Result<Complex64> {
    let q = nonzero_kz(k_par, omega)?;
    let t = t_vv(k_par, omega, plane)?;
    let k0 = wavenumber(omega);
    let path = path_via_plane(z1, z2, plane);
    Ok(-(I * q * path).exp() * t * q * q / (4.0 * k0.powi(4)))
}

/// Free plus scattered components at one k∥.
pub fn k_space_green(
    k_par: f64,
    z1: f64,
    z2: f64,
    omega: f64,
    plane: &PlaneMedium,
) -> Result<KSpaceGreen> {
    let k_z = nonzero_kz(k_par, omega)?;
    Ok(KSpaceGreen {
        k_par,
        k_z,
        g_ss: g0_ss_kz(k_z, z1 - z2) + g_scattered_ss(k_par, z1, z2, omega, plane)?,
        g_vv: g0_vv_kz(k_z, z1 - z2, omega) + g_scattered_vv(k_par, z1, z2, omega, plane)?,
        regime: regime(k_par, omega),
    })
}

/// Transmission amplitude 1 + Tˢˢ/(2ik_z) for a radiative s wave.
pub fn s_transmission_amplitude(k_par: f64, omega: f64, plane: &PlaneMedium) -> Result<Complex64> {
    let q = radiative_kz(k_par, omega)?;
    Ok(1.0 + t_ss_kz(q, omega, plane) / (2.0 * I * q))
}

/// Reflection amplitude Tˢˢ/(2ik_z) for a radiative s wave.
pub fn s_reflection_amplitude(k_par: f64, omega: f64, plane: &PlaneMedium) -> Result<Complex64> {
    let q = radiative_kz(k_par, omega)?;
    Ok(t_ss_kz(q, omega, plane) / (2.0 * I * q))
}

/// Transmission amplitude 1 + Tᵛᵛk_z/(2ik₀²) for a radiative p wave.
pub fn p_transmission_amplitude(k_par: f64, omega: f64, plane: &PlaneMedium) -> Result<Complex64> {
    Ok(1.0 + p_reflection_amplitude(k_par, omega, plane)?)
}

/// Reflection amplitude Tᵛᵛk_z/(2ik₀²) for a radiative p wave.
pub fn p_reflection_amplitude(k_par: f64, omega: f64, plane: &PlaneMedium) -> Result<Complex64> {
    let q = radiative_kz(k_par, omega)?;
    let k0 = wavenumber(omega);
    Ok(t_vv_kz(q, omega, plane) * q / (2.0 * I * k0 * k0))
}

fn radiative_kz(k_par: f64, omega: f64) -> Result<Complex64> {
    let q = nonzero_kz(k_par, omega)?;
    if regime(k_par, omega) != Regime::Radiative {
        return Err(Error::InvalidInput("transmission needs a radiative wave".into()));
    }
    Ok(q)
}

/// |t|² averaged over incidence directions of one half space,
/// ∫₀¹ |t(cos θ)|² d(cos θ).
pub fn angle_averaged_s_transmission(plane: &PlaneMedium, omega: f64) -> Result<f64> {
    let k0 = wavenumber(omega);
    let a = inverse_strength(plane, omega);
    // |t|² = 4a²k_z²/(4a²k_z² + 1)
    let power = |cos_t: f64| {
        let x = 2.0 * a * k0 * cos_t;
        x * x / (x * x + 1.0)
    };
    let spec = QuadSpec::default().with_rel_tol(1e-12).with_abs_tol(1e-15);
    integrate_real(power, 0.0, 1.0, &spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const K0: f64 = 2.0 * PI;

    fn plane() -> PlaneMedium {
        PlaneMedium::new(0.4, 0.23).unwrap()
    }

    #[test]
    fn normal_wavevector_branch() {
        assert!((kz(0.0, 1.0) - K0).norm() < 1e-15);
        let q = kz(2.0 * K0, 1.0);
        assert!(q.re == 0.0 && (q.im - 3f64.sqrt() * K0).abs() < 1e-12);
        for i in 0..200 {
            let kp = 0.05 * i as f64;
            let q = kz(kp, 1.0);
            assert!(q.im >= 0.0);
            assert!((I * q * 3.7).exp().norm() <= 1.0 + 1e-15);
        }
        assert_eq!(regime(1.0, 1.0), Regime::Radiative);
        assert_eq!(regime(7.0, 1.0), Regime::Evanescent);
    }

    #[test]
    fn free_component_examples() {
        let g = g0_ss(0.0, 0.3, 0.3, 1.0).unwrap();
        assert!((g - 1.0 / (2.0 * I * K0)).norm() < 1e-15);
        let kp = 9.0;
        let kappa = (kp * kp - K0 * K0).sqrt();
        let g = g0_ss(kp, 0.1, 0.6, 1.0).unwrap();
        let want = Complex64::new(-(-kappa * 0.5).exp() / (2.0 * kappa), 0.0);
        assert!((g - want).norm() < 1e-15);
        assert_eq!(g0_ss(K0, 0.0, 1.0, 1.0).unwrap_err(), Error::NormalWavevectorZero);
        assert!(g0_ss(-1.0, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn evanescent_product_decays_at_twice_kappa() {
        let kp = 8.0;
        let kappa = kz(kp, 1.0).im;
        let prod = |d: f64| (g0_ss(kp, 0.0, d, 1.0).unwrap() * g0_ss(kp, d, 0.0, 1.0).unwrap()).norm();
        let ratio = prod(3.0) / prod(2.0);
        assert!((ratio.ln() + 2.0 * kappa).abs() < 1e-10);
    }

    #[test]
    fn guided_mode_pole() {
        let p = plane();
        let kappa0 = guided_mode_kappa(&p, 1.0);
        assert!((kappa0 - 0.23 * K0 * K0 / 2.0).abs() < 1e-12);
        let kp = (kappa0 * kappa0 + K0 * K0).sqrt();
        assert_eq!(t_ss(kp, 1.0, &p).unwrap_err(), Error::OnGuidedModePole);
        assert!(t_vv(kp, 1.0, &p).unwrap().norm().is_finite());
        // the real denominator of Tˢˢ changes sign across κ₀
        let a = inverse_strength(&p, 1.0);
        assert!((a - 1.0 / (2.0 * kappa0)).abs() < 1e-15);
    }

    #[test]
    fn vanishing_plane_has_no_scattering() {
        let p = PlaneMedium::new(0.4, 1e-12).unwrap();
        for kp in [0.0, 3.0, 9.0] {
            assert!(t_ss(kp, 1.0, &p).unwrap().norm() < 1e-9);
            assert!(t_vv(kp, 1.0, &p).unwrap().norm() < 1e-9);
            assert!(g_scattered_ss(kp, 0.0, 1.0, 1.0, &p).unwrap().norm() < 1e-10);
        }
    }

    #[test]
    fn normal_incidence_degeneracy() {
        let p = plane();
        let ts = t_ss(0.0, 1.0, &p).unwrap();
        let tv = t_vv(0.0, 1.0, &p).unwrap();
        assert!((ts.norm() - tv.norm()).abs() < 1e-14 * ts.norm());
        let a = s_transmission_amplitude(0.0, 1.0, &p).unwrap();
        let b = p_transmission_amplitude(0.0, 1.0, &p).unwrap();
        assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn flux_conservation() {
        let p = plane();
        for i in 0..50 {
            let kp = K0 * (i as f64 + 0.5) / 50.0;
            let t = s_transmission_amplitude(kp, 1.0, &p).unwrap();
            let r = s_reflection_amplitude(kp, 1.0, &p).unwrap();
            assert!((t.norm_sqr() + r.norm_sqr() - 1.0).abs() < 1e-13);
            let t = p_transmission_amplitude(kp, 1.0, &p).unwrap();
            let r = p_reflection_amplitude(kp, 1.0, &p).unwrap();
            assert!((t.norm_sqr() + r.norm_sqr() - 1.0).abs() < 1e-13);
        }
        assert!(s_transmission_amplitude(2.0 * K0, 1.0, &p).is_err());
    }

    #[test]
    fn no_pole_in_p_channel() {
        let p = plane();
        let a = inverse_strength(&p, 1.0);
        // real denominator of Tᵛᵛ(iκ) is a + κ/(2k₀²)
        let mut prev = a;
        for i in 1..=10_000 {
            let kappa = 10.0 * K0 * i as f64 / 10_000.0;
            let den = (1.0 / -t_vv_kz(I * kappa, 1.0, &p)).re;
            assert!(den > 0.0 && den >= prev);
            prev = den;
        }
    }

    #[test]
    fn scattered_components_depend_only_on_path() {
        let kp = 3.0;
        let a = g_scattered_ss(kp, 0.0, 1.0, 1.0, &PlaneMedium::new(0.3, 0.23).unwrap()).unwrap();
        let b = g_scattered_ss(kp, 0.0, 1.0, 1.0, &PlaneMedium::new(0.8, 0.23).unwrap()).unwrap();
        assert!((a - b).norm() < 1e-14 * a.norm());
        let a = g_scattered_vv(kp, 0.0, 1.0, 1.0, &PlaneMedium::new(0.3, 0.23).unwrap()).unwrap();
        let b = g_scattered_vv(kp, 0.0, 1.0, 1.0, &PlaneMedium::new(0.8, 0.23).unwrap()).unwrap();
        assert!((a - b).norm() < 1e-14 * a.norm());
        // both atoms on one side, fixed path: slide everything together
        let pa = PlaneMedium::new(1.0, 0.23).unwrap();
        let pb = PlaneMedium::new(1.25, 0.23).unwrap();
        let a = g_scattered_ss(kp, 0.2, 0.5, 1.0, &pa).unwrap();
        let b = g_scattered_ss(kp, 0.45, 0.75, 1.0, &pb).unwrap();
        assert!((a - b).norm() < 1e-10 * a.norm());
    }

    #[test]
    fn far_evanescent_scattering_is_negligible() {
        let p = PlaneMedium::new(50.0, 0.23).unwrap();
        let kp = (1.0 + K0 * K0).sqrt();
        let g = g_scattered_ss(kp, 0.0, 0.0, 1.0, &p).unwrap();
        assert!(g.norm() < (-99.0f64).exp());
    }

    #[test]
    fn total_components_add_free_part() {
        let p = plane();
        let g = k_space_green(2.0, 0.0, 1.0, 1.0, &p).unwrap();
        let free = g0_ss(2.0, 0.0, 1.0, 1.0).unwrap();
        let scat = g_scattered_ss(2.0, 0.0, 1.0, 1.0, &p).unwrap();
        assert!((g.g_ss - free - scat).norm() < 1e-15);
        assert_eq!(g.regime, Regime::Radiative);
    }

    #[test]
    fn transmission_values() {
        let t = angle_averaged_s_transmission(&plane(), 1.0).unwrap();
        // closed form 1 − arctan(b)/b with b = 2aK0
        let b = 2.0 * inverse_strength(&plane(), 1.0) * K0;
        assert!((t - (1.0 - b.atan() / b)).abs() < 1e-12);
        assert!((t - 0.32).abs() < 0.01, "{t}");
        let mirror = angle_averaged_s_transmission(&PlaneMedium::new(0.4, 100.0).unwrap(), 1.0).unwrap();
        assert!(mirror < 0.01);
        let clear = angle_averaged_s_transmission(&PlaneMedium::new(0.4, 1e-8).unwrap(), 1.0).unwrap();
        assert!((clear - 1.0).abs() < 1e-6);
    }

    #[test]
    fn opacity_grows_with_thickness() {
        let vals: Vec<f64> = (1..=10)
            .map(|i| {
                let p = PlaneMedium::new(0.0, 0.05 * i as f64).unwrap();
                angle_averaged_s_transmission(&p, 1.0).unwrap()
            })
            .collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
    }
}
