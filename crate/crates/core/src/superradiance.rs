//! Two-atom collective resonances and emitted intensity.
//!
//! In the pole approximation the pair resonances are
//!
//! ```text
//! Ω± = Ω + (X₁ + X₂)/2 ± sqrt(((X₁ − X₂)/2)² + J₁₂²)
//! ```
//!
//! with Xᵢ = Δᵢ − iΓᵢ/2 and J₁₂ evaluated at Ω. Everything here is stored as
//! an offset from Ω in units of Γ₀, and times are in 1/Γ₀.

use crate::coupling::{j_free, j_plane_with, self_coupling_free, self_coupling_with};
use crate::error::{Error, Result};
use crate::green_free::{g0, HomogeneousMedium};
use crate::multiatom::{AtomSystem, Medium};
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);
const DEGENERATE: f64 = 1e-14;

/// Self interactions and mutual interaction of a pair [Γ₀].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCouplings {
    pub x1: Complex64,
    pub x2: Complex64,
    pub j: Complex64,
}

/// Pair resonances and source-amplitude factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSolution {
    pub couplings: PairCouplings,
    /// Ω₊ − Ω [Γ₀].
    pub omega_plus: Complex64,
    /// Ω₋ − Ω [Γ₀].
    pub omega_minus: Complex64,
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    pub shift_plus: f64,
    pub shift_minus: f64,
    /// Complex inhomogeneity angle.
    pub alpha: Complex64,
    pub sin_alpha: Complex64,
    pub cos_alpha: Complex64,
    /// Λ = Ω₊ − Ω₋.
    pub lambda_cap: Complex64,
    pub c1_plus: Complex64,
    pub c1_minus: Complex64,
    pub c2: Complex64,
}

impl PairSolution {
    /// |C₂/C₁₊|, the relative source strength of the second atom.
    pub fn amplitude_ratio(&self) -> f64 {
        (self.c2 / self.c1_plus).norm()
    }
}

/// Initial single excitation p|1⟩ + e^{iφ}sqrt(1 − p²)|2⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialState {
    pub p: f64,
    pub phi: f64,
}

impl InitialState {
    pub fn new(p: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || !phi.is_finite() {
            return Err(Error::InvalidInput("p must lie in [0, 1] and phi be finite".into()));
        }
        Ok(Self { p, phi })
    }

    /// Symmetric Dicke state, p = 1/√2, φ = 0.
    pub fn symmetric() -> Self {
        Self {
            p: std::f64::consts::FRAC_1_SQRT_2,
            phi: 0.0,
        }
    }
}

fn common_omega(sys: &AtomSystem) -> Result<f64> {
    let omega = sys.atoms[0].omega;
    if sys.atoms.iter().any(|a| (a.omega - omega).abs() > 1e-12) {
        return Err(Error::InvalidInput("pair dynamics needs identical transition frequencies".into()));
    }
    Ok(omega)
}

fn self_interaction(sys: &AtomSystem, i: usize, omega: f64) -> Result<Complex64> {
    let d = &sys.atoms[i];
    Ok(match sys.medium {
        Medium::Free => self_coupling_free(d, omega).j,
        Medium::Plane(plane) => self_coupling_with(d, omega, &plane, &sys.quad)?.j,
    })
}

fn mutual_interaction(sys: &AtomSystem, omega: f64) -> Result<Complex64> {
    let (a, b) = (&sys.atoms[0], &sys.atoms[1]);
    match sys.medium {
        Medium::Free => j_free(a, b, omega),
        Medium::Plane(plane) => j_plane_with(a, b, omega, &plane, &sys.quad),
    }
}

/// X₁, X₂ and J₁₂ of a two-atom system.
pub fn pair_couplings(sys: &AtomSystem) -> Result<PairCouplings> {
    if sys.len() != 2 {
        return Err(Error::InvalidInput("pair dynamics needs exactly two atoms".into()));
    }
    let omega = common_omega(sys)?;
    Ok(PairCouplings {
        x1: self_interaction(sys, 0, omega)?,
        x2: self_interaction(sys, 1, omega)?,
        j: mutual_interaction(sys, omega)?,
    })
}

/// Pair resonances; with a seed the square-root branch continuing the seed's
/// Λ = Ω₊ − Ω₋ is taken, otherwise the principal branch.
pub fn pair_solution(sys: &AtomSystem, branch_seed: Option<&PairSolution>) -> Result<PairSolution> {
    solve_pair(pair_couplings(sys)?, branch_seed)
}

/// Which root is labelled Ω₊.
#[derive(Debug, Clone, Copy)]
pub enum Branch<'a> {
    Principal,
    /// Keep Λ on the same side as a neighbouring solution. Continuity of the
    /// direction of Λ survives the divergence of X₂ at the plane, where
    /// nearest-Ω₊ hopping jumps to the other root.
    Continue(&'a PairSolution),
    /// Ω₊ is the faster-decaying root.
    Superradiant,
}

pub fn solve_pair(c: PairCouplings, branch_seed: Option<&PairSolution>) -> Result<PairSolution> {
    solve_pair_on(c, branch_seed.map_or(Branch::Principal, Branch::Continue))
}

pub fn solve_pair_on(c: PairCouplings, branch: Branch) -> Result<PairSolution> {
    let mean = (c.x1 + c.x2) * 0.5;
    let half_diff = (c.x1 - c.x2) * 0.5;
    let mut root = (half_diff * half_diff + c.j * c.j).sqrt();
    let flip = match branch {
        Branch::Principal => false,
        Branch::Continue(seed) => (root * seed.lambda_cap.conj()).re < 0.0,
        Branch::Superradiant => root.im > 0.0,
    };
    if flip {
        root = -root;
    }
    let omega_plus = mean + root;
    let omega_minus = mean - root;
    let lambda_cap = root * 2.0;
    let (alpha, sin_alpha, cos_alpha) = angle(c.x1 - c.x2, c.j, lambda_cap)?;
    Ok(PairSolution {
        couplings: c,
        omega_plus,
        omega_minus,
        gamma_plus: -2.0 * omega_plus.im,
        gamma_minus: -2.0 * omega_minus.im,
        shift_plus: omega_plus.re,
        shift_minus: omega_minus.re,
        alpha,
        sin_alpha,
        cos_alpha,
        lambda_cap,
        c1_plus: 1.0 + sin_alpha,
        c1_minus: 1.0 - sin_alpha,
        c2: cos_alpha,
    })
}

fn angle(detuning: Complex64, j: Complex64, lambda_cap: Complex64) -> Result<(Complex64, Complex64, Complex64)> {
    if lambda_cap.norm() < DEGENERATE {
        return Err(Error::DegeneratePair);
    }
    let s = detuning / lambda_cap;
    let c = j * 2.0 / lambda_cap;
    // α = −i ln(cos α + i sin α)
    let alpha = -I * (c + I * s).ln();
    Ok((alpha, s, c))
}

/// (α, C₁₊, C₁₋, C₂) of a solved pair.
pub fn alpha_and_amplitudes(sol: &PairSolution) -> Result<(Complex64, Complex64, Complex64, Complex64)> {
    angle(sol.couplings.x1 - sol.couplings.x2, sol.couplings.j, sol.lambda_cap)?;
    Ok((sol.alpha, sol.c1_plus, sol.c1_minus, sol.c2))
}

/// x̂·𝗞(detector, atom)·μ̂ for on-axis geometry [1/λ].
fn propagator(sys: &AtomSystem, detector_z: f64, atom: usize, omega: f64) -> Result<Complex64> {
    let d = &sys.atoms[atom];
    let r = crate::dyad::Vec3::new(0.0, 0.0, detector_z) - d.position;
    let u = d.orientation;
    let free = g0(&r, &HomogeneousMedium::VACUUM, omega)?.contract(&u, &u);
    match sys.medium {
        Medium::Free => Ok(free),
        Medium::Plane(plane) => {
            let path = plane.distance(detector_z) + plane.distance(d.z());
            let scat = crate::coupling::scattered_k_integral(path, omega, &plane, &sys.quad)?;
            Ok(free + scat.total() / (4.0 * PI))
        }
    }
}

fn check_detector(sys: &AtomSystem, detector_z: f64) -> Result<()> {
    if !detector_z.is_finite() {
        return Err(Error::InvalidInput("detector position must be finite".into()));
    }
    if sys.atoms.iter().any(|a| !a.is_on_axis() || a.z() == detector_z) {
        return Err(Error::DetectorPlacement);
    }
    if let Medium::Plane(plane) = sys.medium {
        if plane.contains(detector_z) {
            return Err(Error::DetectorPlacement);
        }
    }
    Ok(())
}

/// ⟨I(t)⟩ at an on-axis detector for one or two atoms sharing one
/// excitation, normalized to the initial free-space intensity of atom 1 alone
/// at the same distance.
pub fn intensity_trace(
    sys: &AtomSystem,
    state: InitialState,
    detector_z: f64,
    t_grid: &[f64],
) -> Result<Vec<f64>> {
    check_detector(sys, detector_z)?;
    let omega = common_omega(sys)?;
    let nearest = sys
        .atoms
        .iter()
        .map(|a| (a.z() - detector_z).abs())
        .fold(f64::INFINITY, f64::min);
    // optical delay in 1/Γ₀: distance/c = 2π·distance/Ω
    let delay = 2.0 * PI * nearest * sys.gamma0_over_omega;
    let reference = {
        let r = crate::dyad::Vec3::new(0.0, 0.0, detector_z) - sys.atoms[0].position;
        let u = sys.atoms[0].orientation;
        g0(&r, &HomogeneousMedium::VACUUM, omega)?.contract(&u, &u).norm_sqr()
    };
    let k1 = propagator(sys, detector_z, 0, omega)?;

    let amplitude: Box<dyn Fn(f64) -> Complex64> = match sys.len() {
        1 => {
            let x = self_interaction(sys, 0, omega)?;
            let p = state.p;
            Box::new(move |t| (-I * x * t).exp() * k1 * p)
        }
        2 => {
            let sol = pair_solution(sys, None)?;
            let k2 = propagator(sys, detector_z, 1, omega)?
                * sys.atoms[0].orientation.dot(&sys.atoms[1].orientation).signum();
            let (s, c) = (sol.sin_alpha, sol.cos_alpha);
            let (wp, wm) = (sol.omega_plus, sol.omega_minus);
            let b1 = Complex64::new(state.p, 0.0);
            let b2 = Complex64::from_polar((1.0 - state.p * state.p).max(0.0).sqrt(), state.phi);
            Box::new(move |t| {
                let ep = (-I * wp * t).exp() * 0.5;
                let em = (-I * wm * t).exp() * 0.5;
                // L₂ follows from L₁ by swapping the atoms, which flips sin α
                let l1 = ep * (k1 * (1.0 + s) + k2 * c) + em * (k1 * (1.0 - s) - k2 * c);
                let l2 = ep * (k2 * (1.0 - s) + k1 * c) + em * (k2 * (1.0 + s) - k1 * c);
                b1 * l1 + b2 * l2
            })
        }
        _ => return Err(Error::InvalidInput("intensity traces support one or two atoms".into())),
    };
    Ok(t_grid
        .iter()
        .map(|&t| if t < delay { 0.0 } else { amplitude(t).norm_sqr() / reference })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{Dipole, PlaneMedium};

    fn free_pair(sep: f64) -> AtomSystem {
        AtomSystem::new(vec![Dipole::on_axis(0.0), Dipole::on_axis(sep)], Medium::Free).unwrap()
    }

    #[test]
    fn coincident_free_pair_is_super_and_subradiant() {
        let sol = pair_solution(&free_pair(1e-4), None).unwrap();
        assert!((sol.gamma_plus - 2.0).abs() < 1e-6);
        assert!(sol.gamma_minus.abs() < 1e-6);
        assert!(sol.alpha.norm() < 1e-12);
        assert!((sol.amplitude_ratio() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn uncoupled_atoms_keep_their_own_resonances() {
        let c = PairCouplings {
            x1: Complex64::new(0.3, -0.6),
            x2: Complex64::new(-0.1, -0.4),
            j: Complex64::new(0.0, 0.0),
        };
        let sol = solve_pair(c, None).unwrap();
        let mut got = [sol.omega_plus, sol.omega_minus];
        got.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((got[0] - c.x2).norm() < 1e-15 && (got[1] - c.x1).norm() < 1e-15);
    }

    #[test]
    fn degenerate_discriminant() {
        let x = Complex64::new(0.2, -0.5);
        let j = Complex64::new(0.7, -0.1);
        let sol = solve_pair(PairCouplings { x1: x, x2: x, j }, None).unwrap();
        assert!((sol.omega_plus - (x + j)).norm() < 1e-14);
        assert!((sol.omega_minus - (x - j)).norm() < 1e-14);
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(
            solve_pair(PairCouplings { x1: x, x2: x, j: zero }, None).unwrap_err(),
            Error::DegeneratePair
        );
    }

    #[test]
    fn seed_selects_branch() {
        let c = PairCouplings {
            x1: Complex64::new(0.0, -0.5),
            x2: Complex64::new(0.0, -0.5),
            j: Complex64::new(0.3, -0.2),
        };
        let principal = solve_pair(c, None).unwrap();
        let mut flipped = principal;
        flipped.omega_plus = principal.omega_minus;
        flipped.lambda_cap = -principal.lambda_cap;
        let tracked = solve_pair(c, Some(&flipped)).unwrap();
        assert!((tracked.omega_plus - principal.omega_minus).norm() < 1e-15);
        assert!((tracked.sin_alpha.powi(2) + tracked.cos_alpha.powi(2) - 1.0).norm() < 1e-12);
    }

    #[test]
    fn superradiant_label() {
        let sol = pair_solution(&free_pair(0.3), None).unwrap();
        let c = sol.couplings;
        let sr = solve_pair_on(c, Branch::Superradiant).unwrap();
        assert!(sr.gamma_plus >= sr.gamma_minus);
        assert!((sr.gamma_plus - sol.gamma_plus.max(sol.gamma_minus)).abs() < 1e-15);
    }

    #[test]
    fn single_atom_trace_decays_at_free_rate() {
        let sys = AtomSystem::new(vec![Dipole::on_axis(0.0)], Medium::Free).unwrap();
        let ts = [0.0, 0.5, 1.0, 2.0];
        let tr = intensity_trace(&sys, InitialState::new(1.0, 0.0).unwrap(), 5.0, &ts).unwrap();
        for (t, i) in ts.iter().zip(&tr) {
            if *t > 0.0 {
                assert!((i - (-t).exp()).abs() < 1e-12, "{t} {i}");
            }
        }
        assert_eq!(tr[0], 0.0);
    }

    #[test]
    fn symmetric_state_is_purely_superradiant() {
        let sys = free_pair(1e-4);
        let ts: Vec<f64> = (1..40).map(|i| 0.1 * i as f64).collect();
        let tr = intensity_trace(&sys, InitialState::symmetric(), 50.0, &ts).unwrap();
        for (t, i) in ts.iter().zip(&tr) {
            let want = 2.0 * (-2.0 * t).exp();
            // the atoms sit 1e-4 apart, so the 1/d² factors differ by ~4e-6
            assert!((i - want).abs() < 1e-5 * want, "{t} {i} {want}");
        }
    }

    #[test]
    fn detector_placement_is_checked() {
        let sys = free_pair(0.5);
        let s = InitialState::new(1.0, 0.0).unwrap();
        assert_eq!(intensity_trace(&sys, s, 0.5, &[1.0]).unwrap_err(), Error::DetectorPlacement);
        let plane = PlaneMedium::new(0.4, 0.23).unwrap();
        let sys = AtomSystem::new(vec![Dipole::on_axis(0.0)], Medium::Plane(plane)).unwrap();
        assert_eq!(intensity_trace(&sys, s, 0.4, &[1.0]).unwrap_err(), Error::DetectorPlacement);
        assert!(InitialState::new(1.2, 0.0).is_err());
    }
}
