//! Single-atom and N-atom T-matrices.
//!
//! Frequencies here are complex and in units of Ω. Contractions û·𝗚·v̂ are in
//! 1/λ and the scalar T-matrices in λ, so that T·G is dimensionless. The
//! coupling strength of atom m is
//!
//! ```text
//! βₘ = (Γ₀/Ω)·(3/2)μₘ²ω²
//! ```
//!
//! and its T-matrix is Tₘ = 2βₘ/(ω² − 1 − 2βₘK_self), where the self term
//! K_self = −iω/3 + scattered part is the renormalized coincident-point
//! contraction; the divergent free-space real part is absorbed into Ω.
//! Green contractions are evaluated at Re ω.

use crate::coupling::scattered_k_integral;
use crate::dyad::Vec3;
use crate::error::{Error, Result};
use crate::green_free::{g0, HomogeneousMedium};
use crate::plane_green::path_via_plane;
use crate::quad::QuadSpec;
use crate::system::{Dipole, PlaneMedium};
use crate::units::COUPLING_PREFACTOR;
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Default Γ₀/Ω, typical of optical dipole transitions.
pub const DEFAULT_GAMMA0_OVER_OMEGA: f64 = 1e-6;

/// M-matrix condition number above which a warning is attached.
pub const CONDITION_WARNING: f64 = 1e8;

const SINGULAR_DETERMINANT: f64 = 1e-12;
const RESONANCE_DENOMINATOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Medium {
    Free,
    Plane(PlaneMedium),
}

/// Emitters embedded in a medium.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomSystem {
    pub atoms: Vec<Dipole>,
    pub medium: Medium,
    /// Γ₀/Ω, the ratio that sets how strongly the atoms couple to the field.
    pub gamma0_over_omega: f64,
    pub quad: QuadSpec,
}

impl AtomSystem {
    pub fn new(atoms: Vec<Dipole>, medium: Medium) -> Result<Self> {
        Self::with_coupling(atoms, medium, DEFAULT_GAMMA0_OVER_OMEGA)
    }

    pub fn with_coupling(atoms: Vec<Dipole>, medium: Medium, gamma0_over_omega: f64) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidInput("at least one atom required".into()));
        }
        if !(gamma0_over_omega.is_finite() && gamma0_over_omega > 0.0) {
            return Err(Error::InvalidInput("gamma0_over_omega must be > 0".into()));
        }
        for (i, a) in atoms.iter().enumerate() {
            if atoms[..i].iter().any(|b| b.position == a.position) {
                return Err(Error::CoincidentPositions);
            }
        }
        if let Medium::Plane(plane) = medium {
            let first = atoms[0].orientation;
            for a in &atoms {
                if !(a.is_on_axis() && a.is_parallel_to_plane()) {
                    return Err(Error::Geometry(
                        "atoms near the plane must sit on its normal axis with dipoles parallel to it".into(),
                    ));
                }
                if (a.orientation - first).norm() > 1e-12 && (a.orientation + first).norm() > 1e-12 {
                    return Err(Error::Geometry("dipoles must be parallel to each other".into()));
                }
                if plane.contains(a.z()) {
                    return Err(Error::AtomOnPlane);
                }
            }
        }
        Ok(Self {
            atoms,
            medium,
            gamma0_over_omega,
            quad: QuadSpec::default(),
        })
    }

    pub fn with_quad(mut self, quad: QuadSpec) -> Self {
        self.quad = quad;
        self
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// μ̂ᵢ·𝗚(Rᵢ, Rⱼ, ω)·μ̂ⱼ [1/λ] for i ≠ j.
    pub fn green_contraction(&self, i: usize, j: usize, omega: f64) -> Result<Complex64> {
        let (a, b) = (&self.atoms[i], &self.atoms[j]);
        let r: Vec3 = a.position - b.position;
        let free = g0(&r, &HomogeneousMedium::VACUUM, omega)?.contract(&a.orientation, &b.orientation);
        match self.medium {
            Medium::Free => Ok(free),
            Medium::Plane(plane) => {
                let sign = a.orientation.dot(&b.orientation).signum();
                Ok(free + self.scattered(a.z(), b.z(), omega, &plane)? * sign)
            }
        }
    }

    /// Renormalized μ̂·𝗞(R, R, ω)·μ̂ [1/λ] of atom i.
    pub fn self_contraction(&self, i: usize, omega: f64) -> Result<Complex64> {
        let free = Complex64::new(0.0, -omega / 3.0);
        match self.medium {
            Medium::Free => Ok(free),
            Medium::Plane(plane) => {
                let z = self.atoms[i].z();
                Ok(free + self.scattered(z, z, omega, &plane)?)
            }
        }
    }

    fn scattered(&self, z1: f64, z2: f64, omega: f64, plane: &PlaneMedium) -> Result<Complex64> {
        let path = path_via_plane(z1, z2, plane);
        Ok(scattered_k_integral(path, omega, plane, &self.quad)?.total() / (4.0 * PI))
    }

    /// βₘ at complex ω [λ].
    pub fn strength(&self, m: usize, omega: Complex64) -> Complex64 {
        let mu = self.atoms[m].mu_rel;
        omega * omega * (self.gamma0_over_omega * COUPLING_PREFACTOR * mu * mu)
    }

    /// Optical potential Vₘ = 2βₘΩₘ/(ω² − Ωₘ²) [λ].
    pub fn potential(&self, m: usize, omega: Complex64) -> Complex64 {
        let om = self.atoms[m].omega;
        2.0 * om * self.strength(m, omega) / (omega * omega - om * om)
    }
}

/// Scalar T-matrix of atom m alone in the medium.
pub fn single_t(sys: &AtomSystem, m: usize, omega: Complex64) -> Result<Complex64> {
    let k_self = sys.self_contraction(m, omega.re)?;
    single_t_from(sys, m, omega, k_self)
}

fn single_t_from(sys: &AtomSystem, m: usize, omega: Complex64, k_self: Complex64) -> Result<Complex64> {
    let om = sys.atoms[m].omega;
    let beta = sys.strength(m, omega);
    let den = omega * omega - om * om - 2.0 * om * beta * k_self;
    if den.norm() < RESONANCE_DENOMINATOR {
        return Err(Error::ResonancePole);
    }
    Ok(2.0 * om * beta / den)
}

/// Mᵢⱼ = δᵢⱼ − (1 − δᵢⱼ)·Gᵢⱼ·Tⱼ.
pub fn m_matrix(sys: &AtomSystem, omega: Complex64) -> Result<DMatrix<Complex64>> {
    let t = (0..sys.len())
        .map(|m| single_t(sys, m, omega))
        .collect::<Result<Vec<_>>>()?;
    m_matrix_from(sys, omega, &t)
}

fn m_matrix_from(sys: &AtomSystem, omega: Complex64, t: &[Complex64]) -> Result<DMatrix<Complex64>> {
    let n = sys.len();
    let mut m = DMatrix::<Complex64>::identity(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m[(i, j)] = -sys.green_contraction(i, j, omega.re)? * t[j];
            }
        }
    }
    Ok(m)
}

/// Collective T-matrix T⁽ᴺ⁾ₘₙ = Tₘ(M⁻¹)ₘₙ with orientation μ̂ₘ…μ̂ₙ.
#[derive(Debug, Clone, PartialEq)]
pub struct TMatrix {
    /// Single-atom T-matrices.
    pub t: Vec<Complex64>,
    pub t_n: DMatrix<Complex64>,
    pub orientations: Vec<Vec3>,
    /// Condition number of M, when it exceeds [`CONDITION_WARNING`].
    pub ill_conditioned: Option<f64>,
}

impl TMatrix {
    /// Dyadic entry μ̂ₘ T⁽ᴺ⁾ₘₙ μ̂ₙ contracted with u and v.
    pub fn contract(&self, m: usize, n: usize, u: &Vec3, v: &Vec3) -> Complex64 {
        self.t_n[(m, n)] * (u.dot(&self.orientations[m]) * self.orientations[n].dot(v))
    }
}

pub fn t_n(sys: &AtomSystem, omega: Complex64) -> Result<TMatrix> {
    let t = (0..sys.len())
        .map(|m| single_t(sys, m, omega))
        .collect::<Result<Vec<_>>>()?;
    let m = m_matrix_from(sys, omega, &t)?;
    let n = sys.len();
    let lu = m.clone().lu();
    if lu.determinant().norm() < SINGULAR_DETERMINANT {
        return Err(Error::CollectiveResonance);
    }
    let inv = lu
        .solve(&DMatrix::<Complex64>::identity(n, n))
        .ok_or(Error::CollectiveResonance)?;
    let mut t_n = inv;
    for (r, tr) in t.iter().enumerate() {
        for z in t_n.row_mut(r).iter_mut() {
            *z *= *tr;
        }
    }
    Ok(TMatrix {
        t,
        t_n,
        orientations: sys.atoms.iter().map(|a| a.orientation).collect(),
        ill_conditioned: condition_number(&m).filter(|&k| k > CONDITION_WARNING),
    })
}

/// Ratio of the largest to the smallest singular value.
pub fn condition_number(m: &DMatrix<Complex64>) -> Option<f64> {
    let s = m.clone().svd(false, false).singular_values;
    let max = s.iter().cloned().fold(0.0, f64::max);
    let min = s.iter().cloned().fold(f64::INFINITY, f64::min);
    (min > 0.0).then(|| max / min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn free_line(n: usize, spacing: f64, g: f64) -> AtomSystem {
        let atoms = (0..n).map(|i| Dipole::on_axis(spacing * i as f64)).collect();
        AtomSystem::with_coupling(atoms, Medium::Free, g).unwrap()
    }

    #[test]
    fn rejects_bad_systems() {
        assert!(AtomSystem::new(vec![], Medium::Free).is_err());
        let dup = vec![Dipole::on_axis(0.0), Dipole::on_axis(0.0)];
        assert_eq!(AtomSystem::new(dup, Medium::Free).unwrap_err(), Error::CoincidentPositions);
        let plane = PlaneMedium::new(0.4, 0.23).unwrap();
        let on = vec![Dipole::on_axis(0.4)];
        assert_eq!(AtomSystem::new(on, Medium::Plane(plane)).unwrap_err(), Error::AtomOnPlane);
    }

    #[test]
    fn vanishing_coupling_gives_vanishing_t() {
        let sys = free_line(1, 1.0, 1e-300);
        assert!(single_t(&sys, 0, c(1.3)).unwrap().norm() < 1e-290);
    }

    #[test]
    fn first_order_expansion() {
        let sys = free_line(1, 1.0, 1e-4);
        let w = c(1.2);
        let v = sys.potential(0, w);
        let x = sys.self_contraction(0, w.re).unwrap();
        let t = single_t(&sys, 0, w).unwrap();
        let second = v + v * x * v;
        assert!((t - second).norm() < 10.0 * (v * x).norm().powi(2) * v.norm());
        assert!((t - v).norm() > 0.5 * (v * x * v).norm());
    }

    #[test]
    fn single_atom_m_is_identity() {
        let sys = free_line(1, 1.0, 1e-3);
        let m = m_matrix(&sys, c(1.1)).unwrap();
        assert_eq!(m.shape(), (1, 1));
        assert_eq!(m[(0, 0)], c(1.0));
        let tm = t_n(&sys, c(1.1)).unwrap();
        assert!((tm.t_n[(0, 0)] - tm.t[0]).norm() < 1e-15 * tm.t[0].norm());
    }

    #[test]
    fn distant_atoms_decouple() {
        let sys = free_line(2, 1e9, 1e-3);
        let m = m_matrix(&sys, c(1.1)).unwrap();
        assert!((m - DMatrix::identity(2, 2)).norm() < 1e-10);
    }

    #[test]
    fn two_atom_determinant() {
        let sys = free_line(2, 0.3, 0.02);
        let w = c(1.05);
        let t1 = single_t(&sys, 0, w).unwrap();
        let t2 = single_t(&sys, 1, w).unwrap();
        let beta = sys.strength(0, w);
        let j = beta * sys.green_contraction(0, 1, w.re).unwrap();
        let det = m_matrix(&sys, w).unwrap().determinant();
        let want = 1.0 - t1 * j * j * t2 / (beta * beta);
        assert!((det - want).norm() < 1e-13);
    }

    #[test]
    fn collective_matrix_is_symmetric() {
        let sys = free_line(4, 0.17, 0.05);
        let tm = t_n(&sys, Complex64::new(1.02, 0.001)).unwrap();
        let scale = tm.t_n.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!((tm.t_n.clone() - tm.t_n.transpose()).iter().all(|z| z.norm() < 1e-10 * scale));
        assert!(tm.ill_conditioned.is_none());
    }

    #[test]
    fn single_atom_pole_matches_decay_and_shift() {
        let plane = PlaneMedium::new(0.4, 0.23).unwrap();
        let g = 1e-6;
        let sys = AtomSystem::with_coupling(vec![Dipole::on_axis(0.0)], Medium::Plane(plane), g).unwrap();
        let k_self = sys.self_contraction(0, 1.0).unwrap();
        let den = |w: Complex64| {
            let beta = sys.strength(0, w);
            w * w - 1.0 - 2.0 * beta * k_self
        };
        // secant iteration from the bare resonance
        let (mut w0, mut w1) = (c(1.0), Complex64::new(1.0 + g, -g));
        for _ in 0..50 {
            let (f0, f1) = (den(w0), den(w1));
            if f1 == f0 {
                break;
            }
            let w2 = w1 - f1 * (w1 - w0) / (f1 - f0);
            w0 = w1;
            w1 = w2;
        }
        let x = (w1 - 1.0) / g;
        let (gamma, delta) = crate::coupling::gamma_and_delta(&Dipole::on_axis(0.0), 1.0, &plane).unwrap();
        let want = Complex64::new(delta, -0.5 * gamma);
        assert!((x - want).norm() < 1e-3 * want.norm(), "{x} vs {want}");
    }
}
