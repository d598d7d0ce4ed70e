//! Emitters and the plane-scatterer medium.

use crate::dyad::Vec3;
use crate::error::{Error, Result};

/// A point-dipole emitter in scaled units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dipole {
    /// Position [λ].
    pub position: Vec3,
    /// Unit dipole orientation.
    pub orientation: Vec3,
    /// Transition frequency [Ω].
    pub omega: f64,
    /// Dipole magnitude relative to the reference μ.
    pub mu_rel: f64,
}

impl Dipole {
    /// Identical-atom emitter (ω = Ω, μ = reference). The orientation is
    /// normalized; a zero or non-finite orientation is rejected.
    pub fn new(position: Vec3, orientation: Vec3) -> Result<Self> {
        let norm = orientation.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidInput(
                "dipole orientation must be a nonzero finite vector".into(),
            ));
        }
        if !position.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidInput("dipole position must be finite".into()));
        }
        Ok(Self {
            position,
            orientation: orientation / norm,
            omega: 1.0,
            mu_rel: 1.0,
        })
    }

    /// Dipole on the z axis pointing along x̂, i.e. parallel to a plane
    /// normal to z.
    pub fn on_axis(z: f64) -> Self {
        Self {
            position: Vec3::new(0.0, 0.0, z),
            orientation: Vec3::x(),
            omega: 1.0,
            mu_rel: 1.0,
        }
    }

    pub fn with_omega(mut self, omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidInput("transition frequency must be > 0".into()));
        }
        self.omega = omega;
        Ok(self)
    }

    pub fn with_mu_rel(mut self, mu_rel: f64) -> Result<Self> {
        if !(mu_rel.is_finite() && mu_rel > 0.0) {
            return Err(Error::InvalidInput("dipole magnitude must be > 0".into()));
        }
        self.mu_rel = mu_rel;
        Ok(self)
    }

    pub fn z(&self) -> f64 {
        self.position.z
    }

    pub fn is_on_axis(&self) -> bool {
        self.position.x.abs() < 1e-12 && self.position.y.abs() < 1e-12
    }

    /// Orientation parallel to a plane normal to z.
    pub fn is_parallel_to_plane(&self) -> bool {
        self.orientation.z.abs() < 1e-12
    }
}

/// Infinitely thin partially reflecting plane normal to z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneMedium {
    /// Plane position [λ].
    pub z_plane: f64,
    /// Effective thickness [λ].
    pub d_eff: f64,
}

impl PlaneMedium {
    pub fn new(z_plane: f64, d_eff: f64) -> Result<Self> {
        if !z_plane.is_finite() {
            return Err(Error::InvalidInput("z_plane must be finite".into()));
        }
        if !(d_eff.is_finite() && d_eff > 0.0) {
            return Err(Error::InvalidInput("d_eff must be > 0".into()));
        }
        Ok(Self { z_plane, d_eff })
    }

    pub fn distance(&self, z: f64) -> f64 {
        (z - self.z_plane).abs()
    }

    /// True when z lies on the plane up to rounding of grid arithmetic.
    pub fn contains(&self, z: f64) -> bool {
        self.distance(z) <= ON_PLANE_TOLERANCE * (1.0 + self.z_plane.abs())
    }
}

const ON_PLANE_TOLERANCE: f64 = 1e-12;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_is_normalized() {
        let d = Dipole::new(Vec3::zeros(), Vec3::new(3.0, 4.0, 0.0)).unwrap();
        assert!((d.orientation.norm() - 1.0).abs() < 1e-12);
        assert!(d.is_parallel_to_plane());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Dipole::new(Vec3::zeros(), Vec3::zeros()).is_err());
        assert!(Dipole::on_axis(0.0).with_omega(0.0).is_err());
        assert!(Dipole::on_axis(0.0).with_mu_rel(-1.0).is_err());
        assert!(PlaneMedium::new(0.4, 0.0).is_err());
        assert!(PlaneMedium::new(f64::NAN, 0.2).is_err());
    }
}
