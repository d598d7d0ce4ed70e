use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

pub type Vec3 = Vector3<f64>;
pub type CVec3 = Vector3<Complex64>;

/// 3×3 complex dyadic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CDyad(pub Matrix3<Complex64>);

impl CDyad {
    pub fn zero() -> Self {
        CDyad(Matrix3::zeros())
    }

    pub fn identity() -> Self {
        CDyad(Matrix3::identity())
    }

    pub fn diag(a: Complex64, b: Complex64, c: Complex64) -> Self {
        CDyad(Matrix3::from_diagonal(&Vector3::new(a, b, c)))
    }

    /// Real outer product u ⊗ v.
    pub fn outer(u: &Vec3, v: &Vec3) -> Self {
        CDyad((u * v.transpose()).map(|x| Complex64::new(x, 0.0)))
    }

    /// `a·Î + b·r̂⊗r̂`.
    pub fn isotropic_plus_radial(a: Complex64, b: Complex64, rhat: &Vec3) -> Self {
        CDyad::identity() * a + CDyad::outer(rhat, rhat) * b
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn transpose(&self) -> Self {
        CDyad(self.0.transpose())
    }

    /// Σᵢⱼ uᵢ Dᵢⱼ vⱼ.
    pub fn contract(&self, u: &Vec3, v: &Vec3) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                acc += self.0[(i, j)] * (u[i] * v[j]);
            }
        }
        acc
    }

    /// D·v for a real vector.
    pub fn apply(&self, v: &Vec3) -> CVec3 {
        self.0 * v.map(|x| Complex64::new(x, 0.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        (self.0 - self.0.transpose()).iter().all(|z| z.norm() <= tol * scale)
    }
}

/// Σᵢⱼ uᵢ Dᵢⱼ vⱼ.
pub fn contract(d: &CDyad, u: &Vec3, v: &Vec3) -> Complex64 {
    d.contract(u, v)
}

impl Add for CDyad {
    type Output = CDyad;
    fn add(self, rhs: CDyad) -> CDyad {
        CDyad(self.0 + rhs.0)
    }
}

impl Sub for CDyad {
    type Output = CDyad;
    fn sub(self, rhs: CDyad) -> CDyad {
        CDyad(self.0 - rhs.0)
    }
}

impl Neg for CDyad {
    type Output = CDyad;
    fn neg(self) -> CDyad {
        CDyad(-self.0)
    }
}

impl Mul<Complex64> for CDyad {
    type Output = CDyad;
    fn mul(self, rhs: Complex64) -> CDyad {
        CDyad(self.0 * rhs)
    }
}

impl Mul<f64> for CDyad {
    type Output = CDyad;
    fn mul(self, rhs: f64) -> CDyad {
        CDyad(self.0 * Complex64::new(rhs, 0.0))
    }
}
