//! Adaptive quadrature for complex integrands: finite intervals, evanescent
//! tails with certified truncation, and Cauchy principal values with explicit
//! residue bookkeeping.
//!
//! The finite-interval engine is a globally adaptive 7/15-point Gauss–Kronrod
//! scheme. All nodes are interior, so integrable endpoint singularities are
//! never sampled.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

/// Tolerances for every integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Relative size of the neglected evanescent tail.
    pub tail_bound_tol: f64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
            tail_bound_tol: 1e-12,
        }
    }
}

impl QuadSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !(ok(self.rel_tol) && ok(self.abs_tol) && ok(self.tail_bound_tol)) {
            return Err(Error::InvalidInput("quadrature tolerances must be > 0".into()));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidInput("max_subdivisions must be > 0".into()));
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }
}

/// Integral value together with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

/// Principal value split into its real-contour part and the pole term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PVResult {
    pub principal_value: Complex64,
    /// iπ times the residue.
    pub residue_term: Complex64,
    pub pole_location: f64,
}

impl PVResult {
    pub fn total(&self) -> Complex64 {
        self.principal_value + self.residue_term
    }
}

/// Evanescent tail integral with its truncation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub value: Complex64,
    pub error: f64,
    pub kappa_max: f64,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut res_k = f_center * WGK[7];
    let mut res_g = f_center * WG[3];
    let mut res_abs = f_center.norm() * WGK[7];
    let mut fv1 = [Complex64::new(0.0, 0.0); 7];
    let mut fv2 = [Complex64::new(0.0, 0.0); 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += (f1 + f2) * WGK[j];
        res_abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            res_g += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).norm();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((res_k - res_g) * half).norm();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    if !value.re.is_finite() || !value.im.is_finite() {
        error = f64::INFINITY;
    }
    Segment { a, b, value, error }
}

/// Globally adaptive Gauss–Kronrod integration of `f` over `[a, b]`,
/// returning the estimate and its error bound.
pub fn adaptive_estimate<F>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInput("integration limits must be finite".into()));
    }
    if a == b {
        return Ok(Estimate {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
        });
    }
    if a > b {
        let e = adaptive_estimate(f, b, a, spec)?;
        return Ok(Estimate {
            value: -e.value,
            error: e.error,
        });
    }

    let first = kronrod15(&f, a, b);
    let mut total = first.value;
    let mut total_err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    // segments too narrow to bisect further
    let mut frozen_value = Complex64::new(0.0, 0.0);
    let mut frozen_err = 0.0;
    let mut subdivisions = 1;

    loop {
        let target = spec.abs_tol.max(spec.rel_tol * total.norm());
        if total_err <= target {
            break;
        }
        let Some(worst) = heap.pop() else {
            break;
        };
        let mid = 0.5 * (worst.a + worst.b);
        let scale = worst.a.abs().max(worst.b.abs());
        if mid <= worst.a || mid >= worst.b || (worst.b - worst.a) < 4.0 * f64::EPSILON * scale {
            frozen_value += worst.value;
            frozen_err += worst.error;
            continue;
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::MaxSubdivisions {
                estimate: total,
                error: total_err,
                subdivisions,
            });
        }
        let left = kronrod15(&f, worst.a, mid);
        let right = kronrod15(&f, mid, worst.b);
        subdivisions += 1;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // resum to keep roundoff out of the running totals
        if subdivisions % 64 == 0 {
            total = frozen_value + heap.iter().map(|s| s.value).sum::<Complex64>();
            total_err = frozen_err + heap.iter().map(|s| s.error).sum::<f64>();
        }
    }
    let value = frozen_value + heap.iter().map(|s| s.value).sum::<Complex64>();
    let error = frozen_err + heap.iter().map(|s| s.error).sum::<f64>();
    if !(value.re.is_finite() && value.im.is_finite() && error.is_finite()) {
        return Err(Error::MaxSubdivisions {
            estimate: value,
            error,
            subdivisions,
        });
    }
    Ok(Estimate { value, error })
}

/// ∫ₐᵇ f with relative error ≤ `rel_tol` or absolute error ≤ `abs_tol`.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    adaptive_estimate(f, a, b, spec).map(|e| e.value)
}

/// Real-valued convenience wrapper.
pub fn integrate_real<F>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate_adaptive(|x| Complex64::new(f(x), 0.0), a, b, spec).map(|z| z.re)
}

/// Width of each tail chunk in units of the decay length.
const TAIL_CHUNK_DECAY_LENGTHS: f64 = 8.0;
const MAX_TAIL_CHUNKS: usize = 4000;

/// ∫_{κ_min}^∞ f(κ) dκ for an integrand that eventually decays like
/// `exp(-decay_rate·κ)`.
///
/// The range is covered in chunks of a few decay lengths. Integration stops
/// once a chunk contributes less than `tail_bound_tol` of the running total
/// and the integrand at the chunk end is below the same bound; the neglected
/// remainder is estimated as a geometric series of the chunk ratio and added
/// to the error budget.
pub fn integrate_evanescent_tail<F>(
    f: F,
    kappa_min: f64,
    decay_rate: f64,
    spec: &QuadSpec,
) -> Result<TailEstimate>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    if !(decay_rate.is_finite() && decay_rate > 0.0) {
        return Err(Error::NonDecaying);
    }
    if !kappa_min.is_finite() {
        return Err(Error::InvalidInput("kappa_min must be finite".into()));
    }
    let width = TAIL_CHUNK_DECAY_LENGTHS / decay_rate;
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut lo = kappa_min;
    let mut previous: Option<f64> = None;
    for _ in 0..MAX_TAIL_CHUNKS {
        let hi = lo + width;
        let local = QuadSpec {
            abs_tol: spec.abs_tol.max(0.1 * spec.rel_tol * value.norm()),
            ..*spec
        };
        let chunk = adaptive_estimate(&f, lo, hi, &local)?;
        value += chunk.value;
        error += chunk.error;
        let size = chunk.value.norm();
        let bound = spec.tail_bound_tol * value.norm().max(spec.abs_tol);
        let edge = f(hi).norm() / decay_rate;
        if size <= bound && edge <= bound {
            let ratio = match previous {
                Some(p) if p > 0.0 => (size / p).min(0.5),
                _ => 0.5,
            };
            error += size.max(edge) * ratio / (1.0 - ratio);
            return Ok(TailEstimate {
                value,
                error,
                kappa_max: hi,
            });
        }
        previous = Some(size);
        lo = hi;
    }
    Err(Error::MaxSubdivisions {
        estimate: value,
        error: f64::INFINITY,
        subdivisions: MAX_TAIL_CHUNKS,
    })
}

/// Cauchy principal value of ∫ₐᵇ f for an integrand with a simple real pole
/// at `pole` carrying the analytic `residue`.
///
/// The singular part `residue/(x − pole)` is subtracted and integrated in
/// closed form; the regularized remainder is integrated adaptively with a
/// breakpoint at the pole. The pole term is `iπ·residue`: the causal branch
/// (Im k_z ≥ 0) places the pole just below the real κ contour, so the
/// contour passes above it.
pub fn integrate_principal_value<F>(
    f: F,
    a: f64,
    b: f64,
    pole: f64,
    residue: Complex64,
    spec: &QuadSpec,
) -> Result<PVResult>
where
    F: Fn(f64) -> Complex64,
{
    if !(a < pole && pole < b) {
        return Err(Error::PoleOutsideInterval { pole, a, b });
    }
    let regular = |x: f64| f(x) - residue / (x - pole);
    let left = adaptive_estimate(regular, a, pole, spec)?;
    let right = adaptive_estimate(regular, pole, b, spec)?;
    let log_term = residue * ((b - pole) / (pole - a)).ln();
    Ok(PVResult {
        principal_value: left.value + right.value + log_term,
        residue_term: Complex64::new(0.0, PI) * residue,
        pole_location: pole,
    })
}
