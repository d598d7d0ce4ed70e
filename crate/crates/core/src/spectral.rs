//! Dominant spatial period of a sampled curve.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Oversampling of the frequency grid relative to 1/span.
const OVERSAMPLE: f64 = 64.0;

/// Period of the strongest oscillation in uniformly sampled `ys` over `xs`.
///
/// The curve is detrended by a least-squares line and Hann-windowed; the
/// periodogram is evaluated on a fine grid between 1/span and the Nyquist
/// frequency and the peak refined by a parabola through its neighbours.
pub fn dominant_period(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let n = xs.len();
    if n < 8 || ys.len() != n {
        return Err(Error::InvalidInput("need at least 8 paired samples".into()));
    }
    let span = xs[n - 1] - xs[0];
    let dx = span / (n - 1) as f64;
    if span.is_nan() || span <= 0.0 || xs.windows(2).any(|w| ((w[1] - w[0]) - dx).abs() > 1e-6 * dx) {
        return Err(Error::InvalidInput("samples must be uniform and increasing".into()));
    }

    let nf = n as f64;
    let xm = xs.iter().sum::<f64>() / nf;
    let ym = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - xm).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let slope = sxy / sxx;
    let signal: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .enumerate()
        .map(|(i, (&x, &y))| {
            let w = 0.5 - 0.5 * (2.0 * PI * i as f64 / (nf - 1.0)).cos();
            (x - xs[0], w * (y - ym - slope * (x - xm)))
        })
        .collect();

    let power = |f: f64| {
        let (re, im) = signal.iter().fold((0.0, 0.0), |(re, im), &(x, y)| {
            let (s, c) = (2.0 * PI * f * x).sin_cos();
            (re + y * c, im - y * s)
        });
        re * re + im * im
    };

    let df = 1.0 / (span * OVERSAMPLE);
    let f_lo = 1.0 / span;
    let f_hi = 0.5 / dx;
    let freqs: Vec<f64> = (0..)
        .map(|i| f_lo + df * i as f64)
        .take_while(|&f| f <= f_hi)
        .collect();
    let spectrum: Vec<f64> = freqs.iter().map(|&f| power(f)).collect();
    let (k, _) = spectrum
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .ok_or_else(|| Error::InvalidInput("frequency band is empty".into()))?;
    let mut f_peak = freqs[k];
    if k > 0 && k + 1 < spectrum.len() {
        let (a, b, c) = (spectrum[k - 1], spectrum[k], spectrum[k + 1]);
        let curvature = a - 2.0 * b + c;
        if curvature < 0.0 {
            f_peak += 0.5 * df * (a - c) / curvature;
        }
    }
    Ok(1.0 / f_peak)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> (Vec<f64>, Vec<f64>) {
        let xs: Vec<f64> = (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect();
        let ys = xs.iter().map(|&x| f(x)).collect();
        (xs, ys)
    }

    #[test]
    fn recovers_pure_tone() {
        let (xs, ys) = sample(2.0, 12.0, 1001, |x| (2.0 * PI * x / 0.5 + 0.3).sin());
        assert!((dominant_period(&xs, &ys).unwrap() - 0.5).abs() < 1e-3);
    }

    #[test]
    fn ignores_offset_and_trend() {
        let (xs, ys) = sample(0.5, 3.0, 501, |x| 4.0 + 3.0 * x + 0.2 * (2.0 * PI * x).cos());
        assert!((dominant_period(&xs, &ys).unwrap() - 1.0).abs() < 0.05);
    }

    #[test]
    fn damped_oscillation() {
        let (xs, ys) = sample(5.0, 15.0, 1001, |x| (4.0 * PI * x).sin() / x);
        assert!((dominant_period(&xs, &ys).unwrap() - 0.5).abs() < 0.01);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(dominant_period(&[0.0, 1.0], &[0.0, 1.0]).is_err());
        let xs = [0.0, 1.0, 2.0, 3.0, 5.0, 6.0, 7.0, 8.0];
        assert!(dominant_period(&xs, &[0.0; 8]).is_err());
    }
}
