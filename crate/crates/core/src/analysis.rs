//! Fringe fits and visibility extraction from scan results.
//!
//! The fringe phase `2πfΔT` is known from the geometry, so the model
//! `a(1 + b cos 2πfΔT)` is linear in `(c0, c1) = (a, a·b)` and is solved
//! in closed form.

use alloc::vec::Vec;

use crate::experiment::ScanPoint;
use crate::math::{cos, sqrt, TAU};
use crate::oracle::visibility;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FitResult {
    /// Offset `a`, as a fraction of `N_tot`.
    pub offset: f64,
    /// Contrast `b`.
    pub contrast: f64,
    /// `b` clamped to `[0, 1]`.
    pub visibility: f64,
    pub offset_se: f64,
    pub contrast_se: f64,
    /// Euclidean norm of the residuals.
    pub residual_norm: f64,
    pub points: usize,
}

/// Least squares of `values` on `{1, cos 2π·frequency·ΔT}`.
pub fn fit_cosine(delta_t: &[f64], values: &[f64], frequency: f64) -> Result<FitResult, Error> {
    let n = values.len();
    debug_assert_eq!(n, delta_t.len());
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let basis: Vec<f64> = delta_t.iter().map(|&t| cos(TAU * frequency * t)).collect();
    let nf = n as f64;
    let mean_u = basis.iter().sum::<f64>() / nf;
    let mean_v = values.iter().sum::<f64>() / nf;
    // Centered sums keep the 2x2 system well conditioned.
    let (mut suu, mut suv) = (0.0, 0.0);
    for (&u, &v) in basis.iter().zip(values) {
        suu += (u - mean_u) * (u - mean_u);
        suv += (u - mean_u) * (v - mean_v);
    }
    if suu <= 1e-12 * nf {
        return Err(Error::RankDeficient);
    }
    let c1 = suv / suu;
    let c0 = mean_v - c1 * mean_u;

    let rss: f64 = basis
        .iter()
        .zip(values)
        .map(|(&u, &v)| {
            let r = v - c0 - c1 * u;
            r * r
        })
        .sum();
    let sigma2 = if n > 2 { rss / (nf - 2.0) } else { 0.0 };
    let var_c1 = sigma2 / suu;
    let var_c0 = sigma2 * (1.0 / nf + mean_u * mean_u / suu);
    let cov01 = -sigma2 * mean_u / suu;

    let contrast = c1 / c0;
    // Delta method for b = c1 / c0.
    let var_b = var_c1 / (c0 * c0) + c1 * c1 * var_c0 / (c0 * c0 * c0 * c0) - 2.0 * c1 * cov01 / (c0 * c0 * c0);
    Ok(FitResult {
        offset: c0,
        contrast,
        visibility: contrast.clamp(0.0, 1.0),
        offset_se: sqrt(var_c0),
        contrast_se: sqrt(var_b.max(0.0)),
        residual_norm: sqrt(rss),
        points: n,
    })
}

/// Coincidence fringe fit on `N_coincidence / N_tot`.
pub fn fit_fringe(scan: &[ScanPoint], frequency: f64) -> Result<FitResult, Error> {
    let dt: Vec<f64> = scan.iter().map(|p| p.delta_t).collect();
    let v: Vec<f64> = scan
        .iter()
        .map(|p| p.n_coincidence as f64 / p.n_tot as f64)
        .collect();
    fit_cosine(&dt, &v, frequency)
}

/// Single-detector counts: the flat-model offset `a₂` (mean of
/// `N_count / N_tot`) and a cosine fit whose contrast should vanish.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SinglesFit {
    pub detector: usize,
    pub offset: f64,
    pub cosine: FitResult,
}

pub fn fit_singles(scan: &[ScanPoint], detector: usize, frequency: f64) -> Result<SinglesFit, Error> {
    let dt: Vec<f64> = scan.iter().map(|p| p.delta_t).collect();
    let v: Vec<f64> = scan
        .iter()
        .map(|p| p.n_count[detector] as f64 / p.n_tot as f64)
        .collect();
    let cosine = fit_cosine(&dt, &v, frequency)?;
    Ok(SinglesFit {
        detector,
        offset: v.iter().sum::<f64>() / v.len() as f64,
        cosine,
    })
}

/// Max/min visibility of the raw coincidence counts.
pub fn visibility_from_counts(scan: &[ScanPoint]) -> Result<f64, Error> {
    let counts: Vec<f64> = scan.iter().map(|p| p.n_coincidence as f64).collect();
    visibility(&counts)
}
