//! The joint eigenvalue density |Δ(λ)|^β on the Frobenius sphere and its
//! numerically estimated normalizer.

use super::AnalyticError;
use crate::ensembles::{NormalSource, RngState};
use crate::exact::Half;
use crate::matrix::Beta;

/// |Δ(λ)|^β = |Π_{i<j}(λ_j − λ_i)|^β, the joint density with respect to
/// surface measure on the sphere |λ| = r (the caller maintains the sphere
/// constraint).
pub fn joint_density_unnormalized(lambda: &[f64], beta: Beta) -> f64 {
    let mut delta = 1.0f64;
    for i in 0..lambda.len() {
        for j in (i + 1)..lambda.len() {
            delta *= lambda[j] - lambda[i];
        }
    }
    delta.abs().powi(beta.value() as i32)
}

/// Monte Carlo estimate of Z = ∫_{rS^{N−1}} |Δ(θ)|^β dθ.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizerEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Estimates the normalizer by uniform sampling of the unit sphere
/// (normalized Gaussian vectors). The radius scaling is applied exactly:
/// Δ is homogeneous of degree N(N−1)/2 and the surface measure scales as
/// r^{N−1}, so Z(r) = r^{β·N(N−1)/2 + N − 1} · A(S^{N−1}) · E[|Δ(θ)|^β],
/// with A the unit-sphere area 2π^{N/2}/Γ(N/2). Only the unit-sphere
/// expectation carries Monte Carlo error. N ≤ 4 keeps the cost sensible.
pub fn joint_density_normalizer(
    beta: Beta,
    dim: usize,
    radius: f64,
    samples: usize,
    rng: RngState,
) -> Result<NormalizerEstimate, AnalyticError> {
    if dim < 2 || dim > 4 {
        return Err(AnalyticError::InvalidDimension(dim as u32));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(AnalyticError::InvalidParameter("radius must be positive"));
    }
    if samples < 2 {
        return Err(AnalyticError::InvalidParameter("need at least 2 samples"));
    }
    let mut source = NormalSource::new(rng);
    let mut point = vec![0.0f64; dim];
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for _ in 0..samples {
        loop {
            let mut norm_sq = 0.0;
            for v in point.iter_mut() {
                *v = source.next();
                norm_sq += *v * *v;
            }
            if norm_sq > 1e-280 {
                let inv = norm_sq.sqrt().recip();
                for v in point.iter_mut() {
                    *v *= inv;
                }
                break;
            }
        }
        let w = joint_density_unnormalized(&point, beta);
        sum += w;
        sum_sq += w * w;
    }
    let m = samples as f64;
    let mean = sum / m;
    let var = ((sum_sq / m - mean * mean) * m / (m - 1.0)).max(0.0);
    let se_mean = (var / m).sqrt();

    let area = unit_sphere_area(dim);
    let degree = beta.value() as f64 * (dim * (dim - 1) / 2) as f64 + (dim as f64 - 1.0);
    let scale = radius.powf(degree) * area;
    Ok(NormalizerEstimate { value: scale * mean, std_error: scale * se_mean, samples })
}

/// Area of the unit sphere S^{N−1}: 2π^{N/2}/Γ(N/2).
pub fn unit_sphere_area(dim: usize) -> f64 {
    let half = Half(dim as i64);
    2.0 * std::f64::consts::PI.powf(dim as f64 / 2.0) / super::ln_gamma(half.as_f64()).exp()
}
