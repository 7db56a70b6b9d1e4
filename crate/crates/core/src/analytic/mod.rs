//! Closed-form spectral quantities for the unitary spherical ensemble and
//! the special functions they require.
//!
//! The β = 2 characteristic function is a finite combination of confluent
//! hypergeometric limit functions (equivalently Bessel J of the first kind),
//! and the spectral density is (1/r)·p_N(x/r)·(1−(x/r)²)^{(N²−2N−1)/2} for a
//! rational polynomial p_N produced here by exact symbolic differentiation.
//! The joint eigenvalue density on the Frobenius sphere is |Δ(λ)|^β with a
//! numerically estimated normalizer.

mod charfn;
mod density;
mod hyp;
mod joint;
mod poly;

pub use charfn::{build_char_fn_model, char_fn, char_fn_bessel, invert_char_fn, CharFnModel};
pub use density::{build_density_model, eval_density, DensityModel};
pub use hyp::{bessel_j, hyp0f1};
pub use joint::{joint_density_normalizer, joint_density_unnormalized, NormalizerEstimate};
pub use poly::RationalPolynomial;

use crate::exact::{gamma_ratio, Half};
use crate::stats::{self, StatsError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalyticError {
    #[error("series did not converge within the term budget")]
    NonConvergence,
    #[error("density diverges at the support boundary |x| = r for this dimension")]
    BoundaryDivergence,
    #[error("dimension {0} not supported here")]
    InvalidDimension(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error(transparent)]
    Quadrature(#[from] StatsError),
    #[error(transparent)]
    Exact(#[from] crate::exact::ExactError),
}

/// ln Γ(x) for x > 0: argument lifted above 10, then the Stirling series
/// through the x^{−9} Bernoulli term (relative accuracy ~1e−14).
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument");
    let mut shift = 0.0;
    let mut x = x;
    while x < 10.0 {
        shift -= x.ln();
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            + inv2
                * (-1.0 / 360.0
                    + inv2
                        * (1.0 / 1260.0
                            + inv2
                                * (-1.0 / 1680.0
                                    + inv2 * (1.0 / 1188.0 + inv2 * (-691.0 / 360_360.0))))));
    shift + (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

/// Wigner semicircle density (1/2π)√(4−x²) on |x| ≤ 2, zero outside.
/// This support normalizes the mass to 1 and gives variance 1 and Catalan
/// even moments.
pub fn semicircle_density(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        return 0.0;
    }
    (4.0 - x * x).sqrt() / (2.0 * std::f64::consts::PI)
}

/// Both sides of the Fourier-transform pair
/// (1/2π)∫ e^{−itx} ₀F₁(α, −t²/4) dt = (1/2)·C(α−1, 1/2)·(1−x²)^{α−3/2},
/// with the generalized binomial C(w, z) = Γ(w+1)/(Γ(z+1)Γ(w−z+1)).
///
/// The left side is a truncated oscillatory integral: the integrand is a
/// Bessel tail of frequency 1, so it is summed over half-period cells past
/// the oscillation onset and extrapolated; the returned value carries the
/// quadrature tolerance of ~1e−7. Requires α ≥ 3/2 (integrability of the
/// tail) and |x| < 1.
pub fn fourier_pair_check(alpha: Half, x: f64) -> Result<(f64, f64), AnalyticError> {
    let rhs = fourier_pair_closed_form(alpha, x)?;
    let onset = 2.0 * alpha.as_f64() + 10.0;
    let integrand = move |t: f64| hyp0f1(alpha, -0.25 * t * t).unwrap_or(f64::NAN);
    let lhs = stats::fourier_cos_halfline(integrand, x, 1.0, onset, 2e-7)?
        / std::f64::consts::PI;
    Ok((lhs, rhs))
}

/// The closed-form side alone: (1/2)·C(α−1, 1/2)·(1−x²)^{α−3/2} with
/// C(α−1, 1/2) = Γ(α)/(Γ(3/2)·Γ(α−1/2)).
pub fn fourier_pair_closed_form(alpha: Half, x: f64) -> Result<f64, AnalyticError> {
    if alpha.0 < 3 {
        return Err(AnalyticError::InvalidParameter("fourier pair requires α ≥ 3/2"));
    }
    if !(x.abs() < 1.0) {
        return Err(AnalyticError::InvalidParameter("fourier pair requires |x| < 1"));
    }
    let ratio = gamma_ratio(alpha, Half(alpha.0 - 1))?;
    let gamma_3_2 = 0.5 * std::f64::consts::PI.sqrt();
    let binom = ratio.to_f64() / gamma_3_2;
    Ok(0.5 * binom * (1.0 - x * x).powf(alpha.as_f64() - 1.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::integrate;

    #[test]
    fn ln_gamma_reference_values() {
        assert!((ln_gamma(1.0)).abs() < 1e-14);
        assert!((ln_gamma(2.0)).abs() < 1e-14);
        assert!((ln_gamma(0.5) - std::f64::consts::PI.sqrt().ln()).abs() < 1e-13);
        assert!((ln_gamma(6.0) - 120f64.ln()).abs() < 1e-13);
        let g72 = (15.0 / 8.0) * std::f64::consts::PI.sqrt(); // Γ(7/2)
        assert!((ln_gamma(3.5) - g72.ln()).abs() < 1e-13);
    }

    #[test]
    fn semicircle_pointwise() {
        assert!((semicircle_density(0.0) - 1.0 / std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(semicircle_density(2.0), 0.0);
        assert_eq!(semicircle_density(-2.5), 0.0);
    }

    #[test]
    fn semicircle_mass_and_variance() {
        let mass = integrate(semicircle_density, -2.0, 2.0, 1e-11).unwrap();
        assert!((mass - 1.0).abs() < 1e-10, "{mass}");
        let var = integrate(|x| x * x * semicircle_density(x), -2.0, 2.0, 1e-11).unwrap();
        assert!((var - 1.0).abs() < 1e-10, "{var}");
    }

    #[test]
    fn fourier_pair_sinc_case() {
        // α = 3/2: the transform of sinc is the indicator of (−1,1) scaled
        // by 1/2, so both sides equal 1/2 at x = 0.3.
        let (lhs, rhs) = fourier_pair_check(Half(3), 0.3).unwrap();
        assert!((rhs - 0.5).abs() < 1e-14, "rhs {rhs}");
        assert!((lhs - rhs).abs() < 1e-6, "lhs {lhs} rhs {rhs}");
    }

    #[test]
    fn fourier_pair_five_halves_at_origin() {
        // rhs = (1/2)·C(3/2, 1/2) = 3/4.
        let (lhs, rhs) = fourier_pair_check(Half(5), 0.0).unwrap();
        assert!((rhs - 0.75).abs() < 1e-14, "rhs {rhs}");
        assert!((lhs - rhs).abs() < 1e-6, "lhs {lhs}");
    }

    #[test]
    fn fourier_pair_rhs_vanishes_at_edge() {
        let rhs = fourier_pair_closed_form(Half::from_int(4), 0.999_999).unwrap();
        assert!(rhs < 1e-13, "{rhs}");
    }

    #[test]
    fn fourier_pair_domain_errors() {
        assert!(fourier_pair_check(Half(2), 0.0).is_err());
        assert!(fourier_pair_check(Half(5), 1.0).is_err());
    }
}
