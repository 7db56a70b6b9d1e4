//! The characteristic function of the unitary spherical ensemble.
//!
//! With n = N² and w = (rt)²/4,
//!
//!   φ(t) = (1/N) Σ_{j=0}^{N−1} C(N, j+1) · Γ(n/2)/(Γ(n/2+j) j!)
//!            · ₀F₁(n/2 + j, −w) · (−2w)^j,
//!
//! which is the even real function generated by the moment series. The
//! equivalent finite Bessel combination
//!
//!   φ(t) = (Γ(n/2)/N) (2/(rt))^{n/2−1} Σ_j (1/j!) C(N, j+1)
//!            · J_{n/2+j−1}(rt) (−rt)^j
//!
//! has a removable singularity at t = 0, so the ₀F₁ form is the primary
//! evaluation path and the Bessel form is exposed for cross-checking.

use num_rational::BigRational;
use num_traits::One;

use super::hyp::{bessel_j, hyp0f1};
use super::{ln_gamma, AnalyticError};
use crate::exact::{binomial, factorial, gamma_ratio, rational_to_f64, Half};
use crate::stats;

/// Exact term coefficients of φ for one (N, r).
#[derive(Clone, Debug, PartialEq)]
pub struct CharFnModel {
    pub dim: u32,
    pub radius: f64,
    /// n = N², the real dimension of the β = 2 matrix space.
    pub n: i64,
    /// c_j = (1/N)·C(N, j+1)·Γ(n/2)/(Γ(n/2+j)·j!), exact.
    pub coeffs: Vec<BigRational>,
    coeffs_f64: Vec<f64>,
}

pub fn build_char_fn_model(dim: u32, radius: f64) -> Result<CharFnModel, AnalyticError> {
    if dim < 1 {
        return Err(AnalyticError::InvalidDimension(dim));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(AnalyticError::InvalidParameter("radius must be positive"));
    }
    let n = dim as i64 * dim as i64;
    let mut coeffs = Vec::with_capacity(dim as usize);
    for j in 0..dim as i64 {
        let ratio = gamma_ratio(Half(n), Half(n + 2 * j))?;
        debug_assert_eq!(ratio.sqrt_pi_power, 0);
        let mut c = ratio.value;
        c *= BigRational::from_integer(binomial(dim as u64, j as u64 + 1));
        c /= BigRational::from_integer(factorial(j as u64) * num_bigint::BigInt::from(dim));
        coeffs.push(c);
    }
    debug_assert!(coeffs[0] == BigRational::one());
    let coeffs_f64 = coeffs.iter().map(rational_to_f64).collect();
    Ok(CharFnModel { dim, radius, n, coeffs, coeffs_f64 })
}

/// φ(t) through the ₀F₁ form (valid at every t, including 0).
pub fn char_fn(model: &CharFnModel, t: f64) -> Result<f64, AnalyticError> {
    let rt = model.radius * t;
    let w = 0.25 * rt * rt;
    let mut acc = 0.0;
    let mut power = 1.0; // (−2w)^j
    for (j, &c) in model.coeffs_f64.iter().enumerate() {
        let alpha = Half(model.n + 2 * j as i64);
        acc += c * power * hyp0f1(alpha, -w)?;
        power *= -2.0 * w;
    }
    Ok(acc)
}

/// φ(t) through the Bessel-combination form; t must be nonzero (the
/// prefactor (2/(rt))^{n/2−1} is singular but removable at t = 0).
pub fn char_fn_bessel(model: &CharFnModel, t: f64) -> Result<f64, AnalyticError> {
    let rt = (model.radius * t).abs();
    if rt == 0.0 {
        return Err(AnalyticError::InvalidParameter("Bessel form is singular at t = 0"));
    }
    let half_n = model.n as f64 / 2.0;
    // Γ(n/2)·(2/(rt))^{n/2−1} in log form to dodge intermediate overflow.
    let ln_prefactor = ln_gamma(half_n) + (half_n - 1.0) * (2.0 / rt).ln();
    let prefactor = ln_prefactor.exp() / model.dim as f64;
    let mut acc = 0.0;
    let mut sign_power = 1.0; // (−rt)^j
    let mut j_factorial = 1.0;
    for j in 0..model.dim as u64 {
        if j > 0 {
            j_factorial *= j as f64;
            sign_power *= -rt;
        }
        let order = Half(model.n + 2 * j as i64 - 2); // n/2 + j − 1
        let b = bessel_j(order, rt)?;
        let binom = rational_to_f64(&BigRational::from_integer(binomial(
            model.dim as u64,
            j + 1,
        )));
        acc += binom / j_factorial * b * sign_power;
    }
    Ok(prefactor * acc)
}

/// Fourier inversion (1/2π)∫e^{−itx}φ(t)dt = (1/π)∫₀^∞ φ(t)cos(xt)dt by
/// oscillatory quadrature; requires |x| < r strictly. The Bessel tail of φ
/// oscillates with frequency r once rt passes the largest order, which sets
/// the half-period summation onset.
pub fn invert_char_fn(model: &CharFnModel, x: f64, tol: f64) -> Result<f64, AnalyticError> {
    if !(x.abs() < model.radius) {
        return Err(AnalyticError::InvalidParameter("inversion needs |x| < r"));
    }
    let max_order = model.n as f64 / 2.0 + model.dim as f64;
    let onset = (1.5 * max_order + 8.0) / model.radius;
    let phi = {
        let m = model.clone();
        move |t: f64| char_fn(&m, t).unwrap_or(f64::NAN)
    };
    let integral = stats::fourier_cos_halfline(phi, x.abs(), model.radius, onset, tol)?;
    Ok(integral / std::f64::consts::PI)
}
