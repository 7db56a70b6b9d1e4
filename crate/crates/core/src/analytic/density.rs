//! The closed-form spectral density of the unitary spherical ensemble.
//!
//! In the scaled variable u = x/r the density is
//!
//!   f(x) = π^{piFactor} · p_N(u) · (1 − u²)^{(N²−2N−1)/2} / r,
//!
//! obtained by applying (d/du)^{2j} symbolically to (1−u²)^{(N²−3)/2 + j}
//! for j = 0..N−1, combining the terms over the common edge factor, and
//! collecting the Gamma ratios exactly. Working in u makes every coefficient
//! a rational number independent of r; π enters only through the integer
//! power `piFactor` (−1 for even N, 0 for odd N — the √π parts of the Gamma
//! ratios cancel differently by parity).

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::RationalPolynomial;
use super::AnalyticError;
use crate::exact::{binomial, factorial, gamma_ratio, Half};

/// Symbolic density model for `S_2(N, r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityModel {
    pub dim: u32,
    pub radius: f64,
    /// Power of π multiplying the rational polynomial part.
    pub pi_factor: i32,
    /// Exponent (N²−2N−1)/2 of the edge factor (1−u²).
    pub exponent: Half,
    /// The rational polynomial p_N in u = x/r (even, degree 2N−2).
    pub p: RationalPolynomial,
    p_f64: Vec<f64>,
}

/// One product P(u)·(1−u²)^b under d/du:
/// [P′(u)(1−u²) − 2b·u·P(u)]·(1−u²)^{b−1}; with b a half-integer, 2b is an
/// exact integer.
fn differentiate_once(poly: &RationalPolynomial, b: Half) -> (RationalPolynomial, Half) {
    let one_minus_u2 = RationalPolynomial::one_minus_x_sq_pow(1);
    let two_b = BigRational::from_integer(BigInt::from(b.0));
    let part1 = poly.derivative().mul(&one_minus_u2);
    let part2 = poly.scale(&two_b).shift_up(1);
    (part1.add(&part2.scale(&BigRational::from_integer(BigInt::from(-1)))), Half(b.0 - 2))
}

/// Builds the symbolic density model for `S_2(N, r)`, N ≥ 2.
pub fn build_density_model(dim: u32, radius: f64) -> Result<DensityModel, AnalyticError> {
    if dim < 2 {
        return Err(AnalyticError::InvalidDimension(dim));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(AnalyticError::InvalidParameter("radius must be positive"));
    }
    let n = (dim as i64) * (dim as i64); // n = N² for β = 2
    let exponent = Half(n - 2 * dim as i64 - 1);

    let mut p = RationalPolynomial::zero();
    let mut pi_factor: Option<i32> = None;
    for j in 0..dim as i64 {
        // (d/du)^{2j} (1−u²)^{(n−3)/2 + j}
        let mut poly = RationalPolynomial::one();
        let mut b = Half(n - 3 + 2 * j);
        for _ in 0..(2 * j) {
            let (next, nb) = differentiate_once(&poly, b);
            poly = next;
            b = nb;
        }
        debug_assert_eq!(b.0, n - 3 - 2 * j);
        // Lift to the common edge exponent.
        let lift = ((b.0 - exponent.0) / 2) as usize;
        debug_assert_eq!(lift as i64, dim as i64 - 1 - j);
        poly = poly.mul(&RationalPolynomial::one_minus_x_sq_pow(lift));

        // Scalar: (1/N)·C(N, j+1)·Γ(n/2)/(2^j √π Γ((n−1)/2 + j) j!).
        let ratio = gamma_ratio(Half(n), Half(n - 1 + 2 * j))?;
        let term_pi = (ratio.sqrt_pi_power as i32 - 1) / 2;
        debug_assert_eq!((ratio.sqrt_pi_power as i32 - 1) % 2, 0);
        match pi_factor {
            None => pi_factor = Some(term_pi),
            Some(prev) => debug_assert_eq!(prev, term_pi, "π power must not depend on j"),
        }
        let mut scalar = ratio.value;
        scalar *= BigRational::from_integer(binomial(dim as u64, j as u64 + 1));
        scalar /= BigRational::from_integer(BigInt::from(dim) * BigInt::from(2u8).pow(j as u32));
        scalar /= BigRational::from_integer(factorial(j as u64));

        p = p.add(&poly.scale(&scalar));
    }

    let p_f64 = p.coeffs_f64();
    Ok(DensityModel {
        dim,
        radius,
        pi_factor: pi_factor.expect("at least one term"),
        exponent,
        p,
        p_f64,
    })
}

impl DensityModel {
    /// p_N(u) with exact rational arithmetic (u exact); the reference for
    /// the f64 Horner path.
    pub fn eval_p_exact(&self, u: &BigRational) -> BigRational {
        self.p.eval_rational(u)
    }

    /// Serialization record used for golden-file regression: one `key=value`
    /// line each for N, r, exponent (as "p/2"), piFactor, and the p_N
    /// coefficients as "p/q" strings.
    pub fn to_record(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        writeln!(s, "N={}", self.dim).unwrap();
        writeln!(s, "r={}", self.radius).unwrap();
        writeln!(s, "exponent={}/2", self.exponent.0).unwrap();
        writeln!(s, "pi_factor={}", self.pi_factor).unwrap();
        for (k, c) in self.p.coeffs().iter().enumerate() {
            writeln!(s, "p{}={}", k, crate::exact::rational_string(c)).unwrap();
        }
        s
    }
}

/// Evaluates the density at x. Outside the support this is 0; at the
/// boundary |x| = r it is 0 when the edge exponent is positive and a
/// signaled divergence when it is negative (N = 2).
pub fn eval_density(model: &DensityModel, x: f64) -> Result<f64, AnalyticError> {
    let r = model.radius;
    let u = x / r;
    if u.abs() > 1.0 {
        return Ok(0.0);
    }
    if u.abs() == 1.0 {
        return if model.exponent.0 > 0 {
            Ok(0.0)
        } else {
            Err(AnalyticError::BoundaryDivergence)
        };
    }
    // (1−u)(1+u) keeps precision near the edge.
    let w = (1.0 - u) * (1.0 + u);
    let edge = w.powf(model.exponent.as_f64());
    let pi_pow = std::f64::consts::PI.powi(model.pi_factor);
    Ok(pi_pow * model.p.eval_f64(&model.p_f64, u) * edge / r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational_to_f64;
    use crate::stats::{integrate, integrate_open};
    use num_traits::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arcsine_model_for_dim_two() {
        // N = 2: density 1/(π√(r²−x²)), i.e. p ≡ 1, piFactor −1,
        // exponent −1/2.
        let m = build_density_model(2, 2f64.sqrt()).unwrap();
        assert_eq!(m.p.coeffs(), &[BigRational::one()]);
        assert_eq!(m.pi_factor, -1);
        assert_eq!(m.exponent, Half(-1));

        let at_zero = eval_density(&m, 0.0).unwrap();
        let expect = 1.0 / (std::f64::consts::PI * 2f64.sqrt());
        assert!((at_zero - expect).abs() < 1e-15);
    }

    #[test]
    fn dim_three_frozen_polynomial() {
        // Hand derivation: carrying out the three-term sum for N = 3 gives
        // p_3(u) = 35/64 − (35/32)u² + (315/64)u⁴ with edge exponent 1.
        let m = build_density_model(3, 1.0).unwrap();
        assert_eq!(m.pi_factor, 0);
        assert_eq!(m.exponent, Half(2));
        let expect = [rat(35, 64), rat(0, 1), rat(-35, 32), rat(0, 1), rat(315, 64)];
        assert_eq!(m.p.coeffs(), &expect);
    }

    #[test]
    fn exponent_and_pi_factor_by_parity() {
        for dim in 2..=10u32 {
            let m = build_density_model(dim, 1.5).unwrap();
            let n = dim as i64 * dim as i64;
            assert_eq!(m.exponent.0, n - 2 * dim as i64 - 1);
            assert_eq!(m.pi_factor, if dim % 2 == 0 { -1 } else { 0 }, "N={dim}");
            assert!(m.p.is_even(), "p_{dim} must be even");
            // Cancellation can lower the degree (p_2 is constant).
            assert!(m.p.degree() <= 2 * dim as usize - 2);
        }
    }

    #[test]
    fn rejects_dim_below_two() {
        assert!(matches!(build_density_model(1, 1.0), Err(AnalyticError::InvalidDimension(1))));
    }

    #[test]
    fn mass_is_one_small_dims() {
        for dim in 2..=6u32 {
            let r = (dim as f64).sqrt();
            let m = build_density_model(dim, r).unwrap();
            let f = |x: f64| eval_density(&m, x).unwrap_or(0.0);
            let mass = if dim == 2 {
                integrate_open(f, -r, r, 1e-12).unwrap()
            } else {
                integrate(f, -r, r, 1e-12).unwrap()
            };
            assert!((mass - 1.0).abs() < 1e-10, "N={dim}: mass {mass}");
        }
    }

    #[test]
    fn evaluation_is_even() {
        let m = build_density_model(4, 2.0).unwrap();
        let a = eval_density(&m, 0.7).unwrap();
        let b = eval_density(&m, -0.7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn outside_support_and_boundary() {
        let m2 = build_density_model(2, 1.0).unwrap();
        assert_eq!(eval_density(&m2, 2.0).unwrap(), 0.0);
        assert!(matches!(eval_density(&m2, 1.0), Err(AnalyticError::BoundaryDivergence)));
        let m4 = build_density_model(4, 1.0).unwrap();
        assert_eq!(eval_density(&m4, 1.0).unwrap(), 0.0);
        assert_eq!(eval_density(&m4, -1.0).unwrap(), 0.0);
    }

    #[test]
    fn horner_matches_exact_rational_eval() {
        for dim in [2u32, 5, 8] {
            let m = build_density_model(dim, 1.0).unwrap();
            for i in 0..20 {
                let u = -0.95 + 0.1 * i as f64;
                let exact_u = crate::exact::parse_rational(&format!("{u:.6}")).unwrap();
                let exact = rational_to_f64(&m.eval_p_exact(&exact_u));
                let u_f = rational_to_f64(&exact_u);
                let horner = m.p.eval_f64(&m.p_f64.clone(), u_f);
                let scale = exact.abs().max(1.0);
                assert!(
                    (horner - exact).abs() < 1e-12 * scale,
                    "N={dim}, u={u}: {horner} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn record_roundtrip_shape() {
        let m = build_density_model(3, 3f64.sqrt()).unwrap();
        let rec = m.to_record();
        assert!(rec.contains("N=3"));
        assert!(rec.contains("exponent=2/2"));
        assert!(rec.contains("pi_factor=0"));
        assert!(rec.contains("p0=35/64"));
        assert!(rec.contains("p4=315/64"));
    }
}
