//! Exact big-rational evaluation of moment formulas.
//!
//! Gaussian unitary moments come from the Harer–Zagier coefficients
//! c(ℓ, N), generated by (1/2z)(((1+z)/(1−z))^N − 1):
//! m_{2ℓ}(G_2(N, q)) = (1/N) q^{−ℓ} (2ℓ−1)!! c(ℓ, N). Spherical moments for
//! every β follow from the transfer formula
//! m_k(S_β(N, r)) = ((β/4) q r²)^{k/2} · Γ(n/2)/Γ((k+n)/2) · m_k(G_β(N, q)),
//! where n = β·N(N−1)/2 + N; the q dependence cancels exactly. All odd
//! moments vanish. Gamma functions at half-integer arguments are carried as
//! exact rationals times an explicit power of √π so no floating π ever
//! enters a coefficient.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::Beta;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExactError {
    #[error("gamma arguments must be positive, got {0}/2")]
    NonpositiveGamma(i64),
    #[error("moment order must be nonnegative")]
    NegativeOrder,
}

/// A half-integer stored as twice its value, so `Half(7)` is 7/2 and
/// `Half(4)` is 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Half(pub i64);

impl Half {
    pub fn from_int(v: i64) -> Self {
        Half(2 * v)
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn as_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.0), BigInt::from(2))
    }
}

impl std::fmt::Display for Half {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Γ(a)/Γ(b) for positive half-integers a, b: an exact rational times
/// π^(sqrt_pi_power/2), with the power always in {−1, 0, 1}.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfIntegerGammaRatio {
    pub value: BigRational,
    pub sqrt_pi_power: i8,
}

impl HalfIntegerGammaRatio {
    pub fn to_f64(&self) -> f64 {
        let v = rational_to_f64(&self.value);
        match self.sqrt_pi_power {
            0 => v,
            1 => v * std::f64::consts::PI.sqrt(),
            -1 => v / std::f64::consts::PI.sqrt(),
            p => v * std::f64::consts::PI.powf(p as f64 / 2.0),
        }
    }
}

/// Γ at a positive half-integer argument, as (rational, √π power ∈ {0, 1}):
/// Γ(m) = (m−1)!, and Γ(m + 1/2) = (2m)!/(4^m m!) · √π.
fn gamma_half(x: Half) -> Result<(BigRational, i8), ExactError> {
    let p = x.0;
    if p <= 0 {
        return Err(ExactError::NonpositiveGamma(p));
    }
    if p % 2 == 0 {
        let m = (p / 2) as u64;
        Ok((BigRational::from_integer(factorial(m - 1)), 0))
    } else {
        let m = ((p - 1) / 2) as u64;
        let num = factorial(2 * m);
        let den = BigInt::from(4u32).pow(m as u32) * factorial(m);
        Ok((BigRational::new(num, den), 1))
    }
}

/// Exact Γ(a)/Γ(b) via the half-integer closed forms.
pub fn gamma_ratio(a: Half, b: Half) -> Result<HalfIntegerGammaRatio, ExactError> {
    let (ga, sa) = gamma_half(a)?;
    let (gb, sb) = gamma_half(b)?;
    Ok(HalfIntegerGammaRatio { value: ga / gb, sqrt_pi_power: sa - sb })
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// (2ℓ−1)!! = (2ℓ−1)(2ℓ−3)⋯3·1, the 2ℓ-th moment of the standard normal.
pub fn double_factorial_odd(l: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = 3u64;
    while k < 2 * l {
        acc *= k;
        k += 2;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// ℓ-th Catalan number (2ℓ)!/(ℓ!(ℓ+1)!).
pub fn catalan(l: u64) -> BigRational {
    let num = factorial(2 * l);
    let den = factorial(l) * factorial(l + 1);
    BigRational::new(num, den)
}

/// Coefficients c(0, N) … c(max_l, N) of the generating function
/// (1/2z)(((1+z)/(1−z))^N − 1), by exact truncated power-series expansion of
/// (1+z)^N (1−z)^{−N} to order max_l + 1.
pub fn harer_zagier_series(dim: u32, max_l: u32) -> Vec<BigInt> {
    let order = (max_l + 1) as usize;
    // (1−z)^{−N}: coefficient of z^k is C(N−1+k, k).
    let mut inv = vec![BigInt::zero(); order + 1];
    for (k, item) in inv.iter_mut().enumerate() {
        *item = binomial(dim as u64 - 1 + k as u64, k as u64);
    }
    // Multiply by (1+z)^N, truncated.
    let mut series = vec![BigInt::zero(); order + 1];
    for i in 0..=(dim as usize).min(order) {
        let b = binomial(dim as u64, i as u64);
        for k in 0..=(order - i) {
            series[i + k] += &b * &inv[k];
        }
    }
    // Shift down by one power of z and halve: c(ℓ, N) = [z^{ℓ+1}] series / 2.
    (1..=order)
        .map(|i| {
            let v = &series[i] / BigInt::from(2);
            debug_assert_eq!(&v * BigInt::from(2), series[i], "series coefficient must be even");
            v
        })
        .collect()
}

/// c(ℓ, N), a positive integer.
pub fn harer_zagier_c(l: u32, dim: u32) -> BigRational {
    assert!(dim >= 1);
    let series = harer_zagier_series(dim, l);
    BigRational::from_integer(series[l as usize].clone())
}

/// Exact moment m_k(G_2(N, q)) = (1/N) q^{−ℓ} (2ℓ−1)!! c(ℓ, N) for k = 2ℓ;
/// zero for odd k.
pub fn moment_gue(k: u32, dim: u32, q: &BigRational) -> BigRational {
    if k % 2 == 1 {
        return BigRational::zero();
    }
    let l = k / 2;
    let c = harer_zagier_c(l, dim);
    let df = BigRational::from_integer(double_factorial_odd(l as u64));
    let q_pow = pow_rational(q, -(l as i64));
    c * df * q_pow / BigRational::from_integer(BigInt::from(dim))
}

/// Spherical moment via the transfer formula. `gaussian_m_k` must be
/// m_k(G_β(N, q)) for the same q; for β = 2 it comes from [`moment_gue`],
/// for β = 1, 4 the caller supplies it (for example from Monte Carlo).
/// The result is independent of q.
pub fn moment_spherical(
    k: u32,
    beta: Beta,
    dim: u32,
    r_sq: &BigRational,
    gaussian_m_k: &BigRational,
    q: &BigRational,
) -> Result<BigRational, ExactError> {
    if k % 2 == 1 {
        return Ok(BigRational::zero());
    }
    let n = beta.real_dimension(dim as usize) as i64;
    // Γ(n/2)/Γ((k+n)/2): both arguments are halves of integers.
    let ratio = gamma_ratio(Half(n), Half(n + k as i64))?;
    debug_assert_eq!(ratio.sqrt_pi_power, 0, "arguments differ by an integer");
    let beta_quarter = BigRational::new(BigInt::from(beta.value()), BigInt::from(4));
    let base = beta_quarter * q * r_sq;
    Ok(pow_rational(&base, (k / 2) as i64) * ratio.value * gaussian_m_k)
}

/// Exact m_2(G_β(N, q)) = (N − 1 + 2/β)/q, the mean of (1/N)Tr A² under the
/// entrywise variances; at q = N this is the variance 1 + (2/β − 1)/N.
pub fn gaussian_m2(beta: Beta, dim: u32, q: &BigRational) -> BigRational {
    let two_over_beta = BigRational::new(BigInt::from(2), BigInt::from(beta.value()));
    let shifted = BigRational::from_integer(BigInt::from(dim as i64 - 1)) + two_over_beta;
    shifted / q
}

/// Limit moment: C_{k/2} for even k, zero for odd k.
pub fn moment_semicircle(k: u32) -> BigRational {
    if k % 2 == 0 {
        catalan((k / 2) as u64)
    } else {
        BigRational::zero()
    }
}

/// Exact moment table m_0 … m_maxK for one ensemble.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable {
    pub beta: Beta,
    pub dim: u32,
    pub kind: ExactKind,
    pub moments: Vec<BigRational>,
}

/// Ensemble parameter kept rational so the table stays exact.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactKind {
    Gaussian { q: BigRational },
    Spherical { r_sq: BigRational },
}

impl MomentTable {
    /// Exact GUE table (β = 2 only has a closed form).
    pub fn gaussian_unitary(dim: u32, q: BigRational, max_k: u32) -> Self {
        let moments = (0..=max_k).map(|k| moment_gue(k, dim, &q)).collect();
        MomentTable { beta: Beta::Two, dim, kind: ExactKind::Gaussian { q }, moments }
    }

    /// Exact SUE table via the transfer formula (internal q = 1).
    pub fn spherical_unitary(dim: u32, r_sq: BigRational, max_k: u32) -> Result<Self, ExactError> {
        let q = BigRational::one();
        let moments = (0..=max_k)
            .map(|k| {
                let g = moment_gue(k, dim, &q);
                moment_spherical(k, Beta::Two, dim, &r_sq, &g, &q)
            })
            .collect::<Result<_, _>>()?;
        Ok(MomentTable { beta: Beta::Two, dim, kind: ExactKind::Spherical { r_sq }, moments })
    }

    pub fn moment(&self, k: u32) -> &BigRational {
        &self.moments[k as usize]
    }
}

/// Integer power with negative exponents allowed.
pub fn pow_rational(base: &BigRational, exp: i64) -> BigRational {
    if exp == 0 {
        return BigRational::one();
    }
    let mag = base.pow(exp.unsigned_abs() as i32);
    if exp > 0 {
        mag
    } else {
        mag.recip()
    }
}

/// Nearest f64, safe for values far outside the f64 exponent range of
/// numerator or denominator alone.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer();
    let den = r.denom();
    // Scale so the quotient of the leading 64-bit approximations is exact
    // enough: shift both to ~80 significant bits.
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let shift_n = (nb - 80).max(0);
    let shift_d = (db - 80).max(0);
    let top_n = (num >> shift_n).to_f64().unwrap_or(f64::NAN);
    let top_d = (den >> shift_d).to_f64().unwrap_or(f64::NAN);
    (top_n / top_d) * 2f64.powi((shift_n - shift_d) as i32)
}

/// Renders as "p/q", or just "p" for integers (the CLI serialization form).
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses "p", "p/q", or a decimal literal with an exact binary-fraction
/// reading of the mantissa.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().ok()?;
        let den: BigInt = q.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let digits = frac.len() as u32;
        let whole_i: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().ok()?
        };
        let frac_i: BigInt = if frac.is_empty() { BigInt::zero() } else { frac.parse().ok()? };
        let scale = BigInt::from(10u32).pow(digits);
        let signed_frac = if s.starts_with('-') { -frac_i } else { frac_i };
        return Some(BigRational::new(whole_i * &scale + signed_frac, scale));
    }
    let num: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(num))
}

pub fn rational_is_positive(r: &BigRational) -> bool {
    r.is_positive()
}
