//! Monte Carlo statistics: histograms, empirical moments with standard
//! errors, middle-bulk spacing extraction, Kolmogorov–Smirnov distances, and
//! the shared quadrature engine.

mod quadrature;

pub use quadrature::{fourier_cos_halfline, integrate, integrate_open, NODE_BUDGET};

use crate::eigen::Spectrum;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("quadrature budget exceeded after {evals} evaluations")]
    BudgetExceeded { evals: usize },
    #[error("input batch is empty")]
    EmptyBatch,
    #[error("spectra in a batch must share one dimension")]
    MixedDimensions,
    #[error("need at least {take} eigenvalues, spectrum has {have}")]
    SpectrumTooSmall { take: usize, have: usize },
    #[error("take must be an odd positive count")]
    InvalidTake,
    #[error("spacings must be nonnegative with a positive mean")]
    DegenerateSpacings,
}

/// Fixed-width histogram with left-closed bins `[lo + i·w, lo + (i+1)·w)`.
/// Values below `lo` or at/above `hi` land in the under/overflow counters.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
    pub underflow: u64,
    pub overflow: u64,
    pub total: u64,
}

impl Histogram {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Self {
        assert!(bins >= 1 && lo < hi, "need bins ≥ 1 and lo < hi");
        Histogram { lo, hi, counts: vec![0; bins], underflow: 0, overflow: 0, total: 0 }
    }

    pub fn bin_width(&self) -> f64 {
        (self.hi - self.lo) / self.counts.len() as f64
    }

    pub fn add(&mut self, value: f64) {
        self.total += 1;
        if value < self.lo {
            self.underflow += 1;
            return;
        }
        if value >= self.hi {
            self.overflow += 1;
            return;
        }
        let idx = ((value - self.lo) / self.bin_width()) as usize;
        // Rounding at the upper edge of the last bin.
        let idx = idx.min(self.counts.len() - 1);
        self.counts[idx] += 1;
    }

    pub fn add_all<'a>(&mut self, values: impl IntoIterator<Item = &'a f64>) {
        for &v in values {
            self.add(v);
        }
    }

    /// Density view: counts divided by total·binwidth, so the in-range mass
    /// integrates to (total − underflow − overflow)/total.
    pub fn density(&self) -> Vec<f64> {
        let norm = self.total.max(1) as f64 * self.bin_width();
        self.counts.iter().map(|&c| c as f64 / norm).collect()
    }
}

pub fn histogram(values: &[f64], lo: f64, hi: f64, bins: usize) -> Histogram {
    let mut h = Histogram::new(lo, hi, bins);
    h.add_all(values);
    h
}

/// Empirical moments of a batch of spectra. Each matrix contributes one
/// value of (1/N)Σᵢ λᵢ^k, so the standard error is taken over matrices
/// (eigenvalues within one matrix are dependent).
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalMoments {
    pub max_k: usize,
    pub m: Vec<f64>,
    pub se: Vec<f64>,
}

pub fn empirical_moments(batch: &[Spectrum], max_k: usize) -> Result<EmpiricalMoments, StatsError> {
    if batch.is_empty() {
        return Err(StatsError::EmptyBatch);
    }
    let dim = batch[0].values.len();
    if batch.iter().any(|s| s.values.len() != dim) {
        return Err(StatsError::MixedDimensions);
    }
    let b = batch.len() as f64;
    let mut m = vec![0.0; max_k + 1];
    let mut sq = vec![0.0; max_k + 1];
    let mut powers = vec![0.0; dim];
    for spectrum in batch {
        powers.fill(1.0);
        for k in 0..=max_k {
            if k > 0 {
                for (p, &v) in powers.iter_mut().zip(&spectrum.values) {
                    *p *= v;
                }
            }
            let stat = powers.iter().sum::<f64>() / dim as f64;
            m[k] += stat;
            sq[k] += stat * stat;
        }
    }
    for v in &mut m {
        *v /= b;
    }
    let se = m
        .iter()
        .zip(&sq)
        .map(|(&mean, &s2)| {
            if batch.len() < 2 {
                0.0
            } else {
                let var = (s2 / b - mean * mean).max(0.0) * b / (b - 1.0);
                (var / b).sqrt()
            }
        })
        .collect();
    m[0] = 1.0; // exactly, by definition of the k = 0 statistic
    Ok(EmpiricalMoments { max_k, m, se })
}

/// The `take − 1` consecutive differences of the middle `take` sorted
/// eigenvalues. For N = 100, take = 21 this selects 0-based indices 40..=60.
pub fn extract_middle_spacings(spectrum: &Spectrum, take: usize) -> Result<Vec<f64>, StatsError> {
    if take < 1 || take % 2 == 0 {
        return Err(StatsError::InvalidTake);
    }
    let n = spectrum.values.len();
    if n < take {
        return Err(StatsError::SpectrumTooSmall { take, have: n });
    }
    let start = (n - take + 1) / 2;
    let window = &spectrum.values[start..start + take];
    Ok(window.windows(2).map(|w| w[1] - w[0]).collect())
}

/// Pooled spacings normalized to mean 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SpacingSample {
    pub spacings: Vec<f64>,
    /// True when a zero spacing (a repeated eigenvalue) slipped through.
    pub degenerate: bool,
}

pub fn normalize_spacings(pooled: &[f64]) -> Result<SpacingSample, StatsError> {
    if pooled.is_empty() || pooled.iter().any(|&s| s < 0.0 || !s.is_finite()) {
        return Err(StatsError::DegenerateSpacings);
    }
    let mean = pooled.iter().sum::<f64>() / pooled.len() as f64;
    if mean <= 0.0 {
        return Err(StatsError::DegenerateSpacings);
    }
    let spacings: Vec<f64> = pooled.iter().map(|&s| s / mean).collect();
    let degenerate = spacings.iter().any(|&s| s == 0.0);
    Ok(SpacingSample { spacings, degenerate })
}

/// Two-sample Kolmogorov–Smirnov distance (sup norm between empirical CDFs).
pub fn ks_distance_two_sample(a: &[f64], b: &[f64]) -> f64 {
    assert!(!a.is_empty() && !b.is_empty());
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < xs.len() && j < ys.len() {
        let x = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= x {
            i += 1;
        }
        while j < ys.len() && ys[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d.min(1.0)
}

/// One-sample Kolmogorov–Smirnov distance against a CDF.
pub fn ks_distance_cdf<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> f64 {
    assert!(!sample.is_empty());
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let c = cdf(x);
        d = d.max((c - i as f64 / n).abs());
        d = d.max(((i + 1) as f64 / n - c).abs());
    }
    d.min(1.0)
}

/// Asymptotic two-sided KS p-value for distance `d` at effective sample
/// size `n_eff` (for two samples, n_eff = n·m/(n+m)).
pub fn ks_p_value(d: f64, n_eff: f64) -> f64 {
    let sqrt_n = n_eff.sqrt();
    let lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    let mut p = 0.0f64;
    let mut sign = 1.0;
    for j in 1..=100 {
        let term = (-2.0 * (j as f64) * (j as f64) * lambda * lambda).exp();
        p += 2.0 * sign * term;
        sign = -sign;
        if term < 1e-16 {
            break;
        }
    }
    p.clamp(0.0, 1.0)
}

/// Error function, accurate to ~1e−12 absolute: Maclaurin series for small
/// arguments, asymptotic complement beyond.
pub fn erf(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= 4.0 {
        let mut term = ax;
        let mut sum = ax;
        let x2 = ax * ax;
        for n in 1..200 {
            let nf = n as f64;
            term *= -x2 / nf;
            let add = term / (2.0 * nf + 1.0);
            sum += add;
            if add.abs() < 1e-18 * sum.abs().max(1e-300) {
                break;
            }
        }
        (2.0 / std::f64::consts::PI.sqrt() * sum).clamp(-1.0, 1.0) * x.signum()
    } else {
        // erfc(x) = e^{−x²}/(x√π)·Σ (−1)^k (2k−1)!!/(2x²)^k
        let x2 = ax * ax;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..40 {
            let next = term * -((2 * k - 1) as f64) / (2.0 * x2);
            if next.abs() >= term.abs() {
                break;
            }
            term = next;
            sum += term;
            if term.abs() < 1e-18 {
                break;
            }
        }
        let erfc = (-x2).exp() / (ax * std::f64::consts::PI.sqrt()) * sum;
        (1.0 - erfc) * x.signum()
    }
}

/// GUE Wigner-surmise spacing density p(s) = (32/π²) s² e^{−4s²/π};
/// normalized with mean 1.
pub fn wigner_surmise_gue_pdf(s: f64) -> f64 {
    if s < 0.0 {
        return 0.0;
    }
    let pi = std::f64::consts::PI;
    32.0 / (pi * pi) * s * s * (-4.0 * s * s / pi).exp()
}

/// CDF of the GUE surmise: erf(2s/√π) − (4/π) s e^{−4s²/π}.
pub fn wigner_surmise_gue_cdf(s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    let pi = std::f64::consts::PI;
    erf(2.0 * s / pi.sqrt()) - 4.0 / pi * s * (-4.0 * s * s / pi).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spectrum(values: &[f64]) -> Spectrum {
        Spectrum { values: values.to_vec(), residual: 0.0 }
    }

    #[test]
    fn moments_of_symmetric_pair() {
        let em = empirical_moments(&[spectrum(&[1.0, -1.0])], 2).unwrap();
        assert_eq!(em.m[0], 1.0);
        assert_eq!(em.m[1], 0.0);
        assert_eq!(em.m[2], 1.0);
    }

    #[test]
    fn moments_of_constant_spectrum() {
        let c: f64 = 1.7;
        let em = empirical_moments(&[spectrum(&[c; 5])], 4).unwrap();
        for k in 0..=4usize {
            assert!((em.m[k] - c.powi(k as i32)).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn moments_reject_empty_batch() {
        assert!(matches!(empirical_moments(&[], 2), Err(StatsError::EmptyBatch)));
    }

    #[test]
    fn middle_spacings_pin_indices() {
        // λ_i = i² makes the selected index range visible in the spacings.
        let vals: Vec<f64> = (0..100).map(|i| (i * i) as f64).collect();
        let sp = extract_middle_spacings(&spectrum(&vals), 21).unwrap();
        assert_eq!(sp.len(), 20);
        // indices 40..=60: first spacing 41² − 40² = 81, last 60² − 59² = 119.
        assert_eq!(sp[0], 81.0);
        assert_eq!(sp[19], 119.0);
    }

    #[test]
    fn middle_spacings_small_case() {
        // (1,2,3,4,5), take 3 → middle values (2,3,4) → spacings (1,1);
        // λ_i = i² pins the indices to 1..=3.
        let sp = extract_middle_spacings(&spectrum(&[1.0, 2.0, 3.0, 4.0, 5.0]), 3).unwrap();
        assert_eq!(sp, vec![1.0, 1.0]);
        let sq = extract_middle_spacings(&spectrum(&[0.0, 1.0, 4.0, 9.0, 16.0]), 3).unwrap();
        assert_eq!(sq, vec![3.0, 5.0]);
    }

    #[test]
    fn middle_spacings_reject_short_spectrum() {
        let r = extract_middle_spacings(&spectrum(&[1.0; 20]), 21);
        assert!(matches!(r, Err(StatsError::SpectrumTooSmall { .. })));
    }

    #[test]
    fn spacing_normalization() {
        let s = normalize_spacings(&[2.0, 2.0, 2.0]).unwrap();
        assert_eq!(s.spacings, vec![1.0, 1.0, 1.0]);
        assert!(!s.degenerate);
        let s = normalize_spacings(&[1.0, 3.0]).unwrap();
        assert_eq!(s.spacings, vec![0.5, 1.5]);
        assert!(normalize_spacings(&[0.0, 0.0]).is_err());
        let z = normalize_spacings(&[0.0, 2.0]).unwrap();
        assert!(z.degenerate);
    }

    #[test]
    fn ks_extremes() {
        assert_eq!(ks_distance_two_sample(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]), 0.0);
        assert_eq!(ks_distance_two_sample(&[0.0, 0.0, 0.0], &[1.0, 1.0, 1.0]), 1.0);
    }

    #[test]
    fn ks_against_normal_cdf() {
        // 10⁴ deterministic standard normals vs the exact normal CDF; the
        // DKW bound makes < 0.02 essentially certain.
        use crate::ensembles::RngState;
        let mut src = crate::ensembles::NormalSource::new(RngState::new(2024));
        let draws: Vec<f64> = (0..10_000).map(|_| src.next()).collect();
        let cdf = |x: f64| 0.5 * (1.0 + erf(x / 2f64.sqrt()));
        let d = ks_distance_cdf(&draws, cdf);
        assert!(d < 0.02, "KS = {d}");
        assert!(ks_p_value(d, draws.len() as f64) > 0.001);
    }

    #[test]
    fn surmise_normalization_and_mean() {
        assert_eq!(wigner_surmise_gue_cdf(0.0), 0.0);
        assert!((wigner_surmise_gue_cdf(10.0) - 1.0).abs() < 1e-12);
        let mass = integrate(wigner_surmise_gue_pdf, 0.0, 12.0, 1e-12).unwrap();
        assert!((mass - 1.0).abs() < 1e-10);
        let mean = integrate(|s| s * wigner_surmise_gue_pdf(s), 0.0, 14.0, 1e-12).unwrap();
        assert!((mean - 1.0).abs() < 1e-10, "mean {mean}");
        // CDF consistent with the density by quadrature.
        let c = integrate(wigner_surmise_gue_pdf, 0.0, 1.3, 1e-12).unwrap();
        assert!((c - wigner_surmise_gue_cdf(1.3)).abs() < 1e-10);
    }

    #[test]
    fn erf_reference_values() {
        assert!((erf(0.5) - 0.5204998778130465).abs() < 1e-13);
        assert!((erf(1.0) - 0.8427007929497149).abs() < 1e-13);
        assert!((erf(-2.0) + 0.9953222650189527).abs() < 1e-13);
        assert!((erf(5.0) - 0.9999999999984626).abs() < 1e-14);
    }

    #[test]
    fn histogram_binning_convention() {
        let h = histogram(&[0.5], 0.0, 1.0, 2);
        assert_eq!(h.counts, vec![0, 1]);
        let h = histogram(&[1.0], 0.0, 1.0, 2);
        assert_eq!(h.counts, vec![0, 0]);
        assert_eq!(h.overflow, 1);
        let h = histogram(&[], 0.0, 1.0, 4);
        assert_eq!(h.counts, vec![0, 0, 0, 0]);
        assert_eq!(h.total, 0);
    }

    #[test]
    fn histogram_density_mass() {
        let h = histogram(&[0.1, 0.2, 0.3, 0.9, 5.0], 0.0, 1.0, 10);
        let mass: f64 = h.density().iter().sum::<f64>() * h.bin_width();
        assert!((mass - 0.8).abs() < 1e-12); // 4 of 5 in range
    }

    proptest! {
        #[test]
        fn normalized_spacings_have_unit_mean(v in proptest::collection::vec(0.01f64..10.0, 1..50)) {
            let s = normalize_spacings(&v).unwrap();
            let mean = s.spacings.iter().sum::<f64>() / s.spacings.len() as f64;
            prop_assert!((mean - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn ks_is_bounded(a in proptest::collection::vec(-5.0f64..5.0, 1..40),
                         b in proptest::collection::vec(-5.0f64..5.0, 1..40)) {
            let d = ks_distance_two_sample(&a, &b);
            prop_assert!((0.0..=1.0).contains(&d));
        }

        #[test]
        fn histogram_counts_conserve_total(v in proptest::collection::vec(-2.0f64..3.0, 0..200)) {
            let h = histogram(&v, 0.0, 1.0, 7);
            let binned: u64 = h.counts.iter().sum();
            prop_assert_eq!(binned + h.underflow + h.overflow, h.total);
            prop_assert_eq!(h.total as usize, v.len());
        }
    }
}
