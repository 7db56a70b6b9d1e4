//! Quadrature: adaptive Gauss–Kronrod panels, an endpoint-avoiding rule for
//! integrable edge singularities, and truncated oscillatory integrals over
//! the half line with sequence extrapolation.

use super::StatsError;

// 15-point Kronrod abscissae (positive half) with the embedded 7-point
// Gauss rule; the standard QUADPACK constants.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One 15-point Kronrod panel: (integral, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut res_gauss = WG[3] * f_center;
    let mut res_kronrod = WGK[7] * f_center;
    let mut res_abs = res_kronrod.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = f_center;

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        res_kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let raw_err = ((res_kronrod - res_gauss) * half).abs();
    res_asc *= half.abs();
    res_abs *= half.abs();

    // QUADPACK error rescaling.
    let mut err = raw_err;
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    let tiny = f64::MIN_POSITIVE / (50.0 * f64::EPSILON);
    if res_abs > tiny {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }

    (res_kronrod * half, err)
}

struct Panel {
    err: f64,
    a: f64,
    b: f64,
    val: f64,
}

/// Node budget shared by the adaptive routines (function evaluations).
pub const NODE_BUDGET: usize = 1_000_000;

/// Adaptive panel subdivision until the stacked-rule error estimate drops
/// below `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64, StatsError> {
    integrate_with_budget(&f, lo, hi, tol, NODE_BUDGET)
}

pub(crate) fn integrate_with_budget<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    tol: f64,
    budget: usize,
) -> Result<f64, StatsError> {
    if lo == hi {
        return Ok(0.0);
    }
    let (val, err) = gk15(f, lo, hi);
    let mut evals = 15usize;
    let mut active = vec![Panel { err, a: lo, b: hi, val }];
    // Panels too narrow to split or already at rounding level get retired.
    let mut settled_val = 0.0f64;
    let mut settled_err = 0.0f64;

    loop {
        let active_err: f64 = active.iter().map(|p| p.err).sum();
        if settled_err + active_err <= tol || active.is_empty() {
            let total: f64 = settled_val + active.iter().map(|p| p.val).sum::<f64>();
            return Ok(total);
        }
        if evals >= budget {
            return Err(StatsError::BudgetExceeded { evals });
        }
        // Split the worst panel.
        let worst = active
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .expect("nonempty");
        let p = active.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        let width_limit = 8.0 * f64::EPSILON * p.a.abs().max(p.b.abs()).max(1.0);
        if (p.b - p.a).abs() <= width_limit || mid <= p.a.min(p.b) || mid >= p.a.max(p.b) {
            settled_val += p.val;
            settled_err += p.err.min(tol * 0.01);
            continue;
        }
        let (v1, e1) = gk15(f, p.a, mid);
        let (v2, e2) = gk15(f, mid, p.b);
        evals += 30;
        active.push(Panel { err: e1, a: p.a, b: mid, val: v1 });
        active.push(Panel { err: e2, a: mid, b: p.b, val: v2 });
    }
}

/// Endpoint-avoiding rule for integrands with integrable singularities of
/// the type (1−u²)^{−1/2} at either end: substitutes `x = mid + h·sin θ`
/// (which turns half-integer-power edge weights into smooth cosine powers)
/// and integrates adaptively in θ. Nodes never touch the endpoints.
pub fn integrate_open<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64, StatsError> {
    if lo == hi {
        return Ok(0.0);
    }
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let g = |theta: f64| {
        let x = mid + half * theta.sin();
        f(x) * half * theta.cos()
    };
    integrate_with_budget(&g, -std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2, tol, NODE_BUDGET)
}

/// Wynn's ε-algorithm. Returns the sequence of diagonal (even-column)
/// estimates; the last entries are the most accelerated.
fn wynn_epsilon(sums: &[f64]) -> Vec<f64> {
    let n = sums.len();
    let mut prev_col = vec![0.0f64; n + 1]; // ε_{-1} = 0
    let mut curr_col = sums.to_vec(); // ε_0 = S
    let mut diagonals = vec![*sums.last().expect("nonempty")];
    let mut k = 1;
    loop {
        let len = curr_col.len();
        if len < 2 {
            break;
        }
        let mut next_col = Vec::with_capacity(len - 1);
        for i in 0..(len - 1) {
            let denom = curr_col[i + 1] - curr_col[i];
            if denom.abs() < 1e-305 {
                // Exactly converged tail; shortcut to the stable value.
                return vec![curr_col[i + 1]];
            }
            next_col.push(prev_col[i + 1] + 1.0 / denom);
        }
        if k % 2 == 0 {
            if let Some(&d) = next_col.last() {
                if d.is_finite() {
                    diagonals.push(d);
                }
            }
        }
        prev_col = curr_col;
        curr_col = next_col;
        k += 1;
    }
    diagonals
}

/// ∫₀^∞ h(t)·cos(xt) dt for an `h` that eventually oscillates with
/// frequency `main_freq` under an algebraically decaying envelope (a Bessel
/// tail). The head `[0, t_start]` is integrated adaptively; past `t_start`
/// the integral is summed over half-periods π/main_freq of the envelope
/// oscillation and the partial sums are accelerated with Wynn's ε-algorithm,
/// which handles the two combined frequencies main_freq ± x.
///
/// `t_start` must lie beyond the oscillation onset (the Bessel turning
/// point) so the half-period cells see pure decaying oscillation.
pub fn fourier_cos_halfline<F: Fn(f64) -> f64>(
    h: F,
    x: f64,
    main_freq: f64,
    t_start: f64,
    tol: f64,
) -> Result<f64, StatsError> {
    assert!(main_freq > 0.0 && t_start > 0.0);
    let g = |t: f64| h(t) * (x * t).cos();
    let head = integrate_with_budget(&g, 0.0, t_start, tol * 0.1, NODE_BUDGET)?;

    let delta = std::f64::consts::PI / main_freq;
    const MAX_CELLS: usize = 600;
    let mut sums = Vec::with_capacity(MAX_CELLS);
    let mut acc = head;
    let mut best = acc;
    let mut stable_count = 0usize;
    for m in 0..MAX_CELLS {
        let a = t_start + m as f64 * delta;
        let b = a + delta;
        // One half-period cell: two stacked panels are plenty for ≤ two
        // oscillation features.
        let midpoint = 0.5 * (a + b);
        let (v1, _) = gk15(&g, a, midpoint);
        let (v2, _) = gk15(&g, midpoint, b);
        acc += v1 + v2;
        sums.push(acc);

        if sums.len() >= 6 {
            let diags = wynn_epsilon(&sums);
            let last = *diags.last().expect("nonempty");
            let prev = if diags.len() >= 2 { diags[diags.len() - 2] } else { acc };
            let err_est = (last - prev).abs();
            if err_est < tol * 0.5 && last.is_finite() {
                stable_count += 1;
                best = last;
                if stable_count >= 2 {
                    return Ok(best);
                }
            } else {
                stable_count = 0;
                if last.is_finite() {
                    best = last;
                }
            }
        }
        // A tail already below tolerance needs no acceleration.
        if m >= 4 && (v1 + v2).abs() < tol * 0.05 {
            let recent = &sums[sums.len().saturating_sub(3)..];
            if recent.iter().all(|s| (s - acc).abs() < tol * 0.25) {
                return Ok(acc);
            }
        }
    }
    if stable_count >= 1 {
        return Ok(best);
    }
    Err(StatsError::BudgetExceeded { evals: MAX_CELLS * 30 })
}
