//! Reference eigenvalue computation, independent of the QL solver path:
//! characteristic polynomial coefficients via power sums and Newton's
//! identities, then real-root isolation by recursive critical-point
//! bisection (valid because self-adjoint spectra are real, so every
//! derivative of the characteristic polynomial is real-rooted too).
//! Intended for N ≤ 4 validation runs.

use crate::matrix::{Beta, SelfAdjointMatrix};

#[derive(Clone, Copy, Debug, Default)]
struct Cpx {
    re: f64,
    im: f64,
}

impl Cpx {
    fn mul(self, o: Cpx) -> Cpx {
        Cpx { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }

    fn add(self, o: Cpx) -> Cpx {
        Cpx { re: self.re + o.re, im: self.im + o.im }
    }
}

fn complex_matrix(a: &SelfAdjointMatrix) -> (Vec<Cpx>, usize) {
    let n = a.dim();
    let mut m = vec![Cpx::default(); n * n];
    for i in 0..n {
        for j in 0..n {
            let q = a.entry(i, j);
            debug_assert_eq!((q.c, q.d), (0.0, 0.0), "complex_matrix needs β ≤ 2 entries");
            m[i * n + j] = Cpx { re: q.a, im: q.b };
        }
    }
    (m, n)
}

fn mat_mul(a: &[Cpx], b: &[Cpx], n: usize) -> Vec<Cpx> {
    let mut out = vec![Cpx::default(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                out[i * n + j] = out[i * n + j].add(aik.mul(b[k * n + j]));
            }
        }
    }
    out
}

/// Monic characteristic polynomial, coefficients ascending (constant first),
/// from the power sums tr(A^k) and Newton's identities.
fn charpoly(m: &[Cpx], n: usize) -> Vec<f64> {
    let mut power_sums = vec![0.0f64; n + 1];
    let mut current = m.to_vec();
    for k in 1..=n {
        let tr: Cpx = (0..n).fold(Cpx::default(), |acc, i| acc.add(current[i * n + i]));
        debug_assert!(tr.im.abs() < 1e-9 * (1.0 + tr.re.abs()), "trace must be real");
        power_sums[k] = tr.re;
        if k < n {
            current = mat_mul(&current, m, n);
        }
    }
    // e_k = (1/k) Σ_{i=1..k} (−1)^{i−1} e_{k−i} p_i
    let mut elementary = vec![0.0f64; n + 1];
    elementary[0] = 1.0;
    for k in 1..=n {
        let mut acc = 0.0;
        let mut sign = 1.0;
        for i in 1..=k {
            acc += sign * elementary[k - i] * power_sums[i];
            sign = -sign;
        }
        elementary[k] = acc / k as f64;
    }
    // p(λ) = Σ_k (−1)^k e_k λ^{n−k}, ascending storage.
    let mut coeffs = vec![0.0f64; n + 1];
    for (k, e) in elementary.iter().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        coeffs[n - k] = sign * e;
    }
    coeffs
}

fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect()
}

/// All real roots of a real-rooted polynomial (ascending coefficients),
/// by bisection between consecutive critical points.
fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| *c == 0.0) {
        coeffs.pop();
    }
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = *coeffs.last().unwrap();
    for c in &mut coeffs {
        *c /= lead;
    }
    if deg == 1 {
        return vec![-coeffs[0]];
    }

    let mut breakpoints = real_roots(&poly_derivative(&coeffs));
    let bound = 1.0 + coeffs.iter().take(deg).map(|c| c.abs()).fold(0.0, f64::max);
    breakpoints.retain(|x| x.abs() < bound);
    breakpoints.sort_by(f64::total_cmp);
    let mut pts = Vec::with_capacity(breakpoints.len() + 2);
    pts.push(-bound);
    pts.extend(breakpoints);
    pts.push(bound);

    let scale = coeffs.iter().map(|c| c.abs()).fold(1.0, f64::max);
    let mut roots = Vec::with_capacity(deg);
    for w in pts.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (poly_eval(&coeffs, lo), poly_eval(&coeffs, hi));
        if flo == 0.0 {
            push_unique(&mut roots, lo);
            continue;
        }
        if flo.signum() == fhi.signum() {
            // A touching (even-multiplicity) root sits at a critical point
            // with a vanishing value.
            if fhi.abs() <= 1e-11 * scale {
                push_unique(&mut roots, hi);
            }
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo.min(hi) || mid >= lo.max(hi) {
                break;
            }
            let fm = poly_eval(&coeffs, mid);
            if fm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if fm.signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        push_unique(&mut roots, 0.5 * (lo + hi));
    }
    roots
}

fn push_unique(roots: &mut Vec<f64>, x: f64) {
    if roots.iter().all(|r| (r - x).abs() > 1e-12 * (1.0 + x.abs())) {
        roots.push(x);
    }
}

/// Exact square root of a monic even-degree polynomial that is a perfect
/// square (ascending coefficients), by coefficient matching from the top.
/// Kramers doubling makes the embedded β = 4 characteristic polynomial such
/// a square.
fn poly_sqrt(coeffs: &[f64]) -> Vec<f64> {
    let deg2 = coeffs.len() - 1;
    debug_assert_eq!(deg2 % 2, 0);
    debug_assert!((coeffs[deg2] - 1.0).abs() < 1e-9);
    let n = deg2 / 2;
    let mut b = vec![0.0f64; n + 1];
    b[n] = 1.0;
    for m in 1..=n {
        let k = 2 * n - m;
        let mut rest = 0.0;
        for i in (n - m + 1)..n {
            let j = k as i64 - i as i64;
            if j > (n - m) as i64 && j < n as i64 {
                rest += b[i] * b[j as usize];
            }
        }
        b[n - m] = 0.5 * (coeffs[k] - rest);
    }
    b
}

/// Eigenvalues (ascending) from the characteristic polynomial. For β = 4
/// the matrix is embedded as complex Hermitian first; the embedded
/// polynomial is the square of the quaternionic one, whose exact square
/// root is extracted before root finding.
pub fn charpoly_eigenvalues(a: &SelfAdjointMatrix) -> Vec<f64> {
    let poly = match a.beta() {
        Beta::One | Beta::Two => {
            let (m, n) = complex_matrix(a);
            charpoly(&m, n)
        }
        Beta::Four => {
            let embedded = a.embed_complex();
            let (m, n) = complex_matrix(&embedded);
            poly_sqrt(&charpoly(&m, n))
        }
    };
    let mut roots = real_roots(&poly);
    roots.sort_by(f64::total_cmp);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Quaternion;

    #[test]
    fn diagonal_matrix_roots() {
        let a = SelfAdjointMatrix::from_diag(Beta::One, &[3.0, -1.0, 0.5]);
        let roots = charpoly_eigenvalues(&a);
        assert_eq!(roots.len(), 3);
        for (r, want) in roots.iter().zip([-1.0, 0.5, 3.0]) {
            assert!((r - want).abs() < 1e-10, "{roots:?}");
        }
    }

    #[test]
    fn hermitian_known_spectrum() {
        let mut a = SelfAdjointMatrix::zero(Beta::Two, 2);
        a.set_entry(0, 1, Quaternion::complex(0.0, 1.0));
        let roots = charpoly_eigenvalues(&a);
        assert!((roots[0] + 1.0).abs() < 1e-12);
        assert!((roots[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quaternionic_collapses_kramers_pairs() {
        let mut a = SelfAdjointMatrix::zero(Beta::Four, 2);
        a.set_entry(0, 1, Quaternion::new(0.5, 0.5, 0.5, 0.5));
        let roots = charpoly_eigenvalues(&a);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] + 1.0).abs() < 1e-10);
        assert!((roots[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn repeated_eigenvalue_detected() {
        let a = SelfAdjointMatrix::from_diag(Beta::One, &[2.0, 2.0, -1.0]);
        let roots = charpoly_eigenvalues(&a);
        assert!(roots.iter().any(|r| (r - 2.0).abs() < 1e-9), "{roots:?}");
        assert!(roots.iter().any(|r| (r + 1.0).abs() < 1e-9), "{roots:?}");
    }
}
