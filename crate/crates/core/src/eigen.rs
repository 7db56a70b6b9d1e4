//! Eigenvalues of self-adjoint matrices for all three β values.
//!
//! One real symmetric kernel (Householder tridiagonalization followed by
//! implicit-shift QL, in the classic EISPACK/Jama formulation) serves every
//! case: β = 2 matrices are realified to 2N×2N symmetric matrices whose
//! spectrum consists of exact degenerate pairs, and β = 4 matrices are first
//! embedded as 2N×2N complex Hermitian matrices (Kramers doubling) and then
//! realified. Degenerate groups are collapsed by sorted adjacency; because
//! the degeneracy is exact in infinite precision, a large intra-pair gap is
//! treated as a solver failure rather than averaged away.

use crate::matrix::{Beta, SelfAdjointMatrix};

/// Sorted eigenvalues plus the residual `max_i |M v_i − λ_i v_i|₂` of the
/// underlying real symmetric solve (on the embedded matrix for β = 2, 4).
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EigenError {
    #[error("QL iteration failed to converge within {max_iter} sweeps for eigenvalue {index}")]
    ConvergenceFailure { index: usize, max_iter: usize },
    #[error("degenerate pair gap {gap:e} exceeds tolerance {tol:e} (values {lo}, {hi})")]
    PairingFailure { gap: f64, tol: f64, lo: f64, hi: f64 },
}

/// Eigenvalues of `a`, ascending.
pub fn eigenvalues(a: &SelfAdjointMatrix) -> Result<Spectrum, EigenError> {
    let norm = a.frobenius_norm();
    match a.beta() {
        Beta::One => solve_real(&a.to_dense_real(), a.dim()),
        Beta::Two => {
            let embedded = a.embed_real();
            let full = solve_real(&embedded.to_dense_real(), embedded.dim())?;
            let values = collapse_degenerate(&full.values, 2, norm)?;
            Ok(Spectrum { values, residual: full.residual })
        }
        Beta::Four => {
            let embedded = a.embed_complex().embed_real();
            let full = solve_real(&embedded.to_dense_real(), embedded.dim())?;
            let values = collapse_degenerate(&full.values, 4, norm)?;
            Ok(Spectrum { values, residual: full.residual })
        }
    }
}

/// Collapses sorted values into groups of `mult` adjacent entries, asserting
/// each group's spread stays below `max(1e−8·|A|, 1e−12)` and returning the
/// group means.
fn collapse_degenerate(sorted: &[f64], mult: usize, norm: f64) -> Result<Vec<f64>, EigenError> {
    debug_assert_eq!(sorted.len() % mult, 0);
    let tol = (1e-8 * norm).max(1e-12);
    let mut out = Vec::with_capacity(sorted.len() / mult);
    for group in sorted.chunks_exact(mult) {
        let lo = group[0];
        let hi = group[mult - 1];
        let gap = hi - lo;
        if gap > tol {
            return Err(EigenError::PairingFailure { gap, tol, lo, hi });
        }
        out.push(group.iter().sum::<f64>() / mult as f64);
    }
    Ok(out)
}

// Implicit-shift QL sweeps allowed per eigenvalue; the total across the
// matrix is therefore bounded by 30·dim.
const MAX_QL_SWEEPS: usize = 30;

fn solve_real(matrix: &[f64], n: usize) -> Result<Spectrum, EigenError> {
    debug_assert_eq!(matrix.len(), n * n);
    if n == 1 {
        return Ok(Spectrum { values: vec![matrix[0]], residual: 0.0 });
    }
    let mut v = matrix.to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(n, &mut v, &mut d, &mut e);
    tql2(n, &mut d, &mut e, &mut v)?;
    sort_with_vectors(n, &mut d, &mut v);
    let residual = max_residual(matrix, n, &d, &v);
    Ok(Spectrum { values: d, residual })
}

/// Householder reduction to tridiagonal form with accumulation of the
/// orthogonal transformation (Bowdler–Martin–Reinsch–Wilkinson, as in
/// EISPACK `tred2`). On return `d` holds the diagonal, `e` the subdiagonal
/// (in `e[1..]`), and `v` the accumulated transformation, column-major in
/// the sense `v[row * n + col]`.
fn tred2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) {
    for j in 0..n {
        d[j] = v[(n - 1) * n + j];
    }

    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for item in d.iter().take(i) {
            scale += item.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1) * n + j];
                v[i * n + j] = 0.0;
                v[j * n + i] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for item in e.iter_mut().take(i) {
                *item = 0.0;
            }

            for j in 0..i {
                let f = d[j];
                v[j * n + i] = f;
                let mut g = e[j] + v[j * n + j] * f;
                for k in (j + 1)..i {
                    g += v[k * n + j] * d[k];
                    e[k] += v[k * n + j] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[k * n + j] -= f * e[k] + g * d[k];
                }
                d[j] = v[(i - 1) * n + j];
                v[i * n + j] = 0.0;
            }
        }
        d[i] = h;
    }

    // Accumulate transformations.
    for i in 0..(n - 1) {
        v[(n - 1) * n + i] = v[i * n + i];
        v[i * n + i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k * n + i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k * n + i + 1] * v[k * n + j];
                }
                for k in 0..=i {
                    v[k * n + j] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[k * n + i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1) * n + j];
        v[(n - 1) * n + j] = 0.0;
    }
    v[(n - 1) * n + (n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL on the tridiagonal matrix, rotating the accumulated
/// vectors along (EISPACK `tql2`).
fn tql2(n: usize, d: &mut [f64], e: &mut [f64], v: &mut [f64]) -> Result<(), EigenError> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    let eps = 2.0f64.powi(-52);
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }

        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_SWEEPS {
                    return Err(EigenError::ConvergenceFailure { index: l, max_iter: MAX_QL_SWEEPS });
                }

                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0f64;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0f64;
                let mut s2 = 0.0f64;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    for k in 0..n {
                        h = v[k * n + i + 1];
                        v[k * n + i + 1] = s * v[k * n + i] + c * h;
                        v[k * n + i] = c * v[k * n + i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

fn sort_with_vectors(n: usize, d: &mut [f64], v: &mut [f64]) {
    // Selection sort keeps the eigenvector columns aligned.
    for i in 0..(n - 1) {
        let mut k = i;
        for j in (i + 1)..n {
            if d[j] < d[k] {
                k = j;
            }
        }
        if k != i {
            d.swap(i, k);
            for row in 0..n {
                v.swap(row * n + i, row * n + k);
            }
        }
    }
}

fn max_residual(matrix: &[f64], n: usize, d: &[f64], v: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    let mut col = vec![0.0; n];
    let mut av = vec![0.0; n];
    for j in 0..n {
        for i in 0..n {
            col[i] = v[i * n + j];
        }
        for i in 0..n {
            let mut acc = 0.0;
            let row = &matrix[i * n..(i + 1) * n];
            for (k, &x) in col.iter().enumerate() {
                acc += row[k] * x;
            }
            av[i] = acc;
        }
        let mut rsq = 0.0;
        for i in 0..n {
            let diff = av[i] - d[j] * col[i];
            rsq += diff * diff;
        }
        worst = worst.max(rsq.sqrt());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{sample_spherical, RngState};
    use crate::matrix::{EnsembleSpec, Quaternion};

    #[test]
    fn sorts_a_diagonal_matrix() {
        let m = SelfAdjointMatrix::from_diag(Beta::One, &[3.0, 1.0, 2.0]);
        let s = eigenvalues(&m).unwrap();
        assert_eq!(s.values, vec![1.0, 2.0, 3.0]);
        assert!(s.residual <= 1e-14);
    }

    #[test]
    fn symmetric_swap_matrix() {
        let mut m = SelfAdjointMatrix::zero(Beta::One, 2);
        m.set_entry(0, 1, Quaternion::real(1.0));
        let s = eigenvalues(&m).unwrap();
        assert!((s.values[0] + 1.0).abs() < 1e-14);
        assert!((s.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hermitian_pauli_y() {
        // [[0, i], [−i, 0]] has characteristic polynomial λ² − 1.
        let mut m = SelfAdjointMatrix::zero(Beta::Two, 2);
        m.set_entry(0, 1, Quaternion::complex(0.0, 1.0));
        let s = eigenvalues(&m).unwrap();
        assert_eq!(s.values.len(), 2);
        assert!((s.values[0] + 1.0).abs() < 1e-12);
        assert!((s.values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn realified_pauli_y_spectrum_before_collapse() {
        // The 4×4 realification of [[0, i], [−i, 0]] has eigenvalues
        // {−1, −1, 1, 1}.
        let mut m = SelfAdjointMatrix::zero(Beta::Two, 2);
        m.set_entry(0, 1, Quaternion::complex(0.0, 1.0));
        let s = eigenvalues(&m.embed_real()).unwrap();
        let expect = [-1.0, -1.0, 1.0, 1.0];
        for (v, w) in s.values.iter().zip(expect) {
            assert!((v - w).abs() < 1e-12, "{:?}", s.values);
        }
    }

    #[test]
    fn quaternionic_scalar() {
        let m = SelfAdjointMatrix::from_diag(Beta::Four, &[2.5]);
        let s = eigenvalues(&m).unwrap();
        assert_eq!(s.values.len(), 1);
        assert!((s.values[0] - 2.5).abs() < 1e-13);
    }

    #[test]
    fn quaternionic_2x2_known_spectrum() {
        // [[0, q], [q*, 0]] with q = (1+i+j+k)/2 has |q| = 1, so the
        // quaternionic eigenvalues are ±1.
        let mut m = SelfAdjointMatrix::zero(Beta::Four, 2);
        m.set_entry(0, 1, Quaternion::new(0.5, 0.5, 0.5, 0.5));
        let s = eigenvalues(&m).unwrap();
        assert!((s.values[0] + 1.0).abs() < 1e-12);
        assert!((s.values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_and_norm_identities_random() {
        for (beta, dim) in [(Beta::One, 9), (Beta::Two, 7), (Beta::Four, 5)] {
            let spec = EnsembleSpec::spherical(beta, dim, 1.7).unwrap();
            for stream in 0..40 {
                let a = sample_spherical(&spec, RngState::with_stream(23, stream)).unwrap();
                let s = eigenvalues(&a).unwrap();
                assert_eq!(s.values.len(), dim);
                let norm = a.frobenius_norm();
                let tr: f64 = s.values.iter().sum();
                let power: f64 = s.values.iter().map(|x| x * x).sum();
                assert!((tr - a.trace()).abs() <= 1e-9 * (1.0 + norm), "trace identity β={beta:?}");
                assert!(
                    (power - norm * norm).abs() <= 1e-8 * norm * norm,
                    "norm identity β={beta:?}: {power} vs {}",
                    norm * norm
                );
                assert!(s.values.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn pairing_failure_is_reported() {
        let err = collapse_degenerate(&[0.0, 0.5, 1.0, 1.5], 2, 1.0).unwrap_err();
        assert!(matches!(err, EigenError::PairingFailure { .. }));
    }

    #[test]
    fn collapse_means_groups() {
        let vals = collapse_degenerate(&[1.0, 1.0 + 1e-13, 2.0, 2.0 - 1e-13], 2, 1.0).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 2.0).abs() < 1e-12);
    }
}
