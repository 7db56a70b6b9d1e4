//! Cross-module integration: sampler → eigensolver → statistics pipelines
//! checked against the exact-arithmetic layer and against distributional
//! invariances of the spherical measure.

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use sphens::eigen::{eigenvalues, Spectrum};
use sphens::ensembles::{sample_batch, sample_gaussian, sample_spherical, RngState};
use sphens::exact::{moment_gue, moment_spherical, rational_to_f64};
use sphens::matrix::{Beta, EnsembleSpec, SelfAdjointMatrix};
use sphens::stats::{empirical_moments, ks_distance_two_sample, ks_p_value};

fn spectra(spec: &EnsembleSpec, count: usize, seed: u64) -> Vec<Spectrum> {
    sample_batch(spec, count, RngState::new(seed))
        .unwrap()
        .par_iter()
        .map(|a| eigenvalues(a).unwrap())
        .collect()
}

#[test]
fn spherical_samples_satisfy_radius_constraint() {
    for beta in [Beta::One, Beta::Two, Beta::Four] {
        let r = 2.0;
        let spec = EnsembleSpec::spherical(beta, 6, r).unwrap();
        for s in spectra(&spec, 50, 77) {
            let power: f64 = s.values.iter().map(|x| x * x).sum();
            assert!(
                (power - r * r).abs() <= 1e-8 * r * r,
                "β={beta:?}: Σλ² = {power} vs r² = {}",
                r * r
            );
        }
    }
}

#[test]
fn projection_is_independent_of_gaussian_scale() {
    // Projecting G_β(N, q) onto the sphere gives the same law for every q;
    // compare the top-eigenvalue distribution for q = 1 and q = 7.
    let dim = 6;
    let r = (dim as f64).sqrt();
    let count = 600usize;
    let max_for = |q: f64, seed: u64| -> Vec<f64> {
        let spec = EnsembleSpec::gaussian(Beta::Two, dim, q).unwrap();
        (0..count)
            .map(|i| {
                let g = sample_gaussian(&spec, RngState::with_stream(seed, i as u64)).unwrap();
                let projected = g.scale(r / g.frobenius_norm());
                *eigenvalues(&projected).unwrap().values.last().unwrap() / r
            })
            .collect()
    };
    let a = max_for(1.0, 31);
    let b = max_for(7.0, 32);
    let d = ks_distance_two_sample(&a, &b);
    let n_eff = (count * count) as f64 / (2 * count) as f64;
    let p = ks_p_value(d, n_eff);
    assert!(p > 0.001, "KS = {d:.4}, p = {p:.5}");
}

fn conjugate_by_cycle(a: &SelfAdjointMatrix) -> SelfAdjointMatrix {
    // P A Pᵀ for the cyclic permutation i ↦ i+1 (mod N): a relabeling of
    // the basis, so the spectrum must be invariant in distribution.
    let n = a.dim();
    let sigma = |i: usize| (i + 1) % n;
    let mut out = SelfAdjointMatrix::zero(a.beta(), n);
    for i in 0..n {
        out.set_diag(sigma(i), a.entry(i, i).a);
        for j in (i + 1)..n {
            let q = a.entry(i, j);
            let (si, sj) = (sigma(i), sigma(j));
            if si < sj {
                out.set_entry(si, sj, q);
            } else {
                out.set_entry(sj, si, q.conjugate());
            }
        }
    }
    out
}

#[test]
fn spectrum_invariant_under_permutation_conjugation() {
    let dim = 5;
    let spec = EnsembleSpec::spherical(Beta::Two, dim, 1.0).unwrap();
    let count = 500usize;
    let plain: Vec<f64> = (0..count)
        .map(|i| {
            let a = sample_spherical(&spec, RngState::with_stream(41, i as u64)).unwrap();
            *eigenvalues(&a).unwrap().values.last().unwrap()
        })
        .collect();
    let conjugated: Vec<f64> = (0..count)
        .map(|i| {
            let a = sample_spherical(&spec, RngState::with_stream(42, i as u64)).unwrap();
            *eigenvalues(&conjugate_by_cycle(&a)).unwrap().values.last().unwrap()
        })
        .collect();
    let d = ks_distance_two_sample(&plain, &conjugated);
    let n_eff = count as f64 / 2.0;
    let p = ks_p_value(d, n_eff);
    assert!(p > 0.001, "KS = {d:.4}, p = {p:.5}");

    // Conjugation is exactly spectrum-preserving matrix by matrix.
    let a = sample_spherical(&spec, RngState::new(43)).unwrap();
    let sa = eigenvalues(&a).unwrap().values;
    let sb = eigenvalues(&conjugate_by_cycle(&a)).unwrap().values;
    for (x, y) in sa.iter().zip(&sb) {
        assert!((x - y).abs() < 1e-10);
    }
}

#[test]
fn moment_pipeline_closure_all_beta() {
    // Spherical Monte Carlo moments must match the transfer formula applied
    // to Gaussian Monte Carlo moments (β = 1, 4) or to the exact Gaussian
    // moments (β = 2), within combined standard errors.
    let one = BigRational::one();
    for beta in [Beta::One, Beta::Two, Beta::Four] {
        for dim in [4u32, 8] {
            let r_sq = BigRational::from_integer((dim as i64).into());
            let count = 2500usize;
            let sph = EnsembleSpec::spherical(beta, dim as usize, (dim as f64).sqrt()).unwrap();
            let em_sph =
                empirical_moments(&spectra(&sph, count, 1000 + dim as u64), 6).unwrap();
            let gau = EnsembleSpec::gaussian(beta, dim as usize, 1.0).unwrap();
            let em_gau =
                empirical_moments(&spectra(&gau, count, 2000 + dim as u64), 6).unwrap();
            for k in [2u32, 4, 6] {
                // Transfer factor at q = 1: ((β/4)·r²)^{k/2}·Γ(n/2)/Γ((k+n)/2).
                let factor = rational_to_f64(
                    &moment_spherical(k, beta, dim, &r_sq, &one, &one).unwrap(),
                );
                let (mc_g, se_g) = (em_gau.m[k as usize], em_gau.se[k as usize]);
                let (mc_s, se_s) = (em_sph.m[k as usize], em_sph.se[k as usize]);
                let combined = ((factor * se_g).powi(2) + se_s.powi(2)).sqrt();
                assert!(
                    (factor * mc_g - mc_s).abs() <= 3.5 * combined,
                    "β={beta:?}, N={dim}, k={k}: transfer {:.4} vs direct {mc_s:.4} (σ {combined:.4})",
                    factor * mc_g,
                );
                if beta == Beta::Two {
                    let exact = rational_to_f64(&{
                        let q = BigRational::one();
                        let g = moment_gue(k, dim, &q);
                        moment_spherical(k, beta, dim, &r_sq, &g, &q).unwrap()
                    });
                    assert!(
                        (mc_s - exact).abs() <= 3.5 * se_s,
                        "β=2, N={dim}, k={k}: MC {mc_s:.4} vs exact {exact:.4} (se {se_s:.4})"
                    );
                }
            }
        }
    }
}

#[test]
fn quaternionic_embedding_yields_quadruples() {
    // embed_real(embed_complex(A)) has each quaternionic eigenvalue with
    // multiplicity 4.
    let spec = EnsembleSpec::spherical(Beta::Four, 3, 1.5).unwrap();
    for i in 0..10u64 {
        let a = sample_spherical(&spec, RngState::with_stream(91, i)).unwrap();
        let quaternionic = eigenvalues(&a).unwrap().values;
        let real = a.embed_complex().embed_real();
        let full = eigenvalues(&real).unwrap().values;
        assert_eq!(full.len(), 12);
        for (g, lam) in full.chunks_exact(4).zip(&quaternionic) {
            for v in g {
                assert!(
                    (v - lam).abs() <= 1e-8 * (1.0 + lam.abs()),
                    "quadruple {g:?} vs λ {lam}"
                );
            }
        }
    }
}

#[test]
fn batch_at_headline_scale_completes() {
    // 2000 matrices of size 100×100, the scale of the headline spacing
    // experiment; sampling only, eigensolving is covered elsewhere.
    let spec = EnsembleSpec::spherical(Beta::Two, 100, 10.0).unwrap();
    let batch = sample_batch(&spec, 2000, RngState::new(6)).unwrap();
    assert_eq!(batch.len(), 2000);
    for a in batch.iter().step_by(400) {
        assert!((a.frobenius_norm() - 10.0).abs() <= 1e-12 * 10.0);
    }
}

#[test]
fn gaussian_trace_power_matches_exact_gue_table() {
    // E[(1/N)Tr A²] for G_2(2, 2) is 2/q = 1 exactly.
    let spec = EnsembleSpec::gaussian(Beta::Two, 2, 2.0).unwrap();
    let em = empirical_moments(&spectra(&spec, 40_000, 7), 2).unwrap();
    let exact = rational_to_f64(&moment_gue(2, 2, &BigRational::from_integer(2.into())));
    assert!(
        (em.m[2] - exact).abs() <= 3.0 * em.se[2],
        "MC {:.5} ± {:.5} vs exact {exact}",
        em.m[2],
        em.se[2]
    );
}
