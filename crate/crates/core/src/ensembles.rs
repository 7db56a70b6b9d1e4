//! Seedable samplers for the Gaussian and spherical ensembles.
//!
//! Gaussian matrices are drawn entrywise from the density
//! exp(−(βq/4)(Σ a_ii² + 2Σ_{i<j}|a_ij|²)): diagonal entries are
//! Normal(0, 2/(βq)) and every scalar component of an off-diagonal entry is
//! Normal(0, 1/(βq)). Spherical matrices are obtained by projecting a
//! Gaussian draw onto the Frobenius sphere, `A ↦ (r/|A|)·A`, which is
//! measure preserving onto the uniform distribution on the sphere.
//!
//! Randomness comes from ChaCha8 keyed by a 64-bit seed with an explicit
//! 64-bit stream index, with normals produced by Box–Muller in a fixed entry
//! order (diagonal first, then the upper triangle row-major, components in
//! a,b,c,d order). Identical `(seed, stream)` therefore reproduces the exact
//! same matrix on every run, and batches are reproducible under any degree
//! of parallelism because each draw owns its own stream.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use crate::matrix::{EnsembleKind, EnsembleSpec, SelfAdjointMatrix};

/// Seed plus sub-stream index; the full identity of a random draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RngState {
    pub seed: u64,
    pub stream: u64,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        RngState { seed, stream: 0 }
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        RngState { seed, stream }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SampleError {
    #[error("expected a {expected} ensemble spec")]
    WrongKind { expected: &'static str },
    #[error(transparent)]
    Spec(#[from] crate::matrix::SpecError),
}

/// Standard normals from a counter-based generator, produced pairwise by
/// Box–Muller so the byte-to-sample mapping is fully specified here.
pub(crate) struct NormalSource {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl NormalSource {
    pub(crate) fn new(state: RngState) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(state.seed);
        rng.set_stream(state.stream);
        NormalSource { rng, spare: None }
    }

    /// Uniform in (0, 1): top 53 bits centered on half-steps, never 0 or 1.
    fn unit_open(u: u64) -> f64 {
        ((u >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
    }

    pub(crate) fn next(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = Self::unit_open(self.rng.next_u64());
        let u2 = Self::unit_open(self.rng.next_u64());
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        self.spare = Some(radius * angle.sin());
        radius * angle.cos()
    }
}

/// Draws one matrix from `G_β(N, q)`.
pub fn sample_gaussian(spec: &EnsembleSpec, rng: RngState) -> Result<SelfAdjointMatrix, SampleError> {
    let q = match spec.kind {
        EnsembleKind::Gaussian { q } => q,
        EnsembleKind::Spherical { .. } => return Err(SampleError::WrongKind { expected: "Gaussian" }),
    };
    // Re-validate so a hand-built spec cannot smuggle in q ≤ 0 or N = 0.
    let spec = EnsembleSpec::gaussian(spec.beta, spec.dim, q)?;
    Ok(draw_gaussian(&spec, q, &mut NormalSource::new(rng)))
}

fn draw_gaussian(spec: &EnsembleSpec, q: f64, normals: &mut NormalSource) -> SelfAdjointMatrix {
    let beta = spec.beta.value() as f64;
    let sigma_diag = (2.0 / (beta * q)).sqrt();
    let sigma_off = (1.0 / (beta * q)).sqrt();
    let mut m = SelfAdjointMatrix::zero(spec.beta, spec.dim);
    let (diag, off) = m.raw_parts_mut();
    for v in diag.iter_mut() {
        *v = sigma_diag * normals.next();
    }
    for v in off.iter_mut() {
        *v = sigma_off * normals.next();
    }
    m
}

/// Draws one matrix from `S_β(N, r)` by projecting a Gaussian draw (internal
/// q = 1; any q gives the same law) onto the sphere `|A| = r`.
///
/// The measure-zero event `|A| ≈ 0` (guarded at 1e−300 against underflow)
/// is resampled from the same stream.
pub fn sample_spherical(spec: &EnsembleSpec, rng: RngState) -> Result<SelfAdjointMatrix, SampleError> {
    let radius = match spec.kind {
        EnsembleKind::Spherical { radius } => radius,
        EnsembleKind::Gaussian { .. } => return Err(SampleError::WrongKind { expected: "Spherical" }),
    };
    let gauss = EnsembleSpec::gaussian(spec.beta, spec.dim, 1.0)?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(SampleError::Spec(crate::matrix::SpecError::InvalidScale(radius)));
    }
    let mut normals = NormalSource::new(rng);
    loop {
        let a = draw_gaussian(&gauss, 1.0, &mut normals);
        let norm = a.frobenius_norm();
        if norm > 1e-300 {
            return Ok(a.scale(radius / norm));
        }
    }
}

/// Draws `count` independent matrices; draw `i` uses stream
/// `rng.stream + i`, so the batch content is independent of the number of
/// worker threads and equals the sequence of single-draw calls.
pub fn sample_batch(
    spec: &EnsembleSpec,
    count: usize,
    rng: RngState,
) -> Result<Vec<SelfAdjointMatrix>, SampleError> {
    let draw = |i: usize| {
        let st = RngState::with_stream(rng.seed, rng.stream.wrapping_add(i as u64));
        match spec.kind {
            EnsembleKind::Gaussian { .. } => sample_gaussian(spec, st),
            EnsembleKind::Spherical { .. } => sample_spherical(spec, st),
        }
    };
    (0..count).into_par_iter().map(draw).collect()
}
