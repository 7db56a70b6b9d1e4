//! Spherical (fixed Frobenius-norm) random matrix ensembles.
//!
//! The ensembles S_β(N, r) are the N×N real symmetric (β = 1), complex
//! Hermitian (β = 2), and quaternionic self-adjoint (β = 4) matrices with
//! Frobenius norm exactly r, carrying the uniform measure on that sphere.
//! This crate provides:
//!
//! * [`matrix`] — matrix types for the three division algebras, Frobenius
//!   norms, and the quaternion→complex→real embeddings;
//! * [`ensembles`] — reproducible samplers for the Gaussian ensembles
//!   G_β(N, q) and for S_β(N, r) via norm projection;
//! * [`eigen`] — a self-adjoint eigensolver for all three β;
//! * [`exact`] — exact big-rational moments: Catalan numbers, the
//!   Harer–Zagier coefficients behind the unitary Gaussian moments, and the
//!   Gaussian-to-spherical moment transfer;
//! * [`analytic`] — the closed-form β = 2 characteristic function and
//!   spectral density, ₀F₁/Bessel evaluation, and the joint eigenvalue
//!   density on the sphere;
//! * [`stats`] — histograms, empirical moments, spacing statistics,
//!   Kolmogorov–Smirnov distances, and the quadrature engine;
//! * [`validate`] — the cross-validation suite pitting every closed form
//!   against simulation and independent quadrature.

pub mod analytic;
pub mod eigen;
pub mod ensembles;
pub mod exact;
pub mod matrix;
pub mod stats;
pub mod validate;
