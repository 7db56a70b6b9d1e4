//! Self-adjoint matrices over the three division algebras.
//!
//! A matrix is real symmetric (β = 1), complex Hermitian (β = 2), or
//! quaternionic self-adjoint (β = 4). Only the real diagonal and the upper
//! triangle are stored, so self-adjointness is a structural invariant rather
//! than a runtime property. Every off-diagonal entry is handled uniformly as
//! a quaternion whose trailing components are forced to zero for β < 4.

use std::fmt;

/// Dyson index: 1 (real symmetric), 2 (complex Hermitian), 4 (quaternionic
/// self-adjoint).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Beta {
    One,
    Two,
    Four,
}

impl Beta {
    pub fn value(self) -> u32 {
        match self {
            Beta::One => 1,
            Beta::Two => 2,
            Beta::Four => 4,
        }
    }

    /// Real scalar components per off-diagonal entry.
    pub fn components(self) -> usize {
        self.value() as usize
    }

    pub fn from_value(v: u32) -> Option<Beta> {
        match v {
            1 => Some(Beta::One),
            2 => Some(Beta::Two),
            4 => Some(Beta::Four),
            _ => None,
        }
    }

    /// Real dimension of the space of self-adjoint matrices,
    /// `β·N(N−1)/2 + N`.
    pub fn real_dimension(self, dim: usize) -> u64 {
        let n = dim as u64;
        self.value() as u64 * n * (n - 1) / 2 + n
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Hamilton quaternion `a + bi + cj + dk`.
///
/// Doubles as the uniform entry scalar: real entries have `b = c = d = 0`,
/// complex entries have `c = d = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Quaternion {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn real(a: f64) -> Self {
        Quaternion { a, b: 0.0, c: 0.0, d: 0.0 }
    }

    pub fn complex(a: f64, b: f64) -> Self {
        Quaternion { a, b, c: 0.0, d: 0.0 }
    }

    pub fn conjugate(self) -> Self {
        Quaternion { a: self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn norm_sq(self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn scaled(self, t: f64) -> Self {
        Quaternion { a: self.a * t, b: self.b * t, c: self.c * t, d: self.d * t }
    }
}

/// Parameters of a matrix ensemble.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EnsembleKind {
    /// Gaussian ensemble with matrix density ∝ exp(−βq|A|²/4).
    Gaussian { q: f64 },
    /// Uniform measure on the Frobenius sphere |A| = r.
    Spherical { radius: f64 },
}

/// An ensemble identifier: Dyson index, matrix size, and the kind-specific
/// scale parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleSpec {
    pub beta: Beta,
    pub dim: usize,
    pub kind: EnsembleKind,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error("matrix dimension must be at least 1, got {0}")]
    InvalidDim(usize),
    #[error("scale parameter must be positive and finite, got {0}")]
    InvalidScale(f64),
}

impl EnsembleSpec {
    pub fn gaussian(beta: Beta, dim: usize, q: f64) -> Result<Self, SpecError> {
        if dim < 1 {
            return Err(SpecError::InvalidDim(dim));
        }
        if !(q > 0.0 && q.is_finite()) {
            return Err(SpecError::InvalidScale(q));
        }
        Ok(EnsembleSpec { beta, dim, kind: EnsembleKind::Gaussian { q } })
    }

    pub fn spherical(beta: Beta, dim: usize, radius: f64) -> Result<Self, SpecError> {
        if dim < 1 {
            return Err(SpecError::InvalidDim(dim));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(SpecError::InvalidScale(radius));
        }
        Ok(EnsembleSpec { beta, dim, kind: EnsembleKind::Spherical { radius } })
    }

    /// Real dimension `n = β·N(N−1)/2 + N` of the matrix space.
    pub fn real_dimension(&self) -> u64 {
        self.beta.real_dimension(self.dim)
    }
}

/// Self-adjoint matrix in upper-triangle storage.
///
/// The diagonal is real; off-diagonal entries are stored for `i < j` only,
/// flattened row-major with `beta.components()` scalar components each. The
/// entry at `(j, i)` is defined as the conjugate of the entry at `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SelfAdjointMatrix {
    beta: Beta,
    dim: usize,
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SelfAdjointMatrix {
    pub fn zero(beta: Beta, dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        let pairs = dim * (dim - 1) / 2;
        SelfAdjointMatrix {
            beta,
            dim,
            diag: vec![0.0; dim],
            off: vec![0.0; pairs * beta.components()],
        }
    }

    pub fn from_diag(beta: Beta, diag: &[f64]) -> Self {
        let mut m = Self::zero(beta, diag.len());
        m.diag.copy_from_slice(diag);
        m
    }

    pub fn beta(&self) -> Beta {
        self.beta
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn off_base(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.dim);
        let n = self.dim;
        (i * n - i * (i + 1) / 2 + (j - i - 1)) * self.beta.components()
    }

    pub fn diag_entry(&self, i: usize) -> f64 {
        self.diag[i]
    }

    pub fn set_diag(&mut self, i: usize, v: f64) {
        self.diag[i] = v;
    }

    /// Entry at `(i, j)` as a quaternion; below the diagonal this is the
    /// conjugate of the stored upper-triangle entry.
    pub fn entry(&self, i: usize, j: usize) -> Quaternion {
        if i == j {
            return Quaternion::real(self.diag[i]);
        }
        let (lo, hi, conj) = if i < j { (i, j, false) } else { (j, i, true) };
        let base = self.off_base(lo, hi);
        let comps = self.beta.components();
        let at = |k: usize| if comps > k { self.off[base + k] } else { 0.0 };
        let q = Quaternion { a: self.off[base], b: at(1), c: at(2), d: at(3) };
        if conj {
            q.conjugate()
        } else {
            q
        }
    }

    /// Sets the upper-triangle entry at `(i, j)`, `i < j`. Components beyond
    /// what β admits must be zero.
    pub fn set_entry(&mut self, i: usize, j: usize, q: Quaternion) {
        assert!(i < j, "set_entry addresses the upper triangle only");
        match self.beta {
            Beta::One => assert!(q.b == 0.0 && q.c == 0.0 && q.d == 0.0),
            Beta::Two => assert!(q.c == 0.0 && q.d == 0.0),
            Beta::Four => {}
        }
        let base = self.off_base(i, j);
        let comps = self.beta.components();
        self.off[base] = q.a;
        if comps > 1 {
            self.off[base + 1] = q.b;
        }
        if comps > 2 {
            self.off[base + 2] = q.c;
            self.off[base + 3] = q.d;
        }
    }

    /// Mutable access to the raw scalar components (diagonal, then the upper
    /// triangle row-major). Used by the samplers.
    pub(crate) fn raw_parts_mut(&mut self) -> (&mut [f64], &mut [f64]) {
        (&mut self.diag, &mut self.off)
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// Squared Frobenius norm `Σ a_ii² + 2 Σ_{i<j} |a_ij|²` where `|·|²` sums
    /// the squares of all scalar components of the entry.
    pub fn frobenius_norm_sq(&self) -> f64 {
        let d: f64 = self.diag.iter().map(|x| x * x).sum();
        let o: f64 = self.off.iter().map(|x| x * x).sum();
        d + 2.0 * o
    }

    /// Frobenius norm `sqrt(Tr(AA*))`; for self-adjoint matrices this equals
    /// the square root of the sum of the squared eigenvalues.
    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_norm_sq().sqrt()
    }

    /// Every scalar component multiplied by `c`.
    pub fn scale(&self, c: f64) -> Self {
        let mut out = self.clone();
        for v in &mut out.diag {
            *v *= c;
        }
        for v in &mut out.off {
            *v *= c;
        }
        out
    }

    /// Standard 2×2 complex representation of each quaternion entry:
    /// `a + bi + cj + dk ↦ [[a+bi, c+di], [−c+di, a−bi]]`.
    ///
    /// The result is Hermitian of size 2N and its spectrum is the
    /// quaternionic spectrum with every eigenvalue doubled (Kramers pairing).
    /// Note `|embed(A)|² = 2|A|²`: each scalar component appears twice.
    pub fn embed_complex(&self) -> SelfAdjointMatrix {
        assert_eq!(self.beta, Beta::Four, "embed_complex requires β = 4");
        let n = self.dim;
        let mut out = SelfAdjointMatrix::zero(Beta::Two, 2 * n);
        for i in 0..n {
            let a = self.diag[i];
            out.set_diag(2 * i, a);
            out.set_diag(2 * i + 1, a);
            // block entry (2i, 2i+1) = c + di = 0 for a real diagonal entry
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let q = self.entry(i, j);
                out.set_entry(2 * i, 2 * j, Quaternion::complex(q.a, q.b));
                out.set_entry(2 * i, 2 * j + 1, Quaternion::complex(q.c, q.d));
                out.set_entry(2 * i + 1, 2 * j, Quaternion::complex(-q.c, q.d));
                out.set_entry(2 * i + 1, 2 * j + 1, Quaternion::complex(q.a, -q.b));
            }
        }
        out
    }

    /// Standard realification `x + iy ↦ [[x, −y], [y, x]]` applied entrywise.
    ///
    /// The result is symmetric of size 2N with the complex spectrum doubled.
    /// As with [`embed_complex`](Self::embed_complex), `|embed(A)|² = 2|A|²`.
    pub fn embed_real(&self) -> SelfAdjointMatrix {
        assert_eq!(self.beta, Beta::Two, "embed_real requires β = 2");
        let n = self.dim;
        let mut out = SelfAdjointMatrix::zero(Beta::One, 2 * n);
        for i in 0..n {
            let x = self.diag[i];
            out.set_diag(2 * i, x);
            out.set_diag(2 * i + 1, x);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let q = self.entry(i, j);
                let (x, y) = (q.a, q.b);
                out.set_entry(2 * i, 2 * j, Quaternion::real(x));
                out.set_entry(2 * i, 2 * j + 1, Quaternion::real(-y));
                out.set_entry(2 * i + 1, 2 * j, Quaternion::real(y));
                out.set_entry(2 * i + 1, 2 * j + 1, Quaternion::real(x));
            }
        }
        out
    }

    /// Dense row-major copy for β = 1 matrices; feeds the real eigensolver.
    pub(crate) fn to_dense_real(&self) -> Vec<f64> {
        assert_eq!(self.beta, Beta::One);
        let n = self.dim;
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = self.diag[i];
            for j in (i + 1)..n {
                let v = self.entry(i, j).a;
                m[i * n + j] = v;
                m[j * n + i] = v;
            }
        }
        m
    }
}
