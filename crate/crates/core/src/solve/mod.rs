//! Eigensolvers: Lanczos with certified residuals plus a dense oracle.

mod dense;
mod lanczos;
mod tridiag;

pub use dense::{dense_reference, hermitian_eigenvalues, symmetric_eigenvalues};
pub use lanczos::{lanczos_lowest_k, Complex64, LanczosRun, LanczosScalar, LanczosSettings};

use crate::sector::SectorOperator;
use crate::{CoreError, Result};
use serde::{Deserialize, Serialize};

/// Deterministic generator for start vectors (SplitMix64).
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Solver configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveConfig {
    /// Number of lowest eigenpairs requested.
    #[serde(default = "default_k")]
    pub k: usize,
    /// Residual tolerance ‖Av − λv‖ (with ‖v‖ = 1) for convergence.
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Iteration cap; `None` means min(10·dimension, 50000).
    #[serde(default)]
    pub max_iterations: Option<usize>,
    /// Seed of the deterministic start-vector generator.
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_k() -> usize {
    1
}
fn default_tol() -> f64 {
    1e-8
}
fn default_seed() -> u64 {
    42
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            k: 1,
            tol: 1e-8,
            max_iterations: None,
            seed: 42,
        }
    }
}

impl SolveConfig {
    pub fn with_k(k: usize) -> Self {
        SolveConfig {
            k,
            ..SolveConfig::default()
        }
    }

    fn max_steps(&self, dim: usize) -> usize {
        self.max_iterations
            .unwrap_or_else(|| (10 * dim).min(50_000))
            .min(dim)
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if self.k == 0 {
            return Err(CoreError::usage("k must be ≥ 1".into()));
        }
        if self.k >= dim {
            return Err(CoreError::usage(format!(
                "k = {} must be below the operator dimension {dim}",
                self.k
            )));
        }
        if !(self.tol > 0.0) {
            return Err(CoreError::usage("tol must be > 0".into()));
        }
        Ok(())
    }
}

/// Eigenvectors in the scalar field of the operator.
#[derive(Debug, Clone)]
pub enum EigenVectors {
    Real(Vec<Vec<f64>>),
    Complex(Vec<Vec<Complex64>>),
}

impl EigenVectors {
    pub fn len(&self) -> usize {
        match self {
            EigenVectors::Real(v) => v.len(),
            EigenVectors::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// max |VᴴV − I| over the returned block.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        match self {
            EigenVectors::Real(vs) => {
                for (i, a) in vs.iter().enumerate() {
                    for (j, b) in vs.iter().enumerate() {
                        let g: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                        let target = if i == j { 1.0 } else { 0.0 };
                        d = d.max((g - target).abs());
                    }
                }
            }
            EigenVectors::Complex(vs) => {
                for (i, a) in vs.iter().enumerate() {
                    for (j, b) in vs.iter().enumerate() {
                        let g = Complex64::conj_dot(a, b);
                        let target = if i == j { 1.0 } else { 0.0 };
                        d = d.max((g - Complex64::new(target, 0.0)).norm());
                    }
                }
            }
        }
        d
    }
}

/// Result of a lowest-k solve. Eigenvalues are ascending; residuals are
/// recomputed explicitly from the returned eigenpairs, and `converged`
/// flags follow those recomputed residuals (a pair is never reported
/// converged on the strength of the internal estimate alone).
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub eigenvalues: Vec<f64>,
    pub residual_norms: Vec<f64>,
    pub iterations: usize,
    pub converged: Vec<bool>,
    pub vectors: EigenVectors,
}

impl SolveResult {
    pub fn all_converged(&self) -> bool {
        !self.converged.is_empty() && self.converged.iter().all(|&c| c)
    }
}

/// Compute the k lowest eigenpairs of a sector operator.
pub fn lowest_k(op: &SectorOperator, cfg: &SolveConfig) -> Result<SolveResult> {
    let dim = op.dim();
    cfg.validate(dim)?;
    let settings = LanczosSettings {
        k: cfg.k,
        tol: cfg.tol,
        max_steps: cfg.max_steps(dim),
        seed: cfg.seed,
    };
    if op.is_complex() {
        let apply = |x: &[Complex64], y: &mut [Complex64]| op.apply_complex(x, y);
        let run = lanczos_lowest_k(&apply, dim, &settings);
        let (residuals, values) = explicit_residuals_complex(op, &run.ritz_values, &run.vectors);
        let converged: Vec<bool> = residuals.iter().map(|&r| r <= cfg.tol).collect();
        Ok(SolveResult {
            eigenvalues: values,
            residual_norms: residuals,
            iterations: run.iterations,
            converged,
            vectors: EigenVectors::Complex(run.vectors),
        })
    } else {
        let apply = |x: &[f64], y: &mut [f64]| op.apply_real(x, y);
        let run = lanczos_lowest_k(&apply, dim, &settings);
        let (residuals, values) = explicit_residuals_real(op, &run.ritz_values, &run.vectors);
        let converged: Vec<bool> = residuals.iter().map(|&r| r <= cfg.tol).collect();
        Ok(SolveResult {
            eigenvalues: values,
            residual_norms: residuals,
            iterations: run.iterations,
            converged,
            vectors: EigenVectors::Real(run.vectors),
        })
    }
}

fn explicit_residuals_real(
    op: &SectorOperator,
    values: &[f64],
    vectors: &[Vec<f64>],
) -> (Vec<f64>, Vec<f64>) {
    let mut residuals = Vec::with_capacity(values.len());
    let mut out_values = Vec::with_capacity(values.len());
    let mut y = vec![0.0; op.dim()];
    for (lambda, x) in values.iter().zip(vectors) {
        op.apply_real(x, &mut y);
        let nx = f64::norm(x);
        let mut s = 0.0;
        for (yi, xi) in y.iter().zip(x) {
            let d = yi - lambda * xi;
            s += d * d;
        }
        residuals.push(s.sqrt() / nx);
        out_values.push(*lambda);
    }
    (residuals, out_values)
}

fn explicit_residuals_complex(
    op: &SectorOperator,
    values: &[f64],
    vectors: &[Vec<Complex64>],
) -> (Vec<f64>, Vec<f64>) {
    let mut residuals = Vec::with_capacity(values.len());
    let mut out_values = Vec::with_capacity(values.len());
    let mut y = vec![Complex64::new(0.0, 0.0); op.dim()];
    for (lambda, x) in values.iter().zip(vectors) {
        op.apply_complex(x, &mut y);
        let nx = Complex64::norm(x);
        let mut s = 0.0;
        for (yi, xi) in y.iter().zip(x) {
            let d = yi - xi * *lambda;
            s += d.norm_sqr();
        }
        residuals.push(s.sqrt() / nx);
        out_values.push(*lambda);
    }
    (residuals, out_values)
}

/// Report of an independent residual recomputation.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub recomputed: Vec<f64>,
    /// Indices whose recomputed residual exceeds 10× the reported one
    /// (allowing a small absolute floor near machine precision).
    pub flagged: Vec<usize>,
}

/// Recompute ‖Av − λv‖/‖v‖ for every returned pair, independently of the
/// solver's own bookkeeping, and flag disagreements.
pub fn residual_check(op: &SectorOperator, result: &SolveResult) -> ResidualReport {
    let scale: f64 = result
        .eigenvalues
        .iter()
        .fold(1.0f64, |acc, v| acc.max(v.abs()));
    let recomputed = match &result.vectors {
        EigenVectors::Real(vs) => explicit_residuals_real(op, &result.eigenvalues, vs).0,
        EigenVectors::Complex(vs) => explicit_residuals_complex(op, &result.eigenvalues, vs).0,
    };
    let flagged = recomputed
        .iter()
        .zip(&result.residual_norms)
        .enumerate()
        .filter(|(_, (re, rep))| **re > 10.0 * **rep + 1e-13 * scale)
        .map(|(i, _)| i)
        .collect();
    ResidualReport { recomputed, flagged }
}
