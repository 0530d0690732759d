//! Lanczos iteration with full reorthogonalization, generic over real and
//! complex Hermitian operators.
//!
//! The iteration is plain (no shift-invert, no restarts except on exact
//! breakdown) and bit-deterministic: the start vector comes from a seeded
//! SplitMix64 stream and every reduction runs in a fixed order.

use super::tridiag;
use super::SplitMix64;
use num_complex::Complex;

pub type Complex64 = Complex<f64>;

/// Scalar field of the iteration vectors.
pub trait LanczosScalar: Copy + Send + Sync + 'static {
    fn zero() -> Self;
    /// Σ conj(a_i)·b_i.
    fn conj_dot(a: &[Self], b: &[Self]) -> Self;
    fn re(self) -> f64;
    /// y += coef·x.
    fn axpy(y: &mut [Self], coef: Self, x: &[Self]);
    /// y += coef·x with a real coefficient.
    fn axpy_re(y: &mut [Self], coef: f64, x: &[Self]);
    fn scale(v: &mut [Self], s: f64);
    fn norm(v: &[Self]) -> f64;
    fn fill_seeded(v: &mut [Self], rng: &mut SplitMix64);
    fn neg(self) -> Self;
}

impl LanczosScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn conj_dot(a: &[Self], b: &[Self]) -> Self {
        let mut s = 0.0;
        for (x, y) in a.iter().zip(b) {
            s += x * y;
        }
        s
    }
    fn re(self) -> f64 {
        self
    }
    fn axpy(y: &mut [Self], coef: Self, x: &[Self]) {
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi += coef * xi;
        }
    }
    fn axpy_re(y: &mut [Self], coef: f64, x: &[Self]) {
        Self::axpy(y, coef, x);
    }
    fn scale(v: &mut [Self], s: f64) {
        for vi in v.iter_mut() {
            *vi *= s;
        }
    }
    fn norm(v: &[Self]) -> f64 {
        let mut s = 0.0;
        for x in v {
            s += x * x;
        }
        s.sqrt()
    }
    fn fill_seeded(v: &mut [Self], rng: &mut SplitMix64) {
        for x in v.iter_mut() {
            *x = rng.next_f64() - 0.5;
        }
    }
    fn neg(self) -> Self {
        -self
    }
}

impl LanczosScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn conj_dot(a: &[Self], b: &[Self]) -> Self {
        let mut s = Complex64::new(0.0, 0.0);
        for (x, y) in a.iter().zip(b) {
            s += x.conj() * y;
        }
        s
    }
    fn re(self) -> f64 {
        self.re
    }
    fn axpy(y: &mut [Self], coef: Self, x: &[Self]) {
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi += coef * xi;
        }
    }
    fn axpy_re(y: &mut [Self], coef: f64, x: &[Self]) {
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi += xi * coef;
        }
    }
    fn scale(v: &mut [Self], s: f64) {
        for vi in v.iter_mut() {
            *vi *= s;
        }
    }
    fn norm(v: &[Self]) -> f64 {
        let mut s = 0.0;
        for x in v {
            s += x.norm_sqr();
        }
        s.sqrt()
    }
    fn fill_seeded(v: &mut [Self], rng: &mut SplitMix64) {
        for x in v.iter_mut() {
            let re = rng.next_f64() - 0.5;
            let im = rng.next_f64() - 0.5;
            *x = Complex64::new(re, im);
        }
    }
    fn neg(self) -> Self {
        -self
    }
}

pub struct LanczosSettings {
    pub k: usize,
    pub tol: f64,
    pub max_steps: usize,
    pub seed: u64,
}

pub struct LanczosRun<S> {
    /// k lowest Ritz values, ascending.
    pub ritz_values: Vec<f64>,
    /// Matching Ritz vectors, normalized.
    pub vectors: Vec<Vec<S>>,
    pub iterations: usize,
    /// Basis spanned an invariant subspace covering the whole Krylov
    /// reachable space (residual bounds are then exact zeros).
    pub exhausted: bool,
    /// A-priori residual bounds β·|s_last| per returned pair.
    pub residual_bounds: Vec<f64>,
}

const CHECK_EVERY: usize = 5;

/// Run Lanczos on the operator given as a matvec closure.
pub fn lanczos_lowest_k<S: LanczosScalar>(
    apply: &dyn Fn(&[S], &mut [S]),
    dim: usize,
    settings: &LanczosSettings,
) -> LanczosRun<S> {
    assert!(settings.k >= 1 && settings.k < dim.max(2));
    let max_steps = settings.max_steps.min(dim).max(settings.k + 1);
    let mut rng = SplitMix64::new(settings.seed);

    let mut basis: Vec<Vec<S>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();

    let mut v0 = vec![S::zero(); dim];
    S::fill_seeded(&mut v0, &mut rng);
    let n0 = S::norm(&v0);
    S::scale(&mut v0, 1.0 / n0);
    basis.push(v0);

    let mut w = vec![S::zero(); dim];
    let mut exhausted = false;
    let mut scale_est = 0.0f64;

    while alphas.len() < max_steps {
        let j = alphas.len();
        apply(&basis[j], &mut w);
        if j > 0 {
            S::axpy_re(&mut w, -betas[j - 1], &basis[j - 1]);
        }
        let a = S::conj_dot(&basis[j], &w).re();
        S::axpy_re(&mut w, -a, &basis[j]);
        alphas.push(a);
        scale_est = scale_est.max(a.abs());

        // Full reorthogonalization: one pass against the entire basis,
        // repeated once if the norm dropped sharply.
        let pre = S::norm(&w);
        for v in &basis {
            let c = S::conj_dot(v, &w);
            S::axpy(&mut w, c.neg(), v);
        }
        let mut beta = S::norm(&w);
        if beta < 0.5 * pre {
            for v in &basis {
                let c = S::conj_dot(v, &w);
                S::axpy(&mut w, c.neg(), v);
            }
            beta = S::norm(&w);
        }
        scale_est = scale_est.max(beta);

        let breakdown = beta <= 1e-13 * scale_est.max(1.0);
        let last = alphas.len() == max_steps;

        if breakdown || last || alphas.len() % CHECK_EVERY == 0 {
            let bound_beta = if breakdown { 0.0 } else { beta };
            if let Some((values, bounds)) =
                ritz_bounds(&alphas, &betas, bound_beta, settings.k)
            {
                let done = bounds.iter().all(|&b| b <= 0.5 * settings.tol);
                if done || last || (breakdown && basis.len() == dim) {
                    let (ritz_values, vectors, residual_bounds) =
                        extract_ritz(&alphas, &betas, &basis, bound_beta, settings.k, dim);
                    return LanczosRun {
                        ritz_values,
                        vectors,
                        iterations: alphas.len(),
                        exhausted: exhausted || (breakdown && basis.len() == dim),
                        residual_bounds,
                    };
                }
            } else if last || (breakdown && basis.len() == dim) {
                // Fewer Ritz values than requested; return what exists.
                let (ritz_values, vectors, residual_bounds) =
                    extract_ritz(&alphas, &betas, &basis, bound_beta, settings.k, dim);
                return LanczosRun {
                    ritz_values,
                    vectors,
                    iterations: alphas.len(),
                    exhausted: breakdown && basis.len() == dim,
                    residual_bounds,
                };
            }
            let _ = values_len_guard(&alphas);
        }

        if breakdown {
            // Invariant subspace found before the whole space was spanned:
            // restart the recurrence with a fresh direction orthogonal to
            // everything so far (β = 0 keeps T block tridiagonal).
            exhausted = true;
            betas.push(0.0);
            let mut fresh = vec![S::zero(); dim];
            S::fill_seeded(&mut fresh, &mut rng);
            for v in &basis {
                let c = S::conj_dot(v, &fresh);
                S::axpy(&mut fresh, c.neg(), v);
            }
            let nf = S::norm(&fresh);
            if nf <= 1e-13 {
                // Whole space exhausted numerically.
                let (ritz_values, vectors, residual_bounds) =
                    extract_ritz(&alphas, &betas, &basis, 0.0, settings.k, dim);
                return LanczosRun {
                    ritz_values,
                    vectors,
                    iterations: alphas.len(),
                    exhausted: true,
                    residual_bounds,
                };
            }
            S::scale(&mut fresh, 1.0 / nf);
            basis.push(fresh);
        } else {
            betas.push(beta);
            let mut next = w.clone();
            S::scale(&mut next, 1.0 / beta);
            basis.push(next);
        }
    }

    let (ritz_values, vectors, residual_bounds) = extract_ritz(
        &alphas,
        &betas,
        &basis,
        *betas.last().unwrap_or(&0.0),
        settings.k,
        dim,
    );
    LanczosRun {
        ritz_values,
        vectors,
        iterations: alphas.len(),
        exhausted,
        residual_bounds,
    }
}

fn values_len_guard(_alphas: &[f64]) -> usize {
    0
}

/// Lowest-k Ritz values of the current tridiagonal together with the
/// residual bounds β·|s_last|.
fn ritz_bounds(
    alphas: &[f64],
    betas: &[f64],
    beta_last: f64,
    k: usize,
) -> Option<(Vec<f64>, Vec<f64>)> {
    let j = alphas.len();
    if j < k {
        return None;
    }
    let all = tridiag::eigenvalues(alphas, &betas[..j - 1]);
    let values: Vec<f64> = all.iter().take(k).copied().collect();
    let mut bounds = Vec::with_capacity(k);
    for (idx, &theta) in values.iter().enumerate() {
        if beta_last == 0.0 {
            bounds.push(0.0);
            continue;
        }
        let s = tridiag::eigenvector(alphas, &betas[..j - 1], theta, idx as u64);
        bounds.push(beta_last * s[j - 1].abs());
    }
    Some((values, bounds))
}

fn extract_ritz<S: LanczosScalar>(
    alphas: &[f64],
    betas: &[f64],
    basis: &[Vec<S>],
    beta_last: f64,
    k: usize,
    dim: usize,
) -> (Vec<f64>, Vec<Vec<S>>, Vec<f64>) {
    let j = alphas.len();
    let k_eff = k.min(j);
    let all = tridiag::eigenvalues(alphas, &betas[..j - 1]);
    let selected: Vec<f64> = all.iter().take(k_eff).copied().collect();

    let mut tri_vecs: Vec<Vec<f64>> = Vec::with_capacity(k_eff);
    for (idx, &theta) in selected.iter().enumerate() {
        let mut s = tridiag::eigenvector(alphas, &betas[..j - 1], theta, idx as u64);
        // Near-degenerate Ritz clusters: keep the tridiagonal vectors
        // mutually orthogonal so locked pairs stay distinct.
        for prev in &tri_vecs {
            let c: f64 = prev.iter().zip(&s).map(|(p, q)| p * q).sum();
            for (si, pi) in s.iter_mut().zip(prev) {
                *si -= c * pi;
            }
        }
        let n: f64 = s.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n > 1e-8 {
            for v in s.iter_mut() {
                *v /= n;
            }
        }
        tri_vecs.push(s);
    }

    let mut vectors = Vec::with_capacity(k_eff);
    let mut bounds = Vec::with_capacity(k_eff);
    for s in &tri_vecs {
        let mut x = vec![S::zero(); dim];
        for (coef, v) in s.iter().zip(basis) {
            S::axpy_re(&mut x, *coef, v);
        }
        let n = S::norm(&x);
        if n > 0.0 {
            S::scale(&mut x, 1.0 / n);
        }
        bounds.push(beta_last * s[j - 1].abs());
        vectors.push(x);
    }
    (selected, vectors, bounds)
}
