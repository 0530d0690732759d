//! The assembled sector operator and its matrix views.
//!
//! The matrix is the Kronecker sum of a radial tridiagonal block, a z
//! tridiagonal (or α-twisted circulant) block and a diagonal, which is
//! exactly the five-point stencil the discretization produces. We store
//! that structure directly instead of a generic sparse format: the
//! matrix-vector product streams over contiguous slices, and Hermiticity
//! is exact by construction because each symmetric pair of entries is
//! read from one stored coefficient.

use super::grid::{FieldConfig, Grid2D};
use crate::{CoreError, Result};
use nalgebra::DMatrix;
use num_complex::Complex;
use std::io::Write;

pub type Complex64 = Complex<f64>;

/// Wraparound z-coupling of a periodic cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZWrap {
    /// Dirichlet box, no wraparound.
    None,
    /// α ∈ {0, π}: the wrap entry is real and the operator stays real
    /// symmetric.
    Real(f64),
    /// General quasi-momentum: entry −e^{iα}/h_z² (conjugated on the
    /// transposed position).
    Complex(Complex64),
}

/// Sparse Hermitian realization of one reduced sector Hamiltonian.
#[derive(Debug, Clone)]
pub struct SectorOperator {
    pub(super) m: u32,
    pub(super) alpha: Option<f64>,
    pub(super) field: FieldConfig,
    pub(super) grid: Grid2D,
    /// First radial grid index included (inner Dirichlet cut for large m,
    /// where the centrifugal factor r^m suppresses all amplitude).
    pub(super) window_start: usize,
    pub(super) nr: usize,
    pub(super) nz: usize,
    /// Symmetrized radial coupling between blocks i and i+1.
    pub(super) r_coupling: Vec<f64>,
    /// Nearest-neighbor z coupling, −1/h_z².
    pub(super) z_coupling: f64,
    pub(super) z_wrap: ZWrap,
    /// Full diagonal: kinetic + B²r²/4 + m²/r² − mB + V.
    pub(super) diagonal: Vec<f64>,
    /// Per-node measure weights r_i·h_r·h_z.
    pub(super) weights: Vec<f64>,
    pub(super) potential_digest: String,
}

impl SectorOperator {
    pub fn dim(&self) -> usize {
        self.nr * self.nz
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn window_start(&self) -> usize {
        self.window_start
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn potential_digest(&self) -> &str {
        &self.potential_digest
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn is_complex(&self) -> bool {
        matches!(self.z_wrap, ZWrap::Complex(_))
    }

    /// Radius of the local radial index i (window offset applied).
    pub fn r_of_block(&self, i: usize) -> f64 {
        self.grid.r_node(self.window_start + i)
    }

    /// y = A·x for the real-symmetric representation.
    ///
    /// Panics in debug builds if the operator is complex.
    pub fn apply_real(&self, x: &[f64], y: &mut [f64]) {
        debug_assert!(!self.is_complex(), "complex operator applied as real");
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(y.len(), self.dim());
        let nz = self.nz;

        for ((yp, xp), d) in y.iter_mut().zip(x).zip(&self.diagonal) {
            *yp = d * xp;
        }

        let zc = self.z_coupling;
        for (yb, xb) in y.chunks_exact_mut(nz).zip(x.chunks_exact(nz)) {
            for (yj, xj1) in yb[..nz - 1].iter_mut().zip(&xb[1..]) {
                *yj += zc * xj1;
            }
            for (yj1, xj) in yb[1..].iter_mut().zip(&xb[..nz - 1]) {
                *yj1 += zc * xj;
            }
            if let ZWrap::Real(w) = self.z_wrap {
                yb[nz - 1] += w * xb[0];
                yb[0] += w * xb[nz - 1];
            }
        }

        for (i, &c) in self.r_coupling.iter().enumerate() {
            let (lo, hi) = (i * nz, (i + 1) * nz);
            // y_i += c x_{i+1};  y_{i+1} += c x_i
            let (ya, yb) = y.split_at_mut(hi);
            let ya = &mut ya[lo..];
            let yb = &mut yb[..nz];
            let xa = &x[lo..hi];
            let xb = &x[hi..hi + nz];
            for (yj, xj) in ya.iter_mut().zip(xb) {
                *yj += c * xj;
            }
            for (yj, xj) in yb.iter_mut().zip(xa) {
                *yj += c * xj;
            }
        }
    }

    /// y = A·x for the complex-Hermitian representation. Also valid for
    /// real operators promoted to complex vectors.
    pub fn apply_complex(&self, x: &[Complex64], y: &mut [Complex64]) {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(y.len(), self.dim());
        let nz = self.nz;

        for ((yp, xp), d) in y.iter_mut().zip(x).zip(&self.diagonal) {
            *yp = xp * *d;
        }

        let zc = self.z_coupling;
        for (yb, xb) in y.chunks_exact_mut(nz).zip(x.chunks_exact(nz)) {
            for (yj, xj1) in yb[..nz - 1].iter_mut().zip(&xb[1..]) {
                *yj += xj1 * zc;
            }
            for (yj1, xj) in yb[1..].iter_mut().zip(&xb[..nz - 1]) {
                *yj1 += xj * zc;
            }
            match self.z_wrap {
                ZWrap::None => {}
                ZWrap::Real(w) => {
                    yb[nz - 1] += xb[0] * w;
                    yb[0] += xb[nz - 1] * w;
                }
                ZWrap::Complex(w) => {
                    yb[nz - 1] += xb[0] * w;
                    yb[0] += xb[nz - 1] * w.conj();
                }
            }
        }

        for (i, &c) in self.r_coupling.iter().enumerate() {
            let (lo, hi) = (i * nz, (i + 1) * nz);
            let (ya, yb) = y.split_at_mut(hi);
            let ya = &mut ya[lo..];
            let yb = &mut yb[..nz];
            let xa = &x[lo..hi];
            let xb = &x[hi..hi + nz];
            for (yj, xj) in ya.iter_mut().zip(xb) {
                *yj += xj * c;
            }
            for (yj, xj) in yb.iter_mut().zip(xa) {
                *yj += xj * c;
            }
        }
    }

    /// Visit every stored entry once per ordered (row, col) pair.
    pub fn for_each_entry(&self, mut f: impl FnMut(usize, usize, Complex64)) {
        let nz = self.nz;
        let zc = Complex64::new(self.z_coupling, 0.0);
        for i in 0..self.nr {
            let base = i * nz;
            for j in 0..nz {
                let p = base + j;
                f(p, p, Complex64::new(self.diagonal[p], 0.0));
                if j + 1 < nz {
                    f(p, p + 1, zc);
                    f(p + 1, p, zc);
                }
            }
            match self.z_wrap {
                ZWrap::None => {}
                ZWrap::Real(w) => {
                    let w = Complex64::new(w, 0.0);
                    f(base + nz - 1, base, w);
                    f(base, base + nz - 1, w);
                }
                ZWrap::Complex(w) => {
                    f(base + nz - 1, base, w);
                    f(base, base + nz - 1, w.conj());
                }
            }
            if i + 1 < self.nr {
                let c = Complex64::new(self.r_coupling[i], 0.0);
                for j in 0..nz {
                    f(base + j, base + nz + j, c);
                    f(base + nz + j, base + j, c);
                }
            }
        }
    }

    /// Finite lower bound on the spectrum from Gershgorin disks.
    pub fn gershgorin_lower_bound(&self) -> f64 {
        let nz = self.nz;
        let mut bound = f64::INFINITY;
        let wrap = match self.z_wrap {
            ZWrap::None => 0.0,
            ZWrap::Real(w) => w.abs(),
            ZWrap::Complex(w) => w.norm(),
        };
        for i in 0..self.nr {
            let mut radial = 0.0;
            if i > 0 {
                radial += self.r_coupling[i - 1].abs();
            }
            if i + 1 < self.nr {
                radial += self.r_coupling[i].abs();
            }
            for j in 0..nz {
                let mut off = radial;
                off += if j > 0 { self.z_coupling.abs() } else { wrap };
                off += if j + 1 < nz {
                    self.z_coupling.abs()
                } else {
                    wrap
                };
                bound = bound.min(self.diagonal[i * nz + j] - off);
            }
        }
        bound
    }

    /// Dense materialization, bit-identical to the sparse entries.
    pub fn dense(&self) -> Result<DenseMatrix> {
        let n = self.dim();
        if n > 4096 {
            return Err(CoreError::resource(format!(
                "dense materialization capped at 4096, operator has dimension {n}"
            )));
        }
        if self.is_complex() {
            let mut a = DMatrix::<Complex64>::zeros(n, n);
            self.for_each_entry(|r, c, v| a[(r, c)] = v);
            Ok(DenseMatrix::Complex(a))
        } else {
            let mut a = DMatrix::<f64>::zeros(n, n);
            self.for_each_entry(|r, c, v| a[(r, c)] = v.re);
            Ok(DenseMatrix::Real(a))
        }
    }

    /// Matrix Market coordinate dump (lower triangle, symmetric or
    /// hermitian header). Entry values print in shortest round-trip
    /// decimal form, so re-parsing restores them bit-exactly.
    pub fn write_matrix_market(&self, out: &mut impl Write) -> std::io::Result<()> {
        let n = self.dim();
        let mut entries: Vec<(usize, usize, Complex64)> = Vec::new();
        self.for_each_entry(|r, c, v| {
            if r >= c {
                entries.push((r, c, v));
            }
        });
        entries.sort_by_key(|&(r, c, _)| (r, c));
        if self.is_complex() {
            writeln!(out, "%%MatrixMarket matrix coordinate complex hermitian")?;
            writeln!(out, "{n} {n} {}", entries.len())?;
            for (r, c, v) in entries {
                writeln!(out, "{} {} {} {}", r + 1, c + 1, v.re, v.im)?;
            }
        } else {
            writeln!(out, "%%MatrixMarket matrix coordinate real symmetric")?;
            writeln!(out, "{n} {n} {}", entries.len())?;
            for (r, c, v) in entries {
                writeln!(out, "{} {} {}", r + 1, c + 1, v.re)?;
            }
        }
        Ok(())
    }
}

/// Dense view of an operator, used by the oracle paths.
#[derive(Debug, Clone)]
pub enum DenseMatrix {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex64>),
}

impl DenseMatrix {
    pub fn dim(&self) -> usize {
        match self {
            DenseMatrix::Real(a) => a.nrows(),
            DenseMatrix::Complex(a) => a.nrows(),
        }
    }

    /// max |A − Aᴴ| entrywise; exactly zero for our construction.
    pub fn hermiticity_defect(&self) -> f64 {
        match self {
            DenseMatrix::Real(a) => {
                let mut d: f64 = 0.0;
                for r in 0..a.nrows() {
                    for c in 0..a.ncols() {
                        d = d.max((a[(r, c)] - a[(c, r)]).abs());
                    }
                }
                d
            }
            DenseMatrix::Complex(a) => {
                let mut d: f64 = 0.0;
                for r in 0..a.nrows() {
                    for c in 0..a.ncols() {
                        d = d.max((a[(r, c)] - a[(c, r)].conj()).norm());
                    }
                }
                d
            }
        }
    }
}
