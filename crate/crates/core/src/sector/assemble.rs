//! Assembly of sector operators from a potential table.

use super::grid::{FieldConfig, Grid2D};
use super::operator::{Complex64, SectorOperator, ZWrap};
use crate::digest::json_digest;
use crate::potential::PotentialSpec;
use crate::{CoreError, Result};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::path::Path;

/// Potential values sampled on a full grid, computed once per grid and
/// shared by every sector assembly (the chain sum is the expensive part).
#[derive(Debug, Clone)]
pub struct PotentialTable {
    grid: Grid2D,
    values: Vec<f64>,
    spec_digest: String,
}

impl PotentialTable {
    /// Evaluate `spec` on every node of `grid`. When `cache_dir` is given,
    /// the table is loaded from / stored to a file keyed by the digest of
    /// (spec, grid, tolerance).
    pub fn build(
        spec: &PotentialSpec,
        grid: &Grid2D,
        chain_tol: f64,
        cache_dir: Option<&Path>,
    ) -> Result<Self> {
        let spec_digest = json_digest(spec);
        let key = json_digest(&(spec, grid, chain_tol));
        if let Some(dir) = cache_dir {
            let path = dir.join(format!("vtab-{key}.json"));
            if let Ok(bytes) = std::fs::read(&path) {
                if let Ok(values) = serde_json::from_slice::<Vec<f64>>(&bytes) {
                    if values.len() == grid.dimension() {
                        return Ok(PotentialTable {
                            grid: grid.clone(),
                            values,
                            spec_digest,
                        });
                    }
                }
            }
        }

        let n_z = grid.n_z();
        let rows: Result<Vec<Vec<f64>>> = (0..grid.n_r())
            .into_par_iter()
            .map(|i| {
                let r = grid.r_node(i);
                (0..n_z)
                    .map(|j| spec.evaluate_with_tol(r, grid.z_node(j), chain_tol))
                    .collect()
            })
            .collect();
        let values: Vec<f64> = rows?.into_iter().flatten().collect();

        if let Some(dir) = cache_dir {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(format!("vtab-{key}.json"));
            let tmp = dir.join(format!("vtab-{key}.json.tmp"));
            std::fs::write(&tmp, serde_json::to_vec(&values)?)?;
            std::fs::rename(&tmp, &path)?;
        }

        Ok(PotentialTable {
            grid: grid.clone(),
            values,
            spec_digest,
        })
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.n_z() + j]
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Inner radial truncation policy for high sectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WindowPolicy {
    /// Keep every radial node.
    #[default]
    Full,
    /// Drop nodes well inside the centrifugal barrier, where the r^m
    /// factor bounds the relative amplitude below e^{-23} (≈1e-10) so the
    /// induced Dirichlet cut moves eigenvalues by less than 1e-18 while
    /// removing the huge m²/r² diagonal entries that stall the solver.
    Auto,
}

/// First radial index kept for sector m under `policy`.
pub fn window_start(policy: WindowPolicy, m: u32, field: FieldConfig, grid: &Grid2D) -> usize {
    match policy {
        WindowPolicy::Full => 0,
        WindowPolicy::Auto => {
            if m == 0 {
                return 0;
            }
            // Solve ln θ + (1-θ²)/2 = -A/m for the amplitude bound θ^m·
            // e^{m(1-θ²)/2} = e^{-A} of the Landau profile r^m e^{-Br²/4}.
            const AMPLITUDE_EXPONENT: f64 = 23.0;
            let target = -AMPLITUDE_EXPONENT / m as f64;
            let (mut lo, mut hi) = (1e-12f64, 1.0f64);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let f = mid.ln() + 0.5 * (1.0 - mid * mid);
                if f < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let theta = 0.5 * (lo + hi);
            let r_lo = theta * field.localization_radius(m);
            let i_lo = ((r_lo / grid.h_r()) - 0.5).ceil().max(0.0) as usize;
            i_lo.min(grid.n_r().saturating_sub(8))
        }
    }
}

/// Assemble the real sector operator for angular momentum m.
///
/// On a periodic grid the z-stencil wraps with the α = 0 phase (the plain
/// periodic realization); on a box grid the outer boundaries are
/// Dirichlet.
pub fn assemble(
    spec: &PotentialSpec,
    field: FieldConfig,
    m: u32,
    grid: &Grid2D,
) -> Result<SectorOperator> {
    let table = PotentialTable::build(spec, grid, 1e-10, None)?;
    assemble_with_table(&table, field, m, WindowPolicy::Full)
}

/// Assemble from a prebuilt table (α = 0 on periodic grids).
pub fn assemble_with_table(
    table: &PotentialTable,
    field: FieldConfig,
    m: u32,
    window: WindowPolicy,
) -> Result<SectorOperator> {
    let alpha = table.grid().is_periodic().then_some(0.0);
    build_operator(table, field, m, alpha, window)
}

/// Assemble the Bloch sector operator at quasi-momentum phase α ∈ [0, 2π).
///
/// α ∈ {0, π} short-circuits to a real symmetric matrix; other phases
/// produce a complex Hermitian one.
pub fn assemble_bloch(
    spec: &PotentialSpec,
    field: FieldConfig,
    m: u32,
    alpha: f64,
    grid: &Grid2D,
) -> Result<SectorOperator> {
    let table = PotentialTable::build(spec, grid, 1e-10, None)?;
    assemble_bloch_with_table(&table, field, m, alpha, WindowPolicy::Full)
}

/// [`assemble_bloch`] from a prebuilt table.
pub fn assemble_bloch_with_table(
    table: &PotentialTable,
    field: FieldConfig,
    m: u32,
    alpha: f64,
    window: WindowPolicy,
) -> Result<SectorOperator> {
    if !table.grid().is_periodic() {
        return Err(CoreError::usage(
            "Bloch assembly requires a periodic grid".into(),
        ));
    }
    if !(0.0..2.0 * PI).contains(&alpha) {
        return Err(CoreError::usage(format!(
            "quasi-momentum phase must lie in [0, 2π), got {alpha}"
        )));
    }
    build_operator(table, field, m, Some(alpha), window)
}

fn build_operator(
    table: &PotentialTable,
    field: FieldConfig,
    m: u32,
    alpha: Option<f64>,
    window: WindowPolicy,
) -> Result<SectorOperator> {
    let grid = table.grid().clone();
    let h_r = grid.h_r();
    let h_z = grid.h_z();
    let nz = grid.n_z();

    let ws = window_start(window, m, field, &grid);
    let nr = grid.n_r() - ws;

    let inv_hz2 = 1.0 / (h_z * h_z);
    let z_wrap = match alpha {
        None => ZWrap::None,
        Some(a) if a == 0.0 => ZWrap::Real(-inv_hz2),
        Some(a) if a == PI => ZWrap::Real(inv_hz2),
        Some(a) => ZWrap::Complex(Complex64::new(-a.cos() * inv_hz2, -a.sin() * inv_hz2)),
    };

    // Symmetrized flux-form coupling between radial blocks i and i+1:
    // -r_{i+1/2} / (h_r² √(r_i r_{i+1})).
    let mut r_coupling = Vec::with_capacity(nr.saturating_sub(1));
    for i_local in 0..nr.saturating_sub(1) {
        let gi = ws + i_local;
        let face = (gi as f64 + 1.0) * h_r;
        let c = -face / (h_r * h_r * (grid.r_node(gi) * grid.r_node(gi + 1)).sqrt());
        r_coupling.push(c);
    }

    // The radial diagonal (r_{i+1/2} + r_{i-1/2})/(r_i h²) equals 2/h²
    // identically on staggered nodes (also at i = 0, where the vanishing
    // axis face leaves r_{1/2}/(r_0 h²) = 2/h²).
    let kinetic = 2.0 / (h_r * h_r) + 2.0 * inv_hz2;
    let m_f = m as f64;
    let b = field.b;

    let mut diagonal = Vec::with_capacity(nr * nz);
    let mut weights = Vec::with_capacity(nr * nz);
    for i_local in 0..nr {
        let gi = ws + i_local;
        let r = grid.r_node(gi);
        let radial_part = 0.25 * b * b * r * r + (m_f * m_f) / (r * r) - m_f * b;
        for j in 0..nz {
            diagonal.push(kinetic + radial_part + table.value(gi, j));
            weights.push(r * h_r * h_z);
        }
    }

    Ok(SectorOperator {
        m,
        alpha,
        field,
        grid,
        window_start: ws,
        nr,
        nz,
        r_coupling,
        z_coupling: -inv_hz2,
        z_wrap,
        diagonal,
        weights,
        potential_digest: table.spec_digest.clone(),
    })
}
