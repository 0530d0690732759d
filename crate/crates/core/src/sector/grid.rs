//! Truncated (r⊥, z) grids and the sizing policy.

use crate::potential::PotentialSpec;
use crate::{CoreError, Result};
use serde::{Deserialize, Serialize};

/// The homogeneous magnetic field. Units have ℏ = 1 and particle mass
/// 1/2; only the absolute field strength enters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub b: f64,
}

impl FieldConfig {
    pub fn new(b: f64) -> Result<Self> {
        if !(b > 0.0) {
            return Err(CoreError::usage(format!("field strength must be > 0, got {b}")));
        }
        Ok(FieldConfig { b })
    }

    /// Transverse localization radius √(2m/B) of the m-th Landau orbital.
    pub fn localization_radius(&self, m: u32) -> f64 {
        (2.0 * m as f64 / self.b).sqrt()
    }
}

/// z-direction of the computational domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZExtent {
    /// Symmetric box [-z_max, z_max] with Dirichlet truncation.
    Box { z_max: f64 },
    /// Periodic cell [0, a) for Bloch sectors.
    Periodic { period: f64 },
}

/// Staggered tensor grid over (r⊥, z); no node ever sits on the axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid2D {
    n_r: usize,
    n_z: usize,
    h_r: f64,
    h_z: f64,
    z_extent: ZExtent,
}

impl Grid2D {
    /// Box grid; `n_half_z` nodes on each side of z = 0.
    pub fn new_box(n_r: usize, h_r: f64, n_half_z: usize, h_z: f64) -> Result<Self> {
        if n_r < 4 || n_half_z < 2 || !(h_r > 0.0) || !(h_z > 0.0) {
            return Err(CoreError::usage("degenerate box grid".into()));
        }
        let n_z = 2 * n_half_z;
        Ok(Grid2D {
            n_r,
            n_z,
            h_r,
            h_z,
            z_extent: ZExtent::Box {
                z_max: n_half_z as f64 * h_z,
            },
        })
    }

    /// Periodic grid; h_z = period/n_z holds exactly by construction.
    pub fn new_periodic(n_r: usize, h_r: f64, n_z: usize, period: f64) -> Result<Self> {
        if n_r < 4 || n_z < 4 || !(h_r > 0.0) || !(period > 0.0) {
            return Err(CoreError::usage("degenerate periodic grid".into()));
        }
        Ok(Grid2D {
            n_r,
            n_z,
            h_r,
            h_z: period / n_z as f64,
            z_extent: ZExtent::Periodic { period },
        })
    }

    pub fn n_r(&self) -> usize {
        self.n_r
    }

    pub fn n_z(&self) -> usize {
        self.n_z
    }

    pub fn h_r(&self) -> f64 {
        self.h_r
    }

    pub fn h_z(&self) -> f64 {
        self.h_z
    }

    pub fn z_extent(&self) -> ZExtent {
        self.z_extent
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.z_extent, ZExtent::Periodic { .. })
    }

    pub fn r_max(&self) -> f64 {
        self.n_r as f64 * self.h_r
    }

    pub fn dimension(&self) -> usize {
        self.n_r * self.n_z
    }

    /// Radial node r_i = (i + 1/2)·h_r.
    pub fn r_node(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.h_r
    }

    /// z node, staggered so no node hits z = 0 (or a lattice point).
    pub fn z_node(&self, j: usize) -> f64 {
        let offset = (j as f64 + 0.5) * self.h_z;
        match self.z_extent {
            ZExtent::Box { z_max } => -z_max + offset,
            ZExtent::Periodic { .. } => offset,
        }
    }
}

/// Tunables for [`build_grid`].
#[derive(Debug, Clone, Copy)]
pub struct GridOptions {
    /// Hard cap on n_r·n_z.
    pub max_dimension: usize,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            max_dimension: 4_000_000,
        }
    }
}

/// Base spacing at resolution level 0; level ℓ halves it ℓ times.
pub const BASE_SPACING: f64 = 0.25;

/// Size a grid for sectors up to `m_max`.
///
/// The radial extent covers the localization radius √(2(m_max+1)/B) with
/// a factor 2.5 plus five magnetic lengths 1/√B of padding. The z box
/// spans at least 20 length units and always contains the attractive
/// sources with a 15-unit margin; for a periodic potential the cell [0, a)
/// is used instead, with h_z dividing the period exactly.
pub fn build_grid(
    field: FieldConfig,
    m_max: u32,
    spec: &PotentialSpec,
    resolution: u32,
    opts: &GridOptions,
) -> Result<Grid2D> {
    let h = BASE_SPACING / f64::powi(2.0, resolution as i32);
    let r_target =
        2.5 * (2.0 * (m_max as f64 + 1.0) / field.b).sqrt() + 5.0 / field.b.sqrt();
    let n_r = (r_target / h).ceil() as usize;

    let grid = if let Some(period) = spec.period() {
        let n_z = ((period / h).round() as usize).max(4);
        Grid2D::new_periodic(n_r, h, n_z, period)?
    } else {
        let z_half_target = (spec.attractive_support_z() + 15.0).max(20.0);
        let n_half = (z_half_target / h).ceil() as usize;
        Grid2D::new_box(n_r, h, n_half, h)?
    };

    if grid.dimension() > opts.max_dimension {
        return Err(CoreError::resource(format!(
            "grid dimension {} exceeds the cap {}; lower the resolution level (ℓ = {resolution})",
            grid.dimension(),
            opts.max_dimension
        )));
    }
    Ok(grid)
}
