//! Finite-difference cross-check of the symbolic superharmonicity
//! certificate.
//!
//! A 7-point stencil evaluates the discrete 3D Laplacian of V on a sample
//! lattice inside a box off the axis. Points too close to a surface where
//! the distributional Laplacian lives (tube shell, ball boundary, charge
//! locations) are skipped — a finite-difference stencil cannot represent
//! a surface delta.

use super::PotentialSpec;
use crate::{CoreError, Result};

/// Axis-excluding sample box in the (r, z) half plane.
#[derive(Debug, Clone, Copy)]
pub struct ScanRegion {
    pub r_lo: f64,
    pub r_hi: f64,
    pub z_lo: f64,
    pub z_hi: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct ScanConfig {
    /// Samples per axis of the lattice.
    pub samples: usize,
    /// Stencil width h of the 7-point Laplacian.
    pub stencil_h: f64,
    /// A sample counts as a violation when its discrete Laplacian exceeds
    /// this value.
    pub violation_tol: f64,
    /// Samples within this many stencil widths of a distributional
    /// surface are skipped.
    pub surface_margin: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            samples: 20,
            stencil_h: 1e-3,
            violation_tol: 1e-4,
            surface_margin: 3.0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ScanViolation {
    pub r: f64,
    pub z: f64,
    pub discrete_laplacian: f64,
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub min_discrete_laplacian: f64,
    pub max_discrete_laplacian: f64,
    pub violations: Vec<ScanViolation>,
    pub samples_evaluated: usize,
    pub samples_skipped: usize,
}

/// Evaluate the discrete Laplacian of `spec` over `region`.
///
/// Errors if the region (widened by one stencil) touches the axis.
pub fn superharmonicity_scan(
    spec: &PotentialSpec,
    region: ScanRegion,
    cfg: &ScanConfig,
) -> Result<ScanReport> {
    let h = cfg.stencil_h;
    if !(region.r_lo - h > 0.0) {
        return Err(CoreError::domain(format!(
            "scan region touches the axis: r_lo = {} with stencil h = {h}",
            region.r_lo
        )));
    }
    if cfg.samples < 2 || !(region.r_lo < region.r_hi) || !(region.z_lo < region.z_hi) {
        return Err(CoreError::usage("scan region or sample count degenerate".into()));
    }

    let n = cfg.samples;
    let dr = (region.r_hi - region.r_lo) / (n - 1) as f64;
    let dz = (region.z_hi - region.z_lo) / (n - 1) as f64;
    let margin = cfg.surface_margin * h;

    let mut min_lap = f64::INFINITY;
    let mut max_lap = f64::NEG_INFINITY;
    let mut violations = Vec::new();
    let mut evaluated = 0usize;
    let mut skipped = 0usize;

    for i in 0..n {
        let r = region.r_lo + i as f64 * dr;
        for j in 0..n {
            let z = region.z_lo + j as f64 * dz;
            if spec.distance_to_distributional_support(r, z) <= margin + h {
                skipped += 1;
                continue;
            }
            let lap = discrete_laplacian_7pt(spec, r, z, h)?;
            evaluated += 1;
            min_lap = min_lap.min(lap);
            max_lap = max_lap.max(lap);
            if lap > cfg.violation_tol {
                violations.push(ScanViolation {
                    r,
                    z,
                    discrete_laplacian: lap,
                });
            }
        }
    }

    Ok(ScanReport {
        min_discrete_laplacian: min_lap,
        max_discrete_laplacian: max_lap,
        violations,
        samples_evaluated: evaluated,
        samples_skipped: skipped,
    })
}

/// 7-point discrete Laplacian at the Cartesian point (x=r, y=0, z).
/// Displacements along y move the sample to radius √(r² + h²).
fn discrete_laplacian_7pt(spec: &PotentialSpec, r: f64, z: f64, h: f64) -> Result<f64> {
    let center = spec.evaluate(r, z)?;
    let xp = spec.evaluate(r + h, z)?;
    let xm = spec.evaluate(r - h, z)?;
    let y_disp = spec.evaluate((r * r + h * h).sqrt(), z)?;
    let zp = spec.evaluate(r, z + h)?;
    let zm = spec.evaluate(r, z - h)?;
    Ok((xp + xm + 2.0 * y_disp + zp + zm - 6.0 * center) / (h * h))
}
