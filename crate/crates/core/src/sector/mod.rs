//! Discretization of the reduced per-sector Hamiltonians.
//!
//! On the angular-momentum-m subspace the Hamiltonian is unitarily
//! equivalent to
//!
//! ```text
//! Ĥ_m = -∂²/∂r² - (1/r)∂/∂r - ∂²/∂z² + (B²/4) r² + m²/r² - m·B + V(r, z)
//! ```
//!
//! acting on the half plane with measure r·dr·dz. The radial part is
//! discretized in conservative flux form on staggered nodes
//! r_i = (i + 1/2)·h_r with face radii r_{i±1/2} = i·h_r, (i+1)·h_r, then
//! symmetrized by the diagonal similarity with √r_i so the stored matrix
//! is exactly Hermitian. The vanishing face radius r_{-1/2} = 0 realizes
//! the natural no-flux axis condition without ever placing a node on the
//! axis. Outer boundaries are Dirichlet; a periodic z-cell instead wraps
//! the z-stencil with the Bloch phase e^{iα}.

mod assemble;
mod grid;
mod operator;

pub use assemble::{assemble, assemble_bloch, assemble_with_table, PotentialTable, WindowPolicy};
pub use grid::{build_grid, FieldConfig, Grid2D, GridOptions, ZExtent};
pub use operator::{DenseMatrix, SectorOperator, ZWrap};

#[cfg(test)]
mod tests;
