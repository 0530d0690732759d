//! Numerical level-ordering harness for a charged particle in a homogeneous
//! magnetic field and an axially symmetric external potential.
//!
//! The Hamiltonian, in units with ℏ = 1 and particle mass 1/2, is
//!
//! ```text
//! H = -Δ - B·L_z + (B²/4) r⊥² + V(r⊥, z),      B > 0,
//! ```
//!
//! which splits into blocks H_m over the angular-momentum sectors L_z = m.
//! This crate discretizes each reduced sector operator on a truncated
//! (r⊥, z) grid, computes the lowest eigenvalues E_m (and Bloch-sector
//! energies E_m(α) for periodic chains), and mechanically verifies the
//! level-ordering inequalities that hold whenever V is superharmonic off
//! the symmetry axis: pseudoconcavity of m ↦ E_m, tangential upper bounds,
//! the general decrease bound E_{m,n} ≤ E_{m+1,n} + B, and the zero
//! angular momentum of the overall ground state.
//!
//! Modules:
//! - [`potential`] — catalog of axially symmetric potentials with analytic
//!   superharmonicity and radial-sign certificates,
//! - [`sector`] — grids and sparse Hermitian sector operators,
//! - [`solve`] — Lanczos eigensolver with a dense reference oracle,
//! - [`ordering`] — energy sweeps and the ordering-check battery,
//! - [`bloch`] — lowest Bloch band E_m(α) and its per-α checks.

pub mod bloch;
pub mod digest;
pub mod error;
pub mod ordering;
pub mod potential;
pub mod sector;
pub mod solve;

pub use error::CoreError;

/// Convenience result alias used across the crate.
pub type Result<T> = std::result::Result<T, CoreError>;
