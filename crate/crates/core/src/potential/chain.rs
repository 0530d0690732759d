//! Renormalized lattice sum for the infinite periodic chain.
//!
//! The chain potential is the symmetric limit
//!
//! ```text
//! V(r, z) = lim_{N→∞} [ Σ_{|n|≤N} ( -Z/|x - n·a·e_z| + ρ_n * 1/|x| ) + (2D/a)·ln N ]
//! ```
//!
//! with D = Z − ∫ρ the per-cell charge deficit. The counterterm carries a
//! 1/a factor so the limit exists for every period (for a = 1 it reduces
//! to the plain 2D·ln N normalization). Internally we use the harmonic
//! number H_N − γ in place of ln N; the two agree in the limit while the
//! former cancels the O(1/N) tail of the partial sums, leaving O(1/N²)
//! convergence. Terms are accumulated in symmetric ±n pairs so the dipole
//! contributions cancel exactly.

use super::{uniform_ball_potential, PeriodicChainSpec};
use crate::{CoreError, Result};

pub(crate) const DEFAULT_CHAIN_TOL: f64 = 1e-10;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const N_MAX: u64 = 1 << 20;

/// Evaluate the renormalized chain potential at (r, z) by doubling the
/// symmetric cutoff N until two successive values differ by less than
/// `tol`. Fails with a convergence error carrying the last two iterates
/// if the cutoff 2²⁰ is reached first.
pub fn renormalized_chain_sum(
    chain: &PeriodicChainSpec,
    r: f64,
    z: f64,
    tol: f64,
) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(CoreError::usage(format!("chain tolerance must be > 0, got {tol}")));
    }
    let a = chain.period;
    let deficit_rate = 2.0 * chain.renorm_deficit() / a;

    let cell = |n: i64| -> f64 {
        let zn = z - n as f64 * a;
        let mut v = 0.0;
        if chain.nucleus_charge > 0.0 {
            v -= chain.nucleus_charge / (r * r + zn * zn).sqrt();
        }
        if chain.smeared.total_charge > 0.0 {
            let zc = zn - chain.smeared.center_z;
            let s = (r * r + zc * zc).sqrt();
            v += uniform_ball_potential(chain.smeared.total_charge, chain.smeared.radius, s);
        }
        v
    };

    let mut partial = cell(0);
    let mut n_done: u64 = 0;
    let mut prev_value: Option<f64> = None;

    let mut n_cut: u64 = 16;
    loop {
        for n in (n_done + 1)..=n_cut {
            partial += cell(n as i64) + cell(-(n as i64));
        }
        n_done = n_cut;

        let value = partial + deficit_rate * (harmonic_number(n_cut) - EULER_GAMMA);
        if !value.is_finite() {
            return Err(CoreError::domain(format!(
                "term periodic_chain evaluates to a non-finite value at (r={r}, z={z})"
            )));
        }
        if let Some(prev) = prev_value {
            if (value - prev).abs() < tol {
                return Ok(value);
            }
            if n_cut >= N_MAX {
                return Err(CoreError::Convergence {
                    what: format!(
                        "renormalized chain sum at (r={r}, z={z}) did not reach tol={tol} by N={N_MAX}"
                    ),
                    last: value,
                    penultimate: prev,
                });
            }
        }
        prev_value = Some(value);
        n_cut *= 2;
    }
}

/// H_N = Σ_{k=1..N} 1/k; the asymptotic expansion is used for large N,
/// where its truncation error is below 1e-15.
fn harmonic_number(n: u64) -> f64 {
    if n <= 128 {
        (1..=n).map(|k| 1.0 / k as f64).sum()
    } else {
        let x = n as f64;
        x.ln() + EULER_GAMMA + 1.0 / (2.0 * x) - 1.0 / (12.0 * x * x)
            + 1.0 / (120.0 * x.powi(4))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_number_matches_direct_sum() {
        let direct: f64 = (1..=1000u64).map(|k| 1.0 / k as f64).sum();
        assert!((harmonic_number(1000) - direct).abs() < 1e-13);
        assert_eq!(harmonic_number(3), 1.0 + 0.5 + 1.0 / 3.0);
    }
}
