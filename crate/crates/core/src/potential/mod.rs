//! Catalog of axially symmetric external potentials.
//!
//! Every potential is a sum of closed-form terms: point charges and a
//! uniformly charged segment on the z-axis (attractive), a uniformly
//! charged ball (repulsive), the renormalized potential of an infinite
//! hollow tube, an infinite periodic chain of point charges screened by
//! one ball per cell, and a separable harmonic confinement used only for
//! solver validation.
//!
//! Each term carries two analytic certificates derived symbolically at
//! construction, never by sampling:
//! - the sign of the distributional Laplacian off the z-axis
//!   (superharmonicity, the hypothesis of the ordering theorems), and
//! - the sign of ∂V/∂r⊥ (the monotone-ordering hypothesis).
//!
//! A 7-point finite-difference scan ([`scan::superharmonicity_scan`]) is
//! available as a numerical cross-check of the symbolic certificate on
//! regions away from the distributional surfaces.

mod chain;
mod scan;

pub use chain::renormalized_chain_sum;
pub use scan::{superharmonicity_scan, ScanConfig, ScanRegion, ScanReport, ScanViolation};

use crate::{CoreError, Result};
use serde::{Deserialize, Serialize};

/// Attractive point charge on the z-axis: contributes −q/|x − z₀·e_z|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisCharge {
    /// Position along the axis.
    pub position: f64,
    /// Charge; positive means attractive.
    pub charge: f64,
}

/// Uniformly charged attractive segment on the z-axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisSegment {
    pub z_lo: f64,
    pub z_hi: f64,
    /// Charge per unit length, ≥ 0.
    pub linear_density: f64,
}

/// Repulsive uniformly charged ball centered on the axis.
///
/// Outside the ball the potential is q/s with s the distance to the
/// center; inside it is q(3R² − s²)/(2R³).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmearedCharge {
    pub center_z: f64,
    pub radius: f64,
    pub total_charge: f64,
}

/// Renormalized potential of an infinite repulsive hollow tube of radius R:
/// zero for r⊥ ≤ R and −τ·ln(r⊥/R) outside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HollowTube {
    pub tau: f64,
    pub radius: f64,
}

/// Infinite periodic chain: one attractive point charge per cell at
/// z = 0 (mod a) plus one repulsive smeared ball per cell, summed with
/// the logarithmic renormalization when the cell charge deficit is
/// nonzero. See [`renormalized_chain_sum`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodicChainSpec {
    /// Lattice period a > 0.
    pub period: f64,
    /// Attractive charge at each lattice point, ≥ 0.
    pub nucleus_charge: f64,
    /// The repulsive ball of one cell; its center must lie inside [0, a)
    /// and its radius below a/2 so copies never overlap lattice points.
    pub smeared: SmearedCharge,
}

impl PeriodicChainSpec {
    /// Per-cell charge deficit D = nucleus_charge − smeared.total_charge.
    /// D ≠ 0 switches on the logarithmic counterterm of the chain sum.
    pub fn renorm_deficit(&self) -> f64 {
        self.nucleus_charge - self.smeared.total_charge
    }
}

/// Separable confinement V = c⊥·r⊥² + ω_z²·z². Not superharmonic for
/// c⊥ > 0; kept in the catalog as an exactly solvable solver oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparableHarmonic {
    pub c_perp: f64,
    pub omega_z: f64,
}

/// One additive term of a potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PotentialTerm {
    AxisCharge(AxisCharge),
    AxisSegment(AxisSegment),
    SmearedCharge(SmearedCharge),
    HollowTube(HollowTube),
    PeriodicChain(PeriodicChainSpec),
    SeparableHarmonic(SeparableHarmonic),
}

impl PotentialTerm {
    pub fn name(&self) -> &'static str {
        match self {
            PotentialTerm::AxisCharge(_) => "axis_charge",
            PotentialTerm::AxisSegment(_) => "axis_segment",
            PotentialTerm::SmearedCharge(_) => "smeared_charge",
            PotentialTerm::HollowTube(_) => "hollow_tube",
            PotentialTerm::PeriodicChain(_) => "periodic_chain",
            PotentialTerm::SeparableHarmonic(_) => "separable_harmonic",
        }
    }

    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(CoreError::usage(msg));
        match self {
            PotentialTerm::AxisCharge(c) => {
                if !(c.charge > 0.0) {
                    return fail(format!("axis_charge: charge must be > 0, got {}", c.charge));
                }
            }
            PotentialTerm::AxisSegment(s) => {
                if !(s.z_lo < s.z_hi) {
                    return fail(format!(
                        "axis_segment: need z_lo < z_hi, got [{}, {}]",
                        s.z_lo, s.z_hi
                    ));
                }
                if !(s.linear_density >= 0.0) {
                    return fail("axis_segment: linear_density must be ≥ 0".into());
                }
            }
            PotentialTerm::SmearedCharge(b) => {
                if !(b.radius > 0.0) {
                    return fail("smeared_charge: radius must be > 0".into());
                }
                if !(b.total_charge >= 0.0) {
                    return fail("smeared_charge: total_charge must be ≥ 0".into());
                }
            }
            PotentialTerm::HollowTube(t) => {
                if !(t.tau > 0.0) || !(t.radius > 0.0) {
                    return fail("hollow_tube: tau and radius must be > 0".into());
                }
            }
            PotentialTerm::PeriodicChain(c) => {
                if !(c.period > 0.0) {
                    return fail("periodic_chain: period must be > 0".into());
                }
                if !(c.nucleus_charge >= 0.0) {
                    return fail("periodic_chain: nucleus_charge must be ≥ 0".into());
                }
                if c.smeared.total_charge > 0.0 {
                    if !(c.smeared.radius > 0.0) {
                        return fail("periodic_chain: smeared radius must be > 0".into());
                    }
                    if !(c.smeared.radius < c.period / 2.0) {
                        return fail(format!(
                            "periodic_chain: smeared radius {} must be < a/2 = {}",
                            c.smeared.radius,
                            c.period / 2.0
                        ));
                    }
                    if !(0.0 <= c.smeared.center_z && c.smeared.center_z < c.period) {
                        return fail("periodic_chain: smeared center must lie in [0, a)".into());
                    }
                }
            }
            PotentialTerm::SeparableHarmonic(s) => {
                if !(s.c_perp >= 0.0) || !(s.omega_z >= 0.0) {
                    return fail("separable_harmonic: c_perp and omega_z must be ≥ 0".into());
                }
            }
        }
        Ok(())
    }

    /// Does the distributional Laplacian satisfy ΔV ≤ 0 off the z-axis?
    fn superharmonic_off_axis(&self) -> bool {
        match self {
            // Coulomb-type terms are harmonic off their axis support.
            PotentialTerm::AxisCharge(_) | PotentialTerm::AxisSegment(_) => true,
            // ΔV = -4πρ ≤ 0 for a repulsive density.
            PotentialTerm::SmearedCharge(_) => true,
            // Harmonic off the surface r = R, negative surface layer on it.
            PotentialTerm::HollowTube(_) => true,
            PotentialTerm::PeriodicChain(_) => true,
            PotentialTerm::SeparableHarmonic(s) => s.c_perp == 0.0 && s.omega_z == 0.0,
        }
    }

    /// Does ∂²V/∂x² + ∂²V/∂y² ≤ 0 hold off the z-axis (the transverse
    /// variant of the hypothesis)?
    fn transverse_superharmonic_off_axis(&self) -> bool {
        match self {
            // For a point charge Δ⊥(−1/s) = (2z² − r²)/s⁵ changes sign.
            PotentialTerm::AxisCharge(_) | PotentialTerm::AxisSegment(_) => false,
            PotentialTerm::SmearedCharge(_) => false,
            PotentialTerm::PeriodicChain(_) => false,
            // z-independent, so the transverse and full Laplacian agree.
            PotentialTerm::HollowTube(_) => true,
            // Δ⊥ = 4 c⊥; the z-confinement part drops out.
            PotentialTerm::SeparableHarmonic(s) => s.c_perp == 0.0,
        }
    }

    /// Sign of ∂V/∂r⊥, or `None` when the term does not depend on r⊥.
    fn radial_sign(&self) -> Option<RadialSign> {
        match self {
            PotentialTerm::AxisCharge(c) => {
                (c.charge > 0.0).then_some(RadialSign::NondecreasingInR)
            }
            PotentialTerm::AxisSegment(s) => {
                (s.linear_density > 0.0).then_some(RadialSign::NondecreasingInR)
            }
            PotentialTerm::SmearedCharge(b) => {
                (b.total_charge > 0.0).then_some(RadialSign::NonincreasingInR)
            }
            PotentialTerm::HollowTube(_) => Some(RadialSign::NonincreasingInR),
            PotentialTerm::PeriodicChain(c) => {
                let attract = c.nucleus_charge > 0.0;
                let repel = c.smeared.total_charge > 0.0;
                match (attract, repel) {
                    (true, true) => Some(RadialSign::Indefinite),
                    (true, false) => Some(RadialSign::NondecreasingInR),
                    (false, true) => Some(RadialSign::NonincreasingInR),
                    (false, false) => None,
                }
            }
            PotentialTerm::SeparableHarmonic(s) => {
                (s.c_perp > 0.0).then_some(RadialSign::NondecreasingInR)
            }
        }
    }

    /// Evaluate this term at radius r > 0 and height z.
    fn evaluate(&self, r: f64, z: f64, chain_tol: f64) -> Result<f64> {
        let v = match self {
            PotentialTerm::AxisCharge(c) => {
                let d = (r * r + (z - c.position) * (z - c.position)).sqrt();
                -c.charge / d
            }
            PotentialTerm::AxisSegment(s) => segment_potential(s, r, z),
            PotentialTerm::SmearedCharge(b) => {
                let s = (r * r + (z - b.center_z) * (z - b.center_z)).sqrt();
                uniform_ball_potential(b.total_charge, b.radius, s)
            }
            PotentialTerm::HollowTube(t) => {
                if r <= t.radius {
                    0.0
                } else {
                    -t.tau * (r / t.radius).ln()
                }
            }
            PotentialTerm::PeriodicChain(c) => renormalized_chain_sum(c, r, z, chain_tol)?,
            PotentialTerm::SeparableHarmonic(s) => s.c_perp * r * r + s.omega_z * s.omega_z * z * z,
        };
        if !v.is_finite() {
            return Err(CoreError::domain(format!(
                "term {} evaluates to a non-finite value at (r={r}, z={z})",
                self.name()
            )));
        }
        Ok(v)
    }
}

/// Potential of a uniformly charged ball of total charge q and radius R
/// at distance s from its center (charge sign carried by q).
pub fn uniform_ball_potential(q: f64, radius: f64, s: f64) -> f64 {
    if s >= radius {
        q / s
    } else {
        q * (3.0 * radius * radius - s * s) / (2.0 * radius * radius * radius)
    }
}

fn segment_potential(s: &AxisSegment, r: f64, z: f64) -> f64 {
    // -λ ∫ dz'/√(r² + (z-z')²) over [z_lo, z_hi], in closed form.
    let upper = ((s.z_hi - z) / r).asinh();
    let lower = ((s.z_lo - z) / r).asinh();
    -s.linear_density * (upper - lower)
}

/// Analytic superharmonicity certificate of a potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LaplacianCertificate {
    /// ΔV ≤ 0 distributionally wherever r⊥ > 0.
    SuperharmonicOffAxis,
    /// Only the transverse part: ∂²V/∂x² + ∂²V/∂y² ≤ 0 off the axis.
    TransverseSuperharmonicOffAxis,
    NotSuperharmonic,
}

impl LaplacianCertificate {
    /// Whether the certificate satisfies the hypothesis of the ordering
    /// theorems (either variant suffices).
    pub fn ordering_hypothesis_met(self) -> bool {
        self != LaplacianCertificate::NotSuperharmonic
    }
}

/// Symbolic sign of ∂V/∂r⊥.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialSign {
    NondecreasingInR,
    NonincreasingInR,
    Indefinite,
}

fn combine_signs(signs: &[RadialSign]) -> RadialSign {
    let mut acc: Option<RadialSign> = None;
    for &s in signs {
        acc = Some(match (acc, s) {
            (None, s) => s,
            (Some(a), b) if a == b => a,
            _ => return RadialSign::Indefinite,
        });
    }
    acc.unwrap_or(RadialSign::Indefinite)
}

/// A validated sum of catalog terms with derived certificates.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec {
    terms: Vec<PotentialTerm>,
    certificate: LaplacianCertificate,
    radial_sign: RadialSign,
}

impl PotentialSpec {
    /// Validates term invariants and derives the certificates.
    ///
    /// A periodic chain must be the only term of its spec: mixing it with
    /// localized terms would destroy the z-periodicity the Bloch machinery
    /// relies on.
    pub fn new(terms: Vec<PotentialTerm>) -> Result<Self> {
        for t in &terms {
            t.validate()?;
        }
        let n_chain = terms
            .iter()
            .filter(|t| matches!(t, PotentialTerm::PeriodicChain(_)))
            .count();
        if n_chain > 1 || (n_chain == 1 && terms.len() > 1) {
            return Err(CoreError::usage(
                "a periodic_chain term must be the only term of a potential".into(),
            ));
        }
        let certificate = if terms.iter().all(|t| t.superharmonic_off_axis()) {
            LaplacianCertificate::SuperharmonicOffAxis
        } else if terms
            .iter()
            .all(|t| t.superharmonic_off_axis() || t.transverse_superharmonic_off_axis())
        {
            LaplacianCertificate::TransverseSuperharmonicOffAxis
        } else {
            LaplacianCertificate::NotSuperharmonic
        };
        let signs: Vec<RadialSign> = terms.iter().filter_map(|t| t.radial_sign()).collect();
        let radial_sign = combine_signs(&signs);
        Ok(PotentialSpec {
            terms,
            certificate,
            radial_sign,
        })
    }

    /// The free potential V = 0.
    pub fn free() -> Self {
        PotentialSpec::new(Vec::new()).expect("empty spec is valid")
    }

    pub fn terms(&self) -> &[PotentialTerm] {
        &self.terms
    }

    /// The analytically derived superharmonicity certificate.
    pub fn certificate(&self) -> LaplacianCertificate {
        self.certificate
    }

    /// The analytically derived sign of ∂V/∂r⊥.
    pub fn radial_sign(&self) -> RadialSign {
        self.radial_sign
    }

    /// True if any term actually varies with r⊥ (the monotone-ordering
    /// statement is empty for potentials constant in r⊥).
    pub fn has_radial_dependence(&self) -> bool {
        self.terms.iter().any(|t| t.radial_sign().is_some())
    }

    /// The lattice period when this is a periodic chain.
    pub fn period(&self) -> Option<f64> {
        self.terms.iter().find_map(|t| match t {
            PotentialTerm::PeriodicChain(c) => Some(c.period),
            _ => None,
        })
    }

    pub fn chain(&self) -> Option<&PeriodicChainSpec> {
        self.terms.iter().find_map(|t| match t {
            PotentialTerm::PeriodicChain(c) => Some(c),
            _ => None,
        })
    }

    /// Total attractive charge Σσ (point charges plus segments).
    pub fn total_attractive_charge(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| match t {
                PotentialTerm::AxisCharge(c) => c.charge,
                PotentialTerm::AxisSegment(s) => s.linear_density * (s.z_hi - s.z_lo),
                _ => 0.0,
            })
            .sum()
    }

    /// Total repulsive charge ∫ρ (smeared balls).
    pub fn total_repulsive_charge(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| match t {
                PotentialTerm::SmearedCharge(b) => b.total_charge,
                _ => 0.0,
            })
            .sum()
    }

    /// Largest |z| reached by attractive sources, used for grid sizing.
    pub fn attractive_support_z(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| match t {
                PotentialTerm::AxisCharge(c) => c.position.abs(),
                PotentialTerm::AxisSegment(s) => s.z_lo.abs().max(s.z_hi.abs()),
                _ => 0.0,
            })
            .fold(0.0, f64::max)
    }

    /// Largest z-confinement frequency among separable terms (0 if none).
    pub fn max_omega_z(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| match t {
                PotentialTerm::SeparableHarmonic(s) => s.omega_z,
                _ => 0.0,
            })
            .fold(0.0, f64::max)
    }

    /// Evaluate V(r, z) for r > 0 using the default chain tolerance.
    pub fn evaluate(&self, r: f64, z: f64) -> Result<f64> {
        self.evaluate_with_tol(r, z, chain::DEFAULT_CHAIN_TOL)
    }

    /// Evaluate with an explicit tolerance for the renormalized chain sum.
    pub fn evaluate_with_tol(&self, r: f64, z: f64, chain_tol: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(CoreError::domain(format!(
                "potential evaluation requires r > 0, got r = {r}"
            )));
        }
        let mut v = 0.0;
        for t in &self.terms {
            v += t.evaluate(r, z, chain_tol)?;
        }
        Ok(v)
    }

    /// Distance from (r, z) to the nearest surface or point where the
    /// distributional Laplacian of some term lives (charge locations,
    /// ball boundaries, the tube shell, segment endpoints).
    pub fn distance_to_distributional_support(&self, r: f64, z: f64) -> f64 {
        let mut d = f64::INFINITY;
        for t in &self.terms {
            let dt = match t {
                PotentialTerm::AxisCharge(c) => {
                    (r * r + (z - c.position) * (z - c.position)).sqrt()
                }
                PotentialTerm::AxisSegment(s) => {
                    let dz = if z < s.z_lo {
                        s.z_lo - z
                    } else if z > s.z_hi {
                        z - s.z_hi
                    } else {
                        0.0
                    };
                    (r * r + dz * dz).sqrt()
                }
                PotentialTerm::SmearedCharge(b) => {
                    let s = (r * r + (z - b.center_z) * (z - b.center_z)).sqrt();
                    (s - b.radius).abs()
                }
                PotentialTerm::HollowTube(t) => (r - t.radius).abs(),
                PotentialTerm::PeriodicChain(c) => {
                    // Check the three nearest cells on each side.
                    let a = c.period;
                    let mut dd = f64::INFINITY;
                    let n0 = (z / a).floor() as i64;
                    for n in (n0 - 2)..=(n0 + 2) {
                        let zn = n as f64 * a;
                        if c.nucleus_charge > 0.0 {
                            let dn = (r * r + (z - zn) * (z - zn)).sqrt();
                            dd = dd.min(dn);
                        }
                        if c.smeared.total_charge > 0.0 {
                            let zc = zn + c.smeared.center_z;
                            let s = (r * r + (z - zc) * (z - zc)).sqrt();
                            dd = dd.min((s - c.smeared.radius).abs());
                        }
                    }
                    dd
                }
                PotentialTerm::SeparableHarmonic(_) => f64::INFINITY,
            };
            d = d.min(dt);
        }
        d
    }
}

/// Serialization document: `{"terms": [...], "period": ...}`.
#[derive(Serialize, Deserialize)]
struct SpecDocument {
    terms: Vec<PotentialTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    period: Option<f64>,
}

impl Serialize for PotentialSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SpecDocument {
            terms: self.terms.clone(),
            period: self.period(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PotentialSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let doc = SpecDocument::deserialize(deserializer)?;
        let spec = PotentialSpec::new(doc.terms).map_err(D::Error::custom)?;
        if let Some(p) = doc.period {
            match spec.period() {
                Some(actual) if actual == p => {}
                Some(actual) => {
                    return Err(D::Error::custom(format!(
                        "document period {p} disagrees with chain period {actual}"
                    )))
                }
                None => {
                    return Err(D::Error::custom(
                        "document declares a period but contains no periodic_chain term",
                    ))
                }
            }
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests;
