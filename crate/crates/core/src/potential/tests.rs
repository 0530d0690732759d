use super::*;
use approx::assert_relative_eq;

fn charge_at_origin(q: f64) -> PotentialTerm {
    PotentialTerm::AxisCharge(AxisCharge {
        position: 0.0,
        charge: q,
    })
}

fn unit_chain(period: f64, nucleus: f64, smeared_q: f64, radius: f64) -> PeriodicChainSpec {
    PeriodicChainSpec {
        period,
        nucleus_charge: nucleus,
        smeared: SmearedCharge {
            center_z: period / 2.0,
            radius,
            total_charge: smeared_q,
        },
    }
}

#[test]
fn coulomb_value_at_distance_five() {
    let spec = PotentialSpec::new(vec![charge_at_origin(1.0)]).unwrap();
    assert_relative_eq!(spec.evaluate(3.0, 4.0).unwrap(), -0.2, max_relative = 1e-15);
}

#[test]
fn tube_vanishes_inside_and_on_boundary() {
    let spec = PotentialSpec::new(vec![PotentialTerm::HollowTube(HollowTube {
        tau: 1.0,
        radius: 2.0,
    })])
    .unwrap();
    assert_eq!(spec.evaluate(2.0, 0.0).unwrap(), 0.0);
    assert_eq!(spec.evaluate(1.0, 7.3).unwrap(), 0.0);
    assert_relative_eq!(
        spec.evaluate(4.0, -1.0).unwrap(),
        -(2.0f64).ln(),
        max_relative = 1e-15
    );
}

#[test]
fn segment_matches_quadrature() {
    let seg = AxisSegment {
        z_lo: -1.0,
        z_hi: 2.0,
        linear_density: 0.5,
    };
    let spec = PotentialSpec::new(vec![PotentialTerm::AxisSegment(seg)]).unwrap();
    // Midpoint-rule oracle for -λ ∫ dz'/√(r²+(z-z')²).
    let (r, z) = (1.5, 0.25);
    let n = 200_000;
    let h = (seg.z_hi - seg.z_lo) / n as f64;
    let mut quad = 0.0;
    for k in 0..n {
        let zp = seg.z_lo + (k as f64 + 0.5) * h;
        quad -= seg.linear_density * h / (r * r + (z - zp) * (z - zp)).sqrt();
    }
    assert_relative_eq!(spec.evaluate(r, z).unwrap(), quad, epsilon = 1e-9);
}

#[test]
fn ball_potential_inside_outside() {
    // Inside a unit ball of unit charge: (3 - s²)/2; outside: 1/s.
    assert_relative_eq!(uniform_ball_potential(1.0, 1.0, 0.5), (3.0 - 0.25) / 2.0);
    assert_relative_eq!(uniform_ball_potential(1.0, 1.0, 2.0), 0.5);
    assert_relative_eq!(uniform_ball_potential(1.0, 1.0, 1.0), 1.0);
}

#[test]
fn chain_with_zero_deficit_matches_plain_partial_sums() {
    // Independent oracle: direct symmetric partial sums with no
    // counterterm (D = 0 makes the correction vanish), N doubled until
    // successive values differ by < 1e-10.
    let chain = unit_chain(2.0, 1.0, 1.0, 0.6);
    assert_eq!(chain.renorm_deficit(), 0.0);
    let (r, z) = (1.0, 0.5);

    let cell = |n: i64| -> f64 {
        let zn = z - n as f64 * 2.0;
        let mut v = -1.0 / (r * r + zn * zn).sqrt();
        let zc = zn - 1.0;
        v += uniform_ball_potential(1.0, 0.6, (r * r + zc * zc).sqrt());
        v
    };
    let mut n: i64 = 16;
    let mut prev = f64::NAN;
    let oracle = loop {
        let s: f64 = (-n..=n).map(cell).sum();
        if (s - prev).abs() < 1e-10 {
            break s;
        }
        prev = s;
        n *= 2;
        assert!(n < (1 << 24), "oracle failed to converge");
    };

    let spec = PotentialSpec::new(vec![PotentialTerm::PeriodicChain(chain)]).unwrap();
    let v = spec.evaluate(r, z).unwrap();
    assert_relative_eq!(v, oracle, epsilon = 1e-8);
}

#[test]
fn chain_deficit_one_has_line_charge_asymptote() {
    // Pure point charges with unit period and unit charge (D = 1).
    // The renormalized sum equals the renormalized line-charge potential
    // 2·ln(r/2) up to corrections that are exponentially small in r.
    let chain = unit_chain(1.0, 1.0, 0.0, 0.1);
    let mut prev_dev = f64::INFINITY;
    for r in [50.0, 100.0, 200.0] {
        let v = renormalized_chain_sum(&chain, r, 0.0, 1e-9).unwrap();
        let line = 2.0 * (r / 2.0).ln();
        let dev = (v - line).abs();
        assert!(dev < 1e-5, "r={r}: chain {v} vs line {line}, dev {dev}");
        assert!(dev < prev_dev || dev < 1e-9, "deviation must shrink with r");
        prev_dev = dev;
    }
}

#[test]
fn chain_is_periodic_in_z() {
    let chain = unit_chain(2.0, 1.0, 1.0, 0.6);
    for (r, z) in [(0.5, 0.3), (1.7, -4.1), (3.0, 0.0)] {
        let a = renormalized_chain_sum(&chain, r, z, 1e-10).unwrap();
        let b = renormalized_chain_sum(&chain, r, z + 2.0, 1e-10).unwrap();
        assert_relative_eq!(a, b, epsilon = 1e-8);
    }
}

#[test]
fn chain_tolerance_must_be_positive() {
    let chain = unit_chain(2.0, 1.0, 1.0, 0.6);
    assert!(renormalized_chain_sum(&chain, 1.0, 0.0, 0.0).is_err());
}

#[test]
fn evaluate_rejects_axis_and_charge_locations() {
    let spec = PotentialSpec::new(vec![charge_at_origin(1.0)]).unwrap();
    let err = spec.evaluate(0.0, 1.0).unwrap_err();
    assert!(matches!(err, CoreError::Domain(_)));
}

#[test]
fn certificates_follow_the_term_table() {
    use LaplacianCertificate::*;
    let coulomb = PotentialSpec::new(vec![charge_at_origin(1.0)]).unwrap();
    assert_eq!(coulomb.certificate(), SuperharmonicOffAxis);

    let osc = PotentialSpec::new(vec![PotentialTerm::SeparableHarmonic(SeparableHarmonic {
        c_perp: 1.0,
        omega_z: 0.0,
    })])
    .unwrap();
    assert_eq!(osc.certificate(), NotSuperharmonic);

    let mixed = PotentialSpec::new(vec![
        charge_at_origin(1.0),
        PotentialTerm::HollowTube(HollowTube {
            tau: 0.5,
            radius: 4.0,
        }),
    ])
    .unwrap();
    assert_eq!(mixed.certificate(), SuperharmonicOffAxis);

    // A z-confinement term spoils ΔV ≤ 0 but keeps the transverse variant
    // when every other term is z-independent.
    let tube_with_z_trap = PotentialSpec::new(vec![
        PotentialTerm::HollowTube(HollowTube {
            tau: 0.5,
            radius: 4.0,
        }),
        PotentialTerm::SeparableHarmonic(SeparableHarmonic {
            c_perp: 0.0,
            omega_z: 1.0,
        }),
    ])
    .unwrap();
    assert_eq!(tube_with_z_trap.certificate(), TransverseSuperharmonicOffAxis);

    // Coulomb plus a z-trap satisfies neither variant.
    let coulomb_with_z_trap = PotentialSpec::new(vec![
        charge_at_origin(1.0),
        PotentialTerm::SeparableHarmonic(SeparableHarmonic {
            c_perp: 0.0,
            omega_z: 1.0,
        }),
    ])
    .unwrap();
    assert_eq!(coulomb_with_z_trap.certificate(), NotSuperharmonic);
}

#[test]
fn radial_signs_follow_the_term_table() {
    use RadialSign::*;
    let coulomb = PotentialSpec::new(vec![charge_at_origin(1.0)]).unwrap();
    assert_eq!(coulomb.radial_sign(), NondecreasingInR);

    let tube = PotentialSpec::new(vec![PotentialTerm::HollowTube(HollowTube {
        tau: 1.0,
        radius: 2.0,
    })])
    .unwrap();
    assert_eq!(tube.radial_sign(), NonincreasingInR);

    let mixed = PotentialSpec::new(vec![
        charge_at_origin(1.0),
        PotentialTerm::SmearedCharge(SmearedCharge {
            center_z: 0.0,
            radius: 1.0,
            total_charge: 2.0,
        }),
    ])
    .unwrap();
    assert_eq!(mixed.radial_sign(), Indefinite);

    assert!(!PotentialSpec::free().has_radial_dependence());
}

#[test]
fn scan_confirms_coulomb_is_harmonic_off_axis() {
    let spec = PotentialSpec::new(vec![charge_at_origin(1.0)]).unwrap();
    let report = superharmonicity_scan(
        &spec,
        ScanRegion {
            r_lo: 1.0,
            r_hi: 5.0,
            z_lo: -5.0,
            z_hi: 5.0,
        },
        &ScanConfig::default(),
    )
    .unwrap();
    assert!(report.max_discrete_laplacian.abs() < 1e-4, "{report:?}");
    assert!(report.min_discrete_laplacian.abs() < 1e-4);
    assert!(report.violations.is_empty());
}

#[test]
fn scan_flags_the_harmonic_trap() {
    let spec = PotentialSpec::new(vec![PotentialTerm::SeparableHarmonic(SeparableHarmonic {
        c_perp: 1.0,
        omega_z: 0.0,
    })])
    .unwrap();
    let report = superharmonicity_scan(
        &spec,
        ScanRegion {
            r_lo: 0.5,
            r_hi: 3.0,
            z_lo: -1.0,
            z_hi: 1.0,
        },
        &ScanConfig::default(),
    )
    .unwrap();
    // Δ(r⊥²) = 4 everywhere.
    assert_relative_eq!(report.min_discrete_laplacian, 4.0, epsilon = 1e-6);
    assert_relative_eq!(report.max_discrete_laplacian, 4.0, epsilon = 1e-6);
    assert!(!report.violations.is_empty());
}

#[test]
fn scan_sees_uniform_density_inside_the_ball() {
    // ΔV = -4πρ with ρ = q/(4πR³/3); for q = R = 1 that is -3.
    let spec = PotentialSpec::new(vec![PotentialTerm::SmearedCharge(SmearedCharge {
        center_z: 0.0,
        radius: 1.0,
        total_charge: 1.0,
    })])
    .unwrap();
    let report = superharmonicity_scan(
        &spec,
        ScanRegion {
            r_lo: 0.1,
            r_hi: 0.5,
            z_lo: -0.5,
            z_hi: 0.5,
        },
        &ScanConfig::default(),
    )
    .unwrap();
    assert_relative_eq!(report.min_discrete_laplacian, -3.0, epsilon = 1e-5);
    assert_relative_eq!(report.max_discrete_laplacian, -3.0, epsilon = 1e-5);
    assert!(report.violations.is_empty());
}

#[test]
fn scan_rejects_regions_touching_the_axis() {
    let spec = PotentialSpec::new(vec![charge_at_origin(1.0)]).unwrap();
    let err = superharmonicity_scan(
        &spec,
        ScanRegion {
            r_lo: 0.0,
            r_hi: 1.0,
            z_lo: 0.0,
            z_hi: 1.0,
        },
        &ScanConfig::default(),
    )
    .unwrap_err();
    assert!(matches!(err, CoreError::Domain(_)));
}

#[test]
fn finite_charge_asymptotics_approach_net_coulomb_tail() {
    // r·|V(r,0) + (Z−C)/r| → 0 with shrinking residuals.
    let spec = PotentialSpec::new(vec![
        charge_at_origin(1.0),
        PotentialTerm::SmearedCharge(SmearedCharge {
            center_z: 0.5,
            radius: 1.0,
            total_charge: 0.5,
        }),
    ])
    .unwrap();
    let net = spec.total_attractive_charge() - spec.total_repulsive_charge();
    assert_relative_eq!(net, 0.5);
    let mut prev = f64::INFINITY;
    for r in [1e2, 1e3, 1e4] {
        let v = spec.evaluate(r, 0.0).unwrap();
        let residual = r * (v + net / r).abs();
        assert!(residual < prev, "residual {residual} at r={r} not shrinking");
        prev = residual;
    }
    assert!(prev < 1e-4);
}

#[test]
fn spec_rejects_invalid_terms() {
    assert!(PotentialSpec::new(vec![charge_at_origin(0.0)]).is_err());
    assert!(PotentialSpec::new(vec![charge_at_origin(-1.0)]).is_err());
    assert!(PotentialSpec::new(vec![PotentialTerm::AxisSegment(AxisSegment {
        z_lo: 1.0,
        z_hi: 0.0,
        linear_density: 1.0,
    })])
    .is_err());
    // Ball radius must stay below half the period.
    assert!(PotentialSpec::new(vec![PotentialTerm::PeriodicChain(unit_chain(
        2.0, 1.0, 1.0, 1.5
    ))])
    .is_err());
    // A chain cannot be mixed with other terms.
    assert!(PotentialSpec::new(vec![
        PotentialTerm::PeriodicChain(unit_chain(2.0, 1.0, 1.0, 0.6)),
        charge_at_origin(1.0),
    ])
    .is_err());
}

#[test]
fn spec_serializes_with_period_and_round_trips() {
    let spec = PotentialSpec::new(vec![PotentialTerm::PeriodicChain(unit_chain(
        2.0, 1.0, 1.0, 0.6,
    ))])
    .unwrap();
    let json = serde_json::to_string(&spec).unwrap();
    assert!(json.contains("\"period\":2.0"), "{json}");
    let back: PotentialSpec = serde_json::from_str(&json).unwrap();
    assert_eq!(back, spec);

    // Declared period must agree with the chain term.
    let bad = r#"{"terms":[{"type":"periodic_chain","period":2.0,"nucleus_charge":1.0,
        "smeared":{"center_z":1.0,"radius":0.6,"total_charge":1.0}}],"period":3.0}"#;
    assert!(serde_json::from_str::<PotentialSpec>(bad).is_err());

    let nonperiodic = PotentialSpec::new(vec![charge_at_origin(2.0)]).unwrap();
    let json = serde_json::to_string(&nonperiodic).unwrap();
    assert!(!json.contains("period"));
    let back: PotentialSpec = serde_json::from_str(&json).unwrap();
    assert_eq!(back.certificate(), LaplacianCertificate::SuperharmonicOffAxis);
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        /// Lattice symmetry of the chain potential, V(r, z) = V(r, z + a).
        #[test]
        fn chain_periodicity(r in 0.3f64..4.0, z in -3.0f64..3.0, q in 0.2f64..1.5) {
            let chain = unit_chain(2.0, q, q, 0.5);
            let a = renormalized_chain_sum(&chain, r, z, 1e-9).unwrap();
            let b = renormalized_chain_sum(&chain, r, z + 2.0, 1e-9).unwrap();
            prop_assert!((a - b).abs() < 1e-7, "V(r,z)={a} vs V(r,z+a)={b}");
        }

        /// Every evaluation on the sampled domain is finite.
        #[test]
        fn evaluation_is_finite_off_axis(r in 0.01f64..30.0, z in -30.0f64..30.0) {
            let spec = PotentialSpec::new(vec![
                charge_at_origin(1.0),
                PotentialTerm::SmearedCharge(SmearedCharge {
                    center_z: 0.5, radius: 1.0, total_charge: 2.0,
                }),
                PotentialTerm::HollowTube(HollowTube { tau: 1.0, radius: 4.0 }),
            ]).unwrap();
            let v = spec.evaluate(r, z).unwrap();
            prop_assert!(v.is_finite());
        }
    }
}
