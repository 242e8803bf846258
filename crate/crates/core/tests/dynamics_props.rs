//! Orbit, certificate and accumulation properties on randomized points.

mod common;

use common::*;
use rand::Rng;
use revmap_core::*;

#[test]
fn reversed_orbits_for_random_rational_points() {
    let mut r = rng(51);
    for (name, pair) in all_planar_fixtures() {
        let f = pair.compose();
        for k in 1..=5usize {
            for family in [Family::Unprimed, Family::Primed] {
                let phi = pair.reversor(k, family).unwrap();
                for _ in 0..20 {
                    let x = vec![
                        Scalar::from_ratio(r.gen_range(-9i64..=9), r.gen_range(1i64..=5)),
                        Scalar::from_ratio(r.gen_range(-9i64..=9), r.gen_range(1i64..=5)),
                    ];
                    assert!(
                        reversed_orbit_check(&f, &phi, &x, 10).unwrap(),
                        "{name}, k={k}"
                    );
                }
            }
        }
    }
}

#[test]
fn certificates_verify_under_reiteration() {
    for (name, pair) in all_planar_fixtures() {
        let f = pair.compose();
        for cert in periodic_certificates(&pair, 8).unwrap() {
            let fd = f.pow(cert.period_divisor as i64).unwrap();
            assert_eq!(fd.apply_vec(&cert.point), cert.point, "{name}");
            // Divisor bookkeeping per flavor.
            let (k, l) = cert.indices;
            let expected = match cert.flavor {
                Flavor::A | Flavor::B => l - k,
                Flavor::C => k + l - 2,
            };
            assert_eq!(cert.period_divisor, expected, "{name}");
        }
    }
}

#[test]
fn quarter_turn_orbits_repeat_with_the_rotation_order() {
    let mut r = rng(52);
    for t in [-1i64, 0, 1] {
        let q = rotation_order(&Scalar::from_int(t), 100).unwrap().unwrap();
        let f = planar_trace(t).compose();
        for _ in 0..20 {
            let x = vec![
                Scalar::from_ratio(r.gen_range(-9i64..=9), r.gen_range(1i64..=5)),
                Scalar::from_ratio(r.gen_range(-9i64..=9), r.gen_range(1i64..=5)),
            ];
            let points = orbit(&f, &x, q as i64).unwrap();
            assert_eq!(points[0], points[q], "t = {t}");
        }
    }
}

#[test]
fn rotation_order_matches_direct_power_oracle() {
    for t in [-1i64, 0, 1] {
        let q = rotation_order(&Scalar::from_int(t), 100).unwrap();
        let f = planar_trace(t).compose();
        assert_eq!(q, oracle_order(&f, 100), "t = {t}");
    }
    // Irrational rotation number: no order within a generous horizon.
    assert_eq!(
        rotation_order(&Scalar::from_ratio(1, 2), 2000).unwrap(),
        None
    );
    let f = planar_trace_scalar(&Scalar::from_ratio(1, 2)).compose();
    assert_eq!(oracle_order(&f, 200), None);
}

#[test]
fn rot72_has_order_five() {
    let t = rot72_trace();
    assert_eq!(rotation_order(&t, 100).unwrap(), Some(5));
    let f = rot72_pair().compose();
    assert_eq!(oracle_order(&f, 100), Some(5));
}

#[test]
fn limit_deviations_decrease_for_moderate_horizons() {
    for pair in [planar_contained(), planar_trace(2), planar_trace(-2), planar_trace(3), planar_trace(-3)] {
        let report = limit_directions(&pair, 60).unwrap();
        assert!(!report.entries.is_empty());
        for entry in &report.entries {
            assert!(
                revmap_core::dynamics::strictly_decreasing_abs(&entry.deviations),
                "case {:?} family {:?}",
                report.case_tag,
                entry.family
            );
        }
    }
}

#[test]
fn nilpotent3_limits_to_the_invariant_hyperplane() {
    let pair = nilpotent3(4);
    let report = limit_directions(&pair, 30).unwrap();
    let expected = SubspaceBasis::from_i64(4, &[&[1, -2, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
    for entry in &report.entries {
        assert_eq!(entry.limit, expected);
        // First usable index is k = 2 with deviation ±2/(k-1).
        let sign = match entry.family {
            Family::Unprimed => 1,
            Family::Primed => -1,
        };
        assert_eq!(entry.deviations[0], Scalar::from_int(2 * sign));
        assert!(revmap_core::dynamics::strictly_decreasing_abs(
            &entry.deviations
        ));
    }
}

#[test]
fn rot72_sectors_form_a_permutation_of_ten() {
    let report = sector_interchange(&rot72_pair(), 12).unwrap();
    assert_eq!(report.arrangement.lines.len(), 5);
    assert_eq!(report.arrangement.sectors.len(), 10);
    assert!(report.is_full_permutation);
    assert!(!report.arrangement.density_note);
}

#[test]
fn irrational_rotation_notes_density() {
    let pair = planar_trace_scalar(&Scalar::from_ratio(1, 2));
    let arrangement = SectorArrangement::build(&pair, 6).unwrap();
    assert!(arrangement.density_note);
}
