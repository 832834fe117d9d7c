mod common;

use hbar_lpt::numerov::hulthen_exact_lambda_coeffs;
use hbar_lpt::rational::{frac, int, to_f64, Rational};
use hbar_lpt::{
    expand, hulthen_exact_s_wave, pade, riccati_residual, solve, PotentialKind, PotentialSeries,
    QuantumState, RadialGrid, ScreenedPotentialSpec,
};
use num_traits::Zero;

fn series(kind: PotentialKind, g: Rational, lambda: Rational, mass: Rational, count: usize) -> PotentialSeries {
    let spec = ScreenedPotentialSpec::new(kind, g, lambda).unwrap();
    PotentialSeries::from_spec(&spec, mass, count).unwrap()
}

#[test]
fn ground_states_match_lambda_ordered_oracle() {
    let kinds = [PotentialKind::Yukawa, PotentialKind::Hulthen, PotentialKind::ExpCosine];
    for kind in kinds {
        for l in 0..=3 {
            let pot = series(kind, frac(3, 2), frac(1, 7), frac(2, 3), 9);
            let (e, _) = expand(&pot, QuantumState::new(0, l), 9).unwrap();
            let oracle = common::ground_state_energies(pot.mass(), pot.coeffs(), l, 9);
            assert_eq!(e.values(), &oracle[..], "{kind} l={l}");
        }
    }
}

#[test]
fn yukawa_regression_values() {
    // Frozen after agreement with the λ-ordered oracle above.
    let pot = series(PotentialKind::Yukawa, int(1), frac(1, 10), int(1), 6);
    let (e, _) = expand(&pot, QuantumState::new(0, 0), 6).unwrap();
    let expected = [
        frac(-1, 2),
        frac(1, 10),
        frac(-3, 400),
        frac(1, 2000),
        frac(-11, 160_000),
        frac(21, 1_600_000),
        frac(-29, 9_600_000),
    ];
    assert_eq!(e.values(), &expected);
    let oracle = common::ground_state_energies(pot.mass(), pot.coeffs(), 0, 6);
    assert_eq!(oracle, expected);

    let (e, _) = expand(&pot, QuantumState::new(1, 0), 6).unwrap();
    let expected = [
        frac(-1, 8),
        frac(1, 10),
        frac(-3, 100),
        frac(7, 1000),
        frac(-121, 40_000),
        frac(93, 50_000),
        frac(-8239, 6_000_000),
    ];
    assert_eq!(e.values(), &expected);
}

#[test]
fn hulthen_s_waves_terminate_at_second_order() {
    for n in 0..=3u32 {
        for (g, lambda, m) in [(int(1), frac(1, 10), int(1)), (frac(5, 2), frac(1, 3), frac(3, 4))] {
            let pot = series(PotentialKind::Hulthen, g.clone(), lambda.clone(), m.clone(), 10);
            let (e, _) = expand(&pot, QuantumState::new(n, 0), 10).unwrap();
            let c = hulthen_exact_lambda_coeffs(&g, &m, n);
            assert_eq!(e.get(0), &c[0]);
            assert_eq!(e.get(1), &(&c[1] * &lambda));
            assert_eq!(e.get(2), &(&c[2] * &lambda * &lambda));
            assert!(e.values()[3..].iter().all(Zero::is_zero));
            if let Ok(exact) = hulthen_exact_s_wave(&g, &lambda, &m, n) {
                assert_eq!(e.total(), exact);
            }
        }
    }
}

#[test]
fn residual_is_exact_for_excited_states() {
    for kind in [PotentialKind::Yukawa, PotentialKind::ExpCosine, PotentialKind::Coulomb] {
        for (n, l) in [(3, 0), (1, 2), (2, 2)] {
            let pot = series(kind, frac(4, 3), frac(1, 5), frac(1, 2), 7);
            let state = QuantumState::new(n, l);
            let (e, t) = expand(&pot, state, 7).unwrap();
            let report = riccati_residual(&pot, state, &t, &e).unwrap();
            assert!(report.is_exact(), "{kind} {state}");
            assert_eq!(report.checked, 65);
            assert!(report.excluded > 0);
        }
    }
}

#[test]
fn numerov_yukawa_regression() {
    let spec = ScreenedPotentialSpec::yukawa(int(1), frac(1, 10)).unwrap();
    let state = QuantumState::new(0, 0);
    let grid = RadialGrid::for_state(1.0, 1.0, state).unwrap();
    let res = solve(&spec, 1.0, state, grid, 1e-10).unwrap();
    assert_eq!(res.nodes_found, 0);
    assert!((res.energy - -0.407_058_030_614_7).abs() < 1e-9, "{}", res.energy);

    let pot = PotentialSeries::from_spec(&spec, int(1), 6).unwrap();
    let (e, _) = expand(&pot, state, 6).unwrap();
    let estimate = to_f64(&pade(&e, 3, 3).unwrap().estimate().unwrap());
    assert!((estimate - res.energy).abs() < 1e-7);
}

#[test]
fn hulthen_oracle_cross_check() {
    let spec = ScreenedPotentialSpec::hulthen(int(1), frac(1, 10)).unwrap();
    for n in 0..=2 {
        let state = QuantumState::new(n, 0);
        let grid = RadialGrid::for_state(1.0, 1.0, state).unwrap();
        let res = solve(&spec, 1.0, state, grid, 1e-10).unwrap();
        let exact = to_f64(&hulthen_exact_s_wave(&int(1), &frac(1, 10), &int(1), n).unwrap());
        assert!((res.energy - exact).abs() < 1e-8, "n={n}");
    }
}

#[test]
fn hulthen_threshold_matches_solver() {
    // N = 2 dissolves at λ = 2mg/N² = 1/2.
    let state = QuantumState::new(1, 0);
    let grid = RadialGrid::for_state(1.0, 1.0, state).unwrap();
    let beyond = ScreenedPotentialSpec::hulthen(int(1), frac(3, 5)).unwrap();
    assert!(hulthen_exact_s_wave(&int(1), &frac(3, 5), &int(1), 1).is_err());
    assert!(solve(&beyond, 1.0, state, grid, 1e-8).is_err());
    let below = ScreenedPotentialSpec::hulthen(int(1), frac(2, 5)).unwrap();
    let exact = to_f64(&hulthen_exact_s_wave(&int(1), &frac(2, 5), &int(1), 1).unwrap());
    let res = solve(&below, 1.0, state, grid, 1e-10).unwrap();
    assert!((res.energy - exact).abs() < 1e-8);
}
