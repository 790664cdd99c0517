use std::collections::BTreeSet;

use mrspec_core::golden::{computed_l, ReferenceTable};
use mrspec_core::{energy_level, numerov_solve, CentrifugalMode, Error, NumerovConfig, PotentialParams};

fn lam(l: f64) -> f64 {
    l * (l + 1.0)
}

/// Distinct `(λ, n_r)` pairs from a printed table, keyed on the printed `l`.
fn table_states(t: ReferenceTable, max_n_r: u32) -> Vec<(f64, u32)> {
    let mut seen = BTreeSet::new();
    t.rows()
        .iter()
        .filter(|r| r.radial_nodes <= max_n_r)
        .filter(|r| seen.insert(((r.l * 1e6).round() as i64, r.radial_nodes)))
        .map(|r| (lam(r.l), r.radial_nodes))
        .collect()
}

#[test]
fn agrees_with_closed_form_on_table_states() {
    for t in ReferenceTable::ALL {
        let p = t.params();
        let cfg = NumerovConfig::for_screening_length(p.b);
        for (lambda, n_r) in table_states(t, 3) {
            let res = numerov_solve(&p, lambda, n_r, &cfg).unwrap();
            let analytic = energy_level(&p, lambda, n_r).unwrap().energy;
            assert!(res.converged && res.residual <= cfg.energy_tol);
            assert_eq!(res.n_r_found, n_r);
            assert!((res.energy - analytic).abs() <= 1e-5, "{}: λ {lambda} n_r {n_r}", t.label());
        }
    }
}

#[test]
fn computed_l_states_agree_too() {
    let t = ReferenceTable::One;
    let p = t.params();
    let cfg = NumerovConfig::for_screening_length(p.b);
    for row in t.rows().iter().filter(|r| r.radial_nodes <= 1).take(6) {
        let l = computed_l(row).unwrap();
        let res = numerov_solve(&p, lam(l), row.radial_nodes, &cfg).unwrap();
        let analytic = energy_level(&p, lam(l), row.radial_nodes).unwrap().energy;
        assert!((res.energy - analytic).abs() <= 1e-5);
    }
}

#[test]
fn halving_the_step_moves_energy_below_1e_7() {
    for t in ReferenceTable::ALL {
        let p = t.params();
        let coarse = NumerovConfig::for_screening_length(p.b);
        let fine = coarse.with_steps(2 * coarse.steps);
        for (lambda, n_r) in [(0.0, 0), (2.0, 1), (6.0, 3)] {
            let a = numerov_solve(&p, lambda, n_r, &coarse).unwrap().energy;
            let b = numerov_solve(&p, lambda, n_r, &fine).unwrap().energy;
            assert!((a - b).abs() <= 1e-7, "{}: λ {lambda} n_r {n_r}: {a} vs {b}", t.label());
        }
    }
}

#[test]
fn exact_centrifugal_shift_shrinks_with_screening_length() {
    let mut shifts: Vec<f64> = Vec::new();
    for b in [10.0, 20.0, 40.0] {
        let p = PotentialParams::<f64>::new(80.0, 1.0, b).unwrap();
        let cfg = NumerovConfig::for_screening_length(b);
        let approx = numerov_solve(&p, 2.0, 0, &cfg).unwrap().energy;
        let exact = numerov_solve(&p, 2.0, 0, &cfg.with_mode(CentrifugalMode::Exact)).unwrap();
        assert_eq!(exact.n_r_found, 0);
        shifts.push((exact.energy - approx).abs());
    }
    assert!(shifts[0] > shifts[1] && shifts[1] > shifts[2], "{shifts:?}");
    assert!(shifts[2] < 1e-3, "{shifts:?}");
}

#[test]
fn each_excited_state_has_its_own_node_count() {
    let p = ReferenceTable::Two.params();
    let cfg = NumerovConfig::for_screening_length(p.b);
    let mut last = f64::NEG_INFINITY;
    for n_r in 0..=6 {
        let res = numerov_solve(&p, 0.0, n_r, &cfg).unwrap();
        assert_eq!(res.n_r_found, n_r);
        assert!(res.energy > last);
        last = res.energy;
    }
}

#[test]
fn infeasible_and_misconfigured_requests() {
    let p = ReferenceTable::Two.params();
    let cfg = NumerovConfig::for_screening_length(p.b);
    assert!(matches!(numerov_solve(&p, 0.0, 8, &cfg), Err(Error::NoBoundState { .. })));
    assert!(numerov_solve(&p, 0.0, 0, &cfg.with_steps(999)).is_err());
    let shallow = PotentialParams::new(0.1, 1.0, 40.0).unwrap();
    assert!(numerov_solve(&shallow, 6.0, 0, &cfg).is_err());
}

#[test]
fn single_precision_ground_state() {
    let p = PotentialParams::<f32>::new(80.0, 1.0, 40.0).unwrap();
    let cfg =
        NumerovConfig { r_min: 0.01, r_max: 200.0, energy_tol: 1e-4, ..NumerovConfig::for_screening_length(40.0_f32) }
            .with_steps(5000);
    let res = numerov_solve(&p, 0.0, 0, &cfg).unwrap();
    assert!((res.energy + 0.487578).abs() < 2e-3, "{}", res.energy);
}
