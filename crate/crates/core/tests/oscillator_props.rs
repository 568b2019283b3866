mod common;

use pendulum_core::oscillator::{graded_correction_for, ladder_power, rs_corrections, DenseSym, MAX_HALF_POWER};
use pendulum_core::selftest::sweep_configs;
use pendulum_core::{
    a_from_energy, closed_form, graded_correction, handbook_a_low, OscillatorFrame, PendulumConfig,
    PerturbationPolynomial,
};

/// Degree in `n` of the printed grade-g polynomial.
const DEGREE: [usize; 5] = [1, 2, 3, 4, 5];

#[test]
fn printed_examples() {
    let cfg = PendulumConfig::nominal();
    let i = cfg.inertia();
    let v0 = cfg.v0;
    assert!((closed_form(0, 0.0, &cfg).unwrap() + 73.6754).abs() < 1e-4);
    assert!((graded_correction(1, 0, &cfg).unwrap().value + 0.0625).abs() < 1e-12);
    let g2 = -(i / v0).sqrt() / (i * i) / 512.0;
    assert!((graded_correction(2, 0, &cfg).unwrap().value / g2 - 1.0).abs() < 1e-9);
    assert!((g2 + 6.176e-4).abs() < 1e-7);
    let g3 = -3.0 / (v0 * i * i * 8192.0);
    assert!((graded_correction(3, 0, &cfg).unwrap().value / g3 - 1.0).abs() < 1e-9);
    let g4 = -53.0 / (i.powf(2.5) * v0.powf(1.5) * 524_288.0);
    assert!((closed_form(4, 0.0, &cfg).unwrap() / g4 - 1.0).abs() < 1e-14);
}

#[test]
fn basis_size_does_not_matter() {
    for cfg in sweep_configs() {
        let pert = PerturbationPolynomial::pendulum(&cfg, MAX_HALF_POWER);
        for n in [0, 5, 10] {
            let frame = OscillatorFrame::for_pendulum(&cfg, n).unwrap();
            let wider = frame.with_basis_dim(frame.basis_dim + 20).unwrap();
            for g in 1..=4 {
                let a = graded_correction_for(&pert, g, n, &frame).unwrap().value;
                let b = graded_correction_for(&pert, g, n, &wider).unwrap().value;
                assert!((a - b).abs() <= 1e-10 * a.abs(), "g={g} n={n}: {a} vs {b}");
            }
        }
    }
}

/// The total at each grade is a polynomial of the printed degree.
#[test]
fn totals_have_the_printed_degree() {
    let cfg = PendulumConfig::nominal();
    for (g, &degree) in DEGREE.iter().enumerate().skip(1) {
        let totals: Vec<f64> = (0..8).map(|n| graded_correction(g, n, &cfg).unwrap().value).collect();
        let top = common::forward_difference(&totals, degree);
        let beyond = common::forward_difference(&totals, degree + 1);
        assert!(top[0].abs() > 0.0);
        for d in &beyond {
            assert!(d.abs() <= 1e-7 * top[0].abs(), "g={g}: {beyond:?} vs {top:?}");
        }
    }
}

/// Fourth order in a pure `(a + a†)⁴` perturbation: the `V_nn² Σ |V_jn|²/Δ³`
/// piece grows like `n⁷`, yet the full correction is only of degree 5.
#[test]
fn fourth_order_pieces_cancel_higher_powers() {
    let dim = 60;
    let x4 = ladder_power(4, dim);
    let mut v = DenseSym::<f64>::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            v.add_at(i, j, x4.get(i, j));
        }
    }
    let mut totals = Vec::new();
    let mut pieces = Vec::new();
    for n in 0..10 {
        let resolvent: Vec<f64> = (0..dim)
            .map(|j| if j == n { 0.0 } else { 1.0 / (n as f64 - j as f64) })
            .collect();
        totals.push(rs_corrections(&v, n, &resolvent)[3]);
        let s3: f64 = (0..dim).map(|j| v.get(j, n).powi(2) * resolvent[j].powi(3)).sum();
        pieces.push(v.get(n, n).powi(2) * s3);
    }
    let total6 = common::forward_difference(&totals, 6);
    let total5 = common::forward_difference(&totals, 5);
    let piece7 = common::forward_difference(&pieces, 7);
    for d in &total6 {
        assert!(d.abs() <= 1e-8 * total5[0].abs(), "{total6:?}");
    }
    assert!(piece7[0].abs() > 1e-3 * total5[0].abs(), "{piece7:?}");
}

#[test]
fn handbook_series_matches_closed_forms() {
    let cfg = PendulumConfig::nominal();
    let q = cfg.q();
    assert!((handbook_a_low(0, q, 2).unwrap() - (-320.0 + 2.0 * 160f64.sqrt())).abs() < 1e-12);
    for n in 0..6 {
        let summed = (0..=4).map(|g| closed_form(g, n as f64, &cfg).unwrap()).sum::<f64>();
        let a = handbook_a_low(n, q, 6).unwrap();
        assert!((a - a_from_energy(summed, &cfg)).abs() <= 1e-9 * a.abs());
    }
    assert!((handbook_a_low(0, q, 6).unwrap() + 294.954).abs() < 1e-2);
    // q-independent term: a + 2q − 2p√q → −(p²+1)/8.
    let q = 1e12;
    let p = 5.0;
    let rest = handbook_a_low(2, q, 6).unwrap() + 2.0 * q - 2.0 * p * q.sqrt();
    assert!((rest + (p * p + 1.0) / 8.0).abs() < 1e-3);
}
