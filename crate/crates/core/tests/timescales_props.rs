use std::f64::consts::PI;

use pendulum_core::timescales::DiscreteDerivatives;
use pendulum_core::{
    analytic_timescales, discrete_table, period, spectrum, DiscreteTable, Limit, Parity, PendulumConfig, SpectrumTable,
};

fn nominal() -> (PendulumConfig, SpectrumTable) {
    let cfg = PendulumConfig::nominal();
    let table = spectrum(&cfg, 100).unwrap();
    (cfg, table)
}

fn tables(table: &SpectrumTable) -> [DiscreteTable; 2] {
    [
        discrete_table(table, Parity::Even).unwrap(),
        discrete_table(table, Parity::Odd).unwrap(),
    ]
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Energies of the three states of `parity` nearest `V0`.
fn band(table: &SpectrumTable, parity: Parity, v0: f64) -> (f64, f64) {
    let mut e: Vec<f64> = table.of_parity(parity).map(|s| s.energy).collect();
    e.sort_by(|a, b| (a - v0).abs().total_cmp(&(b - v0).abs()));
    let three = &e[..3];
    (
        three.iter().cloned().fold(f64::INFINITY, f64::min),
        three.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    )
}

fn rotor_m(table: &SpectrumTable, row: &DiscreteDerivatives) -> f64 {
    table.entries[row.global_index].label.rotor_m() as f64
}

#[test]
fn analytic_and_discrete_agree_on_both_plateaus() {
    let (cfg, table) = nominal();
    let mut deep_rows = 0;
    for t in tables(&table) {
        let mut high_rows = 0;
        for (raw, corr) in t.raw.iter().zip(&t.corrected) {
            if raw.energy < -0.5 * cfg.v0 {
                deep_rows += 1;
                let n = raw.global_index as f64;
                let ts = corr.timescales(cfg.hbar).unwrap();
                let t_rev = analytic_timescales(Limit::Oscillator, n, &cfg, 4).unwrap().t_rev;
                // The first difference spans n and n + 2.
                let tau = analytic_timescales(Limit::Oscillator, n + 1.0, &cfg, 4).unwrap().tau;
                assert!(
                    rel(ts.t_rev, t_rev) < 0.05,
                    "{:?} row {}: {} vs {t_rev}",
                    t.parity,
                    raw.index,
                    ts.t_rev
                );
                assert!(
                    rel(ts.tau, tau) < 0.05,
                    "{:?} row {}: {} vs {tau}",
                    t.parity,
                    raw.index,
                    ts.tau
                );
            }
            if raw.energy > 4.0 * cfg.v0 {
                high_rows += 1;
                let m = rotor_m(&table, raw);
                let ts = raw.timescales(cfg.hbar).unwrap();
                let t_rev = analytic_timescales(Limit::Rotor, m, &cfg, 4).unwrap().t_rev;
                let tau = analytic_timescales(Limit::Rotor, m + 0.5, &cfg, 4).unwrap().tau;
                assert!(rel(ts.t_rev, t_rev) < 0.05, "{:?} m={m}", t.parity);
                assert!(rel(ts.tau, tau) < 0.05, "{:?} m={m}", t.parity);
                let classical = period(raw.e_bar, &cfg).unwrap().tau.unwrap();
                assert!(
                    rel(ts.tau, classical) < 0.02,
                    "{:?} m={m}: {} vs {classical}",
                    t.parity,
                    ts.tau
                );
            }
        }
        assert!(high_rows > 10);
    }
    // The odd class has no interior state below −V0/2 at q = 160.
    assert!(deep_rows >= 1);
}

#[test]
fn revival_time_falls_and_period_rises_toward_the_band() {
    let (cfg, table) = nominal();
    for t in tables(&table) {
        let (lo, hi) = band(&table, t.parity, cfg.v0);
        let physical = t.physical(cfg.v0, |r| r.energy);
        let below: Vec<_> = physical.iter().filter(|r| r.energy < lo).collect();
        let above: Vec<_> = physical.iter().filter(|r| r.energy > hi).collect();
        let last_below = &below[below.len().saturating_sub(5)..];
        let first_above = &above[..5];
        assert_eq!(last_below.len(), 5, "{:?}", t.parity);

        let ts = |r: &&DiscreteDerivatives| r.timescales(cfg.hbar).unwrap();
        // Walking toward V0 from below: T_rev down, τ up.
        for w in last_below.windows(2) {
            assert!(ts(&w[1]).t_rev < ts(&w[0]).t_rev, "{:?} below band", t.parity);
            assert!(ts(&w[1]).tau > ts(&w[0]).tau, "{:?} below band", t.parity);
        }
        // Walking toward V0 from above means decreasing energy.
        for w in first_above.windows(2) {
            assert!(ts(&w[0]).t_rev < ts(&w[1]).t_rev, "{:?} above band", t.parity);
            assert!(ts(&w[0]).tau > ts(&w[1]).tau, "{:?} above band", t.parity);
        }
    }
}

#[test]
fn finite_peaks_next_to_the_separatrix() {
    let (cfg, table) = nominal();
    for t in tables(&table) {
        let ts: Vec<_> = t.raw.iter().map(|r| r.timescales(cfg.hbar).unwrap()).collect();
        let argmax = |f: &dyn Fn(usize) -> f64| (0..ts.len()).max_by(|&a, &b| f(a).total_cmp(&f(b))).unwrap();
        let argnear = |f: &dyn Fn(usize) -> f64| {
            (0..ts.len())
                .min_by(|&a, &b| (f(a) - cfg.v0).abs().total_cmp(&(f(b) - cfg.v0).abs()))
                .unwrap()
        };
        let tau_peak = argmax(&|i| ts[i].tau);
        let rev_peak = argmax(&|i| ts[i].t_rev);
        assert_eq!(tau_peak, argnear(&|i| t.raw[i].e_bar), "{:?}", t.parity);
        assert_eq!(rev_peak, argnear(&|i| t.raw[i].energy), "{:?}", t.parity);
        assert!(ts[tau_peak].tau.is_finite() && ts[rev_peak].t_rev.is_finite());
    }
}

#[test]
fn superrevivals_are_slowest_on_the_plateaus() {
    let (cfg, table) = nominal();
    for t in tables(&table) {
        for (raw, corr) in t.raw.iter().zip(&t.corrected) {
            let ts = if raw.energy < -0.5 * cfg.v0 {
                corr.timescales(cfg.hbar).unwrap()
            } else if raw.energy > 4.0 * cfg.v0 {
                raw.timescales(cfg.hbar).unwrap()
            } else {
                continue;
            };
            assert!(
                ts.tau < ts.t_rev && ts.t_rev < ts.t_super,
                "{:?} row {}",
                t.parity,
                raw.index
            );
        }
    }
}

#[test]
fn analytic_hierarchy_away_from_the_band() {
    let cfg = PendulumConfig::nominal();
    for order in 2..=4 {
        for n in 0..=10 {
            let ts = analytic_timescales(Limit::Oscillator, n as f64, &cfg, order).unwrap();
            assert!(
                ts.tau < ts.t_rev && ts.t_rev < ts.t_super,
                "oscillator n={n} order={order}"
            );
        }
    }
    for order in [2, 4] {
        for m in 10..=40 {
            let ts = analytic_timescales(Limit::Rotor, m as f64, &cfg, order).unwrap();
            assert!(ts.tau < ts.t_rev && ts.t_rev < ts.t_super, "rotor m={m} order={order}");
        }
    }
}

#[test]
fn free_rotor_times() {
    let cfg = PendulumConfig::nominal();
    let ts = analytic_timescales(Limit::Rotor, 12.0, &cfg, 0).unwrap();
    assert!((ts.t_rev - 2.0 * PI).abs() < 1e-12);
    assert!(ts.t_super_is_infinite());
    let ts = analytic_timescales(Limit::Oscillator, 3.0, &cfg, 0).unwrap();
    assert!(ts.t_rev_is_infinite());
    let ts = analytic_timescales(Limit::Oscillator, 3.0, &cfg, 1).unwrap();
    assert!((ts.t_rev - 16.0 * PI).abs() < 1e-9);
}
