//! Shared inputs for the criterion benchmarks.

use pendulum_core::PendulumConfig;

/// Energies spanning both sides of the separatrix for the nominal pendulum.
pub fn energy_grid(points: usize) -> Vec<f64> {
    let cfg = PendulumConfig::nominal();
    (0..points)
        .map(|i| -cfg.v0 + (6.0 * cfg.v0) * (i as f64 + 0.5) / points as f64)
        .filter(|e| *e != cfg.v0)
        .collect()
}
