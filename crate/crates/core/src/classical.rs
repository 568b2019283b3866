//! Classical period of the pendulum `H = p²/2I − V0 cos θ`.
//!
//! Both the librating and the rotating period reduce to the complete elliptic
//! integral of the first kind, which is evaluated by the arithmetic-geometric
//! mean. `K` here always takes the modulus `k`, not the parameter `m = k²`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::config::PendulumConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassicalRegime {
    /// `E = −V0`: at rest at the bottom of the well.
    Rest,
    /// `−V0 < E < V0`: back-and-forth motion between turning points.
    Libration,
    /// `E = V0`: the period diverges.
    Separatrix,
    /// `E > V0`: full revolutions.
    Rotation,
}

impl ClassicalRegime {
    pub fn classify(energy: f64, v0: f64) -> Self {
        if energy <= -v0 {
            ClassicalRegime::Rest
        } else if energy < v0 {
            ClassicalRegime::Libration
        } else if energy == v0 {
            ClassicalRegime::Separatrix
        } else {
            ClassicalRegime::Rotation
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodPoint {
    pub energy: f64,
    /// `None` only on the separatrix.
    pub tau: Option<f64>,
    pub regime: ClassicalRegime,
}

/// Turning angle `Θ = arccos(−E/V0)` of a librating pendulum.
pub fn turning_angle(energy: f64, cfg: &PendulumConfig) -> Result<f64> {
    if !(energy >= -cfg.v0 && energy <= cfg.v0) {
        return Err(Error::EnergyOutOfRange {
            energy,
            lo: -cfg.v0,
            hi: cfg.v0,
        });
    }
    Ok((-energy / cfg.v0).clamp(-1.0, 1.0).acos())
}

/// Arithmetic-geometric mean of two non-negative numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind `K(k)` for modulus `0 ≤ k < 1`.
pub fn elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "elliptic modulus must satisfy 0 <= k < 1, got {k}"
        )));
    }
    Ok(elliptic_k_complementary((1.0 - k) * (1.0 + k)))
}

/// `K` expressed through the complementary parameter `k'² = 1 − k²`, which
/// keeps full precision close to the logarithmic singularity at `k → 1`.
fn elliptic_k_complementary(kc2: f64) -> f64 {
    FRAC_PI_2 / agm(1.0, kc2.sqrt())
}

/// Small-oscillation period `2π √(I/V0)`.
pub fn small_oscillation_period(cfg: &PendulumConfig) -> f64 {
    2.0 * PI * (cfg.inertia() / cfg.v0).sqrt()
}

/// Classical period at energy `E`.
///
/// Libration: `τ = 4√(I/V0) K(k)` with `k² = (E+V0)/2V0`.
/// Rotation: `τ = 2√(2I/(E+V0)) K(k)` with `k² = 2V0/(E+V0)`.
pub fn period(energy: f64, cfg: &PendulumConfig) -> Result<PeriodPoint> {
    let v0 = cfg.v0;
    let inertia = cfg.inertia();
    if !energy.is_finite() || energy < -v0 {
        return Err(Error::EnergyOutOfRange {
            energy,
            lo: -v0,
            hi: f64::INFINITY,
        });
    }
    let regime = ClassicalRegime::classify(energy, v0);
    let tau = match regime {
        ClassicalRegime::Rest => Some(small_oscillation_period(cfg)),
        ClassicalRegime::Separatrix => None,
        ClassicalRegime::Libration => {
            let kc2 = (v0 - energy) / (2.0 * v0);
            Some(4.0 * (inertia / v0).sqrt() * elliptic_k_complementary(kc2))
        }
        ClassicalRegime::Rotation => {
            let kc2 = (energy - v0) / (energy + v0);
            Some(2.0 * (2.0 * inertia / (energy + v0)).sqrt() * elliptic_k_complementary(kc2))
        }
    };
    Ok(PeriodPoint { energy, tau, regime })
}

/// Pointwise [`period`] over an energy grid.
pub fn period_curve(cfg: &PendulumConfig, energies: &[f64]) -> Result<Vec<PeriodPoint>> {
    energies.iter().map(|&e| period(e, cfg)).collect()
}

/// High-energy limit `2π √(I/2E)`.
pub fn rotor_limit_period(energy: f64, cfg: &PendulumConfig) -> f64 {
    2.0 * PI * (cfg.inertia() / (2.0 * energy)).sqrt()
}
