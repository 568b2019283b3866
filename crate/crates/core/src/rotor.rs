//! High-energy (free-rotor) side of the spectrum: perturbed rotor levels,
//! the small-`q` characteristic-value series and WKB quantization.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::config::PendulumConfig;
use crate::error::{Error, Result};
use crate::jet::Jet;

/// Rotor level `m` with corrections through `order ∈ {0, 2, 4}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotorLevel {
    pub m: u32,
    pub order: u32,
    pub energy: f64,
}

/// Energy of rotor level `m ≥ 0` including perturbative shifts up to `order`.
///
/// ```text
/// E = ħ²m²/2I
///   + I V0² / (ħ² (4m² − 1))                                  (order ≥ 2)
///   + I³ V0⁴ / ħ⁶ · (20m² + 7) / ((4m² − 1)³ (4m² − 4))      (order 4)
/// ```
///
/// Levels `m ∈ {0, 1}` are only defined at order 0: `|m| = 1` is split by
/// degenerate perturbation theory and the fourth-order term has a pole there.
pub fn rotor_energy(m: u32, cfg: &PendulumConfig, order: u32) -> Result<RotorLevel> {
    let energy = rotor_energy_jet(Jet::constant(m as f64), cfg, order, m)?.value();
    Ok(RotorLevel { m, order, energy })
}

pub(crate) fn rotor_energy_jet(m: Jet, cfg: &PendulumConfig, order: u32, label: u32) -> Result<Jet> {
    if !matches!(order, 0 | 2 | 4) {
        return Err(Error::InvalidArgument(format!(
            "rotor series defined at orders 0, 2, 4; got {order}"
        )));
    }
    if order >= 2 && label < 2 {
        return Err(Error::InvalidArgument(format!(
            "rotor corrections need m >= 2, got m = {label}"
        )));
    }
    let hbar2 = cfg.hbar * cfg.hbar;
    let inertia = cfg.inertia();
    let v0 = cfg.v0;
    let m2 = m * m;
    let mut energy = m2 * (hbar2 / (2.0 * inertia));
    if order >= 2 {
        let g = m2 * 4.0 - 1.0;
        energy = energy + g.recip() * (inertia * v0 * v0 / hbar2);
        if order >= 4 {
            let prefactor = inertia.powi(3) * v0.powi(4) / hbar2.powi(3);
            let numerator = m2 * 20.0 + 7.0;
            let denominator = g.powi(3) * (m2 * 4.0 - 4.0);
            energy = energy + numerator / denominator * prefactor;
        }
    }
    Ok(energy)
}

/// Small-`q` series `r² + q²/(2(r²−1)) + (5r²+7)q⁴/(32(r²−1)³(r²−4))`.
///
/// `terms` selects how far the series is summed: 0 keeps `r²`, 1 adds the
/// `q²` term, 2 adds the `q⁴` term.
pub fn handbook_a_high(r: u32, q: f64, terms: u32) -> Result<f64> {
    if r < 3 {
        return Err(Error::InvalidArgument(format!("series needs r >= 3, got {r}")));
    }
    if terms > 2 {
        return Err(Error::InvalidArgument(format!("terms must be 0..=2, got {terms}")));
    }
    let r2 = (r as f64).powi(2);
    let mut a = r2;
    if terms >= 1 {
        a += q * q / (2.0 * (r2 - 1.0));
    }
    if terms >= 2 {
        a += (5.0 * r2 + 7.0) * q.powi(4) / (32.0 * (r2 - 1.0).powi(3) * (r2 - 4.0));
    }
    Ok(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WkbMethod {
    Series,
    ActionRoot,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WkbResult {
    pub m: u32,
    pub a: f64,
    pub method: WkbMethod,
    /// Set when `q²/(2m⁴) ≥ 1`, outside the series' useful range.
    pub outside_validity: bool,
}

/// Leading-in-`m` WKB series `m² + q²/2m² + 5q⁴/32m⁶ + 9q⁶/64m¹⁰`,
/// summed through term index `highest` (0..=3).
pub fn wkb_series(m: u32, q: f64, highest: u32) -> Result<WkbResult> {
    if m < 1 {
        return Err(Error::InvalidArgument("WKB series needs m >= 1".into()));
    }
    if highest > 3 {
        return Err(Error::InvalidArgument(format!(
            "highest term must be 0..=3, got {highest}"
        )));
    }
    let mf = m as f64;
    let terms = [
        mf * mf,
        q * q / (2.0 * mf * mf),
        5.0 * q.powi(4) / (32.0 * mf.powi(6)),
        9.0 * q.powi(6) / (64.0 * mf.powi(10)),
    ];
    Ok(WkbResult {
        m,
        a: terms[..=highest as usize].iter().sum(),
        method: WkbMethod::Series,
        outside_validity: q * q / (2.0 * mf.powi(4)) >= 1.0,
    })
}

/// `∫_{−π}^{π} √(a + 2q cos θ) dθ` for `a > 2|q|`.
///
/// The integrand is smooth and periodic, so the trapezoid rule converges
/// geometrically; panels are doubled until successive sums agree to 1e-15.
pub fn rotor_action(a: f64, q: f64) -> f64 {
    let f = |theta: f64| (a + 2.0 * q * theta.cos()).sqrt();
    let mut panels = 16usize;
    let mut prev = trapezoid_periodic(&f, panels);
    loop {
        panels *= 2;
        let next = trapezoid_periodic(&f, panels);
        if (next - prev).abs() <= 1e-15 * next.abs() || panels >= 1 << 22 {
            return next;
        }
        prev = next;
    }
}

fn trapezoid_periodic(f: &impl Fn(f64) -> f64, panels: usize) -> f64 {
    let h = 2.0 * PI / panels as f64;
    (0..panels).map(|k| f(-PI + k as f64 * h)).sum::<f64>() * h
}

/// Solve `2mπ = ∫ √(a + 2q cos θ) dθ` for `a` by bracketed bisection.
///
/// The bracket `[max(1.0001·2q, m²/2), 4m² + 2q]` stays above the separatrix
/// `a = 2q`, where the integrand is real.
pub fn wkb_action_root(m: u32, q: f64) -> Result<WkbResult> {
    if m < 1 {
        return Err(Error::InvalidArgument("WKB quantization needs m >= 1".into()));
    }
    let q = q.abs();
    let mf = m as f64;
    let target = 2.0 * mf * PI;
    let residual = |a: f64| rotor_action(a, q) - target;
    let mut lo = (2.0 * q * 1.0001).max(0.5 * mf * mf);
    let mut hi = 4.0 * mf * mf + 2.0 * q;
    if residual(lo) > 0.0 || residual(hi) < 0.0 {
        return Err(Error::NoBracket(format!(
            "m = {m}, q = {q}: the quantized action lies below the separatrix a = 2q"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if residual(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(WkbResult {
        m,
        a: 0.5 * (lo + hi),
        method: WkbMethod::ActionRoot,
        outside_validity: false,
    })
}
