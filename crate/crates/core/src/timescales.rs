//! Classical period, revival and superrevival times.
//!
//! For a spectrum `E(n)` expanded about `n₀`:
//!
//! ```text
//! τ = 2πħ / |E'|,   T_rev = 2πħ / (|E''|/2),   T_super = 2πħ / (|E'''|/6)
//! ```
//!
//! Derivatives come either from the perturbative series (exactly, via
//! [`Jet`]) or from finite differences of the computed spectrum taken within a
//! single parity class.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::config::{Parity, PendulumConfig};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::mathieu::SpectrumTable;
use crate::oscillator::closed_form_energy_jet;
use crate::rotor::rotor_energy_jet;

/// Which asymptotic expansion an analytic timescale comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Limit {
    Rotor,
    Oscillator,
}

/// Scaling applied to parity-sampled differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscreteScale {
    /// Differences taken with unit step along the parity subsequence.
    Raw,
    /// Differences rescaled for a step of two in the global quantum number.
    ParityCorrected,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TimescaleSource {
    Derivatives,
    Analytic { limit: Limit, order: u32 },
    Discrete { parity: Parity, scale: DiscreteScale },
}

/// `(τ, T_rev, T_super)`; a vanishing derivative gives an infinite time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timescales {
    pub tau: f64,
    pub t_rev: f64,
    pub t_super: f64,
    pub source: TimescaleSource,
}

impl Timescales {
    pub fn t_super_is_infinite(&self) -> bool {
        self.t_super.is_infinite()
    }

    pub fn t_rev_is_infinite(&self) -> bool {
        self.t_rev.is_infinite()
    }

    fn with_source(self, source: TimescaleSource) -> Self {
        Self { source, ..self }
    }
}

fn inverse_time(hbar: f64, rate: f64) -> f64 {
    if rate == 0.0 {
        f64::INFINITY
    } else {
        2.0 * PI * hbar / rate.abs()
    }
}

/// Timescales from the first three derivatives of `E(n)`.
pub fn timescales_from(d1: f64, d2: f64, d3: f64, hbar: f64) -> Result<Timescales> {
    if d1 == 0.0 || !d1.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "first derivative must be finite and nonzero, got {d1}"
        )));
    }
    Ok(Timescales {
        tau: inverse_time(hbar, d1),
        t_rev: inverse_time(hbar, d2 / 2.0),
        t_super: inverse_time(hbar, d3 / 6.0),
        source: TimescaleSource::Derivatives,
    })
}

/// Energy series of a limit as a jet in its (continuous) quantum number.
pub fn series_energy_jet(limit: Limit, quantum_number: f64, cfg: &PendulumConfig, order: u32) -> Result<Jet> {
    let x = Jet::variable(quantum_number);
    match limit {
        Limit::Rotor => {
            if order >= 2 && quantum_number < 2.0 {
                return Err(Error::InvalidArgument(format!(
                    "rotor corrections need m >= 2, got {quantum_number}"
                )));
            }
            rotor_energy_jet(x, cfg, order, if quantum_number >= 2.0 { 2 } else { 0 })
        }
        Limit::Oscillator => closed_form_energy_jet(order as usize, x, cfg),
    }
}

/// Analytic timescales of a perturbative series at order `order`.
///
/// The quantum number is treated as continuous. Rotor orders are 0, 2, 4;
/// oscillator orders 0 through 4.
pub fn analytic_timescales(limit: Limit, quantum_number: f64, cfg: &PendulumConfig, order: u32) -> Result<Timescales> {
    let e = series_energy_jet(limit, quantum_number, cfg, order)?;
    Ok(timescales_from(e.d1(), e.d2(), e.d3(), cfg.hbar)?.with_source(TimescaleSource::Analytic { limit, order }))
}

/// Leading-order ratios `T_super : T_rev : τ`.
///
/// Rotor: `(4m³/q)² : 2m : 1`. Oscillator: `(8√q)² : 8√q : 1`.
pub fn hierarchy_ratios(limit: Limit, quantum_number: f64, q: f64) -> [f64; 3] {
    match limit {
        Limit::Rotor => {
            let m = quantum_number;
            [(4.0 * m.powi(3) / q).powi(2), 2.0 * m, 1.0]
        }
        Limit::Oscillator => {
            let r = 8.0 * q.sqrt();
            [r * r, r, 1.0]
        }
    }
}

/// Finite differences around one state of a parity subsequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscreteDerivatives {
    pub parity: Parity,
    /// Position `k` within the parity subsequence.
    pub index: usize,
    pub global_index: usize,
    /// `E_k`, where the second difference is centred.
    pub energy: f64,
    /// `(E_{k+1} + E_k)/2`, where the first difference is centred.
    pub e_bar: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub scale_applied: DiscreteScale,
}

impl DiscreteDerivatives {
    pub fn timescales(&self, hbar: f64) -> Result<Timescales> {
        Ok(
            timescales_from(self.d1, self.d2, self.d3, hbar)?.with_source(TimescaleSource::Discrete {
                parity: self.parity,
                scale: self.scale_applied,
            }),
        )
    }

    fn corrected(self) -> Self {
        Self {
            d1: self.d1 / 2.0,
            d2: self.d2 / 4.0,
            d3: self.d3 / 8.0,
            scale_applied: DiscreteScale::ParityCorrected,
            ..self
        }
    }
}

/// Raw and parity-corrected difference tables for one parity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteTable {
    pub parity: Parity,
    pub raw: Vec<DiscreteDerivatives>,
    pub corrected: Vec<DiscreteDerivatives>,
}

impl DiscreteTable {
    /// Row-wise choice of the variant whose step matches the physics:
    /// parity-corrected in the well (`reference < V0`), raw above it.
    ///
    /// `reference` picks the energy used to decide, typically
    /// [`DiscreteDerivatives::e_bar`] for `τ` and `energy` for `T_rev`.
    pub fn physical(&self, v0: f64, reference: impl Fn(&DiscreteDerivatives) -> f64) -> Vec<DiscreteDerivatives> {
        self.raw
            .iter()
            .zip(&self.corrected)
            .map(|(raw, corr)| if reference(raw) < v0 { *corr } else { *raw })
            .collect()
    }
}

/// Finite differences along the energy-ordered states of one parity.
///
/// Rows are produced for `k = 1 ..= K − 3` so that
/// `d1 = E_{k+1} − E_k`, `d2 = E_{k+1} − 2E_k + E_{k−1}` and
/// `d3 = E_{k+2} − 3E_{k+1} + 3E_k − E_{k−1}` are all defined.
pub fn discrete_table(spectrum: &SpectrumTable, parity: Parity) -> Result<DiscreteTable> {
    let states: Vec<_> = spectrum.of_parity(parity).collect();
    if states.len() < 4 {
        return Err(Error::InvalidArgument(format!(
            "need at least 4 {parity} states for third differences, got {}",
            states.len()
        )));
    }
    let e: Vec<f64> = states.iter().map(|s| s.energy).collect();
    let raw: Vec<DiscreteDerivatives> = (1..e.len() - 2)
        .map(|k| DiscreteDerivatives {
            parity,
            index: k,
            global_index: states[k].label.global_index,
            energy: e[k],
            e_bar: 0.5 * (e[k + 1] + e[k]),
            d1: e[k + 1] - e[k],
            d2: e[k + 1] - 2.0 * e[k] + e[k - 1],
            d3: e[k + 2] - 3.0 * e[k + 1] + 3.0 * e[k] - e[k - 1],
            scale_applied: DiscreteScale::Raw,
        })
        .collect();
    let corrected = raw.iter().map(|r| r.corrected()).collect();
    Ok(DiscreteTable { parity, raw, corrected })
}
