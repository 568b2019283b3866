//! Quantum pendulum spectra, perturbative series, classical periods and
//! revival timescales.
//!
//! The Schrödinger equation of a rigid pendulum `H = p²/2I − V0 cos θ` maps
//! onto Mathieu's equation with `q = 4IV0/ħ²` and `a = 8IE/ħ²`. The crate
//! provides:
//!
//! - [`mathieu`]: converged characteristic values and the merged spectrum,
//! - [`classical`]: the classical period through the elliptic integral `K`,
//! - [`oscillator`]: deep-well perturbation theory, including a generic
//!   fourth-order Rayleigh–Schrödinger engine,
//! - [`rotor`]: free-rotor perturbation series and WKB quantization,
//! - [`timescales`]: classical period, revival and superrevival times from
//!   analytic series and from discrete differences of the spectrum,
//! - [`figures`] and [`emit`]: figure datasets and their CSV/JSON encoding.

pub mod classical;
pub mod config;
pub mod emit;
pub mod error;
pub mod figures;
pub mod jet;
pub mod mathieu;
pub mod oscillator;
pub mod rotor;
pub mod selftest;
pub mod timescales;
pub mod tridiag;

pub use classical::{elliptic_k, period, period_curve, turning_angle, ClassicalRegime, PeriodPoint};
pub use config::{
    a_from_energy, energy_from_a, estimate_q, q_of_config, FieldKind, MathieuCoords, Parity, PendulumConfig, StateLabel,
};
pub use error::{Error, Result};
pub use mathieu::{char_values, spectrum, spectrum_for_q, CharValue, SpectrumEntry, SpectrumTable};
pub use oscillator::{
    closed_form, graded_correction, handbook_a_low, rs_pt, OscillatorFrame, PerturbationPolynomial, PtCorrection,
};
pub use rotor::{handbook_a_high, rotor_energy, wkb_action_root, wkb_series, RotorLevel, WkbResult};
pub use timescales::{
    analytic_timescales, discrete_table, hierarchy_ratios, timescales_from, DiscreteDerivatives, DiscreteTable, Limit,
    Timescales,
};
pub use tridiag::{eigen_tridiag, TridiagSystem};
