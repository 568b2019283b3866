//! Physical configuration of the pendulum and the map into Mathieu variables.
//!
//! Everything numerical downstream works with the dimensionless pair `(a, q)`;
//! this module is the only place where `ħ`, `μ`, `l` and `V0` are combined.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced Planck constant in SI units, used only by [`estimate_q`].
pub const HBAR_SI: f64 = 1.054_571_817e-34;

/// Physical parameters of a rigid pendulum `H = p²/2I − V0 cos θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PendulumConfig {
    pub hbar: f64,
    pub mass: f64,
    pub length: f64,
    pub v0: f64,
}

impl PendulumConfig {
    pub fn new(hbar: f64, mass: f64, length: f64, v0: f64) -> Result<Self> {
        let cfg = Self { hbar, mass, length, v0 };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `ħ = 2μ = l = 1`, `V0 = 80`, i.e. `q = 160`.
    pub fn nominal() -> Self {
        Self {
            hbar: 1.0,
            mass: 0.5,
            length: 1.0,
            v0: 80.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("hbar", self.hbar),
            ("mass", self.mass),
            ("length", self.length),
            ("v0", self.v0),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        Ok(())
    }

    /// Moment of inertia `I = μ l²`.
    pub fn inertia(&self) -> f64 {
        self.mass * self.length * self.length
    }

    /// Small-oscillation angular frequency `ω = √(V0/I)`.
    pub fn omega(&self) -> f64 {
        (self.v0 / self.inertia()).sqrt()
    }

    /// Energy corresponding to one unit of the Mathieu parameter `a`, i.e. `ħ²/8I`.
    pub fn energy_unit(&self) -> f64 {
        self.hbar * self.hbar / (8.0 * self.inertia())
    }

    pub fn q(&self) -> f64 {
        q_of_config(self)
    }

    /// Parse a flat `key=value` document with keys `hbar`, `mass`, `length`, `v0`.
    ///
    /// Blank lines and lines starting with `#` are ignored. Missing keys fall back
    /// to [`PendulumConfig::nominal`].
    pub fn from_key_values(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidConfig(format!("line {}: expected key=value", lineno + 1)))?;
            let key = key.trim();
            let value: f64 = value.trim().parse().map_err(|_| {
                Error::InvalidConfig(format!("line {}: `{}` is not a number", lineno + 1, value.trim()))
            })?;
            match key {
                "hbar" | "mass" | "length" | "v0" => {
                    values.insert(key.to_owned(), value);
                }
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        let nominal = Self::nominal();
        Self::new(
            values.get("hbar").copied().unwrap_or(nominal.hbar),
            values.get("mass").copied().unwrap_or(nominal.mass),
            values.get("length").copied().unwrap_or(nominal.length),
            values.get("v0").copied().unwrap_or(nominal.v0),
        )
    }
}

impl Default for PendulumConfig {
    fn default() -> Self {
        Self::nominal()
    }
}

/// A point `(q, a)` in the Mathieu parameter plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MathieuCoords {
    pub q: f64,
    pub a: f64,
}

impl MathieuCoords {
    pub fn from_energy(energy: f64, cfg: &PendulumConfig) -> Self {
        Self {
            q: q_of_config(cfg),
            a: a_from_energy(energy, cfg),
        }
    }

    pub fn energy(&self, cfg: &PendulumConfig) -> f64 {
        energy_from_a(self.a, cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::InvalidArgument(format!("unknown parity `{other}`"))),
        }
    }
}

/// Label of a physical (period-π in `z`) Mathieu state.
///
/// `r` is the Mathieu order, always even; the rotor quantum number is `r/2` and
/// the oscillator quantum number coincides with `global_index` in the deep well.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateLabel {
    pub parity: Parity,
    pub r: u32,
    pub global_index: usize,
}

impl StateLabel {
    pub fn new(parity: Parity, r: u32, global_index: usize) -> Result<Self> {
        if !r.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("order r={r} must be even")));
        }
        if parity == Parity::Odd && r < 2 {
            return Err(Error::InvalidArgument("odd states start at r=2".into()));
        }
        Ok(Self {
            parity,
            r,
            global_index,
        })
    }

    /// Rotor quantum number `m = r/2`.
    pub fn rotor_m(&self) -> u32 {
        self.r / 2
    }
}

/// `q = 4 I V0 / ħ²`.
pub fn q_of_config(cfg: &PendulumConfig) -> f64 {
    4.0 * cfg.inertia() * cfg.v0 / (cfg.hbar * cfg.hbar)
}

/// `E = a ħ² / 8I`.
pub fn energy_from_a(a: f64, cfg: &PendulumConfig) -> f64 {
    a * cfg.energy_unit()
}

/// `a = 8 I E / ħ²`.
pub fn a_from_energy(energy: f64, cfg: &PendulumConfig) -> f64 {
    8.0 * cfg.inertia() * energy / (cfg.hbar * cfg.hbar)
}

/// Source of the potential depth `V0` in [`estimate_q`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    /// `force_scale` is the gravitational acceleration `g`; `V0 = m g l`.
    Gravity,
    /// `force_scale` is the force `Q E` on a point charge; `V0 = Q E l`.
    ElectricCharge,
    /// `force_scale` is the dipole energy `p E`; `V0 = p E`.
    ElectricDipole,
}

/// Order-of-magnitude `q` for a physical system in SI units.
pub fn estimate_q(mass: f64, length: f64, force_scale: f64, kind: FieldKind) -> Result<f64> {
    if !(mass.is_finite() && mass > 0.0) || !(length.is_finite() && length > 0.0) {
        return Err(Error::InvalidArgument("mass and length must be positive".into()));
    }
    if !(force_scale.is_finite() && force_scale >= 0.0) {
        return Err(Error::InvalidArgument("force scale must be non-negative".into()));
    }
    let v0 = match kind {
        FieldKind::Gravity => mass * force_scale * length,
        FieldKind::ElectricCharge => force_scale * length,
        FieldKind::ElectricDipole => force_scale,
    };
    let inertia = mass * length * length;
    Ok(4.0 * inertia * v0 / (HBAR_SI * HBAR_SI))
}
