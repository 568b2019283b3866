//! Data behind the eight standard figures: characteristic curves, series
//! errors, periods and revival times.
//!
//! Every dataset is a list of named `(x, y)` series. Plotting is left to the
//! consumer.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classical::period;
use crate::config::{Parity, PendulumConfig};
use crate::error::{Error, Result};
use crate::mathieu::{char_values, spectrum_for_q, SpectrumTable, DEFAULT_TOL};
use crate::oscillator::closed_form_energy;
use crate::rotor::rotor_energy;
use crate::timescales::{analytic_timescales, discrete_table, series_energy_jet, Limit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

impl FigureId {
    pub const ALL: [FigureId; 8] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
            FigureId::Fig8 => "fig8",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown figure '{s}', expected fig1..fig8")))
    }
}

/// One labelled curve or point set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub id: String,
    pub x_label: String,
    pub y_label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl Series {
    fn new(id: impl Into<String>, x_label: &str, y_label: &str) -> Self {
        Self {
            id: id.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            x: Vec::new(),
            y: Vec::new(),
        }
    }

    fn push(&mut self, x: f64, y: f64) {
        self.x.push(x);
        self.y.push(y);
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureDataset {
    pub figure_id: FigureId,
    pub series: Vec<Series>,
}

impl FigureDataset {
    pub fn series(&self, id: &str) -> Option<&Series> {
        self.series.iter().find(|s| s.id == id)
    }
}

/// Knobs shared by the figure builders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureOptions {
    /// States in the merged spectrum (figs 2–8).
    pub count: usize,
    pub tol: f64,
    /// Upper end of the `q` grid in fig 1.
    pub q_max: f64,
    pub q_points: usize,
    /// Characteristic curves per parity in fig 1.
    pub curves: usize,
    /// Samples on each smooth curve.
    pub curve_points: usize,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self {
            count: 100,
            tol: DEFAULT_TOL,
            q_max: 200.0,
            q_points: 201,
            curves: 6,
            curve_points: 400,
        }
    }
}

impl FigureOptions {
    fn validate(&self) -> Result<()> {
        if self.count < 8 {
            return Err(Error::InvalidArgument(format!(
                "count must be at least 8, got {}",
                self.count
            )));
        }
        if self.q_points < 2 || self.curve_points < 2 || self.curves == 0 {
            return Err(Error::InvalidArgument(
                "grids need at least two points and one curve".into(),
            ));
        }
        if self.q_max.is_nan() || self.q_max <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "q_max must be positive, got {}",
                self.q_max
            )));
        }
        Ok(())
    }
}

const ROTOR_ORDERS: [u32; 3] = [0, 2, 4];
const OSCILLATOR_ORDERS: [u32; 5] = [0, 1, 2, 3, 4];

pub fn build_figure(id: FigureId, cfg: &PendulumConfig, opts: &FigureOptions) -> Result<FigureDataset> {
    cfg.validate()?;
    opts.validate()?;
    let series = match id {
        FigureId::Fig1 => fig1(opts)?,
        FigureId::Fig2 => fig2(cfg, &compute_spectrum(cfg, opts)?)?,
        FigureId::Fig3 => rotor_points(cfg, &compute_spectrum(cfg, opts)?, opts, Quantity::Period)?,
        FigureId::Fig4 => rotor_points(cfg, &compute_spectrum(cfg, opts)?, opts, Quantity::Revival)?,
        FigureId::Fig5 => oscillator_points(cfg, &compute_spectrum(cfg, opts)?, opts, Quantity::Period)?,
        FigureId::Fig6 => oscillator_points(cfg, &compute_spectrum(cfg, opts)?, opts, Quantity::Revival)?,
        FigureId::Fig7 => fig7(cfg, &compute_spectrum(cfg, opts)?, opts)?,
        FigureId::Fig8 => fig8(cfg, &compute_spectrum(cfg, opts)?, opts)?,
    };
    Ok(FigureDataset { figure_id: id, series })
}

fn compute_spectrum(cfg: &PendulumConfig, opts: &FigureOptions) -> Result<SpectrumTable> {
    spectrum_for_q(cfg.q(), cfg.energy_unit(), opts.count, opts.tol)
}

fn linspace(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (points - 1) as f64;
    (0..points).map(move |i| if i + 1 == points { hi } else { lo + step * i as f64 })
}

fn fig1(opts: &FigureOptions) -> Result<Vec<Series>> {
    let n = opts.curves;
    let mut even: Vec<Series> = (0..n).map(|m| Series::new(format!("a{}", 2 * m), "q", "a")).collect();
    let mut odd: Vec<Series> = (1..=n).map(|m| Series::new(format!("b{}", 2 * m), "q", "a")).collect();
    let mut plus = Series::new("plus_2q", "q", "a");
    let mut minus = Series::new("minus_2q", "q", "a");
    for q in linspace(0.0, opts.q_max, opts.q_points) {
        for (s, cv) in even.iter_mut().zip(char_values(q, Parity::Even, n, opts.tol)?) {
            s.push(q, cv.a);
        }
        for (s, cv) in odd.iter_mut().zip(char_values(q, Parity::Odd, n, opts.tol)?) {
            s.push(q, cv.a);
        }
        plus.push(q, 2.0 * q);
        minus.push(q, -2.0 * q);
    }
    even.extend(odd);
    even.push(plus);
    even.push(minus);
    Ok(even)
}

/// States above the barrier, one per rotor number `m ≥ 2`, lowest energy first.
fn rotor_states(table: &SpectrumTable, v0: f64) -> Vec<(u32, f64)> {
    let mut out: Vec<(u32, f64)> = Vec::new();
    for e in &table.entries {
        let m = e.label.rotor_m();
        if e.energy > v0 && m >= 2 && !out.iter().any(|&(seen, _)| seen == m) {
            out.push((m, e.energy));
        }
    }
    out.sort_by_key(|&(m, _)| m);
    out
}

/// States below the barrier as `(n, E)` with `n` the global index.
fn oscillator_states(table: &SpectrumTable, v0: f64) -> Vec<(usize, f64)> {
    table
        .entries
        .iter()
        .filter(|e| e.energy < v0)
        .map(|e| (e.label.global_index, e.energy))
        .collect()
}

/// Series minus exact energy, per order, on both sides of the barrier.
fn fig2(cfg: &PendulumConfig, table: &SpectrumTable) -> Result<Vec<Series>> {
    let mut out = Vec::new();
    let below = oscillator_states(table, cfg.v0);
    for order in OSCILLATOR_ORDERS {
        let mut s = Series::new(format!("oscillator_order{order}"), "E_exact", "E_series-E_exact");
        for &(n, exact) in &below {
            s.push(exact, closed_form_energy(order as usize, n as f64, cfg)? - exact);
        }
        out.push(s);
    }
    let above: Vec<_> = table.entries.iter().filter(|e| e.energy > cfg.v0).collect();
    for order in ROTOR_ORDERS {
        let mut s = Series::new(format!("rotor_order{order}"), "E_exact", "E_series-E_exact");
        for e in &above {
            let m = e.label.rotor_m();
            if order > 0 && m < 2 {
                continue;
            }
            s.push(e.energy, rotor_energy(m, cfg, order)?.energy - e.energy);
        }
        out.push(s);
    }
    Ok(out)
}

#[derive(Clone, Copy)]
enum Quantity {
    Period,
    Revival,
}

impl Quantity {
    fn label(self) -> &'static str {
        match self {
            Quantity::Period => "tau",
            Quantity::Revival => "T_rev",
        }
    }
}

fn classical_curve(cfg: &PendulumConfig, id: &str, lo: f64, hi: f64, points: usize) -> Result<Series> {
    let mut s = Series::new(id, "E", "tau");
    for e in linspace(lo, hi, points) {
        if let Some(tau) = period(e, cfg)?.tau {
            s.push(e, tau);
        }
    }
    Ok(s)
}

/// Grid on `(lo, hi)` that stops one grid step short of the separatrix.
fn open_interval(lo: f64, hi: f64, points: usize) -> (f64, f64) {
    let step = (hi - lo) / points as f64;
    if lo.abs() < hi.abs() {
        (lo + step, hi)
    } else {
        (lo, hi - step)
    }
}

fn series_point(limit: Limit, x: f64, cfg: &PendulumConfig, order: u32, quantity: Quantity) -> Result<(f64, f64)> {
    let energy = series_energy_jet(limit, x, cfg, order)?.value();
    let ts = analytic_timescales(limit, x, cfg, order)?;
    let y = match quantity {
        Quantity::Period => ts.tau,
        Quantity::Revival => ts.t_rev,
    };
    Ok((energy, y))
}

/// Rotor-limit series points (figs 3, 4).
fn rotor_points(
    cfg: &PendulumConfig,
    table: &SpectrumTable,
    opts: &FigureOptions,
    quantity: Quantity,
) -> Result<Vec<Series>> {
    let states = rotor_states(table, cfg.v0);
    let mut out = Vec::new();
    if let Quantity::Period = quantity {
        let top = states.last().map_or(4.0 * cfg.v0, |&(_, e)| e);
        let (lo, hi) = open_interval(cfg.v0, top, opts.curve_points);
        out.push(classical_curve(cfg, "classical", lo, hi, opts.curve_points)?);
    }
    for order in ROTOR_ORDERS {
        let mut s = Series::new(format!("rotor_order{order}"), "E_series", quantity.label());
        for &(m, _) in &states {
            let (e, y) = series_point(Limit::Rotor, m as f64, cfg, order, quantity)?;
            s.push(e, y);
        }
        out.push(s);
    }
    Ok(out)
}

/// Oscillator-limit series points (figs 5, 6). Order 0 has no revivals and
/// is left out of fig 6.
fn oscillator_points(
    cfg: &PendulumConfig,
    table: &SpectrumTable,
    opts: &FigureOptions,
    quantity: Quantity,
) -> Result<Vec<Series>> {
    let states = oscillator_states(table, cfg.v0);
    let mut out = Vec::new();
    let orders: &[u32] = match quantity {
        Quantity::Period => {
            let (lo, hi) = open_interval(-cfg.v0, cfg.v0, opts.curve_points);
            out.push(classical_curve(cfg, "classical", lo, hi, opts.curve_points)?);
            &OSCILLATOR_ORDERS
        }
        Quantity::Revival => &OSCILLATOR_ORDERS[1..],
    };
    for &order in orders {
        let mut s = Series::new(format!("oscillator_order{order}"), "E_series", quantity.label());
        for &(n, _) in &states {
            let (e, y) = series_point(Limit::Oscillator, n as f64, cfg, order, quantity)?;
            s.push(e, y);
        }
        out.push(s);
    }
    Ok(out)
}

/// Discrete `τ` against the averaged energy, per parity and variant, with
/// the classical period on both sides of the barrier.
fn fig7(cfg: &PendulumConfig, table: &SpectrumTable, opts: &FigureOptions) -> Result<Vec<Series>> {
    let mut out = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let t = discrete_table(table, parity)?;
        for (variant, rows) in [("raw", &t.raw), ("corrected", &t.corrected)] {
            let mut s = Series::new(format!("{parity}_{variant}"), "E_bar", "tau");
            for row in rows {
                s.push(row.e_bar, row.timescales(cfg.hbar)?.tau);
            }
            out.push(s);
        }
    }
    let (lo, hi) = open_interval(-cfg.v0, cfg.v0, opts.curve_points);
    out.push(classical_curve(cfg, "classical_libration", lo, hi, opts.curve_points)?);
    let top = table
        .entries
        .last()
        .map_or(4.0 * cfg.v0, |e| e.energy)
        .max(2.0 * cfg.v0);
    let (lo, hi) = open_interval(cfg.v0, top, opts.curve_points);
    out.push(classical_curve(cfg, "classical_rotation", lo, hi, opts.curve_points)?);
    Ok(out)
}

/// Discrete `T_rev` per parity and variant, with the fourth-order analytic
/// curves of both limits.
fn fig8(cfg: &PendulumConfig, table: &SpectrumTable, opts: &FigureOptions) -> Result<Vec<Series>> {
    let mut out = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let t = discrete_table(table, parity)?;
        for (variant, rows) in [("raw", &t.raw), ("corrected", &t.corrected)] {
            let mut s = Series::new(format!("{parity}_{variant}"), "E", "T_rev");
            for row in rows {
                s.push(row.energy, row.timescales(cfg.hbar)?.t_rev);
            }
            out.push(s);
        }
    }

    let below = oscillator_states(table, cfg.v0);
    let n_top = below.last().map_or(0, |&(n, _)| n) as f64;
    let mut osc = Series::new("oscillator_order4", "E_series", "T_rev");
    for n in linspace(0.0, n_top, opts.curve_points) {
        let (e, y) = series_point(Limit::Oscillator, n, cfg, 4, Quantity::Revival)?;
        osc.push(e, y);
    }
    out.push(osc);

    let above = rotor_states(table, cfg.v0);
    if let (Some(&(m_lo, _)), Some(&(m_hi, _))) = (above.first(), above.last()) {
        let mut rot = Series::new("rotor_order4", "E_series", "T_rev");
        for m in linspace(m_lo as f64, m_hi as f64, opts.curve_points) {
            let (e, y) = series_point(Limit::Rotor, m, cfg, 4, Quantity::Revival)?;
            rot.push(e, y);
        }
        out.push(rot);
    }
    Ok(out)
}
