//! Built-in consistency checks of the perturbation engine: three exactly
//! solvable perturbations of the oscillator and a sweep of the engine against
//! the closed-form pendulum corrections.

use serde::{Deserialize, Serialize};

use crate::config::PendulumConfig;
use crate::error::Result;
use crate::oscillator::{closed_form, graded_correction, rs_pt, OscillatorFrame, PerturbationPolynomial};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub target: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn absolute(name: String, value: f64, target: f64, tolerance: f64) -> Check {
    Check {
        passed: (value - target).abs() < tolerance,
        name,
        value,
        target,
        tolerance,
    }
}

fn relative(name: String, value: f64, target: f64, tolerance: f64) -> Check {
    Check {
        passed: (value - target).abs() <= tolerance * target.abs(),
        name,
        value,
        target,
        tolerance,
    }
}

/// Oscillator used by the benchmark perturbations.
pub fn benchmark_frame() -> Result<OscillatorFrame> {
    let cfg = PendulumConfig::nominal();
    OscillatorFrame::new(cfg.hbar, cfg.mass, cfg.omega(), 6)
}

const BENCH_LEVELS: [usize; 3] = [0, 1, 4];

/// `V(x) = c`: only the first-order shift survives.
pub fn constant_shift_checks(frame: &OscillatorFrame, shift: f64) -> Result<Vec<Check>> {
    let p = PerturbationPolynomial::constant(shift);
    let mut out = Vec::new();
    for n in BENCH_LEVELS {
        out.push(relative(
            format!("constant/n={n}/rs1"),
            rs_pt(&p, n, frame, 1)?,
            shift,
            1e-12,
        ));
        for k in 2..=4 {
            out.push(absolute(
                format!("constant/n={n}/rs{k}"),
                rs_pt(&p, n, frame, k)?,
                0.0,
                1e-10,
            ));
        }
    }
    Ok(out)
}

/// `V(x) = −F x`: completing the square gives exactly `−F²/(2μω²)`.
pub fn linear_force_checks(frame: &OscillatorFrame, force: f64) -> Result<Vec<Check>> {
    let p = PerturbationPolynomial::linear(-force);
    let target = -force * force / (2.0 * frame.mass * frame.omega * frame.omega);
    let mut out = Vec::new();
    for n in BENCH_LEVELS {
        out.push(relative(
            format!("linear/n={n}/rs2"),
            rs_pt(&p, n, frame, 2)?,
            target,
            1e-10,
        ));
        for k in [1, 3, 4] {
            out.push(absolute(
                format!("linear/n={n}/rs{k}"),
                rs_pt(&p, n, frame, k)?,
                0.0,
                1e-10,
            ));
        }
    }
    Ok(out)
}

/// Binomial coefficients `C(1/2, k)`, k = 0..len.
fn half_binomials(len: usize) -> Vec<f64> {
    let mut c = vec![1.0];
    for k in 1..len {
        let prev = c[k - 1];
        c.push(prev * (0.5 - (k as f64 - 1.0)) / k as f64);
    }
    c
}

/// Residual of the fourth-order RS sum for `V = λx²`, whose exact shift is
/// `(n+½)ħω(√(1+s) − 1)` with `s = 2λ/(μω²)`.
///
/// The residual is of order `s⁵`, far below the rounding error of the total
/// energy. It is assembled as the Taylor tail of the square root (a
/// convergent series with no cancellation) minus the order-by-order
/// differences between the engine and the Taylor terms.
pub fn quadratic_residual(frame: &OscillatorFrame, n: usize, lambda: f64) -> Result<f64> {
    let p = PerturbationPolynomial::quadratic(lambda);
    let s = 2.0 * lambda / (frame.mass * frame.omega * frame.omega);
    let level = (n as f64 + 0.5) * frame.quantum();
    let c = half_binomials(60);
    let mut tail = 0.0;
    for k in (5..c.len()).rev() {
        tail += c[k] * s.powi(k as i32);
    }
    let mut engine_minus_taylor = 0.0;
    for (k, &ck) in c.iter().enumerate().take(5).skip(1) {
        engine_minus_taylor += rs_pt(&p, n, frame, k)? - level * ck * s.powi(k as i32);
    }
    Ok(level * tail - engine_minus_taylor)
}

/// Fitted exponent of `|residual|` against `λ` across `lambdas`.
pub fn quadratic_slope(frame: &OscillatorFrame, n: usize, lambdas: &[f64]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = lambdas
        .iter()
        .map(|&l| Ok((l.ln(), quadratic_residual(frame, n, l)?.abs().ln())))
        .collect::<Result<_>>()?;
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

pub fn quadratic_checks(frame: &OscillatorFrame) -> Result<Vec<Check>> {
    let unit = frame.mass * frame.omega * frame.omega;
    let lambdas = [1e-3 * unit, 1e-2 * unit];
    let mut out = Vec::new();
    for n in [0, 2] {
        let slope = quadratic_slope(frame, n, &lambdas)?;
        out.push(absolute(format!("quadratic/n={n}/residual-slope"), slope, 5.0, 0.2));
    }
    Ok(out)
}

/// Configurations for the engine-vs-closed-form sweep.
pub fn sweep_configs() -> [PendulumConfig; 3] {
    [
        PendulumConfig::nominal(),
        PendulumConfig {
            hbar: 1.0,
            mass: 2.0,
            length: 0.5,
            v0: 300.0,
        },
        PendulumConfig {
            hbar: 0.7,
            mass: 1.3,
            length: 1.7,
            v0: 45.0,
        },
    ]
}

/// Graded engine against the closed forms for `g = 1..=4`, `n = 0..=n_max`.
pub fn engine_sweep_checks(n_max: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (i, cfg) in sweep_configs().iter().enumerate() {
        for g in 1..=4 {
            for n in 0..=n_max {
                let engine = graded_correction(g, n, cfg)?.value;
                let printed = closed_form(g, n as f64, cfg)?;
                out.push(relative(format!("sweep/cfg{i}/g={g}/n={n}"), engine, printed, 1e-9));
            }
        }
    }
    Ok(out)
}

/// Everything above with default parameters.
pub fn run_selftest() -> Result<SelftestReport> {
    let frame = benchmark_frame()?;
    let mut checks = constant_shift_checks(&frame, 2.5)?;
    checks.extend(linear_force_checks(&frame, 3.0)?);
    checks.extend(quadratic_checks(&frame)?);
    checks.extend(engine_sweep_checks(10)?);
    Ok(SelftestReport { checks })
}
