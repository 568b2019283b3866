//! Characteristic values `a_{2m}(q)`, `b_{2m}(q)` of Mathieu's equation
//! `y'' + (a − 2q cos 2z) y = 0` for the period-π solutions.
//!
//! The even solutions are expanded in `{1/√2, cos 2z, cos 4z, …}` and the odd
//! ones in `{sin 2z, sin 4z, …}`. Both expansions give symmetric tridiagonal
//! matrices whose eigenvalues converge to the characteristic values as the
//! truncation grows. Only the sign of `q` enters through the off-diagonal,
//! which is a similarity transform away from `−q`, so negative `q` is folded
//! onto `|q|`.

use serde::{Deserialize, Serialize};

use crate::config::{energy_from_a, Parity, PendulumConfig, StateLabel};
use crate::error::{Error, Result};
use crate::tridiag::{eigen_tridiag, TridiagSystem};

pub const DEFAULT_TOL: f64 = 1e-10;
const MAX_DOUBLINGS: usize = 10;
const MIN_DIM: usize = 4;

/// Matrix for `a_0, a_2, a_4, …`.
///
/// `diag = (0, 4, 16, …, (2(N−1))²)`, `offdiag = (√2 q, q, q, …)`.
pub fn build_even_matrix(q: f64, n: usize) -> Result<TridiagSystem> {
    check_dim(n)?;
    let q = q.abs();
    let diag = (0..n).map(|k| (2 * k * 2 * k) as f64).collect();
    let offdiag = (0..n - 1)
        .map(|k| if k == 0 { std::f64::consts::SQRT_2 * q } else { q })
        .collect();
    TridiagSystem::new(diag, offdiag)
}

/// Matrix for `b_2, b_4, …`: `diag = (4, 16, 36, …)`, `offdiag = (q, q, …)`.
pub fn build_odd_matrix(q: f64, n: usize) -> Result<TridiagSystem> {
    check_dim(n)?;
    let q = q.abs();
    let diag = (1..=n).map(|k| (2 * k * 2 * k) as f64).collect();
    let offdiag = vec![q; n - 1];
    TridiagSystem::new(diag, offdiag)
}

fn check_dim(n: usize) -> Result<()> {
    if n < MIN_DIM {
        return Err(Error::InvalidArgument(format!(
            "truncation {n} below the minimum of {MIN_DIM}"
        )));
    }
    Ok(())
}

fn build_matrix(q: f64, parity: Parity, n: usize) -> Result<TridiagSystem> {
    match parity {
        Parity::Even => build_even_matrix(q, n),
        Parity::Odd => build_odd_matrix(q, n),
    }
}

/// A converged characteristic value with its label.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharValue {
    pub label: StateLabel,
    pub a: f64,
    /// Matrix dimension used for the reported value.
    pub truncation: usize,
    pub converged: bool,
}

/// Initial truncation: enough basis functions for the requested orders and
/// for the `~2√q` band coupled by the cosine potential.
pub fn initial_truncation(q: f64, count: usize) -> usize {
    let coupling = (2.0 * q.abs().sqrt()).ceil() as usize + 10;
    (2 * count).max(coupling).max(MIN_DIM)
}

/// The first `count` characteristic values of one parity, ascending.
///
/// The truncation is doubled until two successive solves agree within `tol`
/// on every requested value. Labels carry `global_index = 0`; [`spectrum`]
/// assigns the merged ordering.
pub fn char_values(q: f64, parity: Parity, count: usize, tol: f64) -> Result<Vec<CharValue>> {
    char_values_with(
        q,
        parity,
        count,
        &SolveOptions {
            tol,
            ..SolveOptions::default()
        },
    )
}

/// Knobs for the truncation-doubling loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_doublings: usize,
    /// Overrides [`initial_truncation`] when set.
    pub initial_truncation: Option<usize>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_doublings: MAX_DOUBLINGS,
            initial_truncation: None,
        }
    }
}

pub fn char_values_with(q: f64, parity: Parity, count: usize, opts: &SolveOptions) -> Result<Vec<CharValue>> {
    let tol = opts.tol;
    if !q.is_finite() {
        return Err(Error::InvalidArgument(format!("q must be finite, got {q}")));
    }
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let mut n = opts
        .initial_truncation
        .unwrap_or_else(|| initial_truncation(q, count))
        .max(count)
        .max(MIN_DIM);
    let mut previous = eigen_tridiag(&build_matrix(q, parity, n)?, count)?;
    let mut last_change = f64::INFINITY;
    for _ in 0..opts.max_doublings {
        n *= 2;
        let current = eigen_tridiag(&build_matrix(q, parity, n)?, count)?;
        last_change = previous
            .iter()
            .zip(&current)
            .map(|(p, c)| (p - c).abs())
            .fold(0.0, f64::max);
        if last_change < tol {
            return Ok(label_values(&current, parity, n, true));
        }
        previous = current;
    }
    Err(Error::NotConverged {
        iterations: opts.max_doublings,
        last_change,
        truncation: n,
        last: previous,
    })
}

fn label_values(values: &[f64], parity: Parity, truncation: usize, converged: bool) -> Vec<CharValue> {
    let first_r = match parity {
        Parity::Even => 0,
        Parity::Odd => 2,
    };
    values
        .iter()
        .enumerate()
        .map(|(k, &a)| CharValue {
            label: StateLabel {
                parity,
                r: first_r + 2 * k as u32,
                global_index: 0,
            },
            a,
            truncation,
            converged,
        })
        .collect()
}

/// One row of a [`SpectrumTable`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub label: StateLabel,
    pub a: f64,
    pub energy: f64,
}

/// Merged even+odd spectrum at a single `q`, ordered by energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub q: f64,
    /// Energy of one unit of `a`, `ħ²/8I`.
    pub energy_unit: f64,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries of one parity, in ascending energy.
    pub fn of_parity(&self, parity: Parity) -> impl Iterator<Item = &SpectrumEntry> + '_ {
        self.entries.iter().filter(move |e| e.label.parity == parity)
    }

    pub fn energies(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.energy).collect()
    }
}

/// Energy spectrum of a physical pendulum.
pub fn spectrum(cfg: &PendulumConfig, count: usize) -> Result<SpectrumTable> {
    cfg.validate()?;
    spectrum_for_q(cfg.q(), cfg.energy_unit(), count, DEFAULT_TOL)
}

/// Merged spectrum for a bare `q`, with energies `E = energy_unit · a`.
///
/// Ties (the `q = 0` degeneracy) are ordered even before odd.
pub fn spectrum_for_q(q: f64, energy_unit: f64, count: usize, tol: f64) -> Result<SpectrumTable> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    // The merged list alternates parities closely enough that `count` values of
    // each parity always cover the lowest `count` merged states.
    let even = char_values(q, Parity::Even, count, tol)?;
    let odd = char_values(q, Parity::Odd, count, tol)?;
    let merged = merge_by_energy(even, odd, tol);
    let entries = merged
        .into_iter()
        .take(count)
        .enumerate()
        .map(|(index, cv)| SpectrumEntry {
            label: StateLabel {
                global_index: index,
                ..cv.label
            },
            a: cv.a,
            energy: cv.a * energy_unit,
        })
        .collect();
    Ok(SpectrumTable {
        q,
        energy_unit,
        entries,
    })
}

/// Merge two ascending lists; values within `tol` of each other count as
/// degenerate and keep even before odd.
fn merge_by_energy(even: Vec<CharValue>, odd: Vec<CharValue>, tol: f64) -> Vec<CharValue> {
    let mut out = Vec::with_capacity(even.len() + odd.len());
    let mut e = even.into_iter().peekable();
    let mut o = odd.into_iter().peekable();
    loop {
        let take_even = match (e.peek(), o.peek()) {
            (Some(x), Some(y)) => x.a <= y.a + tol * y.a.abs().max(1.0),
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => break,
        };
        let next = if take_even { e.next() } else { o.next() };
        out.extend(next);
    }
    out
}

/// Even/odd splitting `a_{2m}(q) − b_{2m}(q)` for `m ≥ 1`.
///
/// Once the splitting falls below roughly `1e-6`, subtracting two nearly equal
/// eigenvalues loses every significant digit. It is instead evaluated from the
/// pivot recurrences of the two matrices. Eliminating rows `0..=m` from below
/// gives pivots `p_k(λ)`. The even and odd pivots obey the same recurrence from
/// `k = 2` on, so their difference propagates multiplicatively:
/// `δ_k = q² δ_{k−1} / (p^e_{k−1} p^o_{k−1})`, starting from `δ_1 = 2q²/λ`.
/// The root shift is then `δ_m / |F'(b)|`, where `F` is the secular function
/// of the odd matrix at its root `b`.
pub fn even_odd_splitting(q: f64, m: usize, tol: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidArgument("splitting defined for m >= 1".into()));
    }
    let q = q.abs();
    if q == 0.0 {
        return Ok(0.0);
    }
    let a = char_values(q, Parity::Even, m + 1, tol)?[m].a;
    let b = char_values(q, Parity::Odd, m, tol)?[m - 1].a;
    let direct = a - b;
    if direct.abs() > 1e-6 {
        return Ok(direct);
    }

    let lambda = b;
    let q2 = q * q;
    let diag = |k: usize| (4 * k * k) as f64 - lambda;

    // Lower elimination through row m: odd pivots with derivatives, and the
    // even-minus-odd pivot difference.
    let mut p_odd = diag(1);
    let mut dp_odd = -1.0;
    let p_even0 = -lambda;
    let mut p_even = diag(1) - 2.0 * q2 / p_even0;
    let mut delta = 2.0 * q2 / lambda;
    for k in 2..=m {
        delta *= q2 / (p_odd * p_even);
        let next_odd = diag(k) - q2 / p_odd;
        dp_odd = -1.0 + q2 * dp_odd / (p_odd * p_odd);
        p_even = diag(k) - q2 / p_even;
        p_odd = next_odd;
    }

    // Upper tail from a row well past the coupling band down to m + 1.
    let top = m + initial_truncation(q, m) + 40;
    let mut t = diag(top);
    let mut dt = -1.0;
    for k in (m + 1..top).rev() {
        let next = diag(k) - q2 / t;
        dt = -1.0 + q2 * dt / (t * t);
        t = next;
    }
    // F(λ) = p_m(λ) − q²/t_{m+1}(λ)
    let slope = dp_odd + q2 * dt / (t * t);
    Ok(-delta / slope)
}

/// Convenience: energy of a characteristic value under `cfg`.
pub fn char_value_energy(cv: &CharValue, cfg: &PendulumConfig) -> f64 {
    energy_from_a(cv.a, cfg)
}
