//! Low-energy (deep-well) expansion of the pendulum spectrum.
//!
//! With `x = lθ` the potential `−V0 cos(x/l)` is a harmonic well plus the
//! anharmonic terms `H_{2r} = (−1)^{r+1} V0 x^{2r} / ((2r)! l^{2r})`, `r ≥ 2`.
//! Assigning `H_{2r}` the grade `r − 1`, the `g`-th correction collects every
//! RS product of terms whose grades sum to `g`. The engine here evaluates those
//! sums numerically in the oscillator basis; [`closed_form`] carries the known
//! polynomials in `n` they must reproduce.

mod ladder;
mod rs;

use serde::{Deserialize, Serialize};

pub use ladder::{ladder_power, x_power_matrix, BandMatrix};
pub use rs::{rs_corrections, DenseSym, Graded, PtScalar};

use crate::config::PendulumConfig;
use crate::error::{Error, Result};
use crate::jet::Jet;

/// Highest grade (expansion order) handled by the engine.
pub const MAX_GRADE: usize = 4;
/// Highest anharmonic term used, `H_10`.
pub const MAX_HALF_POWER: usize = MAX_GRADE + 1;
const RECHECK_EXTRA_DIM: usize = 10;

/// Unperturbed oscillator and basis truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorFrame {
    pub hbar: f64,
    pub mass: f64,
    pub omega: f64,
    /// Highest level whose corrections will be requested.
    pub n_max: usize,
    pub basis_dim: usize,
}

impl OscillatorFrame {
    /// Frame with the smallest basis that makes every sum through `H_10` exact.
    pub fn new(hbar: f64, mass: f64, omega: f64, n_max: usize) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("mass", mass), ("omega", omega)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self {
            hbar,
            mass,
            omega,
            n_max,
            basis_dim: Self::min_basis(n_max),
        })
    }

    pub fn for_pendulum(cfg: &PendulumConfig, n_max: usize) -> Result<Self> {
        cfg.validate()?;
        Self::new(cfg.hbar, cfg.mass, cfg.omega(), n_max)
    }

    /// `n_max + 4 r_max + 10` with `r_max = 5`.
    pub fn min_basis(n_max: usize) -> usize {
        n_max + 4 * MAX_HALF_POWER + 10
    }

    pub fn with_basis_dim(self, basis_dim: usize) -> Result<Self> {
        if basis_dim < Self::min_basis(self.n_max) {
            return Err(Error::InvalidArgument(format!(
                "basis dimension {basis_dim} below the minimum {}",
                Self::min_basis(self.n_max)
            )));
        }
        Ok(Self { basis_dim, ..self })
    }

    /// Oscillator length `√(ħ/2μω)` multiplying `A + A†`.
    pub fn length_scale(&self) -> f64 {
        (self.hbar / (2.0 * self.mass * self.omega)).sqrt()
    }

    pub fn quantum(&self) -> f64 {
        self.hbar * self.omega
    }
}

/// One monomial `coefficient · x^power` of a perturbation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub power: usize,
    pub coefficient: f64,
    /// Bookkeeping grade, `≥ 1`; ignored by [`rs_pt`].
    pub grade: usize,
}

/// A polynomial perturbation `H' = Σ c_p x^p`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PerturbationPolynomial {
    terms: Vec<PolyTerm>,
}

impl PerturbationPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_term(mut self, power: usize, coefficient: f64, grade: usize) -> Self {
        self.terms.push(PolyTerm {
            power,
            coefficient,
            grade: grade.max(1),
        });
        self
    }

    pub fn constant(value: f64) -> Self {
        Self::new().with_term(0, value, 1)
    }

    pub fn linear(coefficient: f64) -> Self {
        Self::new().with_term(1, coefficient, 1)
    }

    pub fn quadratic(coefficient: f64) -> Self {
        Self::new().with_term(2, coefficient, 1)
    }

    /// `Σ_{r=2}^{r_max} H_{2r}` of the pendulum, graded `r − 1`.
    pub fn pendulum(cfg: &PendulumConfig, r_max: usize) -> Self {
        (2..=r_max).fold(Self::new(), |poly, r| {
            poly.with_term(2 * r, pendulum_term_coefficient(cfg, r), r - 1)
        })
    }

    pub fn terms(&self) -> &[PolyTerm] {
        &self.terms
    }

    pub fn max_power(&self) -> usize {
        self.terms.iter().map(|t| t.power).max().unwrap_or(0)
    }

    fn matrix<S: PtScalar>(
        &self,
        frame: &OscillatorFrame,
        dim: usize,
        element: impl Fn(&PolyTerm, f64) -> S,
    ) -> DenseSym<S> {
        let mut v = DenseSym::zeros(dim);
        let scale = frame.length_scale();
        for term in &self.terms {
            let xp = ladder_power(term.power, dim);
            let factor = term.coefficient * scale.powi(term.power as i32);
            let band = xp.bandwidth();
            for i in 0..dim {
                for j in i.saturating_sub(band)..(i + band + 1).min(dim) {
                    let m = xp.get(i, j);
                    if m != 0.0 {
                        v.add_at(i, j, element(term, factor * m));
                    }
                }
            }
        }
        v
    }
}

/// `(−1)^{r+1} V0 / ((2r)! l^{2r})`.
pub fn pendulum_term_coefficient(cfg: &PendulumConfig, r: usize) -> f64 {
    let factorial: f64 = (1..=2 * r).map(|k| k as f64).product();
    let sign = if r.is_multiple_of(2) { -1.0 } else { 1.0 };
    sign * cfg.v0 / (factorial * cfg.length.powi(2 * r as i32))
}

fn resolvent(frame: &OscillatorFrame, n: usize, dim: usize) -> Vec<f64> {
    let quantum = frame.quantum();
    (0..dim)
        .map(|j| {
            if j == n {
                0.0
            } else {
                1.0 / ((n as f64 - j as f64) * quantum)
            }
        })
        .collect()
}

fn check_inputs(frame: &OscillatorFrame, n: usize, max_power: usize) -> Result<()> {
    // A level-n path of four steps of size p stays below n + 2p.
    let needed = n + 2 * max_power + 2;
    if frame.basis_dim < needed {
        return Err(Error::InvalidArgument(format!(
            "basis dimension {} too small for level {n} with x^{max_power} (need {needed})",
            frame.basis_dim
        )));
    }
    Ok(())
}

fn agree(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-10 * a.abs().max(b.abs()) + 1e-300
}

/// RS energy shift of level `n` at `rs_order ∈ 1..=4` for a polynomial perturbation.
///
/// Sums run over the first `basis_dim` oscillator states and are repeated with
/// ten more states; a mismatch is reported as non-convergence.
pub fn rs_pt(perturbation: &PerturbationPolynomial, n: usize, frame: &OscillatorFrame, rs_order: usize) -> Result<f64> {
    if !(1..=4).contains(&rs_order) {
        return Err(Error::InvalidArgument(format!("RS order {rs_order} not in 1..=4")));
    }
    check_inputs(frame, n, perturbation.max_power())?;
    let eval = |dim: usize| {
        let v = perturbation.matrix(frame, dim, |_, x| x);
        rs_corrections(&v, n, &resolvent(frame, n, dim))[rs_order - 1]
    };
    let base = eval(frame.basis_dim);
    let wider = eval(frame.basis_dim + RECHECK_EXTRA_DIM);
    if !agree(base, wider) {
        return Err(Error::NotConverged {
            iterations: 1,
            last_change: (base - wider).abs(),
            truncation: frame.basis_dim + RECHECK_EXTRA_DIM,
            last: vec![wider],
        });
    }
    Ok(wider)
}

/// Graded energy correction of a single level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PtCorrection {
    pub n: usize,
    pub order: usize,
    pub value: f64,
    /// Share contributed by RS orders 1 through 4.
    pub by_rs_order: [f64; 4],
}

/// Graded corrections `g = 1..=4` of every RS order, evaluated on one basis.
fn graded_table(
    perturbation: &PerturbationPolynomial,
    n: usize,
    frame: &OscillatorFrame,
    dim: usize,
) -> [[f64; 4]; MAX_GRADE + 1] {
    let v = perturbation.matrix(frame, dim, |term, x| Graded::monomial(term.grade, x));
    let per_rs = rs_corrections(&v, n, &resolvent(frame, n, dim));
    let mut out = [[0.0; 4]; MAX_GRADE + 1];
    for (g, row) in out.iter_mut().enumerate() {
        for (k, series) in per_rs.iter().enumerate() {
            row[k] = series.coeff(g);
        }
    }
    out
}

/// Graded correction for an arbitrary graded perturbation.
///
/// Every RS order is a homogeneous multilinear form in `H'`, so evaluating it
/// on matrix elements that are polynomials in the grade parameter and reading
/// off the `ε^g` coefficient yields all cross terms and orderings at once.
pub fn graded_correction_for(
    perturbation: &PerturbationPolynomial,
    order: usize,
    n: usize,
    frame: &OscillatorFrame,
) -> Result<PtCorrection> {
    if !(1..=MAX_GRADE).contains(&order) {
        return Err(Error::InvalidArgument(format!("grade {order} not in 1..={MAX_GRADE}")));
    }
    check_inputs(frame, n, perturbation.max_power())?;
    let base = graded_table(perturbation, n, frame, frame.basis_dim)[order];
    let wider = graded_table(perturbation, n, frame, frame.basis_dim + RECHECK_EXTRA_DIM)[order];
    let total = |row: [f64; 4]| row.iter().sum::<f64>();
    if !agree(total(base), total(wider)) {
        return Err(Error::NotConverged {
            iterations: 1,
            last_change: (total(base) - total(wider)).abs(),
            truncation: frame.basis_dim + RECHECK_EXTRA_DIM,
            last: wider.to_vec(),
        });
    }
    Ok(PtCorrection {
        n,
        order,
        value: total(wider),
        by_rs_order: wider,
    })
}

/// The pendulum's `g`-th oscillator-limit correction from the RS engine.
pub fn graded_correction(order: usize, n: usize, cfg: &PendulumConfig) -> Result<PtCorrection> {
    let frame = OscillatorFrame::for_pendulum(cfg, n)?;
    let perturbation = PerturbationPolynomial::pendulum(cfg, MAX_HALF_POWER);
    graded_correction_for(&perturbation, order, n, &frame)
}

/// Closed-form oscillator-limit energy term of grade `g` at level `n`.
pub fn closed_form(order: usize, n: f64, cfg: &PendulumConfig) -> Result<f64> {
    closed_form_jet(order, Jet::constant(n), cfg).map(|j| j.value())
}

/// Sum of closed-form terms `0..=order`.
pub fn closed_form_energy(order: usize, n: f64, cfg: &PendulumConfig) -> Result<f64> {
    closed_form_energy_jet(order, Jet::constant(n), cfg).map(|j| j.value())
}

pub(crate) fn closed_form_energy_jet(order: usize, n: Jet, cfg: &PendulumConfig) -> Result<Jet> {
    (0..=order).try_fold(Jet::constant(0.0), |acc, g| Ok(acc + closed_form_jet(g, n, cfg)?))
}

/// Polynomials in `n`, coefficients ascending, and their prefactors.
pub(crate) fn closed_form_jet(order: usize, n: Jet, cfg: &PendulumConfig) -> Result<Jet> {
    let hbar = cfg.hbar;
    let inertia = cfg.inertia();
    let v0 = cfg.v0;
    let value = match order {
        0 => (n + 0.5) * (hbar * (v0 / inertia).sqrt()) - v0,
        1 => n.poly(&[1.0, 2.0, 2.0]) * (-hbar * hbar / (32.0 * inertia)),
        2 => n.poly(&[1.0, 3.0, 3.0, 2.0]) * (-hbar.powi(3) / (inertia * inertia) * (inertia / v0).sqrt() / 512.0),
        3 => n.poly(&[3.0, 11.0, 16.0, 10.0, 5.0]) * (-hbar.powi(4) / (v0 * inertia * inertia) / 8192.0),
        4 => {
            n.poly(&[53.0, 225.0, 390.0, 370.0, 165.0, 66.0])
                * (-hbar.powi(5) / (inertia.powf(2.5) * v0.powf(1.5)) / 524_288.0)
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "closed form available for orders 0..=4, got {other}"
            )))
        }
    };
    Ok(value)
}

/// Partial sums of the large-`q` characteristic-value series with `p = 2n + 1`.
///
/// `terms` counts leading terms: 1 gives `−2q`, 2 adds `2p√q`, up to all 6
/// (through `q^{−3/2}`).
pub fn handbook_a_low(n: usize, q: f64, terms: usize) -> Result<f64> {
    if q.is_nan() || q <= 0.0 {
        return Err(Error::InvalidArgument(format!("q must be positive, got {q}")));
    }
    if terms > 6 {
        return Err(Error::InvalidArgument(format!("at most 6 terms, got {terms}")));
    }
    let p = (2 * n + 1) as f64;
    let sq = q.sqrt();
    let series = [
        -2.0 * q,
        2.0 * p * sq,
        -(p * p + 1.0) / 8.0,
        -(p.powi(3) + 3.0 * p) / (128.0 * sq),
        -(5.0 * p.powi(4) + 34.0 * p * p + 9.0) / (4096.0 * q),
        -(33.0 * p.powi(5) + 410.0 * p.powi(3) + 405.0 * p) / (131_072.0 * q * sq),
    ];
    Ok(series[..terms].iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::a_from_energy;
    use approx::assert_relative_eq;

    fn nominal() -> PendulumConfig {
        PendulumConfig::nominal()
    }

    #[test]
    fn first_three_grades_at_ground_state() {
        let cfg = nominal();
        assert_relative_eq!(
            graded_correction(1, 0, &cfg).unwrap().value,
            -0.0625,
            max_relative = 1e-12
        );
        let g2 = -(1.0 / 0.25) * (0.5f64 / 80.0).sqrt() / 512.0;
        assert_relative_eq!(graded_correction(2, 0, &cfg).unwrap().value, g2, max_relative = 1e-12);
        assert_relative_eq!(g2, -6.176e-4, max_relative = 1e-3);
        let g3 = -(1.0 / (80.0 * 0.25)) * 3.0 / 8192.0;
        assert_relative_eq!(graded_correction(3, 0, &cfg).unwrap().value, g3, max_relative = 1e-11);
    }

    #[test]
    fn zeroth_order_closed_form() {
        let cfg = nominal();
        let e0 = 0.5 * (80.0f64 / 0.5).sqrt() - 80.0;
        assert_relative_eq!(closed_form(0, 0.0, &cfg).unwrap(), e0);
        assert_relative_eq!(e0, -73.6754, max_relative = 1e-6);
        let g4 = -(1.0 / (0.5f64.powf(2.5) * 80f64.powf(1.5))) * 53.0 / 524_288.0;
        assert_relative_eq!(closed_form(4, 0.0, &cfg).unwrap(), g4, max_relative = 1e-14);
        assert!(closed_form(5, 0.0, &cfg).is_err());
    }

    #[test]
    fn engine_matches_closed_forms() {
        let cfg = PendulumConfig::new(1.0, 0.7, 1.3, 45.0).unwrap();
        for g in 1..=4 {
            for n in [0usize, 3, 7] {
                let engine = graded_correction(g, n, &cfg).unwrap().value;
                let formula = closed_form(g, n as f64, &cfg).unwrap();
                assert_relative_eq!(engine, formula, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn handbook_low_partial_sums() {
        let q: f64 = 160.0;
        assert_relative_eq!(handbook_a_low(0, q, 2).unwrap(), -320.0 + 2.0 * q.sqrt());
        let full = handbook_a_low(0, q, 6).unwrap();
        assert!((full + 294.954).abs() < 1e-3, "{full}");
        let cfg = nominal();
        let summed = closed_form_energy(4, 0.0, &cfg).unwrap();
        assert_relative_eq!(a_from_energy(summed, &cfg), full, max_relative = 1e-12);
        assert!(handbook_a_low(0, 0.0, 2).is_err());
        assert!(handbook_a_low(0, 1.0, 7).is_err());
        assert_eq!(handbook_a_low(3, 1.0, 0).unwrap(), 0.0);
    }

    #[test]
    fn q_independent_limit() {
        for n in [0usize, 2, 5] {
            let p = (2 * n + 1) as f64;
            let q = 1e12;
            let a = handbook_a_low(n, q, 6).unwrap();
            let residual = a + 2.0 * q - 2.0 * p * q.sqrt();
            assert!((residual + (p * p + 1.0) / 8.0).abs() < 1e-3, "{residual}");
        }
    }

    #[test]
    fn rs_order_and_basis_guards() {
        let frame = OscillatorFrame::new(1.0, 1.0, 1.0, 0).unwrap();
        let small = OscillatorFrame { basis_dim: 5, ..frame };
        assert!(rs_pt(&PerturbationPolynomial::quadratic(0.1), 0, &frame, 0).is_err());
        assert!(rs_pt(&PerturbationPolynomial::quadratic(0.1), 0, &frame, 5).is_err());
        assert!(rs_pt(&PerturbationPolynomial::quadratic(0.1), 2, &small, 2).is_err());
        assert!(frame.with_basis_dim(10).is_err());
        assert!(OscillatorFrame::new(1.0, 0.0, 1.0, 0).is_err());
    }

    #[test]
    fn pendulum_coefficients() {
        let cfg = nominal();
        assert_relative_eq!(pendulum_term_coefficient(&cfg, 2), -80.0 / 24.0);
        assert_relative_eq!(pendulum_term_coefficient(&cfg, 3), 80.0 / 720.0);
        assert_relative_eq!(pendulum_term_coefficient(&cfg, 4), -80.0 / 40320.0);
    }
}
