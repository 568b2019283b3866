//! Nondegenerate Rayleigh–Schrödinger energy corrections through fourth order.
//!
//! The formulas are written once over a generic scalar so that the same code
//! evaluates a plain numeric perturbation and a perturbation whose matrix
//! elements are polynomials in a bookkeeping parameter (see [`Graded`]).

use std::ops::{Add, Mul, Sub};

/// Scalars the RS sums can be evaluated over.
pub trait PtScalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
}

impl PtScalar for f64 {
    fn zero() -> Self {
        0.0
    }
}

/// Polynomial in the grade parameter `ε`, truncated above `ε⁴`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Graded(pub [f64; 5]);

impl Graded {
    pub fn monomial(grade: usize, value: f64) -> Self {
        let mut c = [0.0; 5];
        if grade < 5 {
            c[grade] = value;
        }
        Graded(c)
    }

    pub fn coeff(&self, grade: usize) -> f64 {
        self.0[grade]
    }
}

impl Add for Graded {
    type Output = Graded;
    fn add(self, rhs: Graded) -> Graded {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(rhs.0) {
            *a += b;
        }
        Graded(c)
    }
}

impl Sub for Graded {
    type Output = Graded;
    fn sub(self, rhs: Graded) -> Graded {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(rhs.0) {
            *a -= b;
        }
        Graded(c)
    }
}

impl Mul for Graded {
    type Output = Graded;
    fn mul(self, rhs: Graded) -> Graded {
        let mut c = [0.0; 5];
        for i in 0..5 {
            if self.0[i] == 0.0 {
                continue;
            }
            for j in 0..5 - i {
                c[i + j] += self.0[i] * rhs.0[j];
            }
        }
        Graded(c)
    }
}

impl Mul<f64> for Graded {
    type Output = Graded;
    fn mul(self, rhs: f64) -> Graded {
        Graded(self.0.map(|v| v * rhs))
    }
}

impl PtScalar for Graded {
    fn zero() -> Self {
        Graded::default()
    }
}

/// Dense symmetric perturbation matrix `V[i][j] = ⟨i|H'|j⟩`.
#[derive(Debug, Clone)]
pub struct DenseSym<S> {
    dim: usize,
    data: Vec<S>,
}

impl<S: PtScalar> DenseSym<S> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![S::zero(); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.data[i * self.dim + j]
    }

    pub fn add_at(&mut self, i: usize, j: usize, value: S) {
        let slot = &mut self.data[i * self.dim + j];
        *slot = *slot + value;
    }

    fn times(&self, v: &[S]) -> Vec<S> {
        (0..self.dim)
            .map(|i| {
                let row = &self.data[i * self.dim..(i + 1) * self.dim];
                row.iter().zip(v).fold(S::zero(), |acc, (&m, &x)| acc + m * x)
            })
            .collect()
    }
}

fn dot<S: PtScalar>(x: &[S], y: &[S]) -> S {
    x.iter().zip(y).fold(S::zero(), |acc, (&a, &b)| acc + a * b)
}

/// `E⁽¹⁾ … E⁽⁴⁾` for level `n`.
///
/// `resolvent[j] = 1/(E_n⁽⁰⁾ − E_j⁽⁰⁾)` for `j ≠ n` and zero at `j = n`.
///
/// With `u_j = R_j V_jn` and `w = V u` the sums collapse to
///
/// ```text
/// E2 = Σ V_nj u_j
/// E3 = Σ u_j w_j − V_nn Σ u_j²
/// E4 = Σ R_l w_l² − 2 V_nn Σ R_l u_l w_l + V_nn² Σ R_j u_j² − E2 Σ u_j²
/// ```
pub fn rs_corrections<S: PtScalar>(v: &DenseSym<S>, n: usize, resolvent: &[f64]) -> [S; 4] {
    let dim = v.dim();
    let vnn = v.get(n, n);
    let u: Vec<S> = (0..dim).map(|j| v.get(j, n) * resolvent[j]).collect();
    let w = v.times(&u);

    let e1 = vnn;
    let e2 = (0..dim).fold(S::zero(), |acc, j| acc + v.get(n, j) * u[j]);
    let uu = dot(&u, &u);
    let e3 = dot(&u, &w) - vnn * uu;

    let mut t1 = S::zero();
    let mut t2 = S::zero();
    let mut t4 = S::zero();
    for l in 0..dim {
        let r = resolvent[l];
        if r == 0.0 {
            continue;
        }
        t1 = t1 + w[l] * w[l] * r;
        t2 = t2 + u[l] * w[l] * r;
        t4 = t4 + u[l] * u[l] * r;
    }
    let e4 = t1 - vnn * t2 * 2.0 + vnn * vnn * t4 - e2 * uu;
    [e1, e2, e3, e4]
}
