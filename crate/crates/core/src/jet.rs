//! Truncated Taylor arithmetic to third order.
//!
//! The perturbative energy formulas are rational functions of the quantum
//! number; evaluating them on a [`Jet`] seeded with `n + ε` gives exact first,
//! second and third derivatives without finite differencing.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// `c[0] + c[1] ε + c[2] ε² + c[3] ε³` modulo `ε⁴`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    c: [f64; 4],
}

impl Jet {
    pub fn constant(value: f64) -> Self {
        Self {
            c: [value, 0.0, 0.0, 0.0],
        }
    }

    /// The independent variable evaluated at `x`.
    pub fn variable(x: f64) -> Self {
        Self { c: [x, 1.0, 0.0, 0.0] }
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn d1(&self) -> f64 {
        self.c[1]
    }

    pub fn d2(&self) -> f64 {
        2.0 * self.c[2]
    }

    pub fn d3(&self) -> f64 {
        6.0 * self.c[3]
    }

    pub fn powi(self, n: u32) -> Self {
        let mut out = Jet::constant(1.0);
        for _ in 0..n {
            out = out * self;
        }
        out
    }

    pub fn recip(self) -> Self {
        let [a0, a1, a2, a3] = self.c;
        let b0 = 1.0 / a0;
        let b1 = -a1 * b0 / a0;
        let b2 = -(a1 * b1 + a2 * b0) / a0;
        let b3 = -(a1 * b2 + a2 * b1 + a3 * b0) / a0;
        Self { c: [b0, b1, b2, b3] }
    }

    /// Evaluate a polynomial with coefficients in ascending powers.
    pub fn poly(self, coeffs: &[f64]) -> Self {
        coeffs.iter().rev().fold(Jet::constant(0.0), |acc, &c| acc * self + c)
    }
}

impl From<f64> for Jet {
    fn from(value: f64) -> Self {
        Jet::constant(value)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(rhs.c) {
            *a += b;
        }
        Jet { c }
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.c[0] += rhs;
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, rhs: f64) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self * -1.0
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let a = self.c;
        let b = rhs.c;
        let mut c = [0.0; 4];
        for i in 0..4 {
            for j in 0..4 - i {
                c[i + j] += a[i] * b[j];
            }
        }
        Jet { c }
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        Jet {
            c: self.c.map(|v| v * rhs),
        }
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Jet) -> Jet {
        self * rhs.recip()
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, rhs: f64) -> Jet {
        self * (1.0 / rhs)
    }
}
