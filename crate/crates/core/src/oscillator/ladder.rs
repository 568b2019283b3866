//! Harmonic-oscillator matrix elements of powers of `x`.

use crate::error::{Error, Result};

/// Symmetric band matrix: `diags[d][i] = M[i][i + d]` for `d = 0..=band`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandMatrix {
    dim: usize,
    diags: Vec<Vec<f64>>,
}

impl BandMatrix {
    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            diags: vec![vec![1.0; dim]],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bandwidth(&self) -> usize {
        self.diags.len() - 1
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        let d = hi - lo;
        if hi >= self.dim || d > self.bandwidth() {
            return 0.0;
        }
        self.diags[d][lo]
    }

    /// Dimensionless position operator `A + A†`.
    fn position(dim: usize) -> Self {
        let upper = (0..dim)
            .map(|i| if i + 1 < dim { ((i + 1) as f64).sqrt() } else { 0.0 })
            .collect();
        Self {
            dim,
            diags: vec![vec![0.0; dim], upper],
        }
    }

    /// `self · X` for the position operator `X`, widening the band by one.
    fn times_position(&self) -> Self {
        let x = Self::position(self.dim);
        let band = self.bandwidth() + 1;
        let mut diags = vec![vec![0.0; self.dim]; band + 1];
        for (d, diag) in diags.iter_mut().enumerate() {
            for (i, slot) in diag.iter_mut().enumerate() {
                let j = i + d;
                if j >= self.dim {
                    break;
                }
                // (M X)[i][j] = M[i][j-1] X[j-1][j] + M[i][j+1] X[j+1][j]
                let mut acc = 0.0;
                if j >= 1 {
                    acc += self.get(i, j - 1) * x.get(j - 1, j);
                }
                if j + 1 < self.dim {
                    acc += self.get(i, j + 1) * x.get(j + 1, j);
                }
                *slot = acc;
            }
        }
        Self { dim: self.dim, diags }
    }

    /// Leading `dim × dim` block.
    fn truncate(mut self, dim: usize) -> Self {
        for diag in &mut self.diags {
            diag.truncate(dim);
        }
        self.dim = dim;
        self
    }

    fn scale(mut self, factor: f64) -> Self {
        for v in self.diags.iter_mut().flatten() {
            *v *= factor;
        }
        self
    }
}

/// `⟨i|(A + A†)^p|j⟩` for `i, j < dim`, exact within the block.
///
/// The product is formed in a basis `p` states larger than requested so that
/// truncation never leaks into the returned block. Every term in the products
/// is non-negative, so no cancellation occurs.
pub fn ladder_power(p: usize, dim: usize) -> BandMatrix {
    let work = dim + p;
    let mut m = BandMatrix::identity(work);
    for _ in 0..p {
        m = m.times_position();
    }
    m.truncate(dim)
}

/// `⟨i|x^p|j⟩` with `x = √(ħ/2μω) (A + A†)`.
pub fn x_power_matrix(p: usize, dim: usize, length_scale: f64) -> Result<BandMatrix> {
    if dim < p + 2 {
        return Err(Error::InvalidArgument(format!(
            "basis dimension {dim} too small for x^{p} (need at least {})",
            p + 2
        )));
    }
    Ok(ladder_power(p, dim).scale(length_scale.powi(p as i32)))
}
