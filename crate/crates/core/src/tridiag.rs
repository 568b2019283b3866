//! Sturm-sequence bisection for symmetric tridiagonal matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const BRACKET_ULPS: f64 = 4.0;

/// Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TridiagSystem {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagSystem {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidArgument(format!(
                "off-diagonal length {} does not match dimension {}",
                offdiag.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite matrix entry".into()));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        sturm_count(&self.diag, &self.offdiag, x)
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }
}

/// Sturm count via the LDLᵀ pivot recurrence: the number of negative pivots of
/// `T − xI` equals the number of eigenvalues below `x`.
pub fn sturm_count(diag: &[f64], offdiag: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut pivot = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        let coupling = if i == 0 { 0.0 } else { offdiag[i - 1] * offdiag[i - 1] };
        pivot = if i == 0 {
            d - x
        } else {
            let safe = if pivot == 0.0 {
                f64::EPSILON * (offdiag[i - 1].abs() + f64::MIN_POSITIVE)
            } else {
                pivot
            };
            (d - x) - coupling / safe
        };
        if pivot < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` smallest eigenvalues in ascending order.
///
/// Each eigenvalue is bisected until its bracket is a few ulps of
/// `max(1, |λ|)` wide (well inside `1e-12 · max(1, |λ|)`) or cannot be split
/// further in floating point.
pub fn eigen_tridiag(sys: &TridiagSystem, k: usize) -> Result<Vec<f64>> {
    if k > sys.dim() {
        return Err(Error::InvalidArgument(format!(
            "requested {k} eigenvalues of a {}-dimensional matrix",
            sys.dim()
        )));
    }
    let (glo, ghi) = sys.gershgorin();
    let pad = 1e-12 * glo.abs().max(ghi.abs()).max(1.0);
    let (glo, ghi) = (glo - pad, ghi + pad);

    let mut out = Vec::with_capacity(k);
    let mut lower_start = glo;
    for index in 0..k {
        // Invariant: count_below(lo) <= index < count_below(hi).
        let mut lo = lower_start;
        let mut hi = ghi;
        loop {
            let width = hi - lo;
            let mid = 0.5 * (lo + hi);
            if width <= BRACKET_ULPS * f64::EPSILON * mid.abs().max(1.0) || mid <= lo || mid >= hi {
                break;
            }
            if sys.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let value = 0.5 * (lo + hi);
        out.push(value);
        lower_start = lo;
    }
    Ok(out)
}
