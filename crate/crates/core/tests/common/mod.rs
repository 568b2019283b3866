//! Independent numerical oracles shared by the integration tests.

#![allow(dead_code, clippy::excessive_precision)]

use std::f64::consts::PI;

use pendulum_core::PendulumConfig;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = WGK[7] * f(c);
    let mut g = WG[3] * f(c);
    for i in 0..7 {
        let pair = f(c - h * XGK[i]) + f(c + h * XGK[i]);
        k += WGK[i] * pair;
        if i % 2 == 1 {
            g += WG[i / 2] * pair;
        }
    }
    (k * h, (k - g).abs() * h)
}

/// Adaptive 15-point Gauss–Kronrod quadrature to relative tolerance `tol`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let mut stack = vec![(a, b, 0u32)];
    let mut total = 0.0;
    let (whole, _) = kronrod(&f, a, b);
    let scale = whole.abs().max(f64::MIN_POSITIVE);
    while let Some((lo, hi, depth)) = stack.pop() {
        let (v, err) = kronrod(&f, lo, hi);
        if err <= tol * scale * (hi - lo) / (b - a) || depth > 50 {
            total += v;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    total
}

/// Classical period by direct quadrature of `dt = dθ / θ̇`.
///
/// Libration uses `θ = θ₀ sin u`, which turns the inverse-square-root
/// endpoint singularity into a smooth integrand.
pub fn period_by_quadrature(energy: f64, cfg: &PendulumConfig) -> f64 {
    let inertia = cfg.inertia();
    let v0 = cfg.v0;
    if energy < v0 {
        let theta0 = (-energy / v0).acos();
        let f = |u: f64| {
            // E + V0 cos θ = 2 V0 sin((θ₀+θ)/2) sin((θ₀−θ)/2), with
            // θ₀ − θ = 2 θ₀ sin²(π/4 − u/2), avoids cancellation near θ₀.
            let theta = theta0 * u.sin();
            let gap = 2.0 * theta0 * (0.25 * PI - 0.5 * u).sin().powi(2);
            let kinetic = 2.0 * v0 * (0.5 * (theta0 + theta)).sin() * (0.5 * gap).sin();
            theta0 * u.cos() / ((2.0 / inertia) * kinetic).sqrt()
        };
        4.0 * integrate(f, 0.0, 0.5 * PI, 1e-13)
    } else {
        let speed = |theta: f64| ((2.0 / inertia) * (energy + v0 * theta.cos())).sqrt();
        2.0 * integrate(|t| 1.0 / speed(t), 0.0, PI, 1e-13)
    }
}

/// All eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations.
#[allow(clippy::needless_range_loop)]
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Least-squares slope of `y` against `x`.
pub fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// Forward differences of order `k`.
pub fn forward_difference(values: &[f64], k: usize) -> Vec<f64> {
    let mut v = values.to_vec();
    for _ in 0..k {
        v = v.windows(2).map(|w| w[1] - w[0]).collect();
    }
    v
}
