//! Independent oracles shared by the integration tests and the acceptance
//! harness. Nothing here calls the library's numerical routines.
#![allow(dead_code)]

use num_complex::Complex64;
use sparse_rc::linalg::DenseMatrix;
use sparse_rc::metrics::McProtocol;
use sparse_rc::reservoir::{Reservoir, ReservoirConfig};
use sparse_rc::rng::RngStream;
use sparse_rc::sparse::SparseMatrix;

/// `y = A x` by explicit loops over a dense copy.
pub fn dense_matvec(a: &DenseMatrix, x: &[f64]) -> Vec<f64> {
    (0..a.rows())
        .map(|r| (0..a.cols()).map(|c| a[(r, c)] * x[c]).sum())
        .collect()
}

/// Largest eigenvalue modulus of a 2x2 matrix from the quadratic formula.
pub fn quadratic_radius(a: &DenseMatrix) -> f64 {
    let tr = a[(0, 0)] + a[(1, 1)];
    let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
    let disc = Complex64::new(tr * tr / 4.0 - det, 0.0).sqrt();
    let half = Complex64::new(tr / 2.0, 0.0);
    (half + disc).norm().max((half - disc).norm())
}

/// Largest eigenvalue modulus of a 3x3 matrix by Cardano's formula.
pub fn cubic_radius(a: &DenseMatrix) -> f64 {
    let tr = a[(0, 0)] + a[(1, 1)] + a[(2, 2)];
    let minor = |i: usize, j: usize| a[(i, i)] * a[(j, j)] - a[(i, j)] * a[(j, i)];
    let c2 = minor(0, 1) + minor(0, 2) + minor(1, 2);
    let det = a[(0, 0)] * (a[(1, 1)] * a[(2, 2)] - a[(1, 2)] * a[(2, 1)])
        - a[(0, 1)] * (a[(1, 0)] * a[(2, 2)] - a[(1, 2)] * a[(2, 0)])
        + a[(0, 2)] * (a[(1, 0)] * a[(2, 1)] - a[(1, 1)] * a[(2, 0)]);
    // λ³ - tr λ² + c2 λ - det = 0, λ = t + tr/3.
    let p = c2 - tr * tr / 3.0;
    let q = -2.0 * tr.powi(3) / 27.0 + tr * c2 / 3.0 - det;
    let disc = Complex64::new(q * q / 4.0 + p.powi(3) / 27.0, 0.0).sqrt();
    let mut c = (Complex64::new(-q / 2.0, 0.0) + disc).powf(1.0 / 3.0);
    if c.norm() < 1e-14 {
        c = (Complex64::new(-q / 2.0, 0.0) - disc).powf(1.0 / 3.0);
    }
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    (0..3)
        .map(|k| {
            let ck = c * omega.powu(k);
            let t = if ck.norm() < 1e-14 { Complex64::new(0.0, 0.0) } else { ck - p / (3.0 * ck) };
            (t + tr / 3.0).norm()
        })
        .fold(0.0, f64::max)
}

/// Dense `n × n` matrix with iid entries in `[-1, 1)`.
pub fn random_dense(n: usize, stream: &mut RngStream) -> DenseMatrix {
    DenseMatrix::from_fn(n, n, |_, _| stream.uniform(-1.0, 1.0).unwrap())
}

/// Shift register of depth `k`: unit 0 receives the input scaled by
/// `input_scale`, unit j+1 copies unit j. Unit j then holds x(t − j).
pub fn delay_line(k: usize, input_scale: f64) -> Reservoir {
    let n = k + 1;
    let config = ReservoirConfig {
        n_units: n,
        n_inputs: 1,
        chi_r: 1,
        chi_i: 1,
        spectral_radius: 0.0,
        input_scaling: input_scale,
        seed: 0,
    };
    let u = SparseMatrix::from_triplets(n, 1, vec![(0, 0, input_scale)]).unwrap();
    let w = SparseMatrix::from_triplets(n, n, (0..k).map(|j| (j + 1, j, 1.0)).collect()).unwrap();
    Reservoir::from_parts(config, u, w).unwrap()
}

pub fn delay_line_protocol() -> McProtocol {
    McProtocol {
        washout: 100,
        train_len: 2000,
        n_delays: 20,
        ..McProtocol::default()
    }
}

/// Uniform series in `[lo, hi)` as a `len × 1` matrix.
pub fn uniform_series(len: usize, lo: f64, hi: f64, stream: &mut RngStream) -> DenseMatrix {
    DenseMatrix::column_vector((0..len).map(|_| stream.uniform(lo, hi).unwrap()).collect())
}

/// Sample covariance (n − 1 denominator) by explicit double loops.
pub fn covariance(x: &DenseMatrix) -> Vec<Vec<f64>> {
    let (t, n) = x.shape();
    let mean: Vec<f64> = (0..n).map(|c| (0..t).map(|r| x[(r, c)]).sum::<f64>() / t as f64).collect();
    let mut cov = vec![vec![0.0; n]; n];
    for (i, row) in cov.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = (0..t).map(|r| (x[(r, i)] - mean[i]) * (x[(r, j)] - mean[j])).sum::<f64>() / (t - 1) as f64;
        }
    }
    cov
}

/// Participation ratio from traces: tr(C)² / tr(C²), with tr(C²) = ‖C‖_F²
/// for symmetric C. Needs no eigendecomposition.
pub fn participation_by_traces(cov: &[Vec<f64>]) -> f64 {
    let tr: f64 = (0..cov.len()).map(|i| cov[i][i]).sum();
    let fro2: f64 = cov.iter().flatten().map(|v| v * v).sum();
    tr * tr / fro2
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    ev
}

/// Standard normal pairs by the Box–Muller transform.
pub fn normals(count: usize, stream: &mut RngStream) -> Vec<f64> {
    let mut out = Vec::with_capacity(count + 1);
    while out.len() < count {
        let u1 = 1.0 - stream.next_f64();
        let u2 = stream.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let a = 2.0 * std::f64::consts::PI * u2;
        out.push(r * a.cos());
        out.push(r * a.sin());
    }
    out.truncate(count);
    out
}
