//! Dense kernels: a row-major matrix type, thin SVD, minimum-norm least
//! squares and covariance spectra.
//!
//! The SVD is one-sided (Hestenes) Jacobi. Tall inputs are first reduced with
//! a Householder QR so the Jacobi sweeps run on the small square factor; the
//! largest problem in a sweep is a few thousand rows by ~100 columns.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Default relative cutoff for singular values in [`lstsq_min_norm`].
pub const DEFAULT_RCOND: f64 = 1e-10;

const JACOBI_TOL: f64 = 1e-15;
const MAX_SWEEPS: usize = 80;

/// Row-major dense matrix of `f64`.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dimension(
                "DenseMatrix::new",
                rows * cols,
                data.len(),
            ));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::dimension("DenseMatrix::from_rows", cols, r.len()));
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Single-column matrix.
    pub fn column_vector(values: Vec<f64>) -> Self {
        Self {
            rows: values.len(),
            cols: 1,
            data: values,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<f64> {
        (0..self.rows).map(|r| self.data[r * self.cols + c]).collect()
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.cols.max(1)).take(self.rows)
    }

    /// Copy of rows `start..end`.
    pub fn row_range(&self, start: usize, end: usize) -> DenseMatrix {
        DenseMatrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::dimension(
                "matmul",
                format!("lhs cols == rhs rows ({})", self.cols),
                rhs.rows,
            ));
        }
        let mut out = DenseMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `selfᵀ · rhs` without materializing the transpose.
    pub fn transpose_matmul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::dimension(
                "transpose_matmul",
                format!("equal row counts ({})", self.rows),
                rhs.rows,
            ));
        }
        let mut out = DenseMatrix::zeros(self.cols, rhs.cols);
        for t in 0..self.rows {
            let b = rhs.row(t);
            for (i, &a) in self.row(t).iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &bv) in out_row.iter_mut().zip(b) {
                    *o += a * bv;
                }
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, c: f64) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn sub(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::dimension(
                "sub",
                format!("{:?}", self.shape()),
                format!("{:?}", rhs.shape()),
            ));
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Appends a column filled with `value`.
    pub fn with_constant_column(&self, value: f64) -> DenseMatrix {
        let cols = self.cols + 1;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in self.iter_rows_exact() {
            data.extend_from_slice(r);
            data.push(value);
        }
        DenseMatrix {
            rows: self.rows,
            cols,
            data,
        }
    }

    /// Subtracts each column's mean.
    pub fn center_columns(&self) -> DenseMatrix {
        let mut means = vec![0.0; self.cols];
        for r in self.iter_rows_exact() {
            for (m, v) in means.iter_mut().zip(r) {
                *m += v;
            }
        }
        let n = self.rows as f64;
        means.iter_mut().for_each(|m| *m /= n);
        let mut out = self.clone();
        for r in 0..self.rows {
            for (v, m) in out.row_mut(r).iter_mut().zip(&means) {
                *v -= m;
            }
        }
        out
    }

    fn iter_rows_exact(&self) -> impl Iterator<Item = &[f64]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    fn to_columns(&self) -> Vec<Vec<f64>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    fn from_columns(rows: usize, cols: &[Vec<f64>]) -> DenseMatrix {
        DenseMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i])
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows.min(8) {
            writeln!(f, "  {:?}", &self.row(r)[..self.cols.min(8)])?;
        }
        write!(f, "]")
    }
}

/// Thin SVD `A = U · diag(s) · Vᵀ` with `s` descending.
#[derive(Clone, Debug)]
pub struct SvdResult {
    pub u: DenseMatrix,
    pub s: Vec<f64>,
    pub vt: DenseMatrix,
}

impl SvdResult {
    pub fn reconstruct(&self) -> DenseMatrix {
        let mut us = self.u.clone();
        for r in 0..us.rows() {
            for (v, s) in us.row_mut(r).iter_mut().zip(&self.s) {
                *v *= s;
            }
        }
        us.matmul(&self.vt).expect("SVD factors have matching shapes")
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn check_input(a: &DenseMatrix, op: &'static str) -> Result<()> {
    if a.rows == 0 || a.cols == 0 {
        return Err(Error::dimension(op, "non-empty matrix", "0-sized matrix"));
    }
    if !a.is_finite() {
        return Err(Error::Numeric(format!(
            "{op}: {}x{} input has non-finite entries",
            a.rows, a.cols
        )));
    }
    Ok(())
}

/// Thin singular value decomposition.
pub fn svd(a: &DenseMatrix) -> Result<SvdResult> {
    check_input(a, "svd")?;
    if a.rows < a.cols {
        let t = svd(&a.transpose())?;
        return Ok(SvdResult {
            u: t.vt.transpose(),
            s: t.s,
            vt: t.u.transpose(),
        });
    }
    let (m, n) = a.shape();
    let (q, r) = if m > n {
        let (q, r) = householder_qr(a.to_columns(), m);
        (Some(q), r)
    } else {
        (None, a.to_columns())
    };
    let (work_cols, v_cols) = jacobi_columns(r, n, true).map_err(|sweeps| {
        Error::Numeric(format!(
            "one-sided Jacobi SVD of a {m}x{n} matrix did not converge in {sweeps} sweeps"
        ))
    })?;
    let v_cols = v_cols.expect("requested V");

    let mut order: Vec<usize> = (0..n).collect();
    let sigma: Vec<f64> = work_cols.iter().map(|c| norm(c)).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));

    let s: Vec<f64> = order.iter().map(|&i| sigma[i]).collect();
    let s_max = s[0];
    let tiny = s_max * f64::EPSILON * n as f64;
    // Left vectors of the square factor; rank-deficient directions are
    // completed to an orthonormal set below.
    let mut u_small: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut missing = Vec::new();
    for (k, &i) in order.iter().enumerate() {
        if s[k] > tiny && s[k] > 0.0 {
            u_small.push(work_cols[i].iter().map(|x| x / s[k]).collect());
        } else {
            u_small.push(vec![0.0; n]);
            missing.push(k);
        }
    }
    complete_orthonormal(&mut u_small, &missing, n);

    let u_cols: Vec<Vec<f64>> = match &q {
        Some(q) => u_small
            .iter()
            .map(|uc| {
                let mut out = vec![0.0; m];
                for (qc, &w) in q.iter().zip(uc) {
                    if w != 0.0 {
                        out.iter_mut().zip(qc).for_each(|(o, qv)| *o += w * qv);
                    }
                }
                out
            })
            .collect(),
        None => u_small,
    };
    let vt = DenseMatrix::from_fn(n, n, |k, j| v_cols[order[k]][j]);
    Ok(SvdResult {
        u: DenseMatrix::from_columns(m, &u_cols),
        s,
        vt,
    })
}

/// Singular values only, descending.
pub fn singular_values(a: &DenseMatrix) -> Result<Vec<f64>> {
    check_input(a, "singular_values")?;
    let a = if a.rows < a.cols { a.transpose() } else { a.clone() };
    let (m, n) = a.shape();
    let r = if m > n {
        householder_qr(a.to_columns(), m).1
    } else {
        a.to_columns()
    };
    let (cols, _) = jacobi_columns(r, n, false).map_err(|sweeps| {
        Error::Numeric(format!(
            "one-sided Jacobi SVD of a {m}x{n} matrix did not converge in {sweeps} sweeps"
        ))
    })?;
    let mut s: Vec<f64> = cols.iter().map(|c| norm(c)).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

/// Householder QR of an `m×n` matrix given by columns (`m ≥ n`).
/// Returns thin `Q` (n columns of length m) and `R` (n columns of length n).
fn householder_qr(mut cols: Vec<Vec<f64>>, m: usize) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let n = cols.len();
    let mut reflectors: Vec<Vec<f64>> = Vec::with_capacity(n);
    for k in 0..n {
        let x = &cols[k][k..];
        let alpha = norm(x);
        let mut v = x.to_vec();
        if alpha == 0.0 {
            reflectors.push(v.iter().map(|_| 0.0).collect());
            continue;
        }
        let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
        v[0] += sign * alpha;
        let vn = norm(&v);
        v.iter_mut().for_each(|e| *e /= vn);
        for col in cols.iter_mut().skip(k) {
            let seg = &mut col[k..];
            let p = 2.0 * dot(&v, seg);
            seg.iter_mut().zip(&v).for_each(|(s, vi)| *s -= p * vi);
        }
        reflectors.push(v);
    }
    let r: Vec<Vec<f64>> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| (0..n).map(|i| if i <= j { c[i] } else { 0.0 }).collect())
        .collect();
    let mut q: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; m];
            e[j] = 1.0;
            e
        })
        .collect();
    for (k, v) in reflectors.iter().enumerate().rev() {
        for col in q.iter_mut() {
            let seg = &mut col[k..];
            let p = 2.0 * dot(v, seg);
            if p != 0.0 {
                seg.iter_mut().zip(v).for_each(|(s, vi)| *s -= p * vi);
            }
        }
    }
    (q, r)
}

/// One-sided Jacobi on the columns of a square `n×n` matrix. On return the
/// columns are mutually orthogonal; their norms are the singular values.
/// `Err(sweeps)` when the rotation sweeps fail to settle.
#[allow(clippy::type_complexity)]
fn jacobi_columns(
    mut cols: Vec<Vec<f64>>,
    n: usize,
    want_v: bool,
) -> std::result::Result<(Vec<Vec<f64>>, Option<Vec<Vec<f64>>>), usize> {
    let mut v: Option<Vec<Vec<f64>>> = want_v.then(|| {
        (0..n)
            .map(|j| {
                let mut e = vec![0.0; n];
                e[j] = 1.0;
                e
            })
            .collect()
    });
    let mut norms: Vec<f64> = cols.iter().map(|c| dot(c, c)).collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let alpha = norms[i];
                let beta = norms[j];
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma = dot(&cols[i], &cols[j]);
                if gamma.abs() <= JACOBI_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut cols, i, j, c, s);
                if let Some(v) = v.as_mut() {
                    rotate(v, i, j, c, s);
                }
                norms[i] = dot(&cols[i], &cols[i]);
                norms[j] = dot(&cols[j], &cols[j]);
            }
        }
        if !rotated {
            return Ok((cols, v));
        }
    }
    Err(MAX_SWEEPS)
}

fn rotate(cols: &mut [Vec<f64>], i: usize, j: usize, c: f64, s: f64) {
    let (head, tail) = cols.split_at_mut(j);
    let (a, b) = (&mut head[i], &mut tail[0]);
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let (xi, yj) = (*x, *y);
        *x = c * xi - s * yj;
        *y = s * xi + c * yj;
    }
}

/// Fills `cols[k]` for `k` in `missing` with unit vectors orthogonal to all
/// other columns (Gram-Schmidt over the standard basis, applied twice).
fn complete_orthonormal(cols: &mut [Vec<f64>], missing: &[usize], dim: usize) {
    let mut candidate = 0;
    for &k in missing {
        while candidate < dim {
            let mut e = vec![0.0; dim];
            e[candidate] = 1.0;
            candidate += 1;
            for _ in 0..2 {
                for (idx, c) in cols.iter().enumerate() {
                    if idx == k {
                        continue;
                    }
                    let p = dot(c, &e);
                    e.iter_mut().zip(c).for_each(|(x, ci)| *x -= p * ci);
                }
            }
            let en = norm(&e);
            if en > 1e-8 {
                cols[k] = e.into_iter().map(|x| x / en).collect();
                break;
            }
        }
    }
}

/// Minimum-norm solution of `min ‖A·X − B‖_F` through the pseudo-inverse.
/// Singular values below `rcond · s_max` are treated as zero.
pub fn lstsq_min_norm(a: &DenseMatrix, b: &DenseMatrix, rcond: f64) -> Result<DenseMatrix> {
    if a.rows != b.rows {
        return Err(Error::dimension(
            "lstsq_min_norm",
            format!("b with {} rows", a.rows),
            format!("{} rows", b.rows),
        ));
    }
    if !(rcond >= 0.0) {
        return Err(Error::Config(format!("rcond must be non-negative, got {rcond}")));
    }
    let svd = svd(a)?;
    let cutoff = rcond * svd.s[0];
    // X = V · diag(1/s) · Uᵀ · B
    let mut utb = svd.u.transpose_matmul(b)?;
    for (k, &s) in svd.s.iter().enumerate() {
        let inv = if s > cutoff && s > 0.0 { 1.0 / s } else { 0.0 };
        utb.row_mut(k).iter_mut().for_each(|v| *v *= inv);
    }
    svd.vt.transpose_matmul(&utb)
}

/// Eigenvalues of the sample covariance of the rows of `states`
/// (denominator `T − 1`), descending.
pub fn covariance_eigenvalues(states: &DenseMatrix) -> Result<Vec<f64>> {
    if states.rows < 2 {
        return Err(Error::InsufficientSamples {
            needed: 2,
            got: states.rows,
        });
    }
    let centered = states.center_columns();
    let denom = (states.rows - 1) as f64;
    let mut s = singular_values(&centered)?;
    // Wide inputs (T < N) give fewer singular values than columns.
    s.resize(states.cols, 0.0);
    Ok(s.into_iter().map(|v| v * v / denom).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_stream;

    fn random(rows: usize, cols: usize, label: &str) -> DenseMatrix {
        let mut s = derive_stream(1234, label);
        DenseMatrix::from_fn(rows, cols, |_, _| s.uniform(-1.0, 1.0).unwrap())
    }

    fn orthonormality_error(m: &DenseMatrix) -> f64 {
        let g = m.transpose_matmul(m).unwrap();
        g.sub(&DenseMatrix::identity(m.cols())).unwrap().max_abs()
    }

    fn assert_svd_invariants(a: &DenseMatrix) {
        let r = svd(a).unwrap();
        assert!(r.s.windows(2).all(|w| w[0] >= w[1]));
        assert!(r.s.iter().all(|&v| v >= 0.0));
        let rec = r.reconstruct().sub(a).unwrap().frobenius_norm();
        assert!(rec <= 1e-10 * a.frobenius_norm(), "reconstruction {rec}");
        assert!(orthonormality_error(&r.u) <= 1e-10);
        assert!(orthonormality_error(&r.vt.transpose()) <= 1e-10);
    }

    #[test]
    fn svd_identity_and_diagonal() {
        assert_eq!(svd(&DenseMatrix::identity(3)).unwrap().s, vec![1.0, 1.0, 1.0]);
        let d = DenseMatrix::from_diagonal(&[1.0, 3.0, 2.0]);
        let s = svd(&d).unwrap().s;
        assert_eq!(s, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn svd_random_shapes() {
        assert_svd_invariants(&random(10, 4, "10x4"));
        assert_svd_invariants(&random(4, 10, "4x10"));
        assert_svd_invariants(&random(7, 7, "7x7"));
        assert_svd_invariants(&random(300, 30, "300x30"));
    }

    #[test]
    fn svd_rank_deficient_keeps_orthonormal_u() {
        let mut a = random(12, 4, "rank");
        for r in 0..12 {
            a[(r, 3)] = a[(r, 0)] * 2.0;
        }
        let res = svd(&a).unwrap();
        assert!(res.s[3] < 1e-12);
        assert!(orthonormality_error(&res.u) <= 1e-10);
        assert!(res.reconstruct().sub(&a).unwrap().frobenius_norm() < 1e-10);
    }

    #[test]
    fn svd_rejects_bad_input() {
        let bad = DenseMatrix::new(1, 2, vec![1.0, f64::NAN]).unwrap();
        assert!(matches!(svd(&bad), Err(Error::Numeric(_))));
        assert!(svd(&DenseMatrix::zeros(0, 3)).is_err());
    }

    #[test]
    fn svd_of_zero_matrix() {
        let r = svd(&DenseMatrix::zeros(4, 2)).unwrap();
        assert_eq!(r.s, vec![0.0, 0.0]);
        assert!(orthonormality_error(&r.u) <= 1e-12);
    }

    #[test]
    fn lstsq_identity_returns_rhs() {
        let b = random(5, 3, "rhs");
        let x = lstsq_min_norm(&DenseMatrix::identity(5), &b, DEFAULT_RCOND).unwrap();
        assert!(x.sub(&b).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn lstsq_mean_of_two_points() {
        let a = DenseMatrix::from_rows(&[[1.0], [1.0]]).unwrap();
        let b = DenseMatrix::from_rows(&[[1.0], [3.0]]).unwrap();
        let x = lstsq_min_norm(&a, &b, DEFAULT_RCOND).unwrap();
        assert!((x[(0, 0)] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn lstsq_recovers_planted_solution() {
        let a = random(50, 5, "A");
        let x0 = random(5, 3, "X0");
        let b = a.matmul(&x0).unwrap();
        let x = lstsq_min_norm(&a, &b, DEFAULT_RCOND).unwrap();
        assert!(x.sub(&x0).unwrap().max_abs() < 1e-8);
    }

    #[test]
    fn lstsq_residual_is_orthogonal_to_columns() {
        let a = random(40, 6, "A2");
        let b = random(40, 2, "B2");
        let x = lstsq_min_norm(&a, &b, DEFAULT_RCOND).unwrap();
        let resid = a.matmul(&x).unwrap().sub(&b).unwrap();
        let g = a.transpose_matmul(&resid).unwrap();
        assert!(g.max_abs() <= 1e-8 * a.frobenius_norm() * b.frobenius_norm());
    }

    #[test]
    fn lstsq_min_norm_on_duplicate_columns() {
        // Columns identical: minimum-norm solution splits the weight evenly.
        let a = DenseMatrix::from_rows(&[[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]]).unwrap();
        let b = DenseMatrix::from_rows(&[[2.0], [4.0], [6.0]]).unwrap();
        let x = lstsq_min_norm(&a, &b, DEFAULT_RCOND).unwrap();
        assert!((x[(0, 0)] - 1.0).abs() < 1e-12);
        assert!((x[(1, 0)] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lstsq_shape_mismatch() {
        let a = DenseMatrix::zeros(3, 2);
        let b = DenseMatrix::zeros(4, 1);
        assert!(matches!(
            lstsq_min_norm(&a, &b, DEFAULT_RCOND),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn covariance_constant_rows_is_zero() {
        let row = [0.3, -0.2, 0.9];
        let m = DenseMatrix::from_rows(&[row; 6]).unwrap();
        let ev = covariance_eigenvalues(&m).unwrap();
        assert_eq!(ev.len(), 3);
        assert!(ev.iter().all(|&v| v.abs() < 1e-30));
    }

    #[test]
    fn covariance_rank_one() {
        let sig = random(50, 1, "sig").into_vec();
        let m = DenseMatrix::from_fn(50, 2, |t, j| if j == 0 { sig[t] } else { -sig[t] });
        let ev = covariance_eigenvalues(&m).unwrap();
        assert!(ev[0] > 0.1);
        assert!(ev[1].abs() < 1e-14 * ev[0]);
    }

    #[test]
    fn covariance_trace_identity() {
        let m = random(200, 5, "trace");
        let ev = covariance_eigenvalues(&m).unwrap();
        let c = m.center_columns();
        let total_var: f64 =
            (0..5).map(|j| c.column(j).iter().map(|v| v * v).sum::<f64>() / 199.0).sum();
        let sum: f64 = ev.iter().sum();
        assert!((sum - total_var).abs() <= 1e-10 * total_var);
    }

    #[test]
    fn covariance_needs_two_samples() {
        let m = DenseMatrix::zeros(1, 3);
        assert!(matches!(
            covariance_eigenvalues(&m),
            Err(Error::InsufficientSamples { needed: 2, got: 1 })
        ));
    }

    #[test]
    fn covariance_wide_pads_with_zeros() {
        let m = random(3, 6, "wide");
        let ev = covariance_eigenvalues(&m).unwrap();
        assert_eq!(ev.len(), 6);
        assert!(ev[2..].iter().all(|v| v.abs() < 1e-12));
    }
}
