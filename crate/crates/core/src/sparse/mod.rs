//! Compressed-row sparse matrices with fixed-degree random construction,
//! O(nnz) products and spectral-radius control.

mod hessenberg;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::rng::{derive_stream, RngStream};

/// Radii at or below this are treated as a degenerate spectrum.
pub const EPS_RAD: f64 = 1e-12;
/// Default relative tolerance of [`SparseMatrix::spectral_radius`].
pub const RADIUS_TOL: f64 = 1e-6;
/// Default matrix-vector product budget of [`SparseMatrix::spectral_radius`].
pub const RADIUS_MAX_ITERS: usize = 10_000;

/// Largest Krylov basis built per restart.
const KRYLOV_DIM: usize = 128;
/// Subdiagonal Arnoldi entries below this fraction of `‖A·q‖` mean the
/// Krylov space is invariant.
const BREAKDOWN: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Builds from raw CSR arrays, checking every layout invariant.
    pub fn from_csr(
        rows: usize,
        cols: usize,
        row_ptr: Vec<usize>,
        col_idx: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if row_ptr.len() != rows + 1 {
            return Err(Error::dimension("SparseMatrix::from_csr", rows + 1, row_ptr.len()));
        }
        if col_idx.len() != values.len() || row_ptr[rows] != values.len() || row_ptr[0] != 0 {
            return Err(Error::dimension(
                "SparseMatrix::from_csr",
                format!("row_ptr[last] == nnz == {}", values.len()),
                format!("row_ptr[last] = {}, col_idx {}", row_ptr[rows], col_idx.len()),
            ));
        }
        for r in 0..rows {
            if row_ptr[r] > row_ptr[r + 1] {
                return Err(Error::Config(format!("row_ptr decreases at row {r}")));
            }
            let idx = &col_idx[row_ptr[r]..row_ptr[r + 1]];
            if idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|&c| c >= cols) {
                return Err(Error::Config(format!(
                    "row {r}: column indices must be strictly increasing and < {cols}"
                )));
            }
        }
        Ok(Self {
            rows,
            cols,
            row_ptr,
            col_idx,
            values,
        })
    }

    /// Builds from `(row, col, value)` triplets; duplicates are rejected.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        mut triplets: Vec<(usize, usize, f64)>,
    ) -> Result<Self> {
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        if let Some(&(r, _, _)) = triplets.iter().find(|t| t.0 >= rows) {
            return Err(Error::dimension("SparseMatrix::from_triplets", format!("row < {rows}"), r));
        }
        let mut row_ptr = vec![0; rows + 1];
        for &(r, _, _) in &triplets {
            row_ptr[r + 1] += 1;
        }
        for r in 0..rows {
            row_ptr[r + 1] += row_ptr[r];
        }
        let (col_idx, values) = triplets.into_iter().map(|(_, c, v)| (c, v)).unzip();
        Self::from_csr(rows, cols, row_ptr, col_idx, values)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    /// Keeps the nonzero entries of `dense`.
    pub fn from_dense(dense: &DenseMatrix) -> Self {
        let mut triplets = Vec::new();
        for r in 0..dense.rows() {
            for (c, &v) in dense.row(r).iter().enumerate() {
                if v != 0.0 {
                    triplets.push((r, c, v));
                }
            }
        }
        Self::from_triplets(dense.rows(), dense.cols(), triplets)
            .expect("dense entries are in range and distinct")
    }

    /// Every row gets exactly `degree` distinct columns with values uniform in `[lo, hi)`.
    ///
    /// Per row the column set is drawn first, sorted, and then one value is
    /// drawn per column in ascending column order.
    pub fn random_fixed_in_degree(
        rows: usize,
        cols: usize,
        degree: usize,
        (lo, hi): (f64, f64),
        stream: &mut RngStream,
    ) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::InvalidRange { lo, hi });
        }
        let mut row_ptr = Vec::with_capacity(rows + 1);
        let mut col_idx = Vec::with_capacity(rows * degree);
        let mut values = Vec::with_capacity(rows * degree);
        row_ptr.push(0);
        for _ in 0..rows {
            let mut picked = stream.sample_without_replacement(cols, degree)?;
            picked.sort_unstable();
            for c in picked {
                col_idx.push(c);
                values.push(stream.uniform_unchecked(lo, hi));
            }
            row_ptr.push(col_idx.len());
        }
        Ok(Self {
            rows,
            cols,
            row_ptr,
            col_idx,
            values,
        })
    }

    /// Every column gets exactly `degree` distinct rows with values uniform in `[lo, hi)`.
    ///
    /// Columns are processed in order; within a column, rows are sorted before
    /// values are drawn.
    pub fn random_fixed_out_degree(
        rows: usize,
        cols: usize,
        degree: usize,
        (lo, hi): (f64, f64),
        stream: &mut RngStream,
    ) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::InvalidRange { lo, hi });
        }
        let mut triplets = Vec::with_capacity(cols * degree);
        for c in 0..cols {
            let mut picked = stream.sample_without_replacement(rows, degree)?;
            picked.sort_unstable();
            for r in picked {
                triplets.push((r, c, stream.uniform_unchecked(lo, hi)));
            }
        }
        Self::from_triplets(rows, cols, triplets)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    pub fn col_idx(&self) -> &[usize] {
        &self.col_idx
    }

    /// `(column, value)` pairs of row `r`.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.col_idx[span.clone()]
            .iter()
            .copied()
            .zip(self.values[span].iter().copied())
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        self.row_ptr.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn column_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.cols];
        for &c in &self.col_idx {
            deg[c] += 1;
        }
        deg
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for (c, v) in self.row(r) {
                d[(r, c)] = v;
            }
        }
        d
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v * factor).collect(),
            ..self.clone()
        }
    }

    pub fn matvec(&self, v: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.rows];
        self.matvec_add(v, &mut out)?;
        Ok(out)
    }

    /// `out += self · v`.
    pub fn matvec_add(&self, v: &[f64], out: &mut [f64]) -> Result<()> {
        if v.len() != self.cols || out.len() != self.rows {
            return Err(Error::dimension(
                "matvec",
                format!("v of length {} into {}", self.cols, self.rows),
                format!("v of length {} into {}", v.len(), out.len()),
            ));
        }
        self.matvec_add_unchecked(v, out);
        Ok(())
    }

    #[inline]
    pub(crate) fn matvec_add_unchecked(&self, v: &[f64], out: &mut [f64]) {
        for (r, o) in out.iter_mut().enumerate() {
            let (start, end) = (self.row_ptr[r], self.row_ptr[r + 1]);
            let mut acc = 0.0;
            for k in start..end {
                acc += self.values[k] * v[self.col_idx[k]];
            }
            *o += acc;
        }
    }

    fn require_square(&self, op: &'static str) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::dimension(
                op,
                "square matrix",
                format!("{}x{}", self.rows, self.cols),
            ));
        }
        Ok(())
    }

    /// Spectral radius estimate from a fixed internal start vector.
    pub fn spectral_radius(&self, tol: f64, max_iters: usize) -> Result<RadiusEstimate> {
        let mut stream = derive_stream(0, "spectral-radius/start");
        let start: Vec<f64> = (0..self.rows)
            .map(|_| stream.uniform_unchecked(-1.0, 1.0))
            .collect();
        self.spectral_radius_from(&start, tol, max_iters)
    }

    /// Estimates `max |λ|` by power-filtered Krylov iteration.
    ///
    /// Each round applies `k = min(n, 128)` normalized power steps to the
    /// iterate, then builds a `k`-dimensional Arnoldi basis from it and takes
    /// the largest Ritz value modulus. Complex pairs and equal-modulus groups
    /// (e.g. the cycles of a one-connection-per-row matrix) appear as Ritz
    /// values, so they converge where a pure norm-growth estimate oscillates.
    /// The estimate is exact (up to rounding) when the Krylov space becomes
    /// invariant or spans the whole space; otherwise rounds repeat until two
    /// consecutive estimates agree within `tol` relative. `iterations` counts
    /// matrix-vector products.
    pub fn spectral_radius_from(
        &self,
        start: &[f64],
        tol: f64,
        max_iters: usize,
    ) -> Result<RadiusEstimate> {
        self.require_square("spectral_radius")?;
        if start.len() != self.rows {
            return Err(Error::dimension("spectral_radius", self.rows, start.len()));
        }
        if !(tol > 0.0) {
            return Err(Error::Config(format!("radius tolerance must be positive, got {tol}")));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(RadiusEstimate::exact(0.0, 0));
        }
        let krylov_dim = n.min(KRYLOV_DIM);
        let mut v = start.to_vec();
        if !normalize(&mut v) {
            v = vec![1.0 / (n as f64).sqrt(); n];
        }
        let mut iterations = 0;
        let mut previous: Option<f64> = None;
        let mut scratch = vec![0.0; n];
        loop {
            for _ in 0..krylov_dim {
                scratch.iter_mut().for_each(|x| *x = 0.0);
                self.matvec_add_unchecked(&v, &mut scratch);
                iterations += 1;
                std::mem::swap(&mut v, &mut scratch);
                if !normalize(&mut v) {
                    // The iterate vanished: nilpotent on the reachable subspace.
                    return Ok(RadiusEstimate::exact(0.0, iterations));
                }
            }
            let (estimate, complete, products) = self.arnoldi_radius(&v, krylov_dim)?;
            iterations += products;
            if complete {
                return Ok(RadiusEstimate::exact(estimate, iterations));
            }
            if let Some(prev) = previous {
                if (estimate - prev).abs() <= tol * estimate.max(f64::MIN_POSITIVE) {
                    return Ok(RadiusEstimate::exact(estimate, iterations));
                }
            }
            if iterations >= max_iters {
                return Ok(RadiusEstimate {
                    value: estimate,
                    converged: false,
                    iterations,
                });
            }
            previous = Some(estimate);
        }
    }

    /// Largest Ritz modulus of a `dim`-step Arnoldi run from unit vector `q0`.
    /// The flag is true when the basis is invariant or spans the whole space.
    fn arnoldi_radius(&self, q0: &[f64], dim: usize) -> Result<(f64, bool, usize)> {
        let n = self.rows;
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
        basis.push(q0.to_vec());
        // Column-major (dim+1) x dim Hessenberg entries.
        let mut h = vec![0.0; (dim + 1) * dim];
        let mut size = dim;
        let mut invariant = false;
        let mut products = 0;
        for j in 0..dim {
            let mut w = vec![0.0; n];
            self.matvec_add_unchecked(&basis[j], &mut w);
            products += 1;
            let w_norm = norm(&w);
            // Modified Gram-Schmidt, repeated once for stability.
            for _ in 0..2 {
                for (i, q) in basis.iter().enumerate() {
                    let p = dot(q, &w);
                    h[j * (dim + 1) + i] += p;
                    w.iter_mut().zip(q).for_each(|(x, qi)| *x -= p * qi);
                }
            }
            let beta = norm(&w);
            if beta <= BREAKDOWN * w_norm || j + 1 == n {
                size = j + 1;
                invariant = true;
                break;
            }
            h[j * (dim + 1) + j + 1] = beta;
            w.iter_mut().for_each(|x| *x /= beta);
            basis.push(w);
        }
        let mut square = vec![0.0; size * size];
        for r in 0..size {
            for c in 0..size {
                square[r * size + c] = h[c * (dim + 1) + r];
            }
        }
        let ritz = hessenberg::eigenvalues(&square, size).ok_or_else(|| {
            Error::Numeric(format!(
                "Hessenberg QR failed to converge on a {size}x{size} Krylov projection"
            ))
        })?;
        let radius = ritz.iter().map(|(re, im)| re.hypot(*im)).fold(0.0, f64::max);
        Ok((radius, invariant, products))
    }

    /// Returns a copy scaled so its spectral radius equals `target`.
    ///
    /// Fails with [`Error::DegenerateSpectrum`] if the current radius is at or
    /// below [`EPS_RAD`] and with [`Error::RadiusNotConverged`] if the
    /// estimate does not settle.
    pub fn rescale_to_radius(&self, target: f64) -> Result<Self> {
        self.rescale_to_radius_with(target, self.spectral_radius(RADIUS_TOL, RADIUS_MAX_ITERS)?)
    }

    pub(crate) fn rescale_to_radius_with(&self, target: f64, current: RadiusEstimate) -> Result<Self> {
        if !(target > 0.0) {
            return Err(Error::Config(format!("target spectral radius must be positive, got {target}")));
        }
        if !current.converged {
            return Err(Error::RadiusNotConverged {
                estimate: current.value,
                iterations: current.iterations,
            });
        }
        if current.value <= EPS_RAD {
            return Err(Error::DegenerateSpectrum {
                radius: current.value,
            });
        }
        Ok(self.scaled(target / current.value))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusEstimate {
    pub value: f64,
    pub converged: bool,
    pub iterations: usize,
}

impl RadiusEstimate {
    fn exact(value: f64, iterations: usize) -> Self {
        Self {
            value,
            converged: true,
            iterations,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Scales `v` to unit length; false if it is zero or not finite.
fn normalize(v: &mut [f64]) -> bool {
    let n = norm(v);
    if n > 0.0 && n.is_finite() {
        v.iter_mut().for_each(|x| *x /= n);
        true
    } else {
        false
    }
}
