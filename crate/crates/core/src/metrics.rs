//! Short-term memory capacity and effective dimension of reservoir states.
//!
//! Memory capacity trains one linear readout per delay `i = 1..=D` to
//! reconstruct `x(t − i)` from `h(t)` and sums the squared correlations
//! between targets and reconstructions on held-out steps. All delays share
//! one design matrix, so they are solved jointly in a single least-squares
//! problem. Effective dimension is the participation ratio
//! `(Σλ)² / Σλ²` of the state covariance spectrum.

use crate::error::{Error, Result};
use crate::linalg::{covariance_eigenvalues, lstsq_min_norm, DenseMatrix, DEFAULT_RCOND};
use crate::reservoir::{Reservoir, StateTrajectory};

/// Variance products (and eigenvalues) at or below this count as zero.
pub const EPS_VAR: f64 = 1e-30;

/// Affine readout `y(t) = V·h(t) + b`.
#[derive(Clone, Debug)]
pub struct ReadoutModel {
    /// `L × N`.
    pub weights: DenseMatrix,
    pub bias: Vec<f64>,
}

impl ReadoutModel {
    pub fn n_outputs(&self) -> usize {
        self.bias.len()
    }

    /// Outputs for each state row, `T × L`.
    pub fn predict(&self, states: &DenseMatrix) -> Result<DenseMatrix> {
        if states.cols() != self.weights.cols() {
            return Err(Error::dimension("ReadoutModel::predict", self.weights.cols(), states.cols()));
        }
        let l = self.n_outputs();
        let mut out = DenseMatrix::zeros(states.rows(), l);
        for t in 0..states.rows() {
            let h = states.row(t);
            for (k, y) in out.row_mut(t).iter_mut().enumerate() {
                *y = self.bias[k] + self.weights.row(k).iter().zip(h).map(|(w, x)| w * x).sum::<f64>();
            }
        }
        Ok(out)
    }
}

/// Fits `V` and `b` for all target columns at once by minimum-norm least
/// squares on `[states | 1]`.
pub fn train_readout(states: &DenseMatrix, targets: &DenseMatrix, rcond: f64) -> Result<ReadoutModel> {
    if states.rows() != targets.rows() {
        return Err(Error::dimension("train_readout", states.rows(), targets.rows()));
    }
    if states.rows() <= states.cols() {
        log::warn!(
            "training readout on {} samples for {} state features: solution is underdetermined",
            states.rows(),
            states.cols()
        );
    }
    let design = states.with_constant_column(1.0);
    let solution = lstsq_min_norm(&design, targets, rcond)?; // (N+1) × L
    let n = states.cols();
    let weights = DenseMatrix::from_fn(targets.cols(), n, |k, j| solution[(j, k)]);
    let bias = solution.row(n).to_vec();
    Ok(ReadoutModel { weights, bias })
}

/// Squared Pearson correlation; 0 when `σ²(a)·σ²(b) ≤ EPS_VAR`.
pub fn squared_correlation(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::dimension("squared_correlation", a.len(), b.len()));
    }
    if a.len() < 2 {
        return Err(Error::InsufficientSamples { needed: 2, got: a.len() });
    }
    let n = a.len() as f64;
    let mean_a = a.iter().sum::<f64>() / n;
    let mean_b = b.iter().sum::<f64>() / n;
    let (mut saa, mut sbb, mut sab) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - mean_a, y - mean_b);
        saa += dx * dx;
        sbb += dy * dy;
        sab += dx * dy;
    }
    let denom = n - 1.0;
    let (var_a, var_b, cov) = (saa / denom, sbb / denom, sab / denom);
    if var_a * var_b <= EPS_VAR {
        return Ok(0.0);
    }
    Ok((cov * cov / (var_a * var_b)).min(1.0))
}

/// Step counts for the memory-capacity task.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McProtocol {
    /// Initial steps excluded from training and evaluation.
    pub washout: usize,
    pub train_len: usize,
    pub n_delays: usize,
    pub rcond: f64,
}

impl Default for McProtocol {
    fn default() -> Self {
        Self {
            washout: 1000,
            train_len: 4000,
            n_delays: 200,
            rcond: DEFAULT_RCOND,
        }
    }
}

impl McProtocol {
    pub fn validate(&self, series_len: usize) -> Result<()> {
        if self.n_delays == 0 {
            return Err(Error::Config("at least one delay is required".into()));
        }
        if self.washout < self.n_delays {
            return Err(Error::Config(format!(
                "washout ({}) must be at least the number of delays ({})",
                self.washout, self.n_delays
            )));
        }
        if self.train_len < 2 {
            return Err(Error::Config("training window needs at least 2 steps".into()));
        }
        if self.washout + self.train_len + 2 > series_len {
            return Err(Error::Config(format!(
                "washout ({}) + training ({}) must leave at least 2 evaluation steps in a series of {}",
                self.washout, self.train_len, series_len
            )));
        }
        if !(self.rcond >= 0.0) {
            return Err(Error::Config(format!("rcond must be non-negative, got {}", self.rcond)));
        }
        Ok(())
    }

    pub fn eval_len(&self, series_len: usize) -> usize {
        series_len - self.washout - self.train_len
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct McResult {
    pub total: f64,
    /// Squared correlation for delay `i` at index `i − 1`.
    pub per_delay: Vec<f64>,
}

/// Runs `reservoir` on the single-input series and scores its memory capacity.
pub fn memory_capacity(reservoir: &Reservoir, input: &DenseMatrix, protocol: &McProtocol) -> Result<McResult> {
    if input.cols() != 1 {
        return Err(Error::dimension("memory_capacity", "single-column input", input.cols()));
    }
    protocol.validate(input.rows())?;
    let traj = reservoir.run(input, protocol.washout)?;
    memory_capacity_from_states(&traj, input.as_slice(), protocol)
}

/// Memory capacity of an already collected trajectory.
///
/// `traj` must start right after the washout (`t0 = washout + 1`) and run to
/// the end of `signal`; `signal[t − 1]` is the value `x(t)` that delayed
/// targets are read from. Training uses `t ∈ (washout, washout + train_len]`,
/// scoring uses the remaining steps.
pub fn memory_capacity_from_states(
    traj: &StateTrajectory,
    signal: &[f64],
    protocol: &McProtocol,
) -> Result<McResult> {
    let series_len = signal.len();
    protocol.validate(series_len)?;
    if traj.t0 != protocol.washout + 1 || traj.len() != series_len - protocol.washout {
        return Err(Error::Config(format!(
            "trajectory covers t = {}..={} but the protocol needs {}..={}",
            traj.t0,
            traj.t0 + traj.len() - 1,
            protocol.washout + 1,
            series_len
        )));
    }
    let delays = protocol.n_delays;
    let targets_for = |rows: std::ops::Range<usize>| {
        DenseMatrix::from_fn(rows.len(), delays, |r, k| {
            let t = traj.t0 + rows.start + r;
            // x(t − i) with i = k + 1, stored at index t − i − 1.
            signal[t - (k + 1) - 1]
        })
    };
    let train_rows = 0..protocol.train_len;
    let eval_rows = protocol.train_len..traj.len();

    let readout = train_readout(
        &traj.states.row_range(train_rows.start, train_rows.end),
        &targets_for(train_rows),
        protocol.rcond,
    )?;
    let eval_states = traj.states.row_range(eval_rows.start, eval_rows.end);
    let predicted = readout.predict(&eval_states)?;
    let targets = targets_for(eval_rows);

    let per_delay = (0..delays)
        .map(|k| squared_correlation(&targets.column(k), &predicted.column(k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(McResult {
        total: per_delay.iter().sum(),
        per_delay,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NeffResult {
    pub value: f64,
    /// Covariance eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
}

/// `(Σλ)² / Σλ²`, or `None` when no eigenvalue exceeds [`EPS_VAR`].
pub fn participation_ratio(eigenvalues: &[f64]) -> Option<f64> {
    if eigenvalues.iter().all(|&l| l <= EPS_VAR) {
        return None;
    }
    let sum: f64 = eigenvalues.iter().sum();
    let sum_sq: f64 = eigenvalues.iter().map(|l| l * l).sum();
    Some(sum * sum / sum_sq)
}

/// Effective dimension of a `T × N` state matrix.
pub fn effective_dimension(states: &DenseMatrix) -> Result<NeffResult> {
    let eigenvalues = covariance_eigenvalues(states)?;
    let value = participation_ratio(&eigenvalues).ok_or(Error::DegenerateTrajectory)?;
    Ok(NeffResult { value, eigenvalues })
}
