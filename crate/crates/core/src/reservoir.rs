//! Echo state reservoir: fixed-degree sparse initialization and the
//! state recursion `h(t) = tanh(U·x(t) + W·h(t−1))` from `h(0) = 0`.
//!
//! Time indexing: the driving series stores `x(t)`, `t = 1..=T`, in row
//! `t − 1`. A trajectory collected from `collect_from` holds `h(collect_from
//! + 1 + r)` in row `r`.

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::rng::{derive_stream, RngStream};
use crate::sparse::{SparseMatrix, EPS_RAD, RADIUS_MAX_ITERS, RADIUS_TOL};

/// Redraws of `W` allowed when its radius estimate is degenerate.
pub const MAX_RADIUS_RETRIES: usize = 5;

#[derive(Clone, Debug, PartialEq)]
pub struct ReservoirConfig {
    pub n_units: usize,
    pub n_inputs: usize,
    /// Incoming recurrent connections per unit (nonzeros per row of `W`).
    pub chi_r: usize,
    /// Outgoing connections per input (nonzeros per column of `U`).
    pub chi_i: usize,
    pub spectral_radius: f64,
    pub input_scaling: f64,
    pub seed: u64,
}

impl Default for ReservoirConfig {
    fn default() -> Self {
        Self {
            n_units: 100,
            n_inputs: 1,
            chi_r: 20,
            chi_i: 1,
            spectral_radius: 0.9,
            input_scaling: 1.0,
            seed: 0,
        }
    }
}

impl ReservoirConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.n_units == 0 || self.n_inputs == 0 {
            return bad(format!(
                "reservoir needs at least one unit and one input (n_units={}, n_inputs={})",
                self.n_units, self.n_inputs
            ));
        }
        if !(1..=self.n_units).contains(&self.chi_r) {
            return bad(format!("chi_r={} must lie in 1..={}", self.chi_r, self.n_units));
        }
        if !(1..=self.n_units).contains(&self.chi_i) {
            return bad(format!("chi_i={} must lie in 1..={}", self.chi_i, self.n_units));
        }
        if !(self.spectral_radius > 0.0 && self.spectral_radius.is_finite()) {
            return bad(format!("spectral radius must be positive, got {}", self.spectral_radius));
        }
        if !(self.input_scaling > 0.0 && self.input_scaling.is_finite()) {
            return bad(format!("input scaling must be positive, got {}", self.input_scaling));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Reservoir {
    config: ReservoirConfig,
    input_weights: SparseMatrix,
    recurrent_weights: SparseMatrix,
}

/// Builds the `(U, W)` pair described by `config`.
pub fn build_reservoir(config: &ReservoirConfig) -> Result<Reservoir> {
    Reservoir::build(config)
}

impl Reservoir {
    /// `U` (N×M): per input column, `chi_i` distinct rows with values uniform
    /// in `[−1, 1)` times `input_scaling`. `W` (N×N): per row, `chi_r`
    /// distinct columns (self-connections allowed) with values uniform in
    /// `[−1, 1)`, then rescaled to the target spectral radius.
    ///
    /// Streams are derived from `config.seed` with labels `reservoir/U`,
    /// `reservoir/W` (`reservoir/W/retry/{k}` for redraws) and
    /// `reservoir/W/start` for the radius estimator's start vector.
    pub fn build(config: &ReservoirConfig) -> Result<Self> {
        config.validate()?;
        let n = config.n_units;
        let mut u_stream = derive_stream(config.seed, "reservoir/U");
        let input_weights = SparseMatrix::random_fixed_out_degree(
            n,
            config.n_inputs,
            config.chi_i,
            (-1.0, 1.0),
            &mut u_stream,
        )?
        .scaled(config.input_scaling);

        let mut start_stream = derive_stream(config.seed, "reservoir/W/start");
        let start: Vec<f64> = (0..n).map(|_| start_stream.uniform_unchecked(-1.0, 1.0)).collect();

        let mut last_radius = 0.0;
        for attempt in 0..=MAX_RADIUS_RETRIES {
            let mut w_stream: RngStream = if attempt == 0 {
                derive_stream(config.seed, "reservoir/W")
            } else {
                derive_stream(config.seed, &format!("reservoir/W/retry/{attempt}"))
            };
            let raw = SparseMatrix::random_fixed_in_degree(n, n, config.chi_r, (-1.0, 1.0), &mut w_stream)?;
            let estimate = raw.spectral_radius_from(&start, RADIUS_TOL, RADIUS_MAX_ITERS)?;
            if !estimate.converged {
                return Err(Error::RadiusNotConverged {
                    estimate: estimate.value,
                    iterations: estimate.iterations,
                });
            }
            if estimate.value <= EPS_RAD {
                log::debug!(
                    "W draw {attempt} for seed {} has degenerate radius {:e}; redrawing",
                    config.seed,
                    estimate.value
                );
                last_radius = estimate.value;
                continue;
            }
            let recurrent_weights = raw.rescale_to_radius_with(config.spectral_radius, estimate)?;
            return Ok(Self {
                config: config.clone(),
                input_weights,
                recurrent_weights,
            });
        }
        Err(Error::DegenerateSpectrum { radius: last_radius })
    }

    /// Wraps hand-built weights. Only shapes are checked: no degree
    /// constraint and no spectral rescaling.
    pub fn from_parts(
        config: ReservoirConfig,
        input_weights: SparseMatrix,
        recurrent_weights: SparseMatrix,
    ) -> Result<Self> {
        let n = config.n_units;
        if input_weights.rows() != n || input_weights.cols() != config.n_inputs {
            return Err(Error::dimension(
                "Reservoir::from_parts (U)",
                format!("{n}x{}", config.n_inputs),
                format!("{}x{}", input_weights.rows(), input_weights.cols()),
            ));
        }
        if recurrent_weights.rows() != n || recurrent_weights.cols() != n {
            return Err(Error::dimension(
                "Reservoir::from_parts (W)",
                format!("{n}x{n}"),
                format!("{}x{}", recurrent_weights.rows(), recurrent_weights.cols()),
            ));
        }
        Ok(Self {
            config,
            input_weights,
            recurrent_weights,
        })
    }

    pub fn config(&self) -> &ReservoirConfig {
        &self.config
    }

    pub fn input_weights(&self) -> &SparseMatrix {
        &self.input_weights
    }

    pub fn recurrent_weights(&self) -> &SparseMatrix {
        &self.recurrent_weights
    }

    pub fn n_units(&self) -> usize {
        self.config.n_units
    }

    /// Drives the reservoir from the zero state and keeps states after
    /// `collect_from` steps.
    pub fn run(&self, inputs: &DenseMatrix, collect_from: usize) -> Result<StateTrajectory> {
        self.run_from(inputs, collect_from, &vec![0.0; self.n_units()])
    }

    /// Same as [`Reservoir::run`] with an explicit `h(0)`.
    pub fn run_from(
        &self,
        inputs: &DenseMatrix,
        collect_from: usize,
        initial_state: &[f64],
    ) -> Result<StateTrajectory> {
        let n = self.n_units();
        if inputs.cols() != self.config.n_inputs {
            return Err(Error::dimension("Reservoir::run", self.config.n_inputs, inputs.cols()));
        }
        if initial_state.len() != n {
            return Err(Error::dimension("Reservoir::run (h0)", n, initial_state.len()));
        }
        let steps = inputs.rows();
        if collect_from >= steps {
            return Err(Error::Config(format!(
                "collect_from ({collect_from}) must be below the series length ({steps})"
            )));
        }
        let mut states = DenseMatrix::zeros(steps - collect_from, n);
        let mut h = initial_state.to_vec();
        let mut pre = vec![0.0; n];
        for t in 0..steps {
            pre.iter_mut().for_each(|p| *p = 0.0);
            self.input_weights.matvec_add_unchecked(inputs.row(t), &mut pre);
            self.recurrent_weights.matvec_add_unchecked(&h, &mut pre);
            for (hi, p) in h.iter_mut().zip(&pre) {
                *hi = p.tanh();
            }
            if t >= collect_from {
                states.row_mut(t - collect_from).copy_from_slice(&h);
            }
        }
        Ok(StateTrajectory {
            states,
            t0: collect_from + 1,
        })
    }
}

/// Collected reservoir states, one row per time step.
#[derive(Clone, Debug)]
pub struct StateTrajectory {
    pub states: DenseMatrix,
    /// Time index of row 0.
    pub t0: usize,
}

impl StateTrajectory {
    pub fn len(&self) -> usize {
        self.states.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.states.rows() == 0
    }

    /// Row holding `h(t)`, if collected.
    pub fn state_at(&self, t: usize) -> Option<&[f64]> {
        (t >= self.t0 && t - self.t0 < self.len()).then(|| self.states.row(t - self.t0))
    }
}

/// iid uniform series in `[lo, hi)` as a `length × 1` matrix.
pub fn generate_input_series(length: usize, lo: f64, hi: f64, stream: &mut RngStream) -> Result<DenseMatrix> {
    if length == 0 {
        return Err(Error::Config("input series length must be at least 1".into()));
    }
    let values = (0..length)
        .map(|_| stream.uniform(lo, hi))
        .collect::<Result<Vec<_>>>()?;
    Ok(DenseMatrix::column_vector(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::SparseMatrix;

    fn cfg_for(chi_r: usize, chi_i: usize, seed: u64) -> ReservoirConfig {
        ReservoirConfig {
            chi_r,
            chi_i,
            seed,
            ..ReservoirConfig::default()
        }
    }

    #[test]
    fn config_validation() {
        assert!(cfg_for(1, 1, 0).validate().is_ok());
        assert!(cfg_for(100, 100, 0).validate().is_ok());
        assert!(cfg_for(0, 1, 0).validate().is_err());
        assert!(cfg_for(1, 101, 0).validate().is_err());
        let mut c = cfg_for(5, 5, 0);
        c.spectral_radius = 0.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn single_input_connection() {
        let r = build_reservoir(&cfg_for(10, 1, 3)).unwrap();
        assert_eq!(r.input_weights().nnz(), 1);
        assert!(r.recurrent_weights().row_degrees().iter().all(|&d| d == 10));
    }

    #[test]
    fn degrees_and_ranges() {
        let mut c = cfg_for(7, 13, 9);
        c.n_inputs = 3;
        c.input_scaling = 0.5;
        let r = build_reservoir(&c).unwrap();
        assert_eq!(r.input_weights().column_degrees(), vec![13, 13, 13]);
        assert!(r.input_weights().values().iter().all(|v| v.abs() <= 0.5));
        assert!(r.recurrent_weights().row_degrees().iter().all(|&d| d == 7));
    }

    #[test]
    fn dense_reservoir_radius() {
        let r = build_reservoir(&cfg_for(100, 1, 4)).unwrap();
        assert_eq!(r.recurrent_weights().nnz(), 100 * 100);
        let rho = r.recurrent_weights().spectral_radius(RADIUS_TOL, RADIUS_MAX_ITERS).unwrap().value;
        assert!((0.8991..=0.9009).contains(&rho), "{rho}");
    }

    #[test]
    fn build_is_deterministic() {
        let a = build_reservoir(&cfg_for(5, 3, 11)).unwrap();
        let b = build_reservoir(&cfg_for(5, 3, 11)).unwrap();
        assert_eq!(a.input_weights(), b.input_weights());
        assert_eq!(a.recurrent_weights(), b.recurrent_weights());
        let c = build_reservoir(&cfg_for(5, 3, 12)).unwrap();
        assert_ne!(a.recurrent_weights(), c.recurrent_weights());
    }

    #[test]
    fn zero_input_keeps_zero_state() {
        let r = build_reservoir(&cfg_for(5, 2, 1)).unwrap();
        let traj = r.run(&DenseMatrix::zeros(50, 1), 0).unwrap();
        assert!(traj.states.as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn two_step_scalar_recursion() {
        let config = ReservoirConfig {
            n_units: 1,
            chi_r: 1,
            chi_i: 1,
            ..ReservoirConfig::default()
        };
        let (omega, w) = (0.7, -0.4);
        let u = SparseMatrix::from_triplets(1, 1, vec![(0, 0, omega)]).unwrap();
        let wm = SparseMatrix::from_triplets(1, 1, vec![(0, 0, w)]).unwrap();
        let r = Reservoir::from_parts(config, u, wm).unwrap();
        let x = DenseMatrix::column_vector(vec![0.3, -0.6]);
        let traj = r.run(&x, 0).unwrap();
        let h1 = (omega * 0.3f64).tanh();
        let h2 = (omega * -0.6 + w * h1).tanh();
        assert_eq!(traj.states.as_slice(), &[h1, h2]);
        assert_eq!(traj.state_at(2), Some(&[h2][..]));
        assert_eq!(traj.state_at(0), None);
    }

    #[test]
    fn collection_offset() {
        let r = build_reservoir(&cfg_for(4, 1, 2)).unwrap();
        let mut s = derive_stream(1, "x");
        let x = generate_input_series(30, -0.8, 0.8, &mut s).unwrap();
        let full = r.run(&x, 0).unwrap();
        let tail = r.run(&x, 10).unwrap();
        assert_eq!(tail.len(), 20);
        assert_eq!(tail.t0, 11);
        assert_eq!(tail.state_at(11), full.state_at(11));
        assert_eq!(tail.states.row(19), full.states.row(29));
    }

    #[test]
    fn run_rejects_bad_shapes() {
        let r = build_reservoir(&cfg_for(4, 1, 2)).unwrap();
        assert!(r.run(&DenseMatrix::zeros(10, 2), 0).is_err());
        assert!(r.run(&DenseMatrix::zeros(10, 1), 10).is_err());
        assert!(r.run_from(&DenseMatrix::zeros(10, 1), 0, &[0.0; 3]).is_err());
    }

    #[test]
    fn states_stay_inside_tanh_range() {
        let r = build_reservoir(&cfg_for(100, 100, 5)).unwrap();
        let mut s = derive_stream(5, "x");
        let x = generate_input_series(2000, -0.8, 0.8, &mut s).unwrap();
        let traj = r.run(&x, 0).unwrap();
        assert!(traj.states.as_slice().iter().all(|v| v.abs() < 1.0));
    }

    #[test]
    fn input_series_contract() {
        let mut s = derive_stream(42, "input");
        let x = generate_input_series(6000, -0.8, 0.8, &mut s).unwrap();
        assert_eq!(x.shape(), (6000, 1));
        let v = x.as_slice();
        assert!(v.iter().all(|x| (-0.8..0.8).contains(x)));
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        let var: f64 = v.iter().map(|x| (x - mean).powi(2)).sum();
        let lag1: f64 = v.windows(2).map(|w| (w[0] - mean) * (w[1] - mean)).sum();
        assert!((lag1 / var).abs() < 0.04);
        assert!(generate_input_series(0, -1.0, 1.0, &mut s).is_err());
        assert!(generate_input_series(5, 1.0, -1.0, &mut s).is_err());
    }
}
