//! Connectivity sweeps over `(chi_r, chi_i)` grids.
//!
//! Each realization draws its reservoir and its input series from streams
//! labelled `cell/{chi_r}/{chi_i}/real/{k}/{purpose}` under the master seed,
//! so a cell's numbers do not depend on which other cells are in the grid or
//! on how work is scheduled across threads.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::DEFAULT_RCOND;
use crate::metrics::{effective_dimension, memory_capacity_from_states, McProtocol, McResult, NeffResult};
use crate::reservoir::{build_reservoir, generate_input_series, ReservoirConfig};
use crate::rng::derive_stream;

/// Driving-signal and scoring schedule for one realization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Protocol {
    pub series_len: usize,
    pub washout: usize,
    pub train_len: usize,
    pub n_delays: usize,
    pub input_lo: f64,
    pub input_hi: f64,
    pub rcond: f64,
}

impl Default for Protocol {
    /// 6000 uniform samples in `[−0.8, 0.8)`, 1000 washout, 4000 training,
    /// 1000 scoring steps, 200 delays.
    fn default() -> Self {
        Self {
            series_len: 6000,
            washout: 1000,
            train_len: 4000,
            n_delays: 200,
            input_lo: -0.8,
            input_hi: 0.8,
            rcond: DEFAULT_RCOND,
        }
    }
}

impl Protocol {
    pub fn mc(&self) -> McProtocol {
        McProtocol {
            washout: self.washout,
            train_len: self.train_len,
            n_delays: self.n_delays,
            rcond: self.rcond,
        }
    }

    pub fn eval_len(&self) -> usize {
        self.series_len - self.washout - self.train_len
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.input_lo < self.input_hi) {
            return Err(Error::InvalidRange {
                lo: self.input_lo,
                hi: self.input_hi,
            });
        }
        self.mc().validate(self.series_len)
    }
}

/// Stream label for one purpose within one realization of one cell.
pub fn stream_label(chi_r: usize, chi_i: usize, realization: usize, purpose: &str) -> String {
    format!("cell/{chi_r}/{chi_i}/real/{realization}/{purpose}")
}

/// Scores one realization. `config.seed` is the master seed; the
/// reservoir's own seed is drawn from the realization's `reservoir` stream.
/// N_eff uses the same final scoring window as memory capacity.
pub fn run_single(
    config: &ReservoirConfig,
    protocol: &Protocol,
    realization: usize,
) -> Result<(McResult, NeffResult)> {
    protocol.validate()?;
    if config.n_inputs != 1 {
        return Err(Error::Config(format!(
            "memory capacity needs a single input, got n_inputs={}",
            config.n_inputs
        )));
    }
    let (chi_r, chi_i, master) = (config.chi_r, config.chi_i, config.seed);
    let reservoir_seed = derive_stream(master, &stream_label(chi_r, chi_i, realization, "reservoir")).next_u64();
    let mut input_stream = derive_stream(master, &stream_label(chi_r, chi_i, realization, "input"));

    let reservoir = build_reservoir(&ReservoirConfig {
        seed: reservoir_seed,
        ..config.clone()
    })?;
    let input = generate_input_series(protocol.series_len, protocol.input_lo, protocol.input_hi, &mut input_stream)?;
    let traj = reservoir.run(&input, protocol.washout)?;
    let mc = memory_capacity_from_states(&traj, input.as_slice(), &protocol.mc())?;
    let eval_start = traj.len() - protocol.eval_len();
    let neff = effective_dimension(&traj.states.row_range(eval_start, traj.len()))?;
    Ok((mc, neff))
}

/// A full sweep definition.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub n_units: usize,
    pub spectral_radius: f64,
    pub input_scaling: f64,
    pub chi_r_values: Vec<usize>,
    pub chi_i_values: Vec<usize>,
    pub realizations: usize,
    pub protocol: Protocol,
    pub master_seed: u64,
}

impl SweepSpec {
    /// 100 units, rho 0.9, unit input scaling, both connectivities 1..=100,
    /// 50 realizations per cell.
    pub fn full(master_seed: u64) -> Self {
        Self {
            n_units: 100,
            spectral_radius: 0.9,
            input_scaling: 1.0,
            chi_r_values: (1..=100).collect(),
            chi_i_values: (1..=100).collect(),
            realizations: 50,
            protocol: Protocol::default(),
            master_seed,
        }
    }

    /// The 6×6 grid {1, 5, 10, 20, 50, 100} with 10 realizations per cell.
    pub fn desk(master_seed: u64) -> Self {
        let grid = vec![1, 5, 10, 20, 50, 100];
        Self {
            chi_r_values: grid.clone(),
            chi_i_values: grid,
            realizations: 10,
            ..Self::full(master_seed)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.realizations == 0 {
            return Err(Error::Config("realizations must be at least 1".into()));
        }
        if self.chi_r_values.is_empty() || self.chi_i_values.is_empty() {
            return Err(Error::Config("connectivity grids must be non-empty".into()));
        }
        for (name, values) in [("chi_r", &self.chi_r_values), ("chi_i", &self.chi_i_values)] {
            if let Some(v) = values.iter().find(|&&v| v == 0 || v > self.n_units) {
                return Err(Error::Config(format!("{name}={v} outside 1..={}", self.n_units)));
            }
        }
        self.config(1, 1).validate()?;
        self.protocol.validate()
    }

    pub fn config(&self, chi_r: usize, chi_i: usize) -> ReservoirConfig {
        ReservoirConfig {
            n_units: self.n_units,
            n_inputs: 1,
            chi_r,
            chi_i,
            spectral_radius: self.spectral_radius,
            input_scaling: self.input_scaling,
            seed: self.master_seed,
        }
    }

    /// Grid cells in chi_r-major order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.chi_r_values
            .iter()
            .flat_map(|&r| self.chi_i_values.iter().map(move |&i| (r, i)))
            .collect()
    }
}

/// Outcome of one realization as seen by sweep observers.
#[derive(Debug)]
pub struct RealizationOutcome {
    pub chi_r: usize,
    pub chi_i: usize,
    pub realization: usize,
    pub result: Result<(McResult, NeffResult)>,
}

/// Scalar per-realization row (the optional raw dump).
#[derive(Clone, Debug, PartialEq)]
pub struct RealizationRecord {
    pub chi_r: usize,
    pub chi_i: usize,
    pub realization: usize,
    pub mc: f64,
    pub neff: f64,
    pub error: Option<String>,
}

/// Aggregated statistics of one grid cell. Statistics are NaN when no
/// realization succeeded.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub chi_r: usize,
    pub chi_i: usize,
    pub n_ok: usize,
    pub mc_mean: f64,
    pub mc_std: f64,
    pub neff_mean: f64,
    pub neff_std: f64,
}

impl SweepRecord {
    pub fn mean(&self, metric: Metric) -> f64 {
        match metric {
            Metric::Mc => self.mc_mean,
            Metric::Neff => self.neff_mean,
        }
    }

    pub fn std(&self, metric: Metric) -> f64 {
        match metric {
            Metric::Mc => self.mc_std,
            Metric::Neff => self.neff_std,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepOutput {
    pub records: Vec<SweepRecord>,
    pub realizations: Vec<RealizationRecord>,
}

/// Sample mean and standard deviation (denominator `n − 1`, 0 for `n = 1`).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    match values.len() {
        0 => (f64::NAN, f64::NAN),
        1 => (values[0], 0.0),
        n => {
            let mean = values.iter().sum::<f64>() / n as f64;
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            (mean, var.sqrt())
        }
    }
}

pub fn run_sweep(spec: &SweepSpec, workers: usize) -> Result<SweepOutput> {
    run_sweep_observed(spec, workers, |_| {})
}

/// Runs every realization of every cell on a pool of `workers` threads.
/// `observer` sees each outcome (in completion order) before aggregation.
pub fn run_sweep_observed<F>(spec: &SweepSpec, workers: usize, observer: F) -> Result<SweepOutput>
where
    F: Fn(&RealizationOutcome) + Sync,
{
    spec.validate()?;
    let cells = spec.cells();
    let jobs: Vec<(usize, usize, usize)> = cells
        .iter()
        .flat_map(|&(r, i)| (0..spec.realizations).map(move |k| (r, i, k)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;

    let done = AtomicUsize::new(0);
    let step = (jobs.len() / 20).max(1);
    let raw: Vec<RealizationRecord> = pool.install(|| {
        jobs.par_iter()
            .map(|&(chi_r, chi_i, realization)| {
                let result = run_single(&spec.config(chi_r, chi_i), &spec.protocol, realization);
                let outcome = RealizationOutcome {
                    chi_r,
                    chi_i,
                    realization,
                    result,
                };
                observer(&outcome);
                let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
                if finished % step == 0 {
                    log::info!("{finished}/{} realizations done", jobs.len());
                }
                match outcome.result {
                    Ok((mc, neff)) => RealizationRecord {
                        chi_r,
                        chi_i,
                        realization,
                        mc: mc.total,
                        neff: neff.value,
                        error: None,
                    },
                    Err(e) => {
                        log::warn!("cell ({chi_r}, {chi_i}) realization {realization} failed: {e}");
                        RealizationRecord {
                            chi_r,
                            chi_i,
                            realization,
                            mc: f64::NAN,
                            neff: f64::NAN,
                            error: Some(e.to_string()),
                        }
                    }
                }
            })
            .collect()
    });

    let records = raw
        .chunks(spec.realizations)
        .map(|cell| {
            let ok: Vec<&RealizationRecord> = cell.iter().filter(|r| r.error.is_none()).collect();
            let (mc_mean, mc_std) = mean_std(&ok.iter().map(|r| r.mc).collect::<Vec<_>>());
            let (neff_mean, neff_std) = mean_std(&ok.iter().map(|r| r.neff).collect::<Vec<_>>());
            if ok.is_empty() {
                log::warn!(
                    "cell ({}, {}) has no successful realization; statistics are NaN",
                    cell[0].chi_r,
                    cell[0].chi_i
                );
            }
            SweepRecord {
                chi_r: cell[0].chi_r,
                chi_i: cell[0].chi_i,
                n_ok: ok.len(),
                mc_mean,
                mc_std,
                neff_mean,
                neff_std,
            }
        })
        .collect();
    Ok(SweepOutput {
        records,
        realizations: raw,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    Mc,
    Neff,
}

impl Metric {
    pub const ALL: [Metric; 2] = [Metric::Mc, Metric::Neff];
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Mc => "mc",
            Metric::Neff => "neff",
        })
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mc" => Ok(Metric::Mc),
            "neff" => Ok(Metric::Neff),
            other => Err(Error::Config(format!("unknown metric {other:?} (expected mc or neff)"))),
        }
    }
}

/// A connectivity curve: raw values and their min-max rescaling to `[0, 1]`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Curve {
    pub points: Vec<(usize, f64)>,
    pub normalized: Vec<(usize, f64)>,
}

impl Curve {
    /// Min maps to 0 and max to 1; a flat curve maps entirely to 0.
    pub fn new(points: Vec<(usize, f64)>) -> Self {
        let lo = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let hi = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        let span = hi - lo;
        let normalized = points
            .iter()
            .map(|&(x, v)| (x, if span > 0.0 { (v - lo) / span } else { 0.0 }))
            .collect();
        Self { points, normalized }
    }

    pub fn value_at(&self, x: usize) -> Option<f64> {
        self.points.iter().find(|p| p.0 == x).map(|p| p.1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryCurves {
    pub metric: Metric,
    /// Best mean over chi_r for each chi_i.
    pub best_by_chi_i: Curve,
    /// Best mean over chi_i for each chi_r.
    pub best_by_chi_r: Curve,
    /// Means at chi_i = 1 for each chi_r (empty if chi_i = 1 was not swept).
    pub slice_chi_i_1: Curve,
}

/// Reduces sweep records to the per-axis best curves and the chi_i = 1 slice.
/// Cells without successful realizations are ignored.
pub fn summarize(records: &[SweepRecord], metric: Metric) -> Result<SummaryCurves> {
    let usable: Vec<&SweepRecord> = records
        .iter()
        .filter(|r| r.n_ok > 0 && r.mean(metric).is_finite())
        .collect();
    if usable.is_empty() {
        return Err(Error::EmptySummary);
    }
    let best_by = |key: fn(&SweepRecord) -> usize| {
        let mut keys: Vec<usize> = usable.iter().map(|r| key(r)).collect();
        keys.sort_unstable();
        keys.dedup();
        let points = keys
            .into_iter()
            .map(|k| {
                let best = usable
                    .iter()
                    .filter(|r| key(r) == k)
                    .map(|r| r.mean(metric))
                    .fold(f64::NEG_INFINITY, f64::max);
                (k, best)
            })
            .collect();
        Curve::new(points)
    };
    let mut slice: Vec<(usize, f64)> = usable
        .iter()
        .filter(|r| r.chi_i == 1)
        .map(|r| (r.chi_r, r.mean(metric)))
        .collect();
    slice.sort_by_key(|p| p.0);
    Ok(SummaryCurves {
        metric,
        best_by_chi_i: best_by(|r| r.chi_i),
        best_by_chi_r: best_by(|r| r.chi_r),
        slice_chi_i_1: Curve::new(slice),
    })
}
