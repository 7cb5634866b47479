//! Sparse echo state networks with fixed-degree connectivity.
//!
//! A reservoir has `N` tanh units driven by an input through a sparse matrix
//! `U` in which every input reaches exactly `chi_i` units, and coupled through
//! a sparse matrix `W` in which every unit listens to exactly `chi_r` others.
//! `W` is rescaled to a target spectral radius. The crate measures how the two
//! connectivities shape the reservoir's short-term memory capacity and the
//! effective dimension of its state trajectory, and sweeps them over grids.
//!
//! Modules, bottom-up:
//!
//! - [`rng`]: labelled deterministic random streams.
//! - [`linalg`]: dense matrices, SVD, minimum-norm least squares, covariance spectra.
//! - [`sparse`]: CSR matrices, fixed-degree construction, spectral radius.
//! - [`reservoir`]: initialization and the state recursion.
//! - [`metrics`]: linear readouts, memory capacity, effective dimension.
//! - [`experiment`]: single realizations, parallel sweeps, summary curves.
//! - [`cli`]: the `sparse-rc` command line and its CSV/SVG outputs.

pub mod cli;
pub mod error;
pub mod experiment;
pub mod linalg;
pub mod metrics;
pub mod reservoir;
pub mod rng;
pub mod sparse;

pub use error::{Error, Result};
pub use experiment::{run_single, run_sweep, summarize, Metric, Protocol, SweepRecord, SweepSpec};
pub use linalg::DenseMatrix;
pub use metrics::{effective_dimension, memory_capacity, train_readout, McProtocol, McResult, NeffResult};
pub use reservoir::{build_reservoir, generate_input_series, Reservoir, ReservoirConfig, StateTrajectory};
pub use rng::{derive_stream, RngStream};
pub use sparse::SparseMatrix;
