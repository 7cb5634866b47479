//! Trains a linear readout on reservoir states to reproduce delayed copies
//! of the input and scores it on held-out steps.

use sparse_rc::linalg::{DenseMatrix, DEFAULT_RCOND};
use sparse_rc::metrics::{squared_correlation, train_readout};
use sparse_rc::reservoir::{build_reservoir, generate_input_series, ReservoirConfig};
use sparse_rc::rng::derive_stream;

fn main() -> sparse_rc::Result<()> {
    let res = build_reservoir(&ReservoirConfig { seed: 11, ..ReservoirConfig::default() })?;
    let mut s = derive_stream(11, "example/readout");
    let (len, washout, train) = (3000, 500, 2000);
    let input = generate_input_series(len, -0.8, 0.8, &mut s)?;
    let x = input.as_slice();
    let states = res.run(&input, washout)?.states;

    // Row r holds h(t) with t = washout + 1 + r, and x(t) = x[t - 1].
    let delays = [1, 3, 10, 30];
    let targets = DenseMatrix::from_fn(states.rows(), delays.len(), |r, k| x[washout + r - delays[k]]);
    let model = train_readout(&states.row_range(0, train), &targets.row_range(0, train), DEFAULT_RCOND)?;
    let test_states = states.row_range(train, states.rows());
    let prediction = model.predict(&test_states)?;
    let test_targets = targets.row_range(train, targets.rows());
    for (k, d) in delays.iter().enumerate() {
        let r2 = squared_correlation(&test_targets.column(k), &prediction.column(k))?;
        println!("delay {d:>2}: held-out r^2 = {r2:.4}, bias {:+.4}", model.bias[k]);
    }
    Ok(())
}
