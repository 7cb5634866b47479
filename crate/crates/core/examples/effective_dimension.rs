//! Effective dimension (participation ratio) of reservoir trajectories
//! compared with two reference point clouds.

use sparse_rc::linalg::DenseMatrix;
use sparse_rc::metrics::effective_dimension;
use sparse_rc::reservoir::{build_reservoir, generate_input_series, ReservoirConfig};
use sparse_rc::rng::derive_stream;

fn main() -> sparse_rc::Result<()> {
    let mut s = derive_stream(1, "example/neff");
    let line = DenseMatrix::from_fn(1000, 10, |r, c| (r as f64).sin() * (c + 1) as f64);
    let cube = DenseMatrix::from_fn(1000, 10, |_, _| s.uniform(-1.0, 1.0).unwrap());
    println!("points on a line:   N_eff = {:.3}", effective_dimension(&line)?.value);
    println!("uniform in a cube:  N_eff = {:.3}", effective_dimension(&cube)?.value);

    let input = generate_input_series(3000, -0.8, 0.8, &mut s)?;
    for chi_i in [1, 10, 100] {
        let res = build_reservoir(&ReservoirConfig { chi_i, seed: 5, ..ReservoirConfig::default() })?;
        let states = res.run(&input, 1000)?.states;
        let neff = effective_dimension(&states)?;
        let top: Vec<String> = neff.eigenvalues.iter().take(4).map(|v| format!("{v:.2e}")).collect();
        println!("reservoir chi_i={chi_i:>3}: N_eff = {:.3}, leading eigenvalues {}", neff.value, top.join(" "));
    }
    Ok(())
}
