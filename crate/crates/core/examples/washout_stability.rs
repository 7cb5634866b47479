//! Echo state property in practice: trajectories from different initial
//! states converge under the same input.

use sparse_rc::reservoir::{build_reservoir, generate_input_series, ReservoirConfig};
use sparse_rc::rng::derive_stream;

fn main() -> sparse_rc::Result<()> {
    for rho in [0.5, 0.9, 1.2] {
        let config = ReservoirConfig { spectral_radius: rho, seed: 3, ..ReservoirConfig::default() };
        let res = build_reservoir(&config)?;
        let mut s = derive_stream(3, "example/washout");
        let input = generate_input_series(1000, -0.8, 0.8, &mut s)?;
        let h0: Vec<f64> = (0..config.n_units).map(|_| s.uniform(-1.0, 1.0).unwrap()).collect();
        let a = res.run(&input, 0)?.states;
        let b = res.run_from(&input, 0, &h0)?.states;
        let gap = |t: usize| a.row(t).iter().zip(b.row(t)).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        let trace: Vec<String> = [0, 10, 50, 100, 500, 999].iter().map(|&t| format!("t={}:{:.1e}", t + 1, gap(t))).collect();
        println!("rho {rho}: {}", trace.join("  "));
    }
    Ok(())
}
