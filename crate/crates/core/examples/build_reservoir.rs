//! Builds a fixed-degree reservoir and inspects its structure.
//!
//! `cargo run --example build_reservoir -- 20 1` (chi_r, chi_i).

use sparse_rc::reservoir::{build_reservoir, ReservoirConfig};
use sparse_rc::sparse::{RADIUS_MAX_ITERS, RADIUS_TOL};

fn main() -> sparse_rc::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let config = ReservoirConfig {
        chi_r: args.first().copied().unwrap_or(20),
        chi_i: args.get(1).copied().unwrap_or(1),
        seed: 7,
        ..ReservoirConfig::default()
    };
    let res = build_reservoir(&config)?;
    let w = res.recurrent_weights();
    let u = res.input_weights();

    let in_deg = w.row_degrees();
    let out_deg = w.column_degrees();
    println!("N = {}, chi_r = {}, chi_i = {}", config.n_units, config.chi_r, config.chi_i);
    println!("W: {} nonzeros, every row has {} entries", w.nnz(), in_deg[0]);
    println!(
        "W column degrees range {}..={}",
        out_deg.iter().min().unwrap(),
        out_deg.iter().max().unwrap()
    );
    let driven: Vec<usize> = (0..u.rows()).filter(|&r| u.row(r).next().is_some()).collect();
    println!("U drives units {driven:?}");
    let radius = w.spectral_radius(RADIUS_TOL, RADIUS_MAX_ITERS)?;
    println!("spectral radius of W: {:.6} (target {})", radius.value, config.spectral_radius);
    Ok(())
}
