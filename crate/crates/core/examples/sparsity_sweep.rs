//! A small connectivity sweep with summary curves.
//!
//! `RUST_LOG=info cargo run --release --example sparsity_sweep` for progress.

use sparse_rc::experiment::{run_sweep, summarize, Metric, SweepSpec};

fn main() -> sparse_rc::Result<()> {
    let spec = SweepSpec {
        chi_r_values: vec![1, 5, 20, 100],
        chi_i_values: vec![1, 10, 100],
        realizations: 3,
        ..SweepSpec::desk(42)
    };
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let out = run_sweep(&spec, workers)?;

    println!("chi_r chi_i    MC (sd)         N_eff (sd)");
    for r in &out.records {
        println!(
            "{:>5} {:>5}  {:>6.2} ({:>5.2})  {:>6.3} ({:>5.3})",
            r.chi_r, r.chi_i, r.mc_mean, r.mc_std, r.neff_mean, r.neff_std
        );
    }
    for metric in Metric::ALL {
        let s = summarize(&out.records, metric)?;
        println!("{metric}: best over chi_r, per chi_i: {:?}", round(&s.best_by_chi_i.points));
        println!("{metric}: chi_i = 1 slice over chi_r: {:?}", round(&s.slice_chi_i_1.points));
    }
    Ok(())
}

fn round(points: &[(usize, f64)]) -> Vec<(usize, f64)> {
    points.iter().map(|&(x, v)| (x, (v * 100.0).round() / 100.0)).collect()
}
