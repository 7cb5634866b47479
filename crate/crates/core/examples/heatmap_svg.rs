//! Writes CSV and SVG heatmaps for a coarse sweep into a directory.
//!
//! `cargo run --release --example heatmap_svg -- out_dir`

use std::path::PathBuf;

use sparse_rc::cli::{write_csv, write_svg_heatmap};
use sparse_rc::experiment::{run_sweep, Metric, SweepSpec};

fn main() -> sparse_rc::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "heatmap_out".into()));
    let spec = SweepSpec {
        n_units: 30,
        chi_r_values: vec![1, 2, 5, 10, 20, 30],
        chi_i_values: vec![1, 2, 5, 10, 20, 30],
        realizations: 2,
        ..SweepSpec::desk(1)
    };
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let out = run_sweep(&spec, workers)?;
    write_csv(&out.records, &dir.join("sweep.csv"))?;
    for metric in Metric::ALL {
        let path = dir.join(format!("sweep_{metric}.svg"));
        write_svg_heatmap(&out.records, metric, &path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
