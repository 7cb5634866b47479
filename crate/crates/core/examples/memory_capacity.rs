//! Memory capacity of one reservoir, with the per-delay forgetting curve.

use sparse_rc::experiment::{run_single, Protocol};
use sparse_rc::reservoir::ReservoirConfig;

fn main() -> sparse_rc::Result<()> {
    let protocol = Protocol::default();
    for (chi_r, chi_i) in [(20, 1), (20, 100)] {
        let config = ReservoirConfig { chi_r, chi_i, seed: 42, ..ReservoirConfig::default() };
        let (mc, _) = run_single(&config, &protocol, 0)?;
        println!("chi_r={chi_r} chi_i={chi_i}: MC = {:.3}", mc.total);
        for delay in [1, 2, 5, 10, 20, 40, 80] {
            let r2 = mc.per_delay[delay - 1];
            println!("  delay {delay:>3}  r^2 {r2:.4}  {}", "#".repeat((r2 * 40.0).round() as usize));
        }
    }
    Ok(())
}
