//! Spectral radius estimation and rescaling, including the cases a plain
//! power iteration gets wrong: complex pairs and rotations.

use sparse_rc::linalg::DenseMatrix;
use sparse_rc::rng::derive_stream;
use sparse_rc::sparse::{SparseMatrix, RADIUS_MAX_ITERS, RADIUS_TOL};

fn main() -> sparse_rc::Result<()> {
    // A 90 degree rotation scaled by 2: eigenvalues ±2i.
    let rot = SparseMatrix::from_dense(&DenseMatrix::from_rows(&[[0.0, -2.0], [2.0, 0.0]])?);
    println!("rotation: {:.6}", rot.spectral_radius(RADIUS_TOL, RADIUS_MAX_ITERS)?.value);

    // A 5-cycle permutation: five eigenvalues on the unit circle.
    let cycle = SparseMatrix::from_triplets(5, 5, (0..5).map(|i| ((i + 1) % 5, i, 1.0)).collect())?;
    println!("5-cycle:  {:.6}", cycle.spectral_radius(RADIUS_TOL, RADIUS_MAX_ITERS)?.value);

    for degree in [1, 5, 20, 100] {
        let mut s = derive_stream(3, &format!("example/W/{degree}"));
        let w = SparseMatrix::random_fixed_in_degree(100, 100, degree, (-1.0, 1.0), &mut s)?;
        let before = w.spectral_radius(RADIUS_TOL, RADIUS_MAX_ITERS)?;
        let after = w.rescale_to_radius(0.9)?.spectral_radius(RADIUS_TOL, RADIUS_MAX_ITERS)?;
        println!(
            "degree {degree:>3}: radius {:.4} -> {:.6} ({} iterations)",
            before.value, after.value, before.iterations
        );
    }
    Ok(())
}
