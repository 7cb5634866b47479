//! Labelled random streams: the same (seed, label) pair always yields the
//! same numbers, and different labels are independent.

use sparse_rc::rng::derive_stream;

fn main() -> sparse_rc::Result<()> {
    let mut a = derive_stream(42, "cell/20/1/real/0/input");
    let mut b = derive_stream(42, "cell/20/1/real/0/input");
    let mut c = derive_stream(42, "cell/20/1/real/1/input");

    let xs: Vec<f64> = (0..4).map(|_| a.uniform(-0.8, 0.8).unwrap()).collect();
    let ys: Vec<f64> = (0..4).map(|_| b.uniform(-0.8, 0.8).unwrap()).collect();
    let zs: Vec<f64> = (0..4).map(|_| c.uniform(-0.8, 0.8).unwrap()).collect();
    println!("stream  {}: {xs:.4?}", a.label());
    println!("replay  {}: {ys:.4?}", b.label());
    println!("sibling {}: {zs:.4?}", c.label());
    assert_eq!(xs, ys);

    let mut pick = derive_stream(42, "demo/indices");
    println!("5 of 100 without replacement: {:?}", pick.sample_without_replacement(100, 5)?);
    println!("child stream label: {}", pick.child("sub").label());
    Ok(())
}
