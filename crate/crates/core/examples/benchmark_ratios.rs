//! Ratios against the best fixed opening order, over a batch of random instances.

use pandora::benchmarks::DEFAULT_MAX_BOXES;
use pandora::gen::random_instance;
use pandora::benchmark;

fn main() -> pandora::Result<()> {
    let (mut worst_partial, mut worst_full) = (0.0f64, 0.0f64);
    for seed in 0..50 {
        let inst = random_instance(5, 8, seed)?;
        let rep = benchmark(&inst, DEFAULT_MAX_BOXES)?;
        worst_partial = worst_partial.max(rep.ratio_partial);
        worst_full = worst_full.max(rep.ratio_full);
    }
    println!("worst partial ratio {worst_partial:.4}, worst full ratio {worst_full:.4}");
    Ok(())
}
