//! Percentile-tree sandwich rho*cost(T^rho) <= Q(rho|T) <= cost(T) on a random tree.

use pandora::gen::rng;
use pandora::{lemma_check, WeightedTree};

fn main() -> pandora::Result<()> {
    let tree = WeightedTree::random(&mut rng(11), 12, 4, 5.0);
    println!("{}", tree.to_json());
    for k in 1..=9 {
        let c = lemma_check(&tree, f64::from(k) / 10.0)?;
        println!("rho {:.1}: {:.4} <= {:.4} <= {:.4} ({})", c.rho, c.lhs, c.mid, c.rhs, c.holds);
    }
    Ok(())
}
