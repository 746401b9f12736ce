//! Learn a threshold policy from samples and evaluate it on the source distribution.

use pandora::gen::random_instance;
use pandora::{learn, LearningConfig};

fn main() -> pandora::Result<()> {
    let source = random_instance(4, 20, 3)?;
    for m in [10, 100, 1000] {
        let cfg = LearningConfig::new(m, 0.25, 0.1, 1)?;
        let rep = learn(&source, &cfg)?;
        println!(
            "m = {m:>4}: empirical {:.4}, on source {:.4}, source rule {:.4}",
            rep.empirical_cost, rep.true_cost, rep.source_alg_cost
        );
    }
    Ok(())
}
