//! Product of independent marginals: reservation values stay put until a box is opened.

use pandora::gen::parse_supports;
use pandora::{product_instance, run_partial};

fn main() -> pandora::Result<()> {
    let supports = parse_supports("0:0.5,6:0.5;2:0.5,4:0.5;1:0.25,8:0.75")?;
    let inst = product_instance(vec![1.0, 0.5, 0.8], &supports)?;
    let run = run_partial(&inst)?;
    for step in &run.trace {
        let sigmas: Vec<String> = step.sigmas.iter().map(|s| format!("{s:.4}")).collect();
        println!("step {}: open box {}, sigmas [{}]", step.step, step.box_index, sigmas.join(", "));
    }
    Ok(())
}
