//! Full-update rule: an adaptive policy tree branching on observed values.

use pandora::{run_full, Instance, Scenario};

fn main() -> pandora::Result<()> {
    let inst = Instance::checked(
        vec![1.0, 1.5],
        vec![Scenario::uniform(&[0.0, 10.0]), Scenario::uniform(&[4.0, 1.0]), Scenario::uniform(&[5.0, 2.0])],
    )?;
    let run = run_full(&inst)?;
    println!("{}", serde_json::to_string_pretty(&run.tree.to_json()).unwrap());
    println!("cost {:?}, identity {}", run.cost, run.tree.sigma_identity(&inst));
    Ok(())
}
