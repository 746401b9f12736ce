//! Partial-update rule: linear trace, cost identity and the extracted threshold policy.

use pandora::{expected_policy_cost, run_partial, Instance, Scenario};

fn main() -> pandora::Result<()> {
    let inst = Instance::checked(
        vec![1.0, 1.0],
        vec![Scenario::uniform(&[0.0, 3.0]), Scenario::uniform(&[3.0, 0.0])],
    )?;
    let run = run_partial(&inst)?;
    for step in &run.trace {
        println!(
            "step {}: open box {} (sigma {}, paid {}), covers {:?}",
            step.step, step.box_index, step.sigma, step.paid, step.covered
        );
    }
    println!("cost {:?}", run.cost);
    println!("sum of W(A)*sigma / W(S) = {}", run.sigma_identity(&inst));
    println!("policy {:?} -> {}", run.policy, expected_policy_cost(&run.policy, &inst).total);
    Ok(())
}
