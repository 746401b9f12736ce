//! On unit-cost {0, inf} instances the partial-update rule is the min-sum set cover greedy.

use pandora::gen::mssc_instance;
use pandora::{mssc_greedy, run_partial};

fn main() -> pandora::Result<()> {
    let inst = mssc_instance(5, 10, 7)?;
    let run = run_partial(&inst)?;
    let greedy = mssc_greedy(&inst)?;
    println!("rule order   {:?}, cost {}", run.box_sequence(), run.cost.total);
    println!("greedy order {:?}, cover time {}", greedy.order, greedy.expected_cover_time);
    Ok(())
}
