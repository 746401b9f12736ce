//! Reservation values for every box at the initial state of a small instance.

use pandora::{argmin_sigma, sigma_closed_form, sigma_fixed_point, Instance, ResidualState, Scenario, Value};

fn main() -> pandora::Result<()> {
    let inst = Instance::checked(
        vec![1.0, 0.5],
        vec![
            Scenario::new(1.0, vec![Value::Finite(0.0), Value::Finite(4.0)]),
            Scenario::new(2.0, vec![Value::Finite(3.0), Value::Finite(1.0)]),
            Scenario::new(1.0, vec![Value::Infinite, Value::Finite(2.0)]),
        ],
    )?;
    let state = ResidualState::initial(&inst);
    for b in 0..inst.box_count() {
        let closed = sigma_closed_form(b, &state, &inst)?;
        let fixed = sigma_fixed_point(b, &state, &inst)?;
        println!("box {b}: sigma = {} (fixed point {fixed}), covers {:?}", closed.sigma, closed.covered);
    }
    let best = argmin_sigma(&state, &inst)?;
    println!("next box: {} at sigma {}", best.box_index, best.sigma);
    Ok(())
}
