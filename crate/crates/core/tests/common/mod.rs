//! Instance families and oracles shared by the integration suites.
#![allow(dead_code)]

pub mod oracle;

use pandora::gen::{mssc_with, random_with, rng};
use pandora::{product_instance, Instance, Scenario, ThresholdPolicy, Value};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn i1() -> Instance {
    Instance::new(vec![1.0, 1.0], vec![Scenario::uniform(&[0.0, 10.0]), Scenario::uniform(&[10.0, 0.0])])
}

pub fn i2() -> Instance {
    Instance::new(
        vec![1.0, 1.5],
        vec![Scenario::uniform(&[0.0, 10.0]), Scenario::uniform(&[4.0, 1.0]), Scenario::uniform(&[5.0, 2.0])],
    )
}

/// `count` random instances with `n <= 6`, `m <= 8`.
pub fn random_family(count: usize) -> Vec<Instance> {
    (0..count)
        .map(|i| {
            let mut r = rng(1_000 + i as u64);
            let n = r.gen_range(1..=6);
            let m = r.gen_range(1..=8);
            random_with(&mut r, n, m, 0.5..2.0)
        })
        .collect()
}

/// Like [`random_family`] but with integer scenario weights in `1..=4`.
pub fn weighted_family(count: usize) -> Vec<Instance> {
    (0..count)
        .map(|i| {
            let mut r = rng(5_000 + i as u64);
            let n = r.gen_range(1..=5);
            let m = r.gen_range(1..=8);
            let mut inst = random_with(&mut r, n, m, 0.5..2.0);
            for s in &mut inst.scenarios {
                s.weight = f64::from(r.gen_range(1u32..=4));
            }
            inst
        })
        .collect()
}

pub fn mssc_family(count: usize) -> Vec<Instance> {
    (0..count)
        .map(|i| {
            let mut r = rng(2_000 + i as u64);
            let n = r.gen_range(1..=6);
            let m = r.gen_range(1..=8);
            mssc_with(&mut r, n, m)
        })
        .collect()
}

/// Product instances with at most 3 boxes and supports of at most 3 atoms.
pub fn product_family(count: usize) -> Vec<Instance> {
    (0..count)
        .map(|i| {
            let mut r = rng(3_000 + i as u64);
            let n = r.gen_range(1..=3);
            let costs: Vec<f64> = (0..n).map(|_| r.gen_range(0.5..2.0)).collect();
            let supports: Vec<Vec<(Value, f64)>> = (0..n)
                .map(|b| {
                    let k = r.gen_range(1..=3);
                    let raw: Vec<f64> = (0..k).map(|_| f64::from(r.gen_range(1u32..=5))).collect();
                    let total: f64 = raw.iter().sum();
                    raw.iter()
                        .map(|p| {
                            let v = if b > 0 && r.gen_bool(0.15) {
                                Value::Infinite
                            } else {
                                Value::Finite(f64::from(r.gen_range(0u32..10)))
                            };
                            (v, p / total)
                        })
                        .collect()
                })
                .collect();
            product_instance(costs, &supports).expect("box 0 is always finite")
        })
        .collect()
}

/// Costs in `[0, 1]` (the capping argument charges at most 1 per extra box) and
/// values stretched so that caps actually bind.
pub fn capping_case(seed: u64) -> (Instance, ThresholdPolicy, f64) {
    let mut r = rng(seed);
    let n = r.gen_range(1..=6);
    let m = r.gen_range(1..=8);
    let mut inst = random_with(&mut r, n, m, 0.0..1.0);
    let stretch = f64::from(r.gen_range(1u32..=6));
    for s in &mut inst.scenarios {
        for v in &mut s.values {
            if let Value::Finite(x) = v {
                *x *= stretch;
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut r);
    let keep = r.gen_range(1..=n);
    perm.truncate(keep);
    let taus = (0..keep).map(|_| r.gen_range(0.0..60.0)).collect();
    let eps = r.gen_range(0.05..1.0);
    (inst, ThresholdPolicy::new(perm, taus).unwrap(), eps)
}

