//! Pandora's Box with correlated, finite-support value distributions.
//!
//! Boxes have known opening costs; their values follow a weighted list of
//! scenarios. The crate implements Weitzman's reservation-value rule generalized
//! to such distributions, in the partial-update and full-update variants, along
//! with exact small-instance benchmarks, a sample-based learning pipeline and a
//! checker for the weighted-tree percentile inequality used in the analysis.
//!
//! ```
//! use pandora::{Instance, Scenario, run_partial, pa_opt_bruteforce};
//!
//! let inst = Instance::new(
//!     vec![1.0, 1.5],
//!     vec![
//!         Scenario::uniform(&[0.0, 10.0]),
//!         Scenario::uniform(&[4.0, 1.0]),
//!         Scenario::uniform(&[5.0, 2.0]),
//!     ],
//! );
//! let run = run_partial(&inst).unwrap();
//! assert_eq!(run.cost.total, 3.0);
//! let (opt, perm) = pa_opt_bruteforce(&inst, 9).unwrap();
//! assert_eq!(perm, vec![1, 0]);
//! assert!(run.cost.total / opt < 4.428);
//! ```

pub mod benchmarks;
pub mod error;
pub mod gen;
pub mod learning;
pub mod model;
pub mod report;
pub mod reservation;
pub mod solver;
pub mod tree;
pub mod value;

pub use benchmarks::{
    benchmark, mssc_greedy, pa_opt_bruteforce, product_instance, sa_cost, BenchmarkReport, MsscCover,
};
pub use error::{Error, Result};
pub use learning::{clip_thresholds, learn, sample_empirical, LearningConfig, LearningReport};
pub use model::{CostBreakdown, Instance, ResidualState, Scenario, Violation, TOL};
pub use reservation::{argmin_sigma, sigma_closed_form, sigma_fixed_point, ReservationResult};
pub use solver::{
    evaluate_threshold_policy, expected_policy_cost, run_full, run_partial, FullRun, PartialRun, PolicyTree,
    ThresholdPolicy, TraceStep,
};
pub use tree::{lemma_check, percentile_tree_cost, quantile_area, top_percentile, LemmaCheck, WeightedTree};
pub use value::Value;
