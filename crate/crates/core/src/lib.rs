//! Resource accounting for one segment of a nested entanglement
//! swapping/purification chain.
//!
//! A chain of `L` switchers merges elementary pairs by Bell measurements,
//! which drains fidelity exponentially; distillation restores it at a cost
//! of `M` pairs per segment and nesting level. This crate composes both
//! fidelity maps on Bell-diagonal states, reproduces the exponential and
//! super-exponential `M(L)` overhead curves for dephased (QND) and Werner
//! pairs, and plans switcher counts under the half-threshold restriction
//! that keeps the overhead exponential.
//!
//! Modules:
//!
//! - [`bell_state`]: Bell-diagonal states, Werner parameter, robustness.
//! - [`swap`]: the swapping fidelity map, chain composition, closed forms.
//! - [`purify`]: the distillation step, iteration to target, pair counts.
//! - [`oracle`]: exact density-matrix protocols used as the independent
//!   check of every fast path.
//! - [`planner`]: `L_max`, the half-threshold restriction, `M(L)` sweeps,
//!   growth classification, resource totals.
//! - [`verify`]: seeded oracle-vs-fast-path comparison harness.

pub mod bell_state;
pub mod error;
pub mod oracle;
pub mod planner;
pub mod purify;
pub mod swap;
pub mod verify;

pub use bell_state::{BellDiagonal, Robustness, WernerParam, PROB_SUM_TOL};
pub use error::{Error, Result};
pub use planner::{GrowthClass, SegmentPlan, SweepCurve, SweepModel, SweepPoint};
pub use purify::PurificationResult;
pub use swap::ChainConvention;
