//! Deciding finiteness of flat dimension with the Frobenius functor, the
//! resolution oracle it is checked against, Loewy-length bounds for Koszul
//! complexes, and verifiers for the structural statements behind them.

mod bounds;
mod oracle;
mod remark;
mod verdict;
mod verify;

pub use bounds::{cr_upper_bound, loewy_bounds_koszul, truncation_is_acyclic, CRBound, CrRoute, LoewyBound, MAX_TRUNCATION};
pub use oracle::flatdim_oracle;
pub use remark::{remark_example, RemarkReport};
pub use verdict::{detect_flat_dimension, log_ceiling, Certificate, DetectOptions, FlatDimVerdict, Outcome, Route, Witness};
pub use verify::{verify_tor_decomposition, verify_window_collapse, DecompositionReport, DecompositionRow, Leg, WindowCollapseReport};
