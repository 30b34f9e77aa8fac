//! Exact exponential-time solvers for qualitative constraint problems.
//!
//! * [`pot`] decides and counts Partially Ordered Time instances whose solution
//!   order has bounded effective width.
//! * [`ia`] decides and counts Allen interval algebra instances in which no
//!   interval overlaps `k` or more others.
//! * [`csp`] holds finite-domain CSPs with the max-cardinality branching solver.
//! * [`oracle`] holds brute-force reference implementations used for testing.
//!
//! The data model lives in [`order`] (points, scenarios, effective width) and
//! [`interval`] (basic relations, ordered partitions). Instance text formats are
//! in [`format`], seeded instance generators in [`generate`].

pub mod csp;
pub mod error;
pub mod format;
pub mod generate;
pub mod ia;
pub mod interval;
pub mod oracle;
pub mod order;
pub mod pot;
pub mod rng;

pub use error::{InstanceError, OrderError, SizeLimitExceeded};
