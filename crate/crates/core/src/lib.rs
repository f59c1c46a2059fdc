//! Universal clustering problem (UCP) toolkit.
//!
//! A UCP instance asks for the best `k`-block partition of a point set under a
//! fixed, polynomial-time computable partition utility. This crate provides
//!
//! - exact-rational instance and partition types ([`model`], [`partition`]),
//! - the concrete utilities behind classical clustering objectives ([`utilities`]),
//! - many-one reductions from NP-complete source problems, each with a
//!   certificate back-map ([`reductions`]),
//! - brute-force oracles for UCP and for every source problem ([`exact`]),
//! - the usual heuristics, scored against the oracles ([`heuristics`]),
//! - JSON/DIMACS/CSV formats and the `ucp` command line ([`io`], [`cli`]).

pub mod cli;
pub mod exact;
pub mod gen;
pub mod heuristics;
pub mod instance;
pub mod io;
pub mod linalg;
pub mod model;
pub mod partition;
pub mod rational;
pub mod reductions;
pub mod utilities;

pub use instance::{Payload, UcpDecisionInstance, Utility};
pub use model::{EuclideanInstance, GraphInstance, MetricInstance};
pub use partition::Partition;
pub use rational::Rational;
