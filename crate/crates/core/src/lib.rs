//! Extremal numbers of graph families under a bound on the matching number:
//! graph primitives, invariants, derived families, explicit constructions,
//! closed-form edge counts, an exact oracle for small `n`, and a verification
//! harness tying them together.

pub mod canon;
pub mod constructions;
pub mod error;
pub mod families;
pub mod formulas;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod invariants;
pub mod oracle;

pub use error::{Error, Result};
pub use graph::Graph;
