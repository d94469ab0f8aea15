//! Quartic bicirculant graphs and their nut-graph classification.
//!
//! A spec ([`BicirculantSpec`]) names a graph in one of four parameter classes. Nut status
//! can be decided three ways that are checked against each other: closed-form
//! arithmetic conditions ([`classify`]), cyclotomic divisibility of a class polynomial
//! ([`nut_via_divisors`]) and an exact rational kernel computation ([`nut_oracle`]).

pub mod arith;
pub mod canon;
pub mod classify;
pub mod cyclo;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod kernel;
pub mod poly;
pub mod report;
pub mod spec;

pub use classify::{classify, Reason, Verdict};
pub use cyclo::{cyclotomic, divides_cyclotomic, nut_via_divisors, zero_multiplicity};
pub use error::{Error, Result};
pub use graph::{build_graph, QuartGraph};
pub use kernel::{adjacency_matrix, kernel_basis, nut_oracle, IntMatrix, KernelBasis};
pub use poly::IntPolynomial;
pub use spec::{make_spec, normalize_spec, parse_spec, BicirculantSpec, ClassTag};
