//! Exact finite models for reconciling order structure with topological
//! structure: preorders on small carriers, the topologies they induce,
//! distance tables with relaxed axioms, and infinite utility streams with
//! symbolic tails. Everything numeric is a rational unless a function says
//! otherwise, and every randomized helper takes an explicit seed.

pub mod preorder;
pub mod qpm;
pub mod rational;
pub mod report;
pub mod sample;
pub mod seq;
pub mod topology;
pub mod utility;
