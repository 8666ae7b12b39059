//! Cycle convexity on simple graphs.
//!
//! A vertex outside `S` joins the interval of `S` when two of its
//! neighbours lie in one component of `G[S]`; the hull is the fixed point.
//! On top of that this crate computes Carathéodory and exchange
//! independence, the exchange number (exactly and via closed formulas for
//! several graph classes and products) and a 3-SAT reduction gadget.

pub mod convexity;
pub mod corpus;
pub mod error;
pub mod formulas;
pub mod gadget;
pub mod graph;
pub mod independence;
pub mod set;

pub use convexity::{hull, interval, is_convex, is_hull_set, redundant_vertices, HullTrace};
pub use error::{Error, Result};
pub use graph::{BlockDecomposition, Graph, Product, ProductKind};
pub use independence::{
    exchange_number_brute, exchange_number_exact, is_c_independent, is_e_independent,
    ExchangeCertificate, ExchangeResult, Method,
};
pub use set::VertexSet;
