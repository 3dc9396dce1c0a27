//! Noncommuting graphs of finite groups and numerical checks of discrete
//! isoperimetric, Sobolev and Nash inequalities on weighted graphs.
//!
//! - [`group`]: finite groups as Cayley tables, centers, commutation.
//! - [`graph`]: weighted graphs, boundaries, measures, hop distances, and the
//!   noncommuting graph `Γ_G`.
//! - [`calculus`]: gradient, Laplacian, Green's formula, summation by parts.
//! - [`isoperimetry`]: `ν_r`, the P(δ, ι, R₀) certificate, isoperimetric scans.
//! - [`inequalities`]: Sobolev and Nash forms, dyadic truncations, and the
//!   chain linking them.
//!
//! ```
//! use noncomm_core::isoperimetry::{
//!     check_p, constant_c, nu, verify_isoperimetric, ConstantVariant, PParams, ScanMode,
//! };
//! use noncomm_core::{build_group, noncommuting_graph};
//!
//! let graph = noncommuting_graph(&build_group("Q8")?)?;
//! let cert = check_p(&graph, PParams::new(1.0, 1.0, 1.0), None)?;
//! let n = cert.n.expect("Q8 satisfies P(1, 1, 1)");
//! let nu2 = nu(&graph, 2.0)?;
//! let c = constant_c(graph.min_vertex_weight(), 1.0, nu2, 1.0, n, ConstantVariant::GammaG)?;
//! let report = verify_isoperimetric(&graph, c, n, ScanMode::Exhaustive)?;
//! assert!(report.violations.is_empty());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

// `!(x > 0.0)` is how NaN gets rejected alongside out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod calculus;
pub mod graph;
pub mod group;
pub mod inequalities;
pub mod isoperimetry;
pub mod tolerance;

pub use calculus::{VertexFunction, Weighting};
pub use graph::{noncommuting_graph, Distance, Subset, WeightedGraph};
pub use group::{build_group, FiniteGroup, GroupSpec};
pub use inequalities::{DyadicDecomposition, InequalityReport};
pub use isoperimetry::{IsoReport, PCertificate};
