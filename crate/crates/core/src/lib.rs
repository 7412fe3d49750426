//! Exact computations around point configurations on quasi-Veronese curves.
//!
//! The crate covers the combinatorial and linear-algebraic side of the
//! morphisms from the moduli space of stable pointed rational curves to GIT
//! quotients of points in projective space:
//!
//! * [`exactlin`]: exact rational matrices (rank, kernels, affine solving);
//! * [`configs`]: Veronese configurations, rational normal curves, projective
//!   equivalence;
//! * [`gitstab`]: linearizations, GIT (semi)stability, walls and the F-curve
//!   contraction criteria;
//! * [`fcurves`]: symmetric F-curves and Fakhruddin's degree formula for the
//!   level one `sl_n` conformal blocks bundles `D_k`;
//! * [`trees`]: stable dual trees, limit configurations, the semistable
//!   partition selector and the degree-`e` map solver;
//! * [`gale`]: Gale transform, Goppa duality and self-association;
//! * [`nefcone`]: the intersection matrix of the `D_k` with symmetric F-curves
//!   and the extremal ray consistency report.
//!
//! All arithmetic is exact. Point indices are zero based in the Rust API and
//! one based in JSON/CLI output.

pub mod cli;
pub mod configs;
pub mod error;
pub mod exactlin;
pub mod fcurves;
pub mod gale;
pub mod gitstab;
pub mod json;
pub mod nefcone;
pub mod sample;
pub mod trees;

pub use configs::{Configuration, Param, ProjPoint};
pub use error::{Error, Result};
pub use exactlin::{Mat, Rat};
pub use fcurves::{FPartition, SymFPartition};
pub use gitstab::{Linearization, StabilityVerdict, Status};
pub use trees::StableTree;
