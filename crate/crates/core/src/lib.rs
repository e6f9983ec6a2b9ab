//! Gromov–Hausdorff distances from finite metric spaces to regular simplexes.
//!
//! A simplex `λΔ_m` is the `m`-point space with every nonzero distance equal
//! to `λ`. For a finite space `X` with `n` points the doubled distance
//! `2·d_GH(λΔ_m, X)` reduces to a minimum over partitions of `X` into `m`
//! blocks ([`simplex::gh_to_simplex`]), and has closed forms in several
//! regimes expressed through the minimum and maximum spanning tree spectra.
//!
//! Modules:
//!
//! - [`metric`]: validated distance matrices, set distances, scaling, dual spaces.
//! - [`spanning`]: minimum/maximum spanning trees and their spectra.
//! - [`partition`]: partition enumeration and `α`, `β`, `diam D`, `d_m`, `δ_m`.
//! - [`simplex`]: distances to simplexes, closed forms, brute-force oracle.
//! - [`profile`]: exact distance profiles in `t` and equal-profile families.
//! - [`io`]: CSV and JSON matrix files.
//! - [`random`]: seeded generators of test spaces.

pub mod error;
pub mod extended;
pub mod io;
pub mod metric;
pub mod partition;
pub mod profile;
pub mod random;
pub mod simplex;
pub mod spanning;

pub use error::{Error, Result};
pub use extended::Extended;
pub use metric::{FiniteMetricSpace, PointSet};
pub use partition::{Partition, PartitionStats};
pub use profile::{FourPointSpace, PiecewiseLinearFunction};
pub use simplex::{Correspondence, DistanceResult, Method, SimplexSpec, Witness};
pub use spanning::{SpanningTree, Spectrum};
