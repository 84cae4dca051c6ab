//! Finite models of coarse geometry.
//!
//! Metric spaces are finite tables of possibly infinite distances. On top of
//! them the crate builds Rips graphs and complexes, nerves of covers, and
//! finite towers of those objects linked by simplicial bonding maps. A tower
//! is a truncation of a direct sequence; every property that asks for "some
//! later level" is answered with the least stored witness or reported as
//! unwitnessed within the truncation.
//!
//! The main entry points:
//!
//! - [`metric`]: [`FiniteMetricSpace`], covers, balls, Lebesgue numbers,
//!   distortion profiles and the ls-distance between maps.
//! - [`graph`] and [`cayley`]: graphs, graph metrics, Rips graphs, the
//!   augmentation `A(G)` and truncated Cayley graphs.
//! - [`complex`]: simplicial complexes, flag complexes, nerves, `A(K)`,
//!   simplicial maps and contiguity.
//! - [`tower`]: Rips and Čech towers, tower axioms, pre-morphisms.
//! - [`homology`]: chain complexes over prime fields, induced maps and
//!   connectivity profiles.
//! - [`asdim`]: cover multiplicity, factorizations through low-dimensional
//!   complexes, asymptotic-dimension tables and the coarse-tree probe.
//! - [`property_a`]: ξ-certificates and their ℓ¹ realization maps.

pub mod asdim;
pub mod bits;
pub mod cayley;
pub mod clique;
pub mod complex;
pub mod dist;
pub mod error;
pub mod graph;
pub mod homology;
pub mod io;
pub mod metric;
pub mod property_a;
pub mod tower;
pub mod verdict;

pub use complex::{SimplicialComplex, SimplicialMap};
pub use dist::ExtDist;
pub use error::{Error, MetricViolation, Result};
pub use graph::Graph;
pub use metric::{Cover, FiniteMetricSpace, PointMap};
pub use tower::Tower;
pub use verdict::Verdict;
