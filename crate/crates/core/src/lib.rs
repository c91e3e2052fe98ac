//! Exact computations in hyperspaces of closed subsets of finite ray-graphs.
//!
//! * [`graph`]: ray-graphs with the arc-length metric and exact point distances.
//! * [`subsets`]: canonical closed subsets, component counting, unbounded direction sets.
//! * [`metric`]: exact (extended-valued) Hausdorff distance via piecewise-linear profiles.
//! * [`homotopy`]: explicit paths to the canonical element of a component, and to the whole space.
//! * [`vietoris`]: ball-generated open sets, Vietoris membership, sampled continuity witnesses.
//! * [`wedge`]: symbolic cell models of hyperspaces of wedge products.
//! * [`oracle`]: brute-force grid ground truth for component counts and distances.

pub mod error;
pub mod fixtures;
pub mod graph;
pub mod homotopy;
pub mod metric;
pub mod oracle;
pub mod random;
pub mod rational;
pub mod subsets;
pub mod vietoris;
pub mod wedge;

mod union_find;

pub use error::{Error, ErrorClass, Result};
pub use graph::{parse_graph, ElementId, GraphPoint, RayGraph, VertexId};
pub use rational::{ExtendedDistance, Q};
pub use subsets::{parse_set, ClosedSubset, DirectionSet, Interval};
