//! Visibility polygons of a point inside a simple polygon, computed with a
//! constant number of working words or with a tunable O(s)-word workspace.

pub mod algo_constant;
pub mod algo_dnc;
pub mod error;
pub mod events;
pub mod fixtures;
pub mod geometry;
pub mod oracle;
pub mod polygon_store;
pub mod rng;
pub mod run;
pub mod testgen;
pub mod visibility;

pub use error::{Result, VisError};
pub use events::VisEvent;
pub use geometry::{Orientation, Point};
pub use polygon_store::{load, BoundaryPoint, Chain, EdgePoint, PolygonHandle, QueryContext};
