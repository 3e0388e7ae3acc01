//! Elastic time-series similarity measures, graph-duality lower bounds, and
//! the exact workloads built on them (lower-bound-filtered 1-NN search and
//! exact DBSCAN), plus a brute-force edge-cover oracle for verifying every
//! bound at desk scale.

pub mod bounds;
pub mod dataset;
pub mod dbscan;
pub mod dp;
pub mod envelope;
pub mod error;
pub mod measures;
pub mod oracle;
pub mod search;
pub mod series;

pub use bounds::{BoundKind, BoundResult, BoundaryMode};
pub use dp::{elastic_distance, elastic_distance_ea, DPResult};
pub use envelope::{build_envelope, weight_upper_envelope, Envelope};
pub use error::{Error, Result};
pub use measures::{MeasureKind, MeasureParams, MeasureSpec};
pub use series::{TimeSeries, Window};
