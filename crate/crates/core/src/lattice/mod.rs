//! Base-lattice walks on Z and Z²: sampling, range, inner boundary,
//! local times and dilution.

mod point;
mod pointset;
mod tracker;
mod walk;

pub use point::{l1_segment, Point};
pub use pointset::{dilute, inner_boundary, keep, PointSet};
pub use tracker::{RangeSnapshot, RangeTracker};
pub use walk::{
    generates_semigroup, local_time_power_sum, sample_walk, thin_points, visit_counts, Base, MomentTag, PowerTail,
    StepDistribution, StepSampler, Trajectory, VisitCounts,
};

#[cfg(test)]
mod tests;
