//! Zonotopes, boxes, unsafe regions, and the exact intersection decision.
//!
//! All values are immutable once built and every operation is a pure
//! function.

mod feasibility;
mod interval;
mod unsafe_spec;
mod zonotope;

pub use feasibility::box_feasible;
pub use interval::{Interval, IntervalBox};
pub use unsafe_spec::{Disjunct, Halfspace, UnsafeSpec};
pub use zonotope::Zonotope;

/// The one tolerance used throughout the geometry kernel.
///
/// Equality residuals in the feasibility procedure and halfspace support
/// comparisons are accepted within `FEASIBILITY_TOLERANCE · max(1, |data|)`,
/// where `|data|` is the largest magnitude among the numbers involved. Every
/// use errs toward reporting an intersection.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-7;
