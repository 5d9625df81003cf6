//! Safety monitoring of black-box cyber-physical systems with a bounding model.
//!
//! The bounding model is an uncertain discrete-time linear system: a nominal
//! update matrix whose cells may be perturbed within intervals at every step.
//! Reachable sets of that model are computed as zonotopes and used to
//!
//! * fill the gaps of an aperiodic, noisy log ([`monitor_offline`]), and
//! * decide when the next sample has to be taken ([`monitor_online`]).
//!
//! Verdicts are either [`Status::Safe`], a guarantee relative to the bounding
//! model, or [`Status::PossiblyUnsafe`].

pub mod dynamics;
pub mod error;
pub mod flowpipe;
pub mod formats;
pub mod geometry;
pub mod loggen;
pub mod monitor;

pub use dynamics::{UncertainLinearSystem, DEFAULT_GENERATORS_PER_DIM};
pub use error::{Error, FormatError, FormatErrorKind, Result};
pub use flowpipe::{compute_flowpipe, first_unsafe, unsafe_hits, Flowpipe};
pub use geometry::{
    Disjunct, Halfspace, Interval, IntervalBox, UnsafeSpec, Zonotope, FEASIBILITY_TOLERANCE,
};
pub use loggen::{generate, generate_log, simulate_behavior, GenConfig};
pub use monitor::{
    hull_intersect_overapprox, monitor_offline, monitor_online, monitor_online_with, next_trigger,
    refine_segment, Behavior, Log, LogKind, OnlineConfig, Sample, SampleSet, Sensor, Status,
    Verdict, Witness,
};

/// Discrete timestep index.
pub type Time = u64;
