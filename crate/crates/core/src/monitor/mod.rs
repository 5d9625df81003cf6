//! Offline and online monitors and the data they exchange.

mod offline;
mod online;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::flowpipe::Flowpipe;
use crate::geometry::{IntervalBox, Zonotope};
use crate::Time;

pub use offline::{hull_intersect_overapprox, monitor_offline, refine_segment};
pub use online::{monitor_online, monitor_online_with, next_trigger, OnlineConfig, Sensor};

/// A logged observation, either as a box or as a general zonotope.
#[derive(Clone, Debug, PartialEq)]
pub enum SampleSet {
    Box(IntervalBox),
    Zonotope(Zonotope),
}

impl SampleSet {
    pub fn dim(&self) -> usize {
        match self {
            SampleSet::Box(b) => b.dim(),
            SampleSet::Zonotope(z) => z.dim(),
        }
    }

    pub fn to_zonotope(&self) -> Zonotope {
        match self {
            SampleSet::Box(b) => Zonotope::from_interval(b),
            SampleSet::Zonotope(z) => z.clone(),
        }
    }

    pub fn interval_hull(&self) -> IntervalBox {
        match self {
            SampleSet::Box(b) => b.clone(),
            SampleSet::Zonotope(z) => z.interval_hull(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub time: Time,
    pub set: SampleSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogKind {
    Interval,
    Zonotope,
}

/// Time-ordered, possibly sparse and noisy samples of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct Log {
    dim: usize,
    kind: LogKind,
    samples: Vec<Sample>,
}

impl Log {
    /// Checks dimension, strictly increasing times, and that every sample
    /// matches `kind`.
    pub fn new(dim: usize, kind: LogKind, samples: Vec<Sample>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("log dimension must be positive"));
        }
        for (k, s) in samples.iter().enumerate() {
            Error::check_dim(dim, s.set.dim())?;
            let matches = matches!(
                (kind, &s.set),
                (LogKind::Interval, SampleSet::Box(_))
                    | (LogKind::Zonotope, SampleSet::Zonotope(_))
            );
            if !matches {
                return Err(Error::invalid(format!(
                    "sample {k} does not match the log kind"
                )));
            }
            if k > 0 && samples[k - 1].time >= s.time {
                return Err(Error::invalid(format!(
                    "non-increasing time {} after {}",
                    s.time,
                    samples[k - 1].time
                )));
            }
        }
        Ok(Log { dim, kind, samples })
    }

    pub fn from_boxes(dim: usize, samples: Vec<(Time, IntervalBox)>) -> Result<Self> {
        let samples = samples
            .into_iter()
            .map(|(time, b)| Sample {
                time,
                set: SampleSet::Box(b),
            })
            .collect();
        Log::new(dim, LogKind::Interval, samples)
    }

    pub fn from_zonotopes(dim: usize, samples: Vec<(Time, Zonotope)>) -> Result<Self> {
        let samples = samples
            .into_iter()
            .map(|(time, z)| Sample {
                time,
                set: SampleSet::Zonotope(z),
            })
            .collect();
        Log::new(dim, LogKind::Zonotope, samples)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> LogKind {
        self.kind
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn times(&self) -> Vec<Time> {
        self.samples.iter().map(|s| s.time).collect()
    }

    pub fn get(&self, t: Time) -> Option<&Sample> {
        self.samples
            .binary_search_by_key(&t, |s| s.time)
            .ok()
            .map(|k| &self.samples[k])
    }

    /// Keeps only the samples whose time satisfies `keep`.
    pub fn filter_times(&self, mut keep: impl FnMut(Time) -> bool) -> Log {
        Log {
            dim: self.dim,
            kind: self.kind,
            samples: self
                .samples
                .iter()
                .filter(|s| keep(s.time))
                .cloned()
                .collect(),
        }
    }
}

/// The true state at every timestep `0..=T`.
#[derive(Clone, Debug, PartialEq)]
pub struct Behavior {
    dim: usize,
    states: Vec<DVector<f64>>,
}

impl Behavior {
    pub fn new(dim: usize, states: Vec<DVector<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("behavior dimension must be positive"));
        }
        for x in &states {
            Error::check_dim(dim, x.len())?;
            if x.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid("behavior values must be finite"));
            }
        }
        Ok(Behavior { dim, states })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn states(&self) -> &[DVector<f64>] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn at(&self, t: Time) -> Option<&DVector<f64>> {
        self.states.get(usize::try_from(t).ok()?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Safe,
    PossiblyUnsafe,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Safe => "SAFE",
            Status::PossiblyUnsafe => "POSSIBLY_UNSAFE",
        }
    }
}

/// A timestep whose reach set (or sample) meets the unsafe region.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub time: Time,
    pub reach_set: Zonotope,
    /// The next sample proved the overlap unreachable.
    pub refined_away: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    witnesses: Vec<Witness>,
    segments: Vec<Flowpipe>,
}

impl Verdict {
    pub fn new(mut witnesses: Vec<Witness>, segments: Vec<Flowpipe>) -> Self {
        witnesses.sort_by_key(|w| w.time);
        Verdict {
            witnesses,
            segments,
        }
    }

    /// `PossiblyUnsafe` iff some witness survived refinement.
    pub fn status(&self) -> Status {
        if self.witnesses.iter().any(|w| !w.refined_away) {
            Status::PossiblyUnsafe
        } else {
            Status::Safe
        }
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    /// Witnesses not refined away.
    pub fn unsafe_times(&self) -> Vec<Time> {
        self.witnesses
            .iter()
            .filter(|w| !w.refined_away)
            .map(|w| w.time)
            .collect()
    }

    pub fn segments(&self) -> &[Flowpipe] {
        &self.segments
    }

    /// The reach set reported for `t`: the set from the latest segment that
    /// starts at or before `t` and still covers it.
    pub fn reach_at(&self, t: Time) -> Option<&Zonotope> {
        self.segments.iter().rev().find_map(|fp| fp.at(t))
    }

    /// First and last covered timestep.
    pub fn span(&self) -> Option<(Time, Time)> {
        let start = self.segments.iter().map(|s| s.start_time()).min()?;
        let end = self.segments.iter().map(|s| s.end_time()).max()?;
        Some((start, end))
    }
}
