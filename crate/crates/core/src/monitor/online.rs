//! Online monitoring with risk-triggered sampling.
//!
//! After each reading the monitor computes the flowpipe ahead of it and
//! schedules the next reading one step before the first timestep at which
//! the unsafe region becomes reachable, or after `max_skip` steps when it
//! never does.

use nalgebra::DVector;

use crate::dynamics::UncertainLinearSystem;
use crate::error::{Error, Result};
use crate::flowpipe::{compute_flowpipe, Flowpipe};
use crate::geometry::{IntervalBox, UnsafeSpec, Zonotope};
use crate::Time;

use super::{Behavior, Log, Verdict, Witness};

#[derive(Clone, Debug, PartialEq)]
pub struct OnlineConfig {
    /// Per-dimension sensor half-width added around each reading.
    pub noise: Vec<f64>,
    /// Longest allowed gap between readings.
    pub max_skip: u64,
    pub max_generators: usize,
}

impl OnlineConfig {
    pub fn validate(&self, dim: usize) -> Result<()> {
        Error::check_dim(dim, self.noise.len())?;
        if self.noise.iter().any(|r| !r.is_finite() || *r < 0.0) {
            return Err(Error::invalid(
                "noise half-widths must be finite and nonnegative",
            ));
        }
        if self.max_skip == 0 {
            return Err(Error::invalid("max_skip must be at least 1"));
        }
        if self.max_generators < dim {
            return Err(Error::invalid(
                "max_generators must be at least the dimension",
            ));
        }
        Ok(())
    }
}

/// Source of state readings. The monitor calls [`Sensor::read`] only at the
/// timesteps it decides to sample.
pub trait Sensor {
    fn dim(&self) -> usize;

    /// Last timestep of the run.
    fn horizon(&self) -> Time;

    fn read(&mut self, t: Time) -> Result<DVector<f64>>;
}

impl Sensor for &Behavior {
    fn dim(&self) -> usize {
        Behavior::dim(self)
    }

    fn horizon(&self) -> Time {
        self.len().saturating_sub(1) as Time
    }

    fn read(&mut self, t: Time) -> Result<DVector<f64>> {
        self.at(t)
            .cloned()
            .ok_or_else(|| Error::invalid(format!("no state at time {t}")))
    }
}

/// Time of the next reading after a sample at `t_k`, with `remaining` steps
/// left in the run. Always in `(t_k, t_k + min(max_skip, remaining)]`.
pub fn next_trigger(
    sys: &UncertainLinearSystem,
    current_sample: &Zonotope,
    t_k: Time,
    u: &UnsafeSpec,
    cfg: &OnlineConfig,
    remaining: u64,
) -> Result<Time> {
    plan_segment(sys, current_sample, t_k, u, cfg, remaining).map(|(t, _)| t)
}

/// Trigger time plus the flowpipe from `t_k` up to it.
fn plan_segment(
    sys: &UncertainLinearSystem,
    current_sample: &Zonotope,
    t_k: Time,
    u: &UnsafeSpec,
    cfg: &OnlineConfig,
    remaining: u64,
) -> Result<(Time, Flowpipe)> {
    if remaining == 0 {
        return Err(Error::invalid(
            "no timesteps remain after the current sample",
        ));
    }
    let horizon = cfg.max_skip.min(remaining);
    let mut fp = compute_flowpipe(sys, current_sample, t_k, horizon, cfg.max_generators)?;
    let mut first_hit = None;
    for (t, z) in fp.iter().skip(1) {
        if u.intersects(z)? {
            first_hit = Some(t);
            break;
        }
    }
    let trigger = match first_hit {
        None => t_k + horizon,
        Some(hit) if hit - 1 > t_k => hit - 1,
        Some(_) => t_k + 1,
    };
    fp.truncate_to(trigger);
    Ok((trigger, fp))
}

/// Monitors a fully recorded behavior, reading it only at trigger times.
///
/// Returns the verdict and the synthesized log of readings taken.
pub fn monitor_online(
    sys: &UncertainLinearSystem,
    beh: &Behavior,
    u: &UnsafeSpec,
    cfg: &OnlineConfig,
) -> Result<(Verdict, Log)> {
    if beh.is_empty() {
        return Err(Error::invalid("cannot monitor an empty behavior"));
    }
    let mut sensor = beh;
    monitor_online_with(sys, &mut sensor, u, cfg)
}

pub fn monitor_online_with<S: Sensor>(
    sys: &UncertainLinearSystem,
    sensor: &mut S,
    u: &UnsafeSpec,
    cfg: &OnlineConfig,
) -> Result<(Verdict, Log)> {
    let n = sys.dim();
    Error::check_dim(n, sensor.dim())?;
    Error::check_dim(n, u.dim())?;
    cfg.validate(n)?;

    let horizon = sensor.horizon();
    let mut readings = Vec::new();
    let mut witnesses = Vec::new();
    let mut segments = Vec::new();

    let take = |t: Time,
                sensor: &mut S,
                readings: &mut Vec<(Time, IntervalBox)>,
                witnesses: &mut Vec<Witness>|
     -> Result<Zonotope> {
        let b = IntervalBox::around(&sensor.read(t)?, &cfg.noise)?;
        let z = Zonotope::from_interval(&b);
        if u.intersects(&z)? {
            witnesses.push(Witness {
                time: t,
                reach_set: z.clone(),
                refined_away: false,
            });
        }
        readings.push((t, b));
        Ok(z)
    };

    let mut t = 0;
    let mut current = take(0, sensor, &mut readings, &mut witnesses)?;
    while t < horizon {
        let (trigger, fp) = plan_segment(sys, &current, t, u, cfg, horizon - t)?;
        segments.push(fp);
        current = take(trigger, sensor, &mut readings, &mut witnesses)?;
        t = trigger;
    }
    segments.push(Flowpipe::new(t, vec![current])?);

    let log = Log::from_boxes(n, readings)?;
    Ok((Verdict::new(witnesses, segments), log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Halfspace;
    use crate::monitor::Status;

    fn behavior(values: impl IntoIterator<Item = f64>) -> Behavior {
        Behavior::new(
            1,
            values
                .into_iter()
                .map(|x| DVector::from_vec(vec![x]))
                .collect(),
        )
        .unwrap()
    }

    fn above(b: f64) -> UnsafeSpec {
        UnsafeSpec::halfspace(Halfspace::at_least(1, 0, b).unwrap())
    }

    fn cfg(noise: f64, max_skip: u64) -> OnlineConfig {
        OnlineConfig {
            noise: vec![noise],
            max_skip,
            max_generators: 5,
        }
    }

    #[test]
    fn max_skip_one_samples_everything() {
        let sys = UncertainLinearSystem::scalar(0.9, None).unwrap();
        let beh = behavior((0..20).map(|t| 0.9f64.powi(t)));
        let (verdict, log) = monitor_online(&sys, &beh, &above(10.0), &cfg(0.0, 1)).unwrap();
        assert_eq!(log.times(), (0..20).collect::<Vec<_>>());
        assert_eq!(verdict.status(), Status::Safe);
    }

    #[test]
    fn contractive_scenario_samples_three_times() {
        let sys = UncertainLinearSystem::scalar(0.5, None).unwrap();
        let beh = behavior((0..=100).map(|t| 0.5f64.powi(t)));
        let (verdict, log) = monitor_online(&sys, &beh, &above(10.0), &cfg(0.01, 50)).unwrap();
        assert_eq!(log.times(), vec![0, 50, 100]);
        assert_eq!(verdict.status(), Status::Safe);
        assert_eq!(verdict.span(), Some((0, 100)));
    }

    #[test]
    fn trigger_rule() {
        let sys = UncertainLinearSystem::scalar(2.0, None).unwrap();
        let start = Zonotope::point(DVector::from_vec(vec![1.0])).unwrap();
        let c = cfg(0.0, 20);
        // Values 1, 2, 4, ..., 128 at offsets 0..=7.
        assert_eq!(
            next_trigger(&sys, &start, 10, &above(1e9), &c, 5).unwrap(),
            15
        );
        assert_eq!(
            next_trigger(&sys, &start, 10, &above(1e9), &c, 100).unwrap(),
            30
        );
        assert_eq!(
            next_trigger(&sys, &start, 10, &above(2.0), &c, 100).unwrap(),
            11
        );
        assert_eq!(
            next_trigger(&sys, &start, 10, &above(128.0), &c, 100).unwrap(),
            16
        );
        assert!(next_trigger(&sys, &start, 10, &above(2.0), &c, 0).is_err());
    }

    #[test]
    fn unsafe_reading_is_a_witness() {
        let sys = UncertainLinearSystem::scalar(1.1, Some((-0.05, 0.05))).unwrap();
        let beh = behavior((0..=10).map(|t| 1.1f64.powi(t)));
        let (verdict, log) = monitor_online(&sys, &beh, &above(2.0), &cfg(0.01, 50)).unwrap();
        assert_eq!(verdict.status(), Status::PossiblyUnsafe);
        let first = verdict.unsafe_times()[0];
        assert_eq!(first, 8);
        assert!(log.get(8).is_some());
    }

    #[test]
    fn rejects_bad_config() {
        let sys = UncertainLinearSystem::scalar(1.0, None).unwrap();
        let beh = behavior([1.0, 1.0]);
        assert!(monitor_online(&sys, &beh, &above(5.0), &cfg(0.0, 0)).is_err());
        assert!(monitor_online(&sys, &beh, &above(5.0), &cfg(-1.0, 3)).is_err());
        let empty = Behavior::new(1, vec![]).unwrap();
        assert!(monitor_online(&sys, &empty, &above(5.0), &cfg(0.0, 3)).is_err());
    }
}
