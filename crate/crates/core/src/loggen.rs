//! Random behaviors and noisy, aperiodic logs drawn from the bounding model.
//!
//! Randomness comes from ChaCha8 seeded with [`GenConfig::seed`]. The state
//! trajectory uses stream 0 and the choice of logged timesteps uses stream 1,
//! so a log and its behavior agree for the same seed, and the output is the
//! same on every platform. Every draw is `lo + (hi - lo)·u` with `u` uniform
//! in `[0, 1)`.

use std::collections::BTreeMap;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::UncertainLinearSystem;
use crate::error::{Error, Result};
use crate::geometry::{IntervalBox, Zonotope};
use crate::monitor::{Behavior, Log};
use crate::Time;

const BEHAVIOR_STREAM: u64 = 0;
const LOGGING_STREAM: u64 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct GenConfig {
    pub init: Zonotope,
    /// Last timestep `T`; the run covers `0..=T`.
    pub length: Time,
    pub log_probability: f64,
    pub noise: Vec<f64>,
    pub seed: u64,
}

impl GenConfig {
    fn validate(&self, sys: &UncertainLinearSystem) -> Result<()> {
        Error::check_dim(sys.dim(), self.init.dim())?;
        Error::check_dim(sys.dim(), self.noise.len())?;
        if !(0.0..=1.0).contains(&self.log_probability) {
            return Err(Error::invalid("log probability must lie in [0, 1]"));
        }
        if self.length == 0 {
            return Err(Error::invalid("length must be at least 1"));
        }
        if self.noise.iter().any(|r| !r.is_finite() || *r < 0.0) {
            return Err(Error::invalid(
                "noise half-widths must be finite and nonnegative",
            ));
        }
        Ok(())
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn uniform(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * r.random::<f64>()
}

/// One admissible trajectory: uniform start in `init`, fresh uniform `ΔA`
/// at every step.
pub fn simulate_behavior(sys: &UncertainLinearSystem, cfg: &GenConfig) -> Result<Behavior> {
    cfg.validate(sys)?;
    let mut r = rng(cfg.seed, BEHAVIOR_STREAM);
    let xi = DVector::from_iterator(
        cfg.init.num_generators(),
        (0..cfg.init.num_generators()).map(|_| uniform(&mut r, -1.0, 1.0)),
    );
    let mut x = cfg.init.point_at(&xi)?;
    let mut states = Vec::with_capacity(cfg.length as usize + 1);
    states.push(x.clone());
    for _ in 0..cfg.length {
        let delta: BTreeMap<(usize, usize), f64> = sys
            .uncertainty()
            .iter()
            .map(|(&cell, iv)| (cell, uniform(&mut r, iv.lo, iv.hi)))
            .collect();
        x = sys.apply(&delta, &x);
        states.push(x.clone());
    }
    Behavior::new(sys.dim(), states)
}

/// A behavior together with a log of it: time 0 is always logged, every
/// other step with probability `log_probability`, each as a box of
/// half-width `noise` around the true state.
pub fn generate(sys: &UncertainLinearSystem, cfg: &GenConfig) -> Result<(Behavior, Log)> {
    let beh = simulate_behavior(sys, cfg)?;
    let mut r = rng(cfg.seed, LOGGING_STREAM);
    let mut samples = Vec::new();
    for (t, x) in beh.states().iter().enumerate() {
        let logged = t == 0 || r.random::<f64>() < cfg.log_probability;
        if logged {
            let b = IntervalBox::around(x, &cfg.noise)?;
            debug_assert!(b.contains_point(x));
            samples.push((t as Time, b));
        }
    }
    let log = Log::from_boxes(sys.dim(), samples)?;
    Ok((beh, log))
}

pub fn generate_log(sys: &UncertainLinearSystem, cfg: &GenConfig) -> Result<Log> {
    generate(sys, cfg).map(|(_, log)| log)
}
