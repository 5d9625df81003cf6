//! Multi-step reachability and scanning against the unsafe region.

use crate::dynamics::UncertainLinearSystem;
use crate::error::{Error, Result};
use crate::geometry::{UnsafeSpec, Zonotope};
use crate::Time;

/// Reach sets at consecutive timesteps; `sets[k]` holds time `start_time + k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Flowpipe {
    start_time: Time,
    sets: Vec<Zonotope>,
}

impl Flowpipe {
    pub fn new(start_time: Time, sets: Vec<Zonotope>) -> Result<Self> {
        let Some(first) = sets.first() else {
            return Err(Error::invalid("flowpipe needs at least one set"));
        };
        let n = first.dim();
        for s in &sets {
            Error::check_dim(n, s.dim())?;
        }
        Ok(Flowpipe { start_time, sets })
    }

    pub fn start_time(&self) -> Time {
        self.start_time
    }

    /// Last covered timestep.
    pub fn end_time(&self) -> Time {
        self.start_time + self.sets.len() as Time - 1
    }

    pub fn sets(&self) -> &[Zonotope] {
        &self.sets
    }

    pub fn dim(&self) -> usize {
        self.sets[0].dim()
    }

    pub fn at(&self, t: Time) -> Option<&Zonotope> {
        t.checked_sub(self.start_time)
            .and_then(|k| self.sets.get(usize::try_from(k).ok()?))
    }

    /// `(time, set)` pairs in time order.
    pub fn iter(&self) -> impl Iterator<Item = (Time, &Zonotope)> + '_ {
        self.sets
            .iter()
            .enumerate()
            .map(move |(k, z)| (self.start_time + k as Time, z))
    }

    /// Keeps the sets up to and including time `t`.
    pub fn truncate_to(&mut self, t: Time) {
        if t >= self.start_time {
            self.sets.truncate((t - self.start_time + 1) as usize);
        }
    }
}

/// `sets[0] = init`, `sets[k+1] = step(sets[k])`, `steps + 1` sets in total.
pub fn compute_flowpipe(
    sys: &UncertainLinearSystem,
    init: &Zonotope,
    start_time: Time,
    steps: u64,
    max_generators: usize,
) -> Result<Flowpipe> {
    Error::check_dim(sys.dim(), init.dim())?;
    let mut sets = Vec::with_capacity(steps as usize + 1);
    sets.push(init.clone());
    for _ in 0..steps {
        let next = sys.step(sets.last().expect("nonempty"), max_generators)?;
        sets.push(next);
    }
    Ok(Flowpipe { start_time, sets })
}

/// Earliest timestep whose reach set meets `u`.
pub fn first_unsafe(fp: &Flowpipe, u: &UnsafeSpec) -> Result<Option<Time>> {
    Error::check_dim(fp.dim(), u.dim())?;
    for (t, z) in fp.iter() {
        if u.intersects(z)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Every timestep whose reach set meets `u`, in time order.
pub fn unsafe_hits(fp: &Flowpipe, u: &UnsafeSpec) -> Result<Vec<Time>> {
    Error::check_dim(fp.dim(), u.dim())?;
    let mut hits = Vec::new();
    for (t, z) in fp.iter() {
        if u.intersects(z)? {
            hits.push(t);
        }
    }
    Ok(hits)
}
