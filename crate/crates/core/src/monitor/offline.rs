//! Offline monitoring of a recorded log.
//!
//! Between two consecutive samples the state is only known to lie in the
//! flowpipe started from the earlier sample. Every gap timestep whose reach
//! set meets the unsafe region is a potential violation. With refinement on,
//! such a hit is discarded when no state in the unsafe overlap can evolve into
//! the next sample.

use rayon::prelude::*;

use crate::dynamics::UncertainLinearSystem;
use crate::error::{Error, Result};
use crate::flowpipe::{compute_flowpipe, Flowpipe};
use crate::geometry::{Disjunct, UnsafeSpec, Zonotope};
use crate::Time;

use super::{Log, Verdict, Witness};

/// Monitors `log` against `u`.
///
/// Sample times are judged on the samples themselves and are never refined.
/// Nothing is extrapolated past the last sample. One segment is reported per
/// sample: the flowpipe up to the next sample time, or the bare sample for
/// the last one.
pub fn monitor_offline(
    sys: &UncertainLinearSystem,
    log: &Log,
    u: &UnsafeSpec,
    max_generators: usize,
    refine: bool,
) -> Result<Verdict> {
    if log.is_empty() {
        return Err(Error::invalid("cannot monitor an empty log"));
    }
    Error::check_dim(sys.dim(), log.dim())?;
    Error::check_dim(sys.dim(), u.dim())?;

    let samples = log.samples();
    let per_sample: Vec<Result<(Flowpipe, Vec<Witness>)>> = (0..samples.len())
        .into_par_iter()
        .map(|k| {
            let start = samples[k].set.to_zonotope();
            let t_k = samples[k].time;
            let mut witnesses = Vec::new();
            if u.intersects(&start)? {
                witnesses.push(Witness {
                    time: t_k,
                    reach_set: start.clone(),
                    refined_away: false,
                });
            }
            let Some(next) = samples.get(k + 1) else {
                return Ok((Flowpipe::new(t_k, vec![start])?, witnesses));
            };
            let fp = compute_flowpipe(sys, &start, t_k, next.time - t_k, max_generators)?;
            let next_set = next.set.to_zonotope();
            for (t, z) in fp.iter() {
                if t == t_k || t == next.time || !u.intersects(z)? {
                    continue;
                }
                let refined_away =
                    refine && refine_segment(sys, &fp, t, u, &next_set, next.time, max_generators)?;
                witnesses.push(Witness {
                    time: t,
                    reach_set: z.clone(),
                    refined_away,
                });
            }
            Ok((fp, witnesses))
        })
        .collect();

    let mut segments = Vec::with_capacity(samples.len());
    let mut witnesses = Vec::new();
    for r in per_sample {
        let (fp, w) = r?;
        segments.push(fp);
        witnesses.extend(w);
    }
    Ok(Verdict::new(witnesses, segments))
}

/// Whether the unsafe hit at `hit_time` is unreachable given the next sample.
///
/// For every disjunct meeting the reach set at `hit_time`, a box around the
/// overlap is propagated to `next_time`. The hit is refined away only if none
/// of those propagated sets meets `next_sample`: any trajectory through the
/// overlap would otherwise contradict the log.
pub fn refine_segment(
    sys: &UncertainLinearSystem,
    fp: &Flowpipe,
    hit_time: Time,
    u: &UnsafeSpec,
    next_sample: &Zonotope,
    next_time: Time,
    max_generators: usize,
) -> Result<bool> {
    if hit_time <= fp.start_time() || hit_time >= next_time {
        return Err(Error::invalid(format!(
            "hit time {hit_time} not strictly between {} and {next_time}",
            fp.start_time()
        )));
    }
    let reach = fp
        .at(hit_time)
        .ok_or_else(|| Error::invalid(format!("hit time {hit_time} outside the flowpipe")))?;
    for d in u.disjuncts() {
        let Some(overlap) = hull_intersect_overapprox(reach, d)? else {
            continue;
        };
        let forward = compute_flowpipe(
            sys,
            &overlap,
            hit_time,
            next_time - hit_time,
            max_generators,
        )?;
        let landing = forward.sets().last().expect("nonempty flowpipe");
        if landing.intersects(next_sample)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Axis-aligned zonotope containing `z ∩ d`, or `None` when they are
/// disjoint.
pub fn hull_intersect_overapprox(z: &Zonotope, d: &Disjunct) -> Result<Option<Zonotope>> {
    Error::check_dim(z.dim(), d.dim())?;
    if !d.intersects(z)? {
        return Ok(None);
    }
    let hull = z.interval_hull();
    let clipped = match d {
        Disjunct::Halfspace(h) => h.clip_box(&hull)?,
        Disjunct::Zonotope(r) => hull.intersection(&r.interval_hull()),
    };
    Ok(clipped.map(|b| Zonotope::from_interval(&b)))
}
