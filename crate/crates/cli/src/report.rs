use std::fmt::Write;

use zonomon::{Log, Status, Verdict};

use crate::{EXIT_POSSIBLY_UNSAFE, EXIT_SAFE};

pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Safe => EXIT_SAFE,
        Status::PossiblyUnsafe => EXIT_POSSIBLY_UNSAFE,
    }
}

fn span(log: &Log) -> String {
    match (log.samples().first(), log.samples().last()) {
        (Some(a), Some(b)) => format!("t = {}..{}", a.time, b.time),
        _ => "empty".into(),
    }
}

fn witnesses(out: &mut String, verdict: &Verdict) {
    let live = verdict.unsafe_times().len();
    let refined = verdict.witnesses().len() - live;
    let _ = writeln!(
        out,
        "witnesses: {live} possibly unsafe, {refined} refined away"
    );
    for w in verdict.witnesses() {
        let what = if w.refined_away {
            "refined away"
        } else {
            "possibly unsafe"
        };
        let _ = writeln!(out, "  t={} {what}", w.time);
    }
}

pub fn offline(verdict: &Verdict, log: &Log, refine: bool, max_generators: usize) -> String {
    let mut out = String::from("mode: offline\n");
    let _ = writeln!(out, "log: {} samples, {}", log.len(), span(log));
    let _ = writeln!(out, "max_generators: {max_generators}");
    let _ = writeln!(out, "refinement: {}", if refine { "on" } else { "off" });
    witnesses(&mut out, verdict);
    let _ = writeln!(out, "STATUS={}", verdict.status().as_str());
    out
}

pub fn online(
    verdict: &Verdict,
    synthesized: &Log,
    timesteps: usize,
    max_skip: u64,
    max_generators: usize,
) -> String {
    let mut out = String::from("mode: online\n");
    let _ = writeln!(
        out,
        "samples taken: {} of {timesteps} timesteps",
        synthesized.len()
    );
    let times: Vec<String> = synthesized.times().iter().map(|t| t.to_string()).collect();
    let _ = writeln!(out, "sample times: {}", times.join(" "));
    let _ = writeln!(out, "max_skip: {max_skip}");
    let _ = writeln!(out, "max_generators: {max_generators}");
    witnesses(&mut out, verdict);
    let _ = writeln!(out, "STATUS={}", verdict.status().as_str());
    out
}
