//! Bundled case studies.
//!
//! Each case ships a representative model, an unsafe region, a configuration
//! file, one behavior, and four logs of that behavior: frequent or sporadic
//! sampling, each with low or high sample noise. All of them are generated
//! from the configuration with its seed; passing another seed regenerates
//! them instead of using the bundled files.

use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use zonomon::formats::{
    export_plot_csv, parse_mbeh, parse_mlog, parse_model, parse_unsafe, write_mlog, ModelFile,
};
use zonomon::{generate, Behavior, GenConfig, Log, Status, UnsafeSpec};

use crate::pipeline::{
    broadcast, parse_init, plot_svg, run_offline, run_online, write_outputs, Loaded,
};
use crate::report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseName {
    Anesthesia,
    Acc,
}

impl CaseName {
    pub const ALL: [CaseName; 2] = [CaseName::Anesthesia, CaseName::Acc];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseName::Anesthesia => "anesthesia",
            CaseName::Acc => "acc",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Variant {
    Offline(u8),
    Online,
    Compare,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CaseConfig {
    pub description: String,
    /// State variable drawn in the plots (0-based).
    pub plot_dim: usize,
    /// `value` or `lo:hi` per variable.
    pub init: String,
    pub length: u64,
    pub seed: u64,
    pub online: OnlineSection,
    pub quadrant: Vec<Quadrant>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OnlineSection {
    pub noise: Vec<f64>,
    pub max_skip: u64,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Quadrant {
    pub label: String,
    pub probability: f64,
    pub noise: Vec<f64>,
}

struct Texts {
    config: &'static str,
    model: &'static str,
    unsafe_spec: &'static str,
    behavior: &'static str,
    logs: [&'static str; 4],
}

macro_rules! bundle {
    ($dir:literal) => {
        Texts {
            config: include_str!(concat!("../cases/", $dir, "/case.toml")),
            model: include_str!(concat!("../cases/", $dir, "/model.model")),
            unsafe_spec: include_str!(concat!("../cases/", $dir, "/unsafe.unsafe")),
            behavior: include_str!(concat!("../cases/", $dir, "/behavior.mbeh")),
            logs: [
                include_str!(concat!("../cases/", $dir, "/offline1.mlog")),
                include_str!(concat!("../cases/", $dir, "/offline2.mlog")),
                include_str!(concat!("../cases/", $dir, "/offline3.mlog")),
                include_str!(concat!("../cases/", $dir, "/offline4.mlog")),
            ],
        }
    };
}

fn texts(name: CaseName) -> Texts {
    match name {
        CaseName::Anesthesia => bundle!("anesthesia"),
        CaseName::Acc => bundle!("acc"),
    }
}

/// Everything a case run needs.
pub struct CaseData {
    pub config: CaseConfig,
    pub model: ModelFile,
    pub unsafe_spec: UnsafeSpec,
    pub behavior: Behavior,
    pub logs: Vec<Log>,
}

fn setup(name: CaseName) -> Result<(CaseConfig, ModelFile, UnsafeSpec)> {
    let t = texts(name);
    let ctx = |what: &str| format!("bundled {what} of case `{}`", name.as_str());
    let config: CaseConfig = toml::from_str(t.config).with_context(|| ctx("configuration"))?;
    if config.quadrant.len() != 4 {
        bail!("{} must define exactly 4 quadrants", ctx("configuration"));
    }
    let model = parse_model(t.model).with_context(|| ctx("model"))?;
    let unsafe_spec = parse_unsafe(t.unsafe_spec).with_context(|| ctx("unsafe region"))?;
    Ok((config, model, unsafe_spec))
}

/// The bundled files, parsed.
pub fn bundled(name: CaseName) -> Result<CaseData> {
    let (config, model, unsafe_spec) = setup(name)?;
    let t = texts(name);
    let behavior = parse_mbeh(t.behavior).context("bundled behavior")?;
    let logs = t
        .logs
        .iter()
        .map(|s| parse_mlog(s).context("bundled log"))
        .collect::<Result<Vec<_>>>()?;
    Ok(CaseData {
        config,
        model,
        unsafe_spec,
        behavior,
        logs,
    })
}

/// Behavior and logs regenerated from the configuration with `seed`.
///
/// Every quadrant shares the behavior: the trajectory depends only on the
/// seed, not on the logging probability or noise.
pub fn generated(name: CaseName, seed: u64) -> Result<CaseData> {
    let (config, model, unsafe_spec) = setup(name)?;
    let n = model.system.dim();
    let init = parse_init(&config.init, n)?;
    let mut behavior = None;
    let mut logs = Vec::with_capacity(4);
    for q in &config.quadrant {
        let cfg = GenConfig {
            init: init.clone(),
            length: config.length,
            log_probability: q.probability,
            noise: broadcast(&q.noise, n, "quadrant noise")?,
            seed,
        };
        let (beh, log) = generate(&model.system, &cfg)?;
        behavior.get_or_insert(beh);
        logs.push(log);
    }
    Ok(CaseData {
        config,
        model,
        unsafe_spec,
        behavior: behavior.expect("four quadrants"),
        logs,
    })
}

/// Bundled text of the behavior and the four logs, for consistency checks.
pub fn bundled_texts(name: CaseName) -> (&'static str, [&'static str; 4]) {
    let t = texts(name);
    (t.behavior, t.logs)
}

fn worst(a: Status, b: Status) -> Status {
    if a == Status::PossiblyUnsafe || b == Status::PossiblyUnsafe {
        Status::PossiblyUnsafe
    } else {
        Status::Safe
    }
}

pub fn run_case(
    name: CaseName,
    variant: Variant,
    seed: Option<u64>,
    refine: bool,
    out_dir: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    let data = match seed {
        Some(s) => generated(name, s)?,
        None => bundled(name)?,
    };
    let dim = data.config.plot_dim;
    let sys = Loaded {
        max_generators: data.model.max_generators,
        model: data.model,
        unsafe_spec: data.unsafe_spec,
    };
    let u = &sys.unsafe_spec;
    writeln!(out, "case: {}", name.as_str())?;

    let status = match variant {
        Variant::Offline(q) => {
            let k = usize::from(q) - 1;
            let log = &data.logs[k];
            writeln!(out, "quadrant {q}: {}", data.config.quadrant[k].label)?;
            let verdict = run_offline(&sys, log, refine)?;
            let summary = report::offline(&verdict, log, refine, sys.max_generators);
            if let Some(dir) = out_dir {
                write_outputs(
                    dir,
                    &[
                        ("verdict.txt", &summary),
                        ("log.mlog", &write_mlog(log)),
                        ("plot.csv", &export_plot_csv(&verdict, log, u, dim)?),
                        (
                            "plot.svg",
                            &plot_svg(&[("offline", &verdict, log)], u, dim)?,
                        ),
                    ],
                )?;
            }
            out.write_all(summary.as_bytes())?;
            verdict.status()
        }
        Variant::Online => {
            let cfg = &data.config.online;
            let (verdict, synth) = run_online(&sys, &data.behavior, &cfg.noise, cfg.max_skip)?;
            let summary = report::online(
                &verdict,
                &synth,
                data.behavior.len(),
                cfg.max_skip,
                sys.max_generators,
            );
            if let Some(dir) = out_dir {
                write_outputs(
                    dir,
                    &[
                        ("verdict.txt", &summary),
                        ("synth.mlog", &write_mlog(&synth)),
                        ("plot.csv", &export_plot_csv(&verdict, &synth, u, dim)?),
                        (
                            "plot.svg",
                            &plot_svg(&[("online", &verdict, &synth)], u, dim)?,
                        ),
                    ],
                )?;
            }
            out.write_all(summary.as_bytes())?;
            verdict.status()
        }
        Variant::Compare => {
            let log = &data.logs[0];
            let off = run_offline(&sys, log, refine)?;
            let cfg = &data.config.online;
            let (on, synth) = run_online(&sys, &data.behavior, &cfg.noise, cfg.max_skip)?;
            let summary = format!(
                "{}\n{}",
                report::offline(&off, log, refine, sys.max_generators),
                report::online(
                    &on,
                    &synth,
                    data.behavior.len(),
                    cfg.max_skip,
                    sys.max_generators
                )
            );
            if let Some(dir) = out_dir {
                let svg = plot_svg(&[("offline", &off, log), ("online", &on, &synth)], u, dim)?;
                write_outputs(
                    dir,
                    &[
                        ("verdict.txt", &summary),
                        ("synth.mlog", &write_mlog(&synth)),
                        ("offline.csv", &export_plot_csv(&off, log, u, dim)?),
                        ("online.csv", &export_plot_csv(&on, &synth, u, dim)?),
                        ("plot.svg", &svg),
                    ],
                )?;
            }
            out.write_all(summary.as_bytes())?;
            worst(off.status(), on.status())
        }
    };
    Ok(report::exit_code(status))
}
