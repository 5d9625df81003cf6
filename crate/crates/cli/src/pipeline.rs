use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use nalgebra::DVector;
use zonomon::formats::{
    export_plot_csv, export_plot_svg, parse_mbeh, parse_mlog, parse_model, parse_unsafe,
    write_mbeh, write_mlog, ModelFile, PlotLayer,
};
use zonomon::{
    generate, monitor_offline, monitor_online, Behavior, GenConfig, IntervalBox, Log, OnlineConfig,
    UnsafeSpec, Verdict, Zonotope,
};

use crate::report;

pub struct SystemPaths<'a> {
    pub model: &'a Path,
    pub unsafe_path: &'a Path,
    pub max_generators: Option<usize>,
}

fn read(path: &Path, what: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {what} `{}`", path.display()))
}

pub fn load_model(path: &Path) -> Result<ModelFile> {
    parse_model(&read(path, "model")?).with_context(|| format!("model `{}`", path.display()))
}

pub fn load_unsafe(path: &Path) -> Result<UnsafeSpec> {
    parse_unsafe(&read(path, "unsafe region")?)
        .with_context(|| format!("unsafe region `{}`", path.display()))
}

pub fn load_log(path: &Path) -> Result<Log> {
    parse_mlog(&read(path, "log")?).with_context(|| format!("log `{}`", path.display()))
}

pub fn load_behavior(path: &Path) -> Result<Behavior> {
    parse_mbeh(&read(path, "behavior")?).with_context(|| format!("behavior `{}`", path.display()))
}

pub fn write_outputs(dir: &Path, files: &[(&str, &str)]) -> Result<()> {
    fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory `{}`", dir.display()))?;
    for (name, content) in files {
        let path = dir.join(name);
        fs::write(&path, content).with_context(|| format!("cannot write `{}`", path.display()))?;
    }
    Ok(())
}

/// One value for every variable, or exactly one per variable.
pub fn broadcast(values: &[f64], n: usize, what: &str) -> Result<Vec<f64>> {
    match values.len() {
        1 => Ok(vec![values[0]; n]),
        k if k == n => Ok(values.to_vec()),
        k => bail!("{what} has {k} values; expected 1 or {n}"),
    }
}

/// Parses `v` or `lo:hi` per variable, comma separated, into a box.
pub fn parse_init(spec: &str, n: usize) -> Result<Zonotope> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != n {
        bail!("initial set has {} entries; expected {n}", parts.len());
    }
    let mut lower = Vec::with_capacity(n);
    let mut upper = Vec::with_capacity(n);
    for p in parts {
        let (lo, hi) = match p.split_once(':') {
            Some((a, b)) => (a, b),
            None => (p, p),
        };
        let parse = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .with_context(|| format!("invalid number `{s}` in initial set"))
        };
        lower.push(parse(lo)?);
        upper.push(parse(hi)?);
    }
    let b = IntervalBox::new(DVector::from_vec(lower), DVector::from_vec(upper))
        .context("initial set")?;
    Ok(Zonotope::from_interval(&b))
}

pub struct Loaded {
    pub model: ModelFile,
    pub unsafe_spec: UnsafeSpec,
    pub max_generators: usize,
}

pub fn load_system(paths: &SystemPaths<'_>) -> Result<Loaded> {
    let model = load_model(paths.model)?;
    let unsafe_spec = load_unsafe(paths.unsafe_path)?;
    if unsafe_spec.dim() != model.system.dim() {
        bail!(
            "unsafe region has dimension {}, model has {}",
            unsafe_spec.dim(),
            model.system.dim()
        );
    }
    let max_generators = paths.max_generators.unwrap_or(model.max_generators);
    Ok(Loaded {
        model,
        unsafe_spec,
        max_generators,
    })
}

pub fn run_offline(sys: &Loaded, log: &Log, refine: bool) -> Result<Verdict> {
    Ok(monitor_offline(
        &sys.model.system,
        log,
        &sys.unsafe_spec,
        sys.max_generators,
        refine,
    )?)
}

pub fn run_online(
    sys: &Loaded,
    beh: &Behavior,
    noise: &[f64],
    max_skip: u64,
) -> Result<(Verdict, Log)> {
    let cfg = OnlineConfig {
        noise: broadcast(noise, sys.model.system.dim(), "--noise")?,
        max_skip,
        max_generators: sys.max_generators,
    };
    Ok(monitor_online(
        &sys.model.system,
        beh,
        &sys.unsafe_spec,
        &cfg,
    )?)
}

pub fn offline(
    paths: &SystemPaths<'_>,
    log_path: &Path,
    refine: bool,
    out_dir: Option<&Path>,
    dim: usize,
    out: &mut dyn Write,
) -> Result<i32> {
    let sys = load_system(paths)?;
    let log = load_log(log_path)?;
    let verdict = run_offline(&sys, &log, refine)?;
    let summary = report::offline(&verdict, &log, refine, sys.max_generators);
    if let Some(dir) = out_dir {
        let csv = export_plot_csv(&verdict, &log, &sys.unsafe_spec, dim)?;
        let svg = plot_svg(&[("offline", &verdict, &log)], &sys.unsafe_spec, dim)?;
        write_outputs(
            dir,
            &[
                ("verdict.txt", &summary),
                ("plot.csv", &csv),
                ("plot.svg", &svg),
            ],
        )?;
    }
    out.write_all(summary.as_bytes())?;
    Ok(report::exit_code(verdict.status()))
}

pub fn online(
    paths: &SystemPaths<'_>,
    beh_path: &Path,
    noise: &[f64],
    max_skip: u64,
    out_dir: Option<&Path>,
    dim: usize,
    out: &mut dyn Write,
) -> Result<i32> {
    let sys = load_system(paths)?;
    let beh = load_behavior(beh_path)?;
    let (verdict, synth) = run_online(&sys, &beh, noise, max_skip)?;
    let summary = report::online(&verdict, &synth, beh.len(), max_skip, sys.max_generators);
    if let Some(dir) = out_dir {
        let csv = export_plot_csv(&verdict, &synth, &sys.unsafe_spec, dim)?;
        let svg = plot_svg(&[("online", &verdict, &synth)], &sys.unsafe_spec, dim)?;
        write_outputs(
            dir,
            &[
                ("verdict.txt", &summary),
                ("synth.mlog", &write_mlog(&synth)),
                ("plot.csv", &csv),
                ("plot.svg", &svg),
            ],
        )?;
    }
    out.write_all(summary.as_bytes())?;
    Ok(report::exit_code(verdict.status()))
}

#[allow(clippy::too_many_arguments)]
pub fn genlog(
    model_path: &Path,
    init: &str,
    length: u64,
    probability: f64,
    noise: &[f64],
    seed: u64,
    out_dir: &Path,
    out: &mut dyn Write,
) -> Result<i32> {
    let model = load_model(model_path)?;
    let n = model.system.dim();
    let cfg = GenConfig {
        init: parse_init(init, n)?,
        length,
        log_probability: probability,
        noise: broadcast(noise, n, "--noise")?,
        seed,
    };
    let (beh, log) = generate(&model.system, &cfg)?;
    write_outputs(
        out_dir,
        &[
            ("log.mlog", &write_mlog(&log)),
            ("behavior.mbeh", &write_mbeh(&beh)),
        ],
    )?;
    writeln!(
        out,
        "generated {} samples over timesteps 0..{length} (seed {seed})",
        log.len()
    )?;
    Ok(crate::EXIT_SAFE)
}

pub fn plot(
    paths: &SystemPaths<'_>,
    log_path: &Path,
    refine: bool,
    out_dir: &Path,
    dim: usize,
    out: &mut dyn Write,
) -> Result<i32> {
    let sys = load_system(paths)?;
    let log = load_log(log_path)?;
    let verdict = run_offline(&sys, &log, refine)?;
    let csv = export_plot_csv(&verdict, &log, &sys.unsafe_spec, dim)?;
    let svg = plot_svg(&[("offline", &verdict, &log)], &sys.unsafe_spec, dim)?;
    write_outputs(out_dir, &[("plot.csv", &csv), ("plot.svg", &svg)])?;
    writeln!(out, "STATUS={}", verdict.status().as_str())?;
    Ok(report::exit_code(verdict.status()))
}

pub fn plot_svg(runs: &[(&str, &Verdict, &Log)], u: &UnsafeSpec, dim: usize) -> Result<String> {
    let layers: Vec<PlotLayer<'_>> = runs
        .iter()
        .map(|&(label, verdict, log)| PlotLayer {
            label,
            verdict,
            log,
        })
        .collect();
    Ok(export_plot_svg(&layers, u, dim)?)
}
