//! Helpers and independent oracles shared by the integration tests.
//!
//! Nothing here calls the LP: membership and intersection in the plane are
//! decided from the polygon's facet normals instead.

#![allow(dead_code)]

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zonomon::{Interval, UncertainLinearSystem, Zonotope};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * r.random::<f64>()
}

pub fn random_vector(r: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> DVector<f64> {
    DVector::from_fn(n, |_, _| uniform(r, lo, hi))
}

pub fn random_xi(r: &mut ChaCha8Rng, m: usize) -> DVector<f64> {
    random_vector(r, m, -1.0, 1.0)
}

pub fn random_zonotope(r: &mut ChaCha8Rng, n: usize, m: usize, spread: f64) -> Zonotope {
    let c = random_vector(r, n, -spread, spread);
    let g = DMatrix::from_fn(n, m, |_, _| uniform(r, -1.0, 1.0));
    Zonotope::new(c, g).unwrap()
}

pub fn random_unit_direction(r: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    loop {
        let d = random_vector(r, n, -1.0, 1.0);
        let norm = d.norm();
        if norm > 1e-3 {
            return d / norm;
        }
    }
}

/// A random system with spectral content near the unit circle and
/// uncertainty half-widths at most `max_half_width` on a random subset of
/// cells.
pub fn random_system(r: &mut ChaCha8Rng, n: usize, max_half_width: f64) -> UncertainLinearSystem {
    let a = DMatrix::from_fn(n, n, |i, j| {
        let base = if i == j { 0.9 } else { 0.0 };
        base + uniform(r, -0.3, 0.3)
    });
    let mut cells = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if r.random::<f64>() < 0.6 {
                let w = uniform(r, 0.0, max_half_width);
                let shift = uniform(r, -w, w) * 0.5;
                cells.insert((i, j), Interval::new(shift - w, shift + w).unwrap());
            }
        }
    }
    UncertainLinearSystem::new(a, cells).unwrap()
}

/// Draws every uncertain cell uniformly from its interval.
pub fn random_delta(
    r: &mut ChaCha8Rng,
    sys: &UncertainLinearSystem,
) -> BTreeMap<(usize, usize), f64> {
    sys.uncertainty()
        .iter()
        .map(|(&cell, iv)| (cell, uniform(r, iv.lo, iv.hi)))
        .collect()
}

/// `(A + ΔA)·x` written out by hand.
pub fn apply_by_hand(
    sys: &UncertainLinearSystem,
    delta: &BTreeMap<(usize, usize), f64>,
    x: &DVector<f64>,
) -> DVector<f64> {
    let n = sys.dim();
    let mut m = sys.nominal().clone();
    for (&(i, j), v) in delta {
        m[(i, j)] += v;
    }
    DVector::from_fn(n, |i, _| (0..n).map(|j| m[(i, j)] * x[j]).sum())
}

/// Interval hull of `c + Gξ` from first principles.
pub fn hull_by_hand(z: &Zonotope) -> (Vec<f64>, Vec<f64>) {
    let g = z.generators();
    let c = z.center();
    (0..z.dim())
        .map(|i| {
            let r: f64 = (0..g.ncols()).map(|j| g[(i, j)].abs()).sum();
            (c[i] - r, c[i] + r)
        })
        .unzip()
}

fn perp(v: (f64, f64)) -> (f64, f64) {
    (-v.1, v.0)
}

/// Signed distance-like margin of `p` inside the planar zonotope `c + Gξ`:
/// nonnegative iff `p` is a member. Uses the facet normals (perpendiculars
/// of the generators) plus the generator directions, which covers the
/// degenerate segment case.
pub fn planar_margin(c: (f64, f64), gens: &[(f64, f64)], p: (f64, f64)) -> f64 {
    let d = (p.0 - c.0, p.1 - c.1);
    let nonzero: Vec<(f64, f64)> = gens
        .iter()
        .copied()
        .filter(|g| g.0.hypot(g.1) > 1e-14)
        .collect();
    if nonzero.is_empty() {
        return -d.0.hypot(d.1);
    }
    let mut margin = f64::INFINITY;
    for g in &nonzero {
        for n in [perp(*g), *g] {
            let len = n.0.hypot(n.1);
            let reach: f64 = nonzero.iter().map(|h| (n.0 * h.0 + n.1 * h.1).abs()).sum();
            let off = (n.0 * d.0 + n.1 * d.1).abs();
            margin = margin.min((reach - off) / len);
        }
    }
    margin
}

fn planar_parts(z: &Zonotope) -> ((f64, f64), Vec<(f64, f64)>) {
    assert_eq!(z.dim(), 2);
    let c = (z.center()[0], z.center()[1]);
    let g = z.generators();
    let gens = (0..g.ncols()).map(|j| (g[(0, j)], g[(1, j)])).collect();
    (c, gens)
}

pub fn planar_contains(z: &Zonotope, p: (f64, f64)) -> bool {
    let (c, gens) = planar_parts(z);
    planar_margin(c, &gens, p) >= -1e-12
}

/// Exact overlap margin of two planar zonotopes: `a ∩ b ≠ ∅` iff the centre
/// difference lies in the zonotope spanned by both generator sets.
pub fn planar_overlap_margin(a: &Zonotope, b: &Zonotope) -> f64 {
    let (ca, mut gens) = planar_parts(a);
    let (cb, gb) = planar_parts(b);
    gens.extend(gb);
    planar_margin((0.0, 0.0), &gens, (cb.0 - ca.0, cb.1 - ca.1))
}

/// Dense `ξ` grid over `a`, each point tested for membership in `b`.
pub fn grid_finds_overlap(a: &Zonotope, b: &Zonotope, per_axis: usize) -> bool {
    let m = a.num_generators();
    let mut idx = vec![0usize; m];
    loop {
        let xi = DVector::from_iterator(
            m,
            idx.iter()
                .map(|&k| -1.0 + 2.0 * k as f64 / (per_axis - 1) as f64),
        );
        let p = a.point_at(&xi).unwrap();
        if planar_contains(b, (p[0], p[1])) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == m {
                return false;
            }
            idx[k] += 1;
            if idx[k] < per_axis {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Scalar reach intervals `[lo, hi]` of `x' = (a + δ)·x`, `δ ∈ [dlo, dhi]`,
/// iterated with exact interval products.
pub fn scalar_interval_iteration(
    a: f64,
    dlo: f64,
    dhi: f64,
    init: (f64, f64),
    steps: usize,
) -> Vec<(f64, f64)> {
    let mut out = vec![init];
    let (klo, khi) = (a + dlo, a + dhi);
    for _ in 0..steps {
        let (lo, hi) = *out.last().unwrap();
        let p = [klo * lo, klo * hi, khi * lo, khi * hi];
        out.push((
            p.iter().copied().fold(f64::INFINITY, f64::min),
            p.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        ));
    }
    out
}

/// Pairs whose exact overlap margin is within this distance of zero are
/// redrawn, since any floating-point decision there is a coin toss.
const TOUCH_BAND: f64 = 1e-6;

pub fn oracle_pairs(seed: u64, count: usize) -> Vec<(Zonotope, Zonotope, bool)> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let ma = 1 + (r.random::<u32>() % 3) as usize;
        let mb = 1 + (r.random::<u32>() % 4) as usize;
        let a = random_zonotope(&mut r, 2, ma, 2.5);
        let b = random_zonotope(&mut r, 2, mb, 2.5);
        let margin = planar_overlap_margin(&a, &b);
        if margin.abs() < TOUCH_BAND {
            continue;
        }
        out.push((a, b, margin > 0.0));
    }
    out
}

pub mod corpus {
    use std::path::{Path, PathBuf};

    use zonomon::formats::*;

    /// The corpus lives with the core crate; other crates reach it from
    /// their sibling directory.
    pub fn dir(kind: &str) -> PathBuf {
        let here = Path::new(env!("CARGO_MANIFEST_DIR"));
        let own = here.join("tests/corpus");
        let root = if own.is_dir() {
            own
        } else {
            here.join("../core/tests/corpus")
        };
        root.join(kind)
    }

    pub fn files(kind: &str) -> Vec<PathBuf> {
        let mut out: Vec<PathBuf> = std::fs::read_dir(dir(kind))
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        out.sort();
        out
    }

    /// Parses by extension and writes the result back out.
    pub fn reparse(path: &Path, text: &str) -> zonomon::Result<String> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("mlog") => parse_mlog(text).map(|x| write_mlog(&x)),
            Some("mbeh") => parse_mbeh(text).map(|x| write_mbeh(&x)),
            Some("model") => parse_model(text).map(|x| write_model(&x)),
            Some("unsafe") => parse_unsafe(text).map(|x| write_unsafe(&x)),
            other => panic!("unexpected corpus file type {other:?}"),
        }
    }

    /// The line encoded in a corruption's file name, as in `name_L7.mlog`.
    pub fn expected_line(path: &Path) -> usize {
        let stem = path.file_stem().unwrap().to_str().unwrap();
        let (_, n) = stem
            .rsplit_once("_L")
            .expect("corruption name lacks _L<line>");
        n.parse().unwrap()
    }

    /// Checks one golden file; returns a description of any failure.
    pub fn check_golden(path: &Path) -> Option<String> {
        let text = std::fs::read_to_string(path).unwrap();
        match reparse(path, &text) {
            Ok(out) if out == text => None,
            Ok(out) => Some(format!("{}: rewrote as\n{out}", path.display())),
            Err(e) => Some(format!("{}: {e}", path.display())),
        }
    }

    pub fn check_corruption(path: &Path) -> Option<String> {
        let text = std::fs::read_to_string(path).unwrap();
        let needle = format!("line {}:", expected_line(path));
        match reparse(path, &text) {
            Ok(_) => Some(format!("{}: accepted", path.display())),
            Err(e) if e.to_string().contains(&needle) => None,
            Err(e) => Some(format!("{}: wrong diagnostic `{e}`", path.display())),
        }
    }
}
