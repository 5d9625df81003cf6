//! Fixed workloads shared by the benchmarks and the performance check.

use nalgebra::{DMatrix, DVector};
use zonomon::{
    generate, GenConfig, Halfspace, Interval, IntervalBox, Log, UncertainLinearSystem, UnsafeSpec,
    Zonotope,
};

/// A damped oscillator driving a chain of three slow modes, with uncertain
/// damping and coupling.
pub fn system_5d() -> UncertainLinearSystem {
    #[rustfmt::skip]
    let a = DMatrix::from_row_slice(5, 5, &[
        0.96, -0.2,  0.0,  0.0,  0.0,
        0.2,   0.96, 0.0,  0.0,  0.0,
        0.05,  0.0,  0.97, 0.0,  0.0,
        0.0,   0.0,  0.04, 0.98, 0.0,
        0.0,   0.03, 0.0,  0.02, 0.95,
    ]);
    let w = |h: f64| Interval::new(-h, h).unwrap();
    let cells = [
        ((0, 0), w(0.01)),
        ((1, 1), w(0.01)),
        ((2, 0), w(0.01)),
        ((3, 2), w(0.005)),
        ((4, 4), w(0.005)),
    ];
    UncertainLinearSystem::new(a, cells.into_iter().collect()).unwrap()
}

pub fn init_5d() -> Zonotope {
    let c = DVector::from_vec(vec![2.0, 0.0, 0.5, 0.0, 0.0]);
    Zonotope::from_interval(&IntervalBox::around(&c, &[0.1; 5]).unwrap())
}

pub fn unsafe_5d() -> UnsafeSpec {
    UnsafeSpec::halfspace(Halfspace::at_least(5, 0, 3.0).unwrap())
}

/// Log over `0..=length` with each later step logged with probability `p`.
pub fn log_5d(length: u64, p: f64, seed: u64) -> Log {
    let cfg = GenConfig {
        init: init_5d(),
        length,
        log_probability: p,
        noise: vec![0.02; 5],
        seed,
    };
    generate(&system_5d(), &cfg).unwrap().1
}
