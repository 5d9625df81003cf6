//! The bounding model: a discrete-time linear system whose matrix cells may
//! be perturbed within intervals, independently at every step.
//!
//! One reachability step is the exact image under the nominal matrix,
//! Minkowski-summed with a box that bounds every possible `ΔA·x`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::geometry::{Interval, IntervalBox, Zonotope};

/// Default generator budget is this many generators per state dimension.
pub const DEFAULT_GENERATORS_PER_DIM: usize = 5;

#[derive(Clone, Debug, PartialEq)]
pub struct UncertainLinearSystem {
    nominal: DMatrix<f64>,
    uncertainty: BTreeMap<(usize, usize), Interval>,
}

impl UncertainLinearSystem {
    pub fn new(
        nominal: DMatrix<f64>,
        uncertainty: BTreeMap<(usize, usize), Interval>,
    ) -> Result<Self> {
        let n = nominal.nrows();
        if n == 0 {
            return Err(Error::invalid("system must have at least one state"));
        }
        Error::check_dim(n, nominal.ncols())?;
        if nominal.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("nominal matrix entries must be finite"));
        }
        for (&(i, j), iv) in &uncertainty {
            if i >= n || j >= n {
                return Err(Error::invalid(format!(
                    "uncertain cell ({i}, {j}) out of range"
                )));
            }
            Interval::new(iv.lo, iv.hi)?;
        }
        Ok(UncertainLinearSystem {
            nominal,
            uncertainty,
        })
    }

    /// A system without uncertain cells.
    pub fn certain(nominal: DMatrix<f64>) -> Result<Self> {
        UncertainLinearSystem::new(nominal, BTreeMap::new())
    }

    pub fn scalar(a: f64, delta: Option<(f64, f64)>) -> Result<Self> {
        let mut unc = BTreeMap::new();
        if let Some((lo, hi)) = delta {
            unc.insert((0, 0), Interval::new(lo, hi)?);
        }
        UncertainLinearSystem::new(DMatrix::from_element(1, 1, a), unc)
    }

    pub fn dim(&self) -> usize {
        self.nominal.nrows()
    }

    pub fn nominal(&self) -> &DMatrix<f64> {
        &self.nominal
    }

    pub fn uncertainty(&self) -> &BTreeMap<(usize, usize), Interval> {
        &self.uncertainty
    }

    pub fn default_max_generators(&self) -> usize {
        DEFAULT_GENERATORS_PER_DIM * self.dim()
    }

    /// A copy with every uncertainty interval replaced by `f(cell, interval)`.
    pub fn map_uncertainty(
        &self,
        mut f: impl FnMut((usize, usize), Interval) -> Interval,
    ) -> Result<Self> {
        let unc = self
            .uncertainty
            .iter()
            .map(|(&k, &iv)| (k, f(k, iv)))
            .collect();
        UncertainLinearSystem::new(self.nominal.clone(), unc)
    }

    /// Exact image under the nominal matrix.
    pub fn step_nominal(&self, z: &Zonotope) -> Result<Zonotope> {
        z.linear_map(&self.nominal)
    }

    /// Axis-aligned zonotope containing `ΔA·x` for every admissible `ΔA` and
    /// every `x ∈ z`, by interval matrix–vector product over the hull of `z`.
    pub fn uncertainty_bloat(&self, z: &Zonotope) -> Result<Zonotope> {
        Error::check_dim(self.dim(), z.dim())?;
        let hull = z.interval_hull();
        let mut rows = vec![Interval::point(0.0); self.dim()];
        for (&(i, j), &delta) in &self.uncertainty {
            rows[i] = rows[i] + delta * hull.interval(j);
        }
        Ok(Zonotope::from_interval(&IntervalBox::from_intervals(
            &rows,
        )?))
    }

    /// One sound reachability step, reduced to `max_generators`.
    pub fn step(&self, z: &Zonotope, max_generators: usize) -> Result<Zonotope> {
        let nominal = self.step_nominal(z)?;
        let bloat = self.uncertainty_bloat(z)?;
        nominal.minkowski_sum(&bloat)?.order_reduce(max_generators)
    }

    /// `(A + ΔA)·x` for a concrete perturbation; cells missing from `delta`
    /// are unperturbed.
    pub fn apply(&self, delta: &BTreeMap<(usize, usize), f64>, x: &DVector<f64>) -> DVector<f64> {
        let mut m = self.nominal.clone();
        for (&(i, j), &d) in delta {
            m[(i, j)] += d;
        }
        m * x
    }
}
