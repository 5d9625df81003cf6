use nalgebra::DVector;

use crate::error::{Error, Result};

use super::{IntervalBox, Zonotope, FEASIBILITY_TOLERANCE};

/// Closed halfspace `normal·x ≥ offset`.
#[derive(Clone, Debug, PartialEq)]
pub struct Halfspace {
    normal: DVector<f64>,
    offset: f64,
}

impl Halfspace {
    pub fn new(normal: DVector<f64>, offset: f64) -> Result<Self> {
        if normal.is_empty() {
            return Err(Error::invalid("halfspace must have at least one dimension"));
        }
        if normal.iter().any(|v| !v.is_finite()) || !offset.is_finite() {
            return Err(Error::invalid("halfspace entries must be finite"));
        }
        if normal.iter().all(|v| *v == 0.0) {
            return Err(Error::invalid("halfspace normal must be nonzero"));
        }
        Ok(Halfspace { normal, offset })
    }

    /// `x_i ≥ bound`.
    pub fn at_least(dim: usize, i: usize, bound: f64) -> Result<Self> {
        if i >= dim {
            return Err(Error::invalid(format!("variable index {i} out of range")));
        }
        let mut normal = DVector::zeros(dim);
        normal[i] = 1.0;
        Halfspace::new(normal, bound)
    }

    /// `x_i ≤ bound`, stored as `-x_i ≥ -bound`.
    pub fn at_most(dim: usize, i: usize, bound: f64) -> Result<Self> {
        if i >= dim {
            return Err(Error::invalid(format!("variable index {i} out of range")));
        }
        let mut normal = DVector::zeros(dim);
        normal[i] = -1.0;
        Halfspace::new(normal, -bound)
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> &DVector<f64> {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn contains_point(&self, x: &DVector<f64>) -> bool {
        self.normal.dot(x) >= self.offset
    }

    /// Touching the boundary counts as intersecting.
    pub fn intersects(&self, z: &Zonotope) -> Result<bool> {
        let h = z.support(&self.normal)?;
        let tol = FEASIBILITY_TOLERANCE * self.offset.abs().max(h.abs()).max(1.0);
        Ok(h >= self.offset - tol)
    }

    /// Tightens `b` against the halfspace one coordinate at a time.
    ///
    /// Returns `None` when the box misses the halfspace. The result contains
    /// `b ∩ self` but need not be its tightest box.
    pub fn clip_box(&self, b: &IntervalBox) -> Result<Option<IntervalBox>> {
        Error::check_dim(self.dim(), b.dim())?;
        let n = self.dim();
        let mut lower = b.lower().clone();
        let mut upper = b.upper().clone();
        let best = |i: usize, lo: &DVector<f64>, up: &DVector<f64>| {
            let a = self.normal[i];
            if a >= 0.0 {
                a * up[i]
            } else {
                a * lo[i]
            }
        };
        let total: f64 = (0..n).map(|i| best(i, &lower, &upper)).sum();
        if total < self.offset {
            let tol = FEASIBILITY_TOLERANCE * self.offset.abs().max(total.abs()).max(1.0);
            if total < self.offset - tol {
                return Ok(None);
            }
            return Ok(Some(b.clone()));
        }
        for i in 0..n {
            let a = self.normal[i];
            if a == 0.0 {
                continue;
            }
            // a·x_i ≥ offset − Σ_{j≠i} max a_j x_j
            let rest = total - best(i, b.lower(), b.upper());
            let bound = (self.offset - rest) / a;
            if a > 0.0 {
                lower[i] = lower[i].max(bound.min(upper[i]));
            } else {
                upper[i] = upper[i].min(bound.max(lower[i]));
            }
        }
        Ok(Some(IntervalBox::new(lower, upper)?))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Disjunct {
    Halfspace(Halfspace),
    Zonotope(Zonotope),
}

impl Disjunct {
    pub fn dim(&self) -> usize {
        match self {
            Disjunct::Halfspace(h) => h.dim(),
            Disjunct::Zonotope(z) => z.dim(),
        }
    }

    pub fn intersects(&self, z: &Zonotope) -> Result<bool> {
        match self {
            Disjunct::Halfspace(h) => h.intersects(z),
            Disjunct::Zonotope(d) => z.intersects(d),
        }
    }
}

/// Union of unsafe regions.
#[derive(Clone, Debug, PartialEq)]
pub struct UnsafeSpec {
    disjuncts: Vec<Disjunct>,
}

impl UnsafeSpec {
    pub fn new(disjuncts: Vec<Disjunct>) -> Result<Self> {
        let Some(first) = disjuncts.first() else {
            return Err(Error::invalid(
                "unsafe specification needs at least one disjunct",
            ));
        };
        let n = first.dim();
        for d in &disjuncts {
            Error::check_dim(n, d.dim())?;
        }
        Ok(UnsafeSpec { disjuncts })
    }

    pub fn halfspace(h: Halfspace) -> Self {
        UnsafeSpec {
            disjuncts: vec![Disjunct::Halfspace(h)],
        }
    }

    pub fn dim(&self) -> usize {
        self.disjuncts[0].dim()
    }

    pub fn disjuncts(&self) -> &[Disjunct] {
        &self.disjuncts
    }

    /// Whether `z` meets any disjunct.
    pub fn intersects(&self, z: &Zonotope) -> Result<bool> {
        Error::check_dim(self.dim(), z.dim())?;
        for d in &self.disjuncts {
            if d.intersects(z)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Threshold `x_i = b` of the first halfspace that constrains only
    /// coordinate `i`, for plotting.
    pub fn axis_threshold(&self, i: usize) -> Option<f64> {
        self.disjuncts.iter().find_map(|d| match d {
            Disjunct::Halfspace(h)
                if h.normal[i] != 0.0
                    && h.normal
                        .iter()
                        .enumerate()
                        .all(|(j, v)| j == i || *v == 0.0) =>
            {
                Some(h.offset / h.normal[i])
            }
            _ => None,
        })
    }
}
