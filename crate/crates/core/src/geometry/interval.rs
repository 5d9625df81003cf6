use std::ops::{Add, Mul};

use nalgebra::DVector;

use crate::error::{Error, Result};

/// Closed real interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::invalid("interval bounds must be finite"));
        }
        if lo > hi {
            return Err(Error::invalid(format!("interval [{lo}, {hi}] is inverted")));
        }
        Ok(Interval { lo, hi })
    }

    pub const fn point(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;

    fn mul(self, rhs: Interval) -> Interval {
        let p = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        Interval {
            lo: p.iter().copied().fold(f64::INFINITY, f64::min),
            hi: p.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

/// Axis-aligned box `lower ≤ x ≤ upper`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalBox {
    lower: DVector<f64>,
    upper: DVector<f64>,
}

impl IntervalBox {
    pub fn new(lower: DVector<f64>, upper: DVector<f64>) -> Result<Self> {
        Error::check_dim(lower.len(), upper.len())?;
        if lower.is_empty() {
            return Err(Error::invalid("box must have at least one dimension"));
        }
        for (l, u) in lower.iter().zip(upper.iter()) {
            Interval::new(*l, *u)?;
        }
        Ok(IntervalBox { lower, upper })
    }

    pub fn from_intervals(intervals: &[Interval]) -> Result<Self> {
        IntervalBox::new(
            DVector::from_iterator(intervals.len(), intervals.iter().map(|i| i.lo)),
            DVector::from_iterator(intervals.len(), intervals.iter().map(|i| i.hi)),
        )
    }

    /// Box of half-width `radius[i]` around `center`.
    pub fn around(center: &DVector<f64>, radius: &[f64]) -> Result<Self> {
        Error::check_dim(center.len(), radius.len())?;
        if radius.iter().any(|r| r.is_nan() || *r < 0.0) {
            return Err(Error::invalid("box radius must be nonnegative"));
        }
        let r = DVector::from_column_slice(radius);
        IntervalBox::new(center - &r, center + &r)
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &DVector<f64> {
        &self.lower
    }

    pub fn upper(&self) -> &DVector<f64> {
        &self.upper
    }

    pub fn interval(&self, i: usize) -> Interval {
        Interval {
            lo: self.lower[i],
            hi: self.upper[i],
        }
    }

    pub fn contains_point(&self, x: &DVector<f64>) -> bool {
        x.len() == self.dim() && (0..self.dim()).all(|i| self.interval(i).contains(x[i]))
    }

    pub fn contains_box(&self, other: &IntervalBox) -> bool {
        other.dim() == self.dim()
            && (0..self.dim()).all(|i| self.interval(i).contains_interval(&other.interval(i)))
    }

    /// Componentwise intersection; `None` when some coordinate is empty.
    pub fn intersection(&self, other: &IntervalBox) -> Option<IntervalBox> {
        if other.dim() != self.dim() {
            return None;
        }
        let lower = self.lower.sup(&other.lower);
        let upper = self.upper.inf(&other.upper);
        if lower.iter().zip(upper.iter()).any(|(l, u)| l > u) {
            None
        } else {
            Some(IntervalBox { lower, upper })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_takes_extreme_endpoints() {
        let a = Interval::new(0.1, 0.2).unwrap();
        let b = Interval::new(1.0, 2.0).unwrap();
        let p = a * b;
        assert_eq!((p.lo, p.hi), (0.1, 0.4));
        let c = Interval::new(-0.1, 0.1).unwrap();
        let d = Interval::new(-1.0, 1.0).unwrap();
        let q = c * d;
        assert_eq!((q.lo, q.hi), (-0.1, 0.1));
    }

    #[test]
    fn rejects_inverted() {
        assert!(Interval::new(1.0, 0.0).is_err());
        assert!(
            IntervalBox::new(DVector::from_vec(vec![0.0]), DVector::from_vec(vec![-1.0])).is_err()
        );
        assert!(IntervalBox::new(DVector::zeros(0), DVector::zeros(0)).is_err());
    }

    #[test]
    fn intersection_of_disjoint_boxes_is_none() {
        let a = IntervalBox::around(&DVector::from_vec(vec![0.0, 0.0]), &[1.0, 1.0]).unwrap();
        let b = IntervalBox::around(&DVector::from_vec(vec![3.0, 0.0]), &[1.0, 1.0]).unwrap();
        assert!(a.intersection(&b).is_none());
        let c = IntervalBox::around(&DVector::from_vec(vec![1.5, 0.0]), &[1.0, 1.0]).unwrap();
        let i = a.intersection(&c).unwrap();
        assert_eq!(i.interval(0), Interval { lo: 0.5, hi: 1.0 });
    }
}
