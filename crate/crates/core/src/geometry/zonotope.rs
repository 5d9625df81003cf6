use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

use super::feasibility::box_feasible;
use super::interval::IntervalBox;

/// The set `{ c + G·ξ : ξ ∈ [-1,1]^m }`.
///
/// Each column of `G` is one generator. A zonotope without generators is a
/// single point.
#[derive(Clone, Debug, PartialEq)]
pub struct Zonotope {
    center: DVector<f64>,
    generators: DMatrix<f64>,
}

impl Zonotope {
    pub fn new(center: DVector<f64>, generators: DMatrix<f64>) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::invalid("zonotope must have at least one dimension"));
        }
        Error::check_dim(center.len(), generators.nrows())?;
        if center
            .iter()
            .chain(generators.iter())
            .any(|v| !v.is_finite())
        {
            return Err(Error::invalid("zonotope entries must be finite"));
        }
        Ok(Zonotope { center, generators })
    }

    pub fn point(center: DVector<f64>) -> Result<Self> {
        let n = center.len();
        Zonotope::new(center, DMatrix::zeros(n, 0))
    }

    /// Exact zonotope of a box: one axis-aligned generator per dimension of
    /// nonzero width.
    pub fn from_interval(b: &IntervalBox) -> Self {
        let n = b.dim();
        let center = (b.lower() + b.upper()) / 2.0;
        let radii: Vec<(usize, f64)> = (0..n)
            .map(|i| (i, (b.upper()[i] - b.lower()[i]) / 2.0))
            .filter(|(_, r)| *r > 0.0)
            .collect();
        let mut generators = DMatrix::zeros(n, radii.len());
        for (k, (i, r)) in radii.into_iter().enumerate() {
            generators[(i, k)] = r;
        }
        Zonotope { center, generators }
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn num_generators(&self) -> usize {
        self.generators.ncols()
    }

    pub fn center(&self) -> &DVector<f64> {
        &self.center
    }

    pub fn generators(&self) -> &DMatrix<f64> {
        &self.generators
    }

    /// `{ m·x + b : x ∈ self }`.
    pub fn affine_map(&self, m: &DMatrix<f64>, b: &DVector<f64>) -> Result<Zonotope> {
        Error::check_dim(self.dim(), m.ncols())?;
        Error::check_dim(m.nrows(), b.len())?;
        Zonotope::new(m * &self.center + b, m * &self.generators)
    }

    pub fn linear_map(&self, m: &DMatrix<f64>) -> Result<Zonotope> {
        self.affine_map(m, &DVector::zeros(m.nrows()))
    }

    pub fn translate(&self, offset: &DVector<f64>) -> Result<Zonotope> {
        Error::check_dim(self.dim(), offset.len())?;
        Ok(Zonotope {
            center: &self.center + offset,
            generators: self.generators.clone(),
        })
    }

    pub fn minkowski_sum(&self, other: &Zonotope) -> Result<Zonotope> {
        Error::check_dim(self.dim(), other.dim())?;
        let n = self.dim();
        let (ma, mb) = (self.num_generators(), other.num_generators());
        let mut generators = DMatrix::zeros(n, ma + mb);
        generators.columns_mut(0, ma).copy_from(&self.generators);
        generators.columns_mut(ma, mb).copy_from(&other.generators);
        Ok(Zonotope {
            center: &self.center + &other.center,
            generators,
        })
    }

    /// Tightest axis-aligned box containing the zonotope.
    pub fn interval_hull(&self) -> IntervalBox {
        let radius = self.radius();
        IntervalBox::new(&self.center - &radius, &self.center + &radius)
            .expect("zonotope invariants give a valid hull")
    }

    fn radius(&self) -> DVector<f64> {
        DVector::from_iterator(
            self.dim(),
            self.generators
                .row_iter()
                .map(|row| row.iter().map(|v| v.abs()).sum()),
        )
    }

    /// `max { d·x : x ∈ self } = d·c + Σ |d·g_i|`.
    pub fn support(&self, direction: &DVector<f64>) -> Result<f64> {
        Error::check_dim(self.dim(), direction.len())?;
        let spread: f64 = self
            .generators
            .tr_mul(direction)
            .iter()
            .map(|v| v.abs())
            .sum();
        Ok(direction.dot(&self.center) + spread)
    }

    /// Exact intersection decision through box-constrained feasibility of
    /// `c_a + G_a·ξ_a = c_b + G_b·ξ_b`.
    pub fn intersects(&self, other: &Zonotope) -> Result<bool> {
        Error::check_dim(self.dim(), other.dim())?;
        let n = self.dim();
        let (ma, mb) = (self.num_generators(), other.num_generators());
        let mut g = DMatrix::zeros(n, ma + mb);
        g.columns_mut(0, ma).copy_from(&self.generators);
        g.columns_mut(ma, mb).copy_from(&(-&other.generators));
        box_feasible(&g, &(&other.center - &self.center))
    }

    pub fn contains_point(&self, x: &DVector<f64>) -> Result<bool> {
        Error::check_dim(self.dim(), x.len())?;
        box_feasible(&self.generators, &(x - &self.center))
    }

    /// The point `c + G·ξ`.
    pub fn point_at(&self, xi: &DVector<f64>) -> Result<DVector<f64>> {
        Error::check_dim(self.num_generators(), xi.len())?;
        Ok(&self.center + &self.generators * xi)
    }

    /// Over-approximates the zonotope with at most `max_generators` generators.
    ///
    /// The `max_generators - n` longest generators are kept; the rest are
    /// replaced by their interval hull (at most `n` axis-aligned generators).
    pub fn order_reduce(&self, max_generators: usize) -> Result<Zonotope> {
        let n = self.dim();
        if max_generators < n {
            return Err(Error::invalid(format!(
                "max_generators {max_generators} is below the dimension {n}"
            )));
        }
        let m = self.num_generators();
        if m <= max_generators {
            return Ok(self.clone());
        }
        let norms: Vec<f64> = self.generators.column_iter().map(|c| c.norm()).collect();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]).then(a.cmp(&b)));
        let keep = max_generators - n;
        let (kept, boxed) = order.split_at(keep);

        let mut radius = vec![0.0; n];
        for &j in boxed {
            for (i, r) in radius.iter_mut().enumerate() {
                *r += self.generators[(i, j)].abs();
            }
        }
        let axes: Vec<usize> = (0..n).filter(|&i| radius[i] > 0.0).collect();
        let mut generators = DMatrix::zeros(n, keep + axes.len());
        for (k, &j) in kept.iter().enumerate() {
            generators.set_column(k, &self.generators.column(j));
        }
        for (k, &i) in axes.iter().enumerate() {
            generators[(i, keep + k)] = radius[i];
        }
        Ok(Zonotope {
            center: self.center.clone(),
            generators,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(x)
    }

    fn z(c: &[f64], cols: &[&[f64]]) -> Zonotope {
        let n = c.len();
        let mut g = DMatrix::zeros(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            g.set_column(j, &v(col));
        }
        Zonotope::new(v(c), g).unwrap()
    }

    fn unit_box(c: &[f64]) -> Zonotope {
        Zonotope::from_interval(&IntervalBox::around(&v(c), &vec![1.0; c.len()]).unwrap())
    }

    fn hull_bounds(b: &IntervalBox) -> Vec<(f64, f64)> {
        (0..b.dim()).map(|i| (b.lower()[i], b.upper()[i])).collect()
    }

    #[test]
    fn from_interval_symmetric_box() {
        let zb = unit_box(&[0.0, 0.0]);
        assert_eq!(zb, z(&[0.0, 0.0], &[&[1.0, 0.0], &[0.0, 1.0]]));
    }

    #[test]
    fn from_interval_degenerate_is_point() {
        let b = IntervalBox::new(v(&[3.0]), v(&[3.0])).unwrap();
        let zb = Zonotope::from_interval(&b);
        assert_eq!(zb.center(), &v(&[3.0]));
        assert_eq!(zb.num_generators(), 0);
    }

    #[test]
    fn from_interval_matches_box_corners() {
        let b = IntervalBox::new(v(&[0.0, -4.0]), v(&[2.0, 0.0])).unwrap();
        let zb = Zonotope::from_interval(&b);
        assert_eq!(zb, z(&[1.0, -2.0], &[&[1.0, 0.0], &[0.0, 2.0]]));
        // Vertex set: images of the four sign vectors equal the box corners.
        let mut corners = Vec::new();
        for s1 in [-1.0, 1.0] {
            for s2 in [-1.0, 1.0] {
                let p = zb.point_at(&v(&[s1, s2])).unwrap();
                corners.push((p[0], p[1]));
            }
        }
        corners.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(
            corners,
            vec![(0.0, -4.0), (0.0, 0.0), (2.0, -4.0), (2.0, 0.0)]
        );
    }

    #[test]
    fn affine_identity_and_scaling() {
        let a = z(&[1.0, 2.0], &[&[0.5, 0.1]]);
        let id = DMatrix::identity(2, 2);
        assert_eq!(a.affine_map(&id, &DVector::zeros(2)).unwrap(), a);
        let scaled = unit_box(&[0.0, 0.0]).linear_map(&(id * 2.0)).unwrap();
        assert_eq!(scaled, z(&[0.0, 0.0], &[&[2.0, 0.0], &[0.0, 2.0]]));
    }

    #[test]
    fn affine_rotation_maps_extreme_points() {
        let a = z(&[1.0, 0.0], &[&[1.0, 0.0], &[0.0, 2.0]]);
        let rot = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let r = a.linear_map(&rot).unwrap();
        assert_eq!(r, z(&[0.0, -1.0], &[&[0.0, -1.0], &[2.0, 0.0]]));
        for s1 in [-1.0, 1.0] {
            for s2 in [-1.0, 1.0] {
                let xi = v(&[s1, s2]);
                let mapped = &rot * a.point_at(&xi).unwrap();
                assert_eq!(mapped, r.point_at(&xi).unwrap());
            }
        }
    }

    #[test]
    fn affine_dimension_mismatch() {
        let a = unit_box(&[0.0, 0.0]);
        assert!(a.linear_map(&DMatrix::identity(3, 3)).is_err());
        assert!(a.affine_map(&DMatrix::identity(2, 2), &v(&[0.0])).is_err());
    }

    #[test]
    fn minkowski_with_point_translates() {
        let a = z(&[1.0, 1.0], &[&[1.0, 2.0]]);
        let p = Zonotope::point(v(&[3.0, -1.0])).unwrap();
        assert_eq!(
            a.minkowski_sum(&p).unwrap(),
            a.translate(&v(&[3.0, -1.0])).unwrap()
        );
    }

    #[test]
    fn minkowski_of_unit_boxes_doubles() {
        let s = unit_box(&[0.0, 0.0, 0.0])
            .minkowski_sum(&unit_box(&[0.0, 0.0, 0.0]))
            .unwrap();
        assert_eq!(hull_bounds(&s.interval_hull()), vec![(-2.0, 2.0); 3]);
    }

    #[test]
    fn interval_hull_examples() {
        let p = Zonotope::point(v(&[1.5, -2.0])).unwrap();
        assert_eq!(
            hull_bounds(&p.interval_hull()),
            vec![(1.5, 1.5), (-2.0, -2.0)]
        );
        // Sign enumeration: (±1±1, ±1) → x ∈ [-2,2], y ∈ [-1,1].
        let s = z(&[0.0, 0.0], &[&[1.0, 0.0], &[1.0, 1.0]]);
        assert_eq!(
            hull_bounds(&s.interval_hull()),
            vec![(-2.0, 2.0), (-1.0, 1.0)]
        );
        assert_eq!(
            hull_bounds(&unit_box(&[0.0, 0.0]).interval_hull()),
            vec![(-1.0, 1.0); 2]
        );
    }

    #[test]
    fn intersects_examples() {
        let a = z(&[0.3, -0.2], &[&[1.0, 0.5], &[0.2, -0.7]]);
        assert!(a.intersects(&a).unwrap());
        assert!(!unit_box(&[0.0, 0.0])
            .intersects(&unit_box(&[3.0, 0.0]))
            .unwrap());
        assert!(unit_box(&[0.0, 0.0])
            .intersects(&unit_box(&[1.5, 0.0]))
            .unwrap());
        assert!(unit_box(&[0.0, 0.0])
            .intersects(&unit_box(&[2.0, 2.0]))
            .unwrap());
    }

    #[test]
    fn points_intersect_only_when_equal() {
        let p = Zonotope::point(v(&[1.0, 2.0])).unwrap();
        let q = Zonotope::point(v(&[1.0, 2.5])).unwrap();
        assert!(p.intersects(&p).unwrap());
        assert!(!p.intersects(&q).unwrap());
        assert!(unit_box(&[1.0, 2.0]).intersects(&q).unwrap());
    }

    #[test]
    fn intersects_dimension_mismatch() {
        assert!(matches!(
            unit_box(&[0.0]).intersects(&unit_box(&[0.0, 0.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn order_reduce_noop_and_full_boxing() {
        let a = z(&[0.0, 0.0], &[&[1.0, 0.5], &[0.2, -0.7], &[0.3, 0.3]]);
        assert_eq!(a.order_reduce(3).unwrap(), a);
        assert_eq!(a.order_reduce(5).unwrap(), a);
        let boxed = a.order_reduce(2).unwrap();
        assert_eq!(boxed, Zonotope::from_interval(&a.interval_hull()));
        assert!(a.order_reduce(1).is_err());
    }

    #[test]
    fn order_reduce_keeps_longest() {
        let a = z(
            &[0.0, 0.0],
            &[
                &[0.1, 0.0],
                &[3.0, 1.0],
                &[0.0, 0.2],
                &[1.0, -1.0],
                &[0.05, 0.05],
                &[0.2, 0.1],
            ],
        );
        let r = a.order_reduce(4).unwrap();
        assert_eq!(r.num_generators(), 4);
        assert_eq!(r.generators().column(0), v(&[3.0, 1.0]));
        assert_eq!(r.generators().column(1), v(&[1.0, -1.0]));
        assert!(r.interval_hull().contains_box(&a.interval_hull()));
    }
}
