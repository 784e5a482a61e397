//! Newton and Hodge polygons with exact ordinates.
//!
//! Both polygons are built from sums of the *smallest* values, so a Newton
//! polygon lies on or above a Hodge polygon with the same endpoints exactly
//! when the exponent tuple majorizes the valuation tuple: for every `k` the
//! `k` largest exponents sum to at least the `k` largest valuations.

use serde::Serialize;

use crate::error::{PartitionError, PolyError, PolygonError};
use crate::partition::Partition;
use crate::poly::{valuation, IntPoly};
use crate::scalar::Scalar;

/// Lower convex boundary through integer abscissae `0..=width`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticePolygon<S> {
    vertices: Vec<(u32, S)>,
}

impl<S: Scalar> LatticePolygon<S> {
    /// Lower hull of points sorted by strictly increasing `x`, starting at `x = 0`.
    pub fn lower_hull(points: &[(u32, S)]) -> Self {
        let mut hull: Vec<(u32, S)> = Vec::with_capacity(points.len());
        for (x, y) in points.iter().cloned() {
            while hull.len() >= 2 {
                let (x1, y1) = &hull[hull.len() - 2];
                let (x2, y2) = &hull[hull.len() - 1];
                let dx12 = S::from_int(*x2 as i64 - *x1 as i64);
                let dx13 = S::from_int(x as i64 - *x1 as i64);
                let cross = dx12 * (y.clone() - y1.clone()) - (y2.clone() - y1.clone()) * dx13;
                if cross <= S::zero() {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push((x, y));
        }
        Self { vertices: hull }
    }

    pub fn vertices(&self) -> &[(u32, S)] {
        &self.vertices
    }

    pub fn width(&self) -> u32 {
        self.vertices.last().map(|v| v.0).unwrap_or(0)
    }

    pub fn total(&self) -> S {
        self.vertices.last().map(|v| v.1.clone()).unwrap_or_else(S::zero)
    }

    /// Ordinate at integer abscissa `x` by linear interpolation.
    pub fn value_at(&self, x: u32) -> S {
        for w in self.vertices.windows(2) {
            let (x0, y0) = &w[0];
            let (x1, y1) = &w[1];
            if *x0 <= x && x <= *x1 {
                let t = S::from_int((x - x0) as i64) / S::from_int((x1 - x0) as i64);
                return y0.clone() + t * (y1.clone() - y0.clone());
            }
        }
        self.vertices.first().map(|v| v.1.clone()).unwrap_or_else(S::zero)
    }

    /// Slopes with multiplicity (one per unit of width), increasing.
    pub fn slopes(&self) -> Vec<S> {
        let mut out = Vec::new();
        for w in self.vertices.windows(2) {
            let dx = w[1].0 - w[0].0;
            let slope = (w[1].1.clone() - w[0].1.clone()) / S::from_int(dx as i64);
            out.extend(std::iter::repeat_n(slope, dx as usize));
        }
        out
    }
}

/// Valuations of the roots of a polynomial, largest first.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValuationProfile<S> {
    vals: Vec<S>,
}

impl<S: Scalar> ValuationProfile<S> {
    pub fn new(mut vals: Vec<S>) -> Self {
        vals.sort_by(|a, b| b.partial_cmp(a).expect("comparable valuations"));
        Self { vals }
    }

    pub fn from_polygon(polygon: &LatticePolygon<S>) -> Self {
        Self::new(polygon.slopes())
    }

    pub fn vals(&self) -> &[S] {
        &self.vals
    }

    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn total(&self) -> S {
        self.vals.iter().cloned().fold(S::zero(), |a, b| a + b)
    }

    /// Polygon whose slopes are these valuations.
    pub fn polygon(&self) -> LatticePolygon<S> {
        let mut pts = vec![(0u32, S::zero())];
        let mut acc = S::zero();
        for (i, v) in self.vals.iter().rev().enumerate() {
            acc = acc + v.clone();
            pts.push((i as u32 + 1, acc.clone()));
        }
        LatticePolygon::lower_hull(&pts)
    }
}

/// Monic `(-1)^d P(1 - t)`; see [`IntPoly::one_minus_t`].
pub fn transform_one_minus_t(poly: &IntPoly) -> Result<IntPoly, PolyError> {
    poly.one_minus_t()
}

/// Lower hull of `(i, v_l(f_i))` for `P = t^d + f_1 t^{d-1} + ... + f_d`.
///
/// Zero coefficients have infinite valuation and contribute no point.
pub fn newton_polygon<S: Scalar>(poly: &IntPoly, l: u64) -> Result<LatticePolygon<S>, PolygonError> {
    if poly.is_zero() {
        return Err(PolyError::Zero.into());
    }
    if !poly.is_monic() {
        return Err(PolyError::NotMonic(poly.leading()).into());
    }
    if !crate::poly::is_prime(l) {
        return Err(PolyError::NotPrime(l).into());
    }
    if poly.coeff(0) == 0 {
        return Err(PolyError::ZeroConstantTerm.into());
    }
    let d = poly.degree();
    let points: Vec<(u32, S)> = (0..=d).filter_map(|i| valuation(poly.coeff(d - i), l).map(|v| (i as u32, S::from_int(v as i64)))).collect();
    Ok(LatticePolygon::lower_hull(&points))
}

/// Lower hull of `(i, sum of the i smallest exponents)`, `i = 0..=d`.
pub fn hodge_polygon<S: Scalar>(c: &Partition, d: usize) -> Result<LatticePolygon<S>, PolygonError> {
    if c.len() > d && c.nonzero_len() > d {
        return Err(PartitionError::TooManyParts { parts: c.parts().to_vec(), len: d }.into());
    }
    let padded = c.padded(d)?;
    let mut pts = vec![(0u32, S::zero())];
    let mut acc = 0i64;
    for (i, &x) in padded.parts().iter().rev().enumerate() {
        acc += x as i64;
        pts.push((i as u32 + 1, S::from_int(acc)));
    }
    Ok(LatticePolygon::lower_hull(&pts))
}

/// Newton polygon on or above the Hodge polygon, endpoints coinciding.
pub fn np_dominates_hp<S: Scalar>(np: &LatticePolygon<S>, hp: &LatticePolygon<S>) -> Result<bool, PolygonError> {
    if np.width() != hp.width() {
        return Err(PolygonError::WidthMismatch(np.width(), hp.width()));
    }
    let d = np.width();
    if np.total() != hp.total() {
        return Ok(false);
    }
    Ok((0..=d).all(|x| np.value_at(x) >= hp.value_at(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    fn verts(p: &LatticePolygon<Q>) -> Vec<(u32, Q)> {
        p.vertices().to_vec()
    }

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn newton_examples() {
        let f = IntPoly::from_descending(&[1, 2, 8]);
        let np = newton_polygon::<Q>(&f, 2).unwrap();
        assert_eq!(verts(&np), vec![(0, q(0, 1)), (1, q(1, 1)), (2, q(3, 1))]);
        assert_eq!(np.slopes(), vec![q(1, 1), q(2, 1)]);

        let g = IntPoly::from_descending(&[1, 0, -1]);
        assert_eq!(verts(&newton_polygon::<Q>(&g, 2).unwrap()), vec![(0, q(0, 1)), (2, q(0, 1))]);

        let h = IntPoly::from_descending(&[1, -3, 6]);
        let np = newton_polygon::<Q>(&h, 3).unwrap();
        assert_eq!(verts(&np), vec![(0, q(0, 1)), (2, q(1, 1))]);
        assert_eq!(np.slopes(), vec![q(1, 2), q(1, 2)]);
    }

    #[test]
    fn newton_errors() {
        assert!(newton_polygon::<Q>(&IntPoly::from_ascending(vec![0]), 2).is_err());
        assert!(newton_polygon::<Q>(&IntPoly::from_descending(&[1, 1, 0]), 2).is_err());
        assert!(newton_polygon::<Q>(&IntPoly::from_descending(&[1, 1, 1]), 4).is_err());
    }

    #[test]
    fn hodge_examples() {
        let hp = hodge_polygon::<Q>(&part(&[2, 1]), 2).unwrap();
        assert_eq!(verts(&hp), vec![(0, q(0, 1)), (1, q(1, 1)), (2, q(3, 1))]);
        let hp = hodge_polygon::<Q>(&part(&[3, 0]), 2).unwrap();
        assert_eq!(verts(&hp), vec![(0, q(0, 1)), (1, q(0, 1)), (2, q(3, 1))]);
        let hp = hodge_polygon::<Q>(&Partition::zeros(6), 6).unwrap();
        assert_eq!(verts(&hp), vec![(0, q(0, 1)), (6, q(0, 1))]);
        assert!(hodge_polygon::<Q>(&part(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn dominance_examples() {
        let np = newton_polygon::<Q>(&IntPoly::from_descending(&[1, 2, 8]), 2).unwrap();
        assert!(np_dominates_hp(&np, &hodge_polygon(&part(&[3, 0]), 2).unwrap()).unwrap());
        assert!(np_dominates_hp(&np, &hodge_polygon(&part(&[2, 1]), 2).unwrap()).unwrap());
        let np2 = newton_polygon::<Q>(&IntPoly::from_descending(&[1, 1, 8]), 2).unwrap();
        assert!(!np_dominates_hp(&np2, &hodge_polygon(&part(&[2, 1]), 2).unwrap()).unwrap());
        assert!(np_dominates_hp(&np, &hodge_polygon(&part(&[2, 1]), 3).unwrap()).is_err());
    }

    #[test]
    fn works_over_f64() {
        let np = newton_polygon::<f64>(&IntPoly::from_descending(&[1, -3, 6]), 3).unwrap();
        assert_eq!(np.slopes(), vec![0.5, 0.5]);
        let hp = hodge_polygon::<f64>(&part(&[1, 0]), 2).unwrap();
        assert!(np_dominates_hp(&np, &hp).unwrap());
    }

    #[test]
    fn profile_polygon_roundtrip() {
        let prof = ValuationProfile::new(vec![q(1, 1), q(2, 1)]);
        assert_eq!(prof.vals(), &[q(2, 1), q(1, 1)]);
        let np = newton_polygon::<Q>(&IntPoly::from_descending(&[1, 2, 8]), 2).unwrap();
        assert_eq!(prof.polygon(), np);
    }
}
