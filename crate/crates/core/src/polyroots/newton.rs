use num_rational::Ratio;
use serde_json::json;

use super::poly::Polynomial;
use crate::arith::Element;
use crate::error::{Error, Result};

/// One edge of the polygon: `mult` roots of valuation `valuation`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub valuation: Ratio<i64>,
    pub mult: usize,
}

/// Root valuations read off the lower convex hull of `(i, v(a_i))`.
///
/// Segments are listed by increasing root valuation. Roots at `X = 0`
/// (low-order coefficients that vanish at precision) are counted separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
    pub zero_roots: usize,
}

impl NewtonPolygon {
    /// Largest finite root valuation.
    pub fn max_valuation(&self) -> Option<Ratio<i64>> {
        self.segments.last().map(|s| s.valuation)
    }

    pub fn valuations(&self) -> Vec<Ratio<i64>> {
        self.segments.iter().flat_map(|s| std::iter::repeat_n(s.valuation, s.mult)).collect()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let mut v: Vec<serde_json::Value> = self
            .segments
            .iter()
            .map(|s| json!({"slope": s.valuation.to_string(), "mult": s.mult}))
            .collect();
        if self.zero_roots > 0 {
            v.push(json!({"slope": "inf", "mult": self.zero_roots}));
        }
        serde_json::Value::Array(v)
    }
}

fn cross(o: (i64, Ratio<i64>), a: (i64, Ratio<i64>), b: (i64, Ratio<i64>)) -> Ratio<i64> {
    Ratio::from_integer(a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * Ratio::from_integer(b.0 - o.0)
}

/// Lower hull vertices of points sorted by abscissa; collinear points are
/// dropped.
pub(crate) fn lower_hull(points: &[(i64, Ratio<i64>)]) -> Vec<(i64, Ratio<i64>)> {
    let mut hull: Vec<(i64, Ratio<i64>)> = Vec::new();
    for &pt in points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= Ratio::from_integer(0) {
            hull.pop();
        }
        hull.push(pt);
    }
    hull
}

pub fn newton_polygon<E: Element>(poly: &Polynomial<E>) -> Result<NewtonPolygon> {
    let cfg = poly.config();
    let d = poly.degree();
    let coeffs = poly.coeffs();
    if coeffs[d].val_ticks().is_none() {
        return Err(Error::Indeterminate("leading coefficient is zero at current precision".into()));
    }
    let zero_roots = coeffs.iter().take_while(|a| a.val_ticks().is_none()).count();
    let mut points = Vec::new();
    let mut bounds = Vec::new();
    for (i, a) in coeffs.iter().enumerate().skip(zero_roots) {
        match a.val_ticks() {
            Some(v) => points.push((i as i64, cfg.ratio(v))),
            None => {
                if let Some(pr) = a.prec_ticks() {
                    bounds.push((i as i64, cfg.ratio(pr)));
                }
            }
        }
    }
    let hull = lower_hull(&points);
    for &(i, b) in &bounds {
        let k = hull.partition_point(|h| h.0 < i);
        let (l, r) = (hull[k - 1], hull[k]);
        let on_hull = l.1 + (r.1 - l.1) * Ratio::new(i - l.0, r.0 - l.0);
        if b < on_hull {
            return Err(Error::Indeterminate(format!(
                "coefficient {i} is zero modulo valuation {b}, below the polygon; its valuation is undetermined"
            )));
        }
    }
    let mut segments: Vec<Segment> = hull
        .windows(2)
        .map(|w| Segment {
            valuation: -(w[1].1 - w[0].1) / Ratio::from_integer(w[1].0 - w[0].0),
            mult: (w[1].0 - w[0].0) as usize,
        })
        .collect();
    segments.reverse();
    Ok(NewtonPolygon { segments, zero_roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{FieldConfig, TiltElement, UntiltElement};

    #[test]
    fn square_root_of_p() {
        let cfg = FieldConfig::new(2, 8, 1).unwrap();
        let p = Polynomial::<UntiltElement>::from_ints(cfg, &[-2, 0, 1]).unwrap();
        let np = newton_polygon(&p).unwrap();
        assert_eq!(np.segments, vec![Segment { valuation: Ratio::new(1, 2), mult: 2 }]);
        assert_eq!(np.to_json_value().to_string(), r#"[{"mult":2,"slope":"1/2"}]"#);
    }

    #[test]
    fn two_slopes() {
        let cfg = FieldConfig::new(3, 8, 1).unwrap();
        let t = TiltElement::monomial(cfg, 1, 3);
        let p = Polynomial::new(vec![t, TiltElement::one(cfg), TiltElement::one(cfg)]).unwrap();
        let np = newton_polygon(&p).unwrap();
        assert_eq!(np.valuations(), vec![Ratio::from_integer(0), Ratio::from_integer(1)]);
    }

    #[test]
    fn interior_point_above_line() {
        let cfg = FieldConfig::new(3, 8, 1).unwrap();
        let p = Polynomial::<UntiltElement>::from_ints(cfg, &[3, 3, 0, 1]).unwrap();
        let np = newton_polygon(&p).unwrap();
        assert_eq!(np.segments, vec![Segment { valuation: Ratio::new(1, 3), mult: 3 }]);
    }

    #[test]
    fn zero_roots_split_off() {
        let cfg = FieldConfig::new(3, 8, 1).unwrap();
        let p = Polynomial::<UntiltElement>::from_ints(cfg, &[0, 3, 1]).unwrap();
        let np = newton_polygon(&p).unwrap();
        assert_eq!(np.zero_roots, 1);
        assert_eq!(np.valuations(), vec![Ratio::from_integer(1)]);
    }

    #[test]
    fn undetermined_coefficient_below_hull() {
        let cfg = FieldConfig::new(3, 2, 0).unwrap();
        // 1 + O(p^2) X + 0 X^2 + p^... : middle coefficient zero mod p^1 can hide a lower point
        let a0 = UntiltElement::from_int(cfg, 9).truncate(2);
        let a0 = &a0 + &UntiltElement::from_int(cfg, 3);
        let a1 = UntiltElement::zero(cfg).truncate(0);
        let p = Polynomial::new(vec![a0, a1, UntiltElement::one(cfg)]).unwrap();
        assert!(matches!(newton_polygon(&p), Err(Error::Indeterminate(_))));
    }
}
