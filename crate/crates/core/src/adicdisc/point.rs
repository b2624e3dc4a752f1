use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde_json::json;

use crate::arith::{AnyElement, FieldConfig, UntiltElement};
use crate::error::{Error, Result};
use crate::polyroots::Polynomial;

use super::value::{AdicValue, Rank2Value, Sign};

/// Point classification on the closed unit disc.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointType {
    Type1,
    Type2,
    Type3,
    Type5,
}

impl PointType {
    pub fn as_str(self) -> &'static str {
        match self {
            PointType::Type1 => "type1",
            PointType::Type2 => "type2",
            PointType::Type3 => "type3",
            PointType::Type5 => "type5",
        }
    }
}

/// A point of `Spa(K<T>, K°<T>)` other than type 4. Radii are `r = p^{-q}`.
#[derive(Clone, Debug, PartialEq)]
pub enum AdicPoint {
    Classical(UntiltElement),
    /// `sup_{D(center, r)} |f|`.
    Disc { center: UntiltElement, q: Ratio<i64> },
    /// The Gauss point `D(0, 1)`, kept apart only for its JSON spelling.
    Gauss(FieldConfig),
    /// Rank-two point next to the type-2 point `D(center, r)`: the open
    /// disc `D(center, <r)` or the outer direction `>r`.
    Type5 { center: UntiltElement, q: Ratio<i64>, sign: Sign },
}

/// `q` has a power of `p` as denominator.
pub fn in_z_1_over_p(q: Ratio<i64>, p: u32) -> bool {
    let mut d = *q.denom();
    while d % p as i64 == 0 {
        d /= p as i64;
    }
    d == 1
}

impl AdicPoint {
    pub fn disc(center: UntiltElement, q: Ratio<i64>) -> Result<Self> {
        if q < Ratio::zero() {
            return Err(Error::InvalidArgument(format!("radius exponent {q} is negative")));
        }
        Ok(AdicPoint::Disc { center, q })
    }

    pub fn type5(center: UntiltElement, q: Ratio<i64>, sign: Sign) -> Result<Self> {
        let p = center.config().p();
        if q < Ratio::zero() {
            return Err(Error::InvalidArgument(format!("radius exponent {q} is negative")));
        }
        if !in_z_1_over_p(q, p) {
            return Err(Error::InvalidArgument(format!(
                "type-5 points sit at branching radii; {q} is not in Z[1/{p}]"
            )));
        }
        if sign == Sign::Greater && q.is_zero() {
            return Err(Error::InvalidArgument("the direction >1 leaves the unit disc".into()));
        }
        Ok(AdicPoint::Type5 { center, q, sign })
    }

    pub fn gauss(cfg: FieldConfig) -> Self {
        AdicPoint::Gauss(cfg)
    }

    pub fn config(&self) -> FieldConfig {
        match self {
            AdicPoint::Classical(c) | AdicPoint::Disc { center: c, .. } | AdicPoint::Type5 { center: c, .. } => {
                c.config()
            }
            AdicPoint::Gauss(cfg) => *cfg,
        }
    }

    pub fn center(&self) -> UntiltElement {
        match self {
            AdicPoint::Classical(c) | AdicPoint::Disc { center: c, .. } | AdicPoint::Type5 { center: c, .. } => {
                c.clone()
            }
            AdicPoint::Gauss(cfg) => UntiltElement::zero(*cfg),
        }
    }

    /// Radius exponent; `None` for classical points.
    pub fn radius(&self) -> Option<Ratio<i64>> {
        match self {
            AdicPoint::Classical(_) => None,
            AdicPoint::Disc { q, .. } | AdicPoint::Type5 { q, .. } => Some(*q),
            AdicPoint::Gauss(_) => Some(Ratio::zero()),
        }
    }

    pub fn point_type(&self) -> PointType {
        match self {
            AdicPoint::Classical(_) => PointType::Type1,
            AdicPoint::Gauss(_) => PointType::Type2,
            AdicPoint::Disc { center, q } => {
                if in_z_1_over_p(*q, center.config().p()) {
                    PointType::Type2
                } else {
                    PointType::Type3
                }
            }
            AdicPoint::Type5 { .. } => PointType::Type5,
        }
    }

    pub fn rank(&self) -> u32 {
        match self {
            AdicPoint::Type5 { .. } => 2,
            _ => 1,
        }
    }

    /// `|f(x)|`, from the expansion `f = sum a_n (T - center)^n`.
    pub fn eval(&self, f: &Polynomial<UntiltElement>) -> Result<AdicValue> {
        let cfg = f.config();
        cfg.check_same(&self.config())?;
        if let AdicPoint::Classical(c) = self {
            let y = f.eval(c)?;
            return match y.val_ticks() {
                Some(v) => Ok(AdicValue::Rank1(cfg.ratio(v))),
                None => Err(Error::Indeterminate(format!(
                    "f vanishes at the point modulo p^{}",
                    cfg.ratio(y.prec_ticks())
                ))),
            };
        }
        let q = self.radius().expect("non-classical");
        let g = f.taylor_shift(&self.center())?;
        let sign = match self {
            AdicPoint::Type5 { sign, .. } => Some(*sign),
            _ => None,
        };
        // exact candidates (exponent, n) and lower bounds from vanishing terms
        let mut best: Option<(Ratio<i64>, i64)> = None;
        let mut floor: Option<(Ratio<i64>, i64)> = None;
        for (n, a) in g.coeffs().iter().enumerate() {
            let n = n as i64;
            let shift = q * Ratio::from_integer(n);
            match a.val_ticks() {
                Some(v) => {
                    let e = cfg.ratio(v) + shift;
                    let better = match best {
                        None => true,
                        Some((be, bn)) => e < be || (e == be && prefer(sign, n, bn)),
                    };
                    if better {
                        best = Some((e, n));
                    }
                }
                None => {
                    let b = cfg.ratio(a.prec_ticks()) + shift;
                    if floor.is_none_or(|(fb, _)| b < fb) {
                        floor = Some((b, n));
                    }
                }
            }
        }
        let Some((e, n)) = best else {
            return Err(Error::Indeterminate("every Taylor coefficient vanishes at precision".into()));
        };
        if let Some((b, _)) = floor {
            // an unknown coefficient could still win (or tie, for rank two)
            if b < e || (b == e && sign.is_some()) {
                return Err(Error::Indeterminate(format!(
                    "value p^(-{e}) not separated from precision bound p^(-{b})"
                )));
            }
        }
        Ok(match sign {
            None => AdicValue::Rank1(e),
            Some(sign) => AdicValue::Rank2(Rank2Value { q: e, k: n, sign }),
        })
    }

    /// Same point, with disc equality decided at working precision.
    pub fn same_point(&self, other: &AdicPoint) -> bool {
        if self.config() != other.config() || self.point_type() != other.point_type() {
            return false;
        }
        let d = self.center().checked_sub(&other.center()).expect("same config");
        let dist = self.config().ratio(d.val_or_prec());
        match (self, other) {
            (AdicPoint::Classical(_), AdicPoint::Classical(_)) => d.is_zero(),
            (AdicPoint::Type5 { q: q1, sign: s1, .. }, AdicPoint::Type5 { q: q2, sign: s2, .. }) => {
                q1 == q2 && s1 == s2 && if *s1 == Sign::Less { dist > *q1 } else { dist >= *q1 }
            }
            _ => {
                let (q1, q2) = (self.radius().expect("disc"), other.radius().expect("disc"));
                q1 == q2 && dist >= q1
            }
        }
    }

    /// `self` generizes to `other`, i.e. `other` lies in the closure of
    /// `self`. Reflexive.
    pub fn specializes(&self, other: &AdicPoint) -> bool {
        if self.same_point(other) {
            return true;
        }
        other.generizations().iter().any(|g| g.same_point(self))
    }

    /// Strict generizations, most special first.
    pub fn generizations(&self) -> Vec<AdicPoint> {
        match self {
            AdicPoint::Type5 { center, q, .. } => {
                if center.is_zero() && q.is_zero() {
                    vec![AdicPoint::Gauss(center.config())]
                } else {
                    vec![AdicPoint::Disc { center: center.clone(), q: *q }]
                }
            }
            _ => Vec::new(),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let elem = |c: &UntiltElement| AnyElement::Untilt(c.clone()).to_json_value();
        match self {
            AdicPoint::Gauss(_) => json!({ "type": "gauss" }),
            AdicPoint::Classical(c) => json!({ "type": "classical", "center": elem(c) }),
            AdicPoint::Disc { center, q } => json!({ "type": "disc", "center": elem(center), "radius": q.to_string() }),
            AdicPoint::Type5 { center, q, sign } => json!({
                "type": "type5",
                "center": elem(center),
                "radius": q.to_string(),
                "sign": sign.as_str(),
            }),
        }
    }

    /// `cfg` is used for the Gauss point, which carries no element.
    pub fn from_json_value(v: &serde_json::Value, cfg: FieldConfig) -> Result<AdicPoint> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("point must be a JSON object".into()))?;
        let tag = obj.get("type").and_then(|t| t.as_str()).ok_or_else(|| Error::Parse("point needs a \"type\"".into()))?;
        let center = || -> Result<UntiltElement> {
            let c = obj.get("center").ok_or_else(|| Error::Parse("point needs a \"center\"".into()))?;
            AnyElement::from_json_value(c)?.into_untilt()
        };
        let radius = || -> Result<Ratio<i64>> {
            let r = obj.get("radius").and_then(|r| r.as_str()).ok_or_else(|| Error::Parse("point needs a \"radius\" string".into()))?;
            r.parse::<Ratio<i64>>().map_err(|e| Error::Parse(format!("radius {r:?}: {e}")))
        };
        match tag {
            "gauss" => Ok(AdicPoint::Gauss(cfg)),
            "classical" => Ok(AdicPoint::Classical(center()?)),
            "disc" => AdicPoint::disc(center()?, radius()?),
            "type5" => {
                let s = obj.get("sign").and_then(|s| s.as_str()).ok_or_else(|| Error::Parse("type5 point needs a \"sign\"".into()))?;
                AdicPoint::type5(center()?, radius()?, Sign::parse(s)?)
            }
            other => Err(Error::Parse(format!("unknown point type {other:?}"))),
        }
    }
}

/// Tie-break among Taylor terms of equal real exponent: the larger of
/// `gamma^n` wins.
fn prefer(sign: Option<Sign>, n: i64, current: i64) -> bool {
    match sign {
        Some(Sign::Greater) => n > current,
        _ => n < current,
    }
}

impl fmt::Display for AdicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdicPoint::Gauss(_) => f.write_str("gauss"),
            AdicPoint::Classical(c) => write!(f, "T = {c}"),
            AdicPoint::Disc { center, q } => write!(f, "D({center}, p^-{q})"),
            AdicPoint::Type5 { center, q, sign } => write!(f, "D({center}, {}p^-{q})", sign.as_str()),
        }
    }
}
