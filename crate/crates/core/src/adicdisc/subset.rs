use std::cmp::Ordering;

use serde_json::json;

use crate::arith::UntiltElement;
use crate::error::{Error, Result};
use crate::polyroots::{AnyPoly, Polynomial};

use super::point::AdicPoint;

/// `U(f_1, ..., f_k / g) = { x : |f_i(x)| <= |g(x)| for all i }`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSubset {
    numerators: Vec<Polynomial<UntiltElement>>,
    denominator: Polynomial<UntiltElement>,
}

fn pure_power(f: &Polynomial<UntiltElement>) -> bool {
    f.coeffs().iter().skip(1).all(|c| c.is_zero())
        && matches!(f.coeff(0).digits(), [(_, 1)])
}

fn unit_constant(f: &Polynomial<UntiltElement>) -> bool {
    f.coeffs().iter().skip(1).all(|c| c.is_zero()) && f.coeff(0).val_ticks() == Some(0)
}

impl RationalSubset {
    /// Some numerator must be a constant `p^M`, so that the numerators
    /// generate the unit ideal. A unit denominator is accepted without it.
    pub fn new(numerators: Vec<Polynomial<UntiltElement>>, denominator: Polynomial<UntiltElement>) -> Result<Self> {
        let cfg = denominator.config();
        for f in &numerators {
            cfg.check_same(&f.config())?;
        }
        if numerators.is_empty() {
            return Err(Error::InvalidArgument("rational subset without numerators".into()));
        }
        if !numerators.iter().any(pure_power) && !unit_constant(&denominator) {
            return Err(Error::InvalidArgument(
                "numerators must include a constant p^M (or the denominator must be a unit)".into(),
            ));
        }
        Ok(RationalSubset { numerators, denominator })
    }

    pub fn numerators(&self) -> &[Polynomial<UntiltElement>] {
        &self.numerators
    }

    pub fn denominator(&self) -> &Polynomial<UntiltElement> {
        &self.denominator
    }

    pub fn contains(&self, x: &AdicPoint) -> Result<bool> {
        let g = self.denominator.clone();
        let vg = x.eval(&g)?;
        for f in &self.numerators {
            if x.eval(f)?.cmp_abs(vg) == Ordering::Greater {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "numerators": self.numerators.iter().map(|f| f.to_json_value()).collect::<Vec<_>>(),
            "denominator": self.denominator.to_json_value(),
        })
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let untilt = |v: &serde_json::Value| match AnyPoly::from_json_value(v)? {
            AnyPoly::Untilt(p) => Ok(p),
            AnyPoly::Tilt(_) => Err(Error::Parse("rational subsets use untilt polynomials".into())),
        };
        let nums = v
            .get("numerators")
            .and_then(|n| n.as_array())
            .ok_or_else(|| Error::Parse("missing \"numerators\" array".into()))?;
        let den = v.get("denominator").ok_or_else(|| Error::Parse("missing \"denominator\"".into()))?;
        RationalSubset::new(nums.iter().map(untilt).collect::<Result<_>>()?, untilt(den)?)
    }
}
