use std::fmt;

use crate::arith::{AnyElement, Element, ElementJson, FieldConfig, Kind, TiltElement, UntiltElement};
use crate::error::{Error, Result};

/// Dense univariate polynomial `a_0 + a_1 X + ... + a_d X^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<E> {
    cfg: FieldConfig,
    coeffs: Vec<E>,
}

impl<E: Element> Polynomial<E> {
    pub fn new(coeffs: Vec<E>) -> Result<Self> {
        let cfg = coeffs
            .first()
            .ok_or_else(|| Error::InvalidArgument("polynomial with no coefficients".into()))?
            .config();
        for c in &coeffs {
            cfg.check_same(&c.config())?;
        }
        Ok(Polynomial { cfg, coeffs })
    }

    /// `X^d + sum a_i X^i` from the non-leading coefficients.
    pub fn monic(lower: Vec<E>, cfg: FieldConfig) -> Result<Self> {
        let mut c = lower;
        c.push(E::one(cfg));
        Self::new(c)
    }

    pub fn from_ints(cfg: FieldConfig, ints: &[i64]) -> Result<Self> {
        Self::new(ints.iter().map(|&n| E::from_int(cfg, n)).collect())
    }

    pub fn config(&self) -> FieldConfig {
        self.cfg
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| E::zero(self.cfg))
    }

    pub fn eval(&self, x: &E) -> Result<E> {
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for a in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul_elem(x)?.add_elem(a)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Result<Self> {
        if self.coeffs.len() == 1 {
            return Self::new(vec![E::zero(self.cfg)]);
        }
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.mul_elem(&E::from_int(self.cfg, i as i64)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(c)
    }

    /// `P(X + s)`.
    pub fn taylor_shift(&self, s: &E) -> Result<Self> {
        let d = self.degree();
        let mut q: Vec<E> = vec![self.coeffs[d].clone()];
        for a in self.coeffs.iter().rev().skip(1) {
            // q <- q * (X + s) + a
            let mut next = Vec::with_capacity(q.len() + 1);
            next.push(q[0].mul_elem(s)?.add_elem(a)?);
            for j in 1..q.len() {
                next.push(q[j].mul_elem(s)?.add_elem(&q[j - 1])?);
            }
            next.push(q[q.len() - 1].clone());
            q = next;
        }
        Self::new(q)
    }

    /// `P(var^(ticks) X)`: coefficient `i` multiplied by `var^(i*ticks)`.
    pub fn scale_var(&self, ticks: u64) -> Self {
        let c = self.coeffs.iter().enumerate().map(|(i, a)| a.shift_up(i as u64 * ticks)).collect();
        Polynomial { cfg: self.cfg, coeffs: c }
    }

    /// Divides every coefficient by `var^(ticks)`.
    pub fn shift_down(&self, ticks: u64) -> Result<Self> {
        let c = self.coeffs.iter().map(|a| a.shift_down(ticks)).collect::<Result<Vec<_>>>()?;
        Self::new(c)
    }

    pub fn truncate(&self, ticks: u64) -> Self {
        let c = self.coeffs.iter().map(|a| a.truncate(ticks)).collect();
        Polynomial { cfg: self.cfg, coeffs: c }
    }

    pub fn map<F: Element>(&self, f: impl Fn(&E) -> Result<F>) -> Result<Polynomial<F>> {
        Polynomial::new(self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let mut out = vec![E::zero(self.cfg); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_elem(&a.mul_elem(b)?)?;
            }
        }
        Self::new(out)
    }

    pub fn to_json_value(&self) -> serde_json::Value
    where
        for<'a> ElementJson: From<&'a E>,
    {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::to_value(ElementJson::from(c)).expect("serializable"))
                .collect(),
        )
    }
}

impl<E: Element> fmt::Display for Polynomial<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() && a.prec_ticks().is_none() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({a})")?,
                1 => write!(f, "({a})*X")?,
                _ => write!(f, "({a})*X^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A polynomial of either coefficient kind.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyPoly {
    Untilt(Polynomial<UntiltElement>),
    Tilt(Polynomial<TiltElement>),
}

impl AnyPoly {
    pub fn kind(&self) -> Kind {
        match self {
            AnyPoly::Untilt(_) => Kind::Untilt,
            AnyPoly::Tilt(_) => Kind::Tilt,
        }
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<AnyPoly> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("polynomial must be a JSON array".into()))?;
        let elems = arr.iter().map(AnyElement::from_json_value).collect::<Result<Vec<_>>>()?;
        let kind = elems
            .first()
            .ok_or_else(|| Error::Parse("polynomial with no coefficients".into()))?
            .kind();
        match kind {
            Kind::Untilt => Ok(AnyPoly::Untilt(Polynomial::new(
                elems.into_iter().map(AnyElement::into_untilt).collect::<Result<_>>()?,
            )?)),
            Kind::Tilt => Ok(AnyPoly::Tilt(Polynomial::new(
                elems.into_iter().map(AnyElement::into_tilt).collect::<Result<_>>()?,
            )?)),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            AnyPoly::Untilt(p) => p.to_json_value(),
            AnyPoly::Tilt(p) => p.to_json_value(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taylor_shift_matches_direct_expansion() {
        let cfg = FieldConfig::new(3, 8, 1).unwrap();
        // X^2 - 4 shifted by 1 is X^2 + 2X - 3
        let p = Polynomial::<UntiltElement>::from_ints(cfg, &[-4, 0, 1]).unwrap();
        let q = p.taylor_shift(&UntiltElement::one(cfg)).unwrap();
        assert_eq!(q, Polynomial::from_ints(cfg, &[-3, 2, 1]).unwrap());
        let x = UntiltElement::from_int(cfg, 5);
        assert_eq!(p.eval(&x).unwrap(), UntiltElement::from_int(cfg, 21));
        assert_eq!(p.derivative().unwrap(), Polynomial::from_ints(cfg, &[0, 2]).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let cfg = FieldConfig::new(3, 8, 1).unwrap();
        let p = Polynomial::<TiltElement>::from_ints(cfg, &[1, 0, 1]).unwrap();
        let v = p.to_json_value();
        assert_eq!(AnyPoly::from_json_value(&v).unwrap(), AnyPoly::Tilt(p));
    }
}
