use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::config::FieldConfig;
use super::digits::{mul_into, product_window, sat, sum_window, truncate, Acc, Digits};
use super::valexp::ValExp;
use crate::error::{Error, Result};

/// A truncated element of `K♭° = F_p[t^{1/p^inf}]^`, as a finite digit map
/// `e -> a_e` in `F_p`.
///
/// `prec = None` marks an exact element of `F_p[t^{1/p^m}]` (a finite sum).
/// Exact elements are closed under ring operations, which is what the sharp
/// map needs: `x^♯ mod p^k` depends on `x mod t^{p^(k-1)}`, far beyond any
/// fixed truncation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TiltElement {
    cfg: FieldConfig,
    digits: Digits,
    prec: Option<u64>,
}

impl TiltElement {
    /// Exact zero.
    pub fn zero(cfg: FieldConfig) -> Self {
        TiltElement { cfg, digits: Vec::new(), prec: None }
    }

    pub fn one(cfg: FieldConfig) -> Self {
        Self::monomial(cfg, 1, 0)
    }

    /// Exact `digit * t^(ticks/scale)`.
    pub fn monomial(cfg: FieldConfig, digit: u64, ticks: u64) -> Self {
        let d = (digit % cfg.p() as u64) as u8;
        let digits = if d == 0 { Vec::new() } else { vec![(ticks, d)] };
        TiltElement { cfg, digits, prec: None }
    }

    pub fn from_int(cfg: FieldConfig, n: i64) -> Self {
        Self::monomial(cfg, n.rem_euclid(cfg.p() as i64) as u64, 0)
    }

    /// `precexp = None` builds an exact element.
    pub fn from_terms(cfg: FieldConfig, terms: &[(ValExp, i64)], precexp: Option<ValExp>) -> Result<Self> {
        let prec = match precexp {
            Some(e) => Some(cfg.ticks(e)?.min(cfg.cap_ticks())),
            None => None,
        };
        let mut ticks = Vec::with_capacity(terms.len());
        for &(e, c) in terms {
            ticks.push((cfg.ticks(e)?, c));
        }
        let top = ticks.iter().map(|t| t.0 + 1).max().unwrap_or(0);
        let window = prec.unwrap_or(top).min(top);
        let mut acc = Acc::new(window);
        for (k, c) in ticks {
            if k < window {
                acc.add(k, c);
            }
        }
        Ok(Self::from_acc(cfg, acc, window, prec))
    }

    pub fn from_digits(cfg: FieldConfig, digits: Vec<(u64, u8)>, prec: Option<u64>) -> Result<Self> {
        let prec = prec.map(|k| k.min(cfg.cap_ticks()));
        let mut last = None;
        for &(k, d) in &digits {
            if d == 0 || d as u32 >= cfg.p() {
                return Err(Error::InvalidArgument(format!("digit {d} outside 1..{}", cfg.p())));
            }
            if last.is_some_and(|l| l >= k) {
                return Err(Error::InvalidArgument("exponents must be strictly increasing".into()));
            }
            if prec.is_some_and(|pr| k >= pr) {
                return Err(Error::InvalidArgument("term at or beyond the precision exponent".into()));
            }
            last = Some(k);
        }
        Ok(TiltElement { cfg, digits, prec })
    }

    fn from_acc(cfg: FieldConfig, acc: Acc, window: u64, prec: Option<u64>) -> Self {
        let prec = prec.map(|k| k.min(cfg.cap_ticks()));
        let cap = prec.unwrap_or(window).min(window);
        let digits = acc.normalize_modp(cfg.p(), cap);
        TiltElement { cfg, digits, prec }
    }

    pub(crate) fn from_raw(cfg: FieldConfig, mut digits: Digits, prec: Option<u64>) -> Self {
        let prec = prec.map(|k| k.min(cfg.cap_ticks()));
        if let Some(k) = prec {
            truncate(&mut digits, k);
        }
        TiltElement { cfg, digits, prec }
    }

    pub fn config(&self) -> FieldConfig {
        self.cfg
    }

    pub fn digits(&self) -> &[(u64, u8)] {
        &self.digits
    }

    pub fn terms(&self) -> Vec<(ValExp, u8)> {
        self.digits.iter().map(|&(k, d)| (self.cfg.valexp(k), d)).collect()
    }

    /// `None` for exact elements.
    pub fn prec_ticks(&self) -> Option<u64> {
        self.prec
    }

    pub fn precexp(&self) -> Option<ValExp> {
        self.prec.map(|k| self.cfg.valexp(k))
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn valuation(&self) -> Option<ValExp> {
        self.val_ticks().map(|k| self.cfg.valexp(k))
    }

    pub fn val_ticks(&self) -> Option<u64> {
        self.digits.first().map(|&(k, _)| k)
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    pub(crate) fn val_or_prec(&self) -> u64 {
        self.val_ticks().or(self.prec).unwrap_or(u64::MAX)
    }

    pub fn residue(&self) -> u8 {
        match self.digits.first() {
            Some(&(0, d)) => d,
            _ => 0,
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.cfg.check_same(&rhs.cfg)?;
        Ok(self.combine(rhs, 1))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.cfg.check_same(&rhs.cfg)?;
        Ok(self.combine(rhs, -1))
    }

    fn combine(&self, rhs: &Self, sign: i64) -> Self {
        let prec = min_prec(self.prec, rhs.prec);
        let cap = prec.unwrap_or(u64::MAX);
        let window = sum_window(&self.digits, &rhs.digits, cap);
        let mut acc = Acc::new(window);
        acc.extend(&self.digits, 1, window);
        acc.extend(&rhs.digits, sign, window);
        Self::from_acc(self.cfg, acc, window, prec)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.cfg.check_same(&rhs.cfg)?;
        let a = self.prec.map(|k| sat(k, rhs.val_or_prec()));
        let b = rhs.prec.map(|k| sat(k, self.val_or_prec()));
        let mut prec = min_prec(a, b);
        if prec == Some(u64::MAX) {
            prec = None;
        }
        let cap = prec.unwrap_or(u64::MAX);
        let window = product_window(&self.digits, &rhs.digits, cap);
        let mut acc = Acc::new(window);
        mul_into(&mut acc, &self.digits, &rhs.digits, window);
        Ok(Self::from_acc(self.cfg, acc, window, prec))
    }

    pub fn neg(&self) -> Self {
        let p = self.cfg.p() as u8;
        let digits = self.digits.iter().map(|&(k, d)| (k, p - d)).collect();
        TiltElement { cfg: self.cfg, digits, prec: self.prec }
    }

    /// `self^e`, using Frobenius for the `p`-adic digits of `e`.
    pub fn pow(&self, mut e: u64) -> Self {
        let p = self.cfg.p() as u64;
        let mut out = Self::one(self.cfg);
        let mut base = self.clone();
        while e > 0 {
            let d = e % p;
            for _ in 0..d {
                out = &out * &base;
            }
            e /= p;
            if e > 0 {
                base = base.frobenius();
            }
        }
        out
    }

    /// `x -> x^p`: exponents times `p`, digits fixed.
    pub fn frobenius(&self) -> Self {
        let p = self.cfg.p() as u64;
        let digits = self.digits.iter().map(|&(k, d)| (k * p, d)).collect();
        Self::from_raw(self.cfg, digits, self.prec.map(|k| sat(k, 0).saturating_mul(p)))
    }

    /// The unique `p`-th root; fails when an exponent would need a
    /// denominator beyond `p^dencap`.
    pub fn pth_root(&self) -> Result<Self> {
        let p = self.cfg.p() as u64;
        let mut digits = Vec::with_capacity(self.digits.len());
        for &(k, d) in &self.digits {
            if k % p != 0 {
                return Err(Error::dencap(
                    self.cfg.dencap(),
                    format!("p-th root of t^{}", self.cfg.valexp(k)),
                ));
            }
            digits.push((k / p, d));
        }
        Ok(TiltElement { cfg: self.cfg, digits, prec: self.prec.map(|k| k / p) })
    }

    pub fn pth_root_n(&self, n: u32) -> Result<Self> {
        let mut x = self.clone();
        for _ in 0..n {
            x = x.pth_root()?;
        }
        Ok(x)
    }

    pub fn shift_up(&self, ticks: u64) -> Self {
        let digits = self.digits.iter().map(|&(k, d)| (k + ticks, d)).collect();
        Self::from_raw(self.cfg, digits, self.prec.map(|k| sat(k, ticks)))
    }

    pub fn shift_down(&self, ticks: u64) -> Result<Self> {
        if self.val_or_prec() < ticks {
            return Err(Error::InvalidArgument(format!(
                "element of valuation {} is not divisible by t^{}",
                self.cfg.valexp(self.val_or_prec()),
                self.cfg.valexp(ticks)
            )));
        }
        let digits = self.digits.iter().map(|&(k, d)| (k - ticks, d)).collect();
        Ok(TiltElement { cfg: self.cfg, digits, prec: self.prec.map(|k| k - ticks) })
    }

    pub fn truncate(&self, ticks: u64) -> Self {
        Self::from_raw(self.cfg, self.digits.clone(), Some(min_prec(self.prec, Some(ticks)).unwrap()))
    }

    pub(crate) fn with_prec(&self, prec: Option<u64>) -> Self {
        Self::from_raw(self.cfg, self.digits.clone(), prec)
    }

    /// Finite-precision view at the configured cap `t^N`.
    pub fn at_working_precision(&self) -> Self {
        self.truncate(self.cfg.cap_ticks())
    }

    pub fn inverse_unit(&self) -> Result<Self> {
        let r = self.residue();
        if r == 0 {
            return Err(Error::InvalidArgument("not a unit at current precision".into()));
        }
        let prec = self.prec.unwrap_or(self.cfg.cap_ticks()).min(self.cfg.cap_ticks());
        let u = self.truncate(prec);
        let p = self.cfg.p() as u64;
        let r_inv = (1..p).find(|&c| (c * r as u64) % p == 1).expect("F_p is a field");
        let mut y = Self::monomial(self.cfg, r_inv, 0).truncate(prec);
        let two = Self::from_int(self.cfg, 2);
        for _ in 0..64 {
            let uy = &u * &y;
            if (&uy - &Self::one(self.cfg)).is_zero() {
                return Ok(y.truncate(prec));
            }
            y = (&y * &(&two - &uy)).with_prec(Some(prec));
        }
        Err(Error::NoConvergence("unit inverse".into()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.cfg.check_same(&rhs.cfg)?;
        let w = rhs
            .val_ticks()
            .ok_or_else(|| Error::Indeterminate("division by an element that is zero at precision".into()))?;
        if self.val_or_prec() < w {
            return Err(Error::InvalidArgument("quotient is not integral".into()));
        }
        let inv = rhs.shift_down(w)?.inverse_unit()?;
        self.shift_down(w)?.checked_mul(&inv)
    }

    pub fn congruent(&self, rhs: &Self) -> bool {
        (self - rhs).is_zero()
    }
}

pub(crate) fn min_prec(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl<'a> Add<&'a TiltElement> for &'a TiltElement {
    type Output = TiltElement;
    fn add(self, rhs: &TiltElement) -> TiltElement {
        self.checked_add(rhs).expect("configuration mismatch")
    }
}

impl<'a> Sub<&'a TiltElement> for &'a TiltElement {
    type Output = TiltElement;
    fn sub(self, rhs: &TiltElement) -> TiltElement {
        self.checked_sub(rhs).expect("configuration mismatch")
    }
}

impl<'a> Mul<&'a TiltElement> for &'a TiltElement {
    type Output = TiltElement;
    fn mul(self, rhs: &TiltElement) -> TiltElement {
        self.checked_mul(rhs).expect("configuration mismatch")
    }
}

impl Neg for &TiltElement {
    type Output = TiltElement;
    fn neg(self) -> TiltElement {
        TiltElement::neg(self)
    }
}

impl fmt::Display for TiltElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_element(self.cfg, &self.digits, self.prec, 't'))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg3() -> FieldConfig {
        FieldConfig::new(3, 8, 2).unwrap()
    }

    #[test]
    fn square_in_characteristic_three() {
        let cfg = cfg3();
        let x = &TiltElement::monomial(cfg, 1, 3) + &TiltElement::monomial(cfg, 1, 9);
        let sq = &x * &x;
        // t^{2/3} + 2 t^{4/3} + t^2
        assert_eq!(sq.digits(), &[(6, 1), (12, 2), (18, 1)]);
        assert!(sq.is_exact());
    }

    #[test]
    fn frobenius_and_root_are_inverse() {
        let cfg = cfg3();
        let x = &TiltElement::monomial(cfg, 1, 3) + &TiltElement::monomial(cfg, 1, 9);
        let r = x.pth_root().unwrap();
        assert_eq!(r.digits(), &[(1, 1), (3, 1)]);
        assert_eq!(r.frobenius(), x);
        assert_eq!(TiltElement::monomial(cfg, 1, 3).frobenius(), TiltElement::monomial(cfg, 1, 9));
        assert_eq!(TiltElement::one(cfg).pth_root().unwrap(), TiltElement::one(cfg));
        assert!(TiltElement::monomial(cfg, 1, 1).pth_root().is_err());
    }

    #[test]
    fn finite_precision_products() {
        let cfg = cfg3();
        let a = TiltElement::monomial(cfg, 1, 9).truncate(27);
        let b = TiltElement::monomial(cfg, 2, 0);
        let c = &a * &b;
        assert_eq!(c.prec_ticks(), Some(27));
        assert_eq!(c.digits(), &[(9, 2)]);
    }

    #[test]
    fn pow_uses_frobenius_digits() {
        let cfg = cfg3();
        let x = &TiltElement::one(cfg) + &TiltElement::monomial(cfg, 1, 9);
        let direct = (0..5).fold(TiltElement::one(cfg), |acc, _| &acc * &x);
        assert_eq!(x.pow(5), direct);
    }

    #[test]
    fn inverse_of_one_plus_t() {
        let cfg = cfg3();
        let x = &TiltElement::one(cfg) + &TiltElement::monomial(cfg, 1, 9);
        let inv = x.inverse_unit().unwrap();
        assert_eq!(inv.prec_ticks(), Some(cfg.cap_ticks()));
        assert!((&x * &inv).congruent(&TiltElement::one(cfg)));
    }
}
