use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::config::FieldConfig;
use super::digits::{mul_into, sat, truncate, Acc, Digits};
use super::valexp::ValExp;
use crate::error::{Error, Result};

/// A truncated element of `K° = Z_p[p^{1/p^inf}]^`, written canonically as
/// `sum a_e p^e` with digits `a_e` in `1..p` and `e < precexp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UntiltElement {
    cfg: FieldConfig,
    digits: Digits,
    prec: u64,
}

impl UntiltElement {
    pub fn zero(cfg: FieldConfig) -> Self {
        UntiltElement { cfg, digits: Vec::new(), prec: cfg.cap_ticks() }
    }

    pub fn one(cfg: FieldConfig) -> Self {
        Self::monomial(cfg, 1, 0)
    }

    /// `digit * p^(ticks/scale)`, reduced into canonical form.
    pub fn monomial(cfg: FieldConfig, digit: u64, ticks: u64) -> Self {
        let mut acc = Acc::new(cfg.cap_ticks());
        if ticks < cfg.cap_ticks() {
            acc.add(ticks, digit as i64);
        }
        Self::from_acc(cfg, acc, cfg.cap_ticks())
    }

    pub fn from_int(cfg: FieldConfig, n: i64) -> Self {
        let mut acc = Acc::new(cfg.cap_ticks());
        acc.add(0, n);
        Self::from_acc(cfg, acc, cfg.cap_ticks())
    }

    /// Builds an element from arbitrary `(exponent, coefficient)` pairs,
    /// carrying as needed.
    pub fn from_terms(cfg: FieldConfig, terms: &[(ValExp, i64)], precexp: ValExp) -> Result<Self> {
        let prec = cfg.ticks(precexp)?.min(cfg.cap_ticks());
        let mut acc = Acc::new(prec);
        for &(e, c) in terms {
            let k = cfg.ticks(e)?;
            if k < prec {
                acc.add(k, c);
            }
        }
        Ok(Self::from_acc(cfg, acc, prec))
    }

    /// Canonical constructor from tick-indexed digits; rejects digits out of
    /// range or unsorted input.
    pub fn from_digits(cfg: FieldConfig, digits: Vec<(u64, u8)>, prec: u64) -> Result<Self> {
        let prec = prec.min(cfg.cap_ticks());
        let mut last = None;
        for &(k, d) in &digits {
            if d == 0 || d as u32 >= cfg.p() {
                return Err(Error::InvalidArgument(format!("digit {d} outside 1..{}", cfg.p())));
            }
            if last.is_some_and(|l| l >= k) {
                return Err(Error::InvalidArgument("exponents must be strictly increasing".into()));
            }
            if k >= prec {
                return Err(Error::InvalidArgument("term at or beyond the precision exponent".into()));
            }
            last = Some(k);
        }
        Ok(UntiltElement { cfg, digits, prec })
    }

    pub(crate) fn from_acc(cfg: FieldConfig, acc: Acc, prec: u64) -> Self {
        let prec = prec.min(cfg.cap_ticks());
        let digits = acc.normalize_carry(cfg.p(), cfg.scale(), prec);
        UntiltElement { cfg, digits, prec }
    }

    pub(crate) fn from_raw(cfg: FieldConfig, mut digits: Digits, prec: u64) -> Self {
        let prec = prec.min(cfg.cap_ticks());
        truncate(&mut digits, prec);
        UntiltElement { cfg, digits, prec }
    }

    pub fn config(&self) -> FieldConfig {
        self.cfg
    }

    pub fn digits(&self) -> &[(u64, u8)] {
        &self.digits
    }

    /// Digits as `(exponent, digit)` pairs.
    pub fn terms(&self) -> Vec<(ValExp, u8)> {
        self.digits.iter().map(|&(k, d)| (self.cfg.valexp(k), d)).collect()
    }

    pub fn prec_ticks(&self) -> u64 {
        self.prec
    }

    pub fn precexp(&self) -> ValExp {
        self.cfg.valexp(self.prec)
    }

    /// Smallest stored exponent, or `None` when the element is zero at the
    /// current precision.
    pub fn valuation(&self) -> Option<ValExp> {
        self.val_ticks().map(|k| self.cfg.valexp(k))
    }

    pub fn val_ticks(&self) -> Option<u64> {
        self.digits.first().map(|&(k, _)| k)
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Lower bound for the valuation that is always available.
    pub(crate) fn val_or_prec(&self) -> u64 {
        self.val_ticks().unwrap_or(self.prec)
    }

    /// Digit at exponent 0 (the residue in `F_p`).
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
        let prec = self.prec.min(rhs.prec);
        let mut acc = Acc::new(prec);
        acc.extend(&self.digits, 1, prec);
        acc.extend(&rhs.digits, sign, prec);
        Self::from_acc(self.cfg, acc, prec)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.cfg.check_same(&rhs.cfg)?;
        let prec = sat(self.prec, rhs.val_or_prec())
            .min(sat(rhs.prec, self.val_or_prec()))
            .min(self.cfg.cap_ticks());
        Ok(self.mul_to(rhs, prec))
    }

    /// Product of the stored representatives, reported modulo `p^(prec)`.
    /// The caller is responsible for the precision claim.
    pub(crate) fn mul_to(&self, rhs: &Self, prec: u64) -> Self {
        let prec = prec.min(self.cfg.cap_ticks());
        let mut acc = Acc::new(prec);
        mul_into(&mut acc, &self.digits, &rhs.digits, prec);
        Self::from_acc(self.cfg, acc, prec)
    }

    pub fn neg(&self) -> Self {
        let mut acc = Acc::new(self.prec);
        acc.extend(&self.digits, -1, self.prec);
        Self::from_acc(self.cfg, acc, self.prec)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut out = Self::one(self.cfg);
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Multiplication by `p^(ticks/scale)`.
    pub fn shift_up(&self, ticks: u64) -> Self {
        let digits = self.digits.iter().map(|&(k, d)| (k + ticks, d)).collect();
        Self::from_raw(self.cfg, digits, sat(self.prec, ticks))
    }

    /// Exact division by `p^(ticks/scale)`; the element must be divisible.
    pub fn shift_down(&self, ticks: u64) -> Result<Self> {
        if self.val_or_prec() < ticks {
            return Err(Error::InvalidArgument(format!(
                "element of valuation {} is not divisible by p^{}",
                self.cfg.valexp(self.val_or_prec()),
                self.cfg.valexp(ticks)
            )));
        }
        let digits = self.digits.iter().map(|&(k, d)| (k - ticks, d)).collect();
        Ok(Self::from_raw(self.cfg, digits, self.prec - ticks))
    }

    /// Forgets everything at or above `p^(ticks/scale)`.
    pub fn truncate(&self, ticks: u64) -> Self {
        Self::from_raw(self.cfg, self.digits.clone(), self.prec.min(ticks))
    }

    /// Reinterprets the stored representative as known to the given
    /// precision. Used where an algorithm certifies precision separately
    /// (Newton iteration, Hensel estimates).
    pub(crate) fn with_prec(&self, ticks: u64) -> Self {
        Self::from_raw(self.cfg, self.digits.clone(), ticks)
    }

    /// Inverse of a unit, by Newton iteration `y <- y (2 - u y)`.
    pub fn inverse_unit(&self) -> Result<Self> {
        let r = self.residue();
        if r == 0 {
            return Err(Error::InvalidArgument("not a unit at current precision".into()));
        }
        let p = self.cfg.p() as u64;
        let r_inv = (1..p).find(|&c| (c * r as u64) % p == 1).expect("F_p is a field");
        let mut y = Self::from_int(self.cfg, r_inv as i64).with_prec(self.prec);
        let two = Self::from_int(self.cfg, 2);
        // error valuation at least doubles each round
        for _ in 0..64 {
            let uy = self.mul_to(&y, self.prec);
            let err = &uy - &Self::one(self.cfg);
            if err.is_zero() {
                return Ok(y.with_prec(self.prec));
            }
            y = y.mul_to(&(&two - &uy), self.prec);
        }
        Err(Error::NoConvergence("unit inverse".into()))
    }

    /// `self / rhs` when `v(self) >= v(rhs)`.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.cfg.check_same(&rhs.cfg)?;
        let w = rhs
            .val_ticks()
            .ok_or_else(|| Error::Indeterminate("division by an element that is zero at precision".into()))?;
        let unit = rhs.shift_down(w)?;
        let inv = unit.inverse_unit()?;
        let num = if self.val_or_prec() < w {
            return Err(Error::InvalidArgument("quotient is not integral".into()));
        } else {
            self.shift_down(w)?
        };
        num.checked_mul(&inv)
    }

    /// True when `self - rhs` vanishes at the common precision.
    pub fn congruent(&self, rhs: &Self) -> bool {
        (self - rhs).is_zero()
    }

    /// Valuation of `self - rhs` (or their common precision if that
    /// difference is zero at precision).
    pub fn agreement_ticks(&self, rhs: &Self) -> u64 {
        (self - rhs).val_or_prec()
    }
}

impl<'a> Add<&'a UntiltElement> for &'a UntiltElement {
    type Output = UntiltElement;
    fn add(self, rhs: &UntiltElement) -> UntiltElement {
        self.checked_add(rhs).expect("configuration mismatch")
    }
}

impl<'a> Sub<&'a UntiltElement> for &'a UntiltElement {
    type Output = UntiltElement;
    fn sub(self, rhs: &UntiltElement) -> UntiltElement {
        self.checked_sub(rhs).expect("configuration mismatch")
    }
}

impl<'a> Mul<&'a UntiltElement> for &'a UntiltElement {
    type Output = UntiltElement;
    fn mul(self, rhs: &UntiltElement) -> UntiltElement {
        self.checked_mul(rhs).expect("configuration mismatch")
    }
}

impl Neg for &UntiltElement {
    type Output = UntiltElement;
    fn neg(self) -> UntiltElement {
        UntiltElement::neg(self)
    }
}

impl fmt::Display for UntiltElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_element(self.cfg, &self.digits, Some(self.prec), 'p'))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg3() -> FieldConfig {
        FieldConfig::new(3, 8, 2).unwrap()
    }

    #[test]
    fn integer_carry() {
        let cfg = cfg3();
        let two = UntiltElement::from_int(cfg, 2);
        let four = &two + &two;
        assert_eq!(four.digits(), &[(0, 1), (9, 1)]);
    }

    #[test]
    fn fractional_carry_lands_one_unit_higher() {
        let cfg = cfg3();
        let a = UntiltElement::monomial(cfg, 2, 3);
        let s = &a + &a;
        // 2p^{1/3} + 2p^{1/3} = p^{1/3} + p^{4/3}
        assert_eq!(s.digits(), &[(3, 1), (12, 1)]);
    }

    #[test]
    fn minus_one_is_all_top_digits() {
        let cfg = FieldConfig::new(3, 3, 0).unwrap();
        let m = UntiltElement::from_int(cfg, -1);
        assert_eq!(m.digits(), &[(0, 2), (1, 2), (2, 2)]);
    }

    #[test]
    fn valuation_and_zero() {
        let cfg = cfg3();
        let a = &UntiltElement::monomial(cfg, 1, 1) + &UntiltElement::monomial(cfg, 1, 9);
        assert_eq!(a.valuation(), Some(ValExp::new(1, 2, 3).unwrap()));
        assert_eq!(UntiltElement::zero(cfg).valuation(), None);
        let b = &UntiltElement::from_int(cfg, 2) + &UntiltElement::monomial(cfg, 1, 15);
        assert_eq!(b.valuation(), Some(ValExp::ZERO));
    }

    #[test]
    fn mul_precision_tracks_valuations() {
        let cfg = cfg3();
        let a = UntiltElement::monomial(cfg, 1, 9).truncate(27); // p mod p^3
        let b = UntiltElement::monomial(cfg, 1, 18).truncate(36); // p^2 mod p^4
        let c = &a * &b;
        // min(3 + 2, 4 + 1) = 5
        assert_eq!(c.prec_ticks(), 45);
        assert_eq!(c.digits(), &[(27, 1)]);
    }

    #[test]
    fn inverse_and_division() {
        let cfg = cfg3();
        let u = &UntiltElement::from_int(cfg, 2) + &UntiltElement::monomial(cfg, 1, 4);
        let inv = u.inverse_unit().unwrap();
        assert!((&u * &inv).congruent(&UntiltElement::one(cfg)));
        let p = UntiltElement::monomial(cfg, 1, 9);
        let q = (&p * &u).checked_div(&p).unwrap();
        assert!(q.congruent(&u));
        assert!(UntiltElement::one(cfg).checked_div(&p).is_err());
    }

    #[test]
    fn shift_round_trip() {
        let cfg = cfg3();
        let a = UntiltElement::from_int(cfg, 5);
        let up = a.shift_up(4);
        assert_eq!(up.val_ticks(), Some(4));
        assert_eq!(up.shift_down(4).unwrap().digits(), a.digits());
        assert!(a.shift_down(1).is_err());
    }
}
