use std::fmt;

use serde::{Deserialize, Serialize};

use super::config::FieldConfig;
use super::tilt::TiltElement;
use super::untilt::UntiltElement;
use crate::error::{Error, Result};

/// Which of the two rings an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Untilt,
    Tilt,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Untilt => "untilt",
            Kind::Tilt => "tilt",
        }
    }

    pub fn var(self) -> char {
        match self {
            Kind::Untilt => 'p',
            Kind::Tilt => 't',
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Common interface of `K°` and `K♭°` used by the generic algorithms
/// (polynomials, Newton polygons, Tate algebra elements).
pub trait Element: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static {
    const KIND: Kind;

    fn config(&self) -> FieldConfig;
    fn zero(cfg: FieldConfig) -> Self;
    fn one(cfg: FieldConfig) -> Self;
    fn from_int(cfg: FieldConfig, n: i64) -> Self;
    /// `digit * var^(ticks/scale)`.
    fn monomial(cfg: FieldConfig, digit: u64, ticks: u64) -> Self;
    /// Builds from canonical digits; `prec = None` means exact where the
    /// kind supports it, else the working cap.
    fn from_raw_digits(cfg: FieldConfig, digits: Vec<(u64, u8)>, prec: Option<u64>) -> Self;

    fn add_elem(&self, rhs: &Self) -> Result<Self>;
    fn sub_elem(&self, rhs: &Self) -> Result<Self>;
    fn mul_elem(&self, rhs: &Self) -> Result<Self>;
    fn neg_elem(&self) -> Self;
    fn pow_elem(&self, e: u64) -> Self;

    fn digits(&self) -> &[(u64, u8)];
    fn val_ticks(&self) -> Option<u64>;
    /// `None` for exact elements.
    fn prec_ticks(&self) -> Option<u64>;
    fn residue(&self) -> u8;
    fn is_zero(&self) -> bool {
        self.digits().is_empty()
    }
    /// Valuation, or the precision when the element is zero at precision.
    fn val_or_prec(&self) -> u64 {
        self.val_ticks().or(self.prec_ticks()).unwrap_or(u64::MAX)
    }

    fn shift_up(&self, ticks: u64) -> Self;
    fn shift_down(&self, ticks: u64) -> Result<Self>;
    fn truncate(&self, ticks: u64) -> Self;
    fn inverse_unit(&self) -> Result<Self>;
    fn div_elem(&self, rhs: &Self) -> Result<Self>;
    /// Replaces the claimed precision without touching the digits.
    fn with_prec_ticks(&self, ticks: Option<u64>) -> Self;
}

impl Element for UntiltElement {
    const KIND: Kind = Kind::Untilt;

    fn config(&self) -> FieldConfig {
        UntiltElement::config(self)
    }
    fn zero(cfg: FieldConfig) -> Self {
        UntiltElement::zero(cfg)
    }
    fn one(cfg: FieldConfig) -> Self {
        UntiltElement::one(cfg)
    }
    fn from_int(cfg: FieldConfig, n: i64) -> Self {
        UntiltElement::from_int(cfg, n)
    }
    fn monomial(cfg: FieldConfig, digit: u64, ticks: u64) -> Self {
        UntiltElement::monomial(cfg, digit, ticks)
    }
    fn from_raw_digits(cfg: FieldConfig, digits: Vec<(u64, u8)>, prec: Option<u64>) -> Self {
        UntiltElement::from_raw(cfg, digits, prec.unwrap_or(cfg.cap_ticks()))
    }
    fn add_elem(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(rhs)
    }
    fn sub_elem(&self, rhs: &Self) -> Result<Self> {
        self.checked_sub(rhs)
    }
    fn mul_elem(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(rhs)
    }
    fn neg_elem(&self) -> Self {
        self.neg()
    }
    fn pow_elem(&self, e: u64) -> Self {
        self.pow(e)
    }
    fn digits(&self) -> &[(u64, u8)] {
        UntiltElement::digits(self)
    }
    fn val_ticks(&self) -> Option<u64> {
        UntiltElement::val_ticks(self)
    }
    fn prec_ticks(&self) -> Option<u64> {
        Some(UntiltElement::prec_ticks(self))
    }
    fn residue(&self) -> u8 {
        UntiltElement::residue(self)
    }
    fn shift_up(&self, ticks: u64) -> Self {
        UntiltElement::shift_up(self, ticks)
    }
    fn shift_down(&self, ticks: u64) -> Result<Self> {
        UntiltElement::shift_down(self, ticks)
    }
    fn truncate(&self, ticks: u64) -> Self {
        UntiltElement::truncate(self, ticks)
    }
    fn inverse_unit(&self) -> Result<Self> {
        UntiltElement::inverse_unit(self)
    }
    fn div_elem(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }
    fn with_prec_ticks(&self, ticks: Option<u64>) -> Self {
        self.with_prec(ticks.unwrap_or(self.config().cap_ticks()))
    }
}

impl Element for TiltElement {
    const KIND: Kind = Kind::Tilt;

    fn config(&self) -> FieldConfig {
        TiltElement::config(self)
    }
    fn zero(cfg: FieldConfig) -> Self {
        TiltElement::zero(cfg)
    }
    fn one(cfg: FieldConfig) -> Self {
        TiltElement::one(cfg)
    }
    fn from_int(cfg: FieldConfig, n: i64) -> Self {
        TiltElement::from_int(cfg, n)
    }
    fn monomial(cfg: FieldConfig, digit: u64, ticks: u64) -> Self {
        TiltElement::monomial(cfg, digit, ticks)
    }
    fn from_raw_digits(cfg: FieldConfig, digits: Vec<(u64, u8)>, prec: Option<u64>) -> Self {
        TiltElement::from_raw(cfg, digits, prec)
    }
    fn add_elem(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(rhs)
    }
    fn sub_elem(&self, rhs: &Self) -> Result<Self> {
        self.checked_sub(rhs)
    }
    fn mul_elem(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(rhs)
    }
    fn neg_elem(&self) -> Self {
        self.neg()
    }
    fn pow_elem(&self, e: u64) -> Self {
        self.pow(e)
    }
    fn digits(&self) -> &[(u64, u8)] {
        TiltElement::digits(self)
    }
    fn val_ticks(&self) -> Option<u64> {
        TiltElement::val_ticks(self)
    }
    fn prec_ticks(&self) -> Option<u64> {
        TiltElement::prec_ticks(self)
    }
    fn residue(&self) -> u8 {
        TiltElement::residue(self)
    }
    fn shift_up(&self, ticks: u64) -> Self {
        TiltElement::shift_up(self, ticks)
    }
    fn shift_down(&self, ticks: u64) -> Result<Self> {
        TiltElement::shift_down(self, ticks)
    }
    fn truncate(&self, ticks: u64) -> Self {
        TiltElement::truncate(self, ticks)
    }
    fn inverse_unit(&self) -> Result<Self> {
        TiltElement::inverse_unit(self)
    }
    fn div_elem(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }
    fn with_prec_ticks(&self, ticks: Option<u64>) -> Self {
        self.with_prec(ticks)
    }
}

/// An element of either kind, as read from JSON or text.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyElement {
    Untilt(UntiltElement),
    Tilt(TiltElement),
}

impl AnyElement {
    pub fn kind(&self) -> Kind {
        match self {
            AnyElement::Untilt(_) => Kind::Untilt,
            AnyElement::Tilt(_) => Kind::Tilt,
        }
    }

    pub fn config(&self) -> FieldConfig {
        match self {
            AnyElement::Untilt(x) => x.config(),
            AnyElement::Tilt(x) => x.config(),
        }
    }

    pub fn into_untilt(self) -> Result<UntiltElement> {
        match self {
            AnyElement::Untilt(x) => Ok(x),
            AnyElement::Tilt(_) => Err(Error::InvalidArgument("expected an untilt element".into())),
        }
    }

    pub fn into_tilt(self) -> Result<TiltElement> {
        match self {
            AnyElement::Tilt(x) => Ok(x),
            AnyElement::Untilt(_) => Err(Error::InvalidArgument("expected a tilt element".into())),
        }
    }

    pub fn add(&self, rhs: &AnyElement) -> Result<AnyElement> {
        self.binop(rhs, |a, b| a.checked_add(b), |a, b| a.checked_add(b))
    }

    pub fn sub(&self, rhs: &AnyElement) -> Result<AnyElement> {
        self.binop(rhs, |a, b| a.checked_sub(b), |a, b| a.checked_sub(b))
    }

    pub fn mul(&self, rhs: &AnyElement) -> Result<AnyElement> {
        self.binop(rhs, |a, b| a.checked_mul(b), |a, b| a.checked_mul(b))
    }

    fn binop(
        &self,
        rhs: &AnyElement,
        fu: impl Fn(&UntiltElement, &UntiltElement) -> Result<UntiltElement>,
        ft: impl Fn(&TiltElement, &TiltElement) -> Result<TiltElement>,
    ) -> Result<AnyElement> {
        match (self, rhs) {
            (AnyElement::Untilt(a), AnyElement::Untilt(b)) => fu(a, b).map(AnyElement::Untilt),
            (AnyElement::Tilt(a), AnyElement::Tilt(b)) => ft(a, b).map(AnyElement::Tilt),
            _ => Err(Error::ConfigMismatch("cannot combine untilt and tilt elements".into())),
        }
    }

    pub fn valuation(&self) -> Option<super::ValExp> {
        match self {
            AnyElement::Untilt(x) => x.valuation(),
            AnyElement::Tilt(x) => x.valuation(),
        }
    }
}

impl fmt::Display for AnyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyElement::Untilt(x) => x.fmt(f),
            AnyElement::Tilt(x) => x.fmt(f),
        }
    }
}
