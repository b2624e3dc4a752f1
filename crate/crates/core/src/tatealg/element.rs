use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arith::{AnyElement, Element, ElementJson, ExpJson, FieldConfig, Kind, TiltElement, UntiltElement};
use crate::error::{Error, Result};

/// Exponent vector in ticks (multiples of `1/p^dencap`).
pub type Exps = Vec<u64>;

/// Graded lexicographic order: total degree first, then lexicographic.
pub fn grlex(a: &[u64], b: &[u64]) -> Ordering {
    let da: u64 = a.iter().sum();
    let db: u64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

pub fn divides(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Finite sum of monomials `T^alpha` with exponents in `(1/p^m) Z>=0`
/// and coefficients of one kind: a truncated element of
/// `K°<T_0^{1/p^inf}, ..., T_n^{1/p^inf}>` or its tilt.
///
/// Coefficients that vanish at full precision are not stored; coefficients
/// zero only at a lower precision are kept so that the loss stays visible.
#[derive(Clone, Debug, PartialEq)]
pub struct TateElement<E> {
    cfg: FieldConfig,
    nvars: usize,
    terms: BTreeMap<Exps, E>,
}

impl<E: Element> TateElement<E> {
    pub fn zero(cfg: FieldConfig, nvars: usize) -> Self {
        TateElement { cfg, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: E, nvars: usize) -> Self {
        let mut out = Self::zero(c.config(), nvars);
        out.insert(vec![0; nvars], c);
        out
    }

    /// `c * T^exps`.
    pub fn monomial(c: E, exps: Exps) -> Self {
        let mut out = Self::zero(c.config(), exps.len());
        out.insert(exps, c);
        out
    }

    /// `T_i`.
    pub fn var(cfg: FieldConfig, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = cfg.scale();
        Self::monomial(E::one(cfg), e)
    }

    pub fn from_terms(cfg: FieldConfig, nvars: usize, terms: impl IntoIterator<Item = (Exps, E)>) -> Result<Self> {
        let mut out = Self::zero(cfg, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::InvalidArgument(format!("monomial with {} exponents, expected {nvars}", e.len())));
            }
            cfg.check_same(&c.config())?;
            out.add_term(e, &c)?;
        }
        Ok(out)
    }

    fn negligible(&self, c: &E) -> bool {
        c.is_zero() && c.prec_ticks().is_none_or(|k| k >= self.cfg.cap_ticks())
    }

    fn insert(&mut self, e: Exps, c: E) {
        if self.negligible(&c) {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, c);
        }
    }

    pub fn add_term(&mut self, e: Exps, c: &E) -> Result<()> {
        let next = match self.terms.get(&e) {
            Some(old) => old.add_elem(c)?,
            None => c.clone(),
        };
        self.insert(e, next);
        Ok(())
    }

    pub fn config(&self) -> FieldConfig {
        self.cfg
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exps, E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn coeff(&self, e: &[u64]) -> Option<&E> {
        self.terms.get(e)
    }

    /// Nonzero terms in decreasing graded-lex order.
    pub fn sorted_terms(&self) -> Vec<(&Exps, &E)> {
        let mut v: Vec<_> = self.terms.iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by(|a, b| grlex(b.0, a.0));
        v
    }

    pub fn leading(&self) -> Option<(&Exps, &E)> {
        self.sorted_terms().into_iter().next()
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        self.cfg.check_same(&rhs.cfg)?;
        if self.nvars != rhs.nvars {
            return Err(Error::InvalidArgument(format!("{} vs {} variables", self.nvars, rhs.nvars)));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.neg_elem())).collect();
        TateElement { cfg: self.cfg, nvars: self.nvars, terms }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let mut out = Self::zero(self.cfg, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, &ca.mul_elem(cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u64) -> Result<Self> {
        let mut out = Self::constant(E::one(self.cfg), self.nvars);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &E) -> Result<Self> {
        let mut out = Self::zero(self.cfg, self.nvars);
        for (e, a) in &self.terms {
            out.insert(e.clone(), a.mul_elem(c)?);
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `var^(ticks)`.
    pub fn shift_up(&self, ticks: u64) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.shift_up(ticks))).collect();
        TateElement { cfg: self.cfg, nvars: self.nvars, terms }
    }

    pub fn shift_down(&self, ticks: u64) -> Result<Self> {
        let mut out = Self::zero(self.cfg, self.nvars);
        for (e, c) in &self.terms {
            out.insert(e.clone(), c.shift_down(ticks)?);
        }
        Ok(out)
    }

    /// Multiplies by the monomial `T^e`.
    pub fn mul_monomial(&self, e: &[u64]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| (a.iter().zip(e).map(|(x, y)| x + y).collect(), c.clone()))
            .collect();
        TateElement { cfg: self.cfg, nvars: self.nvars, terms }
    }

    /// Smallest coefficient valuation: the value at the Gauss point. `None`
    /// when every coefficient vanishes at precision.
    pub fn gauss_valuation(&self) -> Option<u64> {
        self.terms.values().filter_map(|c| c.val_ticks()).min()
    }

    /// Lowest precision among stored coefficients (`None` if all exact).
    pub fn min_prec(&self) -> Option<u64> {
        self.terms.values().filter_map(|c| c.prec_ticks()).min()
    }

    /// Total degree when every monomial has the same one.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u64>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn map_coeffs<F: Element>(&self, f: impl Fn(&E) -> Result<F>) -> Result<TateElement<F>> {
        let mut out = TateElement::<F>::zero(self.cfg, self.nvars);
        for (e, c) in &self.terms {
            out.insert(e.clone(), f(c)?);
        }
        Ok(out)
    }
}

impl TateElement<TiltElement> {
    /// `p`-th root: exponents and coefficients divided by `p`.
    pub fn pth_root(&self) -> Result<Self> {
        let p = self.cfg.p() as u64;
        let mut out = Self::zero(self.cfg, self.nvars);
        for (e, c) in &self.terms {
            if e.iter().any(|&x| x % p != 0) {
                return Err(Error::dencap(self.cfg.dencap(), "p-th root of a monomial"));
            }
            out.insert(e.iter().map(|&x| x / p).collect(), c.pth_root()?);
        }
        Ok(out)
    }

    /// `x^(num/p^k)`, defined through `p`-th roots in characteristic `p`.
    pub fn pow_frac(&self, num: u64, k: u32) -> Result<Self> {
        let mut r = self.clone();
        for _ in 0..k {
            r = r.pth_root()?;
        }
        // Frobenius digits of the exponent keep the products small
        let p = self.cfg.p() as u64;
        let mut out = Self::constant(TiltElement::one(self.cfg), self.nvars);
        let mut base = r;
        let mut e = num;
        while e > 0 {
            for _ in 0..e % p {
                out = out.mul(&base)?;
            }
            e /= p;
            if e > 0 {
                base = base.frobenius();
            }
        }
        Ok(out)
    }

    pub fn frobenius(&self) -> Self {
        let p = self.cfg.p() as u64;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().map(|&x| x * p).collect(), c.frobenius()))
            .collect();
        TateElement { cfg: self.cfg, nvars: self.nvars, terms }
    }
}

impl<E: Element> fmt::Display for TateElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in terms.into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let r = self.cfg.ratio(x);
                if r.is_integer() && *r.numer() == 1 {
                    write!(f, "*T{i}")?;
                } else if r.is_integer() {
                    write!(f, "*T{i}^{}", r.numer())?;
                } else {
                    write!(f, "*T{i}^({}/{})", r.numer(), r.denom())?;
                }
            }
        }
        Ok(())
    }
}

/// A Tate algebra element of a single total degree.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousElement<E> {
    degree: u64,
    elem: TateElement<E>,
}

impl<E: Element> HomogeneousElement<E> {
    pub fn new(elem: TateElement<E>, degree: u64) -> Result<Self> {
        if elem.terms.keys().any(|e| e.iter().sum::<u64>() != degree) {
            return Err(Error::InvalidArgument(format!(
                "element is not homogeneous of degree {}",
                elem.cfg.ratio(degree)
            )));
        }
        Ok(HomogeneousElement { degree, elem })
    }

    /// Degree taken from the terms; fails on mixed degrees or no terms.
    pub fn from_element(elem: TateElement<E>) -> Result<Self> {
        let d = elem
            .homogeneous_degree()
            .ok_or_else(|| Error::InvalidArgument("element is empty or not homogeneous".into()))?;
        Self::new(elem, d)
    }

    pub fn degree_ticks(&self) -> u64 {
        self.degree
    }

    pub fn degree(&self) -> Ratio<i64> {
        self.elem.cfg.ratio(self.degree)
    }

    pub fn elem(&self) -> &TateElement<E> {
        &self.elem
    }

    pub fn into_elem(self) -> TateElement<E> {
        self.elem
    }

    pub fn config(&self) -> FieldConfig {
        self.elem.cfg
    }

    pub fn nvars(&self) -> usize {
        self.elem.nvars
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TateTermJson {
    pub exps: Vec<ExpJson>,
    pub coeff: ElementJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TateJson {
    #[serde(default)]
    pub degree: Option<ExpJson>,
    pub terms: Vec<TateTermJson>,
}

/// Either coefficient kind, as read from JSON.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyTate {
    Untilt(TateElement<UntiltElement>),
    Tilt(TateElement<TiltElement>),
}

impl<E: Element> TateElement<E>
where
    for<'a> ElementJson: From<&'a E>,
{
    pub fn to_json_value(&self) -> serde_json::Value {
        let degree = self.homogeneous_degree().map(|d| ExpJson::from_ticks(self.cfg, d));
        self.json_with_degree(degree)
    }

    fn json_with_degree(&self, degree: Option<ExpJson>) -> serde_json::Value {
        let mut terms: Vec<(&Exps, &E)> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex(b.0, a.0));
        let j = TateJson {
            degree,
            terms: terms
                .into_iter()
                .map(|(e, c)| TateTermJson {
                    exps: e.iter().map(|&x| ExpJson::from_ticks(self.cfg, x)).collect(),
                    coeff: ElementJson::from(c),
                })
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }
}

impl<E: Element> HomogeneousElement<E>
where
    for<'a> ElementJson: From<&'a E>,
{
    pub fn to_json_value(&self) -> serde_json::Value {
        self.elem.json_with_degree(Some(ExpJson::from_ticks(self.elem.cfg, self.degree)))
    }
}

impl AnyTate {
    /// `nvars` and `cfg` are needed only for inputs without terms.
    pub fn from_json_value(v: &serde_json::Value, fallback: Option<(FieldConfig, usize)>) -> Result<(AnyTate, Option<u64>)> {
        let j: TateJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut parsed = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            parsed.push((t.coeff.to_element()?, &t.exps));
        }
        let (cfg, nvars, kind) = match parsed.first() {
            Some((c, e)) => (c.config(), e.len(), c.kind()),
            None => {
                let (cfg, n) = fallback.ok_or_else(|| Error::Parse("empty element needs a configuration".into()))?;
                (cfg, n, Kind::Untilt)
            }
        };
        let mut terms_u = Vec::new();
        let mut terms_t = Vec::new();
        for (c, exps) in parsed {
            let e = exps
                .iter()
                .map(|x| cfg.ticks(x.valexp(cfg.p())?))
                .collect::<Result<Exps>>()?;
            match c {
                AnyElement::Untilt(u) if kind == Kind::Untilt => terms_u.push((e, u)),
                AnyElement::Tilt(t) if kind == Kind::Tilt => terms_t.push((e, t)),
                _ => return Err(Error::Parse("mixed coefficient kinds".into())),
            }
        }
        let degree = j
            .degree
            .map(|d| cfg.ticks(d.valexp(cfg.p())?))
            .transpose()?;
        let out = match kind {
            Kind::Untilt => AnyTate::Untilt(TateElement::from_terms(cfg, nvars, terms_u)?),
            Kind::Tilt => AnyTate::Tilt(TateElement::from_terms(cfg, nvars, terms_t)?),
        };
        if let Some(d) = degree {
            let ok = match &out {
                AnyTate::Untilt(x) => HomogeneousElement::new(x.clone(), d).is_ok(),
                AnyTate::Tilt(x) => HomogeneousElement::new(x.clone(), d).is_ok(),
            };
            if !ok {
                return Err(Error::Parse("terms do not match the stated degree".into()));
            }
        }
        Ok((out, degree))
    }
}
