//! Canonical JSON form of elements.

use serde::{Deserialize, Serialize};

use super::config::FieldConfig;
use super::element::{AnyElement, Kind};
use super::text::parse_element_text;
use super::tilt::TiltElement;
use super::untilt::UntiltElement;
use super::valexp::ValExp;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpJson {
    pub num: u64,
    pub denpow: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub num: u64,
    pub denpow: u32,
    pub digit: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub kind: Kind,
    pub p: u32,
    pub prec: u32,
    pub dencap: u32,
    /// `null` marks an exact tilt element.
    pub precexp: Option<ExpJson>,
    pub terms: Vec<TermJson>,
}

impl ExpJson {
    pub fn from_ticks(cfg: FieldConfig, ticks: u64) -> Self {
        let (num, denpow) = cfg.valexp(ticks).parts(cfg.p()).expect("ticks lie in Z[1/p]");
        ExpJson { num, denpow }
    }

    pub fn from_valexp(e: ValExp, p: u32) -> Result<Self> {
        let (num, denpow) = e.parts(p)?;
        Ok(ExpJson { num, denpow })
    }

    pub fn valexp(&self, p: u32) -> Result<ValExp> {
        ValExp::new(self.num, self.denpow, p)
    }
}

fn terms_json(cfg: FieldConfig, digits: &[(u64, u8)]) -> Vec<TermJson> {
    digits
        .iter()
        .map(|&(k, d)| {
            let e = ExpJson::from_ticks(cfg, k);
            TermJson { num: e.num, denpow: e.denpow, digit: d as u64 }
        })
        .collect()
}

impl From<&UntiltElement> for ElementJson {
    fn from(x: &UntiltElement) -> Self {
        let cfg = x.config();
        ElementJson {
            kind: Kind::Untilt,
            p: cfg.p(),
            prec: cfg.prec(),
            dencap: cfg.dencap(),
            precexp: Some(ExpJson::from_ticks(cfg, x.prec_ticks())),
            terms: terms_json(cfg, x.digits()),
        }
    }
}

impl From<&TiltElement> for ElementJson {
    fn from(x: &TiltElement) -> Self {
        let cfg = x.config();
        ElementJson {
            kind: Kind::Tilt,
            p: cfg.p(),
            prec: cfg.prec(),
            dencap: cfg.dencap(),
            precexp: x.prec_ticks().map(|k| ExpJson::from_ticks(cfg, k)),
            terms: terms_json(cfg, x.digits()),
        }
    }
}

impl From<&AnyElement> for ElementJson {
    fn from(x: &AnyElement) -> Self {
        match x {
            AnyElement::Untilt(u) => u.into(),
            AnyElement::Tilt(t) => t.into(),
        }
    }
}

impl ElementJson {
    pub fn config(&self) -> Result<FieldConfig> {
        FieldConfig::new(self.p, self.prec, self.dencap)
    }

    /// Digits outside `0..p` are accepted and normalized (carried for
    /// untilt, reduced mod `p` for tilt).
    pub fn to_element(&self) -> Result<AnyElement> {
        let cfg = self.config()?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = i64::try_from(t.digit).map_err(|_| Error::Parse("digit too large".into()))?;
            terms.push((ValExp::new(t.num, t.denpow, cfg.p())?, c));
        }
        let precexp = self.precexp.map(|e| e.valexp(cfg.p())).transpose()?;
        match self.kind {
            Kind::Untilt => {
                let pe = precexp.unwrap_or(ValExp::integer(cfg.prec() as u64));
                Ok(AnyElement::Untilt(UntiltElement::from_terms(cfg, &terms, pe)?))
            }
            Kind::Tilt => Ok(AnyElement::Tilt(TiltElement::from_terms(cfg, &terms, precexp)?)),
        }
    }
}

impl AnyElement {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ElementJson::from(self)).expect("element JSON is serializable")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&ElementJson::from(self)).expect("element JSON is serializable")
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<AnyElement> {
        let j: ElementJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        j.to_element()
    }

    pub fn from_json_str(s: &str) -> Result<AnyElement> {
        let j: ElementJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.to_element()
    }

    /// Reads the text form under a given configuration. The variable decides
    /// the kind (`p` untilt, `t` tilt); `kind` settles bare constants.
    pub fn from_text(s: &str, cfg: FieldConfig, kind: Option<Kind>) -> Result<AnyElement> {
        let parsed = parse_element_text(s, cfg.p())?;
        let has_var = s.contains('p') || s.contains('t');
        let kind = match (has_var, kind) {
            (true, Some(k)) if k.var() != parsed.var => {
                return Err(Error::Parse(format!("expected a {k} element")));
            }
            (true, _) => {
                if parsed.var == 'p' {
                    Kind::Untilt
                } else {
                    Kind::Tilt
                }
            }
            (false, Some(k)) => k,
            (false, None) => Kind::Untilt,
        };
        match kind {
            Kind::Untilt => {
                let pe = parsed.precexp.unwrap_or(ValExp::integer(cfg.prec() as u64));
                Ok(AnyElement::Untilt(UntiltElement::from_terms(cfg, &parsed.terms, pe)?))
            }
            Kind::Tilt => Ok(AnyElement::Tilt(TiltElement::from_terms(cfg, &parsed.terms, parsed.precexp)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_byte_exact() {
        let s = r#"{"kind":"untilt","p":3,"prec":8,"dencap":2,"precexp":{"num":8,"denpow":0},"terms":[{"num":1,"denpow":1,"digit":2},{"num":4,"denpow":1,"digit":1}]}"#;
        let x = AnyElement::from_json_str(s).unwrap();
        assert_eq!(x.to_json_string(), s);
        assert_eq!(x.to_string(), "2*p^(1/3) + 1*p^(4/3) + O(p^8)");
    }

    #[test]
    fn exact_tilt_has_null_precision() {
        let s = r#"{"kind":"tilt","p":3,"prec":8,"dencap":2,"precexp":null,"terms":[{"num":1,"denpow":1,"digit":1},{"num":1,"denpow":0,"digit":1}]}"#;
        let x = AnyElement::from_json_str(s).unwrap();
        assert_eq!(x.to_json_string(), s);
        assert_eq!(x.to_string(), "1*t^(1/3) + 1*t^1");
    }

    #[test]
    fn noncanonical_digits_are_normalized() {
        let s = r#"{"kind":"untilt","p":3,"prec":8,"dencap":0,"precexp":null,"terms":[{"num":0,"denpow":0,"digit":4}]}"#;
        let x = AnyElement::from_json_str(s).unwrap();
        assert_eq!(x.to_string(), "1 + 1*p^1 + O(p^8)");
    }

    #[test]
    fn text_round_trip() {
        let cfg = FieldConfig::new(3, 8, 2).unwrap();
        for s in ["2*p^(1/3) + 1*p^(4/3) + O(p^8)", "O(p^(7/3))", "1 + 2*t^(2/9) + O(t^5)", "1*t^1", "0"] {
            let x = AnyElement::from_text(s, cfg, Some(if s.contains('p') { Kind::Untilt } else { Kind::Tilt })).unwrap();
            assert_eq!(x.to_string(), s);
        }
    }
}
