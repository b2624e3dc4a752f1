//! Human-readable element syntax: `2*p^(1/3) + 1*p^(4/3) + O(p^8)`.
//!
//! Integer exponents are written bare (`p^4`), fractional ones in
//! parentheses. Exponent zero prints the digit alone. Exact tilt elements
//! have no `O(..)` term; the exact zero prints as `0`.

use num_rational::Ratio;

use super::config::FieldConfig;
use super::valexp::ValExp;
use crate::error::{Error, Result};

fn format_exp(r: Ratio<i64>) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

pub(crate) fn format_element(cfg: FieldConfig, digits: &[(u64, u8)], prec: Option<u64>, var: char) -> String {
    let mut parts: Vec<String> = digits
        .iter()
        .map(|&(k, d)| {
            if k == 0 {
                format!("{d}")
            } else {
                format!("{d}*{var}^{}", format_exp(cfg.ratio(k)))
            }
        })
        .collect();
    if let Some(k) = prec {
        parts.push(format!("O({var}^{})", format_exp(cfg.ratio(k))));
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ")
}

/// Parsed but not yet normalized element text.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedText {
    pub var: char,
    pub terms: Vec<(ValExp, i64)>,
    pub precexp: Option<ValExp>,
}

fn parse_exp(s: &str, p: u32) -> Result<ValExp> {
    let bad = || Error::Parse(format!("bad exponent {s:?}"));
    let inner = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(s);
    let r = match inner.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if b <= 0 {
                return Err(bad());
            }
            Ratio::new(a, b)
        }
        None => Ratio::from_integer(inner.trim().parse::<i64>().map_err(|_| bad())?),
    };
    if !ValExp::in_lattice(r, p) {
        return Err(Error::Parse(format!("exponent {r} is not in Z[1/{p}]")));
    }
    ValExp::from_ratio(r).map_err(|_| bad())
}

/// Reads `[digit*]var[^exp]`, a bare digit, or `O(var^exp)`.
pub fn parse_element_text(s: &str, p: u32) -> Result<ParsedText> {
    let mut var = None;
    let mut terms = Vec::new();
    let mut precexp = None;
    let mut note_var = |c: char| -> Result<()> {
        match var {
            Some(v) if v != c => Err(Error::Parse("mixed variables p and t".into())),
            _ => {
                var = Some(c);
                Ok(())
            }
        }
    };
    let s = s.trim();
    if s == "0" {
        return Ok(ParsedText { var: 't', terms, precexp });
    }
    for tok in s.split('+').map(str::trim) {
        if tok.is_empty() {
            return Err(Error::Parse(format!("empty term in {s:?}")));
        }
        if let Some(body) = tok.strip_prefix("O(").and_then(|b| b.strip_suffix(')')) {
            if precexp.is_some() {
                return Err(Error::Parse("more than one O-term".into()));
            }
            let (v, e) = split_power(body, p)?;
            note_var(v)?;
            precexp = Some(e);
            continue;
        }
        if precexp.is_some() {
            return Err(Error::Parse("terms after the O-term".into()));
        }
        let (coeff, rest) = match tok.split_once('*') {
            Some((c, r)) => (parse_digit(c)?, Some(r.trim())),
            None if tok.starts_with(|c: char| c.is_ascii_digit()) => (parse_digit(tok)?, None),
            None => (1, Some(tok)),
        };
        let e = match rest {
            None => ValExp::ZERO,
            Some(r) => {
                let (v, e) = split_power(r, p)?;
                note_var(v)?;
                e
            }
        };
        terms.push((e, coeff));
    }
    Ok(ParsedText { var: var.unwrap_or('p'), terms, precexp })
}

fn parse_digit(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))
}

fn split_power(s: &str, p: u32) -> Result<(char, ValExp)> {
    let s = s.trim();
    let mut chars = s.chars();
    let v = chars.next().ok_or_else(|| Error::Parse("missing variable".into()))?;
    if v != 'p' && v != 't' {
        return Err(Error::Parse(format!("unknown variable in {s:?}")));
    }
    let rest = chars.as_str().trim();
    if rest.is_empty() {
        return Ok((v, ValExp::integer(1)));
    }
    let e = rest
        .strip_prefix('^')
        .ok_or_else(|| Error::Parse(format!("expected '^' in {s:?}")))?;
    Ok((v, parse_exp(e.trim(), p)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_mixed_exponents() {
        let cfg = FieldConfig::new(3, 8, 2).unwrap();
        let s = format_element(cfg, &[(0, 1), (3, 2), (12, 1), (18, 2)], Some(72), 'p');
        assert_eq!(s, "1 + 2*p^(1/3) + 1*p^(4/3) + 2*p^2 + O(p^8)");
        assert_eq!(format_element(cfg, &[], Some(72), 'p'), "O(p^8)");
        assert_eq!(format_element(cfg, &[], None, 't'), "0");
        assert_eq!(format_element(cfg, &[(9, 1)], None, 't'), "1*t^1");
    }

    #[test]
    fn parse_reads_back() {
        let t = parse_element_text("1 + 2*p^(1/3) + 1*p^(4/3) + O(p^8)", 3).unwrap();
        assert_eq!(t.var, 'p');
        assert_eq!(t.terms.len(), 3);
        assert_eq!(t.terms[1].0.ratio(), Ratio::new(1, 3));
        assert_eq!(t.precexp, Some(ValExp::integer(8)));
        let t = parse_element_text("t + t^(1/3)", 3).unwrap();
        assert_eq!(t.var, 't');
        assert_eq!(t.precexp, None);
        assert!(parse_element_text("p + t", 3).is_err());
        assert!(parse_element_text("p^(1/2)", 3).is_err());
    }
}
