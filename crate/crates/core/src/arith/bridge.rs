//! The identification `K°/p = F_p[t^{1/p^inf}]/t = K♭°/t`.

use super::tilt::TiltElement;
use super::untilt::UntiltElement;
use super::valexp::ValExp;
use crate::error::{Error, Result};

/// Keeps the digits below exponent 1 and reads `p` as `t`.
pub fn reduce_mod_uniformizer(a: &UntiltElement) -> TiltElement {
    let cfg = a.config();
    let one = cfg.scale();
    let prec = a.prec_ticks().min(one);
    let digits = a.digits().iter().copied().take_while(|&(k, _)| k < prec).collect();
    TiltElement::from_raw(cfg, digits, Some(prec))
}

/// Digit-preserving section of [`reduce_mod_uniformizer`]; the result is
/// known modulo `p^min(1, precexp)`.
pub fn lift_mod_uniformizer(a: &TiltElement) -> UntiltElement {
    let cfg = a.config();
    let one = cfg.scale();
    let prec = a.prec_ticks().map_or(one, |k| k.min(one));
    let digits = a.digits().iter().copied().take_while(|&(k, _)| k < prec).collect();
    UntiltElement::from_raw(cfg, digits, prec)
}

/// Some `y` with `y^p = a mod p^k`, determined modulo `p^(k/p)`.
///
/// Only `k <= 1` is supported: there `y` is the lift of the `p`-th root of
/// the tilt reduction. Beyond 1, the reduction mod `p` no longer determines
/// the answer.
pub fn pth_root_mod(a: &UntiltElement, k: ValExp) -> Result<UntiltElement> {
    let cfg = a.config();
    let kt = cfg.ticks(k)?;
    if kt > cfg.scale() {
        return Err(Error::Unsupported(format!("p-th root modulo p^{k} with k > 1")));
    }
    if a.prec_ticks() < kt {
        return Err(Error::Precision(format!(
            "element known modulo p^{} but p^{k} required",
            a.precexp()
        )));
    }
    let r = reduce_mod_uniformizer(a).truncate(kt).pth_root()?;
    Ok(lift_mod_uniformizer(&r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::config::FieldConfig;
    use num_rational::Ratio;

    fn cfg() -> FieldConfig {
        FieldConfig::new(3, 8, 2).unwrap()
    }

    fn ve(n: i64, d: i64) -> ValExp {
        ValExp::from_ratio(Ratio::new(n, d)).unwrap()
    }

    #[test]
    fn reduce_drops_integral_part() {
        let a = UntiltElement::from_terms(cfg(), &[(ve(1, 3), 2), (ve(4, 3), 1)], ValExp::integer(8)).unwrap();
        let r = reduce_mod_uniformizer(&a);
        assert_eq!(r.digits(), &[(3, 2)]);
        assert_eq!(r.prec_ticks(), Some(9));
        let p = UntiltElement::from_int(cfg(), 3);
        assert!(reduce_mod_uniformizer(&p).is_zero());
    }

    #[test]
    fn lift_keeps_digits() {
        let t = TiltElement::monomial(cfg(), 1, 8);
        let l = lift_mod_uniformizer(&t);
        assert_eq!(l.digits(), &[(8, 1)]);
        assert_eq!(reduce_mod_uniformizer(&l), t.truncate(9));
    }

    #[test]
    fn root_of_p() {
        let y = pth_root_mod(&UntiltElement::from_int(cfg(), 3), ValExp::integer(1)).unwrap();
        assert_eq!(y.digits(), &[]);
        assert_eq!(y.prec_ticks(), 3);
        // y = p^{1/3} is a valid representative: it agrees with the result mod p^{1/3}
        let a = UntiltElement::from_terms(cfg(), &[(ValExp::ZERO, 2), (ve(1, 3), 1)], ValExp::integer(8)).unwrap();
        let y = pth_root_mod(&a, ValExp::integer(1)).unwrap();
        assert_eq!(y.digits(), &[(0, 2), (1, 1)]);
    }
}
