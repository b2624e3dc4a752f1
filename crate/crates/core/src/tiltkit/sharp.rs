use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{lift_mod_uniformizer, FieldConfig, TiltElement, UntiltElement};
use crate::error::{Error, Result};

/// Root-step count and resulting precision (in ticks, relative to the unit
/// part) for a sharp computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SharpPlan {
    pub valuation: u64,
    pub steps: u32,
    pub unit_prec: u64,
    pub prec: u64,
}

/// `x^♯` modulo `p^target`, or modulo the best power of `p` the input
/// determines (reported as the precision of the result).
///
/// Writes `x = t^v u` with `u` a unit, takes the `p^n`-th root of `u` mod
/// `t`, lifts it digitwise and raises it back to the `p^n`-th power. `n` is
/// the largest step count not exceeding `target - 1` for which the needed
/// roots stay in the exponent lattice; for inputs known only modulo `t^a`,
/// the smallest `n` reaching the best attainable precision is used.
pub fn sharp(x: &TiltElement, target: u32) -> Result<UntiltElement> {
    let cfg = x.config();
    check_target(cfg, target)?;
    let plan = plan(x, target)?;
    let Some(v) = x.val_ticks() else {
        return Ok(UntiltElement::zero(cfg).truncate(plan.prec));
    };
    let u = x.shift_down(v)?;
    let y = unit_sharp(&u, plan.steps, plan.unit_prec)?;
    Ok(y.shift_up(v).truncate(plan.prec))
}

fn check_target(cfg: FieldConfig, target: u32) -> Result<()> {
    if target == 0 || target > cfg.prec() {
        return Err(Error::InvalidArgument(format!(
            "sharp target precision {target} outside 1..={}",
            cfg.prec()
        )));
    }
    Ok(())
}

/// The step count and precision [`sharp`] will use for `x`.
pub fn plan(x: &TiltElement, target: u32) -> Result<SharpPlan> {
    let cfg = x.config();
    check_target(cfg, target)?;
    let scale = cfg.scale();
    let goal = target as u64 * scale;
    let Some(v) = x.val_ticks() else {
        let prec = x.prec_ticks().unwrap_or(goal).min(goal);
        return Ok(SharpPlan { valuation: u64::MAX, steps: 0, unit_prec: 0, prec });
    };
    if v >= goal {
        return Ok(SharpPlan { valuation: v, steps: 0, unit_prec: 0, prec: goal });
    }
    let u_prec = x.prec_ticks().map(|a| a - v);
    let u = x.shift_down(v)?;
    let p = cfg.p() as u64;
    let rel_goal = goal - v;
    let mut best: Option<(u64, u32)> = None;
    let mut pn: u64 = 1;
    for n in 0..target {
        if n > 0 {
            pn = pn.saturating_mul(p);
        }
        if !roots_exist(&u, pn) {
            break;
        }
        let mut b = match u_prec {
            None => scale,
            Some(a) => scale.min(a / pn),
        };
        for _ in 0..n {
            b = (b + scale).min(b.saturating_mul(p));
        }
        let achieved = b.min((n as u64 + 1) * scale).min(rel_goal);
        if best.is_none_or(|(bb, _)| achieved > bb) {
            best = Some((achieved, n));
        }
        if achieved == rel_goal {
            break;
        }
    }
    let (unit_prec, steps) = best.unwrap_or((0, 0));
    if unit_prec == 0 {
        return Err(Error::Precision("tilt input does not determine its sharp modulo any positive power of p".into()));
    }
    Ok(SharpPlan { valuation: v, steps, unit_prec, prec: v + unit_prec })
}

/// Whether the digits of `u` that matter mod `t^pn` admit a `pn`-th root
/// in the lattice.
fn roots_exist(u: &TiltElement, pn: u64) -> bool {
    let bound = pn.saturating_mul(u.config().scale());
    u.digits().iter().take_while(|&&(k, _)| k < bound).all(|&(k, _)| k % pn == 0)
}

fn unit_sharp(u: &TiltElement, steps: u32, prec: u64) -> Result<UntiltElement> {
    let cfg = u.config();
    let pn = (cfg.p() as u64).pow(steps);
    let window = pn.saturating_mul(cfg.scale());
    let head = match u.prec_ticks() {
        Some(a) => u.truncate(a.min(window)),
        None => {
            let digits = u.digits().iter().copied().take_while(|&(k, _)| k < window).collect();
            TiltElement::from_raw(cfg, digits, None)
        }
    };
    let root = head.pth_root_n(steps)?;
    let mut y = lift_mod_uniformizer(&root).with_prec(prec);
    for _ in 0..steps {
        y = pow_mod(&y, cfg.p() as u64, prec);
    }
    Ok(y.with_prec(prec))
}

/// `y^e` computed on representatives modulo `p^prec`.
fn pow_mod(y: &UntiltElement, e: u64, prec: u64) -> UntiltElement {
    let cfg = y.config();
    let mut out = UntiltElement::one(cfg).with_prec(prec);
    for _ in 0..e {
        out = out.mul_to(y, prec);
    }
    out
}

/// Teichmüller lift of a residue digit, by iterating `c -> c^p mod p^N`.
pub fn sharp_const(cfg: FieldConfig, c: u32) -> Result<UntiltElement> {
    let p = cfg.p();
    if c >= p {
        return Err(Error::InvalidArgument(format!("digit {c} outside 0..{p}")));
    }
    let modulus = BigUint::from(p).pow(cfg.prec());
    let mut x = BigUint::from(c);
    loop {
        let next = x.modpow(&BigUint::from(p), &modulus);
        if next == x {
            break;
        }
        x = next;
    }
    Ok(from_biguint(cfg, &x))
}

/// Base-`p` digits of a nonnegative integer, as an element mod `p^N`.
fn from_biguint(cfg: FieldConfig, n: &BigUint) -> UntiltElement {
    let p = BigUint::from(cfg.p());
    let scale = cfg.scale();
    let mut digits = Vec::new();
    let mut n = n.clone();
    let mut k = 0u64;
    while !n.is_zero() && k < cfg.prec() as u64 {
        let d = (&n % &p).to_u8().expect("digit below p");
        if d != 0 {
            digits.push((k * scale, d));
        }
        n /= &p;
        k += 1;
    }
    UntiltElement::from_digits(cfg, digits, cfg.cap_ticks()).expect("canonical digits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ValExp;
    use num_rational::Ratio;

    fn cfg() -> FieldConfig {
        FieldConfig::new(3, 8, 2).unwrap()
    }

    #[test]
    fn sharp_of_t_is_p() {
        let t = TiltElement::monomial(cfg(), 1, 9);
        let s = sharp(&t, 8).unwrap();
        assert_eq!(s, UntiltElement::from_int(cfg(), 3));
        assert_eq!(s.prec_ticks(), cfg().cap_ticks());
    }

    #[test]
    fn constants() {
        assert!(sharp(&TiltElement::zero(cfg()), 8).unwrap().is_zero());
        assert_eq!(sharp(&TiltElement::one(cfg()), 8).unwrap(), UntiltElement::one(cfg()));
        assert_eq!(sharp(&TiltElement::from_int(cfg(), 2), 8).unwrap(), UntiltElement::from_int(cfg(), -1));
        assert_eq!(sharp_const(cfg(), 2).unwrap(), UntiltElement::from_int(cfg(), -1));
        assert_eq!(sharp_const(cfg(), 0).unwrap(), UntiltElement::zero(cfg()));
    }

    #[test]
    fn one_plus_t_mod_nine() {
        let x = &TiltElement::one(cfg()) + &TiltElement::monomial(cfg(), 1, 9);
        let s = sharp(&x, 2).unwrap();
        // oracle: (1 + p^{1/3})^3 expanded by hand, 1 + 3p^{1/3} + 3p^{2/3} + p
        let third = ValExp::from_ratio(Ratio::new(1, 3)).unwrap();
        let y = UntiltElement::from_terms(cfg(), &[(ValExp::ZERO, 1), (third, 1)], ValExp::integer(2)).unwrap();
        assert_eq!(s, y.pow(3).truncate(18));
        assert_eq!(s.prec_ticks(), 18);
    }

    #[test]
    fn finite_precision_limits_result() {
        // 1 + t known mod t^2: sharp known mod p^1 at most after 0 steps...
        let x = (&TiltElement::one(cfg()) + &TiltElement::monomial(cfg(), 1, 9)).truncate(18);
        let pl = plan(&x, 4).unwrap();
        // n=1: b0 = min(1, 2/3) = 2/3, b1 = min(5/3, 2) = 5/3
        assert_eq!(pl.steps, 1);
        assert_eq!(pl.prec, 15);
        let exact = sharp(&(&TiltElement::one(cfg()) + &TiltElement::monomial(cfg(), 1, 9)), 4).unwrap();
        assert!(sharp(&x, 4).unwrap().congruent(&exact));
    }
}
