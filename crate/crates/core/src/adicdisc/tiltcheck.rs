use crate::arith::{FieldConfig, TiltElement, UntiltElement};
use crate::error::{Error, Result};
use crate::tatealg::{sharp_tate, TateElement, Val, Verdict};
use crate::tiltkit::sharp;

/// A point given on the tilted side; its untilt has coordinates `x_i^♯`.
#[derive(Clone, Debug, PartialEq)]
pub enum TiltPoint {
    Classical(Vec<TiltElement>),
    Gauss(FieldConfig),
}

#[derive(Clone, Debug)]
pub struct TiltCheck {
    /// `v(f(x♭))`.
    pub tilt: Val,
    /// `v(f^♯(x))`.
    pub untilt: Val,
    pub verdict: Verdict,
}

/// `x^(ticks/scale)` in characteristic `p`.
pub(crate) fn tilt_pow(x: &TiltElement, ticks: u64) -> Result<TiltElement> {
    let cfg = x.config();
    let p = cfg.p() as u64;
    let (mut num, mut k) = (ticks, cfg.dencap());
    while k > 0 && num % p == 0 {
        num /= p;
        k -= 1;
    }
    Ok(x.pth_root_n(k)?.pow(num))
}

fn tilt_val(x: &TiltElement) -> Val {
    match (x.val_ticks(), x.prec_ticks()) {
        (Some(v), _) => Val::Exact(v),
        (None, Some(k)) => Val::AtLeast(k),
        (None, None) => Val::AtLeast(u64::MAX),
    }
}

/// Largest `n` such that every coefficient and every coordinate power
/// of `f` has a `p^n`-th root on the lattice.
fn root_depth(f: &TateElement<TiltElement>, x: &[TiltElement]) -> u32 {
    let cfg = f.config();
    let mut n = cfg.prec() - 1;
    for (e, c) in f.terms() {
        while n > 0 && c.pth_root_n(n).is_err() {
            n -= 1;
        }
        for (xi, &k) in x.iter().zip(e) {
            while n > 0 && tilt_pow(xi, k).and_then(|y| y.pth_root_n(n)).is_err() {
                n -= 1;
            }
        }
    }
    n
}

/// Compares `|f(x♭)|` with `|f^♯(x)|`. On the untilted side the value is
/// computed as `(sum_a (c_a^{1/p^n})^♯ (x^{a/p^n})^♯)^{p^n}`, which agrees
/// with `f^♯(x)` modulo `p^{n+1}`.
pub fn tilt_point_check(f: &TateElement<TiltElement>, x: &TiltPoint) -> Result<TiltCheck> {
    let cfg = f.config();
    let (tilt, untilt) = match x {
        TiltPoint::Gauss(c) => {
            cfg.check_same(c)?;
            let t = f.terms().values().map(tilt_val).reduce(Val::min).unwrap_or(Val::AtLeast(u64::MAX));
            let s = sharp_tate(f, cfg.prec())?;
            let u = s.terms().values().map(Val::of).reduce(Val::min).unwrap_or(Val::AtLeast(cfg.cap_ticks()));
            (t, u)
        }
        TiltPoint::Classical(xs) => {
            if xs.len() != f.nvars() {
                return Err(Error::InvalidArgument(format!("point has {} coordinates, expected {}", xs.len(), f.nvars())));
            }
            let mut value = TiltElement::zero(cfg);
            for (e, c) in f.terms() {
                let mut term = c.clone();
                for (xi, &k) in xs.iter().zip(e) {
                    term = term.checked_mul(&tilt_pow(xi, k)?)?;
                }
                value = value.checked_add(&term)?;
            }
            let n = root_depth(f, xs);
            let mut sum = UntiltElement::zero(cfg);
            for (e, c) in f.terms() {
                let mut term = sharp(&c.pth_root_n(n)?, cfg.prec())?;
                for (xi, &k) in xs.iter().zip(e) {
                    term = term.checked_mul(&sharp(&tilt_pow(xi, k)?.pth_root_n(n)?, cfg.prec())?)?;
                }
                sum = sum.checked_add(&term)?;
            }
            let y = sum.pow((cfg.p() as u64).pow(n));
            let y = y.truncate((n as u64 + 1) * cfg.scale());
            (tilt_val(&value), Val::of(&y))
        }
    };
    let verdict = match (tilt, untilt) {
        (Val::Exact(a), Val::Exact(b)) => {
            if a == b {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
        (Val::Exact(a), Val::AtLeast(b)) | (Val::AtLeast(b), Val::Exact(a)) if a < b => Verdict::Fail,
        _ => Verdict::Indeterminate,
    };
    Ok(TiltCheck { tilt, untilt, verdict })
}
