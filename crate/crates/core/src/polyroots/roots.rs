use num_rational::Ratio;
use num_traits::Zero;

use super::newton::newton_polygon;
use super::poly::Polynomial;
use crate::arith::{Element, TiltElement, ValExp};
use crate::error::{Error, Result};

/// Newton iteration from `x0` under the condition `v(P(x0)) > 2 v(P'(x0))`.
///
/// Iterates on representatives at full working precision and certifies the
/// result with the Hensel estimate `v(x - root) >= v(P(x)) - v(P'(x))`.
pub fn hensel_root<E: Element>(poly: &Polynomial<E>, x0: &E) -> Result<E> {
    let cfg = poly.config();
    let cap = cfg.cap_ticks();
    let dp = poly.derivative()?;
    let fx = poly.eval(x0)?;
    let dfx = dp.eval(x0)?;
    let vd = dfx
        .val_ticks()
        .ok_or_else(|| Error::InvalidArgument("P'(x0) vanishes at current precision".into()))?;
    if fx.val_or_prec() <= vd.saturating_mul(2) {
        return Err(Error::InvalidArgument(format!(
            "Hensel condition fails: v(P(x0)) = {} is not above 2 v(P'(x0)) = {}",
            cfg.ratio(fx.val_or_prec().min(cap)),
            cfg.ratio(2 * vd)
        )));
    }
    let mut x = x0.with_prec_ticks(Some(cap));
    let rounds = 2 * (64 - cap.leading_zeros()) + 2;
    for _ in 0..rounds {
        let fx = poly.eval(&x)?;
        let dfx = dp.eval(&x)?;
        let vd = dfx
            .val_ticks()
            .ok_or_else(|| Error::NoConvergence("derivative vanished during Newton iteration".into()))?;
        if fx.is_zero() {
            let known = fx.prec_ticks().unwrap_or(cap).min(cap);
            let prec = known.saturating_sub(vd);
            return Ok(x.truncate(prec));
        }
        let step = fx.div_elem(&dfx)?;
        x = x.sub_elem(&step)?.with_prec_ticks(Some(cap));
    }
    Err(Error::NoConvergence(format!("Newton iteration did not converge after {rounds} steps")))
}

/// Result of a characteristic-`p` root search.
#[derive(Clone, Debug, PartialEq)]
pub enum CharpRoot {
    Found(TiltElement),
    /// No root in `K♭°` along any polygon segment (residue or lattice
    /// obstruction).
    None,
}

/// Digit-by-digit root search over `K♭°`.
///
/// At each stage the polygon segment of largest root valuation `s` above
/// the previous one is chosen, a leading digit `c` is taken from the roots of
/// the residual polynomial over `F_p`, and the search continues on
/// `P(X + c t^s)`. Slopes outside `Z[1/p]` yield no root; slopes in `Z[1/p]`
/// finer than `p^dencap` exhaust the budget.
pub fn charp_root(poly: &Polynomial<TiltElement>) -> Result<CharpRoot> {
    let cfg = poly.config();
    let p = poly.truncate(cfg.cap_ticks());
    let mut budget = false;
    match search(&p, None, &mut budget)? {
        Some(r) => Ok(CharpRoot::Found(r)),
        None if budget => Err(Error::BudgetExhausted(format!(
            "root needs exponents with denominator beyond p^{}",
            cfg.dencap()
        ))),
        None => Ok(CharpRoot::None),
    }
}

fn search(p: &Polynomial<TiltElement>, floor: Option<u64>, budget: &mut bool) -> Result<Option<TiltElement>> {
    let cfg = p.config();
    let np = newton_polygon(p)?;
    if np.zero_roots > 0 {
        return Ok(Some(zero_root_precision(p, np.zero_roots)));
    }
    for seg in np.segments.iter().rev() {
        let lam = seg.valuation;
        if floor.is_some_and(|f| lam <= cfg.ratio(f)) {
            break;
        }
        if !ValExp::in_lattice(lam, cfg.p()) {
            continue;
        }
        let Ok(lt) = cfg.ratio_ticks(lam) else {
            *budget = true;
            continue;
        };
        for c in residual_roots(p, lam) {
            let shift = TiltElement::monomial(cfg, c as u64, lt);
            let q = p.taylor_shift(&shift)?;
            if let Some(rest) = search(&q, Some(lt), budget)? {
                let root = shift.checked_add(&rest)?;
                return Ok(Some(root));
            }
        }
    }
    Ok(None)
}

/// `0` with the precision to which the cluster of roots at `0` is
/// determined: the largest root valuation once `a_0` is replaced by its
/// precision bound.
fn zero_root_precision(p: &Polynomial<TiltElement>, z: usize) -> TiltElement {
    let cfg = p.config();
    let cap = cfg.cap_ticks();
    let coeffs = p.coeffs();
    let pi0 = coeffs[..z].iter().map(|a| a.prec_ticks().unwrap_or(cap)).min().unwrap_or(cap);
    let mut r = Ratio::zero();
    for (i, b) in coeffs.iter().enumerate().skip(z) {
        if let Some(v) = b.val_ticks() {
            if v <= pi0 {
                let cand = Ratio::new((pi0 - v) as i64, i as i64);
                if cand > r {
                    r = cand;
                }
            }
        }
    }
    TiltElement::zero(cfg).truncate((r.floor().to_integer() as u64).min(cap))
}

/// Nonzero roots in `F_p` of the residual polynomial of the segment with
/// root valuation `lam`.
fn residual_roots(p: &Polynomial<TiltElement>, lam: Ratio<i64>) -> Vec<u32> {
    let cfg = p.config();
    let prime = cfg.p() as i64;
    let mut terms: Vec<(usize, i64)> = Vec::new();
    let mut best: Option<Ratio<i64>> = None;
    for (i, a) in p.coeffs().iter().enumerate() {
        let Some(v) = a.val_ticks() else { continue };
        let w = cfg.ratio(v) + lam * Ratio::from_integer(i as i64);
        let lead = a.digits()[0].1 as i64;
        match best {
            Some(b) if w > b => {}
            Some(b) if w == b => terms.push((i, lead)),
            _ => {
                best = Some(w);
                terms = vec![(i, lead)];
            }
        }
    }
    (1..prime)
        .filter(|&c| {
            let s: i64 = terms.iter().map(|&(i, a)| a * pow_mod(c, i as u64, prime)).sum();
            s.rem_euclid(prime) == 0
        })
        .map(|c| c as u32)
        .collect()
}

fn pow_mod(mut b: i64, mut e: u64, m: i64) -> i64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}
