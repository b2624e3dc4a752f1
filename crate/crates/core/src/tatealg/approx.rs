use std::collections::HashMap;

use num_rational::Ratio;

use crate::arith::{FieldConfig, TiltElement, UntiltElement};
use crate::error::{Error, Result};

use super::decompose::{reduce_tate, sharp_tate};
use super::element::{divides, Exps, HomogeneousElement, TateElement};

/// Output of [`approximate`].
#[derive(Clone, Debug)]
pub struct Approximation {
    pub g: HomogeneousElement<TiltElement>,
    /// Induction steps actually taken.
    pub steps: usize,
    /// Valuation bound (in units) of `f - g^♯` at the Gauss point when the
    /// loop stopped early because the difference vanished to `p^{c+1}`.
    pub exact_to: Option<Ratio<i64>>,
}

pub(crate) fn lattice_ticks(cfg: FieldConfig, r: Ratio<i64>, what: &str) -> Result<u64> {
    cfg.ratio_ticks(r)
        .map_err(|_| Error::dencap(cfg.dencap(), format!("{what} = {r}")))
}

/// Schedule of losses: `eps(c_0) = eps`, `eps(c_k) = (eps - a) / p^{k-1}`,
/// floored to the tick lattice inside the exponent that uses it.
fn loss_ticks(cfg: FieldConfig, eps: u64, a: u64, k: usize) -> u64 {
    if k == 0 {
        return eps;
    }
    match (cfg.p() as u64).checked_pow(k as u32 - 1) {
        Some(d) => (eps - a) / d,
        None => 0,
    }
}

/// Builds `g` over the tilt with `g^♯` close to `f` on `|f| <= |p|^c`,
/// stepping `c = 0, a, 2a, ...` with `a = eps/p`.
pub fn approximate(f: &HomogeneousElement<UntiltElement>, c: Ratio<i64>, eps: Ratio<i64>) -> Result<Approximation> {
    let cfg = f.config();
    let s = cfg.scale();
    if eps <= Ratio::from_integer(0) || eps >= Ratio::from_integer(1) {
        return Err(Error::InvalidArgument(format!("eps = {eps} must lie in (0, 1)")));
    }
    let c_t = lattice_ticks(cfg, c, "c")?;
    let eps_t = lattice_ticks(cfg, eps, "eps")?;
    let a_t = (eps_t / cfg.p() as u64).max(1);
    if cfg.cap_ticks() < c_t + 2 * s {
        return Err(Error::Precision(format!("prec {} too small for c = {c}; need at least c + 2", cfg.prec())));
    }
    let need = c_t + s;
    if let Some(k) = f.elem().min_prec().filter(|&k| k < need) {
        return Err(Error::Precision(format!("f known only mod p^{}", cfg.ratio(k))));
    }
    let fe = f.elem();
    if fe.terms().values().any(|x| x.val_ticks().is_none() && x.prec_ticks() < need) {
        return Err(Error::Precision("f has coefficients below the required precision".into()));
    }

    let mut g = reduce_tate(fe);
    let mut ck = 0u64;
    let mut steps = 0;
    let mut exact_to = None;
    while ck < c_t {
        let h = fe.sub(&sharp_tate(&g, cfg.prec())?)?;
        if h.terms().values().all(|x| x.val_or_prec() >= need) {
            exact_to = Some(cfg.ratio(need));
            break;
        }
        let next = (ck + a_t).min(c_t);
        let e = ck + s - eps_t + loss_ticks(cfg, eps_t, a_t, steps + 1);
        g = step(&g, &h, ck, e)?;
        ck = next;
        steps += 1;
    }
    if exact_to.is_none() {
        let h = fe.sub(&sharp_tate(&g, cfg.prec())?)?;
        if h.terms().values().all(|x| x.val_or_prec() >= need) {
            exact_to = Some(cfg.ratio(need));
        }
    }
    let g = HomogeneousElement::new(g, f.degree_ticks())?;
    Ok(Approximation { g, steps, exact_to })
}

/// One induction step: expand `h = sum_i p^e (g^♯/p^c)^i r_i` and return
/// `g + sum_i t^e (g/t^c)^i s_i` with `s_i` the tilt of `r_i`.
fn step(g: &TateElement<TiltElement>, h: &TateElement<UntiltElement>, c: u64, e: u64) -> Result<TateElement<TiltElement>> {
    let cfg = g.config();
    let s = cfg.scale();
    let n = g.nvars();
    let lead: Option<Exps> = g.leading().map(|(x, _)| x.clone());
    let mut rem = h.clone();
    let mut update = TateElement::<TiltElement>::zero(cfg, n);
    let mut powers: HashMap<u64, TateElement<TiltElement>> = HashMap::new();

    // grid i = j / p^m, decreasing
    for j in (0..=s).rev() {
        let (lm_i, g_i) = match (&lead, j) {
            (_, 0) => (vec![0; n], None),
            (None, _) => continue,
            (Some(lm), _) => {
                if lm.iter().any(|&x| (x * j) % s != 0) {
                    continue;
                }
                (lm.iter().map(|&x| x * j / s).collect::<Exps>(), Some(j))
            }
        };
        // t-power attached to this i: e - ceil(c i)
        let shift = e - (c * j).div_ceil(s);
        let eligible = |rem: &TateElement<UntiltElement>, bound: u64| {
            rem.sorted_terms()
                .into_iter()
                .find(|(a, x)| divides(&lm_i, a) && x.val_ticks().is_some_and(|v| v >= bound))
                .map(|(a, x)| (a.clone(), x.clone()))
        };
        if eligible(&rem, shift).is_none() {
            continue;
        }
        let gi = match g_i {
            None => TateElement::constant(UntiltElement::one(cfg), n),
            Some(j) => {
                let pw = match frac_power(g, j, cfg) {
                    Ok(x) => x,
                    // this power leaves the exponent lattice
                    Err(Error::DencapOverflow { .. }) => continue,
                    Err(e) => return Err(e),
                };
                let sh = sharp_tate(&pw, cfg.prec())?;
                powers.insert(j, pw);
                sh
            }
        };
        let lc = gi.coeff(&lm_i).cloned().unwrap_or_else(|| UntiltElement::zero(cfg));
        let Some(lv) = lc.val_ticks() else { continue };
        let mut r_i = TateElement::<UntiltElement>::zero(cfg, n);
        let mut rounds = 0usize;
        while let Some((alpha, coef)) = eligible(&rem, lv + shift) {
            rounds += 1;
            if rounds > 100_000 {
                return Err(Error::NoConvergence(format!("division did not terminate; h = {h}")));
            }
            let q = coef.shift_down(shift)?.checked_div(&lc)?;
            let mono: Exps = alpha.iter().zip(&lm_i).map(|(x, y)| x - y).collect();
            let term = TateElement::monomial(q.clone(), mono.clone());
            rem = rem.sub(&gi.mul(&term)?.shift_up(shift))?;
            r_i.add_term(mono, &q)?;
        }
        if !r_i.is_zero() {
            let s_i = reduce_tate(&r_i);
            let base = match g_i {
                None => TateElement::constant(TiltElement::one(cfg), n),
                Some(j) => powers.get(&j).cloned().expect("computed during division"),
            };
            update = update.add(&base.mul(&s_i)?.shift_up(shift))?;
        }
    }
    if let Some((a, x)) = rem.sorted_terms().into_iter().find(|(_, x)| x.val_ticks().is_some_and(|v| v < e)) {
        return Err(Error::NoConvergence(format!(
            "expansion of h = {h} left the term ({x})*T^{a:?} below p^{}",
            cfg.ratio(e)
        )));
    }
    g.add(&update)
}

fn frac_power(g: &TateElement<TiltElement>, j: u64, cfg: FieldConfig) -> Result<TateElement<TiltElement>> {
    let s = cfg.scale();
    let p = cfg.p() as u64;
    let (mut num, mut k) = (j, cfg.dencap());
    while k > 0 && num % p == 0 {
        num /= p;
        k -= 1;
    }
    debug_assert!(num <= s);
    g.pow_frac(num, k)
}
