use num_rational::Ratio;

use super::newton::newton_polygon;
use super::poly::Polynomial;
use super::roots::{charp_root, CharpRoot};
use crate::arith::{lift_mod_uniformizer, reduce_mod_uniformizer, TiltElement, UntiltElement};
use crate::error::{Error, Result};

/// One pass of the refinement loop.
#[derive(Clone, Debug, PartialEq)]
pub struct Stage {
    /// The stage polynomial before shifting.
    pub poly: Polynomial<UntiltElement>,
    /// Lift of the characteristic-`p` root used as shift.
    pub shift: UntiltElement,
    /// Valuation of the rescaling `c = p^step`, absent on the last stage.
    pub step: Option<Ratio<i64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MixedRoot {
    pub root: UntiltElement,
    pub stages: Vec<Stage>,
    /// `v(P(root))` evaluated on the representative, capped at `N`.
    pub residual: Ratio<i64>,
}

/// [`mixed_root_refine_with`] using [`charp_root`] at each stage.
pub fn mixed_root_refine(poly: &Polynomial<UntiltElement>) -> Result<MixedRoot> {
    mixed_root_refine_with(poly, |q| match charp_root(q)? {
        CharpRoot::Found(y) => Ok(Some(y)),
        CharpRoot::None => Ok(None),
    })
}

/// Finds a root of a monic integral `P` by repeated reduction mod `p`:
/// take a root `y` of `P mod p` over the tilt, shift by its lift `s`,
/// rescale by `p^λ` where `λ` is the largest root valuation of `P(X + s)`,
/// divide out the content and repeat. The root accumulates as
/// `sum p^(λ_1 + ... + λ_k) s_k`.
pub fn mixed_root_refine_with(
    poly: &Polynomial<UntiltElement>,
    oracle: impl Fn(&Polynomial<TiltElement>) -> Result<Option<TiltElement>>,
) -> Result<MixedRoot> {
    let cfg = poly.config();
    let cap = cfg.cap_ticks();
    let d = poly.degree();
    if d == 0 || poly.coeffs()[d] != UntiltElement::one(cfg) {
        return Err(Error::InvalidArgument("mixed_root_refine needs a monic polynomial of positive degree".into()));
    }
    let mut cur = poly.clone();
    let mut acc = UntiltElement::zero(cfg);
    let mut sigma: u64 = 0;
    let mut stages = Vec::new();
    let mut root_prec = cap;
    let max_stages = cap + 1;
    loop {
        if stages.len() as u64 >= max_stages {
            return Err(Error::NoConvergence(format!("no convergence after {max_stages} stages")));
        }
        // the reduction may drop degree: its top coefficients can vanish mod t
        let mut red: Vec<TiltElement> = cur.coeffs().iter().map(reduce_mod_uniformizer).collect();
        while red.len() > 1 && red.last().is_some_and(|a| a.is_zero()) {
            red.pop();
        }
        let q = Polynomial::new(red)?;
        let y = oracle(&q)?.ok_or_else(|| {
            Error::NoConvergence(format!("stage {}: reduction {q} has no root over the tilt", stages.len()))
        })?;
        let s = lift_mod_uniformizer(&y).with_prec(cap);
        let shifted = cur.taylor_shift(&s)?;
        acc = acc.checked_add(&s.shift_up(sigma))?.with_prec(cap);
        let mut stage = Stage { poly: cur.clone(), shift: s, step: None };
        if shifted.coeffs()[0].is_zero() {
            let r = zero_cluster_radius(&shifted);
            root_prec = sigma.saturating_add(r).min(cap);
            stages.push(stage);
            break;
        }
        let np = newton_polygon(&shifted)?;
        let lam = np.max_valuation().expect("nonzero constant term gives a finite segment");
        if lam <= Ratio::from_integer(0) {
            return Err(Error::NoConvergence(format!(
                "stage {}: shifted polynomial has no root of positive valuation",
                stages.len()
            )));
        }
        let lt = cfg.ratio_ticks(lam)?;
        let mu = shifted
            .coeffs()
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.val_ticks().map(|v| v + i as u64 * lt))
            .min()
            .expect("some coefficient is nonzero");
        // b_i p^(i λ - μ), applied as one net shift so no precision is lost
        // to the cap on the way up
        let next = shifted
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let up = i as u64 * lt;
                if up >= mu {
                    Ok(b.shift_up(up - mu))
                } else if b.val_or_prec() >= mu - up {
                    b.shift_down(mu - up)
                } else {
                    Ok(UntiltElement::zero(cfg).truncate(0))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        stage.step = Some(lam);
        stages.push(stage);
        sigma += lt;
        if sigma >= cap {
            break;
        }
        cur = Polynomial::new(next)?;
    }
    let root = acc.truncate(root_prec);
    let residual = poly.eval(&root.with_prec(cap))?.val_or_prec().min(cap);
    Ok(MixedRoot { root, stages, residual: cfg.ratio(residual) })
}

/// Largest root valuation of `P` (in ticks, rounded down) once its
/// vanishing constant term is replaced by its precision bound.
fn zero_cluster_radius(p: &Polynomial<UntiltElement>) -> u64 {
    let c = p.coeffs();
    let pi0 = c[0].prec_ticks();
    let mut r = Ratio::from_integer(0);
    for (i, b) in c.iter().enumerate().skip(1) {
        if let Some(v) = b.val_ticks() {
            if v <= pi0 {
                r = r.max(Ratio::new((pi0 - v) as i64, i as i64));
            }
        }
    }
    r.floor().to_integer() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldConfig;

    #[test]
    fn square_root_of_two() {
        let cfg = FieldConfig::new(2, 6, 2).unwrap();
        let p = Polynomial::<UntiltElement>::from_ints(cfg, &[-2, 0, 1]).unwrap();
        let r = mixed_root_refine(&p).unwrap();
        assert_eq!(r.root.digits(), &[(2, 1)]);
        assert!(r.stages.len() <= 6);
        assert_eq!(r.residual, Ratio::from_integer(6));
    }

    #[test]
    fn root_of_one_plus_p() {
        let cfg = FieldConfig::new(3, 6, 1).unwrap();
        let p = Polynomial::<UntiltElement>::from_ints(cfg, &[-4, 0, 1]).unwrap();
        let r = mixed_root_refine(&p).unwrap();
        assert_eq!(r.root, UntiltElement::from_int(cfg, -2));
        assert!(r.stages.len() <= 6);
        assert_eq!(r.residual, Ratio::from_integer(6));
    }
}
