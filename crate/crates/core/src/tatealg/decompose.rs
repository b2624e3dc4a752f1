use crate::arith::{reduce_mod_uniformizer, FieldConfig, TiltElement, UntiltElement};
use crate::error::{Error, Result};
use crate::tiltkit::sharp;

use super::element::{HomogeneousElement, TateElement};

/// Coefficientwise sharp, monomials unchanged.
pub fn sharp_tate(g: &TateElement<TiltElement>, target: u32) -> Result<TateElement<UntiltElement>> {
    g.map_coeffs(|c| sharp(c, target))
}

pub fn sharp_element(g: &HomogeneousElement<TiltElement>, target: u32) -> Result<HomogeneousElement<UntiltElement>> {
    HomogeneousElement::new(sharp_tate(g.elem(), target)?, g.degree_ticks())
}

/// The digits of `a` below valuation 1, read as an exact tilt element.
pub(crate) fn tilt_digits(a: &UntiltElement) -> TiltElement {
    reduce_mod_uniformizer(a).with_prec(None)
}

/// Depth-0 tilt: every coefficient replaced by `tilt_digits`.
pub fn reduce_tate(f: &TateElement<UntiltElement>) -> TateElement<TiltElement> {
    f.map_coeffs(|c| Ok(tilt_digits(c))).expect("infallible")
}

/// Greedy `p`-adic expansion `f = g_0^♯ + p g_1^♯ + ... + p^c g_c^♯ mod p^{c+1}`.
pub fn decompose(f: &TateElement<UntiltElement>, c: u32) -> Result<Vec<TateElement<TiltElement>>> {
    let cfg = f.config();
    if c + 1 > cfg.prec() {
        return Err(Error::Precision(format!("depth {c} needs prec >= {}", c + 1)));
    }
    let need = (c as u64 + 1) * cfg.scale();
    if let Some(k) = f.min_prec().filter(|&k| k < need) {
        return Err(Error::Precision(format!(
            "coefficients known only mod p^{}, need p^{}",
            cfg.ratio(k),
            c + 1
        )));
    }
    let mut rest = f.clone();
    let mut out = Vec::with_capacity(c as usize + 1);
    for j in 0..=c {
        let g = reduce_tate(&rest);
        if j < c {
            let diff = rest.sub(&sharp_tate(&g, cfg.prec() - j)?)?;
            // sharps of sums need p-power roots of the exponents; past the
            // lattice they are known only to lower precision
            let need = (c - j + 1) as u64 * cfg.scale();
            if let Some(k) = diff.min_prec().filter(|&k| k < need) {
                return Err(Error::Precision(format!(
                    "step {j}: g_{j}^sharp is known only mod p^{}, need p^{}",
                    cfg.ratio(k),
                    c - j + 1
                )));
            }
            rest = diff.shift_down(cfg.scale()).map_err(|_| {
                Error::Precision(format!("step {j}: remainder not divisible by p"))
            })?;
        }
        out.push(g);
    }
    Ok(out)
}

/// `sum p^j g_j^♯`, the inverse of `decompose` modulo `p^{c+1}`.
pub fn recombine(cfg: FieldConfig, nvars: usize, gs: &[TateElement<TiltElement>]) -> Result<TateElement<UntiltElement>> {
    let mut out = TateElement::zero(cfg, nvars);
    for (j, g) in gs.iter().enumerate() {
        out = out.add(&sharp_tate(g, cfg.prec())?.shift_up(j as u64 * cfg.scale()))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Element;

    fn cfg() -> FieldConfig {
        FieldConfig::new(3, 6, 2).unwrap()
    }

    fn var<E: Element>(i: usize) -> TateElement<E> {
        TateElement::var(cfg(), 2, i)
    }

    #[test]
    fn sharp_of_monomials() {
        let g = var::<TiltElement>(0).shift_up(3);
        let s = sharp_tate(&g, 6).unwrap();
        assert_eq!(s, var::<UntiltElement>(0).shift_up(3));
    }

    #[test]
    fn decompose_linear() {
        let f = var::<UntiltElement>(0).add(&var(1).shift_up(9)).unwrap();
        let gs = decompose(&f, 1).unwrap();
        assert_eq!(gs[0], var(0));
        assert_eq!(gs[1], var(1));
    }

    #[test]
    fn decompose_one_plus_p() {
        let f = var::<UntiltElement>(0).scale(&UntiltElement::from_int(cfg(), 4)).unwrap();
        let gs = decompose(&f, 1).unwrap();
        let back = recombine(cfg(), 2, &gs).unwrap();
        let diff = f.sub(&back).unwrap();
        assert!(diff.terms().values().all(|c| c.val_or_prec() >= 18));
    }
}
