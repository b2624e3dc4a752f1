use num_rational::Ratio;

use crate::arith::{Element, FieldConfig, TiltElement, UntiltElement};
use crate::error::{Error, Result};
use crate::tatealg::{
    approximate, contract_sample, verify_contract, ContractPoint, ContractReport, HomogeneousElement, TateElement,
};

use super::fan::Fan;

/// `phi^*`: every exponent multiplied by `p`, coefficients unchanged.
pub fn frobenius_pullback<E: Element>(h: &TateElement<E>) -> TateElement<E> {
    let cfg = h.config();
    let p = cfg.p() as u64;
    let terms = h.terms().iter().map(|(e, c)| (e.iter().map(|x| x * p).collect(), c.clone()));
    TateElement::from_terms(cfg, h.nvars(), terms).expect("same shape")
}

/// Result of [`hypersurface_transfer`].
#[derive(Clone, Debug)]
pub struct Transfer {
    /// Equation over the tilt, of the same degree as `f`.
    pub g: HomogeneousElement<TiltElement>,
    /// `g^{p^s}`, of integral degree.
    pub h: HomogeneousElement<TiltElement>,
    pub s: u32,
    pub report: ContractReport,
}

/// Contract sample restricted to normalized homogeneous coordinates (some
/// coordinate a unit), plus the Gauss point.
pub fn projective_sample(cfg: FieldConfig, nvars: usize) -> Result<Vec<ContractPoint>> {
    let all = contract_sample(cfg, nvars, usize::MAX)?;
    let mut pts: Vec<ContractPoint> = all
        .into_iter()
        .filter(|pt| match pt {
            ContractPoint::Classical(x) => x.iter().any(|c| c.val_ticks() == Some(0)),
            ContractPoint::Gauss => false,
        })
        .collect();
    if pts.len() > 49 {
        let n = pts.len();
        pts = (0..49).map(|i| pts[i * n / 49].clone()).collect();
    }
    pts.push(ContractPoint::Gauss);
    Ok(pts)
}

/// Transfers the hypersurface `{f = 0}` of `P^n` to the tilt: approximates
/// `f` by `g^♯`, checks the contract, and clears the degree's
/// denominator with a `p`-power.
pub fn hypersurface_transfer(
    fan: &Fan,
    f: &HomogeneousElement<UntiltElement>,
    c: Ratio<i64>,
    eps: Ratio<i64>,
) -> Result<Transfer> {
    if !fan.is_projective_space() {
        return Err(Error::Unsupported("hypersurface transfer is implemented for the fan of P^n".into()));
    }
    if f.nvars() != fan.rank() + 1 {
        return Err(Error::InvalidArgument(format!(
            "P^{} needs {} homogeneous coordinates, got {}",
            fan.rank(),
            fan.rank() + 1,
            f.nvars()
        )));
    }
    let cfg = f.config();
    let approx = approximate(f, c, eps)?;
    let g = approx.g;
    let mut s = 0u32;
    let mut h = g.elem().clone();
    let mut deg = g.degree_ticks();
    while deg % cfg.scale() != 0 {
        h = h.frobenius();
        deg *= cfg.p() as u64;
        s += 1;
    }
    let h = HomogeneousElement::new(h, deg)?;
    let report = verify_contract(f.elem(), g.elem(), c, eps, &projective_sample(cfg, f.nvars())?)?;
    Ok(Transfer { g, h, s, report })
}

/// Degree of a complete intersection of hypersurfaces of the given degrees
/// with respect to the hyperplane class.
pub fn intersection_degree(degrees: &[Ratio<i64>]) -> Ratio<i64> {
    degrees.iter().product()
}
