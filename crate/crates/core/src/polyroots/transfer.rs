use num_rational::Ratio;

use super::poly::Polynomial;
use crate::arith::{Element, TiltElement, UntiltElement};
use crate::error::{Error, Result};
use crate::tiltkit::sharp;

/// `X^d + sum (a_i^{1/p^n})^♯ X^i`: each coefficient is rooted `n` times and
/// sent through the sharp map at the working precision.
pub fn fw_transfer(poly: &Polynomial<TiltElement>, n: u32) -> Result<Polynomial<UntiltElement>> {
    let cfg = poly.config();
    poly.map(|a| sharp(&a.pth_root_n(n)?, cfg.prec()))
}

/// Power sums `sum r^(k p^n)`, `k = 1..d`, of the roots `r` of a monic
/// polynomial, from Newton's identities.
pub fn twisted_power_sums(poly: &Polynomial<UntiltElement>, n: u32) -> Result<Vec<UntiltElement>> {
    let cfg = poly.config();
    let d = poly.degree();
    if poly.coeffs()[d] != UntiltElement::one(cfg) {
        return Err(Error::InvalidArgument("power sums need a monic polynomial".into()));
    }
    let c = poly.coeffs();
    let twist = (cfg.p() as usize).pow(n);
    let top = d * twist;
    // s[j] = sum of r^j
    let mut s: Vec<UntiltElement> = Vec::with_capacity(top + 1);
    s.push(UntiltElement::from_int(cfg, d as i64));
    for j in 1..=top {
        let mut acc = if j <= d {
            c[d - j].mul_elem(&UntiltElement::from_int(cfg, j as i64))?
        } else {
            UntiltElement::zero(cfg)
        };
        for i in 1..=j.min(d) {
            if i == j {
                break;
            }
            acc = acc.add_elem(&c[d - i].mul_elem(&s[j - i])?)?;
        }
        s.push(acc.neg());
    }
    Ok((1..=d).map(|k| s[k * twist].clone()).collect())
}

/// Agreement exponent of the twisted power sums of `fw_transfer(P, n)` and
/// `fw_transfer(P, n + 1)`: the roots of the `n`-th transfer raised to the
/// `p^n` approximate the sharps of the roots of `P`, so these sums converge.
pub fn stabilization_agreement(poly: &Polynomial<TiltElement>, n: u32) -> Result<Ratio<i64>> {
    let cfg = poly.config();
    let a = twisted_power_sums(&fw_transfer(poly, n)?, n)?;
    let b = twisted_power_sums(&fw_transfer(poly, n + 1)?, n + 1)?;
    let ticks = a.iter().zip(&b).map(|(x, y)| x.agreement_ticks(y)).min().unwrap_or(cfg.cap_ticks());
    Ok(cfg.ratio(ticks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldConfig;

    #[test]
    fn transfer_of_x2_minus_t() {
        let cfg = FieldConfig::new(3, 8, 2).unwrap();
        let p = Polynomial::new(vec![
            TiltElement::monomial(cfg, 1, 9).neg(),
            TiltElement::zero(cfg),
            TiltElement::one(cfg),
        ])
        .unwrap();
        let q = fw_transfer(&p, 0).unwrap();
        assert_eq!(q, Polynomial::from_ints(cfg, &[-3, 0, 1]).unwrap());
    }

    #[test]
    fn transfer_of_x_minus_one() {
        let cfg = FieldConfig::new(3, 8, 2).unwrap();
        let p = Polynomial::<TiltElement>::from_ints(cfg, &[-1, 1]).unwrap();
        for n in 0..3 {
            assert_eq!(fw_transfer(&p, n).unwrap(), Polynomial::from_ints(cfg, &[-1, 1]).unwrap());
        }
    }

    #[test]
    fn power_sums_of_quadratic() {
        let cfg = FieldConfig::new(3, 8, 0).unwrap();
        // roots 1 and 2 of X^2 - 3X + 2
        let p = Polynomial::<UntiltElement>::from_ints(cfg, &[2, -3, 1]).unwrap();
        let s = twisted_power_sums(&p, 1).unwrap();
        assert_eq!(s[0], UntiltElement::from_int(cfg, 1 + 8));
        assert_eq!(s[1], UntiltElement::from_int(cfg, 1 + 64));
    }
}
