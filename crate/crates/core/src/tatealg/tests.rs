use num_rational::Ratio;

use super::*;
use crate::arith::{FieldConfig, TiltElement, UntiltElement};

fn cfg() -> FieldConfig {
    FieldConfig::new(3, 6, 2).unwrap()
}

fn var<E: crate::arith::Element>(n: usize, i: usize) -> TateElement<E> {
    TateElement::var(cfg(), n, i)
}

fn linear(coeffs: &[i64]) -> HomogeneousElement<UntiltElement> {
    let mut f = TateElement::zero(cfg(), coeffs.len());
    for (i, &c) in coeffs.iter().enumerate() {
        f = f.add(&var(coeffs.len(), i).scale(&UntiltElement::from_int(cfg(), c)).unwrap()).unwrap();
    }
    HomogeneousElement::from_element(f).unwrap()
}

fn point(xs: &[i64]) -> ContractPoint {
    ContractPoint::Classical(xs.iter().map(|&x| UntiltElement::from_int(cfg(), x)).collect())
}

#[test]
fn sharp_input_is_returned() {
    let f = linear(&[1, 0]);
    let a = approximate(&f, Ratio::from_integer(2), Ratio::new(1, 3)).unwrap();
    assert_eq!(a.g.elem(), &var::<TiltElement>(2, 0));
    assert_eq!(sharp_tate(a.g.elem(), 6).unwrap(), *f.elem());
}

#[test]
fn approximation_of_t0_plus_p_t1() {
    let f = linear(&[1, 3]);
    let a = approximate(&f, Ratio::from_integer(1), Ratio::new(1, 3)).unwrap();
    assert_eq!(a.g.degree_ticks(), 9);
    let pts = vec![point(&[1, 0]), point(&[0, 1])];
    let rep = verify_contract(f.elem(), a.g.elem(), Ratio::from_integer(1), Ratio::new(1, 3), &pts).unwrap();
    assert!(rep.passed(), "{}", rep.to_json_value());
    assert_eq!(rep.points[0].v_g, Val::Exact(0));
    assert_eq!(rep.points[1].v_g, Val::Exact(9));
}

#[test]
fn contract_of_truncated_approximation() {
    let f = linear(&[1, 3]);
    let pts = vec![point(&[1, 0]), point(&[0, 1])];
    let rep = verify_contract(f.elem(), &var(2, 0), Ratio::from_integer(1), Ratio::new(1, 3), &pts).unwrap();
    assert_eq!(rep.points[0].lemma, Verdict::Pass);
    assert_eq!(rep.points[0].remark, Verdict::Pass);
    // |f - g^♯| = |p| at (0,1) while the bound is |p|^{2/3}|p|
    assert_eq!(rep.points[1].lemma, Verdict::Fail);
}

#[test]
fn mismatched_pair_fails() {
    let f = linear(&[1, 0]);
    let g = TateElement::<TiltElement>::zero(cfg(), 2);
    let rep = verify_contract(f.elem(), &g, Ratio::from_integer(1), Ratio::new(1, 3), &[point(&[1, 0])]).unwrap();
    assert_eq!(rep.verdict, Verdict::Fail);
}

#[test]
fn acceptance_sample_shape() {
    let pts = contract_sample(cfg(), 3, 49).unwrap();
    assert_eq!(pts.len(), 50);
    assert_eq!(pts[49], ContractPoint::Gauss);
}

#[test]
fn hypersurface_functions_pass() {
    for coeffs in [[1i64, 3, 0], [1, 3, 9], [1, 1, 1]] {
        let f = linear(&coeffs);
        for c in [1i64, 2] {
            let (c, eps) = (Ratio::from_integer(c), Ratio::new(1, 3));
            let a = approximate(&f, c, eps).unwrap();
            let pts = contract_sample(cfg(), 3, 49).unwrap();
            let rep = verify_contract(f.elem(), a.g.elem(), c, eps, &pts).unwrap();
            assert!(rep.passed(), "{coeffs:?} c={c}: {}", rep.to_json_value());
        }
    }
}

#[test]
fn approximation_with_fractional_correction() {
    // (1 + p) T0^2 + p^{1/3} T0 T1
    let c0 = UntiltElement::from_int(cfg(), 4);
    let c1 = UntiltElement::monomial(cfg(), 1, 3);
    let f = TateElement::from_terms(cfg(), 2, [(vec![18, 0], c0), (vec![9, 9], c1)]).unwrap();
    let f = HomogeneousElement::from_element(f).unwrap();
    let (c, eps) = (Ratio::from_integer(1), Ratio::new(1, 3));
    let a = approximate(&f, c, eps).unwrap();
    let pts = contract_sample(cfg(), 2, 49).unwrap();
    let rep = verify_contract(f.elem(), a.g.elem(), c, eps, &pts).unwrap();
    assert!(rep.passed(), "{}", rep.to_json_value());
}
