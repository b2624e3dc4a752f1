use std::cmp::Ordering;

use num_rational::Ratio;

use super::*;
use crate::arith::{FieldConfig, TiltElement, UntiltElement};
use crate::polyroots::Polynomial;
use crate::tatealg::{TateElement, Verdict};

fn cfg() -> FieldConfig {
    FieldConfig::new(3, 6, 2).unwrap()
}

fn poly(ints: &[i64]) -> Polynomial<UntiltElement> {
    Polynomial::from_ints(cfg(), ints).unwrap()
}

fn zero() -> UntiltElement {
    UntiltElement::zero(cfg())
}

#[test]
fn gauss_value() {
    let f = poly(&[3, 3, 1]);
    assert_eq!(AdicPoint::gauss(cfg()).eval(&f).unwrap(), AdicValue::Rank1(Ratio::from_integer(0)));
}

#[test]
fn type_three_value() {
    let x = AdicPoint::disc(zero(), Ratio::new(1, 2)).unwrap();
    assert_eq!(x.point_type(), PointType::Type3);
    assert_eq!(x.eval(&poly(&[0, 0, 1])).unwrap(), AdicValue::Rank1(Ratio::from_integer(1)));
    let y = AdicPoint::disc(zero(), Ratio::new(1, 3)).unwrap();
    assert_eq!(y.point_type(), PointType::Type2);
}

#[test]
fn type_five_value() {
    let x = AdicPoint::type5(zero(), Ratio::from_integer(0), Sign::Less).unwrap();
    let v = x.eval(&poly(&[0, 1])).unwrap();
    assert_eq!(v, AdicValue::Rank2(Rank2Value { q: Ratio::from_integer(0), k: 1, sign: Sign::Less }));
    assert!(AdicPoint::type5(zero(), Ratio::new(1, 2), Sign::Less).is_err());
    assert!(AdicPoint::type5(zero(), Ratio::from_integer(0), Sign::Greater).is_err());
}

#[test]
fn rational_subsets() {
    let p6 = Polynomial::new(vec![UntiltElement::monomial(cfg(), 1, 45)]).unwrap();
    let t = poly(&[0, 1]);
    let one = poly(&[1]);
    let gauss = AdicPoint::gauss(cfg());
    assert!(RationalSubset::new(vec![t.clone()], one.clone()).unwrap().contains(&gauss).unwrap());
    let x5 = AdicPoint::type5(zero(), Ratio::from_integer(0), Sign::Less).unwrap();
    let boundary = RationalSubset::new(vec![one.clone(), p6.clone()], t.clone()).unwrap();
    assert!(!boundary.contains(&x5).unwrap());
    assert!(boundary.contains(&gauss).unwrap());
    let x = AdicPoint::Classical(UntiltElement::from_int(cfg(), 3));
    let small = RationalSubset::new(vec![t.clone(), p6], poly(&[3])).unwrap();
    assert!(small.contains(&x).unwrap());
    assert!(RationalSubset::new(vec![t.clone()], t).is_err());
}

#[test]
fn specialization() {
    let gauss = AdicPoint::gauss(cfg());
    let x5 = AdicPoint::type5(zero(), Ratio::from_integer(0), Sign::Less).unwrap();
    assert!(gauss.specializes(&x5));
    assert!(!x5.specializes(&gauss));
    let c = AdicPoint::Classical(zero());
    assert!(!c.specializes(&gauss));
    assert_eq!(x5.generizations().len(), 1);
    // another residue class at the Gauss point is still in its closure
    let y5 = AdicPoint::type5(UntiltElement::one(cfg()), Ratio::from_integer(0), Sign::Less).unwrap();
    assert!(gauss.specializes(&y5));
    assert!(!x5.same_point(&y5));
    let inner = AdicPoint::disc(zero(), Ratio::from_integer(1)).unwrap();
    assert!(!inner.specializes(&x5));
}

#[test]
fn values_compare_by_rank() {
    let x5 = AdicPoint::type5(zero(), Ratio::from_integer(0), Sign::Less).unwrap();
    let a = x5.eval(&poly(&[0, 1])).unwrap();
    let b = x5.eval(&poly(&[1])).unwrap();
    assert_eq!(a.cmp_abs(b), Ordering::Less);
}

#[test]
fn json_round_trip() {
    for x in [
        AdicPoint::gauss(cfg()),
        AdicPoint::Classical(UntiltElement::from_int(cfg(), 5)),
        AdicPoint::disc(UntiltElement::one(cfg()), Ratio::new(1, 2)).unwrap(),
        AdicPoint::type5(zero(), Ratio::new(1, 3), Sign::Greater).unwrap(),
    ] {
        let v = x.to_json_value();
        assert_eq!(AdicPoint::from_json_value(&v, cfg()).unwrap(), x);
    }
}

#[test]
fn tilt_check_examples() {
    let t_var = TateElement::<TiltElement>::var(cfg(), 1, 0);
    let at_t = TiltPoint::Classical(vec![TiltElement::monomial(cfg(), 1, 9)]);
    let r = tilt_point_check(&t_var, &at_t).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.tilt, crate::tatealg::Val::Exact(9));
    let one = TateElement::constant(TiltElement::one(cfg()), 1);
    assert_eq!(tilt_point_check(&one, &at_t).unwrap().verdict, Verdict::Pass);
    let f = t_var.add(&TateElement::constant(TiltElement::monomial(cfg(), 1, 9), 1)).unwrap();
    assert_eq!(tilt_point_check(&f, &TiltPoint::Gauss(cfg())).unwrap().verdict, Verdict::Pass);
    // T + t at T = 1 + t: value 1 + 2t, a unit
    let x = TiltPoint::Classical(vec![TiltElement::one(cfg()).checked_add(&TiltElement::monomial(cfg(), 1, 9)).unwrap()]);
    assert_eq!(tilt_point_check(&f, &x).unwrap().verdict, Verdict::Pass);
    // T - t at T = t + t^2: value t^2, beyond the reach of termwise sharps
    let g = t_var.sub(&TateElement::constant(TiltElement::monomial(cfg(), 1, 9), 1)).unwrap();
    let x = TiltPoint::Classical(vec![TiltElement::monomial(cfg(), 1, 9).checked_add(&TiltElement::monomial(cfg(), 1, 18)).unwrap()]);
    let r = tilt_point_check(&g, &x).unwrap();
    assert_eq!(r.tilt, crate::tatealg::Val::Exact(18));
    assert_ne!(r.verdict, Verdict::Fail);
}
