use std::cmp::Ordering;

use num_rational::Ratio;
use perfectoid_core::adicdisc::{AdicPoint, RationalSubset, Sign};
use perfectoid_core::arith::{FieldConfig, TiltElement, UntiltElement};
use perfectoid_core::polyroots::Polynomial;
use perfectoid_core::tiltkit::sharp;
use proptest::prelude::*;

fn cfg() -> FieldConfig {
    FieldConfig::new(3, 8, 1).unwrap()
}

fn elem() -> impl Strategy<Value = UntiltElement> {
    let c = cfg();
    prop::collection::btree_map(0..c.cap_ticks(), 1u8..3, 0..3)
        .prop_map(move |m| UntiltElement::from_digits(c, m.into_iter().collect(), c.cap_ticks()).unwrap())
}

fn poly() -> impl Strategy<Value = Polynomial<UntiltElement>> {
    prop::collection::vec(elem(), 1..5).prop_map(|mut cs| {
        if cs.iter().all(|c| c.is_zero()) {
            cs[0] = UntiltElement::one(cfg());
        }
        Polynomial::new(cs).unwrap()
    })
}

fn point() -> impl Strategy<Value = AdicPoint> {
    let radius = prop::sample::select(vec![Ratio::from_integer(0), Ratio::new(1, 3), Ratio::new(1, 2), Ratio::from_integer(2)]);
    (elem(), radius, 0u8..4, any::<bool>()).prop_map(|(c, q, kind, up)| match kind {
        0 => AdicPoint::Classical(c),
        1 => AdicPoint::disc(c, q).unwrap(),
        2 => AdicPoint::gauss(cfg()),
        _ => {
            let q = if *q.denom() == 2 { Ratio::from_integer(1) } else { q };
            let sign = if up && q > Ratio::from_integer(0) { Sign::Greater } else { Sign::Less };
            AdicPoint::type5(c, q, sign).unwrap()
        }
    })
}

proptest! {
    #[test]
    fn eval_is_multiplicative_and_ultrametric(f in poly(), g in poly(), x in point()) {
        let fg = f.mul(&g).unwrap();
        if let (Ok(a), Ok(b), Ok(ab)) = (x.eval(&f), x.eval(&g), x.eval(&fg)) {
            prop_assert_eq!(a.mul(b).unwrap(), ab);
            let n = f.degree().max(g.degree()) + 1;
            let sum = Polynomial::new((0..n).map(|i| f.coeff(i).checked_add(&g.coeff(i)).unwrap()).collect()).unwrap();
            if let Ok(s) = x.eval(&sum) {
                let big = if a.cmp_abs(b) == Ordering::Less { b } else { a };
                prop_assert!(s.cmp_abs(big) != Ordering::Greater);
            }
        }
    }

    #[test]
    fn specialization_is_a_partial_order(x in point(), y in point(), z in point()) {
        prop_assert!(x.specializes(&x));
        if x.specializes(&y) && y.specializes(&x) {
            prop_assert!(x.same_point(&y));
        }
        if x.specializes(&y) && y.specializes(&z) {
            prop_assert!(x.specializes(&z));
        }
    }

    #[test]
    fn generizations_form_a_chain(x in point()) {
        let gens = x.generizations();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                prop_assert!(a.specializes(b) || b.specializes(a));
            }
        }
    }
}

#[test]
fn subset_membership_matches_the_tilt() {
    // U(T, p / p): |T| <= |p| upstairs, |T| <= |t| on the tilt
    let c = FieldConfig::new(3, 6, 2).unwrap();
    let p = UntiltElement::from_int(c, 3);
    let u = RationalSubset::new(
        vec![Polynomial::new(vec![UntiltElement::zero(c), UntiltElement::one(c)]).unwrap(), Polynomial::new(vec![p.clone()]).unwrap()],
        Polynomial::new(vec![p]).unwrap(),
    )
    .unwrap();
    for v in 1..3u64 {
        for e in 0..=18u64 {
            let xb = TiltElement::monomial(c, v, e);
            let x = AdicPoint::Classical(sharp(&xb, 6).unwrap());
            let tilt_side = xb.val_ticks().unwrap() >= c.scale();
            assert_eq!(u.contains(&x).unwrap(), tilt_side, "x = {xb}");
        }
    }
}
