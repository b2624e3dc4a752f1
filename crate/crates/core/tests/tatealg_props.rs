use num_rational::Ratio;
use perfectoid_core::arith::{FieldConfig, TiltElement, UntiltElement};
use perfectoid_core::tatealg::{
    approximate, contract_sample, decompose, eval_classical, recombine, sharp_element, verify_contract, HomogeneousElement, Verdict,
    TateElement,
};
use perfectoid_core::tiltkit::sharp;
use proptest::prelude::*;

fn series(cfg: FieldConfig, terms: &[(Vec<u64>, Vec<(u64, u8)>)], nvars: usize) -> TateElement<UntiltElement> {
    TateElement::from_terms(
        cfg,
        nvars,
        terms
            .iter()
            .map(|(e, d)| (e.clone(), UntiltElement::from_digits(cfg, d.clone(), cfg.cap_ticks()).unwrap())),
    )
    .unwrap()
}

/// Integral digit exponents and `m = 3`, so the lattice holds enough roots
/// for sharps to depth 3.
fn integral_series() -> impl Strategy<Value = (FieldConfig, TateElement<UntiltElement>, u32)> {
    (prop::sample::select(vec![2u32, 3, 5]), 0u32..3).prop_flat_map(|(p, c)| {
        let cfg = FieldConfig::new(p, 4, 3).unwrap();
        let s = cfg.scale();
        let term = (
            prop::collection::vec((0u64..3).prop_map(move |e| e * s), 2),
            prop::collection::btree_map((0u64..4).prop_map(move |k| k * s), 1..p as u8, 0..4)
                .prop_map(|m| m.into_iter().collect::<Vec<_>>()),
        );
        prop::collection::vec(term, 0..4).prop_map(move |ts| (cfg, series(cfg, &ts, 2), c))
    })
}

#[test]
fn decompose_reports_lattice_shortfall() {
    let cfg = FieldConfig::new(2, 4, 1).unwrap();
    let f = series(cfg, &[(vec![0, 0], vec![(0, 1), (1, 1)])], 2);
    assert!(matches!(decompose(&f, 2), Err(perfectoid_core::Error::Precision(_))));
}

/// `whole` keeps exponents integral, as needed at coordinates like `p^(1/p)`.
fn series_with_step(whole: bool) -> impl Strategy<Value = (FieldConfig, TateElement<UntiltElement>, u32)> {
    (prop::sample::select(vec![2u32, 3, 5]), 0u32..3).prop_flat_map(move |(p, c)| {
        let cfg = FieldConfig::new(p, 4, 1).unwrap();
        let cap = cfg.cap_ticks();
        let step = if whole { cfg.scale() } else { 1 };
        let term = (
            prop::collection::vec((0u64..3 * cfg.scale()).prop_map(move |e| e / step * step), 2),
            prop::collection::btree_map(0..cap, 1..p as u8, 0..4).prop_map(|m| m.into_iter().collect::<Vec<_>>()),
        );
        prop::collection::vec(term, 0..4).prop_map(move |ts| (cfg, series(cfg, &ts, 2), c))
    })
}

proptest! {
    #[test]
    fn decompose_recombines((cfg, f, c) in integral_series()) {
        let gs = decompose(&f, c).unwrap();
        prop_assert_eq!(gs.len(), c as usize + 1);
        let back = recombine(cfg, 2, &gs).unwrap();
        let keep = (c as u64 + 1) * cfg.scale();
        let diff = back.sub(&f).unwrap();
        prop_assert!(diff.terms().values().all(|a| a.truncate(keep).is_zero()), "{} vs {}", back, f);
    }

    #[test]
    fn classical_evaluation_is_multiplicative((cfg, f, _c) in series_with_step(true), (i, j) in (0usize..5, 0usize..5)) {
        let h = TateElement::var(cfg, 2, 0).add(&TateElement::var(cfg, 2, 1).scale(&UntiltElement::from_int(cfg, cfg.p() as i64)).unwrap()).unwrap();
        let coords = perfectoid_core::tatealg::sample_coordinates(cfg).unwrap();
        let x = [coords[i].clone(), coords[j].clone()];
        let (a, b, ab) = (eval_classical(&f, &x).unwrap(), eval_classical(&h, &x).unwrap(), eval_classical(&f.mul(&h).unwrap(), &x).unwrap());
        // only valuations known exactly at this precision are compared
        if let (Some(va), Some(vb), Some(vab)) = (a.val_ticks(), b.val_ticks(), ab.val_ticks()) {
            if va + vb < ab.prec_ticks() {
                prop_assert_eq!(vab, va + vb);
            }
        }
    }
}

#[test]
fn sharp_element_examples() {
    let cfg = FieldConfig::new(3, 2, 1).unwrap();
    let s = cfg.scale();
    let g = HomogeneousElement::from_element(TateElement::from_terms(cfg, 2, [(vec![s, s], TiltElement::one(cfg).checked_add(&TiltElement::monomial(cfg, 1, s)).unwrap())]).unwrap()).unwrap();
    let h = sharp_element(&g, 2).unwrap();
    let want = sharp(&TiltElement::one(cfg).checked_add(&TiltElement::monomial(cfg, 1, s)).unwrap(), 2).unwrap();
    assert_eq!(h.elem().coeff(&[s, s]), Some(&want));
    assert_eq!(h.degree(), Ratio::from_integer(2));

    let cfg = FieldConfig::new(3, 4, 1).unwrap();
    let g = TateElement::from_terms(cfg, 1, [(vec![cfg.scale()], TiltElement::monomial(cfg, 1, 1))]).unwrap();
    let h = sharp_element(&HomogeneousElement::from_element(g).unwrap(), 4).unwrap();
    assert_eq!(h.elem().coeff(&[cfg.scale()]), Some(&UntiltElement::monomial(cfg, 1, 1)));
}

#[test]
fn decompose_one_plus_p() {
    let cfg = FieldConfig::new(3, 4, 1).unwrap();
    let f = TateElement::from_terms(cfg, 1, [(vec![cfg.scale()], UntiltElement::from_int(cfg, 4))]).unwrap();
    let gs = decompose(&f, 1).unwrap();
    let back = recombine(cfg, 1, &gs).unwrap();
    let two = 2 * cfg.scale();
    assert!(back.coeff(&[cfg.scale()]).unwrap().truncate(two).congruent(&UntiltElement::from_int(cfg, 4).truncate(two)));
}

fn quadratic(cfg: FieldConfig) -> HomogeneousElement<UntiltElement> {
    let s = cfg.scale();
    let one = UntiltElement::one(cfg);
    let p = UntiltElement::from_int(cfg, cfg.p() as i64);
    let f = TateElement::from_terms(
        cfg,
        2,
        [(vec![2 * s, 0], one.clone()), (vec![s, s], p.clone()), (vec![0, 2 * s], one.checked_add(&p).unwrap())],
    )
    .unwrap();
    HomogeneousElement::from_element(f).unwrap()
}

#[test]
fn approximations_keep_degree_and_pass() {
    let cfg = FieldConfig::new(3, 6, 2).unwrap();
    let f = quadratic(cfg);
    for (c, eps) in [(1, Ratio::new(1, 3)), (2, Ratio::new(1, 3)), (2, Ratio::new(2, 3))] {
        let c = Ratio::from_integer(c);
        let a = approximate(&f, c, eps).unwrap();
        assert_eq!(a.g.degree(), f.degree());
        let pts = contract_sample(cfg, 2, 49).unwrap();
        let rep = verify_contract(f.elem(), a.g.elem(), c, eps, &pts).unwrap();
        assert!(rep.passed(), "c={c} eps={eps}: {}", rep.to_json_value());
    }
}

#[test]
fn coarse_lattice_approximations_never_fail() {
    // at p = 2, m = 2 some sharps are known only mod p, so points may stay undecided
    let cfg = FieldConfig::new(2, 6, 2).unwrap();
    let f = quadratic(cfg);
    for (c, eps) in [(1, Ratio::new(1, 2)), (2, Ratio::new(1, 2))] {
        let c = Ratio::from_integer(c);
        let a = approximate(&f, c, eps).unwrap();
        let rep = verify_contract(f.elem(), a.g.elem(), c, eps, &contract_sample(cfg, 2, 49).unwrap()).unwrap();
        assert!(rep.points.iter().all(|p| p.lemma != Verdict::Fail && p.remark != Verdict::Fail));
    }
}
