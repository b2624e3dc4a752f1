use std::path::Path;

use num_rational::Ratio;
use perfectoid_core::toric::{frobenius_section, intersection_degree, sections, Cone, Fan, TWeilDivisor};
use proptest::prelude::*;

fn fixture(name: &str) -> serde_json::Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Points of `(1/p^m)Z^n` with `u_i >= 0` and `sum u_i <= d`, by brute force.
fn simplex_count(n: usize, d: Ratio<i64>, den: i64) -> usize {
    let top = (d * den).floor().to_integer();
    fn rec(n: usize, left: i64) -> usize {
        if n == 0 {
            return 1;
        }
        (0..=left).map(|k| rec(n - 1, left - k)).sum()
    }
    if top < 0 {
        0
    } else {
        rec(n, top)
    }
}

fn hyperplane_multiple(fan: &Fan, n: usize, d: Ratio<i64>) -> TWeilDivisor {
    TWeilDivisor::prime(fan, &vec![-1; n], d).unwrap()
}

#[test]
fn projective_sections_match_enumeration() {
    for n in 1..=3 {
        let fan = Fan::projective_space(n).unwrap();
        for d in 0..=5 {
            let got = sections(&fan, &hyperplane_multiple(&fan, n, Ratio::from_integer(d)), 3, 0).unwrap().len();
            assert_eq!(got, simplex_count(n, Ratio::from_integer(d), 1), "n={n} d={d}");
        }
        for (d, m) in [(Ratio::new(1, 3), 1u32), (Ratio::new(2, 3), 1), (Ratio::new(4, 9), 2)] {
            let got = sections(&fan, &hyperplane_multiple(&fan, n, d), 3, m).unwrap().len();
            assert_eq!(got, simplex_count(n, d, 3i64.pow(m)), "n={n} d={d} m={m}");
        }
    }
}

proptest! {
    #[test]
    fn sections_grow_with_the_divisor(a in prop::collection::vec(0i64..4, 3), k in 0usize..3) {
        let fan = Fan::projective_space(2).unwrap();
        let rays = fan.rays();
        let mk = |cs: &[i64]| TWeilDivisor::new(&fan, rays.clone(), cs.iter().map(|&x| Ratio::from_integer(x)).collect()).unwrap();
        let mut b = a.clone();
        b[k] += 1;
        let small = sections(&fan, &mk(&a), 3, 0).unwrap();
        let big = sections(&fan, &mk(&b), 3, 0).unwrap();
        prop_assert!(small.iter().all(|u| big.contains(u)));
    }

    #[test]
    fn frobenius_maps_sections_into_p_times(d in 0i64..4) {
        let fan = Fan::projective_space(2).unwrap();
        let p = 3;
        let small = sections(&fan, &hyperplane_multiple(&fan, 2, Ratio::new(d, 3)), p, 1).unwrap();
        let big = sections(&fan, &hyperplane_multiple(&fan, 2, Ratio::from_integer(d)), p, 1).unwrap();
        let images: Vec<_> = small.iter().map(|u| frobenius_section(u, p)).collect();
        prop_assert!(images.iter().all(|u| big.contains(u)));
        let mut dedup = images.clone();
        dedup.sort();
        dedup.dedup();
        prop_assert_eq!(dedup.len(), images.len());
    }
}

#[test]
fn fixture_fans_validate() {
    for name in ["fan-p1.json", "fan-pn2.json", "fan-p1xp1.json"] {
        let fan = Fan::from_json_value(&fixture(name)).unwrap();
        assert!(fan.is_smooth() && fan.is_complete().unwrap(), "{name}");
    }
    for name in ["invalid/fan-line-cone.json", "invalid/fan-overlap.json", "invalid/fan-halfplane.json"] {
        assert!(Fan::from_json_value(&fixture(name)).is_err(), "{name}");
    }
}

#[test]
fn dual_is_an_involution_in_rank_three() {
    let gens = vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 2], vec![0, 0, 1]];
    let c = Cone::new(3, gens).unwrap();
    assert_eq!(c.dual().unwrap().dual().unwrap(), c);
}

#[test]
fn complete_intersection_degree_multiplies() {
    assert_eq!(intersection_degree(&[Ratio::from_integer(2), Ratio::from_integer(3)]), Ratio::from_integer(6));
    assert_eq!(intersection_degree(&[Ratio::new(1, 3), Ratio::from_integer(3)]), Ratio::from_integer(1));
}
