//! Acceptance checks 1-8, runnable from tests and from the command line.
//! Criterion 9 concerns the command-line tool and lives there.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adicdisc::{tilt_point_check, AdicPoint, AdicValue, Sign, TiltPoint};
use crate::arith::{FieldConfig, TiltElement, UntiltElement};
use crate::error::{Error, Result};
use crate::polyroots::{fw_transfer, hensel_root, mixed_root_refine, newton_polygon, stabilization_agreement, Polynomial};
use crate::tatealg::{approximate, contract_sample, verify_contract, HomogeneousElement, TateElement, Verdict};
use crate::tiltkit::{sharp, theta, WittVector};
use crate::toric::{hypersurface_transfer, sections, Cone, Fan, TWeilDivisor};

pub const DEFAULT_SEED: u64 = 20_240_607;

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    /// Whether the run finished inside the time limit.
    pub within_limit: bool,
    pub limit_secs: u64,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Outcome {
    pub fn ok(&self) -> bool {
        self.passed && self.within_limit
    }
}

pub const CORE_CRITERIA: [u32; 8] = [1, 2, 3, 4, 5, 6, 7, 8];

pub fn title(id: u32) -> &'static str {
    match id {
        1 => "ring axioms",
        2 => "sharp map",
        3 => "theta homomorphism",
        4 => "newton polygons and transfer",
        5 => "root finding",
        6 => "approximation contract",
        7 => "adic disc",
        8 => "toric",
        9 => "cli",
        _ => "unknown",
    }
}

pub fn limit_secs(id: u32) -> u64 {
    match id {
        3 | 4 => 10,
        6 => 60,
        8 => 30,
        _ => 5,
    }
}

pub fn run(id: u32, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let start = Instant::now();
    let res = match id {
        1 => ring_axioms(&mut rng),
        2 => sharp_suite(&mut rng),
        3 => theta_suite(&mut rng),
        4 => newton_suite(&mut rng),
        5 => root_suite(),
        6 => contract_suite(),
        7 => disc_suite(&mut rng),
        8 => toric_suite(),
        _ => Err(Error::InvalidArgument(format!("no criterion {id} in the core suite"))),
    };
    let elapsed = start.elapsed();
    let (passed, detail) = match res {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    let limit = limit_secs(id);
    Outcome {
        id,
        title: title(id).to_string(),
        passed,
        within_limit: elapsed.as_secs_f64() < limit as f64,
        limit_secs: limit,
        detail,
        elapsed,
    }
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    CORE_CRITERIA.iter().map(|&id| run(id, seed)).collect()
}

type Check = Result<(bool, String)>;

fn cfg(p: u32, prec: u32, dencap: u32) -> Result<FieldConfig> {
    FieldConfig::new(p, prec, dencap)
}

fn random_digits(rng: &mut ChaCha8Rng, cfg: FieldConfig, terms: usize, step: u64, below: u64) -> Vec<(u64, u8)> {
    let mut d: Vec<(u64, u8)> = (0..terms)
        .map(|_| (rng.gen_range(0..below / step) * step, rng.gen_range(1..cfg.p()) as u8))
        .collect();
    d.sort();
    d.dedup_by_key(|x| x.0);
    d
}

pub(crate) fn random_untilt(rng: &mut ChaCha8Rng, cfg: FieldConfig, terms: usize) -> UntiltElement {
    let n = rng.gen_range(0..=terms);
    let d = random_digits(rng, cfg, n, 1, cfg.cap_ticks());
    UntiltElement::from_digits(cfg, d, cfg.cap_ticks()).expect("canonical")
}

fn random_tilt(rng: &mut ChaCha8Rng, cfg: FieldConfig, terms: usize, step: u64, exact: bool) -> TiltElement {
    let n = rng.gen_range(0..=terms);
    let d = random_digits(rng, cfg, n, step, cfg.cap_ticks());
    TiltElement::from_digits(cfg, d, if exact { None } else { Some(cfg.cap_ticks()) }).expect("canonical")
}

// 1

fn axioms<T: PartialEq>(a: &T, b: &T, c: &T, add: impl Fn(&T, &T) -> Result<T>, mul: impl Fn(&T, &T) -> Result<T>) -> Result<bool> {
    Ok(add(&add(a, b)?, c)? == add(a, &add(b, c)?)?
        && mul(&mul(a, b)?, c)? == mul(a, &mul(b, c)?)?
        && mul(a, &add(b, c)?)? == add(&mul(a, b)?, &mul(a, c)?)?
        && add(a, b)? == add(b, a)?
        && mul(a, b)? == mul(b, a)?)
}

fn ring_axioms(rng: &mut ChaCha8Rng) -> Check {
    let mut bad = Vec::new();
    let mut count = 0;
    for p in [2, 3, 5] {
        let cfg = cfg(p, 8, 2)?;
        for _ in 0..1000 {
            let (a, b, c) = (random_untilt(rng, cfg, 6), random_untilt(rng, cfg, 6), random_untilt(rng, cfg, 6));
            if !axioms(&a, &b, &c, UntiltElement::checked_add, UntiltElement::checked_mul)? {
                bad.push(format!("untilt p={p}: {a}, {b}, {c}"));
            }
            let (a, b, c) = (
                random_tilt(rng, cfg, 6, 1, false),
                random_tilt(rng, cfg, 6, 1, false),
                random_tilt(rng, cfg, 6, 1, false),
            );
            if !axioms(&a, &b, &c, TiltElement::checked_add, TiltElement::checked_mul)? {
                bad.push(format!("tilt p={p}: {a}, {b}, {c}"));
            }
            count += 2;
        }
    }
    Ok((bad.is_empty(), format!("{count} triples, {} failures{}", bad.len(), first(&bad))))
}

fn first(v: &[String]) -> String {
    v.first().map(|s| format!("; first: {s}")).unwrap_or_default()
}

// 2

fn sharp_suite(rng: &mut ChaCha8Rng) -> Check {
    let mut notes = Vec::new();
    let mut ok = true;
    for p in [2, 3, 5] {
        let c = cfg(p, 8, 2)?;
        let s = sharp(&TiltElement::monomial(c, 1, c.scale()), 8)?;
        if s != UntiltElement::from_int(c, p as i64) {
            ok = false;
            notes.push(format!("sharp(t) = {s} for p = {p}"));
        }
    }
    let c = cfg(3, 8, 2)?;
    let mut mult_fail = 0;
    for _ in 0..500 {
        let x = random_tilt(rng, c, 3, 1, true);
        let y = random_tilt(rng, c, 3, 1, true);
        let lhs = sharp(&x.checked_mul(&y)?, 8)?;
        let rhs = sharp(&x, 8)?.checked_mul(&sharp(&y, 8)?)?;
        if !lhs.congruent(&rhs) {
            mult_fail += 1;
        }
    }
    let mut val_fail = 0;
    let mut samples = 0;
    while samples < 500 {
        let x = random_tilt(rng, c, 3, 1, true);
        if x.is_zero() {
            continue;
        }
        samples += 1;
        if sharp(&x, 8)?.val_ticks() != x.val_ticks() {
            val_fail += 1;
        }
    }
    // 1 + 1 = 2 is not a Teichmuller lift
    let one = TiltElement::one(c);
    let lhs = sharp(&one.checked_add(&one)?, 8)?;
    let rhs = sharp(&one, 8)?.checked_add(&sharp(&one, 8)?)?;
    let witness = !lhs.congruent(&rhs);
    ok &= mult_fail == 0 && val_fail == 0 && witness;
    notes.push(format!("multiplicativity failures {mult_fail}/500, valuation failures {val_fail}/500"));
    notes.push(format!("non-additivity witness p=3: sharp(1+1) = {lhs} but sharp(1)+sharp(1) = {rhs}"));
    Ok((ok, notes.join("; ")))
}

// 3

fn theta_suite(rng: &mut ChaCha8Rng) -> Check {
    let mut fails = 0;
    let mut ok = true;
    let mut notes = Vec::new();
    for p in [2, 3] {
        // integral exponents leave room for the p-th roots inside theta
        let c = cfg(p, 3, 4)?;
        let random_witt = |rng: &mut ChaCha8Rng| -> Result<WittVector> {
            WittVector::new((0..3).map(|_| random_tilt(rng, c, 3, c.scale(), true)).collect())
        };
        for _ in 0..100 {
            let a = random_witt(rng)?;
            let b = random_witt(rng)?;
            let (ta, tb) = (theta(&a)?, theta(&b)?);
            let sum = theta(&a.add(&b)?)?;
            let prod = theta(&a.mul(&b)?)?;
            let full = 3 * c.scale();
            let exact = [&ta, &tb, &sum, &prod].iter().all(|x| x.prec_ticks() >= full);
            if !exact || !sum.congruent(&ta.checked_add(&tb)?) || !prod.congruent(&ta.checked_mul(&tb)?) {
                fails += 1;
            }
        }
        let t = WittVector::teichmuller(&TiltElement::monomial(c, 1, c.scale()), 3)?;
        let th = theta(&t)?;
        if th != UntiltElement::from_int(c, p as i64) {
            ok = false;
            notes.push(format!("theta([t]) = {th} for p = {p}"));
        }
    }
    notes.push(format!("{fails}/200 pairs failed"));
    Ok((ok && fails == 0, notes.join("; ")))
}

// 4

fn newton_suite(rng: &mut ChaCha8Rng) -> Check {
    let mut fails = 0;
    for i in 0..100 {
        let p = [2, 3, 5][i % 3];
        let c = cfg(p, 8, 2)?;
        let d = rng.gen_range(1..=4);
        let lower: Vec<TiltElement> = (0..d).map(|_| random_tilt(rng, c, 2, 1, true)).collect();
        let poly = Polynomial::monic(lower, c)?;
        if newton_polygon(&poly)? != newton_polygon(&fw_transfer(&poly, 0)?)? {
            fails += 1;
        }
    }
    let c = cfg(3, 8, 2)?;
    let t = TiltElement::monomial(c, 1, c.scale());
    let x2t = Polynomial::monic(vec![t.neg(), TiltElement::zero(c)], c)?;
    let x2p = Polynomial::<UntiltElement>::from_ints(c, &[-3, 0, 1])?;
    let transfer_ok = fw_transfer(&x2t, 0)? == x2p;
    let c = cfg(2, 6, 8)?;
    let a = TiltElement::monomial(c, 1, c.scale()).checked_add(&TiltElement::monomial(c, 1, 2 * c.scale()))?;
    let poly = Polynomial::monic(vec![a.neg(), TiltElement::zero(c)], c)?;
    let stab = (0..4).map(|n| stabilization_agreement(&poly, n)).collect::<Result<Vec<_>>>()?;
    let mono = stab.windows(2).all(|w| w[0] <= w[1]);
    let shown: Vec<String> = stab.iter().map(|r| r.to_string()).collect();
    Ok((
        fails == 0 && transfer_ok && mono,
        format!(
            "polygon mismatches {fails}/100; transfer of X^2-t is X^2-p: {transfer_ok}; stabilization [{}]",
            shown.join(", ")
        ),
    ))
}

// 5

fn root_suite() -> Check {
    let mut notes = Vec::new();
    let mut ok = true;
    let cases: [(u32, &[i64]); 3] = [(2, &[-2, 0, 1]), (3, &[-3, 0, 0, 1]), (3, &[-4, 0, 1])];
    for (p, ints) in cases {
        let c = cfg(p, 6, 2)?;
        let poly = Polynomial::<UntiltElement>::from_ints(c, ints)?;
        let r = mixed_root_refine(&poly)?;
        let mut good = r.stages.len() <= 6 && r.residual >= Ratio::from_integer(6);
        if ints == [-4, 0, 1] {
            let two = UntiltElement::from_int(c, 2);
            let h = hensel_root(&poly, &two)?;
            good &= r.root.congruent(&h) || r.root.congruent(&h.neg());
        }
        ok &= good;
        notes.push(format!("{poly}: root {}, {} stages, residual {}", r.root, r.stages.len(), r.residual));
    }
    Ok((ok, notes.join("; ")))
}

// 6

fn linear_form(c: FieldConfig, coeffs: &[i64]) -> Result<HomogeneousElement<UntiltElement>> {
    let n = coeffs.len();
    let mut f = TateElement::zero(c, n);
    for (i, &a) in coeffs.iter().enumerate() {
        f = f.add(&TateElement::var(c, n, i).scale(&UntiltElement::from_int(c, a))?)?;
    }
    HomogeneousElement::from_element(f)
}

fn contract_suite() -> Check {
    let mut notes = Vec::new();
    let mut ok = true;
    for p in [2u32, 3] {
        let c = cfg(p, 6, 2)?;
        let pi = p as i64;
        let eps = Ratio::new(1, pi);
        for coeffs in [vec![1, pi], vec![1, pi, pi * pi], vec![1, 1, 1]] {
            let f = linear_form(c, &coeffs)?;
            let pts = contract_sample(c, f.nvars(), 49)?;
            for cc in [1i64, 2] {
                let cr = Ratio::from_integer(cc);
                let g = approximate(&f, cr, eps)?.g;
                let rep = verify_contract(f.elem(), g.elem(), cr, eps, &pts)?;
                if !rep.passed() {
                    ok = false;
                    notes.push(format!("p={p} f={} c={cc}: {}", f.elem(), rep.verdict));
                }
            }
        }
    }
    let detail = if ok { "12 (f, c, eps, p) cases pass at 50 points".to_string() } else { notes.join("; ") };
    Ok((ok, detail))
}

// 7

fn random_point(rng: &mut ChaCha8Rng, c: FieldConfig) -> Result<AdicPoint> {
    let center = random_untilt(rng, c, 3);
    let qs = [Ratio::from_integer(0), Ratio::new(1, 3), Ratio::new(1, 2), Ratio::from_integer(1), Ratio::new(4, 3)];
    match rng.gen_range(0..4) {
        0 => Ok(AdicPoint::Classical(center)),
        1 => AdicPoint::disc(center, qs[rng.gen_range(0..qs.len())]),
        2 => AdicPoint::disc(center, Ratio::new(rng.gen_range(1..8), 2)),
        _ => {
            let q = [Ratio::from_integer(0), Ratio::new(1, 3), Ratio::from_integer(1)][rng.gen_range(0..3)];
            let sign = if q == Ratio::from_integer(0) || rng.gen_bool(0.5) { Sign::Less } else { Sign::Greater };
            AdicPoint::type5(center, q, sign)
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, c: FieldConfig) -> Result<Polynomial<UntiltElement>> {
    let d = rng.gen_range(0..=4);
    let mut coeffs: Vec<UntiltElement> = (0..=d).map(|_| random_untilt(rng, c, 3)).collect();
    if coeffs.iter().all(|x| x.is_zero()) {
        coeffs[0] = UntiltElement::one(c);
    }
    Polynomial::new(coeffs)
}

fn disc_suite(rng: &mut ChaCha8Rng) -> Check {
    let c = cfg(3, 8, 1)?;
    let (mut decided, mut bad, mut drawn) = (0, 0, 0);
    let mut types = [0usize; 4];
    // triples whose values are not decided at this precision are redrawn
    while decided < 500 && drawn < 2000 {
        drawn += 1;
        let f = random_poly(rng, c)?;
        let g = random_poly(rng, c)?;
        let x = random_point(rng, c)?;
        let vals = (x.eval(&f), x.eval(&g), x.eval(&f.mul(&g)?), x.eval(&add_polys(&f, &g)?));
        let (Ok(vf), Ok(vg), Ok(vfg)) = (vals.0, vals.1, vals.2) else { continue };
        decided += 1;
        types[match x.point_type() {
            crate::adicdisc::PointType::Type1 => 0,
            crate::adicdisc::PointType::Type2 => 1,
            crate::adicdisc::PointType::Type3 => 2,
            crate::adicdisc::PointType::Type5 => 3,
        }] += 1;
        let mult = vf.mul(vg)? == vfg;
        let ultra = match vals.3 {
            Ok(vs) => vs.cmp_abs(max_abs(vf, vg)) != Ordering::Greater,
            Err(_) => true,
        };
        if !mult || !ultra {
            bad += 1;
        }
    }
    let gauss = AdicPoint::gauss(c);
    let special = (0..10)
        .map(|i| AdicPoint::type5(UntiltElement::from_int(c, i), Ratio::from_integer(0), Sign::Less))
        .collect::<Result<Vec<_>>>()?;
    let spec_ok = special.iter().all(|y| gauss.specializes(y) && !y.specializes(&gauss));
    let (mut tilt_pass, mut tilt_total) = (0, 0);
    let mut tilt_bad = None;
    let tc = cfg(3, 6, 2)?;
    let mut redrawn = 0;
    let mut i = 0;
    while tilt_total < 20 && i < 200 {
        let (f, x) = tilt_sample(rng, tc, i)?;
        i += 1;
        let r = tilt_point_check(&f, &x)?;
        if r.verdict == Verdict::Indeterminate {
            redrawn += 1;
            continue;
        }
        tilt_total += 1;
        if r.verdict == Verdict::Pass {
            tilt_pass += 1;
        } else if tilt_bad.is_none() {
            let at = match &x {
                TiltPoint::Gauss(_) => "gauss".to_string(),
                TiltPoint::Classical(v) => v[0].to_string(),
            };
            tilt_bad = Some(format!("; {f} at {at}: {:?} vs {:?}", r.tilt, r.untilt));
        }
    }
    let ok = bad == 0 && decided == 500 && types.iter().all(|&n| n > 0) && spec_ok && tilt_total == 20 && tilt_pass == tilt_total;
    Ok((
        ok,
        format!(
            "{decided} decided of {drawn} drawn (types 1/2/3/5: {types:?}), {bad} failures; gauss specializes to 10 type-5 points: {spec_ok}; tilt check {tilt_pass}/{tilt_total} ({redrawn} undecided redrawn){}",
            tilt_bad.unwrap_or_default()
        ),
    ))
}

fn max_abs(a: AdicValue, b: AdicValue) -> AdicValue {
    if a.cmp_abs(b) == Ordering::Less {
        b
    } else {
        a
    }
}

fn add_polys(f: &Polynomial<UntiltElement>, g: &Polynomial<UntiltElement>) -> Result<Polynomial<UntiltElement>> {
    let n = f.degree().max(g.degree()) + 1;
    Polynomial::new((0..n).map(|i| f.coeff(i).checked_add(&g.coeff(i))).collect::<Result<_>>()?)
}

/// `f = T^a + u t^b` at `T = v t^e`, or at the Gauss point every fifth draw.
fn tilt_sample(rng: &mut ChaCha8Rng, c: FieldConfig, i: usize) -> Result<(TateElement<TiltElement>, TiltPoint)> {
    let s = c.scale();
    let a = rng.gen_range(1..=3) * s;
    let b = rng.gen_range(0..=9) * (s / 3);
    let u = rng.gen_range(1..c.p()) as u64;
    let f = TateElement::from_terms(
        c,
        1,
        [(vec![a], TiltElement::one(c)), (vec![0], TiltElement::monomial(c, u, b))],
    )?;
    if i % 5 == 4 {
        return Ok((f, TiltPoint::Gauss(c)));
    }
    let v = rng.gen_range(1..c.p()) as u64;
    let mut e = rng.gen_range(0..=3) * (s / 3);
    // keep the two terms at different valuations so the value is decided
    if e * (a / s) == b {
        e += s / 3;
    }
    Ok((f, TiltPoint::Classical(vec![TiltElement::monomial(c, v, e)])))
}

// 8

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n - k + i) / i)
}

fn toric_suite() -> Check {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 1..=3usize {
        let fan = Fan::projective_space(n)?;
        for d in 0..=5i64 {
            let div = TWeilDivisor::prime(&fan, &vec![-1; n], Ratio::from_integer(d))?;
            let got = sections(&fan, &div, 3, 0)?.len() as u64;
            if got != binomial(n as u64 + d as u64, n as u64) {
                ok = false;
                notes.push(format!("P^{n}, d={d}: {got} sections"));
            }
        }
    }
    let p2 = Fan::projective_space(2)?;
    let frac = sections(&p2, &TWeilDivisor::prime(&p2, &[-1, -1], Ratio::new(1, 3))?, 3, 1)?;
    ok &= frac.len() == 3;
    notes.push(format!("fractional hyperplane sections: {}", frac.len()));
    let smooth = p2.is_smooth() && p2.is_complete()?;
    let index2 = Fan::new(2, vec![vec![vec![1, 0], vec![1, 2]]])?;
    ok &= smooth && !index2.is_smooth();
    notes.push(format!("P^2 smooth and complete: {smooth}; index-2 cone smooth: {}", index2.is_smooth()));
    let (mut cones, mut bad) = (0, 0);
    let vecs: Vec<Vec<i64>> = (-3..=3)
        .flat_map(|a| (-3..=3).map(move |b| vec![a, b]))
        .filter(|v: &Vec<i64>| v != &vec![0, 0])
        .collect();
    for (i, u) in vecs.iter().enumerate() {
        for v in &vecs[i + 1..] {
            if u[0] * v[1] - u[1] * v[0] == 0 {
                continue;
            }
            let sigma = Cone::new(2, vec![u.clone(), v.clone()])?;
            cones += 1;
            if sigma.dual()?.dual()? != sigma {
                bad += 1;
            }
        }
    }
    ok &= bad == 0;
    notes.push(format!("dual involution on {cones} generator pairs, {bad} failures"));
    let c = cfg(3, 6, 2)?;
    let f = linear_form(c, &[1, 1, 1])?;
    let t = hypersurface_transfer(&p2, &f, Ratio::from_integer(2), Ratio::new(1, 3))?;
    ok &= t.report.passed();
    notes.push(format!("transfer of x0+x1+x2: {} ({} points)", t.report.verdict, t.report.points.len()));
    Ok((ok, notes.join("; ")))
}

