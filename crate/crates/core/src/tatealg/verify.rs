use std::fmt;

use num_rational::Ratio;
use serde::Serialize;
use serde_json::json;

use crate::arith::{FieldConfig, TiltElement, UntiltElement};
use crate::error::{Error, Result};

use super::approx::lattice_ticks;
use super::decompose::sharp_tate;
use super::element::TateElement;

/// A point at which the contract is checked.
#[derive(Clone, Debug, PartialEq)]
pub enum ContractPoint {
    /// Coordinates in `K°`.
    Classical(Vec<UntiltElement>),
    /// The sup norm over the unit polydisc.
    Gauss,
}

/// Valuation of an evaluated element, guarded by precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Val {
    Exact(u64),
    AtLeast(u64),
}

impl Val {
    pub fn of(x: &UntiltElement) -> Val {
        match x.val_ticks() {
            Some(v) => Val::Exact(v),
            None => Val::AtLeast(x.prec_ticks()),
        }
    }

    pub(crate) fn min(self, other: Val) -> Val {
        match (self, other) {
            (Val::Exact(a), Val::Exact(b)) => Val::Exact(a.min(b)),
            (Val::Exact(a), Val::AtLeast(b)) | (Val::AtLeast(b), Val::Exact(a)) => {
                if a <= b {
                    Val::Exact(a)
                } else {
                    Val::AtLeast(b)
                }
            }
            (Val::AtLeast(a), Val::AtLeast(b)) => Val::AtLeast(a.min(b)),
        }
    }

    /// Interval `[lo, hi]` of possible values, `hi = None` for unbounded.
    fn range(self) -> (u64, Option<u64>) {
        match self {
            Val::Exact(v) => (v, Some(v)),
            Val::AtLeast(b) => (b, None),
        }
    }

    fn to_json(self, cfg: FieldConfig) -> serde_json::Value {
        match self {
            Val::Exact(v) => json!({ "exact": cfg.ratio(v).to_string() }),
            Val::AtLeast(v) => json!({ "at_least": cfg.ratio(v).to_string() }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

impl Verdict {
    fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Indeterminate, _) | (_, Verdict::Indeterminate) => Verdict::Indeterminate,
            _ => Verdict::Pass,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Clone, Debug)]
pub struct PointReport {
    pub label: String,
    pub v_f: Val,
    pub v_g: Val,
    pub v_diff: Val,
    /// `min(v(f(x)), c) = min(v(g^♯(x)), c)`.
    pub remark: Verdict,
    /// `v(f(x) - g^♯(x)) >= 1 - eps + min(v(f(x)), c)`.
    pub lemma: Verdict,
}

#[derive(Clone, Debug)]
pub struct ContractReport {
    pub cfg: FieldConfig,
    pub points: Vec<PointReport>,
    pub verdict: Verdict,
}

impl ContractReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let pts: Vec<_> = self
            .points
            .iter()
            .map(|r| {
                json!({
                    "point": r.label,
                    "v_f": r.v_f.to_json(self.cfg),
                    "v_g": r.v_g.to_json(self.cfg),
                    "v_diff": r.v_diff.to_json(self.cfg),
                    "remark": r.remark,
                    "lemma": r.lemma,
                })
            })
            .collect();
        json!({ "verdict": self.verdict, "points": pts })
    }
}

/// `x^(ticks/scale)` for a coordinate. Fractional powers are available for
/// `0` and for pure powers `p^v`.
fn coord_pow(x: &UntiltElement, ticks: u64) -> Result<UntiltElement> {
    let cfg = x.config();
    let s = cfg.scale();
    if ticks == 0 {
        return Ok(UntiltElement::one(cfg));
    }
    if ticks.is_multiple_of(s) {
        return Ok(x.pow(ticks / s));
    }
    if x.is_zero() {
        let k = ((x.prec_ticks() as u128 * ticks as u128) / s as u128).min(cfg.cap_ticks() as u128) as u64;
        return Ok(UntiltElement::zero(cfg).truncate(k));
    }
    match x.digits() {
        [(v, 1)] if (v * ticks).is_multiple_of(s) => {
            let e = v * ticks / s;
            let prec = if *v == 0 { x.prec_ticks() } else { cfg.cap_ticks() };
            Ok(UntiltElement::monomial(cfg, 1, e).truncate(prec))
        }
        _ => Err(Error::Unsupported(format!(
            "fractional power {} of the coordinate {x}",
            cfg.ratio(ticks)
        ))),
    }
}

/// Evaluates `f` at a classical point.
pub fn eval_classical(f: &TateElement<UntiltElement>, x: &[UntiltElement]) -> Result<UntiltElement> {
    let cfg = f.config();
    if x.len() != f.nvars() {
        return Err(Error::InvalidArgument(format!("point has {} coordinates, expected {}", x.len(), f.nvars())));
    }
    for xi in x {
        cfg.check_same(&xi.config())?;
    }
    let mut acc = UntiltElement::zero(cfg);
    for (e, c) in f.terms() {
        let mut term = c.clone();
        for (xi, &k) in x.iter().zip(e) {
            term = term.checked_mul(&coord_pow(xi, k)?)?;
        }
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

fn value_at(f: &TateElement<UntiltElement>, pt: &ContractPoint) -> Result<Val> {
    match pt {
        ContractPoint::Classical(x) => Ok(Val::of(&eval_classical(f, x)?)),
        ContractPoint::Gauss => Ok(f
            .terms()
            .values()
            .map(Val::of)
            .reduce(Val::min)
            .unwrap_or(Val::AtLeast(f.config().cap_ticks()))),
    }
}

fn clamp(v: Val, c: u64) -> (u64, Option<u64>) {
    let (lo, hi) = v.range();
    (lo.min(c), Some(hi.map_or(c, |h| h.min(c))))
}

fn compare_eq(a: (u64, Option<u64>), b: (u64, Option<u64>)) -> Verdict {
    match (a, b) {
        ((x, Some(y)), (u, Some(w))) if x == y && u == w && x == u => Verdict::Pass,
        ((_, Some(y)), (u, _)) if y < u => Verdict::Fail,
        ((x, _), (_, Some(w))) if w < x => Verdict::Fail,
        _ => Verdict::Indeterminate,
    }
}

/// `a >= b` for value ranges.
fn compare_ge(a: (u64, Option<u64>), b: (u64, Option<u64>)) -> Verdict {
    match (a, b) {
        ((lo, _), (_, Some(bhi))) if lo >= bhi => Verdict::Pass,
        ((_, Some(ahi)), (blo, _)) if ahi < blo => Verdict::Fail,
        _ => Verdict::Indeterminate,
    }
}

pub fn point_label(pt: &ContractPoint) -> String {
    match pt {
        ContractPoint::Gauss => "gauss".into(),
        ContractPoint::Classical(x) => {
            let parts: Vec<String> = x.iter().map(short_label).collect();
            format!("({})", parts.join(", "))
        }
    }
}

fn short_label(x: &UntiltElement) -> String {
    let s = x.to_string();
    let cut = s.find(" + O(").unwrap_or(s.len());
    s[..cut].to_string()
}

/// Checks the equality `max(|f(x)|, |p|^c) = max(|g^♯(x)|, |p|^c)` and the
/// bound `|f(x) - g^♯(x)| <= |p|^{1-eps} max(|f(x)|, |p|^c)` at each point.
pub fn verify_contract(
    f: &TateElement<UntiltElement>,
    g: &TateElement<TiltElement>,
    c: Ratio<i64>,
    eps: Ratio<i64>,
    points: &[ContractPoint],
) -> Result<ContractReport> {
    let cfg = f.config();
    cfg.check_same(&g.config())?;
    let c_t = lattice_ticks(cfg, c, "c")?;
    let eps_t = lattice_ticks(cfg, eps, "eps")?;
    if eps_t >= cfg.scale() {
        return Err(Error::InvalidArgument(format!("eps = {eps} must be below 1")));
    }
    let gs = sharp_tate(g, cfg.prec())?;
    let diff = f.sub(&gs)?;
    let loss = cfg.scale() - eps_t;
    let mut reports = Vec::with_capacity(points.len());
    let mut verdict = Verdict::Pass;
    for pt in points {
        let v_f = value_at(f, pt)?;
        let v_g = value_at(&gs, pt)?;
        let v_diff = value_at(&diff, pt)?;
        let remark = compare_eq(clamp(v_f, c_t), clamp(v_g, c_t));
        let (flo, fhi) = clamp(v_f, c_t);
        let rhs = (flo + loss, fhi.map(|h| h + loss));
        let lemma = compare_ge(v_diff.range(), rhs);
        verdict = verdict.and(remark).and(lemma);
        reports.push(PointReport { label: point_label(pt), v_f, v_g, v_diff, remark, lemma });
    }
    Ok(ContractReport { cfg, points: reports, verdict })
}

/// Coordinates `0, 1, p^{1/p}, p, 1 + p`.
pub fn sample_coordinates(cfg: FieldConfig) -> Result<Vec<UntiltElement>> {
    if cfg.dencap() == 0 {
        return Err(Error::dencap(0, "coordinate p^(1/p)"));
    }
    let s = cfg.scale();
    Ok(vec![
        UntiltElement::zero(cfg),
        UntiltElement::one(cfg),
        UntiltElement::monomial(cfg, 1, s / cfg.p() as u64),
        UntiltElement::monomial(cfg, 1, s),
        UntiltElement::from_int(cfg, 1 + cfg.p() as i64),
    ])
}

/// Fixed sample: up to `classical` tuples over [`sample_coordinates`],
/// spread evenly through the lexicographic list, then the Gauss point.
pub fn contract_sample(cfg: FieldConfig, nvars: usize, classical: usize) -> Result<Vec<ContractPoint>> {
    let coords = sample_coordinates(cfg)?;
    let k = coords.len();
    let total = (k as u64).checked_pow(nvars as u32).ok_or_else(|| Error::InvalidArgument("too many variables".into()))?;
    let mut idx: Vec<u64> = if total as usize <= classical {
        (0..total).collect()
    } else {
        (0..classical as u64).map(|i| i * total / classical as u64).collect()
    };
    idx.dedup();
    let mut out: Vec<ContractPoint> = idx
        .into_iter()
        .map(|mut i| {
            let mut x = vec![UntiltElement::zero(cfg); nvars];
            for slot in x.iter_mut().rev() {
                *slot = coords[(i % k as u64) as usize].clone();
                i /= k as u64;
            }
            ContractPoint::Classical(x)
        })
        .collect();
    out.push(ContractPoint::Gauss);
    Ok(out)
}
