//! Length-`n` Witt vectors over the tilt and the untilting map `θ`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use super::sharp::sharp;
use crate::arith::{AnyElement, ElementJson, FieldConfig, TiltElement, UntiltElement};
use crate::error::{Error, Result};

pub const MAX_WITT_LENGTH: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct WittVector {
    cfg: FieldConfig,
    components: Vec<TiltElement>,
}

/// Integer polynomial in `2n` variables with coefficients modulo `p^n`.
type IntPoly = HashMap<Vec<u32>, u64>;

/// Universal addition and multiplication polynomials reduced mod `p`.
#[derive(Debug)]
struct WittPolys {
    sum: Vec<Vec<(Vec<u32>, u8)>>,
    prod: Vec<Vec<(Vec<u32>, u8)>>,
}

type Cache = RwLock<HashMap<(u32, usize), Arc<WittPolys>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn polys(p: u32, n: usize) -> Result<Arc<WittPolys>> {
    if let Some(w) = cache().read().expect("witt cache poisoned").get(&(p, n)) {
        return Ok(w.clone());
    }
    let w = Arc::new(build(p, n)?);
    cache().write().expect("witt cache poisoned").entry((p, n)).or_insert_with(|| w.clone());
    Ok(w)
}

struct Ring {
    modulus: u128,
    nvars: usize,
}

impl Ring {
    fn var(&self, i: usize) -> IntPoly {
        let mut e = vec![0; self.nvars];
        e[i] = 1;
        IntPoly::from([(e, 1)])
    }

    fn add_into(&self, acc: &mut IntPoly, a: &IntPoly, scalar: u128) {
        for (e, &c) in a {
            let s = (c as u128 * scalar) % self.modulus;
            let slot = acc.entry(e.clone()).or_insert(0);
            *slot = ((*slot as u128 + s) % self.modulus) as u64;
        }
        acc.retain(|_, c| *c != 0);
    }

    fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        let mut out = IntPoly::new();
        for (ea, &ca) in a {
            for (eb, &cb) in b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = (ca as u128 * cb as u128) % self.modulus;
                let slot = out.entry(e).or_insert(0);
                *slot = ((*slot as u128 + c) % self.modulus) as u64;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn pow(&self, a: &IntPoly, e: u64) -> IntPoly {
        let mut out = IntPoly::from([(vec![0; self.nvars], 1)]);
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = self.mul(&out, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        out
    }

    fn ghost(&self, p: u64, k: usize, offset: usize) -> IntPoly {
        let mut g = IntPoly::new();
        for i in 0..=k {
            let term = self.pow(&self.var(offset + i), p.pow((k - i) as u32));
            self.add_into(&mut g, &term, p.pow(i as u32) as u128);
        }
        g
    }
}

/// Solves `w_k(S_0..S_k) = rhs_k` for each `k` given the ghost right-hand
/// sides.
fn solve(ring: &Ring, p: u64, n: usize, rhs: impl Fn(usize) -> IntPoly) -> Result<Vec<IntPoly>> {
    let mut comps: Vec<IntPoly> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = rhs(k);
        for (i, s) in comps.iter().enumerate() {
            let term = ring.pow(s, p.pow((k - i) as u32));
            let neg = ring.modulus - (p.pow(i as u32) as u128 % ring.modulus);
            ring.add_into(&mut acc, &term, neg);
        }
        let pk = p.pow(k as u32);
        let mut s = IntPoly::new();
        for (e, c) in acc {
            if c % pk != 0 {
                return Err(Error::Unsupported("Witt polynomial is not integral".into()));
            }
            s.insert(e, c / pk);
        }
        comps.push(s);
    }
    Ok(comps)
}

fn build(p: u32, n: usize) -> Result<WittPolys> {
    let pp = p as u64;
    let modulus = (pp as u128)
        .checked_pow(n as u32)
        .filter(|m| *m < (1u128 << 63))
        .ok_or_else(|| Error::Unsupported(format!("Witt vectors of length {n} over p = {p}")))?;
    let ring = Ring { modulus, nvars: 2 * n };
    let sum = solve(&ring, pp, n, |k| {
        let mut g = ring.ghost(pp, k, 0);
        ring.add_into(&mut g, &ring.ghost(pp, k, n), 1);
        g
    })?;
    let prod = solve(&ring, pp, n, |k| ring.mul(&ring.ghost(pp, k, 0), &ring.ghost(pp, k, n)))?;
    let reduce = |polys: Vec<IntPoly>| {
        polys
            .into_iter()
            .map(|s| {
                let mut v: Vec<(Vec<u32>, u8)> = s
                    .into_iter()
                    .filter_map(|(e, c)| {
                        let c = (c % pp) as u8;
                        (c != 0).then_some((e, c))
                    })
                    .collect();
                v.sort();
                v
            })
            .collect()
    };
    Ok(WittPolys { sum: reduce(sum), prod: reduce(prod) })
}

/// Evaluates a mod-`p` polynomial at tilt elements, caching powers.
fn eval(poly: &[(Vec<u32>, u8)], vals: &[TiltElement], cfg: FieldConfig) -> Result<TiltElement> {
    let mut powers: HashMap<(usize, u32), TiltElement> = HashMap::new();
    let mut acc = TiltElement::zero(cfg);
    for (e, c) in poly {
        let mut term = TiltElement::from_int(cfg, *c as i64);
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let pw = powers.entry((i, k)).or_insert_with(|| vals[i].pow(k as u64));
            term = term.checked_mul(pw)?;
            if term.is_zero() {
                break;
            }
        }
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

impl WittVector {
    pub fn new(components: Vec<TiltElement>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidArgument("Witt vector of length 0".into()))?;
        let cfg = first.config();
        for c in &components {
            cfg.check_same(&c.config())?;
        }
        if components.len() > cfg.prec() as usize {
            return Err(Error::InvalidArgument("Witt length exceeds prec".into()));
        }
        Ok(WittVector { cfg, components })
    }

    /// Teichmüller representative `[x] = (x, 0, ..., 0)`.
    pub fn teichmuller(x: &TiltElement, length: usize) -> Result<Self> {
        let mut c = vec![TiltElement::zero(x.config()); length];
        c[0] = x.clone();
        Self::new(c)
    }

    pub fn zero(cfg: FieldConfig, length: usize) -> Result<Self> {
        Self::new(vec![TiltElement::zero(cfg); length])
    }

    pub fn config(&self) -> FieldConfig {
        self.cfg
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[TiltElement] {
        &self.components
    }

    fn op(&self, rhs: &Self, pick: impl Fn(&WittPolys) -> &Vec<Vec<(Vec<u32>, u8)>>) -> Result<Self> {
        self.cfg.check_same(&rhs.cfg)?;
        let n = self.len();
        if n != rhs.len() {
            return Err(Error::InvalidArgument(format!("Witt length mismatch: {n} vs {}", rhs.len())));
        }
        if n > MAX_WITT_LENGTH {
            return Err(Error::Unsupported(format!("Witt length {n} > {MAX_WITT_LENGTH}")));
        }
        let w = polys(self.cfg.p(), n)?;
        let vals: Vec<TiltElement> = self.components.iter().chain(&rhs.components).cloned().collect();
        let out = pick(&w)
            .iter()
            .map(|s| eval(s, &vals, self.cfg))
            .collect::<Result<Vec<_>>>()?;
        Self::new(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.op(rhs, |w| &w.sum)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.op(rhs, |w| &w.prod)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(WittJson {
            length: self.len(),
            components: self.components.iter().map(ElementJson::from).collect(),
        })
        .expect("Witt JSON is serializable")
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let j: WittJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if j.length != j.components.len() {
            return Err(Error::Parse("Witt length does not match component count".into()));
        }
        let comps = j
            .components
            .iter()
            .map(|c| c.to_element().and_then(AnyElement::into_tilt))
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps)
    }
}

#[derive(Serialize, Deserialize)]
struct WittJson {
    length: usize,
    components: Vec<ElementJson>,
}

/// `θ(x_0, ..., x_{n-1}) = sum sharp(x_i^{1/p^i}) p^i mod p^n`.
pub fn theta(a: &WittVector) -> Result<UntiltElement> {
    let cfg = a.cfg;
    let n = a.len() as u32;
    let scale = cfg.scale();
    let mut acc = UntiltElement::zero(cfg).truncate(n as u64 * scale);
    for (i, x) in a.components.iter().enumerate() {
        let i = i as u32;
        let root = x.pth_root_n(i)?;
        let s = sharp(&root, n - i)?;
        acc = acc.checked_add(&s.shift_up(i as u64 * scale))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> FieldConfig {
        FieldConfig::new(3, 8, 2).unwrap()
    }

    #[test]
    fn one_plus_one_in_length_two() {
        let one = WittVector::teichmuller(&TiltElement::one(cfg()), 2).unwrap();
        let s = one.add(&one).unwrap();
        // S_1(1,0,1,0) = (1 + 1 - 2^3)/3 = -2 = 1 mod 3
        assert_eq!(s.components()[0], TiltElement::from_int(cfg(), 2));
        assert_eq!(s.components()[1], TiltElement::one(cfg()));
    }

    #[test]
    fn teichmuller_is_multiplicative() {
        let t = WittVector::teichmuller(&TiltElement::monomial(cfg(), 1, 9), 2).unwrap();
        let sq = t.mul(&t).unwrap();
        assert_eq!(sq.components()[0], TiltElement::monomial(cfg(), 1, 18));
        assert!(sq.components()[1].is_zero());
    }

    #[test]
    fn adding_zero() {
        let x = WittVector::new(vec![
            TiltElement::monomial(cfg(), 2, 9),
            &TiltElement::one(cfg()) + &TiltElement::monomial(cfg(), 1, 9),
        ])
        .unwrap();
        let z = WittVector::zero(cfg(), 2).unwrap();
        assert_eq!(x.add(&z).unwrap(), x);
    }

    #[test]
    fn theta_of_two_one_is_two() {
        let v = WittVector::new(vec![TiltElement::from_int(cfg(), 2), TiltElement::one(cfg())]).unwrap();
        assert_eq!(theta(&v).unwrap(), UntiltElement::from_int(cfg(), 2).truncate(18));
        let t = WittVector::teichmuller(&TiltElement::monomial(cfg(), 1, 9), 3).unwrap();
        assert_eq!(theta(&t).unwrap(), UntiltElement::from_int(cfg(), 3).truncate(27));
    }

    #[test]
    fn witt_json_round_trip() {
        let v = WittVector::new(vec![TiltElement::from_int(cfg(), 2), TiltElement::one(cfg())]).unwrap();
        let j = v.to_json_value();
        assert_eq!(WittVector::from_json_value(&j).unwrap(), v);
    }
}
