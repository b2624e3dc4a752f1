//! Sparse digit storage shared by both element kinds.
//!
//! A digit list is a strictly increasing sequence of `(tick, digit)` pairs
//! with `digit` in `1..p`. Products are accumulated in a dense buffer when the
//! exponent window is small and in a B-tree otherwise.

use std::collections::BTreeMap;

pub(crate) type Digits = Vec<(u64, u8)>;

const DENSE_LIMIT: u64 = 1 << 16;

pub(crate) enum Acc {
    Dense(Vec<i64>),
    Sparse(BTreeMap<u64, i64>),
}

impl Acc {
    pub(crate) fn new(window: u64) -> Acc {
        if window <= DENSE_LIMIT {
            Acc::Dense(vec![0; window as usize])
        } else {
            Acc::Sparse(BTreeMap::new())
        }
    }

    #[inline]
    pub(crate) fn add(&mut self, k: u64, v: i64) {
        match self {
            Acc::Dense(d) => d[k as usize] += v,
            Acc::Sparse(m) => *m.entry(k).or_insert(0) += v,
        }
    }

    pub(crate) fn extend(&mut self, digits: &[(u64, u8)], sign: i64, cap: u64) {
        for &(k, d) in digits {
            if k >= cap {
                break;
            }
            self.add(k, sign * d as i64);
        }
    }

    /// Digit-by-digit reduction with carries `k -> k + scale` (mixed
    /// characteristic). Everything at or above `cap` is discarded.
    pub(crate) fn normalize_carry(self, p: u32, scale: u64, cap: u64) -> Digits {
        let p = p as i64;
        let mut out = Vec::new();
        match self {
            Acc::Dense(mut d) => {
                let len = (d.len() as u64).min(cap);
                for k in 0..len {
                    let v = d[k as usize];
                    if v == 0 {
                        continue;
                    }
                    let digit = v.rem_euclid(p);
                    let carry = v.div_euclid(p);
                    if digit != 0 {
                        out.push((k, digit as u8));
                    }
                    let up = k + scale;
                    if carry != 0 && up < len {
                        d[up as usize] += carry;
                    }
                }
            }
            Acc::Sparse(mut m) => {
                while let Some((k, v)) = m.pop_first() {
                    if k >= cap {
                        break;
                    }
                    let digit = v.rem_euclid(p);
                    let carry = v.div_euclid(p);
                    if digit != 0 {
                        out.push((k, digit as u8));
                    }
                    if carry != 0 && k + scale < cap {
                        *m.entry(k + scale).or_insert(0) += carry;
                    }
                }
            }
        }
        out
    }

    /// Coefficientwise reduction mod `p` (characteristic `p`).
    pub(crate) fn normalize_modp(self, p: u32, cap: u64) -> Digits {
        let p = p as i64;
        let mut out = Vec::new();
        match self {
            Acc::Dense(d) => {
                for (k, v) in d.into_iter().enumerate() {
                    if k as u64 >= cap {
                        break;
                    }
                    let digit = v.rem_euclid(p);
                    if digit != 0 {
                        out.push((k as u64, digit as u8));
                    }
                }
            }
            Acc::Sparse(m) => {
                for (k, v) in m {
                    if k >= cap {
                        break;
                    }
                    let digit = v.rem_euclid(p);
                    if digit != 0 {
                        out.push((k, digit as u8));
                    }
                }
            }
        }
        out
    }
}

/// Accumulates the digit products of `a * b` with exponent below `cap`.
pub(crate) fn mul_into(acc: &mut Acc, a: &[(u64, u8)], b: &[(u64, u8)], cap: u64) {
    for &(ka, da) in a {
        if ka >= cap {
            break;
        }
        for &(kb, db) in b {
            let k = ka + kb;
            if k >= cap {
                break;
            }
            acc.add(k, da as i64 * db as i64);
        }
    }
}

/// Exponent window needed to hold a product of two digit lists.
pub(crate) fn product_window(a: &[(u64, u8)], b: &[(u64, u8)], cap: u64) -> u64 {
    match (a.last(), b.last()) {
        (Some(&(ka, _)), Some(&(kb, _))) => cap.min(ka + kb + 1),
        _ => 0,
    }
}

pub(crate) fn sum_window(a: &[(u64, u8)], b: &[(u64, u8)], cap: u64) -> u64 {
    let top = a.last().map_or(0, |x| x.0 + 1).max(b.last().map_or(0, |x| x.0 + 1));
    cap.min(top)
}

pub(crate) fn truncate(digits: &mut Digits, cap: u64) {
    let keep = digits.partition_point(|&(k, _)| k < cap);
    digits.truncate(keep);
}

/// Saturating "infinity-aware" addition used by precision bookkeeping.
#[inline]
pub(crate) fn sat(a: u64, b: u64) -> u64 {
    a.saturating_add(b)
}
