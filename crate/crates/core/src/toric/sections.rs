use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::adicdisc::in_z_1_over_p;
use crate::error::{Error, Result};

use super::cone::Cone;
use super::fan::Fan;
use super::linalg::{combinations, dot, solve, IVec};

/// Lattice points examined before giving up.
const BOX_BUDGET: u128 = 20_000_000;

/// `sum a_i D_i` with one coefficient in `Z[1/p]` per ray of a fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TWeilDivisor {
    rays: Vec<IVec>,
    coeffs: Vec<Ratio<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DivisorJson {
    pub rays: Vec<IVec>,
    pub coeffs: Vec<String>,
}

impl TWeilDivisor {
    /// Coefficients listed against explicit rays; rays must be exactly
    /// those of `fan`.
    pub fn new(fan: &Fan, rays: Vec<IVec>, coeffs: Vec<Ratio<i64>>) -> Result<Self> {
        if rays.len() != coeffs.len() {
            return Err(Error::InvalidArgument("one coefficient per ray is required".into()));
        }
        let mut given = rays.clone();
        given.sort();
        if given != fan.rays() {
            return Err(Error::InvalidArgument(format!(
                "divisor rays {rays:?} differ from the fan's rays {:?}",
                fan.rays()
            )));
        }
        Ok(TWeilDivisor { rays, coeffs })
    }

    /// `a * D_ray`.
    pub fn prime(fan: &Fan, ray: &[i64], a: Ratio<i64>) -> Result<Self> {
        let rays = fan.rays();
        if !rays.iter().any(|r| r == ray) {
            return Err(Error::InvalidArgument(format!("{ray:?} is not a ray of the fan")));
        }
        let coeffs = rays.iter().map(|r| if r == ray { a } else { Ratio::zero() }).collect();
        Ok(TWeilDivisor { rays, coeffs })
    }

    pub fn rays(&self) -> &[IVec] {
        &self.rays
    }

    pub fn coeffs(&self) -> &[Ratio<i64>] {
        &self.coeffs
    }

    pub fn scale(&self, s: Ratio<i64>) -> Self {
        TWeilDivisor { rays: self.rays.clone(), coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let j = DivisorJson { rays: self.rays.clone(), coeffs: self.coeffs.iter().map(|a| a.to_string()).collect() };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json_value(v: &serde_json::Value, fan: &Fan) -> Result<Self> {
        let j: DivisorJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| s.parse::<Ratio<i64>>().map_err(|e| Error::Parse(format!("coefficient {s:?}: {e}"))))
            .collect::<Result<_>>()?;
        TWeilDivisor::new(fan, j.rays, coeffs)
    }
}

/// Points `u` of `(1/p^m) Z^k` with `<u, v_i> >= -a_i` for every ray.
pub fn sections(fan: &Fan, d: &TWeilDivisor, p: u32, m: u32) -> Result<Vec<Vec<Ratio<i64>>>> {
    let k = fan.rank();
    for a in d.coeffs() {
        if !in_z_1_over_p(*a, p) {
            return Err(Error::InvalidArgument(format!("coefficient {a} is not in Z[1/{p}]")));
        }
    }
    let rays = d.rays().to_vec();
    // bounded iff the rays positively span
    let recession = Cone::generated(k, rays.clone())?.dual()?;
    if !recession.gens().is_empty() {
        return Err(Error::Unbounded(format!("directions {:?} stay in the section polytope", recession.gens())));
    }
    let bound: Vec<Ratio<i64>> = d.coeffs().iter().map(|a| -a).collect();
    let feasible = |u: &[Ratio<i128>]| {
        rays.iter().zip(&bound).all(|(v, b)| {
            let s: Ratio<i128> = u.iter().zip(v).map(|(x, &y)| x * Ratio::from_integer(y as i128)).sum();
            s >= Ratio::new(*b.numer() as i128, *b.denom() as i128)
        })
    };
    let mut lo: Option<Vec<Ratio<i128>>> = None;
    let mut hi: Option<Vec<Ratio<i128>>> = None;
    for s in combinations(rays.len(), k) {
        let rows: Vec<IVec> = s.iter().map(|&i| rays[i].clone()).collect();
        let rhs: Vec<Ratio<i64>> = s.iter().map(|&i| bound[i]).collect();
        let Some(x) = solve(&rows, &rhs) else { continue };
        if !feasible(&x) {
            continue;
        }
        lo = Some(match lo {
            None => x.clone(),
            Some(l) => l.iter().zip(&x).map(|(a, b)| *a.min(b)).collect(),
        });
        hi = Some(match hi {
            None => x.clone(),
            Some(h) => h.iter().zip(&x).map(|(a, b)| *a.max(b)).collect(),
        });
    }
    let (Some(lo), Some(hi)) = (lo, hi) else { return Ok(Vec::new()) };
    let scale = (p as i128).checked_pow(m).ok_or_else(|| Error::dencap(m, "section lattice"))?;
    let sc = Ratio::from_integer(scale);
    let lo_t: Vec<i128> = lo.iter().map(|x| (x * sc).ceil().to_integer()).collect();
    let hi_t: Vec<i128> = hi.iter().map(|x| (x * sc).floor().to_integer()).collect();
    let size: u128 = lo_t.iter().zip(&hi_t).map(|(a, b)| (b - a + 1).max(0) as u128).product();
    if size > BOX_BUDGET {
        return Err(Error::BudgetExhausted(format!("{size} candidate lattice points")));
    }
    let mut out = Vec::new();
    let mut cur = lo_t.clone();
    if lo_t.iter().zip(&hi_t).any(|(a, b)| a > b) {
        return Ok(out);
    }
    loop {
        let ints: Vec<i64> = cur.iter().map(|&x| x as i64).collect();
        let ok = rays.iter().zip(&bound).all(|(v, b)| {
            Ratio::from_integer(dot(&ints, v)) >= b * Ratio::from_integer(scale as i64)
        });
        if ok {
            out.push(cur.iter().map(|&x| Ratio::new(x as i64, scale as i64)).collect());
        }
        // odometer
        let mut j = k;
        loop {
            if j == 0 {
                out.sort();
                return Ok(out);
            }
            j -= 1;
            if cur[j] < hi_t[j] {
                cur[j] += 1;
                break;
            }
            cur[j] = lo_t[j];
        }
    }
}

/// `u -> p u`, sending sections of `D` to sections of `p D`.
pub fn frobenius_section(u: &[Ratio<i64>], p: u32) -> Vec<Ratio<i64>> {
    u.iter().map(|x| x * Ratio::from_integer(p as i64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyperplane(fan: &Fan, a: Ratio<i64>) -> TWeilDivisor {
        let n = fan.rank();
        TWeilDivisor::prime(fan, &vec![-1; n], a).unwrap()
    }

    #[test]
    fn hyperplane_sections_on_the_plane() {
        let fan = Fan::projective_space(2).unwrap();
        let pts = sections(&fan, &hyperplane(&fan, Ratio::from_integer(1)), 3, 0).unwrap();
        assert_eq!(pts.len(), 3);
        let frac = sections(&fan, &hyperplane(&fan, Ratio::new(1, 3)), 3, 1).unwrap();
        let want: Vec<Vec<Ratio<i64>>> = vec![
            vec![Ratio::from_integer(0), Ratio::from_integer(0)],
            vec![Ratio::from_integer(0), Ratio::new(1, 3)],
            vec![Ratio::new(1, 3), Ratio::from_integer(0)],
        ];
        assert_eq!(frac, want);
    }

    #[test]
    fn unbounded_polytope() {
        let fan = Fan::new(2, vec![vec![vec![1, 0], vec![0, 1]]]).unwrap();
        let d = TWeilDivisor::prime(&fan, &[1, 0], Ratio::from_integer(1)).unwrap();
        assert!(matches!(sections(&fan, &d, 3, 0), Err(Error::Unbounded(_))));
    }
}
