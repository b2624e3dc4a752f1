use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::cone::Cone;
use super::linalg::{combinations, minors_gcd, IVec};

/// A fan: finitely many strongly convex cones, closed under faces, any two
/// meeting in a common face. Stores the maximal cones in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    maximal: Vec<Cone>,
    all: Vec<Cone>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FanJson {
    pub rank: usize,
    pub cones: Vec<Vec<IVec>>,
}

impl Fan {
    /// Checks the fan axioms, reporting a witness on failure.
    pub fn new(rank: usize, cones: Vec<Vec<IVec>>) -> Result<Fan> {
        let mut parsed = Vec::with_capacity(cones.len());
        for gens in cones {
            let c = Cone::generated(rank, gens)?;
            if !c.is_strongly_convex()? {
                return Err(Error::InvalidFan(format!("{c} contains a line")));
            }
            if !parsed.contains(&c) {
                parsed.push(c);
            }
        }
        for (i, a) in parsed.iter().enumerate() {
            for b in &parsed[i + 1..] {
                let m = a.intersect(b)?;
                for (x, y) in [(a, b), (b, a)] {
                    if !m.is_face_of(x)? {
                        return Err(Error::InvalidFan(format!("{x} and {y} meet in {m}, which is not a face of {x}")));
                    }
                }
            }
        }
        let mut maximal = Vec::new();
        for c in &parsed {
            let mut covered = false;
            for d in &parsed {
                if d != c && c.is_face_of(d)? {
                    covered = true;
                    break;
                }
            }
            if !covered {
                maximal.push(c.clone());
            }
        }
        let mut all: Vec<Cone> = Vec::new();
        for c in &maximal {
            all.extend(c.faces()?);
        }
        all.sort();
        all.dedup();
        Ok(Fan { rank, maximal, all })
    }

    /// The fan of `P^n`: rays `e_1, ..., e_n, -(e_1 + ... + e_n)`.
    pub fn projective_space(n: usize) -> Result<Fan> {
        let rays = projective_rays(n);
        let cones = combinations(n + 1, n)
            .into_iter()
            .map(|s| s.iter().map(|&i| rays[i].clone()).collect())
            .collect();
        Fan::new(n, cones)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal
    }

    pub fn cones(&self) -> &[Cone] {
        &self.all
    }

    /// Primitive ray generators, sorted.
    pub fn rays(&self) -> Vec<IVec> {
        let mut r: Vec<IVec> = self.all.iter().filter(|c| c.gens().len() == 1).map(|c| c.gens()[0].clone()).collect();
        r.sort();
        r
    }

    /// Every cone is generated by part of a lattice basis.
    pub fn is_smooth(&self) -> bool {
        self.maximal.iter().all(|c| c.is_simplicial() && minors_gcd(c.gens(), self.rank) == 1)
    }

    /// Support is all of `N (x) R`: every maximal cone is full-dimensional
    /// and every facet is shared by exactly two of them.
    pub fn is_complete(&self) -> Result<bool> {
        let k = self.rank;
        if self.maximal.is_empty() || self.maximal.iter().any(|c| c.dim() != k) {
            return Ok(false);
        }
        let mut count: BTreeMap<Cone, usize> = BTreeMap::new();
        for c in &self.maximal {
            for f in c.faces()? {
                if f.dim() == k - 1 {
                    *count.entry(f).or_default() += 1;
                }
            }
        }
        Ok(count.values().all(|&n| n == 2))
    }

    /// The standard fan of `P^n` (up to the order of cones).
    pub fn is_projective_space(&self) -> bool {
        let mut want = projective_rays(self.rank);
        want.sort();
        self.rays() == want && self.maximal.len() == self.rank + 1 && self.maximal.iter().all(|c| c.gens().len() == self.rank)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let j = FanJson { rank: self.rank, cones: self.maximal.iter().map(|c| c.gens().to_vec()).collect() };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Fan> {
        let j: FanJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Fan::new(j.rank, j.cones)
    }
}

fn projective_rays(n: usize) -> Vec<IVec> {
    let mut rays: Vec<IVec> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    rays.push(vec![-1; n]);
    rays
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_plane() {
        let f = Fan::projective_space(2).unwrap();
        assert!(f.is_smooth());
        assert!(f.is_complete().unwrap());
        assert!(f.is_projective_space());
        assert_eq!(f.rays().len(), 3);
        assert_eq!(f.cones().len(), 7);
    }

    #[test]
    fn singular_and_broken_fans() {
        let f = Fan::new(2, vec![vec![vec![1, 0], vec![1, 2]]]).unwrap();
        assert!(!f.is_smooth());
        assert!(!f.is_complete().unwrap());
        let overlap = Fan::new(2, vec![vec![vec![1, 0], vec![0, 1]], vec![vec![1, 0], vec![1, 1]]]);
        assert!(matches!(overlap, Err(Error::InvalidFan(_))));
    }

    #[test]
    fn products_of_lines() {
        let cones = vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![-1, 0], vec![0, 1]],
            vec![vec![-1, 0], vec![0, -1]],
            vec![vec![1, 0], vec![0, -1]],
        ];
        let f = Fan::new(2, cones).unwrap();
        assert!(f.is_smooth() && f.is_complete().unwrap());
        let p1 = Fan::new(1, vec![vec![vec![1]], vec![vec![-1]]]).unwrap();
        assert!(p1.is_complete().unwrap());
    }
}
