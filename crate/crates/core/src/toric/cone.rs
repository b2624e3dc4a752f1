use std::fmt;

use crate::error::{Error, Result};

use super::linalg::{combinations, cross, dot, null_space, primitive, rank, IVec};

/// Subsets examined when building a dual cone.
const DUAL_BUDGET: usize = 200_000;

/// Polyhedral cone `R>=0 x_1 + ... + R>=0 x_n` in `Z^k (x) R`, stored by
/// primitive, sorted generators without redundancy.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    rank: usize,
    gens: Vec<IVec>,
}

impl Cone {
    /// A cone containing no line through the origin.
    pub fn new(rank: usize, gens: Vec<IVec>) -> Result<Self> {
        let c = Cone::generated(rank, gens)?;
        if !c.is_strongly_convex()? {
            return Err(Error::InvalidFan(format!("cone {c} contains a line")));
        }
        Ok(c)
    }

    /// Any finitely generated cone, normalized.
    pub fn generated(rank: usize, gens: Vec<IVec>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidArgument("lattice rank must be positive".into()));
        }
        let mut prim = Vec::with_capacity(gens.len());
        for g in &gens {
            if g.len() != rank {
                return Err(Error::InvalidArgument(format!("generator {g:?} is not in Z^{rank}")));
            }
            if let Some(v) = primitive(g) {
                prim.push(v);
            }
        }
        prim.sort();
        prim.dedup();
        let mut cone = Cone { rank, gens: prim };
        // drop generators lying in the cone spanned by the others
        let mut i = 0;
        while i < cone.gens.len() {
            let mut others = cone.gens.clone();
            let v = others.remove(i);
            let rest = Cone { rank, gens: others };
            if rest.contains(&v)? {
                cone = rest;
            } else {
                i += 1;
            }
        }
        Ok(cone)
    }

    pub fn zero(rank: usize) -> Self {
        Cone { rank, gens: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[IVec] {
        &self.gens
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        rank(&self.gens, self.rank)
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim() == self.gens.len()
    }

    /// `{u : <u, v> >= 0 for all v in the cone}`, generated by a basis of
    /// the orthogonal complement of the span (with both signs) and the
    /// normals orthogonal to `k-1` independent vectors.
    pub fn dual(&self) -> Result<Cone> {
        let k = self.rank;
        let perp = null_space(&self.gens, k);
        let mut pool: Vec<IVec> = self.gens.clone();
        pool.extend(perp.iter().cloned());
        let subsets = combinations(pool.len(), k - 1);
        if subsets.len() > DUAL_BUDGET {
            return Err(Error::Unsupported(format!(
                "dual of a cone with {} generators in rank {k}",
                self.gens.len()
            )));
        }
        let mut out: Vec<IVec> = Vec::new();
        for b in &perp {
            out.push(b.clone());
            out.push(b.iter().map(|x| -x).collect());
        }
        for s in subsets {
            let vs: Vec<&IVec> = s.iter().map(|&i| &pool[i]).collect();
            let Some(u) = primitive(&cross(&vs, k)) else { continue };
            for cand in [u.clone(), u.iter().map(|x| -x).collect()] {
                if perp.iter().all(|b| dot(b, &cand) == 0) && self.gens.iter().all(|g| dot(g, &cand) >= 0) {
                    out.push(cand);
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(Cone { rank: k, gens: out })
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        if self.gens.is_empty() {
            return Ok(v.iter().all(|&x| x == 0));
        }
        Ok(self.dual()?.gens.iter().all(|u| dot(u, v) >= 0))
    }

    pub fn contains_cone(&self, other: &Cone) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same set of points.
    pub fn same_as(&self, other: &Cone) -> Result<bool> {
        Ok(self.rank == other.rank && self.contains_cone(other)? && other.contains_cone(self)?)
    }

    pub fn is_strongly_convex(&self) -> Result<bool> {
        let d = self.dual()?;
        Ok(rank(&d.gens, self.rank) == self.rank)
    }

    /// All faces, including the cone itself and the zero cone.
    pub fn faces(&self) -> Result<Vec<Cone>> {
        let mut out: Vec<Cone> = Vec::new();
        if self.is_simplicial() {
            let n = self.gens.len();
            for r in 0..=n {
                for s in combinations(n, r) {
                    out.push(Cone { rank: self.rank, gens: s.iter().map(|&i| self.gens[i].clone()).collect() });
                }
            }
        } else {
            let d = self.dual()?;
            let n = d.gens.len();
            if n > 20 {
                return Err(Error::Unsupported(format!("face lattice of a cone with {n} dual generators")));
            }
            for mask in 0u32..(1 << n) {
                let gens: Vec<IVec> = self
                    .gens
                    .iter()
                    .filter(|g| (0..n).filter(|i| mask >> i & 1 == 1).all(|i| dot(&d.gens[i], g) == 0))
                    .cloned()
                    .collect();
                out.push(Cone { rank: self.rank, gens });
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn is_face_of(&self, other: &Cone) -> Result<bool> {
        Ok(other.faces()?.contains(self))
    }

    /// `self ∩ other`, as the dual of the sum of the duals.
    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        let mut gens = self.dual()?.gens;
        gens.extend(other.dual()?.gens);
        let sum = Cone::generated(self.rank, gens)?;
        let meet = sum.dual()?;
        Cone::generated(self.rank, meet.gens)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| format!("{g:?}")).collect();
        write!(f, "cone({})", parts.join(", "))
    }
}

/// Dual cone, as a free function.
pub fn dual_cone(sigma: &Cone) -> Result<Cone> {
    sigma.dual()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duals_in_the_plane() {
        let orth = Cone::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(orth.dual().unwrap().gens(), &[vec![0, 1], vec![1, 0]]);
        let ray = Cone::new(2, vec![vec![1, 0]]).unwrap();
        assert_eq!(ray.dual().unwrap().gens(), &[vec![0, -1], vec![0, 1], vec![1, 0]]);
        let slanted = Cone::new(2, vec![vec![1, 0], vec![1, 2]]).unwrap();
        assert_eq!(slanted.dual().unwrap().gens(), &[vec![0, 1], vec![2, -1]]);
    }

    #[test]
    fn redundant_generators_and_lines() {
        let c = Cone::generated(2, vec![vec![1, 0], vec![0, 1], vec![2, 2]]).unwrap();
        assert_eq!(c.gens().len(), 2);
        assert!(Cone::new(2, vec![vec![1, 0], vec![-1, 0]]).is_err());
    }

    #[test]
    fn faces_of_a_square_cone() {
        let c = Cone::new(3, vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]]).unwrap();
        assert!(!c.is_simplicial());
        // cone, 4 facets, 4 rays, origin
        assert_eq!(c.faces().unwrap().len(), 10);
    }
}
