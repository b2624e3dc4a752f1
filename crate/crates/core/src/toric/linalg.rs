//! Small exact integer linear algebra for cones and polytopes.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

pub type IVec = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides out the content; `None` for the zero vector.
pub fn primitive(v: &[i64]) -> Option<IVec> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    (g != 0).then(|| v.iter().map(|x| x / g).collect())
}

/// Bareiss determinant.
pub fn det(rows: &[Vec<i128>]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Generalized cross product of `k-1` vectors in `Z^k`: orthogonal to all
/// of them, zero iff they are dependent.
pub fn cross(vs: &[&IVec], k: usize) -> IVec {
    debug_assert_eq!(vs.len() + 1, k);
    (0..k)
        .map(|j| {
            let minor: Vec<Vec<i128>> = vs
                .iter()
                .map(|v| v.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x as i128).collect())
                .collect();
            let d = det(&minor);
            (if j % 2 == 0 { d } else { -d }) as i64
        })
        .collect()
}

fn to_rows(vs: &[IVec]) -> Vec<Vec<Ratio<i128>>> {
    vs.iter().map(|v| v.iter().map(|&x| Ratio::from_integer(x as i128)).collect()).collect()
}

/// Reduced row echelon form; returns pivot columns.
fn rref(m: &mut [Vec<Ratio<i128>>], k: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(i) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(i, r);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..m[r].len() {
                    let t = m[r][j] * f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(vs: &[IVec], k: usize) -> usize {
    rref(&mut to_rows(vs), k).len()
}

/// Integer basis of `{u : <u, v> = 0 for all v in vs}`.
pub fn null_space(vs: &[IVec], k: usize) -> Vec<IVec> {
    let mut m = to_rows(vs);
    let pivots = rref(&mut m, k);
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut u = vec![Ratio::<i128>::zero(); k];
            u[f] = Ratio::one();
            for (r, &pc) in pivots.iter().enumerate() {
                u[pc] = -m[r][f];
            }
            let l = u.iter().fold(1i128, |l, x| l.lcm(x.denom()));
            let ints: IVec = u.iter().map(|x| (x * Ratio::from_integer(l)).to_integer() as i64).collect();
            primitive(&ints).expect("nonzero")
        })
        .collect()
}

/// Solves the square system `rows * x = rhs`; `None` if singular.
pub fn solve(rows: &[IVec], rhs: &[Ratio<i64>]) -> Option<Vec<Ratio<i128>>> {
    let k = rows.len();
    let mut m: Vec<Vec<Ratio<i128>>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row: Vec<Ratio<i128>> = r.iter().map(|&x| Ratio::from_integer(x as i128)).collect();
            row.push(Ratio::new(*b.numer() as i128, *b.denom() as i128));
            row
        })
        .collect();
    let pivots = rref(&mut m, k);
    (pivots.len() == k).then(|| m.iter().map(|r| r[k]).collect())
}

/// gcd of all maximal minors of the `d x k` matrix with rows `vs`.
pub fn minors_gcd(vs: &[IVec], k: usize) -> i64 {
    let d = vs.len();
    let mut g = 0i128;
    for cols in combinations(k, d) {
        let m: Vec<Vec<i128>> = vs.iter().map(|v| cols.iter().map(|&c| v[c] as i128).collect()).collect();
        g = g.gcd(&det(&m));
    }
    g as i64
}

/// All `r`-element subsets of `0..n`, in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    go(0, n, r, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_products() {
        let a = vec![1, 0, 0];
        let b = vec![0, 1, 0];
        assert_eq!(cross(&[&a, &b], 3), vec![0, 0, 1]);
        assert_eq!(cross(&[&vec![1, 2]], 2), vec![2, -1]);
        assert_eq!(cross(&[], 1), vec![1]);
    }

    #[test]
    fn null_spaces_and_ranks() {
        assert_eq!(null_space(&[vec![1, 1, 0]], 3).len(), 2);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]], 2), 1);
        assert_eq!(minors_gcd(&[vec![1, 0], vec![1, 2]], 2), 2);
        assert_eq!(det(&[vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(combinations(4, 2).len(), 6);
    }
}
