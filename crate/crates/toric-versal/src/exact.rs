//! Exact integer and rational linear algebra.
//!
//! Integer matrices are stored row-major as `Vec<Vec<BigInt>>` when entries
//! may grow (Hermite forms, kernels) and as `Vec<Vec<i64>>` at the API edge,
//! where all inputs are small lattice vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type IMat = Vec<Vec<BigInt>>;
pub type RMat = Vec<Vec<Rat>>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("integer does not fit in i64")
}

pub fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| ri(x)).collect()
}

pub fn big_mat(m: &[Vec<i64>]) -> IMat {
    m.iter().map(|r| r.iter().map(|&x| big(x)).collect()).collect()
}

pub fn small_mat(m: &IMat) -> Vec<Vec<i64>> {
    m.iter().map(|r| r.iter().map(to_i64).collect()).collect()
}

pub fn dot_i(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_r(a: &[Rat], b: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        s += x * y;
    }
    s
}

/// Pairing of a rational vector with an integer vector.
pub fn dot_ri(a: &[Rat], b: &[i64]) -> Rat {
    let mut s = Rat::zero();
    for (x, &y) in a.iter().zip(b) {
        if y != 0 {
            s += x * ri(y);
        }
    }
    s
}

pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides by the gcd of the entries.
pub fn primitive_part(v: &[i64]) -> Result<Vec<i64>> {
    let g = gcd_slice(v);
    if g == 0 {
        return Err(Error::Input("zero vector has no primitive part".into()));
    }
    Ok(v.iter().map(|x| x / g).collect())
}

pub fn primitive_big(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn clear_denominators(v: &[Rat]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let w: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    primitive_big(&w)
}

pub fn clear_denominators_i64(v: &[Rat]) -> Vec<i64> {
    clear_denominators(v).iter().map(to_i64).collect()
}

pub fn is_integral(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() {
                            s += x * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Row-style Hermite normal form: returns `(h, u)` with `u·m = h`, `u` unimodular.
///
/// Nonzero rows of `h` come first; pivots are positive and strictly to the right
/// of the previous pivot; entries above a pivot lie in `[0, pivot)`.
pub fn hermite_normal_form(m: &IMat) -> (IMat, IMat) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut h = m.clone();
    let mut u = identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid on column c among rows r..
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !h[i][c].is_zero() && best.map_or(true, |b| h[i][c].abs() < h[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                row_sub(&mut h, i, r, &q);
                row_sub(&mut u, i, r, &q);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -x.clone();
            }
            for x in u[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                row_sub(&mut h, i, r, &q);
                row_sub(&mut u, i, r, &q);
            }
        }
        r += 1;
    }
    (h, u)
}

fn row_sub(m: &mut IMat, i: usize, r: usize, q: &BigInt) {
    let src = m[r].clone();
    for (x, y) in m[i].iter_mut().zip(src.iter()) {
        *x -= q * y;
    }
}

/// A sublattice given by linearly independent integer rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub rows: IMat,
    pub ambient: usize,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows_i64(&self) -> Vec<Vec<i64>> {
        small_mat(&self.rows)
    }

    /// Lattice equality via Hermite normal forms.
    pub fn same_lattice(&self, other: &LatticeBasis) -> bool {
        self.ambient == other.ambient && hnf_rows(&self.rows) == hnf_rows(&other.rows)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut m = self.rows.clone();
        m.push(v.to_vec());
        hnf_rows(&m) == hnf_rows(&self.rows)
    }
}

/// Nonzero rows of the Hermite normal form.
pub fn hnf_rows(m: &IMat) -> IMat {
    if m.is_empty() {
        return Vec::new();
    }
    let (h, _) = hermite_normal_form(m);
    h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Saturated integer kernel `{x ∈ ℤ^cols : m·x = 0}` in HNF-reduced form.
pub fn kernel_lattice(m: &RMat, cols: usize) -> LatticeBasis {
    let int_rows: IMat = m.iter().map(|r| clear_denominators(r)).collect();
    kernel_lattice_int(&int_rows, cols)
}

pub fn kernel_lattice_int(m: &IMat, cols: usize) -> LatticeBasis {
    if m.is_empty() || m.iter().all(|r| r.iter().all(|x| x.is_zero())) {
        return LatticeBasis { rows: identity(cols), ambient: cols };
    }
    let mt = transpose(m);
    let (h, u) = hermite_normal_form(&mt);
    let ker: IMat = h
        .iter()
        .zip(u.iter())
        .filter(|(hr, _)| hr.iter().all(|x| x.is_zero()))
        .map(|(_, ur)| ur.clone())
        .collect();
    LatticeBasis { rows: hnf_rows(&ker), ambient: cols }
}

pub fn kernel_lattice_i64(m: &[Vec<i64>], cols: usize) -> LatticeBasis {
    kernel_lattice_int(&big_mat(m), cols)
}

/// Reduced row echelon form over ℚ; returns the pivot columns.
pub fn rref(m: &mut RMat) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let src = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(src.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RMat) -> usize {
    if m.is_empty() {
        return 0;
    }
    let mut w = m.clone();
    rref(&mut w).len()
}

pub fn rank_i64(m: &[Vec<i64>]) -> usize {
    rank(&m.iter().map(|r| rat_vec(r)).collect())
}

/// Basis of the rational nullspace `{x : m·x = 0}`.
pub fn nullspace(m: &RMat, cols: usize) -> RMat {
    let mut w = m.clone();
    let pivots = rref(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -w[i][f].clone();
            }
            v
        })
        .collect()
}

/// Solves `m·x = b` over ℚ, if solvable.
pub fn solve_rational(m: &RMat, b: &[Rat]) -> Option<Vec<Rat>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: RMat = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][cols].clone();
    }
    Some(x)
}

/// Inverse of a square rational matrix.
pub fn inverse(m: &RMat) -> Option<RMat> {
    let n = m.len();
    let mut aug: RMat = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn inverse_unimodular(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let inv = inverse(&m.iter().map(|r| rat_vec(r)).collect())?;
    inv.iter()
        .map(|r| r.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect())
        .collect()
}

/// Lexicographically smallest `x ∈ ℕ^cols` with `a·x = b` and `Σx ≤ bound`.
pub fn solve_nonneg_integer(a: &[Vec<i64>], b: &[i64], bound: u64) -> Option<Vec<u64>> {
    let mut out = None;
    NonnegSearch::new(a, b, bound).run(&mut |x| {
        out = Some(x.to_vec());
        false
    });
    out
}

/// All `x ∈ ℕ^cols` with `a·x = b` and `Σx ≤ bound`, in lexicographic order.
pub fn enumerate_nonneg_integer(a: &[Vec<i64>], b: &[i64], bound: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    NonnegSearch::new(a, b, bound).run(&mut |x| {
        out.push(x.to_vec());
        true
    });
    out
}

struct NonnegSearch<'a> {
    a: &'a [Vec<i64>],
    b: &'a [i64],
    bound: u64,
    cols: usize,
    // suffix extremes of each row over columns j..cols
    suf_min: Vec<Vec<i64>>,
    suf_max: Vec<Vec<i64>>,
}

impl<'a> NonnegSearch<'a> {
    fn new(a: &'a [Vec<i64>], b: &'a [i64], bound: u64) -> Self {
        let cols = a.first().map_or(0, |r| r.len());
        let suf = |f: fn(i64, i64) -> i64| -> Vec<Vec<i64>> {
            a.iter()
                .map(|row| {
                    let mut s = vec![0i64; cols + 1];
                    for j in (0..cols).rev() {
                        s[j] = f(s[j + 1], row[j]);
                    }
                    s
                })
                .collect()
        };
        let suf_min = suf(|acc, x| acc.min(x));
        let suf_max = suf(|acc, x| acc.max(x));
        NonnegSearch { a, b, bound, cols, suf_min, suf_max }
    }

    fn run(&self, visit: &mut dyn FnMut(&[u64]) -> bool) {
        let mut x = vec![0u64; self.cols];
        let resid: Vec<i64> = self.b.to_vec();
        if self.cols == 0 {
            if resid.iter().all(|&r| r == 0) {
                visit(&x);
            }
            return;
        }
        self.rec(0, &mut x, resid, self.bound, visit);
    }

    fn feasible(&self, j: usize, resid: &[i64], rem: u64) -> bool {
        let rem = rem as i64;
        for (k, &r) in resid.iter().enumerate() {
            let lo = rem * self.suf_min[k][j].min(0);
            let hi = rem * self.suf_max[k][j].max(0);
            if r < lo || r > hi {
                return false;
            }
        }
        true
    }

    fn rec(&self, j: usize, x: &mut Vec<u64>, resid: Vec<i64>, rem: u64, visit: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        if j == self.cols {
            if resid.iter().all(|&r| r == 0) {
                return visit(x);
            }
            return true;
        }
        if !self.feasible(j, &resid, rem) {
            return true;
        }
        for v in 0..=rem {
            let r: Vec<i64> = resid.iter().enumerate().map(|(k, &r)| r - self.a[k][j] * v as i64).collect();
            x[j] = v;
            if !self.rec(j + 1, x, r, rem - v, visit) {
                return false;
            }
        }
        x[j] = 0;
        true
    }
}

pub fn ceil_rat(x: &Rat) -> i64 {
    to_i64(&x.ceil().to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bm(m: &[&[i64]]) -> IMat {
        m.iter().map(|r| r.iter().map(|&x| big(x)).collect()).collect()
    }

    #[test]
    fn hnf_identity_and_normal() {
        let id = identity(3);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
        let m = bm(&[&[2, 4], &[0, 6]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, m);
        assert_eq!(u, identity(2));
    }

    #[test]
    fn hnf_zero_matrix() {
        let m = bm(&[&[0, 0], &[0, 0]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, m);
        assert_eq!(u, identity(2));
    }

    #[test]
    fn kernel_of_zero_row() {
        let k = kernel_lattice_i64(&[vec![0, 0, 0]], 3);
        assert_eq!(k.rows, identity(3));
    }

    #[test]
    fn kernel_is_saturated() {
        // kernel of (2, 4) is spanned by (-2, 1), not (-4, 2)
        let k = kernel_lattice_i64(&[vec![2, 4]], 2);
        assert_eq!(k.rank(), 1);
        let r = k.rows_i64();
        assert_eq!(gcd_slice(&r[0]), 1);
        assert_eq!(2 * r[0][0] + 4 * r[0][1], 0);
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive_part(&[2, 4, 6]).unwrap(), vec![1, 2, 3]);
        assert_eq!(primitive_part(&[0, 0, 1]).unwrap(), vec![0, 0, 1]);
        assert!(primitive_part(&[0, 0]).is_err());
    }

    #[test]
    fn nonneg_examples() {
        let id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(solve_nonneg_integer(&id, &[3, 5], 10), Some(vec![3, 5]));
        assert_eq!(solve_nonneg_integer(&id, &[0, 0], 10), Some(vec![0, 0]));
        assert_eq!(solve_nonneg_integer(&id, &[3, 5], 7), None);
        // lexicographically smallest: x0 as small as possible
        let a = vec![vec![1, 1, 2]];
        assert_eq!(solve_nonneg_integer(&a, &[2], 5), Some(vec![0, 0, 1]));
        assert_eq!(enumerate_nonneg_integer(&a, &[2], 5).len(), 4);
    }

    #[test]
    fn inverse_of_unimodular() {
        let m = vec![vec![1, 2], vec![1, 3]];
        assert_eq!(inverse_unimodular(&m), Some(vec![vec![3, -2], vec![-1, 1]]));
    }
}
