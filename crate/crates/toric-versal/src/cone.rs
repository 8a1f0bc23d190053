//! Rational polyhedral cones with both descriptions.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact::{dot_i, gcd_slice, primitive_part, rank_i64, Rat};

/// A pointed cone in ℤ^rank, kept with rays, facet normals and the
/// equations of its linear span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedCone {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub facets: Vec<Vec<i64>>,
    pub equations: Vec<Vec<i64>>,
    pub smooth2faces: bool,
}

/// Output of the double description method for `{x : <a_i, x> >= 0}`.
#[derive(Clone, Debug)]
pub struct DoubleDescription {
    pub lineality: Vec<Vec<i64>>,
    pub rays: Vec<Vec<i64>>,
}

fn dot128(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn prim128(v: Vec<i128>) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g == 0 {
        v
    } else {
        v.into_iter().map(|x| x / g).collect()
    }
}

fn rank128(rows: &[&Vec<i128>]) -> usize {
    let m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    if m.is_empty() {
        0
    } else {
        rank_i64(&m)
    }
}

/// Double description (Fourier–Motzkin style) for the cone
/// `{x ∈ ℝ^dim : <a, x> >= 0 for every constraint a}`.
///
/// Returns a lineality basis and the extreme rays modulo lineality, all primitive.
pub fn double_description(constraints: &[Vec<i64>], dim: usize) -> DoubleDescription {
    let mut lin: Vec<Vec<i128>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { 1 } else { 0 }).collect())
        .collect();
    let mut rays: Vec<Vec<i128>> = Vec::new();
    let mut processed: Vec<Vec<i128>> = Vec::new();
    for a in constraints {
        let a: Vec<i128> = a.iter().map(|&x| x as i128).collect();
        if a.iter().all(|&x| x == 0) {
            continue;
        }
        if let Some(idx) = lin.iter().position(|l| dot128(&a, l) != 0) {
            let mut l = lin.remove(idx);
            if dot128(&a, &l) < 0 {
                l = l.into_iter().map(|x| -x).collect();
            }
            let al = dot128(&a, &l);
            for lp in lin.iter_mut() {
                let v = dot128(&a, lp);
                *lp = prim128(lp.iter().zip(&l).map(|(x, y)| al * x - v * y).collect());
            }
            for r in rays.iter_mut() {
                let v = dot128(&a, r);
                *r = prim128(r.iter().zip(&l).map(|(x, y)| al * x - v * y).collect());
            }
            rays.push(prim128(l));
            processed.push(a);
            continue;
        }
        let vals: Vec<i128> = rays.iter().map(|r| dot128(&a, r)).collect();
        let mut next: Vec<Vec<i128>> = Vec::new();
        for (r, &v) in rays.iter().zip(&vals) {
            if v >= 0 {
                next.push(r.clone());
            }
        }
        let target = dim as isize - lin.len() as isize - 2;
        for (i, p) in rays.iter().enumerate() {
            if vals[i] <= 0 {
                continue;
            }
            for (j, n) in rays.iter().enumerate() {
                if vals[j] >= 0 {
                    continue;
                }
                let tight: Vec<&Vec<i128>> =
                    processed.iter().filter(|c| dot128(c, p) == 0 && dot128(c, n) == 0).collect();
                if (rank128(&tight) as isize) != target {
                    continue;
                }
                // combinatorial check: no third ray tight on the same set
                let blocked = rays.iter().enumerate().any(|(k, r)| {
                    k != i && k != j && tight.iter().all(|c| dot128(c, r) == 0)
                });
                if blocked {
                    continue;
                }
                let c: Vec<i128> = p.iter().zip(n).map(|(x, y)| vals[i] * y - vals[j] * x).collect();
                next.push(prim128(c));
            }
        }
        next.sort();
        next.dedup();
        rays = next;
        processed.push(a);
    }
    let to64 = |v: &Vec<i128>| -> Vec<i64> { v.iter().map(|&x| i64::try_from(x).expect("ray overflow")).collect() };
    let mut rays: Vec<Vec<i64>> = rays.iter().map(to64).collect();
    rays.sort();
    DoubleDescription { lineality: lin.iter().map(to64).collect(), rays }
}

impl PointedCone {
    /// Builds a cone from generators, dropping zero, repeated and redundant ones.
    /// The surviving rays keep their input order.
    pub fn from_rays(rank: usize, rays: &[Vec<i64>]) -> Result<PointedCone> {
        let mut prim: Vec<Vec<i64>> = Vec::new();
        for r in rays {
            if r.len() != rank {
                return Err(Error::Input(format!("ray {:?} has length {}, expected {}", r, r.len(), rank)));
            }
            if r.iter().all(|&x| x == 0) {
                continue;
            }
            let p = primitive_part(r)?;
            if !prim.contains(&p) {
                prim.push(p);
            }
        }
        if prim.is_empty() {
            return Err(Error::Input("cone has no nonzero generator".into()));
        }
        let dual = double_description(&prim, rank);
        let facets = dual.rays;
        let equations = dual.lineality;
        let mut cons: Vec<Vec<i64>> = facets.clone();
        for e in &equations {
            cons.push(e.clone());
            cons.push(e.iter().map(|x| -x).collect());
        }
        let back = double_description(&cons, rank);
        if !back.lineality.is_empty() {
            return Err(Error::Input("cone is not pointed".into()));
        }
        let extreme: BTreeSet<Vec<i64>> = back.rays.into_iter().collect();
        let kept: Vec<Vec<i64>> = prim.into_iter().filter(|r| extreme.contains(r)).collect();
        let mut cone = PointedCone { rank, rays: kept, facets, equations, smooth2faces: false };
        cone.smooth2faces = check_codim2_smooth(&cone);
        Ok(cone)
    }

    pub fn dim(&self) -> usize {
        self.rank - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| dot_i(f, x) >= 0) && self.equations.iter().all(|e| dot_i(e, x) == 0)
    }

    pub fn contains_rat(&self, x: &[Rat]) -> bool {
        use crate::exact::dot_ri;
        use num_traits::{Signed, Zero};
        self.facets.iter().all(|f| !dot_ri(x, f).is_negative()) && self.equations.iter().all(|e| dot_ri(x, e).is_zero())
    }

    /// Sum of the rays: an interior point of the cone.
    pub fn interior_vector(&self) -> Vec<i64> {
        let mut s = vec![0; self.rank];
        for r in &self.rays {
            for (x, y) in s.iter_mut().zip(r) {
                *x += y;
            }
        }
        s
    }

    /// Indices of rays on which the covector vanishes.
    pub fn tight(&self, covector: &[i64]) -> Vec<usize> {
        (0..self.rays.len()).filter(|&i| dot_i(&self.rays[i], covector) == 0).collect()
    }

    /// All faces, as sorted ray index sets (the zero face is the empty set).
    pub fn all_faces(&self) -> Vec<Vec<usize>> {
        let full: Vec<usize> = (0..self.rays.len()).collect();
        let facet_sets: Vec<BTreeSet<usize>> = self.facets.iter().map(|f| self.tight(f).into_iter().collect()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(full.clone());
        let mut queue = vec![full];
        while let Some(face) = queue.pop() {
            for fs in &facet_sets {
                let sub: Vec<usize> = face.iter().copied().filter(|i| fs.contains(i)).collect();
                if seen.insert(sub.clone()) {
                    queue.push(sub);
                }
            }
        }
        seen.insert(Vec::new());
        seen.into_iter().collect()
    }

    pub fn face_dim(&self, face: &[usize]) -> usize {
        if face.is_empty() {
            return 0;
        }
        let m: Vec<Vec<i64>> = face.iter().map(|&i| self.rays[i].clone()).collect();
        rank_i64(&m)
    }
}

/// Faces of the given dimension, each as the sorted set of its ray indices.
pub fn faces(c: &PointedCone, dim: usize) -> Vec<Vec<usize>> {
    c.all_faces().into_iter().filter(|f| c.face_dim(f) == dim).collect()
}

/// The dual cone; defined here for full-dimensional cones, whose duals are pointed.
pub fn dual_cone(c: &PointedCone) -> Result<PointedCone> {
    if !c.is_full_dimensional() {
        return Err(Error::Input("the dual of a lower-dimensional cone is not pointed".into()));
    }
    PointedCone::from_rays(c.rank, &c.facets)
}

/// True iff every two-dimensional face is spanned by part of a lattice basis.
pub fn check_codim2_smooth(c: &PointedCone) -> bool {
    faces(c, 2).iter().all(|f| {
        if f.len() != 2 {
            return false;
        }
        let (a, b) = (&c.rays[f[0]], &c.rays[f[1]]);
        let mut minors = Vec::new();
        for i in 0..c.rank {
            for j in i + 1..c.rank {
                minors.push(a[i] * b[j] - a[j] * b[i]);
            }
        }
        gcd_slice(&minors) == 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orthant(n: usize) -> PointedCone {
        let rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        PointedCone::from_rays(n, &rays).unwrap()
    }

    #[test]
    fn orthant_is_self_dual() {
        let c = orthant(3);
        let d = dual_cone(&c).unwrap();
        let a: BTreeSet<_> = c.rays.iter().cloned().collect();
        let b: BTreeSet<_> = d.rays.iter().cloned().collect();
        assert_eq!(a, b);
        assert!(c.smooth2faces);
    }

    #[test]
    fn orthant_faces() {
        let c = orthant(3);
        assert_eq!(faces(&c, 2).len(), 3);
        assert_eq!(faces(&c, 3), vec![vec![0, 1, 2]]);
        assert_eq!(faces(&c, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn redundant_rays_dropped() {
        let c = PointedCone::from_rays(2, &[vec![1, 0], vec![1, 1], vec![0, 1], vec![2, 0]]).unwrap();
        assert_eq!(c.rays, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn nonsmooth_segment_cone() {
        let c = PointedCone::from_rays(3, &[vec![0, 0, 1], vec![2, 0, 1]]).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(!check_codim2_smooth(&c));
    }

    #[test]
    fn non_pointed_rejected() {
        assert!(PointedCone::from_rays(2, &[vec![1, 0], vec![-1, 0], vec![0, 1]]).is_err());
    }
}
