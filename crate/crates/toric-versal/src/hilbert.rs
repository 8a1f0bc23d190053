//! Hilbert bases of pointed cones and the decorated generator set `E`.

use std::collections::BTreeSet;

use crate::cone::PointedCone;
use crate::cross_section::CrossSection;
use crate::error::{Error, Result};
use crate::eta::support_data;
use crate::exact::{big_mat, dot_i, hermite_normal_form, inverse, rat_vec, ri, small_mat, to_i64, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub elements: Vec<Vec<i64>>,
    pub r_index: Option<usize>,
    /// `(c, η₀*(c))` in the local splitting `M = 𝔼* × ℤ`, for every element except `R`.
    pub decorations: Vec<Option<(Vec<i64>, i64)>>,
}

/// Graded-lex key: last coordinate first, then the others.
fn canonical_key(v: &[i64]) -> (i64, Vec<i64>) {
    (*v.last().unwrap_or(&0), v[..v.len().saturating_sub(1)].to_vec())
}

/// Simplicial subdivision of a pointed cone without new rays.
/// Each simplex is a list of ray indices.
pub fn triangulate(c: &PointedCone) -> Vec<Vec<usize>> {
    let all = c.all_faces();
    let dims: Vec<usize> = all.iter().map(|f| c.face_dim(f)).collect();
    fn rec(c: &PointedCone, all: &[Vec<usize>], dims: &[usize], face: &[usize], d: usize) -> Vec<Vec<usize>> {
        if face.len() == d {
            return vec![face.to_vec()];
        }
        let apex = face[0];
        let mut out = Vec::new();
        for (f, &fd) in all.iter().zip(dims) {
            if fd + 1 == d && !f.contains(&apex) && f.iter().all(|i| face.contains(i)) {
                for mut s in rec(c, all, dims, f, d - 1) {
                    s.insert(0, apex);
                    out.push(s);
                }
            }
        }
        out
    }
    let full: Vec<usize> = (0..c.rays.len()).collect();
    rec(c, &all, &dims, &full, c.dim())
}

/// Lattice points `Σ λ_i g_i` with `0 ≤ λ_i < 1` of a full-dimensional simplicial cone.
pub fn parallelepiped_points(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = gens.len();
    let (h, _) = hermite_normal_form(&big_mat(gens));
    let h = small_mat(&h);
    let diag: Vec<i64> = (0..n).map(|i| h[i][i].abs()).collect();
    let ginv = inverse(&gens.iter().map(|g| rat_vec(g)).collect()).expect("simplicial generators are independent");
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    loop {
        // λ = x·G⁻¹, keep fractional parts
        let lam: Vec<Rat> = (0..n).map(|j| (0..n).map(|i| ri(x[i]) * &ginv[i][j]).fold(Rat::from_integer(0.into()), |a, b| a + b)).collect();
        let frac: Vec<Rat> = lam.iter().map(|l| l - l.floor()).collect();
        let p: Vec<i64> = (0..n)
            .map(|k| {
                let s = (0..n).map(|i| &frac[i] * ri(gens[i][k])).fold(Rat::from_integer(0.into()), |a, b| a + b);
                to_i64(&s.to_integer())
            })
            .collect();
        out.push(p);
        let mut k = 0;
        loop {
            if k == n {
                out.sort();
                out.dedup();
                return out;
            }
            x[k] += 1;
            if x[k] < diag[k] {
                break;
            }
            x[k] = 0;
            k += 1;
        }
    }
}

/// Minimal generating set of `c ∩ ℤ^rank`, sorted by (last coordinate, rest).
pub fn hilbert_basis_of(c: &PointedCone) -> Result<Vec<Vec<i64>>> {
    if !c.is_full_dimensional() {
        return Err(Error::Input("Hilbert basis needs a full-dimensional cone".into()));
    }
    let mut cand: BTreeSet<Vec<i64>> = c.rays.iter().cloned().collect();
    for simplex in triangulate(c) {
        let gens: Vec<Vec<i64>> = simplex.iter().map(|&i| c.rays[i].clone()).collect();
        for p in parallelepiped_points(&gens) {
            if p.iter().any(|&x| x != 0) {
                cand.insert(p);
            }
        }
    }
    let cand: Vec<Vec<i64>> = cand.into_iter().collect();
    let mut basis: Vec<Vec<i64>> = cand
        .iter()
        .filter(|x| {
            !cand.iter().any(|y| {
                if y == *x {
                    return false;
                }
                let d: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
                c.contains(&d)
            })
        })
        .cloned()
        .collect();
    basis.sort_by_key(|v| canonical_key(v));
    Ok(basis)
}

/// Hilbert basis of `σ∨ ∩ M`, with `R` adjoined if it is not already irreducible.
pub fn hilbert_basis(sigma: &PointedCone, r: &[i64]) -> Result<GeneratorSet> {
    if !sigma.is_full_dimensional() {
        return Err(Error::Input("σ is not full-dimensional, so its dual is not pointed".into()));
    }
    let dual = crate::cone::dual_cone(sigma)?;
    let mut elements = hilbert_basis_of(&dual)?;
    if !elements.iter().any(|e| e == r) {
        elements.push(r.to_vec());
        elements.sort_by_key(|v| canonical_key(v));
    }
    let r_index = elements.iter().position(|e| e == r);
    let n = elements.len();
    Ok(GeneratorSet { elements, r_index, decorations: vec![None; n] })
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Indices of the non-`R` elements, in order: these are `z_1..z_w`.
    pub fn z_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| Some(i) != self.r_index).collect()
    }

    /// `(c^ν, η₀*(c^ν))` for `z_ν`, in the order of [`GeneratorSet::z_indices`].
    pub fn z_data(&self) -> Vec<(Vec<i64>, i64)> {
        self.z_indices().into_iter().map(|i| self.decorations[i].clone().expect("decorated generator set")).collect()
    }

    /// Puts the elements in a prescribed order (a permutation of the current ones).
    pub fn reorder(&self, order: &[Vec<i64>]) -> Result<GeneratorSet> {
        let a: BTreeSet<&Vec<i64>> = self.elements.iter().collect();
        let b: BTreeSet<&Vec<i64>> = order.iter().collect();
        if a != b || order.len() != self.len() {
            return Err(Error::Input("requested order is not a permutation of the generators".into()));
        }
        let pos: Vec<usize> = order.iter().map(|o| self.elements.iter().position(|e| e == o).unwrap()).collect();
        Ok(GeneratorSet {
            elements: order.to_vec(),
            r_index: self.r_index.map(|r| pos.iter().position(|&p| p == r).unwrap()),
            decorations: pos.iter().map(|&p| self.decorations[p].clone()).collect(),
        })
    }

    /// The matrix with the elements as columns.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let rank = self.elements.first().map_or(0, |e| e.len());
        (0..rank).map(|k| self.elements.iter().map(|e| e[k]).collect()).collect()
    }
}

/// Splits every element as `[c, z]` in the coordinates of `Q` and checks `z = η₀*(c)`.
pub fn e_decorate(g: &GeneratorSet, q: &CrossSection) -> Result<GeneratorSet> {
    let ri_ = g.r_index.ok_or_else(|| Error::Input("R is not among the generators".into()))?;
    let mut out = g.clone();
    let n = q.rank;
    for (i, e) in g.elements.iter().enumerate() {
        if i == ri_ {
            out.decorations[i] = None;
            continue;
        }
        let loc = q.local_covector(e);
        let c = loc[..n - 1].to_vec();
        let z = loc[n - 1];
        let d = support_data(q, &c)?;
        if d.eta0star != z {
            return Err(Error::Hypothesis(format!(
                "generator {:?} has height {} but η₀*(c) = {}; R is misaligned",
                e, z, d.eta0star
            )));
        }
        out.decorations[i] = Some((c, z));
    }
    Ok(out)
}

/// True iff `x` is an ℕ-combination of `gens` (bounded by the ω-weight of `x`).
pub fn in_semigroup(gens: &[Vec<i64>], x: &[i64], omega: &[i64]) -> bool {
    let rank = x.len();
    let mut a: Vec<Vec<i64>> = (0..rank).map(|k| gens.iter().map(|g| g[k]).collect()).collect();
    let mut b = x.to_vec();
    let weights: Vec<i64> = gens.iter().map(|g| dot_i(g, omega)).collect();
    if weights.iter().any(|&w| w <= 0) {
        return false;
    }
    let wx = dot_i(x, omega);
    if wx < 0 {
        return false;
    }
    a.push(weights);
    b.push(wx);
    crate::exact::solve_nonneg_integer(&a, &b, wx as u64).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant() {
        let c = PointedCone::from_rays(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let mut hb = hilbert_basis_of(&c).unwrap();
        hb.sort();
        assert_eq!(hb, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn plane_cone() {
        // ⟨(1,0),(1,3)⟩: basis (1,0),(1,1),(1,2),(1,3)
        let c = PointedCone::from_rays(2, &[vec![1, 0], vec![1, 3]]).unwrap();
        let mut hb = hilbert_basis_of(&c).unwrap();
        hb.sort();
        assert_eq!(hb, vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]]);
    }

    #[test]
    fn square_cone_triangulates() {
        let c = PointedCone::from_rays(3, &[vec![0, 0, 1], vec![1, 0, 1], vec![1, 1, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(triangulate(&c).len(), 2);
    }
}
