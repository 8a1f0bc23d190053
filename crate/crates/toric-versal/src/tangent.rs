//! The sets `E_j` and `E_j^k`, the pairing `Φ`, `dim T¹(−R)` computed two ways,
//! `dim T²(−kR)`, and the three-dimensional statements.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::Zero;

use crate::cone::{check_codim2_smooth, faces, PointedCone};
use crate::cross_section::{cross_section, CrossSection};
use crate::error::{Error, Result};
use crate::eta::eta_star;
use crate::exact::{ceil_rat, dot_i, gcd_slice, kernel_lattice_i64, nullspace, rank, rat, rat_vec, ri, solve_rational, Rat, RMat};
use crate::hilbert::GeneratorSet;
use crate::minkowski::{summand_space, SummandSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ESets {
    /// `E_j` (or `E_j^k`) for every ray of σ, as indices into the generator set.
    pub per_ray: Vec<Vec<usize>>,
    /// `E ∩ ∂σ∨`.
    pub boundary: Vec<usize>,
    pub k: Option<u32>,
}

/// `E_j = {r : <a^j,r> < <a^j,R>}`; with `k`, `E_j^k = {r ≠ R : <a^j,r> < k<a^j,R>} ∪ {R}`.
pub fn e_sets(c: &PointedCone, r: &[i64], g: &GeneratorSet, k: Option<u32>) -> Result<ESets> {
    let ri_ = g.r_index.ok_or_else(|| Error::Input("R is not among the generators".into()))?;
    let per_ray = c
        .rays
        .iter()
        .map(|a| {
            let h = dot_i(a, r);
            let mut s: Vec<usize> = (0..g.len())
                .filter(|&i| i != ri_)
                .filter(|&i| dot_i(a, &g.elements[i]) < h * k.unwrap_or(1) as i64)
                .collect();
            if k.is_some() {
                s.push(ri_);
                s.sort();
            }
            s
        })
        .collect();
    let boundary = (0..g.len()).filter(|&i| c.rays.iter().any(|a| dot_i(a, &g.elements[i]) == 0)).collect();
    Ok(ESets { per_ray, boundary, k })
}

/// Basis of `L(S) = {q : Σ q_ν r^ν = 0}`, embedded in `ℚ^{|E|}`.
pub fn relation_basis(g: &GeneratorSet, subset: &[usize]) -> RMat {
    if subset.is_empty() {
        return vec![];
    }
    let rank_ = g.elements[0].len();
    let m: RMat = (0..rank_).map(|k| subset.iter().map(|&i| ri(g.elements[i][k])).collect()).collect();
    nullspace(&m, subset.len())
        .into_iter()
        .map(|q| {
            let mut v = vec![Rat::zero(); g.len()];
            for (x, &i) in q.into_iter().zip(subset) {
                v[i] = x;
            }
            v
        })
        .collect()
}

fn require_smooth(c: &PointedCone) -> Result<()> {
    if !check_codim2_smooth(c) {
        return Err(Error::Hypothesis("σ is not smooth in codimension two".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct T1Dimension {
    pub via_v: usize,
    pub via_e: usize,
}

/// `dim V(Q) − 1` and `dim L(E_0) / Σ_j L(E_j)` with `E_0 = ∪_j E_j`.
/// `E_0` agrees with `E ∩ ∂σ∨` on many cones but not all; the quotient needs the union.
pub fn t1_dimension(c: &PointedCone, r: &[i64], g: &GeneratorSet) -> Result<T1Dimension> {
    require_smooth(c)?;
    let q = cross_section(c, r)?;
    let s = summand_space(&q);
    let via_v = s.dim().saturating_sub(1);
    let e = e_sets(c, r, g, None)?;
    let union: BTreeSet<usize> = e.per_ray.iter().flatten().copied().collect();
    let big = relation_basis(g, &union.into_iter().collect::<Vec<_>>());
    let small: RMat = e.per_ray.iter().flat_map(|ej| relation_basis(g, ej)).collect();
    Ok(T1Dimension { via_v, via_e: rank(&big) - rank(&small) })
}

/// `Φ(t, q) = Σ_{ν,i} t_i q_ν η*_i(c^ν)`; `q` is indexed by the generator set, `R` contributes 0.
pub fn ks_pairing(q: &CrossSection, s: &SummandSpace, g: &GeneratorSet, t: &[Rat], rel: &[Rat]) -> Result<Rat> {
    let mut total = Rat::zero();
    for (i, qn) in rel.iter().enumerate() {
        if qn.is_zero() || Some(i) == g.r_index {
            continue;
        }
        let (c, _) = g.decorations[i].clone().ok_or_else(|| Error::Input("generator set is not decorated".into()))?;
        let e = eta_star(q, s, &c)?;
        for (ti, ei) in t.iter().zip(&e.coords) {
            total += ti * ei * qn;
        }
    }
    Ok(total)
}

/// `dim T²(−kR)` as kernel of `⊕_j L(E_j^k) → L(E)` modulo the image of the compact-edge terms.
pub fn t2_dimension(c: &PointedCone, r: &[i64], g: &GeneratorSet, k: u32) -> Result<usize> {
    require_smooth(c)?;
    if k == 0 {
        return Err(Error::Input("k must be positive".into()));
    }
    let q = cross_section(c, r)?;
    let e = e_sets(c, r, g, Some(k))?;
    // slots: one per vertex of Q
    let nv = q.vertices.len();
    let n = g.len();
    let slot_sets: Vec<&Vec<usize>> = q.vertices.iter().map(|v| &e.per_ray[v.ray]).collect();
    let bases: Vec<RMat> = slot_sets.iter().map(|s| relation_basis(g, s)).collect();
    let total: usize = bases.iter().map(|b| b.len()).sum();
    let summed: RMat = bases.iter().flatten().cloned().collect();
    let ker = total - rank(&summed);
    let mut image: RMat = Vec::new();
    for edge in &q.edges {
        let (i, j) = (edge.from, edge.to);
        let common: Vec<usize> = slot_sets[i].iter().filter(|x| slot_sets[j].contains(x)).copied().collect();
        for rel in relation_basis(g, &common) {
            let mut v = vec![Rat::zero(); nv * n];
            for (x, val) in rel.iter().enumerate() {
                v[i * n + x] = val.clone();
                v[j * n + x] = -val.clone();
            }
            image.push(v);
        }
    }
    Ok(ker - rank(&image))
}

#[derive(Clone, Debug)]
pub struct CompanionReport {
    pub lattice_vertices: Vec<Vec<Rat>>,
    pub dim_v: usize,
    pub dim_v_companion: usize,
}

/// `σ′` = cone over the convex hull of the lattice vertices of `Q`.
pub fn gorenstein_companion(c: &PointedCone, r: &[i64]) -> Result<(PointedCone, CompanionReport)> {
    if c.rank != 3 {
        return Err(Error::Input("the Gorenstein companion is defined for rank 3".into()));
    }
    if c.rays.iter().any(|a| dot_i(a, r) <= 0) {
        return Err(Error::Hypothesis("R is not in the interior of σ∨".into()));
    }
    let q = cross_section(c, r)?;
    // vertices of a bounded Q come in cyclic order
    let lat: Vec<usize> = (0..q.vertices.len()).filter(|&v| q.vertices[v].lattice).collect();
    if lat.len() < 3 {
        return Err(Error::Hypothesis("fewer than three lattice vertices; Q′ is not a polygon".into()));
    }
    let pts: Vec<Vec<i64>> = lat
        .iter()
        .map(|&v| q.vertices[v].point.iter().map(|x| x.to_integer().try_into().unwrap()).collect())
        .collect();
    for i in 0..pts.len() {
        let a = &pts[i];
        let b = &pts[(i + 1) % pts.len()];
        let d: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
        if gcd_slice(&d) != 1 {
            return Err(Error::Hypothesis(format!("edge {:?} → {:?} of Q′ is not primitive", a, b)));
        }
    }
    let rays: Vec<Vec<i64>> = pts
        .iter()
        .map(|p| {
            let mut y = p.clone();
            y.push(1);
            q.global_point(&y)
        })
        .collect();
    let sigma2 = PointedCone::from_rays(3, &rays)?;
    let q2 = cross_section(&sigma2, r)?;
    let report = CompanionReport {
        lattice_vertices: lat.iter().map(|&v| q.vertices[v].point.clone()).collect(),
        dim_v: summand_space(&q).dim(),
        dim_v_companion: summand_space(&q2).dim(),
    };
    Ok((sigma2, report))
}

/// `dim V(Q(R)) − 1`, or `None` when `Q(R)` is not defined or rigid.
pub fn versal_dimension(c: &PointedCone, r: &[i64]) -> Option<usize> {
    let q = cross_section(c, r).ok()?;
    Some(summand_space(&q).dim().saturating_sub(1))
}

fn integral_solution(rows: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<i64>> {
    let m: RMat = rows.iter().map(|r| rat_vec(r)).collect();
    if rank(&m) < 3 {
        return None;
    }
    let x = solve_rational(&m, &rhs.iter().map(|&b| ri(b)).collect::<Vec<_>>())?;
    if x.iter().all(|v| v.is_integer()) {
        Some(x.iter().map(|v| v.to_integer().try_into().unwrap()).collect())
    } else {
        None
    }
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = choose(n - 1, k);
    for mut s in choose(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Lattice points of `[a=1] ∩ [b=0] ∩ σ∨`, if that set is bounded.
fn segment_points(c: &PointedCone, a: &[i64], b: &[i64]) -> Vec<Vec<i64>> {
    let plane = kernel_lattice_i64(&[b.to_vec()], 3).rows_i64();
    if plane.len() != 2 {
        return vec![];
    }
    let (p1, p2) = (dot_i(a, &plane[0]), dot_i(a, &plane[1]));
    let eg = p1.extended_gcd(&p2);
    if eg.gcd != 1 {
        return vec![];
    }
    let m0: Vec<i64> = (0..3).map(|i| eg.x * plane[0][i] + eg.y * plane[1][i]).collect();
    let d: Vec<i64> = (0..3).map(|i| p2 * plane[0][i] - p1 * plane[1][i]).collect();
    let (mut lo, mut hi): (Option<Rat>, Option<Rat>) = (None, None);
    for ray in &c.rays {
        let (base, slope) = (dot_i(ray, &m0), dot_i(ray, &d));
        if slope == 0 {
            if base < 0 {
                return vec![];
            }
            continue;
        }
        let bound = rat(-base, slope);
        if slope > 0 {
            lo = Some(lo.map_or(bound.clone(), |l: Rat| l.max(bound)));
        } else {
            hi = Some(hi.map_or(bound.clone(), |h: Rat| h.min(bound)));
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else { return vec![] };
    let (k0, k1) = (ceil_rat(&lo), hi.floor().to_integer().try_into().unwrap_or(i64::MIN));
    (k0..=k1).map(|k| (0..3).map(|i| m0[i] + k * d[i]).collect()).collect()
}

/// All primitive `R ∈ σ∨ ∩ M` with `dim V(Q(R))/𝟙 ≠ 0`, from the three candidate families
/// (four rays at height one; two rays at one and one at zero; the bounded segments
/// `[a₂=1] ∩ [a₄=0] ∩ σ∨`), each confirmed by recomputing `V`.
pub fn interesting_degrees(c: &PointedCone) -> Result<Vec<Vec<i64>>> {
    if c.rank != 3 || !c.is_full_dimensional() {
        return Err(Error::Hypothesis("interesting degrees need a full-dimensional rank 3 cone".into()));
    }
    require_smooth(c)?;
    let n = c.rays.len();
    let mut cand: BTreeSet<Vec<i64>> = BTreeSet::new();
    for s in choose(n, 4) {
        let rows: Vec<Vec<i64>> = s[..3].iter().map(|&i| c.rays[i].clone()).collect();
        if let Some(x) = integral_solution(&rows, &[1, 1, 1]) {
            if dot_i(&c.rays[s[3]], &x) == 1 {
                cand.insert(x);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for l in 0..n {
                if l == i || l == j {
                    continue;
                }
                let rows = vec![c.rays[i].clone(), c.rays[j].clone(), c.rays[l].clone()];
                if let Some(x) = integral_solution(&rows, &[1, 1, 0]) {
                    cand.insert(x);
                }
            }
        }
    }
    let two_faces: Vec<Vec<usize>> = faces(c, 2);
    for a2 in 0..n {
        for a4 in 0..n {
            if a2 == a4 || two_faces.iter().any(|f| f.contains(&a2) && f.contains(&a4)) {
                continue;
            }
            cand.extend(segment_points(c, &c.rays[a2], &c.rays[a4]));
        }
    }
    let mut out: Vec<Vec<i64>> = cand
        .into_iter()
        .filter(|x| gcd_slice(x) == 1 && c.rays.iter().all(|a| dot_i(a, x) >= 0))
        .filter(|x| versal_dimension(c, x).is_some_and(|d| d >= 1))
        .collect();
    out.sort();
    Ok(out)
}

/// `Φ(t, q)` is exact and rational; this checks it is zero for every `q ∈ L(E_j)`.
pub fn pairing_vanishes_on_e_j(q: &CrossSection, s: &SummandSpace, g: &GeneratorSet, e: &ESets, t: &[Rat]) -> Result<bool> {
    for ej in &e.per_ray {
        for rel in relation_basis(g, ej) {
            if !ks_pairing(q, s, g, t, &rel)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
