//! Support data `v(c)`, `η₀(c)`, `η₀*(c)` and the functionals `η(c)`, `e[v]`,
//! `η̄*(c)` on `V`, in collapsed coordinates.

use std::ops::{Add, Sub};

use num_traits::{Signed, Zero};

use crate::cone::PointedCone;
use crate::cross_section::CrossSection;
use crate::error::{Error, Result};
use crate::exact::{ceil_rat, clear_denominators_i64, dot_i, dot_ri, is_integral, rat_vec, ri, solve_nonneg_integer, to_i64, Rat};
use crate::minkowski::{summand_polytope, SummandSpace};
use crate::poly::monomials_of_degree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportDatum {
    pub c: Vec<i64>,
    pub vertex: usize,
    pub eta0: Rat,
    pub eta0star: i64,
}

/// Signed edge multiplicities of a walk through the compact 1-skeleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePath {
    pub lambda: Vec<i64>,
}

/// An element of `V*`, stored as a collapsed representative in `ℚ^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaFunctional {
    pub coords: Vec<Rat>,
}

impl EtaFunctional {
    pub fn zero(m: usize) -> EtaFunctional {
        EtaFunctional { coords: vec![Rat::zero(); m] }
    }

    pub fn from_ints(v: &[i64]) -> EtaFunctional {
        EtaFunctional { coords: rat_vec(v) }
    }

    pub fn component_sum(&self) -> Rat {
        self.coords.iter().fold(Rat::zero(), |a, b| a + b)
    }

    pub fn eval(&self, t: &[i64]) -> Rat {
        dot_ri(&self.coords, t)
    }

    pub fn scale(&self, k: i64) -> EtaFunctional {
        EtaFunctional { coords: self.coords.iter().map(|x| x * ri(k)).collect() }
    }

    /// Equality in `V*`: same values on a basis of `V`.
    pub fn same_class(&self, other: &EtaFunctional, s: &SummandSpace) -> bool {
        s.v_basis.iter().all(|v| self.eval(v) == other.eval(v))
    }
}

impl<'a> Add<&'a EtaFunctional> for &'a EtaFunctional {
    type Output = EtaFunctional;
    fn add(self, o: &EtaFunctional) -> EtaFunctional {
        EtaFunctional { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a EtaFunctional> for &'a EtaFunctional {
    type Output = EtaFunctional;
    fn sub(self, o: &EtaFunctional) -> EtaFunctional {
        EtaFunctional { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
}

fn check_tail(q: &CrossSection, c: &[i64]) -> Result<()> {
    if c.len() != q.adim() {
        return Err(Error::Input(format!("covector {:?} has length {}, expected {}", c, c.len(), q.adim())));
    }
    if q.tail_rays.iter().any(|r| dot_i(r, c) < 0) {
        return Err(Error::Input(format!("c = {:?} is unbounded below on Q", c)));
    }
    Ok(())
}

/// Greedy strict descent from the origin: always step to the lowest-index
/// neighbour where `<·,c>` drops. Ends at a minimiser of `<·,c>` on `Q`.
pub fn descent(q: &CrossSection, c: &[i64]) -> Result<(usize, EdgePath)> {
    check_tail(q, c)?;
    let mut lambda = vec![0i64; q.n_edges()];
    let mut v = q.origin;
    loop {
        let here = q.pair(v, c);
        let step = q.neighbours(v).into_iter().find(|&(_, w, _)| q.pair(w, c) < here);
        match step {
            Some((e, w, sign)) => {
                lambda[e] += sign;
                v = w;
            }
            None => break,
        }
    }
    Ok((v, EdgePath { lambda }))
}

pub fn support_data(q: &CrossSection, c: &[i64]) -> Result<SupportDatum> {
    let (v, _) = descent(q, c)?;
    let eta0 = -q.pair(v, c);
    let eta0star = ceil_rat(&eta0);
    Ok(SupportDatum { c: c.to_vec(), vertex: v, eta0, eta0star })
}

/// A walk from `from` to `to` along which `<·,c>` never increases.
/// Depth first; strictly decreasing steps are tried before level ones, each by vertex index.
pub fn monotone_path(q: &CrossSection, from: usize, to: usize, c: &[i64]) -> Result<EdgePath> {
    fn dfs(q: &CrossSection, v: usize, to: usize, c: &[i64], seen: &mut Vec<bool>, stack: &mut Vec<(usize, i64)>) -> bool {
        if v == to {
            return true;
        }
        let here = q.pair(v, c);
        let nb = q.neighbours(v);
        let strict = nb.iter().filter(|&&(_, w, _)| q.pair(w, c) < here);
        let level = nb.iter().filter(|&&(_, w, _)| q.pair(w, c) == here);
        let cands: Vec<(usize, usize, i64)> = strict.chain(level).copied().collect();
        for (e, w, sign) in cands {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            stack.push((e, sign));
            if dfs(q, w, to, c, seen, stack) {
                return true;
            }
            stack.pop();
        }
        false
    }
    let mut seen = vec![false; q.vertices.len()];
    seen[from] = true;
    let mut stack = Vec::new();
    if !dfs(q, from, to, c, &mut seen, &mut stack) {
        return Err(Error::Internal(format!("no c-monotone path from vertex {} to vertex {}", from, to)));
    }
    let mut lambda = vec![0i64; q.n_edges()];
    for (e, sign) in stack {
        lambda[e] += sign;
    }
    Ok(EdgePath { lambda })
}

/// Plain path from the origin to `v`, breadth first by vertex index.
pub fn path_to(q: &CrossSection, v: usize) -> Result<EdgePath> {
    let mut prev: Vec<Option<(usize, usize, i64)>> = vec![None; q.vertices.len()];
    let mut seen = vec![false; q.vertices.len()];
    seen[q.origin] = true;
    let mut queue = std::collections::VecDeque::from([q.origin]);
    while let Some(x) = queue.pop_front() {
        for (e, w, sign) in q.neighbours(x) {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((x, e, sign));
                queue.push_back(w);
            }
        }
    }
    if !seen[v] {
        return Err(Error::Internal("vertex unreachable along compact edges".into()));
    }
    let mut lambda = vec![0i64; q.n_edges()];
    let mut cur = v;
    while let Some((p, e, sign)) = prev[cur] {
        lambda[e] += sign;
        cur = p;
    }
    Ok(EdgePath { lambda })
}

/// `[-λ_i <d^i, c>]`, summed over components.
pub fn eta_along(q: &CrossSection, s: &SummandSpace, path: &EdgePath, c: &[i64]) -> EtaFunctional {
    let mut coords = vec![Rat::zero(); s.m];
    for (i, &l) in path.lambda.iter().enumerate() {
        if l != 0 {
            coords[s.collapse[i]] -= q.edge_pair(i, c) * ri(l);
        }
    }
    EtaFunctional { coords }
}

/// `e[v]`: the unit functional of the component of a non-lattice vertex.
pub fn e_vertex(q: &CrossSection, s: &SummandSpace, v: usize) -> Option<EtaFunctional> {
    let comp = q.vertex_component(v)?;
    let mut e = EtaFunctional::zero(s.m);
    e.coords[comp] = ri(1);
    Some(e)
}

pub fn eta(q: &CrossSection, s: &SummandSpace, c: &[i64]) -> Result<EtaFunctional> {
    let (_, path) = descent(q, c)?;
    Ok(eta_along(q, s, &path, c))
}

fn ceiling_correction(q: &CrossSection, s: &SummandSpace, d: &SupportDatum, mut eta: EtaFunctional) -> Result<EtaFunctional> {
    let gap = ri(d.eta0star) - &d.eta0;
    if !gap.is_zero() {
        let e = e_vertex(q, s, d.vertex).ok_or_else(|| Error::Internal("fractional support value at a lattice vertex".into()))?;
        for (x, y) in eta.coords.iter_mut().zip(&e.coords) {
            *x += &gap * y;
        }
    }
    Ok(eta)
}

/// `η̄*(c) = η(c) + (η₀*(c) − η₀(c))·e[v(c)]`.
pub fn eta_star(q: &CrossSection, s: &SummandSpace, c: &[i64]) -> Result<EtaFunctional> {
    let d = support_data(q, c)?;
    let e = eta(q, s, c)?;
    ceiling_correction(q, s, &d, e)
}

/// `η^{*b}(c)`: the path to `v(b)` followed by a `c`-monotone path to `v(c)`.
pub fn eta_star_refined(q: &CrossSection, s: &SummandSpace, base: &[i64], c: &[i64]) -> Result<EtaFunctional> {
    let (vb, lam) = descent(q, base)?;
    let d = support_data(q, c)?;
    let mu = monotone_path(q, vb, d.vertex, c)?;
    let path = EdgePath { lambda: lam.lambda.iter().zip(&mu.lambda).map(|(a, b)| a + b).collect() };
    ceiling_correction(q, s, &d, eta_along(q, s, &path, c))
}

/// `a ≥ b`: `a − b` is the image of some `y ∈ ℕ^m`.
pub fn geq(s: &SummandSpace, a: &EtaFunctional, b: &EtaFunctional) -> bool {
    nonneg_preimage(s, &(a - b)).is_some()
}

/// Some `y ∈ ℕ^m` in the class of `eta`, lexicographically smallest.
pub fn nonneg_preimage(s: &SummandSpace, eta: &EtaFunctional) -> Option<Vec<u64>> {
    let total = eta.component_sum();
    if !total.is_integer() || total.is_negative() {
        return None;
    }
    let total = to_i64(&total.to_integer());
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut rhs: Vec<i64> = Vec::new();
    for v in &s.v_basis {
        let val = eta.eval(v);
        if !val.is_integer() {
            return None;
        }
        rows.push(v.clone());
        rhs.push(to_i64(&val.to_integer()));
    }
    rows.push(vec![1; s.m]);
    rhs.push(total);
    solve_nonneg_integer(&rows, &rhs, total as u64)
}

/// A nonnegative integral representative of `eta`: the stored vector if it already is one,
/// otherwise the first monomial exponent of the right degree (lexicographically descending) in its class.
pub fn nonneg_representative(s: &SummandSpace, eta: &EtaFunctional) -> Option<Vec<u32>> {
    if is_integral(&eta.coords) && eta.coords.iter().all(|x| !x.is_negative()) {
        return Some(eta.coords.iter().map(|x| to_i64(&x.to_integer()) as u32).collect());
    }
    let total = eta.component_sum();
    if !total.is_integer() || total.is_negative() {
        return None;
    }
    let d = to_i64(&total.to_integer()) as u32;
    monomials_of_degree(s.m, d).into_iter().find(|e| {
        let cand = EtaFunctional { coords: e.iter().map(|&x| ri(x as i64)).collect() };
        cand.same_class(eta, s)
    })
}

/// `η − η(c) ∈ C(Q)∨`.
pub fn in_dual_tautological(q: &CrossSection, s: &SummandSpace, c: &[i64], eta_val: &EtaFunctional) -> Result<bool> {
    let diff = eta_val - &eta(q, s, c)?;
    Ok(s.c_rays.iter().all(|r| !diff.eval(r).is_negative()))
}

/// `η − η̄*(c) ∈ C(Q)∨`.
pub fn in_gamma(q: &CrossSection, s: &SummandSpace, c: &[i64], eta_val: &EtaFunctional) -> Result<bool> {
    Ok(gamma_witness(q, s, c, eta_val)?.is_none())
}

/// First ray of `C(Q)` on which `η − η̄*(c)` is negative, with that value.
pub fn gamma_witness(q: &CrossSection, s: &SummandSpace, c: &[i64], eta_val: &EtaFunctional) -> Result<Option<(Vec<i64>, Rat)>> {
    let diff = eta_val - &eta_star(q, s, c)?;
    Ok(s.c_rays.iter().map(|r| (r.clone(), diff.eval(r))).find(|(_, x)| x.is_negative()))
}

/// The cone `C̃(Q) ⊆ 𝔸 × V`, in coordinates `(plane, collapsed t)`.
pub fn tautological_cone(q: &CrossSection, s: &SummandSpace) -> Result<PointedCone> {
    let a = q.adim();
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for t in &s.c_rays {
        let p = summand_polytope(q, s, &rat_vec(t))?;
        for v in &p.vertex_map {
            let mut x: Vec<Rat> = v.clone();
            x.extend(rat_vec(t));
            gens.push(clear_denominators_i64(&x));
        }
    }
    for r in &q.tail_rays {
        let mut x = r.clone();
        x.extend(vec![0; s.m]);
        gens.push(x);
    }
    if gens.is_empty() {
        return Err(Error::Input("Q has no compact part".into()));
    }
    PointedCone::from_rays(a + s.m, &gens)
}

/// `[c, η]` pairs nonnegatively with every generator of `C̃(Q)`.
pub fn in_tautological_dual(cone: &PointedCone, c: &[i64], eta_val: &EtaFunctional) -> bool {
    let mut w: Vec<Rat> = rat_vec(c);
    w.extend(eta_val.coords.iter().cloned());
    cone.rays.iter().all(|r| !dot_ri(&w, r).is_negative())
}
