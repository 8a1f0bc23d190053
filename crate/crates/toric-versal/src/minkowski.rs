//! The summand space `V(Q)`, the cone `C(Q)` and the summand polyhedra `Q_t`.
//!
//! Everything lives in collapsed coordinates: one coordinate per edge component.

use num_traits::{Signed, Zero};

use crate::cone::double_description;
use crate::cross_section::CrossSection;
use crate::error::{Error, Result};
use crate::exact::{clear_denominators, dot_r, kernel_lattice, kernel_lattice_i64, primitive_big, rat_vec, ri, to_i64, Rat, RMat};

#[derive(Clone, Debug)]
pub struct SummandSpace {
    pub n_edges: usize,
    /// Edge index to component index.
    pub collapse: Vec<usize>,
    pub m: usize,
    /// Saturated integer basis of `V`, collapsed.
    pub v_basis: Vec<Vec<i64>>,
    /// HNF basis of `V⊥ ∩ ℤ^m`.
    pub vperp: Vec<Vec<i64>>,
    /// Primitive extreme rays of `C(Q)`, lexicographically descending.
    pub c_rays: Vec<Vec<i64>>,
    /// One row per two-face and plane coordinate: `Σ t_i ε_i d^i = 0`.
    pub two_face_matrix: RMat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandPolytope {
    pub vertex_map: Vec<Vec<Rat>>,
    pub tail: Vec<Vec<i64>>,
}

impl SummandSpace {
    pub fn dim(&self) -> usize {
        self.v_basis.len()
    }

    /// Lifts a collapsed vector to one entry per edge.
    pub fn expand(&self, t: &[Rat]) -> Vec<Rat> {
        self.collapse.iter().map(|&c| t[c].clone()).collect()
    }

    pub fn contains(&self, t: &[Rat]) -> bool {
        t.len() == self.m && self.two_face_matrix.iter().all(|row| dot_r(row, t).is_zero())
    }

    /// Integer form of the two-face equations, each row primitive.
    pub fn two_face_rows_int(&self) -> Vec<Vec<i64>> {
        self.two_face_matrix
            .iter()
            .map(|r| primitive_big(&clear_denominators(r)).iter().map(to_i64).collect::<Vec<i64>>())
            .filter(|r: &Vec<i64>| r.iter().any(|&x| x != 0))
            .collect()
    }
}

pub fn summand_space(q: &CrossSection) -> SummandSpace {
    let m = q.n_components();
    let mut rows: RMat = Vec::new();
    for eps in &q.two_faces {
        for j in 0..q.adim() {
            let mut row = vec![Rat::zero(); m];
            for (i, &e) in eps.iter().enumerate() {
                if e != 0 {
                    row[q.edge_component[i]] += ri(e as i64) * &q.edges[i].dir[j];
                }
            }
            rows.push(row);
        }
    }
    let v = kernel_lattice(&rows, m);
    let v_basis = v.rows_i64();
    let vperp = if v_basis.is_empty() {
        (0..m).map(|i| (0..m).map(|j| (i == j) as i64).collect()).collect()
    } else {
        kernel_lattice_i64(&v_basis, m).rows_i64()
    };
    let mut space = SummandSpace {
        n_edges: q.n_edges(),
        collapse: q.edge_component.clone(),
        m,
        v_basis,
        vperp,
        c_rays: Vec::new(),
        two_face_matrix: rows,
    };
    let mut cons: Vec<Vec<i64>> = Vec::new();
    for r in space.two_face_rows_int() {
        cons.push(r.iter().map(|x| -x).collect());
        cons.push(r);
    }
    for i in 0..m {
        cons.push((0..m).map(|j| (i == j) as i64).collect());
    }
    let mut rays = double_description(&cons, m).rays;
    rays.sort_by(|a, b| b.cmp(a));
    space.c_rays = rays;
    space
}

/// Vertex images `v_t` along the compact edge graph, starting at the origin.
pub fn summand_polytope(q: &CrossSection, s: &SummandSpace, t: &[Rat]) -> Result<SummandPolytope> {
    if t.len() != s.m || !s.contains(t) {
        return Err(Error::Input("not a summand parameter".into()));
    }
    if t.iter().any(|x| x.is_negative()) {
        return Err(Error::Input("summand parameter has a negative entry".into()));
    }
    let mut map: Vec<Option<Vec<Rat>>> = vec![None; q.vertices.len()];
    map[q.origin] = Some(vec![Rat::zero(); q.adim()]);
    let mut queue = std::collections::VecDeque::from([q.origin]);
    while let Some(v) = queue.pop_front() {
        let here = map[v].clone().unwrap();
        for (e, w, sign) in q.neighbours(v) {
            let step = &t[s.collapse[e]] * ri(sign);
            let there: Vec<Rat> = here.iter().zip(&q.edges[e].dir).map(|(x, d)| x + &step * d).collect();
            match &map[w] {
                None => {
                    map[w] = Some(there);
                    queue.push_back(w);
                }
                Some(old) if *old != there => return Err(Error::Internal("summand vertex depends on the walk".into())),
                Some(_) => {}
            }
        }
    }
    let vertex_map = map
        .into_iter()
        .map(|p| p.ok_or_else(|| Error::Internal("compact edge graph is disconnected".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(SummandPolytope { vertex_map, tail: q.tail_rays.clone() })
}

/// `v_t` for one vertex, reached along an explicit vertex walk from the origin.
pub fn vertex_along_walk(q: &CrossSection, s: &SummandSpace, t: &[Rat], walk: &[usize]) -> Result<Vec<Rat>> {
    if walk.first() != Some(&q.origin) {
        return Err(Error::Input("walk must start at the origin vertex".into()));
    }
    let mut p = vec![Rat::zero(); q.adim()];
    for w in walk.windows(2) {
        let (e, _, sign) = q
            .neighbours(w[0])
            .into_iter()
            .find(|&(_, x, _)| x == w[1])
            .ok_or_else(|| Error::Input(format!("vertices {} and {} are not joined by a compact edge", w[0], w[1])))?;
        let step = &t[s.collapse[e]] * ri(sign);
        for (x, d) in p.iter_mut().zip(&q.edges[e].dir) {
            *x += &step * d;
        }
    }
    Ok(p)
}

pub fn minkowski_sum(p: &SummandPolytope, p2: &SummandPolytope) -> Result<SummandPolytope> {
    if p.tail != p2.tail || p.vertex_map.len() != p2.vertex_map.len() {
        return Err(Error::Input("summands have different tail cones".into()));
    }
    let vertex_map = p
        .vertex_map
        .iter()
        .zip(&p2.vertex_map)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
        .collect();
    Ok(SummandPolytope { vertex_map, tail: p.tail.clone() })
}

/// The all-ones parameter, i.e. `Q` itself.
pub fn one(s: &SummandSpace) -> Vec<Rat> {
    rat_vec(&vec![1; s.m])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::PointedCone;
    use crate::cross_section::cross_section;

    #[test]
    fn square_space() {
        let c = PointedCone::from_rays(3, &[vec![0, 0, 1], vec![1, 0, 1], vec![1, 1, 1], vec![0, 1, 1]]).unwrap();
        let q = cross_section(&c, &[0, 0, 1]).unwrap();
        let s = summand_space(&q);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.c_rays, vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
        let p = summand_polytope(&q, &s, &one(&s)).unwrap();
        assert_eq!(p.vertex_map, q.vertices.iter().map(|v| v.point.clone()).collect::<Vec<_>>());
        assert!(summand_polytope(&q, &s, &rat_vec(&[1, 0, 0, 0])).is_err());
        assert!(summand_polytope(&q, &s, &rat_vec(&[-1, 0, -1, 0])).is_err());
    }
}
