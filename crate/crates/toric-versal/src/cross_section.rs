//! The cross-section polyhedron `Q = σ ∩ [R = 1]` with its edges, compact
//! two-faces and edge components.

use num_traits::{One, Signed, Zero};

use crate::cone::{faces, PointedCone};
use crate::error::{Error, Result};
use crate::exact::{
    big_mat, dot_i, gcd_slice, hermite_normal_form, inverse_unimodular, ri, small_mat, transpose, Rat,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// Coordinates in the affine lattice of `[R = 1]`, origin vertex at 0.
    pub point: Vec<Rat>,
    pub lattice: bool,
    /// Index of the generating ray of σ.
    pub ray: usize,
    /// `<a, R>` for that ray.
    pub height: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub dir: Vec<Rat>,
}

#[derive(Clone, Debug)]
pub struct CrossSection {
    pub r: Vec<i64>,
    pub rank: usize,
    /// Unimodular `T` with `(T x)_last = <R, x>` sending the origin vertex to `e_last`.
    pub transform: Vec<Vec<i64>>,
    pub transform_inv: Vec<Vec<i64>>,
    pub vertices: Vec<Vertex>,
    /// Tail rays of `Q`, in local coordinates.
    pub tail_rays: Vec<Vec<i64>>,
    pub tail_ray_index: Vec<usize>,
    /// Compact edges `d^1..d^N`.
    pub edges: Vec<Edge>,
    /// Sign vectors of the compact two-faces; each closes up: `Σ ε_i d^i = 0`.
    pub two_faces: Vec<Vec<i8>>,
    pub components: Vec<Vec<usize>>,
    pub edge_component: Vec<usize>,
    pub origin: usize,
    pub qdim: usize,
}

/// Unimodular matrix whose last row is the primitive covector `r`.
fn completion_with_last_row(r: &[i64]) -> Vec<Vec<i64>> {
    let n = r.len();
    let mut en = vec![0; n];
    en[n - 1] = 1;
    if r == en.as_slice() {
        return (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    }
    let col: Vec<Vec<i64>> = r.iter().map(|&x| vec![x]).collect();
    let (_, u) = hermite_normal_form(&big_mat(&col));
    // u·rᵀ = e_1, so r·uᵀ = e_1ᵀ; move that column to the end
    let ut = transpose(&small_mat(&u));
    let v: Vec<Vec<i64>> = ut.iter().map(|row| {
        let mut row = row.clone();
        row.rotate_left(1);
        row
    }).collect();
    inverse_unimodular(&v).expect("completion is unimodular")
}

fn mat_vec(m: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    m.iter().map(|row| dot_i(row, x)).collect()
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn cross2(a: &[Rat], b: &[Rat]) -> Rat {
    &a[0] * &b[1] - &a[1] * &b[0]
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Builds `Q(R)` and its combinatorial decorations.
pub fn cross_section(c: &PointedCone, r: &[i64]) -> Result<CrossSection> {
    let n = c.rank;
    if r.len() != n {
        return Err(Error::Input(format!("R has length {}, expected {}", r.len(), n)));
    }
    if gcd_slice(r) != 1 {
        return Err(Error::Hypothesis(format!("R = {:?} is not primitive", r)));
    }
    for a in &c.rays {
        if dot_i(a, r) < 0 {
            return Err(Error::Hypothesis(format!("R is negative on ray {:?}, so R is not in the dual cone", a)));
        }
    }
    let b = completion_with_last_row(r);
    let heights: Vec<i64> = c.rays.iter().map(|a| dot_i(a, r)).collect();
    let pre: Vec<Vec<i64>> = c.rays.iter().map(|a| mat_vec(&b, a)).collect();
    let point_of = |y: &[i64], h: i64| -> Vec<Rat> { y[..n - 1].iter().map(|&x| Rat::new(x.into(), h.into())).collect() };

    // origin: lexicographically smallest lattice vertex
    let origin_ray = (0..c.rays.len())
        .filter(|&i| heights[i] == 1)
        .min_by(|&i, &j| pre[i][..n - 1].cmp(&pre[j][..n - 1]))
        .ok_or_else(|| Error::Hypothesis("Q has no lattice vertex, so Y is rigid in degree -R".into()))?;
    let o = pre[origin_ray][..n - 1].to_vec();
    let mut shear: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    for i in 0..n - 1 {
        shear[i][n - 1] = -o[i];
    }
    let transform: Vec<Vec<i64>> = shear.iter().map(|row| (0..n).map(|j| (0..n).map(|k| row[k] * b[k][j]).sum()).collect()).collect();
    let transform_inv = inverse_unimodular(&transform).ok_or_else(|| Error::Internal("transform not unimodular".into()))?;
    let local: Vec<Vec<i64>> = c.rays.iter().map(|a| mat_vec(&transform, a)).collect();

    // raw vertices in ray order
    let raw: Vec<usize> = (0..c.rays.len()).filter(|&i| heights[i] > 0).collect();
    let tails: Vec<usize> = (0..c.rays.len()).filter(|&i| heights[i] == 0).collect();
    let raw_pos = |ray: usize| raw.iter().position(|&x| x == ray);
    let raw_points: Vec<Vec<Rat>> = raw.iter().map(|&i| point_of(&local[i], heights[i])).collect();

    let mut raw_edges: Vec<(usize, usize)> = Vec::new();
    for f in faces(c, 2) {
        if f.len() == 2 {
            if let (Some(a), Some(b)) = (raw_pos(f[0]), raw_pos(f[1])) {
                raw_edges.push((a.min(b), a.max(b)));
            }
        }
    }
    let qdim = c.dim().saturating_sub(1);

    // vertex order
    let k = raw.len();
    let order: Vec<usize> = if qdim == 2 && n == 3 && k >= 2 {
        let adj = |v: usize| -> Vec<usize> {
            let mut a: Vec<usize> = raw_edges
                .iter()
                .filter_map(|&(x, y)| if x == v { Some(y) } else if y == v { Some(x) } else { None })
                .collect();
            a.sort();
            a
        };
        let walk = |start: usize, second: usize| -> Vec<usize> {
            let mut seq = vec![start, second];
            loop {
                let cur = *seq.last().unwrap();
                let prev = seq[seq.len() - 2];
                let nxt = adj(cur).into_iter().find(|&x| x != prev);
                match nxt {
                    Some(x) if x != start && !seq.contains(&x) => seq.push(x),
                    _ => break,
                }
            }
            seq
        };
        if tails.is_empty() {
            let start = raw_pos(origin_ray).unwrap();
            let nb = adj(start);
            if nb.len() != 2 {
                return Err(Error::Internal("bounded polygon vertex without two neighbours".into()));
            }
            let (pa, pb) = (nb[0], nb[1]);
            let p0 = &raw_points[start];
            let first = if cross2(&sub(&raw_points[pa], p0), &sub(&raw_points[pb], p0)).is_positive() { pa } else { pb };
            walk(start, first)
        } else {
            let ends: Vec<usize> = (0..k).filter(|&v| adj(v).len() <= 1).collect();
            let start = ends[0];
            let mut seq = walk(start, adj(start)[0]);
            let mut inner: Vec<Rat> = vec![Rat::zero(); 2];
            for p in &raw_points {
                for (x, y) in inner.iter_mut().zip(p) {
                    *x += y / Rat::from_integer((k as i64).into());
                }
            }
            for &t in &tails {
                for (x, y) in inner.iter_mut().zip(&local[t]) {
                    *x += ri(*y);
                }
            }
            let u0 = &raw_points[seq[0]];
            if !cross2(&sub(&raw_points[seq[1]], u0), &sub(&inner, u0)).is_positive() {
                seq.reverse();
            }
            seq
        }
    } else {
        let mut idx: Vec<usize> = (0..k).collect();
        idx.sort_by(|&a, &b| raw_points[a].cmp(&raw_points[b]));
        idx
    };
    if order.len() != k {
        return Err(Error::Internal("vertex ordering lost vertices".into()));
    }
    let new_of = |raw_idx: usize| order.iter().position(|&x| x == raw_idx).unwrap();

    let vertices: Vec<Vertex> = order
        .iter()
        .map(|&ri_| {
            let ray = raw[ri_];
            Vertex { point: raw_points[ri_].clone(), lattice: heights[ray] == 1, ray, height: heights[ray] }
        })
        .collect();
    let origin = vertices.iter().position(|v| v.ray == origin_ray).unwrap();

    let mut pairs: Vec<(usize, usize)> = raw_edges.iter().map(|&(a, b)| (new_of(a), new_of(b))).collect();
    let cyclic = qdim == 2 && n == 3 && tails.is_empty();
    let path = qdim == 2 && n == 3 && !tails.is_empty();
    if cyclic || path {
        pairs = pairs
            .into_iter()
            .map(|(a, b)| {
                let (lo, hi) = (a.min(b), a.max(b));
                if cyclic && lo == 0 && hi == k - 1 && k > 2 { (hi, lo) } else { (lo, hi) }
            })
            .collect();
        pairs.sort_by_key(|&(a, _)| a);
    } else {
        pairs = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort();
    }
    let edges: Vec<Edge> = pairs
        .iter()
        .map(|&(a, b)| Edge { from: a, to: b, dir: sub(&vertices[b].point, &vertices[a].point) })
        .collect();

    // compact two-faces from three-faces of σ with no tail ray
    let mut two_faces = Vec::new();
    for f in faces(c, 3) {
        if f.iter().any(|&i| heights[i] == 0) {
            continue;
        }
        let vs: Vec<usize> = f.iter().map(|&i| new_of(raw_pos(i).unwrap())).collect();
        let fe: Vec<usize> = (0..edges.len()).filter(|&e| vs.contains(&edges[e].from) && vs.contains(&edges[e].to)).collect();
        if fe.is_empty() {
            continue;
        }
        let mut eps = vec![0i8; edges.len()];
        let start = edges[fe[0]].from;
        let mut cur = edges[fe[0]].to;
        let mut last = fe[0];
        eps[fe[0]] = 1;
        while cur != start {
            let e = *fe
                .iter()
                .find(|&&e| e != last && (edges[e].from == cur || edges[e].to == cur))
                .ok_or_else(|| Error::Internal("open boundary cycle of a two-face".into()))?;
            if edges[e].from == cur {
                eps[e] = 1;
                cur = edges[e].to;
            } else {
                eps[e] = -1;
                cur = edges[e].from;
            }
            last = e;
        }
        two_faces.push(eps);
    }

    // components: edges glued at non-lattice vertices
    let mut dsu = Dsu((0..edges.len()).collect());
    for (v, vert) in vertices.iter().enumerate() {
        if vert.lattice {
            continue;
        }
        let inc: Vec<usize> = (0..edges.len()).filter(|&e| edges[e].from == v || edges[e].to == v).collect();
        for w in inc.windows(2) {
            dsu.union(w[0], w[1]);
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut edge_component = vec![0; edges.len()];
    for e in 0..edges.len() {
        let root = dsu.find(e);
        match components.iter().position(|comp| dsu.0[comp[0]] == root || comp[0] == root) {
            Some(ci) => {
                components[ci].push(e);
                edge_component[e] = ci;
            }
            None => {
                edge_component[e] = components.len();
                components.push(vec![e]);
            }
        }
    }

    let q = CrossSection {
        r: r.to_vec(),
        rank: n,
        transform,
        transform_inv,
        vertices,
        tail_rays: tails.iter().map(|&t| local[t][..n - 1].to_vec()).collect(),
        tail_ray_index: tails,
        edges,
        two_faces,
        components,
        edge_component,
        origin,
        qdim,
    };
    for eps in &q.two_faces {
        let mut s = vec![Rat::zero(); n - 1];
        for (i, &e) in eps.iter().enumerate() {
            if e != 0 {
                for (x, y) in s.iter_mut().zip(&q.edges[i].dir) {
                    *x += ri(e as i64) * y;
                }
            }
        }
        if s.iter().any(|x| !x.is_zero()) {
            return Err(Error::Internal("two-face cycle does not close".into()));
        }
    }
    Ok(q)
}

impl CrossSection {
    /// Dimension of the affine lattice `[R = 1]`.
    pub fn adim(&self) -> usize {
        self.rank - 1
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn is_bounded(&self) -> bool {
        self.tail_rays.is_empty()
    }

    /// Compact edges at `v`, as `(edge, other endpoint, sign)` sorted by the other endpoint;
    /// the sign is +1 when leaving `v` along `d^edge`.
    pub fn neighbours(&self, v: usize) -> Vec<(usize, usize, i64)> {
        let mut out: Vec<(usize, usize, i64)> = self
            .edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                if e.from == v {
                    Some((i, e.to, 1))
                } else if e.to == v {
                    Some((i, e.from, -1))
                } else {
                    None
                }
            })
            .collect();
        out.sort_by_key(|&(_, w, _)| w);
        out
    }

    /// Component of a non-lattice vertex (all its compact edges share it).
    pub fn vertex_component(&self, v: usize) -> Option<usize> {
        if self.vertices[v].lattice {
            return None;
        }
        self.neighbours(v).first().map(|&(e, _, _)| self.edge_component[e])
    }

    /// Covector in local coordinates: `m ↦ m·T⁻¹`, last entry pairs with the height.
    pub fn local_covector(&self, m: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|j| (0..self.rank).map(|k| m[k] * self.transform_inv[k][j]).sum()).collect()
    }

    pub fn global_covector(&self, local: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|j| (0..self.rank).map(|k| local[k] * self.transform[k][j]).sum()).collect()
    }

    pub fn local_point(&self, x: &[i64]) -> Vec<i64> {
        mat_vec(&self.transform, x)
    }

    pub fn global_point(&self, y: &[i64]) -> Vec<i64> {
        mat_vec(&self.transform_inv, y)
    }

    /// `<v, c>` for a vertex and a covector on the cross-section plane.
    pub fn pair(&self, v: usize, c: &[i64]) -> Rat {
        crate::exact::dot_ri(&self.vertices[v].point, c)
    }

    /// Pairing of an edge vector with a covector.
    pub fn edge_pair(&self, e: usize, c: &[i64]) -> Rat {
        crate::exact::dot_ri(&self.edges[e].dir, c)
    }

    /// Local rays of σ: `(v, 1)·height` for vertices and `(r, 0)` for tails.
    pub fn local_rays(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for v in &self.vertices {
            let mut y: Vec<i64> = v.point.iter().map(|x| (x * ri(v.height)).to_integer().try_into().unwrap()).collect();
            y.push(v.height);
            out.push(y);
        }
        for t in &self.tail_rays {
            let mut y = t.clone();
            y.push(0);
            out.push(y);
        }
        out
    }

    pub fn one(&self) -> Vec<Rat> {
        vec![Rat::one(); self.n_components()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn unit_square() {
        let c = PointedCone::from_rays(3, &[vec![0, 0, 1], vec![1, 0, 1], vec![1, 1, 1], vec![0, 1, 1]]).unwrap();
        let q = cross_section(&c, &[0, 0, 1]).unwrap();
        assert_eq!(q.vertices.len(), 4);
        assert!(q.vertices.iter().all(|v| v.lattice));
        assert_eq!(q.components.len(), 4);
        assert_eq!(q.two_faces, vec![vec![1, 1, 1, 1]]);
    }

    #[test]
    fn completion_general_r() {
        let b = completion_with_last_row(&[2, 3, 1]);
        assert_eq!(b[2], vec![2, 3, 1]);
        assert!(inverse_unimodular(&b).is_some());
    }

    #[test]
    fn errors() {
        let c = PointedCone::from_rays(3, &[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert!(matches!(cross_section(&c, &[0, 0, 2]), Err(Error::Hypothesis(_))));
        assert!(matches!(cross_section(&c, &[-2, 0, 1]), Err(Error::Hypothesis(_))));
        // every ray at height 2: no lattice vertex
        let d = PointedCone::from_rays(3, &[vec![1, 0, 2], vec![0, 1, 2], vec![-1, -1, 2]]).unwrap();
        assert!(matches!(cross_section(&d, &[0, 0, 1]), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn general_r_heights() {
        // R = [1,1,1] on the positive orthant: Q is the standard triangle
        let c = PointedCone::from_rays(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let q = cross_section(&c, &[1, 1, 1]).unwrap();
        assert_eq!(q.vertices.len(), 3);
        assert!(q.vertices.iter().all(|v| v.lattice));
        assert_eq!(q.vertices[q.origin].point, vec![rat(0, 1), rat(0, 1)]);
        for v in &q.vertices {
            let y = q.local_point(&c.rays[v.ray]);
            assert_eq!(y[2], 1);
        }
    }
}
