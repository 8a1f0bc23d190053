mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_smooth_cones, setup, setup_from, square};
use toric_versal::base_space::{obstruction_space_dims, translation_invariant, vanishes_on_diagonal};
use toric_versal::exact::{rat_vec, Rat};
use toric_versal::hilbert::{hilbert_basis, in_semigroup};
use toric_versal::minkowski::{minkowski_sum, one, summand_polytope, summand_space};
use toric_versal::tangent::{
    e_sets, gorenstein_companion, interesting_degrees, ks_pairing, pairing_vanishes_on_e_j, relation_basis,
    t1_dimension, t2_dimension,
};
use toric_versal::{cross_section, Error, PointedCone};

fn c_ray(s: &common::Setup, i: usize) -> Vec<Rat> {
    rat_vec(&s.s.c_rays[i])
}

#[test]
fn unit_summand_is_q() {
    let s = setup("sec7.json");
    let p = summand_polytope(&s.q, &s.s, &one(&s.s)).unwrap();
    let o = &s.q.vertices[s.q.origin].point;
    for (v, img) in s.q.vertices.iter().zip(&p.vertex_map) {
        let d: Vec<Rat> = v.point.iter().zip(o).map(|(a, b)| a - b).collect();
        assert_eq!(&d, img);
    }
}

#[test]
fn summands_add() {
    let s = setup("sec7.json");
    let n = s.s.c_rays.len();
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (c_ray(&s, i), c_ray(&s, j));
            let sum: Vec<Rat> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            let lhs = minkowski_sum(
                &summand_polytope(&s.q, &s.s, &a).unwrap(),
                &summand_polytope(&s.q, &s.s, &b).unwrap(),
            )
            .unwrap();
            assert_eq!(lhs, summand_polytope(&s.q, &s.s, &sum).unwrap());
        }
    }
}

#[test]
fn parameters_outside_v_are_rejected() {
    let s = setup("sec7.json");
    let mut t = one(&s.s);
    t[0] = Rat::from_integer(3.into());
    assert!(summand_polytope(&s.q, &s.s, &t).is_err());
}

#[test]
fn base_ideal_generators_are_translation_invariant() {
    for s in [setup("sec7.json"), setup("sec34.json"), square()] {
        for g in &s.base.generators {
            assert!(translation_invariant(g));
            assert!(vanishes_on_diagonal(g));
        }
        assert_eq!(obstruction_space_dims(&s.base, 3)[0], 0);
    }
}

#[test]
fn generators_are_irreducible() {
    let s = setup("sec7.json");
    let els = &s.g.elements;
    for (i, e) in els.iter().enumerate() {
        let others: Vec<Vec<i64>> = els.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect();
        assert!(!in_semigroup(&others, e, &s.omega), "{:?} decomposes", e);
        assert!(in_semigroup(els, e, &s.omega));
    }
}

#[test]
fn orthant_basis_is_the_unit_vectors() {
    let c = PointedCone::from_rays(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    let g = hilbert_basis(&c, &[1, 1, 1]).unwrap();
    let mut e = g.elements.clone();
    e.sort();
    assert_eq!(e, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0], vec![1, 1, 1]]);
}

#[test]
fn e_sets_of_the_worked_example() {
    let s = setup("sec7.json");
    let e = e_sets(&s.cone, &s.r, &s.g, None).unwrap();
    let j = s.cone.rays.iter().position(|a| a == &vec![0, 0, 1]).unwrap();
    let names: Vec<&Vec<i64>> = e.per_ray[j].iter().map(|&i| &s.g.elements[i]).collect();
    assert_eq!(names, vec![&vec![1, 0, 0], &vec![0, 1, 0]]);
    let r_index = s.g.r_index.unwrap();
    let e1 = e_sets(&s.cone, &s.r, &s.g, Some(1)).unwrap();
    for (a, b) in e.per_ray.iter().zip(&e1.per_ray) {
        assert!(!a.contains(&r_index));
        let mut with_r = a.clone();
        with_r.push(r_index);
        with_r.sort();
        assert_eq!(&with_r, b);
    }
}

#[test]
fn pairing_vanishes_where_expected() {
    let s = setup("sec7.json");
    let e = e_sets(&s.cone, &s.r, &s.g, None).unwrap();
    let rels = relation_basis(&s.g, &s.g.z_indices());
    for rel in &rels {
        assert_eq!(ks_pairing(&s.q, &s.s, &s.g, &one(&s.s), rel).unwrap(), Rat::from_integer(0.into()));
    }
    let mut witnessed = false;
    for i in 0..s.s.c_rays.len() {
        let t = c_ray(&s, i);
        assert!(pairing_vanishes_on_e_j(&s.q, &s.s, &s.g, &e, &t).unwrap());
        witnessed |= rels.iter().any(|r| ks_pairing(&s.q, &s.s, &s.g, &t, r).unwrap() != Rat::from_integer(0.into()));
    }
    assert!(witnessed, "Φ is identically zero on C(Q)");
}

#[test]
fn t2_stabilises_and_vanishes_for_a_simplex() {
    let s = setup("sec7.json");
    let big: Vec<usize> = (6..=8).map(|k| t2_dimension(&s.cone, &s.r, &s.g, k).unwrap()).collect();
    assert!(big.windows(2).all(|w| w[0] == w[1]), "{:?}", big);
    let simplex = setup_from(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &[1, 1, 1], None);
    for k in 1..=3 {
        assert_eq!(t2_dimension(&simplex.cone, &simplex.r, &simplex.g, k).unwrap(), 0);
    }
}

#[test]
fn companion_of_the_worked_example() {
    let s = setup("sec7.json");
    let (sigma2, rep) = gorenstein_companion(&s.cone, &s.r).unwrap();
    assert_eq!(rep.lattice_vertices.len(), 4);
    assert_eq!(rep.dim_v, rep.dim_v_companion);
    assert!(sigma2.rays.iter().all(|a| a.iter().zip(&s.r).map(|(x, y)| x * y).sum::<i64>() == 1));
}

#[test]
fn interesting_degrees_of_small_cones() {
    assert_eq!(interesting_degrees(&square().cone).unwrap(), vec![vec![0, 0, 1]]);
    let unimodular = PointedCone::from_rays(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    assert!(interesting_degrees(&unimodular).unwrap().is_empty());
}

#[test]
fn non_smooth_cones_are_refused() {
    let c = PointedCone::from_rays(3, &[vec![0, 0, 1], vec![2, 0, 1], vec![0, 1, 1]]).unwrap();
    let g = hilbert_basis(&c, &[0, 0, 1]).unwrap();
    assert!(matches!(t1_dimension(&c, &[0, 0, 1], &g), Err(Error::Hypothesis(_))));
    assert!(matches!(t2_dimension(&c, &[0, 0, 1], &g, 1), Err(Error::Hypothesis(_))));
}

#[test]
fn t1_agrees_on_random_cones() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e1);
    for c in random_smooth_cones(&mut rng, 12) {
        let r = vec![0, 0, 1];
        let q = cross_section(&c, &r).unwrap();
        let g = toric_versal::hilbert::e_decorate(&hilbert_basis(&c, &r).unwrap(), &q).unwrap();
        let t = t1_dimension(&c, &r, &g).unwrap();
        assert_eq!(t.via_v, t.via_e, "{:?}", c.rays);
        assert_eq!(t.via_v + 1, summand_space(&q).dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn summands_of_the_square_scale(a in 0i64..5) {
        let s = square();
        let t = rat_vec(&vec![a; s.s.m]);
        let p = summand_polytope(&s.q, &s.s, &t).unwrap();
        let unit = summand_polytope(&s.q, &s.s, &one(&s.s)).unwrap();
        for (x, y) in p.vertex_map.iter().zip(&unit.vertex_map) {
            let scaled: Vec<Rat> = y.iter().map(|v| v * Rat::from_integer(a.into())).collect();
            prop_assert_eq!(x, &scaled);
        }
    }
}
