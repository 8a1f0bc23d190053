mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::setup;
use toric_versal::exact::rat;
use toric_versal::{check_codim2_smooth, cross_section, dual_cone, faces, Error, PointedCone};

fn cone_strategy(rank: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(
        (prop::collection::vec(-4i64..=4, rank - 1), 1i64..=4).prop_map(|(mut v, h)| {
            v.push(h);
            v
        }),
        rank..rank + 4,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn double_dual_returns_the_cone(rays in (2usize..=4).prop_flat_map(cone_strategy)) {
        let rank = rays[0].len();
        let c = PointedCone::from_rays(rank, &rays).unwrap();
        prop_assume!(c.is_full_dimensional());
        let d = dual_cone(&c).unwrap();
        let dd = dual_cone(&d).unwrap();
        let a: BTreeSet<_> = c.rays.iter().cloned().collect();
        let b: BTreeSet<_> = dd.rays.iter().cloned().collect();
        prop_assert_eq!(a, b);
        // every facet normal is nonnegative on every ray and tight on rank-1 of them
        for f in &d.rays {
            prop_assert!(c.rays.iter().all(|r| r.iter().zip(f).map(|(x, y)| x * y).sum::<i64>() >= 0));
            prop_assert_eq!(c.tight(f).len() >= rank - 1, true);
        }
    }

    #[test]
    fn interior_vector_is_interior(rays in (2usize..=4).prop_flat_map(cone_strategy)) {
        let rank = rays[0].len();
        let c = PointedCone::from_rays(rank, &rays).unwrap();
        prop_assume!(c.is_full_dimensional());
        let v = c.interior_vector();
        prop_assert!(c.contains(&v));
        for f in &c.facets {
            prop_assert!(f.iter().zip(&v).map(|(x, y)| x * y).sum::<i64>() > 0);
        }
    }
}

#[test]
fn worked_example_cross_section() {
    let s = setup("sec7.json");
    let pts: Vec<_> = s.q.vertices.iter().map(|v| v.point.clone()).collect();
    let expected = vec![
        vec![rat(0, 1), rat(0, 1)],
        vec![rat(1, 1), rat(0, 1)],
        vec![rat(2, 1), rat(1, 1)],
        vec![rat(1, 1), rat(2, 1)],
        vec![rat(1, 2), rat(2, 1)],
        vec![rat(0, 1), rat(1, 2)],
    ];
    assert_eq!(pts, expected);
    assert_eq!(s.q.n_edges(), 6);
    assert_eq!(s.q.n_components(), 4);
    assert!(s.q.is_bounded());
    assert!(check_codim2_smooth(&s.cone));
}

#[test]
fn faces_of_a_square_cone() {
    let c = PointedCone::from_rays(3, &[vec![0, 0, 1], vec![1, 0, 1], vec![1, 1, 1], vec![0, 1, 1]]).unwrap();
    assert_eq!(faces(&c, 1).len(), 4);
    assert_eq!(faces(&c, 2).len(), 4);
    assert!(check_codim2_smooth(&c));
}

#[test]
fn non_smooth_two_face_is_detected() {
    let c = PointedCone::from_rays(3, &[vec![0, 0, 1], vec![2, 0, 1], vec![0, 1, 1]]).unwrap();
    assert!(!check_codim2_smooth(&c));
}

#[test]
fn hypothesis_errors() {
    let c = PointedCone::from_rays(3, &[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
    assert!(matches!(cross_section(&c, &[0, 0, 2]), Err(Error::Hypothesis(_))));
    assert!(matches!(cross_section(&c, &[-2, 0, 1]), Err(Error::Hypothesis(_))));
    assert!(matches!(cross_section(&c, &[0, 1]), Err(Error::Input(_))));
    let flat = PointedCone::from_rays(3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
    assert!(matches!(dual_cone(&flat), Err(Error::Input(_))));
}

#[test]
fn unbounded_cross_section_has_tails() {
    // R vanishes on (1,0,0)
    let c = PointedCone::from_rays(3, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 1], vec![1, 1, 1]]).unwrap();
    let q = cross_section(&c, &[0, 0, 1]).unwrap();
    assert!(!q.is_bounded());
    assert_eq!(q.tail_rays.len(), 1);
}
