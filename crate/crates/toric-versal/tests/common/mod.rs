#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use toric_versal::base_space::{base_ideal, BaseIdeal};
use toric_versal::hilbert::{e_decorate, hilbert_basis, GeneratorSet};
use toric_versal::minkowski::{summand_space, SummandSpace};
use toric_versal::{check_codim2_smooth, cross_section, CrossSection, PointedCone};

pub struct Setup {
    pub cone: PointedCone,
    pub r: Vec<i64>,
    pub q: CrossSection,
    pub s: SummandSpace,
    pub base: BaseIdeal,
    pub g: GeneratorSet,
    pub omega: Vec<i64>,
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/../../fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

/// Rays, `R` and the optional generator order of a shipped fixture.
pub fn load(name: &str) -> (Vec<Vec<i64>>, Vec<i64>, Option<Vec<Vec<i64>>>) {
    let src = std::fs::read_to_string(fixture_path(name)).unwrap();
    let v: Value = serde_json::from_str(&src).unwrap();
    let rays = v["rays"].as_array().unwrap().iter().map(ints).collect();
    let order = v.get("generator_order").map(|o| o.as_array().unwrap().iter().map(ints).collect());
    (rays, ints(&v["R"]), order)
}

pub fn omega(c: &PointedCone) -> Vec<i64> {
    (0..c.rank).map(|k| c.rays.iter().map(|a| a[k]).sum()).collect()
}

pub fn setup_from(rays: &[Vec<i64>], r: &[i64], order: Option<&[Vec<i64>]>) -> Setup {
    let cone = PointedCone::from_rays(r.len(), rays).unwrap();
    let q = cross_section(&cone, r).unwrap();
    let s = summand_space(&q);
    let base = base_ideal(&s, 1).unwrap();
    let mut g = hilbert_basis(&cone, r).unwrap();
    if let Some(o) = order {
        g = g.reorder(o).unwrap();
    }
    let g = e_decorate(&g, &q).unwrap();
    let omega = omega(&cone);
    Setup { cone, r: r.to_vec(), q, s, base, g, omega }
}

pub fn setup(name: &str) -> Setup {
    let (rays, r, order) = load(name);
    setup_from(&rays, &r, order.as_deref())
}

pub fn square() -> Setup {
    setup_from(&[vec![0, 0, 1], vec![1, 0, 1], vec![1, 1, 1], vec![0, 1, 1]], &[0, 0, 1], None)
}

/// A random three-dimensional cone, smooth in codimension two, with several rays at
/// height one (lattice vertices of `Q` for `R = [0,0,1]`) and a few higher ones.
/// `None` when the draw is rejected.
pub fn random_smooth_cone(rng: &mut ChaCha8Rng) -> Option<PointedCone> {
    let mut rays = vec![vec![0, 0, 1]];
    for _ in 0..rng.gen_range(2..=5) {
        rays.push(vec![rng.gen_range(-2..=3), rng.gen_range(-2..=3), 1]);
    }
    for _ in 0..rng.gen_range(0..=2) {
        let h = rng.gen_range(2..=3i64);
        rays.push(vec![rng.gen_range(-4..=6), rng.gen_range(-4..=6), h]);
    }
    let c = PointedCone::from_rays(3, &rays).ok()?;
    if !c.is_full_dimensional() || !check_codim2_smooth(&c) {
        return None;
    }
    Some(c)
}

/// Draws until `count` cones are accepted.
pub fn random_smooth_cones(rng: &mut ChaCha8Rng, count: usize) -> Vec<PointedCone> {
    let mut out = Vec::new();
    while out.len() < count {
        if let Some(c) = random_smooth_cone(rng) {
            if !out.iter().any(|d: &PointedCone| d.rays == c.rays) {
                out.push(c);
            }
        }
    }
    out
}
