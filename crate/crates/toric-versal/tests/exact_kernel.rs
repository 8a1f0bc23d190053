use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use toric_versal::exact::{
    big_mat, enumerate_nonneg_integer, hermite_normal_form, identity, inverse, kernel_lattice_i64, mat_mul, nullspace,
    rank_i64, rat_vec, solve_nonneg_integer, Rat,
};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let r: Vec<Vec<Rat>> = m.iter().map(|row| row.iter().map(|x| Rat::from_integer(x.clone())).collect()).collect();
    match inverse(&r) {
        None => BigInt::zero(),
        Some(_) => {
            // Bareiss-free: expand via rational elimination
            let mut a = r;
            let mut d = Rat::one();
            for i in 0..n {
                let p = (i..n).find(|&k| !a[k][i].is_zero()).unwrap();
                if p != i {
                    a.swap(p, i);
                    d = -d;
                }
                d *= a[i][i].clone();
                for k in i + 1..n {
                    let f = &a[k][i] / &a[i][i];
                    for j in i..n {
                        let v = &f * &a[i][j];
                        a[k][j] -= v;
                    }
                }
            }
            d.to_integer()
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_is_a_unimodular_row_reduction(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))) {
        let bm = big_mat(&m);
        let (h, u) = hermite_normal_form(&bm);
        prop_assert_eq!(mat_mul(&u, &bm), h.clone());
        prop_assert!(det(&u).abs().is_one());
        // echelon shape with positive pivots
        let mut last: Option<usize> = None;
        for row in &h {
            match row.iter().position(|x| !x.is_zero()) {
                None => last = Some(usize::MAX),
                Some(p) => {
                    prop_assert!(last.map_or(true, |l| l != usize::MAX && p > l));
                    prop_assert!(row[p].is_positive());
                    last = Some(p);
                }
            }
        }
    }

    #[test]
    fn kernel_lattice_is_saturated(m in (1usize..4, 2usize..5).prop_flat_map(|(r, c)| matrix(r, c))) {
        let cols = m[0].len();
        let k = kernel_lattice_i64(&m, cols);
        prop_assert_eq!(k.rank(), cols - rank_i64(&m));
        let rows = k.rows_i64();
        for v in &rows {
            for r in &m {
                prop_assert_eq!(r.iter().zip(v).map(|(a, b)| a * b).sum::<i64>(), 0);
            }
        }
        // every integral point of the rational kernel is an integer combination
        for q in nullspace(&m.iter().map(|r| rat_vec(r)).collect(), cols) {
            let den = q.iter().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
            let v: Vec<BigInt> = q.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect();
            prop_assert!(k.contains(&v));
        }
    }

    #[test]
    fn nonneg_solver_is_lexicographically_first(
        a in matrix(2, 4),
        x in prop::collection::vec(0u64..3, 4),
    ) {
        let b: Vec<i64> = a.iter().map(|r| r.iter().zip(&x).map(|(p, &q)| p * q as i64).sum()).collect();
        let all = enumerate_nonneg_integer(&a, &b, 8);
        prop_assert!(all.contains(&x));
        prop_assert_eq!(solve_nonneg_integer(&a, &b, 8), all.first().cloned());
        let mut sorted = all.clone();
        sorted.sort();
        prop_assert_eq!(sorted, all);
    }
}

#[test]
fn identity_has_trivial_hnf() {
    let (h, u) = hermite_normal_form(&identity(4));
    assert_eq!(h, identity(4));
    assert_eq!(u, identity(4));
}
