//! The base ideal `𝒥 ⊆ ℚ[t_1..t_m]`, its form in difference variables, and
//! the graded pieces of `W = 𝒥/𝒥̃`.

use num_traits::Zero;

use crate::cross_section::CrossSection;
use crate::error::{Error, Result};
use crate::exact::{clear_denominators, dot_r, primitive_big, rat_vec, ri, to_i64, Rat};
use crate::minkowski::{summand_space, SummandSpace};
use crate::poly::{groebner, in_ideal, monomials_of_degree, span_dim, MonomialOrder, Poly};

/// Order used for all base ideal computations: graded lex with `t_1 > … > t_m`.
pub const BASE_ORDER: MonomialOrder = MonomialOrder::GrLex;

#[derive(Clone, Debug)]
pub struct BaseIdeal {
    pub m: usize,
    pub generators: Vec<Poly>,
    /// Generators in `w_i = t_i − t_{i+1}`, `i < m`.
    pub diff_generators: Vec<Poly>,
    pub truncation_k: u32,
    pub minimalized: bool,
    /// Reduced Gröbner basis in the t-variables.
    pub gb: Vec<Poly>,
}

fn power_sum(coeffs: &[Rat], k: u32) -> Poly {
    let m = coeffs.len();
    Poly::from_terms(
        m,
        coeffs.iter().enumerate().map(|(i, c)| {
            let mut e = vec![0; m];
            e[i] = k;
            (e, c.clone())
        }),
    )
}

/// `Σ_i ε_i d^i_j t_i^k` for every compact two-face and every plane coordinate `j`,
/// collapsed and scaled to primitive integer coefficients.
pub fn face_polynomials(q: &CrossSection, k: u32) -> Vec<Poly> {
    summand_space(q)
        .two_face_matrix
        .iter()
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .map(|row| {
            let ints = primitive_big(&clear_denominators(row));
            power_sum(&ints.iter().map(|x| ri(to_i64(x))).collect::<Vec<_>>(), k)
        })
        .collect()
}

fn in_vperp(s: &SummandSpace, d: &[Rat]) -> bool {
    d.len() == s.m && s.v_basis.iter().all(|v| dot_r(d, &rat_vec(v)).is_zero())
}

/// `g_{d,k} = Σ d_i t_i^k` for `d ∈ V⊥`.
pub fn g_poly(s: &SummandSpace, d: &[Rat], k: u32) -> Result<Poly> {
    if !in_vperp(s, d) {
        return Err(Error::Input("d is not in the orthogonal complement of V".into()));
    }
    Ok(power_sum(d, k))
}

/// `∏ t^{d⁺} − ∏ t^{d⁻}`.
pub fn toric_equation(s: &SummandSpace, d: &[i64]) -> Result<Poly> {
    if !in_vperp(s, &rat_vec(d)) {
        return Err(Error::Input("d is not in the orthogonal complement of V".into()));
    }
    let plus: Vec<u32> = d.iter().map(|&x| x.max(0) as u32).collect();
    let minus: Vec<u32> = d.iter().map(|&x| (-x).max(0) as u32).collect();
    if plus == minus {
        return Ok(Poly::zero(d.len()));
    }
    Ok(Poly::binomial(&plus, &minus))
}

fn generators_up_to(s: &SummandSpace, extra: u32) -> Vec<Poly> {
    let mut out = Vec::new();
    for d in &s.vperp {
        let cut: i64 = d.iter().filter(|&&x| x > 0).sum();
        for k in 1..=(cut.max(1) as u32 + extra) {
            out.push(power_sum(&rat_vec(d), k));
        }
    }
    out
}

/// Rewrites a t-polynomial in `w_i = t_i − t_{i+1}`; fails if it is not translation invariant.
pub fn to_difference_variables(p: &Poly) -> Result<Poly> {
    let m = p.nvars;
    if m == 0 {
        return Ok(p.clone());
    }
    // ring (w_1..w_{m-1}, t_m); t_i = t_m + Σ_{j≥i} w_j
    let images: Vec<Poly> = (0..m)
        .map(|i| {
            let mut img = Poly::var(m, m - 1);
            for j in i..m - 1 {
                img = &img + &Poly::var(m, j);
            }
            img
        })
        .collect();
    let q = p.substitute(&images);
    if !q.free_of(m - 1) {
        return Err(Error::Internal("base ideal generator is not translation invariant".into()));
    }
    Ok(Poly::from_terms(m - 1, q.terms.into_iter().map(|(mut e, c)| {
        e.pop();
        (e, c)
    })))
}

/// Minimal subset of the reduced Gröbner basis, in order of degree then leading term.
fn minimalize(gb: &[Poly]) -> Vec<Poly> {
    let mut sorted: Vec<Poly> = gb.to_vec();
    sorted.sort_by(|a, b| {
        let (ea, eb) = (a.leading(BASE_ORDER).unwrap().0, b.leading(BASE_ORDER).unwrap().0);
        BASE_ORDER.cmp(ea, eb)
    });
    let mut kept: Vec<Poly> = Vec::new();
    for g in sorted {
        let kgb = groebner(&kept, BASE_ORDER);
        if kept.is_empty() || !in_ideal(&g, &kgb, BASE_ORDER) {
            kept.push(g);
        }
    }
    kept
}

/// Builds `𝒥` from an HNF basis of `V⊥ ∩ ℤ^m` with `k ≤ Σ d⁺`, and checks that
/// `extra` further degrees leave the ideal unchanged.
pub fn base_ideal(s: &SummandSpace, extra: u32) -> Result<BaseIdeal> {
    let m = s.m;
    if s.vperp.is_empty() {
        return Ok(BaseIdeal { m, generators: vec![], diff_generators: vec![], truncation_k: 0, minimalized: true, gb: vec![] });
    }
    let gens = generators_up_to(s, 0);
    let gb = groebner(&gens, BASE_ORDER);
    if extra > 0 {
        let gb2 = groebner(&generators_up_to(s, extra), BASE_ORDER);
        if gb2 != gb {
            return Err(Error::Internal("truncation unstable: higher power sums enlarge the base ideal".into()));
        }
    }
    let generators = minimalize(&gb);
    let diff_generators = generators.iter().map(to_difference_variables).collect::<Result<Vec<_>>>()?;
    let truncation_k = s.vperp.iter().map(|d| d.iter().filter(|&&x| x > 0).sum::<i64>().max(1) as u32).max().unwrap_or(0);
    Ok(BaseIdeal { m, generators, diff_generators, truncation_k, minimalized: true, gb })
}

impl BaseIdeal {
    pub fn contains(&self, p: &Poly) -> bool {
        in_ideal(p, &self.gb, BASE_ORDER)
    }

    /// Gröbner basis of `𝒥` extended to a ring with `nvars` variables, t-variables at `offset`.
    pub fn gb_embedded(&self, nvars: usize, offset: usize) -> Vec<Poly> {
        self.gb.iter().map(|g| g.embed(nvars, offset)).collect()
    }
}

fn graded_piece(gens: &[Poly], n: usize, k: u32) -> Vec<Poly> {
    let mut out = Vec::new();
    for g in gens {
        let d = match g.total_degree() {
            Some(d) if d <= k => d,
            _ => continue,
        };
        for e in monomials_of_degree(n, k - d) {
            out.push(g.mul_term(&e, &Rat::from_integer(1.into())));
        }
    }
    out
}

/// `dim W_k` for `k = 1..=kmax`, with `W_k = 𝒥_k / 𝒥̃_k` in the difference variables.
pub fn obstruction_space_dims(b: &BaseIdeal, kmax: u32) -> Vec<usize> {
    let n = b.m.saturating_sub(1);
    let gens = &b.diff_generators;
    let linear: Vec<Poly> = gens.iter().filter(|g| g.total_degree() == Some(1)).cloned().collect();
    let mut out = Vec::new();
    for k in 1..=kmax {
        let jk = graded_piece(gens, n, k);
        let dim_j = span_dim(&jk);
        let mut tilde = graded_piece(&linear, n, k);
        if k >= 2 {
            for p in graded_piece(gens, n, k - 1) {
                for i in 0..n {
                    tilde.push(&p * &Poly::var(n, i));
                }
            }
        }
        // 𝒥̃_k ⊆ 𝒥_k, so the quotient dimension is a rank difference
        out.push(dim_j - span_dim(&tilde));
    }
    out
}

/// Every generator is fixed under `t_i ↦ t_i + s`.
pub fn translation_invariant(p: &Poly) -> bool {
    to_difference_variables(p).is_ok()
}

/// Vanishes when all variables coincide.
pub fn vanishes_on_diagonal(p: &Poly) -> bool {
    p.eval(&vec![ri(1); p.nvars]).is_zero()
}
