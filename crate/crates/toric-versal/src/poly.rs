//! Sparse multivariate polynomials over ℚ and a small Buchberger procedure.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::exact::{ri, Rat};

pub type Exp = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    GrevLex,
}

impl MonomialOrder {
    /// `Greater` when `a` is the larger monomial.
    pub fn cmp(self, a: &[u32], b: &[u32]) -> Ordering {
        let deg = |e: &[u32]| e.iter().map(|&x| x as u64).sum::<u64>();
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrLex => deg(a).cmp(&deg(b)).then_with(|| a.cmp(b)),
            MonomialOrder::GrevLex => deg(a).cmp(&deg(b)).then_with(|| {
                for (x, y) in a.iter().zip(b).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Exp, Rat>,
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn exp_sub(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Poly {
        Poly::monomial(vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, Rat::one())
    }

    pub fn monomial(exp: Exp, c: Rat) -> Poly {
        let mut p = Poly::zero(exp.len());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// `x^a − x^b`.
    pub fn binomial(a: &[u32], b: &[u32]) -> Poly {
        let mut p = Poly::monomial(a.to_vec(), Rat::one());
        p.add_term(b.to_vec(), -Rat::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exp, Rat)>) -> Poly {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exp, c: Rat) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn mul_term(&self, e: &[u32], c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(f, x)| (f.iter().zip(e).map(|(a, b)| a + b).collect(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::constant(self.nvars, Rat::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn homogeneous_part(&self, k: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == k).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn leading(&self, order: MonomialOrder) -> Option<(&Exp, &Rat)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn monic(&self, order: MonomialOrder) -> Poly {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&(Rat::one() / c)),
        }
    }

    /// Replaces variable `i` by `images[i]` (all in a common target ring).
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let target = images.first().map_or(0, |p| p.nvars);
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = &term * &images[i].pow(k);
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Embeds into a ring with `nvars` variables, variable `i` going to `offset + i`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Poly {
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = vec![0; nvars];
                    f[offset..offset + e.len()].copy_from_slice(e);
                    (f, c.clone())
                })
                .collect(),
        }
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            s += t;
        }
        s
    }

    /// True iff no term uses variable `i`.
    pub fn free_of(&self, i: usize) -> bool {
        self.terms.keys().all(|e| e[i] == 0)
    }

    pub fn display(&self, names: &[String], order: MonomialOrder) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut ts: Vec<(&Exp, &Rat)> = self.terms.iter().collect();
        ts.sort_by(|a, b| order.cmp(b.0, a.0));
        let mut out = String::new();
        for (k, (e, c)) in ts.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { names[i].clone() } else { format!("{}^{}", names[i], x) })
                .collect();
            let mag = c.abs();
            let coef = if mono.is_empty() || !mag.is_one() { Some(mag.to_string()) } else { None };
            let body = match coef {
                Some(cs) if mono.is_empty() => cs,
                Some(cs) => format!("{}*{}", cs, mono.join("*")),
                None => mono.join("*"),
            };
            if k == 0 {
                out.push_str(if c.is_negative() { "-" } else { "" });
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{}", i)).collect();
        write!(f, "{}", self.display(&names, MonomialOrder::GrLex))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }
}

impl<'a> Neg for &'a Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                p.add_term(e.iter().zip(f).map(|(a, b)| a + b).collect(), c * d);
            }
        }
        p
    }
}

/// Full normal form of `f` modulo `g` (a Gröbner basis for a true normal form).
pub fn reduce(f: &Poly, g: &[Poly], order: MonomialOrder) -> Poly {
    let leads: Vec<(Exp, Rat)> = g
        .iter()
        .filter_map(|p| p.leading(order).map(|(e, c)| (e.clone(), c.clone())))
        .collect();
    let gs: Vec<&Poly> = g.iter().filter(|p| !p.is_zero()).collect();
    let mut p = f.clone();
    let mut r = Poly::zero(f.nvars);
    while let Some((e, c)) = p.leading(order).map(|(e, c)| (e.clone(), c.clone())) {
        match leads.iter().position(|(l, _)| divides(l, &e)) {
            Some(i) => {
                let q = exp_sub(&e, &leads[i].0);
                let k = &c / &leads[i].1;
                p = &p - &gs[i].mul_term(&q, &k);
            }
            None => {
                p.terms.remove(&e);
                r.add_term(e, c);
            }
        }
    }
    r
}

fn s_poly(a: &Poly, b: &Poly, order: MonomialOrder) -> Poly {
    let (ea, ca) = a.leading(order).unwrap();
    let (eb, cb) = b.leading(order).unwrap();
    let l = lcm(ea, eb);
    &a.mul_term(&exp_sub(&l, ea), &(Rat::one() / ca)) - &b.mul_term(&exp_sub(&l, eb), &(Rat::one() / cb))
}

/// Reduced Gröbner basis, sorted by ascending leading monomial.
pub fn groebner(gens: &[Poly], order: MonomialOrder) -> Vec<Poly> {
    let mut g: Vec<Poly> = Vec::new();
    for p in gens {
        let r = reduce(p, &g, order);
        if !r.is_zero() {
            g.push(r.monic(order));
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (ei, _) = g[i].leading(order).unwrap();
        let (ej, _) = g[j].leading(order).unwrap();
        if ei.iter().zip(ej).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let s = s_poly(&g[i], &g[j], order);
        let r = reduce(&s, &g, order);
        if !r.is_zero() {
            let k = g.len();
            g.push(r.monic(order));
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    interreduce(g, order)
}

fn interreduce(mut g: Vec<Poly>, order: MonomialOrder) -> Vec<Poly> {
    // drop elements whose leading monomial is divisible by another one
    let mut keep: Vec<Poly> = Vec::new();
    g.sort_by(|a, b| order.cmp(a.leading(order).unwrap().0, b.leading(order).unwrap().0));
    for p in g {
        let e = p.leading(order).unwrap().0.clone();
        if !keep.iter().any(|q| divides(q.leading(order).unwrap().0, &e)) {
            keep.push(p);
        }
    }
    let mut out = Vec::new();
    for i in 0..keep.len() {
        let others: Vec<Poly> = keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
        let (e, c) = keep[i].leading(order).map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut tail = keep[i].clone();
        tail.terms.remove(&e);
        let mut p = reduce(&tail, &others, order);
        p.add_term(e, c);
        out.push(p.monic(order));
    }
    out
}

pub fn in_ideal(f: &Poly, gb: &[Poly], order: MonomialOrder) -> bool {
    reduce(f, gb, order).is_zero()
}

pub fn ideal_eq(a: &[Poly], b: &[Poly], order: MonomialOrder) -> bool {
    groebner(a, order) == groebner(b, order)
}

/// All exponent vectors of total degree `d` in `n` variables, lexicographically descending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exp> {
    fn rec(n: usize, d: u32, prefix: &mut Exp, out: &mut Vec<Exp>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Dimension of the span of some polynomials, by exact row reduction on their coefficients.
pub fn span_dim(ps: &[Poly]) -> usize {
    let mut keys: Vec<&Exp> = ps.iter().flat_map(|p| p.terms.keys()).collect();
    keys.sort();
    keys.dedup();
    let m: Vec<Vec<Rat>> = ps
        .iter()
        .map(|p| keys.iter().map(|k| p.terms.get(*k).cloned().unwrap_or_else(Rat::zero)).collect())
        .collect();
    if m.is_empty() {
        return 0;
    }
    crate::exact::rank(&m)
}

/// `Σ coeffs_i · x_i` as a linear form.
pub fn linear_form(coeffs: &[Rat]) -> Poly {
    let n = coeffs.len();
    Poly::from_terms(n, coeffs.iter().enumerate().map(|(i, c)| {
        let mut e = vec![0; n];
        e[i] = 1;
        (e, c.clone())
    }))
}

pub fn int_linear_form(coeffs: &[i64]) -> Poly {
    linear_form(&coeffs.iter().map(|&c| ri(c)).collect::<Vec<_>>())
}

/// Parses `+ - * ^ ( )`, integers, `a/b` and the given variable names.
pub fn parse_poly(src: &str, names: &[&str]) -> Result<Poly, String> {
    struct P<'a> {
        toks: Vec<String>,
        pos: usize,
        names: &'a [&'a str],
    }
    impl<'a> P<'a> {
        fn peek(&self) -> Option<&str> {
            self.toks.get(self.pos).map(|s| s.as_str())
        }
        fn next(&mut self) -> Option<String> {
            let t = self.toks.get(self.pos).cloned();
            self.pos += 1;
            t
        }
        fn expr(&mut self) -> Result<Poly, String> {
            let mut acc = match self.peek() {
                Some("-") => {
                    self.pos += 1;
                    -&self.term()?
                }
                Some("+") => {
                    self.pos += 1;
                    self.term()?
                }
                _ => self.term()?,
            };
            while let Some(op) = self.peek() {
                let op = op.to_string();
                if op != "+" && op != "-" {
                    break;
                }
                self.pos += 1;
                let t = self.term()?;
                acc = if op == "+" { &acc + &t } else { &acc - &t };
            }
            Ok(acc)
        }
        fn term(&mut self) -> Result<Poly, String> {
            let mut acc = self.power()?;
            while self.peek() == Some("*") {
                self.pos += 1;
                let f = self.power()?;
                acc = &acc * &f;
            }
            Ok(acc)
        }
        fn power(&mut self) -> Result<Poly, String> {
            let base = self.atom()?;
            if self.peek() == Some("^") {
                self.pos += 1;
                let k: u32 = self.next().ok_or("missing exponent")?.parse().map_err(|_| "bad exponent")?;
                return Ok(base.pow(k));
            }
            Ok(base)
        }
        fn atom(&mut self) -> Result<Poly, String> {
            let n = self.names.len();
            let t = self.next().ok_or("unexpected end of input")?;
            if t == "(" {
                let e = self.expr()?;
                if self.next().as_deref() != Some(")") {
                    return Err("unbalanced parenthesis".into());
                }
                return Ok(e);
            }
            if t.chars().all(|c| c.is_ascii_digit()) {
                let num: i64 = t.parse().map_err(|_| "bad integer")?;
                if self.peek() == Some("/") {
                    self.pos += 1;
                    let den: i64 = self.next().ok_or("missing denominator")?.parse().map_err(|_| "bad denominator")?;
                    return Ok(Poly::constant(n, crate::exact::rat(num, den)));
                }
                return Ok(Poly::constant(n, ri(num)));
            }
            match self.names.iter().position(|&v| v == t) {
                Some(i) => Ok(Poly::var(n, i)),
                None => Err(format!("unknown variable {}", t)),
            }
        }
    }
    let mut toks = Vec::new();
    let mut cur = String::new();
    for ch in src.chars() {
        if ch.is_alphanumeric() || ch == '_' {
            cur.push(ch);
            continue;
        }
        if !cur.is_empty() {
            toks.push(std::mem::take(&mut cur));
        }
        if "+-*^()/".contains(ch) {
            toks.push(ch.to_string());
        } else if !ch.is_whitespace() {
            return Err(format!("unexpected character {:?}", ch));
        }
    }
    if !cur.is_empty() {
        toks.push(cur);
    }
    let mut p = P { toks, pos: 0, names };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err("trailing input".into());
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn orders() {
        use MonomialOrder::*;
        assert_eq!(Lex.cmp(&[1, 0, 0], &[0, 5, 0]), Ordering::Greater);
        assert_eq!(GrLex.cmp(&[1, 0, 0], &[0, 1, 1]), Ordering::Less);
        // x1 x3 vs x2^2: grevlex prefers x2^2
        assert_eq!(GrevLex.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(GrLex.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Greater);
    }

    #[test]
    fn twisted_cubic_basis() {
        // (y - x^2, z - x^3) under lex z > y > x... written with x3 > x2 > x1
        let n = 3;
        let (a, b, c) = (x(n, 2), x(n, 1), x(n, 0));
        let f = &b - &a.pow(2);
        let g = &c - &a.pow(3);
        let gb = groebner(&[f.clone(), g.clone()], MonomialOrder::Lex);
        assert!(in_ideal(&(&(&a * &c) - &b.pow(2)), &gb, MonomialOrder::Lex));
        assert!(!in_ideal(&a, &gb, MonomialOrder::Lex));
    }

    #[test]
    fn substitution_and_embed() {
        let p = &x(2, 0) * &x(2, 1);
        let q = p.substitute(&[x(3, 2), x(3, 2)]);
        assert_eq!(q, x(3, 2).pow(2));
        assert_eq!(p.embed(4, 2), &x(4, 2) * &x(4, 3));
    }

    #[test]
    fn parsing() {
        let p = parse_poly("Z1*Z2 - t1^2 - (t2 - t1)*3/2", &["Z1", "Z2", "t1", "t2"]).unwrap();
        let names = ["Z1", "Z2", "t1", "t2"];
        let q = &(&(&x(4, 0) * &x(4, 1)) - &x(4, 2).pow(2)) - &(&x(4, 3) - &x(4, 2)).scale(&crate::exact::rat(3, 2));
        assert_eq!(p, q);
        assert!(parse_poly("Z3", &names).is_err());
    }

    #[test]
    fn monomial_listing() {
        assert_eq!(monomials_of_degree(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials_of_degree(3, 0), vec![vec![0, 0, 0]]);
    }
}
