//! Zhu and C₂ projections of free-field expressions.
//!
//! [`zhu_project`] sends a field of weight `≤ 1` in Weyl pairs and Heisenberg
//! fields to a differential operator with polynomial coefficients:
//! `a_i ↦ ∂_i`, `a*_i ↦ x_i`, `∂^k a*_i ↦ 0` (`k ≥ 1`), `b_i ↦ h_i` (central),
//! with every `x` written to the left of every `∂`.
//! [`c2_project`] keeps only underived factors and returns the commutative symbol
//! `a_i ↦ ξ_i`, `a*_i ↦ x_i`, `b_i ↦ h_i`.

use std::collections::BTreeMap;
use std::fmt;

use super::field::{Field, Gen};
use crate::error::{Error, Result};
use crate::rational::{factorial, Q};

/// Variables of commutative polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X(u32),
    Xi(u32),
    H(u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{}", i + 1),
            Var::Xi(i) => write!(f, "ξ{}", i + 1),
            Var::H(i) => write!(f, "h{}", i + 1),
        }
    }
}

/// Sparse exponent vector of a polynomial monomial.
pub type Exps = Vec<(Var, u32)>;

fn mul_exps(a: &Exps, b: &Exps) -> Exps {
    let mut m: BTreeMap<Var, u32> = a.iter().copied().collect();
    for (v, e) in b {
        *m.entry(*v).or_insert(0) += e;
    }
    m.into_iter().filter(|(_, e)| *e > 0).collect()
}

fn fmt_exps(e: &Exps) -> String {
    e.iter().map(|(v, k)| if *k == 1 { v.to_string() } else { format!("{v}^{k}") }).collect::<Vec<_>>().join("·")
}

/// Commutative polynomial with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Exps, Q>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn constant(c: Q) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(c, Vec::new());
        p
    }

    pub fn var(v: Var) -> Polynomial {
        Polynomial::monomial(Q::ONE, &[(v, 1)])
    }

    pub fn monomial(c: Q, exps: &[(Var, u32)]) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(c, mul_exps(&exps.to_vec(), &Vec::new()));
        p
    }

    fn add_term(&mut self, c: Q, e: Exps) {
        if c.is_zero() {
            return;
        }
        let vanished = {
            let x = self.terms.entry(e.clone()).or_insert(Q::ZERO);
            *x += c;
            x.is_zero()
        };
        if vanished {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Q)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*c, e.clone());
        }
        out
    }

    pub fn scale(&self, c: Q) -> Polynomial {
        let mut out = Polynomial::zero();
        for (e, x) in &self.terms {
            out.add_term(*x * c, e.clone());
        }
        out
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        self.add(&o.scale(-Q::ONE))
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(*c1 * *c2, mul_exps(e1, e2));
            }
        }
        out
    }

    /// Partial derivative with respect to `v`.
    pub fn diff(&self, v: Var) -> Polynomial {
        let mut out = Polynomial::zero();
        for (e, c) in &self.terms {
            if let Some(pos) = e.iter().position(|(w, _)| *w == v) {
                let k = e[pos].1;
                let mut ne = e.clone();
                if k == 1 {
                    ne.remove(pos);
                } else {
                    ne[pos].1 -= 1;
                }
                out.add_term(*c * Q::from(k as i64), ne);
            }
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().map(|(_, k)| *k).sum()).max().unwrap_or(0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| if e.is_empty() { c.to_string() } else { format!("{c}·{}", fmt_exps(e)) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Normal-form monomial `x^a h^c ∂^b` of the Weyl algebra tensored with central `h`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct DiffMono {
    /// Exponents of `x_i` and `h_i` (`Var::X`, `Var::H`).
    coeff: Exps,
    /// Exponents of `∂_i` (stored under `Var::X(i)`).
    der: Exps,
}

/// Differential operator `Σ c · x^a h^c ∂^b` with polynomial coefficients on the left.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffOp {
    terms: BTreeMap<DiffMono, Q>,
}

impl DiffOp {
    pub fn zero() -> DiffOp {
        DiffOp::default()
    }

    pub fn constant(c: Q) -> DiffOp {
        let mut d = DiffOp::zero();
        d.add_term(c, DiffMono { coeff: Vec::new(), der: Vec::new() });
        d
    }

    /// Multiplication by `x_i`.
    pub fn x(i: u32) -> DiffOp {
        DiffOp::from_parts(Q::ONE, &[(Var::X(i), 1)], &[])
    }

    /// `∂/∂x_i`.
    pub fn d(i: u32) -> DiffOp {
        DiffOp::from_parts(Q::ONE, &[], &[(Var::X(i), 1)])
    }

    /// Central variable `h_i`.
    pub fn h(i: u32) -> DiffOp {
        DiffOp::from_parts(Q::ONE, &[(Var::H(i), 1)], &[])
    }

    /// `c · (coefficient monomial) · ∂^der`, with `der` given as `(Var::X(i), k)`.
    pub fn from_parts(c: Q, coeff: &[(Var, u32)], der: &[(Var, u32)]) -> DiffOp {
        let mut d = DiffOp::zero();
        d.add_term(c, DiffMono { coeff: mul_exps(&coeff.to_vec(), &Vec::new()), der: mul_exps(&der.to_vec(), &Vec::new()) });
        d
    }

    fn add_term(&mut self, c: Q, m: DiffMono) {
        if c.is_zero() {
            return;
        }
        let vanished = {
            let x = self.terms.entry(m.clone()).or_insert(Q::ZERO);
            *x += c;
            x.is_zero()
        };
        if vanished {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, o: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*c, m.clone());
        }
        out
    }

    pub fn scale(&self, c: Q) -> DiffOp {
        let mut out = DiffOp::zero();
        for (m, x) in &self.terms {
            out.add_term(*x * c, m.clone());
        }
        out
    }

    pub fn sub(&self, o: &DiffOp) -> DiffOp {
        self.add(&o.scale(-Q::ONE))
    }

    /// Operator composition `self ∘ other`.
    pub fn mul(&self, o: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                // ∂^b · x^a = Σ_j Π_i C(b_i, j_i) a_i!/(a_i − j_i)! x^{a−j} ∂^{b−j}
                let mut partial: Vec<(Q, Exps, Exps)> = vec![(Q::ONE, Vec::new(), Vec::new())];
                let vars: std::collections::BTreeSet<Var> =
                    m1.der.iter().map(|(v, _)| *v).chain(m2.coeff.iter().map(|(v, _)| *v)).collect();
                let mut rest_coeff: Exps = Vec::new();
                for v in vars {
                    let b = m1.der.iter().find(|(w, _)| *w == v).map_or(0, |x| x.1);
                    let a = m2.coeff.iter().find(|(w, _)| *w == v).map_or(0, |x| x.1);
                    if matches!(v, Var::H(_)) {
                        rest_coeff.push((v, a));
                        continue;
                    }
                    let mut next = Vec::new();
                    for (c, xe, de) in &partial {
                        for j in 0..=b.min(a) {
                            let k = crate::rational::binom(b as i64, j) * factorial(a) / factorial(a - j);
                            let mut xe2 = xe.clone();
                            if a - j > 0 {
                                xe2.push((v, a - j));
                            }
                            let mut de2 = de.clone();
                            if b - j > 0 {
                                de2.push((v, b - j));
                            }
                            next.push((*c * k, xe2, de2));
                        }
                    }
                    partial = next;
                }
                for (c, xe, de) in partial {
                    let coeff = mul_exps(&mul_exps(&m1.coeff, &xe), &rest_coeff);
                    let der = mul_exps(&de, &m2.der);
                    out.add_term(*c1 * *c2 * c, DiffMono { coeff, der });
                }
            }
        }
        out
    }

    /// Multiplication operator by a polynomial in `x` and `h` (no `ξ` allowed).
    pub fn from_polynomial(p: &Polynomial) -> DiffOp {
        let mut out = DiffOp::zero();
        for (e, c) in p.terms() {
            assert!(e.iter().all(|(v, _)| !matches!(v, Var::Xi(_))), "ξ is not a multiplication operator");
            out.add_term(*c, DiffMono { coeff: e.clone(), der: Vec::new() });
        }
        out
    }

    /// Principal symbol with `∂_i ↦ ξ_i`; exact on operators of order ≤ 1.
    pub fn symbol(&self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let xi: Exps = m
                .der
                .iter()
                .map(|(v, k)| match v {
                    Var::X(i) => (Var::Xi(*i), *k),
                    _ => unreachable!("derivatives are indexed by x"),
                })
                .collect();
            out.add_term(*c, mul_exps(&m.coeff, &xi));
        }
        out
    }

    /// Maximal number of derivatives in a term.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|m| m.der.iter().map(|(_, k)| *k).sum()).max().unwrap_or(0)
    }

    /// Commutator `[self, other]`.
    pub fn bracket(&self, o: &DiffOp) -> DiffOp {
        self.mul(o).sub(&o.mul(self))
    }

    /// Apply to a polynomial in `x` (and central `h`).
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut q = p.clone();
            for (v, k) in &m.der {
                for _ in 0..*k {
                    q = q.diff(*v);
                }
            }
            out = out.add(&q.mul(&Polynomial::monomial(*c, &m.coeff)));
        }
        out
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = c.to_string();
                if !m.coeff.is_empty() {
                    s.push('·');
                    s.push_str(&fmt_exps(&m.coeff));
                }
                for (v, k) in &m.der {
                    let Var::X(i) = v else { unreachable!() };
                    s.push_str(&format!("·∂{}", i + 1));
                    if *k > 1 {
                        s.push_str(&format!("^{k}"));
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Zhu projection of a field of weight `≤ 1` in Weyl pairs and Heisenberg fields.
pub fn zhu_project(f: &Field) -> Result<DiffOp> {
    let mut out = DiffOp::zero();
    for (m, c) in f.terms() {
        let w = super::field::monomial_weight(m);
        if w > Q::ONE {
            return Err(Error::Unsupported(format!(
                "Zhu projection is implemented for weight ≤ 1; {} has weight {w}",
                super::notation::format_monomial(m)
            )));
        }
        let mut coeff: Exps = Vec::new();
        let mut der: Exps = Vec::new();
        let mut vanishes = false;
        for fac in m {
            match (fac.gen, fac.der) {
                (Gen::AStar(i), 0) => coeff = mul_exps(&coeff, &vec![(Var::X(i), 1)]),
                (Gen::AStar(_), _) => vanishes = true,
                (Gen::A(i), 0) => der = mul_exps(&der, &vec![(Var::X(i), 1)]),
                (Gen::B(i), 0) => coeff = mul_exps(&coeff, &vec![(Var::H(i), 1)]),
                _ => {
                    return Err(Error::Unsupported(format!(
                        "Zhu projection does not handle {}",
                        super::notation::format_factor(*fac)
                    )))
                }
            }
        }
        if !vanishes {
            out.add_term(*c, DiffMono { coeff, der });
        }
    }
    Ok(out)
}

/// C₂ symbol: drop monomials with derivatives and read off `x`, `ξ`, `h`.
pub fn c2_project(f: &Field) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for (m, c) in f.terms() {
        if m.iter().any(|x| x.der > 0) {
            continue;
        }
        let mut e: Exps = Vec::new();
        for fac in m {
            let v = match fac.gen {
                Gen::AStar(i) => Var::X(i),
                Gen::A(i) => Var::Xi(i),
                Gen::B(i) => Var::H(i),
                g => {
                    return Err(Error::Unsupported(format!(
                        "C₂ symbol does not handle {}",
                        super::notation::format_gen(g)
                    )))
                }
            };
            e = mul_exps(&e, &vec![(v, 1)]);
        }
        out.add_term(*c, e);
    }
    Ok(out)
}
