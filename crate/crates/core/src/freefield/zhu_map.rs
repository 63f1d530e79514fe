//! The realization at the level of Zhu algebras.
//!
//! `π̃(a) = −Σ_α [e^{−ad u(x)} a]_α ∂_α + (z(l)-part of e^{−ad u(x)} a)`, with
//! `u(x) = Σ_α x_α e_α`. The series stops after three terms because `ad u`
//! shifts the `ξ`-grading by one and `g` has degrees −1, 0, 1 only.

use super::RealizationMap;
use crate::error::Result;
use crate::liealg::{MatrixLieAlgebra, ParabolicDatum};
use crate::rational::Q;
use crate::vertex::{c2_project, zhu_project, DiffOp, Polynomial, Var};

/// Element of `g ⊗ ℚ[x]`.
type PolyElem = Vec<Polynomial>;

fn ad_u(g: &MatrixLieAlgebra, p: &ParabolicDatum, v: &PolyElem) -> PolyElem {
    let dim = g.dim();
    let mut out = vec![Polynomial::zero(); dim];
    for (al, &ea) in p.u_basis(g).iter().enumerate() {
        let x = Polynomial::var(Var::X(al as u32));
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, s) in g.bracket_basis(ea, j) {
                out[*t] = out[*t].add(&c.mul(&x).scale(*s));
            }
        }
    }
    out
}

/// `e^{−ad u(x)} a` for a basis element `a`.
pub fn conjugated(g: &MatrixLieAlgebra, p: &ParabolicDatum, i: usize) -> Vec<Polynomial> {
    let dim = g.dim();
    let mut term: PolyElem = (0..dim).map(|j| if j == i { Polynomial::constant(Q::ONE) } else { Polynomial::zero() }).collect();
    let mut sum = term.clone();
    let mut j = 1i64;
    loop {
        term = ad_u(g, p, &term).into_iter().map(|c| c.scale(-Q::ONE / Q::int(j))).collect();
        if term.iter().all(|c| c.is_zero()) {
            break;
        }
        for (s, t) in sum.iter_mut().zip(&term) {
            *s = s.add(t);
        }
        j += 1;
    }
    sum
}

/// `π̃(b_i)` for every basis element `b_i` of `g`.
pub fn zhu_level_map(g: &MatrixLieAlgebra, p: &ParabolicDatum) -> Vec<DiffOp> {
    let u = p.u_basis(g);
    let l = p.l_basis(g);
    let center: Vec<Q> = (0..g.dim()).map(|j| if l.contains(&j) { p.center_coordinate(g, &g.unit(j)) } else { Q::ZERO }).collect();
    (0..g.dim())
        .map(|i| {
            let c = conjugated(g, p, i);
            let mut op = DiffOp::zero();
            for (al, &ea) in u.iter().enumerate() {
                op = op.sub(&DiffOp::from_polynomial(&c[ea]).mul(&DiffOp::d(al as u32)));
            }
            let mut hpart = Polynomial::zero();
            for (j, cj) in c.iter().enumerate() {
                if !center[j].is_zero() {
                    hpart = hpart.add(&cj.scale(center[j]));
                }
            }
            op.add(&DiffOp::from_polynomial(&hpart).mul(&DiffOp::h(0)))
        })
        .collect()
}

/// Symbol of a first-order operator.
pub fn gr_symbol(op: &DiffOp) -> Polynomial {
    op.symbol()
}

/// All monomials in `n` variables `x` of degree `≤ d`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::constant(Q::ONE)];
    let mut layer = vec![(Polynomial::constant(Q::ONE), 0usize)];
    for _ in 0..d {
        let mut next = Vec::new();
        for (m, start) in &layer {
            for v in *start..n {
                let nm = m.mul(&Polynomial::var(Var::X(v as u32)));
                out.push(nm.clone());
                next.push((nm, v));
            }
        }
        layer = next;
    }
    out
}

/// Failures of `[π̃(a), π̃(b)] = π̃([a, b])` over all pairs of basis elements,
/// checked as operators and on all monomials of degree `≤ degree`.
pub fn check_zhu_homomorphism(g: &MatrixLieAlgebra, p: &ParabolicDatum, degree: u32) -> Vec<String> {
    let pi = zhu_level_map(g, p);
    let monos = monomials_up_to(p.dim_u, degree);
    let mut fails = Vec::new();
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let lhs = pi[i].bracket(&pi[j]);
            let mut rhs = DiffOp::zero();
            for (t, c) in g.bracket_basis(i, j) {
                rhs = rhs.add(&pi[*t].scale(*c));
            }
            if lhs != rhs {
                fails.push(format!("[{}, {}]: {} vs {}", g.basis[i].label, g.basis[j].label, lhs, rhs));
                continue;
            }
            if let Some(m) = monos.iter().find(|m| lhs.apply(m) != rhs.apply(m)) {
                fails.push(format!("[{}, {}] on {}", g.basis[i].label, g.basis[j].label, m));
            }
        }
    }
    fails
}

/// Failures of `zhu_project ∘ R = π̃` and `c2_project ∘ R = gr π̃`, basis element by basis element.
pub fn check_zhu_diagram(r: &RealizationMap) -> Result<Vec<String>> {
    let pi = zhu_level_map(&r.algebra, &r.parabolic);
    let mut fails = Vec::new();
    for (i, img) in r.images.iter().enumerate() {
        let z = zhu_project(img)?;
        if z != pi[i] {
            fails.push(format!("Zhu image of {}: {} vs {}", r.label(i), z, pi[i]));
        }
        let c = c2_project(img)?;
        if c != pi[i].symbol() {
            fails.push(format!("C2 image of {}: {} vs {}", r.label(i), c, pi[i].symbol()));
        }
    }
    Ok(fails)
}
