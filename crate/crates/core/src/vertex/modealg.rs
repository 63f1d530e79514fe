//! Normally ordered mode operators for even free fields.
//!
//! A mode operator is a finite sum of products `C·A`, where `C` is a commutative
//! product of creation modes `X_(k)`, `k < 0`, and `A` a commutative product of
//! annihilation modes, `k ≥ 0`. The annihilation depth of `A` is the depth of the
//! Fock word it pairs with: `a_(k)`, `a*_(k)`, `φ_(k)` pair with modes of depth
//! `k + 1`, `b_(k)` with `b_(−k)` of depth `k`.
//!
//! On the Fock module the annihilation modes act as (scaled) partial derivatives
//! in the paired creation modes. When the Heisenberg and symplectic forms are
//! nondegenerate, a normally ordered operator therefore vanishes on every state
//! of depth `≤ D` exactly when all its terms with annihilation depth `≤ D` have
//! zero coefficient (induct on the annihilation monomial, evaluating on the
//! paired word). This turns the state-by-state comparison into a coefficient
//! comparison whose cost is independent of the number of Fock states.
//!
//! Commutators `[P_(m), R_(n)]` of monomials are expanded from the generator
//! brackets only: `P_(m)R_(n) − R_(n)P_(m)` keeps exactly the terms of each
//! product with at least one contraction between annihilators of the left
//! factor and creators of the right one.

use std::collections::HashMap;

use super::field::{Factor, Field, FieldSystem, Gen};
use super::fock::free_bracket;
use crate::rational::Q;

/// A single mode `X_(k)` of a generator.
pub type Mode = (Gen, i64);

/// Canonical key of a normally ordered term: sorted creators, sorted annihilators.
pub type TermKey = (Vec<Mode>, Vec<Mode>);

/// A normally ordered mode operator.
pub type ModeOp = HashMap<TermKey, Q>;

/// Depth of the Fock mode paired with the annihilation mode `g_(k)`.
pub fn annihilation_depth(g: Gen, k: i64) -> i64 {
    match g {
        Gen::B(_) => k,
        _ => k + 1,
    }
}

/// The Fock word on which the annihilation monomial `ann` first acts nontrivially.
pub fn paired_word(sys: &FieldSystem, ann: &[Mode]) -> Vec<Mode> {
    let mut w: Vec<Mode> = ann
        .iter()
        .map(|&(g, k)| match g {
            Gen::B(_) => (sys.partners(g).first().copied().unwrap_or(g), -k),
            _ => (sys.partners(g).first().copied().unwrap_or(g), -k - 1),
        })
        .collect();
    w.sort_unstable();
    w
}

fn key_depth(a: &[Mode]) -> i64 {
    a.iter().map(|&(g, k)| annihilation_depth(g, k)).sum()
}

/// `(−1)^d n(n−1)⋯(n−d+1)`: coefficient of `X_(n−d)` in `(∂^d X)_(n)`.
fn der_coeff(d: u32, n: i64) -> Q {
    let c: Q = (0..d as i64).map(|i| Q::int(n - i)).product();
    if d % 2 == 0 {
        c
    } else {
        -c
    }
}

/// True when the system and fields stay inside the scope of this module: even
/// free generators only, with nondegenerate Heisenberg and symplectic forms.
pub fn supports(sys: &FieldSystem, fields: &[&Field]) -> bool {
    let forms_ok = |m: &crate::linalg::Mat| m.rows() == 0 || m.rank() == m.rows();
    forms_ok(&sys.heisenberg)
        && forms_ok(&sys.symplectic)
        && fields.iter().all(|f| f.generators().iter().all(|g| !g.is_odd() && !g.is_current()))
}

fn push(op: &mut ModeOp, c: Q, mut cre: Vec<Mode>, mut ann: Vec<Mode>) {
    if c.is_zero() {
        return;
    }
    cre.sort_unstable();
    ann.sort_unstable();
    let e = op.entry((cre, ann)).or_insert(Q::ZERO);
    *e += c;
}

/// Distribute `left` over the creation factors `idx` as field modes `≤ −1`,
/// calling `emit` with the coefficient and the creation modes.
fn compositions(m: &[Factor], idx: &[usize], left: i64, c: Q, acc: &mut Vec<Mode>, emit: &mut dyn FnMut(Q, &[Mode])) {
    let Some((&i, rest)) = idx.split_first() else {
        if left == 0 {
            emit(c, acc);
        }
        return;
    };
    let f = m[i];
    let (lo, hi) = if rest.is_empty() { (left, left) } else { (left + rest.len() as i64, -1) };
    if hi > -1 || lo > hi {
        return;
    }
    for j in lo..=hi {
        acc.push((f.gen, j - f.der as i64));
        compositions(m, rest, left - j, c * der_coeff(f.der, j), acc, emit);
        acc.pop();
    }
}

/// Normally ordered expansion of `M_(n)` for a monomial `M`, keeping the terms of
/// annihilation depth `≤ budget`.
pub fn expand_monomial(m: &[Factor], n: i64, budget: i64) -> Vec<(Q, Vec<Mode>, Vec<Mode>)> {
    let mut out = Vec::new();
    if m.is_empty() {
        if n == -1 {
            out.push((Q::ONE, Vec::new(), Vec::new()));
        }
        return out;
    }
    let total = n - (m.len() as i64 - 1);
    let mut ann = Vec::new();
    let mut cre_idx = Vec::new();
    expand_rec(m, 0, budget, total, Q::ONE, &mut ann, &mut cre_idx, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn expand_rec(
    m: &[Factor],
    i: usize,
    budget: i64,
    left: i64,
    c: Q,
    ann: &mut Vec<Mode>,
    cre_idx: &mut Vec<usize>,
    out: &mut Vec<(Q, Vec<Mode>, Vec<Mode>)>,
) {
    if i == m.len() {
        let mut acc = Vec::new();
        let ann_now = ann.clone();
        compositions(m, cre_idx, left, c, &mut acc, &mut |c, cre| out.push((c, cre.to_vec(), ann_now.clone())));
        return;
    }
    let f = m[i];
    cre_idx.push(i);
    expand_rec(m, i + 1, budget, left, c, ann, cre_idx, out);
    cre_idx.pop();
    // b_(0) is central and kills the vacuum, so it acts as zero.
    let k0 = if matches!(f.gen, Gen::B(_)) { 1 } else { 0 };
    let mut k = k0;
    while annihilation_depth(f.gen, k) <= budget {
        let j = k + f.der as i64;
        ann.push((f.gen, k));
        expand_rec(m, i + 1, budget - annihilation_depth(f.gen, k), left - j, c * der_coeff(f.der, j), ann, cre_idx, out);
        ann.pop();
        k += 1;
    }
}

/// Field mode `F_(n)` truncated to annihilation depth `≤ budget`.
pub fn expand_field(f: &Field, n: i64, budget: i64) -> ModeOp {
    let mut op = ModeOp::new();
    for (m, c) in f.terms() {
        for (t, cre, ann) in expand_monomial(m, n, budget) {
            push(&mut op, *c * t, cre, ann);
        }
    }
    op
}

/// Terms of `X_(mx) Y_(ny)` with at least one contraction between annihilators
/// of `X` and creators of `Y`, truncated to annihilation depth `≤ budget`, added
/// to `op` with factor `c`.
fn contracted_product(sys: &FieldSystem, x: &[Factor], mx: i64, y: &[Factor], ny: i64, budget: i64, c: Q, op: &mut ModeOp) {
    if x.is_empty() || y.is_empty() {
        return;
    }
    let total = mx - (x.len() as i64 - 1);
    for (cy, cre_y, ann_y) in expand_monomial(y, ny, budget) {
        let mut st = Contract {
            sys,
            x,
            cre_y: &cre_y,
            used: vec![false; cre_y.len()],
            ann: Vec::new(),
            cre_idx: Vec::new(),
            contractions: 0,
        };
        let base = c * cy;
        st.rec(0, budget - key_depth(&ann_y), total, base, &ann_y, op);
    }
}

struct Contract<'a> {
    sys: &'a FieldSystem,
    x: &'a [Factor],
    cre_y: &'a [Mode],
    used: Vec<bool>,
    ann: Vec<Mode>,
    cre_idx: Vec<usize>,
    contractions: usize,
}

impl Contract<'_> {
    fn rec(&mut self, i: usize, budget: i64, left: i64, c: Q, ann_y: &[Mode], op: &mut ModeOp) {
        if i == self.x.len() {
            if self.contractions == 0 {
                return;
            }
            let rest_y: Vec<Mode> = self.cre_y.iter().zip(&self.used).filter(|(_, u)| !**u).map(|(m, _)| *m).collect();
            let mut ann = self.ann.clone();
            ann.extend_from_slice(ann_y);
            let mut acc = Vec::new();
            compositions(self.x, &self.cre_idx.clone(), left, c, &mut acc, &mut |c, cre| {
                let mut all = cre.to_vec();
                all.extend_from_slice(&rest_y);
                push(op, c, all, ann.clone());
            });
            return;
        }
        let f = self.x[i];
        let d = f.der as i64;
        // Creator.
        self.cre_idx.push(i);
        self.rec(i + 1, budget, left, c, ann_y, op);
        self.cre_idx.pop();
        // Uncontracted annihilator.
        let mut k = if matches!(f.gen, Gen::B(_)) { 1 } else { 0 };
        while annihilation_depth(f.gen, k) <= budget {
            self.ann.push((f.gen, k));
            self.rec(i + 1, budget - annihilation_depth(f.gen, k), left - k - d, c * der_coeff(f.der, k + d), ann_y, op);
            self.ann.pop();
            k += 1;
        }
        // Annihilator contracted with an unused creator of Y. Identical creators
        // are distinct instances and each contributes.
        for t in 0..self.cre_y.len() {
            if self.used[t] {
                continue;
            }
            let (g, l) = self.cre_y[t];
            let k = match f.gen {
                Gen::B(_) => -l,
                _ => -l - 1,
            };
            let s = free_bracket(self.sys, f.gen, k, g, l);
            if s.is_zero() {
                continue;
            }
            self.used[t] = true;
            self.contractions += 1;
            self.rec(i + 1, budget, left - k - d, c * s * der_coeff(f.der, k + d), ann_y, op);
            self.contractions -= 1;
            self.used[t] = false;
        }
    }
}

/// `[A_(m), B_(n)]` for even fields, truncated to annihilation depth `≤ budget`.
pub fn commutator(sys: &FieldSystem, a: &Field, m: i64, b: &Field, n: i64, budget: i64) -> ModeOp {
    let mut op = ModeOp::new();
    for (p, cp) in a.terms() {
        for (r, cr) in b.terms() {
            let c = *cp * *cr;
            contracted_product(sys, p, m, r, n, budget, c, &mut op);
            contracted_product(sys, r, n, p, m, budget, -c, &mut op);
        }
    }
    op.retain(|_, v| !v.is_zero());
    op
}

/// `op − other`, dropping zero coefficients.
pub fn difference(op: &ModeOp, other: &ModeOp) -> ModeOp {
    let mut out = op.clone();
    for (k, v) in other {
        *out.entry(k.clone()).or_insert(Q::ZERO) -= *v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::parse_field;

    fn p(s: &str) -> Field {
        parse_field(s).unwrap()
    }

    #[test]
    fn canonical_relations() {
        let sys = FieldSystem::weyl(1);
        let c = commutator(&sys, &p("a[1]"), 2, &p("a*[1]"), -3, 4);
        assert_eq!(c.len(), 1);
        assert_eq!(c[&(vec![], vec![])], Q::ONE);
        assert!(commutator(&sys, &p("a[1]"), 2, &p("a*[1]"), -2, 4).is_empty());
    }

    #[test]
    fn number_operator() {
        // [(:a*a:)_(0), a*_(n)] = a*_(n)
        let sys = FieldSystem::weyl(1);
        for n in -3..=3 {
            let c = commutator(&sys, &p(":a*[1] a[1]:"), 0, &p("a*[1]"), n, 4);
            assert_eq!(c, expand_field(&p("a*[1]"), n, 4), "n = {n}");
        }
    }

    #[test]
    fn derivative_modes() {
        // (∂a*)_(n) = −n a*_(n−1)
        let e = expand_field(&p("da*[1]"), -2, 3);
        assert_eq!(e[&(vec![(Gen::AStar(0), -3)], vec![])], Q::int(2));
        let e = expand_field(&p("da*[1]"), 2, 3);
        assert_eq!(e[&(vec![], vec![(Gen::AStar(0), 1)])], Q::int(-2));
    }
}
