//! Wick contractions, `n`-th products and commutators of local fields.

use std::fmt;

use super::field::{capacity_two_currents, monomial_is_odd, ContractionTerm, Factor, Field, FieldSystem};
use crate::error::{Error, Result};
use crate::rational::{factorial, Q};

/// `[A(z), B(w)] = Σ_k C_k(w) ∂_w^k δ(z−w)`; `coeffs[k] = C_k = A_(k)B / k!`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeltaExpansion {
    pub coeffs: Vec<Field>,
}

impl DeltaExpansion {
    pub fn zero() -> DeltaExpansion {
        DeltaExpansion::default()
    }

    /// From the products `A_(k)B`.
    pub fn from_products(products: Vec<Field>) -> DeltaExpansion {
        let coeffs = products.into_iter().enumerate().map(|(k, f)| f.scale(Q::ONE / factorial(k as u32))).collect();
        let mut d = DeltaExpansion { coeffs };
        d.trim();
        d
    }

    /// `Σ c_k ∂^k δ` with explicit coefficients.
    pub fn from_coeffs(coeffs: Vec<Field>) -> DeltaExpansion {
        let mut d = DeltaExpansion { coeffs };
        d.trim();
        d
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|f| f.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// `A_(k)B = k! C_k`.
    pub fn products(&self) -> Vec<Field> {
        self.coeffs.iter().enumerate().map(|(k, f)| f.scale(factorial(k as u32))).collect()
    }

    pub fn coeff(&self, k: usize) -> Field {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|f| f.is_zero())
    }

    pub fn sub(&self, other: &DeltaExpansion) -> DeltaExpansion {
        let n = self.coeffs.len().max(other.coeffs.len());
        DeltaExpansion::from_coeffs((0..n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect())
    }
}

impl fmt::Display for DeltaExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let d = match k {
                0 => "δ".to_string(),
                1 => "∂δ".to_string(),
                _ => format!("∂^{k}δ"),
            };
            write!(f, "({c})·{d}")?;
        }
        Ok(())
    }
}

/// One way of contracting two monomials: `coeff (z−w)^{−pole} :rem_x(z) rem_y(w):`.
struct Contracted {
    coeff: Q,
    pole: u32,
    rem_x: Vec<Factor>,
    rem_y: Vec<Factor>,
}

fn contract_monomials(sys: &FieldSystem, x: &[Factor], y: &[Factor]) -> Vec<Contracted> {
    let table: Vec<Vec<Vec<ContractionTerm>>> =
        x.iter().map(|&a| y.iter().map(|&b| sys.contraction_derived(a, b)).collect()).collect();
    let mut out = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; y.len()];
    enumerate(sys, x, y, &table, 0, &mut pairs, &mut used, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    sys: &FieldSystem,
    x: &[Factor],
    y: &[Factor],
    table: &[Vec<Vec<ContractionTerm>>],
    i: usize,
    pairs: &mut Vec<(usize, usize)>,
    used: &mut Vec<bool>,
    out: &mut Vec<Contracted>,
) {
    if i == x.len() {
        emit(x, y, table, pairs, out);
        return;
    }
    enumerate(sys, x, y, table, i + 1, pairs, used, out);
    for k in 0..y.len() {
        if !used[k] && !table[i][k].is_empty() {
            used[k] = true;
            pairs.push((i, k));
            enumerate(sys, x, y, table, i + 1, pairs, used, out);
            pairs.pop();
            used[k] = false;
        }
    }
}

fn emit(x: &[Factor], y: &[Factor], table: &[Vec<Vec<ContractionTerm>>], pairs: &[(usize, usize)], out: &mut Vec<Contracted>) {
    let r = x.len();
    let odd = |idx: usize| if idx < r { x[idx].gen.is_odd() } else { y[idx - r].gen.is_odd() };
    let mut order: Vec<usize> = Vec::new();
    for &(i, k) in pairs {
        order.push(i);
        order.push(r + k);
    }
    let rem_x: Vec<Factor> = (0..r).filter(|i| !pairs.iter().any(|p| p.0 == *i)).map(|i| x[i]).collect();
    let rem_y_idx: Vec<usize> = (0..y.len()).filter(|k| !pairs.iter().any(|p| p.1 == *k)).collect();
    order.extend((0..r).filter(|i| !pairs.iter().any(|p| p.0 == *i)));
    order.extend(rem_y_idx.iter().map(|k| r + k));
    let odd_seq: Vec<usize> = order.into_iter().filter(|&i| odd(i)).collect();
    let mut inversions = 0;
    for a in 0..odd_seq.len() {
        for b in a + 1..odd_seq.len() {
            if odd_seq[a] > odd_seq[b] {
                inversions += 1;
            }
        }
    }
    let sign = if inversions % 2 == 0 { Q::ONE } else { -Q::ONE };
    let rem_y: Vec<Factor> = rem_y_idx.iter().map(|&k| y[k]).collect();
    // Cartesian product of the contraction terms of every pair.
    let mut combos: Vec<(Q, u32, Option<Factor>)> = vec![(sign, 0, None)];
    for &(i, k) in pairs {
        let mut next = Vec::new();
        for (c, p, f) in &combos {
            for t in &table[i][k] {
                if f.is_some() && t.field.is_some() {
                    continue;
                }
                next.push((*c * t.coeff, p + t.pole, f.or(t.field)));
            }
        }
        combos = next;
    }
    for (c, p, f) in combos {
        let mut ry = rem_y.clone();
        ry.extend(f);
        out.push(Contracted { coeff: c, pole: p, rem_x: rem_x.clone(), rem_y: ry });
    }
}

fn has_current(m: &[Factor]) -> bool {
    m.iter().any(|f| f.gen.is_current())
}

fn add_product_terms(sys: &FieldSystem, ma: &[Factor], ca: Q, mb: &[Factor], cb: Q, n: i64, out: &mut Field) -> Result<()> {
    for c in contract_monomials(sys, ma, mb) {
        let k = c.pole as i64 - n - 1;
        if k < 0 {
            continue;
        }
        if has_current(&c.rem_x) && has_current(&c.rem_y) {
            let mut both = c.rem_x.clone();
            both.extend(c.rem_y.iter().copied());
            return Err(capacity_two_currents(&both));
        }
        let left = Field::monomial(Q::ONE, c.rem_x)?.divided_deriv(k as u32);
        let right = Field::monomial(Q::ONE, c.rem_y)?;
        out.add_scaled(ca * cb * c.coeff, &left.concat(&right)?);
    }
    Ok(())
}

/// The `n`-th product `A_(n)B` for any integer `n`.
pub fn nth_product(sys: &FieldSystem, a: &Field, b: &Field, n: i64) -> Result<Field> {
    let mut out = Field::zero();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            add_product_terms(sys, ma, *ca, mb, *cb, n, &mut out)?;
        }
    }
    Ok(out)
}

/// Normally ordered product `:AB: = A_(−1)B`.
pub fn normal_order(sys: &FieldSystem, a: &Field, b: &Field) -> Result<Field> {
    nth_product(sys, a, b, -1)
}

/// Right-nested normal ordering `:A_1 :A_2 ⋯ A_k::`.
pub fn normal_order_all(sys: &FieldSystem, fields: &[Field]) -> Result<Field> {
    let mut it = fields.iter().rev();
    let Some(last) = it.next() else { return Ok(Field::one()) };
    let mut acc = last.clone();
    for f in it {
        acc = normal_order(sys, f, &acc)?;
    }
    Ok(acc)
}

/// Singular part of the OPE: `[A_(0)B, A_(1)B, …]` up to the highest pole.
pub fn ope(sys: &FieldSystem, a: &Field, b: &Field) -> Result<Vec<Field>> {
    let mut by_n: Vec<Field> = Vec::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            for c in contract_monomials(sys, ma, mb) {
                if c.pole == 0 {
                    continue;
                }
                if has_current(&c.rem_x) && has_current(&c.rem_y) {
                    let mut both = c.rem_x.clone();
                    both.extend(c.rem_y.iter().copied());
                    return Err(Error::Capacity(format!(
                        "contracting {} with {} leaves two currents: {}",
                        super::notation::format_monomial(ma),
                        super::notation::format_monomial(mb),
                        capacity_two_currents(&both)
                    )));
                }
                let right = Field::monomial(Q::ONE, c.rem_y.clone())?;
                let base = Field::monomial(Q::ONE, c.rem_x.clone())?;
                for n in 0..c.pole {
                    let k = c.pole - n - 1;
                    if by_n.len() <= n as usize {
                        by_n.resize(n as usize + 1, Field::zero());
                    }
                    let term = base.divided_deriv(k).concat(&right)?;
                    by_n[n as usize].add_scaled(*ca * *cb * c.coeff, &term);
                }
            }
        }
    }
    while by_n.last().is_some_and(|f| f.is_zero()) {
        by_n.pop();
    }
    Ok(by_n)
}

/// `[A(z), B(w)]` (graded) as a δ-function expansion.
pub fn wick_commutator(sys: &FieldSystem, a: &Field, b: &Field) -> Result<DeltaExpansion> {
    sys.check_field(a)?;
    sys.check_field(b)?;
    Ok(DeltaExpansion::from_products(ope(sys, a, b)?))
}

/// Products `B_(n)A` from `A_(j)B` by skew-symmetry:
/// `B_(n)A = −(−1)^{|A||B|} Σ_j (−1)^{n+j} ∂^j(A_(n+j)B)/j!`.
pub fn skew_products(products_ab: &[Field], odd_a: bool, odd_b: bool) -> Vec<Field> {
    let eps = if odd_a && odd_b { Q::ONE } else { -Q::ONE };
    let len = products_ab.len();
    (0..len)
        .map(|n| {
            let mut acc = Field::zero();
            for j in 0..len - n {
                let s = if (n + j) % 2 == 0 { Q::ONE } else { -Q::ONE };
                acc.add_scaled(eps * s, &products_ab[n + j].divided_deriv(j as u32));
            }
            acc
        })
        .collect()
}

/// Parity of a monomial list, exported for the oracle.
pub(crate) fn is_odd(m: &[Factor]) -> bool {
    monomial_is_odd(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;
    use crate::vertex::field::{CurrentAlgebra, Gen};
    use crate::vertex::parse_field;

    fn p(s: &str) -> Field {
        parse_field(s).unwrap()
    }

    #[test]
    fn weyl_pair() {
        let sys = FieldSystem::weyl(2);
        let d = wick_commutator(&sys, &p("a[1]"), &p("a*[1]")).unwrap();
        assert_eq!(d, DeltaExpansion::from_coeffs(vec![Field::one()]));
        assert!(wick_commutator(&sys, &p("a[1]"), &p("a*[2]")).unwrap().is_zero());
        assert!(wick_commutator(&sys, &p("a[1]"), &p("a[2]")).unwrap().is_zero());
    }

    #[test]
    fn heisenberg() {
        let mut g = Mat::zeros(2, 2);
        g[(0, 0)] = Q::int(3);
        g[(0, 1)] = Q::ONE;
        g[(1, 0)] = Q::ONE;
        let sys = FieldSystem::weyl(0).with_heisenberg(g);
        let d = wick_commutator(&sys, &p("b[1]"), &p("b[2]")).unwrap();
        assert_eq!(d, DeltaExpansion::from_coeffs(vec![Field::zero(), Field::one()]));
    }

    #[test]
    fn number_operator_on_a_star() {
        let sys = FieldSystem::weyl(1);
        let d = wick_commutator(&sys, &p(":a*[1] a[1]:"), &p("a*[1]")).unwrap();
        assert_eq!(d, DeltaExpansion::from_coeffs(vec![p("a*[1]")]));
    }

    #[test]
    fn normal_order_of_generators_commutes() {
        let sys = FieldSystem::weyl(1);
        let x = normal_order(&sys, &p("a[1]"), &p("a*[1]")).unwrap();
        let y = normal_order(&sys, &p("a*[1]"), &p("a[1]")).unwrap();
        assert!(x.sub(&y).is_zero());
        assert_eq!(normal_order(&sys, &Field::one(), &p(":a*[1] a[1]:")).unwrap(), p(":a*[1] a[1]:"));
    }

    #[test]
    fn composite_normal_order_has_corrections() {
        // :(:a* a:)(:a* a:): contains the contraction terms.
        let sys = FieldSystem::weyl(1);
        let n = p(":a*[1] a[1]:");
        let nn = normal_order(&sys, &n, &n).unwrap();
        assert_eq!(nn.coefficient(&p(":a*[1] a*[1] a[1] a[1]:").terms().next().unwrap().0.clone()), Q::ONE);
        assert_ne!(nn, n.concat(&n).unwrap());
    }

    #[test]
    fn fermion_anticommutator() {
        let sys = FieldSystem::weyl(0).with_fermions(2);
        let d = wick_commutator(&sys, &p("psi[1]"), &p("psi*[1]")).unwrap();
        assert_eq!(d, DeltaExpansion::from_coeffs(vec![Field::one()]));
        let d = wick_commutator(&sys, &p(":psi*[1] psi[2]:"), &p(":psi*[2] psi[1]:")).unwrap();
        // gl-type currents: [E12, E21] = E11 − E22 plus central term
        assert_eq!(d.coeff(0), p(":psi*[1] psi[1]: - :psi*[2] psi[2]:"));
    }

    #[test]
    fn sl2_currents() {
        // basis e, h, f with [e,f]=h, [h,e]=2e, [h,f]=−2f, level k=5 (κ = 5 tr)
        let mut s = vec![vec![Vec::new(); 3]; 3];
        s[0][2] = vec![(1, Q::ONE)];
        s[2][0] = vec![(1, -Q::ONE)];
        s[1][0] = vec![(0, Q::int(2))];
        s[0][1] = vec![(0, Q::int(-2))];
        s[1][2] = vec![(2, Q::int(-2))];
        s[2][1] = vec![(2, Q::int(2))];
        let mut lv = Mat::zeros(3, 3);
        lv[(0, 2)] = Q::int(5);
        lv[(2, 0)] = Q::int(5);
        lv[(1, 1)] = Q::int(10);
        let c = CurrentAlgebra { labels: vec!["e".into(), "h".into(), "f".into()], structure: s, level: lv };
        let sys = FieldSystem::weyl(1).with_currents(c);
        let d = wick_commutator(&sys, &p("J[1]"), &p("J[3]")).unwrap();
        assert_eq!(d, DeltaExpansion::from_coeffs(vec![p("J[2]"), p("5")]));
        // A single current times a free field is fine.
        let d = wick_commutator(&sys, &p(":a*[1] J[1]:"), &p(":a[1] J[3]:")).unwrap_err();
        assert!(matches!(d, Error::Capacity(_)));
        let d = wick_commutator(&sys, &p(":a*[1] J[1]:"), &p(":a*[1] J[3]:")).unwrap();
        assert_eq!(d.coeff(0), p(":a*[1] a*[1] J[2]:").add(&p(":a*[1] da*[1]:").scale(Q::int(5))));
        assert_eq!(d.coeff(1), p("5 :a*[1] a*[1]:"));
        let _ = Gen::J(0);
    }

    #[test]
    fn skew_symmetry_recovers_reverse_order() {
        let sys = FieldSystem::weyl(2);
        let a = p(":a*[1] a*[1] a[2]: + da*[2]");
        let b = p(":a*[2] a[1] a[1]:");
        let ab = ope(&sys, &a, &b).unwrap();
        let ba = ope(&sys, &b, &a).unwrap();
        let flipped = skew_products(&ab, false, false);
        let n = ba.len().max(flipped.len());
        for k in 0..n {
            let x = ba.get(k).cloned().unwrap_or_default();
            let y = flipped.get(k).cloned().unwrap_or_default();
            assert_eq!(x, y, "product {k}");
        }
    }
}
