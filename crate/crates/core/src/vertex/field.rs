//! Generators, normally ordered monomials and local fields.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rational::{factorial, Q};

/// A free-field or current generator. Indices are 0-based.
///
/// The variant order fixes the canonical factor order inside a monomial; currents
/// come last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    /// `a*_i`, even, weight 0.
    AStar(u32),
    /// `a_i`, even, weight 1.
    A(u32),
    /// `ψ*_i`, odd, weight 0.
    PsiStar(u32),
    /// `ψ_i`, odd, weight 1.
    Psi(u32),
    /// Neutral field `φ_i` with `[φ_i, φ_j] = ω_{ij}`, even, weight ½.
    Phi(u32),
    /// Heisenberg field `b_i`, even, weight 1.
    B(u32),
    /// Current `J_i` of a (possibly non-abelian) current algebra, even, weight 1.
    J(u32),
}

impl Gen {
    pub fn is_odd(self) -> bool {
        matches!(self, Gen::Psi(_) | Gen::PsiStar(_))
    }

    pub fn is_current(self) -> bool {
        matches!(self, Gen::J(_))
    }

    pub fn index(self) -> u32 {
        match self {
            Gen::AStar(i) | Gen::A(i) | Gen::PsiStar(i) | Gen::Psi(i) | Gen::Phi(i) | Gen::B(i) | Gen::J(i) => i,
        }
    }

    pub fn weight(self) -> Q {
        match self {
            Gen::AStar(_) | Gen::PsiStar(_) => Q::ZERO,
            Gen::Phi(_) => Q::half(),
            _ => Q::ONE,
        }
    }
}

/// `∂^der` applied to a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub gen: Gen,
    pub der: u32,
}

impl Factor {
    pub fn new(gen: Gen, der: u32) -> Factor {
        Factor { gen, der }
    }

    pub fn weight(self) -> Q {
        self.gen.weight() + Q::from(self.der as i64)
    }
}

/// Factor list of a normally ordered monomial, in canonical order.
pub type Monomial = Vec<Factor>;

/// Sort factors into canonical order; returns the sign of the reordering, or
/// `None` when an odd factor repeats.
pub fn canonicalize(factors: &mut [Factor]) -> Option<Q> {
    let mut sign = Q::ONE;
    for i in 1..factors.len() {
        let mut j = i;
        while j > 0 && factors[j - 1] > factors[j] {
            if factors[j - 1].gen.is_odd() && factors[j].gen.is_odd() {
                sign = -sign;
            }
            factors.swap(j - 1, j);
            j -= 1;
        }
    }
    if factors.windows(2).any(|w| w[0] == w[1] && w[0].gen.is_odd()) {
        return None;
    }
    Some(sign)
}

pub fn monomial_is_odd(m: &[Factor]) -> bool {
    m.iter().filter(|f| f.gen.is_odd()).count() % 2 == 1
}

pub fn monomial_weight(m: &[Factor]) -> Q {
    m.iter().map(|f| f.weight()).sum()
}

fn current_count(m: &[Factor]) -> usize {
    m.iter().filter(|f| f.gen.is_current()).count()
}

/// A local field: a finite sum of normally ordered monomials with rational
/// coefficients. Monomials are supercommutative products of free generators
/// with at most one current factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Field {
    terms: BTreeMap<Monomial, Q>,
}

impl Field {
    pub fn zero() -> Field {
        Field::default()
    }

    pub fn one() -> Field {
        Field::constant(Q::ONE)
    }

    pub fn constant(c: Q) -> Field {
        let mut f = Field::zero();
        f.add_term(c, Vec::new());
        f
    }

    pub fn gen(g: Gen) -> Field {
        Field::factor(Factor::new(g, 0))
    }

    pub fn factor(f: Factor) -> Field {
        let mut out = Field::zero();
        out.add_term(Q::ONE, vec![f]);
        out
    }

    /// Monomial from factors in any order; the sign of reordering is absorbed.
    pub fn monomial(c: Q, factors: Vec<Factor>) -> Result<Field> {
        if current_count(&factors) > 1 {
            return Err(capacity_two_currents(&factors));
        }
        let mut f = Field::zero();
        f.add_term(c, factors);
        Ok(f)
    }

    /// Add `c · :factors:`, canonicalizing the order.
    pub(crate) fn add_term(&mut self, c: Q, mut factors: Vec<Factor>) {
        if c.is_zero() {
            return;
        }
        debug_assert!(current_count(&factors) <= 1);
        let Some(sign) = canonicalize(&mut factors) else { return };
        let vanished = {
            let e = self.terms.entry(factors.clone()).or_insert(Q::ZERO);
            *e += sign * c;
            e.is_zero()
        };
        if vanished {
            self.terms.remove(&factors);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[Factor]) -> Q {
        self.terms.get(m).copied().unwrap_or(Q::ZERO)
    }

    /// Constant term.
    pub fn scalar_part(&self) -> Q {
        self.coefficient(&[])
    }

    pub fn scale(&self, c: Q) -> Field {
        if c.is_zero() {
            return Field::zero();
        }
        Field { terms: self.terms.iter().map(|(k, v)| (k.clone(), *v * c)).collect() }
    }

    pub fn add(&self, other: &Field) -> Field {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Field) -> Field {
        self.add(&other.scale(-Q::ONE))
    }

    pub fn add_assign(&mut self, other: &Field) {
        for (k, v) in &other.terms {
            let e = self.terms.entry(k.clone()).or_insert(Q::ZERO);
            *e += *v;
            if e.is_zero() {
                self.terms.remove(k);
            }
        }
    }

    pub fn add_scaled(&mut self, c: Q, other: &Field) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            let e = self.terms.entry(k.clone()).or_insert(Q::ZERO);
            *e += *v * c;
            if e.is_zero() {
                self.terms.remove(k);
            }
        }
    }

    /// `∂A` by the Leibniz rule.
    pub fn deriv(&self) -> Field {
        let mut out = Field::zero();
        for (m, c) in &self.terms {
            for i in 0..m.len() {
                let mut f = m.clone();
                f[i].der += 1;
                out.add_term(*c, f);
            }
        }
        out
    }

    pub fn deriv_n(&self, k: u32) -> Field {
        let mut f = self.clone();
        for _ in 0..k {
            f = f.deriv();
        }
        f
    }

    /// `∂^k A / k!`.
    pub fn divided_deriv(&self, k: u32) -> Field {
        self.deriv_n(k).scale(Q::ONE / factorial(k))
    }

    /// Supercommutative product of monomials. This is the normally ordered
    /// product when `self` is a single generator factor; use
    /// [`crate::vertex::normal_order`] for general fields.
    pub fn concat(&self, other: &Field) -> Result<Field> {
        let mut out = Field::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut f = ma.clone();
                f.extend(mb.iter().copied());
                if current_count(&f) > 1 {
                    return Err(capacity_two_currents(&f));
                }
                out.add_term(*ca * *cb, f);
            }
        }
        Ok(out)
    }

    /// `Some(parity)` when all monomials share a parity (`true` = odd).
    pub fn parity(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(|m| monomial_is_odd(m));
        let first = it.next().unwrap_or(false);
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    /// `Some(weight)` when the field is homogeneous.
    pub fn weight(&self) -> Option<Q> {
        let mut it = self.terms.keys().map(|m| monomial_weight(m));
        let first = it.next()?;
        if it.all(|w| w == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn max_weight(&self) -> Option<Q> {
        self.terms.keys().map(|m| monomial_weight(m)).max()
    }

    /// All generators occurring in the field.
    pub fn generators(&self) -> Vec<Gen> {
        let mut v: Vec<Gen> = self.terms.keys().flat_map(|m| m.iter().map(|f| f.gen)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Replace every current `J_i` by a field, e.g. to project currents.
    /// The substituted field must not contain currents when the monomial has other factors with currents.
    pub fn substitute_currents(&self, image: &dyn Fn(u32) -> Field) -> Result<Field> {
        let mut out = Field::zero();
        for (m, c) in &self.terms {
            let (cur, rest): (Vec<Factor>, Vec<Factor>) = m.iter().partition(|f| f.gen.is_current());
            let mut base = Field::monomial(*c, rest)?;
            for f in cur {
                let img = image(f.gen.index()).deriv_n(f.der);
                base = img.concat(&base)?;
            }
            out.add_assign(&base);
        }
        Ok(out)
    }
}

pub(crate) fn capacity_two_currents(m: &[Factor]) -> Error {
    Error::Capacity(format!(
        "monomial {} would contain two current factors; products of non-abelian currents are not supported",
        super::notation::format_monomial(m)
    ))
}

/// Structure of a current algebra: `J_x(z)J_y(w) ~ κ(x,y)/(z−w)² + J_{[x,y]}(w)/(z−w)`.
#[derive(Clone, Debug)]
pub struct CurrentAlgebra {
    pub labels: Vec<String>,
    /// `[x_i, x_j] = Σ c·x_k` as `(k, c)` pairs.
    pub structure: Vec<Vec<Vec<(usize, Q)>>>,
    pub level: Mat,
}

impl CurrentAlgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(|r| r.iter().all(|c| c.is_empty()))
    }
}

/// Declares the generators of a free-field/current vertex algebra and their
/// contractions. Generators not declared here must not appear in fields.
#[derive(Clone, Debug)]
pub struct FieldSystem {
    /// Number of Weyl pairs `(a_i, a*_i)` with `a_i(z)a*_j(w) ~ δ_{ij}/(z−w)`.
    pub weyl: usize,
    /// Number of fermion pairs `(ψ_i, ψ*_i)` with `ψ_i(z)ψ*_j(w) ~ δ_{ij}/(z−w)`.
    pub fermions: usize,
    /// Skew matrix `ω` with `φ_i(z)φ_j(w) ~ ω_{ij}/(z−w)`.
    pub symplectic: Mat,
    /// Symmetric matrix `G` with `b_i(z)b_j(w) ~ G_{ij}/(z−w)²`.
    pub heisenberg: Mat,
    pub currents: Option<CurrentAlgebra>,
    /// Optional display names for the Weyl pairs.
    pub weyl_labels: Vec<String>,
}

/// One term of a contraction: `coeff · (z−w)^{−pole}`, times a current at `w` if present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionTerm {
    pub coeff: Q,
    pub pole: u32,
    pub field: Option<Factor>,
}

impl FieldSystem {
    pub fn weyl(n: usize) -> FieldSystem {
        FieldSystem {
            weyl: n,
            fermions: 0,
            symplectic: Mat::zeros(0, 0),
            heisenberg: Mat::zeros(0, 0),
            currents: None,
            weyl_labels: Vec::new(),
        }
    }

    pub fn with_fermions(mut self, n: usize) -> FieldSystem {
        self.fermions = n;
        self
    }

    pub fn with_symplectic(mut self, omega: Mat) -> FieldSystem {
        assert_eq!(omega, -&omega.transpose(), "ω must be skew");
        self.symplectic = omega;
        self
    }

    pub fn with_heisenberg(mut self, gram: Mat) -> FieldSystem {
        assert_eq!(gram, gram.transpose(), "Heisenberg form must be symmetric");
        self.heisenberg = gram;
        self
    }

    pub fn with_currents(mut self, c: CurrentAlgebra) -> FieldSystem {
        self.currents = Some(c);
        self
    }

    /// Check that a generator is declared.
    pub fn contains(&self, g: Gen) -> bool {
        let i = g.index() as usize;
        match g {
            Gen::A(_) | Gen::AStar(_) => i < self.weyl,
            Gen::Psi(_) | Gen::PsiStar(_) => i < self.fermions,
            Gen::Phi(_) => i < self.symplectic.rows(),
            Gen::B(_) => i < self.heisenberg.rows(),
            Gen::J(_) => self.currents.as_ref().is_some_and(|c| i < c.dim()),
        }
    }

    /// Validate that every generator of the field is declared.
    pub fn check_field(&self, f: &Field) -> Result<()> {
        for g in f.generators() {
            if !self.contains(g) {
                return Err(Error::Invalid(format!("generator {} is not declared in the field system", super::notation::format_gen(g))));
            }
        }
        Ok(())
    }

    /// Basic contraction `X(z)Y(w)` for underived generators.
    pub fn contraction(&self, x: Gen, y: Gen) -> Vec<ContractionTerm> {
        let (i, j) = (x.index() as usize, y.index() as usize);
        let scalar = |c: Q, pole: u32| if c.is_zero() { vec![] } else { vec![ContractionTerm { coeff: c, pole, field: None }] };
        match (x, y) {
            (Gen::A(_), Gen::AStar(_)) if i == j => scalar(Q::ONE, 1),
            (Gen::AStar(_), Gen::A(_)) if i == j => scalar(-Q::ONE, 1),
            (Gen::Psi(_), Gen::PsiStar(_)) | (Gen::PsiStar(_), Gen::Psi(_)) if i == j => scalar(Q::ONE, 1),
            (Gen::Phi(_), Gen::Phi(_)) => scalar(self.symplectic[(i, j)], 1),
            (Gen::B(_), Gen::B(_)) => scalar(self.heisenberg[(i, j)], 2),
            (Gen::J(_), Gen::J(_)) => {
                let c = self.currents.as_ref().expect("currents declared");
                let mut v = scalar(c.level[(i, j)], 2);
                for (k, coeff) in &c.structure[i][j] {
                    v.push(ContractionTerm { coeff: *coeff, pole: 1, field: Some(Factor::new(Gen::J(*k as u32), 0)) });
                }
                v
            }
            _ => vec![],
        }
    }

    /// Contraction of `∂^p X(z)` with `∂^q Y(w)`.
    pub fn contraction_derived(&self, x: Factor, y: Factor) -> Vec<ContractionTerm> {
        let (p, q) = (x.der, y.der);
        let mut out = Vec::new();
        for t in self.contraction(x.gen, y.gen) {
            match t.field {
                None => {
                    // ∂_z^p ∂_w^q (z−w)^{−s} = (−1)^p (s)_{p+q} (z−w)^{−s−p−q}
                    let c = t.coeff * sign(p) * rising(t.pole, p + q);
                    out.push(ContractionTerm { coeff: c, pole: t.pole + p + q, field: None });
                }
                Some(f) => {
                    for r in 0..=q {
                        let c = t.coeff * crate::rational::binom(q as i64, r) * sign(p) * rising(t.pole, p + q - r);
                        out.push(ContractionTerm {
                            coeff: c,
                            pole: t.pole + p + q - r,
                            field: Some(Factor::new(f.gen, f.der + r)),
                        });
                    }
                }
            }
        }
        out
    }

    /// Generators whose modes fail to commute with some mode of `g`.
    pub fn partners(&self, g: Gen) -> Vec<Gen> {
        let i = g.index();
        match g {
            Gen::A(_) => vec![Gen::AStar(i)],
            Gen::AStar(_) => vec![Gen::A(i)],
            Gen::Psi(_) => vec![Gen::PsiStar(i)],
            Gen::PsiStar(_) => vec![Gen::Psi(i)],
            Gen::Phi(_) => (0..self.symplectic.rows())
                .filter(|&j| !self.symplectic[(i as usize, j)].is_zero())
                .map(|j| Gen::Phi(j as u32))
                .collect(),
            Gen::B(_) => (0..self.heisenberg.rows())
                .filter(|&j| !self.heisenberg[(i as usize, j)].is_zero())
                .map(|j| Gen::B(j as u32))
                .collect(),
            Gen::J(_) => (0..self.currents.as_ref().map_or(0, |c| c.dim())).map(|j| Gen::J(j as u32)).collect(),
        }
    }
}

fn sign(p: u32) -> Q {
    if p % 2 == 0 {
        Q::ONE
    } else {
        -Q::ONE
    }
}

/// Rising factorial `s (s+1) ⋯ (s+n−1)`.
fn rising(s: u32, n: u32) -> Q {
    (0..n).map(|i| Q::from((s + i) as i64)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_and_signs() {
        let p0 = Factor::new(Gen::Psi(0), 0);
        let p1 = Factor::new(Gen::Psi(1), 0);
        let a = Factor::new(Gen::A(0), 0);
        let f = Field::monomial(Q::ONE, vec![p1, a, p0]).unwrap();
        let g = Field::monomial(-Q::ONE, vec![p0, p1, a]).unwrap();
        assert_eq!(f, g);
        assert!(Field::monomial(Q::ONE, vec![p0, p0]).unwrap().is_zero());
        let s1 = Factor::new(Gen::AStar(0), 0);
        let s2 = Factor::new(Gen::AStar(1), 0);
        assert_eq!(Field::monomial(Q::ONE, vec![s1, s2]).unwrap(), Field::monomial(Q::ONE, vec![s2, s1]).unwrap());
    }

    #[test]
    fn two_currents_rejected() {
        let j = Factor::new(Gen::J(0), 0);
        assert!(matches!(Field::monomial(Q::ONE, vec![j, j]), Err(Error::Capacity(_))));
        let f = Field::factor(j);
        assert!(f.concat(&f).is_err());
    }

    #[test]
    fn leibniz() {
        let x = Field::monomial(Q::ONE, vec![Factor::new(Gen::AStar(0), 0), Factor::new(Gen::A(1), 0)]).unwrap();
        let d = x.deriv();
        assert_eq!(d.num_terms(), 2);
        assert_eq!(d.weight(), Some(Q::int(2)));
        assert_eq!(x.deriv_n(2).scale(q_half()), x.divided_deriv(2));
    }

    fn q_half() -> Q {
        Q::half()
    }

    #[test]
    fn derived_contraction() {
        let sys = FieldSystem::weyl(1);
        // ∂a(z) a*(w) ~ −1/(z−w)²
        let t = sys.contraction_derived(Factor::new(Gen::A(0), 1), Factor::new(Gen::AStar(0), 0));
        assert_eq!(t, vec![ContractionTerm { coeff: -Q::ONE, pole: 2, field: None }]);
        // a(z) ∂a*(w) ~ 1/(z−w)²
        let t = sys.contraction_derived(Factor::new(Gen::A(0), 0), Factor::new(Gen::AStar(0), 1));
        assert_eq!(t, vec![ContractionTerm { coeff: Q::ONE, pole: 2, field: None }]);
    }
}
