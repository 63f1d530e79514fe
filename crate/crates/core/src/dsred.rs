//! Minimal quantized Drinfeld–Sokolov reduction at the cochain level.
//!
//! The complex `C(V^k(g)) = V^k(g) ⊗ F(g_{>0} ⊕ g*_{>0}) ⊗ F^{ω_χ}(g_{1/2})` is
//! realized in the symbolic engine by
//!
//! * currents `J_x` for the whole Chevalley basis of `g`, at level `k κ₀`;
//! * one fermion pair `(ψ_α, ψ*_α)` per `α ∈ Δ_{>0}` (charges `−1`, `+1`);
//! * neutral fields `φ_α`, `α ∈ Δ_{1/2}`, with `[φ_α, φ_β] = ω_χ(e_α, e_β)`.
//!
//! The odd field is
//! `Q = (e_θ + 1)ψ*_θ + Σ_{α∈Δ_{1/2}} (e_α + φ_α)ψ*_α − ½ Σ_α ω_χ(e_α, e_{θ−α}) ψ*_α ψ*_{θ−α} ψ_θ`,
//! with `ω_χ` read from [`MinimalTriple`]. Nilpotency of `Q_(0)` is checked twice:
//! by Wick calculus (`[Q_λ Q] = 0`) and by applying `Q_(0)` twice to every Fock
//! basis state up to a depth cutoff.
//!
//! For `a ∈ g♮` the field
//! `φ(a) = J_a + Σ_{α,β∈Δ_{>0}} [a, e_β]_α :ψ_α ψ*_β: − ½ Σ_{α,β∈Δ_{1/2}} [a, e_α]_β :φ^α φ_β:`
//! is a `Q_(0)`-cocycle, and these fields form an affine algebra at level
//! `κ♮ = κ + ½(κ_g − κ_{g₀} − κ_{g_{1/2}})`. Here `φ^α` is the field of the dual
//! basis vector `e^α` defined by `ω_χ(e_β, e^α) = δ_{αβ}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{Elem, MatrixLieAlgebra, MinimalTriple};
use crate::linalg::Mat;
use crate::rational::Q;
use crate::rootsys::TypeLabel;
use crate::vertex::fock::{format_state, format_word, State};
use crate::vertex::{ope, wick_commutator, CurrentAlgebra, Factor, Field, FieldSystem, Gen, ModeOracle};

/// Largest rank accepted by [`build_brst`].
pub const MAX_RANK: usize = 4;

/// Largest number of Fock basis states a nilpotency check may enumerate.
pub const MAX_STATES: usize = 200_000;

/// The BRST complex of the minimal reduction together with its odd field `Q`.
#[derive(Clone, Debug)]
pub struct BrstComplex {
    pub algebra: String,
    pub type_label: TypeLabel,
    pub rank: usize,
    pub level: Q,
    pub g: MatrixLieAlgebra,
    pub triple: MinimalTriple,
    /// Basis indices of `e_α`, `α ∈ Δ_{>0}`: the `Δ_{1/2}` root vectors in
    /// `triple.half_basis` order, then `e_θ`. Fermion pair `i` belongs to `positive[i]`.
    pub positive: Vec<usize>,
    /// Row `α` holds the coordinates of `e^α` in the basis `e_β`, `β ∈ Δ_{1/2}`.
    pub dual: Mat,
    pub system: FieldSystem,
    pub q: Field,
}

fn psi(i: usize) -> Factor {
    Factor::new(Gen::Psi(i as u32), 0)
}

fn psi_star(i: usize) -> Factor {
    Factor::new(Gen::PsiStar(i as u32), 0)
}

fn phi(i: usize) -> Factor {
    Factor::new(Gen::Phi(i as u32), 0)
}

fn current(i: usize) -> Factor {
    Factor::new(Gen::J(i as u32), 0)
}

/// Build the complex and `Q` for a classical algebra at level `k`.
pub fn build_brst(t: TypeLabel, rank: usize, k: Q) -> Result<BrstComplex> {
    if matches!(t, TypeLabel::E | TypeLabel::F | TypeLabel::G) {
        return Err(Error::Unsupported(format!("the BRST complex needs a matrix realization; {t}{rank} has none here")));
    }
    if rank > MAX_RANK {
        return Err(Error::Capacity(format!("BRST complexes are built up to rank {MAX_RANK}, got {t}{rank}")));
    }
    let g = MatrixLieAlgebra::new(t, rank)?;
    let triple = MinimalTriple::new(&g);
    let dim = g.dim();
    let mut structure = vec![vec![Vec::new(); dim]; dim];
    let mut level = Mat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            structure[i][j] = g.bracket_basis(i, j).to_vec();
            level[(i, j)] = k * g.kappa0_basis(i, j);
        }
    }
    let currents = CurrentAlgebra { labels: g.basis.iter().map(|b| b.label.clone()).collect(), structure, level };
    let mut positive = triple.half_basis.clone();
    positive.push(triple.e_theta);
    let system = FieldSystem::weyl(0)
        .with_fermions(positive.len())
        .with_symplectic(triple.omega.clone())
        .with_currents(currents);
    // ω_χ(e_β, e^α) = δ_{αβ}: with D the matrix of rows e^α, Ω Dᵀ = 1.
    let dual = match triple.omega.rows() {
        0 => Mat::zeros(0, 0),
        _ => triple.omega.inverse().ok_or_else(|| Error::Invalid("ω_χ is degenerate".into()))?.transpose(),
    };
    let mut c = BrstComplex { algebra: g.name(), type_label: t, rank, level: k, g, triple, positive, dual, system, q: Field::zero() };
    c.q = c.odd_field(Q::ONE)?;
    Ok(c)
}

impl BrstComplex {
    fn theta_slot(&self) -> usize {
        self.positive.len() - 1
    }

    /// `Q` with the cubic term scaled by `cubic`; `cubic = 1` is the correct field.
    fn odd_field(&self, cubic: Q) -> Result<Field> {
        let th = self.theta_slot();
        let mut q = Field::monomial(Q::ONE, vec![current(self.triple.e_theta), psi_star(th)])?;
        q.add_assign(&Field::factor(psi_star(th)));
        for (a, &ea) in self.triple.half_basis.iter().enumerate() {
            q.add_assign(&Field::monomial(Q::ONE, vec![current(ea), psi_star(a)])?);
            q.add_assign(&Field::monomial(Q::ONE, vec![phi(a), psi_star(a)])?);
        }
        for a in 0..self.triple.half_basis.len() {
            let b = self.triple.partner(&self.g, a);
            let w = self.triple.omega[(a, b)];
            q.add_assign(&Field::monomial(-Q::half() * w * cubic, vec![psi_star(a), psi_star(b), psi(th)])?);
        }
        Ok(q)
    }

    /// The same complex with the sign of the cubic ghost term flipped, which breaks
    /// nilpotency whenever `Δ_{1/2}` is non-empty.
    pub fn with_flipped_cubic(&self) -> Result<BrstComplex> {
        let mut c = self.clone();
        c.q = self.odd_field(-Q::ONE)?;
        Ok(c)
    }

    /// Ghost charge of a generator: `+1` for `ψ*`, `−1` for `ψ`, else 0.
    pub fn charge(g: Gen) -> i64 {
        match g {
            Gen::PsiStar(_) => 1,
            Gen::Psi(_) => -1,
            _ => 0,
        }
    }

    /// Conformal weight of a generator in the shifted `½ℤ`-grading: a current of grade
    /// `j` has weight `1 − j`, `ψ*_α` has weight `j`, `ψ_α` weight `1 − j`, `φ_α` weight `½`.
    pub fn weight(&self, g: Gen) -> Q {
        let grade = |basis: usize| self.triple.grade_of(&self.g, basis);
        match g {
            Gen::J(i) => Q::ONE - grade(i as usize),
            Gen::PsiStar(i) => grade(self.positive[i as usize]),
            Gen::Psi(i) => Q::ONE - grade(self.positive[i as usize]),
            Gen::Phi(_) => Q::half(),
            Gen::A(_) | Gen::AStar(_) | Gen::B(_) => Q::ZERO,
        }
    }

    /// `(charge, weight)` of every monomial of a field.
    pub fn gradings(&self, f: &Field) -> Vec<(i64, Q)> {
        f.terms()
            .map(|(m, _)| {
                let c = m.iter().map(|x| Self::charge(x.gen)).sum();
                let w = m.iter().fold(Q::ZERO, |acc, x| acc + self.weight(x.gen) + Q::int(x.der as i64));
                (c, w)
            })
            .collect()
    }

    /// Current `J_x` of an element of `g`.
    pub fn current_field(&self, x: &[Q]) -> Field {
        let mut f = Field::zero();
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            f.add_scaled(*c, &Field::factor(current(i)));
        }
        f
    }

    /// `φ(a)` for `a ∈ g♮`.
    pub fn natural_embedding_field(&self, a: &[Q]) -> Result<Field> {
        if !self.is_natural(a) {
            return Err(Error::Invalid("element is not in g♮".into()));
        }
        let g = &self.g;
        let mut f = self.current_field(a);
        for (b, &eb) in self.positive.iter().enumerate() {
            let br = g.bracket(a, &g.unit(eb));
            for (al, &ea) in self.positive.iter().enumerate() {
                if !br[ea].is_zero() {
                    f.add_assign(&Field::monomial(br[ea], vec![psi(al), psi_star(b)])?);
                }
            }
        }
        let half = &self.triple.half_basis;
        for (al, &ea) in half.iter().enumerate() {
            let br = g.bracket(a, &g.unit(ea));
            for (be, &eb) in half.iter().enumerate() {
                if br[eb].is_zero() {
                    continue;
                }
                // :φ^α φ_β: with φ^α = Σ_γ D_{αγ} φ_γ.
                for ga in 0..half.len() {
                    let d = self.dual[(al, ga)];
                    if !d.is_zero() {
                        f.add_assign(&Field::monomial(-Q::half() * br[eb] * d, vec![phi(ga), phi(be)])?);
                    }
                }
            }
        }
        Ok(f)
    }

    /// `a` commutes with the triple `(e_θ, h_θ, f_θ)`.
    pub fn is_natural(&self, a: &[Q]) -> bool {
        let g = &self.g;
        [g.unit(self.triple.e_theta), g.unit(self.triple.f_theta), self.triple.h_theta.clone()]
            .iter()
            .all(|y| g.bracket(a, y).iter().all(|c| c.is_zero()))
    }

    /// `κ♮(a, b) = k κ₀(a, b) + ½(κ_g − κ_{g₀} − κ_{g_{1/2}})(a, b)` from traces of `ad`.
    pub fn kappa_natural_form(&self, a: &[Q], b: &[Q]) -> Q {
        let g = &self.g;
        let prod = &g.ad(a) * &g.ad(b);
        let trace_on = |grade: Q| -> Q {
            (0..g.dim()).filter(|&i| self.triple.grade_of(g, i) == grade).map(|i| prod[(i, i)]).sum()
        };
        self.level * g.kappa0(a, b) + Q::half() * (prod.trace() - trace_on(Q::ZERO) - trace_on(Q::half()))
    }
}

/// Outcome of a nilpotency check.
#[derive(Clone, Debug, Serialize)]
pub struct NilpotencyReport {
    pub algebra: String,
    pub level: Q,
    pub cutoff: i64,
    /// Number of monomials of `Q`.
    pub q_terms: usize,
    /// `[Q_λ Q] = 0` by Wick calculus.
    pub wick_zero: bool,
    /// First nonzero `λ`-bracket coefficient, if any.
    pub wick_witness: Option<String>,
    /// Number of Fock basis states on which `Q_(0)²` was evaluated.
    pub states: usize,
    /// A basis state with `Q_(0)² v ≠ 0`, and the value.
    pub witness: Option<String>,
}

impl NilpotencyReport {
    pub fn passed(&self) -> bool {
        self.wick_zero && self.witness.is_none()
    }
}

/// Check `Q_(0)² = 0` by Wick calculus and on every basis state of depth `≤ cutoff`.
pub fn check_q_squared_zero(c: &BrstComplex, cutoff: i64) -> Result<NilpotencyReport> {
    if cutoff < 1 {
        return Err(Error::Invalid("cutoff must be at least 1".into()));
    }
    let products = ope(&c.system, &c.q, &c.q)?;
    let wick_witness = products.iter().enumerate().find(|(_, p)| !p.is_zero()).map(|(n, p)| format!("Q_({n})Q = {p}"));
    let oracle = ModeOracle::new(&c.system);
    let gens = oracle.relevant_generators(&[&c.q]);
    let words = ModeOracle::basis_words(&gens, cutoff);
    if words.len() > MAX_STATES {
        return Err(Error::Capacity(format!("{} Fock states at cutoff {cutoff} exceed the bound {MAX_STATES}", words.len())));
    }
    let mut witness = None;
    for w in &words {
        let mut v = State::new();
        v.insert(w.clone(), Q::ONE);
        let once = oracle.apply_field(&c.q, 0, &v);
        let twice = oracle.apply_field(&c.q, 0, &once);
        if !twice.is_empty() {
            witness = Some(format!("Q_(0)² {} = {}", format_word(w), format_state(&twice)));
            break;
        }
    }
    Ok(NilpotencyReport {
        algebra: c.algebra.clone(),
        level: c.level,
        cutoff,
        q_terms: c.q.num_terms(),
        wick_zero: wick_witness.is_none(),
        wick_witness,
        states: words.len(),
        witness,
    })
}

/// One checked pair of `g♮` basis elements.
#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingPair {
    pub i: usize,
    pub j: usize,
    /// Coefficient of `∂δ` divided out: `κ♮(a_i, a_j)` as read from the Wick bracket.
    pub observed_level: Q,
    pub expected_level: Q,
    /// The `δ` coefficient equals `φ([a_i, a_j])`.
    pub bracket_ok: bool,
}

/// Outcome of the embedding check on a basis of `g♮`.
#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub algebra: String,
    pub level: Q,
    pub natural_dim: usize,
    pub pairs: Vec<EmbeddingPair>,
    /// `Q_(0) φ(a) = 0` for every basis element (Wick).
    pub cocycles: bool,
    /// Mode-oracle check of `[Q_(0), φ(a)_(m)] v = 0`, when run.
    pub oracle_cutoff: Option<i64>,
    pub oracle_failure: Option<String>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.cocycles
            && self.oracle_failure.is_none()
            && self.pairs.iter().all(|p| p.bracket_ok && p.observed_level == p.expected_level)
    }
}

/// Check that `a ↦ φ(a)` realizes `V^{κ♮}(g♮)` inside the complex: for all basis
/// pairs `[φ(a)_λ φ(b)] = φ([a, b]) + λ κ♮(a, b)`, and each `φ(a)` is a cocycle.
/// With `oracle_cutoff`, `[Q_(0), φ(a)_(m)]` is also applied to Fock states.
pub fn check_natural_embedding(c: &BrstComplex, oracle_cutoff: Option<i64>) -> Result<EmbeddingReport> {
    let basis = &c.triple.natural_basis;
    let fields: Vec<Field> = basis.iter().map(|a| c.natural_embedding_field(a)).collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let d = wick_commutator(&c.system, &fields[i], &fields[j])?;
            let br: Elem = c.g.bracket(&basis[i], &basis[j]);
            let expected_field = c.natural_embedding_field(&br)?;
            let second = d.coeff(1);
            let observed_level = second.scalar_part();
            let extra = second.sub(&Field::constant(observed_level));
            pairs.push(EmbeddingPair {
                i,
                j,
                observed_level,
                expected_level: c.kappa_natural_form(&basis[i], &basis[j]),
                bracket_ok: d.coeff(0) == expected_field && extra.is_zero() && d.products().len() <= 2,
            });
        }
    }
    let mut cocycles = true;
    for f in &fields {
        if !ope(&c.system, &c.q, f)?.first().is_none_or(|p| p.is_zero()) {
            cocycles = false;
        }
    }
    let mut oracle_failure = None;
    if let Some(cut) = oracle_cutoff {
        oracle_failure = oracle_cocycle_check(c, &fields, cut)?;
    }
    Ok(EmbeddingReport {
        algebra: c.algebra.clone(),
        level: c.level,
        natural_dim: basis.len(),
        pairs,
        cocycles,
        oracle_cutoff,
        oracle_failure,
    })
}

/// `Q_(0) φ(a)_(m) v = φ(a)_(m) Q_(0) v` on basis states of depth `≤ cutoff`, `|m| ≤ cutoff`.
fn oracle_cocycle_check(c: &BrstComplex, fields: &[Field], cutoff: i64) -> Result<Option<String>> {
    let oracle = ModeOracle::new(&c.system);
    let mut all: Vec<&Field> = vec![&c.q];
    all.extend(fields.iter());
    let gens = oracle.relevant_generators(&all);
    let words = ModeOracle::basis_words(&gens, cutoff);
    if words.len() * fields.len() > MAX_STATES {
        return Err(Error::Capacity(format!("{} Fock states at cutoff {cutoff} exceed the bound", words.len() * fields.len())));
    }
    for (idx, f) in fields.iter().enumerate() {
        for w in &words {
            let mut v = State::new();
            v.insert(w.clone(), Q::ONE);
            let qv = oracle.apply_field(&c.q, 0, &v);
            for m in -cutoff..=cutoff {
                let lhs = oracle.apply_field(&c.q, 0, &oracle.apply_field(f, m, &v));
                let rhs = oracle.apply_field(f, m, &qv);
                if lhs != rhs {
                    return Ok(Some(format!(
                        "[Q_(0), φ(a_{idx})_({m})] {} = {} − {}",
                        format_word(w),
                        format_state(&lhs),
                        format_state(&rhs)
                    )));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn sl2_has_a_two_term_charge() {
        let c = build_brst(TypeLabel::A, 1, Q::int(3)).unwrap();
        assert!(c.triple.half_basis.is_empty());
        assert_eq!(c.q.to_string(), build_expected_sl2(&c).to_string());
        assert_eq!(c.q.num_terms(), 2);
    }

    fn build_expected_sl2(c: &BrstComplex) -> Field {
        Field::monomial(Q::ONE, vec![current(c.triple.e_theta), psi_star(0)]).unwrap().add(&Field::factor(psi_star(0)))
    }

    #[test]
    fn sl3_charge_terms() {
        let c = build_brst(TypeLabel::A, 2, Q::int(-1)).unwrap();
        // Δ_{1/2} has two roots; the half space contributes e_α ψ*_α and φ_α ψ*_α each,
        // and the cubic term has one monomial per ordered pair (α, θ − α).
        assert_eq!(c.triple.half_basis.len(), 2);
        assert_eq!(c.q.num_terms(), 2 + 2 * 2 + 1);
    }

    #[test]
    fn charge_and_weight() {
        for (t, n) in [(TypeLabel::A, 1), (TypeLabel::A, 2), (TypeLabel::C, 2), (TypeLabel::B, 2)] {
            let c = build_brst(t, n, Q::int(1)).unwrap();
            assert!(c.q.parity() == Some(true));
            for (ch, w) in c.gradings(&c.q) {
                assert_eq!((ch, w), (1, Q::ONE));
            }
        }
    }

    #[test]
    fn omega_entries_match_matrix_pairing() {
        let c = build_brst(TypeLabel::C, 2, Q::int(1)).unwrap();
        let g = &c.g;
        let ft = g.unit(c.triple.f_theta);
        for (a, &ea) in c.triple.half_basis.iter().enumerate() {
            let b = c.triple.partner(g, a);
            let eb = c.triple.half_basis[b];
            let br = g.to_matrix(&g.bracket(&g.unit(ea), &g.unit(eb)));
            let direct = g.kappa0_scale * g.to_matrix(&ft).trace_product(&br);
            assert_eq!(c.triple.omega[(a, b)], direct);
            // Frozen: with short root vectors e_{ε_1−ε_2}, e_{ε_1+ε_2} built from two
            // matrix units each, the pairing is ±2 rather than ±1.
            assert_eq!(c.triple.omega[(a, b)].abs(), Q::int(2));
        }
    }

    #[test]
    fn small_cases_are_nilpotent() {
        for (t, n, k) in [(TypeLabel::A, 1, q(-1, 2)), (TypeLabel::A, 2, Q::int(-1))] {
            let c = build_brst(t, n, k).unwrap();
            let r = check_q_squared_zero(&c, 2).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn flipped_cubic_term_is_caught() {
        let c = build_brst(TypeLabel::A, 2, Q::int(-1)).unwrap().with_flipped_cubic().unwrap();
        let r = check_q_squared_zero(&c, 2).unwrap();
        assert!(!r.wick_zero);
        assert!(r.witness.as_deref().is_some_and(|w| w.contains("|0⟩")), "{r:?}");
    }

    #[test]
    fn embedding_closes_at_shifted_level() {
        for (t, n) in [(TypeLabel::A, 2), (TypeLabel::A, 3), (TypeLabel::C, 2)] {
            let c = build_brst(t, n, q(2, 7)).unwrap();
            let r = check_natural_embedding(&c, None).unwrap();
            assert!(r.passed(), "{t}{n}: {:?}", r.pairs.iter().find(|p| !p.bracket_ok || p.observed_level != p.expected_level));
        }
    }

    /// `[φ(x)_λ φ(y)]` constant term divided by `κ₀(x, y)`.
    fn wick_level(c: &BrstComplex, x: &[Q], y: &[Q]) -> Q {
        let fx = c.natural_embedding_field(x).unwrap();
        let fy = c.natural_embedding_field(y).unwrap();
        let d = wick_commutator(&c.system, &fx, &fy).unwrap();
        d.coeff(1).scalar_part() / c.g.kappa0(x, y)
    }

    #[test]
    fn sl4_centre_has_level_k_plus_two() {
        for k in [Q::int(-2), q(1, 3), Q::int(5)] {
            let c = build_brst(TypeLabel::A, 3, k).unwrap();
            let g = &c.g;
            // Centre of g♮: the Cartan element of g♮ killed by every root of g♮.
            let cartan: Vec<&Elem> = c.triple.natural_basis.iter().filter(|v| (0..g.rank()).any(|i| !v[g.h(i)].is_zero())).collect();
            let rows: Vec<Vec<Q>> = c
                .triple
                .grading
                .natural_roots
                .iter()
                .map(|&r| cartan.iter().map(|h| g.bracket(h, &g.unit(g.e(r)))[g.e(r)]).collect())
                .collect();
            let null = Mat::from_rows(rows).null_space();
            assert_eq!(null.len(), 1);
            let mut z = g.zero();
            for (coef, h) in null[0].iter().zip(&cartan) {
                for (zi, hi) in z.iter_mut().zip(h.iter()) {
                    *zi += *coef * *hi;
                }
            }
            assert_eq!(wick_level(&c, &z, &z), k + Q::int(2));
        }
    }

    #[test]
    fn sp4_natural_factor_has_level_k_plus_half() {
        for k in [Q::int(-2), q(1, 3), Q::int(5)] {
            let c = build_brst(TypeLabel::C, 2, k).unwrap();
            let g = &c.g;
            let r = c.triple.grading.natural_roots[0];
            // The root 2ε_2 is long, so κ₀ is the normalized form of this sl_2 factor.
            assert_eq!(g.root_system.inner(&g.root_system.positive_roots[r], &g.root_system.positive_roots[r]), Q::int(2));
            assert_eq!(wick_level(&c, &g.unit(g.e(r)), &g.unit(g.f(r))), k + Q::half());
        }
    }

    #[test]
    fn rejects_exceptional_and_large_rank() {
        assert!(matches!(build_brst(TypeLabel::G, 2, Q::ONE), Err(Error::Unsupported(_))));
        assert!(matches!(build_brst(TypeLabel::A, MAX_RANK + 1, Q::ONE), Err(Error::Capacity(_))));
    }
}
