//! Level arithmetic for parabolics with commutative nilradical.
//!
//! * collapsing levels `k_p`, fixed by `(k κ₀ − κ_c^p)|_{[l,l]} = 0`;
//! * the shifted level `κ♮` on the centralizer `g♮` of the minimal `sl₂`-triple;
//! * central charges of the minimal W-algebra and of Sugawara fields;
//! * the recursion `(g, p, k_p) ↦ (g̃♮, p̃♮, k_{p̃♮})` ending at a base case, which
//!   determines the associated variety of the simple quotient.
//!
//! Everything here works from root data, so the exceptional types are covered. Levels
//! of a simple factor are measured in that factor's own normalized form (long roots
//! of square length 2); levels of the one-dimensional centre of `g♮` are ratios
//! to `κ₀`.

mod chain;
mod poly;
pub mod tables;

pub use chain::{base_case_axioms, table5_chain, AssociatedVariety, BaseCaseAxiom, ChainStep, Table5Chain};
pub use poly::Poly;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{MinimalGrading, ParabolicDatum};
use crate::linalg::dot;
use crate::rational::Q;
use crate::rootsys::{algebra_dimension, algebra_name, dual_coxeter, RootSystem, SimpleFactor, TypeLabel};

/// An affine function `slope·k + intercept` of the level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Affine {
    pub slope: Q,
    pub intercept: Q,
}

impl Affine {
    pub fn new(slope: Q, intercept: Q) -> Affine {
        Affine { slope, intercept }
    }

    pub fn eval(&self, k: Q) -> Q {
        self.slope * k + self.intercept
    }

    /// The root of a non-constant affine function.
    pub fn root(&self) -> Option<Q> {
        (!self.slope.is_zero()).then(|| -self.intercept / self.slope)
    }
}

impl fmt::Display for Affine {
    /// `k + 3/2`, `2k + 4`, `k - 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = Poly::new(vec![self.intercept]);
        let s = Poly::new(vec![self.slope]);
        f.write_str(&poly::render_linear(&s, &p, "n", "k"))
    }
}

/// Level of one factor of `g♮`.
#[derive(Clone, Debug, Serialize)]
pub struct NaturalFactorLevel {
    /// `gl1` for the centre, otherwise the factor's name.
    pub name: String,
    /// `None` for the centre.
    pub factor: Option<SimpleFactor>,
    pub level: Affine,
}

/// `κ♮` on `g♮ = ⊕ g_i♮` as affine functions of `k`.
#[derive(Clone, Debug, Serialize)]
pub struct NaturalLevelDatum {
    pub algebra: String,
    pub type_label: TypeLabel,
    pub rank: usize,
    /// Centre first (when present), then the simple factors in node order.
    pub factors: Vec<NaturalFactorLevel>,
}

impl NaturalLevelDatum {
    pub fn centre(&self) -> Option<&NaturalFactorLevel> {
        self.factors.iter().find(|f| f.factor.is_none())
    }

    pub fn simple_factors(&self) -> impl Iterator<Item = &NaturalFactorLevel> {
        self.factors.iter().filter(|f| f.factor.is_some())
    }

    /// The simple factor containing a node (0-based ambient numbering).
    pub fn factor_containing(&self, node: usize) -> Option<&NaturalFactorLevel> {
        self.factors.iter().find(|f| f.factor.as_ref().is_some_and(|sf| sf.nodes.contains(&node)))
    }
}

/// `κ♮ = κ + ½(κ_g − κ_{g₀} − κ_{g_{1/2}})` restricted to `g♮`.
///
/// On a simple factor `g_i♮` this is
/// `k_i♮ = ((2k + h∨)·ind(g_i♮, g_{1/2}) + k·ind(g_i♮, g_i♮)) / (2h∨)` with
/// `ind(g_i♮, g_i♮) = 2h_i∨`; on the centre it is `k + h∨/2`.
pub fn kappa_natural(t: TypeLabel, rank: usize) -> Result<NaturalLevelDatum> {
    let rs = RootSystem::new(t, rank)?;
    let grading = MinimalGrading::new(&rs);
    let h = Q::int(rs.dual_coxeter as i64);
    let half: Vec<&Vec<Q>> = grading.half_roots.iter().map(|&r| &rs.positive_roots[r]).collect();
    let mut factors = Vec::new();
    if grading.abelian_dim == 1 {
        factors.push(NaturalFactorLevel { name: "gl1".into(), factor: None, level: Affine::new(Q::ONE, h / Q::int(2)) });
    }
    for f in &grading.natural_factors {
        let ind_half = rs.factor_index_on_weights(f, half.iter().copied());
        let ind_self = Q::int(2 * f.dual_coxeter as i64);
        let level = Affine::new((Q::int(2) * ind_half + ind_self) / (Q::int(2) * h), ind_half / Q::int(2));
        factors.push(NaturalFactorLevel { name: f.name(), factor: Some(f.clone()), level });
    }
    Ok(NaturalLevelDatum { algebra: rs.name(), type_label: t, rank, factors })
}

/// One simple factor `l_i` of `[l, l]` in a collapsing-level computation.
#[derive(Clone, Debug, Serialize)]
pub struct CollapsingFactor {
    pub name: String,
    /// `ind_D(l_i, u)`.
    pub index: u64,
    pub dual_coxeter: u32,
    /// `−ind·h∨/(ind + h_i∨)`: the level this factor alone asks for.
    pub level: Q,
    /// `(k κ₀ − κ_c^p)|_{l_i}` in units of `l_i`'s normalized form, as a function of `k`.
    pub residual: Affine,
}

/// Collapsing level of `p_{α_k}` with the data entering it.
#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub algebra: String,
    pub type_label: TypeLabel,
    pub rank: usize,
    pub parabolic: usize,
    pub dual_coxeter: u32,
    pub dim_u: usize,
    pub factors: Vec<CollapsingFactor>,
    /// All factors ask for the same level.
    pub consistent: bool,
    /// `k_p` (the common level; the first factor's when inconsistent).
    pub k_p: Q,
    /// `(k κ₀ + ½κ_g)(h_c, h_c)` on the generator `h_c` of `z(l)`, as a function of `k`.
    pub heisenberg: Affine,
    /// `heisenberg` at `k_p`.
    pub heisenberg_level: Q,
}

/// `k_p = −ind_D(l_i, u)·h∨ / (ind_D(l_i, u) + h_i∨)`, required to agree across the
/// factors of `[l, l]`.
pub fn collapsing_level(t: TypeLabel, rank: usize, k: usize) -> Result<LevelReport> {
    let rs = RootSystem::new(t, rank)?;
    let p = ParabolicDatum::new(&rs, k, false)?;
    if p.levi_factors.is_empty() {
        return Err(Error::Unsupported(format!(
            "p_α{k} of {} has [l, l] = 0, so no level is singled out",
            rs.name()
        )));
    }
    let h = Q::int(rs.dual_coxeter as i64);
    let factors: Vec<CollapsingFactor> = p
        .levi_factors
        .iter()
        .map(|lf| {
            let ind = Q::int(lf.index as i64);
            let hi = Q::int(lf.factor.dual_coxeter as i64);
            CollapsingFactor {
                name: lf.factor.name(),
                index: lf.index,
                dual_coxeter: lf.factor.dual_coxeter,
                level: -ind * h / (ind + hi),
                residual: Affine::new((hi + ind) / h, ind),
            }
        })
        .collect();
    let k_p = factors[0].level;
    let consistent = factors.iter().all(|f| f.level == k_p);
    // κ_g(h_c, h_c) = 2 Σ_{α∈Δ_u} α(h_c)²; κ₀ = κ_g/(2h∨).
    let kg: Q = Q::int(2) * p.delta_u.iter().map(|a| dot(a, &p.center_generator).pow(2)).sum::<Q>();
    let heisenberg = Affine::new(kg / (Q::int(2) * h), kg / Q::int(2));
    Ok(LevelReport {
        algebra: rs.name(),
        type_label: t,
        rank,
        parabolic: k,
        dual_coxeter: rs.dual_coxeter,
        dim_u: p.dim_u,
        consistent,
        heisenberg_level: heisenberg.eval(k_p),
        heisenberg,
        k_p,
        factors,
    })
}

/// `c = k·dim g/(k + h∨) − 6k + h∨ − 4`.
pub fn minimal_w_central_charge(t: TypeLabel, rank: usize, k: Q) -> Result<Q> {
    let h = Q::int(dual_coxeter(t, rank) as i64);
    if k + h == Q::ZERO {
        return Err(Error::Invalid(format!("k = {k} is the critical level of {}", algebra_name(t, rank))));
    }
    let dim = Q::int(algebra_dimension(t, rank) as i64);
    Ok(k * dim / (k + h) - Q::int(6) * k + h - Q::int(4))
}

/// What a Sugawara construction is attached to.
#[derive(Clone, Copy, Debug)]
pub enum SugawaraFactor<'a> {
    /// A one-dimensional abelian factor.
    Abelian,
    Simple(&'a SimpleFactor),
}

/// `k·dim/(k + h∨)` for a simple factor. An abelian factor contributes 1 at nonzero
/// level and 0 at level zero, where the simple quotient is trivial.
pub fn sugawara_central_charge(factor: SugawaraFactor<'_>, level: Q) -> Result<Q> {
    match factor {
        SugawaraFactor::Abelian => Ok(if level.is_zero() { Q::ZERO } else { Q::ONE }),
        SugawaraFactor::Simple(f) => {
            let h = Q::int(f.dual_coxeter as i64);
            if level + h == Q::ZERO {
                return Err(Error::Invalid(format!("level {level} is critical for {}", f.name())));
            }
            Ok(level * Q::int(f.dimension() as i64) / (level + h))
        }
    }
}

/// Both sides of the central-charge identity at the collapsing level.
#[derive(Clone, Debug, Serialize)]
pub struct ChargeCheck {
    pub algebra: String,
    pub parabolic: usize,
    pub k_p: Q,
    pub w_charge: Q,
    /// `(factor, level, Sugawara charge)`.
    pub sugawara: Vec<(String, Q, Q)>,
    pub sugawara_total: Q,
    pub passed: bool,
}

/// `c(W_k(g, f_θ)) = Σ_i c_Sugawara(g_i♮, k_i♮)` at `k = k_p`.
pub fn central_charge_check(t: TypeLabel, rank: usize, k: usize) -> Result<ChargeCheck> {
    let report = collapsing_level(t, rank, k)?;
    let natural = kappa_natural(t, rank)?;
    let w_charge = minimal_w_central_charge(t, rank, report.k_p)?;
    let mut sugawara = Vec::new();
    for f in &natural.factors {
        let level = f.level.eval(report.k_p);
        let kind = match &f.factor {
            Some(sf) => SugawaraFactor::Simple(sf),
            None => SugawaraFactor::Abelian,
        };
        sugawara.push((f.name.clone(), level, sugawara_central_charge(kind, level)?));
    }
    let sugawara_total: Q = sugawara.iter().map(|(_, _, c)| *c).sum();
    Ok(ChargeCheck {
        algebra: report.algebra,
        parabolic: k,
        k_p: report.k_p,
        w_charge,
        passed: w_charge == sugawara_total,
        sugawara,
        sugawara_total,
    })
}

/// The eight families of parabolics with commutative nilradical and a collapsing
/// level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// `a_n`, `p_{α_1}` and `p_{α_n}`.
    AEnd,
    /// `a_{2n−1}`, `p_{α_n}`.
    AMiddle,
    /// `b_n`, `p_{α_1}`.
    BFirst,
    /// `c_n`, `p_{α_n}`.
    CLast,
    /// `d_n`, `p_{α_1}`.
    DFirst,
    /// `d_n`, `p_{α_n}` and `p_{α_{n−1}}`.
    DSpin,
    E6,
    E7,
}

impl Family {
    pub const ALL: [Family; 8] =
        [Family::AEnd, Family::AMiddle, Family::BFirst, Family::CLast, Family::DFirst, Family::DSpin, Family::E6, Family::E7];

    pub fn type_label(self) -> TypeLabel {
        match self {
            Family::AEnd | Family::AMiddle => TypeLabel::A,
            Family::BFirst => TypeLabel::B,
            Family::CLast => TypeLabel::C,
            Family::DFirst | Family::DSpin => TypeLabel::D,
            Family::E6 | Family::E7 => TypeLabel::E,
        }
    }

    /// Smallest value of the row parameter `n`; `None` for the fixed exceptional rows.
    pub fn min_param(self) -> Option<usize> {
        match self {
            Family::DFirst | Family::DSpin => Some(4),
            Family::E6 | Family::E7 => None,
            _ => Some(2),
        }
    }

    /// Rank for the row parameter `n`.
    pub fn rank(self, n: usize) -> usize {
        match self {
            Family::AMiddle => 2 * n - 1,
            Family::E6 => 6,
            Family::E7 => 7,
            _ => n,
        }
    }

    /// Row parameter of a rank, when the rank belongs to the family.
    pub fn param(self, rank: usize) -> Option<usize> {
        let n = match self {
            Family::AMiddle if rank % 2 == 1 => (rank + 1) / 2,
            Family::AMiddle => return None,
            Family::E6 => return (rank == 6).then_some(6),
            Family::E7 => return (rank == 7).then_some(7),
            _ => rank,
        };
        (n >= self.min_param().unwrap_or(0)).then_some(n)
    }

    /// The parabolics `p_{α_k}` of the row at a given rank.
    pub fn parabolics(self, rank: usize) -> Vec<usize> {
        match self {
            Family::AEnd => vec![1, rank],
            Family::AMiddle => vec![(rank + 1) / 2],
            Family::BFirst | Family::DFirst => vec![1],
            Family::CLast => vec![rank],
            Family::DSpin => vec![rank, rank - 1],
            Family::E6 => vec![1, 5],
            Family::E7 => vec![6],
        }
    }

    /// Algebra column, e.g. `a_{2n-1}`.
    pub fn algebra_label(self) -> &'static str {
        match self {
            Family::AEnd => "a_n",
            Family::AMiddle => "a_{2n-1}",
            Family::BFirst => "b_n",
            Family::CLast => "c_n",
            Family::DFirst | Family::DSpin => "d_n",
            Family::E6 => "e_6",
            Family::E7 => "e_7",
        }
    }

    pub fn condition(self) -> Option<String> {
        self.min_param().map(|m| format!("n >= {m}"))
    }

    pub fn parabolic_label(self) -> &'static str {
        match self {
            Family::AEnd => "p_{α_1}, p_{α_n}",
            Family::AMiddle => "p_{α_n}",
            Family::BFirst | Family::DFirst => "p_{α_1}",
            Family::CLast => "p_{α_n}",
            Family::DSpin => "p_{α_n}, p_{α_{n-1}}",
            Family::E6 => "p_{α_1}, p_{α_5}",
            Family::E7 => "p_{α_6}",
        }
    }

    /// The family containing `p_{α_k}` of a given algebra.
    pub fn of(t: TypeLabel, rank: usize, k: usize) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.type_label() == t && f.param(rank).is_some() && f.parabolics(rank).contains(&k))
    }

    /// `(type, rank, k)` for the first `count` members, in row order.
    pub fn cases(self, count: usize) -> Vec<(TypeLabel, usize, usize)> {
        match self.min_param() {
            None => self.parabolics(self.rank(0)).into_iter().map(|k| (self.type_label(), self.rank(0), k)).collect(),
            Some(m) => (m..m + count)
                .map(|n| {
                    let r = self.rank(n);
                    (self.type_label(), r, self.parabolics(r)[0])
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{MatrixLieAlgebra, MinimalTriple};
    use crate::rational::q;

    #[test]
    fn affine_display() {
        assert_eq!(Affine::new(Q::ONE, q(3, 2)).to_string(), "k + 3/2");
        assert_eq!(Affine::new(Q::int(2), Q::int(4)).to_string(), "2k + 4");
        assert_eq!(Affine::new(Q::ONE, q(-1, 2)).to_string(), "k - 1/2");
        assert_eq!(Affine::new(Q::ONE, Q::ZERO).to_string(), "k");
    }

    #[test]
    fn a1_borel_is_rejected() {
        assert!(collapsing_level(TypeLabel::A, 1, 1).is_err());
    }

    #[test]
    fn critical_levels_rejected() {
        assert!(minimal_w_central_charge(TypeLabel::A, 2, Q::int(-3)).is_err());
        let f = SimpleFactor { type_label: TypeLabel::A, rank: 1, nodes: vec![0], dual_coxeter: 2 };
        assert!(sugawara_central_charge(SugawaraFactor::Simple(&f), Q::int(-2)).is_err());
    }

    #[test]
    fn central_charge_examples() {
        assert_eq!(minimal_w_central_charge(TypeLabel::A, 2, Q::int(-1)).unwrap(), Q::ONE);
        assert_eq!(minimal_w_central_charge(TypeLabel::C, 2, Q::int(-2)).unwrap(), Q::int(-9));
        assert_eq!(minimal_w_central_charge(TypeLabel::E, 7, Q::int(-6)).unwrap(), q(-33, 2));
        let sl2 = SimpleFactor { type_label: TypeLabel::A, rank: 1, nodes: vec![0], dual_coxeter: 2 };
        assert_eq!(sugawara_central_charge(SugawaraFactor::Simple(&sl2), Q::int(-1)).unwrap(), Q::int(-3));
        assert_eq!(sugawara_central_charge(SugawaraFactor::Abelian, q(1, 2)).unwrap(), Q::ONE);
        assert_eq!(sugawara_central_charge(SugawaraFactor::Abelian, Q::ZERO).unwrap(), Q::ZERO);
    }

    /// Shifted level from matrices: `k_i = [k κ₀(h,h) + ½ tr_{g_{1/2}}(ad h)²] / κ_i(h,h)`
    /// with `h` the coroot of a long root of the factor (so `κ_i(h,h) = 2`), and the
    /// ratio to `κ₀` on the centre.
    fn matrix_natural_levels(t: TypeLabel, n: usize, k: Q) -> Vec<Q> {
        let g = MatrixLieAlgebra::new(t, n).unwrap();
        let rs = &g.root_system;
        let tri = MinimalTriple::new(&g);
        let grading = MinimalGrading::new(rs);
        let half_sq = |h: &[Q]| -> Q {
            tri.half_basis
                .iter()
                .map(|&i| {
                    let e = g.unit(i);
                    let br = g.bracket(h, &e);
                    // ad h acts on the root vector e by a scalar.
                    let c = br[i] / e[i];
                    c * c
                })
                .sum::<Q>()
        };
        let mut out = Vec::new();
        if grading.abelian_dim == 1 {
            // Cartan element orthogonal to θ and to every natural simple root.
            let mut rows: Vec<Vec<Q>> = grading.natural_nodes.iter().map(|&i| rs.simple_roots[i].clone()).collect();
            rows.push(rs.theta.clone());
            if t == TypeLabel::A {
                rows.push(vec![Q::ONE; rs.ambient]);
            }
            let ns = crate::linalg::Mat::from_rows(rows).null_space();
            assert_eq!(ns.len(), 1);
            let x = g.cartan_element(&ns[0]).unwrap();
            out.push(k + half_sq(&x) / (Q::int(2) * g.kappa0(&x, &x)));
        }
        for f in &grading.natural_factors {
            let h = g.coroot(&rs.factor_long_root(f));
            out.push((k * g.kappa0(&h, &h) + half_sq(&h) / Q::int(2)) / Q::int(2));
        }
        out
    }

    #[test]
    fn natural_levels_agree_with_matrices() {
        let cases = [
            (TypeLabel::A, 2),
            (TypeLabel::A, 3),
            (TypeLabel::A, 5),
            (TypeLabel::B, 3),
            (TypeLabel::B, 4),
            (TypeLabel::C, 2),
            (TypeLabel::C, 4),
            (TypeLabel::D, 4),
            (TypeLabel::D, 5),
        ];
        for (t, n) in cases {
            let datum = kappa_natural(t, n).unwrap();
            for k in [Q::int(-3), q(1, 3), Q::int(5)] {
                let from_roots: Vec<Q> = datum.factors.iter().map(|f| f.level.eval(k)).collect();
                assert_eq!(from_roots, matrix_natural_levels(t, n, k), "{t}{n} at k = {k}");
            }
        }
    }

    #[test]
    fn collapsing_residuals_match_freefield() {
        for (t, n, k) in [(TypeLabel::A, 3, 1), (TypeLabel::A, 3, 2), (TypeLabel::B, 3, 1), (TypeLabel::C, 3, 3), (TypeLabel::D, 4, 4)] {
            let report = collapsing_level(t, n, k).unwrap();
            let (g, p) = crate::freefield::setup(t, n, k).unwrap();
            assert_eq!(crate::freefield::level_for_parabolic(&g, &p), Some(report.k_p));
            for kk in [Q::int(-2), q(3, 5)] {
                let matrix = crate::freefield::level_residuals(&g, &p, kk);
                for (f, (_, r)) in report.factors.iter().zip(&matrix) {
                    // Residual per unit of κ₀ on the factor's coroot, rescaled.
                    let scale = Q::int(report.dual_coxeter as i64) / (Q::int(f.dual_coxeter as i64) + Q::int(f.index as i64));
                    assert_eq!(f.residual.eval(kk) * scale, *r);
                }
                // Heisenberg level equals the tilde gram k κ₀ − κ_c^p on h_c.
                let hc = p.h_c(&g);
                assert_eq!(report.heisenberg.eval(kk), kk * g.kappa0(&hc, &hc) - p.kappa_c_p(&g, &hc, &hc));
            }
        }
    }
}
