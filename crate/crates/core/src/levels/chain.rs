//! The reduction `(g, p, k_p) ↦ (g̃♮, p̃♮, k_{p̃♮})` and the associated variety it
//! determines.
//!
//! `g̃♮` is the factor of `g♮` met by `Π♮ ∖ Σ♮ = Π♮ ∩ {α_k}`: the simple factor
//! containing `α_k`, with `p̃♮` the parabolic at that node, or the centre `gl_1`
//! when `α_k ∉ Π♮`. The recursion continues while `g̃♮` is again a collapsing case
//! and stops at `gl_1` or `sl_2`, where a configured base-case axiom decides whether
//! the quotient is simple. The answer is lifted back up: simplicity propagates and
//! gives the sheet closure `S̄*_p`; otherwise an orbit closure `Ō♮` of `g̃♮` lifts to
//! the closure of `χ⁻¹(O♮)`.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{collapsing_level, kappa_natural};
use crate::error::{Error, Result};
use crate::liealg::{standard_node_order, MinimalGrading};
use crate::orbits::{exceptional_chi_map, ChiSetting, Orbit, OrbitLabel};
use crate::rational::Q;
use crate::rootsys::{RootSystem, TypeLabel};

/// Which levels an axiom covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LevelSet {
    Nonzero,
    Exact { value: Q },
    /// `value, value + 1, …` with `value ∈ ½ + ℤ`.
    HalfOddAtLeast { value: Q },
    IntegerAtLeast { value: Q },
}

impl LevelSet {
    pub fn contains(&self, k: Q) -> bool {
        match self {
            LevelSet::Nonzero => !k.is_zero(),
            LevelSet::Exact { value } => k == *value,
            LevelSet::HalfOddAtLeast { value } => k >= *value && (k - Q::half()).is_integer(),
            LevelSet::IntegerAtLeast { value } => k >= *value && k.is_integer(),
        }
    }
}

/// Associated variety of the simple quotient in a base case, relative to its parabolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseVariety {
    /// The quotient is simple; its variety is the sheet closure.
    Sheet,
    /// Closure of the Richardson orbit of the parabolic.
    Richardson,
    Zero,
}

/// A configured fact about a base case, not derived here.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BaseCaseAxiom {
    pub id: String,
    /// `gl1` or `sl2` (with its Borel subalgebra).
    pub algebra: String,
    pub levels: LevelSet,
    /// The quotient `Ṽ^κ(g̃♮)` is simple.
    pub simple: bool,
    pub variety: BaseVariety,
    pub basis: String,
}

/// The configured base cases.
pub fn base_case_axioms() -> &'static [BaseCaseAxiom] {
    static AXIOMS: OnceLock<Vec<BaseCaseAxiom>> = OnceLock::new();
    AXIOMS.get_or_init(|| {
        serde_json::from_str(include_str!("../../data/base_cases.json")).expect("base_cases.json is valid")
    })
}

fn find_axiom(algebra: &str, level: Q) -> Result<&'static BaseCaseAxiom> {
    let found: Vec<&BaseCaseAxiom> =
        base_case_axioms().iter().filter(|a| a.algebra == algebra && a.levels.contains(level)).collect();
    match found.as_slice() {
        [a] => Ok(a),
        [] => Err(Error::UnresolvedBaseCase(format!("no axiom covers {algebra} at level {level}"))),
        _ => Err(Error::UnresolvedBaseCase(format!("several axioms cover {algebra} at level {level}"))),
    }
}

/// One reduction step.
#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub algebra: String,
    pub type_label: TypeLabel,
    pub rank: usize,
    pub parabolic: usize,
    pub level: Q,
    /// `Π♮` (1-based nodes).
    pub natural_nodes: Vec<usize>,
    /// `Π♮ ∖ Σ♮` (1-based nodes).
    pub removed: Vec<usize>,
    /// Summands of `g♮`.
    pub natural_algebra: Vec<String>,
    /// `g̃♮`: `gl1` or a simple factor.
    pub tilde_algebra: String,
    /// Type and rank of `g̃♮` when it is simple.
    pub tilde_type: Option<(TypeLabel, usize)>,
    /// `p̃♮` in the standard numbering of `g̃♮`.
    pub tilde_parabolic: Option<usize>,
    pub tilde_level: Q,
}

/// An associated variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AssociatedVariety {
    /// `S̄*_{p_{α_k}}`.
    Sheet { algebra: String, parabolic: usize },
    /// `Ō*` for a nilpotent orbit.
    OrbitClosure { orbit: Orbit },
}

impl fmt::Display for AssociatedVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AssociatedVariety::Sheet { parabolic, .. } => write!(f, "S\u{304}*_{{p_{{α_{parabolic}}}}}"),
            AssociatedVariety::OrbitClosure { orbit } => write!(f, "O\u{304}*_{{{orbit}}}"),
        }
    }
}

/// The full reduction chain of a collapsing case.
#[derive(Clone, Debug, Serialize)]
pub struct Table5Chain {
    pub steps: Vec<ChainStep>,
    pub base: BaseCaseAxiom,
    pub base_level: Q,
    /// Variety at each step, aligned with `steps`; the first entry is the answer.
    pub varieties: Vec<AssociatedVariety>,
}

impl Table5Chain {
    pub fn variety(&self) -> &AssociatedVariety {
        &self.varieties[0]
    }

    pub fn first(&self) -> &ChainStep {
        &self.steps[0]
    }
}

/// Variety of `g̃♮` as seen from the step above.
enum Partial {
    Sheet,
    Zero,
    Richardson,
    Orbit(Orbit),
}

/// Run the reduction from `(g, p_{α_k})` at its collapsing level.
pub fn table5_chain(t: TypeLabel, rank: usize, k: usize) -> Result<Table5Chain> {
    let report = collapsing_level(t, rank, k)?;
    if !report.consistent {
        return Err(Error::LevelCondition(format!("p_α{k} of {} has no collapsing level", report.algebra)));
    }
    let (mut t, mut rank, mut k, mut level) = (t, rank, k, report.k_p);
    let mut steps = Vec::new();
    let (base, base_level) = loop {
        let rs = RootSystem::new(t, rank)?;
        let grading = MinimalGrading::new(&rs);
        let natural = kappa_natural(t, rank)?;
        let removed: Vec<usize> = grading.natural_nodes.iter().copied().filter(|&i| i == k - 1).collect();
        let mut natural_algebra: Vec<String> = natural.factors.iter().map(|f| f.name.clone()).collect();
        if natural_algebra.is_empty() {
            natural_algebra.push("0".into());
        }
        let mut step = ChainStep {
            algebra: rs.name(),
            type_label: t,
            rank,
            parabolic: k,
            level,
            natural_nodes: grading.natural_nodes.iter().map(|i| i + 1).collect(),
            removed: removed.iter().map(|i| i + 1).collect(),
            natural_algebra,
            tilde_algebra: String::new(),
            tilde_type: None,
            tilde_parabolic: None,
            tilde_level: Q::ZERO,
        };
        if removed.is_empty() {
            let centre = natural
                .centre()
                .ok_or_else(|| Error::UnresolvedBaseCase(format!("α{k} ∉ Π♮ and g♮ of {} has no centre", rs.name())))?;
            step.tilde_algebra = "gl1".into();
            step.tilde_level = centre.level.eval(level);
            let lvl = step.tilde_level;
            steps.push(step);
            break (find_axiom("gl1", lvl)?, lvl);
        }
        let nf = natural.factor_containing(k - 1).expect("α_k lies in a factor of g♮");
        let f = nf.factor.clone().expect("simple factor");
        let frs = RootSystem::new(f.type_label, f.rank)?;
        let order = standard_node_order(&rs, &f, &frs)?;
        let pk = order.iter().position(|&i| i == k - 1).expect("node in factor") + 1;
        step.tilde_algebra = f.name();
        step.tilde_type = Some((f.type_label, f.rank));
        step.tilde_parabolic = Some(pk);
        step.tilde_level = nf.level.eval(level);
        let lvl = step.tilde_level;
        steps.push(step);
        if f.type_label == TypeLabel::A && f.rank == 1 {
            break (find_axiom("sl2", lvl)?, lvl);
        }
        let next = collapsing_level(f.type_label, f.rank, pk)?;
        if !next.consistent || next.k_p != lvl {
            return Err(Error::UnresolvedBaseCase(format!(
                "{} with p_α{pk} at level {lvl} is neither a base case nor at its collapsing level {}",
                f.name(),
                next.k_p
            )));
        }
        (t, rank, k, level) = (f.type_label, f.rank, pk, lvl);
    };

    // Lift the base-case variety back up the chain.
    let mut partial = match base.variety {
        BaseVariety::Sheet => Partial::Sheet,
        BaseVariety::Zero => Partial::Zero,
        BaseVariety::Richardson => Partial::Richardson,
    };
    let mut varieties = Vec::with_capacity(steps.len());
    for step in steps.iter().rev() {
        let lifted = lift(step, partial)?;
        let v = match &lifted {
            Partial::Sheet => AssociatedVariety::Sheet { algebra: step.algebra.clone(), parabolic: step.parabolic },
            Partial::Orbit(o) => AssociatedVariety::OrbitClosure { orbit: o.clone() },
            _ => unreachable!("lifting resolves relative labels"),
        };
        varieties.push(v);
        partial = lifted;
    }
    varieties.reverse();
    Ok(Table5Chain { steps, base: base.clone(), base_level, varieties })
}

fn lift(step: &ChainStep, x: Partial) -> Result<Partial> {
    if matches!(x, Partial::Sheet) {
        return Ok(Partial::Sheet);
    }
    if step.type_label == TypeLabel::E {
        let map = exceptional_chi_map(step.rank, step.parabolic)?;
        let j = match &x {
            Partial::Zero => map.target.nodes.iter().position(Orbit::is_zero),
            Partial::Richardson => Some(map.target.nodes.len() - 1),
            Partial::Orbit(o) => map.target.position(o),
            Partial::Sheet => unreachable!(),
        };
        let j = j.ok_or_else(|| Error::Invalid(format!("orbit of {} not in the χ target of {}", step.tilde_algebra, step.algebra)))?;
        let (i, _) = map.arrows.iter().find(|(_, b)| *b == j).expect("χ is onto");
        return Ok(Partial::Orbit(map.source.nodes[*i].clone()));
    }
    let setting = ChiSetting::new(step.type_label, step.rank, step.parabolic)?;
    let mu = match x {
        Partial::Zero => OrbitLabel::zero(setting.target_type, setting.target_rank)?,
        Partial::Richardson => setting.target_richardson()?,
        Partial::Orbit(Orbit::Classical(l)) if l.type_label == setting.target_type && l.rank == setting.target_rank => l,
        Partial::Orbit(o) => {
            return Err(Error::Invalid(format!("cannot lift {o} through χ to {}", step.algebra)));
        }
        Partial::Sheet => unreachable!(),
    };
    Ok(Partial::Orbit(Orbit::Classical(setting.chi_inverse(&mu)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn axioms_are_disjoint_on_sl2() {
        for num in -10..20 {
            for den in [1, 2] {
                let k = q(num, den);
                let n = base_case_axioms().iter().filter(|a| a.algebra == "sl2" && a.levels.contains(k)).count();
                assert!(n <= 1, "level {k}");
            }
        }
    }

    #[test]
    fn missing_axiom_is_reported() {
        assert!(matches!(find_axiom("sl2", q(-7, 3)), Err(Error::UnresolvedBaseCase(_))));
        assert!(matches!(find_axiom("gl1", Q::ZERO), Err(Error::UnresolvedBaseCase(_))));
    }

    #[test]
    fn sl4_middle_reduces_to_sl2_borel() {
        let c = table5_chain(TypeLabel::A, 3, 2).unwrap();
        assert_eq!(c.steps.len(), 1);
        assert_eq!(c.first().tilde_algebra, "sl2");
        assert_eq!(c.base_level, Q::int(-1));
        assert_eq!(c.variety().to_string(), "S\u{304}*_{p_{α_2}}");
    }
}
