//! Verification of the affine commutation relations
//! `[R(x)(z), R(y)(w)] = R([x,y])(w) δ(z−w) + k κ₀(x,y) ∂_w δ(z−w)`.

use std::fmt;

use serde::Serialize;

use super::RealizationMap;
use crate::error::Result;
use crate::liealg::BasisKind;
use crate::vertex::{wick_commutator, DeltaExpansion, Factor, Field, Gen, ModeOracle, OracleReport};

/// Outcome for one ordered pair of generators.
#[derive(Clone, Debug, Serialize)]
pub struct PairStatus {
    pub x: String,
    pub y: String,
    pub wick_ok: bool,
    /// First mismatched δ-coefficient: `(k, computed, expected)`.
    pub mismatch: Option<(usize, String, String)>,
    pub oracle: Option<OracleReport>,
}

impl PairStatus {
    pub fn passed(&self) -> bool {
        self.wick_ok && self.oracle.as_ref().is_none_or(|o| o.passed())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub algebra: String,
    pub parabolic: usize,
    pub level: String,
    pub cutoff: Option<i64>,
    pub pairs: Vec<PairStatus>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.passed())
    }

    pub fn failures(&self) -> Vec<&PairStatus> {
        self.pairs.iter().filter(|p| !p.passed()).collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cut = self.cutoff.map_or("off".to_string(), |c| c.to_string());
        writeln!(f, "{} p_{} k={} oracle cutoff {}: {} pairs", self.algebra, self.parabolic, self.level, cut, self.pairs.len())?;
        for p in &self.pairs {
            let oracle = match &p.oracle {
                None => "-".to_string(),
                Some(o) if o.passed() => format!("ok ({} states)", o.states),
                Some(o) => format!("FAIL {}", o.failure.as_deref().unwrap_or("")),
            };
            let wick = match &p.mismatch {
                None => "ok".to_string(),
                Some((k, got, want)) => format!("FAIL at ∂^{k}δ: {got} ≠ {want}"),
            };
            writeln!(f, "  [{}, {}] wick {} oracle {}", p.x, p.y, wick, oracle)?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Expected expansion `R([x,y]) δ + k κ₀(x,y) ∂δ`.
pub fn expected_bracket(r: &RealizationMap, i: usize, j: usize) -> DeltaExpansion {
    let g = &r.algebra;
    let mut br = Field::zero();
    for (t, c) in g.bracket_basis(i, j) {
        br.add_scaled(*c, r.image(*t));
    }
    DeltaExpansion::from_coeffs(vec![br, Field::constant(r.level * g.kappa0_basis(i, j))])
}

fn first_mismatch(got: &DeltaExpansion, want: &DeltaExpansion) -> Option<(usize, String, String)> {
    let n = got.coeffs.len().max(want.coeffs.len());
    (0..n).find(|&k| got.coeff(k) != want.coeff(k)).map(|k| (k, got.coeff(k).to_string(), want.coeff(k).to_string()))
}

/// Check every ordered pair of Chevalley generators by Wick calculus and, when a
/// cutoff is given, by the Fock-space mode oracle.
pub fn verify_affine_relations(r: &RealizationMap, cutoff: Option<i64>) -> Result<VerificationReport> {
    verify_pairs(r, &r.chevalley(), cutoff)
}

/// As [`verify_affine_relations`] over an explicit list of basis indices.
pub fn verify_pairs(r: &RealizationMap, gens: &[usize], cutoff: Option<i64>) -> Result<VerificationReport> {
    let oracle = ModeOracle::new(&r.system);
    let mut pairs = Vec::new();
    for &i in gens {
        for &j in gens {
            let got = wick_commutator(&r.system, r.image(i), r.image(j))?;
            let want = expected_bracket(r, i, j);
            let mismatch = first_mismatch(&got, &want);
            let report = match cutoff {
                Some(c) => Some(oracle.check_bracket(r.image(i), r.image(j), &want, c)?),
                None => None,
            };
            pairs.push(PairStatus { x: r.label(i), y: r.label(j), wick_ok: mismatch.is_none(), mismatch, oracle: report });
        }
    }
    Ok(VerificationReport {
        algebra: r.algebra.name(),
        parabolic: r.parabolic.k,
        level: r.level.to_string(),
        cutoff,
        pairs,
    })
}

/// One perturbation of the uniqueness probe.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeResult {
    pub target: String,
    pub perturbation: String,
    /// First Chevalley pair whose relation breaks.
    pub broken: Option<(String, String)>,
}

/// Perturb the image of each Chevalley generator in `l ⊕ u` by weight-one fields of
/// positive `ξ`-degree (`∂a*_β` and `:a*_β b:`) and report which relation breaks.
pub fn uniqueness_probe(r: &RealizationMap) -> Result<Vec<ProbeResult>> {
    let g = &r.algebra;
    let chev = r.chevalley();
    let ubar = r.parabolic.delta_u_index.clone();
    let targets: Vec<usize> = chev
        .iter()
        .copied()
        .filter(|&i| !matches!(g.basis[i].kind, BasisKind::F(x) if ubar.contains(&x)))
        .collect();
    let mut perts: Vec<Field> = Vec::new();
    for beta in 0..r.parabolic.dim_u as u32 {
        perts.push(Field::factor(Factor::new(Gen::AStar(beta), 1)));
        if r.system.heisenberg.rows() > 0 {
            perts.push(Field::monomial(crate::rational::Q::ONE, vec![Factor::new(Gen::AStar(beta), 0), Factor::new(Gen::B(0), 0)])?);
        }
    }
    let mut out = Vec::new();
    for &t in &targets {
        for pert in &perts {
            let mut m = r.clone();
            m.images[t] = m.images[t].add(pert);
            let mut broken = None;
            'pairs: for &i in &chev {
                for (x, y) in [(t, i), (i, t)] {
                    let got = wick_commutator(&m.system, m.image(x), m.image(y))?;
                    if first_mismatch(&got, &expected_bracket(&m, x, y)).is_some() {
                        broken = Some((m.label(x), m.label(y)));
                        break 'pairs;
                    }
                }
            }
            out.push(ProbeResult { target: r.label(t), perturbation: pert.to_string(), broken });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freefield::{build_explicit_realization, Family};

    #[test]
    fn sl2_passes_with_oracle() {
        let r = build_explicit_realization(Family::AMinusOne, 1).unwrap();
        let rep = verify_affine_relations(&r, Some(3)).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.pairs.len(), 9);
    }

    #[test]
    fn mutation_fails_exactly_on_f_pairs() {
        let mut r = build_explicit_realization(Family::AMinusOne, 1).unwrap();
        let f = r.algebra.f(0);
        let d = Field::factor(Factor::new(Gen::AStar(0), 1));
        r.images[f] = r.images[f].sub(&d);
        let rep = verify_affine_relations(&r, Some(3)).unwrap();
        let fl = r.label(f);
        for p in &rep.pairs {
            let involves_f = p.x == fl || p.y == fl;
            assert_eq!(!p.wick_ok, involves_f, "[{}, {}]", p.x, p.y);
            assert_eq!(!p.oracle.as_ref().unwrap().passed(), involves_f, "[{}, {}]", p.x, p.y);
        }
    }

    #[test]
    fn every_probe_breaks_something() {
        let r = build_explicit_realization(Family::C, 2).unwrap();
        let probes = uniqueness_probe(&r).unwrap();
        assert!(!probes.is_empty());
        for p in probes {
            assert!(p.broken.is_some(), "{} + {} survived", p.target, p.perturbation);
        }
    }
}
