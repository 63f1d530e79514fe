//! Free-field realizations of `V^k(g)` attached to a parabolic `p = l ⊕ ū` whose
//! opposite nilradical `u` is abelian.
//!
//! [`build_general_realization`] produces the map into the Weyl vertex algebra of
//! `u` tensored with currents of the whole `p` at level `kκ₀ − κ_c^p`.
//! [`build_tilde_realization`] composes it with `V(p) → V(l) → V(z(l))`, leaving a
//! single Heisenberg field `b = h_c(z)`. [`explicit`] transcribes the closed forms
//! for the six classical families; [`verify`] checks them against the affine
//! commutation relations.
//!
//! Weyl pair `i` is attached to the `i`-th root of [`ParabolicDatum::delta_u`].

pub mod explicit;
pub mod verify;
pub mod zhu_map;

pub use explicit::{build_explicit_realization, compare_explicit_with_tilde, Family};
pub use verify::{uniqueness_probe, verify_affine_relations, PairStatus, ProbeResult, VerificationReport};
pub use zhu_map::{check_zhu_diagram, check_zhu_homomorphism, gr_symbol, zhu_level_map};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{root_label, BasisKind, Elem, MatrixLieAlgebra, ParabolicDatum};
use crate::linalg::Mat;
use crate::rational::Q;
use crate::rootsys::TypeLabel;
use crate::vertex::{CurrentAlgebra, Factor, Field, FieldSystem, Gen};

/// Which layer a realization belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MapKind {
    /// Currents of the full `p`.
    General,
    /// Currents projected to `z(l)`.
    Tilde,
    /// Hand transcription of a closed form.
    Explicit,
}

/// Images of all basis elements of `g` under a free-field realization.
#[derive(Clone, Debug)]
pub struct RealizationMap {
    pub algebra: MatrixLieAlgebra,
    pub parabolic: ParabolicDatum,
    /// Level `k` with `κ = k κ₀`.
    pub level: Q,
    pub kind: MapKind,
    pub system: FieldSystem,
    /// `images[i]` is the image of basis element `i` of `g`.
    pub images: Vec<Field>,
    /// For the general map: `g`-basis index of each current.
    pub current_basis: Vec<usize>,
}

impl RealizationMap {
    pub fn image(&self, i: usize) -> &Field {
        &self.images[i]
    }

    /// Image of an arbitrary element (linear extension).
    pub fn image_of(&self, x: &[Q]) -> Field {
        let mut out = Field::zero();
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out.add_scaled(*c, &self.images[i]);
        }
        out
    }

    /// Basis indices of the Chevalley generators `e_i, h_i, f_i` (simple roots).
    pub fn chevalley(&self) -> Vec<usize> {
        chevalley_generators(&self.algebra)
    }

    /// Label of basis element `i`.
    pub fn label(&self, i: usize) -> String {
        self.algebra.basis[i].label.clone()
    }

    /// Labels of the Weyl pairs (roots of `u`).
    pub fn weyl_labels(&self) -> Vec<String> {
        self.parabolic.delta_u.iter().map(|r| root_label(r)).collect()
    }

    /// `ξ`-degree of a field: `a_α ↦ −1`, `a*_α ↦ +1`, currents carry the degree of
    /// their element, `b ↦ 0`.
    pub fn xi_degree(&self, f: &Field) -> Option<i64> {
        let mut deg = None;
        for (m, _) in f.terms() {
            let d: i64 = m
                .iter()
                .map(|x| match x.gen {
                    Gen::A(_) => -1,
                    Gen::AStar(_) => 1,
                    Gen::J(j) => match self.algebra.basis[self.current_basis[j as usize]].kind {
                        BasisKind::E(r) if self.parabolic.delta_u_index.contains(&r) => 1,
                        BasisKind::F(r) if self.parabolic.delta_u_index.contains(&r) => -1,
                        _ => 0,
                    },
                    _ => 0,
                })
                .sum();
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                Some(_) => return None,
            }
        }
        deg.or(Some(0))
    }
}

/// Basis indices of `e_1 … e_r, h_1 … h_r, f_1 … f_r`.
pub fn chevalley_generators(g: &MatrixLieAlgebra) -> Vec<usize> {
    let rs = &g.root_system;
    let simple: Vec<usize> = rs.simple_roots.iter().map(|a| rs.positive_root_index(a).expect("simple root")).collect();
    let mut v: Vec<usize> = simple.iter().map(|&r| g.e(r)).collect();
    v.extend((0..g.rank()).map(|i| g.h(i)));
    v.extend(simple.iter().map(|&r| g.f(r)));
    v
}

fn astar(i: usize) -> Factor {
    Factor::new(Gen::AStar(i as u32), 0)
}

fn ann(i: usize) -> Factor {
    Factor::new(Gen::A(i as u32), 0)
}

/// Position of `g`-basis element `i` inside `u` (`e_α` with `α ∈ Δ₊ᵘ`).
fn u_position(p: &ParabolicDatum, g: &MatrixLieAlgebra, i: usize) -> Option<usize> {
    match g.basis[i].kind {
        BasisKind::E(r) => p.delta_u_index.iter().position(|&x| x == r),
        _ => None,
    }
}

/// Per-factor residuals `(k κ₀ − κ_c^p)(x, x) / κ₀(x, x)` on `[l, l]`.
pub fn level_residuals(g: &MatrixLieAlgebra, p: &ParabolicDatum, k: Q) -> Vec<(String, Q)> {
    let rs = &g.root_system;
    p.levi_factors
        .iter()
        .map(|lf| {
            let theta = rs.factor_long_root(&lf.factor);
            let h = g.coroot(&theta);
            let r = (k * g.kappa0(&h, &h) - p.kappa_c_p(g, &h, &h)) / g.kappa0(&h, &h);
            (lf.factor.name(), r)
        })
        .collect()
}

/// The level `k` solving the collapsing condition on every factor of `[l, l]`,
/// if one exists.
pub fn level_for_parabolic(g: &MatrixLieAlgebra, p: &ParabolicDatum) -> Option<Q> {
    let rs = &g.root_system;
    let mut sol: Option<Q> = None;
    for lf in &p.levi_factors {
        let theta = rs.factor_long_root(&lf.factor);
        let h = g.coroot(&theta);
        // k κ₀(h,h) = κ_c^p(h,h)
        let k = p.kappa_c_p(g, &h, &h) / g.kappa0(&h, &h);
        match sol {
            None => sol = Some(k),
            Some(s) if s == k => {}
            Some(_) => return None,
        }
    }
    sol
}

/// Realization into `M_u ⊗ V^{kκ₀−κ_c^p}(p)`.
pub fn build_general_realization(g: &MatrixLieAlgebra, p: &ParabolicDatum, k: Q) -> Result<RealizationMap> {
    if !p.commutative {
        return Err(Error::NonCommutative(format!("p_{} of {}", p.k, g.name())));
    }
    let dim = g.dim();
    let mut current_basis = p.l_basis(g);
    current_basis.extend(p.ubar_basis(g));
    let mut cur_pos = vec![None; dim];
    for (j, &i) in current_basis.iter().enumerate() {
        cur_pos[i] = Some(j);
    }
    let kc = p.kappa_c_p_gram(g);
    let nc = current_basis.len();
    let mut level = Mat::zeros(nc, nc);
    let mut structure = vec![vec![Vec::new(); nc]; nc];
    for (a, &i) in current_basis.iter().enumerate() {
        for (b, &j) in current_basis.iter().enumerate() {
            level[(a, b)] = k * g.kappa0_basis(i, j) - kc[(i, j)];
            for (t, c) in g.bracket_basis(i, j) {
                let pos = cur_pos[*t].ok_or_else(|| Error::Invalid("p is not closed under the bracket".into()))?;
                structure[a][b].push((pos, *c));
            }
        }
    }
    let currents = CurrentAlgebra {
        labels: current_basis.iter().map(|&i| g.basis[i].label.clone()).collect(),
        structure,
        level,
    };
    let mut system = FieldSystem::weyl(p.dim_u).with_currents(currents);
    system.weyl_labels = p.delta_u.iter().map(|r| root_label(r)).collect();

    let u = p.u_basis(g);
    let current = |x: &Elem| -> Result<Field> {
        let mut f = Field::zero();
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let pos = cur_pos[i].ok_or_else(|| Error::Invalid(format!("{} is not in p", g.basis[i].label)))?;
            f.add_scaled(*c, &Field::gen(Gen::J(pos as u32)));
        }
        Ok(f)
    };
    let mut images = Vec::with_capacity(dim);
    for i in 0..dim {
        let a = g.unit(i);
        let mut img = Field::zero();
        if let Some(pos) = u_position(p, g, i) {
            img.add_scaled(-Q::ONE, &Field::factor(ann(pos)));
        } else if cur_pos[i].is_some() && p.l_basis(g).contains(&i) {
            // Σ_β Σ_α [e_β, a]_α :a*_β a_α: + J_a
            for (b, &eb) in u.iter().enumerate() {
                let br = g.bracket(&g.unit(eb), &a);
                for (al, &ea) in u.iter().enumerate() {
                    img.add_assign(&Field::monomial(br[ea], vec![astar(b), ann(al)])?);
                }
            }
            img.add_assign(&current(&a)?);
        } else {
            // −½ Σ [e_β,[e_γ,a]]_α :a*_β a*_γ a_α: − Σ :a*_β J_{[e_β,a]}: − k Σ κ₀(e_β,a) ∂a*_β + J_a
            for (b, &eb) in u.iter().enumerate() {
                let inner = g.bracket(&g.unit(eb), &a);
                for (c, &ec) in u.iter().enumerate() {
                    let outer = g.bracket(&g.unit(ec), &inner);
                    for (al, &ea) in u.iter().enumerate() {
                        img.add_assign(&Field::monomial(-Q::half() * outer[ea], vec![astar(b), astar(c), ann(al)])?);
                    }
                }
                img.add_assign(&Field::factor(astar(b)).concat(&current(&inner)?)?.scale(-Q::ONE));
                let kap = k * g.kappa0_basis(eb, i);
                img.add_scaled(-kap, &Field::factor(Factor::new(Gen::AStar(b as u32), 1)));
            }
            img.add_assign(&current(&a)?);
        }
        images.push(img);
    }
    Ok(RealizationMap { algebra: g.clone(), parabolic: p.clone(), level: k, kind: MapKind::General, system, images, current_basis })
}

/// Realization into `M_u ⊗ V(z(l))`: the general map followed by killing `ū` and
/// `[l, l]` currents. Requires `(kκ₀ − κ_c^p)|_{[l,l]} = 0`.
pub fn build_tilde_realization(g: &MatrixLieAlgebra, p: &ParabolicDatum, k: Q) -> Result<RealizationMap> {
    let residuals = level_residuals(g, p, k);
    let bad: Vec<String> = residuals.iter().filter(|(_, r)| !r.is_zero()).map(|(n, r)| format!("{n}: {r}")).collect();
    if !bad.is_empty() {
        return Err(Error::LevelCondition(format!(
            "k = {k} for p_{} of {}: (kκ₀ − κ_c^p) on [l,l] has residual {}",
            p.k,
            g.name(),
            bad.join(", ")
        )));
    }
    let general = build_general_realization(g, p, k)?;
    let hc = p.h_c(g);
    let gram = k * g.kappa0(&hc, &hc) - p.kappa_c_p(g, &hc, &hc);
    let l = p.l_basis(g);
    let coords: Vec<Q> = general
        .current_basis
        .iter()
        .map(|&i| if l.contains(&i) { p.center_coordinate(g, &g.unit(i)) } else { Q::ZERO })
        .collect();
    let b = Field::gen(Gen::B(0));
    let images = general
        .images
        .iter()
        .map(|f| f.substitute_currents(&|j| b.scale(coords[j as usize])))
        .collect::<Result<Vec<_>>>()?;
    let mut system = FieldSystem::weyl(p.dim_u).with_heisenberg(Mat::from_rows(vec![vec![gram]]));
    system.weyl_labels = general.system.weyl_labels.clone();
    Ok(RealizationMap {
        algebra: general.algebra,
        parabolic: general.parabolic,
        level: k,
        kind: MapKind::Tilde,
        system,
        images,
        current_basis: Vec::new(),
    })
}

/// Convenience: algebra and commutative parabolic for `(type, rank, k)`.
pub fn setup(t: TypeLabel, rank: usize, parabolic: usize) -> Result<(MatrixLieAlgebra, ParabolicDatum)> {
    let g = MatrixLieAlgebra::new(t, rank)?;
    let p = ParabolicDatum::for_algebra(&g, parabolic, false)?;
    Ok((g, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::vertex::parse_field;

    #[test]
    fn sl2_general_and_tilde() {
        let (g, p) = setup(TypeLabel::A, 1, 1).unwrap();
        let k = q(-3, 2);
        let r = build_tilde_realization(&g, &p, k).unwrap();
        let f = g.f(0);
        // f ↦ :a*a*a: − k ∂a* − :a* b: with h_c = h
        let expect = parse_field(":a*[1] a*[1] a[1]: + 3/2 da*[1] - :a*[1] b[1]:").unwrap();
        assert_eq!(r.image(f), &expect);
        assert_eq!(r.image(g.e(0)), &parse_field("-a[1]").unwrap());
        assert_eq!(r.image(g.h(0)), &parse_field("-2 :a*[1] a[1]: + b[1]").unwrap());
        let gen = build_general_realization(&g, &p, k).unwrap();
        assert_eq!(gen.image(g.e(0)), r.image(g.e(0)));
        assert_eq!(gen.system.currents.as_ref().unwrap().dim(), 2);
    }

    #[test]
    fn tilde_rejects_wrong_level() {
        let (g, p) = setup(TypeLabel::A, 2, 1).unwrap();
        let err = build_tilde_realization(&g, &p, Q::ZERO).unwrap_err();
        assert!(matches!(err, Error::LevelCondition(ref s) if s.contains("sl2")), "{err}");
        assert_eq!(level_for_parabolic(&g, &p), Some(-Q::ONE));
    }

    #[test]
    fn images_have_weight_one_and_nonpositive_xi_degree() {
        for (t, n, k) in [(TypeLabel::A, 3, 1), (TypeLabel::C, 3, 3), (TypeLabel::B, 3, 1), (TypeLabel::D, 4, 4)] {
            let (g, p) = setup(t, n, k).unwrap();
            let lev = level_for_parabolic(&g, &p).unwrap();
            let r = build_general_realization(&g, &p, lev).unwrap();
            let l = p.l_basis(&g);
            let u = p.u_basis(&g);
            for (i, img) in r.images.iter().enumerate() {
                assert_eq!(img.weight(), Some(Q::ONE), "{}", r.label(i));
                if l.contains(&i) || u.contains(&i) {
                    assert!(r.xi_degree(img).unwrap() <= 0, "{}", r.label(i));
                }
            }
        }
    }
}
