//! The minimal grading `g = g_{−1} ⊕ g_{−1/2} ⊕ g_0 ⊕ g_{1/2} ⊕ g_1` defined by `½ ad h_θ`.

use serde::Serialize;

use super::{Elem, MatrixLieAlgebra};
use crate::linalg::Mat;
use crate::rational::Q;
use crate::rootsys::{RootSystem, SimpleFactor, TypeLabel};

/// Root-level data of the minimal grading; available for every type.
#[derive(Clone, Debug, Serialize)]
pub struct MinimalGrading {
    pub type_label: TypeLabel,
    pub rank: usize,
    /// Positive roots `α` with `⟨α, θ^∨⟩ = 1`, i.e. `Δ_{1/2}`.
    pub half_roots: Vec<usize>,
    /// Positive roots orthogonal to `θ` (roots of `g♮`).
    pub natural_roots: Vec<usize>,
    /// Simple roots orthogonal to `θ` (0-based); they form a base of the roots of `g♮`.
    pub natural_nodes: Vec<usize>,
    pub natural_factors: Vec<SimpleFactor>,
    /// Dimension of the center of `g♮`.
    pub abelian_dim: usize,
}

impl MinimalGrading {
    pub fn new(rs: &RootSystem) -> MinimalGrading {
        let theta = &rs.theta;
        let half_roots: Vec<usize> =
            (0..rs.positive_roots.len()).filter(|&r| rs.pairing(&rs.positive_roots[r], theta) == Q::ONE).collect();
        let natural_roots: Vec<usize> =
            (0..rs.positive_roots.len()).filter(|&r| rs.inner(&rs.positive_roots[r], theta).is_zero()).collect();
        let natural_nodes: Vec<usize> = (0..rs.rank).filter(|&i| rs.inner(&rs.simple_roots[i], theta).is_zero()).collect();
        let natural_factors = rs.subdiagram_factors(&natural_nodes);
        // rank g♮ = rank − 1, so the center has dimension rank − 1 − |Π♮|.
        let abelian_dim = rs.rank - 1 - natural_nodes.len();
        MinimalGrading {
            type_label: rs.type_label,
            rank: rs.rank,
            half_roots,
            natural_roots,
            natural_nodes,
            natural_factors,
            abelian_dim,
        }
    }

    pub fn dim_half(&self) -> usize {
        self.half_roots.len()
    }

    pub fn natural_dim(&self) -> usize {
        self.rank - 1 + 2 * self.natural_roots.len()
    }

    /// Grade `½⟨α, θ^∨⟩` of a root.
    pub fn grade(rs: &RootSystem, root: &[Q]) -> Q {
        rs.pairing(root, &rs.theta) / Q::int(2)
    }
}

/// Matrix-level data of the minimal `sl₂`-triple `(e_θ, h_θ, f_θ)`.
#[derive(Clone, Debug)]
pub struct MinimalTriple {
    pub grading: MinimalGrading,
    /// Basis indices of `e_θ`, `f_θ`.
    pub e_theta: usize,
    pub f_theta: usize,
    pub h_theta: Elem,
    /// Basis indices of `e_α`, `α ∈ Δ_{1/2}`, spanning `g_{1/2}`.
    pub half_basis: Vec<usize>,
    /// Basis indices of `f_α`, `α ∈ Δ_{1/2}`, spanning `g_{−1/2}`.
    pub neg_half_basis: Vec<usize>,
    /// A basis of `g♮` as coordinate vectors: Cartan part first, then root vectors.
    pub natural_basis: Vec<Elem>,
    /// `ω_χ(e_α, e_β) = κ₀(f_θ, [e_α, e_β])` on `half_basis`.
    pub omega: Mat,
}

impl MinimalTriple {
    pub fn new(g: &MatrixLieAlgebra) -> MinimalTriple {
        let rs = &g.root_system;
        let grading = MinimalGrading::new(rs);
        let t = rs.positive_root_index(&rs.theta).expect("θ is a root");
        let e_theta = g.e(t);
        let f_theta = g.f(t);
        let h_theta = g.coroot(&rs.theta);
        let half_basis: Vec<usize> = grading.half_roots.iter().map(|&r| g.e(r)).collect();
        let neg_half_basis: Vec<usize> = grading.half_roots.iter().map(|&r| g.f(r)).collect();
        // Cartan part of g♮: kernel of κ₀(h_θ, ·) on h.
        let r = g.rank();
        let row: Vec<Q> = (0..r).map(|i| g.kappa0(&h_theta, &g.unit(g.h(i)))).collect();
        let kernel = Mat::from_rows(vec![row]).null_space();
        let mut natural_basis: Vec<Elem> = kernel
            .iter()
            .map(|c| {
                let mut v = g.zero();
                for (i, x) in c.iter().enumerate() {
                    v[g.h(i)] = *x;
                }
                v
            })
            .collect();
        for &a in &grading.natural_roots {
            natural_basis.push(g.unit(g.e(a)));
            natural_basis.push(g.unit(g.f(a)));
        }
        let ft = g.unit(f_theta);
        let m = half_basis.len();
        let mut omega = Mat::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                omega[(i, j)] = g.kappa0(&ft, &g.bracket(&g.unit(half_basis[i]), &g.unit(half_basis[j])));
            }
        }
        MinimalTriple { grading, e_theta, f_theta, h_theta, half_basis, neg_half_basis, natural_basis, omega }
    }

    /// Grade of a basis element under `½ ad h_θ`.
    pub fn grade_of(&self, g: &MatrixLieAlgebra, i: usize) -> Q {
        MinimalGrading::grade(&g.root_system, &g.basis[i].weight)
    }

    /// `ω_χ(u, v)` for arbitrary elements of `g_{1/2}` given as coordinate vectors.
    pub fn omega_chi(&self, g: &MatrixLieAlgebra, u: &[Q], v: &[Q]) -> Q {
        g.kappa0(&g.unit(self.f_theta), &g.bracket(u, v))
    }

    /// Root of `g_{1/2}` paired with `α` by `ω_χ`, namely `θ − α`, as a position in `half_basis`.
    pub fn partner(&self, g: &MatrixLieAlgebra, pos: usize) -> usize {
        let rs = &g.root_system;
        let a = &rs.positive_roots[self.grading.half_roots[pos]];
        let b: Vec<Q> = rs.theta.iter().zip(a).map(|(x, y)| *x - *y).collect();
        let r = rs.positive_root_index(&b).expect("θ − α is a root");
        self.grading.half_roots.iter().position(|&x| x == r).expect("θ − α ∈ Δ_{1/2}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classical() -> Vec<(TypeLabel, usize)> {
        vec![
            (TypeLabel::A, 2),
            (TypeLabel::A, 3),
            (TypeLabel::A, 5),
            (TypeLabel::B, 2),
            (TypeLabel::B, 3),
            (TypeLabel::B, 4),
            (TypeLabel::C, 2),
            (TypeLabel::C, 3),
            (TypeLabel::D, 4),
            (TypeLabel::D, 5),
        ]
    }

    #[test]
    fn triple_relations() {
        for (t, n) in classical() {
            let g = MatrixLieAlgebra::new(t, n).unwrap();
            let m = MinimalTriple::new(&g);
            let (e, f, h) = (g.unit(m.e_theta), g.unit(m.f_theta), m.h_theta.clone());
            assert_eq!(g.bracket(&e, &f), h);
            let two = |v: &Elem| v.iter().map(|x| *x * Q::int(2)).collect::<Elem>();
            assert_eq!(g.bracket(&h, &e), two(&e));
            assert_eq!(g.bracket(&h, &f), two(&f).iter().map(|x| -*x).collect::<Elem>());
        }
    }

    #[test]
    fn grading_is_minimal() {
        for (t, n) in classical() {
            let g = MatrixLieAlgebra::new(t, n).unwrap();
            let m = MinimalTriple::new(&g);
            for i in 0..g.dim() {
                let gr = m.grade_of(&g, i) * Q::int(2);
                assert!((-2..=2).any(|v| gr == Q::int(v)));
            }
        }
    }

    #[test]
    fn half_space_dimension_and_form() {
        for (t, n) in classical() {
            let g = MatrixLieAlgebra::new(t, n).unwrap();
            let m = MinimalTriple::new(&g);
            assert_eq!(m.half_basis.len() as u32, 2 * g.root_system.dual_coxeter - 4);
            assert_eq!(m.omega, -&m.omega.transpose());
            assert_eq!(m.omega.rank(), m.half_basis.len(), "{t}{n}");
        }
        for (t, n) in [(TypeLabel::E, 6), (TypeLabel::E, 7), (TypeLabel::E, 8), (TypeLabel::F, 4), (TypeLabel::G, 2)] {
            let rs = RootSystem::new(t, n).unwrap();
            assert_eq!(MinimalGrading::new(&rs).dim_half() as u32, 2 * rs.dual_coxeter - 4);
        }
    }

    #[test]
    fn natural_subalgebra_centralizes_triple() {
        for (t, n) in classical() {
            let g = MatrixLieAlgebra::new(t, n).unwrap();
            let m = MinimalTriple::new(&g);
            assert_eq!(m.natural_basis.len(), m.grading.natural_dim());
            for x in &m.natural_basis {
                for y in [g.unit(m.e_theta), g.unit(m.f_theta), m.h_theta.clone()] {
                    assert!(g.bracket(x, &y).iter().all(|c| c.is_zero()));
                }
            }
        }
    }

    #[test]
    fn natural_factors() {
        let names = |t, n| {
            let rs = RootSystem::new(t, n).unwrap();
            let mg = MinimalGrading::new(&rs);
            (mg.natural_factors.iter().map(|f| f.name()).collect::<Vec<_>>(), mg.abelian_dim)
        };
        assert_eq!(names(TypeLabel::A, 4), (vec!["sl3".to_string()], 1));
        assert_eq!(names(TypeLabel::A, 2), (vec![], 1));
        assert_eq!(names(TypeLabel::D, 4), (vec!["sl2".to_string(); 3], 0));
        assert_eq!(names(TypeLabel::C, 3), (vec!["sp4".to_string()], 0));
        assert_eq!(names(TypeLabel::B, 3).0, vec!["sl2".to_string(), "sl2".to_string()]);
        assert_eq!(names(TypeLabel::E, 7), (vec!["so12".to_string()], 0));
        assert_eq!(names(TypeLabel::E, 6), (vec!["sl6".to_string()], 0));
        assert_eq!(names(TypeLabel::E, 8), (vec!["e7".to_string()], 0));
        assert_eq!(names(TypeLabel::F, 4), (vec!["sp6".to_string()], 0));
        assert_eq!(names(TypeLabel::G, 2), (vec!["sl2".to_string()], 0));
    }
}
