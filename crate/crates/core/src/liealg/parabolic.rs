//! Maximal opposite standard parabolic subalgebras `p_{α_k} = l ⊕ ū`.

use serde::Serialize;

use super::{root_label, Elem, MatrixLieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{dot, Mat};
use crate::rational::Q;
use crate::rootsys::{RootSystem, SimpleFactor, TypeLabel};

/// A simple factor of `[l, l]` with its Dynkin index on `u`.
#[derive(Clone, Debug, Serialize)]
pub struct LeviFactor {
    pub factor: SimpleFactor,
    /// Factor nodes (0-based, ambient numbering) listed in the factor's standard order.
    pub standard_nodes: Vec<usize>,
    /// Highest weight of `u` as a factor module, in the factor's fundamental weights.
    pub highest_weight: Vec<i64>,
    /// `dim u` divided by the dimension of this factor's module: the multiplicity
    /// coming from the other factors.
    pub multiplicity: u64,
    /// `ind_D(l_i, u)` from the Dynkin formula on the highest weight.
    pub index: u64,
    /// The same index computed directly from the roots of `u`.
    pub index_on_roots: Q,
}

/// Data of `p_{α_k}` at the root-system level.
#[derive(Clone, Debug, Serialize)]
pub struct ParabolicDatum {
    pub type_label: TypeLabel,
    pub rank: usize,
    /// 1-based index of the removed simple root.
    pub k: usize,
    /// Roots of `u` (ε-coordinates) in the ordering used by the explicit realizations.
    pub delta_u: Vec<Vec<Q>>,
    /// Indices into the positive roots for `delta_u`.
    pub delta_u_index: Vec<usize>,
    /// Positive roots of `l`.
    pub delta_l_index: Vec<usize>,
    pub levi_factors: Vec<LeviFactor>,
    /// Grading element `ξ` in ε-coordinates: `α_i(ξ) = δ_{ik}`.
    pub grading_element: Vec<Q>,
    /// Generator `h_c` of `z(l)`, a multiple of `ξ`.
    pub center_generator: Vec<Q>,
    pub dim_u: usize,
    /// `ρ_p = −½ Σ_{α∈Δ₊ᵘ} α`.
    pub rho_p: Vec<Q>,
    pub commutative: bool,
}

impl ParabolicDatum {
    /// Build `p_{α_k}` (`k` is 1-based). Unless `allow_noncommutative` is set, a
    /// non-commutative nilradical is rejected with the offending pair of roots.
    pub fn new(rs: &RootSystem, k: usize, allow_noncommutative: bool) -> Result<ParabolicDatum> {
        let n = rs.rank;
        if !(1..=n).contains(&k) {
            return Err(Error::Invalid(format!("simple root index {k} out of range 1..={n}")));
        }
        let kk = k - 1;
        let in_u: Vec<usize> = (0..rs.positive_roots.len()).filter(|&r| rs.positive_coords[r][kk] > 0).collect();
        let delta_l_index: Vec<usize> = (0..rs.positive_roots.len()).filter(|&r| rs.positive_coords[r][kk] == 0).collect();
        let delta_u = order_delta_u(rs, k, in_u.iter().map(|&r| rs.positive_roots[r].clone()).collect());
        let delta_u_index: Vec<usize> = delta_u.iter().map(|r| rs.positive_root_index(r).expect("root")).collect();

        let mut offending = None;
        'outer: for (i, a) in delta_u.iter().enumerate() {
            for b in &delta_u[i..] {
                let s: Vec<Q> = a.iter().zip(b).map(|(x, y)| *x + *y).collect();
                if rs.is_root(&s) {
                    offending = Some((a.clone(), b.clone()));
                    break 'outer;
                }
            }
        }
        let commutative = offending.is_none();
        if let (Some((a, b)), false) = (&offending, allow_noncommutative) {
            return Err(Error::NonCommutative(format!(
                "nilradical of p_α{k} in {} is not commutative: {} + {} is a root",
                rs.name(),
                root_label(a),
                root_label(b)
            )));
        }

        let grading_element = fundamental_coweight(rs, kk);
        let center_generator = normalize_center(&grading_element);
        let mut rho_p = vec![Q::ZERO; rs.ambient];
        for a in &delta_u {
            for (x, y) in rho_p.iter_mut().zip(a) {
                *x -= *y / Q::int(2);
            }
        }

        let nodes: Vec<usize> = (0..n).filter(|&i| i != kk).collect();
        let factors = rs.subdiagram_factors(&nodes);
        let mut levi_factors = Vec::new();
        let mut standard = Vec::new();
        for f in &factors {
            let frs = RootSystem::new(f.type_label, f.rank)?;
            let order = standard_node_order(rs, f, &frs)?;
            let labels: Vec<i64> = order
                .iter()
                .map(|&i| rs.pairing(&rs.theta, &rs.simple_roots[i]).to_integer().expect("integral label"))
                .collect();
            standard.push((frs, order, labels));
        }
        let dims: Vec<u64> = standard.iter().map(|(frs, _, l)| frs.weyl_dimension(l)).collect::<Result<_>>()?;
        for (i, (f, (frs, order, labels))) in factors.iter().zip(&standard).enumerate() {
            let multiplicity: u64 = dims.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, d)| *d).product();
            let index = frs.dynkin_index(labels)? * multiplicity;
            let index_on_roots = rs.factor_index_on_weights(f, delta_u.iter());
            levi_factors.push(LeviFactor {
                factor: f.clone(),
                standard_nodes: order.clone(),
                highest_weight: labels.clone(),
                multiplicity,
                index,
                index_on_roots,
            });
        }

        Ok(ParabolicDatum {
            type_label: rs.type_label,
            rank: n,
            k,
            dim_u: delta_u.len(),
            delta_u,
            delta_u_index,
            delta_l_index,
            levi_factors,
            grading_element,
            center_generator,
            rho_p,
            commutative,
        })
    }

    /// Build `p_{α_k}` for a matrix algebra, checking commutativity of `u` on the matrices.
    pub fn for_algebra(g: &MatrixLieAlgebra, k: usize, allow_noncommutative: bool) -> Result<ParabolicDatum> {
        let p = ParabolicDatum::new(&g.root_system, k, true)?;
        if !allow_noncommutative {
            if let Some((a, b)) = p.matrix_commutator_witness(g) {
                return Err(Error::NonCommutative(format!(
                    "nilradical of p_α{k} in {} is not commutative: [e_{}, e_{}] ≠ 0",
                    g.name(),
                    root_label(&a),
                    root_label(&b)
                )));
            }
        }
        Ok(p)
    }

    /// A pair of roots of `u` whose root vectors fail to commute as matrices.
    pub fn matrix_commutator_witness(&self, g: &MatrixLieAlgebra) -> Option<(Vec<Q>, Vec<Q>)> {
        for (i, &a) in self.delta_u_index.iter().enumerate() {
            for &b in &self.delta_u_index[i..] {
                let m = g.basis[g.e(a)].matrix.bracket(&g.basis[g.e(b)].matrix);
                if !m.is_zero() {
                    return Some((g.root_system.positive_roots[a].clone(), g.root_system.positive_roots[b].clone()));
                }
            }
        }
        None
    }

    /// Number of simple factors of `[l, l]`.
    pub fn num_factors(&self) -> usize {
        self.levi_factors.len()
    }

    /// Basis indices of `u` (the `e_α`, α ∈ Δ₊ᵘ) in `delta_u` order.
    pub fn u_basis(&self, g: &MatrixLieAlgebra) -> Vec<usize> {
        self.delta_u_index.iter().map(|&r| g.e(r)).collect()
    }

    /// Basis indices of `ū` in `delta_u` order.
    pub fn ubar_basis(&self, g: &MatrixLieAlgebra) -> Vec<usize> {
        self.delta_u_index.iter().map(|&r| g.f(r)).collect()
    }

    /// Basis indices of `l` (root vectors of `Δ_l` and the whole Cartan subalgebra).
    pub fn l_basis(&self, g: &MatrixLieAlgebra) -> Vec<usize> {
        let mut v: Vec<usize> = self.delta_l_index.iter().map(|&r| g.e(r)).collect();
        v.extend((0..g.rank()).map(|i| g.h(i)));
        v.extend(self.delta_l_index.iter().map(|&r| g.f(r)));
        v
    }

    /// A basis of `[l, l]` as coordinate vectors.
    pub fn ll_basis(&self, g: &MatrixLieAlgebra) -> Vec<Elem> {
        let mut v: Vec<Elem> = self.delta_l_index.iter().map(|&r| g.unit(g.e(r))).collect();
        v.extend((0..g.rank()).filter(|&i| i != self.k - 1).map(|i| g.unit(g.h(i))));
        v.extend(self.delta_l_index.iter().map(|&r| g.unit(g.f(r))));
        v
    }

    /// `h_c` as a coordinate vector.
    pub fn h_c(&self, g: &MatrixLieAlgebra) -> Elem {
        g.cartan_element(&self.center_generator).expect("h_c lies in h")
    }

    /// `ξ` as a coordinate vector.
    pub fn xi(&self, g: &MatrixLieAlgebra) -> Elem {
        g.cartan_element(&self.grading_element).expect("ξ lies in h")
    }

    /// Projection of `a` onto `l` along `u ⊕ ū`.
    pub fn project_l(&self, g: &MatrixLieAlgebra, a: &[Q]) -> Elem {
        let mut out = g.zero();
        for i in self.l_basis(g) {
            out[i] = a[i];
        }
        out
    }

    /// Component of `a` in `z(l)` (orthogonal projection onto `ℂ h_c` for `κ₀`).
    pub fn project_center(&self, g: &MatrixLieAlgebra, a: &[Q]) -> Elem {
        let hc = self.h_c(g);
        let c = g.kappa0(a, &hc) / g.kappa0(&hc, &hc);
        hc.iter().map(|x| *x * c).collect()
    }

    /// Coordinate of `a` along `h_c` in its `z(l)` component.
    pub fn center_coordinate(&self, g: &MatrixLieAlgebra, a: &[Q]) -> Q {
        let hc = self.h_c(g);
        g.kappa0(a, &hc) / g.kappa0(&hc, &hc)
    }

    /// `κ_c^p(a, b) = −tr_u(ad a_l · ad b_l)`.
    pub fn kappa_c_p(&self, g: &MatrixLieAlgebra, a: &[Q], b: &[Q]) -> Q {
        let u = self.u_basis(g);
        let ad = |x: &[Q]| -> Mat {
            let full = g.ad(&self.project_l(g, x));
            Mat::from_rows(u.iter().map(|&i| u.iter().map(|&j| full[(i, j)]).collect()).collect())
        };
        -ad(a).trace_product(&ad(b))
    }

    /// Gram matrix of `κ_c^p` on the full basis of `g`.
    pub fn kappa_c_p_gram(&self, g: &MatrixLieAlgebra) -> Mat {
        let d = g.dim();
        let u = self.u_basis(g);
        let ads: Vec<Option<Mat>> = (0..d)
            .map(|i| {
                if self.l_basis(g).contains(&i) {
                    let full = g.ad(&g.unit(i));
                    Some(Mat::from_rows(u.iter().map(|&r| u.iter().map(|&c| full[(r, c)]).collect()).collect()))
                } else {
                    None
                }
            })
            .collect();
        let mut m = Mat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                if let (Some(x), Some(y)) = (&ads[i], &ads[j]) {
                    m[(i, j)] = -x.trace_product(y);
                }
            }
        }
        m
    }
}

/// Fundamental coweight `ξ` with `α_i(ξ) = δ_{ik}`, taken in the span of the roots.
fn fundamental_coweight(rs: &RootSystem, kk: usize) -> Vec<Q> {
    let n = rs.rank;
    let gram = Mat::from_rows((0..n).map(|i| (0..n).map(|j| dot(&rs.simple_roots[i], &rs.simple_roots[j])).collect()).collect());
    let mut rhs = vec![Q::ZERO; n];
    rhs[kk] = Q::ONE;
    let c = gram.solve(&rhs).expect("simple roots independent");
    let mut v = vec![Q::ZERO; rs.ambient];
    for (cj, a) in c.iter().zip(&rs.simple_roots) {
        for (x, y) in v.iter_mut().zip(a) {
            *x += *cj * *y;
        }
    }
    v
}

/// Rescale `ξ` so that its first nonzero coordinate becomes `1/m`, with `m`
/// the number of coordinates sharing that value.
fn normalize_center(xi: &[Q]) -> Vec<Q> {
    let first = *xi.iter().find(|x| !x.is_zero()).expect("ξ ≠ 0");
    let m = xi.iter().filter(|x| **x == first).count() as i64;
    let c = Q::ONE / (first * Q::int(m));
    xi.iter().map(|x| *x * c).collect()
}

fn e(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::ZERO; n];
    v[i] = Q::ONE;
    v
}

fn comb(n: usize, terms: &[(usize, i64)]) -> Vec<Q> {
    let mut v = vec![Q::ZERO; n];
    for &(i, c) in terms {
        v[i] += Q::int(c);
    }
    v
}

/// Order `Δ₊ᵘ` as in the explicit realizations; other cases keep the root order.
fn order_delta_u(rs: &RootSystem, k: usize, roots: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let n = rs.rank;
    let a = rs.ambient;
    let explicit: Option<Vec<Vec<Q>>> = match rs.type_label {
        TypeLabel::A => Some(
            (0..k).flat_map(|i| (k..=n).map(move |j| (i, j))).map(|(i, j)| comb(a, &[(i, 1), (j, -1)])).collect(),
        ),
        TypeLabel::C if k == n => {
            Some((0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| comb(a, &[(i, 1), (j, 1)])).collect())
        }
        TypeLabel::B if k == 1 => {
            let mut v: Vec<Vec<Q>> = (1..n).map(|j| comb(a, &[(0, 1), (j, -1)])).collect();
            v.push(e(a, 0));
            v.extend((1..n).map(|j| comb(a, &[(0, 1), (j, 1)])));
            Some(v)
        }
        TypeLabel::D if k == 1 => {
            let mut v: Vec<Vec<Q>> = (1..n).map(|j| comb(a, &[(0, 1), (j, -1)])).collect();
            v.extend((1..n).map(|j| comb(a, &[(0, 1), (j, 1)])));
            Some(v)
        }
        TypeLabel::D if k == n => {
            Some((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| comb(a, &[(i, 1), (j, 1)])).collect())
        }
        _ => None,
    };
    match explicit {
        Some(v) => {
            debug_assert_eq!(v.len(), roots.len());
            debug_assert!(v.iter().all(|r| roots.contains(r)));
            v
        }
        None => roots,
    }
}

/// Match the factor's nodes to the standard numbering of its type by comparing Cartan entries.
pub(crate) fn standard_node_order(rs: &RootSystem, f: &SimpleFactor, frs: &RootSystem) -> Result<Vec<usize>> {
    fn extend(rs: &RootSystem, frs: &RootSystem, nodes: &[usize], acc: &mut Vec<usize>) -> bool {
        let p = acc.len();
        if p == nodes.len() {
            return true;
        }
        for &c in nodes {
            if acc.contains(&c) {
                continue;
            }
            let ok = (0..p).all(|q| rs.cartan[acc[q]][c] == frs.cartan[q][p] && rs.cartan[c][acc[q]] == frs.cartan[p][q]);
            if ok {
                acc.push(c);
                if extend(rs, frs, nodes, acc) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
    let mut acc = Vec::new();
    if extend(rs, frs, &f.nodes, &mut acc) {
        Ok(acc)
    } else {
        Err(Error::Invalid(format!("could not identify the {} factor on nodes {:?}", f.name(), f.nodes)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn rs(t: TypeLabel, n: usize) -> RootSystem {
        RootSystem::new(t, n).unwrap()
    }

    #[test]
    fn sl_n_first_node() {
        for n in 1..=6 {
            let r = rs(TypeLabel::A, n);
            let p = ParabolicDatum::new(&r, 1, false).unwrap();
            assert_eq!(p.dim_u, n);
            for (i, a) in p.delta_u.iter().enumerate() {
                assert_eq!(*a, comb(n + 1, &[(0, 1), (i + 1, -1)]));
            }
        }
    }

    #[test]
    fn sp_last_node_dimension() {
        for n in 2..=6 {
            let p = ParabolicDatum::new(&rs(TypeLabel::C, n), n, false).unwrap();
            assert_eq!(2 * p.dim_u, n * n + n);
        }
    }

    #[test]
    fn so5_second_node_rejected() {
        let g = MatrixLieAlgebra::new(TypeLabel::B, 2).unwrap();
        let err = ParabolicDatum::for_algebra(&g, 2, false).unwrap_err();
        assert!(matches!(err, Error::NonCommutative(_)), "{err}");
        assert!(ParabolicDatum::new(&g.root_system, 2, false).is_err());
        assert!(ParabolicDatum::for_algebra(&g, 2, true).is_ok());
        // e_{ε₁−ε₂} ∈ l does not commute with e_{ε₂} ∈ u either.
        let a = g.root_vector_index(&[Q::ONE, -Q::ONE]).unwrap();
        let b = g.root_vector_index(&[Q::ZERO, Q::ONE]).unwrap();
        assert!(!g.basis[a].matrix.bracket(&g.basis[b].matrix).is_zero());
    }

    #[test]
    fn commutative_cases_agree_with_matrices() {
        for (t, n) in [(TypeLabel::A, 4), (TypeLabel::B, 3), (TypeLabel::C, 3), (TypeLabel::D, 4), (TypeLabel::D, 5)] {
            let g = MatrixLieAlgebra::new(t, n).unwrap();
            for k in 1..=n {
                let root = ParabolicDatum::new(&g.root_system, k, true).unwrap();
                let mat = root.matrix_commutator_witness(&g).is_none();
                assert_eq!(root.commutative, mat, "{t}{n} p{k}");
            }
        }
    }

    #[test]
    fn grading_and_center() {
        for (t, n) in [(TypeLabel::A, 3), (TypeLabel::B, 3), (TypeLabel::C, 3), (TypeLabel::D, 4)] {
            let g = MatrixLieAlgebra::new(t, n).unwrap();
            for k in 1..=n {
                let p = ParabolicDatum::new(&g.root_system, k, true).unwrap();
                let hc = p.h_c(&g);
                for i in p.l_basis(&g) {
                    assert!(g.bracket(&hc, &g.unit(i)).iter().all(|x| x.is_zero()));
                }
                let xi = p.xi(&g);
                for (j, a) in g.root_system.simple_roots.iter().enumerate() {
                    let ai = g.root_vector_index(a).unwrap();
                    let br = g.bracket(&xi, &g.unit(ai));
                    let expect = if j == k - 1 { Q::ONE } else { Q::ZERO };
                    assert_eq!(br[ai], expect);
                }
                // κ_g(ξ, ξ) = 2 dim u when u is commutative (ξ acts by 1 on u)
                if p.commutative {
                    assert_eq!(g.killing(&xi, &xi), Q::int(2 * p.dim_u as i64));
                }
            }
        }
    }

    #[test]
    fn center_generator_conventions() {
        let p = ParabolicDatum::new(&rs(TypeLabel::A, 3), 1, false).unwrap();
        assert_eq!(p.center_generator, vec![Q::ONE, q(-1, 3), q(-1, 3), q(-1, 3)]);
        let p = ParabolicDatum::new(&rs(TypeLabel::A, 3), 2, false).unwrap();
        assert_eq!(p.center_generator, vec![q(1, 2), q(1, 2), q(-1, 2), q(-1, 2)]);
        let p = ParabolicDatum::new(&rs(TypeLabel::C, 3), 3, false).unwrap();
        assert_eq!(p.center_generator, vec![q(1, 3); 3]);
        let p = ParabolicDatum::new(&rs(TypeLabel::B, 3), 1, false).unwrap();
        assert_eq!(p.center_generator, vec![Q::ONE, Q::ZERO, Q::ZERO]);
    }

    #[test]
    fn sl2_borel_critical_form() {
        let g = MatrixLieAlgebra::new(TypeLabel::A, 1).unwrap();
        let p = ParabolicDatum::new(&g.root_system, 1, false).unwrap();
        let h = g.unit(g.h(0));
        // ad h acts on u = ℂe by 2, so −tr_u(ad h ad h) = −4 and (kκ₀ − κ_c^p)(h, h) = 2k + 4.
        assert_eq!(p.kappa_c_p(&g, &h, &h), Q::int(-4));
        let f = g.unit(g.f(0));
        assert_eq!(p.kappa_c_p(&g, &f, &h), Q::ZERO);
    }

    #[test]
    fn sl3_collapsing_condition() {
        let g = MatrixLieAlgebra::new(TypeLabel::A, 2).unwrap();
        let p = ParabolicDatum::new(&g.root_system, 1, false).unwrap();
        for x in p.ll_basis(&g) {
            for y in p.ll_basis(&g) {
                assert_eq!(-g.kappa0(&x, &y) - p.kappa_c_p(&g, &x, &y), Q::ZERO);
            }
        }
    }

    #[test]
    fn critical_form_vanishes_on_ubar() {
        let g = MatrixLieAlgebra::new(TypeLabel::C, 3).unwrap();
        let p = ParabolicDatum::new(&g.root_system, 3, false).unwrap();
        let gram = p.kappa_c_p_gram(&g);
        for i in p.ubar_basis(&g) {
            assert!((0..g.dim()).all(|j| gram[(i, j)].is_zero()));
        }
        assert_eq!(gram, gram.transpose());
    }

    #[test]
    fn levi_indices_both_routes() {
        let cases = [
            (TypeLabel::A, 5, 3),
            (TypeLabel::B, 4, 1),
            (TypeLabel::C, 4, 4),
            (TypeLabel::D, 5, 1),
            (TypeLabel::D, 5, 5),
            (TypeLabel::D, 5, 4),
            (TypeLabel::E, 6, 1),
            (TypeLabel::E, 6, 5),
            (TypeLabel::E, 7, 6),
        ];
        for (t, n, k) in cases {
            let p = ParabolicDatum::new(&rs(t, n), k, false).unwrap();
            for f in &p.levi_factors {
                assert_eq!(Q::int(f.index as i64), f.index_on_roots, "{t}{n} p{k} {}", f.factor.name());
            }
        }
    }

    #[test]
    fn e_type_nilradicals() {
        let e6 = ParabolicDatum::new(&rs(TypeLabel::E, 6), 1, false).unwrap();
        assert_eq!(2 * e6.dim_u, 32);
        assert_eq!(e6.levi_factors[0].factor.name(), "so10");
        let e7 = ParabolicDatum::new(&rs(TypeLabel::E, 7), 6, false).unwrap();
        assert_eq!(2 * e7.dim_u, 54);
        assert_eq!(e7.levi_factors[0].factor.name(), "e6");
        assert!(ParabolicDatum::new(&rs(TypeLabel::E, 7), 1, false).is_err());
    }
}
