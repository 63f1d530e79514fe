//! Matrix realizations of the classical simple Lie algebras.
//!
//! Root vectors follow the elementary-matrix formulas of the explicit free-field
//! section for each type; structure constants are always read off matrix
//! commutators. Elements of `g` are handled as dense coordinate vectors in the
//! ordered basis `e_α (α ∈ Δ₊), h_1 … h_r, f_α (α ∈ Δ₊)` where `h_i` is the coroot
//! of the simple root `α_i`.

mod forms;
mod minimal;
mod parabolic;

pub use forms::{BilinearForm, FormKind};
pub use minimal::{MinimalGrading, MinimalTriple};
pub use parabolic::{LeviFactor, ParabolicDatum};
pub(crate) use parabolic::standard_node_order;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rational::{q, Q};
use crate::rootsys::{RootSystem, TypeLabel};

/// Coordinate vector of a Lie algebra element in the ordered basis.
pub type Elem = Vec<Q>;

/// Role of a basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BasisKind {
    /// `e_α` for the positive root with this index.
    E(usize),
    /// Coroot `h_i` of the simple root with this (0-based) index.
    H(usize),
    /// `f_α` for the positive root with this index.
    F(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisElement {
    pub label: String,
    pub kind: BasisKind,
    pub matrix: Mat,
    /// Root (ε-coordinates) of the element; zero for Cartan elements.
    pub weight: Vec<Q>,
}

/// A classical simple Lie algebra as explicit matrices.
#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    pub root_system: RootSystem,
    /// Matrix size `N`.
    pub size: usize,
    /// `κ₀(a, b) = kappa0_scale · tr(ab)`.
    pub kappa0_scale: Q,
    pub basis: Vec<BasisElement>,
    /// Sparse structure constants: `[b_i, b_j] = Σ c·b_k` stored as `(k, c)`.
    structure: Vec<Vec<Vec<(usize, Q)>>>,
    /// Matrix positions used to read coordinates, and the inverse of the
    /// corresponding square block of the basis matrix (stored sparsely by position).
    coord_positions: HashMap<(usize, usize), Vec<(usize, Q)>>,
    kappa0_gram: Mat,
}

impl MatrixLieAlgebra {
    /// Build the matrix realization of a classical algebra.
    pub fn new(t: TypeLabel, rank: usize) -> Result<MatrixLieAlgebra> {
        if matches!(t, TypeLabel::E | TypeLabel::F | TypeLabel::G) {
            return Err(Error::Unsupported(format!("matrix realization of {t}{rank} is not implemented")));
        }
        let rs = RootSystem::new(t, rank)?;
        let n = rank;
        let size = match t {
            TypeLabel::A => n + 1,
            TypeLabel::B => 2 * n + 1,
            _ => 2 * n,
        };
        let kappa0_scale = match t {
            TypeLabel::B | TypeLabel::D => q(1, 2),
            _ => Q::ONE,
        };
        let mut basis = Vec::new();
        for (i, r) in rs.positive_roots.iter().enumerate() {
            basis.push(BasisElement {
                label: format!("e[{}]", root_label(r)),
                kind: BasisKind::E(i),
                matrix: root_vector(t, n, r, true),
                weight: r.clone(),
            });
        }
        for (i, a) in rs.simple_roots.iter().enumerate() {
            basis.push(BasisElement {
                label: format!("h{}", i + 1),
                kind: BasisKind::H(i),
                matrix: cartan_matrix(t, n, &coroot_coords(&rs, a)),
                weight: vec![Q::ZERO; rs.ambient],
            });
        }
        for (i, r) in rs.positive_roots.iter().enumerate() {
            basis.push(BasisElement {
                label: format!("f[{}]", root_label(r)),
                kind: BasisKind::F(i),
                matrix: root_vector(t, n, r, false),
                weight: r.iter().map(|x| -*x).collect(),
            });
        }
        let dim = basis.len();
        // Choose coordinate positions: pivots of the (dim × N²) matrix of flattened basis elements.
        let flat = Mat::from_rows(basis.iter().map(|b| b.matrix.entries().to_vec()).collect());
        let (_, pivots) = flat.rref();
        if pivots.len() != dim {
            return Err(Error::Invalid("basis matrices are linearly dependent".into()));
        }
        let block = Mat::from_rows((0..dim).map(|p| (0..dim).map(|j| flat[(j, pivots[p])]).collect()).collect());
        let inv = block.inverse().expect("pivot block invertible");
        let mut coord_positions = HashMap::new();
        for (p, &pos) in pivots.iter().enumerate() {
            let col: Vec<(usize, Q)> = (0..dim).filter(|&k| !inv[(k, p)].is_zero()).map(|k| (k, inv[(k, p)])).collect();
            coord_positions.insert((pos / size, pos % size), col);
        }
        let mut alg = MatrixLieAlgebra {
            root_system: rs,
            size,
            kappa0_scale,
            basis,
            structure: Vec::new(),
            coord_positions,
            kappa0_gram: Mat::zeros(0, 0),
        };
        let sparse: Vec<Vec<(usize, usize, Q)>> = alg.basis.iter().map(|b| b.matrix.nonzeros().collect()).collect();
        let mut structure = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                if j < i {
                    structure[i][j] = structure[j][i].iter().map(|(k, c): &(usize, Q)| (*k, -*c)).collect();
                    continue;
                }
                let br = sparse_bracket(&sparse[i], &sparse[j]);
                structure[i][j] = alg.coords_sparse(&br)?;
            }
        }
        alg.structure = structure;
        let gram = Mat::from_rows(
            (0..dim)
                .map(|i| (0..dim).map(|j| kappa0_scale * alg.basis[i].matrix.trace_product(&alg.basis[j].matrix)).collect())
                .collect(),
        );
        alg.kappa0_gram = gram;
        Ok(alg)
    }

    pub fn type_label(&self) -> TypeLabel {
        self.root_system.type_label
    }

    pub fn rank(&self) -> usize {
        self.root_system.rank
    }

    pub fn name(&self) -> String {
        self.root_system.name()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_positive(&self) -> usize {
        self.root_system.positive_roots.len()
    }

    /// Basis index of `e_α`.
    pub fn e(&self, root: usize) -> usize {
        root
    }

    /// Basis index of the simple coroot `h_i` (0-based `i`).
    pub fn h(&self, i: usize) -> usize {
        self.num_positive() + i
    }

    /// Basis index of `f_α`.
    pub fn f(&self, root: usize) -> usize {
        self.num_positive() + self.rank() + root
    }

    /// Basis index of the root vector for a (positive or negative) root in ε-coordinates.
    pub fn root_vector_index(&self, root: &[Q]) -> Option<usize> {
        if let Some(i) = self.root_system.positive_root_index(root) {
            return Some(self.e(i));
        }
        let neg: Vec<Q> = root.iter().map(|x| -*x).collect();
        self.root_system.positive_root_index(&neg).map(|i| self.f(i))
    }

    pub fn unit(&self, i: usize) -> Elem {
        let mut v = vec![Q::ZERO; self.dim()];
        v[i] = Q::ONE;
        v
    }

    pub fn zero(&self) -> Elem {
        vec![Q::ZERO; self.dim()]
    }

    /// Structure constants `[b_i, b_j]` as sparse `(k, c)` pairs.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.structure[i][j]
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Elem {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (k, c) in &self.structure[i][j] {
                    out[*k] += *xi * *yj * *c;
                }
            }
        }
        out
    }

    /// Matrix of a coordinate vector.
    pub fn to_matrix(&self, x: &[Q]) -> Mat {
        let mut m = Mat::zeros(self.size, self.size);
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (r, s, v) in self.basis[i].matrix.nonzeros() {
                m[(r, s)] += *c * v;
            }
        }
        m
    }

    /// Coordinates of a matrix; errors if the matrix is not in `g`.
    pub fn coords(&self, m: &Mat) -> Result<Elem> {
        let entries: Vec<(usize, usize, Q)> = m.nonzeros().collect();
        let sparse = self.coords_sparse(&entries)?;
        let mut v = self.zero();
        for (k, c) in sparse {
            v[k] = c;
        }
        Ok(v)
    }

    fn coords_sparse(&self, entries: &[(usize, usize, Q)]) -> Result<Vec<(usize, Q)>> {
        let mut acc: HashMap<usize, Q> = HashMap::new();
        for (r, s, v) in entries {
            if let Some(col) = self.coord_positions.get(&(*r, *s)) {
                for (k, c) in col {
                    *acc.entry(*k).or_insert(Q::ZERO) += *c * *v;
                }
            }
        }
        let mut out: Vec<(usize, Q)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|(k, _)| *k);
        // Verify the reconstruction so matrices outside g are rejected.
        let mut back: HashMap<(usize, usize), Q> = HashMap::new();
        for (k, c) in &out {
            for (r, s, v) in self.basis[*k].matrix.nonzeros() {
                *back.entry((r, s)).or_insert(Q::ZERO) += *c * v;
            }
        }
        for (r, s, v) in entries {
            let b = back.remove(&(*r, *s)).unwrap_or(Q::ZERO);
            if b != *v {
                return Err(Error::Invalid("matrix does not lie in the Lie algebra".into()));
            }
        }
        if back.values().any(|v| !v.is_zero()) {
            return Err(Error::Invalid("matrix does not lie in the Lie algebra".into()));
        }
        Ok(out)
    }

    /// `κ₀` on coordinate vectors.
    pub fn kappa0(&self, x: &[Q], y: &[Q]) -> Q {
        let mut acc = Q::ZERO;
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let g = self.kappa0_gram[(i, j)];
                if !g.is_zero() {
                    acc += *xi * *yj * g;
                }
            }
        }
        acc
    }

    pub fn kappa0_basis(&self, i: usize, j: usize) -> Q {
        self.kappa0_gram[(i, j)]
    }

    /// Matrix of `ad x` in the ordered basis (columns are images of basis vectors).
    pub fn ad(&self, x: &[Q]) -> Mat {
        let d = self.dim();
        let mut m = Mat::zeros(d, d);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for j in 0..d {
                for (k, c) in &self.structure[i][j] {
                    m[(*k, j)] += *xi * *c;
                }
            }
        }
        m
    }

    /// Killing form `κ_g(x, y) = tr(ad x · ad y)`.
    pub fn killing(&self, x: &[Q], y: &[Q]) -> Q {
        self.ad(x).trace_product(&self.ad(y))
    }

    /// Cartan element with the given ε-coordinates (`β(h) = Σ β_i d_i`).
    pub fn cartan_element(&self, d: &[Q]) -> Result<Elem> {
        self.coords(&cartan_matrix(self.type_label(), self.rank(), d))
    }

    /// Coroot `h_α` of a root, as a coordinate vector.
    pub fn coroot(&self, root: &[Q]) -> Elem {
        self.cartan_element(&coroot_coords(&self.root_system, root)).expect("coroot lies in h")
    }

    /// Root-vector membership test `X ∈ g` for matrices: `XᵀJ + JX = 0` (types B, C, D), trace zero (A).
    pub fn contains_matrix(&self, m: &Mat) -> bool {
        self.coords(m).is_ok()
    }

    /// Defining invariant form `J` of the orthogonal or symplectic types.
    pub fn invariant_form(&self) -> Option<Mat> {
        let n = self.rank();
        let mut j = Mat::zeros(self.size, self.size);
        match self.type_label() {
            TypeLabel::A | TypeLabel::E | TypeLabel::F | TypeLabel::G => return None,
            TypeLabel::C => {
                for i in 0..n {
                    j[(i, n + i)] = Q::ONE;
                    j[(n + i, i)] = -Q::ONE;
                }
            }
            TypeLabel::B | TypeLabel::D => {
                for i in 0..n {
                    j[(i, n + i)] = Q::ONE;
                    j[(n + i, i)] = Q::ONE;
                }
                if self.type_label() == TypeLabel::B {
                    j[(2 * n, 2 * n)] = Q::ONE;
                }
            }
        }
        Some(j)
    }

    /// JSON export: basis labels and matrices as nested rational arrays.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "collapsing.matrix-algebra/1",
            "type": self.type_label().to_string(),
            "rank": self.rank(),
            "name": self.name(),
            "matrix_size": self.size,
            "kappa0_scale": self.kappa0_scale,
            "basis": self.basis.iter().map(|b| serde_json::json!({
                "label": b.label,
                "weight": b.weight,
                "matrix": b.matrix.to_rows(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Coroot `2·scale·α/(α, α)` in ε-coordinates of the diagonal.
pub fn coroot_coords(rs: &RootSystem, root: &[Q]) -> Vec<Q> {
    let c = Q::int(2) * rs.form_scale / rs.inner(root, root);
    root.iter().map(|x| *x * c).collect()
}

/// Printable label of a root such as `e1-e3` or `2e1`.
pub fn root_label(r: &[Q]) -> String {
    let mut s = String::new();
    for (i, c) in r.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else if s.is_empty() { "" } else { "+" };
        let mag = c.abs();
        let coeff = if mag == Q::ONE { String::new() } else { mag.to_string() };
        s.push_str(&format!("{sign}{coeff}e{}", i + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn cartan_matrix(t: TypeLabel, n: usize, d: &[Q]) -> Mat {
    match t {
        TypeLabel::A => Mat::diag(d),
        _ => {
            let size = if t == TypeLabel::B { 2 * n + 1 } else { 2 * n };
            let mut m = Mat::zeros(size, size);
            for i in 0..n {
                m[(i, i)] = d[i];
                m[(n + i, n + i)] = -d[i];
            }
            m
        }
    }
}

fn add_unit(m: &mut Mat, i: usize, j: usize, c: Q) {
    m[(i, j)] += c;
}

/// Root vector `e_α` (or `f_α`) for a positive root of a classical type.
fn root_vector(t: TypeLabel, n: usize, root: &[Q], positive: bool) -> Mat {
    let size = match t {
        TypeLabel::A => n + 1,
        TypeLabel::B => 2 * n + 1,
        _ => 2 * n,
    };
    let mut m = Mat::zeros(size, size);
    let nz: Vec<(usize, Q)> = root.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, *c)).collect();
    let one = Q::ONE;
    match (t, nz.as_slice()) {
        (TypeLabel::A, [(i, _), (j, _)]) => {
            if positive {
                add_unit(&mut m, *i, *j, one);
            } else {
                add_unit(&mut m, *j, *i, one);
            }
        }
        // ε_i − ε_j for B, C, D
        (_, [(i, a), (j, b)]) if *a == one && *b == -one => {
            if positive {
                add_unit(&mut m, *i, *j, one);
                add_unit(&mut m, n + j, n + i, -one);
            } else {
                add_unit(&mut m, *j, *i, one);
                add_unit(&mut m, n + i, n + j, -one);
            }
        }
        // ε_i + ε_j
        (TypeLabel::C, [(i, _), (j, _)]) => {
            if positive {
                add_unit(&mut m, *i, n + j, one);
                add_unit(&mut m, *j, n + i, one);
            } else {
                add_unit(&mut m, n + i, *j, one);
                add_unit(&mut m, n + j, *i, one);
            }
        }
        (TypeLabel::B | TypeLabel::D, [(i, _), (j, _)]) => {
            if positive {
                add_unit(&mut m, *i, n + j, one);
                add_unit(&mut m, *j, n + i, -one);
            } else {
                add_unit(&mut m, n + j, *i, one);
                add_unit(&mut m, n + i, *j, -one);
            }
        }
        // 2ε_i
        (TypeLabel::C, [(i, _)]) => {
            if positive {
                add_unit(&mut m, *i, n + i, one);
            } else {
                add_unit(&mut m, n + i, *i, one);
            }
        }
        // ε_i
        (TypeLabel::B, [(i, _)]) => {
            let z = 2 * n;
            if positive {
                add_unit(&mut m, *i, z, one);
                add_unit(&mut m, z, n + i, -one);
            } else {
                add_unit(&mut m, z, *i, one);
                add_unit(&mut m, n + i, z, -one);
            }
        }
        _ => unreachable!("unexpected root {root:?} for type {t}"),
    }
    m
}

fn sparse_bracket(a: &[(usize, usize, Q)], b: &[(usize, usize, Q)]) -> Vec<(usize, usize, Q)> {
    let mut acc: HashMap<(usize, usize), Q> = HashMap::new();
    for (i, k, x) in a {
        for (k2, j, y) in b {
            if k == k2 {
                *acc.entry((*i, *j)).or_insert(Q::ZERO) += *x * *y;
            }
        }
    }
    for (i, k, x) in b {
        for (k2, j, y) in a {
            if k == k2 {
                *acc.entry((*i, *j)).or_insert(Q::ZERO) -= *x * *y;
            }
        }
    }
    let mut out: Vec<(usize, usize, Q)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((i, j), v)| (i, j, v)).collect();
    out.sort_by_key(|(i, j, _)| (*i, *j));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classical() -> Vec<(TypeLabel, usize)> {
        let mut v = vec![];
        for n in 1..=5 {
            v.push((TypeLabel::A, n));
        }
        for n in 2..=4 {
            v.push((TypeLabel::B, n));
            v.push((TypeLabel::C, n));
        }
        for n in 3..=5 {
            v.push((TypeLabel::D, n));
        }
        v
    }

    #[test]
    fn sl2_matrices() {
        let g = MatrixLieAlgebra::new(TypeLabel::A, 1).unwrap();
        assert_eq!(g.basis[0].matrix, Mat::unit(2, 0, 1));
        assert_eq!(g.basis[2].matrix, Mat::unit(2, 1, 0));
        assert_eq!(g.basis[1].matrix, Mat::diag(&[Q::ONE, -Q::ONE]));
        assert_eq!(g.kappa0_scale, Q::ONE);
    }

    #[test]
    fn so8_dimension_and_scale() {
        let g = MatrixLieAlgebra::new(TypeLabel::D, 4).unwrap();
        assert_eq!(g.dim(), 28);
        assert_eq!(g.kappa0_scale, q(1, 2));
    }

    #[test]
    fn sp4_long_root_bracket() {
        let g = MatrixLieAlgebra::new(TypeLabel::C, 2).unwrap();
        let r = g.root_system.positive_root_index(&[Q::int(2), Q::ZERO]).unwrap();
        let br = g.basis[g.e(r)].matrix.bracket(&g.basis[g.f(r)].matrix);
        let mut expect = Mat::zeros(4, 4);
        expect[(0, 0)] = Q::ONE;
        expect[(2, 2)] = -Q::ONE;
        assert_eq!(br, expect);
    }

    #[test]
    fn matrices_preserve_invariant_form() {
        for (t, n) in classical() {
            let g = MatrixLieAlgebra::new(t, n).unwrap();
            for b in &g.basis {
                match g.invariant_form() {
                    Some(j) => {
                        let lhs = &(&b.matrix.transpose() * &j) + &(&j * &b.matrix);
                        assert!(lhs.is_zero(), "{t}{n} {}", b.label);
                    }
                    None => assert!(b.matrix.trace().is_zero()),
                }
            }
        }
    }

    #[test]
    fn root_vectors_have_their_weights() {
        for (t, n) in classical() {
            let g = MatrixLieAlgebra::new(t, n).unwrap();
            for i in 0..n {
                let h = &g.basis[g.h(i)];
                for b in &g.basis {
                    let br = h.matrix.bracket(&b.matrix);
                    let alpha = g.root_system.pairing(&b.weight, &g.root_system.simple_roots[i]);
                    // β(h_i) = ⟨β, α_i^∨⟩
                    assert_eq!(br, b.matrix.scale(alpha), "{t}{n}");
                }
            }
        }
    }

    #[test]
    fn e_f_bracket_is_a_multiple_of_the_coroot() {
        for (t, n) in classical() {
            let g = MatrixLieAlgebra::new(t, n).unwrap();
            for (r, root) in g.root_system.positive_roots.iter().enumerate() {
                let br = g.bracket(&g.unit(g.e(r)), &g.unit(g.f(r)));
                let h = g.coroot(root);
                // [e_α, f_α] = κ₀(e_α, f_α)·(α,α)/2 · h_α
                let c = g.kappa0_basis(g.e(r), g.f(r)) * g.root_system.inner(root, root) / Q::int(2);
                let expect: Vec<Q> = h.iter().map(|x| *x * c).collect();
                assert_eq!(br, expect, "{t}{n} root {}", root_label(root));
                let long = g.root_system.inner(root, root) == Q::int(2);
                if !(t == TypeLabel::B && !long) {
                    assert_eq!(br, h, "{t}{n}: [e,f] = h_α for {}", root_label(root));
                }
            }
        }
    }

    #[test]
    fn kappa0_normalization_and_killing() {
        for (t, n) in classical() {
            let g = MatrixLieAlgebra::new(t, n).unwrap();
            let ht = g.coroot(&g.root_system.theta);
            assert_eq!(g.kappa0(&ht, &ht), Q::int(2));
            let hv = Q::int(g.root_system.dual_coxeter as i64);
            if g.dim() <= 45 {
                for i in 0..g.dim() {
                    for j in i..g.dim() {
                        let k = g.killing(&g.unit(i), &g.unit(j));
                        assert_eq!(k, Q::int(2) * hv * g.kappa0_basis(i, j), "{t}{n}");
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_on_samples() {
        let g = MatrixLieAlgebra::new(TypeLabel::B, 3).unwrap();
        let d = g.dim();
        for (i, j, k) in [(0, 5, 9), (1, d - 1, 4), (3, 7, d - 2), (2, 2, 11)] {
            let (x, y, z) = (g.unit(i), g.unit(j), g.unit(k));
            let a = g.bracket(&x, &g.bracket(&y, &z));
            let b = g.bracket(&y, &g.bracket(&z, &x));
            let c = g.bracket(&z, &g.bracket(&x, &y));
            assert!(a.iter().zip(&b).zip(&c).all(|((p, q), r)| (*p + *q + *r).is_zero()));
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let g = MatrixLieAlgebra::new(TypeLabel::C, 3).unwrap();
        let x: Vec<Q> = (0..g.dim()).map(|i| q(i as i64 - 7, 3)).collect();
        assert_eq!(g.coords(&g.to_matrix(&x)).unwrap(), x);
        assert!(g.coords(&Mat::identity(6)).is_err());
    }

    #[test]
    fn e_type_matrices_unsupported() {
        assert!(matches!(MatrixLieAlgebra::new(TypeLabel::E, 6), Err(Error::Unsupported(_))));
    }
}
