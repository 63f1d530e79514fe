//! Root systems of types A–G in ε-coordinates, Weyl dimensions and Dynkin indices.
//!
//! Classical types follow the matrix conventions used in [`crate::liealg`]:
//! `A_n` lives in `ℚ^{n+1}` with `α_i = ε_i − ε_{i+1}`; `B_n`, `C_n`, `D_n` live in
//! `ℚ^n` with last simple root `ε_n`, `2ε_n`, `ε_{n−1}+ε_n` respectively.
//! Exceptional types use the Bourbaki vectors in `ℚ^8`, renumbered so that
//! `α_1 … α_{n−1}` is the long chain of the diagram and `α_n` is the node attached
//! to `α_3` (see [`e_type_bourbaki_index`]). `F_4` (in `ℚ^4`) and `G_2` (in the plane
//! `x+y+z = 0` of `ℚ^3`) use Bourbaki numbering, long roots first.
//!
//! The invariant form is `(·,·) = scale · (Euclidean dot)`, with the scale chosen so
//! that the highest root has `(θ, θ) = 2`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{dot, Mat};
use crate::rational::{q, Q};

/// Cartan–Killing type of a simple Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::E => "E",
            TypeLabel::F => "F",
            TypeLabel::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<TypeLabel> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeLabel::A),
            "B" => Ok(TypeLabel::B),
            "C" => Ok(TypeLabel::C),
            "D" => Ok(TypeLabel::D),
            "E" => Ok(TypeLabel::E),
            "F" => Ok(TypeLabel::F),
            "G" => Ok(TypeLabel::G),
            other => invalid(format!("unknown type label {other:?} (expected one of A, B, C, D, E, F, G)")),
        }
    }
}

/// Check that `(t, n)` names a simple Lie algebra of the supported families.
pub fn validate_type(t: TypeLabel, n: usize) -> Result<()> {
    let ok = match t {
        TypeLabel::A => n >= 1,
        TypeLabel::B => n >= 2,
        TypeLabel::C => n >= 2,
        TypeLabel::D => n >= 3,
        TypeLabel::E => (6..=8).contains(&n),
        TypeLabel::F => n == 4,
        TypeLabel::G => n == 2,
    };
    if ok {
        Ok(())
    } else {
        let need = match t {
            TypeLabel::A => "n ≥ 1",
            TypeLabel::B | TypeLabel::C => "n ≥ 2",
            TypeLabel::D => "n ≥ 3",
            TypeLabel::E => "n ∈ {6, 7, 8}",
            TypeLabel::F => "n = 4",
            TypeLabel::G => "n = 2",
        };
        invalid(format!("type {t}{n} is not valid: type {t} requires {need}"))
    }
}

/// Dual Coxeter number.
pub fn dual_coxeter(t: TypeLabel, n: usize) -> u32 {
    let n = n as u32;
    match t {
        TypeLabel::A => n + 1,
        TypeLabel::B => 2 * n - 1,
        TypeLabel::C => n + 1,
        TypeLabel::D => 2 * n - 2,
        TypeLabel::E => match n {
            6 => 12,
            7 => 18,
            _ => 30,
        },
        TypeLabel::F => 9,
        TypeLabel::G => 4,
    }
}

/// Dimension of the simple Lie algebra.
pub fn algebra_dimension(t: TypeLabel, n: usize) -> usize {
    match t {
        TypeLabel::A => n * (n + 2),
        TypeLabel::B | TypeLabel::C => n * (2 * n + 1),
        TypeLabel::D => n * (2 * n - 1),
        TypeLabel::E => match n {
            6 => 78,
            7 => 133,
            _ => 248,
        },
        TypeLabel::F => 52,
        TypeLabel::G => 14,
    }
}

/// Conventional lower-case name such as `sl4`, `so7`, `sp6`, `e7`.
pub fn algebra_name(t: TypeLabel, n: usize) -> String {
    match t {
        TypeLabel::A => format!("sl{}", n + 1),
        TypeLabel::B => format!("so{}", 2 * n + 1),
        TypeLabel::C => format!("sp{}", 2 * n),
        TypeLabel::D => format!("so{}", 2 * n),
        TypeLabel::E => format!("e{n}"),
        TypeLabel::F => "f4".to_string(),
        TypeLabel::G => "g2".to_string(),
    }
}

/// Bourbaki index (1-based) of the simple root numbered `i` (1-based) in this
/// crate's E-type ordering: the chain `α_1 … α_{n−1}` is Bourbaki `1,3,4,…,n`
/// and `α_n` is Bourbaki `α_2`.
pub fn e_type_bourbaki_index(n: usize, i: usize) -> usize {
    assert!((1..=n).contains(&i));
    match i {
        1 => 1,
        _ if i == n => 2,
        _ => i + 1,
    }
}

/// A root system together with its invariant form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSystem {
    pub type_label: TypeLabel,
    pub rank: usize,
    /// Number of ε-coordinates.
    pub ambient: usize,
    pub simple_roots: Vec<Vec<Q>>,
    /// Positive roots sorted by height, ties broken by simple-root coordinates.
    pub positive_roots: Vec<Vec<Q>>,
    /// Simple-root coordinates of `positive_roots`.
    pub positive_coords: Vec<Vec<i64>>,
    pub theta: Vec<Q>,
    pub rho: Vec<Q>,
    pub dual_coxeter: u32,
    /// `(x, y) = form_scale · Σ x_i y_i`.
    pub form_scale: Q,
    /// `cartan[i][j] = ⟨α_i^∨, α_j⟩ = 2(α_i, α_j)/(α_i, α_i)`.
    pub cartan: Vec<Vec<i64>>,
    pub fundamental_weights: Vec<Vec<Q>>,
    gram_inverse: Mat,
}

impl RootSystem {
    pub fn new(t: TypeLabel, n: usize) -> Result<RootSystem> {
        validate_type(t, n)?;
        let (ambient, simple) = simple_roots(t, n);
        let form_scale = match t {
            TypeLabel::C => q(1, 2),
            TypeLabel::G => q(1, 3),
            _ => Q::ONE,
        };
        let ip = |a: &[Q], b: &[Q]| form_scale * dot(a, b);
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = Q::int(2) * ip(&simple[i], &simple[j]) / ip(&simple[i], &simple[i]);
                        v.to_integer().expect("integral Cartan entry")
                    })
                    .collect()
            })
            .collect();
        let gram = Mat::from_rows((0..n).map(|i| (0..n).map(|j| ip(&simple[i], &simple[j])).collect()).collect());
        let gram_inverse = gram.inverse().expect("simple roots are independent");
        let positive_coords = positive_root_coords(&cartan);
        let combine = |c: &[i64]| -> Vec<Q> {
            let mut v = vec![Q::ZERO; ambient];
            for (k, &ck) in c.iter().enumerate() {
                if ck != 0 {
                    for (x, s) in v.iter_mut().zip(&simple[k]) {
                        *x += Q::int(ck) * *s;
                    }
                }
            }
            v
        };
        let positive_roots: Vec<Vec<Q>> = positive_coords.iter().map(|c| combine(c)).collect();
        let theta = positive_roots.last().expect("nonempty").clone();
        // ω_i = Σ_j (M^{-1})_{ij} α_j with M_{jk} = ⟨α_j, α_k^∨⟩.
        let m = Mat::from_rows(
            (0..n)
                .map(|j| (0..n).map(|k| Q::int(2) * ip(&simple[j], &simple[k]) / ip(&simple[k], &simple[k])).collect())
                .collect(),
        );
        let minv = m.inverse().expect("Cartan matrix invertible");
        let fundamental_weights: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut v = vec![Q::ZERO; ambient];
                for j in 0..n {
                    let c = minv[(i, j)];
                    if !c.is_zero() {
                        for (x, s) in v.iter_mut().zip(&simple[j]) {
                            *x += c * *s;
                        }
                    }
                }
                v
            })
            .collect();
        let mut rho = vec![Q::ZERO; ambient];
        for w in &fundamental_weights {
            for (x, y) in rho.iter_mut().zip(w) {
                *x += *y;
            }
        }
        let rs = RootSystem {
            type_label: t,
            rank: n,
            ambient,
            simple_roots: simple,
            positive_roots,
            positive_coords,
            theta,
            rho,
            dual_coxeter: dual_coxeter(t, n),
            form_scale,
            cartan,
            fundamental_weights,
            gram_inverse,
        };
        debug_assert_eq!(rs.inner(&rs.theta, &rs.theta), Q::int(2));
        Ok(rs)
    }

    pub fn name(&self) -> String {
        algebra_name(self.type_label, self.rank)
    }

    /// `dim g = rank + 2|Δ₊|`.
    pub fn dimension(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    pub fn inner(&self, a: &[Q], b: &[Q]) -> Q {
        self.form_scale * dot(a, b)
    }

    /// `⟨λ, α^∨⟩ = 2(λ, α)/(α, α)`.
    pub fn pairing(&self, lambda: &[Q], alpha: &[Q]) -> Q {
        Q::int(2) * self.inner(lambda, alpha) / self.inner(alpha, alpha)
    }

    /// Coordinates of `v` in the basis of simple roots; `None` if `v` is not in their span.
    pub fn simple_coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        let b: Vec<Q> = self.simple_roots.iter().map(|a| self.inner(v, a)).collect();
        let c = self.gram_inverse.mul_vec(&b);
        let mut back = vec![Q::ZERO; self.ambient];
        for (ck, s) in c.iter().zip(&self.simple_roots) {
            for (x, y) in back.iter_mut().zip(s) {
                *x += *ck * *y;
            }
        }
        (back == v).then_some(c)
    }

    /// Index of `v` among the positive roots.
    pub fn positive_root_index(&self, v: &[Q]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r.as_slice() == v)
    }

    pub fn is_root(&self, v: &[Q]) -> bool {
        let neg: Vec<Q> = v.iter().map(|x| -*x).collect();
        self.positive_root_index(v).is_some() || self.positive_root_index(&neg).is_some()
    }

    pub fn height(&self, root_index: usize) -> i64 {
        self.positive_coords[root_index].iter().sum()
    }

    /// Weight with the given Dynkin labels, in ε-coordinates.
    pub fn weight(&self, labels: &[i64]) -> Result<Vec<Q>> {
        if labels.len() != self.rank {
            return invalid(format!("expected {} Dynkin labels, got {}", self.rank, labels.len()));
        }
        let mut v = vec![Q::ZERO; self.ambient];
        for (&l, w) in labels.iter().zip(&self.fundamental_weights) {
            for (x, y) in v.iter_mut().zip(w) {
                *x += Q::int(l) * *y;
            }
        }
        Ok(v)
    }

    /// Dynkin labels `⟨λ, α_i^∨⟩` of a weight.
    pub fn labels(&self, lambda: &[Q]) -> Vec<Q> {
        self.simple_roots.iter().map(|a| self.pairing(lambda, a)).collect()
    }

    fn dominant_weight(&self, labels: &[i64]) -> Result<Vec<Q>> {
        if let Some(i) = labels.iter().position(|&l| l < 0) {
            return invalid(format!("weight is not dominant: label {} at α_{} is negative", labels[i], i + 1));
        }
        self.weight(labels)
    }

    /// Weyl dimension formula `∏_{α>0} (λ+ρ, α)/(ρ, α)`.
    pub fn weyl_dimension(&self, labels: &[i64]) -> Result<u64> {
        let lambda = self.dominant_weight(labels)?;
        let lr: Vec<Q> = lambda.iter().zip(&self.rho).map(|(a, b)| *a + *b).collect();
        let mut acc = BigRational::one();
        for alpha in &self.positive_roots {
            acc *= big(self.inner(&lr, alpha)) / big(self.inner(&self.rho, alpha));
        }
        if !acc.is_integer() {
            return Err(Error::Invalid("Weyl dimension is not an integer".into()));
        }
        acc.to_integer().to_u64().ok_or_else(|| Error::Capacity("dimension exceeds u64".into()))
    }

    /// Dynkin index `(dim L / dim g)·(λ, λ+2ρ)` of the irreducible module `L(λ)`.
    pub fn dynkin_index(&self, labels: &[i64]) -> Result<u64> {
        let lambda = self.dominant_weight(labels)?;
        let dim_l = self.weyl_dimension(labels)?;
        let l2r: Vec<Q> = lambda.iter().zip(&self.rho).map(|(a, b)| *a + Q::int(2) * *b).collect();
        let casimir = big(self.inner(&lambda, &l2r));
        let idx = BigRational::from_integer(BigInt::from(dim_l)) * casimir
            / BigRational::from_integer(BigInt::from(self.dimension()));
        if !idx.is_integer() {
            return Err(Error::Invalid("Dynkin index is not an integer".into()));
        }
        idx.to_integer().to_u64().ok_or_else(|| Error::Capacity("index exceeds u64".into()))
    }

    /// Dominant conjugate of a weight under the Weyl group.
    pub fn dominant_conjugate(&self, mu: &[Q]) -> Vec<Q> {
        let mut v = mu.to_vec();
        loop {
            let Some(i) = self.simple_roots.iter().position(|a| self.pairing(&v, a).is_negative()) else {
                return v;
            };
            let c = self.pairing(&v, &self.simple_roots[i]);
            for (x, a) in v.iter_mut().zip(&self.simple_roots[i]) {
                *x -= c * *a;
            }
        }
    }

    /// Weyl orbit of a dominant weight, failing once it exceeds `bound` elements.
    pub fn weyl_orbit(&self, dominant: &[Q], bound: usize) -> Result<Vec<Vec<Q>>> {
        let mut seen: HashSet<Vec<Q>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(dominant.to_vec());
        queue.push_back(dominant.to_vec());
        let mut out = Vec::new();
        while let Some(v) = queue.pop_front() {
            for a in &self.simple_roots {
                let c = self.pairing(&v, a);
                if c.is_positive() {
                    let w: Vec<Q> = v.iter().zip(a).map(|(x, y)| *x - c * *y).collect();
                    if seen.insert(w.clone()) {
                        if seen.len() > bound {
                            return Err(Error::Capacity(format!("Weyl orbit larger than {bound}")));
                        }
                        queue.push_back(w);
                    }
                }
            }
            out.push(v);
        }
        Ok(out)
    }

    /// Dominant weights of `L(λ)` with their multiplicities (Freudenthal recursion).
    pub fn dominant_multiplicities(&self, labels: &[i64]) -> Result<Vec<(Vec<Q>, u64)>> {
        let lambda = self.dominant_weight(labels)?;
        let is_dominant = |v: &[Q]| self.simple_roots.iter().all(|a| !self.pairing(v, a).is_negative());
        // Dominant weights below λ, reached by subtracting positive roots.
        let mut dominants = vec![lambda.clone()];
        let mut seen: HashSet<Vec<Q>> = HashSet::from([lambda.clone()]);
        let mut i = 0;
        while i < dominants.len() {
            let mu = dominants[i].clone();
            for alpha in &self.positive_roots {
                let nu: Vec<Q> = mu.iter().zip(alpha).map(|(x, y)| *x - *y).collect();
                if is_dominant(&nu) && seen.insert(nu.clone()) {
                    dominants.push(nu);
                }
            }
            i += 1;
        }
        let depth = |v: &[Q]| -> Q {
            let d: Vec<Q> = lambda.iter().zip(v).map(|(a, b)| *a - *b).collect();
            self.simple_coords(&d).expect("in root lattice").into_iter().sum()
        };
        dominants.sort_by_key(|v| depth(v));
        let lr: Vec<Q> = lambda.iter().zip(&self.rho).map(|(a, b)| *a + *b).collect();
        let norm_lr = self.inner(&lr, &lr);
        let norm_l = self.inner(&lambda, &lambda);
        let mut mult: HashMap<Vec<Q>, Q> = HashMap::new();
        mult.insert(lambda.clone(), Q::ONE);
        for mu in dominants.iter().skip(1) {
            let mut acc = Q::ZERO;
            for alpha in &self.positive_roots {
                let mut k = 1i64;
                loop {
                    let nu: Vec<Q> = mu.iter().zip(alpha).map(|(x, y)| *x + Q::int(k) * *y).collect();
                    if self.inner(&nu, &nu) > norm_l {
                        break;
                    }
                    let dom = self.dominant_conjugate(&nu);
                    if let Some(m) = mult.get(&dom) {
                        acc += *m * self.inner(&nu, alpha);
                    }
                    k += 1;
                }
            }
            let mr: Vec<Q> = mu.iter().zip(&self.rho).map(|(a, b)| *a + *b).collect();
            let denom = norm_lr - self.inner(&mr, &mr);
            let m = Q::int(2) * acc / denom;
            mult.insert(mu.clone(), m);
        }
        dominants
            .into_iter()
            .filter_map(|mu| {
                let m = mult[&mu];
                match m.to_integer() {
                    Some(0) => None,
                    Some(x) if x > 0 => Some(Ok((mu, x as u64))),
                    _ => Some(Err(Error::Invalid(format!("non-integral multiplicity {m}")))),
                }
            })
            .collect()
    }

    /// All weights of `L(λ)` with multiplicity, failing above `bound` weights counted with multiplicity.
    pub fn weights_with_multiplicity(&self, labels: &[i64], bound: usize) -> Result<Vec<(Vec<Q>, u64)>> {
        let mut out = Vec::new();
        let mut total = 0usize;
        for (mu, m) in self.dominant_multiplicities(labels)? {
            let orbit = self.weyl_orbit(&mu, bound)?;
            total += orbit.len() * m as usize;
            if total > bound {
                return Err(Error::Capacity(format!("module dimension exceeds the bound {bound}")));
            }
            out.extend(orbit.into_iter().map(|w| (w, m)));
        }
        Ok(out)
    }

    /// Dynkin index computed as a trace form on a Cartan element:
    /// `Σ_μ mult(μ)·(μ, v)² / (v, v)` with `v = ρ`.
    pub fn module_index_via_weights(&self, labels: &[i64], bound: usize) -> Result<u64> {
        let weights = self.weights_with_multiplicity(labels, bound)?;
        let v = &self.rho;
        let num: Q = weights.iter().map(|(mu, m)| Q::int(*m as i64) * self.inner(mu, v).pow(2)).sum();
        let idx = num / self.inner(v, v);
        idx.to_integer()
            .and_then(|x| u64::try_from(x).ok())
            .ok_or_else(|| Error::Invalid(format!("trace-form index {idx} is not a non-negative integer")))
    }

    /// Decompose the Dynkin subdiagram on `nodes` (0-based) into simple factors.
    pub fn subdiagram_factors(&self, nodes: &[usize]) -> Vec<SimpleFactor> {
        let mut remaining: Vec<usize> = nodes.to_vec();
        remaining.sort_unstable();
        let mut factors = Vec::new();
        while let Some(start) = remaining.first().copied() {
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let a = comp[i];
                for &b in &remaining {
                    if !comp.contains(&b) && self.cartan[a][b] != 0 {
                        comp.push(b);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            remaining.retain(|x| !comp.contains(x));
            factors.push(self.classify_component(comp));
        }
        factors
    }

    fn classify_component(&self, nodes: Vec<usize>) -> SimpleFactor {
        let r = nodes.len();
        let norms: Vec<Q> = nodes.iter().map(|&i| self.inner(&self.simple_roots[i], &self.simple_roots[i])).collect();
        let max = *norms.iter().max().expect("nonempty");
        let n_long = norms.iter().filter(|x| **x == max).count();
        let degree = |a: usize| nodes.iter().filter(|&&b| b != a && self.cartan[a][b] != 0).count();
        let (t, rank) = if r == 1 {
            (TypeLabel::A, 1)
        } else if r == 2 && self.cartan[nodes[0]][nodes[1]] * self.cartan[nodes[1]][nodes[0]] == 3 {
            (TypeLabel::G, 2)
        } else if n_long < r {
            // Doubly laced: B has a single short simple root, C a single long one.
            if r == 4 && n_long == 2 {
                (TypeLabel::F, 4)
            } else if r == 2 {
                if self.type_label == TypeLabel::C {
                    (TypeLabel::C, 2)
                } else {
                    (TypeLabel::B, 2)
                }
            } else if n_long == r - 1 {
                (TypeLabel::B, r)
            } else {
                (TypeLabel::C, r)
            }
        } else if let Some(&branch) = nodes.iter().find(|&&a| degree(a) == 3) {
            let mut arms: Vec<usize> = nodes
                .iter()
                .filter(|&&b| b != branch && self.cartan[branch][b] != 0)
                .map(|&b| {
                    let mut len = 1;
                    let (mut prev, mut cur) = (branch, b);
                    loop {
                        let next = nodes.iter().find(|&&c| c != prev && c != cur && self.cartan[cur][c] != 0);
                        match next {
                            Some(&c) => {
                                len += 1;
                                prev = cur;
                                cur = c;
                            }
                            None => break len,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            if arms[0] == 1 && arms[1] == 1 {
                (TypeLabel::D, r)
            } else {
                (TypeLabel::E, r)
            }
        } else {
            (TypeLabel::A, r)
        };
        SimpleFactor { type_label: t, rank, nodes, dual_coxeter: dual_coxeter(t, rank) }
    }

    /// Positive roots supported on the given simple roots.
    pub fn factor_roots(&self, factor: &SimpleFactor) -> Vec<usize> {
        (0..self.positive_roots.len())
            .filter(|&r| {
                self.positive_coords[r].iter().enumerate().all(|(i, &c)| c == 0 || factor.nodes.contains(&i))
            })
            .collect()
    }

    /// A long root of the factor (maximal norm among its roots).
    pub fn factor_long_root(&self, factor: &SimpleFactor) -> Vec<Q> {
        let roots = self.factor_roots(factor);
        roots
            .iter()
            .map(|&r| self.positive_roots[r].clone())
            .max_by_key(|v| self.inner(v, v))
            .expect("factor has roots")
    }

    /// Dynkin index of a factor on the module with weights `weights` (with multiplicity):
    /// `½ Σ ⟨μ, β^∨⟩²` for a long root `β` of the factor.
    pub fn factor_index_on_weights<'a>(&self, factor: &SimpleFactor, weights: impl IntoIterator<Item = &'a Vec<Q>>) -> Q {
        let beta = self.factor_long_root(factor);
        weights.into_iter().map(|mu| self.pairing(mu, &beta).pow(2)).sum::<Q>() / Q::int(2)
    }
}

/// A simple factor of a subdiagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleFactor {
    pub type_label: TypeLabel,
    pub rank: usize,
    /// 0-based indices of the ambient simple roots spanning the factor.
    pub nodes: Vec<usize>,
    pub dual_coxeter: u32,
}

impl SimpleFactor {
    pub fn name(&self) -> String {
        algebra_name(self.type_label, self.rank)
    }

    pub fn dimension(&self) -> usize {
        algebra_dimension(self.type_label, self.rank)
    }
}

fn big(x: Q) -> BigRational {
    BigRational::new(BigInt::from(x.numer()), BigInt::from(x.denom()))
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::ZERO; n];
    v[i] = Q::ONE;
    v
}

fn diff(n: usize, i: usize, j: usize) -> Vec<Q> {
    let mut v = unit(n, i);
    v[j] = -Q::ONE;
    v
}

fn simple_roots(t: TypeLabel, n: usize) -> (usize, Vec<Vec<Q>>) {
    match t {
        TypeLabel::A => (n + 1, (0..n).map(|i| diff(n + 1, i, i + 1)).collect()),
        TypeLabel::B | TypeLabel::C | TypeLabel::D => {
            let mut s: Vec<Vec<Q>> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let last = match t {
                TypeLabel::B => unit(n, n - 1),
                TypeLabel::C => {
                    let mut v = vec![Q::ZERO; n];
                    v[n - 1] = Q::int(2);
                    v
                }
                _ => {
                    let mut v = vec![Q::ZERO; n];
                    v[n - 2] = Q::ONE;
                    v[n - 1] = Q::ONE;
                    v
                }
            };
            s.push(last);
            (n, s)
        }
        TypeLabel::E => {
            // Bourbaki simple roots of E8; E6 and E7 use the first six/seven.
            let h = q(1, 2);
            let mut bourbaki: Vec<Vec<Q>> = Vec::new();
            let mut a1 = vec![-h; 8];
            a1[0] = h;
            a1[7] = h;
            bourbaki.push(a1);
            let mut a2 = vec![Q::ZERO; 8];
            a2[0] = Q::ONE;
            a2[1] = Q::ONE;
            bourbaki.push(a2);
            for i in 0..6 {
                bourbaki.push(diff(8, i + 1, i));
            }
            let roots = (1..=n).map(|i| bourbaki[e_type_bourbaki_index(n, i) - 1].clone()).collect();
            (8, roots)
        }
        TypeLabel::F => {
            let h = q(1, 2);
            (4, vec![diff(4, 1, 2), diff(4, 2, 3), unit(4, 3), vec![h, -h, -h, -h]])
        }
        TypeLabel::G => {
            let g = |v: [i64; 3]| v.iter().map(|&x| Q::int(x)).collect::<Vec<Q>>();
            (3, vec![g([1, -1, 0]), g([-2, 1, 1])])
        }
    }
}

/// Positive roots in simple-root coordinates, generated by root strings.
fn positive_root_coords(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let simple: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut roots: Vec<Vec<i64>> = simple.clone();
    let mut known: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                // p = largest k with β − kα_i a root; q = p − ⟨α_i^∨, β⟩.
                let mut p = 0;
                loop {
                    let mut c = beta.clone();
                    c[i] -= p + 1;
                    if c.iter().all(|&x| x >= 0) && known.contains(&c) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pair: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                if p - pair > 0 {
                    let mut c = beta.clone();
                    c[i] += 1;
                    if known.insert(c.clone()) {
                        next.push(c);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types() -> Vec<(TypeLabel, usize)> {
        let mut v = Vec::new();
        for n in 1..=8 {
            v.push((TypeLabel::A, n));
        }
        for n in 2..=8 {
            v.push((TypeLabel::B, n));
            v.push((TypeLabel::C, n));
        }
        for n in 3..=8 {
            v.push((TypeLabel::D, n));
        }
        for n in 6..=8 {
            v.push((TypeLabel::E, n));
        }
        v.push((TypeLabel::F, 4));
        v.push((TypeLabel::G, 2));
        v
    }

    #[test]
    fn root_counts_match_dimension_formula() {
        for (t, n) in all_types() {
            let rs = RootSystem::new(t, n).unwrap();
            assert_eq!(rs.dimension(), algebra_dimension(t, n), "{t}{n}");
        }
    }

    #[test]
    fn theta_is_maximal_with_norm_two() {
        for (t, n) in all_types() {
            let rs = RootSystem::new(t, n).unwrap();
            assert_eq!(rs.inner(&rs.theta, &rs.theta), Q::int(2));
            let th = rs.simple_coords(&rs.theta).unwrap();
            for r in &rs.positive_roots {
                let c = rs.simple_coords(r).unwrap();
                assert!(c.iter().zip(&th).all(|(a, b)| a <= b), "{t}{n}: θ not maximal");
            }
        }
    }

    #[test]
    fn classical_highest_roots() {
        let a = RootSystem::new(TypeLabel::A, 4).unwrap();
        assert_eq!(a.theta, diff(5, 0, 4));
        assert_eq!(a.dual_coxeter, 5);
        let c = RootSystem::new(TypeLabel::C, 3).unwrap();
        assert_eq!(c.theta, vec![Q::int(2), Q::ZERO, Q::ZERO]);
        assert_eq!(c.dual_coxeter, 4);
        let b = RootSystem::new(TypeLabel::B, 3).unwrap();
        assert_eq!(b.theta, vec![Q::ONE, Q::ONE, Q::ZERO]);
        assert_eq!(RootSystem::new(TypeLabel::E, 7).unwrap().dual_coxeter, 18);
    }

    #[test]
    fn cartan_matrices() {
        let b3 = RootSystem::new(TypeLabel::B, 3).unwrap();
        assert_eq!(b3.cartan, vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]);
        let c3 = RootSystem::new(TypeLabel::C, 3).unwrap();
        assert_eq!(c3.cartan, vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]);
        // Chain α1..α5 with α6 attached to α3.
        let e6 = RootSystem::new(TypeLabel::E, 6).unwrap();
        for i in 0..4 {
            assert_eq!(e6.cartan[i][i + 1], -1);
        }
        assert_eq!(e6.cartan[2][5], -1);
        assert_eq!(e6.cartan[4][5], 0);
    }

    #[test]
    fn highest_root_weights_in_e_ordering() {
        let labels = |t, n| {
            let rs = RootSystem::new(t, n).unwrap();
            rs.labels(&rs.theta)
        };
        let unitv = |n: usize, i: usize| -> Vec<Q> { (0..n).map(|j| Q::int(i64::from(j == i))).collect() };
        assert_eq!(labels(TypeLabel::E, 6), unitv(6, 5));
        assert_eq!(labels(TypeLabel::E, 7), unitv(7, 0));
        assert_eq!(labels(TypeLabel::E, 8), unitv(8, 6));
    }

    #[test]
    fn rejects_invalid_pairs() {
        for (t, n) in [(TypeLabel::B, 1), (TypeLabel::D, 2), (TypeLabel::E, 5), (TypeLabel::A, 0)] {
            let err = RootSystem::new(t, n).unwrap_err().to_string();
            assert!(err.contains("requires"), "{err}");
        }
    }

    #[test]
    fn weyl_dimensions() {
        let a1 = RootSystem::new(TypeLabel::A, 1).unwrap();
        for a in 0..6 {
            assert_eq!(a1.weyl_dimension(&[a]).unwrap(), a as u64 + 1);
        }
        let a2 = RootSystem::new(TypeLabel::A, 2).unwrap();
        assert_eq!(a2.weyl_dimension(&[1, 1]).unwrap(), 8);
        assert_eq!(a2.weyl_dimension(&[0, 0]).unwrap(), 1);
        assert!(a2.weyl_dimension(&[-1, 0]).is_err());
        let e8 = RootSystem::new(TypeLabel::E, 8).unwrap();
        assert_eq!(e8.weyl_dimension(&[0, 0, 0, 0, 0, 0, 1, 0]).unwrap(), 248);
    }

    #[test]
    fn dimension_by_weight_enumeration() {
        // Independent count of weights with multiplicity.
        let a2 = RootSystem::new(TypeLabel::A, 2).unwrap();
        let w = a2.weights_with_multiplicity(&[1, 1], 500).unwrap();
        let total: u64 = w.iter().map(|(_, m)| m).sum();
        assert_eq!(total, 8);
        let zero = vec![Q::ZERO; 3];
        assert_eq!(w.iter().find(|(mu, _)| *mu == zero).unwrap().1, 2);
    }

    #[test]
    fn dynkin_index_examples() {
        for (t, n) in all_types() {
            let rs = RootSystem::new(t, n).unwrap();
            let th = rs.labels(&rs.theta).iter().map(|x| x.to_integer().unwrap()).collect::<Vec<_>>();
            assert_eq!(rs.dynkin_index(&th).unwrap(), 2 * rs.dual_coxeter as u64, "{t}{n}");
            assert_eq!(rs.dynkin_index(&vec![0; n]).unwrap(), 0);
        }
        for n in 2..=6usize {
            let rs = RootSystem::new(TypeLabel::A, n - 1).unwrap();
            for a in 0..5i64 {
                let mut l = vec![0; n - 1];
                l[0] = a;
                let expected = binomial(n as u64 + a as u64, n as u64 + 1);
                assert_eq!(rs.dynkin_index(&l).unwrap(), expected);
            }
        }
    }

    fn binomial(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn index_oracle_small_cases() {
        let a1 = RootSystem::new(TypeLabel::A, 1).unwrap();
        assert_eq!(a1.module_index_via_weights(&[2], 500).unwrap(), 4);
        assert_eq!(a1.module_index_via_weights(&[1], 500).unwrap(), 1);
        let a2 = RootSystem::new(TypeLabel::A, 2).unwrap();
        assert_eq!(a2.module_index_via_weights(&[1, 0], 500).unwrap(), 1);
        let e8 = RootSystem::new(TypeLabel::E, 8).unwrap();
        assert!(matches!(e8.module_index_via_weights(&[0, 0, 0, 0, 0, 0, 1, 0], 100), Err(Error::Capacity(_))));
    }

    #[test]
    fn subdiagram_classification() {
        let e7 = RootSystem::new(TypeLabel::E, 7).unwrap();
        let f = e7.subdiagram_factors(&[0, 1, 2, 3, 4, 6]);
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].type_label, f[0].rank), (TypeLabel::E, 6));
        let d = e7.subdiagram_factors(&[1, 2, 3, 4, 5, 6]);
        assert_eq!((d[0].type_label, d[0].rank), (TypeLabel::D, 6));
        let b4 = RootSystem::new(TypeLabel::B, 4).unwrap();
        let f = b4.subdiagram_factors(&[0, 2, 3]);
        assert_eq!(f.len(), 2);
        assert_eq!((f[1].type_label, f[1].rank), (TypeLabel::B, 2));
        let c4 = RootSystem::new(TypeLabel::C, 4).unwrap();
        let f = c4.subdiagram_factors(&[1, 2, 3]);
        assert_eq!((f[0].type_label, f[0].rank), (TypeLabel::C, 3));
    }
}
