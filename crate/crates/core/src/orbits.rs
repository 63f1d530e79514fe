//! Nilpotent orbits of the classical Lie algebras and the correspondence `χ`
//! induced by the Slodowy slice through `f_θ`.
//!
//! Orbits are labelled by partitions of the natural dimension `N` (`n+1`, `2n+1`,
//! `2n`, `2n` for `A_n`, `B_n`, `C_n`, `D_n`). In types B and D even parts have even
//! multiplicity, in type C odd parts do. A very even partition of type D (all parts
//! even) labels two orbits, told apart by the tags `I` and `II`: the Richardson orbit
//! of `p_{α_n}` carries `II`, that of `p_{α_{n−1}}` carries `I`. Jordan types cannot
//! see the tag, so labels computed from matrices leave it unset.
//!
//! Closure order is the dominance order of partitions. Two very even orbits with
//! different tags are related only through an intermediate orbit that is not very
//! even.
//!
//! Rank 0 of type A stands for `gl_1` and rank 1 of type D for `so_2`; both have the
//! zero orbit only. They occur as targets of `χ`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::liealg::{MatrixLieAlgebra, MinimalGrading, ParabolicDatum};
use crate::linalg::Mat;
use crate::rational::{q, Q};
use crate::rootsys::{algebra_name, dual_coxeter, RootSystem, TypeLabel};

/// Largest natural dimension for which orbits are enumerated.
pub const MAX_NATURAL_DIM: usize = 41;

/// Tag of a very even orbit of type D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VeryEven {
    I,
    II,
}

impl fmt::Display for VeryEven {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VeryEven::I => "I",
            VeryEven::II => "II",
        })
    }
}

/// Dimension of the defining representation.
pub fn natural_dim(t: TypeLabel, rank: usize) -> usize {
    match t {
        TypeLabel::A => rank + 1,
        TypeLabel::B => 2 * rank + 1,
        _ => 2 * rank,
    }
}

fn classical_name(t: TypeLabel, rank: usize) -> String {
    match (t, rank) {
        (TypeLabel::A, 0) => "gl1".to_string(),
        (TypeLabel::D, 1) => "so2".to_string(),
        (TypeLabel::D, 2) => "so4".to_string(),
        _ => algebra_name(t, rank),
    }
}

/// A nilpotent orbit of a classical algebra, labelled by a partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitLabel {
    pub type_label: TypeLabel,
    pub rank: usize,
    /// Non-increasing positive parts summing to the natural dimension.
    pub partition: Vec<usize>,
    /// Set for very even partitions of type D, unless the label came from a Jordan type.
    pub very_even: Option<VeryEven>,
}

fn is_very_even(t: TypeLabel, p: &[usize]) -> bool {
    t == TypeLabel::D && !p.is_empty() && p.iter().all(|x| x % 2 == 0)
}

fn multiplicities(p: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &x in p {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

fn parity_ok(t: TypeLabel, p: &[usize]) -> bool {
    let m = multiplicities(p);
    match t {
        TypeLabel::A => true,
        TypeLabel::B | TypeLabel::D => m.iter().all(|(part, mult)| part % 2 == 1 || mult % 2 == 0),
        TypeLabel::C => m.iter().all(|(part, mult)| part % 2 == 0 || mult % 2 == 0),
        _ => false,
    }
}

fn check_ambient(t: TypeLabel, rank: usize) -> Result<()> {
    let ok = match t {
        TypeLabel::A => true,
        TypeLabel::B | TypeLabel::C | TypeLabel::D => rank >= 1,
        _ => false,
    };
    if !ok {
        return Err(Error::Unsupported(format!("partition labels need a classical type, got {t}{rank}")));
    }
    if natural_dim(t, rank) > MAX_NATURAL_DIM {
        return Err(Error::Capacity(format!(
            "{}: natural dimension {} exceeds the enumeration bound {MAX_NATURAL_DIM}",
            classical_name(t, rank),
            natural_dim(t, rank)
        )));
    }
    Ok(())
}

impl OrbitLabel {
    /// Validated label. Parts are sorted; zero parts are dropped.
    pub fn new(t: TypeLabel, rank: usize, partition: &[usize], tag: Option<VeryEven>) -> Result<OrbitLabel> {
        let o = OrbitLabel::untagged(t, rank, partition)?;
        match (is_very_even(t, &o.partition), tag) {
            (true, None) => invalid(format!("very even partition {} of {} needs a tag I or II", o, o.algebra())),
            (false, Some(_)) => invalid(format!("partition {} of {} is not very even and takes no tag", o, o.algebra())),
            _ => Ok(OrbitLabel { very_even: tag, ..o }),
        }
    }

    /// Label without a very even tag, as produced by a Jordan type.
    pub fn untagged(t: TypeLabel, rank: usize, partition: &[usize]) -> Result<OrbitLabel> {
        check_ambient(t, rank)?;
        let mut p: Vec<usize> = partition.iter().copied().filter(|&x| x > 0).collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        let n = natural_dim(t, rank);
        if p.iter().sum::<usize>() != n {
            return invalid(format!("partition {p:?} does not sum to {n} for {}", classical_name(t, rank)));
        }
        if !parity_ok(t, &p) {
            let rule = if t == TypeLabel::C { "odd parts" } else { "even parts" };
            return invalid(format!("partition {p:?} is not a {} orbit: {rule} need even multiplicity", classical_name(t, rank)));
        }
        Ok(OrbitLabel { type_label: t, rank, partition: p, very_even: None })
    }

    pub fn zero(t: TypeLabel, rank: usize) -> Result<OrbitLabel> {
        OrbitLabel::untagged(t, rank, &vec![1; natural_dim(t, rank)])
    }

    /// Parse `[3,2^2,1]`, optionally followed by `^I` or `^II`.
    pub fn parse(t: TypeLabel, rank: usize, s: &str) -> Result<OrbitLabel> {
        let s = s.trim();
        let (body, tag) = match s.rfind(']') {
            Some(i) => (&s[..=i], &s[i + 1..]),
            None => return invalid(format!("orbit label {s:?} must look like [2^2,1^3]")),
        };
        let tag = match tag {
            "" => None,
            "^I" => Some(VeryEven::I),
            "^II" => Some(VeryEven::II),
            other => return invalid(format!("unknown very even tag {other:?}")),
        };
        let inner = body.strip_prefix('[').and_then(|b| b.strip_suffix(']'));
        let inner = inner.ok_or_else(|| Error::Invalid(format!("orbit label {s:?} must look like [2^2,1^3]")))?;
        let mut parts = Vec::new();
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (part, mult) = match tok.split_once('^') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (tok, "1"),
            };
            let part: usize = part.parse().map_err(|_| Error::Invalid(format!("bad part {tok:?} in {s:?}")))?;
            let mult: usize = mult.parse().map_err(|_| Error::Invalid(format!("bad multiplicity {tok:?} in {s:?}")))?;
            parts.extend(std::iter::repeat(part).take(mult));
        }
        OrbitLabel::new(t, rank, &parts, tag)
    }

    pub fn algebra(&self) -> String {
        classical_name(self.type_label, self.rank)
    }

    pub fn is_zero(&self) -> bool {
        self.partition.iter().all(|&x| x == 1)
    }

    pub fn is_very_even(&self) -> bool {
        is_very_even(self.type_label, &self.partition)
    }

    /// Dual (transposed) partition.
    pub fn dual_partition(&self) -> Vec<usize> {
        dual(&self.partition)
    }

    /// Equal as partitions, ignoring very even tags.
    pub fn same_partition(&self, other: &OrbitLabel) -> bool {
        self.type_label == other.type_label && self.rank == other.rank && self.partition == other.partition
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = multiplicities(&self.partition)
            .iter()
            .rev()
            .map(|(p, m)| if *m == 1 { p.to_string() } else { format!("{p}^{m}") })
            .collect();
        write!(f, "[{}]", parts.join(","))?;
        if let Some(t) = self.very_even {
            write!(f, "^{t}")?;
        }
        Ok(())
    }
}

fn dual(p: &[usize]) -> Vec<usize> {
    let max = p.first().copied().unwrap_or(0);
    (1..=max).map(|i| p.iter().filter(|&&x| x >= i).count()).collect()
}

/// Orbit dimension from the dual partition `λ*`:
/// `N² − Σλ*ᵢ²` (A), `N(N−1)/2 − ½(Σλ*ᵢ² − #odd parts)` (B, D),
/// `N(N+1)/2 − ½(Σλ*ᵢ² + #odd parts)` (C).
pub fn orbit_dimension(o: &OrbitLabel) -> usize {
    let n = natural_dim(o.type_label, o.rank);
    let s: usize = o.dual_partition().iter().map(|x| x * x).sum();
    let odd = o.partition.iter().filter(|&&x| x % 2 == 1).count();
    match o.type_label {
        TypeLabel::A => n * n - s,
        TypeLabel::C => n * (n + 1) / 2 - (s + odd) / 2,
        _ => n * (n - 1) / 2 - (s - odd) / 2,
    }
}

fn partitions_of(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(acc.clone());
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            acc.push(p);
            rec(rest - p, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All nilpotent orbits, sorted by dimension and then by partition.
pub fn all_orbits(t: TypeLabel, rank: usize) -> Result<Vec<OrbitLabel>> {
    check_ambient(t, rank)?;
    let mut out = Vec::new();
    for p in partitions_of(natural_dim(t, rank)) {
        if !parity_ok(t, &p) {
            continue;
        }
        if is_very_even(t, &p) {
            for tag in [VeryEven::I, VeryEven::II] {
                out.push(OrbitLabel { type_label: t, rank, partition: p.clone(), very_even: Some(tag) });
            }
        } else {
            out.push(OrbitLabel { type_label: t, rank, partition: p, very_even: None });
        }
    }
    out.sort_by(|a, b| orbit_dimension(a).cmp(&orbit_dimension(b)).then_with(|| a.cmp(b)));
    Ok(out)
}

/// `λ ≤ μ` in dominance order.
pub fn dominated(lambda: &[usize], mu: &[usize]) -> bool {
    let (mut a, mut b) = (0usize, 0usize);
    for i in 0..lambda.len().max(mu.len()) {
        a += lambda.get(i).copied().unwrap_or(0);
        b += mu.get(i).copied().unwrap_or(0);
        if a > b {
            return false;
        }
    }
    true
}

/// `O_a ⊆ closure(O_b)`.
pub fn closure_leq(a: &OrbitLabel, b: &OrbitLabel) -> bool {
    if a.type_label != b.type_label || a.rank != b.rank {
        return false;
    }
    if a.partition == b.partition {
        return a.very_even.is_none() || b.very_even.is_none() || a.very_even == b.very_even;
    }
    if !dominated(&a.partition, &b.partition) {
        return false;
    }
    match (a.very_even, b.very_even) {
        (Some(x), Some(y)) if x != y => partitions_of(natural_dim(a.type_label, a.rank)).iter().any(|nu| {
            nu != &a.partition
                && nu != &b.partition
                && parity_ok(a.type_label, nu)
                && !is_very_even(a.type_label, nu)
                && dominated(&a.partition, nu)
                && dominated(nu, &b.partition)
        }),
        _ => true,
    }
}

/// A nilpotent orbit of a classical or an exceptional algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Orbit {
    Classical(OrbitLabel),
    Exceptional(ExceptionalOrbit),
}

impl Orbit {
    pub fn dimension(&self) -> usize {
        match self {
            Orbit::Classical(o) => orbit_dimension(o),
            Orbit::Exceptional(e) => e.dim,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Orbit::Classical(o) => o.is_zero(),
            Orbit::Exceptional(e) => e.dim == 0,
        }
    }

    pub fn as_classical(&self) -> Option<&OrbitLabel> {
        match self {
            Orbit::Classical(o) => Some(o),
            Orbit::Exceptional(_) => None,
        }
    }
}

impl fmt::Display for Orbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orbit::Classical(o) => o.fmt(f),
            Orbit::Exceptional(e) => f.write_str(&e.name),
        }
    }
}

/// An orbit of `e6` or `e7` by its Bala–Carter label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExceptionalOrbit {
    pub rank: usize,
    pub name: String,
    pub dim: usize,
}

/// Covering relations of the closure order on a set of orbits.
#[derive(Clone, Debug, Serialize)]
pub struct HasseDiagram {
    pub algebra: String,
    pub nodes: Vec<Orbit>,
    pub dims: Vec<usize>,
    /// `(i, j)`: `nodes[i]` is covered by `nodes[j]`.
    pub edges: Vec<(usize, usize)>,
}

impl HasseDiagram {
    fn from_order(algebra: String, nodes: Vec<Orbit>, leq: impl Fn(usize, usize) -> bool) -> HasseDiagram {
        let n = nodes.len();
        let lt = |i: usize, j: usize| i != j && leq(i, j);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if lt(i, j) && !(0..n).any(|m| lt(i, m) && lt(m, j)) {
                    edges.push((i, j));
                }
            }
        }
        let dims = nodes.iter().map(Orbit::dimension).collect();
        HasseDiagram { algebra, nodes, dims, edges }
    }

    /// Position of an orbit (tags compared only when both are set).
    pub fn position(&self, o: &Orbit) -> Option<usize> {
        self.nodes.iter().position(|x| match (x, o) {
            (Orbit::Classical(a), Orbit::Classical(b)) => {
                a.same_partition(b) && (a.very_even.is_none() || b.very_even.is_none() || a.very_even == b.very_even)
            }
            _ => x == o,
        })
    }

    /// The diagram is a chain `n_0 < n_1 < …` in node order.
    pub fn is_chain(&self) -> bool {
        self.edges.len() + 1 == self.nodes.len() && self.edges.iter().all(|&(i, j)| j == i + 1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "collapsing.hasse/1",
            "algebra": self.algebra,
            "nodes": self.nodes.iter().zip(&self.dims).map(|(o, d)| serde_json::json!({"label": o.to_string(), "dim": d})).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(i, j)| [i, j]).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph \"{}\" {{\n  rankdir=BT;\n", self.algebra);
        self.write_dot_body(&mut s, "n", "  ");
        s.push_str("}\n");
        s
    }

    fn write_dot_body(&self, s: &mut String, prefix: &str, indent: &str) {
        for (i, (o, d)) in self.nodes.iter().zip(&self.dims).enumerate() {
            s.push_str(&format!("{indent}{prefix}{i} [label=\"{o}\\ndim {d}\"];\n"));
        }
        for (i, j) in &self.edges {
            s.push_str(&format!("{indent}{prefix}{i} -> {prefix}{j} [arrowhead=none];\n"));
        }
    }
}

/// Hasse diagram of all orbits in the closure of `top`.
pub fn closure_hasse(top: &OrbitLabel) -> Result<HasseDiagram> {
    let nodes: Vec<OrbitLabel> =
        all_orbits(top.type_label, top.rank)?.into_iter().filter(|o| closure_leq(o, top)).collect();
    let leq = |i: usize, j: usize| closure_leq(&nodes[i], &nodes[j]);
    let d = HasseDiagram::from_order(top.algebra(), nodes.iter().cloned().map(Orbit::Classical).collect(), leq);
    Ok(d)
}

/// Hasse diagram of the whole nilpotent cone.
pub fn nilpotent_cone_hasse(t: TypeLabel, rank: usize) -> Result<HasseDiagram> {
    let nodes = all_orbits(t, rank)?;
    let leq = |i: usize, j: usize| closure_leq(&nodes[i], &nodes[j]);
    Ok(HasseDiagram::from_order(classical_name(t, rank), nodes.iter().cloned().map(Orbit::Classical).collect(), leq))
}

/// Named orbits of a classical algebra: zero, minimal, subregular, regular.
#[derive(Clone, Debug, Serialize)]
pub struct DistinguishedOrbits {
    pub zero: OrbitLabel,
    pub min: OrbitLabel,
    pub subregular: OrbitLabel,
    pub regular: OrbitLabel,
}

/// The minimal orbit is the unique nonzero orbit of least dimension; the regular and
/// subregular orbits are the unique orbits of the two largest dimensions.
pub fn distinguished_orbits(t: TypeLabel, rank: usize) -> Result<DistinguishedOrbits> {
    let all = all_orbits(t, rank)?;
    if all.len() < 3 {
        return Err(Error::Unsupported(format!("{} has fewer than three nilpotent orbits", classical_name(t, rank))));
    }
    let unique = |d: usize| -> Result<OrbitLabel> {
        let v: Vec<&OrbitLabel> = all.iter().filter(|o| orbit_dimension(o) == d).collect();
        match v.as_slice() {
            [o] => Ok((*o).clone()),
            _ => Err(Error::Invalid(format!("{} orbits of dimension {d} in {}", v.len(), classical_name(t, rank)))),
        }
    };
    let mut dims: Vec<usize> = all.iter().map(orbit_dimension).collect();
    dims.dedup();
    Ok(DistinguishedOrbits {
        zero: unique(0)?,
        min: unique(dims[1])?,
        subregular: unique(dims[dims.len() - 2])?,
        regular: unique(dims[dims.len() - 1])?,
    })
}

fn repeat_part(part: usize, mult: usize) -> Vec<usize> {
    vec![part; mult]
}

fn concat(a: Vec<usize>, b: Vec<usize>) -> Vec<usize> {
    a.into_iter().chain(b).collect()
}

/// `2·dim u` for `p_{α_k}`, from the root system.
fn two_dim_u(t: TypeLabel, rank: usize, k: usize) -> Result<usize> {
    let rs = RootSystem::new(t, rank)?;
    Ok(2 * ParabolicDatum::new(&rs, k, true)?.dim_u)
}

/// Richardson orbit of the parabolic `p_{α_k}` of a commutative classical case, checked
/// against `dim O_p = 2 dim u`.
pub fn richardson_orbit(t: TypeLabel, rank: usize, k: usize) -> Result<OrbitLabel> {
    let n = rank;
    let unsupported = || Error::Unsupported(format!("no Richardson data for p_α{k} of {}", algebra_name(t, n)));
    let o = match t {
        TypeLabel::A if (1..=n).contains(&k) => {
            // Transpose of the Levi block sizes (k, n+1−k).
            let (a, b) = (k.min(n + 1 - k), k.max(n + 1 - k));
            OrbitLabel::new(t, n, &concat(repeat_part(2, a), repeat_part(1, b - a)), None)?
        }
        TypeLabel::B if k == 1 => OrbitLabel::new(t, n, &concat(vec![3], repeat_part(1, 2 * n - 2)), None)?,
        TypeLabel::C if k == n => OrbitLabel::new(t, n, &repeat_part(2, n), None)?,
        TypeLabel::D if k == 1 => OrbitLabel::new(t, n, &concat(vec![3], repeat_part(1, 2 * n - 3)), None)?,
        TypeLabel::D if k + 1 >= n && k <= n => d_spin_richardson(n, k == n)?,
        _ => return Err(unsupported()),
    };
    let expected = two_dim_u(t, n, k)?;
    if orbit_dimension(&o) != expected {
        return Err(Error::Invalid(format!("Richardson data {o} of p_α{k} has dimension {} ≠ 2 dim u = {expected}", orbit_dimension(&o))));
    }
    Ok(o)
}

/// Richardson orbit of `p_{α_n}` (`last`) or `p_{α_{n−1}}` in `so_{2n}`, valid down to
/// `n = 1`.
fn d_spin_richardson(n: usize, last: bool) -> Result<OrbitLabel> {
    if n % 2 == 0 {
        let tag = if last { VeryEven::II } else { VeryEven::I };
        OrbitLabel::new(TypeLabel::D, n, &repeat_part(2, n), Some(tag))
    } else {
        OrbitLabel::new(TypeLabel::D, n, &concat(repeat_part(2, n - 1), vec![1, 1]), None)
    }
}

/// The sheet attached to a commutative maximal parabolic.
#[derive(Clone, Debug, Serialize)]
pub struct SheetDatum {
    pub algebra: String,
    pub parabolic: usize,
    pub richardson: OrbitLabel,
    /// `G·[p,p]^⊥`.
    pub closure: String,
    /// `2 dim u`: dimension of the Richardson orbit.
    pub dim_richardson: usize,
    /// `dim z(l)`: extra dimensions of the sheet along the semisimple directions.
    pub dim_center: usize,
}

pub fn sheet_datum(t: TypeLabel, rank: usize, k: usize) -> Result<SheetDatum> {
    let richardson = richardson_orbit(t, rank, k)?;
    Ok(SheetDatum {
        algebra: algebra_name(t, rank),
        parabolic: k,
        dim_richardson: orbit_dimension(&richardson),
        richardson,
        closure: format!("G·[p_α{k}, p_α{k}]^⊥"),
        dim_center: 1,
    })
}

/// How `g̃♮` sits inside `g` for a classical case with a collapsing level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NaturalPart {
    /// `g̃♮ = gl_1`, the centre of `g♮`.
    Centre,
    /// `g̃♮` acts on `f_θ`-free coordinates: `χ⁻¹` adds a block `[2]` (types A, C)
    /// or `[2²]` (type D).
    Complement,
    /// `g̃♮ = sl_2` on the `α_1` root space of `so_N`: `[1²] ↦ [2²]`, `[2] ↦ [3,1]`.
    Partner,
}

/// The correspondence `χ` for `(g, p_{α_k})`.
#[derive(Clone, Debug, Serialize)]
pub struct ChiSetting {
    pub type_label: TypeLabel,
    pub rank: usize,
    pub parabolic: usize,
    pub target_type: TypeLabel,
    pub target_rank: usize,
    pub part: NaturalPart,
}

impl ChiSetting {
    pub fn new(t: TypeLabel, n: usize, k: usize) -> Result<ChiSetting> {
        let (tt, tr, part) = match t {
            TypeLabel::A if n >= 2 && (k == 1 || k == n) => (TypeLabel::A, 0, NaturalPart::Centre),
            TypeLabel::A if n >= 3 && n % 2 == 1 && k == (n + 1) / 2 => (TypeLabel::A, n - 2, NaturalPart::Complement),
            TypeLabel::B if n >= 2 && k == 1 => (TypeLabel::A, 1, NaturalPart::Partner),
            TypeLabel::C if n >= 2 && k == n => (TypeLabel::C, n - 1, NaturalPart::Complement),
            TypeLabel::D if n >= 3 && k == 1 => (TypeLabel::A, 1, NaturalPart::Partner),
            TypeLabel::D if n >= 3 && (k == n || k + 1 == n) => (TypeLabel::D, n - 2, NaturalPart::Complement),
            _ => {
                return Err(Error::Unsupported(format!(
                    "p_α{k} of {} has no collapsing level with a classical χ-correspondence",
                    algebra_name(t, n)
                )))
            }
        };
        if matches!((t, n), (TypeLabel::B, 0..=1) | (TypeLabel::D, 0..=2)) {
            return invalid(format!("invalid rank {n} for type {t}"));
        }
        Ok(ChiSetting { type_label: t, rank: n, parabolic: k, target_type: tt, target_rank: tr, part })
    }

    pub fn algebra(&self) -> String {
        algebra_name(self.type_label, self.rank)
    }

    pub fn target_algebra(&self) -> String {
        classical_name(self.target_type, self.target_rank)
    }

    pub fn richardson(&self) -> Result<OrbitLabel> {
        richardson_orbit(self.type_label, self.rank, self.parabolic)
    }

    /// Richardson orbit `O_{p̃♮}` of the induced parabolic of `g̃♮`.
    pub fn target_richardson(&self) -> Result<OrbitLabel> {
        let (t, r) = (self.target_type, self.target_rank);
        match self.part {
            NaturalPart::Centre => OrbitLabel::zero(t, r),
            NaturalPart::Partner => OrbitLabel::new(t, r, &[2], None),
            NaturalPart::Complement => match t {
                TypeLabel::A => OrbitLabel::new(t, r, &repeat_part(2, (r + 1) / 2), None),
                TypeLabel::C => OrbitLabel::new(t, r, &repeat_part(2, r), None),
                _ => d_spin_richardson(r, self.parabolic == self.rank),
            },
        }
    }

    /// The `g`-orbit `O` with `χ(O) = μ`.
    pub fn chi_inverse(&self, mu: &OrbitLabel) -> Result<OrbitLabel> {
        if mu.type_label != self.target_type || mu.rank != self.target_rank {
            return invalid(format!("{mu} is not an orbit of {}", self.target_algebra()));
        }
        let (t, n) = (self.type_label, self.rank);
        let big = natural_dim(t, n);
        let parts = match self.part {
            NaturalPart::Centre => {
                if !mu.is_zero() {
                    return invalid(format!("{} has only the zero orbit", self.target_algebra()));
                }
                concat(vec![2], repeat_part(1, big - 2))
            }
            NaturalPart::Partner => {
                if mu.is_zero() {
                    concat(vec![2, 2], repeat_part(1, big - 4))
                } else {
                    concat(vec![3], repeat_part(1, big - 3))
                }
            }
            NaturalPart::Complement => {
                let block: &[usize] = if t == TypeLabel::D { &[2, 2] } else { &[2] };
                concat(block.to_vec(), mu.partition.clone())
            }
        };
        let probe = OrbitLabel::untagged(t, n, &parts)?;
        let tag = if probe.is_very_even() { Some(mu.very_even.unwrap_or(VeryEven::II)) } else { None };
        OrbitLabel::new(t, n, &parts, tag)
    }

    /// `χ(O)` for a nonzero orbit in the closure of the Richardson orbit.
    pub fn chi(&self, o: &OrbitLabel) -> Result<OrbitLabel> {
        if o.is_zero() {
            return invalid("χ is defined on nonzero orbits only");
        }
        let top = self.richardson()?;
        if !closure_leq(o, &top) {
            return invalid(format!("{o} is not contained in the closure of {top}"));
        }
        let targets = closure_hasse(&self.target_richardson()?)?;
        for mu in targets.nodes.iter().filter_map(Orbit::as_classical) {
            let pre = self.chi_inverse(mu)?;
            if pre.same_partition(o) && (pre.very_even.is_none() || o.very_even.is_none() || pre.very_even == o.very_even) {
                return Ok(mu.clone());
            }
        }
        Err(Error::Invalid(format!("no orbit of {} corresponds to {o}", self.target_algebra())))
    }

    /// Both Hasse diagrams and the arrows of `χ`.
    pub fn chi_map(&self) -> Result<ChiMap> {
        let source = closure_hasse(&self.richardson()?)?;
        let target = closure_hasse(&self.target_richardson()?)?;
        let mut arrows = Vec::new();
        for (i, o) in source.nodes.iter().enumerate() {
            let o = o.as_classical().expect("classical");
            if o.is_zero() {
                continue;
            }
            let mu = self.chi(o)?;
            let j = target.position(&Orbit::Classical(mu)).expect("χ lands in the target diagram");
            arrows.push((i, j));
        }
        Ok(ChiMap { source, target, arrows })
    }
}

/// `χ` as arrows between two Hasse diagrams.
#[derive(Clone, Debug, Serialize)]
pub struct ChiMap {
    pub source: HasseDiagram,
    pub target: HasseDiagram,
    /// `(i, j)`: `χ(source.nodes[i]) = target.nodes[j]`.
    pub arrows: Vec<(usize, usize)>,
}

impl ChiMap {
    /// `χ` is a bijection from the nonzero source orbits onto the target orbits and
    /// maps covering edges onto covering edges in both directions.
    pub fn is_order_isomorphism(&self) -> bool {
        let nonzero: Vec<usize> = (0..self.source.nodes.len()).filter(|&i| !self.source.nodes[i].is_zero()).collect();
        let map: HashMap<usize, usize> = self.arrows.iter().copied().collect();
        if map.len() != nonzero.len() || nonzero.iter().any(|i| !map.contains_key(i)) {
            return false;
        }
        let mut image: Vec<usize> = map.values().copied().collect();
        image.sort_unstable();
        image.dedup();
        if image.len() != self.target.nodes.len() {
            return false;
        }
        let src: Vec<(usize, usize)> =
            self.source.edges.iter().filter(|(i, j)| map.contains_key(i) && map.contains_key(j)).map(|(i, j)| (map[i], map[j])).collect();
        let mut a = src.clone();
        let mut b = self.target.edges.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    /// `|N_g(O_p)| = |N_{g̃♮}(O_{p̃♮})| + 1`.
    pub fn counting_identity(&self) -> bool {
        self.source.nodes.len() == self.target.nodes.len() + 1
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "collapsing.chi-map/1",
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "arrows": self.arrows.iter().map(|(i, j)| serde_json::json!({
                "from": self.source.nodes[*i].to_string(),
                "to": self.target.nodes[*j].to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph \"chi {} -> {}\" {{\n  rankdir=LR;\n", self.source.algebra, self.target.algebra);
        s.push_str(&format!("  subgraph cluster_source {{\n    label=\"{}\";\n", self.source.algebra));
        self.source.write_dot_body(&mut s, "s", "    ");
        s.push_str("  }\n");
        s.push_str(&format!("  subgraph cluster_target {{\n    label=\"{}\";\n", self.target.algebra));
        self.target.write_dot_body(&mut s, "t", "    ");
        s.push_str("  }\n");
        for (i, j) in &self.arrows {
            s.push_str(&format!("  s{i} -> t{j} [style=dashed];\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// The exceptional correspondences `e6 → sl6` (`p_{α_1}`) and `e7 → so12` (`p_{α_6}`),
/// as data. Dimensions of the Bala–Carter orbits are standard values; the minimal
/// one is checked against `2h∨ − 2` and the top one against `2 dim u`.
pub fn exceptional_chi_map(rank: usize, k: usize) -> Result<ChiMap> {
    let (rows, target): (Vec<(&str, usize)>, OrbitLabel) = match (rank, k) {
        (6, 1) | (6, 5) => (vec![("0", 0), ("A1", 22), ("2A1", 32)], OrbitLabel::new(TypeLabel::A, 5, &[2, 1, 1, 1, 1], None)?),
        (7, 6) => (
            vec![("0", 0), ("A1", 34), ("2A1", 52), ("(3A1)''", 54)],
            OrbitLabel::new(TypeLabel::D, 6, &concat(vec![3], repeat_part(1, 9)), None)?,
        ),
        _ => return Err(Error::Unsupported(format!("no χ data for p_α{k} of e{rank}"))),
    };
    let h = dual_coxeter(TypeLabel::E, rank) as usize;
    if rows[1].1 != 2 * h - 2 {
        return Err(Error::Invalid(format!("minimal orbit of e{rank} must have dimension {}", 2 * h - 2)));
    }
    let top = two_dim_u(TypeLabel::E, rank, k)?;
    if rows[rows.len() - 1].1 != top {
        return Err(Error::Invalid(format!("Richardson orbit of p_α{k} in e{rank} must have dimension {top}")));
    }
    let nodes: Vec<Orbit> = rows
        .iter()
        .map(|(name, dim)| Orbit::Exceptional(ExceptionalOrbit { rank, name: name.to_string(), dim: *dim }))
        .collect();
    let source = HasseDiagram::from_order(format!("e{rank}"), nodes, |i, j| i <= j);
    let target = closure_hasse(&target)?;
    let arrows = (1..source.nodes.len()).map(|i| (i, i - 1)).collect();
    Ok(ChiMap { source, target, arrows })
}

/// Partition given by the Jordan blocks of a nilpotent matrix, from the ranks of its
/// powers (computed as images of successive subspaces).
pub fn jordan_partition(m: &Mat) -> Result<Vec<usize>> {
    if !m.is_square() {
        return invalid("Jordan type needs a square matrix");
    }
    let n = m.rows();
    let mut ranks = vec![n];
    let mut basis = Mat::identity(n);
    while ranks[ranks.len() - 1] > 0 {
        if ranks.len() > n {
            return invalid("matrix is not nilpotent");
        }
        // Rows of `basis` span the current image; apply m to each spanning vector.
        let image = Mat::from_rows((0..basis.rows()).map(|i| m.mul_vec(basis.row(i))).collect());
        let (r, pivots) = image.rref();
        let k = pivots.len();
        if k == ranks[ranks.len() - 1] {
            return invalid("matrix is not nilpotent");
        }
        basis = Mat::from_rows((0..k).map(|i| r.row(i).to_vec()).collect());
        if k == 0 {
            basis = Mat::zeros(0, n);
        }
        ranks.push(k);
    }
    // Number of blocks of size ≥ j is r_{j−1} − r_j.
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for j in 0..at_least.len() {
        let next = at_least.get(j + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat(j + 1).take(at_least[j] - next));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(parts)
}

/// Jordan type of a nilpotent matrix of the defining representation, as an orbit
/// label. Very even tags are left unset.
pub fn jordan_type(m: &Mat, t: TypeLabel, rank: usize) -> Result<OrbitLabel> {
    if m.rows() != natural_dim(t, rank) {
        return invalid(format!("matrix of size {} is not in the defining representation of {}", m.rows(), classical_name(t, rank)));
    }
    OrbitLabel::untagged(t, rank, &jordan_partition(m)?)
}

/// Outcome of sampling `χ` for one orbit of `g̃♮`.
#[derive(Clone, Debug, Serialize)]
pub struct ChiSampleEntry {
    pub target_orbit: String,
    pub expected: String,
    /// Jordan types of `f_θ + x` over the samples.
    pub observed: Vec<String>,
    pub passed: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiSamplingReport {
    pub algebra: String,
    pub parabolic: usize,
    pub target: String,
    pub seed: u64,
    pub samples: usize,
    pub entries: Vec<ChiSampleEntry>,
}

impl ChiSamplingReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

fn exp_nilpotent(x: &Mat) -> Mat {
    let n = x.rows();
    let mut acc = Mat::identity(n);
    let mut term = Mat::identity(n);
    for k in 1..=n {
        term = (&term * x).scale(Q::int(1) / Q::int(k as i64));
        if term.is_zero() {
            break;
        }
        acc = &acc + &term;
    }
    acc
}

fn submatrix(m: &Mat, idx: &[usize]) -> Mat {
    Mat::from_rows(idx.iter().map(|&i| idx.iter().map(|&j| m[(i, j)]).collect()).collect())
}

/// Divide every multiplicity of a partition by `m`.
fn divide_multiplicities(p: &[usize], m: usize) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for (part, mult) in multiplicities(p).iter().rev() {
        if mult % m != 0 {
            return None;
        }
        out.extend(std::iter::repeat(*part).take(mult / m));
    }
    Some(out)
}

/// Check `χ` on matrices: for every orbit `O♮` of `g̃♮` in the closure of `O_{p̃♮}`,
/// take a representative `x` (a sum of simple root vectors of `g̃♮`), conjugate it by
/// random products `exp(c·e_β)` with `e_β` root vectors of `g̃♮` and small rational
/// `c`, and compare the Jordan type of `f_θ + x` with `χ⁻¹(O♮)`. The zero orbit is
/// checked once with `x = 0`; it is not sampled.
pub fn verify_chi_by_sampling(t: TypeLabel, rank: usize, k: usize, samples: usize, seed: u64) -> Result<ChiSamplingReport> {
    let setting = ChiSetting::new(t, rank, k)?;
    let g = MatrixLieAlgebra::new(t, rank)?;
    let rs = &g.root_system;
    let grading = MinimalGrading::new(rs);
    let f_theta = g.basis[g.f(rs.positive_root_index(&rs.theta).expect("θ"))].matrix.clone();
    let targets = closure_hasse(&setting.target_richardson()?)?;

    let mut report = ChiSamplingReport {
        algebra: g.name(),
        parabolic: k,
        target: setting.target_algebra(),
        seed,
        samples,
        entries: Vec::new(),
    };

    // Simple roots and root vectors of g̃♮ inside g.
    let factor = grading.natural_factors.iter().find(|f| f.nodes.contains(&(k - 1)));
    let (simple, roots): (Vec<usize>, Vec<usize>) = match (&setting.part, factor) {
        (NaturalPart::Centre, _) => (Vec::new(), Vec::new()),
        (_, Some(f)) => {
            let simple = f.nodes.iter().map(|&i| rs.positive_root_index(&rs.simple_roots[i]).expect("simple")).collect();
            (simple, rs.factor_roots(f))
        }
        (_, None) => return Err(Error::Invalid(format!("α{k} is not a simple root of g♮ in {}", g.name()))),
    };
    let mut support: Vec<usize> = Vec::new();
    for &r in &roots {
        for m in [&g.basis[g.e(r)].matrix, &g.basis[g.f(r)].matrix] {
            for (i, j, _) in m.nonzeros() {
                support.push(i);
                support.push(j);
            }
        }
    }
    support.sort_unstable();
    support.dedup();
    let target_dim = natural_dim(setting.target_type, setting.target_rank);
    let mult = if support.is_empty() { 1 } else { support.len() / target_dim };

    // Representatives: sums of simple root vectors of g̃♮ over all subsets.
    let mut reps: Vec<(OrbitLabel, Mat)> = Vec::new();
    for mask in 1u32..(1u32 << simple.len()) {
        let mut x = Mat::zeros(g.size, g.size);
        for (b, &r) in simple.iter().enumerate() {
            if mask & (1 << b) != 0 {
                x = &x + &g.basis[g.e(r)].matrix;
            }
        }
        let restricted = jordan_partition(&submatrix(&x, &support))?;
        let parts = divide_multiplicities(&restricted, mult)
            .ok_or_else(|| Error::Invalid(format!("{} does not act on its support as a multiple of the natural module", setting.target_algebra())))?;
        let label = OrbitLabel::untagged(setting.target_type, setting.target_rank, &parts)?;
        if !reps.iter().any(|(l, _)| l.same_partition(&label)) {
            reps.push((label, x));
        }
    }

    for (idx, mu) in targets.nodes.iter().filter_map(Orbit::as_classical).enumerate() {
        let expected = setting.chi_inverse(mu)?;
        let mut entry = ChiSampleEntry {
            target_orbit: mu.to_string(),
            expected: expected.to_string(),
            observed: Vec::new(),
            passed: true,
            note: None,
        };
        if mu.is_zero() {
            let jt = jordan_type(&f_theta, t, rank)?;
            entry.passed = jt.same_partition(&expected);
            entry.observed.push(jt.to_string());
            entry.note = Some("x = 0 checked once; the zero orbit is not sampled".into());
            report.entries.push(entry);
            continue;
        }
        let Some((_, x0)) = reps.iter().find(|(l, _)| l.same_partition(mu)) else {
            entry.passed = false;
            entry.note = Some("no sum of simple root vectors represents this orbit".into());
            report.entries.push(entry);
            continue;
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9E37_79B9_7F4A_7C15u64.wrapping_mul(idx as u64 + 1)));
        for _ in 0..samples {
            let mut conj = Mat::identity(g.size);
            let mut inv = Mat::identity(g.size);
            for _ in 0..3 {
                let r = roots[rng.gen_range(0..roots.len())];
                let e = if rng.gen_bool(0.5) { &g.basis[g.e(r)].matrix } else { &g.basis[g.f(r)].matrix };
                let num = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
                let den = rng.gen_range(1..=2i64);
                let c = q(num, den);
                conj = &conj * &exp_nilpotent(&e.scale(c));
                inv = &exp_nilpotent(&e.scale(-c)) * &inv;
            }
            let x = &(&conj * x0) * &inv;
            let inside = g.coords(&x).is_ok();
            let jt = jordan_type(&(&f_theta + &x), t, rank)?;
            if !inside || !jt.same_partition(&expected) {
                entry.passed = false;
            }
            entry.observed.push(jt.to_string());
        }
        report.entries.push(entry);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(t: TypeLabel, n: usize, s: &str) -> OrbitLabel {
        OrbitLabel::parse(t, n, s).unwrap()
    }

    #[test]
    fn display_and_parse_round_trip() {
        let o = label(TypeLabel::D, 4, "[2^4]^II");
        assert_eq!(o.to_string(), "[2^4]^II");
        assert_eq!(label(TypeLabel::B, 3, "[3,1^4]").to_string(), "[3,1^4]");
        assert_eq!(OrbitLabel::zero(TypeLabel::C, 2).unwrap().to_string(), "[1^4]");
        assert!(OrbitLabel::parse(TypeLabel::D, 4, "[2^4]").is_err());
        assert!(OrbitLabel::parse(TypeLabel::C, 2, "[3,1]").is_err());
        assert!(OrbitLabel::parse(TypeLabel::B, 2, "[2,1^3]").is_err());
    }

    #[test]
    fn orbit_counts() {
        // Number of nilpotent orbits: partitions for sl_n; known small counts otherwise.
        assert_eq!(all_orbits(TypeLabel::A, 4).unwrap().len(), 7);
        assert_eq!(all_orbits(TypeLabel::C, 2).unwrap().len(), 4);
        assert_eq!(all_orbits(TypeLabel::B, 3).unwrap().len(), 7);
        assert_eq!(all_orbits(TypeLabel::D, 4).unwrap().len(), 12);
    }

    #[test]
    fn zero_matrix_and_single_block() {
        assert_eq!(jordan_partition(&Mat::zeros(4, 4)).unwrap(), vec![1, 1, 1, 1]);
        let mut m = Mat::zeros(4, 4);
        for i in 0..3 {
            m[(i, i + 1)] = Q::ONE;
        }
        assert_eq!(jordan_partition(&m).unwrap(), vec![4]);
        assert!(jordan_partition(&Mat::identity(2)).is_err());
    }

    #[test]
    fn f_theta_is_minimal() {
        for n in 1..=5 {
            let g = MatrixLieAlgebra::new(TypeLabel::A, n).unwrap();
            let rs = &g.root_system;
            let f = &g.basis[g.f(rs.positive_root_index(&rs.theta).unwrap())].matrix;
            let jt = jordan_type(f, TypeLabel::A, n).unwrap();
            assert_eq!(jt.partition, concat(vec![2], repeat_part(1, n - 1)));
        }
    }

    #[test]
    fn closure_of_very_even_pair() {
        let a = label(TypeLabel::D, 4, "[2^4]^I");
        let b = label(TypeLabel::D, 4, "[2^4]^II");
        assert!(!closure_leq(&a, &b) && !closure_leq(&b, &a));
        let top = label(TypeLabel::D, 4, "[4^2]^I");
        assert!(closure_leq(&a, &top) && closure_leq(&b, &top));
        assert!(!closure_leq(&label(TypeLabel::D, 4, "[4^2]^II"), &top));
    }

    #[test]
    fn richardson_dimensions_for_all_commutative_cases() {
        for n in 1..=7 {
            for k in 1..=n {
                let o = richardson_orbit(TypeLabel::A, n, k).unwrap();
                assert_eq!(orbit_dimension(&o), 2 * k * (n + 1 - k));
            }
        }
        for n in 2..=7 {
            richardson_orbit(TypeLabel::B, n, 1).unwrap();
            richardson_orbit(TypeLabel::C, n, n).unwrap();
        }
        for n in 3..=7 {
            for k in [1, n - 1, n] {
                richardson_orbit(TypeLabel::D, n, k).unwrap();
            }
        }
        assert!(richardson_orbit(TypeLabel::C, 3, 1).is_err());
    }

    #[test]
    fn chi_rejects_zero() {
        let s = ChiSetting::new(TypeLabel::C, 3, 3).unwrap();
        assert!(s.chi(&OrbitLabel::zero(TypeLabel::C, 3).unwrap()).is_err());
    }

    fn chain(t: TypeLabel, n: usize, k: usize) -> (Vec<String>, Vec<String>) {
        let m = ChiSetting::new(t, n, k).unwrap().chi_map().unwrap();
        assert!(m.source.is_chain() && m.target.is_chain());
        assert!(m.is_order_isomorphism() && m.counting_identity());
        let names = |d: &HasseDiagram| d.nodes.iter().map(|o| o.to_string()).collect();
        (names(&m.source), names(&m.target))
    }

    #[test]
    fn correspondence_chains() {
        let (s, t) = chain(TypeLabel::A, 4, 1);
        assert_eq!((s, t), (vec!["[1^5]".to_string(), "[2,1^3]".into()], vec!["[1]".to_string()]));
        let (s, t) = chain(TypeLabel::A, 5, 3);
        assert_eq!(s, ["[1^6]", "[2,1^4]", "[2^2,1^2]", "[2^3]"]);
        assert_eq!(t, ["[1^4]", "[2,1^2]", "[2^2]"]);
        let (s, t) = chain(TypeLabel::B, 4, 1);
        assert_eq!(s, ["[1^9]", "[2^2,1^5]", "[3,1^6]"]);
        assert_eq!(t, ["[1^2]", "[2]"]);
        let (s, _) = chain(TypeLabel::D, 5, 1);
        assert_eq!(s, ["[1^10]", "[2^2,1^6]", "[3,1^7]"]);
        let (s, t) = chain(TypeLabel::C, 3, 3);
        assert_eq!(s, ["[1^6]", "[2,1^4]", "[2^2,1^2]", "[2^3]"]);
        assert_eq!(t, ["[1^4]", "[2,1^2]", "[2^2]"]);
        let (s, t) = chain(TypeLabel::D, 5, 5);
        assert_eq!(s, ["[1^10]", "[2^2,1^6]", "[2^4,1^2]"]);
        assert_eq!(t, ["[1^6]", "[2^2,1^2]"]);
        let (s, t) = chain(TypeLabel::D, 6, 6);
        assert_eq!(s, ["[1^12]", "[2^2,1^8]", "[2^4,1^4]", "[2^6]^II"]);
        assert_eq!(t, ["[1^8]", "[2^2,1^4]", "[2^4]^II"]);
    }

    #[test]
    fn exceptional_maps_are_chains() {
        let m = exceptional_chi_map(6, 1).unwrap();
        assert!(m.is_order_isomorphism() && m.counting_identity());
        let m = exceptional_chi_map(7, 6).unwrap();
        assert!(m.is_order_isomorphism() && m.counting_identity());
        assert_eq!(m.target.nodes.last().unwrap().to_string(), "[3,1^9]");
    }

    #[test]
    fn sampling_small_cases() {
        for (t, n, k) in [(TypeLabel::C, 2, 2), (TypeLabel::B, 3, 1), (TypeLabel::A, 3, 2), (TypeLabel::A, 3, 1)] {
            let r = verify_chi_by_sampling(t, n, k, 2, 1).unwrap();
            assert!(r.passed(), "{r:#?}");
        }
    }
}
