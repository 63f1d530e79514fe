//! The five tables as rendered data.
//!
//! Symbolic tables state each row for the row parameter `n`. Numeric columns
//! (levels, `h∨`, `2 dim u`) are polynomials fitted to values computed at several
//! ranks and confirmed at further ranks. Structural columns (weights, Levi factors,
//! node sets, orbit labels) are row templates; every template is checked against
//! the computed data at each sampled rank before the table is produced.
//!
//! Concrete tables list the same columns for one algebra.

use serde::Serialize;

use super::{collapsing_level, kappa_natural, table5_chain, AssociatedVariety, Family, Poly};
use crate::error::{Error, Result};
use crate::liealg::ParabolicDatum;
use crate::orbits::{distinguished_orbits, Orbit, OrbitLabel};
use crate::rational::Q;
use crate::rootsys::{RootSystem, SimpleFactor, TypeLabel};

/// A rendered table: a name, column headers and string cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(name: &str, title: &str, headers: &[&str]) -> Table {
        Table {
            name: name.into(),
            title: title.into(),
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }
}

/// Table names accepted by [`symbolic_table`] and [`concrete_table`].
pub const TABLE_NAMES: [&str; 4] = ["parabolic", "collapsing", "natural", "table5"];

pub fn symbolic_table(name: &str) -> Result<Table> {
    match name {
        "parabolic" => parabolic_table(),
        "collapsing" => collapsing_table(),
        "natural" => natural_table(),
        "table5" => table5(),
        _ => Err(Error::Invalid(format!("unknown table {name:?}; expected one of {}", TABLE_NAMES.join(", ")))),
    }
}

pub fn concrete_table(name: &str, t: TypeLabel, rank: usize) -> Result<Table> {
    match name {
        "parabolic" => concrete_parabolic(t, rank),
        "collapsing" => concrete_collapsing(t, rank),
        "natural" => concrete_natural(t, rank),
        "table5" => concrete_table5(t, rank),
        _ => Err(Error::Invalid(format!("unknown table {name:?}; expected one of {}", TABLE_NAMES.join(", ")))),
    }
}

// ---------------------------------------------------------------- helpers

/// `sl_2`, `so_{n-4}`, `e_7`.
fn subscript(base: &str, idx: &str) -> String {
    let idx = idx.replace(' ', "");
    if idx.chars().count() == 1 {
        format!("{base}_{idx}")
    } else {
        format!("{base}_{{{idx}}}")
    }
}

fn letter(t: TypeLabel) -> &'static str {
    match t {
        TypeLabel::A => "a",
        TypeLabel::B => "b",
        TypeLabel::C => "c",
        TypeLabel::D => "d",
        TypeLabel::E => "e",
        TypeLabel::F => "f",
        TypeLabel::G => "g",
    }
}

/// Classical name with its natural dimension (`sl_4`, `sp_6`, `so_12`), exceptional
/// by Cartan label.
fn pretty(t: TypeLabel, rank: usize) -> String {
    let (base, idx) = match t {
        TypeLabel::A => ("sl", rank + 1),
        TypeLabel::B => ("so", 2 * rank + 1),
        TypeLabel::C => ("sp", 2 * rank),
        TypeLabel::D => ("so", 2 * rank),
        _ => (letter(t), rank),
    };
    subscript(base, &idx.to_string())
}

/// Isomorphism class representative: `b_1, c_1 → a_1`, `c_2 → b_2`, `d_3 → a_3`.
fn canonical(t: TypeLabel, r: usize) -> (TypeLabel, usize) {
    match (t, r) {
        (TypeLabel::B | TypeLabel::C, 1) => (TypeLabel::A, 1),
        (TypeLabel::C, 2) => (TypeLabel::B, 2),
        (TypeLabel::D, 3) => (TypeLabel::A, 3),
        _ => (t, r),
    }
}

/// Simple summands of `sl_m`, `sp_m`, `so_m` (with `so_4 = sl_2 ⊕ sl_2`).
fn classical_summands(kind: &str, m: usize) -> Vec<(TypeLabel, usize)> {
    let v = match (kind, m) {
        ("sl", m) if m >= 2 => vec![(TypeLabel::A, m - 1)],
        ("sp", m) if m >= 2 => vec![(TypeLabel::C, m / 2)],
        ("so", 3) => vec![(TypeLabel::A, 1)],
        ("so", 4) => vec![(TypeLabel::A, 1), (TypeLabel::A, 1)],
        ("so", m) if m >= 5 && m % 2 == 1 => vec![(TypeLabel::B, (m - 1) / 2)],
        ("so", m) if m >= 6 => vec![(TypeLabel::D, m / 2)],
        _ => vec![],
    };
    v.into_iter().map(|(t, r)| canonical(t, r)).collect()
}

fn same_summands(a: &[(TypeLabel, usize)], b: &[(TypeLabel, usize)]) -> bool {
    let mut x: Vec<_> = a.iter().map(|&(t, r)| canonical(t, r)).collect();
    let mut y: Vec<_> = b.iter().map(|&(t, r)| canonical(t, r)).collect();
    x.sort();
    y.sort();
    x == y
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Invalid(format!("table template disagrees with computation: {}", what())))
    }
}

/// `ω_1 + 2ω_3` from labels, with an index renderer.
fn weight_string(labels: &[i64], index: impl Fn(usize) -> String) -> String {
    let terms: Vec<String> = labels
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let w = subscript("ω", &index(i + 1));
            if c == 1 {
                w
            } else {
                format!("{c}{w}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn node_set(nodes: &[usize]) -> String {
    if nodes.is_empty() {
        return "∅".into();
    }
    // Compress runs of consecutive nodes of length ≥ 3.
    let mut parts = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let mut j = i;
        while j + 1 < nodes.len() && nodes[j + 1] == nodes[j] + 1 {
            j += 1;
        }
        if j >= i + 2 {
            parts.push(format!("α_{},...,α_{}", nodes[i], nodes[j]));
        } else {
            parts.extend((i..=j).map(|m| format!("α_{}", nodes[m])));
        }
        i = j + 1;
    }
    format!("{{{}}}", parts.join(","))
}

fn q(x: usize) -> Q {
    Q::int(x as i64)
}

fn fit(samples: &[(usize, Q)]) -> Result<Poly> {
    let pts: Vec<(Q, Q)> = samples.iter().map(|&(n, y)| (q(n), y)).collect();
    Poly::fit(&pts, pts.len().saturating_sub(2).min(2))
}

// ---------------------------------------------------------------- parabolic

struct ParabolicRow {
    algebra: &'static str,
    theta: &'static str,
    parabolic: &'static str,
    levi: &'static str,
    u: &'static str,
    /// `(type, rank, k)` samples.
    cases: fn() -> Vec<(TypeLabel, usize, usize)>,
    /// Expected `θ` labels and Levi factors with the highest weight of `u`.
    expect: fn(usize, usize) -> (Vec<i64>, Vec<(TypeLabel, usize, Vec<i64>)>),
}

fn unit_labels(r: usize, i: usize, c: i64) -> Vec<i64> {
    (1..=r).map(|j| if j == i { c } else { 0 }).collect()
}

fn parabolic_rows() -> Vec<ParabolicRow> {
    use TypeLabel::*;
    vec![
        ParabolicRow {
            algebra: "a_n, n >= 1",
            theta: "ω_1 + ω_n",
            parabolic: "p_{α_k}",
            levi: "a_{k-1} ⊕ a_{n-k}",
            u: "(ω_1, ω_{n-k})",
            cases: || (1..=6).flat_map(|n| (1..=n).map(move |k| (A, n, k))).collect(),
            expect: |n, k| {
                let mut theta = vec![0; n];
                theta[0] += 1;
                theta[n - 1] += 1;
                let mut levi = Vec::new();
                if k > 1 {
                    levi.push((A, k - 1, unit_labels(k - 1, 1, 1)));
                }
                if k < n {
                    levi.push((A, n - k, unit_labels(n - k, n - k, 1)));
                }
                (theta, levi)
            },
        },
        ParabolicRow {
            algebra: "b_2",
            theta: "2ω_2",
            parabolic: "p_{α_1}",
            levi: "a_1",
            u: "2ω_1",
            cases: || vec![(B, 2, 1)],
            expect: |_, _| (vec![0, 2], vec![(A, 1, vec![2])]),
        },
        ParabolicRow {
            algebra: "b_n, n >= 3",
            theta: "ω_2",
            parabolic: "p_{α_1}",
            levi: "b_{n-1}",
            u: "ω_1",
            cases: || (3..=7).map(|n| (B, n, 1)).collect(),
            expect: |n, _| (unit_labels(n, 2, 1), vec![(B, n - 1, unit_labels(n - 1, 1, 1))]),
        },
        ParabolicRow {
            algebra: "c_n, n >= 2",
            theta: "2ω_1",
            parabolic: "p_{α_n}",
            levi: "a_{n-1}",
            u: "2ω_1",
            cases: || (2..=7).map(|n| (C, n, n)).collect(),
            expect: |n, _| (unit_labels(n, 1, 2), vec![(A, n - 1, unit_labels(n - 1, 1, 2))]),
        },
        ParabolicRow {
            algebra: "d_n, n >= 4",
            theta: "ω_2",
            parabolic: "p_{α_1}",
            levi: "d_{n-1}",
            u: "ω_1",
            cases: || (4..=8).map(|n| (D, n, 1)).collect(),
            expect: |n, _| (unit_labels(n, 2, 1), vec![(D, n - 1, unit_labels(n - 1, 1, 1))]),
        },
        ParabolicRow {
            algebra: "d_n, n >= 4",
            theta: "ω_2",
            parabolic: "p_{α_n}, p_{α_{n-1}}",
            levi: "a_{n-1}",
            u: "ω_2",
            cases: || (4..=8).flat_map(|n| [(D, n, n), (D, n, n - 1)]).collect(),
            expect: |n, _| (unit_labels(n, 2, 1), vec![(A, n - 1, unit_labels(n - 1, 2, 1))]),
        },
        ParabolicRow {
            algebra: "e_6",
            theta: "ω_6",
            parabolic: "p_{α_1}, p_{α_5}",
            levi: "d_5",
            u: "ω_5",
            cases: || vec![(E, 6, 1), (E, 6, 5)],
            expect: |_, _| (unit_labels(6, 6, 1), vec![(D, 5, unit_labels(5, 5, 1))]),
        },
        ParabolicRow {
            algebra: "e_7",
            theta: "ω_1",
            parabolic: "p_{α_6}",
            levi: "e_6",
            u: "ω_1",
            cases: || vec![(E, 7, 6)],
            expect: |_, _| (unit_labels(7, 1, 1), vec![(E, 6, unit_labels(6, 1, 1))]),
        },
    ]
}

/// Compare a computed `u` weight with the expected one. Labels must agree when the
/// types agree literally; across an isomorphism (`d_3 = a_3`) the module is compared
/// through its dimension and Dynkin index.
fn same_module(computed: (&SimpleFactor, &[i64]), expected: (TypeLabel, usize, &[i64])) -> Result<bool> {
    let (f, labels) = computed;
    let (t, r, want) = expected;
    if canonical(f.type_label, f.rank) != canonical(t, r) {
        return Ok(false);
    }
    if f.type_label == t && f.rank == r {
        return Ok(labels == want);
    }
    let a = RootSystem::new(f.type_label, f.rank)?;
    let b = RootSystem::new(t, r)?;
    Ok(a.weyl_dimension(labels)? == b.weyl_dimension(want)? && a.dynkin_index(labels)? == b.dynkin_index(want)?)
}

fn verify_parabolic_row(row: &ParabolicRow) -> Result<()> {
    for (t, n, k) in (row.cases)() {
        let rs = RootSystem::new(t, n)?;
        let p = ParabolicDatum::new(&rs, k, true)?;
        check(p.commutative, || format!("{}{n} p_α{k} has a non-commutative nilradical", t))?;
        let theta: Vec<i64> = rs.labels(&rs.theta).iter().map(|x| x.to_integer().expect("integral")).collect();
        let (want_theta, want_levi) = (row.expect)(n, k);
        check(theta == want_theta, || format!("θ of {t}{n}: {theta:?} vs {want_theta:?}"))?;
        check(p.levi_factors.len() == want_levi.len(), || format!("[l,l] of {t}{n} p_α{k}"))?;
        for (lf, (et, er, ew)) in p.levi_factors.iter().zip(&want_levi) {
            let ok = same_module((&lf.factor, &lf.highest_weight), (*et, *er, ew))?;
            check(ok, || format!("u of {t}{n} p_α{k} on {}: {:?}", lf.factor.name(), lf.highest_weight))?;
        }
    }
    Ok(())
}

fn parabolic_table() -> Result<Table> {
    let mut table = Table::new(
        "parabolic",
        "Parabolic subalgebras with commutative nilradical",
        &["g", "θ", "p", "[l,l]", "u"],
    );
    for row in parabolic_rows() {
        verify_parabolic_row(&row)?;
        table.rows.push(vec![row.algebra.into(), row.theta.into(), row.parabolic.into(), row.levi.into(), row.u.into()]);
    }
    Ok(table)
}

/// Maximal parabolics with commutative nilradical of one algebra, found by testing
/// every node.
pub fn commutative_parabolics(t: TypeLabel, rank: usize) -> Result<Vec<usize>> {
    let rs = RootSystem::new(t, rank)?;
    let mut out = Vec::new();
    for k in 1..=rank {
        if ParabolicDatum::new(&rs, k, true)?.commutative {
            out.push(k);
        }
    }
    Ok(out)
}

fn concrete_parabolic(t: TypeLabel, rank: usize) -> Result<Table> {
    let rs = RootSystem::new(t, rank)?;
    let mut table = Table::new("parabolic", &format!("Parabolics of {} with commutative nilradical", rs.name()), &["g", "θ", "p", "[l,l]", "u"]);
    let theta: Vec<i64> = rs.labels(&rs.theta).iter().map(|x| x.to_integer().expect("integral")).collect();
    for k in commutative_parabolics(t, rank)? {
        let p = ParabolicDatum::new(&rs, k, true)?;
        let levi: Vec<String> = p.levi_factors.iter().map(|lf| subscript(letter(lf.factor.type_label), &lf.factor.rank.to_string())).collect();
        let u: Vec<String> = p.levi_factors.iter().map(|lf| weight_string(&lf.highest_weight, |i| i.to_string())).collect();
        table.rows.push(vec![
            rs.name(),
            weight_string(&theta, |i| i.to_string()),
            format!("p_{{α_{k}}}"),
            if levi.is_empty() { "0".into() } else { levi.join(" ⊕ ") },
            if u.len() == 1 { u[0].clone() } else { format!("({})", u.join(", ")) },
        ]);
    }
    Ok(table)
}

// ---------------------------------------------------------------- collapsing

/// `(h∨, k_p, 2 dim u)` for every parabolic of a family member, required to agree.
fn family_values(f: Family, rank: usize) -> Result<(Q, Q, Q)> {
    let mut out: Option<(Q, Q, Q)> = None;
    for k in f.parabolics(rank) {
        let r = collapsing_level(f.type_label(), rank, k)?;
        if !r.consistent {
            return Err(Error::LevelCondition(format!("{} p_α{k}: factors disagree", r.algebra)));
        }
        let v = (Q::int(r.dual_coxeter as i64), r.k_p, q(2 * r.dim_u));
        match out {
            None => out = Some(v),
            Some(w) => check(w == v, || format!("{} parabolics of one row differ", r.algebra))?,
        }
    }
    Ok(out.expect("row has a parabolic"))
}

/// Symbolic `(h∨, k_p, 2 dim u)` of a family as polynomials in `n`.
pub fn collapsing_row(f: Family) -> Result<[Poly; 3]> {
    match f.min_param() {
        None => {
            let (h, k, u) = family_values(f, f.rank(0))?;
            Ok([Poly::constant(h), Poly::constant(k), Poly::constant(u)])
        }
        Some(m) => {
            let mut cols: [Vec<(usize, Q)>; 3] = Default::default();
            for n in m..m + 6 {
                let (h, k, u) = family_values(f, f.rank(n))?;
                cols[0].push((n, h));
                cols[1].push((n, k));
                cols[2].push((n, u));
            }
            Ok([fit(&cols[0])?, fit(&cols[1])?, fit(&cols[2])?])
        }
    }
}

fn collapsing_table() -> Result<Table> {
    let mut table = Table::new("collapsing", "Collapsing levels of parabolic subalgebras with commutative nilradical", &["g", "p", "h∨", "k", "2 dim u"]);
    for f in Family::ALL {
        let [h, k, u] = collapsing_row(f)?;
        let g = match f.condition() {
            Some(c) => format!("{}, {c}", f.algebra_label()),
            None => f.algebra_label().to_string(),
        };
        table.rows.push(vec![g, f.parabolic_label().into(), h.render("n"), k.render("n"), u.render("n")]);
    }
    Ok(table)
}

fn concrete_collapsing(t: TypeLabel, rank: usize) -> Result<Table> {
    let rs = RootSystem::new(t, rank)?;
    let mut table = Table::new("collapsing", &format!("Collapsing levels for {}", rs.name()), &["g", "p", "h∨", "k", "2 dim u"]);
    for k in commutative_parabolics(t, rank)? {
        let r = match collapsing_level(t, rank, k) {
            Ok(r) if r.consistent => r,
            Ok(_) | Err(Error::Unsupported(_)) => continue,
            Err(e) => return Err(e),
        };
        table.rows.push(vec![r.algebra, format!("p_{{α_{k}}}"), r.dual_coxeter.to_string(), r.k_p.to_string(), (2 * r.dim_u).to_string()]);
    }
    Ok(table)
}

// ---------------------------------------------------------------- natural

struct NaturalRow {
    algebra: &'static str,
    /// Ranks sampled, with the row parameter.
    cases: fn() -> Vec<(usize, TypeLabel, usize)>,
    /// Kind of each factor of `g♮` (`gl`, `sl`, `sp`, `so`, or a Cartan letter).
    kinds: &'static [&'static str],
}

fn natural_rows() -> Vec<NaturalRow> {
    use TypeLabel::*;
    vec![
        NaturalRow { algebra: "sl_3", cases: || vec![(3, A, 2)], kinds: &["gl"] },
        NaturalRow { algebra: "sl_n, n >= 4", cases: || (4..10).map(|n| (n, A, n - 1)).collect(), kinds: &["gl", "sl"] },
        NaturalRow { algebra: "sp_{2n}, n >= 2", cases: || (2..8).map(|n| (n, C, n)).collect(), kinds: &["sp"] },
        NaturalRow { algebra: "so_7", cases: || vec![(7, B, 3)], kinds: &["sl", "sl"] },
        NaturalRow { algebra: "so_8", cases: || vec![(8, D, 4)], kinds: &["sl", "sl", "sl"] },
        NaturalRow {
            algebra: "so_n, n >= 9",
            cases: || (9..15).map(|n| (n, if n % 2 == 1 { B } else { D }, n / 2)).collect(),
            kinds: &["sl", "so"],
        },
        NaturalRow { algebra: "g_2", cases: || vec![(0, G, 2)], kinds: &["sl"] },
        NaturalRow { algebra: "f_4", cases: || vec![(0, F, 4)], kinds: &["sp"] },
        NaturalRow { algebra: "e_6", cases: || vec![(0, E, 6)], kinds: &["sl"] },
        NaturalRow { algebra: "e_7", cases: || vec![(0, E, 7)], kinds: &["so"] },
        NaturalRow { algebra: "e_8", cases: || vec![(0, E, 8)], kinds: &["e"] },
    ]
}

/// Natural dimension of a factor read as the given kind; `None` if it is not of that kind.
fn natural_size(kind: &str, f: Option<&SimpleFactor>) -> Option<usize> {
    let Some(f) = f else { return (kind == "gl").then_some(1) };
    let m = match kind {
        "sl" => f.rank + 1,
        "sp" => 2 * f.rank,
        "so" => match (f.type_label, f.rank) {
            (TypeLabel::B, r) => 2 * r + 1,
            (TypeLabel::D, r) => 2 * r,
            (TypeLabel::A, 3) => 6,
            (TypeLabel::C, 2) => 5,
            _ => return None,
        },
        "e" if f.type_label == TypeLabel::E => return Some(f.rank),
        _ => return None,
    };
    (classical_summands(kind, m) == vec![canonical(f.type_label, f.rank)]).then_some(m)
}

/// Symbolic `[(factor name, level)]` of a `g♮` row.
fn natural_row_cells(row: &NaturalRow) -> Result<Vec<(String, String)>> {
    let cases = (row.cases)();
    let mut dims: Vec<Vec<(usize, Q)>> = vec![Vec::new(); row.kinds.len()];
    let mut slopes = dims.clone();
    let mut intercepts = dims.clone();
    for &(n, t, r) in &cases {
        let d = kappa_natural(t, r)?;
        check(d.factors.len() == row.kinds.len(), || format!("g♮ of {} has {} factors", d.algebra, d.factors.len()))?;
        for (i, (f, kind)) in d.factors.iter().zip(row.kinds).enumerate() {
            let m = natural_size(kind, f.factor.as_ref()).ok_or_else(|| Error::Invalid(format!("factor {} of {} is not of kind {kind}", f.name, d.algebra)))?;
            dims[i].push((n, q(m)));
            slopes[i].push((n, f.level.slope));
            intercepts[i].push((n, f.level.intercept));
        }
    }
    let poly = |s: &[(usize, Q)]| -> Result<Poly> {
        if s.len() == 1 {
            Ok(Poly::constant(s[0].1))
        } else {
            fit(s)
        }
    };
    let mut out = Vec::new();
    for (i, kind) in row.kinds.iter().enumerate() {
        let dim = poly(&dims[i])?;
        let name = match *kind {
            "gl" => "gl_1".to_string(),
            "e" => subscript("e", &dim.render("n")),
            k => subscript(k, &dim.render("n")),
        };
        let level = super::poly::render_linear(&poly(&slopes[i])?, &poly(&intercepts[i])?, "n", "k");
        out.push((name, level));
    }
    Ok(out)
}

fn natural_table() -> Result<Table> {
    let mut table = Table::new("natural", "g♮ and κ♮", &["g", "g♮", "κ♮"]);
    for row in natural_rows() {
        let cells = natural_row_cells(&row)?;
        let offset = usize::from(row.kinds[0] != "gl");
        let g: Vec<String> = cells.iter().enumerate().map(|(i, (name, _))| format!("g_{}♮ = {name}", i + offset)).collect();
        let k: Vec<String> = cells.iter().enumerate().map(|(i, (_, lvl))| format!("k_{}♮ = {lvl}", i + offset)).collect();
        table.rows.push(vec![row.algebra.into(), g.join("; "), k.join("; ")]);
    }
    Ok(table)
}

fn concrete_natural(t: TypeLabel, rank: usize) -> Result<Table> {
    let d = kappa_natural(t, rank)?;
    let mut table = Table::new("natural", &format!("g♮ and κ♮ for {}", d.algebra), &["g", "g♮", "κ♮"]);
    let offset = usize::from(d.centre().is_none());
    for (i, f) in d.factors.iter().enumerate() {
        let name = match &f.factor {
            Some(sf) => pretty(sf.type_label, sf.rank),
            None => "gl_1".into(),
        };
        table.rows.push(vec![d.algebra.clone(), format!("g_{}♮ = {name}", i + offset), format!("k_{}♮ = {}", i + offset, f.level)]);
    }
    Ok(table)
}

// ---------------------------------------------------------------- table5

struct Table5Row {
    algebra: &'static str,
    natural_nodes: &'static str,
    removed: &'static str,
    natural: &'static str,
    tilde: &'static str,
    variety: &'static str,
    /// `(n, type, rank, k)` samples.
    cases: fn() -> Vec<(usize, TypeLabel, usize, usize)>,
    expect: fn(usize) -> Table5Expect,
}

struct Table5Expect {
    natural_nodes: Vec<usize>,
    removed: Vec<usize>,
    natural: Vec<(TypeLabel, usize)>,
    /// Summands of `g̃♮`; empty for `gl_1`.
    tilde: Vec<(TypeLabel, usize)>,
    variety: ExpectedVariety,
}

enum ExpectedVariety {
    Sheet(usize),
    Orbit(OrbitLabel),
    MinimalOrbit,
}

fn sl(m: usize) -> Vec<(TypeLabel, usize)> {
    classical_summands("sl", m)
}

fn so(m: usize) -> Vec<(TypeLabel, usize)> {
    classical_summands("so", m)
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

fn with_first(first: usize, rest: Vec<usize>) -> Vec<usize> {
    std::iter::once(first).chain(rest).collect()
}

fn table5_rows() -> Vec<Table5Row> {
    use TypeLabel::*;
    vec![
        Table5Row {
            algebra: "sl_{n+1}, n >= 2",
            natural_nodes: "{α_2,...,α_{n-1}}",
            removed: "∅",
            natural: "gl_1 ⊕ sl_{n-1}",
            tilde: "gl_1",
            variety: "S\u{304}*_{p_{α_1}}",
            cases: || (2..8).map(|n| (n, A, n, 1)).collect(),
            expect: |n| Table5Expect {
                natural_nodes: range(2, n - 1),
                removed: vec![],
                natural: sl(n - 1),
                tilde: vec![],
                variety: ExpectedVariety::Sheet(1),
            },
        },
        Table5Row {
            algebra: "sl_{2n}, n >= 2",
            natural_nodes: "{α_2,...,α_{2n-2}}",
            removed: "{α_n}",
            natural: "gl_1 ⊕ sl_{2n-2}",
            tilde: "sl_{2n-2}",
            variety: "S\u{304}*_{p_{α_n}}",
            cases: || (2..7).map(|n| (n, A, 2 * n - 1, n)).collect(),
            expect: |n| Table5Expect {
                natural_nodes: range(2, 2 * n - 2),
                removed: vec![n],
                natural: sl(2 * n - 2),
                tilde: sl(2 * n - 2),
                variety: ExpectedVariety::Sheet(n),
            },
        },
        Table5Row {
            algebra: "so_{2n+1}, n >= 3",
            natural_nodes: "{α_1,α_3,...,α_n}",
            removed: "{α_1}",
            natural: "sl_2 ⊕ so_{2n-3}",
            tilde: "sl_2",
            variety: "O\u{304}*_{[3,1^{2n-2}]}",
            cases: || (3..9).map(|n| (n, B, n, 1)).collect(),
            expect: |n| Table5Expect {
                natural_nodes: with_first(1, range(3, n)),
                removed: vec![1],
                natural: [sl(2), so(2 * n - 3)].concat(),
                tilde: sl(2),
                variety: ExpectedVariety::Orbit(OrbitLabel::new(B, n, &[vec![3], vec![1; 2 * n - 2]].concat(), None).expect("valid")),
            },
        },
        Table5Row {
            algebra: "sp_{2n}, n >= 2",
            natural_nodes: "{α_2,...,α_n}",
            removed: "{α_n}",
            natural: "sp_{2n-2}",
            tilde: "sp_{2n-2}",
            variety: "S\u{304}*_{p_{α_n}}",
            cases: || (2..8).map(|n| (n, C, n, n)).collect(),
            expect: |n| Table5Expect {
                natural_nodes: range(2, n),
                removed: vec![n],
                natural: classical_summands("sp", 2 * n - 2),
                tilde: classical_summands("sp", 2 * n - 2),
                variety: ExpectedVariety::Sheet(n),
            },
        },
        Table5Row {
            algebra: "so_{2n}, n >= 4",
            natural_nodes: "{α_1,α_3,...,α_n}",
            removed: "{α_1}",
            natural: "sl_2 ⊕ so_{2n-4}",
            tilde: "sl_2",
            variety: "O\u{304}*_min",
            cases: || (4..10).map(|n| (n, D, n, 1)).collect(),
            expect: |n| Table5Expect {
                natural_nodes: with_first(1, range(3, n)),
                removed: vec![1],
                natural: [sl(2), so(2 * n - 4)].concat(),
                tilde: sl(2),
                variety: ExpectedVariety::MinimalOrbit,
            },
        },
        Table5Row {
            algebra: "so_{2n}, n >= 4 odd",
            natural_nodes: "{α_1,α_3,...,α_n}",
            removed: "{α_n}",
            natural: "sl_2 ⊕ so_{2n-4}",
            tilde: "so_{2n-4}",
            variety: "S\u{304}*_{p_{α_n}}",
            cases: || [5, 7, 9, 11].map(|n| (n, D, n, n)).to_vec(),
            expect: |n| Table5Expect {
                natural_nodes: with_first(1, range(3, n)),
                removed: vec![n],
                natural: [sl(2), so(2 * n - 4)].concat(),
                tilde: so(2 * n - 4),
                variety: ExpectedVariety::Sheet(n),
            },
        },
        Table5Row {
            algebra: "so_{2n}, n >= 4 even",
            natural_nodes: "{α_1,α_3,...,α_n}",
            removed: "{α_n}",
            natural: "sl_2 ⊕ so_{2n-4}",
            tilde: "so_{2n-4}",
            variety: "O\u{304}*_{[2^{n-2},1^4]}",
            cases: || [4, 6, 8, 10].map(|n| (n, D, n, n)).to_vec(),
            expect: |n| Table5Expect {
                natural_nodes: with_first(1, range(3, n)),
                removed: vec![n],
                natural: [sl(2), so(2 * n - 4)].concat(),
                // For n = 4, so_4 = sl_2 ⊕ sl_2 and g̃♮ is the sl_2 summand through α_4.
                tilde: if n == 4 { sl(2) } else { so(2 * n - 4) },
                variety: ExpectedVariety::Orbit(OrbitLabel::new(D, n, &[vec![2; n - 2], vec![1; 4]].concat(), None).expect("valid")),
            },
        },
    ]
}

fn verify_table5_row(row: &Table5Row) -> Result<(Vec<(usize, Q)>, Vec<(usize, Q)>)> {
    let mut kp = Vec::new();
    let mut kt = Vec::new();
    for (n, t, r, k) in (row.cases)() {
        let chain = table5_chain(t, r, k)?;
        let step = chain.first();
        let e = (row.expect)(n);
        let name = || format!("{} at n = {n}", row.algebra);
        check(step.natural_nodes == e.natural_nodes, || format!("Π♮ of {}", name()))?;
        check(step.removed == e.removed, || format!("Π♮∖Σ♮ of {}", name()))?;
        let rs = RootSystem::new(t, r)?;
        let grading = crate::liealg::MinimalGrading::new(&rs);
        let types: Vec<(TypeLabel, usize)> = grading.natural_factors.iter().map(|f| (f.type_label, f.rank)).collect();
        check(same_summands(&types, &e.natural), || format!("g♮ of {}", name()))?;
        let tilde: Vec<(TypeLabel, usize)> = step.tilde_type.into_iter().collect();
        check(same_summands(&tilde, &e.tilde), || format!("g̃♮ of {}", name()))?;
        let ok = match (&e.variety, chain.variety()) {
            (ExpectedVariety::Sheet(p), AssociatedVariety::Sheet { parabolic, .. }) => p == parabolic,
            (ExpectedVariety::Orbit(o), AssociatedVariety::OrbitClosure { orbit: Orbit::Classical(l) }) => o.same_partition(l),
            (ExpectedVariety::MinimalOrbit, AssociatedVariety::OrbitClosure { orbit: Orbit::Classical(l) }) => {
                distinguished_orbits(t, r)?.min.same_partition(l)
            }
            _ => false,
        };
        check(ok, || format!("X of {}: {}", name(), chain.variety()))?;
        kp.push((n, step.level));
        kt.push((n, step.tilde_level));
    }
    Ok((kp, kt))
}

fn table5() -> Result<Table> {
    let mut table = Table::new(
        "table5",
        "Associated varieties of simple affine vertex algebras",
        &["g", "k_p", "Π♮", "Π♮∖Σ♮", "g♮", "g̃♮", "k_p̃♮", "X"],
    );
    for row in table5_rows() {
        let (kp, kt) = verify_table5_row(&row)?;
        table.rows.push(vec![
            row.algebra.into(),
            fit(&kp)?.render("n"),
            row.natural_nodes.into(),
            row.removed.into(),
            row.natural.into(),
            row.tilde.into(),
            fit(&kt)?.render("n"),
            row.variety.into(),
        ]);
    }
    for (t, r, k) in [(TypeLabel::E, 6, 1), (TypeLabel::E, 7, 6)] {
        table.rows.push(table5_concrete_row(t, r, k, &pretty(t, r))?);
    }
    Ok(table)
}

fn table5_concrete_row(t: TypeLabel, r: usize, k: usize, algebra: &str) -> Result<Vec<String>> {
    let chain = table5_chain(t, r, k)?;
    let s = chain.first();
    let natural: Vec<String> = {
        let rs = RootSystem::new(t, r)?;
        let grading = crate::liealg::MinimalGrading::new(&rs);
        let mut v: Vec<String> = Vec::new();
        if grading.abelian_dim == 1 {
            v.push("gl_1".into());
        }
        v.extend(grading.natural_factors.iter().map(|f| pretty(f.type_label, f.rank)));
        v
    };
    let tilde = match s.tilde_type {
        Some((tt, tr)) => pretty(tt, tr),
        None => "gl_1".into(),
    };
    Ok(vec![
        algebra.to_string(),
        s.level.to_string(),
        node_set(&s.natural_nodes),
        node_set(&s.removed),
        if natural.is_empty() { "0".into() } else { natural.join(" ⊕ ") },
        tilde,
        s.tilde_level.to_string(),
        chain.variety().to_string(),
    ])
}

fn concrete_table5(t: TypeLabel, rank: usize) -> Result<Table> {
    let rs = RootSystem::new(t, rank)?;
    let mut table = Table::new(
        "table5",
        &format!("Associated varieties for {}", rs.name()),
        &["g", "p", "k_p", "Π♮", "Π♮∖Σ♮", "g♮", "g̃♮", "k_p̃♮", "X"],
    );
    for f in Family::ALL.into_iter().filter(|f| f.type_label() == t && f.param(rank).is_some()) {
        for k in f.parabolics(rank) {
            let mut row = table5_concrete_row(t, rank, k, &rs.name())?;
            row.insert(1, format!("p_{{α_{k}}}"));
            if !table.rows.contains(&row) {
                table.rows.push(row);
            }
        }
    }
    if table.rows.is_empty() {
        return Err(Error::Unsupported(format!("{} has no parabolic with a collapsing level", rs.name())));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_sets() {
        assert_eq!(node_set(&[1, 3, 4, 5]), "{α_1,α_3,...,α_5}");
        assert_eq!(node_set(&[2, 3]), "{α_2,α_3}");
        assert_eq!(node_set(&[]), "∅");
    }

    #[test]
    fn weights() {
        assert_eq!(weight_string(&[1, 0, 1], |i| i.to_string()), "ω_1 + ω_3");
        assert_eq!(weight_string(&[0, 2], |i| i.to_string()), "2ω_2");
    }

    fn cell<'a>(t: &'a Table, row: &str, col: &str) -> &'a str {
        let c = t.headers.iter().position(|h| h == col).unwrap();
        &t.rows.iter().find(|r| r[0] == row).unwrap()[c]
    }

    #[test]
    fn symbolic_cells() {
        let t = symbolic_table("collapsing").unwrap();
        assert_eq!(t.rows.len(), 8);
        assert_eq!(cell(&t, "c_n, n >= 2", "k"), "-n/2 - 1");
        assert_eq!(cell(&t, "a_{2n-1}, n >= 2", "2 dim u"), "2n^2");
        let t = symbolic_table("natural").unwrap();
        assert_eq!(cell(&t, "so_n, n >= 9", "g♮"), "g_1♮ = sl_2; g_2♮ = so_{n-4}");
        assert_eq!(cell(&t, "so_n, n >= 9", "κ♮"), "k_1♮ = k + n/2 - 2; k_2♮ = k + 2");
        assert_eq!(cell(&t, "g_2", "κ♮"), "k_1♮ = 3k + 5");
        let t = symbolic_table("table5").unwrap();
        assert_eq!(cell(&t, "so_{2n+1}, n >= 3", "k_p\u{303}♮"), "n - 7/2");
        assert_eq!(cell(&t, "e_7", "X"), "O\u{304}*_{2A1}");
        assert_eq!(symbolic_table("parabolic").unwrap().rows.len(), 8);
        assert!(symbolic_table("nope").is_err());
    }

    #[test]
    fn concrete_tables() {
        use TypeLabel::*;
        let t = concrete_table("collapsing", A, 3).unwrap();
        assert_eq!(t.rows.iter().map(|r| r[3].as_str()).collect::<Vec<_>>(), ["-1", "-2", "-1"]);
        let t = concrete_table("table5", D, 5).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert!(concrete_table("table5", E, 8).is_err());
    }

    #[test]
    fn commutative_parabolics_match_the_classification() {
        use TypeLabel::*;
        for n in 1..=7 {
            assert_eq!(commutative_parabolics(A, n).unwrap(), (1..=n).collect::<Vec<_>>());
        }
        for n in 3..=7 {
            assert_eq!(commutative_parabolics(B, n).unwrap(), vec![1]);
            assert_eq!(commutative_parabolics(C, n).unwrap(), vec![n]);
        }
        for n in 4..=7 {
            assert_eq!(commutative_parabolics(D, n).unwrap(), vec![1, n - 1, n]);
        }
        assert_eq!(commutative_parabolics(E, 6).unwrap(), vec![1, 5]);
        assert_eq!(commutative_parabolics(E, 7).unwrap(), vec![6]);
        assert!(commutative_parabolics(E, 8).unwrap().is_empty());
        assert!(commutative_parabolics(F, 4).unwrap().is_empty());
        assert!(commutative_parabolics(G, 2).unwrap().is_empty());
    }
}
