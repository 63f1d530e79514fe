//! Acceptance run: eleven criteria, each printed as one pass/fail line.
//!
//! Literal expectations below (table rows, level formulas, orbit chains, spot
//! charges) are the published values; each criterion recomputes them from the
//! library and compares exactly.

use std::io::Write;
use std::time::{Duration, Instant};

use collapsing::dsred::{build_brst, check_natural_embedding, check_q_squared_zero};
use collapsing::freefield::{
    self, build_explicit_realization, build_tilde_realization, check_zhu_diagram, check_zhu_homomorphism,
    compare_explicit_with_tilde, level_for_parabolic, verify_affine_relations,
};
use collapsing::levels::tables::{symbolic_table, Table};
use collapsing::levels::{
    base_case_axioms, central_charge_check, collapsing_level, kappa_natural, table5_chain, AssociatedVariety, Family,
};
use collapsing::liealg::{MatrixLieAlgebra, MinimalGrading, MinimalTriple, ParabolicDatum};
use collapsing::orbits::{
    closure_hasse, exceptional_chi_map, orbit_dimension, richardson_orbit, verify_chi_by_sampling, ChiSetting, Orbit,
};
use collapsing::rootsys::{algebra_dimension, dual_coxeter, RootSystem, TypeLabel};
use collapsing::{q, Q};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: collapsing::Error) -> String {
    e.to_string()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn row(cells: &[&str]) -> Vec<String> {
    cells.iter().map(|s| s.to_string()).collect()
}

fn column(t: &Table, name: &str) -> usize {
    t.headers.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name} in {}", t.name))
}

fn int(n: usize) -> Q {
    Q::int(n as i64)
}

// ---------------------------------------------------------------- 1

/// Published `(h∨, k, 2 dim u)` of a row as functions of `n`.
fn collapsing_formula(f: Family, n: usize) -> (Q, Q, Q) {
    let n = int(n);
    match f {
        Family::AEnd => (n + Q::ONE, -Q::ONE, Q::int(2) * n),
        Family::AMiddle => (Q::int(2) * n, -n, Q::int(2) * n * n),
        Family::BFirst => (Q::int(2) * n - Q::ONE, Q::int(-2), Q::int(4) * n - Q::int(2)),
        Family::CLast => (n + Q::ONE, -n / Q::int(2) - Q::ONE, n * n + n),
        Family::DFirst => (Q::int(2) * n - Q::int(2), Q::int(-2), Q::int(4) * n - Q::int(4)),
        Family::DSpin => (Q::int(2) * n - Q::int(2), Q::int(2) - n, n * n - n),
        Family::E6 => (Q::int(12), Q::int(-4), Q::int(32)),
        Family::E7 => (Q::int(18), Q::int(-6), Q::int(54)),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let t = symbolic_table("collapsing").map_err(err)?;
    let expected = [
        row(&["a_n, n >= 2", "p_{α_1}, p_{α_n}", "n + 1", "-1", "2n"]),
        row(&["a_{2n-1}, n >= 2", "p_{α_n}", "2n", "-n", "2n^2"]),
        row(&["b_n, n >= 2", "p_{α_1}", "2n - 1", "-2", "4n - 2"]),
        row(&["c_n, n >= 2", "p_{α_n}", "n + 1", "-n/2 - 1", "n^2 + n"]),
        row(&["d_n, n >= 4", "p_{α_1}", "2n - 2", "-2", "4n - 4"]),
        row(&["d_n, n >= 4", "p_{α_n}, p_{α_{n-1}}", "2n - 2", "-n + 2", "n^2 - n"]),
        row(&["e_6", "p_{α_1}, p_{α_5}", "12", "-4", "32"]),
        row(&["e_7", "p_{α_6}", "18", "-6", "54"]),
    ];
    ensure(t.rows.len() == 8, || format!("{} rows", t.rows.len()))?;
    for (got, want) in t.rows.iter().zip(&expected) {
        ensure(got == want, || format!("row {got:?}, expected {want:?}"))?;
    }
    // Every parabolic of the first members of each row, evaluated exactly.
    let mut checked = 0;
    for f in Family::ALL {
        for (ty, rank, _) in f.cases(4) {
            let n = f.param(rank).unwrap_or(rank);
            for k in f.parabolics(rank) {
                let r = collapsing_level(ty, rank, k).map_err(err)?;
                let got = (Q::int(r.dual_coxeter as i64), r.k_p, int(2 * r.dim_u));
                let want = collapsing_formula(f, n);
                ensure(r.consistent && got == want, || format!("{} p_α{k}: {got:?}, expected {want:?}", r.algebra))?;
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(1), "collapsing-level table")?;
    Ok(format!("8 rows exact; {checked} parabolics evaluated; {:?}", start.elapsed()))
}

// ---------------------------------------------------------------- 2

/// `(dimension, slope, intercept)` of each `g♮` factor as published.
fn natural_formula(t: TypeLabel, rank: usize) -> Option<Vec<(usize, Q, Q)>> {
    let sl = |m: usize| m * m - 1;
    let so = |m: usize| m * (m - 1) / 2;
    let sp = |m: usize| m * (m + 1) / 2;
    Some(match (t, rank) {
        (TypeLabel::A, 2) => vec![(1, Q::ONE, q(3, 2))],
        (TypeLabel::A, r) if r >= 3 => {
            let n = r + 1;
            vec![(1, Q::ONE, q(n as i64, 2)), (sl(n - 2), Q::ONE, Q::ONE)]
        }
        (TypeLabel::C, n) if n >= 2 => vec![(sp(2 * n - 2), Q::ONE, Q::half())],
        (TypeLabel::B, 3) => vec![(3, Q::ONE, q(3, 2)), (3, Q::int(2), Q::int(4))],
        (TypeLabel::D, 4) => vec![(3, Q::ONE, Q::int(2)); 3],
        (TypeLabel::B, r) if r >= 4 => {
            let n = 2 * r + 1;
            vec![(3, Q::ONE, q(n as i64, 2) - Q::int(2)), (so(n - 4), Q::ONE, Q::int(2))]
        }
        (TypeLabel::D, r) if r >= 5 => {
            let n = 2 * r;
            vec![(3, Q::ONE, q(n as i64, 2) - Q::int(2)), (so(n - 4), Q::ONE, Q::int(2))]
        }
        (TypeLabel::G, 2) => vec![(3, Q::int(3), Q::int(5))],
        (TypeLabel::F, 4) => vec![(21, Q::ONE, q(5, 2))],
        (TypeLabel::E, 6) => vec![(35, Q::ONE, Q::int(3))],
        (TypeLabel::E, 7) => vec![(66, Q::ONE, Q::int(4))],
        (TypeLabel::E, 8) => vec![(133, Q::ONE, Q::int(6))],
        _ => return None,
    })
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let t = symbolic_table("natural").map_err(err)?;
    let expected = [
        row(&["sl_3", "g_0♮ = gl_1", "k_0♮ = k + 3/2"]),
        row(&["sl_n, n >= 4", "g_0♮ = gl_1; g_1♮ = sl_{n-2}", "k_0♮ = k + n/2; k_1♮ = k + 1"]),
        row(&["sp_{2n}, n >= 2", "g_1♮ = sp_{2n-2}", "k_1♮ = k + 1/2"]),
        row(&["so_7", "g_1♮ = sl_2; g_2♮ = sl_2", "k_1♮ = k + 3/2; k_2♮ = 2k + 4"]),
        row(&["so_8", "g_1♮ = sl_2; g_2♮ = sl_2; g_3♮ = sl_2", "k_1♮ = k + 2; k_2♮ = k + 2; k_3♮ = k + 2"]),
        row(&["so_n, n >= 9", "g_1♮ = sl_2; g_2♮ = so_{n-4}", "k_1♮ = k + n/2 - 2; k_2♮ = k + 2"]),
        row(&["g_2", "g_1♮ = sl_2", "k_1♮ = 3k + 5"]),
        row(&["f_4", "g_1♮ = sp_6", "k_1♮ = k + 5/2"]),
        row(&["e_6", "g_1♮ = sl_6", "k_1♮ = k + 3"]),
        row(&["e_7", "g_1♮ = so_{12}", "k_1♮ = k + 4"]),
        row(&["e_8", "g_1♮ = e_7", "k_1♮ = k + 6"]),
    ];
    ensure(t.rows == expected, || format!("natural table rows differ: {:?}", t.rows))?;
    let mut cases: Vec<(TypeLabel, usize)> = Vec::new();
    cases.extend((2..=9).map(|r| (TypeLabel::A, r)));
    cases.extend((2..=8).map(|r| (TypeLabel::C, r)));
    cases.extend((3..=8).map(|r| (TypeLabel::B, r)));
    cases.extend((4..=8).map(|r| (TypeLabel::D, r)));
    cases.extend([(TypeLabel::G, 2), (TypeLabel::F, 4), (TypeLabel::E, 6), (TypeLabel::E, 7), (TypeLabel::E, 8)]);
    for &(ty, rank) in &cases {
        let d = kappa_natural(ty, rank).map_err(err)?;
        let mut got: Vec<(usize, Q, Q)> =
            d.factors.iter().map(|f| (f.factor.as_ref().map_or(1, |sf| sf.dimension()), f.level.slope, f.level.intercept)).collect();
        let mut want = natural_formula(ty, rank).expect("listed case");
        got.sort();
        want.sort();
        ensure(got == want, || format!("{}: {got:?}, expected {want:?}", d.algebra))?;
    }
    within(start, Duration::from_secs(1), "g♮ tables")?;
    Ok(format!("11 rows exact; {} algebras evaluated; {:?}", cases.len(), start.elapsed()))
}

// ---------------------------------------------------------------- 3

fn acceptance_ranks(f: freefield::Family) -> Vec<usize> {
    let lo = f.min_rank();
    let mut v = vec![lo, f.next_rank(lo)];
    if f.admits_rank(4) && !v.contains(&4) {
        v.push(4);
    }
    v
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    let mut runs = Vec::new();
    for f in freefield::Family::ALL {
        for rank in acceptance_ranks(f) {
            let r = build_explicit_realization(f, rank).map_err(err)?;
            let rep = verify_affine_relations(&r, Some(4)).map_err(err)?;
            for p in &rep.pairs {
                ensure(p.wick_ok, || format!("{f} rank {rank}: Wick fails on [{}, {}]: {:?}", p.x, p.y, p.mismatch))?;
                let o = p.oracle.as_ref().ok_or_else(|| format!("{f} rank {rank}: no oracle run on [{}, {}]", p.x, p.y))?;
                ensure(o.passed() && o.cutoff == 4, || format!("{f} rank {rank}: oracle fails on [{}, {}]: {:?}", p.x, p.y, o.failure))?;
            }
            pairs += rep.pairs.len();
            runs.push(format!("{f} (rank {rank})"));
        }
    }
    Ok(format!("{pairs} generator pairs (Wick and mode oracle, cutoff 4) over {}; {:?}", runs.join(", "), start.elapsed()))
}

// ---------------------------------------------------------------- 4

fn criterion_4() -> Outcome {
    let mut n = 0;
    for f in freefield::Family::ALL {
        for rank in (f.min_rank()..=5).filter(|&r| f.admits_rank(r)) {
            let diffs = compare_explicit_with_tilde(f, rank).map_err(err)?;
            ensure(diffs.is_empty(), || format!("{f} rank {rank}: {}", diffs.join("; ")))?;
            n += 1;
        }
    }
    Ok(format!("{n} family/rank pairs equal field-by-field"))
}

// ---------------------------------------------------------------- 5

fn classical_table2_cases(max_rank: usize) -> Vec<(TypeLabel, usize, usize)> {
    let mut out = Vec::new();
    for ty in [TypeLabel::A, TypeLabel::B, TypeLabel::C, TypeLabel::D] {
        for rank in 1..=max_rank {
            for k in 1..=rank {
                if Family::of(ty, rank, k).is_some() {
                    out.push((ty, rank, k));
                }
            }
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let cases = classical_table2_cases(4);
    for &(ty, rank, k) in &cases {
        let (g, p) = freefield::setup(ty, rank, k).map_err(err)?;
        let hom = check_zhu_homomorphism(&g, &p, 3);
        ensure(hom.is_empty(), || format!("{} p_α{k}: {}", g.name(), hom.join("; ")))?;
        let level = level_for_parabolic(&g, &p).ok_or_else(|| format!("{} p_α{k}: no level", g.name()))?;
        let r = build_tilde_realization(&g, &p, level).map_err(err)?;
        let square = check_zhu_diagram(&r).map_err(err)?;
        ensure(square.is_empty(), || format!("{} p_α{k}: {}", g.name(), square.join("; ")))?;
    }
    Ok(format!("{} classical cases of rank ≤ 4: bracket compatibility to degree 3 and the Zhu/C₂ square", cases.len()))
}

// ---------------------------------------------------------------- 6

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for f in Family::ALL {
        for (ty, rank, _) in f.cases(4) {
            for k in f.parabolics(rank) {
                let c = central_charge_check(ty, rank, k).map_err(err)?;
                ensure(c.passed, || format!("{} p_α{k}: c(W) = {}, Sugawara sum {}", c.algebra, c.w_charge, c.sugawara_total))?;
                n += 1;
            }
        }
    }
    let spots = [
        (TypeLabel::A, 3, 2, Q::int(-2), Q::int(-3)),
        (TypeLabel::C, 2, 2, Q::int(-2), Q::int(-9)),
        (TypeLabel::B, 3, 1, Q::int(-2), Q::int(-1)),
        (TypeLabel::D, 4, 1, Q::int(-2), Q::ZERO),
        (TypeLabel::E, 6, 1, Q::int(-4), Q::int(-7)),
        (TypeLabel::E, 7, 6, Q::int(-6), q(-33, 2)),
    ];
    for (ty, rank, k, level, charge) in spots {
        let c = central_charge_check(ty, rank, k).map_err(err)?;
        ensure(c.k_p == level && c.w_charge == charge && c.sugawara_total == charge, || {
            format!("{} at {}: c(W) = {}, Σ = {}, expected {charge}", c.algebra, c.k_p, c.w_charge, c.sugawara_total)
        })?;
    }
    within(start, Duration::from_secs(1), "central charges")?;
    Ok(format!("{n} parabolics balance; spot values sl4 −3, sp4 −9, so7 −1, so8 0, e6 −7, e7 −33/2; {:?}", start.elapsed()))
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Outcome {
    let mut n = 0;
    let mut pairings = 0;
    for ty in [TypeLabel::A, TypeLabel::B, TypeLabel::C, TypeLabel::D] {
        let lo = match ty {
            TypeLabel::A => 1,
            TypeLabel::D => 3,
            _ => 2,
        };
        for rank in lo..=8 {
            let g = MatrixLieAlgebra::new(ty, rank).map_err(err)?;
            let h = dual_coxeter(ty, rank) as usize;
            // Matrix route: eigenvalue 1 of ad h_θ on the weight basis.
            let triple = MinimalTriple::new(&g);
            let ad = g.ad(&triple.h_theta);
            let by_matrix = (0..g.dim()).filter(|&i| ad[(i, i)] == Q::ONE).count();
            // Root route: roots with ⟨α, θ∨⟩ = 1.
            let by_roots = MinimalGrading::new(&g.root_system).dim_half();
            ensure(by_matrix == 2 * h - 4 && by_roots == 2 * h - 4, || {
                format!("{}: dim g_1/2 = {by_matrix} (matrices), {by_roots} (roots), 2h∨ − 4 = {}", g.name(), 2 * h - 4)
            })?;
            n += 1;
            for k in (1..=rank).filter(|&k| Family::of(ty, rank, k).is_some()) {
                let p = ParabolicDatum::for_algebra(&g, k, false).map_err(err)?;
                let x = g.kappa0(&triple.h_theta, &p.xi(&g));
                let via_dims = (Q::int(4) + int(by_matrix)) / int(2 * h);
                ensure(x == Q::ONE && via_dims == Q::ONE, || format!("{} p_α{k}: (h_θ, h) = {x}", g.name()))?;
                pairings += 1;
            }
        }
    }
    Ok(format!("dim g_1/2 = 2h∨ − 4 on {n} algebras (matrices and roots); (h_θ, h) = 1 for {pairings} parabolics"))
}

// ---------------------------------------------------------------- 8

/// Partition label `[a^m,…]` from `(part, multiplicity)`, dropping empty entries.
fn label(parts: &[(usize, usize)]) -> String {
    let v: Vec<String> = parts
        .iter()
        .filter(|(_, m)| *m > 0)
        .map(|(p, m)| if *m == 1 { p.to_string() } else { format!("{p}^{m}") })
        .collect();
    format!("[{}]", v.join(","))
}

/// Published chains: `(type, rank, parabolic, source labels, target labels)`.
fn figure2_chains() -> Vec<(TypeLabel, usize, usize, Vec<String>, Vec<String>)> {
    let mut out = Vec::new();
    for n in 2..=6 {
        // sl_{n+1} → gl_1
        out.push((TypeLabel::A, n, 1, vec![label(&[(1, n + 1)]), label(&[(2, 1), (1, n - 1)])], vec![label(&[(1, 1)])]));
        // sp_{2n} → sp_{2n-2}
        let src = (0..=n).map(|j| label(&[(2, j), (1, 2 * n - 2 * j)])).collect();
        let tgt = (0..n).map(|j| label(&[(2, j), (1, 2 * n - 2 - 2 * j)])).collect();
        out.push((TypeLabel::C, n, n, src, tgt));
    }
    for n in 2..=3 {
        // sl_{2n} → sl_{2n-2}
        let src = (0..=n).map(|j| label(&[(2, j), (1, 2 * n - 2 * j)])).collect();
        let tgt = (0..n).map(|j| label(&[(2, j), (1, 2 * n - 2 - 2 * j)])).collect();
        out.push((TypeLabel::A, 2 * n - 1, n, src, tgt));
    }
    let sl2 = vec![label(&[(1, 2)]), label(&[(2, 1)])];
    for n in 3..=6 {
        let src = vec![label(&[(1, 2 * n + 1)]), label(&[(2, 2), (1, 2 * n - 3)]), label(&[(3, 1), (1, 2 * n - 2)])];
        out.push((TypeLabel::B, n, 1, src, sl2.clone()));
    }
    for n in 4..=6 {
        let src = vec![label(&[(1, 2 * n)]), label(&[(2, 2), (1, 2 * n - 4)]), label(&[(3, 1), (1, 2 * n - 3)])];
        out.push((TypeLabel::D, n, 1, src, sl2.clone()));
        // so_{2n} → so_{2n-4} through p_{α_n}; the very even top carries the tag II.
        let tag = |s: String, very_even: bool| if very_even { s + "^II" } else { s };
        let src = (0..=n / 2).map(|j| tag(label(&[(2, 2 * j), (1, 2 * n - 4 * j)]), 4 * j == 2 * n)).collect();
        let tgt = (0..=(n - 2) / 2).map(|j| tag(label(&[(2, 2 * j), (1, 2 * n - 4 - 4 * j)]), 4 * j == 2 * n - 4)).collect();
        out.push((TypeLabel::D, n, n, src, tgt));
    }
    out
}

fn criterion_8() -> Outcome {
    // Richardson dimensions.
    let mut dims = 0;
    for (ty, rank, k) in classical_table2_cases(8) {
        let rs = RootSystem::new(ty, rank).map_err(err)?;
        let dim_u = ParabolicDatum::new(&rs, k, false).map_err(err)?.dim_u;
        let o = richardson_orbit(ty, rank, k).map_err(err)?;
        ensure(orbit_dimension(&o) == 2 * dim_u, || format!("{o} in {}: dim {} ≠ 2 dim u = {}", o.algebra(), orbit_dimension(&o), 2 * dim_u))?;
        dims += 1;
    }
    for (rank, k) in [(6, 1), (6, 5), (7, 6)] {
        let rs = RootSystem::new(TypeLabel::E, rank).map_err(err)?;
        let dim_u = ParabolicDatum::new(&rs, k, false).map_err(err)?.dim_u;
        let m = exceptional_chi_map(rank, k).map_err(err)?;
        let top = m.source.dims.last().copied().unwrap_or(0);
        ensure(top == 2 * dim_u, || format!("e{rank} p_α{k}: top orbit dim {top} ≠ {}", 2 * dim_u))?;
        ensure(m.is_order_isomorphism() && m.counting_identity(), || format!("e{rank} p_α{k}: χ is not an order isomorphism"))?;
        dims += 1;
    }
    // Chains and χ.
    let chains = figure2_chains();
    for (ty, rank, k, src, tgt) in &chains {
        let s = ChiSetting::new(*ty, *rank, *k).map_err(err)?;
        let m = s.chi_map().map_err(err)?;
        let names = |d: &collapsing::orbits::HasseDiagram| d.nodes.iter().map(Orbit::to_string).collect::<Vec<_>>();
        let closure = closure_hasse(&s.richardson().map_err(err)?).map_err(err)?;
        ensure(closure.is_chain() && m.source.is_chain() && m.target.is_chain(), || format!("{} p_α{k}: not a chain", s.algebra()))?;
        ensure(&names(&closure) == src && &names(&m.source) == src, || format!("{} p_α{k}: source {:?}, expected {src:?}", s.algebra(), names(&m.source)))?;
        ensure(&names(&m.target) == tgt, || format!("{} p_α{k}: target {:?}, expected {tgt:?}", s.algebra(), names(&m.target)))?;
        ensure(m.is_order_isomorphism(), || format!("{} p_α{k}: χ is not an order isomorphism", s.algebra()))?;
        ensure(m.counting_identity(), || format!("{} p_α{k}: |N_g| ≠ |N_g̃♮| + 1", s.algebra()))?;
    }
    let e6 = exceptional_chi_map(6, 1).map_err(err)?;
    let e7 = exceptional_chi_map(7, 6).map_err(err)?;
    let names = |d: &collapsing::orbits::HasseDiagram| d.nodes.iter().map(Orbit::to_string).collect::<Vec<_>>();
    ensure(names(&e6.source) == ["0", "A1", "2A1"] && names(&e6.target) == ["[1^6]", "[2,1^4]"], || "e6 chain".into())?;
    ensure(
        names(&e7.source) == ["0", "A1", "2A1", "(3A1)''"] && names(&e7.target) == ["[1^12]", "[2^2,1^8]", "[3,1^9]"],
        || "e7 chain".into(),
    )?;
    Ok(format!("{dims} Richardson dimensions; {} classical chains of rank ≤ 6 plus e6, e7 with χ order-isomorphic", chains.len()))
}

// ---------------------------------------------------------------- 9

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let cases = [
        (TypeLabel::C, 3, vec![3]),
        (TypeLabel::B, 3, vec![1]),
        (TypeLabel::D, 4, vec![1, 4, 3]),
        (TypeLabel::A, 5, vec![1, 5, 3]),
    ];
    let mut entries = 0;
    for (ty, rank, ks) in cases {
        for k in ks {
            let rep = verify_chi_by_sampling(ty, rank, k, 5, 2024).map_err(err)?;
            for e in &rep.entries {
                ensure(e.passed, || format!("{} p_α{k}: χ⁻¹({}) = {}, observed {:?}", rep.algebra, e.target_orbit, e.expected, e.observed))?;
                entries += 1;
            }
        }
    }
    within(start, Duration::from_secs(10), "χ sampling")?;
    Ok(format!("{entries} target orbits, 5 seeded samples each, exact Jordan types; {:?}", start.elapsed()))
}

// ---------------------------------------------------------------- 10

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let cases: [(TypeLabel, usize, [Q; 3]); 3] = [
        (TypeLabel::A, 1, [q(-1, 2), Q::ONE, q(-1, 3)]),
        (TypeLabel::A, 2, [Q::int(-1), Q::ONE, q(-1, 3)]),
        (TypeLabel::C, 2, [Q::int(-2), Q::ONE, q(-1, 3)]),
    ];
    let mut levels_checked = 0;
    for (ty, rank, levels) in cases {
        for k in levels {
            let c = build_brst(ty, rank, k).map_err(err)?;
            let nil = check_q_squared_zero(&c, 3).map_err(err)?;
            ensure(nil.wick_zero, || format!("{} k={k}: [Q_λ Q] ≠ 0: {:?}", c.algebra, nil.wick_witness))?;
            ensure(nil.witness.is_none(), || format!("{} k={k}: Q_(0)² v ≠ 0: {:?}", c.algebra, nil.witness))?;
            let emb = check_natural_embedding(&c, Some(2)).map_err(err)?;
            ensure(emb.passed(), || format!("{} k={k}: φ-currents do not close at κ♮", c.algebra))?;
            // Published level of the single g♮ factor (none for sl2).
            let published = match (ty, rank) {
                (TypeLabel::A, 1) => None,
                (TypeLabel::A, 2) => Some(k + q(3, 2)),
                _ => Some(k + Q::half()),
            };
            ensure(published.is_some() == (emb.natural_dim > 0), || format!("{}: dim g♮ = {}", c.algebra, emb.natural_dim))?;
            if let Some(level) = published {
                let basis = &c.triple.natural_basis;
                let mut seen = false;
                for p in &emb.pairs {
                    let norm = c.g.kappa0(&basis[p.i], &basis[p.j]);
                    if !norm.is_zero() {
                        seen = true;
                        ensure(p.observed_level / norm == level, || {
                            format!("{} k={k}: φ level {} on pair ({}, {}), published {level}", c.algebra, p.observed_level / norm, p.i, p.j)
                        })?;
                    }
                }
                ensure(seen, || format!("{}: no pair with nonzero κ₀", c.algebra))?;
                levels_checked += 1;
            }
        }
    }
    Ok(format!("Q_(0)² = 0 (Wick and Fock to depth 3) for sl2, sl3, sp4 at three levels each; {levels_checked} φ-level checks; {:?}", start.elapsed()))
}

// ---------------------------------------------------------------- 11

enum Variety {
    Sheet(usize),
    Partition(Vec<usize>),
    Named(&'static str),
}

/// Published `(dim g̃♮ (0 for gl_1), k_p̃♮, X)` for a member of a row.
fn table5_formula(f: Family, n: usize, k: usize) -> (usize, Q, Variety) {
    let nq = int(n);
    let sl = |m: usize| m * m - 1;
    let so = |m: usize| m * (m - 1) / 2;
    let sp = |m: usize| m * (m + 1) / 2;
    let parts = |v: &[(usize, usize)]| v.iter().flat_map(|&(p, m)| std::iter::repeat(p).take(m)).collect::<Vec<_>>();
    match f {
        Family::AEnd => (0, (nq - Q::ONE) / Q::int(2), Variety::Sheet(k)),
        Family::AMiddle => (sl(2 * n - 2), Q::ONE - nq, Variety::Sheet(k)),
        Family::BFirst => (3, nq - q(7, 2), Variety::Partition(parts(&[(3, 1), (1, 2 * n - 2)]))),
        Family::CLast => (sp(2 * n - 2), -(nq - Q::ONE) / Q::int(2) - Q::ONE, Variety::Sheet(k)),
        Family::DFirst => (3, nq - Q::int(4), Variety::Partition(parts(&[(2, 2), (1, 2 * n - 4)]))),
        Family::DSpin if n % 2 == 1 => (so(2 * n - 4), Q::int(4) - nq, Variety::Sheet(k)),
        // so_4 = sl_2 ⊕ sl_2 is not simple; the recursion continues in the summand through α_n.
        Family::DSpin if n == 4 => (sl(2), Q::ZERO, Variety::Partition(parts(&[(2, 2), (1, 4)]))),
        Family::DSpin => (so(2 * n - 4), Q::int(4) - nq, Variety::Partition(parts(&[(2, n - 2), (1, 4)]))),
        Family::E6 => (35, Q::int(-1), Variety::Sheet(k)),
        Family::E7 => (66, Q::int(-2), Variety::Named("2A1")),
    }
}

fn criterion_11() -> Outcome {
    let start = Instant::now();
    let t = symbolic_table("table5").map_err(err)?;
    let (gt, kt, xt) = (column(&t, "g̃♮"), column(&t, "k_p\u{303}♮"), column(&t, "X"));
    let expected = [
        ("gl_1", "n/2 - 1/2", "S\u{304}*_{p_{α_1}}"),
        ("sl_{2n-2}", "-n + 1", "S\u{304}*_{p_{α_n}}"),
        ("sl_2", "n - 7/2", "O\u{304}*_{[3,1^{2n-2}]}"),
        ("sp_{2n-2}", "-n/2 - 1/2", "S\u{304}*_{p_{α_n}}"),
        ("sl_2", "n - 4", "O\u{304}*_min"),
        ("so_{2n-4}", "-n + 4", "S\u{304}*_{p_{α_n}}"),
        ("so_{2n-4}", "-n + 4", "O\u{304}*_{[2^{n-2},1^4]}"),
        ("sl_6", "-1", "S\u{304}*_{p_{α_1}}"),
        ("so_{12}", "-2", "O\u{304}*_{2A1}"),
    ];
    ensure(t.rows.len() == expected.len(), || format!("{} rows", t.rows.len()))?;
    for (r, (g, k, x)) in t.rows.iter().zip(expected) {
        ensure(r[gt] == g && r[kt] == k && r[xt] == x, || format!("row {r:?}, expected ({g}, {k}, {x})"))?;
    }
    let mut chains = 0;
    for f in Family::ALL {
        for (ty, rank, _) in f.cases(4) {
            let n = f.param(rank).unwrap_or(rank);
            if f == Family::BFirst && n < 3 {
                continue; // The so_{2n+1} row of the variety table starts at n = 3.
            }
            for k in f.parabolics(rank) {
                let c = table5_chain(ty, rank, k).map_err(err)?;
                let step = c.first();
                let (dim, level, variety) = table5_formula(f, n, k);
                let got_dim = step.tilde_type.map_or(0, |(t, r)| algebra_dimension(t, r));
                ensure(got_dim == dim && step.tilde_level == level, || {
                    format!("{} p_α{k}: g̃♮ = {} (dim {got_dim}), k = {}; expected dim {dim}, k = {level}", step.algebra, step.tilde_algebra, step.tilde_level)
                })?;
                let ok = match (&variety, c.variety()) {
                    (Variety::Sheet(p), AssociatedVariety::Sheet { parabolic, .. }) => p == parabolic,
                    (Variety::Partition(v), AssociatedVariety::OrbitClosure { orbit }) => orbit.as_classical().is_some_and(|o| &o.partition == v),
                    (Variety::Named(s), AssociatedVariety::OrbitClosure { orbit: Orbit::Exceptional(e) }) => e.name == *s,
                    _ => false,
                };
                ensure(ok, || format!("{} p_α{k}: X = {}", step.algebra, c.variety()))?;
                ensure(!c.base.id.is_empty() && !c.base.basis.is_empty(), || format!("{}: base case without provenance", step.algebra))?;
                chains += 1;
            }
        }
    }
    ensure(base_case_axioms().iter().all(|a| !a.id.is_empty() && !a.basis.is_empty()), || "untagged axiom".into())?;
    within(start, Duration::from_secs(1), "variety table")?;
    Ok(format!("9 rows exact; {chains} chains end in tagged base cases; {:?}", start.elapsed()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("collapsing-level table", criterion_1),
        ("g♮ and κ♮ tables", criterion_2),
        ("free-field relations", criterion_3),
        ("explicit equals general", criterion_4),
        ("Zhu layer", criterion_5),
        ("central-charge identity", criterion_6),
        ("minimal grading", criterion_7),
        ("orbit layer", criterion_8),
        ("χ sampling", criterion_9),
        ("BRST nilpotency", criterion_10),
        ("associated-variety recursion", criterion_11),
    ];
    let mut failed = Vec::new();
    // Written to the process stdout directly so the lines survive output capture.
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let line = match &outcome {
            Ok(detail) => format!("acceptance {:>2} PASS  {name}: {detail}", i + 1),
            Err(e) => format!("acceptance {:>2} FAIL  {name}: {e}", i + 1),
        };
        writeln!(out, "{line}").unwrap();
        out.flush().unwrap();
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
