//! Command implementations: each turns parsed arguments into an [`Artifact`].

use serde_json::{json, Value};

use super::render::{choose, pretty_json, render_table, Format, TABLE_FORMATS};
use super::{Artifact, Command, OrbitsCommand, Selector, VerifyArgs, VerifyTarget};
use crate::dsred::{build_brst, check_natural_embedding, check_q_squared_zero};
use crate::error::{Error, Result};
use crate::freefield::{
    self, build_explicit_realization, build_tilde_realization, check_zhu_diagram, check_zhu_homomorphism,
    compare_explicit_with_tilde, level_for_parabolic, verify_affine_relations,
};
use crate::levels::tables::{commutative_parabolics, concrete_table, symbolic_table, Table};
use crate::levels::{central_charge_check, Family};
use crate::liealg::MatrixLieAlgebra;
use crate::orbits::{
    all_orbits, closure_hasse, distinguished_orbits, exceptional_chi_map, nilpotent_cone_hasse, orbit_dimension,
    richardson_orbit, verify_chi_by_sampling, ChiMap, ChiSetting, HasseDiagram, OrbitLabel,
};
use crate::rational::Q;
use crate::rootsys::{algebra_name, validate_type, TypeLabel};

const DIAGRAM_FORMATS: [Format; 3] = [Format::Dot, Format::Json, Format::Text];
const REPORT_FORMATS: [Format; 2] = [Format::Text, Format::Json];

pub(super) fn dispatch(cmd: &Command, format: Option<Format>) -> Result<Artifact> {
    match cmd {
        Command::Tables { which, sel } => tables(which.as_str(), sel, format),
        Command::Verify(v) => verify(v, format),
        Command::Orbits { which, sel, below } => orbits(*which, sel, below.as_deref(), format),
        Command::Algebra { sel } => {
            let (t, r) = required(sel)?;
            choose(format, &[Format::Json])?;
            let g = MatrixLieAlgebra::new(t, r)?;
            Ok(artifact(format!("algebra/{}", slug(t, r)), Format::Json, pretty_json(&g.to_json())?, None))
        }
        Command::Golden => Err(Error::Invalid("golden is handled by the driver".into())),
    }
}

fn artifact(stem: String, format: Format, body: String, passed: Option<bool>) -> Artifact {
    Artifact { stem, format, body, passed }
}

fn slug(t: TypeLabel, rank: usize) -> String {
    format!("{}{rank}", t.to_string().to_lowercase())
}

/// `--type` and `--rank` together, validated.
fn selected(sel: &Selector) -> Result<Option<(TypeLabel, usize)>> {
    match (sel.type_label, sel.rank) {
        (None, None) => Ok(None),
        (Some(t), Some(r)) => {
            validate_type(t, r)?;
            Ok(Some((t, r)))
        }
        _ => Err(Error::Invalid("--type and --rank must be given together".into())),
    }
}

fn required(sel: &Selector) -> Result<(TypeLabel, usize)> {
    selected(sel)?.ok_or_else(|| Error::Invalid("this command needs --type and --rank".into()))
}

/// `--parabolic`, or the natural default: the spinor node for type D, otherwise the
/// first parabolic of the family the algebra belongs to.
fn parabolic_or_default(sel: &Selector, t: TypeLabel, rank: usize) -> Result<usize> {
    if let Some(k) = sel.parabolic {
        if !(1..=rank).contains(&k) {
            return Err(Error::Invalid(format!("--parabolic must lie in 1..={rank}")));
        }
        return Ok(k);
    }
    if t == TypeLabel::D {
        return Ok(rank);
    }
    Family::ALL
        .into_iter()
        .find(|f| f.type_label() == t && f.param(rank).is_some())
        .map(|f| f.parabolics(rank)[0])
        .ok_or_else(|| Error::Unsupported(format!("{} has no collapsing parabolic; pass --parabolic", algebra_name(t, rank))))
}

/// `--parabolic`, or every commutative parabolic with a collapsing level.
fn parabolics_with_level(sel: &Selector, t: TypeLabel, rank: usize) -> Result<Vec<usize>> {
    if let Some(k) = sel.parabolic {
        return Ok(vec![k]);
    }
    let mut out = Vec::new();
    for k in commutative_parabolics(t, rank)? {
        let (g, p) = freefield::setup(t, rank, k)?;
        if level_for_parabolic(&g, &p).is_some() {
            out.push(k);
        }
    }
    if out.is_empty() {
        return Err(Error::Unsupported(format!("{} has no parabolic with a collapsing level", algebra_name(t, rank))));
    }
    Ok(out)
}

// ---------------------------------------------------------------- tables

fn tables(which: &str, sel: &Selector, format: Option<Format>) -> Result<Artifact> {
    let f = choose(format, &TABLE_FORMATS)?;
    if sel.parabolic.is_some() {
        return Err(Error::Invalid("tables take no --parabolic".into()));
    }
    let (table, stem) = match selected(sel)? {
        None => (symbolic_table(which)?, format!("tables/{which}")),
        Some((t, r)) => (concrete_table(which, t, r)?, format!("tables/{which}-{}", slug(t, r))),
    };
    Ok(artifact(stem, f, render_table(&table, f)?, None))
}

// ---------------------------------------------------------------- verify

/// A report as text lines plus a JSON value.
struct Report {
    lines: Vec<String>,
    json: Vec<Value>,
    passed: bool,
}

impl Report {
    fn new() -> Report {
        Report { lines: Vec::new(), json: Vec::new(), passed: true }
    }

    fn check(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        self.lines.push(format!("{} {line}", if ok { "ok  " } else { "FAIL" }));
    }

    fn finish(self, stem: String, schema: &str, format: Format) -> Result<Artifact> {
        let body = match format {
            Format::Json => pretty_json(&json!({"schema": schema, "passed": self.passed, "results": self.json}))?,
            _ => {
                let mut s = self.lines.join("\n");
                s.push_str(&format!("\n{}\n", if self.passed { "PASS" } else { "FAIL" }));
                s
            }
        };
        Ok(artifact(stem, format, body, Some(self.passed)))
    }
}

fn verify(v: &VerifyArgs, format: Option<Format>) -> Result<Artifact> {
    if let Some(c) = v.cutoff {
        if c < 1 {
            return Err(Error::Invalid("--cutoff must be at least 1".into()));
        }
    }
    if v.family.is_some() && v.target != VerifyTarget::Ff {
        return Err(Error::Invalid("--family applies to `verify ff` only".into()));
    }
    if v.target == VerifyTarget::Charges {
        return verify_charges(&v.sel, format);
    }
    let f = choose(format, &REPORT_FORMATS)?;
    match v.target {
        VerifyTarget::Ff => verify_ff(v, f),
        VerifyTarget::Zhu => verify_zhu(v, f),
        VerifyTarget::Brst => verify_brst(v, f),
        VerifyTarget::Chi => verify_chi(v, f),
        VerifyTarget::Charges => unreachable!(),
    }
}

fn verify_ff(v: &VerifyArgs, f: Format) -> Result<Artifact> {
    let cutoff = v.cutoff.unwrap_or(3);
    let mut rep = Report::new();
    let stem;
    if let Some(name) = &v.family {
        if v.sel.type_label.is_some() || v.sel.parabolic.is_some() {
            return Err(Error::Invalid("--family fixes the type and parabolic; pass only --rank".into()));
        }
        let family: freefield::Family = name.parse()?;
        let rank = v.sel.rank.unwrap_or(family.min_rank());
        let r = build_explicit_realization(family, rank)?;
        let report = verify_affine_relations(&r, Some(cutoff))?;
        let diffs = compare_explicit_with_tilde(family, rank)?;
        rep.check(report.passed(), format!("explicit family {family}: {}", report.to_string().trim_end().replace('\n', "\n      ")));
        rep.check(diffs.is_empty(), format!("explicit formulas agree with the general realization{}", listing(&diffs)));
        rep.json.push(json!({"family": family.to_string(), "relations": report, "explicit_vs_general": diffs}));
        stem = format!("verify/ff-{}-p{}", slug(family.type_label(), rank), family.parabolic(rank));
    } else {
        let (t, rank) = required(&v.sel)?;
        let ks = parabolics_with_level(&v.sel, t, rank)?;
        for &k in &ks {
            let (g, p) = freefield::setup(t, rank, k)?;
            let level = level_for_parabolic(&g, &p)
                .ok_or_else(|| Error::LevelCondition(format!("p_α{k} of {} has no collapsing level", g.name())))?;
            let r = build_tilde_realization(&g, &p, level)?;
            let report = verify_affine_relations(&r, Some(cutoff))?;
            rep.check(report.passed(), report.to_string().trim_end().replace('\n', "\n      "));
            rep.json.push(json!({"parabolic": k, "relations": report}));
        }
        stem = format!("verify/ff-{}", slug(t, rank));
    }
    rep.finish(stem, "collapsing.verify-ff/1", f)
}

fn listing(items: &[String]) -> String {
    items.iter().map(|d| format!("\n      {d}")).collect()
}

fn verify_zhu(v: &VerifyArgs, f: Format) -> Result<Artifact> {
    let (t, rank) = required(&v.sel)?;
    let mut rep = Report::new();
    for k in parabolics_with_level(&v.sel, t, rank)? {
        let (g, p) = freefield::setup(t, rank, k)?;
        let hom = check_zhu_homomorphism(&g, &p, v.degree);
        rep.check(hom.is_empty(), format!("{} p_α{k}: Zhu-level map respects brackets up to degree {}{}", g.name(), v.degree, listing(&hom)));
        let level = level_for_parabolic(&g, &p)
            .ok_or_else(|| Error::LevelCondition(format!("p_α{k} of {} has no collapsing level", g.name())))?;
        let r = build_tilde_realization(&g, &p, level)?;
        let square = check_zhu_diagram(&r)?;
        rep.check(square.is_empty(), format!("{} p_α{k} k={level}: Zhu and C₂ projections commute with the map{}", g.name(), listing(&square)));
        rep.json.push(json!({"parabolic": k, "level": level, "degree": v.degree, "homomorphism_failures": hom, "diagram_failures": square}));
    }
    rep.finish(format!("verify/zhu-{}", slug(t, rank)), "collapsing.verify-zhu/1", f)
}

/// Default BRST levels: the collapsing levels of the algebra, then generic values.
fn brst_levels(v: &VerifyArgs, t: TypeLabel, rank: usize) -> Result<Vec<Q>> {
    if !v.levels.is_empty() {
        return v
            .levels
            .iter()
            .map(|s| s.parse::<Q>().map_err(|e| Error::Invalid(format!("bad --level {s:?}: {e}"))))
            .collect();
    }
    let mut out: Vec<Q> = Vec::new();
    if let Ok(ks) = parabolics_with_level(&Selector::default(), t, rank) {
        for k in ks {
            let (g, p) = freefield::setup(t, rank, k)?;
            out.extend(level_for_parabolic(&g, &p));
        }
    }
    out.extend([Q::ONE, Q::new(-1, 3), Q::int(2)]);
    let mut uniq: Vec<Q> = Vec::new();
    for k in out {
        if !uniq.contains(&k) {
            uniq.push(k);
        }
    }
    uniq.truncate(3);
    Ok(uniq)
}

fn verify_brst(v: &VerifyArgs, f: Format) -> Result<Artifact> {
    let (t, rank) = required(&v.sel)?;
    let cutoff = v.cutoff.unwrap_or(3);
    let mut rep = Report::new();
    for k in brst_levels(v, t, rank)? {
        let c = build_brst(t, rank, k)?;
        let nil = check_q_squared_zero(&c, cutoff)?;
        let detail = nil.witness.as_ref().or(nil.wick_witness.as_ref()).map(|w| format!(": {w}")).unwrap_or_default();
        rep.check(
            nil.passed(),
            format!("{} k={k}: Q_(0)² = 0 ({} terms; Wick, and {} Fock states to depth {cutoff}){detail}", nil.algebra, nil.q_terms, nil.states),
        );
        let oracle = (rank <= 2).then_some(2);
        let emb = check_natural_embedding(&c, oracle)?;
        rep.check(
            emb.passed(),
            format!(
                "{} k={k}: φ embeds V(g♮) at κ♮ on {} basis pairs of g♮ (dim {}), φ(a) are cocycles{}{}",
                emb.algebra,
                emb.pairs.len(),
                emb.natural_dim,
                emb.oracle_cutoff.map(|d| format!(" (Fock check to depth {d})")).unwrap_or_default(),
                emb.oracle_failure.as_ref().map(|w| format!(": {w}")).unwrap_or_default()
            ),
        );
        rep.json.push(json!({"level": k, "nilpotency": nil, "embedding": emb}));
    }
    rep.finish(format!("verify/brst-{}", slug(t, rank)), "collapsing.verify-brst/1", f)
}

fn verify_chi(v: &VerifyArgs, f: Format) -> Result<Artifact> {
    let (t, rank) = required(&v.sel)?;
    let mut rep = Report::new();
    if t == TypeLabel::E {
        let ks = match v.sel.parabolic {
            Some(k) => vec![k],
            None => Family::ALL.into_iter().find(|fam| fam.type_label() == t && fam.param(rank).is_some()).map(|fam| fam.parabolics(rank)).unwrap_or_default(),
        };
        if ks.is_empty() {
            return Err(Error::Unsupported(format!("no χ data for e{rank}")));
        }
        for k in ks {
            let m = exceptional_chi_map(rank, k)?;
            rep.check(m.is_order_isomorphism() && m.counting_identity(), format!("e{rank} p_α{k}: χ onto {} is an order isomorphism", m.target.algebra));
            rep.json.push(json!({"parabolic": k, "map": m.to_json()}));
        }
        return rep.finish(format!("verify/chi-{}", slug(t, rank)), "collapsing.verify-chi/1", f);
    }
    let ks: Vec<usize> = match v.sel.parabolic {
        Some(k) => vec![k],
        None => (1..=rank).filter(|&k| ChiSetting::new(t, rank, k).is_ok()).collect(),
    };
    if ks.is_empty() {
        return Err(Error::Unsupported(format!("{} has no χ-correspondence", algebra_name(t, rank))));
    }
    for k in ks {
        let setting = ChiSetting::new(t, rank, k)?;
        let m = setting.chi_map()?;
        rep.check(
            m.is_order_isomorphism() && m.counting_identity(),
            format!("{} p_α{k}: χ onto {} is an order isomorphism", setting.algebra(), setting.target_algebra()),
        );
        let s = verify_chi_by_sampling(t, rank, k, v.samples, v.seed)?;
        for e in &s.entries {
            let note = e.note.as_ref().map(|n| format!(" ({n})")).unwrap_or_default();
            rep.check(e.passed, format!("{} p_α{k}: χ⁻¹({}) = {} observed {}{note}", s.algebra, e.target_orbit, e.expected, e.observed.join(" ")));
        }
        rep.json.push(json!({"parabolic": k, "map": m.to_json(), "sampling": s}));
    }
    rep.finish(format!("verify/chi-{}", slug(t, rank)), "collapsing.verify-chi/1", f)
}

fn verify_charges(sel: &Selector, format: Option<Format>) -> Result<Artifact> {
    let f = choose(format, &[Format::Text, Format::Json, Format::Markdown, Format::Csv])?;
    let (cases, stem): (Vec<(TypeLabel, usize, usize)>, String) = match selected(sel)? {
        Some((t, r)) => {
            let ks = match sel.parabolic {
                Some(k) => vec![k],
                None => Family::ALL.into_iter().filter(|fam| fam.type_label() == t && fam.param(r).is_some()).flat_map(|fam| fam.parabolics(r)).collect(),
            };
            if ks.is_empty() {
                return Err(Error::Unsupported(format!("{} has no collapsing parabolic", algebra_name(t, r))));
            }
            (ks.into_iter().map(|k| (t, r, k)).collect(), format!("verify/charges-{}", slug(t, r)))
        }
        None => (Family::ALL.into_iter().flat_map(|fam| fam.cases(2)).collect(), "verify/charges".into()),
    };
    let mut table = Table {
        name: "charges".into(),
        title: "Central charges at collapsing levels".into(),
        headers: ["g", "p", "k_p", "c(W_k(g, f_θ))", "Sugawara charges", "Σ", "check"].map(String::from).to_vec(),
        rows: Vec::new(),
    };
    let mut passed = true;
    let mut checks = Vec::new();
    for (t, r, k) in cases {
        let c = central_charge_check(t, r, k)?;
        passed &= c.passed;
        let parts: Vec<String> = c.sugawara.iter().map(|(n, l, s)| format!("{n} @ {l}: {s}")).collect();
        table.rows.push(vec![
            c.algebra.clone(),
            format!("p_{{α_{k}}}"),
            c.k_p.to_string(),
            c.w_charge.to_string(),
            parts.join("; "),
            c.sugawara_total.to_string(),
            if c.passed { "ok" } else { "FAIL" }.into(),
        ]);
        checks.push(c);
    }
    let body = match f {
        Format::Json => pretty_json(&json!({"schema": "collapsing.verify-charges/1", "passed": passed, "results": checks}))?,
        Format::Text => render_table(&table, f)? + if passed { "PASS\n" } else { "FAIL\n" },
        _ => render_table(&table, f)?,
    };
    Ok(artifact(stem, f, body, Some(passed)))
}

// ---------------------------------------------------------------- orbits

fn orbits(which: OrbitsCommand, sel: &Selector, below: Option<&str>, format: Option<Format>) -> Result<Artifact> {
    let (t, rank) = required(sel)?;
    if below.is_some() && which != OrbitsCommand::Hasse {
        return Err(Error::Invalid("--below applies to `orbits hasse` only".into()));
    }
    match which {
        OrbitsCommand::Hasse => {
            let f = choose(format, &DIAGRAM_FORMATS)?;
            let (d, stem) = match below {
                None => {
                    if sel.parabolic.is_some() {
                        return Err(Error::Invalid("--parabolic needs --below richardson".into()));
                    }
                    (nilpotent_cone_hasse(t, rank)?, format!("orbits/hasse-{}", slug(t, rank)))
                }
                Some("richardson") => {
                    let k = parabolic_or_default(sel, t, rank)?;
                    let d = if t == TypeLabel::E { exceptional_chi_map(rank, k)?.source } else { closure_hasse(&richardson_orbit(t, rank, k)?)? };
                    (d, format!("orbits/hasse-{}-below-richardson-p{k}", slug(t, rank)))
                }
                Some(label) => {
                    if sel.parabolic.is_some() {
                        return Err(Error::Invalid("--parabolic needs --below richardson".into()));
                    }
                    let o = OrbitLabel::parse(t, rank, label)?;
                    let name: String = o.to_string().chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
                    (closure_hasse(&o)?, format!("orbits/hasse-{}-below-{}", slug(t, rank), name.trim_matches('_')))
                }
            };
            Ok(artifact(stem, f, hasse_body(&d, f)?, None))
        }
        OrbitsCommand::Dims => {
            let f = choose(format, &TABLE_FORMATS)?;
            Ok(artifact(format!("orbits/dims-{}", slug(t, rank)), f, render_table(&dims_table(t, rank)?, f)?, None))
        }
        OrbitsCommand::ChiMap => {
            let f = choose(format, &DIAGRAM_FORMATS)?;
            let k = parabolic_or_default(sel, t, rank)?;
            let m = if t == TypeLabel::E { exceptional_chi_map(rank, k)? } else { ChiSetting::new(t, rank, k)?.chi_map()? };
            Ok(artifact(format!("orbits/chi-map-{}-p{k}", slug(t, rank)), f, chi_body(&m, f)?, None))
        }
    }
}

fn hasse_text(d: &HasseDiagram) -> String {
    let mut s = format!("{}: {} orbits\n", d.algebra, d.nodes.len());
    for (o, dim) in d.nodes.iter().zip(&d.dims) {
        s.push_str(&format!("  {o}  dim {dim}\n"));
    }
    for (i, j) in &d.edges {
        s.push_str(&format!("  {} < {}\n", d.nodes[*i], d.nodes[*j]));
    }
    s
}

fn hasse_body(d: &HasseDiagram, f: Format) -> Result<String> {
    match f {
        Format::Dot => Ok(d.to_dot()),
        Format::Json => pretty_json(&d.to_json()),
        _ => Ok(hasse_text(d)),
    }
}

fn chi_body(m: &ChiMap, f: Format) -> Result<String> {
    match f {
        Format::Dot => Ok(m.to_dot()),
        Format::Json => pretty_json(&m.to_json()),
        _ => {
            let mut s = format!("χ: {} → {}\n", m.source.algebra, m.target.algebra);
            for (i, j) in &m.arrows {
                s.push_str(&format!("  {} ↦ {}\n", m.source.nodes[*i], m.target.nodes[*j]));
            }
            s.push_str(&hasse_text(&m.source));
            s.push_str(&hasse_text(&m.target));
            Ok(s)
        }
    }
}

/// Orbits with dimensions; named orbits and Richardson orbits of collapsing
/// parabolics are marked.
fn dims_table(t: TypeLabel, rank: usize) -> Result<Table> {
    let all = all_orbits(t, rank)?;
    let named = distinguished_orbits(t, rank).ok();
    let mut richardson: Vec<(usize, OrbitLabel)> = Vec::new();
    for fam in Family::ALL.into_iter().filter(|fam| fam.type_label() == t && fam.param(rank).is_some()) {
        for k in fam.parabolics(rank) {
            if let Ok(o) = richardson_orbit(t, rank, k) {
                richardson.push((k, o));
            }
        }
    }
    richardson.sort_by_key(|(k, _)| *k);
    let mut rows = Vec::new();
    for o in &all {
        let mut notes: Vec<String> = Vec::new();
        if let Some(n) = &named {
            for (label, x) in [("zero", &n.zero), ("minimal", &n.min), ("subregular", &n.subregular), ("regular", &n.regular)] {
                if x == o {
                    notes.push(label.into());
                }
            }
        }
        for (k, r) in &richardson {
            if r.same_partition(o) && (r.very_even.is_none() || o.very_even.is_none() || r.very_even == o.very_even) {
                notes.push(format!("Richardson of p_{{α_{k}}}"));
            }
        }
        rows.push(vec![o.to_string(), orbit_dimension(o).to_string(), notes.join(", ")]);
    }
    Ok(Table {
        name: "orbit-dims".into(),
        title: format!("Nilpotent orbits of {}", all.first().map(|o| o.algebra()).unwrap_or_default()),
        headers: ["orbit", "dim", "remark"].map(String::from).to_vec(),
        rows,
    })
}
