//! Mode action on a truncated Fock space, used as an oracle for Wick calculus.
//!
//! States are linear combinations of PBW words in creation modes `X_(k)`, `k < 0`,
//! applied to the vacuum. Only the generator commutation relations
//!
//! * `[a_i(m), a*_j(n)] = δ_{ij} δ_{m+n,−1}`, `[ψ_i(m), ψ*_j(n)]₊ = δ_{ij} δ_{m+n,−1}`,
//! * `[φ_i(m), φ_j(n)] = ω_{ij} δ_{m+n,−1}`, `[b_i(m), b_j(n)] = m G_{ij} δ_{m+n,0}`,
//! * `[J_x(m), J_y(n)] = J_{[x,y]}(m+n) + m κ(x,y) δ_{m+n,0}`
//!
//! are used, together with `(∂A)_(n) = −n A_(n−1)` and the normally ordered product
//! `(:AB:)_(n) = Σ_{j<0} A_(j)B_(n−j−1) + (−1)^{|A||B|} Σ_{j≥0} B_(n−j−1)A_(j)`.
//!
//! The depth of a word is `Σ (−k)` over its modes. A monomial with `s` factors
//! and total derivative order `d` has vanishing mode `(n)` on words of depth `D`
//! whenever `n > D + s − 1 + d`, which truncates every sum.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::field::{Factor, Field, FieldSystem, Gen, Monomial};
use super::modealg;
use super::notation::{format_gen, format_monomial};
use super::wick::{is_odd, DeltaExpansion};
use crate::error::{Error, Result};
use crate::rational::{binom, Q};

/// Creation modes `(generator, k)` with `k < 0`, in canonical order.
pub type Word = Vec<(Gen, i64)>;
pub type State = BTreeMap<Word, Q>;

pub fn depth(w: &Word) -> i64 {
    w.iter().map(|(_, k)| -k).sum()
}

pub fn format_word(w: &Word) -> String {
    if w.is_empty() {
        return "|0⟩".into();
    }
    let parts: Vec<String> = w.iter().map(|(g, k)| format!("{}({k})", format_gen(*g))).collect();
    format!("{}|0⟩", parts.join(" "))
}

pub fn format_state(s: &State) -> String {
    if s.is_empty() {
        return "0".into();
    }
    s.iter().map(|(w, c)| format!("({c}) {}", format_word(w))).collect::<Vec<_>>().join(" + ")
}

fn add_into(acc: &mut State, c: Q, s: &State) {
    if c.is_zero() {
        return;
    }
    for (w, v) in s {
        let e = acc.entry(w.clone()).or_insert(Q::ZERO);
        *e += c * *v;
        if e.is_zero() {
            acc.remove(w);
        }
    }
}

fn add_word(acc: &mut State, c: Q, w: Word) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(w.clone()).or_insert(Q::ZERO);
    *e += c;
    if e.is_zero() {
        acc.remove(&w);
    }
}

fn single(w: Word) -> State {
    let mut s = State::new();
    s.insert(w, Q::ONE);
    s
}

fn falling(n: i64, d: u32) -> Q {
    (0..d as i64).map(|i| Q::int(n - i)).product()
}

/// Scalar `[X_(m), Y_(n)}` for free generators.
pub(crate) fn free_bracket(sys: &FieldSystem, x: Gen, m: i64, y: Gen, n: i64) -> Q {
    let (i, j) = (x.index() as usize, y.index() as usize);
    match (x, y) {
        (Gen::A(_), Gen::AStar(_)) if i == j && m + n == -1 => Q::ONE,
        (Gen::AStar(_), Gen::A(_)) if i == j && m + n == -1 => -Q::ONE,
        (Gen::Psi(_), Gen::PsiStar(_)) | (Gen::PsiStar(_), Gen::Psi(_)) if i == j && m + n == -1 => Q::ONE,
        (Gen::Phi(_), Gen::Phi(_)) if m + n == -1 => sys.symplectic[(i, j)],
        (Gen::B(_), Gen::B(_)) if m + n == 0 => Q::int(m) * sys.heisenberg[(i, j)],
        _ => Q::ZERO,
    }
}

/// Result of an oracle comparison.
#[derive(Clone, Debug, serde::Serialize)]
pub struct OracleReport {
    pub cutoff: i64,
    /// Number of Fock basis states used.
    pub states: usize,
    /// Number of `(m, n, state)` triples compared.
    pub checks: usize,
    pub failure: Option<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Memoized mode action for a [`FieldSystem`].
pub struct ModeOracle<'a> {
    sys: &'a FieldSystem,
    gen_cache: RefCell<HashMap<(Gen, i64, Word), State>>,
    mono_cache: RefCell<HashMap<(Monomial, i64, Word), State>>,
    nested_cache: RefCell<HashMap<(Monomial, i64, Word), State>>,
}

impl<'a> ModeOracle<'a> {
    pub fn new(sys: &'a FieldSystem) -> ModeOracle<'a> {
        ModeOracle { sys, gen_cache: RefCell::default(), mono_cache: RefCell::default(), nested_cache: RefCell::default() }
    }

    pub fn clear(&self) {
        self.gen_cache.borrow_mut().clear();
        self.mono_cache.borrow_mut().clear();
        self.nested_cache.borrow_mut().clear();
    }

    fn free_bracket(&self, x: Gen, m: i64, y: Gen, n: i64) -> Q {
        free_bracket(self.sys, x, m, y, n)
    }

    /// `X_(n)` applied to a creation mode word.
    pub fn apply_gen(&self, g: Gen, n: i64, w: &Word) -> State {
        let key = (g, n, w.clone());
        if let Some(s) = self.gen_cache.borrow().get(&key) {
            return s.clone();
        }
        let s = if n < 0 { self.create(g, n, w) } else { self.annihilate(g, n, w) };
        self.gen_cache.borrow_mut().insert(key, s.clone());
        s
    }

    pub fn apply_gen_state(&self, g: Gen, n: i64, s: &State) -> State {
        let mut out = State::new();
        for (w, c) in s {
            add_into(&mut out, *c, &self.apply_gen(g, n, w));
        }
        out
    }

    fn create(&self, g: Gen, n: i64, w: &Word) -> State {
        let item = (g, n);
        if !g.is_current() {
            let pos = w.partition_point(|c| *c < item);
            if g.is_odd() && w.get(pos) == Some(&item) {
                return State::new();
            }
            let odd_before = w[..pos].iter().filter(|(x, _)| x.is_odd()).count();
            let sign = if g.is_odd() && odd_before % 2 == 1 { -Q::ONE } else { Q::ONE };
            let mut nw = w.clone();
            nw.insert(pos, item);
            let mut s = State::new();
            s.insert(nw, sign);
            return s;
        }
        let jstart = w.partition_point(|(x, _)| !x.is_current());
        if jstart == w.len() || item <= w[jstart] {
            let mut nw = w.clone();
            nw.insert(jstart, item);
            return single(nw);
        }
        // J_x(n) d₁ rest = d₁ J_x(n) rest + [J_x(n), d₁] rest
        let d1 = w[jstart];
        let mut rest = w.clone();
        rest.remove(jstart);
        let mut out = State::new();
        let inner = self.apply_gen(g, n, &rest);
        for (v, c) in &inner {
            add_into(&mut out, *c, &self.apply_gen(d1.0, d1.1, v));
        }
        let cur = self.sys.currents.as_ref().expect("currents declared");
        for (k, c) in &cur.structure[g.index() as usize][d1.0.index() as usize] {
            add_into(&mut out, *c, &self.apply_gen(Gen::J(*k as u32), n + d1.1, &rest));
        }
        out
    }

    fn annihilate(&self, g: Gen, n: i64, w: &Word) -> State {
        let mut out = State::new();
        if n > depth(w) {
            return out;
        }
        if !g.is_current() {
            let mut odd_seen = 0;
            for (i, &(y, m)) in w.iter().enumerate() {
                let s = self.free_bracket(g, n, y, m);
                if !s.is_zero() {
                    let sign = if g.is_odd() && odd_seen % 2 == 1 { -Q::ONE } else { Q::ONE };
                    let mut nw = w.clone();
                    nw.remove(i);
                    add_word(&mut out, sign * s, nw);
                }
                if y.is_odd() {
                    odd_seen += 1;
                }
            }
            return out;
        }
        let jstart = w.partition_point(|(x, _)| !x.is_current());
        if jstart == w.len() {
            return out;
        }
        let d1 = w[jstart];
        let mut rest = w.clone();
        rest.remove(jstart);
        let cur = self.sys.currents.as_ref().expect("currents declared");
        let (x, y) = (g.index() as usize, d1.0.index() as usize);
        for (k, c) in &cur.structure[x][y] {
            add_into(&mut out, *c, &self.apply_gen(Gen::J(*k as u32), n + d1.1, &rest));
        }
        if n + d1.1 == 0 {
            add_word(&mut out, Q::int(n) * cur.level[(x, y)], rest.clone());
        }
        let inner = self.apply_gen(g, n, &rest);
        for (v, c) in &inner {
            add_into(&mut out, *c, &self.apply_gen(d1.0, d1.1, v));
        }
        out
    }

    /// Mode `(∂^d X)_(n) = (−1)^d n(n−1)⋯(n−d+1) X_(n−d)` of a single factor.
    fn apply_factor(&self, f: Factor, n: i64, w: &Word) -> State {
        let c = falling(n, f.der) * if f.der % 2 == 0 { Q::ONE } else { -Q::ONE };
        if c.is_zero() {
            return State::new();
        }
        let s = self.apply_gen(f.gen, n - f.der as i64, w);
        if c == Q::ONE {
            s
        } else {
            s.into_iter().map(|(k, v)| (k, v * c)).collect()
        }
    }

    /// Mode `(n)` of a normally ordered monomial applied to a word.
    ///
    /// Creation parts of distinct factors supercommute, and so do annihilation
    /// parts (monomials carry at most one current). The mode is therefore the sum
    /// over mode assignments `j_1 + … + j_s = n − s + 1` of the product with every
    /// annihilation mode moved to the right, with the Koszul sign of that move.
    pub fn apply_monomial(&self, m: &[Factor], n: i64, w: &Word) -> State {
        match m.len() {
            0 => {
                return if n == -1 { single(w.clone()) } else { State::new() };
            }
            1 => return self.apply_factor(m[0], n, w),
            _ => {}
        }
        let bound_all = depth(w) + m.len() as i64 - 1 + m.iter().map(|f| f.der as i64).sum::<i64>();
        if n > bound_all {
            return State::new();
        }
        let key = (m.to_vec(), n, w.clone());
        if let Some(s) = self.mono_cache.borrow().get(&key) {
            return s.clone();
        }
        let mut out = State::new();
        let mut creation = vec![false; m.len()];
        let total = n - (m.len() as i64 - 1);
        self.annihilate_from(m, m.len(), w.clone(), Q::ONE, total, &mut creation, &mut out);
        self.mono_cache.borrow_mut().insert(key, out.clone());
        out
    }

    /// Assign factor `i − 1` (walking right to left) to the creation or the
    /// annihilation part; annihilation modes act on `w` immediately.
    #[allow(clippy::too_many_arguments)]
    fn annihilate_from(&self, m: &[Factor], i: usize, w: Word, c: Q, left: i64, creation: &mut [bool], out: &mut State) {
        if i == 0 {
            let idx: Vec<usize> = (0..m.len()).filter(|&k| creation[k]).collect();
            // Koszul sign of moving odd annihilators right past later odd creators.
            let mut odd_creators_after = 0;
            let mut sign = Q::ONE;
            for k in (0..m.len()).rev() {
                if m[k].gen.is_odd() {
                    if creation[k] {
                        odd_creators_after += 1;
                    } else if odd_creators_after % 2 == 1 {
                        sign = -sign;
                    }
                }
            }
            self.create_from(m, &idx, idx.len(), w, c * sign, left, out);
            return;
        }
        let f = m[i - 1];
        creation[i - 1] = true;
        self.annihilate_from(m, i - 1, w.clone(), c, left, creation, out);
        creation[i - 1] = false;
        let d = f.der as i64;
        for j in d..=(depth(&w) + d) {
            let fac = falling(j, f.der) * if f.der % 2 == 0 { Q::ONE } else { -Q::ONE };
            if fac.is_zero() {
                continue;
            }
            for (v, cv) in self.apply_gen(f.gen, j - d, &w) {
                self.annihilate_from(m, i - 1, v, c * fac * cv, left - j, creation, out);
            }
        }
    }

    /// Apply the creation factors `idx[..k]` (rightmost first) with modes `≤ −1`
    /// summing to `left`.
    #[allow(clippy::too_many_arguments)]
    fn create_from(&self, m: &[Factor], idx: &[usize], k: usize, w: Word, c: Q, left: i64, out: &mut State) {
        if k == 0 {
            if left == 0 {
                add_word(out, c, w);
            }
            return;
        }
        let lo = if k == 1 { left } else { left + k as i64 - 1 };
        if lo > -1 {
            return;
        }
        let f = m[idx[k - 1]];
        let start = if k == 1 { left } else { lo };
        for j in start..=(if k == 1 { left } else { -1 }) {
            let fac = falling(j, f.der) * if f.der % 2 == 0 { Q::ONE } else { -Q::ONE };
            for (v, cv) in self.apply_gen(f.gen, j - f.der as i64, &w) {
                self.create_from(m, idx, k - 1, v, c * fac * cv, left - j, out);
            }
        }
    }

    /// Same as [`ModeOracle::apply_monomial`], evaluated through the nested
    /// normally ordered product formula instead of the mode enumeration.
    pub fn apply_monomial_nested(&self, m: &[Factor], n: i64, w: &Word) -> State {
        match m.len() {
            0 => {
                return if n == -1 { single(w.clone()) } else { State::new() };
            }
            1 => return self.apply_factor(m[0], n, w),
            _ => {}
        }
        let bound_all = depth(w) + m.len() as i64 - 1 + m.iter().map(|f| f.der as i64).sum::<i64>();
        if n > bound_all {
            return State::new();
        }
        let key = (m.to_vec(), n, w.clone());
        if let Some(s) = self.nested_cache.borrow().get(&key) {
            return s.clone();
        }
        let a = m[0];
        let b = &m[1..];
        let mut out = State::new();
        let bound_b = depth(w) + b.len() as i64 - 1 + b.iter().map(|f| f.der as i64).sum::<i64>();
        for j in (n - 1 - bound_b)..0 {
            let bv = self.apply_monomial_nested(b, n - j - 1, w);
            for (v, c) in &bv {
                add_into(&mut out, *c, &self.apply_factor(a, j, v));
            }
        }
        let sign = if a.gen.is_odd() && is_odd(b) { -Q::ONE } else { Q::ONE };
        for j in (a.der as i64)..=(depth(w) + a.der as i64) {
            let av = self.apply_factor(a, j, w);
            for (v, c) in &av {
                add_into(&mut out, sign * *c, &self.apply_monomial_nested(b, n - j - 1, v));
            }
        }
        self.nested_cache.borrow_mut().insert(key, out.clone());
        out
    }

    /// Mode `A_(n)` of a field applied to a state.
    pub fn apply_field(&self, f: &Field, n: i64, s: &State) -> State {
        let mut out = State::new();
        for (w, cw) in s {
            for (m, cm) in f.terms() {
                add_into(&mut out, *cw * *cm, &self.apply_monomial(m, n, w));
            }
        }
        out
    }

    /// All PBW words of depth `≤ cutoff` over the given generators.
    pub fn basis_words(gens: &[Gen], cutoff: i64) -> Vec<Word> {
        let mut modes: Vec<(Gen, i64)> = gens.iter().flat_map(|&g| (1..=cutoff).map(move |k| (g, -k))).collect();
        modes.sort();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(modes: &[(Gen, i64)], start: usize, left: i64, cur: &mut Word, out: &mut Vec<Word>) {
            out.push(cur.clone());
            for i in start..modes.len() {
                let (g, k) = modes[i];
                if -k > left {
                    continue;
                }
                cur.push((g, k));
                // Odd modes appear at most once; even modes may repeat.
                let next = if g.is_odd() { i + 1 } else { i };
                rec(modes, next, left + k, cur, out);
                cur.pop();
            }
        }
        rec(&modes, 0, cutoff, &mut cur, &mut out);
        out
    }

    /// Generators needed to test `[A, B]` exactly: those occurring in the
    /// fields and all generators that fail to commute with them. The remaining
    /// generators only contribute spectator modes that commute with every
    /// operator involved.
    pub fn relevant_generators(&self, fields: &[&Field]) -> Vec<Gen> {
        let mut set: BTreeSet<Gen> = BTreeSet::new();
        for f in fields {
            for g in f.generators() {
                set.insert(g);
                set.extend(self.sys.partners(g));
            }
        }
        set.into_iter().collect()
    }

    /// Compare `[A_(m), B_(n)]v` with `Σ_j C(m,j) (A_(j)B)_(m+n−j) v` for all
    /// `|m|, |n| ≤ cutoff` and all basis words `v` of depth `≤ cutoff`.
    ///
    /// Even free fields with nondegenerate forms are compared as normally
    /// ordered mode operators (see [`super::modealg`]), which is equivalent and
    /// does not enumerate states; everything else goes through
    /// [`ModeOracle::check_bracket_on_states`].
    pub fn check_bracket(&self, a: &Field, b: &Field, claimed: &DeltaExpansion, cutoff: i64) -> Result<OracleReport> {
        let products = claimed.products();
        let mut all: Vec<&Field> = vec![a, b];
        all.extend(products.iter());
        if cutoff >= 1 && modealg::supports(self.sys, &all) {
            return Ok(self.check_bracket_as_operators(a, b, &products, cutoff));
        }
        self.check_bracket_on_states(a, b, claimed, cutoff)
    }

    fn check_bracket_as_operators(&self, a: &Field, b: &Field, products: &[Field], cutoff: i64) -> OracleReport {
        let all: Vec<&Field> = [a, b].into_iter().chain(products.iter()).collect();
        let gens = self.relevant_generators(&all);
        let states = ModeOracle::basis_words(&gens, cutoff).len();
        let mut checks = 0;
        for m in -cutoff..=cutoff {
            for n in -cutoff..=cutoff {
                let lhs = modealg::commutator(self.sys, a, m, b, n, cutoff);
                let mut rhs = modealg::ModeOp::new();
                for (j, p) in products.iter().enumerate() {
                    let c = binom(m, j as u32);
                    if !c.is_zero() && !p.is_zero() {
                        for (k, v) in modealg::expand_field(&p.scale(c), m + n - j as i64, cutoff) {
                            *rhs.entry(k).or_insert(Q::ZERO) += v;
                        }
                    }
                }
                let diff = modealg::difference(&lhs, &rhs);
                checks += lhs.len().max(rhs.len()).max(1);
                if let Some(((cre, ann), v)) = diff.iter().min_by(|x, y| x.0.cmp(y.0)) {
                    let show = |ms: &[modealg::Mode]| ms.iter().map(|(g, k)| format!("{}({k})", format_gen(*g))).collect::<Vec<_>>().join(" ");
                    return OracleReport {
                        cutoff,
                        states,
                        checks,
                        failure: Some(format!(
                            "modes (m, n) = ({m}, {n}) on {}: bracket minus claim has normally ordered term ({v}) [{}][{}]",
                            format_word(&modealg::paired_word(self.sys, ann)),
                            show(cre),
                            show(ann)
                        )),
                    };
                }
            }
        }
        OracleReport { cutoff, states, checks, failure: None }
    }

    /// [`ModeOracle::check_bracket`] evaluated state by state on the Fock basis.
    pub fn check_bracket_on_states(&self, a: &Field, b: &Field, claimed: &DeltaExpansion, cutoff: i64) -> Result<OracleReport> {
        if cutoff < 1 {
            return Err(Error::Invalid("oracle cutoff must be at least 1".into()));
        }
        let (Some(pa), Some(pb)) = (a.parity(), b.parity()) else {
            return Err(Error::Invalid("oracle check needs fields of definite parity".into()));
        };
        let products = claimed.products();
        let mut all: Vec<&Field> = vec![a, b];
        all.extend(products.iter());
        let gens = self.relevant_generators(&all);
        let words = ModeOracle::basis_words(&gens, cutoff);
        let eps = if pa && pb { -Q::ONE } else { Q::ONE };
        // Field modes on single words, memoized per (field, mode, word).
        let cache: RefCell<HashMap<(usize, i64, Word), State>> = RefCell::default();
        let act = |id: usize, f: &Field, n: i64, s: &State| -> State {
            let mut out = State::new();
            for (w, cw) in s {
                let key = (id, n, w.clone());
                let hit = cache.borrow().get(&key).cloned();
                let r = match hit {
                    Some(r) => r,
                    None => {
                        let r = self.apply_field(f, n, &single(w.clone()));
                        cache.borrow_mut().insert(key, r.clone());
                        r
                    }
                };
                add_into(&mut out, *cw, &r);
            }
            out
        };
        let mut checks = 0;
        for w in &words {
            let v = single(w.clone());
            let av: Vec<State> = (-cutoff..=cutoff).map(|m| act(0, a, m, &v)).collect();
            let bv: Vec<State> = (-cutoff..=cutoff).map(|n| act(1, b, n, &v)).collect();
            for m in -cutoff..=cutoff {
                for n in -cutoff..=cutoff {
                    checks += 1;
                    let mut lhs = act(0, a, m, &bv[(n + cutoff) as usize]);
                    add_into(&mut lhs, -eps, &act(1, b, n, &av[(m + cutoff) as usize]));
                    let mut rhs = State::new();
                    for (j, p) in products.iter().enumerate() {
                        let c = binom(m, j as u32);
                        if !c.is_zero() && !p.is_zero() {
                            add_into(&mut rhs, c, &act(2 + j, p, m + n - j as i64, &v));
                        }
                    }
                    if lhs != rhs {
                        let mut diff = lhs.clone();
                        add_into(&mut diff, -Q::ONE, &rhs);
                        return Ok(OracleReport {
                            cutoff,
                            states: words.len(),
                            checks,
                            failure: Some(format!(
                                "modes (m, n) = ({m}, {n}) on {}: bracket gives {}, claim gives {} (difference {})",
                                format_word(w),
                                format_state(&lhs),
                                format_state(&rhs),
                                format_state(&diff)
                            )),
                        });
                    }
                }
            }
        }
        Ok(OracleReport { cutoff, states: words.len(), checks, failure: None })
    }

    /// Check that two fields act identically (all modes `|n| ≤ cutoff` on words of depth `≤ cutoff`).
    pub fn check_equal(&self, a: &Field, b: &Field, cutoff: i64) -> Option<String> {
        let gens = self.relevant_generators(&[a, b]);
        for w in ModeOracle::basis_words(&gens, cutoff) {
            let v = single(w.clone());
            for n in -cutoff..=cutoff {
                let x = self.apply_field(a, n, &v);
                let y = self.apply_field(b, n, &v);
                if x != y {
                    return Some(format!("mode {n} on {}: {} vs {}", format_word(&w), format_state(&x), format_state(&y)));
                }
            }
        }
        None
    }
}

/// Readable name of a monomial for reports.
pub fn describe(m: &[Factor]) -> String {
    format_monomial(m)
}
