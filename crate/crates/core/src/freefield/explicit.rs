//! Closed-form realizations at the collapsing levels of the classical families.
//!
//! Each builder writes the images of `e_α`, `f_α` (all positive roots) and the
//! simple coroots `h_i` directly from index formulas, using the local indexing of
//! the Weyl pairs for that family. Nothing here consults the general map; the
//! two are compared field by field in the tests and by the acceptance run.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{setup, MapKind, RealizationMap};
use crate::error::{invalid, Error, Result};
use crate::liealg::{MatrixLieAlgebra, ParabolicDatum};
use crate::linalg::Mat;
use crate::rational::{q, Q};
use crate::rootsys::TypeLabel;
use crate::vertex::{Factor, Field, FieldSystem, Gen};

/// The six families with explicit formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// `sl_{n+1}`, `p_{α_1}`, `k = −1`.
    AMinusOne,
    /// `sl_{2n}`, `p_{α_n}`, `k = −n`.
    AMinusN,
    /// `sp_{2n}`, `p_{α_n}`, `k = −1 − n/2`.
    C,
    /// `so_{2n+1}`, `p_{α_1}`, `k = −2`.
    B,
    /// `so_{2n}`, `p_{α_1}`, `k = −2`.
    DMinusTwo,
    /// `so_{2n}`, `p_{α_n}`, `k = 2 − n`.
    DMinusNPlusTwo,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::AMinusOne, Family::AMinusN, Family::C, Family::B, Family::DMinusTwo, Family::DMinusNPlusTwo];

    pub fn type_label(self) -> TypeLabel {
        match self {
            Family::AMinusOne | Family::AMinusN => TypeLabel::A,
            Family::C => TypeLabel::C,
            Family::B => TypeLabel::B,
            Family::DMinusTwo | Family::DMinusNPlusTwo => TypeLabel::D,
        }
    }

    /// Smallest admissible rank of `g`.
    pub fn min_rank(self) -> usize {
        match self {
            Family::AMinusOne | Family::AMinusN => 1,
            Family::C | Family::B => 2,
            Family::DMinusTwo | Family::DMinusNPlusTwo => 3,
        }
    }

    /// Ranks admissible for this family (the `sl_{2n}` family needs odd rank).
    pub fn admits_rank(self, rank: usize) -> bool {
        rank >= self.min_rank() && (self != Family::AMinusN || rank % 2 == 1)
    }

    /// The next admissible rank after `rank`.
    pub fn next_rank(self, rank: usize) -> usize {
        (rank + 1..).find(|&r| self.admits_rank(r)).expect("unbounded")
    }

    fn check_rank(self, rank: usize) -> Result<()> {
        if self.admits_rank(rank) {
            Ok(())
        } else if self == Family::AMinusN {
            invalid(format!("family {self} needs odd rank 2n−1 ≥ 1, got {rank}"))
        } else {
            invalid(format!("family {self} needs rank ≥ {}, got {rank}", self.min_rank()))
        }
    }

    /// 1-based index of the removed simple root.
    pub fn parabolic(self, rank: usize) -> usize {
        match self {
            Family::AMinusOne | Family::B | Family::DMinusTwo => 1,
            Family::AMinusN => rank.div_ceil(2),
            Family::C | Family::DMinusNPlusTwo => rank,
        }
    }

    /// The collapsing level `k` with `κ_p = k κ₀`.
    pub fn level(self, rank: usize) -> Q {
        let n = rank as i64;
        match self {
            Family::AMinusOne => q(-1, 1),
            Family::AMinusN => q(-(n + 1) / 2, 1),
            Family::C => q(-2 - n, 2),
            Family::B | Family::DMinusTwo => q(-2, 1),
            Family::DMinusNPlusTwo => q(2 - n, 1),
        }
    }

    pub fn setup(self, rank: usize) -> Result<(MatrixLieAlgebra, ParabolicDatum)> {
        self.check_rank(rank)?;
        setup(self.type_label(), rank, self.parabolic(rank))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::AMinusOne => "A@-1",
            Family::AMinusN => "A@-n",
            Family::C => "C",
            Family::B => "B",
            Family::DMinusTwo => "D@-2",
            Family::DMinusNPlusTwo => "D@-n+2",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        let norm: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_uppercase();
        Ok(match norm.as_str() {
            "A@-1" | "A-1" => Family::AMinusOne,
            "A@-N" | "A-N" => Family::AMinusN,
            "C" => Family::C,
            "B" => Family::B,
            "D@-2" | "D-2" => Family::DMinusTwo,
            "D@-N+2" | "D-N+2" | "D@2-N" => Family::DMinusNPlusTwo,
            _ => return invalid(format!("unknown family {s:?} (expected one of A@-1, A@-n, C, B, D@-2, D@-n+2)")),
        })
    }
}

/// Builder for the images, keyed by roots in ε-coordinates.
struct Builder<'a> {
    g: &'a MatrixLieAlgebra,
    p: &'a ParabolicDatum,
    images: Vec<Option<Field>>,
}

impl<'a> Builder<'a> {
    fn eps(&self, terms: &[(usize, i64)]) -> Vec<Q> {
        let mut v = vec![Q::ZERO; self.g.root_system.ambient];
        for (i, c) in terms {
            v[*i - 1] += Q::int(*c);
        }
        v
    }

    /// Weyl index of the root with the given ε-terms (1-based ε indices).
    fn w(&self, terms: &[(usize, i64)]) -> usize {
        let r = self.eps(terms);
        let idx = self.g.root_system.positive_root_index(&r).expect("root of u");
        self.p.delta_u_index.iter().position(|&x| x == idx).expect("root of u")
    }

    fn set_e(&mut self, terms: &[(usize, i64)], f: Field) {
        let r = self.g.root_system.positive_root_index(&self.eps(terms)).expect("positive root");
        self.images[self.g.e(r)] = Some(f);
    }

    fn set_f(&mut self, terms: &[(usize, i64)], f: Field) {
        let r = self.g.root_system.positive_root_index(&self.eps(terms)).expect("positive root");
        self.images[self.g.f(r)] = Some(f);
    }

    fn set_h(&mut self, i: usize, f: Field) {
        self.images[self.g.h(i - 1)] = Some(f);
    }
}

fn s(i: usize) -> Factor {
    Factor::new(Gen::AStar(i as u32), 0)
}

fn a(i: usize) -> Factor {
    Factor::new(Gen::A(i as u32), 0)
}

fn b() -> Factor {
    Factor::new(Gen::B(0), 0)
}

fn ds(i: usize) -> Factor {
    Factor::new(Gen::AStar(i as u32), 1)
}

fn t(c: Q, fs: Vec<Factor>) -> Field {
    Field::monomial(c, fs).expect("free-field monomial")
}

fn one() -> Q {
    Q::ONE
}

fn delta(i: usize, j: usize) -> i64 {
    (i == j) as i64
}

/// Build the explicit realization of `family` for `g` of the given rank.
pub fn build_explicit_realization(family: Family, rank: usize) -> Result<RealizationMap> {
    let (g, p) = family.setup(rank)?;
    let k = family.level(rank);
    let mut bld = Builder { g: &g, p: &p, images: vec![None; g.dim()] };
    match family {
        Family::AMinusOne => a_minus_one(&mut bld, rank),
        Family::AMinusN => a_minus_n(&mut bld, rank.div_ceil(2)),
        Family::C => type_c(&mut bld, rank),
        Family::B => type_b(&mut bld, rank),
        Family::DMinusTwo => d_minus_two(&mut bld, rank),
        Family::DMinusNPlusTwo => d_minus_n_plus_two(&mut bld, rank),
    }
    let images = bld
        .images
        .into_iter()
        .enumerate()
        .map(|(i, f)| f.ok_or_else(|| Error::Invalid(format!("no explicit image for {}", g.basis[i].label))))
        .collect::<Result<Vec<_>>>()?;
    let hc = p.h_c(&g);
    let gram = k * g.kappa0(&hc, &hc) - p.kappa_c_p(&g, &hc, &hc);
    let mut system = FieldSystem::weyl(p.dim_u).with_heisenberg(Mat::from_rows(vec![vec![gram]]));
    system.weyl_labels = p.delta_u.iter().map(|r| crate::liealg::root_label(r)).collect();
    Ok(RealizationMap { algebra: g.clone(), parabolic: p.clone(), level: k, kind: MapKind::Explicit, system, images, current_basis: Vec::new() })
}

fn a_minus_one(bl: &mut Builder, n: usize) {
    // a_i = a_{ε1−ε_{i+1}}
    let w: Vec<usize> = (0..=n).map(|i| if i == 0 { usize::MAX } else { bl.w(&[(1, 1), (i + 1, -1)]) }).collect();
    for i in 1..=n {
        bl.set_e(&[(1, 1), (i + 1, -1)], t(-one(), vec![a(w[i])]));
        let mut f = Field::zero();
        for k in 1..=n {
            f.add_assign(&t(one(), vec![s(w[i]), s(w[k]), a(w[k])]));
        }
        f.add_assign(&t(one(), vec![ds(w[i])]));
        f.add_assign(&t(-one(), vec![s(w[i]), b()]));
        bl.set_f(&[(1, 1), (i + 1, -1)], f);
    }
    for i in 1..=n {
        for j in i + 1..=n {
            bl.set_e(&[(i + 1, 1), (j + 1, -1)], t(one(), vec![s(w[i]), a(w[j])]));
            bl.set_f(&[(i + 1, 1), (j + 1, -1)], t(one(), vec![s(w[j]), a(w[i])]));
        }
    }
    for i in 1..=n {
        let mut h = Field::zero();
        if i == 1 {
            h.add_assign(&t(-one(), vec![s(w[1]), a(w[1])]));
            for k in 1..=n {
                h.add_assign(&t(-one(), vec![s(w[k]), a(w[k])]));
            }
            h.add_assign(&Field::factor(b()));
        } else {
            h.add_assign(&t(one(), vec![s(w[i - 1]), a(w[i - 1])]));
            h.add_assign(&t(-one(), vec![s(w[i]), a(w[i])]));
        }
        bl.set_h(i, h);
    }
}

fn a_minus_n(bl: &mut Builder, n: usize) {
    // a_{i,j} = a_{ε_i − ε_{n+j}}
    let w = |bl: &Builder, i: usize, j: usize| bl.w(&[(i, 1), (n + j, -1)]);
    for i in 1..=n {
        for j in 1..=n {
            bl.set_e(&[(i, 1), (n + j, -1)], t(-one(), vec![a(w(bl, i, j))]));
            let mut f = Field::zero();
            for k in 1..=n {
                for l in 1..=n {
                    f.add_assign(&t(one(), vec![s(w(bl, k, j)), s(w(bl, i, l)), a(w(bl, k, l))]));
                }
            }
            f.add_assign(&t(Q::int(n as i64), vec![ds(w(bl, i, j))]));
            f.add_assign(&t(-one(), vec![s(w(bl, i, j)), b()]));
            bl.set_f(&[(i, 1), (n + j, -1)], f);
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let mut e1 = Field::zero();
            let mut e2 = Field::zero();
            let mut f1 = Field::zero();
            let mut f2 = Field::zero();
            for k in 1..=n {
                e1.add_assign(&t(-one(), vec![s(w(bl, j, k)), a(w(bl, i, k))]));
                e2.add_assign(&t(one(), vec![s(w(bl, k, i)), a(w(bl, k, j))]));
                f1.add_assign(&t(-one(), vec![s(w(bl, i, k)), a(w(bl, j, k))]));
                f2.add_assign(&t(one(), vec![s(w(bl, k, j)), a(w(bl, k, i))]));
            }
            bl.set_e(&[(i, 1), (j, -1)], e1);
            bl.set_e(&[(n + i, 1), (n + j, -1)], e2);
            bl.set_f(&[(i, 1), (j, -1)], f1);
            bl.set_f(&[(n + i, 1), (n + j, -1)], f2);
        }
    }
    for i in 1..2 * n {
        let mut h = Field::zero();
        for k in 1..=n {
            if i < n {
                h.add_assign(&t(-one(), vec![s(w(bl, i, k)), a(w(bl, i, k))]));
                h.add_assign(&t(one(), vec![s(w(bl, i + 1, k)), a(w(bl, i + 1, k))]));
            } else if i == n {
                h.add_assign(&t(-one(), vec![s(w(bl, n, k)), a(w(bl, n, k))]));
                h.add_assign(&t(-one(), vec![s(w(bl, k, 1)), a(w(bl, k, 1))]));
            } else {
                // second index of a_{k,·} runs over 1..n: the column is i − n
                let m = i - n;
                h.add_assign(&t(one(), vec![s(w(bl, k, m)), a(w(bl, k, m))]));
                h.add_assign(&t(-one(), vec![s(w(bl, k, m + 1)), a(w(bl, k, m + 1))]));
            }
        }
        if i == n {
            h.add_assign(&Field::factor(b()));
        }
        bl.set_h(i, h);
    }
}

fn type_c(bl: &mut Builder, n: usize) {
    // a_{i,j} = a_{j,i} = a_{ε_i + ε_j}
    let w = |bl: &Builder, i: usize, j: usize| if i == j { bl.w(&[(i, 2)]) } else { bl.w(&[(i, 1), (j, 1)]) };
    let root = |i: usize, j: usize| if i == j { vec![(i, 2)] } else { vec![(i, 1), (j, 1)] };
    let shift = q(2 + n as i64, 2);
    for i in 1..=n {
        for j in i..=n {
            bl.set_e(&root(i, j), t(-one(), vec![a(w(bl, i, j))]));
            let mut f = Field::zero();
            for k in 1..=n {
                for l in 1..=n {
                    let c = q(1 + delta(k, l), 1 + delta(i, j));
                    f.add_assign(&t(c, vec![s(w(bl, i, k)), s(w(bl, j, l)), a(w(bl, k, l))]));
                }
            }
            let m = Q::int(2 - delta(i, j));
            f.add_assign(&t(m * shift, vec![ds(w(bl, i, j))]));
            f.add_assign(&t(-m, vec![s(w(bl, i, j)), b()]));
            bl.set_f(&root(i, j), f);
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let mut e = Field::zero();
            let mut f = Field::zero();
            for k in 1..=n {
                e.add_assign(&t(-Q::int(1 + delta(i, k)), vec![s(w(bl, j, k)), a(w(bl, i, k))]));
                f.add_assign(&t(-Q::int(1 + delta(j, k)), vec![s(w(bl, i, k)), a(w(bl, j, k))]));
            }
            bl.set_e(&[(i, 1), (j, -1)], e);
            bl.set_f(&[(i, 1), (j, -1)], f);
        }
    }
    for i in 1..=n {
        let mut h = Field::zero();
        for k in 1..=n {
            h.add_assign(&t(-Q::int(1 + delta(i, k)), vec![s(w(bl, i, k)), a(w(bl, i, k))]));
            if i < n {
                h.add_assign(&t(Q::int(1 + delta(i + 1, k)), vec![s(w(bl, i + 1, k)), a(w(bl, i + 1, k))]));
            }
        }
        if i == n {
            h.add_assign(&Field::factor(b()));
        }
        bl.set_h(i, h);
    }
}

fn type_b(bl: &mut Builder, n: usize) {
    // a_i: ε1−ε_{i+1} (i<n), ε1 (i=n), ε1+ε_{i−n+1} (n<i≤2n−1)
    let w: Vec<usize> = (0..2 * n)
        .map(|i| match i {
            0 => usize::MAX,
            i if i < n => bl.w(&[(1, 1), (i + 1, -1)]),
            i if i == n => bl.w(&[(1, 1)]),
            i => bl.w(&[(1, 1), (i - n + 1, 1)]),
        })
        .collect();
    let cubic = |i: usize, target: usize| -> Field {
        let mut f = Field::zero();
        for k in 1..2 * n {
            f.add_assign(&t(one(), vec![s(w[i]), s(w[k]), a(w[k])]));
        }
        for k in 1..n {
            f.add_assign(&t(-one(), vec![s(w[k]), s(w[n + k]), a(w[target])]));
        }
        f.add_assign(&t(-Q::half(), vec![s(w[n]), s(w[n]), a(w[target])]));
        f.add_assign(&t(Q::int(2), vec![ds(w[i])]));
        f.add_assign(&t(-one(), vec![s(w[i]), b()]));
        f
    };
    for i in 1..n {
        bl.set_e(&[(1, 1), (1 + i, -1)], t(-one(), vec![a(w[i])]));
        bl.set_f(&[(1, 1), (1 + i, -1)], cubic(i, n + i));
        bl.set_e(&[(1, 1), (1 + i, 1)], t(-one(), vec![a(w[n + i])]));
        bl.set_f(&[(1, 1), (1 + i, 1)], cubic(n + i, i));
    }
    bl.set_e(&[(1, 1)], t(-one(), vec![a(w[n])]));
    bl.set_f(&[(1, 1)], cubic(n, n));
    for i in 1..n {
        for j in i + 1..n {
            bl.set_e(&[(1 + i, 1), (1 + j, -1)], t(one(), vec![s(w[i]), a(w[j])]).sub(&t(one(), vec![s(w[n + j]), a(w[n + i])])));
            bl.set_f(&[(1 + i, 1), (1 + j, -1)], t(one(), vec![s(w[j]), a(w[i])]).sub(&t(one(), vec![s(w[n + i]), a(w[n + j])])));
            bl.set_e(&[(1 + i, 1), (1 + j, 1)], t(one(), vec![s(w[i]), a(w[n + j])]).sub(&t(one(), vec![s(w[j]), a(w[n + i])])));
            bl.set_f(&[(1 + i, 1), (1 + j, 1)], t(one(), vec![s(w[n + j]), a(w[i])]).sub(&t(one(), vec![s(w[n + i]), a(w[j])])));
        }
        bl.set_e(&[(1 + i, 1)], t(one(), vec![s(w[i]), a(w[n])]).sub(&t(one(), vec![s(w[n]), a(w[n + i])])));
        bl.set_f(&[(1 + i, 1)], t(-one(), vec![s(w[n + i]), a(w[n])]).add(&t(one(), vec![s(w[n]), a(w[i])])));
    }
    for i in 1..=n {
        let mut h = Field::zero();
        if i == 1 {
            h.add_assign(&t(-one(), vec![s(w[1]), a(w[1])]));
            h.add_assign(&t(one(), vec![s(w[n + 1]), a(w[n + 1])]));
            for k in 1..2 * n {
                h.add_assign(&t(-one(), vec![s(w[k]), a(w[k])]));
            }
            h.add_assign(&Field::factor(b()));
        } else if i < n {
            h.add_assign(&t(one(), vec![s(w[i - 1]), a(w[i - 1])]));
            h.add_assign(&t(-one(), vec![s(w[i]), a(w[i])]));
            h.add_assign(&t(-one(), vec![s(w[n + i - 1]), a(w[n + i - 1])]));
            h.add_assign(&t(one(), vec![s(w[n + i]), a(w[n + i])]));
        } else {
            h.add_assign(&t(Q::int(2), vec![s(w[n - 1]), a(w[n - 1])]));
            h.add_assign(&t(Q::int(-2), vec![s(w[2 * n - 1]), a(w[2 * n - 1])]));
        }
        bl.set_h(i, h);
    }
}

fn d_minus_two(bl: &mut Builder, n: usize) {
    // a_i: ε1−ε_{i+1} (i<n), ε1+ε_{i−n+2} (n≤i≤2n−2)
    let w: Vec<usize> = (0..2 * n - 1)
        .map(|i| match i {
            0 => usize::MAX,
            i if i < n => bl.w(&[(1, 1), (i + 1, -1)]),
            i => bl.w(&[(1, 1), (i - n + 2, 1)]),
        })
        .collect();
    let m = n - 1;
    let cubic = |i: usize, target: usize| -> Field {
        let mut f = Field::zero();
        for k in 1..=2 * n - 2 {
            f.add_assign(&t(one(), vec![s(w[i]), s(w[k]), a(w[k])]));
        }
        for k in 1..n {
            f.add_assign(&t(-one(), vec![s(w[k]), s(w[m + k]), a(w[target])]));
        }
        f.add_assign(&t(Q::int(2), vec![ds(w[i])]));
        f.add_assign(&t(-one(), vec![s(w[i]), b()]));
        f
    };
    for i in 1..n {
        bl.set_e(&[(1, 1), (1 + i, -1)], t(-one(), vec![a(w[i])]));
        bl.set_f(&[(1, 1), (1 + i, -1)], cubic(i, m + i));
        bl.set_e(&[(1, 1), (1 + i, 1)], t(-one(), vec![a(w[m + i])]));
        bl.set_f(&[(1, 1), (1 + i, 1)], cubic(m + i, i));
    }
    for i in 1..n {
        for j in i + 1..n {
            bl.set_e(&[(1 + i, 1), (1 + j, -1)], t(one(), vec![s(w[i]), a(w[j])]).sub(&t(one(), vec![s(w[m + j]), a(w[m + i])])));
            bl.set_f(&[(1 + i, 1), (1 + j, -1)], t(one(), vec![s(w[j]), a(w[i])]).sub(&t(one(), vec![s(w[m + i]), a(w[m + j])])));
            bl.set_e(&[(1 + i, 1), (1 + j, 1)], t(one(), vec![s(w[i]), a(w[m + j])]).sub(&t(one(), vec![s(w[j]), a(w[m + i])])));
            bl.set_f(&[(1 + i, 1), (1 + j, 1)], t(one(), vec![s(w[m + j]), a(w[i])]).sub(&t(one(), vec![s(w[m + i]), a(w[j])])));
        }
    }
    for i in 1..=n {
        let mut h = Field::zero();
        if i == 1 {
            h.add_assign(&t(-one(), vec![s(w[1]), a(w[1])]));
            h.add_assign(&t(one(), vec![s(w[n]), a(w[n])]));
            for k in 1..=2 * n - 2 {
                h.add_assign(&t(-one(), vec![s(w[k]), a(w[k])]));
            }
            h.add_assign(&Field::factor(b()));
        } else if i < n {
            h.add_assign(&t(one(), vec![s(w[i - 1]), a(w[i - 1])]));
            h.add_assign(&t(-one(), vec![s(w[i]), a(w[i])]));
            h.add_assign(&t(-one(), vec![s(w[m + i - 1]), a(w[m + i - 1])]));
            h.add_assign(&t(one(), vec![s(w[m + i]), a(w[m + i])]));
        } else {
            h.add_assign(&t(one(), vec![s(w[n - 2]), a(w[n - 2])]));
            h.add_assign(&t(one(), vec![s(w[n - 1]), a(w[n - 1])]));
            h.add_assign(&t(-one(), vec![s(w[2 * n - 3]), a(w[2 * n - 3])]));
            h.add_assign(&t(-one(), vec![s(w[2 * n - 2]), a(w[2 * n - 2])]));
        }
        bl.set_h(i, h);
    }
}

fn d_minus_n_plus_two(bl: &mut Builder, n: usize) {
    // a_{i,j} = −a_{j,i} = a_{ε_i+ε_j} (i<j), a_{i,i} = 0
    let w = |bl: &Builder, i: usize, j: usize| -> Option<(usize, Q)> {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => Some((bl.w(&[(i, 1), (j, 1)]), Q::ONE)),
            std::cmp::Ordering::Greater => Some((bl.w(&[(i, 1), (j, 1)]), -Q::ONE)),
        }
    };
    // c · :x_{i,j} y_{k,l} …: with antisymmetric signs
    let term = |bl: &Builder, c: Q, spec: &[(bool, usize, usize)]| -> Field {
        let mut coeff = c;
        let mut fs = Vec::new();
        for &(star, i, j) in spec {
            let Some((idx, sg)) = w(bl, i, j) else { return Field::zero() };
            coeff *= sg;
            fs.push(if star { s(idx) } else { a(idx) });
        }
        t(coeff, fs)
    };
    for i in 1..=n {
        for j in i + 1..=n {
            bl.set_e(&[(i, 1), (j, 1)], term(bl, -one(), &[(false, i, j)]));
            let mut f = Field::zero();
            for k in 1..=n {
                for l in 1..=n {
                    f.add_assign(&term(bl, one(), &[(true, i, k), (true, l, j), (false, l, k)]));
                }
            }
            let (idx, _) = w(bl, i, j).expect("i<j");
            f.add_assign(&t(Q::int(n as i64 - 2), vec![ds(idx)]));
            f.add_assign(&t(Q::int(-2), vec![s(idx), b()]));
            bl.set_f(&[(i, 1), (j, 1)], f);

            let mut e = Field::zero();
            let mut ff = Field::zero();
            for k in 1..=n {
                e.add_assign(&term(bl, -one(), &[(true, j, k), (false, i, k)]));
                ff.add_assign(&term(bl, -one(), &[(true, i, k), (false, j, k)]));
            }
            bl.set_e(&[(i, 1), (j, -1)], e);
            bl.set_f(&[(i, 1), (j, -1)], ff);
        }
    }
    for i in 1..=n {
        let mut h = Field::zero();
        for k in 1..=n {
            if i < n {
                h.add_assign(&term(bl, -one(), &[(true, i, k), (false, i, k)]));
                h.add_assign(&term(bl, one(), &[(true, i + 1, k), (false, i + 1, k)]));
            } else {
                h.add_assign(&term(bl, -one(), &[(true, n - 1, k), (false, n - 1, k)]));
                h.add_assign(&term(bl, -one(), &[(true, n, k), (false, n, k)]));
            }
        }
        if i == n {
            h.add_assign(&t(Q::int(2), vec![b()]));
        }
        bl.set_h(i, h);
    }
}

/// Differences between the closed-form images and the general map composed with the
/// projection to `M_u ⊗ V(z(l))`, one line per basis element; empty when they agree.
pub fn compare_explicit_with_tilde(family: Family, rank: usize) -> Result<Vec<String>> {
    let ex = build_explicit_realization(family, rank)?;
    let (g, p) = family.setup(rank)?;
    let ti = super::build_tilde_realization(&g, &p, family.level(rank))?;
    let mut diffs = Vec::new();
    if ex.system.heisenberg != ti.system.heisenberg {
        diffs.push(format!("Heisenberg forms differ: {:?} vs {:?}", ex.system.heisenberg, ti.system.heisenberg));
    }
    diffs.extend(
        (0..g.dim())
            .filter(|&i| ex.images[i] != ti.images[i])
            .map(|i| format!("{}: explicit {} vs tilde {}", g.basis[i].label, ex.images[i], ti.images[i])),
    );
    Ok(diffs)
}
