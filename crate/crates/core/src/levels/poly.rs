//! Univariate polynomials with rational coefficients, used to state table rows
//! symbolically in the row parameter `n`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Q;

/// `Σ coeffs[i]·nⁱ`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Poly {
    pub coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: Q) -> Poly {
        Poly::new(vec![c])
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: Q) -> Q {
        self.coeffs.iter().rev().fold(Q::ZERO, |acc, c| acc * x + *c)
    }

    /// Interpolating polynomial of degree `< points.len()` (Newton form).
    pub fn interpolate(points: &[(Q, Q)]) -> Poly {
        let n = points.len();
        let mut dd: Vec<Q> = points.iter().map(|p| p.1).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = (dd[i] - dd[i - 1]) / (points[i].0 - points[i - j].0);
            }
        }
        // Expand Σ dd[j] Π_{i<j} (x − x_i).
        let mut out = vec![Q::ZERO; n.max(1)];
        let mut basis = vec![Q::ONE];
        for (j, d) in dd.iter().enumerate() {
            for (i, b) in basis.iter().enumerate() {
                out[i] += *d * *b;
            }
            let xj = points[j].0;
            let mut next = vec![Q::ZERO; basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += *b;
                next[i] -= xj * *b;
            }
            basis = next;
        }
        Poly::new(out)
    }

    /// Fit a polynomial of degree `≤ degree` to the samples and confirm it on every
    /// remaining sample.
    pub fn fit(samples: &[(Q, Q)], degree: usize) -> Result<Poly> {
        if samples.len() < degree + 2 {
            return Err(Error::Invalid(format!("{} samples cannot confirm a degree {degree} fit", samples.len())));
        }
        let p = Poly::interpolate(&samples[..=degree]);
        for &(x, y) in &samples[degree + 1..] {
            if p.eval(x) != y {
                return Err(Error::Invalid(format!("samples are not polynomial of degree ≤ {degree}: at {x} got {y}, fit gives {}", p.eval(x))));
            }
        }
        Ok(p)
    }

    pub fn render(&self, var: &str) -> String {
        render_terms(&self.terms(var))
    }

    fn terms(&self, var: &str) -> Vec<(Q, String)> {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| {
                let m = match d {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{d}"),
                };
                (*c, m)
            })
            .collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("n"))
    }
}

/// Render `c·m` for a monomial `m` (empty for the constant term): `n`, `-n`, `3n/2`.
fn term(c: Q, m: &str) -> String {
    let a = c.abs();
    if m.is_empty() {
        return a.to_string();
    }
    let num = if a.numer() == 1 { String::new() } else { a.numer().to_string() };
    if a.denom() == 1 {
        format!("{num}{m}")
    } else {
        format!("{num}{m}/{}", a.denom())
    }
}

fn render_terms(terms: &[(Q, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (c, m)) in terms.iter().enumerate() {
        let t = term(*c, m);
        match (i, c.is_negative()) {
            (0, true) => s.push_str(&format!("-{t}")),
            (0, false) => s.push_str(&t),
            (_, true) => s.push_str(&format!(" - {t}")),
            (_, false) => s.push_str(&format!(" + {t}")),
        }
    }
    s
}

/// Render `slope·k + intercept` where both may depend on `var`, e.g. `k + n/2 - 2`.
pub fn render_linear(slope: &Poly, intercept: &Poly, var: &str, kvar: &str) -> String {
    let mut terms = Vec::new();
    match slope.degree() {
        None => {}
        Some(0) => terms.push((slope.coeffs[0], kvar.to_string())),
        Some(_) => terms.push((Q::ONE, format!("({}){kvar}", slope.render(var)))),
    }
    terms.extend(intercept.terms(var));
    render_terms(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    #[test]
    fn render_examples() {
        assert_eq!(Poly::new(vec![Q::int(-1), q(-1, 2)]).render("n"), "-n/2 - 1");
        assert_eq!(Poly::new(vec![Q::ZERO, Q::ONE, Q::ONE]).render("n"), "n^2 + n");
        assert_eq!(Poly::new(vec![Q::int(-2), Q::int(4)]).render("n"), "4n - 2");
        assert_eq!(Poly::new(vec![]).render("n"), "0");
        assert_eq!(render_linear(&Poly::constant(Q::ONE), &Poly::new(vec![Q::int(-2), q(1, 2)]), "n", "k"), "k + n/2 - 2");
    }

    proptest! {
        #[test]
        fn interpolation_recovers_polynomials(c in proptest::collection::vec(-20i64..20, 1..4), den in 1i64..5) {
            let p = Poly::new(c.iter().map(|&x| q(x, den)).collect());
            let samples: Vec<(Q, Q)> = (2..8).map(|x| (Q::int(x), p.eval(Q::int(x)))).collect();
            prop_assert_eq!(Poly::fit(&samples, 3).unwrap(), p);
        }
    }
}
