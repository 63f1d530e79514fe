//! Plain-text notation for fields.
//!
//! ```text
//! field    := ["-"] term (("+" | "-") term)*
//! term     := number ["*"] [monomial] | monomial
//! number   := digits ["/" digits]
//! monomial := ":" factor+ ":" | factor
//! factor   := ["d" ["^" digits]] gen
//! gen      := ("a*" | "a" | "psi*" | "psi" | "phi" | "b" | "J") "[" digits "]"
//! ```
//!
//! Generator indices are 1-based in the notation. Example: `3/2 :a*[1] d^2a[2]: - b[1]`.

use std::fmt;

use super::field::{Factor, Field, Gen};
use crate::error::{Error, Result};
use crate::rational::Q;

pub fn format_gen(g: Gen) -> String {
    let i = g.index() + 1;
    match g {
        Gen::AStar(_) => format!("a*[{i}]"),
        Gen::A(_) => format!("a[{i}]"),
        Gen::PsiStar(_) => format!("psi*[{i}]"),
        Gen::Psi(_) => format!("psi[{i}]"),
        Gen::Phi(_) => format!("phi[{i}]"),
        Gen::B(_) => format!("b[{i}]"),
        Gen::J(_) => format!("J[{i}]"),
    }
}

pub fn format_factor(f: Factor) -> String {
    match f.der {
        0 => format_gen(f.gen),
        1 => format!("d{}", format_gen(f.gen)),
        k => format!("d^{k}{}", format_gen(f.gen)),
    }
}

pub fn format_monomial(m: &[Factor]) -> String {
    match m.len() {
        0 => "1".to_string(),
        1 => format_factor(m[0]),
        _ => format!(":{}:", m.iter().map(|f| format_factor(*f)).collect::<Vec<_>>().join(" ")),
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == Q::ONE {
                write!(f, "{}", format_monomial(m))?;
            } else {
                write!(f, "{mag} {}", format_monomial(m))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, t: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(t.as_bytes()) {
            self.pos += t.len();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at byte {} of field notation", self.pos)))
    }

    fn digits(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::Parse("integer out of range".into()))
    }

    fn number(&mut self) -> Result<Q> {
        let n = self.digits()? as i64;
        if self.eat("/") {
            let d = self.digits()? as i64;
            if d == 0 {
                return self.err("zero denominator");
            }
            Ok(Q::new(n, d))
        } else {
            Ok(Q::int(n))
        }
    }

    fn gen(&mut self) -> Result<Gen> {
        let kind: fn(u32) -> Gen = if self.eat("a*") {
            Gen::AStar
        } else if self.eat("a") {
            Gen::A
        } else if self.eat("psi*") {
            Gen::PsiStar
        } else if self.eat("psi") {
            Gen::Psi
        } else if self.eat("phi") {
            Gen::Phi
        } else if self.eat("b") {
            Gen::B
        } else if self.eat("J") {
            Gen::J
        } else {
            return self.err("expected a generator");
        };
        if !self.eat("[") {
            return self.err("expected '['");
        }
        let i = self.digits()?;
        if i == 0 {
            return self.err("generator indices are 1-based");
        }
        if !self.eat("]") {
            return self.err("expected ']'");
        }
        Ok(kind((i - 1) as u32))
    }

    fn factor(&mut self) -> Result<Factor> {
        let mut der = 0;
        if self.eat("d") {
            der = if self.eat("^") { self.digits()? as u32 } else { 1 };
        }
        Ok(Factor::new(self.gen()?, der))
    }

    fn monomial(&mut self) -> Result<Vec<Factor>> {
        if self.eat(":") {
            let mut v = Vec::new();
            while self.peek() != Some(b':') {
                if self.peek().is_none() {
                    return self.err("unterminated ':'");
                }
                v.push(self.factor()?);
            }
            self.eat(":");
            if v.is_empty() {
                return self.err("empty normal-ordered product");
            }
            Ok(v)
        } else {
            Ok(vec![self.factor()?])
        }
    }

    fn term(&mut self, sign: Q, out: &mut Field) -> Result<()> {
        let mut c = sign;
        let mut have_number = false;
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            c *= self.number()?;
            have_number = true;
            self.eat("*");
        }
        let starts_monomial = matches!(self.peek(), Some(b':' | b'd' | b'a' | b'p' | b'b' | b'J'));
        let m = if starts_monomial {
            self.monomial()?
        } else if have_number {
            Vec::new()
        } else {
            return self.err("expected a term");
        };
        out.add_assign(&Field::monomial(c, m)?);
        Ok(())
    }
}

/// Parse the field notation.
pub fn parse_field(s: &str) -> Result<Field> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let mut out = Field::zero();
    if p.peek() == Some(b'0') && s.trim() == "0" {
        return Ok(out);
    }
    let mut sign = if p.eat("-") { -Q::ONE } else { Q::ONE };
    loop {
        p.term(sign, &mut out)?;
        match p.peek() {
            None => break,
            Some(b'+') => {
                p.pos += 1;
                sign = Q::ONE;
            }
            Some(b'-') => {
                p.pos += 1;
                sign = -Q::ONE;
            }
            Some(_) => return p.err("unexpected character"),
        }
    }
    Ok(out)
}

impl std::str::FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Field> {
        parse_field(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let f = parse_field(":a*[1] a[2]:").unwrap();
        assert_eq!(f.to_string(), ":a*[1] a[2]:");
        let g = parse_field("3/2 :a[2] d^2a*[1]: - b[1] + 2").unwrap();
        assert_eq!(g.to_string(), "2 + 3/2 :d^2a*[1] a[2]: - b[1]");
        assert_eq!(parse_field("0").unwrap(), Field::zero());
        assert!(parse_field(":a[0]:").is_err());
        assert!(parse_field(":a[1]").is_err());
        assert!(parse_field(":J[1] J[2]:").is_err());
    }

    fn arb_factor() -> impl Strategy<Value = Factor> {
        (0..7u8, 0..3u32, 0..3u32).prop_map(|(k, i, d)| {
            let g = match k {
                0 => Gen::AStar(i),
                1 => Gen::A(i),
                2 => Gen::PsiStar(i),
                3 => Gen::Psi(i),
                4 => Gen::Phi(i),
                5 => Gen::B(i),
                _ => Gen::J(i),
            };
            Factor::new(g, d)
        })
    }

    fn arb_field() -> impl Strategy<Value = Field> {
        prop::collection::vec((-5i64..6, 1i64..4, prop::collection::vec(arb_factor(), 0..4)), 0..5).prop_map(|terms| {
            let mut f = Field::zero();
            for (n, d, mut m) in terms {
                // keep at most one current
                let mut seen = false;
                m.retain(|x| {
                    if x.gen.is_current() {
                        if seen {
                            return false;
                        }
                        seen = true;
                    }
                    true
                });
                f.add_assign(&Field::monomial(Q::new(n, d), m).unwrap());
            }
            f
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in arb_field()) {
            let s = f.to_string();
            let g = parse_field(&s).unwrap();
            prop_assert_eq!(g, f);
        }
    }
}
