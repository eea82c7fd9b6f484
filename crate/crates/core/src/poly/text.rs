//! Text form of polynomials: `c * x1^e1 * ... * xn^en` terms joined by
//! `+`/`-`, with rational coefficients written `p/q`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;

use super::MultiPoly;
use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '/' => out.push((start, Tok::Slash)),
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = s[start..i].parse().expect("digits");
                out.push((start, Tok::Num(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::Parse {
                    offset: start,
                    message: alloc::format!("unexpected character {other:?}"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.len)
    }

    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.to_string(),
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn poly(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.vars.to_vec());
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                None if !first => return Ok(acc),
                None => return self.err("empty polynomial"),
                _ if first => false,
                _ => return self.err("expected '+' or '-'"),
            };
            first = false;
            let (e, c) = self.term()?;
            acc.add_term(e, if negative { -c } else { c });
        }
    }

    fn term(&mut self) -> Result<(Vec<u32>, Rational)> {
        let mut coeff = Rational::one();
        let mut exps = alloc::vec![0u32; self.vars.len()];
        loop {
            match self.next() {
                Some(Tok::Num(n)) => {
                    let mut q = Rational::from_integer(n);
                    if self.peek() == Some(&Tok::Slash) {
                        self.pos += 1;
                        match self.next() {
                            Some(Tok::Num(d)) if d != BigInt::from(0) => {
                                q = Rational::new(q.numer().clone(), d)?;
                            }
                            _ => {
                                self.pos -= 1;
                                return self.err("expected a nonzero denominator");
                            }
                        }
                    }
                    coeff = coeff * q;
                }
                Some(Tok::Ident(name)) => {
                    let Some(i) = self.vars.iter().position(|v| *v == name) else {
                        self.pos -= 1;
                        return self.err(&alloc::format!("unknown variable {name}"));
                    };
                    let mut k = 1u32;
                    if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        match self.next() {
                            Some(Tok::Num(n)) => {
                                k = u32::try_from(&n).or_else(|_| {
                                    self.pos -= 1;
                                    self.err("exponent too large")
                                })?;
                            }
                            _ => {
                                self.pos -= 1;
                                return self.err("expected an exponent");
                            }
                        }
                    }
                    exps[i] += k;
                }
                _ => {
                    self.pos -= 1;
                    return self.err("expected a number or a variable");
                }
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                return Ok((exps, coeff));
            }
        }
    }
}

/// Orders names like `x2` before `x10`.
fn natural_key(s: &str) -> (&str, u64, &str) {
    let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (head, tail) = s.split_at(cut);
    (head, tail.parse().unwrap_or(0), s)
}

impl MultiPoly {
    /// Parses over a fixed variable list.
    pub fn parse(s: &str, vars: &[String]) -> Result<Self> {
        let mut p = Parser {
            toks: lex(s)?,
            pos: 0,
            len: s.len(),
            vars,
        };
        p.poly()
    }

    /// Variable names appearing in `s`, in natural order.
    pub fn symbols(s: &str) -> Result<Vec<String>> {
        let mut names: Vec<String> = lex(s)?
            .into_iter()
            .filter_map(|(_, t)| match t {
                Tok::Ident(n) => Some(n),
                _ => None,
            })
            .collect();
        names.sort_by(|a, b| natural_key(a).cmp(&natural_key(b)));
        names.dedup();
        Ok(names)
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Parses with the variables that occur in `s`, in natural order.
    fn from_str(s: &str) -> Result<Self> {
        let vars = Self::symbols(s)?;
        Self::parse(s, &vars)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms_descending();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| {
                    if *k == 1 {
                        v.clone()
                    } else {
                        alloc::format!("{v}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                f.write_str(&mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
