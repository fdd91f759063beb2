//! Text syntax for letters, words and polynomials.
//!
//! Letters: `z3` / `z3*` for sphere coordinates, `u2,3` / `u2,3*` for
//! quantum-group coordinates, whitespace-separated; `1` is the unit word.
//! Complex coefficients are `(re,im)` prefixes; terms are joined with
//! `+` or `-`.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use super::{Generator, Letter, Polynomial, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("bad letter token `{0}`")]
    BadLetter(String),
    #[error("bad coefficient token `{0}`")]
    BadCoefficient(String),
    #[error("empty term in polynomial")]
    EmptyTerm,
    #[error("a word may not contain coefficients or signs: `{0}`")]
    NotAWord(String),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.generator {
            Generator::Sphere(i) => write!(f, "z{}", i)?,
            Generator::Entry(i, j) => write!(f, "u{},{}", i, j)?,
        }
        if self.starred {
            write!(f, "*")?;
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}", l)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            if *c == Complex64::new(1.0, 0.0) {
                write!(f, "{}", w)?;
            } else {
                write!(f, "({},{}) {}", c.re, c.im, w)?;
            }
            first = false;
        }
        Ok(())
    }
}

fn parse_letter(tok: &str) -> Result<Letter, ParseError> {
    let bad = || ParseError::BadLetter(tok.to_string());
    let (body, starred) = match tok.strip_suffix('*') {
        Some(b) => (b, true),
        None => (tok, false),
    };
    if let Some(rest) = body.strip_prefix('z') {
        let i: u32 = rest.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        return Ok(Letter {
            generator: Generator::Sphere(i),
            starred,
        });
    }
    if let Some(rest) = body.strip_prefix('u') {
        let (a, b) = rest.split_once(',').ok_or_else(bad)?;
        let i: u32 = a.parse().map_err(|_| bad())?;
        let j: u32 = b.parse().map_err(|_| bad())?;
        if i == 0 || j == 0 {
            return Err(bad());
        }
        return Ok(Letter {
            generator: Generator::Entry(i, j),
            starred,
        });
    }
    Err(bad())
}

#[derive(Debug, PartialEq)]
enum Token {
    Plus,
    Minus,
    Coeff(Complex64),
    Unit,
    Letter(Letter),
}

fn tokenize(s: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(start, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        match ch {
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '(' => {
                let mut end = None;
                for (i, c) in chars.by_ref() {
                    if c == ')' {
                        end = Some(i);
                        break;
                    }
                }
                let end = end.ok_or_else(|| ParseError::BadCoefficient(s[start..].to_string()))?;
                let inner = &s[start + 1..end];
                let (re, im) = inner
                    .split_once(',')
                    .ok_or_else(|| ParseError::BadCoefficient(inner.to_string()))?;
                let re: f64 = re
                    .trim()
                    .parse()
                    .map_err(|_| ParseError::BadCoefficient(inner.to_string()))?;
                let im: f64 = im
                    .trim()
                    .parse()
                    .map_err(|_| ParseError::BadCoefficient(inner.to_string()))?;
                out.push(Token::Coeff(Complex64::new(re, im)));
            }
            _ => {
                let mut end = start;
                while let Some(&(i, c)) = chars.peek() {
                    if c.is_whitespace() || c == '+' || c == '-' || c == '(' {
                        break;
                    }
                    end = i + c.len_utf8();
                    chars.next();
                }
                let tok = &s[start..end];
                if tok == "1" {
                    out.push(Token::Unit);
                } else {
                    out.push(Token::Letter(parse_letter(tok)?));
                }
            }
        }
    }
    Ok(out)
}

/// Parse a polynomial in the CLI text syntax.
pub fn parse_polynomial(s: &str) -> Result<Polynomial, ParseError> {
    let tokens = tokenize(s)?;
    let mut poly = Polynomial::zero();
    let mut sign = Complex64::new(1.0, 0.0);
    let mut coeff = Complex64::new(1.0, 0.0);
    let mut letters: Vec<Letter> = Vec::new();
    // a term is pending once it has a coefficient, a unit or a letter
    let mut pending = false;
    let mut saw_any = false;
    for tok in tokens {
        saw_any = true;
        match tok {
            Token::Plus | Token::Minus => {
                if pending {
                    poly.add_term(Word::new(std::mem::take(&mut letters)), sign * coeff);
                    sign = Complex64::new(1.0, 0.0);
                    coeff = Complex64::new(1.0, 0.0);
                    pending = false;
                }
                if matches!(tok, Token::Minus) {
                    sign = -sign;
                }
            }
            Token::Coeff(c) => {
                coeff *= c;
                pending = true;
            }
            Token::Unit => {
                pending = true;
            }
            Token::Letter(l) => {
                letters.push(l);
                pending = true;
            }
        }
    }
    if !saw_any || !pending {
        return Err(ParseError::EmptyTerm);
    }
    poly.add_term(Word::new(letters), sign * coeff);
    Ok(poly)
}

/// Parse a single word: whitespace-separated letters, or `1` for the unit.
pub fn parse_word(s: &str) -> Result<Word, ParseError> {
    let trimmed = s.trim();
    if trimmed == "1" {
        return Ok(Word::unit());
    }
    let mut letters = Vec::new();
    for tok in trimmed.split_whitespace() {
        if tok == "1" || tok.starts_with('(') || tok == "+" || tok == "-" {
            return Err(ParseError::NotAWord(s.to_string()));
        }
        letters.push(parse_letter(tok)?);
    }
    if letters.is_empty() {
        return Err(ParseError::NotAWord(s.to_string()));
    }
    Ok(Word::new(letters))
}
