//! Polynomial expressions and `.germ` files.
//!
//! Expression grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | 'i' | VAR | '(' expr ')'
//! ```
//!
//! `^` binds tighter than `*`, which binds tighter than `+`/`-`. Products
//! need an explicit `*`. Exponents are non-negative integer literals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{Poly, Ring, Scalar};
use crate::germ::{Germ, GermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("invalid exponent at byte {offset}: {message}")]
    BadExponent { offset: usize, message: String },
    #[error("empty expression")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermParseError {
    #[error("component {index}: {source}")]
    Component { index: usize, source: ParseError },
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error("line {line}: {message}")]
    File { line: usize, message: String },
    #[error("expected three comma-separated components, found {0}")]
    ComponentCount(usize),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'/' => out.push((start, Tok::Slash)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(ParseError::Syntax { offset: start, message: format!("unexpected character `{}`", ch) });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn syntax<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { offset: self.offset(), message: message.to_string() })
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let offset = self.offset();
            let exp = match self.peek() {
                Some(Tok::Int(n)) => n.clone(),
                Some(Tok::Minus) => {
                    return Err(ParseError::BadExponent { offset, message: "exponent must be non-negative".into() })
                }
                _ => return Err(ParseError::BadExponent { offset, message: "exponent must be an integer literal".into() }),
            };
            self.pos += 1;
            if let Some(Tok::Slash) = self.peek() {
                return Err(ParseError::BadExponent { offset, message: "exponent must be an integer".into() });
            }
            if let Some(Tok::Caret) = self.peek() {
                return self.syntax("chained exponents need parentheses");
            }
            let e: u32 = u32::try_from(&exp)
                .map_err(|_| ParseError::BadExponent { offset, message: "exponent too large".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut value = BigRational::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    let den = match self.peek() {
                        Some(Tok::Int(d)) => d.clone(),
                        _ => return self.syntax("expected integer denominator after `/`"),
                    };
                    if den.is_zero() {
                        return self.syntax("zero denominator");
                    }
                    self.pos += 1;
                    value /= BigRational::from_integer(den);
                }
                Ok(Poly::constant(self.ring, Scalar::real(value)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "i" {
                    return Ok(Poly::constant(self.ring, Scalar::i()));
                }
                match self.ring.index_of(&name) {
                    Some(idx) => Ok(Poly::variable(self.ring, idx)),
                    None => Err(ParseError::UnknownIdentifier { name, offset }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.syntax("expected `)`"),
                }
            }
            Some(_) => self.syntax("expected a number, variable or `(`"),
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parses `text` as a polynomial over `ring`.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<Poly, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut p = Parser { toks, pos: 0, end: text.len(), ring };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return p.syntax("unexpected trailing input");
    }
    Ok(poly)
}

/// Textual form of a germ, before parsing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GermSource {
    pub components: [String; 3],
    pub name: Option<String>,
    pub weights: Option<(u32, u32)>,
}

impl GermSource {
    pub fn new(p1: &str, p2: &str, p3: &str) -> Self {
        GermSource { components: [p1.into(), p2.into(), p3.into()], ..Default::default() }
    }

    /// Splits `"P1, P2, P3"` on top-level commas.
    pub fn from_list(text: &str) -> Result<Self, GermParseError> {
        let mut parts = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        for ch in text.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if ch == ',' && depth == 0 {
                parts.push(std::mem::take(&mut cur));
            } else {
                cur.push(ch);
            }
        }
        parts.push(cur);
        if parts.len() != 3 {
            return Err(GermParseError::ComponentCount(parts.len()));
        }
        Ok(GermSource::new(parts[0].trim(), parts[1].trim(), parts[2].trim()))
    }

    /// Reads the `.germ` line format: `#` comments, optional `name:` and
    /// `weights: w1 w2` headers, then `P1 = …`, `P2 = …`, `P3 = …`.
    pub fn from_germ_file(text: &str) -> Result<Self, GermParseError> {
        let mut src = GermSource::default();
        let mut seen = [false; 3];
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| GermParseError::File { line: line_no, message: message.to_string() };
            if let Some(rest) = line.strip_prefix("name:") {
                src.name = Some(rest.trim().to_string());
            } else if let Some(rest) = line.strip_prefix("weights:") {
                let ws: Vec<&str> = rest.split_whitespace().collect();
                if ws.len() != 2 {
                    return Err(err("`weights:` takes exactly two positive integers"));
                }
                let parse = |w: &str| w.parse::<u32>().ok().filter(|&v| v > 0);
                match (parse(ws[0]), parse(ws[1])) {
                    (Some(a), Some(b)) => src.weights = Some((a, b)),
                    _ => return Err(err("weights must be positive integers")),
                }
            } else if let Some((lhs, rhs)) = line.split_once('=') {
                let idx = match lhs.trim() {
                    "P1" => 0,
                    "P2" => 1,
                    "P3" => 2,
                    other => return Err(err(&format!("unknown component `{}`", other))),
                };
                if seen[idx] {
                    return Err(err(&format!("component P{} given twice", idx + 1)));
                }
                seen[idx] = true;
                src.components[idx] = rhs.trim().to_string();
            } else {
                return Err(err("expected `name:`, `weights:` or `Pk = <expression>`"));
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(GermParseError::File { line: 0, message: format!("missing component P{}", missing + 1) });
        }
        Ok(src)
    }
}

/// Parses the three components over `(s, t)` and builds the germ.
pub fn parse_germ(src: &GermSource) -> Result<Germ, GermParseError> {
    let ring = Ring::source();
    let mut comps = Vec::with_capacity(3);
    for (index, text) in src.components.iter().enumerate() {
        comps.push(parse_poly(text, &ring).map_err(|source| GermParseError::Component { index: index + 1, source })?);
    }
    let comps: [Poly; 3] = comps.try_into().expect("three components");
    let germ = Germ::new(comps, src.name.clone())?;
    if let Some((w1, w2)) = src.weights {
        germ.check_declared_weights(w1, w2)?;
    }
    Ok(germ)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn src() -> Ring {
        Ring::source()
    }

    fn parse(text: &str) -> Result<Poly, ParseError> {
        parse_poly(text, &src())
    }

    #[test]
    fn precedence_and_literals() {
        let p = parse("t^3 + s^4*t").unwrap();
        assert_eq!(p, Poly::from_int_terms(&src(), &[(&[0, 3], 1), (&[4, 1], 1)]));
        assert!(parse("0").unwrap().is_zero());
        assert_eq!(parse("(s - t)*(s + t)").unwrap(), parse("s^2 - t^2").unwrap());
        assert_eq!(parse("-s^2").unwrap(), -&parse("s^2").unwrap());
        assert_eq!(parse("2*-s").unwrap(), parse("-2*s").unwrap());
        assert_eq!(parse("3/6*s").unwrap(), parse("1/2 * s").unwrap());
        assert_eq!(parse("i*i").unwrap(), parse("-1").unwrap());
        assert_eq!(parse(" ( s ) ^ 2 ").unwrap(), parse("s*s").unwrap());
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse("s t"), Err(ParseError::Syntax { offset: 2, message: "unexpected trailing input".into() }));
        assert_eq!(parse("st"), Err(ParseError::UnknownIdentifier { name: "st".into(), offset: 0 }));
        assert_eq!(parse("s + I"), Err(ParseError::UnknownIdentifier { name: "I".into(), offset: 4 }));
        assert!(matches!(parse("s^-1"), Err(ParseError::BadExponent { offset: 2, .. })));
        assert!(matches!(parse("s^1/2"), Err(ParseError::BadExponent { offset: 2, .. })));
        assert!(matches!(parse("s^t"), Err(ParseError::BadExponent { .. })));
        assert!(matches!(parse("(s + t"), Err(ParseError::Syntax { offset: 6, .. })));
        assert!(matches!(parse("s $ t"), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(matches!(parse("1/0"), Err(ParseError::Syntax { .. })));
        assert_eq!(parse("   "), Err(ParseError::Empty));
    }

    #[test]
    fn germs() {
        let g = parse_germ(&GermSource::new("s^2", "s*t", "t")).unwrap();
        assert_eq!(g.components()[1], parse("s*t").unwrap());
        assert!(parse_germ(&GermSource::new("s^2", "t^2", "s*t")).is_ok());
        assert!(matches!(
            parse_germ(&GermSource::new("1", "t", "s")),
            Err(GermParseError::Germ(GermError::ConstantTerm { component: 1 }))
        ));
        assert!(matches!(
            parse_germ(&GermSource::new("s", "t^", "s")),
            Err(GermParseError::Component { index: 2, .. })
        ));
    }

    #[test]
    fn list_splitting() {
        let s = GermSource::from_list("s, (s+t)*(s-t), t^3 + s^2*t").unwrap();
        assert_eq!(s.components[1], "(s+t)*(s-t)");
        assert!(matches!(GermSource::from_list("s, t"), Err(GermParseError::ComponentCount(2))));
    }

    #[test]
    fn germ_file() {
        let text = "# Whitney umbrella\nname: cross cap\nweights: 1 1\nP1 = s^2\nP2 = s*t   # second\nP3 = t\n";
        let src = GermSource::from_germ_file(text).unwrap();
        assert_eq!(src.name.as_deref(), Some("cross cap"));
        assert_eq!(src.weights, Some((1, 1)));
        assert_eq!(src.components, ["s^2".to_string(), "s*t".into(), "t".into()]);
        assert!(parse_germ(&src).is_ok());

        assert!(GermSource::from_germ_file("P1 = s\nP2 = t\n").is_err());
        assert!(GermSource::from_germ_file("P1 = s\nP1 = t\nP3 = 0").is_err());
        assert!(GermSource::from_germ_file("weights: 0 1\nP1 = s\nP2 = t\nP3 = 0").is_err());
        // Declared weights that do not fit the components are rejected.
        let bad = GermSource::from_germ_file("weights: 1 2\nP1 = s^2\nP2 = s*t\nP3 = t + s").unwrap();
        assert!(parse_germ(&bad).is_err());
    }
}
