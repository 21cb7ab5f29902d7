//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar:
//!
//! ```text
//! expr    := ['+' | '-'] term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := '-' factor | power
//! power   := atom ['^' integer]
//! atom    := integer ['/' integer] | 'i' | 'x' digits | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{AlgebraError, Field, Polynomial, Scalar};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(String),
    Imag,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, AlgebraError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let n: BigInt = text[start..pos].parse().expect("ascii digits");
                out.push((Tok::Int(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                    pos += 1;
                }
                let word = &text[start..pos];
                let tok = if word == "i" { Tok::Imag } else { Tok::Var(word.to_string()) };
                out.push((tok, start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(AlgebraError::Syntax { position: start, message: format!("unexpected character '{ch}'") });
            }
        };
        out.push((tok, start));
        pos += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    end: usize,
    field: Field,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(t, _)| t.clone());
        self.idx += 1;
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, AlgebraError> {
        Err(AlgebraError::Syntax { position: self.pos(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Polynomial, AlgebraError> {
        let mut acc = match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            Some(Tok::Minus) => {
                self.bump();
                -&self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.try_add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, AlgebraError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = acc.try_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, AlgebraError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(-&self.factor()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, AlgebraError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let exp_pos = self.pos();
        let exp = match self.bump() {
            Some(Tok::Int(n)) => n,
            _ => {
                self.idx -= 1;
                return self.syntax("expected a nonnegative integer exponent after '^'");
            }
        };
        let exp = u32::try_from(&exp).ok().filter(|e| *e <= MAX_EXPONENT).ok_or(AlgebraError::ExponentOverflow)?;
        if self.peek() == Some(&Tok::Caret) {
            return self.syntax("chained '^' is ambiguous; use parentheses");
        }
        base.try_pow(exp).map_err(|e| match e {
            AlgebraError::ExponentOverflow => AlgebraError::ExponentOverflow,
            other => AlgebraError::Syntax { position: exp_pos, message: other.to_string() },
        })
    }

    fn atom(&mut self) -> Result<Polynomial, AlgebraError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let den = match self.bump() {
                        Some(Tok::Int(d)) => d,
                        _ => {
                            self.idx -= 1;
                            return self.syntax("expected an integer denominator after '/'");
                        }
                    };
                    if den.is_zero() {
                        return Err(AlgebraError::DivisionByZero);
                    }
                    let q = BigRational::new(n, den);
                    let c = self.field.from_rational(&q)?;
                    Ok(Polynomial::constant(self.field, self.nvars, c))
                } else {
                    Ok(Polynomial::constant(self.field, self.nvars, self.field.from_bigint(&n)))
                }
            }
            Some(Tok::Imag) => {
                if self.field != Field::GaussianRational {
                    return Err(AlgebraError::ImaginaryOutsideGaussian { position: pos });
                }
                let i = self.field.sqrt_minus_one().expect("Q(i) has i");
                Ok(Polynomial::constant(self.field, self.nvars, i))
            }
            Some(Tok::Var(name)) => {
                let index = name
                    .strip_prefix('x')
                    .filter(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|rest| rest.parse::<usize>().ok())
                    .filter(|&k| k < self.nvars);
                match index {
                    Some(k) => Ok(Polynomial::var(self.field, self.nvars, k)),
                    None => Err(AlgebraError::UnknownVariable { name, position: pos }),
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    self.idx -= 1;
                    return self.syntax("expected ')'");
                }
                Ok(inner)
            }
            Some(_) => {
                self.idx -= 1;
                self.syntax("expected a number, variable, 'i' or '('")
            }
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parses `text` into a canonical polynomial over `field` in variables
/// `x0..x{nvars-1}`. Error positions are byte offsets into `text`.
pub fn parse_poly(text: &str, field: Field, nvars: usize) -> Result<Polynomial, AlgebraError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, idx: 0, end: text.len(), field, nvars };
    if p.peek().is_none() {
        return p.syntax("empty expression");
    }
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.syntax("unexpected trailing input");
    }
    Ok(out)
}

/// Parses a constant expression (no variables) into a scalar.
pub fn parse_scalar(text: &str, field: Field) -> Result<Scalar, AlgebraError> {
    let p = parse_poly(text, field, 0)?;
    Ok(p.constant_term().cloned().unwrap_or_else(|| field.zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat_quartic_two_terms() {
        let p = parse_poly("x0^4 + x1^4", Field::Rational, 2).unwrap();
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.to_string(), "x0^4 + x1^4");
    }

    #[test]
    fn gaussian_factorization_of_quartic() {
        let p = parse_poly("(x0^2 + i*x1^2)*(x0^2 - i*x1^2)", Field::GaussianRational, 2).unwrap();
        assert_eq!(p, parse_poly("x0^4 + x1^4", Field::GaussianRational, 2).unwrap());
    }

    #[test]
    fn cancels_to_zero() {
        let p = parse_poly("x0 - x0", Field::Rational, 1).unwrap();
        assert!(p.is_zero());
        assert!(p.terms().is_empty());
    }

    #[test]
    fn rational_literals_and_precedence() {
        let p = parse_poly("-3/6*x0^2 + 2*(x1 - 1/2)", Field::Rational, 2).unwrap();
        assert_eq!(p.to_string(), "-1/2*x0^2 + 2*x1 - 1");
        let q = parse_poly("-x0^2", Field::Rational, 1).unwrap();
        assert_eq!(q.to_string(), "-x0^2");
    }

    #[test]
    fn prime_field_reduction() {
        let f = Field::prime(7).unwrap();
        let p = parse_poly("1/2*x0 - 1", f, 1).unwrap();
        assert_eq!(p.to_string(), "4*x0 + 6");
        assert_eq!(parse_poly("1/7", f, 1), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn error_positions() {
        match parse_poly("x0 + * x1", Field::Rational, 2) {
            Err(AlgebraError::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            parse_poly("x0 + x2", Field::Rational, 2),
            Err(AlgebraError::UnknownVariable { name: "x2".into(), position: 5 })
        );
        assert_eq!(
            parse_poly("x0 + y", Field::Rational, 2),
            Err(AlgebraError::UnknownVariable { name: "y".into(), position: 5 })
        );
        assert_eq!(
            parse_poly("x0 + i", Field::Rational, 1),
            Err(AlgebraError::ImaginaryOutsideGaussian { position: 5 })
        );
        assert_eq!(parse_poly("x0^99999999999", Field::Rational, 1), Err(AlgebraError::ExponentOverflow));
        assert!(matches!(parse_poly("(x0", Field::Rational, 1), Err(AlgebraError::Syntax { position: 3, .. })));
        assert!(matches!(parse_poly("", Field::Rational, 1), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(parse_poly("x0^2^2", Field::Rational, 1), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(parse_poly("x0 % 2", Field::Rational, 1), Err(AlgebraError::Syntax { position: 3, .. })));
        assert!(matches!(parse_poly("x0/2", Field::Rational, 1), Err(AlgebraError::Syntax { .. })));
    }

    #[test]
    fn gaussian_printing_roundtrip() {
        let text = "(1/2 - 3*i)*x0^2*x1 - i*x1^3 + 2/3*i*x0 + (1 + i)";
        let p = parse_poly(text, Field::GaussianRational, 2).unwrap();
        let printed = p.to_string();
        assert_eq!(printed, "(1/2 - 3*i)*x0^2*x1 - i*x1^3 + 2/3*i*x0 + (1 + i)");
        assert_eq!(parse_poly(&printed, Field::GaussianRational, 2).unwrap(), p);
    }

    #[test]
    fn scalar_parse() {
        assert_eq!(parse_scalar("2 - 2", Field::Rational).unwrap(), Field::Rational.zero());
        assert!(parse_scalar("i*i", Field::GaussianRational).unwrap() == Field::GaussianRational.from_int(-1));
    }
}
