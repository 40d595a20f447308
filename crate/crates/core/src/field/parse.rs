//! Recursive-descent parser for scalar expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := number | 'θ' | 'theta' | '(' expr ')'
//! ```
//!
//! Numbers are exact: integers or finite decimals. `p/q` literals are just
//! division of two integers.

use super::{Field, FieldError, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigRational),
    Theta,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, message: impl Into<String>) -> FieldError {
    FieldError::Syntax {
        pos,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, FieldError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' | '.' => {
                let mut literal = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_digit() || c == '.' {
                        literal.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push((pos, Token::Number(decimal(&literal, pos)?)));
            }
            'θ' => {
                chars.next();
                tokens.push((pos, Token::Theta));
            }
            't' => {
                let rest = &text[pos..];
                if !rest.starts_with("theta") {
                    return Err(syntax(pos, "unknown identifier"));
                }
                for _ in 0..5 {
                    chars.next();
                }
                tokens.push((pos, Token::Theta));
            }
            _ => {
                let token = match ch {
                    '+' => Token::Plus,
                    '-' | '−' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    '^' => Token::Caret,
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    other => return Err(syntax(pos, format!("unexpected character {other:?}"))),
                };
                chars.next();
                tokens.push((pos, token));
            }
        }
    }
    Ok(tokens)
}

fn decimal(literal: &str, pos: usize) -> Result<BigRational, FieldError> {
    let (int_part, frac_part) = match literal.split_once('.') {
        Some((i, f)) => (i, f),
        None => (literal, ""),
    };
    if frac_part.contains('.') || (int_part.is_empty() && frac_part.is_empty()) {
        return Err(syntax(pos, format!("malformed number {literal:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits
        .parse()
        .map_err(|_| syntax(pos, format!("malformed number {literal:?}")))?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    Ok(BigRational::new(numer, denom))
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    index: usize,
    end: usize,
    field: &'a Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.index).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.index).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.index).map(|(_, t)| t.clone());
        self.index += 1;
        t
    }

    fn expr(&mut self) -> Result<Scalar, FieldError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, FieldError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Token::Slash) => {
                    self.bump();
                    acc = acc.checked_div(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, FieldError> {
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, FieldError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.bump();
        let negative = if self.peek() == Some(&Token::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let pos = self.pos();
        match self.bump() {
            Some(Token::Number(q)) if q.is_integer() => {
                let e: i64 = q
                    .to_integer()
                    .try_into()
                    .map_err(|_| syntax(pos, "exponent too large"))?;
                base.pow(if negative { -e } else { e })
            }
            _ => Err(syntax(pos, "expected an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Scalar, FieldError> {
        let pos = self.pos();
        match self.bump() {
            Some(Token::Number(q)) => Ok(self.field.from_rational(q)),
            Some(Token::Theta) => Ok(self.field.generator()),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(syntax(close, "expected ')'")),
                }
            }
            Some(t) => Err(syntax(pos, format!("unexpected token {t:?}"))),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

pub(crate) fn parse_scalar(text: &str, field: &Field) -> Result<Scalar, FieldError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        index: 0,
        end: text.len(),
        field,
    };
    let value = parser.expr()?;
    if parser.index < parser.tokens.len() {
        return Err(syntax(parser.pos(), "trailing input"));
    }
    Ok(value)
}

/// Parses an exact rational written as an integer, decimal or `p/q`.
pub fn parse_rational(text: &str) -> Result<BigRational, FieldError> {
    if let Some((pos, _)) = tokenize(text)?
        .into_iter()
        .find(|(_, t)| *t == Token::Theta)
    {
        return Err(syntax(pos, "θ is not allowed in a rational literal"));
    }
    let value = parse_scalar(text, &Field::rationals())?;
    Ok(value.coeffs()[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn sqrt2() -> Field {
        Field::new(vec![q(-2, 1), q(0, 1), q(1, 1)], (q(1, 1), q(2, 1))).unwrap()
    }

    fn cos_pi_10() -> Field {
        Field::new(
            vec![q(5, 16), q(0, 1), q(-5, 4), q(0, 1), q(1, 1)],
            (q(9, 10), q(1, 1)),
        )
        .unwrap()
    }

    #[test]
    fn half_in_any_field() {
        let f = sqrt2();
        let s = f.parse("1/2").unwrap();
        assert_eq!(s.coeffs(), &[q(1, 2), q(0, 1)]);
    }

    #[test]
    fn theta_squared_reduces() {
        let f = sqrt2();
        assert_eq!(f.parse("θ^2").unwrap().coeffs(), &[q(2, 1), q(0, 1)]);
        assert_eq!(f.parse("theta^2").unwrap(), f.parse("θ*θ").unwrap());
    }

    #[test]
    fn minpoly_expression_is_zero() {
        let f = cos_pi_10();
        assert!(f.parse("16*θ^4 - 20*θ^2 + 5").unwrap().is_zero());
    }

    #[test]
    fn precedence_and_unary_minus() {
        let f = sqrt2();
        assert_eq!(f.parse("-θ^2").unwrap(), f.from_int(-2));
        assert_eq!(f.parse("2 - 3 - 4").unwrap(), f.from_int(-5));
        assert_eq!(f.parse("(1 + θ)^-1").unwrap(), f.parse("θ - 1").unwrap());
        assert_eq!(f.parse("0.25").unwrap(), f.parse("1/4").unwrap());
    }

    #[test]
    fn errors() {
        let f = sqrt2();
        assert!(matches!(f.parse("1 +"), Err(FieldError::Syntax { .. })));
        assert!(matches!(f.parse("(1"), Err(FieldError::Syntax { .. })));
        assert!(matches!(f.parse("x"), Err(FieldError::Syntax { .. })));
        assert!(matches!(f.parse("1 2"), Err(FieldError::Syntax { .. })));
        assert!(matches!(f.parse("θ^θ"), Err(FieldError::Syntax { .. })));
        assert_eq!(
            f.parse("1/(θ^2 - 2)"),
            Err(FieldError::DivisionByZeroScalar)
        );
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-5/4").unwrap(), q(-5, 4));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("θ").is_err());
    }
}
