use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};

use super::lexer::{tokenize, Spanned, Tok};
use super::{ParseError, ParseErrorKind};
use crate::arith::{Polynomial, Rational, VarTable, AUX_VAR};

pub const MAX_EXPONENT: u32 = 64;
const MAX_TERMS: usize = 200_000;
const MAX_DEGREE: u32 = 4096;

/// Parses and fully expands an expression over `vars`.
pub fn parse_polynomial(text: &str, vars: &Arc<VarTable>) -> Result<Polynomial, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, vars, end_col: text.chars().count() + 1 };
    let f = p.expr()?;
    if let Some((tok, col)) = p.tokens.get(p.pos) {
        return Err(ParseError::new(
            1,
            *col,
            ParseErrorKind::UnexpectedToken { found: tok.text(), expected: "operator or end of input" },
        ));
    }
    Ok(f)
}

struct Parser<'a> {
    tokens: Vec<Spanned>,
    pos: usize,
    vars: &'a Arc<VarTable>,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.tokens.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.tokens.get(self.pos) {
            Some((tok, col)) => ParseError::new(1, *col, ParseErrorKind::UnexpectedToken { found: tok.text(), expected }),
            None => ParseError::new(1, self.end_col, ParseErrorKind::UnexpectedEnd { expected }),
        }
    }

    fn check_size(&self, f: &Polynomial, col: usize) -> Result<(), ParseError> {
        if f.num_terms() > MAX_TERMS || f.total_degree() > MAX_DEGREE {
            return Err(ParseError::new(1, col, ParseErrorKind::TooLarge));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            let col = self.col();
            self.pos += 1;
            let rhs = self.unary()?;
            if acc.num_terms().saturating_mul(rhs.num_terms()) > MAX_TERMS
                || acc.total_degree() + rhs.total_degree() > MAX_DEGREE
            {
                return Err(ParseError::new(1, col, ParseErrorKind::TooLarge));
            }
            acc = &acc * &rhs;
            self.check_size(&acc, col)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let col = self.col();
            let e = match self.tokens.get(self.pos) {
                Some((Tok::Int(n), _)) => match n.to_u32() {
                    Some(e) if e <= MAX_EXPONENT => e,
                    _ => return Err(ParseError::new(1, col, ParseErrorKind::BadExponent(n.to_string()))),
                },
                Some((tok, _)) => return Err(ParseError::new(1, col, ParseErrorKind::BadExponent(tok.text()))),
                None => return Err(ParseError::new(1, col, ParseErrorKind::UnexpectedEnd { expected: "exponent" })),
            };
            self.pos += 1;
            if base.total_degree().saturating_mul(e) > MAX_DEGREE || (e > 1 && base.num_terms() > 64 && e > 4) {
                return Err(ParseError::new(1, col, ParseErrorKind::TooLarge));
            }
            let result = base.pow(e);
            self.check_size(&result, col)?;
            return Ok(result);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == AUX_VAR {
                    return Err(ParseError::new(1, col, ParseErrorKind::ReservedName(name)));
                }
                if !crate::arith::is_identifier(&name) {
                    return Err(ParseError::new(1, col, ParseErrorKind::InvalidIdentifier(name)));
                }
                match self.vars.index_of(&name) {
                    Some(i) => Ok(Polynomial::var(self.vars, i)),
                    None => Err(ParseError::new(1, col, ParseErrorKind::UnknownVariable(name))),
                }
            }
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut value = Rational::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    let dcol = self.col();
                    match self.tokens.get(self.pos) {
                        Some((Tok::Int(d), _)) => {
                            if d.is_zero() {
                                return Err(ParseError::new(1, dcol, ParseErrorKind::ZeroDenominator));
                            }
                            value /= Rational::from_integer(d.clone());
                            self.pos += 1;
                        }
                        _ => return Err(self.unexpected("integer denominator")),
                    }
                }
                Ok(Polynomial::constant(self.vars, value))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.unexpected("`)`")),
                }
            }
            _ => Err(self.unexpected("variable, number or `(`")),
        }
    }
}
