use std::fmt;

use thiserror::Error;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken { found: String, expected: &'static str },
    UnexpectedEnd { expected: &'static str },
    UnknownVariable(String),
    ReservedName(String),
    InvalidIdentifier(String),
    BadExponent(String),
    ZeroDenominator,
    DuplicateName { name: String, first: Span },
    DuplicateVarsHeader { first: Span },
    MissingVarsHeader,
    EmptyBody(String),
    BadDeclaration(String),
    TooLarge,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ParseErrorKind::*;
        match self {
            UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            UnexpectedToken { found, expected } => write!(f, "expected {expected}, found `{found}`"),
            UnexpectedEnd { expected } => write!(f, "expected {expected}, found end of input"),
            UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            ReservedName(v) => write!(f, "`{v}` is a reserved name"),
            InvalidIdentifier(v) => write!(f, "`{v}` is not a valid identifier"),
            BadExponent(e) => write!(f, "exponent must be a non-negative integer literal no larger than {}, found `{e}`", super::MAX_EXPONENT),
            ZeroDenominator => write!(f, "zero denominator in rational literal"),
            DuplicateName { name, first } => write!(f, "`{name}` is already declared at {first}"),
            DuplicateVarsHeader { first } => write!(f, "`vars:` header already given at {first}"),
            MissingVarsHeader => write!(f, "declaration before the `vars:` header"),
            EmptyBody(name) => write!(f, "`{name}` has an empty body"),
            TooLarge => write!(f, "expression expands beyond the size limit"),
            BadDeclaration(line) => write!(f, "expected `vars:`, `axiom <name>:` or `hypothesis <name>:`, found `{line}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {kind}")]
pub struct ParseError {
    pub span: Span,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { span: Span { line, column }, kind }
    }

    pub(crate) fn shifted(mut self, line: usize, column_offset: usize) -> Self {
        self.span.line = line;
        self.span.column += column_offset;
        self
    }
}
