use std::collections::HashMap;

use super::{parse_polynomial, print_polynomial, ParseError, ParseErrorKind, Span};
use crate::abduce::AxiomSystem;
use crate::arith::{is_identifier, MonomialOrder, VarTable, AUX_VAR};

/// A parsed `.axioms` file with the position of every declaration.
#[derive(Debug, Clone)]
pub struct SystemFile {
    pub system: AxiomSystem,
    pub vars_span: Span,
    pub spans: HashMap<String, Span>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum DeclKind {
    Axiom,
    Hypothesis,
}

pub fn parse_system(text: &str) -> Result<SystemFile, ParseError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut vars: Option<(std::sync::Arc<VarTable>, Span)> = None;
    let mut spans: HashMap<String, Span> = HashMap::new();
    let mut system: Option<AxiomSystem> = None;

    for (lineno, raw) in text.split('\n').enumerate() {
        let line_no = lineno + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let content = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.chars().take_while(|c| c.is_whitespace()).count();
        let body = content.trim_start();
        let decl_col = indent + 1;

        let Some((head, rest)) = body.split_once(':') else {
            return Err(ParseError::new(line_no, decl_col, ParseErrorKind::BadDeclaration(body.trim_end().to_string())));
        };
        let rest_col = indent + head.chars().count() + 1;
        let words: Vec<&str> = head.split_whitespace().collect();

        match words.as_slice() {
            ["vars"] => {
                if let Some((_, first)) = &vars {
                    return Err(ParseError::new(line_no, decl_col, ParseErrorKind::DuplicateVarsHeader { first: *first }));
                }
                let here = Span { line: line_no, column: decl_col };
                let mut seen: HashMap<&str, Span> = HashMap::new();
                let mut names = Vec::new();
                for (col, name) in words_with_columns(rest) {
                    let span = Span { line: line_no, column: rest_col + col + 1 };
                    if name == AUX_VAR {
                        return Err(ParseError { span, kind: ParseErrorKind::ReservedName(name.to_string()) });
                    }
                    if !is_identifier(name) {
                        return Err(ParseError { span, kind: ParseErrorKind::InvalidIdentifier(name.to_string()) });
                    }
                    if let Some(first) = seen.get(name) {
                        return Err(ParseError { span, kind: ParseErrorKind::DuplicateName { name: name.to_string(), first: *first } });
                    }
                    seen.insert(name, span);
                    names.push(name.to_string());
                }
                let table = VarTable::new(names).expect("names validated above");
                system = Some(AxiomSystem::new(table.clone()));
                vars = Some((table, here));
            }
            [kw @ ("axiom" | "hypothesis"), name] => {
                let kind = if *kw == "axiom" { DeclKind::Axiom } else { DeclKind::Hypothesis };
                let Some((table, _)) = &vars else {
                    return Err(ParseError::new(line_no, decl_col, ParseErrorKind::MissingVarsHeader));
                };
                let kw_end = head.find(kw).unwrap_or(0) + kw.len();
                let name_at = kw_end + head[kw_end..].find(name).unwrap_or(0);
                let name_col = indent + head[..name_at].chars().count() + 1;
                let span = Span { line: line_no, column: name_col };
                if !is_identifier(name) {
                    return Err(ParseError { span, kind: ParseErrorKind::InvalidIdentifier(name.to_string()) });
                }
                if let Some(first) = spans.get(*name) {
                    return Err(ParseError { span, kind: ParseErrorKind::DuplicateName { name: name.to_string(), first: *first } });
                }
                if rest.trim().is_empty() {
                    return Err(ParseError { span, kind: ParseErrorKind::EmptyBody(name.to_string()) });
                }
                let poly = parse_polynomial(rest, table).map_err(|e| e.shifted(line_no, rest_col))?;
                spans.insert(name.to_string(), span);
                let sys = system.as_mut().expect("set with vars");
                match kind {
                    DeclKind::Axiom => sys.axioms.push((name.to_string(), poly)),
                    DeclKind::Hypothesis => sys.hypotheses.push((name.to_string(), poly)),
                }
            }
            _ => {
                return Err(ParseError::new(line_no, decl_col, ParseErrorKind::BadDeclaration(body.trim_end().to_string())));
            }
        }
    }

    match (system, vars) {
        (Some(system), Some((_, vars_span))) => Ok(SystemFile { system, vars_span, spans }),
        _ => {
            let lines = text.split('\n').count().max(1);
            Err(ParseError::new(lines, 1, ParseErrorKind::MissingVarsHeader))
        }
    }
}

/// 0-based character offset of each whitespace-separated word.
fn words_with_columns(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (ci, (bi, ch)) in s.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((ci, bi)),
            (true, Some((c0, b0))) => {
                out.push((c0, &s[b0..bi]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((c0, b0)) = start {
        out.push((c0, &s[b0..]));
    }
    out.into_iter()
}

/// Canonical file text; expressions are printed expanded under lex in
/// declaration order of the variables.
pub fn print_system(system: &AxiomSystem) -> String {
    let ord = MonomialOrder::lex(system.vars.len());
    let mut out = String::new();
    out.push_str("vars:");
    for name in system.vars.names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for (name, p) in &system.axioms {
        out.push_str(&format!("axiom {name}: {}\n", print_polynomial(p, &ord)));
    }
    for (name, p) in &system.hypotheses {
        out.push_str(&format!("hypothesis {name}: {}\n", print_polynomial(p, &ord)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOY: &str = "# toy\r\nvars: x y z a b\r\naxiom p1: x^2 - a*y^2\r\naxiom p2: b*y - z  # inline\r\n\r\nhypothesis q: b^2*x^2 - a*z^2\r\n";

    #[test]
    fn parses_and_round_trips() {
        let file = parse_system(TOY).unwrap();
        let sys = &file.system;
        assert_eq!(sys.vars.len(), 5);
        assert_eq!(sys.axiom_names().collect::<Vec<_>>(), ["p1", "p2"]);
        assert_eq!(sys.hypotheses.len(), 1);
        assert_eq!(file.spans["p2"], Span { line: 4, column: 7 });
        let printed = print_system(sys);
        let again = parse_system(&printed).unwrap();
        assert_eq!(&again.system, sys);
        assert_eq!(print_system(&again.system), printed);
    }

    #[test]
    fn vars_only_is_valid() {
        let file = parse_system("vars: x y\n").unwrap();
        assert!(file.system.axioms.is_empty());
    }

    #[test]
    fn diagnostics() {
        let dup = parse_system("vars: x\naxiom A: x\naxiom A: x^2\n").unwrap_err();
        assert_eq!(dup.span, Span { line: 3, column: 7 });
        assert_eq!(dup.kind, ParseErrorKind::DuplicateName { name: "A".into(), first: Span { line: 2, column: 7 } });

        let unknown = parse_system("vars: x\naxiom A: x + y\n").unwrap_err();
        assert_eq!(unknown.span, Span { line: 2, column: 14 });
        assert_eq!(unknown.kind, ParseErrorKind::UnknownVariable("y".into()));

        assert_eq!(parse_system("axiom A: x\n").unwrap_err().kind, ParseErrorKind::MissingVarsHeader);
        assert_eq!(parse_system("# nothing\n").unwrap_err().kind, ParseErrorKind::MissingVarsHeader);
        assert_eq!(parse_system("vars: x\naxiom A:   \n").unwrap_err().kind, ParseErrorKind::EmptyBody("A".into()));
        assert!(matches!(parse_system("vars: x __t\n").unwrap_err().kind, ParseErrorKind::ReservedName(_)));
        assert!(matches!(parse_system("vars: x x\n").unwrap_err().kind, ParseErrorKind::DuplicateName { .. }));
        assert!(matches!(parse_system("vars: x\nvars: y\n").unwrap_err().kind, ParseErrorKind::DuplicateVarsHeader { .. }));
        assert!(matches!(parse_system("vars: x\nlemma A: x\n").unwrap_err().kind, ParseErrorKind::BadDeclaration(_)));
        assert!(matches!(parse_system("vars: x\naxiom A x\n").unwrap_err().kind, ParseErrorKind::BadDeclaration(_)));
    }
}
