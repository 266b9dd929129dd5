//! Text file formats for interpretations and built-in interpretations.
//!
//! Interpretation file:
//!
//! ```text
//! semiring: nat
//! universe: a b c
//! relations: P/1 E/2
//! P(a) = 2
//! ~P(a) = 0
//! ...            # one line per literal, all literals required
//! ```
//!
//! Built-in interpretation file:
//!
//! ```text
//! semiring: nat
//! builtin: eq/2
//! pos: generator equality-indicator
//! neg: generator constant 0
//! builtin: f/1
//! pos: table
//! n=2 (1) = 3
//! n=2 (2) = 0
//! neg: generator constant 0
//! ```

use std::collections::HashMap;

use kfo_semiring::SemiringSpec;

use crate::ast::RelSymbol;
use crate::builtins::{BuiltinFamily, BuiltinInterpretation, Generator};
use crate::error::LogicError;
use crate::interp::{Interpretation, Literal};
use crate::Result;

fn err(line: usize, msg: impl Into<String>) -> LogicError {
    LogicError::FileFormat {
        line,
        msg: msg.into(),
    }
}

fn parse_symbol_decl(token: &str, line: usize) -> Result<RelSymbol> {
    let (name, arity) = token
        .split_once('/')
        .ok_or_else(|| err(line, format!("expected `name/arity`, got `{token}`")))?;
    let arity: usize = arity
        .parse()
        .map_err(|_| err(line, format!("bad arity in `{token}`")))?;
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(err(line, format!("bad symbol name `{name}`")));
    }
    Ok(RelSymbol::new(name, arity))
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    idx: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { lines, idx: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.idx).copied()
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.peek();
        if item.is_some() {
            self.idx += 1;
        }
        item
    }

    fn expect_keyword(&mut self, keyword: &str) -> Result<(usize, &'a str)> {
        match self.next() {
            Some((no, line)) => {
                let rest = line.strip_prefix(keyword).ok_or_else(|| {
                    err(no, format!("expected `{keyword} ...`, got `{line}`"))
                })?;
                Ok((no, rest.trim()))
            }
            None => Err(err(0, format!("unexpected end of file, expected `{keyword}`"))),
        }
    }
}

fn parse_spec_header(lines: &mut Lines<'_>) -> Result<SemiringSpec> {
    let (no, name) = lines.expect_keyword("semiring:")?;
    SemiringSpec::from_name(name).ok_or_else(|| err(no, format!("unknown semiring `{name}`")))
}

/// Parses an interpretation file. Every literal over the declared universe
/// and relations must be present exactly once.
pub fn parse_interpretation(text: &str) -> Result<Interpretation> {
    let mut lines = Lines::new(text);
    let spec = parse_spec_header(&mut lines)?;

    let (_, universe_line) = lines.expect_keyword("universe:")?;
    let universe: Vec<String> = universe_line
        .split_whitespace()
        .map(|s| s.to_string())
        .collect();

    let (no, rel_line) = lines.expect_keyword("relations:")?;
    let mut tau = Vec::new();
    for token in rel_line.split_whitespace() {
        tau.push(parse_symbol_decl(token, no)?);
    }

    let mut values = HashMap::new();
    while let Some((no, line)) = lines.next() {
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| err(no, format!("expected `literal = value`, got `{line}`")))?;
        let lhs = lhs.trim();
        let value = spec.parse_element(rhs.trim())?;
        let (negated, atom) = match lhs.strip_prefix('~') {
            Some(rest) => (true, rest.trim()),
            None => (false, lhs),
        };
        let (rel, args_text) = atom
            .split_once('(')
            .ok_or_else(|| err(no, format!("expected `R(...)`, got `{atom}`")))?;
        let args_text = args_text
            .strip_suffix(')')
            .ok_or_else(|| err(no, "missing `)`"))?;
        let rel = rel.trim();
        let sym = tau
            .iter()
            .find(|s| s.name == rel)
            .ok_or_else(|| err(no, format!("literal over undeclared relation `{rel}`")))?;
        let mut args = Vec::new();
        for a in args_text.split(',') {
            let a = a.trim();
            if a.is_empty() {
                continue;
            }
            let ix = universe
                .iter()
                .position(|e| e == a)
                .ok_or_else(|| err(no, format!("unknown universe element `{a}`")))?;
            args.push(ix);
        }
        if args.len() != sym.arity {
            return Err(LogicError::ArityMismatch {
                name: rel.to_string(),
                expected: sym.arity,
                got: args.len(),
            });
        }
        let lit = Literal {
            negated,
            rel: rel.to_string(),
            args,
        };
        if values.insert(lit.clone(), value).is_some() {
            return Err(err(no, format!("duplicate literal `{lhs}`")));
        }
    }

    Interpretation::new(spec, universe, tau, values)
}

/// Serializes an interpretation; literals appear in encoding order.
pub fn serialize_interpretation(pi: &Interpretation) -> String {
    let mut out = String::new();
    out.push_str(&format!("semiring: {}\n", pi.spec.id));
    out.push_str(&format!("universe: {}\n", pi.universe.join(" ")));
    let rels: Vec<String> = pi
        .tau
        .iter()
        .map(|s| format!("{}/{}", s.name, s.arity))
        .collect();
    out.push_str(&format!("relations: {}\n", rels.join(" ")));
    for lit in pi.all_literals() {
        let value = pi.value(&lit).expect("total by construction");
        out.push_str(&format!("{} = {}\n", lit.describe(&pi.universe), value));
    }
    out
}

/// Parses a built-in interpretation file, returning the declared symbols
/// and the families.
pub fn parse_builtins(
    text: &str,
) -> Result<(SemiringSpec, Vec<RelSymbol>, BuiltinInterpretation)> {
    let mut lines = Lines::new(text);
    let spec = parse_spec_header(&mut lines)?;
    let mut sigma = Vec::new();
    let mut rho = BuiltinInterpretation::new();

    while let Some((no, line)) = lines.next() {
        let decl = line
            .strip_prefix("builtin:")
            .ok_or_else(|| err(no, format!("expected `builtin: name/arity`, got `{line}`")))?;
        let sym = parse_symbol_decl(decl.trim(), no)?;
        if sym.arity == 0 {
            return Err(LogicError::NullaryBuiltin(sym.name.clone()));
        }
        for polarity in ["pos:", "neg:"] {
            let (no, body) = lines.expect_keyword(polarity)?;
            let negated = polarity == "neg:";
            let family = if let Some(gen_text) = body.strip_prefix("generator") {
                parse_generator(gen_text.trim(), &spec, no)?
            } else if body == "table" {
                let mut rows = Vec::new();
                while let Some((tno, tline)) = lines.peek() {
                    if !tline.starts_with("n=") {
                        break;
                    }
                    lines.next();
                    let (n, tuple, value) = parse_table_row(tline, &spec, tno)?;
                    if tuple.len() != sym.arity {
                        return Err(LogicError::ArityMismatch {
                            name: sym.name.clone(),
                            expected: sym.arity,
                            got: tuple.len(),
                        });
                    }
                    rows.push((n, tuple, value));
                }
                BuiltinFamily::table_from_rows(rows)
            } else {
                return Err(err(no, format!("expected `generator ...` or `table`, got `{body}`")));
            };
            rho.insert(&sym.name, negated, family);
        }
        sigma.push(sym);
    }
    Ok((spec, sigma, rho))
}

fn parse_generator(text: &str, spec: &SemiringSpec, line: usize) -> Result<BuiltinFamily> {
    let gen = if text == "equality-indicator" {
        Generator::EqualityIndicator
    } else if text == "successor-indicator" {
        Generator::SuccessorIndicator
    } else if let Some(c) = text.strip_prefix("constant") {
        Generator::Constant(spec.parse_element(c.trim())?)
    } else {
        return Err(err(line, format!("unknown generator `{text}`")));
    };
    Ok(BuiltinFamily::Generator(gen))
}

fn parse_table_row(
    line_text: &str,
    spec: &SemiringSpec,
    line: usize,
) -> Result<(usize, Vec<usize>, kfo_semiring::Element)> {
    // n=2 (1, 2) = value
    let rest = line_text.strip_prefix("n=").expect("caller checked");
    let open = rest
        .find('(')
        .ok_or_else(|| err(line, "expected `(tuple)`"))?;
    let n: usize = rest[..open]
        .trim()
        .parse()
        .map_err(|_| err(line, "bad universe size"))?;
    let rest = &rest[open + 1..];
    let close = rest.find(')').ok_or_else(|| err(line, "missing `)`"))?;
    let tuple = rest[..close]
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| err(line, format!("bad tuple entry `{s}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let value_part = rest[close + 1..]
        .trim()
        .strip_prefix('=')
        .ok_or_else(|| err(line, "expected `= value`"))?;
    let value = spec.parse_element(value_part.trim())?;
    Ok((n, tuple, value))
}

/// Serializes a built-in interpretation for the given symbols.
pub fn serialize_builtins(
    spec: &SemiringSpec,
    sigma: &[RelSymbol],
    rho: &BuiltinInterpretation,
) -> String {
    let mut out = String::new();
    out.push_str(&format!("semiring: {}\n", spec.id));
    for sym in sigma {
        out.push_str(&format!("builtin: {}/{}\n", sym.name, sym.arity));
        for negated in [false, true] {
            let keyword = if negated { "neg:" } else { "pos:" };
            match rho.family(&sym.name, negated) {
                Some(BuiltinFamily::Generator(g)) => {
                    let text = match g {
                        Generator::EqualityIndicator => "equality-indicator".to_string(),
                        Generator::SuccessorIndicator => "successor-indicator".to_string(),
                        Generator::Constant(c) => format!("constant {c}"),
                    };
                    out.push_str(&format!("{keyword} generator {text}\n"));
                }
                Some(family @ BuiltinFamily::Table(_)) => {
                    out.push_str(&format!("{keyword} table\n"));
                    for (n, tuple, value) in family.table_rows() {
                        let tuple_text: Vec<String> =
                            tuple.iter().map(|t| t.to_string()).collect();
                        out.push_str(&format!(
                            "n={n} ({}) = {value}\n",
                            tuple_text.join(", ")
                        ));
                    }
                }
                None => {
                    out.push_str(&format!("{keyword} generator constant {}\n", spec.zero()));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use kfo_semiring::Element;

    #[test]
    fn interpretation_round_trip() {
        let text = "\
semiring: nat
universe: a b
relations: P/1
P(a) = 2
P(b) = 0
~P(a) = 0
~P(b) = 7
";
        let pi = parse_interpretation(text).unwrap();
        assert_eq!(pi.encode(), vec![
            Element::nat(2),
            Element::nat(0),
            Element::nat(0),
            Element::nat(7)
        ]);
        let printed = serialize_interpretation(&pi);
        let pi2 = parse_interpretation(&printed).unwrap();
        assert_eq!(pi2.encode(), pi.encode());
    }

    #[test]
    fn missing_literal_is_an_error() {
        let text = "\
semiring: nat
universe: a
relations: P/1
P(a) = 2
";
        assert!(matches!(
            parse_interpretation(text),
            Err(LogicError::MissingLiteral(_))
        ));
    }

    #[test]
    fn builtins_round_trip() {
        let text = "\
semiring: nat
builtin: eq/2
pos: generator equality-indicator
neg: generator constant 0
builtin: f/1
pos: table
n=2 (1) = 3
n=2 (2) = 0
neg: generator constant 1
";
        let (spec, sigma, rho) = parse_builtins(text).unwrap();
        assert_eq!(sigma.len(), 2);
        assert_eq!(
            rho.value(&spec, "f", false, 2, &[1]).unwrap(),
            Element::nat(3)
        );
        assert_eq!(
            rho.value(&spec, "eq", false, 5, &[3, 3]).unwrap(),
            Element::nat(1)
        );
        let printed = serialize_builtins(&spec, &sigma, &rho);
        let (_, sigma2, rho2) = parse_builtins(&printed).unwrap();
        assert_eq!(sigma2, sigma);
        assert_eq!(
            rho2.value(&spec, "f", false, 2, &[1]).unwrap(),
            Element::nat(3)
        );
    }
}
