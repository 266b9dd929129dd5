//! Recursive-descent parser for the formula grammar.
//!
//! ```text
//! formula     := operand (cmpop operand)?
//! operand     := quantified
//! quantified  := ("exists" | "forall") var "." quantified | disjunction
//! disjunction := conjunction ("|" conjunction)*
//! conjunction := primary ("&" primary)*
//! primary     := "(" formula ")" | "~" name "(" vars ")" | name "(" vars ")"
//!              | var "=" var | var "!=" var
//! cmpop       := "=" | "!=" | "<=" | "!<="
//! ```
//!
//! Comparison binds loosest, so `forall x. P(x) = forall x. Q(x)` compares
//! the two quantified formulas. Chained comparisons require parentheses.

use crate::ast::{CompareOp, Formula, Vocabulary};
use crate::error::LogicError;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    And,
    Or,
    Tilde,
    Eq,
    Neq,
    Leq,
    NotLeq,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    pos: usize,
}

fn line_col(src: &str, pos: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for (i, ch) in src.char_indices() {
        if i >= pos {
            break;
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

impl<'a> Lexer<'a> {
    fn tokenize(src: &'a str) -> Result<Vec<Spanned>> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        while let Some(t) = lx.next_token()? {
            out.push(t);
        }
        Ok(out)
    }

    fn error(&self, pos: usize, msg: &str) -> LogicError {
        let (line, col) = line_col(self.src, pos);
        LogicError::Syntax {
            line,
            col,
            msg: msg.to_string(),
        }
    }

    fn next_token(&mut self) -> Result<Option<Spanned>> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= bytes.len() {
            return Ok(None);
        }
        let start = self.pos;
        let tok = match bytes[self.pos] {
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b',' => {
                self.pos += 1;
                Tok::Comma
            }
            b'.' => {
                self.pos += 1;
                Tok::Dot
            }
            b'&' => {
                self.pos += 1;
                Tok::And
            }
            b'|' => {
                self.pos += 1;
                Tok::Or
            }
            b'~' => {
                self.pos += 1;
                Tok::Tilde
            }
            b'=' => {
                self.pos += 1;
                Tok::Eq
            }
            b'<' => {
                if self.src[self.pos..].starts_with("<=") {
                    self.pos += 2;
                    Tok::Leq
                } else {
                    return Err(self.error(start, "expected `<=`"));
                }
            }
            b'!' => {
                if self.src[self.pos..].starts_with("!<=") {
                    self.pos += 3;
                    Tok::NotLeq
                } else if self.src[self.pos..].starts_with("!=") {
                    self.pos += 2;
                    Tok::Neq
                } else {
                    return Err(self.error(start, "expected `!=` or `!<=`"));
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while self.pos < bytes.len()
                    && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Tok::Ident(self.src[start..self.pos].to_string())
            }
            c => {
                return Err(self.error(start, &format!("unexpected character `{}`", c as char)));
            }
        };
        Ok(Some(Spanned { tok, pos: start }))
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Spanned>,
    idx: usize,
    vocab: &'a Vocabulary,
}

impl<'a> Parser<'a> {
    fn error_at(&self, pos: usize, msg: &str) -> LogicError {
        let (line, col) = line_col(self.src, pos);
        LogicError::Syntax {
            line,
            col,
            msg: msg.to_string(),
        }
    }

    fn error_here(&self, msg: &str) -> LogicError {
        let pos = self
            .toks
            .get(self.idx)
            .map(|t| t.pos)
            .unwrap_or(self.src.len());
        self.error_at(pos, msg)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|t| &t.tok)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|t| t.tok.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.idx += 1;
            Ok(())
        } else {
            Err(self.error_here(&format!("expected {what}")))
        }
    }

    fn cmp_op(&mut self) -> Option<CompareOp> {
        let op = match self.peek()? {
            Tok::Eq => CompareOp::Eq,
            Tok::Neq => CompareOp::Neq,
            Tok::Leq => CompareOp::Leq,
            Tok::NotLeq => CompareOp::NotLeq,
            _ => return None,
        };
        self.idx += 1;
        Some(op)
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.quantified()?;
        if let Some(op) = self.cmp_op() {
            let rhs = self.quantified()?;
            if self.cmp_op().is_some() {
                return Err(self.error_here("chained comparisons need parentheses"));
            }
            return Ok(Formula::compare(op, lhs, rhs));
        }
        Ok(lhs)
    }

    fn quantified(&mut self) -> Result<Formula> {
        if let Some(Tok::Ident(word)) = self.peek() {
            if word == "exists" || word == "forall" {
                let is_exists = word == "exists";
                self.idx += 1;
                let var = match self.bump() {
                    Some(Tok::Ident(v)) if v != "exists" && v != "forall" => v,
                    _ => return Err(self.error_here("expected a variable after quantifier")),
                };
                self.expect(Tok::Dot, "`.` after quantified variable")?;
                let body = self.quantified()?;
                return Ok(if is_exists {
                    Formula::exists(&var, body)
                } else {
                    Formula::forall(&var, body)
                });
            }
        }
        self.disjunction()
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.idx += 1;
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.primary()?;
        while self.peek() == Some(&Tok::And) {
            self.idx += 1;
            let rhs = self.primary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.idx += 1;
                let inner = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Tilde) => {
                self.idx += 1;
                let (name, pos) = match self.toks.get(self.idx) {
                    Some(Spanned {
                        tok: Tok::Ident(n),
                        pos,
                    }) => (n.clone(), *pos),
                    _ => return Err(self.error_here("expected a relation name after `~`")),
                };
                self.idx += 1;
                let vars = self.arg_list()?;
                self.atom(&name, vars, true, pos)
            }
            Some(Tok::Ident(_)) => {
                let (name, pos) = match self.bump() {
                    Some(Tok::Ident(n)) => (n, self.toks[self.idx - 1].pos),
                    _ => unreachable!(),
                };
                if name == "exists" || name == "forall" {
                    return Err(self.error_at(pos, "quantifier is not allowed here"));
                }
                if self.peek() == Some(&Tok::LParen) {
                    let vars = self.arg_list()?;
                    self.atom(&name, vars, false, pos)
                } else {
                    // variable (in)equality
                    match self.bump() {
                        Some(Tok::Eq) => {}
                        Some(Tok::Neq) => {
                            let rhs = self.variable()?;
                            return Ok(Formula::VarNeq(name, rhs));
                        }
                        _ => {
                            return Err(self.error_at(
                                pos,
                                "expected `(`, `=` or `!=` after identifier",
                            ))
                        }
                    }
                    let rhs = self.variable()?;
                    Ok(Formula::VarEq(name, rhs))
                }
            }
            _ => Err(self.error_here("expected a formula")),
        }
    }

    fn variable(&mut self) -> Result<String> {
        match self.bump() {
            Some(Tok::Ident(v)) if v != "exists" && v != "forall" => Ok(v),
            _ => Err(self.error_here("expected a variable")),
        }
    }

    fn arg_list(&mut self) -> Result<Vec<String>> {
        self.expect(Tok::LParen, "`(`")?;
        let mut vars = Vec::new();
        if self.peek() == Some(&Tok::RParen) {
            self.idx += 1;
            return Ok(vars);
        }
        loop {
            vars.push(self.variable()?);
            match self.bump() {
                Some(Tok::Comma) => continue,
                Some(Tok::RParen) => break,
                _ => return Err(self.error_here("expected `,` or `)`")),
            }
        }
        Ok(vars)
    }

    fn atom(&mut self, name: &str, vars: Vec<String>, negated: bool, pos: usize) -> Result<Formula> {
        let (is_builtin, arity) = if let Some(sym) = self.vocab.lookup_input(name) {
            (false, sym.arity)
        } else if let Some(sym) = self.vocab.lookup_builtin(name) {
            (true, sym.arity)
        } else {
            let (line, col) = line_col(self.src, pos);
            return Err(LogicError::Syntax {
                line,
                col,
                msg: format!("unknown relation symbol `{name}`"),
            });
        };
        if arity != vars.len() {
            return Err(LogicError::ArityMismatch {
                name: name.to_string(),
                expected: arity,
                got: vars.len(),
            });
        }
        Ok(match (is_builtin, negated) {
            (false, false) => Formula::Atom(name.to_string(), vars),
            (false, true) => Formula::NegAtom(name.to_string(), vars),
            (true, false) => Formula::BuiltinAtom(name.to_string(), vars),
            (true, true) => Formula::NegBuiltinAtom(name.to_string(), vars),
        })
    }
}

/// Parses a formula against a vocabulary. Unknown symbols and arity
/// mismatches are reported with source positions where available.
pub fn parse_formula(text: &str, vocab: &Vocabulary) -> Result<Formula> {
    let toks = Lexer::tokenize(text)?;
    let mut parser = Parser {
        src: text,
        toks,
        idx: 0,
        vocab,
    };
    let f = parser.formula()?;
    if parser.idx < parser.toks.len() {
        return Err(parser.error_here("trailing input after formula"));
    }
    Ok(f)
}
