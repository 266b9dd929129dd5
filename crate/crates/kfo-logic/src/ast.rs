use std::collections::BTreeSet;
use std::fmt;

use crate::error::LogicError;
use crate::Result;

/// Formula comparison operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompareOp {
    Eq,
    Neq,
    Leq,
    NotLeq,
}

impl CompareOp {
    pub fn token(self) -> &'static str {
        match self {
            CompareOp::Eq => "=",
            CompareOp::Neq => "!=",
            CompareOp::Leq => "<=",
            CompareOp::NotLeq => "!<=",
        }
    }

    /// Whether evaluating this comparison requires an ordered semiring.
    pub fn needs_order(self) -> bool {
        matches!(self, CompareOp::Leq | CompareOp::NotLeq)
    }
}

/// A relation symbol with its arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelSymbol {
    pub name: String,
    pub arity: usize,
}

impl RelSymbol {
    pub fn new(name: &str, arity: usize) -> RelSymbol {
        RelSymbol {
            name: name.to_string(),
            arity,
        }
    }
}

/// A signature: input relations (interpreted by the K-interpretation) and
/// built-in relations (interpreted by size-indexed function families).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    pub input: Vec<RelSymbol>,
    pub builtin: Vec<RelSymbol>,
}

impl Vocabulary {
    pub fn new(input: Vec<RelSymbol>, builtin: Vec<RelSymbol>) -> Result<Vocabulary> {
        let v = Vocabulary { input, builtin };
        v.validate()?;
        Ok(v)
    }

    /// Input relations only.
    pub fn relational(input: Vec<RelSymbol>) -> Result<Vocabulary> {
        Vocabulary::new(input, Vec::new())
    }

    fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for sym in self.input.iter().chain(&self.builtin) {
            if !seen.insert(sym.name.as_str()) {
                return Err(LogicError::DuplicateSymbol(sym.name.clone()));
            }
        }
        for sym in &self.builtin {
            if sym.arity == 0 {
                return Err(LogicError::NullaryBuiltin(sym.name.clone()));
            }
        }
        Ok(())
    }

    pub fn lookup_input(&self, name: &str) -> Option<&RelSymbol> {
        self.input.iter().find(|s| s.name == name)
    }

    pub fn lookup_builtin(&self, name: &str) -> Option<&RelSymbol> {
        self.builtin.iter().find(|s| s.name == name)
    }
}

/// Abstract syntax of formulas.
///
/// Atoms over input relations and built-in relations are kept apart so that
/// evaluation can dispatch without consulting the vocabulary again.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `x = y`
    VarEq(String, String),
    /// `x != y`
    VarNeq(String, String),
    /// `R(x, ...)` over an input relation
    Atom(String, Vec<String>),
    /// `~R(x, ...)` over an input relation
    NegAtom(String, Vec<String>),
    /// `P(x, ...)` over a built-in relation
    BuiltinAtom(String, Vec<String>),
    /// `~P(x, ...)` over a built-in relation
    NegBuiltinAtom(String, Vec<String>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Compare(CompareOp, Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

/// Occurrence counts used by the step-bound accounting.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub and: u64,
    pub or: u64,
    pub compare: u64,
    pub exists: u64,
    pub forall: u64,
}

impl Formula {
    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn compare(op: CompareOp, lhs: Formula, rhs: Formula) -> Formula {
        Formula::Compare(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.to_string(), Box::new(body))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.to_string(), Box::new(body))
    }

    /// Free variables, in first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        let record = |v: &String, bound: &Vec<String>, out: &mut Vec<String>| {
            if !bound.contains(v) && !out.contains(v) {
                out.push(v.clone());
            }
        };
        match self {
            Formula::VarEq(x, y) | Formula::VarNeq(x, y) => {
                record(x, bound, out);
                record(y, bound, out);
            }
            Formula::Atom(_, vars)
            | Formula::NegAtom(_, vars)
            | Formula::BuiltinAtom(_, vars)
            | Formula::NegBuiltinAtom(_, vars) => {
                for v in vars {
                    record(v, bound, out);
                }
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Compare(_, a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(x, body) | Formula::Forall(x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Number of occurrences of each connective and quantifier.
    pub fn counts(&self) -> Counts {
        let mut c = Counts::default();
        self.count_into(&mut c);
        c
    }

    fn count_into(&self, c: &mut Counts) {
        match self {
            Formula::And(a, b) => {
                c.and += 1;
                a.count_into(c);
                b.count_into(c);
            }
            Formula::Or(a, b) => {
                c.or += 1;
                a.count_into(c);
                b.count_into(c);
            }
            Formula::Compare(_, a, b) => {
                c.compare += 1;
                a.count_into(c);
                b.count_into(c);
            }
            Formula::Exists(_, body) => {
                c.exists += 1;
                body.count_into(c);
            }
            Formula::Forall(_, body) => {
                c.forall += 1;
                body.count_into(c);
            }
            _ => {}
        }
    }

    pub fn uses_builtins(&self) -> bool {
        match self {
            Formula::BuiltinAtom(..) | Formula::NegBuiltinAtom(..) => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Compare(_, a, b) => {
                a.uses_builtins() || b.uses_builtins()
            }
            Formula::Exists(_, body) | Formula::Forall(_, body) => body.uses_builtins(),
            _ => false,
        }
    }

    pub fn uses_order_comparison(&self) -> bool {
        match self {
            Formula::Compare(op, a, b) => {
                op.needs_order() || a.uses_order_comparison() || b.uses_order_comparison()
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.uses_order_comparison() || b.uses_order_comparison()
            }
            Formula::Exists(_, body) | Formula::Forall(_, body) => body.uses_order_comparison(),
            _ => false,
        }
    }

    pub fn is_comparison_free(&self) -> bool {
        match self {
            Formula::Compare(..) => false,
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.is_comparison_free() && b.is_comparison_free()
            }
            Formula::Exists(_, body) | Formula::Forall(_, body) => body.is_comparison_free(),
            _ => true,
        }
    }

    /// Checks symbols and arities against `vocab`.
    pub fn validate(&self, vocab: &Vocabulary) -> Result<()> {
        match self {
            Formula::VarEq(..) | Formula::VarNeq(..) => Ok(()),
            Formula::Atom(name, vars) | Formula::NegAtom(name, vars) => {
                let sym = vocab
                    .lookup_input(name)
                    .ok_or_else(|| LogicError::UnknownSymbol(name.clone()))?;
                if sym.arity != vars.len() {
                    return Err(LogicError::ArityMismatch {
                        name: name.clone(),
                        expected: sym.arity,
                        got: vars.len(),
                    });
                }
                Ok(())
            }
            Formula::BuiltinAtom(name, vars) | Formula::NegBuiltinAtom(name, vars) => {
                let sym = vocab
                    .lookup_builtin(name)
                    .ok_or_else(|| LogicError::UnknownSymbol(name.clone()))?;
                if sym.arity != vars.len() {
                    return Err(LogicError::ArityMismatch {
                        name: name.clone(),
                        expected: sym.arity,
                        got: vars.len(),
                    });
                }
                Ok(())
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Compare(_, a, b) => {
                a.validate(vocab)?;
                b.validate(vocab)
            }
            Formula::Exists(_, body) | Formula::Forall(_, body) => body.validate(vocab),
        }
    }

    /// Enforces the strict grammar in which comparison operands must be
    /// comparison-free. The evaluator itself is permissive; this check is
    /// opt-in.
    pub fn validate_strict_grammar(&self) -> Result<()> {
        match self {
            Formula::Compare(op, a, b) => {
                if !a.is_comparison_free() || !b.is_comparison_free() {
                    return Err(LogicError::StrictGrammar(format!(
                        "operand of `{}` contains a nested comparison",
                        op.token()
                    )));
                }
                Ok(())
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.validate_strict_grammar()?;
                b.validate_strict_grammar()
            }
            Formula::Exists(_, body) | Formula::Forall(_, body) => body.validate_strict_grammar(),
            _ => Ok(()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Compare(..) => 0,
            Formula::Exists(..) | Formula::Forall(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            _ => 4,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let parens = self.precedence() < min;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Formula::VarEq(x, y) => write!(f, "{x} = {y}")?,
            Formula::VarNeq(x, y) => write!(f, "{x} != {y}")?,
            Formula::Atom(name, vars) | Formula::BuiltinAtom(name, vars) => {
                write!(f, "{name}({})", vars.join(", "))?
            }
            Formula::NegAtom(name, vars) | Formula::NegBuiltinAtom(name, vars) => {
                write!(f, "~{name}({})", vars.join(", "))?
            }
            Formula::And(a, b) => {
                a.fmt_prec(f, 3)?;
                write!(f, " & ")?;
                b.fmt_prec(f, 4)?;
            }
            Formula::Or(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " | ")?;
                b.fmt_prec(f, 3)?;
            }
            Formula::Compare(op, a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " {} ", op.token())?;
                b.fmt_prec(f, 1)?;
            }
            Formula::Exists(x, body) => {
                write!(f, "exists {x}. ")?;
                body.fmt_prec(f, 1)?;
            }
            Formula::Forall(x, body) => {
                write!(f, "forall {x}. ")?;
                body.fmt_prec(f, 1)?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(name: &str, vars: &[&str]) -> Formula {
        Formula::Atom(name.to_string(), vars.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn free_vars_respect_binding() {
        let f = Formula::exists("x", Formula::and(atom("P", &["x"]), atom("Q", &["y"])));
        assert_eq!(f.free_vars(), vec!["y".to_string()]);
        assert!(!f.is_sentence());
        let g = Formula::forall("y", f);
        assert!(g.is_sentence());
    }

    #[test]
    fn shadowing_keeps_inner_binding() {
        // exists x. (P(x) & exists x. Q(x)) has no free variables
        let f = Formula::exists(
            "x",
            Formula::and(atom("P", &["x"]), Formula::exists("x", atom("Q", &["x"]))),
        );
        assert!(f.is_sentence());
    }

    #[test]
    fn counts_are_exact() {
        let f = Formula::compare(
            CompareOp::Eq,
            Formula::forall("x", atom("P", &["x"])),
            Formula::forall("x", atom("Q", &["x"])),
        );
        let c = f.counts();
        assert_eq!((c.and, c.or, c.compare, c.exists, c.forall), (0, 0, 1, 0, 2));
    }

    #[test]
    fn strict_grammar_rejects_nested_comparisons() {
        let inner = Formula::compare(CompareOp::Eq, atom("P", &["x"]), atom("Q", &["x"]));
        let outer = Formula::compare(CompareOp::Leq, inner.clone(), atom("P", &["x"]));
        assert!(inner.validate_strict_grammar().is_ok());
        assert!(outer.validate_strict_grammar().is_err());
    }

    #[test]
    fn vocabulary_rejects_duplicates_and_nullary_builtins() {
        assert!(Vocabulary::new(
            vec![RelSymbol::new("P", 1), RelSymbol::new("P", 2)],
            vec![]
        )
        .is_err());
        assert!(Vocabulary::new(vec![], vec![RelSymbol::new("c", 0)]).is_err());
        assert!(Vocabulary::new(vec![RelSymbol::new("R", 0)], vec![]).is_ok());
    }
}
