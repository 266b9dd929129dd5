//! Comparison elimination over the Boolean semiring.

use crate::ast::{CompareOp, Formula};
use crate::error::LogicError;
use crate::Result;

/// Negation normal form of the negation of a comparison-free formula:
/// dualizes connectives and quantifiers and flips atoms.
pub fn nnf_negate(formula: &Formula) -> Result<Formula> {
    Ok(match formula {
        Formula::VarEq(x, y) => Formula::VarNeq(x.clone(), y.clone()),
        Formula::VarNeq(x, y) => Formula::VarEq(x.clone(), y.clone()),
        Formula::Atom(r, vars) => Formula::NegAtom(r.clone(), vars.clone()),
        Formula::NegAtom(r, vars) => Formula::Atom(r.clone(), vars.clone()),
        Formula::BuiltinAtom(p, vars) => Formula::NegBuiltinAtom(p.clone(), vars.clone()),
        Formula::NegBuiltinAtom(p, vars) => Formula::BuiltinAtom(p.clone(), vars.clone()),
        Formula::And(a, b) => Formula::or(nnf_negate(a)?, nnf_negate(b)?),
        Formula::Or(a, b) => Formula::and(nnf_negate(a)?, nnf_negate(b)?),
        Formula::Exists(x, body) => Formula::Forall(x.clone(), Box::new(nnf_negate(body)?)),
        Formula::Forall(x, body) => Formula::Exists(x.clone(), Box::new(nnf_negate(body)?)),
        Formula::Compare(..) => {
            return Err(LogicError::NotComparisonFree(formula.to_string()))
        }
    })
}

/// Rewrites away every comparison, bottom-up, using the Boolean-semiring
/// equivalences
///
/// ```text
/// a <=  b  ->  nnf(~a) | b
/// a !<= b  ->  a & nnf(~b)
/// a =   b  ->  (a & b) | (nnf(~a) & nnf(~b))
/// a !=  b  ->  (nnf(~a) & b) | (a & nnf(~b))
/// ```
///
/// The result is comparison-free and evaluates identically over the Boolean
/// semiring. The input must use input relations only: negated built-in
/// atoms have free-standing interpretations, so flipping them is unsound.
pub fn eliminate_comparisons_boolean(formula: &Formula) -> Result<Formula> {
    if formula.uses_builtins() {
        return Err(LogicError::UnknownSymbol(format!(
            "built-in atoms are not supported by comparison elimination: {formula}"
        )));
    }
    rewrite(formula)
}

fn rewrite(formula: &Formula) -> Result<Formula> {
    Ok(match formula {
        Formula::And(a, b) => Formula::and(rewrite(a)?, rewrite(b)?),
        Formula::Or(a, b) => Formula::or(rewrite(a)?, rewrite(b)?),
        Formula::Exists(x, body) => Formula::Exists(x.clone(), Box::new(rewrite(body)?)),
        Formula::Forall(x, body) => Formula::Forall(x.clone(), Box::new(rewrite(body)?)),
        Formula::Compare(op, a, b) => {
            let a = rewrite(a)?;
            let b = rewrite(b)?;
            match op {
                CompareOp::Leq => Formula::or(nnf_negate(&a)?, b),
                CompareOp::NotLeq => Formula::and(a.clone(), nnf_negate(&b)?),
                CompareOp::Eq => Formula::or(
                    Formula::and(a.clone(), b.clone()),
                    Formula::and(nnf_negate(&a)?, nnf_negate(&b)?),
                ),
                CompareOp::Neq => Formula::or(
                    Formula::and(nnf_negate(&a)?, b.clone()),
                    Formula::and(a.clone(), nnf_negate(&b)?),
                ),
            }
        }
        leaf => leaf.clone(),
    })
}
