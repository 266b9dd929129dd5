//! The recursive evaluator for formulas under K-interpretations.

use std::collections::HashMap;

use kfo_semiring::{Element, SemiringError};

use crate::ast::{CompareOp, Counts, Formula};
use crate::builtins::BuiltinInterpretation;
use crate::error::LogicError;
use crate::interp::{Interpretation, Literal};
use crate::Result;

/// A partial map from variable names to universe element names.
#[derive(Debug, Clone, Default)]
pub struct Assignment(pub HashMap<String, String>);

impl Assignment {
    pub fn empty() -> Assignment {
        Assignment::default()
    }

    pub fn bind(mut self, var: &str, element: &str) -> Assignment {
        self.0.insert(var.to_string(), element.to_string());
        self
    }

    /// Parses `x = a, y = b` style text.
    pub fn parse(text: &str) -> Result<Assignment> {
        let mut map = HashMap::new();
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (var, val) = part.split_once('=').ok_or_else(|| LogicError::FileFormat {
                line: 0,
                msg: format!("bad assignment entry `{part}`, expected `var = element`"),
            })?;
            map.insert(var.trim().to_string(), val.trim().to_string());
        }
        Ok(Assignment(map))
    }
}

/// Exact accounting of one evaluation run.
///
/// `connective_steps` counts evaluator invocations on non-quantifier nodes;
/// this is the quantity bounded by
/// `(2 * (#and + #or + #cmp) + 1) * |A|^(#exists + #forall)`.
/// Quantifier nodes themselves are reported through `calls` (every
/// invocation) and `quantifier_expansions` (child evaluations spawned).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalStats {
    pub calls: u64,
    pub connective_steps: u64,
    pub and_steps: u64,
    pub or_steps: u64,
    pub compare_steps: u64,
    pub quantifier_expansions: u64,
    pub max_depth: u64,
}

impl EvalStats {
    /// The step bound for a formula with the given occurrence counts over a
    /// universe of size `n`.
    pub fn step_bound(counts: &Counts, n: usize) -> u128 {
        let binary = counts.and + counts.or + counts.compare;
        let quantifiers = (counts.exists + counts.forall) as u32;
        (2 * binary as u128 + 1).saturating_mul((n as u128).saturating_pow(quantifiers))
    }
}

struct EvalCtx<'a> {
    pi: &'a Interpretation,
    rho: Option<&'a BuiltinInterpretation>,
    stats: EvalStats,
}

/// Evaluates `formula` under interpretation `pi`, built-in interpretation
/// `rho` (required iff the formula uses built-in atoms) and assignment `s`.
///
/// Conjunction multiplies, disjunction adds, the existential quantifier
/// sums over the universe, the universal quantifier multiplies over it, and
/// comparisons yield the one/zero elements of the semiring.
pub fn evaluate(
    formula: &Formula,
    pi: &Interpretation,
    rho: Option<&BuiltinInterpretation>,
    s: &Assignment,
) -> Result<(Element, EvalStats)> {
    if formula.uses_builtins() && rho.is_none() {
        return Err(LogicError::MissingBuiltins);
    }
    if formula.uses_order_comparison() && !pi.spec.ordered {
        return Err(LogicError::Semiring(SemiringError::Unordered(pi.spec.id)));
    }
    // resolve the assignment for exactly the free variables
    let mut env: Vec<(String, usize)> = Vec::new();
    for var in formula.free_vars() {
        let name = s
            .0
            .get(&var)
            .ok_or_else(|| LogicError::UnboundVariable(var.clone()))?;
        env.push((var, pi.element_index(name)?));
    }
    let mut ctx = EvalCtx {
        pi,
        rho,
        stats: EvalStats::default(),
    };
    let value = eval_rec(formula, &mut ctx, &mut env, 1)?;
    Ok((value, ctx.stats))
}

fn lookup(env: &[(String, usize)], var: &str) -> Result<usize> {
    // innermost binding wins
    env.iter()
        .rev()
        .find(|(v, _)| v == var)
        .map(|(_, i)| *i)
        .ok_or_else(|| LogicError::UnboundVariable(var.to_string()))
}

fn eval_rec(
    formula: &Formula,
    ctx: &mut EvalCtx<'_>,
    env: &mut Vec<(String, usize)>,
    depth: u64,
) -> Result<Element> {
    ctx.stats.calls += 1;
    ctx.stats.max_depth = ctx.stats.max_depth.max(depth);
    if !matches!(formula, Formula::Exists(..) | Formula::Forall(..)) {
        ctx.stats.connective_steps += 1;
    }
    let spec = &ctx.pi.spec;
    match formula {
        Formula::VarEq(x, y) => {
            let eq = lookup(env, x)? == lookup(env, y)?;
            Ok(if eq { spec.one() } else { spec.zero() })
        }
        Formula::VarNeq(x, y) => {
            let neq = lookup(env, x)? != lookup(env, y)?;
            Ok(if neq { spec.one() } else { spec.zero() })
        }
        Formula::Atom(rel, vars) | Formula::NegAtom(rel, vars) => {
            let args = vars
                .iter()
                .map(|v| lookup(env, v))
                .collect::<Result<Vec<_>>>()?;
            let lit = Literal {
                negated: matches!(formula, Formula::NegAtom(..)),
                rel: rel.clone(),
                args,
            };
            Ok(ctx.pi.value(&lit)?.clone())
        }
        Formula::BuiltinAtom(name, vars) | Formula::NegBuiltinAtom(name, vars) => {
            let rho = ctx.rho.ok_or(LogicError::MissingBuiltins)?;
            // built-in families see 1-based ranks in the universe order
            let ranks = vars
                .iter()
                .map(|v| lookup(env, v).map(|i| i + 1))
                .collect::<Result<Vec<_>>>()?;
            rho.value(
                spec,
                name,
                matches!(formula, Formula::NegBuiltinAtom(..)),
                ctx.pi.size(),
                &ranks,
            )
        }
        Formula::And(a, b) => {
            ctx.stats.and_steps += 1;
            let va = eval_rec(a, ctx, env, depth + 1)?;
            let vb = eval_rec(b, ctx, env, depth + 1)?;
            Ok(ctx.pi.spec.mul(&va, &vb)?)
        }
        Formula::Or(a, b) => {
            ctx.stats.or_steps += 1;
            let va = eval_rec(a, ctx, env, depth + 1)?;
            let vb = eval_rec(b, ctx, env, depth + 1)?;
            Ok(ctx.pi.spec.add(&va, &vb)?)
        }
        Formula::Compare(op, a, b) => {
            ctx.stats.compare_steps += 1;
            let va = eval_rec(a, ctx, env, depth + 1)?;
            let vb = eval_rec(b, ctx, env, depth + 1)?;
            let spec = &ctx.pi.spec;
            let truth = match op {
                CompareOp::Eq => va == vb,
                CompareOp::Neq => va != vb,
                CompareOp::Leq => spec.leq(&va, &vb)?,
                CompareOp::NotLeq => !spec.leq(&va, &vb)?,
            };
            Ok(if truth { spec.one() } else { spec.zero() })
        }
        Formula::Exists(x, body) => {
            let mut acc = spec.zero();
            for i in 0..ctx.pi.size() {
                ctx.stats.quantifier_expansions += 1;
                env.push((x.clone(), i));
                let v = eval_rec(body, ctx, env, depth + 1)?;
                env.pop();
                acc = ctx.pi.spec.add(&acc, &v)?;
            }
            Ok(acc)
        }
        Formula::Forall(x, body) => {
            let mut acc = spec.one();
            for i in 0..ctx.pi.size() {
                ctx.stats.quantifier_expansions += 1;
                env.push((x.clone(), i));
                let v = eval_rec(body, ctx, env, depth + 1)?;
                env.pop();
                acc = ctx.pi.spec.mul(&acc, &v)?;
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{RelSymbol, Vocabulary};
    use crate::parser::parse_formula;
    use kfo_semiring::SemiringSpec;

    fn example22(n: usize, q_value: u64) -> Interpretation {
        // P(i) = 1, Q(i) = q_value, all negated facts 0
        let universe: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        Interpretation::build(
            SemiringSpec::nat(),
            universe,
            vec![RelSymbol::new("P", 1), RelSymbol::new("Q", 1)],
            |lit| {
                if lit.negated {
                    Element::nat(0)
                } else if lit.rel == "P" {
                    Element::nat(1)
                } else {
                    Element::nat(q_value)
                }
            },
        )
        .unwrap()
    }

    fn vocab_pq() -> Vocabulary {
        Vocabulary::relational(vec![RelSymbol::new("P", 1), RelSymbol::new("Q", 1)]).unwrap()
    }

    #[test]
    fn forall_q_is_two_to_the_n() {
        let pi = example22(3, 2);
        let f = parse_formula("forall x. Q(x)", &vocab_pq()).unwrap();
        let (v, _) = evaluate(&f, &pi, None, &Assignment::empty()).unwrap();
        assert_eq!(v, Element::nat(8));
    }

    #[test]
    fn formula_equality_distinguishes_interpretations() {
        let f = parse_formula("forall x. P(x) = forall x. Q(x)", &vocab_pq()).unwrap();
        let pi = example22(3, 1);
        let (v, _) = evaluate(&f, &pi, None, &Assignment::empty()).unwrap();
        assert_eq!(v, Element::nat(1));
        let pi_prime = example22(3, 2);
        let (v, _) = evaluate(&f, &pi_prime, None, &Assignment::empty()).unwrap();
        assert_eq!(v, Element::nat(0));
        // while the Boolean shadows coincide
        let (a, _) = evaluate(&f, &pi.xi(), None, &Assignment::empty()).unwrap();
        let (b, _) = evaluate(&f, &pi_prime.xi(), None, &Assignment::empty()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exists_sums_ones() {
        let pi = example22(3, 1);
        let vocab = vocab_pq();
        let f = parse_formula("exists x. x = x", &vocab).unwrap();
        let (v, _) = evaluate(&f, &pi, None, &Assignment::empty()).unwrap();
        assert_eq!(v, Element::nat(3));
    }

    #[test]
    fn free_variables_need_assignments() {
        let pi = example22(2, 1);
        let f = parse_formula("P(x)", &vocab_pq()).unwrap();
        assert!(matches!(
            evaluate(&f, &pi, None, &Assignment::empty()),
            Err(LogicError::UnboundVariable(_))
        ));
        let s = Assignment::empty().bind("x", "2");
        let (v, _) = evaluate(&f, &pi, None, &s).unwrap();
        assert_eq!(v, Element::nat(1));
    }

    #[test]
    fn assignment_entries_outside_free_vars_are_ignored() {
        let pi = example22(2, 1);
        let f = parse_formula("exists x. P(x)", &vocab_pq()).unwrap();
        let s1 = Assignment::empty();
        let s2 = Assignment::empty().bind("z", "1").bind("x", "2");
        let (v1, st1) = evaluate(&f, &pi, None, &s1).unwrap();
        let (v2, st2) = evaluate(&f, &pi, None, &s2).unwrap();
        assert_eq!(v1, v2);
        assert_eq!(st1, st2);
    }

    #[test]
    fn step_accounting_matches_bound() {
        let pi = example22(3, 2);
        let vocab = vocab_pq();
        for text in [
            "forall x. Q(x)",
            "exists x. exists y. (P(x) & Q(y))",
            "forall x. P(x) = forall x. Q(x)",
            "exists x. (P(x) | Q(x)) & P(x)",
        ] {
            let f = parse_formula(text, &vocab).unwrap();
            let (_, stats) = evaluate(&f, &pi, None, &Assignment::empty()).unwrap();
            let bound = EvalStats::step_bound(&f.counts(), pi.size());
            assert!(
                (stats.connective_steps as u128) <= bound,
                "`{text}`: steps {} > bound {bound}",
                stats.connective_steps
            );
        }
    }

    #[test]
    fn shadowed_quantifier_uses_innermost_binding() {
        let pi = example22(2, 5);
        // inner x rebinds: forall x. exists x. Q(x) = sum over Q = 10, squared... check exact
        let f = parse_formula("forall x. exists x. Q(x)", &vocab_pq()).unwrap();
        let (v, _) = evaluate(&f, &pi, None, &Assignment::empty()).unwrap();
        // exists x. Q(x) = 5 + 5 = 10, independent of outer x; product over 2 elements = 100
        assert_eq!(v, Element::nat(100));
    }
}
