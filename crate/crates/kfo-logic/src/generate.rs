//! Seeded random generators for formulas, interpretations and elements.
//!
//! Shared by the test suites of several crates; all generation is driven by
//! a caller-supplied RNG so runs are reproducible.

use rand::seq::SliceRandom;
use rand::Rng;

use kfo_semiring::{Element, SemiringId, SemiringSpec};

use crate::ast::{CompareOp, Formula, RelSymbol, Vocabulary};
use crate::interp::Interpretation;

/// A random element of the instance, drawn from a small palette that
/// includes zero with non-trivial probability.
pub fn random_element<R: Rng>(rng: &mut R, spec: &SemiringSpec) -> Element {
    let palette: Vec<&str> = match spec.id {
        SemiringId::Boolean => vec!["false", "true"],
        SemiringId::Nat => vec!["0", "0", "1", "2", "3", "5"],
        SemiringId::Tropical => vec!["inf", "inf", "0", "1", "2", "5", "-1", "3/2"],
        SemiringId::Lukasiewicz => vec!["0", "0", "1", "1/2", "1/4", "3/4"],
        SemiringId::Probability => vec!["0", "0", "1", "1/2", "2", "1/3"],
        SemiringId::NatPoly => vec!["0", "0", "1", "2", "x", "y", "x + 1", "2*x*y"],
    };
    let text = palette.choose(rng).expect("non-empty palette");
    spec.parse_element(text).expect("palette entries parse")
}

/// A random interpretation over `universe` and `tau`.
pub fn random_interpretation<R: Rng>(
    rng: &mut R,
    spec: &SemiringSpec,
    universe: &[&str],
    tau: &[RelSymbol],
) -> Interpretation {
    Interpretation::build(
        spec.clone(),
        universe.iter().map(|s| s.to_string()).collect(),
        tau.to_vec(),
        |_| random_element(rng, spec),
    )
    .expect("random interpretations are well-formed")
}

/// Configuration for random formula generation.
#[derive(Debug, Clone)]
pub struct FormulaGen {
    pub vars: Vec<String>,
    /// Maximum connective/quantifier nesting depth.
    pub depth: usize,
    /// Number of comparison nodes to place (0 for comparison-free).
    pub comparisons: usize,
}

impl FormulaGen {
    pub fn comparison_free(vars: &[&str], depth: usize) -> FormulaGen {
        FormulaGen {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            depth,
            comparisons: 0,
        }
    }
}

/// A random formula over the input relations of `vocab`. All variables are
/// drawn from `cfg.vars`; the result may have free variables.
pub fn random_formula<R: Rng>(rng: &mut R, vocab: &Vocabulary, cfg: &FormulaGen) -> Formula {
    let mut comparisons = cfg.comparisons;
    let f = gen_rec(rng, vocab, &cfg.vars, cfg.depth, &mut comparisons);
    if comparisons == 0 {
        f
    } else {
        // not enough room for the requested comparisons: stack them on top
        let mut out = f;
        for _ in 0..comparisons {
            let rhs = gen_rec(rng, vocab, &cfg.vars, 1, &mut 0);
            out = Formula::compare(random_cmp(rng), out, rhs);
        }
        out
    }
}

/// A random sentence: like [`random_formula`] but any free variables are
/// closed by a quantifier prefix.
pub fn random_sentence<R: Rng>(rng: &mut R, vocab: &Vocabulary, cfg: &FormulaGen) -> Formula {
    let mut f = random_formula(rng, vocab, cfg);
    let mut free = f.free_vars();
    // close innermost-first so the prefix order is randomized
    free.shuffle(rng);
    for var in free {
        f = if rng.gen_bool(0.5) {
            Formula::Exists(var, Box::new(f))
        } else {
            Formula::Forall(var, Box::new(f))
        };
    }
    f
}

fn random_cmp<R: Rng>(rng: &mut R) -> CompareOp {
    *[
        CompareOp::Eq,
        CompareOp::Neq,
        CompareOp::Leq,
        CompareOp::NotLeq,
    ]
    .choose(rng)
    .expect("non-empty")
}

fn random_atom<R: Rng>(rng: &mut R, vocab: &Vocabulary, vars: &[String]) -> Formula {
    let pick_var = |rng: &mut R| vars.choose(rng).expect("vars non-empty").clone();
    // variable (in)equalities appear alongside relation atoms
    if !vocab.input.is_empty() && rng.gen_bool(0.8) {
        let sym = vocab.input.choose(rng).expect("non-empty");
        let args: Vec<String> = (0..sym.arity).map(|_| pick_var(rng)).collect();
        if rng.gen_bool(0.5) {
            Formula::Atom(sym.name.clone(), args)
        } else {
            Formula::NegAtom(sym.name.clone(), args)
        }
    } else if rng.gen_bool(0.5) {
        Formula::VarEq(pick_var(rng), pick_var(rng))
    } else {
        Formula::VarNeq(pick_var(rng), pick_var(rng))
    }
}

fn gen_rec<R: Rng>(
    rng: &mut R,
    vocab: &Vocabulary,
    vars: &[String],
    depth: usize,
    comparisons: &mut usize,
) -> Formula {
    if depth == 0 {
        return random_atom(rng, vocab, vars);
    }
    // place a comparison when requested and the coin agrees
    if *comparisons > 0 && rng.gen_bool(0.5) {
        *comparisons -= 1;
        let lhs = gen_rec(rng, vocab, vars, depth - 1, comparisons);
        let rhs = gen_rec(rng, vocab, vars, depth - 1, comparisons);
        return Formula::compare(random_cmp(rng), lhs, rhs);
    }
    match rng.gen_range(0..5) {
        0 => Formula::and(
            gen_rec(rng, vocab, vars, depth - 1, comparisons),
            gen_rec(rng, vocab, vars, depth - 1, comparisons),
        ),
        1 => Formula::or(
            gen_rec(rng, vocab, vars, depth - 1, comparisons),
            gen_rec(rng, vocab, vars, depth - 1, comparisons),
        ),
        2 => Formula::Exists(
            vars.choose(rng).expect("non-empty").clone(),
            Box::new(gen_rec(rng, vocab, vars, depth - 1, comparisons)),
        ),
        3 => Formula::Forall(
            vars.choose(rng).expect("non-empty").clone(),
            Box::new(gen_rec(rng, vocab, vars, depth - 1, comparisons)),
        ),
        _ => random_atom(rng, vocab, vars),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn sentences_are_closed_and_valid() {
        let vocab = Vocabulary::relational(vec![
            RelSymbol::new("P", 1),
            RelSymbol::new("E", 2),
        ])
        .unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let cfg = FormulaGen {
                vars: vec!["x".into(), "y".into()],
                depth: 3,
                comparisons: 1,
            };
            let f = random_sentence(&mut rng, &vocab, &cfg);
            assert!(f.is_sentence(), "{f}");
            f.validate(&vocab).unwrap();
        }
    }
}
