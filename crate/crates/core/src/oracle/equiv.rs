use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::interp::{check_supported, evaluate_with, Context};
use super::{OracleError, Outcome, Value};
use crate::syntax::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equivalent,
    Diverged,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub args: Vec<Value>,
    pub first: Outcome,
    pub second: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceVerdict {
    pub verdict: Verdict,
    /// Trials run; stops early at the first divergence.
    pub trials: u32,
    /// Trials where either run ran out of fuel.
    pub inconclusive_trials: u32,
    pub counterexample: Option<Counterexample>,
}

const INT_EDGES: [i32; 8] = [-1, 0, 1, 2, -2, 10, i32::MIN, i32::MAX];
const ALPHABET: [char; 5] = ['a', 'b', '/', '.', 'A'];

fn same_type(a: &TypeRef, b: &TypeRef) -> bool {
    match (a, b) {
        (TypeRef::Named(x), TypeRef::Named(y)) => x.name == y.name,
        _ => a == b,
    }
}

fn arg_for(p: &Param, rng: &mut ChaCha8Rng) -> Result<Value, OracleError> {
    Ok(match &p.ty {
        TypeRef::Primitive(PrimitiveType::Int) => Value::Int(match rng.gen_range(0..10) {
            0..=3 => *INT_EDGES.choose(rng).expect("non-empty"),
            4..=8 => rng.gen_range(-16..=16),
            _ => rng.gen(),
        }),
        TypeRef::Primitive(PrimitiveType::Boolean) => Value::Bool(rng.gen()),
        TypeRef::Named(id) if id.name == "String" => {
            if rng.gen_bool(0.1) {
                Value::Null
            } else {
                let len = rng.gen_range(0..=4);
                Value::Str((0..len).map(|_| *ALPHABET.choose(rng).expect("non-empty")).collect())
            }
        }
        _ => return Err(OracleError::unsupported(&p.name.span, "parameter type")),
    })
}

/// Arguments for trial `trial` of a run seeded with `seed`. Each trial has
/// its own stream, so any trial can be replayed alone.
pub fn generate_args(params: &[Param], seed: u64, trial: u64) -> Result<Vec<Value>, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    params.iter().map(|p| arg_for(p, &mut rng)).collect()
}

/// Differential test of `m1` against `m2` with no helpers available.
pub fn check_equivalence(m1: &MethodDecl, m2: &MethodDecl, trials: u32, seed: u64, fuel: u64) -> Result<EquivalenceVerdict, OracleError> {
    let ctx = Context::empty();
    check_equivalence_with((&ctx, m1), (&ctx, m2), trials, seed, fuel)
}

/// Runs both methods on the same `trials` random argument vectors. A trial
/// where either side runs out of fuel is counted as inconclusive rather
/// than compared.
pub fn check_equivalence_with<'a>(
    (ctx1, m1): (&Context<'a>, &'a MethodDecl),
    (ctx2, m2): (&Context<'a>, &'a MethodDecl),
    trials: u32,
    seed: u64,
    fuel: u64,
) -> Result<EquivalenceVerdict, OracleError> {
    let same_params = m1.params.len() == m2.params.len()
        && m1.params.iter().zip(&m2.params).all(|(a, b)| same_type(&a.ty, &b.ty));
    if !same_params {
        return Err(OracleError::SignatureMismatch);
    }
    check_supported(ctx1, m1)?;
    check_supported(ctx2, m2)?;
    let mut inconclusive = 0;
    for t in 0..trials {
        let args = generate_args(&m1.params, seed, u64::from(t))?;
        let first = evaluate_with(ctx1, m1, &args, fuel)?;
        let second = evaluate_with(ctx2, m2, &args, fuel)?;
        if first == Outcome::OutOfFuel || second == Outcome::OutOfFuel {
            inconclusive += 1;
        } else if first != second {
            return Ok(EquivalenceVerdict {
                verdict: Verdict::Diverged,
                trials: t + 1,
                inconclusive_trials: inconclusive,
                counterexample: Some(Counterexample { args, first, second }),
            });
        }
    }
    Ok(EquivalenceVerdict {
        verdict: if inconclusive > 0 {
            Verdict::Inconclusive
        } else {
            Verdict::Equivalent
        },
        trials,
        inconclusive_trials: inconclusive,
        counterexample: None,
    })
}
